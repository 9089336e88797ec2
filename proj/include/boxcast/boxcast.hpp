// Convenience header pulling in the whole library.

#pragma once

#include "boxcast/arima.hpp"
#include "boxcast/catalog.hpp"
#include "boxcast/csv.hpp"
#include "boxcast/errors.hpp"
#include "boxcast/fetch.hpp"
#include "boxcast/report.hpp"
#include "boxcast/scenario.hpp"
#include "boxcast/series.hpp"
#include "boxcast/stats.hpp"
#include "boxcast/svg.hpp"
#include "boxcast/unit_root.hpp"
#include "boxcast/version.hpp"
