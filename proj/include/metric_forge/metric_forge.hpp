#pragma once

#include "metric_forge/axiom_report.hpp"
#include "metric_forge/b_action.hpp"
#include "metric_forge/chittenden.hpp"
#include "metric_forge/core_distances.hpp"
#include "metric_forge/csv.hpp"
#include "metric_forge/distance_matrix.hpp"
#include "metric_forge/error.hpp"
#include "metric_forge/generators.hpp"
#include "metric_forge/metrization.hpp"
#include "metric_forge/options.hpp"
#include "metric_forge/path_oracle.hpp"
