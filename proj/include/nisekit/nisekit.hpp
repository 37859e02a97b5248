#pragma once

#include "nisekit/core/dominance.hpp"
#include "nisekit/core/errors.hpp"
#include "nisekit/core/oracle.hpp"
#include "nisekit/core/types.hpp"
#include "nisekit/experiment/compare.hpp"
#include "nisekit/experiment/report.hpp"
#include "nisekit/experiment/runner.hpp"
#include "nisekit/metrics/hypervolume.hpp"
#include "nisekit/mip/branch_and_bound.hpp"
#include "nisekit/mip/linear_program.hpp"
#include "nisekit/mip/simplex.hpp"
#include "nisekit/monise/monise.hpp"
#include "nisekit/monise/normalization.hpp"
#include "nisekit/monise/weight_selection.hpp"
#include "nisekit/nise2d/nise.hpp"
#include "nisekit/problems/instance_io.hpp"
#include "nisekit/problems/knapsack.hpp"
#include "nisekit/problems/logistic.hpp"
#include "nisekit/problems/quadratic.hpp"
