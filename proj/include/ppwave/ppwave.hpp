#pragma once

#include "ppwave/adaptive_test.hpp"
#include "ppwave/baselines.hpp"
#include "ppwave/coefficients.hpp"
#include "ppwave/experiment.hpp"
#include "ppwave/haar.hpp"
#include "ppwave/parallel.hpp"
#include "ppwave/process_core.hpp"
#include "ppwave/random.hpp"
#include "ppwave/simulate.hpp"
