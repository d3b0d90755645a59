#pragma once

#include "refold/bench.hpp"
#include "refold/dataset.hpp"
#include "refold/distance.hpp"
#include "refold/error.hpp"
#include "refold/fold.hpp"
#include "refold/matrix.hpp"
#include "refold/metrics.hpp"
#include "refold/model.hpp"
#include "refold/model_io.hpp"
#include "refold/random.hpp"
#include "refold/registry.hpp"
#include "refold/standardizer.hpp"
#include "refold/tasks.hpp"
#include "refold/threshold.hpp"
