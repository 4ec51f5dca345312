#pragma once

#include "combinat.hpp"
#include "errors.hpp"
#include "fractional.hpp"
#include "montecarlo.hpp"
#include "pmf.hpp"
#include "process.hpp"
#include "rng.hpp"
#include "specfun.hpp"
#include "stats.hpp"
#include "subordinator.hpp"
#include "version.hpp"
