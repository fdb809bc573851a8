#ifndef BBOPT_BBOPT_HPP
#define BBOPT_BBOPT_HPP

#include "bbopt/accelerators.hpp"
#include "bbopt/ann.hpp"
#include "bbopt/asbec.hpp"
#include "bbopt/benchmarks.hpp"
#include "bbopt/budget.hpp"
#include "bbopt/config.hpp"
#include "bbopt/core.hpp"
#include "bbopt/evaluator.hpp"
#include "bbopt/gd.hpp"
#include "bbopt/gedea.hpp"
#include "bbopt/harness.hpp"
#include "bbopt/irw.hpp"
#include "bbopt/loh.hpp"
#include "bbopt/objective.hpp"
#include "bbopt/record.hpp"
#include "bbopt/run.hpp"
#include "bbopt/surrogate.hpp"

#endif
