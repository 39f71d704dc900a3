#pragma once

#include "pmsd/bench.hpp"
#include "pmsd/exact.hpp"
#include "pmsd/generator.hpp"
#include "pmsd/instance.hpp"
#include "pmsd/instance_io.hpp"
#include "pmsd/mbhg.hpp"
#include "pmsd/operators.hpp"
#include "pmsd/random.hpp"
#include "pmsd/result_io.hpp"
#include "pmsd/schedule.hpp"
#include "pmsd/solvers.hpp"
#include "pmsd/vnd.hpp"
