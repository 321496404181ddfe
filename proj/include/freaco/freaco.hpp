#pragma once

#include "freaco/aco.hpp"
#include "freaco/bench.hpp"
#include "freaco/error.hpp"
#include "freaco/expr.hpp"
#include "freaco/fre_core.hpp"
#include "freaco/io.hpp"
#include "freaco/oracle.hpp"
#include "freaco/problems.hpp"
#include "freaco/rng.hpp"
