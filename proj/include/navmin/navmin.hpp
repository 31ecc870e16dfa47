#pragma once

#include "navmin/candidates.hpp"
#include "navmin/conflict.hpp"
#include "navmin/graph.hpp"
#include "navmin/hillclimb.hpp"
#include "navmin/instance_gen.hpp"
#include "navmin/io.hpp"
#include "navmin/measures.hpp"
#include "navmin/problem.hpp"
#include "navmin/rng.hpp"
#include "navmin/sweep.hpp"
