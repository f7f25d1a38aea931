#pragma once

#include "multclass/rational.hpp"
#include "multclass/numtheory.hpp"
#include "multclass/arith_fn.hpp"
#include "multclass/selberg_solver.hpp"
#include "multclass/classes.hpp"
#include "multclass/multivar.hpp"
#include "multclass/ramanujan.hpp"
