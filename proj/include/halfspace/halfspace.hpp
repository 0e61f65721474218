#pragma once

#include "halfspace/calculus.hpp"
#include "halfspace/core.hpp"
#include "halfspace/experiments.hpp"
#include "halfspace/fft.hpp"
#include "halfspace/fields.hpp"
#include "halfspace/genfunc.hpp"
#include "halfspace/grids.hpp"
#include "halfspace/normest.hpp"
#include "halfspace/operators.hpp"
#include "halfspace/reflect.hpp"
#include "halfspace/solvers.hpp"
#include "halfspace/transfer.hpp"
