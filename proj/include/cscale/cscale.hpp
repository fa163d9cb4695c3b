#pragma once

#include "cscale/angle.hpp"
#include "cscale/eigensolver.hpp"
#include "cscale/error.hpp"
#include "cscale/lt_bounds.hpp"
#include "cscale/norms.hpp"
#include "cscale/operator.hpp"
#include "cscale/potential.hpp"
#include "cscale/quadrature.hpp"
#include "cscale/region.hpp"
#include "cscale/spectrum.hpp"
