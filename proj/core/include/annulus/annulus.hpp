#pragma once

#include "annulus/alpha_solver.hpp"
#include "annulus/energy.hpp"
#include "annulus/error.hpp"
#include "annulus/extremal_map.hpp"
#include "annulus/nitsche.hpp"
#include "annulus/ode_verify.hpp"
#include "annulus/oracle.hpp"
#include "annulus/polar_field.hpp"
#include "annulus/rng.hpp"
#include "annulus/types.hpp"
#include "annulus/verification.hpp"
