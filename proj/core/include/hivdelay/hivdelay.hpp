#pragma once

#include "hivdelay/boundedness.hpp"
#include "hivdelay/characteristic.hpp"
#include "hivdelay/dde_solver.hpp"
#include "hivdelay/errors.hpp"
#include "hivdelay/hopf.hpp"
#include "hivdelay/lyapunov.hpp"
#include "hivdelay/model.hpp"
#include "hivdelay/params.hpp"
#include "hivdelay/polynomial.hpp"
#include "hivdelay/quadrature.hpp"
#include "hivdelay/quasi_polynomial.hpp"
#include "hivdelay/roots.hpp"
#include "hivdelay/state.hpp"
#include "hivdelay/trajectory.hpp"
