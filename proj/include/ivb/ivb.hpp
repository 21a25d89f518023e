// SPDX-License-Identifier: Apache-2.0
#pragma once

// Implied total standard deviation for the normalized Black-Scholes call:
// pricing, certified uniform bounds, tail asymptotics, bound-initialized
// solvers, the close-far duality, and the two model-generated price curves
// used by the figure reproductions.

#include "asymptotics.hpp"
#include "bounds.hpp"
#include "duality.hpp"
#include "figures.hpp"
#include "models.hpp"
#include "normal.hpp"
#include "pricing.hpp"
#include "quadrature.hpp"
#include "solver.hpp"
#include "symmetry.hpp"
