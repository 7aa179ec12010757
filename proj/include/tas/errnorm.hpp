#pragma once

#include <cstdint>
#include <vector>

#include "tas/femcore.hpp"

namespace tas::errnorm {

// L2 norm of (u_h - exact) over the mesh of `space`, where u_h is the finite
// element function with the given coefficient vector (one entry per dof).
//
// The quadrature is chosen from the space degree: with the default boost of 4
// the rule integrates polynomials of degree 2p+4 exactly, enough to make the
// discretization error dominate the quadrature error for every case in the
// bundled suite.  `points_override` forces a fixed number of points per
// direction instead (the classic-tutorial convention uses 3); it exists so
// reference tables produced under that convention can be reproduced bit-for-
// bit in spirit.  Throws InvalidInputError if the coefficient vector does not
// match the space.
double l2_error(const femcore::FunctionSpace& space,
                const std::vector<double>& coeffs,
                const femcore::ScalarField& exact, int quad_boost = 4,
                int points_override = 0);

// Digits of accuracy: -log10(err).  Defined for finite err > 0 only; anything
// else throws OutOfDomainError.
double doa(double err);

// Digits of size: log10(n_dofs).  Defined for n_dofs >= 1 only; anything else
// throws OutOfDomainError.
double dos(std::int64_t n_dofs);

}  // namespace tas::errnorm
