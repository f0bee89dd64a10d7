#pragma once

// Periodic differentiation, quadrature and norms on a uniform grid.
//
// The spectral scheme differentiates the trigonometric interpolant through a
// real FFT; the fd4 scheme uses fourth-order central stencils with periodic
// wraparound.  Transform plans are cached per thread, so every function here
// may be called concurrently.

#include <limits>
#include <span>
#include <utility>

#include "dvflow/types.hpp"

namespace dvflow {

/// d^order/dx^order of `field`, order 1 or 2.
Field deriv(std::span<const double> field, const Grid& grid, int order);

/// First and second derivative from a single forward transform.
std::pair<Field, Field> deriv12(std::span<const double> field,
                                const Grid& grid);

/// 2/3-rule truncation: zeroes every mode with |k| > n/3.  Identity for fd4.
Field dealias(std::span<const double> field, const Grid& grid);

/// d/dx of the dealiased field (one transform pair for spectral).
Field deriv_dealiased(std::span<const double> field, const Grid& grid);

/// Rectangle rule dx * sum(field).
double integrate(std::span<const double> field, const Grid& grid);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (int |field|^p)^(1/p); p = kInfinity gives the max modulus over samples.
double lp_norm(std::span<const double> field, const Grid& grid, double p);

/// ||d^k field||_2 for k = 1..4.
double sobolev_seminorm(std::span<const double> field, const Grid& grid,
                        int k);

}  // namespace dvflow
