#pragma once

// Closed-form evaluation of Fourier terms a cos(2 pi k x + phase) env(t) and
// their exact space/time derivatives.  Used for forcing, initial data and
// manufactured solutions.

#include <span>

#include "dvflow/types.hpp"

namespace dvflow {

double envelope_value(const FourierTerm& term, double t);
double envelope_rate(const FourierTerm& term, double t);

/// d^order/dx^order of the term at (x, t), order 0..3.
double term_dx(const FourierTerm& term, int order, double x, double t);
/// d/dt of the term at (x, t).
double term_dt(const FourierTerm& term, double x, double t);

/// Sum of d^order/dx^order over `terms`, sampled on the grid.
Field sample_terms(std::span<const FourierTerm> terms, const Grid& grid,
                   double t, int order = 0);

/// A trigonometric polynomial in x with time envelopes, plus a constant.
struct TrigSeries {
  double mean = 0.0;
  std::vector<FourierTerm> terms;

  double value(double x, double t) const;
  double dx(double x, double t, int order = 1) const;
  double dt(double x, double t) const;
  Field sample(const Grid& grid, double t) const;
};

}  // namespace dvflow
