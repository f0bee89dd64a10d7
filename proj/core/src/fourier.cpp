#include "dvflow/fourier.hpp"

#include <cmath>
#include <numbers>

namespace dvflow {

double envelope_value(const FourierTerm& term, double t) {
  switch (term.envelope) {
    case Envelope::constant: return 1.0;
    case Envelope::sine: return std::sin(term.rate * t);
    case Envelope::decay: return std::exp(-term.rate * t);
  }
  return 1.0;
}

double envelope_rate(const FourierTerm& term, double t) {
  switch (term.envelope) {
    case Envelope::constant: return 0.0;
    case Envelope::sine: return term.rate * std::cos(term.rate * t);
    case Envelope::decay: return -term.rate * std::exp(-term.rate * t);
  }
  return 0.0;
}

double term_dx(const FourierTerm& term, int order, double x, double t) {
  const double kw = 2.0 * std::numbers::pi * term.k;
  const double arg = kw * x + term.phase;
  const double a = term.amplitude * envelope_value(term, t);
  switch (order) {
    case 0: return a * std::cos(arg);
    case 1: return -a * kw * std::sin(arg);
    case 2: return -a * kw * kw * std::cos(arg);
    case 3: return a * kw * kw * kw * std::sin(arg);
    default:
      throw Error(ErrorCode::invalid_argument,
                  "term derivative order must be 0..3");
  }
}

double term_dt(const FourierTerm& term, double x, double t) {
  const double arg = 2.0 * std::numbers::pi * term.k * x + term.phase;
  return term.amplitude * envelope_rate(term, t) * std::cos(arg);
}

Field sample_terms(std::span<const FourierTerm> terms, const Grid& grid,
                   double t, int order) {
  Field out(static_cast<std::size_t>(grid.n()), 0.0);
  const auto xs = grid.points();
  for (const auto& term : terms) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] += term_dx(term, order, xs[j], t);
    }
  }
  return out;
}

double TrigSeries::value(double x, double t) const {
  double v = mean;
  for (const auto& term : terms) v += term_dx(term, 0, x, t);
  return v;
}

double TrigSeries::dx(double x, double t, int order) const {
  double v = 0.0;
  for (const auto& term : terms) v += term_dx(term, order, x, t);
  return v;
}

double TrigSeries::dt(double x, double t) const {
  double v = 0.0;
  for (const auto& term : terms) v += term_dt(term, x, t);
  return v;
}

Field TrigSeries::sample(const Grid& grid, double t) const {
  Field out = sample_terms(terms, grid, t, 0);
  for (auto& v : out) v += mean;
  return out;
}

}  // namespace dvflow
