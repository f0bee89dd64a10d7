#include "dvflow/spatial.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <unordered_map>

namespace dvflow {

namespace {

// The FFTW planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class RealTransform {
 public:
  explicit RealTransform(int n) : n_(n) {
    std::lock_guard lock(planner_mutex());
    real_ = fftw_alloc_real(static_cast<std::size_t>(n));
    spec_ = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    forward_ = fftw_plan_dft_r2c_1d(n, real_, spec_, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(n, spec_, real_, FFTW_ESTIMATE);
  }
  ~RealTransform() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spec_);
  }
  RealTransform(const RealTransform&) = delete;
  RealTransform& operator=(const RealTransform&) = delete;

  int n() const { return n_; }
  int modes() const { return n_ / 2 + 1; }

  void forward(std::span<const double> in) {
    std::copy(in.begin(), in.end(), real_);
    fftw_execute(forward_);
  }
  // Writes the normalised inverse of the current spectrum into `out`.
  void backward(std::span<double> out) {
    fftw_execute(backward_);
    const double scale = 1.0 / n_;
    for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(j)] = real_[j] * scale;
  }

  std::complex<double>* spectrum() {
    return reinterpret_cast<std::complex<double>*>(spec_);
  }

 private:
  int n_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

RealTransform& transform_for(int n) {
  thread_local std::unordered_map<int, std::unique_ptr<RealTransform>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RealTransform>(n);
  return *slot;
}

void check_input(std::span<const double> field, const Grid& grid) {
  if (field.size() != static_cast<std::size_t>(grid.n())) {
    throw Error(ErrorCode::length_mismatch,
                "field length " + std::to_string(field.size()) +
                    " does not match grid n = " + std::to_string(grid.n()));
  }
  for (std::size_t j = 0; j < field.size(); ++j) {
    if (!std::isfinite(field[j])) {
      throw Error(ErrorCode::non_finite,
                  "non-finite field sample at index " + std::to_string(j), j);
    }
  }
}

// Multiplies the current spectrum by (2 pi i k)^order, zeroing the Nyquist
// mode for odd orders and every mode above `cutoff`.
void apply_symbol(std::complex<double>* spec, int modes, int n, int order,
                  int cutoff) {
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 0; k < modes; ++k) {
    if (k > cutoff || (order % 2 == 1 && 2 * k == n)) {
      spec[k] = 0.0;
      continue;
    }
    const std::complex<double> ik(0.0, two_pi * k);
    std::complex<double> factor = 1.0;
    for (int o = 0; o < order; ++o) factor *= ik;
    spec[k] *= factor;
  }
}

Field fd4_first(std::span<const double> f, double dx) {
  const auto n = f.size();
  Field out(n);
  const double c = 1.0 / (12.0 * dx);
  for (std::size_t j = 0; j < n; ++j) {
    const double fp1 = f[(j + 1) % n];
    const double fp2 = f[(j + 2) % n];
    const double fm1 = f[(j + n - 1) % n];
    const double fm2 = f[(j + n - 2) % n];
    out[j] = c * (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2);
  }
  return out;
}

Field fd4_second(std::span<const double> f, double dx) {
  const auto n = f.size();
  Field out(n);
  const double c = 1.0 / (12.0 * dx * dx);
  for (std::size_t j = 0; j < n; ++j) {
    const double fp1 = f[(j + 1) % n];
    const double fp2 = f[(j + 2) % n];
    const double fm1 = f[(j + n - 1) % n];
    const double fm2 = f[(j + n - 2) % n];
    out[j] = c * (-fp2 + 16.0 * fp1 - 30.0 * f[j] + 16.0 * fm1 - fm2);
  }
  return out;
}

Field spectral_deriv(std::span<const double> field, int n, int order,
                     int cutoff) {
  auto& tr = transform_for(n);
  tr.forward(field);
  apply_symbol(tr.spectrum(), tr.modes(), n, order, cutoff);
  Field out(static_cast<std::size_t>(n));
  tr.backward(out);
  return out;
}

}  // namespace

Field deriv(std::span<const double> field, const Grid& grid, int order) {
  if (order != 1 && order != 2) {
    throw Error(ErrorCode::invalid_argument, "derivative order must be 1 or 2");
  }
  check_input(field, grid);
  if (grid.scheme() == Scheme::fd4) {
    return order == 1 ? fd4_first(field, grid.dx()) : fd4_second(field, grid.dx());
  }
  return spectral_deriv(field, grid.n(), order, grid.n());
}

std::pair<Field, Field> deriv12(std::span<const double> field,
                                const Grid& grid) {
  check_input(field, grid);
  if (grid.scheme() == Scheme::fd4) {
    return {fd4_first(field, grid.dx()), fd4_second(field, grid.dx())};
  }
  const int n = grid.n();
  auto& tr = transform_for(n);
  tr.forward(field);
  std::vector<std::complex<double>> saved(tr.spectrum(),
                                          tr.spectrum() + tr.modes());
  apply_symbol(tr.spectrum(), tr.modes(), n, 1, n);
  Field d1(static_cast<std::size_t>(n));
  tr.backward(d1);
  std::copy(saved.begin(), saved.end(), tr.spectrum());
  apply_symbol(tr.spectrum(), tr.modes(), n, 2, n);
  Field d2(static_cast<std::size_t>(n));
  tr.backward(d2);
  return {std::move(d1), std::move(d2)};
}

Field dealias(std::span<const double> field, const Grid& grid) {
  check_input(field, grid);
  if (grid.scheme() == Scheme::fd4) return Field(field.begin(), field.end());
  return spectral_deriv(field, grid.n(), 0, grid.dealias_cutoff());
}

Field deriv_dealiased(std::span<const double> field, const Grid& grid) {
  check_input(field, grid);
  if (grid.scheme() == Scheme::fd4) return fd4_first(field, grid.dx());
  return spectral_deriv(field, grid.n(), 1, grid.dealias_cutoff());
}

double integrate(std::span<const double> field, const Grid& grid) {
  if (field.size() != static_cast<std::size_t>(grid.n())) {
    throw Error(ErrorCode::length_mismatch, "field length does not match grid");
  }
  return grid.dx() * std::accumulate(field.begin(), field.end(), 0.0);
}

double lp_norm(std::span<const double> field, const Grid& grid, double p) {
  if (!(p >= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "lp_norm requires p >= 1");
  }
  if (field.size() != static_cast<std::size_t>(grid.n())) {
    throw Error(ErrorCode::length_mismatch, "field length does not match grid");
  }
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : field) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  if (p == 1.0) {
    for (double v : field) sum += std::abs(v);
    return grid.dx() * sum;
  }
  if (p == 2.0) {
    for (double v : field) sum += v * v;
    return std::sqrt(grid.dx() * sum);
  }
  for (double v : field) sum += std::pow(std::abs(v), p);
  return std::pow(grid.dx() * sum, 1.0 / p);
}

double sobolev_seminorm(std::span<const double> field, const Grid& grid,
                        int k) {
  Field d;
  switch (k) {
    case 1: d = deriv(field, grid, 1); break;
    case 2: d = deriv(field, grid, 2); break;
    case 3: d = deriv(deriv(field, grid, 2), grid, 1); break;
    case 4: d = deriv(deriv(field, grid, 2), grid, 2); break;
    default:
      throw Error(ErrorCode::invalid_argument,
                  "Sobolev seminorm order must be 1..4");
  }
  return lp_norm(d, grid, 2.0);
}

}  // namespace dvflow
