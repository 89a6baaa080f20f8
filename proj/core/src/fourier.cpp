#include "maxtrunc/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "maxtrunc/errors.hpp"

namespace maxtrunc::grid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{-2 pi i t}, reduced mod 1 first to keep large products accurate.
cdouble turn(double t) {
  const double frac = t - std::nearbyint(t);
  return {std::cos(kTwoPi * frac), -std::sin(kTwoPi * frac)};
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t fft_length(double h, double eta) {
  const double n = 1.0 / (h * eta);
  const double r = std::nearbyint(n);
  if (!(r >= 1.0) || std::abs(n - r) > 1e-9 * r || r > 1e9) return 0;
  return static_cast<std::size_t>(r);
}

void check_dimensions(const GridSignal& f, const GridSpec& xi) {
  if (f.spec.dimension() != xi.dimension()) {
    throw InvalidArgument("signal and frequency grid differ in dimension");
  }
}

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) throw BudgetExceeded("FFT buffer allocation failed");
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

struct FftwPlan {
  FftwPlan(const std::vector<int>& dims, fftw_complex* in, fftw_complex* out) {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), in, out, FFTW_FORWARD,
                         FFTW_ESTIMATE);
    if (plan == nullptr) throw NumericalError("FFT planning failed");
  }
  ~FftwPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
  fftw_plan plan;
};

GridSignal fourier_fft(const GridSignal& f, const GridSpec& xi) {
  const GridSpec& x = f.spec;
  const std::size_t d = x.dimension();
  std::vector<std::size_t> lengths(d);
  std::vector<int> dims(d);
  std::vector<std::vector<cdouble>> pre(d), post(d);
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) {
    lengths[j] = fft_length(x.spacing()[j], xi.spacing()[j]);
    dims[j] = static_cast<int>(lengths[j]);
    total *= lengths[j];
    pre[j].resize(x.shape()[j]);
    for (std::size_t n = 0; n < pre[j].size(); ++n) {
      pre[j][n] = turn(static_cast<double>(n) * x.spacing()[j] * xi.origin()[j]);
    }
    post[j].resize(xi.shape()[j]);
    for (std::size_t k = 0; k < post[j].size(); ++k) {
      post[j][k] = turn(x.origin()[j] * xi.coordinate(j, k));
    }
  }

  FftwBuffer in(total);
  FftwBuffer out(total);
  for (std::size_t i = 0; i < total; ++i) in.data[i][0] = in.data[i][1] = 0.0;
  std::vector<std::size_t> padded_stride(d, 1);
  for (std::size_t j = d - 1; j-- > 0;) padded_stride[j] = padded_stride[j + 1] * lengths[j + 1];
  for (std::size_t s = 0; s < x.size(); ++s) {
    cdouble v = f.values[s];
    std::size_t target = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t n = x.index(s, j);
      v *= pre[j][n];
      target += n * padded_stride[j];
    }
    in.data[target][0] = v.real();
    in.data[target][1] = v.imag();
  }

  FftwPlan plan(dims, in.data, out.data);
  fftw_execute_dft(plan.plan, in.data, out.data);

  const double weight = x.cell_volume();
  std::vector<cdouble> values(xi.size());
  for (std::size_t s = 0; s < xi.size(); ++s) {
    cdouble phase = weight;
    std::size_t source = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t k = xi.index(s, j);
      phase *= post[j][k];
      source += k * padded_stride[j];
    }
    values[s] = phase * cdouble(out.data[source][0], out.data[source][1]);
  }
  return GridSignal(xi, std::move(values));
}

}  // namespace

bool fft_compatible(const GridSpec& x, const GridSpec& xi) {
  if (x.dimension() != xi.dimension()) return false;
  for (std::size_t j = 0; j < x.dimension(); ++j) {
    const std::size_t n = fft_length(x.spacing()[j], xi.spacing()[j]);
    if (!is_power_of_two(n) || n < x.shape()[j] || n < xi.shape()[j]) return false;
  }
  return true;
}

GridSpec frequency_grid_for(const GridSpec& x, std::size_t pad) {
  const std::size_t d = x.dimension();
  std::vector<std::size_t> shape(d);
  std::vector<double> spacing(d), origin(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t n = 1;
    while (n < x.shape()[j] * std::max<std::size_t>(pad, 1)) n *= 2;
    shape[j] = n;
    spacing[j] = 1.0 / (static_cast<double>(n) * x.spacing()[j]);
    origin[j] = -static_cast<double>(n / 2) * spacing[j];
  }
  return GridSpec(std::move(shape), std::move(spacing), std::move(origin));
}

GridSignal grid_fourier_direct(const GridSignal& f, const GridSpec& xi) {
  check_dimensions(f, xi);
  const GridSpec& x = f.spec;
  const std::size_t d = x.dimension();
  std::vector<std::size_t> shape = x.shape();
  std::vector<cdouble> current = f.values;
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t n_in = shape[j];
    const std::size_t n_out = xi.shape()[j];
    std::vector<cdouble> matrix(n_out * n_in);
    for (std::size_t k = 0; k < n_out; ++k) {
      for (std::size_t n = 0; n < n_in; ++n) {
        matrix[k * n_in + n] = x.spacing()[j] * turn(x.coordinate(j, n) * xi.coordinate(j, k));
      }
    }
    std::size_t outer = 1, inner = 1;
    for (std::size_t i = 0; i < j; ++i) outer *= shape[i];
    for (std::size_t i = j + 1; i < d; ++i) inner *= shape[i];
    std::vector<cdouble> next(outer * n_out * inner);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t k = 0; k < n_out; ++k) {
        cdouble* dst = &next[(o * n_out + k) * inner];
        for (std::size_t n = 0; n < n_in; ++n) {
          const cdouble w = matrix[k * n_in + n];
          const cdouble* src = &current[(o * n_in + n) * inner];
          for (std::size_t t = 0; t < inner; ++t) dst[t] += w * src[t];
        }
      }
    }
    current = std::move(next);
    shape[j] = n_out;
  }
  return GridSignal(xi, std::move(current));
}

GridSignal grid_fourier(const GridSignal& f, const GridSpec& xi) {
  check_dimensions(f, xi);
  if (fft_compatible(f.spec, xi)) return fourier_fft(f, xi);
  return grid_fourier_direct(f, xi);
}

cdouble fourier_at(const GridSignal& f, std::span<const double> xi) {
  const GridSpec& x = f.spec;
  if (xi.size() != x.dimension()) throw InvalidArgument("frequency has the wrong dimension");
  std::vector<std::vector<cdouble>> factors(x.dimension());
  for (std::size_t j = 0; j < x.dimension(); ++j) {
    factors[j].resize(x.shape()[j]);
    for (std::size_t n = 0; n < x.shape()[j]; ++n) factors[j][n] = turn(x.coordinate(j, n) * xi[j]);
  }
  cdouble acc = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s) {
    cdouble v = f.values[s];
    if (v == 0.0) continue;
    for (std::size_t j = 0; j < x.dimension(); ++j) v *= factors[j][x.index(s, j)];
    acc += v;
  }
  return acc * x.cell_volume();
}

}  // namespace maxtrunc::grid
