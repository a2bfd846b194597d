#include "sparsebeam/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "sparsebeam/rng.hpp"

namespace sparsebeam {

namespace {

// Plan creation in FFTW is not thread-safe; execution through the new-array
// interface is. Plans are created once per (length, sign) and never destroyed.
class PlanCache {
 public:
  fftw_plan get(int len, int sign) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(len, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<fftw_complex> scratch_in(static_cast<std::size_t>(len));
    std::vector<fftw_complex> scratch_out(static_cast<std::size_t>(len));
    fftw_plan plan = fftw_plan_dft_1d(len, scratch_in.data(), scratch_out.data(),
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void CounterStream::normal_pair(std::uint64_t counter, double& z0, double& z1) const noexcept {
  double u1 = uniform(2 * counter);
  const double u2 = uniform(2 * counter + 1);
  if (u1 < 1e-300) u1 = 1e-300;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  z0 = radius * std::cos(2.0 * kPi * u2);
  z1 = radius * std::sin(2.0 * kPi * u2);
}

CVec dft(std::span<const cplx> in, int sign) {
  if (sign != -1 && sign != 1) throw std::invalid_argument("dft: sign must be +1 or -1");
  CVec out(in.size());
  if (in.empty()) return out;
  const int len = static_cast<int>(in.size());
  fftw_plan plan = plan_cache().get(len, sign);
  // FFTW never writes to the input of an out-of-place complex transform.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
  return out;
}

FourierContext::FourierContext(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("FourierContext: n must be positive");
  inv_sqrt_n_ = 1.0 / std::sqrt(static_cast<double>(n));
  omega_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    omega_[k] = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
  }
}

cplx FourierContext::omega_pow(long long k) const noexcept {
  const auto n = static_cast<long long>(n_);
  long long r = k % n;
  if (r < 0) r += n;
  return omega_[static_cast<std::size_t>(r)];
}

CVec FourierContext::forward(std::span<const cplx> x) const {
  if (x.size() != n_) throw std::invalid_argument("FourierContext::forward: size mismatch");
  CVec out = dft(x, -1);
  for (auto& v : out) v *= inv_sqrt_n_;
  return out;
}

CVec FourierContext::inverse(std::span<const cplx> x) const {
  if (x.size() != n_) throw std::invalid_argument("FourierContext::inverse: size mismatch");
  CVec out = dft(x, +1);
  for (auto& v : out) v *= inv_sqrt_n_;
  return out;
}

CVec FourierContext::steering_column(std::size_t p) const {
  if (p >= n_) throw std::out_of_range("steering_column: direction index out of range");
  CVec v(n_);
  for (std::size_t m = 0; m < n_; ++m) {
    v[m] = omega_[(m * p) % n_] * inv_sqrt_n_;
  }
  return v;
}

CVec FourierContext::forward_row(std::size_t p) const {
  if (p >= n_) throw std::out_of_range("forward_row: direction index out of range");
  CVec v(n_);
  for (std::size_t m = 0; m < n_; ++m) {
    v[m] = std::conj(omega_[(m * p) % n_]) * inv_sqrt_n_;
  }
  return v;
}

CVec FourierContext::steering_at(double freq) const {
  CVec v(n_);
  const double step = 2.0 * kPi * freq / static_cast<double>(n_);
  for (std::size_t m = 0; m < n_; ++m) {
    v[m] = std::polar(inv_sqrt_n_, step * static_cast<double>(m));
  }
  return v;
}

CVec FourierContext::off_grid_steering(double angle_deg) const {
  if (!(angle_deg > 0.0 && angle_deg < 180.0)) {
    throw std::out_of_range("off_grid_steering: angle must lie in (0, 180) degrees");
  }
  const double c = std::cos(angle_deg * kPi / 180.0);
  CVec v(n_);
  for (std::size_t m = 0; m < n_; ++m) {
    v[m] = std::polar(inv_sqrt_n_, kPi * static_cast<double>(m) * c);
  }
  return v;
}

double freq_of_angle(std::size_t n, double angle_deg) {
  const double nd = static_cast<double>(n);
  double f = nd * std::cos(angle_deg * kPi / 180.0) / 2.0;
  f = std::fmod(f, nd);
  if (f < 0) f += nd;
  if (f >= nd) f -= nd;
  return f;
}

std::size_t index_of_angle(std::size_t n, double angle_deg) {
  const double nd = static_cast<double>(n);
  const double f = std::round(nd * std::cos(angle_deg * kPi / 180.0) / 2.0);
  long long p = static_cast<long long>(f) % static_cast<long long>(n);
  if (p < 0) p += static_cast<long long>(n);
  return static_cast<std::size_t>(p);
}

double angle_of_freq(std::size_t n, double freq) {
  const double nd = static_cast<double>(n);
  double u = std::fmod(freq, nd);
  if (u < 0) u += nd;
  if (u > nd / 2.0) u -= nd;
  const double c = std::clamp(2.0 * u / nd, -1.0, 1.0);
  return std::acos(c) * 180.0 / kPi;
}

double circular_distance(double a, double b, std::size_t n) {
  const double nd = static_cast<double>(n);
  double d = std::fmod(std::abs(a - b), nd);
  return std::min(d, nd - d);
}

}  // namespace sparsebeam
