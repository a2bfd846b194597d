#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sparsebeam {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;

/// Unnormalized DFT of arbitrary length: out_k = sum_m in_m e^{sign 2 pi j m k / len}.
/// sign must be -1 or +1. Backed by FFTW; safe to call from several threads.
CVec dft(std::span<const cplx> in, int sign);

/// Grid of n directions observed by an n-element half-wavelength array.
///
/// Conventions used throughout the library:
///   omega = e^{2 pi j / n}
///   forward F_{p,m}  = omega^{-p m} / sqrt(n)   (antenna -> direction)
///   inverse F'_{m,p} = omega^{+p m} / sqrt(n)   (direction -> antenna)
/// Both are unitary, so F F' = I and Parseval holds with no extra factors.
/// F' is symmetric, so "row p" and "column p" of F' coincide; the steering
/// vector of grid direction p is F'_p.
///
/// Phase patterns are unit-modulus, i.e. sqrt(n) times a forward row. A single
/// beam aimed at p therefore sees |a . F'_p|^2 = n (beam_gain()).
class FourierContext {
 public:
  explicit FourierContext(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  double inv_sqrt_n() const noexcept { return inv_sqrt_n_; }
  /// Power gain of a matched single beam: |single_beam(p) . F'_p|^2.
  double beam_gain() const noexcept { return static_cast<double>(n_); }

  /// omega^k for any integer k.
  cplx omega_pow(long long k) const noexcept;

  CVec forward(std::span<const cplx> x) const;
  CVec inverse(std::span<const cplx> x) const;

  /// p-th column (= row) of F'. Unit norm.
  CVec steering_column(std::size_t p) const;
  /// p-th row of F (unitary scaling).
  CVec forward_row(std::size_t p) const;
  /// Steering vector at a continuous spatial frequency `freq` in grid units:
  /// entry m is e^{2 pi j m freq / n} / sqrt(n). Equals steering_column(p) at freq = p.
  CVec steering_at(double freq) const;
  /// Steering vector of a physical angle in (0, 180) degrees:
  /// entry m is e^{j pi m cos(angle)} / sqrt(n).
  CVec off_grid_steering(double angle_deg) const;

 private:
  std::size_t n_;
  double inv_sqrt_n_;
  CVec omega_;  // omega^k, k in [0, n)
};

/// Angle <-> grid mapping for half-wavelength spacing.
/// Spatial frequency (grid units, in [0, n)) of angle theta: n cos(theta) / 2 mod n.
double freq_of_angle(std::size_t n, double angle_deg);
/// Nearest grid index: round(n cos(theta) / 2) mod n.
std::size_t index_of_angle(std::size_t n, double angle_deg);
/// Inverse of freq_of_angle. Frequencies above n/2 wrap to negative cosines.
double angle_of_freq(std::size_t n, double freq);

/// Circular distance between two spatial frequencies on a length-n grid.
double circular_distance(double a, double b, std::size_t n);

}  // namespace sparsebeam
