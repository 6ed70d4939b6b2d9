#pragma once

#include <complex>
#include <vector>

#include "sqbs/log_complex.hpp"

namespace sqbs {

/// Squeezing parameter zeta = r * exp(i*theta) in polar form.
struct SqueezeParam {
  double r = 0.0;      // magnitude, >= 0
  double theta = 0.0;  // phase, normalized to (-pi, pi]

  SqueezeParam() = default;
  SqueezeParam(double r_in, double theta_in);
  static SqueezeParam from_complex(std::complex<double> zeta);
  std::complex<double> to_complex() const;
};

/// Coherent amplitude alpha = mag * exp(i*phase).
struct CoherentParam {
  double mag = 0.0;
  double phase = 0.0;

  CoherentParam() = default;
  CoherentParam(double mag_in, double phase_in);
  std::complex<double> value() const;
};

// Below this squeezing magnitude the Fock-amplitude formula is evaluated on
// its analytic coherent-limit branch; the general expression is a 0/0 limit
// at r = 0 (the Hermite argument diverges while its prefactor vanishes).
inline constexpr double kCoherentLimitR = 1e-8;

/// H_0(x) .. H_nmax(x) by the three-term recurrence, carried in LogComplex.
std::vector<LogComplex> hermite_seq(std::complex<double> x, int n_max);

/// Fock amplitudes f_0 .. f_nmax of the squeezed coherent state
/// S(zeta) D(beta) |0>; the amplitude at level n is f_n / sqrt(n!).
std::vector<LogComplex> fock_coeff(const SqueezeParam& zeta,
                                   std::complex<double> beta, int n_max);

}  // namespace sqbs
