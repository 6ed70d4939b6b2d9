#include "sqbs/fock_amplitudes.hpp"

#include <cmath>
#include <stdexcept>

namespace sqbs {

SqueezeParam::SqueezeParam(double r_in, double theta_in) {
  if (!(r_in >= 0.0)) {
    throw std::invalid_argument("SqueezeParam: squeezing magnitude must be >= 0");
  }
  r = r_in;
  theta = wrap_phase(theta_in);
}

SqueezeParam SqueezeParam::from_complex(std::complex<double> zeta) {
  SqueezeParam p;
  p.r = std::abs(zeta);
  p.theta = p.r > 0.0 ? std::arg(zeta) : 0.0;
  return p;
}

std::complex<double> SqueezeParam::to_complex() const {
  return std::polar(r, theta);
}

CoherentParam::CoherentParam(double mag_in, double phase_in) {
  if (!(mag_in >= 0.0)) {
    throw std::invalid_argument("CoherentParam: magnitude must be >= 0");
  }
  mag = mag_in;
  phase = wrap_phase(phase_in);
}

std::complex<double> CoherentParam::value() const {
  return std::polar(mag, phase);
}

std::vector<LogComplex> hermite_seq(std::complex<double> x, int n_max) {
  if (n_max < 0) throw std::invalid_argument("hermite_seq: n_max must be >= 0");
  std::vector<LogComplex> h(n_max + 1);
  h[0] = LogComplex::one();
  if (n_max == 0) return h;
  const LogComplex two_x = LogComplex::from(2.0 * x);
  h[1] = two_x;
  for (int n = 1; n < n_max; ++n) {
    // H_{n+1} = 2x H_n - 2n H_{n-1}
    h[n + 1] = logc_add(logc_mul(two_x, h[n]),
                        logc_mul(LogComplex::from_real(-2.0 * n), h[n - 1]));
  }
  return h;
}

std::vector<LogComplex> fock_coeff(const SqueezeParam& zeta,
                                   std::complex<double> beta, int n_max) {
  if (n_max < 0) throw std::invalid_argument("fock_coeff: n_max must be >= 0");
  std::vector<LogComplex> f(n_max + 1);

  if (zeta.r < kCoherentLimitR) {
    // coherent limit: f_n = beta^n exp(-|beta|^2 / 2)
    const double half_b2 = 0.5 * std::norm(beta);
    const LogComplex lb = LogComplex::from(beta);
    f[0] = LogComplex::from_polar(-half_b2, 0.0);
    for (int n = 1; n <= n_max; ++n) {
      if (lb.is_zero()) {
        f[n] = LogComplex::zero();
      } else {
        f[n] = LogComplex::from_polar(n * lb.log_mag - half_b2, n * lb.phase);
      }
    }
    return f;
  }

  const double r = zeta.r;
  const double theta = zeta.theta;
  const double log_tanh = std::log(std::tanh(r));
  const double log_cosh = std::log(std::cosh(r));

  const std::complex<double> x =
      beta * std::polar(1.0, -0.5 * theta) /
      std::sqrt(2.0 * std::cosh(r) * std::sinh(r));
  const std::vector<LogComplex> h = hermite_seq(x, n_max);

  // exp(-(|beta|^2 - e^{-i theta} beta^2 tanh r) / 2): a complex exponent,
  // so its real part lands in log_mag and its imaginary part in phase.
  const std::complex<double> expo =
      0.5 * (std::polar(1.0, -theta) * beta * beta * std::tanh(r) -
             std::complex<double>(std::norm(beta), 0.0));

  for (int n = 0; n <= n_max; ++n) {
    // (e^{i theta} tanh r)^{n/2} / 2^{n/2}, principal branch
    const double lm = 0.5 * n * (log_tanh - M_LN2) - 0.5 * log_cosh + expo.real();
    const double ph = 0.5 * n * theta + expo.imag();
    f[n] = logc_mul(LogComplex::from_polar(lm, ph), h[n]);
  }
  return f;
}

}  // namespace sqbs
