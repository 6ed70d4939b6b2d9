#include "sqbs/darkport.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sqbs {
namespace {

std::complex<double> dark_beta(const DarkPortParams& p) {
  const double u = p.squeeze.theta - 2.0 * p.phi;
  const KappaValue k = kappa(p.squeeze.r, u);
  const double sign = p.delta < 0.0 ? -1.0 : 1.0;
  // -alpha delta kappa with alpha delta = sign(delta) sqrt(|alpha delta|^2) e^{i phi}
  return -sign * std::sqrt(p.alpha_delta_sq) *
         std::polar(k.modulus, p.phi + k.phase);
}

}  // namespace

KappaValue kappa(double r, double angle) {
  if (!(r >= 0.0)) throw std::invalid_argument("kappa: r must be >= 0");
  const std::complex<double> k =
      std::cosh(r) + std::polar(1.0, angle) * std::sinh(r);
  return {std::abs(k), std::arg(k)};
}

std::complex<double> phase_delta(double r, double theta, double phi) {
  if (!(r >= 0.0)) throw std::invalid_argument("phase_delta: r must be >= 0");
  return -0.5 * std::sin(theta - 2.0 * phi) * std::polar(1.0, -2.0 * phi) *
         std::sinh(2.0 * r);
}

MarginalDistribution dark_distribution(const DarkPortParams& p, int n_max,
                                       double norm_tol) {
  if (n_max < 0) {
    throw std::invalid_argument("dark_distribution: n_max must be >= 0");
  }
  if (!(p.alpha_delta_sq >= 0.0)) {
    throw std::invalid_argument("dark_distribution: |alpha delta|^2 must be >= 0");
  }
  const std::vector<LogComplex> f = fock_coeff(p.squeeze, dark_beta(p), n_max);

  MarginalDistribution m;
  m.port = 1;
  m.probs.assign(n_max + 1, 0.0);
  double tot = 0.0, s1 = 0.0, s2 = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    double prob = 0.0;
    if (!f[n].is_zero()) {
      prob = std::exp(2.0 * f[n].log_mag - std::lgamma(n + 1.0));
    }
    m.probs[n] = prob;
    tot += prob;
    s1 += n * prob;
    s2 += static_cast<double>(n) * n * prob;
  }
  if (1.0 - tot > norm_tol) {
    std::ostringstream msg;
    msg << "dark_distribution: defect " << 1.0 - tot << " above norm_tol "
        << norm_tol << " at n_max=" << n_max;
    throw GridTooSmall(msg.str());
  }
  m.mean = s1 / tot;
  m.variance = s2 / tot - m.mean * m.mean;
  return m;
}

MarginalDistribution dark_distribution_adaptive(const DarkPortParams& p,
                                                double norm_tol) {
  for (int n_max = 64; n_max <= (1 << 15); n_max *= 2) {
    try {
      return dark_distribution(p, n_max, norm_tol);
    } catch (const GridTooSmall&) {
    }
  }
  throw GridTooSmall("dark_distribution_adaptive: defect above tolerance at n_max=32768");
}

Moments dark_moments(const DarkPortParams& p) {
  const double r = p.squeeze.r;
  const double u = p.squeeze.theta - 2.0 * p.phi;
  const double lambda = kappa(r, u).phase;
  const double a = p.alpha_delta_sq;
  const double c2 = std::cosh(2.0 * r), s2 = std::sinh(2.0 * r);
  const double c4 = std::cosh(4.0 * r), s4 = std::sinh(4.0 * r);
  const double sh = std::sinh(r), ch = std::cosh(r);
  const double scale = c2 + std::cos(u) * s2;  // |kappa|^2
  Moments m;
  m.mean = a * scale * (c2 - std::cos(u - 2.0 * lambda) * s2) + sh * sh;
  m.variance = a * scale * (c4 - std::cos(u - 2.0 * lambda) * s4) +
               2.0 * sh * sh * ch * ch;
  return m;
}

double optimal_r(double alpha_delta_sq) {
  if (!(alpha_delta_sq > 0.0)) {
    throw std::invalid_argument("optimal_r: |alpha delta|^2 must be > 0");
  }
  // g'(r) = -2 A e^{-2r} + sinh 4r is strictly increasing, negative at 0.
  const auto dg = [&](double r) {
    return -2.0 * alpha_delta_sq * std::exp(-2.0 * r) + std::sinh(4.0 * r);
  };
  double lo = 0.0, hi = 5.0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (dg(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace sqbs
