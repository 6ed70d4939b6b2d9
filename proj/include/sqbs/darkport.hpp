#pragma once

#include <complex>

#include "sqbs/distribution.hpp"

namespace sqbs {

/// Strong-coherent-field regime at gamma = pi/2 + delta: port 1 carries a
/// weak squeezed coherent state whose amplitude scales with alpha*delta.
struct DarkPortParams {
  double alpha_delta_sq = 0.0;  // |alpha * delta|^2
  SqueezeParam squeeze;
  double phi = 0.0;    // coherent phase
  double delta = 1e-3; // beam-splitter offset; only its sign enters beta
};

/// kappa = |kappa| e^{i lambda} = cosh r + e^{i angle} sinh r.
struct KappaValue {
  double modulus = 1.0;
  double phase = 0.0;  // lambda
};

KappaValue kappa(double r, double angle);

/// -1/2 sin(theta - 2 phi) e^{-2 i phi} sinh(2 r). Irrelevant to counting
/// statistics; exposed for completeness.
std::complex<double> phase_delta(double r, double theta, double phi);

/// Dark-port photon distribution P(n) = |f_n(zeta, -alpha*delta*kappa)|^2/n!.
/// Throws GridTooSmall if n_max leaves more than norm_tol of the mass out.
MarginalDistribution dark_distribution(const DarkPortParams& p, int n_max,
                                       double norm_tol = 1e-6);

/// Doubles n_max until dark_distribution captures 1 - norm_tol.
MarginalDistribution dark_distribution_adaptive(const DarkPortParams& p,
                                                double norm_tol = 1e-6);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Closed-form mean and variance of the dark-port distribution.
Moments dark_moments(const DarkPortParams& p);

/// The r minimizing |alpha*delta|^2 e^{-2r} + 2 sinh^2 r cosh^2 r, located by
/// bisection on the derivative sign (the derivative is strictly increasing).
double optimal_r(double alpha_delta_sq);

}  // namespace sqbs
