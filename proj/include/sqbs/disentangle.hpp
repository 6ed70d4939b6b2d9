#pragma once

#include <Eigen/Dense>

#include "sqbs/errors.hpp"

namespace sqbs {

/// Beam-splitter mixing angle. gamma = pi/4 is a 50/50 splitter, pi/2 full
/// reflection. The solver accepts [0, pi]; angles outside are folded in by
/// reduce_angle().
struct BeamSplitterAngle {
  double gamma = 0.0;

  BeamSplitterAngle() = default;
  explicit BeamSplitterAngle(double g);
};

/// Folds an arbitrary angle into [0, pi/2]. The output photon distribution
/// is invariant under gamma -> -gamma and gamma -> pi - gamma (per-mode
/// parity flips change amplitudes only by signs), so this loses nothing.
BeamSplitterAngle reduce_angle(double gamma);

/// The four real coefficients of the ordered-product factorization
/// exp(sigmaT*t12) exp(sigmaS*s12) exp(sigma1*s1) exp(sigma2*s2).
struct DisentangleCoeffs {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double sigmaS = 0.0;
  double sigmaT = 0.0;
};

/// I + (e^r - 1) * A with A the rank-one projector onto (sin g, -cos g).
Eigen::Matrix2d lhs_matrix(BeamSplitterAngle gamma, double r);

/// 2x2 representation of the ordered product of the four exponentials.
Eigen::Matrix2d rhs_matrix(const DisentangleCoeffs& c);

/// Max-norm of lhs_matrix - rhs_matrix; certificate that coeffs solve the
/// factorization problem at (gamma, r).
double reconstruct_residual(const DisentangleCoeffs& c, BeamSplitterAngle gamma,
                            double r);

/// First-order coefficients at gamma = pi/2 + delta.
DisentangleCoeffs linearized(double delta, double r);

/// Damped Newton on the four matrix-entry residuals, seeded from the nearest
/// closed form and continued in r if the plain seed fails. Guarantees
/// reconstruct_residual <= 1e-12 on return; throws NoConvergence otherwise.
DisentangleCoeffs solve_disentangling(BeamSplitterAngle gamma, double r);

}  // namespace sqbs
