#pragma once

#include <complex>
#include <vector>

#include "sqbs/disentangle.hpp"
#include "sqbs/fock_amplitudes.hpp"

namespace sqbs {

struct DistributionParams {
  CoherentParam alpha;
  SqueezeParam zeta;
  BeamSplitterAngle gamma;
  DisentangleCoeffs coeffs;

  /// Folds gamma into [0, pi/2] and solves for the disentangling coefficients.
  static DistributionParams make(const CoherentParam& alpha,
                                 const SqueezeParam& zeta, double gamma);
};

/// Scalar coefficients of the joint-distribution sum, derived from the
/// disentangling coefficients and the input state.
struct CoeffBlock {
  std::complex<double> lambdaS{0.0, 0.0};  // e^{i theta} tanh sigmaS
  std::complex<double> nuS{0.0, 0.0};      // e^{-i theta} tanh sigmaS
  double muS = 0.0;                        // -2 ln cosh sigmaS  (<= 0)
  double lambdaT = 0.0;                    // tan sigmaT
  double nuT = 0.0;                        // tan sigmaT
  double muT = 0.0;                        // -2 ln cos sigmaT   (>= 0)
  std::complex<double> beta1{0.0, 0.0};    // alpha cos gamma
  std::complex<double> beta2{0.0, 0.0};    // alpha sin gamma
  SqueezeParam zeta1;                      // e^{i theta} sigma1
  SqueezeParam zeta2;                      // e^{i theta} sigma2

  /// Requires |sigmaT| < pi/2 so that cos sigmaT > 0.
  static CoeffBlock make(const DistributionParams& p);

  /// Same input state with sigmaS and sigmaT forced to zero: the two output
  /// ports become a product of squeezed coherent states. Baseline comparator.
  CoeffBlock without_entanglers() const;
};

struct MarginalDistribution {
  std::vector<double> probs;
  double mean = 0.0;
  double variance = 0.0;
  int port = 1;
};

/// Joint photon probabilities on a truncated (n1, n2) grid.
struct JointDistribution {
  int n1_max = 0;
  int n2_max = 0;
  std::vector<double> probs;  // row-major, probs[n1 * (n2_max+1) + n2]
  double truncation_defect = 0.0;
  DistributionParams params;

  double at(int n1, int n2) const { return probs[n1 * (n2_max + 1) + n2]; }
  double total() const;
};

/// Single joint probability P(n1, n2) with an explicit cutoff on the free
/// inner summation index. Throws CutoffTooSmall when the certified relative
/// tail of the inner series exceeds tail_tol.
double joint_prob(const DistributionParams& p, int n1, int n2, int m1_cutoff,
                  double tail_tol = 1e-9);

/// Whole grid with the inner cutoff grown geometrically (16, 32, ...) until
/// its certified tail is below 1e-3 * norm_tol; then requires the captured
/// probability to be within norm_tol of 1, else throws GridTooSmall.
JointDistribution full_grid(const DistributionParams& p, int n1_max, int n2_max,
                            double norm_tol);

/// full_grid with the entangling factors switched off (sigmaS = sigmaT = 0).
JointDistribution no_entangle_grid(const DistributionParams& p, int n1_max,
                                   int n2_max, double norm_tol);

MarginalDistribution marginal(const JointDistribution& joint, int port);

}  // namespace sqbs
