#pragma once

#include <Eigen/Dense>
#include <complex>
#include <filesystem>
#include <utility>

#include "sqbs/distribution.hpp"

namespace sqbs {

/// Two-mode number basis truncated at `cutoff` photons per mode.
struct FockSpace {
  int cutoff = 0;

  explicit FockSpace(int cutoff_in);
  int dim() const { return (cutoff + 1) * (cutoff + 1); }
  int index(int n1, int n2) const { return n1 * (cutoff + 1) + n2; }
};

struct FockState {
  FockSpace space;
  Eigen::VectorXcd amplitudes;
  double truncation_defect = 0.0;  // 1 - |psi|^2 accumulated so far
};

struct FockOperator {
  FockSpace space;
  Eigen::MatrixXcd matrix;
};

// A state that loses more squared norm than this across unitary applications
// raises TruncationExceeded rather than silently returning garbage.
inline constexpr double kTruncationBudget = 1e-7;

FockState vacuum_state(FockSpace space);

/// Ladder operators of one mode embedded in the two-mode space:
/// (annihilate, create). mode is 1 or 2.
std::pair<FockOperator, FockOperator> mode_ops(FockSpace space, int mode);

FockOperator displacement(FockSpace space, int mode, std::complex<double> alpha);
FockOperator squeeze_operator(FockSpace space, int mode, const SqueezeParam& zeta);

/// exp(gamma (b1+ b2 - b1 b2+)), built block-by-block on the total-photon-
/// number eigenspaces it conserves. Sign convention pinned by the Heisenberg
/// relation U+ a1 U = cos(gamma) a1 + sin(gamma) a2.
FockOperator beamsplitter(FockSpace space, double gamma);

/// Applies op to psi with norm bookkeeping; throws TruncationExceeded when
/// the accumulated defect exceeds kTruncationBudget.
FockState apply(const FockOperator& op, const FockState& psi);

/// Brute-force ground truth: U_BS S2(zeta) D1(alpha) |0,0> on the truncated
/// space, probabilities |amplitude|^2. Single-mode operators are applied as
/// (cutoff+1)-dimensional matrices and the beam splitter blockwise, so no
/// dim x dim matrix is ever materialized.
JointDistribution simulate(const CoherentParam& alpha, const SqueezeParam& zeta,
                           double gamma, int cutoff);

void write_golden_csv(const std::filesystem::path& path,
                      const JointDistribution& dist, int cutoff);

struct GoldenData {
  int cutoff = 0;
  double alpha_mag = 0.0, alpha_phase = 0.0;
  double r = 0.0, theta = 0.0, gamma = 0.0;
  Eigen::MatrixXd probs;
};

GoldenData read_golden_csv(const std::filesystem::path& path);

namespace detail {
// Single-mode building blocks on a (cutoff+1)-dimensional basis.
Eigen::MatrixXcd single_mode_annihilator(int cutoff);
Eigen::MatrixXcd single_mode_displacement(int cutoff, std::complex<double> alpha);
Eigen::MatrixXcd single_mode_squeeze(int cutoff, const SqueezeParam& zeta);
}  // namespace detail

}  // namespace sqbs
