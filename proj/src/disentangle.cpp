#include "sqbs/disentangle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sqbs {
namespace {

constexpr double kPi = M_PI;
constexpr double kResidualTarget = 1e-13;
constexpr int kMaxIterations = 100;

Eigen::Vector4d pack(const DisentangleCoeffs& c) {
  return {c.sigma1, c.sigma2, c.sigmaS, c.sigmaT};
}

DisentangleCoeffs unpack(const Eigen::Vector4d& x) {
  return {x[0], x[1], x[2], x[3]};
}

Eigen::Vector4d residual_vec(const Eigen::Vector4d& x, const Eigen::Matrix2d& lhs) {
  const Eigen::Matrix2d rhs = rhs_matrix(unpack(x));
  Eigen::Vector4d f;
  f << rhs(0, 0) - lhs(0, 0), rhs(0, 1) - lhs(0, 1), rhs(1, 0) - lhs(1, 0),
      rhs(1, 1) - lhs(1, 1);
  return f;
}

Eigen::Matrix4d jacobian(const Eigen::Vector4d& x) {
  const double e1 = std::exp(x[0]);
  const double e2 = std::exp(x[1]);
  const double shS = std::sinh(x[2]);
  const double chS = std::cosh(x[2]);
  const double sT = std::sin(x[3]);
  const double cT = std::cos(x[3]);

  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
  // rows: entries (0,0), (0,1), (1,0), (1,1); columns: sigma1, sigma2, sigmaS, sigmaT
  j(0, 0) = e1 * (sT * shS + cT * chS);
  j(0, 2) = e1 * (sT * chS + cT * shS);
  j(0, 3) = e1 * (cT * shS - sT * chS);

  j(1, 1) = -e2 * (sT * chS + cT * shS);
  j(1, 2) = -e2 * (sT * shS + cT * chS);
  j(1, 3) = -e2 * (cT * chS - sT * shS);

  j(2, 0) = e1 * (sT * chS - cT * shS);
  j(2, 2) = e1 * (sT * shS - cT * chS);
  j(2, 3) = e1 * (cT * chS + sT * shS);

  j(3, 1) = -e2 * (sT * shS - cT * chS);
  j(3, 2) = -e2 * (sT * chS - cT * shS);
  j(3, 3) = -e2 * (cT * shS + sT * chS);
  return j;
}

bool newton(Eigen::Vector4d& x, const Eigen::Matrix2d& lhs) {
  Eigen::Vector4d f = residual_vec(x, lhs);
  for (int it = 0; it < kMaxIterations; ++it) {
    const double fn = f.cwiseAbs().maxCoeff();
    if (fn <= kResidualTarget) return true;
    const Eigen::Vector4d step = jacobian(x).partialPivLu().solve(-f);
    double t = 1.0;
    bool moved = false;
    for (int halve = 0; halve < 40; ++halve) {
      const Eigen::Vector4d cand = x + t * step;
      const Eigen::Vector4d fc = residual_vec(cand, lhs);
      if (fc.cwiseAbs().maxCoeff() < fn) {
        x = cand;
        f = fc;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) return false;
  }
  return f.cwiseAbs().maxCoeff() <= 1e-12;
}

Eigen::Vector4d seed_for(double gamma, double r) {
  // Interpolating seed matching every closed form: sigma1 = r sin^2, sigma2 =
  // r cos^2, sigmaS = (r/2) sin 2g. Near pi/2 the first-order expansion is
  // the better basin.
  if (gamma > 3.0 * kPi / 8.0 && gamma < 5.0 * kPi / 8.0) {
    return pack(linearized(gamma - kPi / 2.0, r));
  }
  const double sg = std::sin(gamma);
  const double cg = std::cos(gamma);
  return {r * sg * sg, r * cg * cg, 0.5 * r * std::sin(2.0 * gamma), 0.0};
}

}  // namespace

BeamSplitterAngle::BeamSplitterAngle(double g) : gamma(g) {
  if (!(g >= 0.0 && g <= kPi)) {
    throw std::invalid_argument("BeamSplitterAngle: gamma must lie in [0, pi]");
  }
}

BeamSplitterAngle reduce_angle(double gamma) {
  double g = std::fabs(std::remainder(gamma, 2.0 * kPi));  // [0, pi]
  if (g > kPi / 2.0) g = kPi - g;
  return BeamSplitterAngle(g);
}

Eigen::Matrix2d lhs_matrix(BeamSplitterAngle gamma, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("lhs_matrix: r must be >= 0");
  const double sg = std::sin(gamma.gamma);
  const double cg = std::cos(gamma.gamma);
  Eigen::Matrix2d a;
  a << sg * sg, -cg * sg, -cg * sg, cg * cg;
  return Eigen::Matrix2d::Identity() + (std::exp(r) - 1.0) * a;
}

Eigen::Matrix2d rhs_matrix(const DisentangleCoeffs& c) {
  const double e1 = std::exp(c.sigma1);
  const double e2 = std::exp(c.sigma2);
  const double shS = std::sinh(c.sigmaS);
  const double chS = std::cosh(c.sigmaS);
  const double sT = std::sin(c.sigmaT);
  const double cT = std::cos(c.sigmaT);
  Eigen::Matrix2d m;
  m << e1 * (sT * shS + cT * chS), -e2 * (sT * chS + cT * shS),
      e1 * (sT * chS - cT * shS), -e2 * (sT * shS - cT * chS);
  return m;
}

double reconstruct_residual(const DisentangleCoeffs& c, BeamSplitterAngle gamma,
                            double r) {
  return (lhs_matrix(gamma, r) - rhs_matrix(c)).cwiseAbs().maxCoeff();
}

DisentangleCoeffs linearized(double delta, double r) {
  return {r, 0.0, -delta * std::sinh(r), delta * (1.0 - std::cosh(r))};
}

DisentangleCoeffs solve_disentangling(BeamSplitterAngle gamma, double r) {
  if (!(r >= 0.0)) {
    throw std::invalid_argument("solve_disentangling: r must be >= 0");
  }
  if (r == 0.0) return {0.0, 0.0, 0.0, 0.0};

  const auto finish = [&](const Eigen::Vector4d& x) {
    DisentangleCoeffs c = unpack(x);
    if (std::fabs(c.sigmaT) >= kPi / 2.0) {
      std::ostringstream msg;
      msg << "solve_disentangling: left the |sigmaT| < pi/2 branch at gamma="
          << gamma.gamma << ", r=" << r;
      throw NoConvergence(msg.str());
    }
    return c;
  };

  Eigen::Vector4d x = seed_for(gamma.gamma, r);
  if (newton(x, lhs_matrix(gamma, r))) return finish(x);

  // Continuation from r = 0, where the solution is exactly zero.
  x.setZero();
  const double step = 0.1;
  const int n_steps = static_cast<int>(std::ceil(r / step));
  for (int k = 1; k <= n_steps; ++k) {
    const double rk = std::min(r, k * step);
    if (!newton(x, lhs_matrix(gamma, rk))) {
      std::ostringstream msg;
      msg << "solve_disentangling: no convergence at gamma=" << gamma.gamma
          << ", r=" << rk << " (continuation step " << k << ")";
      throw NoConvergence(msg.str());
    }
  }
  return finish(x);
}

}  // namespace sqbs
