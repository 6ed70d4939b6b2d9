#include "sqbs/distribution.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sqbs {
namespace {

using cplx = std::complex<double>;

// Hard ceiling for the adaptive inner-series cutoff. The series converges
// geometrically with ratio below tanh of the entangling coefficients for
// every reachable parameter set, so hitting this means the request is
// malformed.
constexpr int kM1HardLimit = 4096;

// Per-term rounding scale used for the propagated noise bound: every term of
// an alternating sum carries a relative error of a few machine epsilon, so a
// sum is only trusted while it stays well above the coefficient-weighted
// accumulation of these errors.
const double kLogTermNoise = std::log(16.0 * 2.220446049250313e-16);
const double kLogFlagSafety = std::log(50.0);

double log_abs_or_neginf(cplx z) {
  const double m = std::abs(z);
  return m == 0.0 ? kNegInf : std::log(m);
}

// Positive log-sum-exp accumulator for noise bookkeeping.
class LogAbsAccumulator {
 public:
  void add(double lm) {
    if (std::isinf(lm) && lm < 0.0) return;
    if (lm > ref_) {
      acc_ *= std::exp(ref_ - lm);
      ref_ = lm;
    }
    acc_ += std::exp(lm - ref_);
  }
  double log_total() const {
    if (std::isinf(ref_) && ref_ < 0.0) return kNegInf;
    return acc_ > 0.0 ? ref_ + std::log(acc_) : kNegInf;
  }

 private:
  double ref_ = kNegInf;
  double acc_ = 0.0;
};

/// Grid evaluator for the joint-distribution quadruple sum.
///
/// The free inner index m1 couples to the rest of the sum only through the
/// shifted photon indices (N1, N2), so its series
///   G(N1, N2) = sum_m1 (-nuS)^m1 / m1! * f1[N1+m1] * f2[N2+m1]
/// is tabulated once per parameter set and shared read-only across the whole
/// grid; per cell only the triple (m2, m3, m4) sum remains. The f tables are
/// precomputed LogComplex sequences. The minus sign on nuS (and on nuT below)
/// belongs to the annihilation-side factors of the normal-ordered entangler
/// factorizations, exp(-nuS b1 b2) and exp(-nuT b1+ b2).
///
/// Every G entry also records the log of its absolute-value sum; cells
/// accumulate from it a certified noise bound, and a cell whose result sinks
/// into that bound is reported as unresolvable at double precision.
class GridEvaluator {
 public:
  GridEvaluator(const CoeffBlock& cb, int n_sum, int m1_cutoff, double tail_tol)
      : cb_(cb), n_sum_(n_sum), m1_cutoff_(m1_cutoff) {
    const int k_max = n_sum + m1_cutoff + 1;
    lgam_.resize(k_max + 2);
    for (int k = 0; k < static_cast<int>(lgam_.size()); ++k) {
      lgam_[k] = std::lgamma(static_cast<double>(k) + 1.0);
    }
    f1_ = fock_coeff(cb.zeta1, cb.beta1, k_max);
    f2_ = fock_coeff(cb.zeta2, cb.beta2, k_max);
    build_g_table(tail_tol);
  }

  bool m1_converged() const { return m1_ok_; }

  /// P(n1, n2); requires n1 + n2 <= n_sum. Sets `resolved` to false when the
  /// sum cancelled down into its own rounding-noise bound.
  double cell(int n1, int n2, bool& resolved) const {
    const double l_lamS = log_abs_or_neginf(cb_.lambdaS);
    const double l_lamT = log_abs_or_neginf({cb_.lambdaT, 0.0});
    const double l_nuT = log_abs_or_neginf({cb_.nuT, 0.0});
    const cplx rot_lamS =
        cb_.lambdaS == cplx{} ? 1.0 : cb_.lambdaS / std::abs(cb_.lambdaS);
    const double sign_lamT = cb_.lambdaT < 0.0 ? -1.0 : 1.0;
    const double sign_nuT = -cb_.nuT < 0.0 ? -1.0 : 1.0;  // sign of -nuT

    const double base =
        0.5 * cb_.muS * (1.0 + n1 + n2) + 0.5 * cb_.muT * (n2 - n1);
    const int stride = n_sum_ + 1;

    LogAccumulator acc;
    LogAbsAccumulator noise;
    const int m4_max = cb_.lambdaT == 0.0 ? 0 : n2;
    for (int m4 = 0; m4 <= m4_max; ++m4) {
      const double l4 = base + (m4 == 0 ? 0.0 : m4 * l_lamT) - lgam_[m4] +
                        lgam_[n1 + m4] - lgam_[n2 - m4] - cb_.muT * m4;
      const double s4 = (m4 & 1) ? sign_lamT : 1.0;
      const int m3_max = cb_.nuT == 0.0 ? 0 : n1 + m4;
      for (int m3 = 0; m3 <= m3_max; ++m3) {
        const double l3 = l4 + (m3 == 0 ? 0.0 : m3 * l_nuT) - lgam_[m3] +
                          lgam_[n2 + m3 - m4];
        const double s3 = s4 * ((m3 & 1) ? sign_nuT : 1.0);
        const int n1_0 = n1 - m3 + m4;  // N1 at m2 = 0
        const int n2_0 = n2 + m3 - m4;  // N2 at m2 = 0
        const int big_m2 = std::min(n1_0, n2_0);
        const int m2_max = cb_.lambdaS == cplx{} ? 0 : big_m2;
        cplx rot{s3, 0.0};
        int idx = n1_0 * stride + n2_0;
        for (int m2 = 0; m2 <= m2_max; ++m2, idx -= stride + 1) {
          const double l_coeff = l3 + (m2 == 0 ? 0.0 : m2 * l_lamS) -
                                 lgam_[m2] - cb_.muS * m2 -
                                 lgam_[n1_0 - m2] - lgam_[n2_0 - m2];
          const double gl = g_log_[idx];
          if (gl != kNegInf) acc.add(l_coeff + gl, rot * g_unit_[idx]);
          const double gn = g_noise_log_[idx];
          if (gn != kNegInf) noise.add(l_coeff + gn);
          rot *= rot_lamS;
        }
      }
    }

    const LogComplex s = acc.value();
    const double noise_log = noise.log_total();
    if (s.is_zero()) {
      // an exact zero is only trustworthy if nothing could have cancelled
      resolved = noise_log == kNegInf;
      return 0.0;
    }
    resolved = s.log_mag >= noise_log + kLogFlagSafety;
    return std::exp(lgam_[n2] - lgam_[n1] + 2.0 * s.log_mag);
  }

 private:
  void build_g_table(double tail_tol) {
    const int n = n_sum_ + 1;
    g_log_.assign(n * n, kNegInf);
    g_unit_.assign(n * n, cplx{0.0, 0.0});
    g_noise_log_.assign(n * n, kNegInf);
    m1_ok_ = true;

    const cplx nu = -cb_.nuS;  // annihilation-side sign
    const double l_nu = log_abs_or_neginf(nu);
    const double ph_nu = nu == cplx{} ? 0.0 : std::arg(nu);
    const int m1_max = nu == cplx{} ? 0 : m1_cutoff_;
    const int block_start = m1_cutoff_ / 2 + 1;
    const double log_tail_tol = std::log(tail_tol);

    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        LogAccumulator acc;
        LogAbsAccumulator total_abs;
        LogAbsAccumulator block_abs;
        for (int m1 = 0; m1 <= m1_max; ++m1) {
          const LogComplex& u = f1_[a + m1];
          const LogComplex& v = f2_[b + m1];
          if (u.is_zero() || v.is_zero()) continue;
          const double lm =
              (m1 == 0 ? 0.0 : m1 * l_nu) - lgam_[m1] + u.log_mag + v.log_mag;
          acc.add(lm, std::polar(1.0, m1 * ph_nu + u.phase + v.phase));
          total_abs.add(lm);
          if (m1 >= block_start) block_abs.add(lm);
        }
        const LogComplex g = acc.value();
        const int idx = a * n + b;
        g_log_[idx] = g.log_mag;
        g_unit_[idx] = g.is_zero() ? cplx{0.0, 0.0} : std::polar(1.0, g.phase);
        const double log_total = total_abs.log_total();
        if (log_total != kNegInf) {
          g_noise_log_[idx] = log_total + kLogTermNoise;
          const double log_block = block_abs.log_total();
          if (m1_max > 0 && log_block > log_total + log_tail_tol) m1_ok_ = false;
        }
      }
    }
  }

  CoeffBlock cb_;
  int n_sum_;
  int m1_cutoff_;
  std::vector<double> lgam_;
  std::vector<LogComplex> f1_, f2_;
  std::vector<double> g_log_;
  std::vector<cplx> g_unit_;
  std::vector<double> g_noise_log_;
  bool m1_ok_ = false;
};

// ---------------------------------------------------------------------------
// Stable re-evaluation for cells the direct sum cannot resolve.
//
// The same disentangled output state is built by applying the two entangling
// exponentials directly to the product state: exp(sigmaS s12) conserves
// n1 - n2 and acts on each diagonal ray as a tridiagonal generator, and
// exp(sigmaT t12) conserves n1 + n2 and acts on each anti-diagonal line the
// same way. Every intermediate amplitude is bounded by 1, so there is no
// cancellation blow-up; accuracy is limited only by plain rounding.

// w <- exp(A) w on w[t0..t1] for the real antisymmetric tridiagonal A with
// A[t+1][t] = c[t] = -A[t][t+1], via scaling and a short Taylor series.
void tridiag_exp_apply(std::vector<cplx>& w, const std::vector<double>& c,
                       int t0, int t1) {
  if (t1 <= t0) return;
  double cmax = 0.0;
  for (int t = t0; t < t1; ++t) cmax = std::max(cmax, std::fabs(c[t]));
  if (cmax == 0.0) return;
  int scale_pow = 0;
  double norm = 2.0 * cmax;
  while (norm > 0.5) {
    norm *= 0.5;
    ++scale_pow;
  }
  const double inv = std::ldexp(1.0, -scale_pow);
  const int len = t1 - t0 + 1;
  std::vector<cplx> term(len), next(len), out(len);
  const int steps = 1 << scale_pow;
  for (int step = 0; step < steps; ++step) {
    for (int i = 0; i < len; ++i) {
      term[i] = w[t0 + i];
      out[i] = w[t0 + i];
    }
    for (int k = 1; k <= 13; ++k) {
      const double fac = inv / k;
      for (int i = 0; i < len; ++i) {
        cplx v{0.0, 0.0};
        if (i > 0) v += c[t0 + i - 1] * term[i - 1];
        if (i + 1 < len) v -= c[t0 + i] * term[i + 1];
        next[i] = fac * v;
      }
      std::swap(term, next);
      for (int i = 0; i < len; ++i) out[i] += term[i];
    }
    for (int i = 0; i < len; ++i) w[t0 + i] = out[i];
  }
}

// trimmed active window [lo, hi] of a gathered segment, padded for spreading
std::pair<int, int> active_window(const std::vector<cplx>& seg, int pad) {
  int lo = -1, hi = -1;
  for (int i = 0; i < static_cast<int>(seg.size()); ++i) {
    if (std::abs(seg[i]) > 1e-280) {
      if (lo < 0) lo = i;
      hi = i;
    }
  }
  if (lo < 0) return {-1, -1};
  return {std::max(0, lo - pad),
          std::min<int>(seg.size() - 1, hi + pad)};
}

class BlockStateEvaluator {
 public:
  BlockStateEvaluator(const CoeffBlock& cb, double sigma_s, double sigma_t,
                      double theta, int dim)
      : dim_(dim), psi_(Eigen::MatrixXcd::Zero(dim + 1, dim + 1)) {
    const auto f1 = fock_coeff(cb.zeta1, cb.beta1, dim_);
    const auto f2 = fock_coeff(cb.zeta2, cb.beta2, dim_);
    Eigen::VectorXcd a(dim_ + 1), b(dim_ + 1);
    for (int i = 0; i <= dim_; ++i) {
      a[i] = amplitude(f1[i], i);
      b[i] = amplitude(f2[i], i);
    }
    psi_ = a * b.transpose();
    if (sigma_s != 0.0) boost(sigma_s, theta);
    if (sigma_t != 0.0) rotate(sigma_t);
  }

  double prob(int n1, int n2) const { return std::norm(psi_(n1, n2)); }

 private:
  static cplx amplitude(const LogComplex& f, int n) {
    if (f.is_zero()) return {0.0, 0.0};
    const double lm = f.log_mag - 0.5 * std::lgamma(n + 1.0);
    if (lm < -707.0) return {0.0, 0.0};
    return std::polar(std::exp(lm), f.phase);
  }

  // exp(sigma_s (e^{i theta} b1+ b2+ - e^{-i theta} b1 b2)) ray by ray along
  // n1 - n2 = d; the phase gauge w_t = e^{-i t theta} psi_t makes each ray
  // generator real antisymmetric.
  void boost(double sigma_s, double theta) {
    const int pad = 96;
#pragma omp parallel for schedule(dynamic)
    for (int d = -dim_; d <= dim_; ++d) {
      const int j0 = std::max(0, d);
      const int len = dim_ + 1 - std::abs(d);
      std::vector<cplx> seg(len);
      for (int t = 0; t < len; ++t) seg[t] = psi_(j0 + t, j0 + t - d);
      const auto [lo, hi] = active_window(seg, pad);
      if (lo < 0) continue;
      std::vector<cplx> w(len);
      for (int t = lo; t <= hi; ++t) {
        w[t] = seg[t] * std::polar(1.0, -t * theta);
      }
      std::vector<double> c(len, 0.0);
      for (int t = 0; t + 1 < len; ++t) {
        const double j = j0 + t, l = j - d;
        c[t] = sigma_s * std::sqrt((j + 1.0) * (l + 1.0));
      }
      tridiag_exp_apply(w, c, lo, hi);
      for (int t = lo; t <= hi; ++t) {
        psi_(j0 + t, j0 + t - d) = w[t] * std::polar(1.0, t * theta);
      }
    }
  }

  // exp(sigma_t (b1 b2+ - b1+ b2)) line by line along n1 + n2 = N; the
  // generator is already real antisymmetric.
  void rotate(double sigma_t) {
    const int pad = 64;
#pragma omp parallel for schedule(dynamic)
    for (int total = 0; total <= 2 * dim_; ++total) {
      const int lo1 = std::max(0, total - dim_);
      const int hi1 = std::min(total, dim_);
      const int len = hi1 - lo1 + 1;
      std::vector<cplx> seg(len);
      for (int t = 0; t < len; ++t) seg[t] = psi_(lo1 + t, total - lo1 - t);
      const auto [lo, hi] = active_window(seg, pad);
      if (lo < 0) continue;
      std::vector<double> c(len, 0.0);
      for (int t = 0; t + 1 < len; ++t) {
        const double n1 = lo1 + t, n2 = total - lo1 - t;
        // coupling t -> t+1 is -sigma_t sqrt((n1+1) n2); store its negative
        c[t] = -sigma_t * std::sqrt((n1 + 1.0) * n2);
      }
      tridiag_exp_apply(seg, c, lo, hi);
      for (int t = lo; t <= hi; ++t) psi_(lo1 + t, total - lo1 - t) = seg[t];
    }
  }

  int dim_;
  Eigen::MatrixXcd psi_;
};

int stable_state_dim(const CoeffBlock& cb, int reach) {
  const double mean = std::norm(cb.beta1) + std::norm(cb.beta2) +
                      std::sinh(cb.zeta1.r) * std::sinh(cb.zeta1.r) +
                      std::sinh(cb.zeta2.r) * std::sinh(cb.zeta2.r);
  const int extent =
      static_cast<int>(std::ceil(mean + 10.0 * std::sqrt(mean + 1.0))) + 128;
  return std::max(reach + 32, extent);
}

JointDistribution grid_impl(const DistributionParams& p, const CoeffBlock& cb,
                            double sigma_s, double sigma_t, int n1_max,
                            int n2_max, double norm_tol) {
  if (n1_max < 0 || n2_max < 0) {
    throw std::invalid_argument("full_grid: grid bounds must be >= 0");
  }
  if (!(norm_tol > 0.0)) {
    throw std::invalid_argument("full_grid: norm_tol must be > 0");
  }
  const double tail_tol = 1e-3 * norm_tol;

  int m1 = 16;
  for (;;) {
    GridEvaluator ev(cb, n1_max + n2_max, m1, tail_tol);
    if (!ev.m1_converged()) {
      if (m1 >= kM1HardLimit) {
        std::ostringstream msg;
        msg << "full_grid: inner series tail above " << tail_tol
            << " at the hard cutoff " << kM1HardLimit;
        throw CutoffTooSmall(msg.str());
      }
      m1 *= 2;
      continue;
    }

    JointDistribution out;
    out.n1_max = n1_max;
    out.n2_max = n2_max;
    out.params = p;
    out.probs.assign((n1_max + 1) * (n2_max + 1), 0.0);
    std::vector<unsigned char> unresolved((n1_max + 1) * (n2_max + 1), 0);
    long n_unresolved = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : n_unresolved)
    for (int n1 = 0; n1 <= n1_max; ++n1) {
      for (int n2 = 0; n2 <= n2_max; ++n2) {
        bool resolved = true;
        out.probs[n1 * (n2_max + 1) + n2] = ev.cell(n1, n2, resolved);
        if (!resolved) {
          unresolved[n1 * (n2_max + 1) + n2] = 1;
          ++n_unresolved;
        }
      }
    }

    // cells the direct sum cannot resolve are recomputed through the
    // block-applied entanglers, which have no cancellation amplification
    if (n_unresolved > 0) {
      BlockStateEvaluator stable(cb, sigma_s, sigma_t, p.zeta.theta,
                                 stable_state_dim(cb, n1_max + n2_max));
      for (int n1 = 0; n1 <= n1_max; ++n1) {
        for (int n2 = 0; n2 <= n2_max; ++n2) {
          if (unresolved[n1 * (n2_max + 1) + n2]) {
            out.probs[n1 * (n2_max + 1) + n2] = stable.prob(n1, n2);
          }
        }
      }
    }

    double defect = 1.0 - out.total();
    if (defect < 0.0) {
      if (defect < -1e-9) {
        std::ostringstream msg;
        msg << "full_grid: captured probability exceeds 1 by " << -defect
            << "; formula inconsistency";
        throw std::runtime_error(msg.str());
      }
      defect = 0.0;
    }
    if (defect > norm_tol) {
      std::ostringstream msg;
      msg << "full_grid: truncation defect " << defect << " above norm_tol "
          << norm_tol << " on a " << (n1_max + 1) << "x" << (n2_max + 1)
          << " grid; mass lies beyond the grid bounds";
      throw GridTooSmall(msg.str());
    }
    out.truncation_defect = defect;
    return out;
  }
}

}  // namespace

DistributionParams DistributionParams::make(const CoherentParam& alpha,
                                            const SqueezeParam& zeta,
                                            double gamma) {
  DistributionParams p;
  p.alpha = alpha;
  p.zeta = zeta;
  p.gamma = reduce_angle(gamma);
  p.coeffs = solve_disentangling(p.gamma, zeta.r);
  return p;
}

CoeffBlock CoeffBlock::make(const DistributionParams& p) {
  if (std::fabs(p.coeffs.sigmaT) >= M_PI / 2.0) {
    throw std::invalid_argument("CoeffBlock: requires |sigmaT| < pi/2");
  }
  CoeffBlock cb;
  const double theta = p.zeta.theta;
  const cplx eith = std::polar(1.0, theta);
  cb.lambdaS = eith * std::tanh(p.coeffs.sigmaS);
  cb.nuS = std::conj(eith) * std::tanh(p.coeffs.sigmaS);
  cb.muS = -2.0 * std::log(std::cosh(p.coeffs.sigmaS));
  cb.lambdaT = std::tan(p.coeffs.sigmaT);
  cb.nuT = std::tan(p.coeffs.sigmaT);
  cb.muT = -2.0 * std::log(std::cos(p.coeffs.sigmaT));
  const cplx alpha = p.alpha.value();
  cb.beta1 = alpha * std::cos(p.gamma.gamma);
  cb.beta2 = alpha * std::sin(p.gamma.gamma);
  cb.zeta1 = SqueezeParam::from_complex(eith * p.coeffs.sigma1);
  cb.zeta2 = SqueezeParam::from_complex(eith * p.coeffs.sigma2);
  return cb;
}

CoeffBlock CoeffBlock::without_entanglers() const {
  CoeffBlock cb = *this;
  cb.lambdaS = cb.nuS = {0.0, 0.0};
  cb.muS = 0.0;
  cb.lambdaT = cb.nuT = 0.0;
  cb.muT = 0.0;
  return cb;
}

double JointDistribution::total() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

double joint_prob(const DistributionParams& p, int n1, int n2, int m1_cutoff,
                  double tail_tol) {
  if (n1 < 0 || n2 < 0) {
    throw std::invalid_argument("joint_prob: photon numbers must be >= 0");
  }
  if (m1_cutoff < 0) {
    throw std::invalid_argument("joint_prob: m1_cutoff must be >= 0");
  }
  const CoeffBlock cb = CoeffBlock::make(p);
  GridEvaluator ev(cb, n1 + n2, m1_cutoff, tail_tol);
  if (!ev.m1_converged()) {
    std::ostringstream msg;
    msg << "joint_prob: inner-series tail estimate above " << tail_tol
        << " at m1_cutoff=" << m1_cutoff << "; raise the cutoff";
    throw CutoffTooSmall(msg.str());
  }
  bool resolved = true;
  const double direct = ev.cell(n1, n2, resolved);
  if (resolved) return direct;
  BlockStateEvaluator stable(cb, p.coeffs.sigmaS, p.coeffs.sigmaT, p.zeta.theta,
                             stable_state_dim(cb, n1 + n2));
  return stable.prob(n1, n2);
}

JointDistribution full_grid(const DistributionParams& p, int n1_max, int n2_max,
                            double norm_tol) {
  return grid_impl(p, CoeffBlock::make(p), p.coeffs.sigmaS, p.coeffs.sigmaT,
                   n1_max, n2_max, norm_tol);
}

JointDistribution no_entangle_grid(const DistributionParams& p, int n1_max,
                                   int n2_max, double norm_tol) {
  return grid_impl(p, CoeffBlock::make(p).without_entanglers(), 0.0, 0.0,
                   n1_max, n2_max, norm_tol);
}

MarginalDistribution marginal(const JointDistribution& joint, int port) {
  if (port != 1 && port != 2) {
    throw std::invalid_argument("marginal: port must be 1 or 2");
  }
  MarginalDistribution m;
  m.port = port;
  const int n = port == 1 ? joint.n1_max : joint.n2_max;
  m.probs.assign(n + 1, 0.0);
  for (int n1 = 0; n1 <= joint.n1_max; ++n1) {
    for (int n2 = 0; n2 <= joint.n2_max; ++n2) {
      m.probs[port == 1 ? n1 : n2] += joint.at(n1, n2);
    }
  }
  double tot = 0.0, s1 = 0.0, s2 = 0.0;
  for (int k = 0; k <= n; ++k) {
    tot += m.probs[k];
    s1 += k * m.probs[k];
    s2 += static_cast<double>(k) * k * m.probs[k];
  }
  if (tot > 0.0) {
    m.mean = s1 / tot;
    m.variance = s2 / tot - m.mean * m.mean;
  }
  return m;
}

}  // namespace sqbs
