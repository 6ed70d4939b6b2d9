#include "sqbs/fock_oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sqbs/csv.hpp"

namespace sqbs {
namespace detail {

Eigen::MatrixXcd single_mode_annihilator(int cutoff) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Eigen::MatrixXcd single_mode_displacement(int cutoff, std::complex<double> alpha) {
  const Eigen::MatrixXcd a = single_mode_annihilator(cutoff);
  const Eigen::MatrixXcd gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return gen.exp();
}

Eigen::MatrixXcd single_mode_squeeze(int cutoff, const SqueezeParam& zeta) {
  const Eigen::MatrixXcd a = single_mode_annihilator(cutoff);
  const std::complex<double> z = zeta.to_complex();
  const Eigen::MatrixXcd gen =
      0.5 * std::conj(z) * (a * a) - 0.5 * z * (a.adjoint() * a.adjoint());
  return gen.exp();
}

}  // namespace detail

namespace {

// Embeds a single-mode matrix as (u x I) or (I x u) on the two-mode space.
Eigen::MatrixXcd embed(FockSpace space, int mode, const Eigen::MatrixXcd& u) {
  const int n = space.cutoff + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (u(i, j) == std::complex<double>{}) continue;
      for (int k = 0; k < n; ++k) {
        if (mode == 1) {
          m(space.index(i, k), space.index(j, k)) = u(i, j);
        } else {
          m(space.index(k, i), space.index(k, j)) = u(i, j);
        }
      }
    }
  }
  return m;
}

void check_mode(int mode) {
  if (mode != 1 && mode != 2) {
    throw std::invalid_argument("mode must be 1 or 2");
  }
}

// Rotation blocks of exp(gamma (b1+ b2 - b1 b2+)) on each total-photon-number
// eigenspace; block N spans n1 in [max(0, N-cutoff), min(N, cutoff)].
std::vector<Eigen::MatrixXd> beamsplitter_blocks(int cutoff, double gamma) {
  std::vector<Eigen::MatrixXd> blocks(2 * cutoff + 1);
  for (int total = 0; total <= 2 * cutoff; ++total) {
    const int lo = std::max(0, total - cutoff);
    const int hi = std::min(total, cutoff);
    const int sz = hi - lo + 1;
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(sz, sz);
    for (int i = 0; i + 1 < sz; ++i) {
      const int n1 = lo + i;
      const int n2 = total - n1;
      const double c = gamma * std::sqrt(double(n1 + 1) * double(n2));
      gen(i + 1, i) = c;
      gen(i, i + 1) = -c;
    }
    blocks[total] = gen.exp();
  }
  return blocks;
}

void check_norm(const Eigen::MatrixXcd& psi, const char* stage) {
  const double defect = 1.0 - psi.squaredNorm();
  if (defect > kTruncationBudget) {
    std::ostringstream msg;
    msg << stage << ": state lost " << defect
        << " of its squared norm to truncation (budget " << kTruncationBudget
        << "); raise the cutoff";
    throw TruncationExceeded(msg.str());
  }
}

}  // namespace

FockSpace::FockSpace(int cutoff_in) : cutoff(cutoff_in) {
  if (cutoff_in < 0) throw std::invalid_argument("FockSpace: cutoff must be >= 0");
}

FockState vacuum_state(FockSpace space) {
  FockState s{space, Eigen::VectorXcd::Zero(space.dim()), 0.0};
  s.amplitudes[0] = 1.0;
  return s;
}

std::pair<FockOperator, FockOperator> mode_ops(FockSpace space, int mode) {
  check_mode(mode);
  const Eigen::MatrixXcd a = embed(space, mode, detail::single_mode_annihilator(space.cutoff));
  return {FockOperator{space, a}, FockOperator{space, a.adjoint()}};
}

FockOperator displacement(FockSpace space, int mode, std::complex<double> alpha) {
  check_mode(mode);
  return {space, embed(space, mode, detail::single_mode_displacement(space.cutoff, alpha))};
}

FockOperator squeeze_operator(FockSpace space, int mode, const SqueezeParam& zeta) {
  check_mode(mode);
  return {space, embed(space, mode, detail::single_mode_squeeze(space.cutoff, zeta))};
}

FockOperator beamsplitter(FockSpace space, double gamma) {
  const int cutoff = space.cutoff;
  const auto blocks = beamsplitter_blocks(cutoff, gamma);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  for (int total = 0; total <= 2 * cutoff; ++total) {
    const int lo = std::max(0, total - cutoff);
    const Eigen::MatrixXd& e = blocks[total];
    for (int i = 0; i < e.rows(); ++i) {
      for (int j = 0; j < e.cols(); ++j) {
        m(space.index(lo + i, total - lo - i), space.index(lo + j, total - lo - j)) =
            e(i, j);
      }
    }
  }
  return {space, std::move(m)};
}

FockState apply(const FockOperator& op, const FockState& psi) {
  if (op.space.cutoff != psi.space.cutoff) {
    throw std::invalid_argument("apply: operator and state cutoffs differ");
  }
  FockState out{psi.space, op.matrix * psi.amplitudes, 0.0};
  out.truncation_defect = 1.0 - out.amplitudes.squaredNorm();
  if (out.truncation_defect > kTruncationBudget) {
    std::ostringstream msg;
    msg << "apply: state lost " << out.truncation_defect
        << " of its squared norm to truncation (budget " << kTruncationBudget
        << ")";
    throw TruncationExceeded(msg.str());
  }
  return out;
}

JointDistribution simulate(const CoherentParam& alpha, const SqueezeParam& zeta,
                           double gamma, int cutoff) {
  const int n = cutoff + 1;
  // state as a matrix psi(n1, n2); mode-1 operators act on the left,
  // mode-2 operators on the right (transposed)
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(n, n);
  psi(0, 0) = 1.0;

  psi = detail::single_mode_displacement(cutoff, alpha.value()) * psi;
  check_norm(psi, "simulate/displacement");
  psi = psi * detail::single_mode_squeeze(cutoff, zeta).transpose();
  check_norm(psi, "simulate/squeeze");

  const auto blocks = beamsplitter_blocks(cutoff, gamma);
  Eigen::MatrixXcd rotated = Eigen::MatrixXcd::Zero(n, n);
  for (int total = 0; total <= 2 * cutoff; ++total) {
    const int lo = std::max(0, total - cutoff);
    const Eigen::MatrixXd& e = blocks[total];
    const int sz = e.rows();
    Eigen::VectorXcd v(sz);
    for (int i = 0; i < sz; ++i) v[i] = psi(lo + i, total - lo - i);
    v = e * v;
    for (int i = 0; i < sz; ++i) rotated(lo + i, total - lo - i) = v[i];
  }
  check_norm(rotated, "simulate/beamsplitter");

  JointDistribution out;
  out.n1_max = cutoff;
  out.n2_max = cutoff;
  out.params = DistributionParams::make(alpha, zeta, gamma);
  out.probs.resize(n * n);
  double tot = 0.0;
  for (int n1 = 0; n1 < n; ++n1) {
    for (int n2 = 0; n2 < n; ++n2) {
      const double p = std::norm(rotated(n1, n2));
      out.probs[n1 * n + n2] = p;
      tot += p;
    }
  }
  out.truncation_defect = std::max(0.0, 1.0 - tot);
  return out;
}

void write_golden_csv(const std::filesystem::path& path,
                      const JointDistribution& dist, int cutoff) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_golden_csv: cannot open " + path.string());
  CsvWriter w(os);
  std::ostringstream meta;
  meta << "cutoff=" << cutoff << ", alpha=" << format_g15(dist.params.alpha.mag)
       << ", phi=" << format_g15(dist.params.alpha.phase)
       << ", r=" << format_g15(dist.params.zeta.r)
       << ", theta=" << format_g15(dist.params.zeta.theta)
       << ", gamma=" << format_g15(dist.params.gamma.gamma);
  w.comment(meta.str());
  w.comment("n1,n2,probability");
  for (int n1 = 0; n1 <= dist.n1_max; ++n1) {
    for (int n2 = 0; n2 <= dist.n2_max; ++n2) {
      w.row(n1, n2, dist.at(n1, n2));
    }
  }
}

GoldenData read_golden_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_golden_csv: cannot open " + path.string());
  GoldenData g;
  std::string line;
  std::vector<std::tuple<int, int, double>> rows;
  int max_n1 = 0, max_n2 = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      std::replace(body.begin(), body.end(), ',', ' ');
      std::istringstream ss(body);
      std::string tok;
      while (ss >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const double val = std::stod(tok.substr(eq + 1));
        if (key == "cutoff") g.cutoff = static_cast<int>(val);
        else if (key == "alpha") g.alpha_mag = val;
        else if (key == "phi") g.alpha_phase = val;
        else if (key == "r") g.r = val;
        else if (key == "theta") g.theta = val;
        else if (key == "gamma") g.gamma = val;
      }
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    int n1, n2;
    double p;
    if (ss >> n1 >> n2 >> p) {
      rows.emplace_back(n1, n2, p);
      max_n1 = std::max(max_n1, n1);
      max_n2 = std::max(max_n2, n2);
    }
  }
  g.probs = Eigen::MatrixXd::Zero(max_n1 + 1, max_n2 + 1);
  for (const auto& [n1, n2, p] : rows) g.probs(n1, n2) = p;
  return g;
}

}  // namespace sqbs
