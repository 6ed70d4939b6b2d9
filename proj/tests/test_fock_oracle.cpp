#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <random>

#include "oracle_identities.hpp"
#include "sqbs/fock_amplitudes.hpp"
#include "sqbs/fock_oracle.hpp"

using cplx = std::complex<double>;
using sqbs::beamsplitter;
using sqbs::CoherentParam;
using sqbs::displacement;
using sqbs::FockSpace;
using sqbs::FockState;
using sqbs::mode_ops;
using sqbs::simulate;
using sqbs::SqueezeParam;
using sqbs::squeeze_operator;
using sqbs::vacuum_state;

namespace {

double poisson_pmf(int n, double mean) {
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
}

double max_abs_interior(const Eigen::MatrixXcd& m, const FockSpace& space,
                        int bound) {
  double worst = 0.0;
  for (int r1 = 0; r1 <= bound; ++r1)
    for (int r2 = 0; r2 <= bound; ++r2)
      for (int c1 = 0; c1 <= bound; ++c1)
        for (int c2 = 0; c2 <= bound; ++c2)
          worst = std::max(worst,
                           std::abs(m(space.index(r1, r2), space.index(c1, c2))));
  return worst;
}

}  // namespace

TEST_CASE("ladder operator matrix elements") {
  const FockSpace space(6);
  const auto [lower1, raise1] = mode_ops(space, 1);
  CHECK(std::abs(raise1.matrix(space.index(1, 0), space.index(0, 0)) - 1.0) < 1e-15);
  CHECK(std::abs(raise1.matrix(space.index(2, 0), space.index(1, 0)) -
                 std::sqrt(2.0)) < 1e-15);
  const auto [lower2, raise2] = mode_ops(space, 2);
  CHECK(std::abs(raise2.matrix(space.index(3, 4), space.index(3, 3)) - 2.0) < 1e-15);

  // [b, b+] = I except in the top slice where truncation bites
  const Eigen::MatrixXcd comm =
      lower1.matrix * raise1.matrix - raise1.matrix * lower1.matrix;
  for (int n1 = 0; n1 <= 5; ++n1) {
    CHECK(std::abs(comm(space.index(n1, 2), space.index(n1, 2)) - 1.0) < 1e-15);
  }
  CHECK(std::abs(comm(space.index(6, 2), space.index(6, 2)) + 6.0) < 1e-14);
}

TEST_CASE("displacement operator") {
  const FockSpace space(30);
  // alpha = 0 is the identity
  const auto id = displacement(space, 1, {0.0, 0.0});
  CHECK((id.matrix - Eigen::MatrixXcd::Identity(space.dim(), space.dim()))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  // coherent-state amplitudes from the vacuum
  const cplx alpha{0.8, 0.4};
  const auto st = apply(displacement(space, 1, alpha), vacuum_state(space));
  for (int n = 0; n <= 20; ++n) {
    const cplx expect = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, n) /
                        std::sqrt(std::exp(std::lgamma(n + 1.0)));
    CHECK(std::abs(st.amplitudes[space.index(n, 0)] - expect) < 1e-12);
  }

  // inverse property on the interior
  const auto d = displacement(space, 1, {1.0, 0.0});
  const auto dinv = displacement(space, 1, {-1.0, 0.0});
  const Eigen::MatrixXcd prod =
      d.matrix * dinv.matrix - Eigen::MatrixXcd::Identity(space.dim(), space.dim());
  CHECK(max_abs_interior(prod, space, 20) < 1e-10);
}

TEST_CASE("squeeze operator") {
  const FockSpace space(40);
  const auto id = squeeze_operator(space, 2, SqueezeParam(0.0, 0.0));
  CHECK((id.matrix - Eigen::MatrixXcd::Identity(space.dim(), space.dim()))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  const double r = 0.5;
  const auto st = apply(squeeze_operator(space, 2, SqueezeParam(r, 0.0)),
                        vacuum_state(space));
  double mean = 0.0;
  for (int n = 0; n <= 40; ++n) {
    const double p = std::norm(st.amplitudes[space.index(0, n)]);
    mean += n * p;
    if (n % 2 == 1) CHECK(std::abs(st.amplitudes[space.index(0, n)]) < 1e-14);
  }
  CHECK(mean == doctest::Approx(std::sinh(r) * std::sinh(r)).epsilon(1e-9));

  // amplitudes match the closed-form f_n / sqrt(n!)
  const auto f = sqbs::fock_coeff(SqueezeParam(r, 0.0), {0.0, 0.0}, 20);
  for (int n = 0; n <= 20; ++n) {
    const cplx expect =
        f[n].to_complex() / std::sqrt(std::exp(std::lgamma(n + 1.0)));
    CHECK(std::abs(st.amplitudes[space.index(0, n)] - expect) < 1e-8);
  }
}

TEST_CASE("squeezed coherent amplitudes match fock_coeff") {
  const FockSpace space(40);
  const SqueezeParam zeta(0.8, 0.9);
  const cplx beta = std::polar(1.5, 0.4);
  auto st = apply(displacement(space, 1, beta), vacuum_state(space));
  st = apply(squeeze_operator(space, 1, zeta), st);
  const auto f = sqbs::fock_coeff(zeta, beta, 20);
  for (int n = 0; n <= 20; ++n) {
    const cplx expect =
        f[n].to_complex() / std::sqrt(std::exp(std::lgamma(n + 1.0)));
    CHECK(std::abs(st.amplitudes[space.index(n, 0)] - expect) < 1e-6);
  }
}

TEST_CASE("beamsplitter basics") {
  const FockSpace space(12);
  const auto id = beamsplitter(space, 0.0);
  CHECK((id.matrix - Eigen::MatrixXcd::Identity(space.dim(), space.dim()))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  // full reflection swaps the single photon up to a sign
  const auto swap = beamsplitter(space, M_PI / 2.0);
  FockState one{space, Eigen::VectorXcd::Zero(space.dim()), 0.0};
  one.amplitudes[space.index(1, 0)] = 1.0;
  const auto swapped = apply(swap, one);
  CHECK(std::abs(std::abs(swapped.amplitudes[space.index(0, 1)]) - 1.0) < 1e-12);
  CHECK(std::abs(swapped.amplitudes[space.index(1, 0)]) < 1e-12);

  // balanced splitter sends a single photon each way with probability 1/2
  const auto half = apply(beamsplitter(space, M_PI / 4.0), one);
  CHECK(std::norm(half.amplitudes[space.index(1, 0)]) == doctest::Approx(0.5));
  CHECK(std::norm(half.amplitudes[space.index(0, 1)]) == doctest::Approx(0.5));
}

TEST_CASE("Heisenberg rotation pins the beamsplitter sign") {
  const FockSpace space(14);
  const double gamma = 0.7;
  const auto u = beamsplitter(space, gamma).matrix;
  const auto a1 = mode_ops(space, 1).first.matrix;
  const auto a2 = mode_ops(space, 2).first.matrix;
  const Eigen::MatrixXcd r1 =
      u.adjoint() * a1 * u - (std::cos(gamma) * a1 + std::sin(gamma) * a2);
  const Eigen::MatrixXcd r2 =
      u.adjoint() * a2 * u - (-std::sin(gamma) * a1 + std::cos(gamma) * a2);
  // restrict to total photon number <= cutoff - 4, where truncation is inert
  double worst = 0.0;
  for (int r1i = 0; r1i <= 14; ++r1i)
    for (int r2i = 0; r1i + r2i <= 10; ++r2i)
      for (int c1 = 0; c1 <= 14; ++c1)
        for (int c2 = 0; c1 + c2 <= 10; ++c2) {
          worst = std::max(worst, std::abs(r1(space.index(r1i, r2i),
                                              space.index(c1, c2))));
          worst = std::max(worst, std::abs(r2(space.index(r1i, r2i),
                                              space.index(c1, c2))));
        }
  CHECK(worst <= 1e-8);
}

TEST_CASE("unitarity and total-number conservation on the interior") {
  const FockSpace space(16);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(space.dim(), space.dim());
  const auto check_unitary = [&](const Eigen::MatrixXcd& u) {
    CHECK(max_abs_interior(u.adjoint() * u - eye, space, 12) <= 1e-9);
  };
  check_unitary(displacement(space, 1, {0.9, 0.5}).matrix);
  check_unitary(squeeze_operator(space, 2, SqueezeParam(0.6, 1.0)).matrix);
  check_unitary(beamsplitter(space, 0.9).matrix);

  Eigen::MatrixXcd num = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  for (int n1 = 0; n1 <= 16; ++n1)
    for (int n2 = 0; n2 <= 16; ++n2)
      num(space.index(n1, n2), space.index(n1, n2)) = n1 + n2;
  const auto u = beamsplitter(space, 0.9).matrix;
  CHECK(max_abs_interior(u.adjoint() * num * u - num, space, 12) <= 1e-9);
}

TEST_CASE("simulate reproduces trivial outputs") {
  auto dist = simulate(CoherentParam(0.0, 0.0), SqueezeParam(0.0, 0.0), 0.8, 10);
  CHECK(dist.at(0, 0) == doctest::Approx(1.0));

  dist = simulate(CoherentParam(1.0, 0.0), SqueezeParam(0.0, 0.0), M_PI / 4.0, 16);
  for (int n1 = 0; n1 <= 6; ++n1) {
    for (int n2 = 0; n2 <= 6; ++n2) {
      CHECK(std::fabs(dist.at(n1, n2) -
                      poisson_pmf(n1, 0.5) * poisson_pmf(n2, 0.5)) < 1e-10);
    }
  }
}

TEST_CASE("simulate matches the archived golden table") {
  const auto path =
      std::filesystem::path(SQBS_TEST_DATA_DIR) / "oracle_a1_r0.3_gpi8_c24.csv";
  const auto golden = sqbs::read_golden_csv(path);
  REQUIRE(golden.cutoff == 24);

  // anchor values computed with an independent implementation
  CHECK(std::fabs(golden.probs(0, 0) - 0.351923741638867) < 1e-9);
  CHECK(std::fabs(golden.probs(1, 0) - 0.300385702906126) < 1e-9);
  CHECK(std::fabs(golden.probs(0, 1) - 0.0515380387327408) < 1e-9);
  CHECK(std::fabs(golden.probs(2, 3) - 0.00141981335463959) < 1e-9);

  const auto dist = simulate(CoherentParam(golden.alpha_mag, golden.alpha_phase),
                             SqueezeParam(golden.r, golden.theta), golden.gamma,
                             golden.cutoff);
  for (int n1 = 0; n1 <= golden.cutoff; ++n1) {
    for (int n2 = 0; n2 <= golden.cutoff; ++n2) {
      CHECK(std::fabs(dist.at(n1, n2) - golden.probs(n1, n2)) < 1e-12);
    }
  }
}

TEST_CASE("golden file round trip") {
  const auto dist = simulate(CoherentParam(1.0, 0.2), SqueezeParam(0.4, 0.9), 0.6, 10);
  const auto tmp = std::filesystem::temp_directory_path() / "sqbs_golden_rt.csv";
  sqbs::write_golden_csv(tmp, dist, 10);
  const auto back = sqbs::read_golden_csv(tmp);
  CHECK(back.cutoff == 10);
  CHECK(back.r == doctest::Approx(0.4));
  CHECK(back.theta == doctest::Approx(0.9));
  for (int n1 = 0; n1 <= 10; ++n1) {
    for (int n2 = 0; n2 <= 10; ++n2) {
      CHECK(std::fabs(back.probs(n1, n2) - dist.at(n1, n2)) <=
            1e-15 + 1e-14 * dist.at(n1, n2));
    }
  }
  std::filesystem::remove(tmp);
}

TEST_CASE("truncation budget is enforced") {
  CHECK_THROWS_AS(simulate(CoherentParam(4.0, 0.0), SqueezeParam(0.0, 0.0), 0.5, 10),
                  sqbs::TruncationExceeded);
  const FockSpace space(10);
  CHECK_THROWS_AS(apply(displacement(space, 1, {4.0, 0.0}), vacuum_state(space)),
                  sqbs::TruncationExceeded);
}

TEST_CASE("displacement composition rule") {
  const int cutoff = 40;
  const cplx a1{0.7, 0.2}, a2{-0.4, 0.5};
  const Eigen::MatrixXcd lhs = sqbs::detail::single_mode_displacement(cutoff, a2) *
                               sqbs::detail::single_mode_displacement(cutoff, a1);
  const cplx phase = std::exp(0.5 * (a2 * std::conj(a1) - std::conj(a2) * a1));
  const Eigen::MatrixXcd rhs =
      phase * sqbs::detail::single_mode_displacement(cutoff, a1 + a2);
  CHECK(sqbs_test::max_diff_interior_cols_1m(lhs, rhs, 14) <= 1e-8);
}

TEST_CASE("displacement passes through squeeze with a Bogoliubov shift") {
  const int cutoff = 40;
  const SqueezeParam zeta(0.5, 0.8);
  const cplx alpha{0.6, -0.3};
  const Eigen::MatrixXcd lhs = sqbs::detail::single_mode_displacement(cutoff, alpha) *
                               sqbs::detail::single_mode_squeeze(cutoff, zeta);
  const cplx shifted = alpha * std::cosh(zeta.r) +
                       std::conj(alpha) * std::polar(1.0, zeta.theta) *
                           std::sinh(zeta.r);
  const Eigen::MatrixXcd rhs = sqbs::detail::single_mode_squeeze(cutoff, zeta) *
                               sqbs::detail::single_mode_displacement(cutoff, shifted);
  CHECK(sqbs_test::max_diff_interior_cols_1m(lhs, rhs, 14) <= 1e-8);
}

TEST_CASE("pair-squeeze factorization applied to random states") {
  const int cutoff = 40;
  const int n = cutoff + 1;
  std::mt19937 rng(70707);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const double sigma_s : {0.2, 0.5}) {
    for (const double theta : {0.0, 1.1}) {
      const auto direct = sqbs_test::pair_squeeze_direct(cutoff, sigma_s, theta);
      const auto factored = sqbs_test::pair_squeeze_factored(cutoff, sigma_s, theta);
      for (int trial = 0; trial < 3; ++trial) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n * n);
        for (int n1 = 0; n1 <= 10; ++n1)
          for (int n2 = 0; n2 <= 10; ++n2)
            psi[n1 * n + n2] = cplx{gauss(rng), gauss(rng)};
        psi.normalize();
        const double diff = (direct * psi - factored * psi).cwiseAbs().maxCoeff();
        CHECK(diff <= 1e-8);
      }
    }
  }
}

TEST_CASE("space validation") {
  CHECK_THROWS_AS(FockSpace(-1), std::invalid_argument);
  CHECK_THROWS_AS(mode_ops(FockSpace(4), 3), std::invalid_argument);
}
