#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sqbs/darkport.hpp"

using sqbs::dark_distribution;
using sqbs::dark_distribution_adaptive;
using sqbs::dark_moments;
using sqbs::DarkPortParams;
using sqbs::kappa;
using sqbs::optimal_r;
using sqbs::SqueezeParam;

namespace {

DarkPortParams make_params(double a_sq, double r, double angle) {
  DarkPortParams p;
  p.alpha_delta_sq = a_sq;
  p.squeeze = SqueezeParam(r, angle);  // phi = 0 so theta - 2 phi = angle
  p.phi = 0.0;
  return p;
}

double poisson_pmf(int n, double mean) {
  return std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
}

}  // namespace

TEST_CASE("kappa special values") {
  const auto k0 = kappa(0.7, 0.0);
  CHECK(k0.modulus == doctest::Approx(std::exp(0.7)).epsilon(1e-14));
  CHECK(k0.phase == doctest::Approx(0.0));

  const auto kp = kappa(0.7, M_PI);
  CHECK(kp.modulus == doctest::Approx(std::exp(-0.7)).epsilon(1e-13));
  CHECK(std::fabs(kp.phase) < 1e-14);

  const auto kz = kappa(0.0, 2.1);
  CHECK(kz.modulus == doctest::Approx(1.0));
  CHECK(kz.phase == doctest::Approx(0.0));

  CHECK(kappa(1.0, M_PI / 2.0).modulus ==
        doctest::Approx(std::sqrt(std::cosh(2.0))).epsilon(1e-14));
}

TEST_CASE("kappa modulus identity on random samples") {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> rdist(0.0, 2.0);
  std::uniform_real_distribution<double> adist(-M_PI, M_PI);
  for (int i = 0; i < 1000; ++i) {
    const double r = rdist(rng), a = adist(rng);
    const auto k = kappa(r, a);
    const double expect = std::cosh(2.0 * r) + std::cos(a) * std::sinh(2.0 * r);
    CHECK(std::fabs(k.modulus * k.modulus - expect) <= 1e-12 * std::max(1.0, expect));
    CHECK(k.modulus >= std::exp(-r) - 1e-12);
    CHECK(k.modulus <= std::exp(r) + 1e-12);
  }
}

TEST_CASE("phase_delta special values") {
  CHECK(std::abs(sqbs::phase_delta(0.8, 2.0 * 0.3, 0.3)) < 1e-15);
  CHECK(std::abs(sqbs::phase_delta(0.0, 1.0, 0.2)) < 1e-15);
  const auto d = sqbs::phase_delta(1.0, M_PI / 2.0, 0.0);
  CHECK(d.real() == doctest::Approx(-0.5 * std::sinh(2.0)).epsilon(1e-14));
  CHECK(std::fabs(d.imag()) < 1e-15);
}

TEST_CASE("dark distribution limiting cases") {
  // r = 0: Poisson with mean |alpha delta|^2
  auto dist = dark_distribution(make_params(20.0, 0.0, 0.0), 80, 1e-9);
  for (int n = 0; n <= 40; ++n) {
    CHECK(std::fabs(dist.probs[n] - poisson_pmf(n, 20.0)) < 1e-12);
  }
  CHECK(dist.mean == doctest::Approx(20.0).epsilon(1e-8));

  // no coherent amplitude: squeezed vacuum
  dist = dark_distribution(make_params(0.0, 1.0, 0.0), 120, 1e-9);
  for (int n = 1; n < 120; n += 2) CHECK(dist.probs[n] == 0.0);
  CHECK(dist.mean == doctest::Approx(std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-8));
}

TEST_CASE("dark-port mean at theta = 2 phi") {
  for (double r : {0.3, 0.6, 0.9, 1.2, 1.5}) {
    const auto dist = dark_distribution_adaptive(make_params(20.0, r, 0.0), 1e-10);
    const double expect = 20.0 + std::sinh(r) * std::sinh(r);
    CHECK(std::fabs(dist.mean - expect) / expect <= 1e-6);
  }
}

TEST_CASE("analytic moments match the summed distribution") {
  for (double a_sq : {0.0, 1.0, 20.0}) {
    for (double r : {0.0, 0.5, 1.0, 1.5}) {
      for (double u : {0.0, M_PI / 4.0, M_PI / 2.0, M_PI}) {
        const auto p = make_params(a_sq, r, u);
        const auto mom = dark_moments(p);
        const auto dist = dark_distribution_adaptive(p, 1e-10);
        CHECK(std::fabs(dist.mean - mom.mean) <= 1e-6 * std::max(1.0, mom.mean));
        CHECK(std::fabs(dist.variance - mom.variance) <=
              1e-6 * std::max(1.0, mom.variance));
      }
    }
  }
}

TEST_CASE("analytic moments frozen generic-angle value") {
  // 30-digit reference at A=20, r=0.8, theta=1.3, phi=0.25
  DarkPortParams p;
  p.alpha_delta_sq = 20.0;
  p.squeeze = SqueezeParam(0.8, 1.3);
  p.phi = 0.25;
  const auto mom = dark_moments(p);
  CHECK(mom.mean == doctest::Approx(20.7887322355974).epsilon(1e-12));
  CHECK(mom.variance == doctest::Approx(21.2694683439394).epsilon(1e-12));
  const auto dist = dark_distribution_adaptive(p, 1e-10);
  CHECK(dist.mean == doctest::Approx(mom.mean).epsilon(1e-7));
  CHECK(dist.variance == doctest::Approx(mom.variance).epsilon(1e-7));
}

TEST_CASE("theta = 2 phi closed-form moments") {
  for (double r : {0.0, 0.4, 1.1}) {
    const auto mom = dark_moments(make_params(20.0, r, 0.0));
    const double sh = std::sinh(r), ch = std::cosh(r);
    CHECK(mom.mean == doctest::Approx(20.0 + sh * sh).epsilon(1e-12));
    CHECK(mom.variance ==
          doctest::Approx(20.0 * std::exp(-2.0 * r) + 2.0 * sh * sh * ch * ch)
              .epsilon(1e-12));
  }
}

TEST_CASE("strong squeezing produces oscillations") {
  const auto dist = dark_distribution_adaptive(make_params(20.0, 1.5, 0.0), 1e-9);
  int maxima = 0;
  for (int n = 1; n < 100; ++n) {
    if (dist.probs[n] > dist.probs[n - 1] && dist.probs[n] > dist.probs[n + 1] &&
        dist.probs[n] > 1e-12) {
      ++maxima;
    }
  }
  CHECK(maxima >= 2);
}

TEST_CASE("optimal squeezing factor") {
  CHECK(std::fabs(optimal_r(20.0) - 0.73082010647936251) < 1e-6);
  CHECK(std::fabs(optimal_r(500.0) - 1.2668236905426711) < 1e-6);
  CHECK(optimal_r(1e-6) < 1e-5);  // no signal, squeezing only adds noise

  double prev = 0.0;
  for (int i = 0; i <= 24; ++i) {
    const double a = std::pow(10.0, -1.0 + 4.0 * i / 24.0);
    const double r = optimal_r(a);
    CHECK(r >= prev - 1e-9);
    prev = r;
  }
}

TEST_CASE("validation and grid errors") {
  CHECK_THROWS_AS(optimal_r(0.0), std::invalid_argument);
  CHECK_THROWS_AS(kappa(-0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(dark_distribution(make_params(500.0, 0.0, 0.0), 100, 1e-6),
                  sqbs::GridTooSmall);
}
