#include <doctest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "slspec/error.hpp"
#include "slspec/forward.hpp"

using namespace slspec;

namespace {

const BoundaryAngles kNeumann(kPi / 2.0, kPi / 2.0);

// Closed form for q = 0: phi = sin(a) cos(l x) - cos(a) sin(l x) / l.
double free_char(double alpha, double beta, double mu) {
  const double l = std::sqrt(mu);
  const double p = std::sin(alpha) * std::cos(l * kPi) - std::cos(alpha) * std::sin(l * kPi) / l;
  const double dp = -l * std::sin(alpha) * std::sin(l * kPi) - std::cos(alpha) * std::cos(l * kPi);
  return p * std::cos(beta) + dp * std::sin(beta);
}

}  // namespace

TEST_CASE("angles must lie strictly inside (0, pi)") {
  CHECK_THROWS_AS(BoundaryAngles(0.0, 1.0), Error);
  CHECK_THROWS_AS(BoundaryAngles(1.0, kPi), Error);
  CHECK_THROWS_AS(BoundaryAngles(std::nan(""), 1.0), Error);
  CHECK_NOTHROW(BoundaryAngles(1e-3, kPi - 1e-3));
}

TEST_CASE("characteristic function of the free problem") {
  auto q = Potential::zero();
  for (double l : {0.5, 1.3, 2.0, 4.7, 9.25}) {
    CAPTURE(l);
    CHECK(std::abs(char_fn(q, kNeumann, l * l) + l * std::sin(kPi * l)) < 1e-7);
    CHECK(std::abs(psi_char_fn(q, kNeumann, l * l) - l * std::sin(kPi * l)) < 1e-7);
  }
  CHECK(std::abs(char_fn(q, kNeumann, 4.0)) < 1e-7);
  CHECK(std::abs(psi_char_fn(q, kNeumann, 4.0)) < 1e-7);

  const BoundaryAngles mixed(kPi / 4.0, kPi / 2.0);
  for (double mu : {1.0, 2.5, 30.0})
    CHECK(std::abs(char_fn(q, mixed, mu) - free_char(kPi / 4.0, kPi / 2.0, mu)) < 1e-7);
  const BoundaryAngles generic(kPi / 3.0, 2.0 * kPi / 3.0);
  for (double mu : {0.7, 11.0, 150.0})
    CHECK(std::abs(char_fn(q, generic, mu) - free_char(kPi / 3.0, 2.0 * kPi / 3.0, mu)) < 1e-7);
}

TEST_CASE("Psi equals -Phi") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 400.0);
  for (const auto& p : corpus::potentials()) {
    auto q = corpus::sample(p);
    for (const auto& ap : corpus::angle_pairs()) {
      BoundaryAngles ang(ap.alpha, ap.beta);
      for (int i = 0; i < 100; ++i) {
        const double mu = u(rng);
        const double phi = char_fn(q, ang, mu);
        const double psi = psi_char_fn(q, ang, mu);
        const double scale = std::max({std::abs(phi), std::abs(psi), 1.0});
        CHECK(std::abs(phi + psi) <= 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("free spectrum with Neumann ends") {
  auto s = eigenvalues(Potential::zero(), kNeumann, 21);
  REQUIRE(s.size() == 21);
  for (std::size_t n = 0; n < 21; ++n) {
    CAPTURE(n);
    CHECK(std::abs(s[n].mu - double(n * n)) < 1e-8);
    CHECK(std::abs(s[n].a_tilde - (n == 0 ? kPi : kPi / 2.0)) < 1e-6);
    CHECK(s[n].index == n);
    CHECK_FALSE(s[n].lambda_imaginary);
  }
}

TEST_CASE("constant potential shifts the spectrum") {
  auto s0 = eigenvalues(Potential::zero(), kNeumann, 10);
  auto s1 = eigenvalues(Potential::from_function(Grid{}, [](double) { return 1.0; }), kNeumann, 10);
  for (std::size_t n = 0; n < 10; ++n) {
    CHECK(std::abs(s1[n].mu - double(n * n) - 1.0) < 1e-8);
    CHECK(std::abs(s1[n].a_tilde - s0[n].a_tilde) < 1e-6);
  }
  CHECK(s1.q_mean() == doctest::Approx(1.0));
}

TEST_CASE("negative ground state") {
  // q = -2 with Neumann ends: mu_0 = -2, lambda imaginary.
  auto s = eigenvalues(Potential::from_function(Grid{}, [](double) { return -2.0; }), kNeumann, 3);
  CHECK(s[0].mu == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(s[0].lambda_imaginary);
  CHECK(s[0].lambda_abs == doctest::Approx(std::sqrt(2.0)));
  CHECK(s[1].mu == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("2cos2x agrees with a finite-difference eigensolver") {
  auto qf = [](double x) { return 2.0 * std::cos(2.0 * x); };
  const double a = kPi / 3.0, b = 2.0 * kPi / 3.0;
  oracle::FdEigenOracle fd(qf, a, b, 16384);
  auto s = eigenvalues(Potential::from_function(Grid{}, qf), BoundaryAngles(a, b), 10);
  for (std::size_t n = 0; n < 10; ++n) {
    CAPTURE(n);
    CHECK(std::abs(s[n].mu - fd.eigenvalue(n)) < 1e-4);
  }
}

TEST_CASE("ordering and gaps") {
  auto q = Potential::from_function(Grid{}, [](double x) { return x * (kPi - x) - kPi * kPi / 6.0; });
  auto s = eigenvalues(q, BoundaryAngles(kPi / 4.0, kPi / 3.0), 60);
  for (std::size_t n = 1; n < s.size(); ++n) CHECK(s[n].mu > s[n - 1].mu);
  for (std::size_t n = 40; n + 1 < s.size(); ++n) {
    const double gap = s[n + 1].mu - s[n].mu;
    CHECK(std::abs(gap / (2.0 * n + 1.0) - 1.0) < 0.05);
  }
}

TEST_CASE("reflection") {
  SUBCASE("symmetric potential is a fixed point") {
    auto q = Potential::from_function(Grid{}, [](double x) { return 2.0 * std::cos(2.0 * x); });
    auto [qr, ar] = reflect_problem(q, kNeumann);
    CHECK(ar.alpha() == kNeumann.alpha());
    CHECK(ar.beta() == kNeumann.beta());
    for (std::size_t i = 0; i < q.grid().size(); ++i) CHECK(std::abs(qr[i] - q[i]) < 1e-12);
  }
  SUBCASE("q = x") {
    auto q = Potential::from_function(Grid{}, [](double x) { return x; });
    auto [qr, ar] = reflect_problem(q, BoundaryAngles(kPi / 3.0, 2.0 * kPi / 3.0));
    CHECK(ar.alpha() == doctest::Approx(kPi / 3.0));
    CHECK(ar.beta() == doctest::Approx(2.0 * kPi / 3.0));
    for (std::size_t i = 0; i < q.grid().size(); ++i)
      CHECK(std::abs(qr[i] - (kPi - q.grid().node(i))) < 1e-12);
  }
  SUBCASE("spectra and norming constants") {
    auto q = Potential::from_function(Grid{}, [](double x) { return 2.0 * std::cos(2.0 * x) + 0.3 * x; });
    BoundaryAngles ang(kPi / 3.0, 2.0 * kPi / 3.0);
    auto [qr, ar] = reflect_problem(q, ang);
    auto s = eigenvalues(q, ang, 20);
    auto r = eigenvalues(qr, ar, 20);
    for (std::size_t n = 0; n < 20; ++n) {
      CAPTURE(n);
      CHECK(std::abs(s[n].mu - r[n].mu) < 1e-8);
      CHECK(std::abs(r[n].a_tilde / s[n].b_tilde - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("eigenfunctions are collinear") {
  for (const auto& p : corpus::potentials()) {
    auto q = corpus::sample(p);
    for (const auto& ap : corpus::angle_pairs()) {
      BoundaryAngles ang(ap.alpha, ap.beta);
      auto s = eigenvalues(q, ang, 12);
      for (std::size_t n = 0; n < s.size(); ++n) {
        auto phi = phi_solution(q, ang, s[n].mu);
        auto psi = psi_solution(q, ang, s[n].mu);
        double dev = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < phi.y.size(); ++i) {
          dev = std::max(dev, std::abs(phi.y[i] - s[n].c_n * psi.y[i]));
          peak = std::max(peak, std::abs(phi.y[i]));
        }
        CAPTURE(p.name);
        CAPTURE(ap.name);
        CAPTURE(n);
        CHECK(dev < 1e-6 * peak);
      }
    }
  }
}

TEST_CASE("norming constant relations") {
  auto q = Potential::from_function(Grid{}, [](double x) { return 2.0 * std::cos(2.0 * x); });
  const double a = kPi / 3.0, b = 2.0 * kPi / 3.0;
  auto s = eigenvalues(q, BoundaryAngles(a, b), 10);
  for (const auto& r : s.records()) {
    CHECK(r.a_tilde == doctest::Approx(r.a_n / (std::sin(a) * std::sin(a))).epsilon(1e-12));
    CHECK(r.b_tilde == doctest::Approx(r.b_n / (std::sin(b) * std::sin(b))).epsilon(1e-12));
    // a_n = c_n^2 b_n since phi_n = c_n psi_n
    CHECK(r.a_n == doctest::Approx(r.c_n * r.c_n * r.b_n).epsilon(1e-6));
    CHECK(std::abs(r.phi_end * std::cos(b) + r.dphi_end * std::sin(b)) < 1e-6 * (1.0 + std::abs(r.dphi_end)));
  }
}

TEST_CASE("norm integral is fourth order") {
  Grid g(129);
  auto s = integrate_ivp(Potential::zero(g), 9.0, 1.0, 0.0, Direction::left_to_right);
  CHECK(std::abs(norm_squared(s) - kPi / 2.0) < 1e-8);
}

TEST_CASE("spectrum validation") {
  BoundaryAngles ang(1.0, 1.0);
  std::vector<EigenRecord> recs(2);
  recs[0].index = 0;
  recs[0].mu = 1.0;
  recs[1].index = 1;
  recs[1].mu = 0.5;
  CHECK_THROWS_AS(Spectrum(ang, 0.0, recs), Error);
  recs[1].mu = 2.0;
  recs[1].index = 3;
  CHECK_THROWS_AS(Spectrum(ang, 0.0, recs), Error);
  recs[1].index = 1;
  CHECK_NOTHROW(Spectrum(ang, 0.0, recs));
  CHECK_THROWS_AS(eigenvalues(Potential::zero(), ang, 0), Error);
}
