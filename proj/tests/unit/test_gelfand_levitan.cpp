#include <doctest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "slspec/error.hpp"
#include "slspec/gelfand_levitan.hpp"

using namespace slspec;

namespace {

const BoundaryAngles kNeumann(kPi / 2.0, kPi / 2.0);

SpectralData free_data(std::size_t n) {
  std::vector<double> mus(n), at(n, kPi / 2.0);
  for (std::size_t k = 0; k < n; ++k) mus[k] = double(k * k);
  at[0] = kPi;
  return SpectralData(mus, at);
}

double l2_error(const Potential& a, const Potential& b) {
  std::vector<double> d(a.grid().size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(quad_trapz(a.grid(), d));
}

}  // namespace

TEST_CASE("F vanishes for unperturbed data") {
  Grid g(129);
  for (bool tail : {true, false}) {
    auto F = build_F(free_data(30), g, FOptions{0, tail});
    for (std::size_t i = 0; i < g.size(); ++i)
      for (double v : F.row(i)) CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("one perturbed norming constant gives a constant F") {
  Grid g(65);
  auto d = free_data(30);
  auto at = d.a_tildes();
  at[0] = kPi / 2.0;
  SpectralData p(d.mus(), at);
  for (bool tail : {true, false}) {
    auto F = build_F(p, g, FOptions{0, tail});
    for (std::size_t i = 0; i < g.size(); ++i)
      for (double v : F.row(i)) CHECK(v == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  }
}

TEST_CASE("truncated F matches an independent summation") {
  auto s = eigenvalues(Potential::from_function(Grid{}, [](double) { return 1.0; }), kNeumann, 50);
  SpectralData d(s);
  Grid g(257);
  auto F = build_F(d, g, FOptions{50, false});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  for (int k = 0; k < 10; ++k) {
    std::size_t i = pick(rng), j = pick(rng);
    if (j > i) std::swap(i, j);
    const double x = g.node(i), t = g.node(j);
    double ref = 0.0;
    for (std::size_t n = 0; n < 50; ++n) {
      const double l = std::sqrt(s[n].mu);
      const double a0 = n == 0 ? kPi : kPi / 2.0;
      ref += std::cos(l * x) * std::cos(l * t) / s[n].a_tilde -
             std::cos(double(n) * x) * std::cos(double(n) * t) / a0;
    }
    CHECK(std::abs(F.at(i, j) - ref) < 1e-12);
    CHECK(F.at(j, i) == F.at(i, j));
  }
}

TEST_CASE("closed-form head sums") {
  for (double omega : {0.5, -0.3, 1.2}) {
    for (double u : {0.3, 1.0, 2.5, 5.0}) {
      CAPTURE(omega);
      CAPTURE(u);
      CHECK(std::abs(head_sum(2, omega, u) - oracle::head_sum_brute(2, omega, u, 400000)) < 1e-6);
      CHECK(std::abs(head_sum(0, omega, u) - oracle::head_sum_brute(0, omega, u, 400000)) < 1e-5);
    }
  }
  // omega = 0: sum cos(nu)/n^2 = pi^2/6 - pi u/2 + u^2/4
  CHECK(head_sum(2, 0.0, 1.0) == doctest::Approx(kPi * kPi / 6.0 - kPi / 2.0 + 0.25).epsilon(1e-13));
  CHECK(head_sum(0, 0.0, 1.0) == 0.0);
  CHECK_THROWS_AS(head_sum(1, 0.0, 1.0), Error);
}

TEST_CASE("GL solution for constant F") {
  Grid g(129);
  const double c = 0.2;
  TriangularKernel F(g, true);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (auto& v : F.row(i)) v = c;
  auto sol = solve_GL(F);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      CHECK(std::abs(sol.G.at(i, j) + c / (1.0 + c * g.node(i))) < 1e-12);
  CHECK(sol.G.at(0, 0) == -F.at(0, 0));
  CHECK(sol.condition_max >= 1.0);
  CHECK_THROWS_AS(sol.G.at(0, 5), Error);

  TriangularKernel Z(g, true);
  auto zero = solve_GL(Z);
  for (double v : zero.G.diagonal()) CHECK(v == 0.0);
}

TEST_CASE("indefinite systems are rejected") {
  Grid g(65);
  TriangularKernel F(g, true);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (auto& v : F.row(i)) v = -1.0;
  try {
    (void)solve_GL(F);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsolvable_gl);
  }
}

TEST_CASE("missing modes without a tail model") {
  CHECK_THROWS_AS(build_F(free_data(10), Grid(65), FOptions{20, false}), Error);
}

TEST_CASE("reconstruction of the free problem") {
  auto r = reconstruct(free_data(50), Grid{});
  for (double v : r.q_hat.values()) CHECK(std::abs(v) < 1e-6);
  CHECK(r.alpha_hat == doctest::Approx(kPi / 2.0).epsilon(1e-12));
  CHECK(r.beta_hat == doctest::Approx(kPi / 2.0).epsilon(1e-9));
  CHECK(r.beta_ratios.size() == 8);
}

TEST_CASE("constant potential: diagonal and round trip") {
  auto s = eigenvalues(Potential::from_function(Grid{}, [](double) { return 1.0; }), kNeumann, 50);
  Grid g;
  auto r = reconstruct(SpectralData(s), g);
  double dmax = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) dmax = std::max(dmax, std::abs(r.diag[i] - g.node(i) / 2.0));
  CHECK(dmax < 2e-3);
  CHECK(l2_error(r.q_hat, Potential::from_function(g, [](double) { return 1.0; })) < 1e-2);
  CHECK(std::abs(r.alpha_hat - kPi / 2.0) < 1e-3);
  CHECK(std::abs(r.beta_hat - kPi / 2.0) < 1e-2);
}

TEST_CASE("2cos2x round trip") {
  auto qf = [](double x) { return 2.0 * std::cos(2.0 * x); };
  const double a = kPi / 3.0, b = 2.0 * kPi / 3.0;
  Grid g;
  auto q = Potential::from_function(g, qf);
  auto s = eigenvalues(q, BoundaryAngles(a, b), 50);
  auto r = reconstruct(SpectralData(s), g);
  CHECK(l2_error(r.q_hat, q) < 5e-2);
  CHECK(std::abs(r.alpha_hat - a) < 1e-2);
  CHECK(std::abs(r.beta_hat - b) < 1e-2);
  CHECK(r.beta_consistency < 1e-3);

  SUBCASE("diagonal identity") {
    auto integral = cumulative_trapz(g, q.values());
    double dmax = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      dmax = std::max(dmax, std::abs(r.diag[i] - (-corpus::cot(a) + 0.5 * integral[i])));
    CHECK(dmax < 5e-3);
  }
  SUBCASE("transformed solutions solve the reconstructed equation") {
    const double h = g.spacing();
    for (std::size_t n : {0, 3, 7}) {
      const double mu = s[n].mu;
      auto phi = transform_solution(r.G, mu);
      double res = 0.0, nrm = 0.0;
      for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        const double d2 = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h);
        const double e = -d2 + r.q_hat[i] * phi[i] - mu * phi[i];
        res += e * e;
        nrm += phi[i] * phi[i];
      }
      CAPTURE(n);
      CHECK(std::sqrt(res) < 1e-2 * std::sqrt(nrm));
    }
  }
  SUBCASE("boundary condition at 0") {
    auto phi = transform_solution(r.G, s[2].mu);
    CHECK(phi[0] == 1.0);
    const double g00 = r.G.at(0, 0);
    CHECK(std::abs(std::cos(r.alpha_hat) + g00 * std::sin(r.alpha_hat)) < 1e-14);
  }
}

TEST_CASE("more modes do not make the reconstruction worse") {
  Grid g(1025);
  const BoundaryAngles ang(kPi / 3.0, 2.0 * kPi / 3.0);
  for (const auto& p : corpus::potentials()) {
    auto q = corpus::sample(p, g);
    auto s = eigenvalues(corpus::sample(p), ang, 50);
    ReconstructOptions o25, o50;
    o25.f.n_modes = 25;
    o50.f.n_modes = 50;
    const double e25 = l2_error(reconstruct(SpectralData(s), g, o25).q_hat, q);
    const double e50 = l2_error(reconstruct(SpectralData(s), g, o50).q_hat, q);
    CAPTURE(p.name);
    CAPTURE(e25);
    CAPTURE(e50);
    CHECK(e50 <= 1.1 * e25 + 1e-9);
  }
}

TEST_CASE("smoothing keeps quadratics") {
  std::vector<double> v(40);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.3 * double(i * i) - 2.0 * double(i) + 1.0;
  auto s = smooth5(v);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(s[i] == doctest::Approx(v[i]).epsilon(1e-12));
}
