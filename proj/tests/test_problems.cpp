#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "semilag/problems.hpp"
#include "semilag/steppers.hpp"
#include "support.hpp"

using namespace semilag;
using semilag::testing::kTwoPi;

namespace {

/// Fourth-order central difference, accurate enough for a 1e-10 check.
template <class F>
double d4(F&& f, double h) {
  return (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
}

double pde_residual_fine(const ProblemSpec& p, double t, double x) {
  const double h = 5e-4;
  double y[2], f[2];
  (*p.exact)(t, x, y);
  const double w = p.omega(t, x, y);
  p.rhs(t, x, y, f);
  double worst = 0.0;
  for (int c = 0; c < 2; ++c) {
    auto along_t = [&](double s) {
      double q[2];
      (*p.exact)(t + s, x, q);
      return q[c];
    };
    auto along_x = [&](double s) {
      double q[2];
      (*p.exact)(t, x + s, q);
      return q[c];
    };
    worst = std::max(worst, std::abs(d4(along_t, h) + w * d4(along_x, h) - f[c]));
  }
  return worst;
}

} // namespace

TEST_CASE("coupled 1D benchmark") {
  const auto p = benchmark_1d_coupled();
  CHECK(p.components() == 2);
  CHECK(p.omega.kind() == OmegaSpec::Case::TXY);
  double y[2];
  (*p.exact)(0.0, 0.25, y);
  CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(y[1]) < 1e-15);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double x = unit(rng);
    double a[2], b[2];
    (*p.exact)(1.0, x, a);
    (*p.exact)(0.0, x, b);
    CHECK(std::abs(a[0] - b[0]) < 1e-12);
    CHECK(std::abs(a[1] - b[1]) < 1e-12);
  }
  CHECK(pde_residual_fine(p, 0.3, 0.7) < 1e-10);
}

TEST_CASE("2D benchmark") {
  const auto p = benchmark_2d();
  double uv[2];
  (*p.exact)(0.0, 0.25, 0.25, uv);
  CHECK(uv[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(uv[1]) < 1e-15);

  // 0.25 is a node of the 20-cell grid, where |sin sin| peaks.
  double peak = 0.0;
  for (int j = 0; j <= 20; ++j) {
    for (int i = 0; i <= 20; ++i) {
      (*p.exact)(1.0, i / 20.0, j / 20.0, uv);
      peak = std::max(peak, std::abs(uv[0]));
    }
  }
  CHECK(peak == doctest::Approx(std::numbers::e).epsilon(1e-14));
  CHECK(testing::pde_residual(p, 0.3, 0.1, 0.6, 1e-5) < 1e-6);
}

TEST_CASE("exact solutions match the initial data at t = 0") {
  const Grid1D g(0.0, 1.0, 37);
  for (const auto& p : {benchmark_1d_coupled(), synthetic_case1(1.0), synthetic_case1(-0.4)}) {
    std::vector<double> a(p.components()), b(p.components());
    for (int i = 0; i <= g.cells(); ++i) {
      p.initial(g.node(i), a);
      (*p.exact)(0.0, g.node(i), b);
      for (std::size_t c = 0; c < a.size(); ++c) {
        CHECK(std::abs(a[c] - b[c]) <= 1e-12);
      }
    }
  }
  const auto p2 = benchmark_2d();
  double a[2], b[2];
  for (int j = 0; j <= 13; ++j) {
    for (int i = 0; i <= 13; ++i) {
      p2.initial(i / 13.0, j / 13.0, a);
      (*p2.exact)(0.0, i / 13.0, j / 13.0, b);
      CHECK(std::abs(a[0] - b[0]) <= 1e-12);
      CHECK(std::abs(a[1] - b[1]) <= 1e-12);
    }
  }
}

TEST_CASE("every exact solution satisfies its PDE at random points") {
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (const auto& entry : registered_problems()) {
    CAPTURE(entry.id);
    const auto problem = make_problem(entry.id);
    REQUIRE(problem.has_value());
    if (const auto* p = std::get_if<ProblemSpec>(&*problem)) {
      if (!p->exact) {
        continue;
      }
      for (int k = 0; k < 50; ++k) {
        CHECK(testing::pde_residual(*p, unit(rng), unit(rng), 1e-5) < 1e-6);
      }
    } else {
      const auto& p2 = std::get<ProblemSpec2D>(*problem);
      for (int k = 0; k < 50; ++k) {
        CHECK(testing::pde_residual(p2, unit(rng), unit(rng), unit(rng), 1e-5) < 1e-6);
      }
    }
  }
}

TEST_CASE("constant-speed translation") {
  const auto moving = synthetic_case1(1.0);
  CHECK(moving.omega.kind() == OmegaSpec::Case::Constant);
  double y[1], y0[1];
  for (double x : {0.0, 0.1, 0.3, 0.77}) {
    (*moving.exact)(0.5, x, y);
    moving.initial(Grid1D(0.0, 1.0, 1).wrap(x - 0.5), y0);
    CHECK(y[0] == doctest::Approx(y0[0]).epsilon(1e-12));
  }
  const auto still = synthetic_case1(0.0);
  for (double t : {0.0, 0.4, 3.0}) {
    (*still.exact)(t, 0.3, y);
    still.initial(0.3, y0);
    CHECK(y[0] == y0[0]);
  }
}

TEST_CASE("variable-speed case converges to a fine reference") {
  const auto p = synthetic_case2();
  CHECK(p.omega.kind() == OmegaSpec::Case::TX);
  CHECK_FALSE(p.exact.has_value());
  const double final_time = 0.5;
  const int fine = 3200;
  const Grid1D gf(0.0, 1.0, fine);
  const auto reference = solve(p, gf, TimeGrid(final_time, fine / 2),
                               MethodConfig::defaults(MethodKind::SLRK4));
  for (MethodKind kind : all_methods()) {
    CAPTURE(method_name(kind));
    std::vector<double> errs;
    for (int m : {50, 100, 200, 400}) {
      const Grid1D g(0.0, 1.0, m);
      const auto out = solve(p, g, TimeGrid(final_time, m / 2), MethodConfig::defaults(kind));
      double worst = 0.0;
      for (int i = 0; i <= m; ++i) {
        worst = std::max(worst, std::abs(out.at(0, i) - reference.at(0, i * (fine / m))));
      }
      errs.push_back(worst);
    }
    MESSAGE(method_name(kind), " errors ", errs[0], " ", errs[1], " ", errs[2], " ", errs[3]);
    for (std::size_t k = 1; k < errs.size(); ++k) {
      CHECK(errs[k] < errs[k - 1] / 1.5);
    }
  }
}

TEST_CASE("registry") {
  const auto entries = registered_problems();
  REQUIRE(entries.size() == 4);
  for (const auto& e : entries) {
    const auto p = make_problem(e.id);
    REQUIRE(p.has_value());
    CHECK((e.dimensions == 2) == std::holds_alternative<ProblemSpec2D>(*p));
  }
  CHECK_FALSE(make_problem("nope").has_value());
}
