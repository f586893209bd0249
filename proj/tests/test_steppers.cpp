#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "semilag/errors.hpp"
#include "semilag/interp.hpp"
#include "semilag/parallel.hpp"
#include "semilag/problems.hpp"
#include "semilag/steppers.hpp"
#include "support.hpp"

using namespace semilag;
using semilag::testing::kTwoPi;

namespace {

/// y' = y with no transport: every node follows the scalar ODE.
ProblemSpec pure_growth(std::size_t comps) {
  ProblemSpec p;
  p.name = "growth";
  for (std::size_t c = 0; c < comps; ++c) {
    p.component_names.push_back("y" + std::to_string(c));
  }
  p.omega = OmegaSpec::constant(0.0);
  p.rhs = [](double, double, std::span<const double> y, std::span<double> out) {
    for (std::size_t c = 0; c < y.size(); ++c) {
      out[c] = y[c];
    }
  };
  p.initial = [](double, std::span<double> y) {
    for (auto& v : y) {
      v = 1.0;
    }
  };
  return p;
}

double textbook(MethodKind kind, double tau) {
  switch (kind) {
  case MethodKind::SLEM: return testing::euler_growth(tau);
  case MethodKind::MSLEM: return testing::heun_growth(tau);
  case MethodKind::SLRK3: return testing::kutta3_growth(tau);
  case MethodKind::SLRK4: return testing::rk4_growth(tau);
  }
  return 0.0;
}

StateField exact_field(const ProblemSpec& p, const Grid1D& g, double t) {
  StateField f(p.components(), g.node_count());
  std::vector<double> y(p.components());
  for (int i = 0; i <= g.cells(); ++i) {
    (*p.exact)(t, g.node(i), y);
    for (std::size_t c = 0; c < y.size(); ++c) {
      f.at(c, i) = y[c];
    }
  }
  return f;
}

struct WorkersGuard {
  explicit WorkersGuard(const char* value) { setenv(kWorkersEnv, value, 1); }
  ~WorkersGuard() { unsetenv(kWorkersEnv); }
};

} // namespace

TEST_CASE("hand-computed ODE steps on y' = y") {
  CHECK(testing::euler_growth(0.1) == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(testing::heun_growth(0.1) == doctest::Approx(1.105).epsilon(1e-15));
  CHECK(testing::kutta3_growth(0.1) == doctest::Approx(1.0 + 0.1 / 6.0 * 6.31).epsilon(1e-15));
  CHECK(testing::rk4_growth(0.1) == doctest::Approx(1.1051708333333333).epsilon(1e-15));
}

TEST_CASE("zero speed reduces every method to its ODE counterpart") {
  for (MethodKind kind : all_methods()) {
    CAPTURE(method_name(kind));
    for (std::size_t comps : {1u, 3u}) {
      const auto p = pure_growth(comps);
      const Grid1D g(0.0, 1.0, 10);
      const auto cfg = MethodConfig::defaults(kind);
      DepartureState dep;
      const auto y1 = step(initial_field(p, g), 0.0, p, g, 0.1, cfg, dep);
      const double expect = textbook(kind, 0.1);
      for (double v : y1.values()) {
        CHECK(std::abs(v - expect) <= 1e-13 * expect);
      }
      // Ten steps compose the same growth factor.
      const auto y10 = solve(p, g, TimeGrid(1.0, 10), cfg);
      const double ten = std::pow(expect, 10);
      for (double v : y10.values()) {
        CHECK(std::abs(v - ten) <= 1e-13 * ten);
      }
    }
  }
}

TEST_CASE("constant speed with c tau = h shifts by one node") {
  const auto p = synthetic_case1(1.0);
  const Grid1D g(0.0, 1.0, 50);
  for (MethodKind kind : all_methods()) {
    CAPTURE(method_name(kind));
    const auto cfg = MethodConfig::defaults(kind);
    const auto y0 = initial_field(p, g);
    DepartureState dep;
    const auto y1 = step(y0, 0.0, p, g, g.spacing(), cfg, dep);
    for (int i = 1; i <= g.cells(); ++i) {
      CHECK(std::abs(y1.at(0, i) - y0.at(0, i - 1)) < 1e-14);
    }
    CHECK(std::abs(y1.at(0, 0) - y0.at(0, g.cells() - 1)) < 1e-14);

    const auto period = solve(p, g, TimeGrid(1.0, 50), cfg);
    CHECK(testing::max_abs_diff(period, y0) < 1e-12);
  }
}

TEST_CASE("stationary states survive any speed") {
  for (bool tx : {true, false}) {
    ProblemSpec p;
    p.name = "flat";
    p.component_names = {"y"};
    p.omega = tx ? OmegaSpec::tx([](double, double x) { return std::sin(kTwoPi * x) + 2.0; })
                 : OmegaSpec::txy([](double t, double x, std::span<const double> y) {
                     return 1.0 + 0.5 * std::cos(kTwoPi * x + t) * y[0];
                   });
    p.rhs = [](double, double, std::span<const double>, std::span<double> out) { out[0] = 0.0; };
    p.initial = [](double, std::span<double> y) { y[0] = 0.625; };
    const Grid1D g(0.0, 1.0, 32);
    for (MethodKind kind : all_methods()) {
      const auto out = solve(p, g, TimeGrid(0.5, 16), MethodConfig::defaults(kind));
      // Weights sum to one only up to rounding, which accumulates per step.
      for (double v : out.values()) {
        CHECK(std::abs(v - 0.625) <= 1e-14);
      }
    }
  }
}

TEST_CASE("zero speed and zero right-hand side is the identity") {
  auto p = synthetic_case1(0.0);
  const Grid1D g(0.0, 1.0, 20);
  for (MethodKind kind : all_methods()) {
    const auto y0 = initial_field(p, g);
    CHECK(solve(p, g, TimeGrid(1.0, 7), MethodConfig::defaults(kind)) == y0);
  }
}

TEST_CASE("zero right-hand side leaves only the transported profile") {
  // With f = 0 every method must return the departure interpolant itself.
  const auto p = synthetic_case1(0.37);
  const Grid1D g(0.0, 1.0, 40);
  const double tau = 0.01;
  for (MethodKind kind : all_methods()) {
    const auto cfg = MethodConfig::defaults(kind);
    const auto y0 = initial_field(p, g);
    DepartureState dep;
    const auto y1 = step(y0, 0.0, p, g, tau, cfg, dep);
    for (int i = 0; i <= g.cells(); ++i) {
      const double shifted = interp1d(y0, g, g.node(i) - 0.37 * tau, cfg.order)[0];
      CHECK(std::abs(y1.at(0, i) - shifted) < 1e-15);
    }
  }
}

TEST_CASE("solve with no steps returns the initial field") {
  const auto p = benchmark_1d_coupled();
  const Grid1D g(0.0, 1.0, 16);
  const auto y0 = initial_field(p, g);
  int calls = 0;
  const auto out = solve(p, g, TimeGrid(0.0, 0), MethodConfig::defaults(MethodKind::SLRK4),
                         [&](int k, double t, const StateField&) {
                           CHECK(k == 0);
                           CHECK(t == 0.0);
                           ++calls;
                         });
  CHECK(out == y0);
  CHECK(calls == 1);
}

TEST_CASE("observer sees every level in order") {
  const auto p = benchmark_1d_coupled();
  const Grid1D g(0.0, 1.0, 20);
  const TimeGrid time(1.0, 20);
  std::vector<int> seen;
  StateField last;
  const auto out = solve(p, g, time, MethodConfig::defaults(MethodKind::MSLEM),
                         [&](int k, double t, const StateField& f) {
                           CHECK(t == doctest::Approx(time.time(k)));
                           seen.push_back(k);
                           last = f;
                         });
  REQUIRE(seen.size() == 21);
  for (int k = 0; k <= 20; ++k) {
    CHECK(seen[k] == k);
  }
  CHECK(last == out);
}

TEST_CASE("periodic seam holds after every step") {
  const auto p = benchmark_1d_coupled();
  const Grid1D g(0.0, 1.0, 30);
  for (MethodKind kind : all_methods()) {
    solve(p, g, TimeGrid(1.0, 30), MethodConfig::defaults(kind),
          [&](int, double, const StateField& f) {
            for (std::size_t c = 0; c < f.components(); ++c) {
              CHECK(f.at(c, 0) == f.at(c, g.cells()));
            }
          });
  }
}

TEST_CASE("one step from exact data: local error order") {
  const auto p = benchmark_1d_coupled();
  for (MethodKind kind : all_methods()) {
    CAPTURE(method_name(kind));
    std::vector<double> taus, errs;
    for (int m : {100, 200, 400}) {
      const Grid1D g(0.0, 1.0, m);
      const double tau = g.spacing();
      DepartureState dep;
      const auto y1 = step(initial_field(p, g), 0.0, p, g, tau, MethodConfig::defaults(kind), dep);
      taus.push_back(tau);
      errs.push_back(testing::max_abs_diff(y1, exact_field(p, g, tau)));
    }
    const double slope = testing::loglog_slope(taus, errs);
    CHECK(slope == doctest::Approx(nominal_order(kind) + 1).epsilon(0.3 / (nominal_order(kind) + 1)));
    if (kind == MethodKind::SLEM) {
      CHECK(errs[1] <= 100.0 * 0.005 * 0.005);
    }
  }
}

TEST_CASE("increment over a tiny step approaches f") {
  const auto p = benchmark_1d_coupled();
  const Grid1D g(0.0, 1.0, 64);
  for (MethodKind kind : all_methods()) {
    CAPTURE(method_name(kind));
    const auto cfg = MethodConfig::defaults(kind);
    const auto y0 = initial_field(p, g);
    std::vector<double> gaps;
    double scale = 0.0;
    for (double tau : {1e-5, 1e-6}) {
      DepartureState dep;
      const auto y1 = step(y0, 0.0, p, g, tau, cfg, dep);
      double worst = 0.0;
      for (int i = 0; i < g.cells(); ++i) {
        const double xd = dep.points[i];
        const auto yd = interp1d(y0, g, xd, cfg.order);
        double f[2];
        p.rhs(0.0, xd, yd, f);
        for (int c = 0; c < 2; ++c) {
          const double increment = (y1.at(c, i) - yd[c]) / tau;
          worst = std::max(worst, std::abs(increment - f[c]));
          scale = std::max(scale, std::abs(f[c]));
        }
      }
      gaps.push_back(worst);
    }
    CHECK(gaps[1] <= 1e-4 * scale);
    if (kind != MethodKind::SLEM) {
      // The gap is O(tau): a tenfold smaller step shrinks it about tenfold.
      CHECK(gaps[1] < gaps[0] / 5.0);
    }
  }
}

TEST_CASE("results do not depend on the worker count") {
  const auto p = benchmark_1d_coupled();
  const Grid1D g(0.0, 1.0, 50);
  for (MethodKind kind : all_methods()) {
    StateField one, many;
    {
      WorkersGuard w("1");
      one = solve(p, g, TimeGrid(1.0, 50), MethodConfig::defaults(kind));
    }
    {
      WorkersGuard w("5");
      many = solve(p, g, TimeGrid(1.0, 50), MethodConfig::defaults(kind));
    }
    CHECK(one == many);
  }
}

TEST_CASE("non-finite updates fail with the step index") {
  auto p = synthetic_case1(1.0);
  p.rhs = [](double t, double, std::span<const double>, std::span<double> out) {
    out[0] = t > 0.25 ? std::nan("") : 0.0;
  };
  const Grid1D g(0.0, 1.0, 10);
  for (MethodKind kind : all_methods()) {
    try {
      solve(p, g, TimeGrid(1.0, 10), MethodConfig::defaults(kind));
      FAIL("expected SolverError");
    } catch (const SolverError& e) {
      REQUIRE(e.step().has_value());
      // Stages reach t_{k+1} = 0.3 while computing level 3; SLEM samples
      // only t_k and first sees t = 0.3 at level 4.
      CHECK(*e.step() == (kind == MethodKind::SLEM ? 4 : 3));
      CHECK(std::string(e.what()).find("component 0") != std::string::npos);
    }
  }
}

TEST_CASE("runaway departures fail as divergence") {
  ProblemSpec p = synthetic_case1(1.0);
  p.omega = OmegaSpec::tx([](double, double x) { return 50.0 * (x + 1.0); });
  const Grid1D g(0.0, 1.0, 10);
  CHECK_THROWS_AS(solve(p, g, TimeGrid(1.0, 2), MethodConfig::defaults(MethodKind::SLEM)),
                  DivergenceError);
  try {
    solve(p, g, TimeGrid(1.0, 2), MethodConfig::defaults(MethodKind::SLEM));
  } catch (const DivergenceError& e) {
    CHECK(e.step() == 1);
  }
}

TEST_CASE("configuration and input validation") {
  CHECK_THROWS_AS((MethodConfig{MethodKind::SLRK4, InterpOrder(3), 5}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((MethodConfig{MethodKind::SLEM, InterpOrder(1), 0}.validate()),
                  std::invalid_argument);
  CHECK_NOTHROW((MethodConfig{MethodKind::SLEM, InterpOrder(4), 1}.validate()));

  auto broken = synthetic_case1(1.0);
  broken.initial = [](double x, std::span<double> y) { y[0] = x; }; // not periodic
  CHECK_THROWS_AS(initial_field(broken, Grid1D(0.0, 1.0, 8)), std::invalid_argument);

  const auto p = synthetic_case1(1.0);
  const Grid1D g(0.0, 1.0, 8);
  DepartureState dep;
  CHECK_THROWS_AS(step(initial_field(p, g), 0.0, p, g, 0.0, MethodConfig::defaults(MethodKind::SLEM), dep),
                  std::invalid_argument);
  CHECK_THROWS_AS(step(StateField(2, 9), 0.0, p, g, 0.1, MethodConfig::defaults(MethodKind::SLEM), dep),
                  std::invalid_argument);
}

TEST_CASE("method names") {
  CHECK(parse_method("slrk3") == MethodKind::SLRK3);
  CHECK_FALSE(parse_method("rk9").has_value());
  CHECK(method_list() == "slem, mslem, slrk3, slrk4");
  for (MethodKind kind : all_methods()) {
    CHECK(parse_method(method_name(kind)) == kind);
    CHECK(MethodConfig::defaults(kind).order.value() == nominal_order(kind));
    CHECK(MethodConfig::defaults(kind).iterations == 5);
  }
}
