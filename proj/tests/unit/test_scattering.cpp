#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "gsqg/errors.hpp"
#include "gsqg/nonlinearity.hpp"
#include "gsqg/scattering.hpp"

using namespace gsqg;

namespace {

double lam(const AlphaParams& p, double x) { return p.gamma * x * std::pow(std::fabs(x), p.alpha - 1.0); }

}  // namespace

TEST_CASE("phase matches the dispersion relation") {
  const AlphaParams p = make_alpha_params(1.5);
  const double direct = -dispersion(p, 1.0) + dispersion(p, 0.5) + dispersion(p, 0.25) +
                        dispersion(p, 0.25);
  CHECK(phase_phi(p, 1.0, 0.5, 0.25) == doctest::Approx(direct).epsilon(1e-15));
  CHECK(phase_phi(p, 1.0, 0.5, 0.25) ==
        doctest::Approx(-lam(p, 1.0) + lam(p, 0.5) + 2.0 * lam(p, 0.25)).epsilon(1e-14));
  CHECK(phase_phi(p, 2.0, 2.0, 2.0) == doctest::Approx(0.0).scale(1.0));
  CHECK(std::fabs(phase_phi(p, 1.3, 1.3, -1.3)) < 1e-15);
}

TEST_CASE("phase gradient agrees with central differences") {
  const AlphaParams p = make_alpha_params(1.3);
  const double h = 1e-6;
  for (auto [xi, a, b] : {std::array{1.0, 0.3, -0.7}, std::array{-2.0, 1.1, 0.4},
                          std::array{0.5, -0.2, 0.9}}) {
    const auto g = phase_phi_gradient(p, xi, a, b);
    const double d1 = (phase_phi(p, xi, a + h, b) - phase_phi(p, xi, a - h, b)) / (2 * h);
    const double d2 = (phase_phi(p, xi, a, b + h) - phase_phi(p, xi, a, b - h)) / (2 * h);
    CHECK(g[0] == doctest::Approx(d1).epsilon(1e-6));
    CHECK(g[1] == doctest::Approx(d2).epsilon(1e-6));
  }
}

TEST_CASE("resonances are exactly the three symmetric points") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> mag(0.2, 2.5);
  for (double alpha : {1.2, 1.5, 1.8}) {
    const AlphaParams p = make_alpha_params(alpha);
    for (int trial = 0; trial < 10; ++trial) {
      const double xi = (trial % 2 ? -1.0 : 1.0) * mag(rng);
      SearchBox box;
      box.half_width = 3.0 * std::fabs(xi);
      box.cells = 200;
      const auto found = find_resonances(p, xi, box);
      const auto expect = expected_resonances(p, xi);
      REQUIRE(found.size() == 3);
      for (const auto& e : expect) {
        double best = INFINITY;
        for (const auto& f : found) best = std::min(best, std::hypot(f.eta1 - e.eta1, f.eta2 - e.eta2));
        CHECK(best <= 1e-6 * std::max(1.0, std::fabs(xi)));
      }
      for (const auto& f : found) {
        CHECK(std::fabs(f.phi_value) < 1e-10);
        CHECK(f.grad_norm < 1e-8);
      }
    }
  }
}

TEST_CASE("no near-resonance away from the three points") {
  const AlphaParams p = make_alpha_params(1.5);
  SearchBox box;
  box.cells = 200;
  CHECK(resonance_gap(p, 1.0, box, 0.05) > 1e-3);
  CHECK_THROWS_AS(find_resonances(p, 0.0, box), DomainError);
}

TEST_CASE("resonant coefficient is odd, homogeneous of degree 4 and stable") {
  const AlphaParams p = make_alpha_params(1.5);
  CHECK(c_tilde(p, -1.7) == doctest::Approx(-c_tilde(p, 1.7)).epsilon(1e-13));
  CHECK(c_tilde(p, 1.8) / c_tilde(p, 0.9) == doctest::Approx(16.0).epsilon(1e-6));
  CHECK(c_tilde(p, 1.0) == doctest::Approx(0.21095723503162).epsilon(1e-10));
  CHECK(resonant_coefficient(p, 1.0) == doctest::Approx(c_tilde(p, 1.0) / 3.0).epsilon(1e-15));
  CHECK(resonant_coefficient(p, 0.0) == 0.0);
  CHECK_THROWS_AS(c_tilde(p, 0.0), DomainError);
}

TEST_CASE("resonant coefficient through the integral symbol matches the closed form") {
  for (double alpha : {1.25, 1.5, 1.75}) {
    const AlphaParams p = make_alpha_params(alpha);
    const M1Evaluator cube = [&](double a, double b, double c) {
      return eval_symbol_m1(p, {{a, b, c}, SymbolMethod::kCubeIntegral});
    };
    CHECK(c_tilde(p, cube, 1.0) == doctest::Approx(c_tilde(p, 1.0)).epsilon(1e-6));
  }
}

TEST_CASE("corrected profile keeps moduli") {
  auto g = make_grid(16.0 * std::numbers::pi, 128);
  std::vector<double> s(g->size());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = std::exp(-g->nodes()[j] * g->nodes()[j]);
  const SpectralField v = SpectralField::from_samples(g, s);
  std::vector<double> phase(g->size());
  for (std::size_t i = 0; i < phase.size(); ++i) phase[i] = 3.7 * g->freqs()[i];
  const CorrectedProfile c = corrected_profile(v, phase, 2.5);
  CHECK(c.t == 2.5);
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    worst = std::max(worst, std::fabs(std::abs(c.v_star_hat[i]) - std::abs(v[i])));
  CHECK(worst < 1e-13);
  CHECK(std::arg(c.v_star_hat[1] / v[1]) == doctest::Approx(3.7 * g->freqs()[1]));
}

TEST_CASE("unwrap removes 2 pi jumps") {
  std::vector<double> raw;
  std::vector<double> truth;
  for (int i = 0; i < 200; ++i) {
    const double a = 0.13 * i;
    truth.push_back(a);
    raw.push_back(std::remainder(a, 2.0 * std::numbers::pi));
  }
  const auto u = unwrap_phase(raw);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(u[i] == doctest::Approx(truth[i]));
  CHECK(unwrapped_phase_variance(std::vector<double>(10, 1.0)) == 0.0);
  CHECK(unwrapped_phase_variance(std::vector<double>{0.0, 2.0}) == doctest::Approx(1.0));
}

TEST_CASE("log-log fit recovers a power law") {
  std::vector<double> x;
  std::vector<double> y;
  for (double t : {1.0, 3.0, 10.0, 30.0}) {
    x.push_back(t);
    y.push_back(2.5 * std::pow(t, -0.5));
  }
  const LogLogFit f = fit_log_log(x, y);
  CHECK(f.slope == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(f.prefactor() == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("linear dispersive decay is t^(-1/2) in bands 0 and 1") {
  const AlphaParams p = make_alpha_params(1.5);
  const std::vector<double> ts = {10.0, 30.0, 100.0, 300.0};
  for (int k : {0, 1}) {
    const DispersiveResult r = dispersive_decay_experiment(p, k, ts);
    CHECK(r.band == k);
    CHECK(r.t == ts);
    CHECK(r.fit.slope == doctest::Approx(-0.5).epsilon(0.1));
    for (double s : r.sup_norm) CHECK(s < r.sup_at_zero);
  }
}

TEST_CASE("dispersive experiment rejects bad input") {
  const AlphaParams p = make_alpha_params(1.5);
  CHECK_THROWS_AS(dispersive_decay_experiment(p, 0, std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(dispersive_decay_experiment(p, 0, std::vector<double>{-1.0}), DomainError);
  CHECK_THROWS_AS(dispersive_decay_experiment(p, 8, std::vector<double>{1e6}), ResolutionError);
}

TEST_CASE("decay csv layout") {
  const AlphaParams p = make_alpha_params(1.5);
  const std::vector<double> ts = {5.0, 10.0};
  const std::vector<DispersiveResult> runs = {dispersive_decay_experiment(p, 0, ts)};
  const auto path = std::filesystem::temp_directory_path() / "gsqg_decay_test.csv";
  write_decay_csv(path.string(), runs);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# schema: decay v1");
  std::getline(in, line);
  CHECK(line == "t,band,sup_norm");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2);
  std::filesystem::remove(path);
}
