#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gsqg/errors.hpp"
#include "gsqg/nonlinearity.hpp"

using namespace gsqg;

namespace {

// m_1(1, 1, -1) at alpha = 1.5; cube and oscillatory routes agree to 1e-12
constexpr double kM1Reference = -0.0420798802053477;

double rel_l2(const SpectralField& a, const SpectralField& b) {
  return (a - b).l2_norm() / b.l2_norm();
}

double sup(const SpectralField& f) { return max_abs(f.samples()); }

SpectralField localized(GridPtr grid, double amp) {
  std::vector<double> f(grid->size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = grid->nodes()[j];
    f[j] = amp * (std::exp(-x * x / 8.0) +
                  0.5 * std::exp(-(x - 5.0) * (x - 5.0) / 4.5) * std::cos(x));
  }
  return SpectralField::from_samples(std::move(grid), f);
}

SpectralField random_three_mode(GridPtr grid, double amp, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> mode(1, static_cast<long>(grid->size() / 12));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c(grid->size(), Complex{});
  for (int m = 0; m < 3; ++m) {
    const long k = mode(rng);
    const Complex a(u(rng), u(rng));
    c[grid->index_of(k)] += a;
    c[grid->index_of(-k)] += std::conj(a);
  }
  SpectralField f(grid, std::move(c));
  const double s = sup(f);
  f *= amp / s;
  return f;
}

// 2 int_0^inf y^-s (cos(xi y) - 1 + (xi y)^2 / 2) dy for 3 < s < 5
double kernel_oracle(double s, double xi) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double head = ts.integrate(
      [s, xi](double y) {
        if (y <= 0.0) return 0.0;
        const double t = xi * y;
        if (t < 1e-3) return std::pow(xi, 4.0) * std::pow(y, 4.0 - s) * (1.0 / 24.0 - t * t / 720.0);
        return std::pow(y, -s) * (std::cos(t) - 1.0 + 0.5 * t * t);
      },
      0.0, 1.0);
  // int_1^inf y^-s cos(xi y) dy through Ooura's rules on (1 + t)^-s
  boost::math::quadrature::ooura_fourier_cos<double> oc;
  boost::math::quadrature::ooura_fourier_sin<double> os;
  auto g = [s](double t) { return std::pow(1.0 + t, -s); };
  const double c = oc.integrate(g, xi).first;
  const double sn = os.integrate(g, xi).first;
  const double cos_tail = std::cos(xi) * c - std::sin(xi) * sn;
  const double poly_tail = -1.0 / (s - 1.0) + 0.5 * xi * xi / (s - 3.0);
  return 2.0 * (head + cos_tail + poly_tail);
}

}  // namespace

TEST_CASE("kernel multiplier: reproduces the dispersion constant and an independent quadrature") {
  for (double alpha : {1.2, 1.5, 1.8}) {
    const auto p = make_alpha_params(alpha);
    CAPTURE(alpha);
    // |y|^-alpha has multiplier -gamma |xi|^(alpha-1)
    CHECK(power_kernel_multiplier(alpha, 2.0) ==
          doctest::Approx(-p.gamma * std::pow(2.0, alpha - 1.0)).epsilon(1e-13));
    for (double xi : {0.3, 1.0, 2.7}) {
      const double s = alpha + 2.0;
      CHECK(power_kernel_multiplier(s, xi) == doctest::Approx(kernel_oracle(s, xi)).epsilon(1e-8));
    }
  }
  CHECK(power_kernel_multiplier(3.5, 0.0) == 0.0);
}

TEST_CASE("m1: regression value and agreement of the three routes") {
  const auto p = make_alpha_params(1.5);
  const std::array<double, 3> l{1.0, 1.0, -1.0};
  const double closed = m1_closed_form(p, l);
  CHECK(closed == doctest::Approx(kM1Reference).epsilon(1e-13));
  const double cube = eval_symbol_m1(p, {l, SymbolMethod::kCubeIntegral});
  const double osc = eval_symbol_m1(p, {l, SymbolMethod::kOscillatoryIntegral});
  CHECK(std::fabs(cube - kM1Reference) < 1e-4 * std::fabs(kM1Reference));
  CHECK(std::fabs(osc - cube) < 1e-4 * std::fabs(cube));
  CHECK(std::fabs(osc - closed) < 1e-10 * std::fabs(closed));
  CHECK(std::fabs(cube - closed) < 1e-10 * std::fabs(closed));
}

TEST_CASE("m1: two oracles agree on pseudo-random triples") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (double alpha : {1.25, 1.5, 1.75}) {
    const auto p = make_alpha_params(alpha);
    for (int i = 0; i < 20; ++i) {
      std::array<double, 3> l{};
      for (auto& v : l) {
        do v = u(rng);
        while (std::fabs(v) < 1e-3);
      }
      CAPTURE(alpha);
      CAPTURE(l[0]);
      CAPTURE(l[1]);
      CAPTURE(l[2]);
      const double cube = eval_symbol_m1(p, {l, SymbolMethod::kCubeIntegral});
      const double osc = eval_symbol_m1(p, {l, SymbolMethod::kOscillatoryIntegral});
      const double scale = std::max(std::fabs(cube), 1e-12);
      CHECK(std::fabs(cube - osc) < 1e-4 * scale);
    }
  }
}

TEST_CASE("m1: odd, homogeneous of degree 2 + alpha, symmetric, zero on coordinate planes") {
  const auto p = make_alpha_params(1.5);
  const std::array<double, 3> a{0.7, 1.3, -0.4};
  const std::array<double, 3> neg{-0.7, -1.3, 0.4};
  for (auto method : {SymbolMethod::kCubeIntegral, SymbolMethod::kOscillatoryIntegral}) {
    const double v = eval_symbol_m1(p, {a, method});
    CHECK(std::fabs(eval_symbol_m1(p, {neg, method}) + v) <= 1e-8 * std::fabs(v));
  }
  const std::array<double, 3> b{1.0, 0.5, -0.25};
  const std::array<double, 3> b2{2.0, 1.0, -0.5};
  const double mb = eval_symbol_m1(p, {b, SymbolMethod::kCubeIntegral});
  const double mb2 = eval_symbol_m1(p, {b2, SymbolMethod::kCubeIntegral});
  CHECK(std::fabs(mb2 - std::pow(2.0, 3.5) * mb) <= 1e-8 * std::fabs(mb2));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> r(0.1, 5.0);
  for (int i = 0; i < 200; ++i) {
    const std::array<double, 3> l{u(rng), u(rng), u(rng)};
    const double rho = r(rng);
    const double m = m1_closed_form(p, l);
    const double scale = std::pow(std::fabs(l[0]) + std::fabs(l[1]) + std::fabs(l[2]), 3.5) * 1e-3;
    CHECK(std::fabs(m1_closed_form(p, {-l[0], -l[1], -l[2]}) + m) <= 1e-8 * scale);
    CHECK(std::fabs(m1_closed_form(p, {rho * l[0], rho * l[1], rho * l[2]}) -
                    std::pow(rho, 3.5) * m) <= 1e-8 * std::pow(rho, 3.5) * scale);
    CHECK(std::fabs(m1_closed_form(p, {l[2], l[0], l[1]}) - m) <= 1e-12 * scale);
    CHECK(std::fabs(m1_closed_form(p, {l[1], l[0], l[2]}) - m) <= 1e-12 * scale);
  }
  CHECK(m1_closed_form(p, {0.0, 1.0, 2.0}) == 0.0);
  CHECK(eval_symbol_m1(p, {{1.0, 0.0, 2.0}, SymbolMethod::kOscillatoryIntegral}) == 0.0);
  CHECK_THROWS_AS(m1_closed_form(p, {std::nan(""), 1.0, 1.0}), DomainError);
}

TEST_CASE("symbol table: interpolation budget, persistence and validation") {
  const auto p = make_alpha_params(1.5);
  const auto table = SymbolTable::build(p);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  double peak = 0.0;
  for (int i = 0; i < 20000; ++i) {
    std::array<double, 3> l{u(rng), u(rng), u(rng)};
    const double rho = std::fabs(l[0]) + std::fabs(l[1]) + std::fabs(l[2]);
    for (auto& v : l) v /= rho;
    const double exact = m1_closed_form(p, l);
    peak = std::max(peak, std::fabs(exact));
    worst = std::max(worst, std::fabs(table(l[0], l[1], l[2]) - exact));
  }
  CHECK(worst <= 1e-5 * peak);
  // homogeneity and oddness are exact in the table
  const double base = table(0.3, -0.2, 0.5);
  CHECK(table(-0.6, 0.4, -1.0) == doctest::Approx(-std::pow(2.0, 3.5) * base).epsilon(1e-14));
  CHECK(table(0.0, 0.0, 0.0) == 0.0);

  const auto path = (std::filesystem::temp_directory_path() / "gsqg_symbol_table_test.bin").string();
  table.save(path);
  const auto loaded = SymbolTable::load(path);
  CHECK(loaded.alpha() == table.alpha());
  CHECK(loaded.points() == table.points());
  CHECK(loaded(0.3, -0.2, 0.5) == base);
  {
    std::ofstream bad(path, std::ios::binary);
    bad << "not a table";
  }
  CHECK_THROWS_AS(SymbolTable::load(path), IoError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(SymbolTable::load(path), IoError);
  CHECK_THROWS_AS(SymbolTable::build(p, 100), DomainError);

  auto grid = make_grid(2.0 * std::numbers::pi * 8.0, 128);
  auto h = random_three_mode(grid, 1e-2, rng);
  CHECK_THROWS_AS(eval_cubic_spectral(make_alpha_params(1.6), h, table), ConfigError);
  CHECK_THROWS_AS(eval_cubic_spectral(p, h, SymbolTable{}), ConfigError);
}

TEST_CASE("cross-evaluator: spectral cubic term matches the physical order-1 term") {
  const auto p = make_alpha_params(1.5);
  const auto table = SymbolTable::build(p);
  std::mt19937_64 rng(99);
  auto grid = make_grid(2.0 * std::numbers::pi * 8.0, 256);
  const auto quad = default_quadrature(*grid);
  for (int trial = 0; trial < 8; ++trial) {
    const auto h = random_three_mode(grid, 1e-2, rng);
    const auto physical = eval_order_n(p, quad, h, 1);
    const auto spectral = eval_cubic_spectral(p, h, table);
    CAPTURE(trial);
    CHECK(rel_l2(spectral, physical) < 1e-5);
    CHECK(spectral.reality_defect() < 1e-12);
    CHECK(physical.reality_defect() < 1e-12);
  }
}

TEST_CASE("order-n terms: exact homogeneity and zero input") {
  const auto p = make_alpha_params(1.5);
  auto grid = make_grid(200.0, 512);
  const auto quad = default_quadrature(*grid);
  const auto h = localized(grid, 1.0 / 16.0);
  const auto table = SymbolTable::build(p, 201);
  // a power-of-two factor scales every floating-point operation exactly
  const double exact_eps = 0.0078125;
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    const auto a = eval_order_n(p, quad, h, n, SeriesRoute::kDirect);
    const auto b = eval_order_n(p, quad, exact_eps * h, n, SeriesRoute::kDirect);
    CHECK(rel_l2(std::pow(exact_eps, -(2 * n + 1)) * b, a) < 1e-12);
    const auto b2 = eval_order_n(p, quad, 1e-2 * h, n, SeriesRoute::kDirect);
    CHECK(rel_l2(std::pow(1e-2, -(2 * n + 1)) * b2, a) < 1e-10);
    // binomial cancellation at high frequency costs a few digits
    const auto c = eval_order_n(p, quad, h, n);
    const auto d = eval_order_n(p, quad, 1e-2 * h, n);
    CHECK(rel_l2(std::pow(1e-2, -(2 * n + 1)) * d, c) < 1e-9);
  }
  const auto c1 = eval_cubic_spectral(p, h, table);
  const auto c2 = eval_cubic_spectral(p, 1e-3 * h, table);
  CHECK(rel_l2(1e9 * c2, c1) < 1e-12);

  const SpectralField zero(grid);
  CHECK(eval_order_n(p, quad, zero, 1).l2_norm() == 0.0);
  CHECK(eval_order_n(p, quad, zero, 2, SeriesRoute::kDirect).l2_norm() == 0.0);
  CHECK(eval_full(p, quad, zero).l2_norm() == 0.0);
  CHECK(eval_cubic_spectral(p, zero, table).l2_norm() == 0.0);
}

TEST_CASE("order-n terms: spectral kernel and direct quadrature agree") {
  const auto p = make_alpha_params(1.5);
  auto grid = make_grid(400.0, 2048);
  auto quad = default_quadrature(*grid);
  quad.tail_rule = TailRule::kPeriodicImageSum;
  const auto h = localized(grid, 1e-2);
  EvalReport report;
  const auto direct = eval_order_n(p, quad, h, 1, SeriesRoute::kDirect, &report);
  CHECK(report.error_estimate < 1e-9);
  const auto spectral = eval_order_n(p, quad, h, 1);
  CHECK(rel_l2(direct, spectral) < 1e-6);

  // truncating at half a period leaves a tail of relative size ~ (L/2)^(-1-alpha)
  quad.tail_rule = TailRule::kTruncateAtHalfPeriod;
  const auto truncated = eval_order_n(p, quad, h, 1, SeriesRoute::kDirect);
  const double gap = rel_l2(truncated, spectral);
  CHECK(gap < 1e-4);
  CHECK(gap > 10.0 * rel_l2(direct, spectral));
}

TEST_CASE("full nonlinearity: odd interface gives an even field") {
  const auto p = make_alpha_params(1.5);
  auto grid = make_grid(200.0, 1024);
  std::vector<double> f(grid->size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = grid->nodes()[j];
    f[j] = 0.05 * x * std::exp(-x * x / 10.0) + 0.02 * std::sin(x) * std::exp(-x * x / 30.0);
  }
  const auto h = SpectralField::from_samples(grid, f);
  const auto out = eval_full(p, default_quadrature(*grid), h).samples();
  const double scale = max_abs(out);
  double defect = 0.0;
  const std::size_t n = grid->size();
  for (std::size_t m = 1; m < n / 2; ++m)
    defect = std::max(defect, std::fabs(out[n / 2 + m] - out[n / 2 - m]));
  CHECK(defect < 1e-10 * scale);
}

TEST_CASE("full nonlinearity: cubic leading order and amplitude scaling") {
  const auto p = make_alpha_params(1.5);
  auto grid = make_grid(200.0, 1024);
  const auto quad = default_quadrature(*grid);
  const auto h = localized(grid, 1.0);
  const double n1 = sup(eval_order_n(p, quad, h, 1, SeriesRoute::kDirect));
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double ratio = sup(eval_full(p, quad, eps * h)) / (eps * eps * eps);
    CAPTURE(eps);
    CHECK(std::fabs(ratio - n1) < 1e-2 * n1);
  }
}

TEST_CASE("full nonlinearity: single mode residual beyond the cubic term is O(eps^2)") {
  const auto p = make_alpha_params(1.5);
  auto grid = make_grid(2.0 * std::numbers::pi * 4.0, 256);
  const auto quad = default_quadrature(*grid);
  std::vector<double> f(grid->size());
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = std::cos(0.75 * grid->nodes()[j]);
  const auto unit = SpectralField::from_samples(grid, f);
  double previous = 0.0;
  for (double eps : {1e-2, 1e-3}) {
    const auto h = eps * unit;
    const auto full = eval_full(p, quad, h);
    const auto cubic = eval_order_n(p, quad, h, 1, SeriesRoute::kDirect);
    const double rel = sup(full - cubic) / sup(cubic);
    CAPTURE(eps);
    CHECK(rel < 10.0 * eps * eps);
    if (previous > 0.0) CHECK(std::log10(previous / rel) == doctest::Approx(2.0).epsilon(0.05));
    previous = rel;
  }
}

TEST_CASE("series consistency: remainder after N terms scales like eps^(2N+3)") {
  const auto p = make_alpha_params(1.5);
  auto grid = make_grid(200.0, 1024);
  auto quad = default_quadrature(*grid);
  quad.dealias = DealiasMode::kNone;
  const auto shape = localized(grid, 1.0);
  const std::array<double, 3> eps{std::pow(10.0, -1.5), 1e-2, std::pow(10.0, -2.5)};
  for (int order = 1; order <= 2; ++order) {
    std::array<double, 3> rem{};
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const auto h = eps[i] * shape;
      auto r = eval_full(p, quad, h);
      for (int n = 1; n <= order; ++n) r -= eval_order_n(p, quad, h, n, SeriesRoute::kDirect);
      rem[i] = r.l2_norm();
    }
    // least-squares slope in log-log
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      mx += std::log(eps[i]) / 3.0;
      my += std::log(rem[i]) / 3.0;
    }
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      sxy += (std::log(eps[i]) - mx) * (std::log(rem[i]) - my);
      sxx += (std::log(eps[i]) - mx) * (std::log(eps[i]) - mx);
    }
    const double slope = sxy / sxx;
    const double expected = 2.0 * order + 3.0;
    CAPTURE(order);
    CHECK(std::fabs(slope - expected) < 0.15 * expected);
  }
}

TEST_CASE("evaluators: regime, order and quadrature validation") {
  const auto p = make_alpha_params(1.5);
  auto grid = make_grid(200.0, 512);
  const auto quad = default_quadrature(*grid);
  const auto steep = localized(grid, 5.0);
  CHECK_THROWS_AS(eval_full(p, quad, steep), RegimeError);
  CHECK_THROWS_AS(eval_order_n(p, quad, steep, 1), RegimeError);
  try {
    eval_full(p, quad, steep);
  } catch (const RegimeError& e) {
    CHECK(e.slope() >= 1.0);
  }
  const auto h = localized(grid, 1e-2);
  CHECK_THROWS_AS(eval_order_n(p, quad, h, 0), DomainError);
  CHECK_THROWS_AS(eval_order_n(p, quad, h, 7), DomainError);

  auto bad = quad;
  bad.n_inner = 4;
  CHECK_THROWS_AS(eval_full(p, bad, h), DomainError);
  bad = quad;
  bad.inner_cut = grid->dx();
  CHECK_THROWS_AS(eval_full(p, bad, h), DomainError);
  bad = quad;
  bad.inner_cut = grid->dx() * 2e4;
  CHECK_THROWS_AS(validate(bad, *grid), DomainError);
}

TEST_CASE("evaluators: under-resolved data trips the quadrature error estimate") {
  const auto p = make_alpha_params(1.5);
  auto grid = make_grid(100.0, 256);
  auto quad = default_quadrature(*grid);
  quad.n_inner = 8;
  std::vector<double> f(grid->size());
  const double k = 0.6 * std::numbers::pi / grid->dx();
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = grid->nodes()[j];
    f[j] = 1e-3 / k * std::cos(k * x) * std::exp(-x * x / 50.0);
  }
  const auto h = SpectralField::from_samples(grid, f);
  try {
    eval_full(p, quad, h);
    FAIL("expected a quadrature error");
  } catch (const QuadratureError& e) {
    CHECK(e.estimate() > 1e-7);
    CHECK(std::fabs(e.worst_x()) <= 50.0);
  }
  quad.error_check = false;
  CHECK_NOTHROW(eval_full(p, quad, h));
}
