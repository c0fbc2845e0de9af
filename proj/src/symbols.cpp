#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gsqg/errors.hpp"
#include "gsqg/nonlinearity.hpp"
#include "gsqg/quadrature.hpp"

namespace gsqg {

namespace {

constexpr char kTableMagic[8] = {'G', 'S', 'Q', 'G', 'S', 'Y', 'M', '\0'};
constexpr std::uint32_t kTableVersion = 1;

// Gamma(2 - alpha) sin(alpha pi / 2) 2 d_1 (-1) / (2 pi)^2
double cube_prefactor(const AlphaParams& p) {
  const double two_pi = 2.0 * std::numbers::pi;
  return std::tgamma(2.0 - p.alpha) * std::sin(0.5 * p.alpha * std::numbers::pi) * 2.0 * p.d1 *
         (-1.0) / (two_pi * two_pi);
}

bool any_zero(const std::array<double, 3>& l) {
  return l[0] == 0.0 || l[1] == 0.0 || l[2] == 0.0;
}

void require_finite(const std::array<double, 3>& l) {
  for (double v : l)
    if (!std::isfinite(v)) throw DomainError("symbol arguments must be finite");
}

// int_[0,1]^3 |s.l|^(alpha-2) sgn(s.l) ds with the s_c integral done exactly,
// c the component of largest magnitude.
double cube_integral(double alpha, const std::array<double, 3>& l) {
  std::size_t c = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::fabs(l[i]) > std::fabs(l[c])) c = i;
  const double lc = l[c];
  const double la = l[(c + 1) % 3];
  const double lb = l[(c + 2) % 3];
  auto g1 = [alpha](double u) { return std::pow(std::fabs(u), alpha - 1.0) / (alpha - 1.0); };

  boost::math::quadrature::tanh_sinh<double> ts(12);
  const double tol = 1e-12;
  double err_sum = 0.0;
  double l1_sum = 0.0;

  auto integrate_pieces = [&](auto f, std::vector<double> cuts) {
    cuts.push_back(0.0);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double a = std::clamp(cuts[i], 0.0, 1.0);
      const double b = std::clamp(cuts[i + 1], 0.0, 1.0);
      if (b - a <= 1e-15) continue;
      double err = 0.0;
      double l1 = 0.0;
      total += ts.integrate(f, a, b, tol, &err, &l1);
      err_sum += err;
      l1_sum += l1;
    }
    return total;
  };

  auto inner = [&](double s1) {
    const double a = s1 * la;
    auto f = [&](double s2) { return (g1(a + s2 * lb + lc) - g1(a + s2 * lb)) / lc; };
    return integrate_pieces(f, {-a / lb, -(a + lc) / lb});
  };
  const double total = integrate_pieces(inner, {-lb / la, -lc / la, -(lb + lc) / la});
  const double rel = l1_sum > 0.0 ? err_sum / l1_sum : 0.0;
  if (rel > 1e-4)
    throw QuadratureError("cube integral for m1 did not converge (estimate " + std::to_string(rel) + ")",
                          0.0, rel);
  return total;
}

// int_Y^inf e^{i w y} y^-p dy
Complex oscillatory_tail(double w, double y0, double p) {
  if (w == 0.0) return std::pow(y0, 1.0 - p) / (p - 1.0);
  Complex sum{};
  double start = y0;
  const double switch_at = 40.0 / std::fabs(w);
  if (switch_at > y0) {
    for (double lo = y0; lo < switch_at; lo *= 1.25) {
      const double hi = std::min(lo * 1.25, switch_at);
      const auto& rule = quad::gauss_legendre(16);
      const double mid = 0.5 * (lo + hi);
      const double half = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double y = mid + half * rule.nodes[i];
        sum += half * rule.weights[i] * std::polar(std::pow(y, -p), w * y);
      }
    }
    start = switch_at;
  }
  // integration by parts: -e^{i w Y} sum_m (p)_m / (i w)^(m+1) Y^(-p-m)
  const Complex iw(0.0, w);
  Complex term = -std::polar(std::pow(start, -p), w * start) / iw;
  Complex series = term;
  for (int m = 0; m < 40; ++m) {
    const Complex next = term * (p + m) / (iw * start);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    series += term;
    if (std::abs(term) < 1e-18 * std::abs(series)) break;
  }
  return sum + series;
}

// d_1 / (2 pi)^2 (sum l) int_R prod (1 - e^{-i l y}) / y |y|^(1-alpha) sgn y dy,
// for |l|_1 = 1.
double oscillatory_integral(const AlphaParams& params, const std::array<double, 3>& l) {
  const double alpha = params.alpha;
  const double p = 2.0 + alpha;
  const double big_y = 200.0;
  const auto& rule = quad::gauss_legendre(16);

  auto q = [&](double y) {
    Complex prod(1.0, 0.0);
    for (double li : l) prod *= (1.0 - std::polar(1.0, -li * y)) / y;
    return prod * std::pow(std::fabs(y), 1.0 - alpha) * (y > 0.0 ? 1.0 : -1.0);
  };

  std::vector<quad::Panel> panels = quad::graded_panels(0.5, 0.25, 0.5e-14);
  for (double lo = 0.5; lo < big_y; lo += 0.5) panels.push_back({lo, std::min(lo + 0.5, big_y)});

  Complex plus{};
  Complex minus{};
  for (const auto& panel : panels) {
    const double mid = 0.5 * (panel.lo + panel.hi);
    const double half = 0.5 * (panel.hi - panel.lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double y = mid + half * rule.nodes[i];
      const double w = half * rule.weights[i];
      plus += w * q(y);
      minus += w * q(-y);
    }
  }
  // beyond Y: prod (1 - e^{-i l y}) = sum_eps (-1)^|eps| e^{-i (eps.l) y}
  for (int mask = 0; mask < 8; ++mask) {
    double omega = 0.0;
    int bits = 0;
    for (int i = 0; i < 3; ++i)
      if (mask & (1 << i)) {
        omega += l[static_cast<std::size_t>(i)];
        ++bits;
      }
    const double sign = (bits % 2 == 0) ? 1.0 : -1.0;
    plus += sign * oscillatory_tail(-omega, big_y, p);
    minus += sign * oscillatory_tail(omega, big_y, p);
  }
  const Complex total = plus + minus;
  if (std::fabs(total.imag()) > 1e-6 * std::fabs(total.real()) && std::fabs(total.imag()) > 1e-300) {
    std::ostringstream msg;
    msg << "oscillatory m1 integral has imaginary residue " << total.imag() << " against real part "
        << total.real();
    throw ConsistencyError(msg.str());
  }
  const double two_pi = 2.0 * std::numbers::pi;
  return params.d1 / (two_pi * two_pi) * (l[0] + l[1] + l[2]) * total.real();
}

double f3(double alpha, double u) {
  return std::pow(std::fabs(u), alpha + 1.0) / ((alpha + 1.0) * alpha * (alpha - 1.0));
}

// m_1 / (l1 + l2 + l3): third difference of F(u) = |u|^(a+1) / ((a+1) a (a-1))
// over the vertices of the cube spanned by l
double m1_even_factor(const AlphaParams& params, const std::array<double, 3>& l) {
  const double a = params.alpha;
  const double diff = f3(a, l[0] + l[1] + l[2]) - f3(a, l[0] + l[1]) - f3(a, l[0] + l[2]) -
                      f3(a, l[1] + l[2]) + f3(a, l[0]) + f3(a, l[1]) + f3(a, l[2]);
  return cube_prefactor(params) * diff;
}

template <class T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
void read_pod(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
}

}  // namespace

double m1_closed_form(const AlphaParams& params, const std::array<double, 3>& l) {
  require_finite(l);
  if (any_zero(l)) return 0.0;
  return (l[0] + l[1] + l[2]) * m1_even_factor(params, l);
}

double eval_symbol_m1(const AlphaParams& params, const SymbolQuery& q) {
  const auto& l = q.lambdas;
  require_finite(l);
  if (any_zero(l)) return 0.0;
  if (q.method == SymbolMethod::kCubeIntegral)
    return cube_prefactor(params) * l[0] * l[1] * l[2] * (l[0] + l[1] + l[2]) *
           cube_integral(params.alpha, l);
  const double rho = std::fabs(l[0]) + std::fabs(l[1]) + std::fabs(l[2]);
  const std::array<double, 3> unit{l[0] / rho, l[1] / rho, l[2] / rho};
  return std::pow(rho, 2.0 + params.alpha) * oscillatory_integral(params, unit);
}

SymbolTable SymbolTable::build(const AlphaParams& params, int points) {
  if (points < 3 || points % 2 == 0) throw DomainError("symbol table needs an odd point count >= 3");
  SymbolTable t;
  t.alpha_ = params.alpha;
  t.points_ = points;
  t.values_.resize(static_cast<std::size_t>(points) * static_cast<std::size_t>(points));
  const double step = 2.0 / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double u = -1.0 + step * i;
    for (int j = 0; j < points; ++j) {
      const double v = -1.0 + step * j;
      t.values_[static_cast<std::size_t>(i) * points + j] =
          m1_even_factor(params, {u, v, 1.0 - std::fabs(u) - std::fabs(v)});
    }
  }
  return t;
}

double SymbolTable::operator()(double l1, double l2, double l3) const {
  const double rho = std::fabs(l1) + std::fabs(l2) + std::fabs(l3);
  if (rho == 0.0) return 0.0;
  // m_1 = (l1 + l2 + l3) E(l) with E even and homogeneous of degree 1 + alpha
  const double sign = l3 >= 0.0 ? 1.0 : -1.0;
  const double u = sign * l1 / rho;
  const double v = sign * l2 / rho;
  const double scale = 0.5 * (points_ - 1);
  const double fu = (u + 1.0) * scale;
  const double fv = (v + 1.0) * scale;
  const int iu = std::clamp(static_cast<int>(fu), 0, points_ - 2);
  const int iv = std::clamp(static_cast<int>(fv), 0, points_ - 2);
  const double tu = fu - iu;
  const double tv = fv - iv;
  const auto at = [this](int i, int j) {
    return values_[static_cast<std::size_t>(i) * static_cast<std::size_t>(points_) + j];
  };
  const double val = (1.0 - tu) * ((1.0 - tv) * at(iu, iv) + tv * at(iu, iv + 1)) +
                     tu * ((1.0 - tv) * at(iu + 1, iv) + tv * at(iu + 1, iv + 1));
  return (l1 + l2 + l3) * std::pow(rho, 1.0 + alpha_) * val;
}

void SymbolTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(kTableMagic, sizeof(kTableMagic));
  write_pod(out, kTableVersion);
  write_pod(out, alpha_);
  write_pod(out, static_cast<std::uint32_t>(points_));
  out.write(reinterpret_cast<const char*>(values_.data()),
            static_cast<std::streamsize>(values_.size() * sizeof(double)));
  if (!out) throw IoError("failed writing " + path);
}

SymbolTable SymbolTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kTableMagic, sizeof(magic)) != 0)
    throw IoError(path + " is not a symbol table");
  std::uint32_t version = 0;
  std::uint32_t points = 0;
  SymbolTable t;
  read_pod(in, version);
  if (version != kTableVersion) throw IoError("unsupported symbol table version in " + path);
  read_pod(in, t.alpha_);
  read_pod(in, points);
  if (!in || points < 3 || points % 2 == 0 || points > 100001)
    throw IoError("corrupt symbol table header in " + path);
  t.points_ = static_cast<int>(points);
  t.values_.resize(static_cast<std::size_t>(points) * points);
  in.read(reinterpret_cast<char*>(t.values_.data()),
          static_cast<std::streamsize>(t.values_.size() * sizeof(double)));
  if (!in) throw IoError("truncated symbol table " + path);
  return t;
}

SpectralField eval_cubic_spectral(const AlphaParams& params, const SpectralField& h,
                                  const SymbolTable& table) {
  if (table.empty()) throw ConfigError("symbol table is empty");
  if (std::fabs(table.alpha() - params.alpha) > 1e-15)
    throw ConfigError("symbol table was built for a different alpha");
  const Grid& grid = h.grid();
  const double cutoff = 1e-14 * h.max_abs_coeff();
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (std::abs(h[i]) > cutoff) support.push_back(i);

  std::vector<Complex> out(h.size(), Complex{});
  const long half = static_cast<long>(grid.size() / 2);
  const auto& xi = grid.freqs();
  for (std::size_t a : support) {
    for (std::size_t b : support) {
      const Complex ab = h[a] * h[b];
      const long kab = grid.wavenumber(a) + grid.wavenumber(b);
      for (std::size_t c : support) {
        const long k = kab + grid.wavenumber(c);
        if (k >= half || k <= -half) continue;
        out[grid.index_of(k)] += ab * h[c] * table(xi[a], xi[b], xi[c]);
      }
    }
  }
  const double dxi = grid.dxi();
  const Complex factor = Complex(0.0, 1.0 / 3.0) * dxi * dxi;
  for (auto& v : out) v *= factor;
  SpectralField result(h.grid_ptr(), std::move(out));
  result.dealias();
  return result;
}

}  // namespace gsqg
