#ifndef RATMIN_POLYNOMIAL_HPP
#define RATMIN_POLYNOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ratmin/common.hpp"
#include "ratmin/rational.hpp"

namespace ratmin {

// Exponent vector of a monomial. One 16-bit exponent per variable;
// additions are overflow-checked.
struct Mono {
  std::vector<std::uint16_t> e;

  Mono() = default;
  explicit Mono(int nvars) : e(static_cast<std::size_t>(nvars), 0) {}
  Mono(std::initializer_list<std::uint16_t> init) : e(init) {}

  int nvars() const { return static_cast<int>(e.size()); }
  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool operator==(const Mono& o) const { return e == o.e; }

  Mono plus(const Mono& o) const {
    if (e.size() != o.e.size()) throw std::invalid_argument("monomial dimension mismatch");
    Mono r(*this);
    for (std::size_t i = 0; i < e.size(); ++i) {
      unsigned s = unsigned(r.e[i]) + unsigned(o.e[i]);
      if (s > 0xFFFFu) throw std::overflow_error("monomial exponent exceeds 16-bit range");
      r.e[i] = static_cast<std::uint16_t>(s);
    }
    return r;
  }
};

struct MonoHash {
  std::size_t operator()(const Mono& m) const {
    return static_cast<std::size_t>(fnv1a(m.e.data(), m.e.size() * sizeof(std::uint16_t)));
  }
};

// Graded lexicographic order: lower total degree first; within a degree,
// the monomial with the larger leading exponent first, so the basis over
// (x1, x2) reads 1, x1, x2, x1^2, x1 x2, x2^2, ...
inline bool graded_lex_less(const Mono& a, const Mono& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  return false;
}

namespace detail {
inline bool coef_is_zero(const Rational& c) { return sgn(c) == 0; }
inline bool coef_is_zero(double c) { return c == 0.0; }
inline double coef_to_double(const Rational& c) { return to_double(c); }
inline double coef_to_double(double c) { return c; }
inline std::string coef_str(const Rational& c) { return rat_str(c); }
inline std::string coef_str(double c) {
  std::ostringstream os;
  os.precision(17);
  os << c;
  return os.str();
}
}  // namespace detail

// Sparse multivariate polynomial over coefficients C (exact Rational or
// double; the mode is fixed by the type). Terms live in a hash map keyed
// by exponent vectors; a graded-lex view is materialized on demand.
// Values are immutable in use: all operations return new polynomials.
template <class C>
class Poly {
 public:
  using TermMap = std::unordered_map<Mono, C, MonoHash>;

  explicit Poly(int nvars = 0) : nvars_(nvars) {
    if (nvars < 0) throw std::invalid_argument("negative variable count");
  }

  static Poly constant(int nvars, const C& c) {
    Poly p(nvars);
    p.add_term(Mono(nvars), c);
    return p;
  }
  static Poly monomial(int nvars, const Mono& m, const C& c) {
    if (m.nvars() != nvars) throw std::invalid_argument("monomial dimension mismatch");
    Poly p(nvars);
    p.add_term(m, c);
    return p;
  }
  // x_i (0-based index).
  static Poly variable(int nvars, int i) {
    Mono m(nvars);
    m.e.at(static_cast<std::size_t>(i)) = 1;
    return monomial(nvars, m, C(1));
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // Max total degree; 0 for the zero polynomial (see is_zero()).
  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  void add_term(const Mono& m, const C& c) {
    if (m.nvars() != nvars_) throw std::invalid_argument("term dimension mismatch");
    if (detail::coef_is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (detail::coef_is_zero(it->second)) terms_.erase(it);
    }
  }

  Poly operator+(const Poly& q) const {
    check_same(q);
    Poly r(*this);
    for (const auto& [m, c] : q.terms_) r.add_term(m, c);
    return r;
  }
  Poly operator-() const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  Poly operator-(const Poly& q) const { return *this + (-q); }

  Poly operator*(const Poly& q) const {
    check_same(q);
    Poly r(nvars_);
    r.terms_.reserve(terms_.size() + q.terms_.size());
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : q.terms_) r.add_term(ma.plus(mb), ca * cb);
    return r;
  }

  Poly scaled(const C& c) const {
    Poly r(nvars_);
    if (detail::coef_is_zero(c)) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
  }

  bool operator==(const Poly& q) const {
    if (nvars_ != q.nvars_ || terms_.size() != q.terms_.size()) return false;
    for (const auto& [m, c] : terms_) {
      auto it = q.terms_.find(m);
      if (it == q.terms_.end() || !(it->second == c)) return false;
    }
    return true;
  }

  double eval(std::span<const double> point) const {
    if (point.size() != static_cast<std::size_t>(nvars_))
      throw std::invalid_argument("evaluation point dimension mismatch");
    double acc = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = detail::coef_to_double(c);
      for (int i = 0; i < nvars_; ++i) {
        double b = point[static_cast<std::size_t>(i)];
        for (int k = 0; k < m.e[static_cast<std::size_t>(i)]; ++k) t *= b;
      }
      acc += t;
    }
    return acc;
  }

  // Terms in graded-lex order; this fixes printing and serialization.
  std::vector<std::pair<Mono, C>> sorted_terms() const {
    std::vector<std::pair<Mono, C>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return graded_lex_less(a.first, b.first); });
    return v;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : sorted_terms()) {
      if (!first) os << " + ";
      first = false;
      os << detail::coef_str(c);
      for (int i = 0; i < nvars_; ++i) {
        auto p = m.e[static_cast<std::size_t>(i)];
        if (p > 0) os << "*x" << (i + 1) << "^" << p;
      }
    }
    return os.str();
  }

 private:
  void check_same(const Poly& q) const {
    if (nvars_ != q.nvars_) throw std::invalid_argument("polynomial dimension mismatch");
  }

  int nvars_;
  TermMap terms_;
};

// k-th power by repeated squaring; small k uses the naive product chain,
// which generates fewer intermediate terms for very sparse inputs.
template <class C>
Poly<C> pow(const Poly<C>& p, int k) {
  if (k < 0) throw std::invalid_argument("negative power");
  Poly<C> one = Poly<C>::constant(p.nvars(), C(1));
  if (k == 0) return one;
  if (k <= 3) {
    Poly<C> r = p;
    for (int i = 1; i < k; ++i) r = r * p;
    return r;
  }
  Poly<C> r = one, base = p;
  int rem = k;
  while (rem > 0) {
    if (rem & 1) r = r * base;
    rem >>= 1;
    if (rem > 0) base = base * base;
  }
  return r;
}

using PolyQ = Poly<Rational>;
using PolyF = Poly<double>;

inline PolyF to_float(const PolyQ& p) {
  PolyF r(p.nvars());
  for (const auto& [m, c] : p.terms()) r.add_term(m, to_double(c));
  return r;
}

inline std::uint64_t poly_hash(const PolyQ& p) {
  std::uint64_t h = fnv1a(&p, 0);  // seed only
  std::string s = p.str();
  return fnv1a(s.data(), s.size(), h ^ static_cast<std::uint64_t>(p.nvars()));
}

}  // namespace ratmin

#endif
