#include "ratmin/moments.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace ratmin {

MomentOracle MomentOracle::box(int n) {
  if (n < 1) throw std::invalid_argument("box oracle needs n >= 1");
  return MomentOracle(Kind::BoxLebesgue, n);
}

MomentOracle MomentOracle::sphere(int n) {
  if (n < 2) throw std::invalid_argument("sphere oracle needs n >= 2");
  return MomentOracle(Kind::SphereUniform, n);
}

std::string MomentOracle::name() const {
  return (kind_ == Kind::BoxLebesgue ? "box" : "sphere") + std::to_string(n_);
}

Rational box_monomial_moment(const Mono& alpha) {
  Rational r(1);
  for (auto a : alpha.e) {
    if (a & 1) return Rational(0);
    r *= rat_from_long(2, long(a) + 1);
  }
  return r;
}

double sphere_monomial_moment(const Mono& alpha) {
  int n = alpha.nvars();
  if (n < 2) throw std::invalid_argument("sphere moments need n >= 2");
  for (auto a : alpha.e)
    if (a & 1) return 0.0;
  // Start from the total surface area and raise exponents two at a time:
  // each step multiplies by (k+1)/(deg+n).
  double v = 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
  int deg = 0;
  for (auto a : alpha.e) {
    for (int k = 0; k + 2 <= int(a); k += 2) {
      v *= double(k + 1) / double(deg + n);
      deg += 2;
    }
  }
  return v;
}

Rational MomentOracle::moment_q(const Mono& alpha) const {
  if (alpha.nvars() != n_) throw std::invalid_argument("moment: dimension mismatch");
  if (!exact()) throw std::invalid_argument("sphere moments are not exact rationals");
  return box_monomial_moment(alpha);
}

double MomentOracle::moment_f(const Mono& alpha) const {
  if (alpha.nvars() != n_) throw std::invalid_argument("moment: dimension mismatch");
  return exact() ? to_double(box_monomial_moment(alpha)) : sphere_monomial_moment(alpha);
}

Rational integrate_exact(const PolyQ& p, const MomentOracle& oracle) {
  if (p.nvars() != oracle.n()) throw std::invalid_argument("integrate: dimension mismatch");
  if (!oracle.exact()) throw std::invalid_argument("integrate_exact needs an exact oracle");
  Rational acc(0);
  for (const auto& [m, c] : p.terms()) {
    bool odd = false;
    for (auto a : m.e)
      if (a & 1) {
        odd = true;
        break;
      }
    if (odd) continue;
    acc += c * box_monomial_moment(m);
  }
  return acc;
}

// ---------------------------------------------------------------------
// MomentTable

MomentTable::MomentTable(int mvars, int maxdeg, bool exact, std::string provenance)
    : mvars_(mvars), maxdeg_(maxdeg), exact_(exact), provenance_(std::move(provenance)) {
  if (mvars < 1) throw std::invalid_argument("moment table needs mvars >= 1");
  if (maxdeg < -1) throw std::invalid_argument("moment table needs maxdeg >= 0");
}

void MomentTable::set(const Mono& key, const Rational& value) {
  if (key.nvars() != mvars_) throw std::invalid_argument("table key dimension mismatch");
  if (exact_) exact_entries_[key] = value;
  float_entries_[key] = to_double(value);
}

void MomentTable::set(const Mono& key, double value) {
  if (key.nvars() != mvars_) throw std::invalid_argument("table key dimension mismatch");
  if (exact_) throw std::logic_error("float entry pushed into an exact table");
  float_entries_[key] = value;
}

bool MomentTable::has(const Mono& key) const { return float_entries_.count(key) > 0; }

double MomentTable::value_f(const Mono& key) const {
  auto it = float_entries_.find(key);
  if (it == float_entries_.end())
    throw std::out_of_range("moment table too shallow for requested entry");
  return it->second;
}

const Rational& MomentTable::value_q(const Mono& key) const {
  if (!exact_) throw std::logic_error("exact entry requested from a float table");
  auto it = exact_entries_.find(key);
  if (it == exact_entries_.end())
    throw std::out_of_range("moment table too shallow for requested entry");
  return it->second;
}

MomentTable MomentTable::normalized() const {
  MomentTable out(mvars_, maxdeg_, exact_, provenance_ + ";normalized");
  if (exact_) {
    const Rational& mass = value_q(Mono(mvars_));
    if (sgn(mass) <= 0) throw std::domain_error("table mass must be positive");
    for (const auto& [k, v] : exact_entries_) out.set(k, Rational(v / mass));
  } else {
    double mass = value_f(Mono(mvars_));
    if (!(mass > 0)) throw std::domain_error("table mass must be positive");
    for (const auto& [k, v] : float_entries_) out.set(k, v / mass);
  }
  return out;
}

std::size_t MomentTable::entry_count(int mvars, int maxdeg) {
  return binomial(std::size_t(mvars) + std::size_t(maxdeg), std::size_t(maxdeg));
}

std::vector<Mono> MomentTable::sorted_keys() const {
  std::vector<Mono> keys;
  keys.reserve(float_entries_.size());
  for (const auto& [k, v] : float_entries_) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), graded_lex_less);
  return keys;
}

void MomentTable::save(std::ostream& os) const {
  os << "ratmin-moment-table v1\n";
  os << "mvars " << mvars_ << "\n";
  os << "maxdeg " << maxdeg_ << "\n";
  os << "mode " << (exact_ ? "exact" : "float") << "\n";
  os << "provenance " << std::hex << fnv1a(provenance_.data(), provenance_.size()) << std::dec
     << "\n";
  for (const auto& k : sorted_keys()) {
    for (auto e : k.e) os << e << " ";
    if (exact_)
      os << rat_str(exact_entries_.at(k)) << "\n";
    else
      os << std::setprecision(17) << float_entries_.at(k) << "\n";
  }
}

void MomentTable::save_file(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  save(os);
}

MomentTable MomentTable::load(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "ratmin-moment-table v1")
    throw std::runtime_error("bad moment table header");
  std::string key;
  int mvars = 0, maxdeg = -1;
  std::string mode, prov;
  for (int i = 0; i < 4; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("truncated moment table header");
    std::istringstream ls(line);
    ls >> key;
    if (key == "mvars")
      ls >> mvars;
    else if (key == "maxdeg")
      ls >> maxdeg;
    else if (key == "mode")
      ls >> mode;
    else if (key == "provenance")
      ls >> prov;
    else
      throw std::runtime_error("unknown moment table header field: " + key);
  }
  bool exact = (mode == "exact");
  MomentTable t(mvars, maxdeg, exact, "loaded:" + prov);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Mono m(mvars);
    for (int i = 0; i < mvars; ++i) {
      int e;
      if (!(ls >> e)) throw std::runtime_error("bad moment table row: " + line);
      m.e[std::size_t(i)] = std::uint16_t(e);
    }
    std::string val;
    if (!(ls >> val)) throw std::runtime_error("bad moment table row: " + line);
    if (exact)
      t.set(m, rat_parse(val));
    else
      t.float_entries_[m] = std::stod(val);
  }
  if (t.size() != entry_count(mvars, maxdeg))
    throw std::runtime_error("moment table is incomplete for its stated degree");
  return t;
}

MomentTable MomentTable::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return MomentTable::load(is);
}

// ---------------------------------------------------------------------
// Pushforward builders

namespace {

void check_entry_cap(int mvars, int D, const TableBuildOptions& opts) {
  std::size_t entries = MomentTable::entry_count(mvars, D);
  if (entries > opts.entry_cap)
    throw ResourceLimitError("pushforward table would hold " + std::to_string(entries) +
                                 " entries, above the configured cap",
                             entries);
}

template <class C>
void integrate_entry(MomentTable& t, const Mono& key, const Poly<C>& prod,
                     const MomentOracle& oracle) {
  if (t.has(key)) return;
  if constexpr (std::is_same_v<C, Rational>) {
    if (oracle.exact()) {
      t.set(key, integrate_exact(prod, oracle));
      return;
    }
  }
  t.set(key, integrate(prod, oracle));
}

// Depth-first product walk: level k owns one running product; children
// extend it one multiplication at a time. Only the chain is alive.
template <class C>
void product_dfs(const std::vector<Poly<C>>& comps, std::size_t k, const Poly<C>& cur, Mono& exp,
                 int remaining, MomentTable& table, const MomentOracle& oracle) {
  if (k + 1 == comps.size()) {
    Poly<C> chain = cur;
    for (int e = 0; e <= remaining; ++e) {
      exp.e[k] = std::uint16_t(e);
      integrate_entry(table, exp, chain, oracle);
      if (e < remaining) chain = chain * comps[k];
    }
    exp.e[k] = 0;
    return;
  }
  Poly<C> chain = cur;
  for (int e = 0; e <= remaining; ++e) {
    exp.e[k] = std::uint16_t(e);
    product_dfs(comps, k + 1, chain, exp, remaining - e, table, oracle);
    if (e < remaining) chain = chain * comps[k];
  }
  exp.e[k] = 0;
}

template <class C>
void fill_multi(MomentTable& table, const std::vector<Poly<C>>& comps, int D,
                const MomentOracle& oracle) {
  Mono exp(int(comps.size()));
  Poly<C> one = Poly<C>::constant(oracle.n(), C(1));
  try {
    product_dfs(comps, 0, one, exp, D, table, oracle);
  } catch (const std::bad_alloc&) {
    throw ResourceLimitError("out of memory while expanding pushforward products",
                             table.size());
  }
}

template <class C>
std::vector<Poly<C>> fraction_components(const std::vector<Fraction>& fractions);

template <>
std::vector<PolyQ> fraction_components<Rational>(const std::vector<Fraction>& fractions) {
  std::vector<PolyQ> comps;
  for (const auto& fr : fractions) {
    comps.push_back(fr.num);
    comps.push_back(fr.den);
  }
  return comps;
}

template <>
std::vector<PolyF> fraction_components<double>(const std::vector<Fraction>& fractions) {
  std::vector<PolyF> comps;
  for (const auto& fr : fractions) {
    comps.push_back(to_float(fr.num));
    comps.push_back(to_float(fr.den));
  }
  return comps;
}

std::string single_provenance(const PolyQ& f, const PolyQ& g, const MomentOracle& o) {
  std::ostringstream os;
  os << "single;oracle=" << o.name() << std::hex << ";f=" << poly_hash(f) << ";g=" << poly_hash(g);
  return os.str();
}

std::string multi_provenance(const std::vector<Fraction>& fr, const MomentOracle& o) {
  std::ostringstream os;
  os << "multi;oracle=" << o.name() << ";N=" << fr.size() << std::hex;
  for (const auto& f : fr) os << ";" << poly_hash(f.num) << "/" << poly_hash(f.den);
  return os.str();
}

}  // namespace

MomentTable pushforward_table_multi(const std::vector<Fraction>& fractions, int D,
                                    const MomentOracle& oracle, const TableBuildOptions& opts) {
  if (fractions.empty()) throw std::invalid_argument("need at least one fraction");
  for (const auto& fr : fractions)
    if (fr.num.nvars() != oracle.n() || fr.den.nvars() != oracle.n())
      throw std::invalid_argument("fraction dimension does not match oracle");
  int mvars = 2 * int(fractions.size());
  check_entry_cap(mvars, D, opts);
  bool exact = oracle.exact() && !opts.float_mode;
  MomentTable table(mvars, D, exact, multi_provenance(fractions, oracle));
  if (exact)
    fill_multi(table, fraction_components<Rational>(fractions), D, oracle);
  else
    fill_multi(table, fraction_components<double>(fractions), D, oracle);
  return table;
}

MomentTable pushforward_table_single(const PolyQ& f, const PolyQ& g, int D,
                                     const MomentOracle& oracle, const TableBuildOptions& opts) {
  PushforwardCache cache(f, g, oracle, opts);
  cache.extend(D);
  return cache.table();
}

MomentTable pushforward_table_univariate(const PolyQ& f, int D, const MomentOracle& oracle,
                                         const TableBuildOptions& opts) {
  UnivariateCache cache(f, oracle, opts);
  cache.extend(D);
  return cache.table();
}

// ---------------------------------------------------------------------
// Incremental caches

namespace {

// Row-and-frontier scheme for a pair (f, g): fpow holds every expanded
// power of f; frontier[i] carries f^i g^j for the last computed j so a
// depth extension continues each row where it stopped.
template <class C>
struct SingleChain {
  Poly<C> f, g;
  std::vector<Poly<C>> fpow;      // f^0 .. f^imax
  std::vector<Poly<C>> frontier;  // frontier[i] = f^i * g^jdone[i]
  std::vector<int> jdone;

  SingleChain(Poly<C> f_, Poly<C> g_) : f(std::move(f_)), g(std::move(g_)) {
    fpow.push_back(Poly<C>::constant(f.nvars(), C(1)));
  }

  void extend(int D, MomentTable& table, const MomentOracle& oracle) {
    try {
      while (int(fpow.size()) <= D) fpow.push_back(fpow.back() * f);
      for (int i = 0; i <= D; ++i) {
        if (int(frontier.size()) <= i) {
          frontier.push_back(fpow[std::size_t(i)]);
          jdone.push_back(0);
          Mono key(2);
          key.e[0] = std::uint16_t(i);
          integrate_entry(table, key, frontier.back(), oracle);
        }
        for (int j = jdone[std::size_t(i)] + 1; j <= D - i; ++j) {
          frontier[std::size_t(i)] = frontier[std::size_t(i)] * g;
          jdone[std::size_t(i)] = j;
          Mono key(2);
          key.e[0] = std::uint16_t(i);
          key.e[1] = std::uint16_t(j);
          integrate_entry(table, key, frontier[std::size_t(i)], oracle);
        }
      }
    } catch (const std::bad_alloc&) {
      throw ResourceLimitError("out of memory while expanding pushforward products",
                               table.size());
    }
  }
};

template <class C>
struct PowerChain {
  Poly<C> f;
  std::vector<Poly<C>> fpow;

  explicit PowerChain(Poly<C> f_) : f(std::move(f_)) {
    fpow.push_back(Poly<C>::constant(f.nvars(), C(1)));
  }

  void extend(int D, MomentTable& table, const MomentOracle& oracle) {
    try {
      for (int d = 0; d <= D; ++d) {
        while (int(fpow.size()) <= d) fpow.push_back(fpow.back() * f);
        Mono key(1);
        key.e[0] = std::uint16_t(d);
        integrate_entry(table, key, fpow[std::size_t(d)], oracle);
      }
    } catch (const std::bad_alloc&) {
      throw ResourceLimitError("out of memory while expanding polynomial powers", table.size());
    }
  }
};

}  // namespace

struct PushforwardCache::Impl {
  MomentOracle oracle;
  TableBuildOptions opts;
  bool exact;
  std::unique_ptr<SingleChain<Rational>> chain_q;
  std::unique_ptr<SingleChain<double>> chain_f;
};

PushforwardCache::PushforwardCache(PolyQ f, PolyQ g, const MomentOracle& oracle,
                                   const TableBuildOptions& opts)
    : impl_(new Impl{oracle, opts, oracle.exact() && !opts.float_mode, nullptr, nullptr}),
      table_(2, -1, oracle.exact() && !opts.float_mode, single_provenance(f, g, oracle)) {
  if (f.nvars() != oracle.n() || g.nvars() != oracle.n())
    throw std::invalid_argument("fraction dimension does not match oracle");
  if (impl_->exact)
    impl_->chain_q = std::make_unique<SingleChain<Rational>>(std::move(f), std::move(g));
  else
    impl_->chain_f = std::make_unique<SingleChain<double>>(to_float(f), to_float(g));
  table_.set_maxdeg(-1);
}

void PushforwardCache::extend(int D) {
  if (D <= table_.maxdeg()) return;
  check_entry_cap(2, D, impl_->opts);
  if (impl_->exact)
    impl_->chain_q->extend(D, table_, impl_->oracle);
  else
    impl_->chain_f->extend(D, table_, impl_->oracle);
  table_.set_maxdeg(D);
}

struct UnivariateCache::Impl {
  MomentOracle oracle;
  TableBuildOptions opts;
  bool exact;
  std::unique_ptr<PowerChain<Rational>> chain_q;
  std::unique_ptr<PowerChain<double>> chain_f;
};

UnivariateCache::UnivariateCache(PolyQ f, const MomentOracle& oracle,
                                 const TableBuildOptions& opts)
    : impl_(new Impl{oracle, opts, oracle.exact() && !opts.float_mode, nullptr, nullptr}),
      table_(1, -1, oracle.exact() && !opts.float_mode,
             "pow;oracle=" + oracle.name() + ";f=" + std::to_string(poly_hash(f))) {
  if (f.nvars() != oracle.n()) throw std::invalid_argument("dimension does not match oracle");
  if (impl_->exact)
    impl_->chain_q = std::make_unique<PowerChain<Rational>>(std::move(f));
  else
    impl_->chain_f = std::make_unique<PowerChain<double>>(to_float(f));
}

void UnivariateCache::extend(int D) {
  if (D <= table_.maxdeg()) return;
  if (impl_->exact)
    impl_->chain_q->extend(D, table_, impl_->oracle);
  else
    impl_->chain_f->extend(D, table_, impl_->oracle);
  table_.set_maxdeg(D);
}

MultiPushforwardCache::MultiPushforwardCache(std::vector<Fraction> fractions,
                                             const MomentOracle& oracle,
                                             const TableBuildOptions& opts)
    : fractions_(std::move(fractions)),
      oracle_(oracle),
      opts_(opts),
      table_(2 * int(fractions_.size()), -1, oracle.exact() && !opts.float_mode,
             multi_provenance(fractions_, oracle)) {
  for (const auto& fr : fractions_)
    if (fr.num.nvars() != oracle.n() || fr.den.nvars() != oracle.n())
      throw std::invalid_argument("fraction dimension does not match oracle");
}

void MultiPushforwardCache::extend(int D) {
  if (D <= table_.maxdeg()) return;
  check_entry_cap(table_.mvars(), D, opts_);
  if (table_.exact())
    fill_multi(table_, fraction_components<Rational>(fractions_), D, oracle_);
  else
    fill_multi(table_, fraction_components<double>(fractions_), D, oracle_);
  table_.set_maxdeg(D);
}

}  // namespace ratmin
