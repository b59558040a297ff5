#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "stab/invariants.hpp"

namespace stab {

// ---- primes and Ass sets ------------------------------------------------------

PrimeIdeal PrimeIdeal::of(const Elem& p) {
  if (!is_irreducible(p)) throw std::invalid_argument(p.to_string() + " is not irreducible");
  return PrimeIdeal(p.canonical());
}

bool PrimeIdeal::contains(const Ideal& ideal) const {
  if (g_.is_zero()) return ideal.is_zero();
  return g_.divides(ideal.generator());
}

std::strong_ordering operator<=>(const PrimeIdeal& a, const PrimeIdeal& b) {
  if (a.is_zero() != b.is_zero()) return a.is_zero() ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.g_ <=> b.g_;
}

AssSet::AssSet(std::vector<PrimeIdeal> primes) : primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

bool AssSet::contains(const PrimeIdeal& p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

void AssSet::insert(const PrimeIdeal& p) {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) primes_.insert(it, p);
}

AssSet AssSet::restrict_to(const Ideal& ideal) const {
  std::vector<PrimeIdeal> out;
  for (const auto& p : primes_)
    if (p.contains(ideal)) out.push_back(p);
  return AssSet(out);
}

AssSet AssSet::remove(const Ideal& ideal) const {
  std::vector<PrimeIdeal> out;
  for (const auto& p : primes_)
    if (!p.contains(ideal)) out.push_back(p);
  return AssSet(out);
}

std::vector<std::string> AssSet::to_strings() const {
  std::vector<std::string> out;
  for (const auto& p : primes_) out.push_back(p.to_string());
  return out;
}

std::string AssSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < primes_.size(); ++i) s += (i ? ", " : "") + primes_[i].to_string();
  return s + "}";
}

std::string to_string(Depth d) {
  switch (d) {
    case Depth::zero: return "0";
    case Depth::one: return "1";
    case Depth::infinite: return "inf";
  }
  return "?";
}

// ---- exponent sets ---------------------------------------------------------------

ExponentSet ExponentSet::list(std::vector<unsigned> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return {values, {}};
}

bool ExponentSet::contains(unsigned e) const {
  if (std::find(finite.begin(), finite.end(), e) != finite.end()) return true;
  for (const auto& p : progressions)
    if (e >= p.start && (e - p.start) % p.step == 0) return true;
  return false;
}

std::optional<unsigned> ExponentSet::max() const {
  if (!is_finite() || finite.empty()) return std::nullopt;
  return *std::max_element(finite.begin(), finite.end());
}

void ExponentSet::validate() const {
  for (unsigned e : finite)
    if (e == 0) throw std::invalid_argument("exponents must be positive");
  for (const auto& p : progressions)
    if (p.start == 0 || p.step == 0) throw std::invalid_argument("progressions need positive start and step");
}

bool ExponentSet::closed_under_addition() const {
  // Beyond t every progression is periodic with period l, so membership is
  // l-periodic there; checking all sums of members up to t + 2l suffices.
  unsigned t = 0, l = 1;
  for (unsigned e : finite) t = std::max(t, e + 1);
  for (const auto& p : progressions) {
    t = std::max(t, p.start + 1);
    l = std::lcm(l, p.step);
  }
  const unsigned bound = t + 2 * l;
  std::vector<unsigned> members;
  for (unsigned e = 1; e <= bound; ++e)
    if (contains(e)) members.push_back(e);
  for (unsigned a : members)
    for (unsigned b : members)
      if (!contains(a + b)) return false;
  return true;
}

// ---- cmc sets --------------------------------------------------------------------

CmcSet CmcSet::explicit_set(std::vector<Elem> elements) {
  if (elements.empty()) throw std::invalid_argument("an explicit set needs at least one element");
  for (const auto& e : elements)
    if (e.domain() != elements.front().domain()) throw BackendMismatch("set elements");
  return CmcSet(Kind::explicit_list, std::move(elements), {});
}

CmcSet CmcSet::closure(std::vector<Elem> generators) {
  if (generators.empty()) throw std::invalid_argument("a closure needs at least one generator");
  for (const auto& e : generators)
    if (e.domain() != generators.front().domain()) throw BackendMismatch("set generators");
  return CmcSet(Kind::closure, std::move(generators), {});
}

CmcSet CmcSet::power_family(Elem base, ExponentSet exponents) {
  exponents.validate();
  if (exponents.finite.empty() && exponents.progressions.empty())
    throw std::invalid_argument("empty exponent set");
  return CmcSet(Kind::power_family, {std::move(base)}, std::move(exponents));
}

Domain CmcSet::domain() const { return elems_.front().domain(); }

bool CmcSet::contains(const Elem& x) const {
  switch (kind_) {
    case Kind::explicit_list:
      return std::find(elems_.begin(), elems_.end(), x) != elems_.end();
    case Kind::closure: {
      if (x.is_one()) return true;
      if (x.is_zero()) return std::any_of(elems_.begin(), elems_.end(), [](const Elem& e) { return e.is_zero(); });
      // Depth-first search over the ways of dividing out generators.
      std::vector<Elem> todo{x};
      std::vector<Elem> seen;
      while (!todo.empty()) {
        Elem y = todo.back();
        todo.pop_back();
        if (y.is_one()) return true;
        if (std::find(seen.begin(), seen.end(), y) != seen.end()) continue;
        seen.push_back(y);
        for (const auto& g : elems_)
          if (!g.is_zero() && !g.is_one() && g.divides(y)) todo.push_back(y.exact_div(g));
      }
      return false;
    }
    case Kind::power_family: {
      const Elem& a = base();
      if (a.is_zero()) return x.is_zero();
      if (a.is_unit()) {
        // Powers of a unit cycle quickly; 64 exponents cover both backends here.
        for (unsigned e = 1; e <= 64; ++e)
          if (exps_.contains(e) && a.pow(e) == x) return true;
        return false;
      }
      Elem y = x;
      unsigned e = 0;
      while (!y.is_one()) {
        auto [q, r] = y.divmod(a);
        if (!r.is_zero() || y.is_zero()) return false;
        y = q;
        ++e;
      }
      return exps_.contains(e);
    }
  }
  return false;
}

std::string CmcSet::describe() const {
  std::ostringstream os;
  auto list = [&](const char* open, const char* close) {
    os << open;
    for (std::size_t i = 0; i < elems_.size(); ++i) os << (i ? ", " : "") << elems_[i].to_string();
    os << close;
  };
  switch (kind_) {
    case Kind::explicit_list: list("{", "}"); break;
    case Kind::closure: list("closure{", "}"); break;
    case Kind::power_family: {
      os << "{" << base().to_string() << "^e : e in ";
      bool first = true;
      for (unsigned e : exps_.finite) os << (std::exchange(first, false) ? "{" : ", ") << e;
      for (const auto& p : exps_.progressions)
        os << (std::exchange(first, false) ? "{" : ", ") << p.start << "+" << p.step << "n";
      os << "}}";
      break;
    }
  }
  return os.str();
}

bool is_cmc(const CmcSet& s) {
  if (s.kind() != CmcSet::Kind::explicit_list) return true;  // both other kinds are directed under divisibility
  const auto& e = s.elements();
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      Elem l = lcm(e[i], e[j]);
      if (std::none_of(e.begin(), e.end(), [&](const Elem& t) { return l.divides(t); })) return false;
    }
  return true;
}

std::optional<Elem> cogenerator(const CmcSet& s) {
  const auto& e = s.elements();
  switch (s.kind()) {
    case CmcSet::Kind::explicit_list:
      for (const auto& c : e)
        if (std::all_of(e.begin(), e.end(), [&](const Elem& t) { return t.divides(c); })) return c;
      return std::nullopt;
    case CmcSet::Kind::closure:
      if (std::any_of(e.begin(), e.end(), [](const Elem& g) { return g.is_zero(); })) return s.domain().zero();
      if (std::all_of(e.begin(), e.end(), [](const Elem& g) { return g.is_unit(); })) return s.domain().one();
      return std::nullopt;
    case CmcSet::Kind::power_family: {
      const Elem& a = s.base();
      if (auto m = s.exponents().max()) return a.pow(*m);
      if (a.is_zero() || a.is_unit()) return a;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool is_coprincipal(const CmcSet& s) { return cogenerator(s).has_value(); }

bool is_mult_closed(const CmcSet& s) {
  switch (s.kind()) {
    case CmcSet::Kind::explicit_list: {
      const auto& e = s.elements();
      for (const auto& a : e)
        for (const auto& b : e)
          if (!s.contains(a * b)) return false;
      return true;
    }
    case CmcSet::Kind::closure: return true;
    case CmcSet::Kind::power_family: {
      const Elem& a = s.base();
      if (a.is_zero()) return true;
      if (a.is_unit()) return s.contains(a * a);
      return s.exponents().closed_under_addition();
    }
  }
  return false;
}

bool meets(const PrimeIdeal& p, const CmcSet& s) {
  const auto& e = s.elements();
  if (s.kind() == CmcSet::Kind::power_family) return p.contains(s.base());
  return std::any_of(e.begin(), e.end(), [&](const Elem& x) { return p.contains(x); });
}

// ---- module invariants ---------------------------------------------------------------

AssSet ass(const FpModule& m) {
  AssSet out;
  if (m.rank() > 0) out.insert(PrimeIdeal::zero(m.domain()));
  if (!m.factors().empty())
    for (const auto& pp : factor(m.factors().back())) out.insert(PrimeIdeal::of(pp.prime));
  return out;
}

Ideal ann(const FpModule& m) {
  if (m.rank() > 0) return Ideal(m.domain().zero());
  if (m.factors().empty()) return Ideal(m.domain().one());
  return Ideal(m.factors().back());
}

Depth depth(const Ideal& j, const FpModule& m) {
  if (power_quotient(m, j, 1).is_zero()) return Depth::infinite;
  const Elem& g = j.generator();
  if (g.is_zero()) return Depth::zero;
  AssSet primes = ass(m);
  for (const auto& p : primes.primes())
    if (p.contains(g)) return Depth::zero;
  return Depth::one;
}

SubmoduleSplit split_off(const FpModule& m, const Mat& gens) {
  Subquotient s(m, gens);
  Cokernel q = cokernel_m(s.inclusion());
  return {gens, s.module(), s.inclusion(), q.module, q.projection};
}

Mat colon_generators(const FpModule& m, const Elem& r) {
  std::vector<std::size_t> cols;
  std::vector<Elem> scale;
  const auto& moduli = m.summand_moduli();
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    const Elem& d = moduli[j];
    if (d.is_zero()) {
      if (r.is_zero()) {
        cols.push_back(j);
        scale.push_back(m.domain().one());
      }
      continue;
    }
    Elem g = gcd(d, r);
    if (g.is_unit()) continue;
    cols.push_back(j);
    scale.push_back(d.exact_div(g));
  }
  Mat out = m.summand_generators().select_cols(cols);
  for (std::size_t j = 0; j < cols.size(); ++j) out.scale_col(j, scale[j]);
  return out;
}

SubmoduleSplit gamma(const Ideal& ideal, const FpModule& m) {
  return split_off(m, x_torsion_generators(m, ideal.generator()));
}

Mat tau_generators(const CmcSet& s, const FpModule& m) {
  if (s.domain() != m.domain()) throw BackendMismatch("tau");
  switch (s.kind()) {
    case CmcSet::Kind::explicit_list: {
      if (!is_cmc(s)) throw std::invalid_argument("tau: " + s.describe() + " is not cmc");
      return colon_generators(m, *cogenerator(s));
    }
    case CmcSet::Kind::closure: {
      Elem prod = m.domain().one();
      for (const auto& g : s.elements()) prod *= g;
      return x_torsion_generators(m, prod);
    }
    case CmcSet::Kind::power_family: {
      if (auto c = cogenerator(s)) return colon_generators(m, *c);
      return x_torsion_generators(m, s.base());
    }
  }
  throw std::logic_error("unreachable");
}

SubmoduleSplit tau(const CmcSet& s, const FpModule& m) { return split_off(m, tau_generators(s, m)); }

}  // namespace stab
