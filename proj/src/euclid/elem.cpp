#include <algorithm>
#include <sstream>

#include "poly_fp.hpp"
#include "stab/euclid.hpp"

namespace stab {

namespace pf = detail::polyfp;

Domain Domain::poly_mod(std::uint64_t p) {
  mpz_class pz(std::to_string(p));
  if (p < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 40) == 0)
    throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  Domain d;
  d.backend_ = Backend::poly_mod_p;
  d.p_ = p;
  return d;
}

Elem Domain::zero() const { return constant(0); }
Elem Domain::one() const { return constant(1); }

Elem Domain::constant(long v) const {
  if (backend_ == Backend::integers) return Elem(v);
  return Elem::poly_signed(p_, {v});
}

Elem Domain::variable() const {
  if (backend_ == Backend::integers)
    throw std::invalid_argument("the integer backend has no indeterminate");
  return Elem::poly(p_, {0, 1});
}

std::string Domain::describe() const {
  if (backend_ == Backend::integers) return "Z";
  return "F_" + std::to_string(p_) + "[x]";
}

Elem Elem::integer(const std::string& decimal) {
  mpz_class v;
  if (v.set_str(decimal, 10) != 0)
    throw std::invalid_argument("not a decimal integer: '" + decimal + "'");
  return Elem(std::move(v));
}

Elem Elem::poly(std::uint64_t p, std::vector<std::uint64_t> coeffs) {
  for (auto& c : coeffs) c %= p;
  pf::trim(coeffs);
  return Elem(detail::PolyRep{p, std::move(coeffs)});
}

Elem Elem::poly_signed(std::uint64_t p, const std::vector<long long>& coeffs) {
  std::vector<std::uint64_t> c;
  c.reserve(coeffs.size());
  for (long long v : coeffs) {
    // p may exceed the long long range; reduce through __int128.
    __int128 r = static_cast<__int128>(v) % static_cast<__int128>(p);
    if (r < 0) r += static_cast<__int128>(p);
    c.push_back(static_cast<std::uint64_t>(r));
  }
  return poly(p, std::move(c));
}

Domain Elem::domain() const {
  if (is_integer()) return Domain::integers();
  Domain d;
  d.backend_ = Backend::poly_mod_p;
  d.p_ = poly_rep().p;
  return d;
}

const mpz_class& Elem::integer_value() const {
  if (!is_integer()) throw BackendMismatch("integer value of a polynomial");
  return std::get<0>(rep_);
}

const detail::PolyRep& Elem::poly_rep() const {
  if (is_integer()) throw BackendMismatch("polynomial view of an integer");
  return std::get<1>(rep_);
}

const std::vector<std::uint64_t>& Elem::coeffs() const { return poly_rep().c; }
std::uint64_t Elem::characteristic() const { return is_integer() ? 0 : poly_rep().p; }
int Elem::degree() const { return pf::degree(poly_rep().c); }

void Elem::same_backend(const Elem& b, const char* op) const {
  if (rep_.index() != b.rep_.index() ||
      (!is_integer() && poly_rep().p != b.poly_rep().p))
    throw BackendMismatch(op);
}

bool Elem::is_zero() const {
  if (is_integer()) return sgn(std::get<0>(rep_)) == 0;
  return poly_rep().c.empty();
}

bool Elem::is_one() const {
  if (is_integer()) return std::get<0>(rep_) == 1;
  const auto& c = poly_rep().c;
  return c.size() == 1 && c[0] == 1;
}

bool Elem::is_unit() const {
  if (is_integer()) return abs(std::get<0>(rep_)) == 1;
  return poly_rep().c.size() == 1;
}

Elem Elem::operator-() const {
  if (is_integer()) return Elem(mpz_class(-std::get<0>(rep_)));
  const auto& r = poly_rep();
  return Elem(detail::PolyRep{r.p, pf::sub({}, r.c, r.p)});
}

Elem operator+(const Elem& a, const Elem& b) {
  a.same_backend(b, "+");
  if (a.is_integer()) return Elem(mpz_class(std::get<0>(a.rep_) + std::get<0>(b.rep_)));
  std::uint64_t p = a.poly_rep().p;
  return Elem(detail::PolyRep{p, pf::add(a.poly_rep().c, b.poly_rep().c, p)});
}

Elem operator-(const Elem& a, const Elem& b) {
  a.same_backend(b, "-");
  if (a.is_integer()) return Elem(mpz_class(std::get<0>(a.rep_) - std::get<0>(b.rep_)));
  std::uint64_t p = a.poly_rep().p;
  return Elem(detail::PolyRep{p, pf::sub(a.poly_rep().c, b.poly_rep().c, p)});
}

Elem operator*(const Elem& a, const Elem& b) {
  a.same_backend(b, "*");
  if (a.is_integer()) return Elem(mpz_class(std::get<0>(a.rep_) * std::get<0>(b.rep_)));
  std::uint64_t p = a.poly_rep().p;
  return Elem(detail::PolyRep{p, pf::mul(a.poly_rep().c, b.poly_rep().c, p)});
}

Elem Elem::pow(unsigned long e) const {
  if (is_integer()) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), std::get<0>(rep_).get_mpz_t(), e);
    return Elem(std::move(r));
  }
  Elem result = domain().one();
  Elem base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::pair<Elem, Elem> Elem::divmod(const Elem& b) const {
  same_backend(b, "divmod");
  if (b.is_zero()) throw std::invalid_argument("division by zero");
  if (is_integer()) {
    const mpz_class& x = std::get<0>(rep_);
    mpz_class m = abs(std::get<0>(b.rep_));
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    mpz_class q = (x - r) / std::get<0>(b.rep_);
    return {Elem(std::move(q)), Elem(std::move(r))};
  }
  std::uint64_t p = poly_rep().p;
  auto [q, r] = pf::divmod(poly_rep().c, b.poly_rep().c, p);
  return {Elem(detail::PolyRep{p, std::move(q)}), Elem(detail::PolyRep{p, std::move(r)})};
}

Elem Elem::mod(const Elem& m) const {
  if (m.is_zero()) {
    same_backend(m, "mod");
    return *this;
  }
  return divmod(m).second;
}

Elem Elem::exact_div(const Elem& b) const {
  if (b.is_zero()) {
    same_backend(b, "exact_div");
    if (is_zero()) return *this;
    throw std::invalid_argument("exact division by zero");
  }
  auto [q, r] = divmod(b);
  if (!r.is_zero())
    throw std::invalid_argument(b.to_string() + " does not divide " + to_string());
  return q;
}

bool Elem::divides(const Elem& a) const {
  same_backend(a, "divides");
  if (is_zero()) return a.is_zero();
  return a.divmod(*this).second.is_zero();
}

Elem Elem::canonical() const {
  if (is_integer()) return Elem(mpz_class(abs(std::get<0>(rep_))));
  const auto& r = poly_rep();
  return Elem(detail::PolyRep{r.p, pf::monic(r.c, r.p)});
}

Elem Elem::unit_part() const {
  if (is_integer()) return Elem(sgn(std::get<0>(rep_)) < 0 ? -1L : 1L);
  const auto& r = poly_rep();
  if (r.c.empty()) return Elem(detail::PolyRep{r.p, {1}});
  return Elem(detail::PolyRep{r.p, {r.c.back()}});
}

Elem Elem::unit_inverse() const {
  if (!is_unit()) throw std::invalid_argument(to_string() + " is not a unit");
  if (is_integer()) return *this;
  const auto& r = poly_rep();
  return Elem(detail::PolyRep{r.p, {pf::inv_mod(r.c[0], r.p)}});
}

bool Elem::norm_less(const Elem& b) const {
  same_backend(b, "norm_less");
  if (is_integer()) return mpz_cmpabs(std::get<0>(rep_).get_mpz_t(), std::get<0>(b.rep_).get_mpz_t()) < 0;
  return degree() < b.degree();
}

std::string Elem::to_string() const {
  if (is_integer()) return std::get<0>(rep_).get_str();
  const auto& c = poly_rep().c;
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c[i];
      continue;
    }
    if (c[i] != 1) os << c[i] << '*';
    os << 'x';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

bool operator==(const Elem& a, const Elem& b) { return a.rep_ == b.rep_; }

std::strong_ordering operator<=>(const Elem& a, const Elem& b) {
  a.same_backend(b, "compare");
  if (a.is_integer()) {
    int c = cmp(std::get<0>(a.rep_), std::get<0>(b.rep_));
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const auto& x = a.poly_rep().c;
  const auto& y = b.poly_rep().c;
  if (x.size() != y.size()) return x.size() <=> y.size();
  for (std::size_t i = x.size(); i-- > 0;)
    if (x[i] != y[i]) return x[i] <=> y[i];
  return std::strong_ordering::equal;
}

}  // namespace stab
