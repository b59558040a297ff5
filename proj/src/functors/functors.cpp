#include <algorithm>

#include "stab/functors.hpp"

namespace stab {

Morphism induced_on_subquotients(const Subquotient& a, const Subquotient& b, const Mat& ambient_map) {
  auto images = b.coords(ambient_map * a.gens());
  if (!images) throw std::logic_error("induced map does not land in the target subquotient");
  return Morphism(a.module(), b.module(), *images);
}

// ---- complexes -----------------------------------------------------------------

ComplexFunctor::ComplexFunctor(Morphism d2_, Morphism d1_, int index_)
    : d2(std::move(d2_)), d1(std::move(d1_)), index(index_) {
  if (index < 0 || index > 2) throw std::invalid_argument("complex index must be 0, 1 or 2");
  if (d2.target().ambient_rank() != d1.source().ambient_rank())
    throw std::invalid_argument("complex maps are not composable");
  if (!compose(d1, d2).is_zero()) throw std::invalid_argument("complex maps do not compose to zero");
}

namespace {

Subquotient complex_homology(const ComplexFunctor& c, const FpModule& n) {
  Morphism idn = Morphism::identity(n);
  Morphism t2 = tensor(c.d2, idn), t1 = tensor(c.d1, idn);
  switch (c.index) {
    case 0: {
      const FpModule& p0 = t1.target();
      return Subquotient(p0, Mat::identity(n.domain(), p0.ambient_rank()), t1.images());
    }
    case 1: return homology(t2, t1);
    default: return kernel_m(t2);
  }
}

const FpModule& complex_term(const ComplexFunctor& c) {
  switch (c.index) {
    case 0: return c.d1.target();
    case 1: return c.d1.source();
    default: return c.d2.source();
  }
}

// ---- Gamma and tau ------------------------------------------------------------------

Mat torsion_gens(const GammaFunctor& f, const FpModule& n) { return x_torsion_generators(n, f.ideal.generator()); }
Mat torsion_gens(const ModGammaFunctor& f, const FpModule& n) {
  return x_torsion_generators(n, f.ideal.generator());
}
Mat torsion_gens(const TauFunctor& f, const FpModule& n) { return tau_generators(f.set, n); }
Mat torsion_gens(const ModTauFunctor& f, const FpModule& n) { return tau_generators(f.set, n); }

FpModule quotient_by(const FpModule& n, const Mat& gens) { return FpModule(Mat::hcat(n.relations(), gens)); }

// ---- presentations for Tor and Ext ------------------------------------------------------

/// Injective R^m -> R^k with cokernel m.
Morphism free_presentation(const FpModule& m) {
  Mat a = span_basis(m.relations());
  Domain dom = m.domain();
  return Morphism(FpModule::free(dom, a.cols()), FpModule::free(dom, a.rows()), a);
}

}  // namespace

Tor1Functor make_tor1(const FpModule& m) {
  Morphism a = free_presentation(m);
  Morphism zero = Morphism::zero(FpModule::zero(m.domain()), a.source());
  return {m, ComplexFunctor(zero, a, 1)};
}

Ext1Functor make_ext1(const FpModule& m) { return {m, CoherentFunctor{free_presentation(m)}}; }

FunctorSpec tor_ext_as_coherent(const FpModule& m, TorExt which, int i) {
  if (i != 0 && i != 1) throw std::invalid_argument("only i = 0 and i = 1 occur over these backends");
  if (which == TorExt::ext) {
    if (i == 0) return HomFromFunctor{m};
    return make_ext1(m).coherent;
  }
  Tor1Functor t = make_tor1(m);
  if (i == 1) return t.complex;
  return ComplexFunctor(t.complex.d2, t.complex.d1, 0);
}

// ---- middle-finite complexes ----------------------------------------------------------

namespace {

const FpModule& base_of(const EndSummand& s) {
  return std::holds_alternative<FpModule>(s) ? std::get<FpModule>(s) : std::get<LocModule>(s).base;
}

FpModule sum_of(const std::vector<EndSummand>& parts, Domain dom, bool localize) {
  std::vector<FpModule> mods;
  for (const auto& p : parts) {
    if (localize && std::holds_alternative<LocModule>(p)) {
      const auto& l = std::get<LocModule>(p);
      mods.push_back(kill_x_torsion(l.base, l.inverted).module);
    } else {
      mods.push_back(base_of(p));
    }
  }
  return direct_sum(mods, dom);
}

}  // namespace

MiddleFiniteComplex::MiddleFiniteComplex(std::vector<EndSummand> a, FpModule b, std::vector<EndSummand> c, Mat da,
                                         Mat db)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), da_(std::move(da)), db_(std::move(db)) {
  Domain dom = b_.domain();
  for (const auto* parts : {&a_, &c_})
    for (const auto& p : *parts)
      if (std::holds_alternative<LocModule>(p) && std::get<LocModule>(p).inverted.is_zero())
        throw std::invalid_argument("a localized summand cannot invert zero");
  FpModule a_mod = sum_of(a_, dom, false);
  FpModule c_mod = sum_of(c_, dom, true);
  Morphism alpha(a_mod, b_, da_);
  Morphism beta(b_, c_mod, db_);
  if (!compose(beta, alpha).is_zero()) throw std::invalid_argument("middle-finite maps do not compose to zero");
  std::size_t offset = 0;
  for (const auto& p : a_) {
    std::size_t k = base_of(p).ambient_rank();
    if (const auto* l = std::get_if<LocModule>(&p)) {
      FpModule img = Subquotient(b_, da_.block(0, offset, da_.rows(), k)).module();
      if (!img.is_torsion() || (!img.is_zero() && !gcd(img.factors().back(), l->inverted).is_unit()))
        throw std::invalid_argument("a localized summand of A must map where its inverted element acts invertibly");
    }
    offset += k;
  }
}

MiddleFiniteComplex MiddleFiniteComplex::gamma_complex(const Elem& g) {
  Domain dom = g.domain();
  FpModule r = FpModule::free(dom, 1);
  return MiddleFiniteComplex({}, r, {LocModule{r, g}}, Mat(dom, 1, 0), Mat::identity(dom, 1));
}

bool MiddleFiniteComplex::has_localized_end() const {
  auto loc = [](const EndSummand& s) { return std::holds_alternative<LocModule>(s); };
  return std::any_of(a_.begin(), a_.end(), loc) || std::any_of(c_.begin(), c_.end(), loc);
}

namespace {

Subquotient middle_finite_homology(const MiddleFiniteComplex& s, const FpModule& n) {
  if (s.has_localized_end() && !n.is_torsion())
    throw DomainViolation("middle-finite functor with a localized end needs a torsion argument, got " +
                          n.describe());
  Domain dom = s.b().domain();
  FpModule bn = tensor(s.b(), n);
  std::vector<FpModule> cparts;
  for (const auto& p : s.c()) {
    if (const auto* l = std::get_if<LocModule>(&p))
      cparts.push_back(loc_tensor(*l, n));
    else
      cparts.push_back(tensor(std::get<FpModule>(p), n));
  }
  FpModule cn = direct_sum(cparts, dom);
  Mat idn = Mat::identity(dom, n.ambient_rank());
  Morphism beta(bn, cn, Mat::kron(s.db(), idn));
  return Subquotient(bn, kernel_m(beta).gens(), Mat::kron(s.da(), idn));
}

}  // namespace

FpModule middle_finite_eval(const MiddleFiniteComplex& sigma, const FpModule& n) {
  return middle_finite_homology(sigma, n).module();
}

// ---- the oscillating functor ------------------------------------------------------

void SkeletonObject::validate() const {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (p.exponent == 0) throw std::invalid_argument("skeleton exponents must be positive");
    if (p.prime != p.prime.canonical() || !is_irreducible(p.prime))
      throw std::invalid_argument("skeleton primes must be canonical irreducibles");
    if (i > 0) {
      const auto& q = parts[i - 1];
      if (q.prime > p.prime || (q.prime == p.prime && q.exponent > p.exponent))
        throw std::invalid_argument("object is not in skeleton order");
    }
  }
}

FpModule SkeletonObject::module(Domain dom) const {
  std::vector<Elem> f;
  for (const auto& p : parts) f.push_back(p.prime.pow(p.exponent));
  return FpModule::from_decomposition(dom, 0, f);
}

SkeletonForm skeleton_of(const FpModule& m) {
  struct Item {
    SkeletonObject::Part part;
    std::size_t summand;
    Elem idempotent;
  };
  std::vector<Item> items;
  const auto& moduli = m.summand_moduli();
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    const Elem& d = moduli[j];
    if (d.is_zero()) continue;
    for (const auto& pp : factor(d)) {
      Elem q = pp.prime.pow(pp.multiplicity);
      Elem rest = d.exact_div(q);
      // e = rest * (rest^-1 mod q) is 1 modulo q and 0 modulo rest.
      GcdExt b = gcd_ext(rest, q);
      items.push_back({{pp.prime, pp.multiplicity}, j, rest * b.u});
    }
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    if (x.part.prime != y.part.prime) return x.part.prime < y.part.prime;
    return x.part.exponent < y.part.exponent;
  });
  SkeletonForm out;
  out.generators = Mat(m.domain(), m.ambient_rank(), items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    out.object.parts.push_back(items[i].part);
    out.summand.push_back(items[i].summand);
    Mat g = m.summand_generators().col(items[i].summand).scaled(items[i].idempotent);
    for (std::size_t r = 0; r < g.rows(); ++r) out.generators(r, i) = g(r, 0);
  }
  return out;
}

const ExponentSet* OscillatingFunctor::set_for(const Elem& prime) const {
  auto it = sets.find(prime);
  return it == sets.end() ? nullptr : &it->second;
}

bool OscillatingFunctor::keeps(const SkeletonObject::Part& part) const {
  const ExponentSet* s = set_for(part.prime);
  return s != nullptr && s->contains(part.exponent);
}

FpModule osc_eval_obj(const OscillatingFunctor& f, const SkeletonObject& obj, Domain dom) {
  obj.validate();
  std::vector<Elem> out;
  for (const auto& p : obj.parts)
    if (f.keeps(p)) out.push_back(p.prime);
  return FpModule::from_decomposition(dom, 0, out);
}

Morphism osc_eval_mor(const OscillatingFunctor& f, const SkeletonObject& source, const SkeletonObject& target,
                      const Mat& entries) {
  Domain dom = entries.domain();
  source.validate();
  target.validate();
  Morphism(source.module(dom), target.module(dom), entries);  // well-definedness check
  std::vector<std::size_t> src_keep, tgt_keep;
  for (std::size_t i = 0; i < source.parts.size(); ++i)
    if (f.keeps(source.parts[i])) src_keep.push_back(i);
  for (std::size_t k = 0; k < target.parts.size(); ++k)
    if (f.keeps(target.parts[k])) tgt_keep.push_back(k);
  Mat out(dom, tgt_keep.size(), src_keep.size());
  for (std::size_t a = 0; a < tgt_keep.size(); ++a)
    for (std::size_t b = 0; b < src_keep.size(); ++b) {
      const auto& pt = target.parts[tgt_keep[a]];
      const auto& ps = source.parts[src_keep[b]];
      if (pt == ps) out(a, b) = entries(tgt_keep[a], src_keep[b]).mod(pt.prime);
    }
  return Morphism(osc_eval_obj(f, source, dom), osc_eval_obj(f, target, dom), out);
}

namespace {

Morphism osc_eval_module_mor(const OscillatingFunctor& f, const Morphism& g) {
  SkeletonForm s = skeleton_of(g.source()), t = skeleton_of(g.target());
  Mat coords = g.target().summand_coords(g.images() * s.generators);
  Domain dom = g.source().domain();
  Mat entries(dom, t.object.parts.size(), s.object.parts.size());
  for (std::size_t k = 0; k < t.object.parts.size(); ++k) {
    const auto& part = t.object.parts[k];
    Elem q = part.prime.pow(part.exponent);
    for (std::size_t i = 0; i < s.object.parts.size(); ++i) entries(k, i) = coords(t.summand[k], i).mod(q);
  }
  return osc_eval_mor(f, s.object, t.object, entries);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

FpModule coherent_eval(const CoherentFunctor& c, const FpModule& n) {
  HomModule hl(c.f.target(), n), hk(c.f.source(), n);
  return cokernel_m(hom_induced(c.f, hl, hk)).module;
}

Morphism coherent_eval_mor(const CoherentFunctor& c, const Morphism& g) {
  HomModule hk(c.f.source(), g.source()), hk2(c.f.source(), g.target());
  Morphism post = hom_post(g, hk, hk2);
  return Morphism(coherent_eval(c, g.source()), coherent_eval(c, g.target()), post.images());
}

Morphism complex_eval_mor(const ComplexFunctor& c, const Morphism& g) {
  Subquotient a = complex_homology(c, g.source()), b = complex_homology(c, g.target());
  Mat map = Mat::kron(Mat::identity(g.source().domain(), complex_term(c).ambient_rank()), g.images());
  return induced_on_subquotients(a, b, map);
}

template <class F>
Morphism torsion_sub_mor(const F& f, const Morphism& g) {
  Subquotient a(g.source(), torsion_gens(f, g.source())), b(g.target(), torsion_gens(f, g.target()));
  return induced_on_subquotients(a, b, g.images());
}

template <class F>
Morphism torsion_quotient_mor(const F& f, const Morphism& g) {
  return Morphism(quotient_by(g.source(), torsion_gens(f, g.source())),
                  quotient_by(g.target(), torsion_gens(f, g.target())), g.images());
}

}  // namespace

std::string kind_name(const FunctorSpec& f) {
  static const char* names[] = {"identity", "hom_from", "tor1",    "ext1",    "coherent",      "gamma",
                                "mod_gamma", "tau",     "mod_tau", "complex", "middle_finite", "oscillating"};
  return names[f.index()];
}

FpModule eval(const FunctorSpec& f, const FpModule& n) {
  return std::visit(
      overloaded{
          [&](const IdentityFunctor&) { return n; },
          [&](const HomFromFunctor& h) { return HomModule(h.m, n).module(); },
          [&](const Tor1Functor& t) { return complex_homology(t.complex, n).module(); },
          [&](const Ext1Functor& e) { return coherent_eval(e.coherent, n); },
          [&](const CoherentFunctor& c) { return coherent_eval(c, n); },
          [&](const GammaFunctor& g) { return Subquotient(n, torsion_gens(g, n)).module(); },
          [&](const ModGammaFunctor& g) { return quotient_by(n, torsion_gens(g, n)); },
          [&](const TauFunctor& t) { return Subquotient(n, torsion_gens(t, n)).module(); },
          [&](const ModTauFunctor& t) { return quotient_by(n, torsion_gens(t, n)); },
          [&](const ComplexFunctor& c) { return complex_homology(c, n).module(); },
          [&](const MiddleFiniteComplex& s) { return middle_finite_eval(s, n); },
          [&](const OscillatingFunctor& o) { return osc_eval_obj(o, skeleton_of(n).object, n.domain()); },
      },
      f);
}

Morphism eval_mor(const FunctorSpec& f, const Morphism& g) {
  return std::visit(
      overloaded{
          [&](const IdentityFunctor&) { return g; },
          [&](const HomFromFunctor& h) {
            return hom_post(g, HomModule(h.m, g.source()), HomModule(h.m, g.target()));
          },
          [&](const Tor1Functor& t) { return complex_eval_mor(t.complex, g); },
          [&](const Ext1Functor& e) { return coherent_eval_mor(e.coherent, g); },
          [&](const CoherentFunctor& c) { return coherent_eval_mor(c, g); },
          [&](const GammaFunctor& x) { return torsion_sub_mor(x, g); },
          [&](const ModGammaFunctor& x) { return torsion_quotient_mor(x, g); },
          [&](const TauFunctor& x) { return torsion_sub_mor(x, g); },
          [&](const ModTauFunctor& x) { return torsion_quotient_mor(x, g); },
          [&](const ComplexFunctor& c) { return complex_eval_mor(c, g); },
          [&](const MiddleFiniteComplex& s) {
            Subquotient a = middle_finite_homology(s, g.source()), b = middle_finite_homology(s, g.target());
            Mat map = Mat::kron(Mat::identity(g.source().domain(), s.b().ambient_rank()), g.images());
            return induced_on_subquotients(a, b, map);
          },
          [&](const OscillatingFunctor& o) { return osc_eval_module_mor(o, g); },
      },
      f);
}

}  // namespace stab
