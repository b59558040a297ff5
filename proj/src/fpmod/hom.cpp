#include "stab/fpmod.hpp"

namespace stab {

HomModule::HomModule(FpModule source, FpModule target)
    : src_(std::move(source)), tgt_(std::move(target)) {
  if (src_.domain() != tgt_.domain()) throw BackendMismatch("hom");
  const Domain& dom = src_.domain();
  const auto& a = src_.summand_moduli();
  const auto& b = tgt_.summand_moduli();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[i].is_zero()) {
        slots_.push_back({i, j, dom.one(), b[j]});
      } else if (!b[j].is_zero()) {
        Elem g = gcd(a[i], b[j]);
        if (g.is_unit()) continue;
        slots_.push_back({i, j, b[j].exact_div(g), g});
      }
    }
  }
  std::vector<Elem> orders;
  for (const auto& s : slots_) orders.push_back(s.order);
  module_ = FpModule(Mat::diagonal(dom, orders));
}

Morphism HomModule::realize(const Mat& element) const {
  if (element.rows() != slots_.size() || element.cols() != 1)
    throw std::invalid_argument("hom element has the wrong shape");
  const Domain& dom = src_.domain();
  Mat phi(dom, tgt_.num_summands(), src_.num_summands());
  for (std::size_t t = 0; t < slots_.size(); ++t) {
    const Slot& s = slots_[t];
    phi(s.target_summand, s.source_summand) += element(t, 0) * s.multiplier;
  }
  Mat images = tgt_.summand_generators() * phi * src_.summand_projection();
  return Morphism(src_, tgt_, images);
}

Mat HomModule::coordinates(const Morphism& phi) const {
  if (phi.source().ambient_rank() != src_.ambient_rank() ||
      phi.target().ambient_rank() != tgt_.ambient_rank())
    throw std::invalid_argument("hom coordinates: morphism between other modules");
  Mat w = tgt_.summand_coords(phi.images() * src_.summand_generators());
  Mat c(src_.domain(), slots_.size(), 1);
  for (std::size_t t = 0; t < slots_.size(); ++t) {
    const Slot& s = slots_[t];
    c(t, 0) = w(s.target_summand, s.source_summand).exact_div(s.multiplier).mod(s.order);
  }
  return c;
}

HomModule hom(const FpModule& m, const FpModule& n) { return HomModule(m, n); }

Morphism hom_induced(const Morphism& f, const HomModule& hom_l, const HomModule& hom_k) {
  const Domain& dom = f.source().domain();
  const std::size_t gl = hom_l.module().ambient_rank();
  Mat images(dom, hom_k.module().ambient_rank(), gl);
  for (std::size_t t = 0; t < gl; ++t) {
    Mat e(dom, gl, 1);
    e(t, 0) = dom.one();
    Mat c = hom_k.coordinates(compose(hom_l.realize(e), f));
    for (std::size_t i = 0; i < c.rows(); ++i) images(i, t) = c(i, 0);
  }
  return Morphism(hom_l.module(), hom_k.module(), images);
}

Morphism hom_induced(const Morphism& f, const FpModule& n) {
  return hom_induced(f, HomModule(f.target(), n), HomModule(f.source(), n));
}

Morphism hom_post(const Morphism& g, const HomModule& hom_n, const HomModule& hom_n2) {
  const Domain& dom = g.source().domain();
  const std::size_t gn = hom_n.module().ambient_rank();
  Mat images(dom, hom_n2.module().ambient_rank(), gn);
  for (std::size_t t = 0; t < gn; ++t) {
    Mat e(dom, gn, 1);
    e(t, 0) = dom.one();
    Mat c = hom_n2.coordinates(compose(g, hom_n.realize(e)));
    for (std::size_t i = 0; i < c.rows(); ++i) images(i, t) = c(i, 0);
  }
  return Morphism(hom_n.module(), hom_n2.module(), images);
}

}  // namespace stab
