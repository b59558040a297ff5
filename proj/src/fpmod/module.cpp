#include <sstream>

#include "stab/fpmod.hpp"

namespace stab {

struct FpModule::Impl {
  Mat rel;
  Solver solver;
  std::size_t rank = 0;
  std::vector<Elem> factors;
  std::vector<Elem> moduli;
  Mat gens;  // ambient x summands
  Mat proj;  // summands x ambient

  explicit Impl(const Mat& relations) : rel(relations), solver(relations) {
    const SnfResult& s = solver.smith();
    const std::size_t k = rel.rows();
    const std::size_t r = std::min(k, rel.cols());
    std::vector<std::size_t> torsion_idx, free_idx;
    for (std::size_t i = 0; i < k; ++i) {
      if (i >= r || s.d(i, i).is_zero()) {
        free_idx.push_back(i);
      } else if (!s.d(i, i).is_unit()) {
        torsion_idx.push_back(i);
        factors.push_back(s.d(i, i));
      }
    }
    rank = free_idx.size();
    moduli = factors;
    moduli.resize(factors.size() + rank, rel.domain().zero());
    std::vector<std::size_t> idx = torsion_idx;
    idx.insert(idx.end(), free_idx.begin(), free_idx.end());
    gens = s.u_inv.select_cols(idx);
    proj = s.u.select_rows(idx);
  }
};

FpModule::FpModule() : FpModule(Mat(Domain::integers(), 0, 0)) {}

FpModule::FpModule(const Mat& relations) : impl_(std::make_shared<const Impl>(relations)) {}

FpModule FpModule::free(Domain dom, std::size_t rank) { return FpModule(Mat(dom, rank, 0)); }

FpModule FpModule::cyclic(const Elem& d) {
  return FpModule(Mat::column(d.domain(), {d}));
}

FpModule FpModule::from_decomposition(Domain dom, std::size_t rank,
                                      const std::vector<Elem>& factors) {
  Mat rel(dom, factors.size() + rank, factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].domain() != dom) throw BackendMismatch("module factor");
    rel(i, i) = factors[i];
  }
  return FpModule(rel);
}

const Domain& FpModule::domain() const { return impl_->rel.domain(); }
std::size_t FpModule::ambient_rank() const { return impl_->rel.rows(); }
const Mat& FpModule::relations() const { return impl_->rel; }
std::size_t FpModule::rank() const { return impl_->rank; }
const std::vector<Elem>& FpModule::factors() const { return impl_->factors; }
const std::vector<Elem>& FpModule::summand_moduli() const { return impl_->moduli; }
const Mat& FpModule::summand_generators() const { return impl_->gens; }
const Mat& FpModule::summand_projection() const { return impl_->proj; }
const Solver& FpModule::relation_solver() const { return impl_->solver; }

Mat FpModule::summand_coords(const Mat& x) const {
  Mat c = impl_->proj * x;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = c(i, j).mod(impl_->moduli[i]);
  return c;
}

bool FpModule::is_zero_element(const Mat& x) const {
  if (x.rows() != ambient_rank()) throw std::invalid_argument("element of wrong ambient rank");
  return impl_->solver.in_span(x);
}

std::string FpModule::describe() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  std::string ring = domain().describe();
  bool first = true;
  if (rank() > 0) {
    os << ring << '^' << rank();
    first = false;
  }
  for (const auto& d : factors()) {
    os << (first ? "" : " + ") << ring << "/(" << d.to_string() << ')';
    first = false;
  }
  return os.str();
}

bool isomorphic(const FpModule& a, const FpModule& b) {
  return a.domain() == b.domain() && a.rank() == b.rank() && a.factors() == b.factors();
}

Decomposition decompose(const FpModule& m) { return {m.rank(), m.factors()}; }

// ---- morphisms ---------------------------------------------------------------

Morphism::Morphism(FpModule source, FpModule target, Mat images)
    : src_(std::move(source)), tgt_(std::move(target)), images_(std::move(images)) {
  if (images_.rows() != tgt_.ambient_rank() || images_.cols() != src_.ambient_rank())
    throw std::invalid_argument("morphism matrix has the wrong shape");
  if (src_.domain() != tgt_.domain() || images_.domain() != src_.domain())
    throw BackendMismatch("morphism");
  if (!tgt_.is_zero_element(images_ * src_.relations()))
    throw std::invalid_argument("morphism is not well defined: a relation maps to a nonzero element");
}

Morphism Morphism::identity(const FpModule& m) {
  return Morphism(m, m, Mat::identity(m.domain(), m.ambient_rank()));
}

Morphism Morphism::zero(const FpModule& source, const FpModule& target) {
  return Morphism(source, target, Mat(source.domain(), target.ambient_rank(), source.ambient_rank()));
}

Morphism Morphism::operator+(const Morphism& g) const {
  return Morphism(src_, tgt_, images_ + g.images_);
}

Morphism Morphism::operator-(const Morphism& g) const {
  return Morphism(src_, tgt_, images_ - g.images_);
}

Morphism Morphism::scaled(const Elem& r) const { return Morphism(src_, tgt_, images_.scaled(r)); }

bool Morphism::equals(const Morphism& g) const {
  if (images_.rows() != g.images_.rows() || images_.cols() != g.images_.cols()) return false;
  return tgt_.is_zero_element(images_ - g.images_);
}

bool Morphism::is_zero() const { return tgt_.is_zero_element(images_); }

Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.target().ambient_rank() != g.source().ambient_rank())
    throw std::invalid_argument("compose: incompatible morphisms");
  return Morphism(f.source(), g.target(), g.images() * f.images());
}

// ---- subquotients --------------------------------------------------------------

namespace {

Mat stack3(const Mat& a, const Mat& b, const Mat& c) { return Mat::hcat(Mat::hcat(a, b), c); }

}  // namespace

Subquotient::Subquotient(FpModule ambient, Mat gens)
    : Subquotient(ambient, std::move(gens), Mat(ambient.domain(), ambient.ambient_rank(), 0)) {}

Subquotient::Subquotient(FpModule ambient, Mat gens, Mat denominators)
    : ambient_(std::move(ambient)), gens_(std::move(gens)), denoms_(std::move(denominators)) {
  if (gens_.rows() != ambient_.ambient_rank() || denoms_.rows() != ambient_.ambient_rank())
    throw std::invalid_argument("subquotient generators have the wrong ambient rank");
  Mat big = stack3(gens_, denoms_, ambient_.relations());
  solver_ = std::make_shared<const Solver>(big);
  Mat syz = kernel(big);
  Mat rel = span_basis(syz.block(0, 0, gens_.cols(), syz.cols()));
  module_ = FpModule(rel);
}

std::optional<Mat> Subquotient::coords(const Mat& v) const {
  auto x = solver_->solve(v);
  if (!x) return std::nullopt;
  return x->block(0, 0, gens_.cols(), x->cols());
}

Morphism Subquotient::inclusion() const {
  FpModule target = denoms_.cols() == 0 ? ambient_
                                        : FpModule(Mat::hcat(ambient_.relations(), denoms_));
  return Morphism(module_, target, gens_);
}

bool submodule_contains(const FpModule& m, const Mat& b, const Mat& a) {
  return Solver(Mat::hcat(b, m.relations())).in_span(a);
}

Mat submodule_intersection(const FpModule& m, const Mat& a, const Mat& b) {
  Mat syz = kernel(stack3(a, b, m.relations()));
  return span_basis(a * syz.block(0, 0, a.cols(), syz.cols()));
}

// ---- sums and tensors ---------------------------------------------------------

namespace {

Mat block_diag(const Mat& a, const Mat& b) {
  Mat m(a.domain(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

}  // namespace

FpModule direct_sum(const FpModule& a, const FpModule& b) {
  if (a.domain() != b.domain()) throw BackendMismatch("direct_sum");
  return FpModule(block_diag(a.relations(), b.relations()));
}

FpModule direct_sum(const std::vector<FpModule>& parts, Domain dom) {
  Mat rel(dom, 0, 0);
  for (const auto& p : parts) {
    if (p.domain() != dom) throw BackendMismatch("direct_sum");
    rel = block_diag(rel, p.relations());
  }
  return FpModule(rel);
}

Morphism direct_sum(const Morphism& f, const Morphism& g) {
  return Morphism(direct_sum(f.source(), g.source()), direct_sum(f.target(), g.target()),
                  block_diag(f.images(), g.images()));
}

FpModule tensor(const FpModule& a, const FpModule& b) {
  if (a.domain() != b.domain()) throw BackendMismatch("tensor");
  Domain dom = a.domain();
  Mat left = Mat::kron(a.relations(), Mat::identity(dom, b.ambient_rank()));
  Mat right = Mat::kron(Mat::identity(dom, a.ambient_rank()), b.relations());
  return FpModule(span_basis(Mat::hcat(left, right)));
}

Morphism tensor(const Morphism& f, const Morphism& g) {
  return Morphism(tensor(f.source(), g.source()), tensor(f.target(), g.target()),
                  Mat::kron(f.images(), g.images()));
}

// ---- kernels and cokernels -----------------------------------------------------

Subquotient kernel_m(const Morphism& f) {
  const FpModule& src = f.source();
  Mat syz = kernel(Mat::hcat(f.images(), f.target().relations()));
  Mat gens = span_basis(syz.block(0, 0, src.ambient_rank(), syz.cols()));
  return Subquotient(src, gens);
}

Subquotient image_m(const Morphism& f) { return Subquotient(f.target(), f.images()); }

Cokernel cokernel_m(const Morphism& f) {
  FpModule c(Mat::hcat(f.target().relations(), f.images()));
  Morphism p(f.target(), c, Mat::identity(c.domain(), c.ambient_rank()));
  return {c, p};
}

Subquotient homology(const Morphism& f, const Morphism& g) {
  if (!compose(g, f).is_zero()) throw std::invalid_argument("homology: composite is not zero");
  return Subquotient(g.source(), kernel_m(g).gens(), f.images());
}

// ---- ideal powers --------------------------------------------------------------

Subquotient subquotient(const FpModule& t, const Mat& u, const Mat& v, const Mat& w,
                        const Ideal& ideal, unsigned n) {
  if (!submodule_contains(t, v, w))
    throw std::invalid_argument("subquotient: W is not contained in V");
  Elem gn = ideal.power_generator(n);
  return Subquotient(t, Mat::hcat(u, v.scaled(gn)), w.scaled(gn));
}

FpModule power_quotient(const FpModule& m, const Ideal& ideal, unsigned n) {
  Elem gn = ideal.power_generator(n);
  Mat diag = Mat::identity(m.domain(), m.ambient_rank()).scaled(gn);
  return FpModule(Mat::hcat(m.relations(), diag));
}

FpModule power_layer(const FpModule& m, const Ideal& ideal, unsigned n) {
  if (n == 0) throw std::invalid_argument("power_layer needs n >= 1");
  Domain dom = m.domain();
  Mat id = Mat::identity(dom, m.ambient_rank());
  return subquotient(m, Mat(dom, m.ambient_rank(), 0), id, id.scaled(ideal.generator()), ideal,
                     n - 1)
      .module();
}

// ---- localization -----------------------------------------------------------------

Mat x_torsion_generators(const FpModule& m, const Elem& x) {
  if (x.is_zero()) return Mat::identity(m.domain(), m.ambient_rank());
  std::vector<std::size_t> cols;
  std::vector<Elem> scale;
  const auto& moduli = m.summand_moduli();
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    if (moduli[j].is_zero()) continue;
    Elem part = saturate_part(moduli[j], x);
    if (part.is_unit()) continue;
    cols.push_back(j);
    scale.push_back(moduli[j].exact_div(part));
  }
  Mat g = m.summand_generators().select_cols(cols);
  for (std::size_t j = 0; j < cols.size(); ++j) g.scale_col(j, scale[j]);
  return g;
}

Cokernel kill_x_torsion(const FpModule& m, const Elem& x) {
  Mat gens = x_torsion_generators(m, x);
  return cokernel_m(Morphism(FpModule::free(m.domain(), gens.cols()), m, gens));
}

FpModule loc_tensor(const LocModule& lx, const FpModule& n) {
  if (lx.inverted.is_zero()) throw std::invalid_argument("cannot invert zero");
  if (!n.is_torsion())
    throw DomainViolation("loc_tensor: " + n.describe() + " is not torsion");
  return kill_x_torsion(tensor(lx.base, n), lx.inverted).module;
}

}  // namespace stab
