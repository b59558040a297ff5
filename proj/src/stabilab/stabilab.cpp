#include <cstdlib>
#include <exception>
#include <sstream>

#include <omp.h>

#include "stab/stabilab.hpp"

namespace stab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_gens(const FpModule& m, const Mat& gens, const std::string& name) {
  require(gens.rows() == m.ambient_rank(), name + " must have one row per ambient generator");
  require(gens.domain() == m.domain(), name + " lives over a different ring");
}

void check_ideal(const FpModule& m, const Ideal& ideal) {
  require(ideal.domain() == m.domain(), "ideal and module live over different rings");
}

Mat source_gens(const KwHomology& k, unsigned n) {
  if (!k.shift) return Mat::identity(k.alpha.source().domain(), k.alpha.source().ambient_rank());
  const auto& s = *k.shift;
  return Mat::hcat(s.l1, s.l2.scaled(k.ideal.power_generator(n - s.c)));
}

FpModule kw_member(const KwHomology& k, unsigned n) {
  Elem gn = k.ideal.power_generator(n);
  const FpModule &m = k.beta.source(), &nn = k.beta.target();
  FpModule mn(Mat::hcat(m.relations(), k.m_sub.scaled(gn)));
  FpModule target(Mat::hcat(nn.relations(), k.n_sub.scaled(gn)));
  Morphism beta_n(mn, target, k.beta.images());
  Mat img = k.alpha.images() * source_gens(k, n);
  return Subquotient(mn, kernel_m(beta_n).gens(), img).module();
}

}  // namespace

void validate(const Family& fam) {
  std::visit(overloaded{
                 [](const QuotientPowers& q) { check_ideal(q.m, q.ideal); },
                 [](const Layers& q) { check_ideal(q.m, q.ideal); },
                 [](const GradedLayers& g) {
                   check_ideal(g.m, g.ideal);
                   check_gens(g.m, g.sub, "M'");
                 },
                 [](const SubquotientFamily& s) {
                   check_ideal(s.t, s.ideal);
                   check_gens(s.t, s.u, "U");
                   check_gens(s.t, s.v, "V");
                   check_gens(s.t, s.w, "W");
                   require(submodule_contains(s.t, s.v, s.w), "W must lie inside V");
                 },
                 [](const KwHomology& k) {
                   const FpModule &l = k.alpha.source(), &m = k.alpha.target(), &n = k.beta.target();
                   require(k.beta.source().ambient_rank() == m.ambient_rank() &&
                               k.beta.source().relations() == m.relations(),
                           "alpha and beta are not composable");
                   check_ideal(m, k.ideal);
                   check_gens(l, k.l_sub, "L'");
                   check_gens(m, k.m_sub, "M'");
                   check_gens(n, k.n_sub, "N'");
                   require(compose(k.beta, k.alpha).is_zero(), "beta o alpha must be zero");
                   require(submodule_contains(m, k.m_sub, k.alpha.images() * k.l_sub), "alpha must map L' into M'");
                   require(submodule_contains(n, k.n_sub, k.beta.images() * k.m_sub), "beta must map M' into N'");
                   if (k.shift) {
                     check_gens(l, k.shift->l1, "L1");
                     check_gens(l, k.shift->l2, "L2");
                     require(submodule_contains(l, k.shift->l2, k.l_sub.scaled(k.ideal.power_generator(k.shift->c))),
                             "I^c L' must lie inside L2");
                   }
                 },
             },
             fam);
}

unsigned n_min(const Family& fam) {
  if (const auto* k = std::get_if<KwHomology>(&fam)) return k->shift ? k->shift->c : 1;
  return 1;
}

FpModule generate(const Family& fam, unsigned n) {
  require(n >= n_min(fam), "family index below its minimum");
  return std::visit(overloaded{
                        [&](const QuotientPowers& q) { return power_quotient(q.m, q.ideal, n); },
                        [&](const Layers& q) { return power_layer(q.m, q.ideal, n); },
                        [&](const GradedLayers& g) {
                          Elem gn = g.ideal.power_generator(n);
                          Mat all = Mat::identity(g.m.domain(), g.m.ambient_rank()).scaled(gn);
                          return Subquotient(g.m, all, g.sub.scaled(gn)).module();
                        },
                        [&](const SubquotientFamily& s) { return subquotient(s.t, s.u, s.v, s.w, s.ideal, n).module(); },
                        [&](const KwHomology& k) { return kw_member(k, n); },
                    },
                    fam);
}

std::string family_kind(const Family& fam) {
  static const char* names[] = {"quotient_powers", "layers", "graded_layers", "subquotient", "kw_homology"};
  return names[fam.index()];
}

const Ideal& family_ideal(const Family& fam) {
  return std::visit([](const auto& f) -> const Ideal& { return f.ideal; }, fam);
}

std::string StabilizationReport::verdict() const {
  switch (status) {
    case Status::stable: return "stable";
    case Status::oscillating: return "oscillating-with-period-" + std::to_string(period);
    default: return "not-stable-within-horizon";
  }
}

namespace {

Observation observe(const Family& fam, const FunctorSpec& f, unsigned n, const std::optional<Ideal>& j) {
  FpModule m = generate(fam, n);
  FpModule fm = eval(f, m);
  Observation o;
  o.n = n;
  o.value = decompose(fm);
  o.ass = ass(fm);
  if (j) o.depth = depth(*j, fm);
  o.ann_monotone = ann(fm).contains(ann(m).generator());
  return o;
}

}  // namespace

std::vector<Observation> observe_serial(const Family& fam, const FunctorSpec& f, unsigned horizon,
                                        const std::optional<Ideal>& depth_ideal) {
  std::vector<Observation> out;
  for (unsigned n = n_min(fam); n <= horizon; ++n) out.push_back(observe(fam, f, n, depth_ideal));
  return out;
}

int scan_threads() {
  int t = omp_get_max_threads();
  if (const char* env = std::getenv("STAB_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0 && cap < t) t = cap;
  }
  return t;
}

std::vector<Observation> observe_parallel(const Family& fam, const FunctorSpec& f, unsigned horizon,
                                          const std::optional<Ideal>& depth_ideal) {
  unsigned lo = n_min(fam);
  if (horizon < lo) return {};
  const long count = static_cast<long>(horizon - lo + 1);
  std::vector<Observation> out(count);
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic) num_threads(scan_threads())
  for (long i = 0; i < count; ++i) {
    try {
      out[i] = observe(fam, f, lo + static_cast<unsigned>(i), depth_ideal);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

StabilizationReport summarize(std::vector<Observation> observations, ScanKind kind, unsigned window) {
  StabilizationReport r;
  r.kind = kind;
  r.window = window;
  r.observations = std::move(observations);
  Detection d;
  if (kind == ScanKind::ass) {
    std::vector<AssSet> seq;
    for (const auto& o : r.observations) seq.push_back(o.ass);
    d = detect(seq, window);
  } else {
    std::vector<Depth> seq;
    for (const auto& o : r.observations) {
      require(o.depth.has_value(), "depth scan over observations without depths");
      seq.push_back(*o.depth);
    }
    d = detect(seq, window);
  }
  r.status = d.status;
  r.period = d.period;
  if (d.start) r.n0 = r.observations[*d.start].n;
  return r;
}

StabilizationReport scan(const Family& fam, const FunctorSpec& f, ScanKind kind, const ScanOptions& opt) {
  require(opt.window >= 2 && opt.horizon >= opt.window, "scans need horizon >= window >= 2");
  require(kind == ScanKind::ass || opt.depth_ideal.has_value(), "depth scans need an ideal J");
  validate(fam);
  auto obs = opt.parallel ? observe_parallel(fam, f, opt.horizon, opt.depth_ideal)
                          : observe_serial(fam, f, opt.horizon, opt.depth_ideal);
  return summarize(std::move(obs), kind, opt.window);
}

StabilizationReport scan_ass(const Family& fam, const FunctorSpec& f, unsigned horizon, unsigned window) {
  ScanOptions opt;
  opt.horizon = horizon;
  opt.window = window;
  return scan(fam, f, ScanKind::ass, opt);
}

StabilizationReport scan_depth(const Ideal& j, const Family& fam, const FunctorSpec& f, unsigned horizon,
                               unsigned window) {
  ScanOptions opt;
  opt.horizon = horizon;
  opt.window = window;
  opt.depth_ideal = j;
  return scan(fam, f, ScanKind::depth, opt);
}

std::optional<unsigned> artin_rees_probe(const Morphism& beta, const Mat& n_sub, const Ideal& ideal,
                                         unsigned horizon) {
  const FpModule& n = beta.target();
  check_gens(n, n_sub, "N'");
  check_ideal(n, ideal);
  std::vector<Mat> cap;  // beta(M) cap I^k N'
  for (unsigned k = 0; k <= horizon; ++k)
    cap.push_back(submodule_intersection(n, beta.images(), n_sub.scaled(ideal.power_generator(k))));
  auto same = [&](const Mat& a, const Mat& b) { return submodule_contains(n, a, b) && submodule_contains(n, b, a); };
  for (unsigned d = 0; d <= horizon; ++d) {
    bool ok = true;
    for (unsigned k = d + 1; k <= horizon && ok; ++k) ok = same(cap[k], cap[d].scaled(ideal.power_generator(k - d)));
    if (ok) return d;
  }
  return std::nullopt;
}

ArtinReesInstance artin_rees_instance(const Family& fam) {
  auto inclusion = [](const FpModule& m, const Mat& gens) {
    return Morphism(FpModule::free(m.domain(), gens.cols()), m, gens);
  };
  auto all = [](const FpModule& m) { return Mat::identity(m.domain(), m.ambient_rank()); };
  return std::visit(overloaded{
                        [&](const QuotientPowers& q) { return ArtinReesInstance{Morphism::identity(q.m), all(q.m)}; },
                        [&](const Layers& q) { return ArtinReesInstance{Morphism::identity(q.m), all(q.m)}; },
                        [&](const GradedLayers& g) { return ArtinReesInstance{inclusion(g.m, g.sub), all(g.m)}; },
                        [&](const SubquotientFamily& s) { return ArtinReesInstance{inclusion(s.t, s.w), s.v}; },
                        [&](const KwHomology& k) { return ArtinReesInstance{k.beta, k.n_sub}; },
                    },
                    fam);
}

std::string to_csv(const StabilizationReport& r) {
  std::ostringstream out;
  out << "n,invariant_factors,ass,depth\n";
  for (const auto& o : r.observations) {
    out << o.n << ',';
    bool first = true;
    for (const auto& f : o.value.factors) {
      out << (first ? "" : ";") << f.to_string();
      first = false;
    }
    for (std::size_t i = 0; i < o.value.rank; ++i) {
      out << (first ? "" : ";") << '0';
      first = false;
    }
    out << ',';
    first = true;
    for (const auto& p : o.ass.to_strings()) {
      out << (first ? "" : ";") << p;
      first = false;
    }
    out << ',' << (o.depth ? to_string(*o.depth) : "") << '\n';
  }
  return out.str();
}

}  // namespace stab
