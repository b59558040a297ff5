#include <algorithm>
#include <regex>
#include <set>

#include "stab/serialize.hpp"

namespace stab::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw SpecError(path, msg); }

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing key \"" + key + "\"");
  return *it;
}

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(path + "/" + it.key(), "unknown key \"" + it.key() + "\"");
}

unsigned as_unsigned(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a nonnegative integer");
  return j.get<unsigned>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

/// Runs f, turning library argument errors into errors at path.
template <class F>
auto at(const std::string& path, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const SpecError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  } catch (const std::domain_error& e) {
    fail(path, e.what());
  }
}

bool valid_verdict(const std::string& v) {
  static const std::regex osc("oscillating-with-period-[1-9][0-9]*");
  return v == "stable" || v == "not-stable-within-horizon" || std::regex_match(v, osc);
}

}  // namespace

Domain parse_backend(const json& j, const std::string& path) {
  std::string s = as_string(j, path);
  if (s == "Z") return Domain::integers();
  static const std::regex poly("F_?([0-9]+)\\[x\\]");
  std::smatch m;
  if (!std::regex_match(s, m, poly)) fail(path, "backend must be \"Z\" or \"F<p>[x]\", got \"" + s + "\"");
  return at(path, [&] { return Domain::poly_mod(std::stoull(m[1].str())); });
}

std::string backend_name(const Domain& dom) {
  return dom.backend() == Backend::integers ? "Z" : "F" + std::to_string(dom.characteristic()) + "[x]";
}

// ---- reading ---------------------------------------------------------------------

Reader::Reader(Domain dom, json definitions) : dom_(dom), defs_(std::move(definitions)) {
  if (!defs_.is_object()) fail("/definitions", "definitions must be an object");
}

std::pair<const json*, std::string> Reader::resolve(const json& j, const std::string& path, int depth) const {
  if (!j.is_string()) return {&j, path};
  const std::string& s = j.get_ref<const std::string&>();
  if (s.empty() || s[0] != '$') return {&j, path};
  if (depth > 32) fail(path, "reference cycle through " + s);
  std::string name = s.substr(1);
  auto it = defs_.find(name);
  if (it == defs_.end()) fail(path, "undefined reference " + s);
  return resolve(*it, "/definitions/" + name, depth + 1);
}

Elem Reader::elem(const json& raw, const std::string& raw_path) const {
  auto [jp, path] = resolve(raw, raw_path);
  const json& j = *jp;
  if (dom_.backend() == Backend::integers) {
    if (j.is_number_integer()) return Elem::integer(j.dump());
    if (j.is_string()) return at(path, [&] { return Elem::integer(j.get<std::string>()); });
    fail(path, "expected an integer (number or decimal string)");
  }
  if (j.is_number_integer()) return dom_.constant(j.get<long>());
  if (!j.is_array()) fail(path, "expected a polynomial coefficient array (low to high)");
  std::vector<long long> c;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) fail(path + "/" + std::to_string(i), "expected an integer coefficient");
    c.push_back(j[i].get<long long>());
  }
  return Elem::poly_signed(dom_.characteristic(), c);
}

Mat Reader::mat(const json& raw, const std::string& raw_path, std::optional<std::size_t> rows) const {
  auto [jp, path] = resolve(raw, raw_path);
  const json& j = *jp;
  const json* entries = &j;
  std::string epath = path;
  std::optional<std::size_t> want_rows = rows, want_cols;
  if (j.is_object()) {
    only_keys(j, {"rows", "cols", "entries"}, path);
    std::size_t r = as_unsigned(field(j, "rows", path), path + "/rows");
    if (rows && *rows != r) fail(path + "/rows", "expected " + std::to_string(*rows) + " rows");
    want_rows = r;
    want_cols = as_unsigned(field(j, "cols", path), path + "/cols");
    static const json empty = json::array();
    entries = j.contains("entries") ? &j["entries"] : &empty;
    epath = path + "/entries";
  }
  if (!entries->is_array()) fail(epath, "expected a matrix (array of rows)");
  std::vector<std::vector<Elem>> data;
  for (std::size_t i = 0; i < entries->size(); ++i) {
    const json& row = (*entries)[i];
    std::string rpath = epath + "/" + std::to_string(i);
    if (!row.is_array()) fail(rpath, "matrix rows must be arrays");
    if (!data.empty() && row.size() != data.front().size()) fail(rpath, "matrix rows differ in length");
    std::vector<Elem> r;
    for (std::size_t k = 0; k < row.size(); ++k) r.push_back(elem(row[k], rpath + "/" + std::to_string(k)));
    data.push_back(std::move(r));
  }
  if (data.empty()) return Mat(dom_, want_rows.value_or(0), want_cols.value_or(0));
  if (want_rows && data.size() != *want_rows)
    fail(path, "expected " + std::to_string(*want_rows) + " rows, got " + std::to_string(data.size()));
  if (want_cols && data.front().size() != *want_cols) fail(path, "expected " + std::to_string(*want_cols) + " columns");
  return Mat::from_rows(dom_, data);
}

FpModule Reader::module(const json& raw, const std::string& raw_path) const {
  auto [jp, path] = resolve(raw, raw_path);
  const json& j = *jp;
  if (!j.is_object()) fail(path, "expected a module object");
  if (j.contains("relations")) {
    only_keys(j, {"relations", "ambient"}, path);
    std::optional<std::size_t> ambient;
    if (j.contains("ambient")) ambient = as_unsigned(j["ambient"], path + "/ambient");
    return FpModule(mat(j["relations"], path + "/relations", ambient));
  }
  only_keys(j, {"rank", "factors"}, path);
  if (!j.contains("rank") && !j.contains("factors")) fail(path, "a module needs \"relations\" or \"rank\"/\"factors\"");
  std::size_t rank = j.contains("rank") ? as_unsigned(j["rank"], path + "/rank") : 0;
  std::vector<Elem> factors;
  if (j.contains("factors")) {
    const json& f = j["factors"];
    if (!f.is_array()) fail(path + "/factors", "expected an array");
    for (std::size_t i = 0; i < f.size(); ++i) {
      Elem e = elem(f[i], path + "/factors/" + std::to_string(i));
      if (e.is_zero()) fail(path + "/factors/" + std::to_string(i), "factors must be nonzero; use \"rank\"");
      factors.push_back(e);
    }
  }
  return FpModule::from_decomposition(dom_, rank, factors);
}

Morphism Reader::morphism(const json& raw, const std::string& raw_path) const {
  auto [jp, path] = resolve(raw, raw_path);
  const json& j = *jp;
  only_keys(j, {"source", "target", "images"}, path);
  FpModule s = module(field(j, "source", path), path + "/source");
  FpModule t = module(field(j, "target", path), path + "/target");
  Mat images = mat(field(j, "images", path), path + "/images", t.ambient_rank());
  if (images.cols() != s.ambient_rank()) fail(path + "/images", "need one column per source generator");
  return at(path, [&] { return Morphism(s, t, images); });
}

Ideal Reader::ideal(const json& j, const std::string& path) const { return Ideal(elem(j, path)); }

ExponentSet Reader::exponents(const json& raw, const std::string& raw_path) const {
  auto [jp, path] = resolve(raw, raw_path);
  const json& j = *jp;
  if (!j.is_object()) fail(path, "expected an exponent set object");
  if (j.contains("parity")) {
    only_keys(j, {"parity"}, path);
    std::string p = as_string(j["parity"], path + "/parity");
    if (p == "even") return ExponentSet::even();
    if (p == "odd") return ExponentSet::odd();
    fail(path + "/parity", "parity must be \"even\" or \"odd\"");
  }
  only_keys(j, {"finite", "progressions"}, path);
  ExponentSet e;
  if (j.contains("finite")) {
    const json& f = j["finite"];
    if (!f.is_array()) fail(path + "/finite", "expected an array");
    for (std::size_t i = 0; i < f.size(); ++i) e.finite.push_back(as_unsigned(f[i], path + "/finite/" + std::to_string(i)));
  }
  if (j.contains("progressions")) {
    const json& p = j["progressions"];
    if (!p.is_array()) fail(path + "/progressions", "expected an array of [start, step] pairs");
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::string ip = path + "/progressions/" + std::to_string(i);
      if (!p[i].is_array() || p[i].size() != 2) fail(ip, "expected [start, step]");
      e.progressions.push_back({as_unsigned(p[i][0], ip + "/0"), as_unsigned(p[i][1], ip + "/1")});
    }
  }
  at(path, [&] { e.validate(); });
  return e;
}

CmcSet Reader::cmc(const json& raw, const std::string& raw_path) const {
  auto [jp, path] = resolve(raw, raw_path);
  const json& j = *jp;
  if (!j.is_object()) fail(path, "expected a set object");
  auto list = [&](const char* key) {
    const json& a = j[key];
    if (!a.is_array()) fail(path + "/" + key, "expected an array");
    std::vector<Elem> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(elem(a[i], path + "/" + key + "/" + std::to_string(i)));
    return out;
  };
  if (j.contains("elements")) {
    only_keys(j, {"elements"}, path);
    return CmcSet::explicit_set(list("elements"));
  }
  if (j.contains("closure")) {
    only_keys(j, {"closure"}, path);
    return CmcSet::closure(list("closure"));
  }
  only_keys(j, {"base", "exponents"}, path);
  Elem base = elem(field(j, "base", path), path + "/base");
  ExponentSet e = exponents(field(j, "exponents", path), path + "/exponents");
  return at(path, [&] { return CmcSet::power_family(base, e); });
}

EndSummand Reader::end_summand(const json& raw, const std::string& raw_path) const {
  auto [jp, path] = resolve(raw, raw_path);
  const json& j = *jp;
  if (j.is_object() && j.contains("localize")) {
    only_keys(j, {"localize", "invert"}, path);
    FpModule base = module(j["localize"], path + "/localize");
    Elem x = elem(field(j, "invert", path), path + "/invert");
    if (x.is_zero()) fail(path + "/invert", "cannot invert zero");
    return LocModule{base, x};
  }
  return module(j, path);
}

FunctorSpec Reader::functor(const json& raw, const std::string& raw_path) const {
  auto [jp, path] = resolve(raw, raw_path);
  const json& j = *jp;
  std::string kind = as_string(field(j, "kind", path), path + "/kind");
  auto keys = [&](std::set<std::string> allowed) {
    allowed.insert("kind");
    only_keys(j, allowed, path);
  };
  auto mod = [&](const char* key) { return module(field(j, key, path), path + "/" + key); };
  if (kind == "identity") {
    keys({});
    return IdentityFunctor{};
  }
  if (kind == "hom_from") {
    keys({"module"});
    return HomFromFunctor{mod("module")};
  }
  if (kind == "tor1") {
    keys({"module"});
    return make_tor1(mod("module"));
  }
  if (kind == "ext1") {
    keys({"module"});
    return make_ext1(mod("module"));
  }
  if (kind == "coherent") {
    keys({"map"});
    return CoherentFunctor{morphism(field(j, "map", path), path + "/map")};
  }
  if (kind == "gamma" || kind == "mod_gamma") {
    keys({"ideal"});
    Ideal i = ideal(field(j, "ideal", path), path + "/ideal");
    if (kind == "gamma") return GammaFunctor{i};
    return ModGammaFunctor{i};
  }
  if (kind == "tau" || kind == "mod_tau") {
    keys({"set"});
    CmcSet s = cmc(field(j, "set", path), path + "/set");
    if (!is_cmc(s)) fail(path + "/set", "tau needs a common multiplicatively closed set, got " + s.describe());
    if (kind == "tau") return TauFunctor{s};
    return ModTauFunctor{s};
  }
  if (kind == "complex") {
    keys({"d2", "d1", "index"});
    Morphism d2 = morphism(field(j, "d2", path), path + "/d2");
    Morphism d1 = morphism(field(j, "d1", path), path + "/d1");
    int index = static_cast<int>(as_unsigned(field(j, "index", path), path + "/index"));
    return at(path, [&] { return ComplexFunctor(d2, d1, index); });
  }
  if (kind == "middle_finite") {
    if (j.contains("gamma")) {
      keys({"gamma"});
      Elem g = elem(j["gamma"], path + "/gamma");
      return at(path + "/gamma", [&] { return MiddleFiniteComplex::gamma_complex(g); });
    }
    keys({"a", "b", "c", "da", "db"});
    auto ends = [&](const char* key, std::size_t& total) {
      const json& arr = field(j, key, path);
      if (!arr.is_array()) fail(path + "/" + key, "expected an array of summands");
      std::vector<EndSummand> out;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(end_summand(arr[i], path + "/" + key + "/" + std::to_string(i)));
        total += std::visit(overloaded{[](const FpModule& m) { return m.ambient_rank(); },
                                       [](const LocModule& l) { return l.base.ambient_rank(); }},
                            out.back());
      }
      return out;
    };
    std::size_t ka = 0, kc = 0;
    auto a = ends("a", ka);
    auto c = ends("c", kc);
    FpModule b = mod("b");
    Mat da = mat(field(j, "da", path), path + "/da", b.ambient_rank());
    Mat db = mat(field(j, "db", path), path + "/db", kc);
    if (da.cols() != ka) fail(path + "/da", "da needs one column per generator of A");
    if (db.cols() != b.ambient_rank()) fail(path + "/db", "db needs one column per generator of B");
    return at(path, [&] { return MiddleFiniteComplex(a, b, c, da, db); });
  }
  if (kind == "oscillating") {
    OscillatingFunctor f;
    auto add = [&](const json& entry, const std::string& p) {
      Elem prime = elem(field(entry, "prime", p), p + "/prime");
      if (!is_irreducible(prime)) fail(p + "/prime", prime.to_string() + " is not prime");
      ExponentSet s = exponents(field(entry, "set", p), p + "/set");
      if (!f.sets.emplace(prime.canonical(), s).second) fail(p + "/prime", "prime listed twice");
    };
    if (j.contains("sets")) {
      keys({"sets"});
      const json& arr = j["sets"];
      if (!arr.is_array()) fail(path + "/sets", "expected an array");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        only_keys(arr[i], {"prime", "set"}, path + "/sets/" + std::to_string(i));
        add(arr[i], path + "/sets/" + std::to_string(i));
      }
    } else {
      keys({"prime", "set"});
      add(j, path);
    }
    return f;
  }
  fail(path + "/kind", "unknown functor kind \"" + kind + "\"");
}

Family Reader::family(const json& raw, const std::string& raw_path) const {
  auto [jp, path] = resolve(raw, raw_path);
  const json& j = *jp;
  std::string kind = as_string(field(j, "kind", path), path + "/kind");
  auto keys = [&](std::set<std::string> allowed) {
    allowed.insert("kind");
    only_keys(j, allowed, path);
  };
  auto mod = [&](const char* key) { return module(field(j, key, path), path + "/" + key); };
  auto gens = [&](const char* key, std::size_t rows) { return mat(field(j, key, path), path + "/" + key, rows); };
  Ideal i = ideal(field(j, "ideal", path), path + "/ideal");
  Family fam;
  if (kind == "quotient_powers" || kind == "layers") {
    keys({"module", "ideal"});
    FpModule m = mod("module");
    if (kind == "layers")
      fam = Layers{m, i};
    else
      fam = QuotientPowers{m, i};
  } else if (kind == "graded_layers") {
    keys({"module", "sub", "ideal"});
    FpModule m = mod("module");
    fam = GradedLayers{m, gens("sub", m.ambient_rank()), i};
  } else if (kind == "subquotient") {
    keys({"t", "u", "v", "w", "ideal"});
    FpModule t = mod("t");
    std::size_t k = t.ambient_rank();
    fam = SubquotientFamily{t, gens("u", k), gens("v", k), gens("w", k), i};
  } else if (kind == "kw_homology") {
    keys({"alpha", "beta", "l_sub", "m_sub", "n_sub", "ideal", "shift"});
    Morphism alpha = morphism(field(j, "alpha", path), path + "/alpha");
    Morphism beta = morphism(field(j, "beta", path), path + "/beta");
    KwHomology k{alpha, beta, gens("l_sub", alpha.source().ambient_rank()),
                 gens("m_sub", alpha.target().ambient_rank()), gens("n_sub", beta.target().ambient_rank()), i,
                 std::nullopt};
    if (j.contains("shift")) {
      const json& s = j["shift"];
      std::string sp = path + "/shift";
      only_keys(s, {"l1", "l2", "c"}, sp);
      std::size_t l = alpha.source().ambient_rank();
      k.shift = KwHomology::Shift{mat(field(s, "l1", sp), sp + "/l1", l), mat(field(s, "l2", sp), sp + "/l2", l),
                                  as_unsigned(field(s, "c", sp), sp + "/c")};
    }
    fam = k;
  } else {
    fail(path + "/kind", "unknown family kind \"" + kind + "\"");
  }
  at(path, [&] { validate(fam); });
  return fam;
}

// ---- writing ---------------------------------------------------------------------

json to_json(const Elem& e) {
  if (e.is_integer()) {
    const mpz_class& v = e.integer_value();
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
  }
  return e.coeffs();
}

json to_json(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return {{"rows", m.rows()}, {"cols", m.cols()}};
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(to_json(m(i, k)));
    rows.push_back(std::move(r));
  }
  return rows;
}

json to_json(const FpModule& m) { return {{"ambient", m.ambient_rank()}, {"relations", to_json(m.relations())}}; }

json to_json(const Morphism& f) {
  return {{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"images", to_json(f.images())}};
}

json to_json(const ExponentSet& e) {
  json prog = json::array();
  for (const auto& p : e.progressions) prog.push_back({p.start, p.step});
  return {{"finite", e.finite}, {"progressions", prog}};
}

json to_json(const CmcSet& s) {
  json list = json::array();
  for (const auto& e : s.elements()) list.push_back(to_json(e));
  switch (s.kind()) {
    case CmcSet::Kind::explicit_list: return {{"elements", list}};
    case CmcSet::Kind::closure: return {{"closure", list}};
    default: return {{"base", to_json(s.base())}, {"exponents", to_json(s.exponents())}};
  }
}

json to_json(const Decomposition& d) {
  json f = json::array();
  for (const auto& e : d.factors) f.push_back(to_json(e));
  return {{"rank", d.rank}, {"factors", f}};
}

json to_json(const FunctorSpec& spec) {
  json j = std::visit(
      overloaded{
          [](const IdentityFunctor&) { return json::object(); },
          [](const HomFromFunctor& h) { return json{{"module", to_json(h.m)}}; },
          [](const Tor1Functor& t) { return json{{"module", to_json(t.m)}}; },
          [](const Ext1Functor& e) { return json{{"module", to_json(e.m)}}; },
          [](const CoherentFunctor& c) { return json{{"map", to_json(c.f)}}; },
          [](const GammaFunctor& g) { return json{{"ideal", to_json(g.ideal.generator())}}; },
          [](const ModGammaFunctor& g) { return json{{"ideal", to_json(g.ideal.generator())}}; },
          [](const TauFunctor& t) { return json{{"set", to_json(t.set)}}; },
          [](const ModTauFunctor& t) { return json{{"set", to_json(t.set)}}; },
          [](const ComplexFunctor& c) {
            return json{{"d2", to_json(c.d2)}, {"d1", to_json(c.d1)}, {"index", c.index}};
          },
          [](const MiddleFiniteComplex& s) {
            auto ends = [](const std::vector<EndSummand>& parts) {
              json out = json::array();
              for (const auto& p : parts) {
                if (const auto* l = std::get_if<LocModule>(&p))
                  out.push_back({{"localize", to_json(l->base)}, {"invert", to_json(l->inverted)}});
                else
                  out.push_back(to_json(std::get<FpModule>(p)));
              }
              return out;
            };
            return json{{"a", ends(s.a())}, {"b", to_json(s.b())}, {"c", ends(s.c())},
                        {"da", to_json(s.da())}, {"db", to_json(s.db())}};
          },
          [](const OscillatingFunctor& o) {
            json sets = json::array();
            for (const auto& [p, e] : o.sets) sets.push_back({{"prime", to_json(p)}, {"set", to_json(e)}});
            return json{{"sets", sets}};
          },
      },
      spec);
  j["kind"] = kind_name(spec);
  return j;
}

json to_json(const Family& fam) {
  json j = std::visit(
      overloaded{
          [](const QuotientPowers& q) { return json{{"module", to_json(q.m)}}; },
          [](const Layers& q) { return json{{"module", to_json(q.m)}}; },
          [](const GradedLayers& g) { return json{{"module", to_json(g.m)}, {"sub", to_json(g.sub)}}; },
          [](const SubquotientFamily& s) {
            return json{{"t", to_json(s.t)}, {"u", to_json(s.u)}, {"v", to_json(s.v)}, {"w", to_json(s.w)}};
          },
          [](const KwHomology& k) {
            json out{{"alpha", to_json(k.alpha)}, {"beta", to_json(k.beta)}, {"l_sub", to_json(k.l_sub)},
                     {"m_sub", to_json(k.m_sub)}, {"n_sub", to_json(k.n_sub)}};
            if (k.shift)
              out["shift"] = {{"l1", to_json(k.shift->l1)}, {"l2", to_json(k.shift->l2)}, {"c", k.shift->c}};
            return out;
          },
      },
      fam);
  j["kind"] = family_kind(fam);
  j["ideal"] = to_json(family_ideal(fam).generator());
  return j;
}

// ---- scenarios --------------------------------------------------------------------

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) fail("", "a scenario must be a JSON object");
  only_keys(doc, {"name", "description", "backend", "definitions", "family", "functor", "depth_ideal", "horizon",
                  "window", "expect"},
            "");
  Scenario s;
  if (doc.contains("name")) s.name = as_string(doc["name"], "/name");
  s.dom = parse_backend(field(doc, "backend", ""));
  if (doc.contains("definitions")) s.definitions = doc["definitions"];
  Reader r(s.dom, s.definitions);
  s.family = r.family(field(doc, "family", ""), "/family");
  s.functor = doc.contains("functor") ? r.functor(doc["functor"], "/functor") : FunctorSpec{IdentityFunctor{}};
  if (doc.contains("depth_ideal")) s.depth_ideal = r.ideal(doc["depth_ideal"], "/depth_ideal");
  if (doc.contains("horizon")) s.horizon = as_unsigned(doc["horizon"], "/horizon");
  if (doc.contains("window")) s.window = as_unsigned(doc["window"], "/window");
  if (s.window < 2) fail("/window", "window must be at least 2");
  if (s.horizon < s.window) fail("/horizon", "horizon must be at least the window");
  if (doc.contains("expect")) {
    const json& e = doc["expect"];
    only_keys(e, {"ass", "depth", "n0_max", "artin_rees_max"}, "/expect");
    Expectation x;
    for (const char* key : {"ass", "depth"}) {
      if (!e.contains(key)) continue;
      std::string v = as_string(e[key], std::string("/expect/") + key);
      if (!valid_verdict(v)) fail(std::string("/expect/") + key, "unknown verdict \"" + v + "\"");
      (std::string(key) == "ass" ? x.ass : x.depth) = v;
    }
    if (x.depth && !s.depth_ideal) fail("/expect/depth", "a depth expectation needs \"depth_ideal\"");
    if (e.contains("n0_max")) x.n0_max = as_unsigned(e["n0_max"], "/expect/n0_max");
    if (e.contains("artin_rees_max")) x.artin_rees_max = as_unsigned(e["artin_rees_max"], "/expect/artin_rees_max");
    s.expect = x;
  }
  return s;
}

json to_json(const Scenario& s) {
  json j{{"name", s.name},
         {"backend", backend_name(s.dom)},
         {"family", to_json(s.family)},
         {"functor", to_json(s.functor)},
         {"horizon", s.horizon},
         {"window", s.window}};
  if (s.depth_ideal) j["depth_ideal"] = to_json(s.depth_ideal->generator());
  if (s.expect) {
    json e = json::object();
    if (s.expect->ass) e["ass"] = *s.expect->ass;
    if (s.expect->depth) e["depth"] = *s.expect->depth;
    if (s.expect->n0_max) e["n0_max"] = *s.expect->n0_max;
    if (s.expect->artin_rees_max) e["artin_rees_max"] = *s.expect->artin_rees_max;
    j["expect"] = e;
  }
  return j;
}

ScenarioResult run_scenario(const Scenario& s, bool parallel) {
  ScenarioResult out;
  auto obs = parallel ? observe_parallel(s.family, s.functor, s.horizon, s.depth_ideal)
                      : observe_serial(s.family, s.functor, s.horizon, s.depth_ideal);
  for (const auto& o : obs) out.ann_monotone = out.ann_monotone && o.ann_monotone;
  if (s.depth_ideal) out.depth = summarize(obs, ScanKind::depth, s.window);
  out.ass = summarize(std::move(obs), ScanKind::ass, s.window);
  ArtinReesInstance inst = artin_rees_instance(s.family);
  out.artin_rees = artin_rees_probe(inst.beta, inst.n_sub, family_ideal(s.family), s.horizon);

  if (!s.expect) return out;
  const Expectation& e = *s.expect;
  auto check = [&](const char* what, const std::optional<std::string>& want, const StabilizationReport& r) {
    if (want && *want != r.verdict())
      out.mismatches.push_back(std::string(what) + " verdict " + r.verdict() + ", expected " + *want);
    if (e.n0_max && r.status == Status::stable && *r.n0 > *e.n0_max)
      out.mismatches.push_back(std::string(what) + " stabilizes at n0 = " + std::to_string(*r.n0) + " > " +
                               std::to_string(*e.n0_max));
  };
  check("ass", e.ass, out.ass);
  if (out.depth) check("depth", e.depth, *out.depth);
  if (e.artin_rees_max && (!out.artin_rees || *out.artin_rees > *e.artin_rees_max))
    out.mismatches.push_back("Artin-Rees exponent " +
                             (out.artin_rees ? std::to_string(*out.artin_rees) : std::string("not found")) +
                             ", expected at most " + std::to_string(*e.artin_rees_max));
  if (!out.ann_monotone) out.mismatches.push_back("ann(M) is not contained in ann(F(M)) at some index");
  return out;
}

namespace {

json section(const StabilizationReport& r) {
  json seq = json::array();
  for (const auto& o : r.observations) {
    if (r.kind == ScanKind::ass)
      seq.push_back(o.ass.to_strings());
    else
      seq.push_back(to_string(*o.depth));
  }
  return {{"verdict", r.verdict()},
          {"n0", r.n0 ? json(*r.n0) : json(nullptr)},
          {"period", r.status == Status::oscillating ? json(r.period) : json(nullptr)},
          {"window", r.window},
          {"sequence", seq}};
}

}  // namespace

json report_json(const Scenario& s, const ScenarioResult& r) {
  json obs = json::array();
  for (const auto& o : r.ass.observations) {
    json f = json::array();
    for (const auto& e : o.value.factors) f.push_back(e.to_string());
    obs.push_back({{"n", o.n},
                   {"rank", o.value.rank},
                   {"invariant_factors", f},
                   {"ass", o.ass.to_strings()},
                   {"depth", o.depth ? json(to_string(*o.depth)) : json(nullptr)}});
  }
  return {{"scenario", s.name},
          {"backend", backend_name(s.dom)},
          {"family", family_kind(s.family)},
          {"functor", kind_name(s.functor)},
          {"horizon", s.horizon},
          {"window", s.window},
          {"ass", section(r.ass)},
          {"depth", r.depth ? section(*r.depth) : json(nullptr)},
          {"artin_rees", r.artin_rees ? json(*r.artin_rees) : json(nullptr)},
          {"ann_monotone", r.ann_monotone},
          {"expectation",
           {{"present", s.expect.has_value()}, {"matched", r.mismatches.empty()}, {"mismatches", r.mismatches}}},
          {"observations", obs}};
}

std::string report_csv(const ScenarioResult& r) { return to_csv(r.ass); }

}  // namespace stab::io
