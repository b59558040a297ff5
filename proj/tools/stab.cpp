// Command-line front end: scenario runs, one-shot computations, the curated
// suite and randomized functor-law checks.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "stab/serialize.hpp"

namespace fs = std::filesystem;
using namespace stab;
using io::json;

namespace {

enum Exit { ok = 0, invalid = 1, domain = 2, mismatch = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Parses a document and reports errors anchored at a line of `label`.
struct Loaded {
  io::Document doc;
  std::string label;
};

std::optional<Loaded> load(const std::string& text, const std::string& label) {
  try {
    return Loaded{io::parse_document(text), label};
  } catch (const io::SyntaxError& e) {
    std::cerr << label << ":" << e.line << ":" << e.column << ": error: " << e.what() << "\n";
    return std::nullopt;
  }
}

void report_spec_error(const Loaded& l, const io::SpecError& e) {
  std::cerr << l.label << ":" << l.doc.line_of(e.pointer) << ": error: at " << (e.pointer.empty() ? "/" : e.pointer)
            << ": " << e.what() << "\n";
}

std::string section_summary(const StabilizationReport& r) {
  std::string s = r.verdict();
  if (r.n0) s += " (n0 = " + std::to_string(*r.n0) + ")";
  return s;
}

struct RunOptions {
  std::optional<unsigned> horizon, window;
  std::string out_dir = ".";
  bool serial = false;
  bool write_reports = true;
};

int run_file(const std::string& path, const RunOptions& opt, std::ostream& log) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return invalid;
  }
  auto loaded = load(text, path);
  if (!loaded) return invalid;
  io::Scenario s;
  try {
    s = io::parse_scenario(loaded->doc.value);
  } catch (const io::SpecError& e) {
    report_spec_error(*loaded, e);
    return invalid;
  }
  if (opt.horizon) s.horizon = *opt.horizon;
  if (opt.window) s.window = *opt.window;
  if (s.window < 2 || s.horizon < s.window) {
    std::cerr << path << ": error: need horizon >= window >= 2\n";
    return invalid;
  }
  if (s.name.empty()) s.name = fs::path(path).stem().string();

  io::ScenarioResult r;
  try {
    r = io::run_scenario(s, !opt.serial);
  } catch (const DomainViolation& e) {
    std::cerr << path << ": domain violation: " << e.what() << "\n";
    return domain;
  } catch (const std::exception& e) {
    std::cerr << path << ": error: " << e.what() << "\n";
    return invalid;
  }

  if (opt.write_reports) {
    fs::create_directories(opt.out_dir);
    std::ofstream(fs::path(opt.out_dir) / (s.name + ".csv"), std::ios::binary) << io::report_csv(r);
    std::ofstream(fs::path(opt.out_dir) / (s.name + ".json"), std::ios::binary)
        << io::report_json(s, r).dump(2) << "\n";
  }
  log << s.name << ": ass " << section_summary(r.ass);
  if (r.depth) log << ", depth " << section_summary(*r.depth);
  log << ", artin-rees " << (r.artin_rees ? std::to_string(*r.artin_rees) : std::string("none")) << "\n";
  for (const auto& m : r.mismatches) log << "  mismatch: " << m << "\n";
  return r.mismatches.empty() ? ok : mismatch;
}

// ---- compute -------------------------------------------------------------------------

json matrix_strings(const Mat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(io::to_json(m(i, k)));
    rows.push_back(r);
  }
  return rows;
}

json compute(const std::string& sub, const json& args) {
  // Arguments are either the bare payload over Z, or an object carrying
  // "backend" (and optionally "definitions") next to the named inputs.
  Domain dom = Domain::integers();
  json defs = json::object();
  if (args.is_object() && args.contains("backend")) dom = io::parse_backend(args["backend"]);
  if (args.is_object() && args.contains("definitions")) defs = args["definitions"];
  io::Reader r(dom, defs);
  auto arg = [&](const char* key) -> const json& {
    if (!args.is_object() || !args.contains(key)) throw io::SpecError("", std::string("missing key \"") + key + "\"");
    return args[key];
  };
  auto payload = [&](const char* key) -> std::pair<const json&, std::string> {
    if (args.is_object() && args.contains(key)) return {args[key], std::string("/") + key};
    return {args, ""};
  };
  if (sub == "snf") {
    auto [j, p] = payload("matrix");
    SnfResult s = snf(r.mat(j, p));
    json diag = json::array();
    for (const auto& e : s.diag()) diag.push_back(io::to_json(e));
    return {{"diagonal", diag}, {"u", matrix_strings(s.u)}, {"v", matrix_strings(s.v)}};
  }
  if (sub == "hnf") {
    auto [j, p] = payload("matrix");
    HnfResult h = hnf(r.mat(j, p));
    return {{"h", matrix_strings(h.h)}, {"u", matrix_strings(h.u)}, {"rank", h.rank()}};
  }
  if (sub == "ass") {
    auto [j, p] = payload("module");
    return ass(r.module(j, p)).to_strings();
  }
  if (sub == "depth") {
    Depth d = depth(r.ideal(arg("ideal"), "/ideal"), r.module(arg("module"), "/module"));
    return to_string(d);
  }
  if (sub == "hom") {
    HomModule h(r.module(arg("source"), "/source"), r.module(arg("target"), "/target"));
    return io::to_json(decompose(h.module()));
  }
  if (sub == "eval") {
    FpModule v = eval(r.functor(arg("functor"), "/functor"), r.module(arg("module"), "/module"));
    return io::to_json(decompose(v));
  }
  throw std::invalid_argument("unknown compute subcommand " + sub);
}

int run_compute(const std::string& sub, const std::string& text) {
  auto loaded = load(text, "<args>");
  if (!loaded) return invalid;
  try {
    std::cout << compute(sub, loaded->doc.value).dump() << "\n";
    return ok;
  } catch (const io::SpecError& e) {
    report_spec_error(*loaded, e);
    return invalid;
  } catch (const DomainViolation& e) {
    std::cerr << "domain violation: " << e.what() << "\n";
    return domain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return invalid;
  }
}

// ---- suite ---------------------------------------------------------------------------

int run_suite(const std::string& dir, const RunOptions& opt) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir, ec))
    if (e.path().extension() == ".json") files.push_back(e.path());
  if (ec || files.empty()) {
    std::cerr << "error: no scenarios in " << dir << "\n";
    return invalid;
  }
  std::sort(files.begin(), files.end());
  int worst = ok;
  std::size_t passed = 0;
  for (const auto& f : files) {
    std::ostringstream log;
    int code = run_file(f.string(), opt, log);
    std::cout << (code == ok ? "PASS " : "FAIL ") << log.str();
    if (code == ok) ++passed;
    // Report the most basic failure: invalid input, then domain errors, then mismatches.
    if (code != ok && (worst == ok || code < worst)) worst = code;
  }
  std::cout << passed << "/" << files.size() << " scenarios matched\n";
  return worst;
}

// ---- randomized functor laws ------------------------------------------------------------

FpModule random_module(const Domain& dom, std::mt19937_64& rng, bool torsion) {
  std::vector<Elem> f;
  for (int i = static_cast<int>(rng() % 3); i > 0; --i) {
    Elem e = dom.backend() == Backend::integers ? Elem(static_cast<long>(2 + rng() % 30)) : [&] {
      std::vector<std::uint64_t> c(2 + rng() % 2);
      for (auto& x : c) x = rng() % dom.characteristic();
      c.back() = 1;
      return Elem::poly(dom.characteristic(), c);
    }();
    f.push_back(e);
  }
  return FpModule::from_decomposition(dom, torsion ? 0 : rng() % 2, f);
}

Morphism random_hom(const FpModule& a, const FpModule& b, std::mt19937_64& rng) {
  HomModule h(a, b);
  Mat c(a.domain(), h.module().ambient_rank(), 1);
  for (std::size_t i = 0; i < c.rows(); ++i) c(i, 0) = a.domain().constant(static_cast<long>(rng() % 7) - 3);
  return h.realize(c);
}

int run_laws(const std::string& path, std::uint64_t seed, unsigned trials) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return invalid;
  }
  auto loaded = load(text, path);
  if (!loaded) return invalid;
  io::Scenario s;
  try {
    s = io::parse_scenario(loaded->doc.value);
  } catch (const io::SpecError& e) {
    report_spec_error(*loaded, e);
    return invalid;
  }
  bool torsion = std::holds_alternative<MiddleFiniteComplex>(s.functor) &&
                 std::get<MiddleFiniteComplex>(s.functor).has_localized_end();
  std::mt19937_64 rng(seed);
  unsigned failures = 0;
  for (unsigned t = 0; t < trials; ++t) {
    FpModule a = random_module(s.dom, rng, torsion), b = random_module(s.dom, rng, torsion),
             c = random_module(s.dom, rng, torsion);
    Morphism g = random_hom(a, b, rng), g2 = random_hom(a, b, rng), h = random_hom(b, c, rng);
    bool good = eval_mor(s.functor, Morphism::identity(a)).equals(Morphism::identity(eval(s.functor, a))) &&
                eval_mor(s.functor, compose(h, g)).equals(compose(eval_mor(s.functor, h), eval_mor(s.functor, g))) &&
                eval_mor(s.functor, g + g2).equals(eval_mor(s.functor, g) + eval_mor(s.functor, g2)) &&
                ann(eval(s.functor, a)).contains(ann(a).generator());
    if (!good) {
      ++failures;
      std::cout << "law failure at trial " << t << ": " << a.describe() << " -> " << b.describe() << " -> "
                << c.describe() << "\n";
    }
  }
  std::cout << kind_name(s.functor) << ": " << trials - failures << "/" << trials << " trials satisfy the functor laws"
            << " (seed " << seed << ")\n";
  return failures == 0 ? ok : mismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ass and depth stabilization experiments over Euclidean domains"};
  app.require_subcommand(1);

  RunOptions opt;
  unsigned horizon = 0, window = 0;
  std::string file;
  auto* run = app.add_subcommand("run", "Run one scenario file and write CSV and JSON reports");
  run->add_option("file", file, "Scenario JSON")->required();
  run->add_option("--horizon", horizon, "Last index to scan (overrides the file)");
  run->add_option("--window", window, "Constant-tail length required for stability (overrides the file)");
  run->add_option("--out", opt.out_dir, "Report directory");
  run->add_flag("--serial", opt.serial, "Evaluate indices on one thread");

  std::string sub, args;
  auto* comp = app.add_subcommand("compute", "One-shot computation printed as JSON");
  comp->add_option("sub", sub, "snf | hnf | ass | depth | hom | eval")
      ->required()
      ->check(CLI::IsMember({"snf", "hnf", "ass", "depth", "hom", "eval"}));
  comp->add_option("args", args, "JSON arguments")->required();

  std::string dir = STAB_DEFAULT_SUITE;
  auto* suite = app.add_subcommand("suite", "Run every scenario in a directory");
  suite->add_option("--dir", dir, "Scenario directory");
  suite->add_option("--out", opt.out_dir, "Report directory");
  suite->add_flag("--serial", opt.serial, "Evaluate indices on one thread");

  std::uint64_t seed = 1;
  unsigned trials = 100;
  auto* laws = app.add_subcommand("laws", "Check functor laws of a scenario's functor on random modules");
  laws->add_option("file", file, "Scenario JSON")->required();
  laws->add_option("--seed", seed, "Random seed");
  laws->add_option("--trials", trials, "Number of random triples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : invalid;
  }
  if (horizon) opt.horizon = horizon;
  if (window) opt.window = window;

  if (*run) return run_file(file, opt, std::cout);
  if (*comp) return run_compute(sub, args);
  if (*suite) return run_suite(dir, opt);
  if (*laws) return run_laws(file, seed, trials);
  return invalid;
}
