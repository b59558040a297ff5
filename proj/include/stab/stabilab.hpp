#pragma once

// Ideal-power families, scans of Ass and depth along them, and detection of
// eventual constancy.

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stab/functors.hpp"

namespace stab {

/// M / I^n M.
struct QuotientPowers {
  FpModule m;
  Ideal ideal;
};
/// I^(n-1) M / I^n M.
struct Layers {
  FpModule m;
  Ideal ideal;
};
/// I^n M / I^n M' with M' given by generators in M's ambient.
struct GradedLayers {
  FpModule m;
  Mat sub;
  Ideal ideal;
};
/// (U + I^n V) / I^n W inside T; requires W inside V.
struct SubquotientFamily {
  FpModule t;
  Mat u, v, w;
  Ideal ideal;
};
/// Homology of L / I^n L' -> M / I^n M' -> N / I^n N' at the middle. With a
/// shift the source becomes (L1 + I^(n-c) L2) / I^n L', which requires
/// I^c L' inside L2.
struct KwHomology {
  struct Shift {
    Mat l1, l2;
    unsigned c = 0;
  };
  Morphism alpha, beta;
  Mat l_sub, m_sub, n_sub;
  Ideal ideal;
  std::optional<Shift> shift;
};

using Family = std::variant<QuotientPowers, Layers, GradedLayers, SubquotientFamily, KwHomology>;

/// Throws std::invalid_argument on parameter violations.
void validate(const Family& fam);
unsigned n_min(const Family& fam);
/// The family member at n >= n_min(fam); throws std::invalid_argument below it.
FpModule generate(const Family& fam, unsigned n);
std::string family_kind(const Family& fam);
const Ideal& family_ideal(const Family& fam);

enum class Status { stable, not_stable, oscillating };

struct Observation {
  unsigned n = 0;
  Decomposition value;  // of F(family member)
  AssSet ass;
  std::optional<Depth> depth;
  bool ann_monotone = true;  // ann(member) inside ann(F(member))
};

enum class ScanKind { ass, depth };

struct StabilizationReport {
  ScanKind kind = ScanKind::ass;
  std::vector<Observation> observations;
  unsigned window = 0;
  Status status = Status::not_stable;
  std::optional<unsigned> n0;  // first index of the constant (or periodic) tail
  unsigned period = 0;         // for oscillating

  /// "stable", "not-stable-within-horizon" or "oscillating-with-period-k".
  std::string verdict() const;
};

struct ScanOptions {
  unsigned horizon = 50;
  unsigned window = 10;
  std::optional<Ideal> depth_ideal;  // computes depths when present
  bool parallel = true;
};

/// Evaluates F on every member n_min..horizon; the kind only selects which
/// sequence the detection runs on. Throws std::invalid_argument unless
/// horizon >= window >= 2 and depth scans carry a depth ideal.
StabilizationReport scan(const Family& fam, const FunctorSpec& f, ScanKind kind, const ScanOptions& opt);
StabilizationReport scan_ass(const Family& fam, const FunctorSpec& f, unsigned horizon, unsigned window);
StabilizationReport scan_depth(const Ideal& j, const Family& fam, const FunctorSpec& f, unsigned horizon,
                               unsigned window);

/// Detection over precomputed observations; depth scans need depths.
StabilizationReport summarize(std::vector<Observation> observations, ScanKind kind, unsigned window);

/// Single-threaded evaluation of the same observations, kept as the reference
/// for the OpenMP path.
std::vector<Observation> observe_serial(const Family& fam, const FunctorSpec& f, unsigned horizon,
                                        const std::optional<Ideal>& depth_ideal);
std::vector<Observation> observe_parallel(const Family& fam, const FunctorSpec& f, unsigned horizon,
                                          const std::optional<Ideal>& depth_ideal);

/// Threads used by observe_parallel: the OpenMP maximum, capped by STAB_THREADS.
int scan_threads();

struct Detection {
  Status status = Status::not_stable;
  std::optional<std::size_t> start;  // index into the sequence
  unsigned period = 0;
};
/// Stable when the constant tail has length >= window; otherwise oscillating
/// with the least period k >= 2 whose periodic tail has length
/// >= max(window, 2k).
template <class T>
Detection detect(const std::vector<T>& v, unsigned window) {
  Detection d;
  if (v.empty()) return d;
  std::size_t s = v.size() - 1;
  while (s > 0 && v[s - 1] == v[s]) --s;
  if (v.size() - s >= window) {
    d.status = Status::stable;
    d.start = s;
    return d;
  }
  for (std::size_t k = 2; 2 * k <= v.size(); ++k) {
    std::size_t t = v.size() - k;
    while (t > 0 && v[t - 1] == v[t - 1 + k]) --t;
    std::size_t len = v.size() - t;
    if (len >= std::max<std::size_t>(window, 2 * k)) {
      d.status = Status::oscillating;
      d.start = t;
      d.period = static_cast<unsigned>(k);
      return d;
    }
  }
  return d;
}

/// Least d <= horizon with beta(M) cap I^n N' = I^(n-d) (beta(M) cap I^d N')
/// for every n in [d, horizon].
std::optional<unsigned> artin_rees_probe(const Morphism& beta, const Mat& n_sub, const Ideal& ideal,
                                         unsigned horizon);

struct ArtinReesInstance {
  Morphism beta;
  Mat n_sub;
};
/// The inclusion whose Artin-Rees exponent governs the family: identity for
/// quotients and layers, M' into M for graded layers, W into V for
/// subquotients, and the family's own beta into N' for homology.
ArtinReesInstance artin_rees_instance(const Family& fam);

/// Rows "n,invariant_factors,ass,depth".
std::string to_csv(const StabilizationReport& r);

}  // namespace stab
