#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "sk/infofield.hpp"
#include "sk/kernels.hpp"

namespace sk {

/// The four sparse-kernel symbols of the design alphabet, in precedence
/// order (spatial kinds first).
enum class Sk { GC, DW, PW, PWG };

inline constexpr std::array<Sk, 4> kAlphabet{Sk::GC, Sk::DW, Sk::PW, Sk::PWG};
inline constexpr int kMaxDesignLength = 6;

using Sequence = std::vector<Sk>;

inline const char* symbol(Sk s) {
  switch (s) {
    case Sk::GC: return "GC";
    case Sk::DW: return "DW";
    case Sk::PW: return "PW";
    case Sk::PWG: return "PWG";
  }
  return "?";
}

inline bool is_grouped(Sk s) { return s == Sk::GC || s == Sk::PWG; }
inline bool is_pointwise(Sk s) { return s == Sk::PW || s == Sk::PWG; }

inline std::string to_string(std::span<const Sk> seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += "+";
    out += symbol(seq[i]);
  }
  return out;
}

/// Parses "gc+pwg", "PW+DW+PW", ... (case-insensitive).
inline Sequence parse_sequence(const std::string& text) {
  Sequence out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('+', pos);
    if (end == std::string::npos) end = text.size();
    std::string tok = text.substr(pos, end - pos);
    std::transform(tok.begin(), tok.end(), tok.begin(), [](unsigned char c) { return std::toupper(c); });
    if (tok == "GC") out.push_back(Sk::GC);
    else if (tok == "DW") out.push_back(Sk::DW);
    else if (tok == "PW") out.push_back(Sk::PW);
    else if (tok == "PWG") out.push_back(Sk::PWG);
    else throw ValidationError("unknown kernel symbol '" + tok + "' in '" + text + "'");
    pos = end + 1;
  }
  return out;
}

/// True iff the whole sequence is some strict prefix tiled two or more times,
/// i.e. a full match of (.+?)\1+.
template <typename T>
bool is_repeated(std::span<const T> seq) {
  const std::size_t n = seq.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool tiles = true;
    for (std::size_t i = d; i < n && tiles; ++i) tiles = seq[i] == seq[i - d];
    if (tiles) return true;
  }
  return false;
}

inline bool is_repeated(const Sequence& seq) { return is_repeated(std::span<const Sk>(seq)); }

struct SequenceEnumeration {
  std::vector<Sequence> kept;
  count_t raw = 0;
  count_t repeated = 0;
};

/// All sequences of length 1..max_length over the alphabet, shortest first and
/// lexical within a length, with repeated patterns removed.
inline SequenceEnumeration enumerate_sequences(int max_length) {
  if (max_length < 1 || max_length > kMaxDesignLength)
    throw ValidationError("max length must be in [1, " + std::to_string(kMaxDesignLength) + "]");
  SequenceEnumeration out;
  for (int len = 1; len <= max_length; ++len) {
    std::vector<int> digits(len, 0);
    while (true) {
      Sequence seq(len);
      for (int i = 0; i < len; ++i) seq[i] = kAlphabet[digits[i]];
      ++out.raw;
      if (is_repeated(seq)) ++out.repeated;
      else out.kept.push_back(std::move(seq));
      int pos = len - 1;
      while (pos >= 0 && ++digits[pos] == static_cast<int>(kAlphabet.size())) digits[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return out;
}

struct SearchConfig {
  int max_length = kMaxDesignLength;
  count_t reference_C = 64;
  count_t reference_F = 64;
  int spatial_k = 3;
  bool enable_bottleneck_variants = true;
  bool enable_domination_filter = true;
  // Base channel counts of the domination grid; F = alpha * C at each point.
  std::vector<count_t> domination_grid{16, 32, 64};
  int jobs = 1;

  Rational alpha() const { return Rational(reference_F, reference_C); }

  void validate() const {
    if (max_length < 1 || max_length > kMaxDesignLength)
      throw ValidationError("max length must be in [1, " + std::to_string(kMaxDesignLength) + "]");
    if (reference_C < 1 || reference_F < 1) throw ValidationError("reference channel counts must be positive");
    if (spatial_k < 2) throw ValidationError("reference spatial kernel must be at least 2");
    if (jobs < 1) throw ValidationError("jobs must be >= 1");
  }
};

inline constexpr count_t kBottleneckRatio = 4;

/// Per-layer widths C -> ... -> F. Plain designs keep the input width until
/// the last layer; bottleneck designs run every intermediate at K = F/4 and
/// need pointwise reduce/restore layers at both ends. Returns nullopt when
/// the plan is illegal (including a depthwise layer asked to change width).
inline std::optional<std::vector<count_t>> channel_plan(std::span<const Sk> seq, count_t C, count_t F,
                                                        bool bottleneck) {
  const std::size_t n = seq.size();
  if (n == 0) return std::nullopt;
  std::vector<count_t> w(n + 1, C);
  w[n] = F;
  if (bottleneck) {
    if (n < 2 || !is_pointwise(seq.front()) || !is_pointwise(seq.back())) return std::nullopt;
    if (F % kBottleneckRatio != 0) return std::nullopt;
    for (std::size_t i = 1; i < n; ++i) w[i] = F / kBottleneckRatio;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (seq[i] == Sk::DW && w[i] != w[i + 1]) return std::nullopt;
  return w;
}

/// Legal group numbers for one symbol between widths cin and cout; {1} for the
/// ungrouped kinds.
inline std::vector<int> group_options(Sk s, count_t cin, count_t cout) {
  std::vector<int> out;
  if (s == Sk::GC) {
    for (count_t m = 2; m <= cin - 1; ++m)
      if (cin % m == 0 && cout % m == 0) out.push_back(static_cast<int>(m));
  } else if (s == Sk::PWG) {
    for (count_t n = 2; n <= cin; ++n)
      if (cin % n == 0 && cout % n == 0) out.push_back(static_cast<int>(n));
  } else {
    out.push_back(1);
  }
  return out;
}

inline KernelKind make_kind(Sk s, int group, int k) {
  switch (s) {
    case Sk::GC: return KernelKind::group_conv(group, k);
    case Sk::DW: return KernelKind::depthwise(k);
    case Sk::PW: return KernelKind::pointwise();
    case Sk::PWG: return KernelKind::pointwise_group(group);
  }
  throw ValidationError("unknown symbol");
}

struct DesignCandidate {
  Sequence sequence;
  std::vector<int> groups;  // per kernel; 1 for ungrouped kinds
  bool bottleneck = false;
  std::vector<count_t> widths;  // widths[i] -> widths[i+1] is layer i
  FieldVerdict verdict;

  std::vector<LayerSpec> layers(int k = 3) const {
    std::vector<LayerSpec> out;
    for (std::size_t i = 0; i < sequence.size(); ++i)
      out.emplace_back(make_kind(sequence[i], groups[i], k), widths[i], widths[i + 1]);
    return out;
  }

  count_t params(int k = 3) const {
    count_t total = 0;
    for (const auto& l : layers(k)) total += param_count(l);
    return total;
  }

  std::string describe() const {
    std::string s;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
      if (i) s += "+";
      s += symbol(sequence[i]);
      if (is_grouped(sequence[i])) s += "(" + std::to_string(groups[i]) + ")";
    }
    if (bottleneck) s += " [bottleneck K=" + std::to_string(widths[1]) + "]";
    return s;
  }
};

/// Every (plan, group assignment) for the sequence, each classified. Meant
/// for small inputs; run_search walks the same space with prefix pruning.
inline std::vector<DesignCandidate> concretize(std::span<const Sk> seq, const SearchConfig& cfg) {
  std::vector<DesignCandidate> out;
  const InfoField reference = InfoField::standard_reference(cfg.spatial_k, cfg.spatial_k);
  for (bool bottleneck : {false, true}) {
    if (bottleneck && !cfg.enable_bottleneck_variants) continue;
    auto plan = channel_plan(seq, cfg.reference_C, cfg.reference_F, bottleneck);
    if (!plan) continue;
    std::vector<std::vector<int>> opts;
    for (std::size_t i = 0; i < seq.size(); ++i) opts.push_back(group_options(seq[i], (*plan)[i], (*plan)[i + 1]));
    if (std::any_of(opts.begin(), opts.end(), [](const auto& o) { return o.empty(); })) continue;
    std::vector<std::size_t> idx(seq.size(), 0);
    while (true) {
      DesignCandidate c{Sequence(seq.begin(), seq.end()), {}, bottleneck, *plan, {}};
      for (std::size_t i = 0; i < seq.size(); ++i) c.groups.push_back(opts[i][idx[i]]);
      auto layers = c.layers(cfg.spatial_k);
      c.verdict = classify(layers, cfg.reference_C, reference);
      out.push_back(std::move(c));
      bool done = true;
      for (std::size_t pos = seq.size(); pos-- > 0;) {
        if (++idx[pos] < opts[pos].size()) {
          done = false;
          break;
        }
        idx[pos] = 0;
      }
      if (done) break;
    }
  }
  return out;
}

/// Candidate-level counters; each pruned prefix is charged with every full
/// assignment below it, so the counts match exhaustive enumeration.
struct CandidateCounts {
  count_t examined = 0;
  count_t valid = 0;
  count_t no_growth = 0;
  count_t early_full = 0;
  count_t spatial_mismatch = 0;
  count_t insufficient = 0;

  void charge(FieldVerdict::Kind k, count_t n) {
    switch (k) {
      case FieldVerdict::Kind::Valid: valid += n; break;
      case FieldVerdict::Kind::InferiorNoGrowth: no_growth += n; break;
      case FieldVerdict::Kind::InferiorEarlyFull: early_full += n; break;
      case FieldVerdict::Kind::SpatialMismatch: spatial_mismatch += n; break;
      case FieldVerdict::Kind::InsufficientField: insufficient += n; break;
    }
  }

  CandidateCounts& operator+=(const CandidateCounts& o) {
    examined += o.examined;
    valid += o.valid;
    no_growth += o.no_growth;
    early_full += o.early_full;
    spatial_mismatch += o.spatial_mismatch;
    insufficient += o.insufficient;
    return *this;
  }
  friend bool operator==(const CandidateCounts&, const CandidateCounts&) = default;
};

struct Witness {
  Sequence sequence;
  std::vector<int> groups;
  bool bottleneck = false;
  std::vector<count_t> widths;
  count_t params = 0;

  DesignCandidate candidate() const {
    return {sequence, groups, bottleneck, widths, FieldVerdict{FieldVerdict::Kind::Valid, std::nullopt, {}}};
  }
};

namespace detail {

template <typename OnValid>
void walk_assignments(std::span<const Sk> seq, const std::vector<count_t>& widths, int k, count_t C,
                      CandidateCounts& counts, OnValid&& on_valid) {
  const std::size_t n = seq.size();
  const InfoField reference = InfoField::standard_reference(k, k);
  const count_t F = widths[n];
  std::vector<std::vector<int>> opts(n);
  for (std::size_t i = 0; i < n; ++i) opts[i] = group_options(seq[i], widths[i], widths[i + 1]);
  std::vector<count_t> below(n + 1, 1);  // full assignments under a prefix of length i
  for (std::size_t i = n; i-- > 0;) below[i] = below[i + 1] * static_cast<count_t>(opts[i].size());
  counts.examined += below[0];
  if (below[0] == 0) return;

  std::vector<int> groups(n, 1);
  std::function<void(std::size_t, const InfoField&, count_t)> go = [&](std::size_t i, const InfoField& f,
                                                                        count_t params) {
    for (int g : opts[i]) {
      LayerSpec layer(make_kind(seq[i], g, k), widths[i], widths[i + 1]);
      groups[i] = g;
      auto step = early_stop_step(f, layer, C, F, reference, i + 1 == n);
      if (step.stop) {
        counts.charge(*step.stop, below[i + 1]);
        continue;
      }
      const count_t p = params + param_count(layer);
      if (i + 1 == n) {
        auto v = final_verdict(step.field, reference);
        counts.charge(v.kind, 1);
        if (v.valid()) on_valid(groups, p);
      } else {
        go(i + 1, step.field, p);
      }
    }
  };
  go(0, InfoField::initial(C), 0);
}

}  // namespace detail

/// Cheapest Valid assignment of the sequence at (C, F), or nullopt.
inline std::optional<count_t> min_valid_params(std::span<const Sk> seq, bool bottleneck, count_t C, count_t F,
                                               int k = 3) {
  auto plan = channel_plan(seq, C, F, bottleneck);
  if (!plan) return std::nullopt;
  std::optional<count_t> best;
  CandidateCounts scratch;
  detail::walk_assignments(seq, *plan, k, C, scratch, [&](const std::vector<int>&, count_t p) {
    if (!best || p < *best) best = p;
  });
  return best;
}

/// Lexical order over the precedence GC < DW < PW < PWG.
inline bool precedes(std::span<const Sk> a, std::span<const Sk> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline Sequence sorted_multiset(std::span<const Sk> seq) {
  Sequence m(seq.begin(), seq.end());
  std::sort(m.begin(), m.end());
  return m;
}

/// Group-number-abstracted class of surviving candidates sharing a kernel
/// multiset and bottleneck flag.
struct DesignFamily {
  Sequence canonical_sequence;
  bool bottleneck = false;
  std::vector<Witness> witnesses;  // all Valid assignments, every ordering
  count_t min_params = 0;          // at the reference (C, F)
  Witness best;                    // cheapest witness of the canonical ordering
  std::vector<FieldTraceEntry> audit;

  Sequence multiset() const { return sorted_multiset(canonical_sequence); }
  std::size_t length() const { return canonical_sequence.size(); }

  std::string name() const { return to_string(canonical_sequence) + (bottleneck ? " (bottleneck)" : ""); }

  /// Every kernel grows the field or changes the width, and the final field
  /// equals the reference.
  bool audit_ok(const InfoField& reference) const {
    if (audit.empty() || audit.back().field != reference) return false;
    return std::all_of(audit.begin(), audit.end(), [](const auto& e) { return e.grew || e.changed_width; });
  }
};

struct DroppedFamily {
  DesignFamily family;
  std::string reason;
};

/// Sequence-level stage counts (monotonically non-increasing) plus the
/// candidate-level verdict breakdown.
struct StageAudit {
  count_t sequences_raw = 0;
  count_t removed_repeated = 0;
  count_t sequences_after_composition = 0;
  count_t sequences_with_valid = 0;
  count_t families = 0;
  count_t removed_redundant = 0;
  count_t removed_variants = 0;
  count_t removed_dominated = 0;
  count_t families_final = 0;
  CandidateCounts candidates;
  friend bool operator==(const StageAudit&, const StageAudit&) = default;
};

struct SearchResult {
  std::vector<DesignFamily> families;
  std::vector<DroppedFamily> dropped;
  StageAudit audit;
};

inline bool is_strict_submultiset(const Sequence& small, const Sequence& big) {
  if (small.size() >= big.size()) return false;
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline count_t count_of(const Sequence& seq, Sk s) { return std::count(seq.begin(), seq.end(), s); }

/// True when `general` is `specific` with some PW relaxed to PWG and/or some
/// DW relaxed to GC (each pair is the same kernel at a different group number).
inline bool generalizes(const Sequence& general, const Sequence& specific) {
  if (general.size() != specific.size() || general == specific) return false;
  const auto n = [](const Sequence& s, Sk k) { return count_of(s, k); };
  return n(general, Sk::GC) + n(general, Sk::DW) == n(specific, Sk::GC) + n(specific, Sk::DW) &&
         n(general, Sk::PW) + n(general, Sk::PWG) == n(specific, Sk::PW) + n(specific, Sk::PWG) &&
         n(general, Sk::GC) >= n(specific, Sk::GC) && n(general, Sk::PWG) >= n(specific, Sk::PWG);
}

inline Sequence with_all(const Sequence& seq, Sk from, Sk to) {
  Sequence out = seq;
  std::replace(out.begin(), out.end(), from, to);
  std::sort(out.begin(), out.end());
  return out;
}

/// Cheapest Valid ordering of a multiset at (C, F); repeated-pattern
/// orderings are outside the design space and skipped.
inline std::optional<count_t> family_min_params(const Sequence& multiset, bool bottleneck, count_t C, count_t F,
                                                int k) {
  Sequence perm = multiset;
  std::sort(perm.begin(), perm.end());
  std::optional<count_t> best;
  do {
    if (is_repeated(perm)) continue;
    auto p = min_valid_params(perm, bottleneck, C, F, k);
    if (p && (!best || *p < *best)) best = p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Grid points (C, F = alpha*C) used by the domination filter; the reference
/// point is always included.
inline std::vector<std::pair<count_t, count_t>> domination_points(const SearchConfig& cfg) {
  std::set<std::pair<count_t, count_t>> pts{{cfg.reference_C, cfg.reference_F}};
  const Rational a = cfg.alpha();
  for (count_t c : cfg.domination_grid) {
    const Rational f = a * c;
    if (f.denominator() == 1 && f.numerator() >= 1) pts.insert({c, f.numerator()});
  }
  return {pts.begin(), pts.end()};
}

namespace detail {

struct SequenceOutcome {
  CandidateCounts counts;
  std::vector<Witness> witnesses;
};

inline SequenceOutcome evaluate_sequence(const Sequence& seq, const SearchConfig& cfg) {
  SequenceOutcome out;
  for (bool bottleneck : {false, true}) {
    if (bottleneck && !cfg.enable_bottleneck_variants) continue;
    auto plan = channel_plan(seq, cfg.reference_C, cfg.reference_F, bottleneck);
    if (!plan) continue;
    walk_assignments(seq, *plan, cfg.spatial_k, cfg.reference_C, out.counts,
                     [&](const std::vector<int>& groups, count_t p) {
                       out.witnesses.push_back({seq, groups, bottleneck, *plan, p});
                     });
  }
  return out;
}

inline std::vector<SequenceOutcome> evaluate_all(const std::vector<Sequence>& seqs, const SearchConfig& cfg) {
  std::vector<SequenceOutcome> results(seqs.size());
  const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(seqs.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < seqs.size(); ++i) results[i] = evaluate_sequence(seqs[i], cfg);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (int j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < seqs.size(); i = next++) results[i] = evaluate_sequence(seqs[i], cfg);
    });
  }
  pool.clear();  // joins
  return results;
}

}  // namespace detail

/// Composition, performance and efficiency pruning followed by family
/// deduplication and (optionally) the domination filter.
inline SearchResult run_search(const SearchConfig& cfg) {
  cfg.validate();
  SearchResult result;
  auto& audit = result.audit;

  auto seqs = enumerate_sequences(cfg.max_length);
  audit.sequences_raw = seqs.raw;
  audit.removed_repeated = seqs.repeated;
  audit.sequences_after_composition = static_cast<count_t>(seqs.kept.size());

  auto outcomes = detail::evaluate_all(seqs.kept, cfg);

  std::map<std::pair<Sequence, bool>, DesignFamily> by_key;
  for (auto& o : outcomes) {
    audit.candidates += o.counts;
    if (!o.witnesses.empty()) ++audit.sequences_with_valid;
    for (auto& w : o.witnesses) {
      auto& fam = by_key[{sorted_multiset(w.sequence), w.bottleneck}];
      fam.bottleneck = w.bottleneck;
      const bool better = fam.witnesses.empty() || w.params < fam.min_params ||
                          (w.params == fam.min_params && precedes(w.sequence, fam.canonical_sequence));
      if (better) {
        fam.min_params = w.params;
        fam.canonical_sequence = w.sequence;
        fam.best = w;
      }
      fam.witnesses.push_back(std::move(w));
    }
  }

  std::vector<DesignFamily> fams;
  for (auto& [key, fam] : by_key) {
    fam.audit = trace_field(fam.best.candidate().layers(cfg.spatial_k), cfg.reference_C);
    fams.push_back(std::move(fam));
  }
  audit.families = static_cast<count_t>(fams.size());

  if (cfg.enable_domination_filter) {
    const std::vector<DesignFamily> all = fams;
    // Redundancy: a strictly smaller kernel multiset (same bottleneck form)
    // already reaches the reference field, so the extra kernels add nothing.
    std::vector<DesignFamily> kept;
    for (const auto& x : fams) {
      const DesignFamily* sub = nullptr;
      for (const auto& y : fams)
        if (y.bottleneck == x.bottleneck && is_strict_submultiset(y.multiset(), x.multiset())) {
          sub = &y;
          break;
        }
      if (sub) {
        result.dropped.push_back({x, "redundant: contains surviving family " + sub->name()});
        ++audit.removed_redundant;
      } else {
        kept.push_back(x);
      }
    }
    fams = std::move(kept);

    // Variants: X mixes PW and PWG while both its all-PW and all-PWG forms are
    // families in their own right; X sits between them and is not reported.
    const auto is_family = [&](const Sequence& ms, bool bn) {
      return std::any_of(all.begin(), all.end(),
                         [&](const DesignFamily& f) { return f.bottleneck == bn && f.multiset() == ms; });
    };
    kept.clear();
    for (const auto& x : fams) {
      const Sequence ms = x.multiset();
      const Sequence dense = with_all(ms, Sk::PWG, Sk::PW);
      const Sequence sparse = with_all(ms, Sk::PW, Sk::PWG);
      if (count_of(ms, Sk::PW) > 0 && count_of(ms, Sk::PWG) > 0 && is_family(dense, x.bottleneck) &&
          is_family(sparse, x.bottleneck)) {
        result.dropped.push_back({x, "variant: mixes PW and PWG between " + to_string(dense) + " and " +
                                         to_string(sparse)});
        ++audit.removed_variants;
      } else {
        kept.push_back(x);
      }
    }
    fams = std::move(kept);

    // Domination: a family no longer than X, and not merely X at other group
    // numbers, is strictly cheaper at every grid point (X infeasible at a point
    // counts as beaten there).
    const auto points = domination_points(cfg);
    std::vector<std::vector<std::optional<count_t>>> cost(fams.size());
    for (std::size_t i = 0; i < fams.size(); ++i)
      for (auto [c, f] : points)
        cost[i].push_back(family_min_params(fams[i].multiset(), fams[i].bottleneck, c, f, cfg.spatial_k));

    std::vector<DesignFamily> survivors;
    for (std::size_t i = 0; i < fams.size(); ++i) {
      std::optional<std::size_t> by;
      for (std::size_t j = 0; j < fams.size() && !by; ++j) {
        if (j == i || fams[j].length() > fams[i].length()) continue;
        if (fams[j].bottleneck == fams[i].bottleneck && generalizes(fams[j].multiset(), fams[i].multiset())) continue;
        bool beats_everywhere = true;
        for (std::size_t p = 0; p < points.size() && beats_everywhere; ++p)
          beats_everywhere = cost[j][p] && (!cost[i][p] || *cost[j][p] < *cost[i][p]);
        if (beats_everywhere) by = j;
      }
      if (by) {
        result.dropped.push_back({fams[i], "dominated by " + fams[*by].name() + " at every grid point"});
        ++audit.removed_dominated;
      } else {
        survivors.push_back(fams[i]);
      }
    }
    fams = std::move(survivors);
  }

  std::sort(fams.begin(), fams.end(), [](const DesignFamily& a, const DesignFamily& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.canonical_sequence != b.canonical_sequence) return precedes(a.canonical_sequence, b.canonical_sequence);
    return a.bottleneck < b.bottleneck;
  });
  audit.families_final = static_cast<count_t>(fams.size());
  result.families = std::move(fams);
  return result;
}

/// Known architectures a family/assignment corresponds to. `groups` is per
/// kernel of `sequence`; 1 for ungrouped kinds. Boundary assignments
/// (GC with M = C, PWG with N = 1) are accepted here.
inline std::set<std::string> identify_known(std::span<const Sk> sequence, bool bottleneck, std::span<const int> groups,
                                            count_t input_channels) {
  std::set<std::string> labels;
  const Sequence seq(sequence.begin(), sequence.end());
  if (seq == Sequence{Sk::DW, Sk::PW}) {
    labels.insert("MobileNet");
    labels.insert("Xception");
  } else if (seq == Sequence{Sk::GC, Sk::PWG} && groups.size() == 2 && groups[0] == input_channels &&
             groups[1] == 1) {
    labels.insert("MobileNet");
    labels.insert("Xception");
  } else if (seq == Sequence{Sk::PW, Sk::DW, Sk::PW} && bottleneck) {
    labels.insert("ResNeXt-extreme");
  } else if (seq == Sequence{Sk::PWG, Sk::DW, Sk::PWG} && groups.size() == 3 && groups[0] == groups[2]) {
    labels.insert("ShuffleNet");
  }
  return labels;
}

inline std::set<std::string> identify_known(const DesignFamily& family, std::span<const int> groups,
                                            count_t input_channels) {
  return identify_known(family.canonical_sequence, family.bottleneck, groups, input_channels);
}

}  // namespace sk
