#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sk/infofield.hpp"
#include "sk/kernels.hpp"
#include "sk/oracles.hpp"
#include "sk/search.hpp"

namespace sk {

enum class Family { DwPw, GcPwg, PwDwPw, PwgDwPwg };

inline constexpr std::array<Family, 4> kFamilies{Family::DwPw, Family::GcPwg, Family::PwDwPw, Family::PwgDwPwg};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::DwPw: return "DW+PW";
    case Family::GcPwg: return "GC+PWG";
    case Family::PwDwPw: return "PW+DW+PW";
    case Family::PwgDwPwg: return "PWG+DW+PWG";
  }
  return "?";
}

inline Family parse_family(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::toupper(c); });
  for (Family f : kFamilies)
    if (text == family_name(f)) return f;
  throw ValidationError("unknown family '" + text + "' (expected dw+pw, gc+pwg, pw+dw+pw or pwg+dw+pwg)");
}

inline Sequence family_sequence(Family f) {
  switch (f) {
    case Family::DwPw: return {Sk::DW, Sk::PW};
    case Family::GcPwg: return {Sk::GC, Sk::PWG};
    case Family::PwDwPw: return {Sk::PW, Sk::DW, Sk::PW};
    case Family::PwgDwPwg: return {Sk::PWG, Sk::DW, Sk::PWG};
  }
  return {};
}

inline bool family_bottleneck(Family f) { return f == Family::PwDwPw || f == Family::PwgDwPwg; }
inline bool family_has_groups(Family f) { return f == Family::GcPwg || f == Family::PwgDwPwg; }

/// Group numbers of a grouped family: (M, N) for GC(M)+PWG(N) and
/// PWG(M)+DW+PWG(N). Ignored for the other two.
struct Groups {
  count_t m = 1;
  count_t n = 1;
  friend bool operator==(const Groups&, const Groups&) = default;
};

/// Width of the layer between the two grouped kernels.
inline count_t intermediate_width(Family f, count_t C, count_t F) {
  return family_bottleneck(f) ? F / kBottleneckRatio : C;
}

/// Concrete layers of one family instance; throws on any divisibility or
/// group-range violation.
inline std::vector<LayerSpec> family_layers(Family f, count_t C, count_t F, Groups g = {}, int k = 3) {
  if (C < 1 || F < 1) throw ValidationError("channel counts must be positive");
  if (family_bottleneck(f) && F % kBottleneckRatio != 0)
    throw ValidationError("bottleneck needs 4 | F, got F=" + std::to_string(F));
  const count_t K = F / kBottleneckRatio;
  switch (f) {
    case Family::DwPw:
      return {LayerSpec(KernelKind::depthwise(k), C, C), LayerSpec(KernelKind::pointwise(), C, F)};
    case Family::GcPwg:
      return {LayerSpec(KernelKind::group_conv(static_cast<int>(g.m), k), C, C),
              LayerSpec(KernelKind::pointwise_group(static_cast<int>(g.n)), C, F)};
    case Family::PwDwPw:
      return {LayerSpec(KernelKind::pointwise(), C, K), LayerSpec(KernelKind::depthwise(k), K, K),
              LayerSpec(KernelKind::pointwise(), K, F)};
    case Family::PwgDwPwg:
      return {LayerSpec(KernelKind::pointwise_group(static_cast<int>(g.m)), C, K),
              LayerSpec(KernelKind::depthwise(k), K, K),
              LayerSpec(KernelKind::pointwise_group(static_cast<int>(g.n)), K, F)};
  }
  return {};
}

inline count_t design_params(Family f, count_t C, count_t F, Groups g = {}, int k = 3) {
  count_t total = 0;
  for (const auto& l : family_layers(f, C, F, g, k)) total += param_count(l);
  return total;
}

/// Parameters of the design over parameters of a 3x3 standard convolution
/// with the same C and F, in closed form.
inline Rational ratio(Family f, count_t C, count_t F, Groups g = {}) {
  family_layers(f, C, F, g);  // validates
  switch (f) {
    case Family::DwPw: return Rational(1, F) + Rational(1, 9);
    case Family::GcPwg: return Rational(C, g.m * F) + Rational(1, 9 * g.n);
    case Family::PwDwPw: return Rational(C + F + 9, 36 * C);
    case Family::PwgDwPwg: return (Rational(C, g.m) + Rational(F, g.n) + 9) / (36 * C);
  }
  return {};
}

/// The form with K = M*N substituted, F/N = 4M.
inline Rational pwg_dw_pwg_ratio_at_product(count_t C, count_t M) {
  return (Rational(C, M) + 4 * M + 9) / (36 * C);
}

inline bool theorem1_condition(count_t C, count_t M, count_t N) { return M * N == C; }

/// The coverage constraint M*N <= intermediate width for the grouped families.
inline bool group_constraint_ok(Family f, count_t C, count_t F, Groups g) {
  if (!family_has_groups(f)) return true;
  return g.m * g.n <= intermediate_width(f, C, F);
}

struct EfficiencyReport {
  Family family;
  count_t C;
  count_t F;
  Groups groups;
  Rational ratio;
  count_t params;
  count_t standard_params;
  bool constraint_ok;
  bool theorem1;
  InfoField field;
  bool field_matches_standard;
};

inline EfficiencyReport analyze(Family f, count_t C, count_t F, Groups g = {}) {
  EfficiencyReport r{f, C, F, g, ratio(f, C, F, g), design_params(f, C, F, g), 9 * C * F, group_constraint_ok(f, C, F, g),
                     false, {}, false};
  const count_t inter = intermediate_width(f, C, F);
  r.theorem1 = family_has_groups(f) && theorem1_condition(inter, g.m, g.n);
  const auto layers = family_layers(f, C, F, g);
  r.field = field_of(layers, C);
  r.field_matches_standard = r.field == InfoField::standard_reference();
  return r;
}

struct OptimalGroups {
  Family family;
  count_t C;
  count_t F;
  double continuous_m;
  double continuous_n;
  double continuous_ratio;  // lower bound of the ratio over all feasible pairs
  std::vector<GroupPair> discrete;
  count_t discrete_params;
  Rational discrete_ratio;
  double gap() const { return boost::rational_cast<double>(discrete_ratio) - continuous_ratio; }
};

/// Continuous optimum (N = sqrt(F)/3 with M = C/N; or M = sqrt(C)/2 with
/// N = K/M) next to the exact divisor-constrained minimisers.
inline OptimalGroups optimal_group_numbers(Family f, count_t C, count_t F) {
  if (!family_has_groups(f)) throw ValidationError(std::string(family_name(f)) + " has no group numbers to choose");
  OptimalGroups o{f, C, F, 0, 0, 0, {}, 0, {}};
  if (f == Family::GcPwg) {
    o.continuous_n = std::sqrt(static_cast<double>(F)) / 3.0;
    o.continuous_m = static_cast<double>(C) / o.continuous_n;
    o.continuous_ratio = 2.0 / (3.0 * std::sqrt(static_cast<double>(F)));
  } else {
    if (F % kBottleneckRatio != 0) throw ValidationError("bottleneck needs 4 | F, got F=" + std::to_string(F));
    const double c = static_cast<double>(C);
    o.continuous_m = std::sqrt(c) / 2.0;
    o.continuous_n = static_cast<double>(F / kBottleneckRatio) / o.continuous_m;
    // With M*N <= K = F/4, F/N >= 4M, and C/M + 4M >= 4*sqrt(C).
    o.continuous_ratio = (4.0 * std::sqrt(c) + 9.0) / (36.0 * c);
  }
  const auto grid =
      divisor_grid_min(f == Family::GcPwg ? GroupObjective::GcPwg : GroupObjective::PwgDwPwg, C, F);
  o.discrete = grid.argmin;
  o.discrete_params = grid.min_value;
  o.discrete_ratio = Rational(grid.min_value, 9 * C * F);
  return o;
}

/// Real root of the closed-form width equations.
inline double continuous_greatest_width(Family f, double P, double alpha) {
  if (P <= 0 || alpha <= 0) throw ValidationError("budget and alpha must be positive");
  switch (f) {
    case Family::DwPw: return (-9.0 + std::sqrt(81.0 + 4.0 * alpha * P)) / (2.0 * alpha);
    case Family::GcPwg: return std::pow(P / (6.0 * std::sqrt(alpha)), 2.0 / 3.0);
    case Family::PwDwPw:
      return (-9.0 * alpha + std::sqrt(81.0 * alpha * alpha + 16.0 * alpha * alpha * P + 16.0 * alpha * P)) /
             (2.0 * (alpha * alpha + alpha));
    case Family::PwgDwPwg: {
      // P = (alpha/4) C (9 + 4 sqrt(C)); increasing in C, so bisect on s = sqrt(C).
      const auto p_of = [&](double s) { return alpha / 4.0 * s * s * (9.0 + 4.0 * s); };
      double lo = 0, hi = 1;
      while (p_of(hi) < P) hi *= 2;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (p_of(mid) < P ? lo : hi) = mid;
      }
      const double s = 0.5 * (lo + hi);
      return s * s;
    }
  }
  return 0;
}

inline const char* width_condition(Family f) {
  switch (f) {
    case Family::DwPw: return "none (no group numbers)";
    case Family::GcPwg: return "9N = alpha*M with M*N = C";
    case Family::PwDwPw: return "none (no group numbers)";
    case Family::PwgDwPwg: return "N = alpha*M with M*N = K";
  }
  return "";
}

/// Minimum exact parameter count at width C (F = alpha*C) over every
/// feasible group choice; nullopt when the width admits no legal design.
inline std::optional<std::pair<count_t, Groups>> min_params_at_width(Family f, count_t C, const Rational& alpha) {
  const Rational fr = alpha * C;
  if (fr.denominator() != 1 || fr.numerator() < 1) return std::nullopt;
  const count_t F = fr.numerator();
  try {
    switch (f) {
      case Family::DwPw:
      case Family::PwDwPw:
        return std::pair{design_params(f, C, F), Groups{}};
      case Family::GcPwg:
      case Family::PwgDwPwg: {
        if (f == Family::PwgDwPwg && F % kBottleneckRatio != 0) return std::nullopt;
        if (C > kDivisorGridMaxChannels || F > kDivisorGridMaxChannels) return std::nullopt;
        const auto g = divisor_grid_min(f == Family::GcPwg ? GroupObjective::GcPwg : GroupObjective::PwgDwPwg, C, F);
        return std::pair{g.min_value, Groups{g.argmin.front().m, g.argmin.front().n}};
      }
    }
  } catch (const ValidationError&) {
    return std::nullopt;
  }
  return std::nullopt;
}

struct WidthReport {
  Family family;
  count_t budget;
  Rational alpha;
  double greatest_width;  // closed form
  count_t best_width;     // largest legal integer width within budget
  count_t best_params;
  Groups best_groups;
  std::string condition;
};

/// Closed-form G plus the largest integer width whose best legal design fits
/// in `P`. Every legal design obeys the closed-form lower bound, so widths
/// above G cannot fit and the scan stops there.
inline WidthReport greatest_width(Family f, count_t P, const Rational& alpha) {
  if (alpha <= 0) throw ValidationError("alpha must be positive");
  if (P < 1) throw ValidationError("budget must be positive");
  const double a = boost::rational_cast<double>(alpha);
  WidthReport r{f, P, alpha, continuous_greatest_width(f, static_cast<double>(P), a), 0, 0, {}, width_condition(f)};
  const auto limit = static_cast<count_t>(std::floor(r.greatest_width * (1 + 1e-9))) + 1;
  for (count_t c = 1; c <= limit; ++c) {
    auto m = min_params_at_width(f, c, alpha);
    if (m && m->first <= P) {
      r.best_width = c;
      r.best_params = m->first;
      r.best_groups = m->second;
    }
  }
  if (r.best_width == 0)
    throw ValidationError("budget " + std::to_string(P) + " is below the smallest legal " + family_name(f) +
                          " design");
  return r;
}

}  // namespace sk
