#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "sk/kernels.hpp"

namespace sk {

using Rational = boost::rational<count_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Region of the original input that one output activation depends on.
/// `coverage` is the fraction of original input channels reached, kept exact.
struct InfoField {
  count_t spatial_x = 1;
  count_t spatial_y = 1;
  Rational coverage{1};

  /// The untouched input: one position, one channel out of `channels`.
  static InfoField initial(count_t channels) { return {1, 1, Rational(1, channels)}; }

  /// Field of a single standard convolution with a kx-by-ky kernel.
  static InfoField standard_reference(int kx = 3, int ky = 3) { return {kx, ky, Rational(1)}; }

  count_t channel_count(count_t original_channels) const {
    const Rational a = coverage * original_channels;
    return a.numerator() / a.denominator();
  }

  std::string describe(count_t original_channels) const {
    return "(" + std::to_string(spatial_x) + ", " + std::to_string(spatial_y) + ", " +
           std::to_string(channel_count(original_channels)) + ")";
  }

  friend bool operator==(const InfoField&, const InfoField&) = default;
};

/// Advances the field through one layer under the best-case channel
/// permutation: a layer reading `c` of its input channels multiplies the
/// covered original channels by `c`, capped at all of them.
inline InfoField propagate(const InfoField& field, const LayerSpec& layer, count_t /*original_channels*/) {
  InfoField next = field;
  const auto& k = layer.kind();
  next.spatial_x += k.kx() - 1;
  next.spatial_y += k.ky() - 1;
  count_t fan_in = 1;
  switch (k.type()) {
    case KernelType::Depthwise: fan_in = 1; break;
    case KernelType::Standard:
    case KernelType::Pointwise: fan_in = layer.in_channels(); break;
    case KernelType::GroupConv:
    case KernelType::PointwiseGroup: fan_in = layer.in_channels() / k.groups(); break;
  }
  next.coverage = std::min(Rational(1), field.coverage * fan_in);
  return next;
}

inline void check_chain(std::span<const LayerSpec> design, count_t input_channels) {
  if (design.empty()) throw ValidationError("design has no layers");
  if (design.front().in_channels() != input_channels)
    throw ValidationError("boundary 0: design input has " + std::to_string(design.front().in_channels()) +
                          " channels, expected " + std::to_string(input_channels));
  for (std::size_t i = 0; i + 1 < design.size(); ++i) {
    if (design[i].out_channels() != design[i + 1].in_channels())
      throw ValidationError("boundary " + std::to_string(i + 1) + ": layer " + std::to_string(i) + " emits " +
                            std::to_string(design[i].out_channels()) + " channels but layer " +
                            std::to_string(i + 1) + " reads " + std::to_string(design[i + 1].in_channels()));
  }
}

inline InfoField field_of(std::span<const LayerSpec> design, count_t input_channels) {
  check_chain(design, input_channels);
  InfoField f = InfoField::initial(input_channels);
  for (const auto& layer : design) f = propagate(f, layer, input_channels);
  return f;
}

struct FieldVerdict {
  enum class Kind { Valid, InferiorNoGrowth, InferiorEarlyFull, InsufficientField, SpatialMismatch };

  Kind kind = Kind::Valid;
  std::optional<std::size_t> at_kernel_index;  // set for the early-stop verdicts
  InfoField field;                             // field at the point the verdict was reached

  bool valid() const { return kind == Kind::Valid; }
  friend bool operator==(const FieldVerdict&, const FieldVerdict&) = default;
};

inline const char* to_string(FieldVerdict::Kind k) {
  switch (k) {
    case FieldVerdict::Kind::Valid: return "Valid";
    case FieldVerdict::Kind::InferiorNoGrowth: return "InferiorNoGrowth";
    case FieldVerdict::Kind::InferiorEarlyFull: return "InferiorEarlyFull";
    case FieldVerdict::Kind::InsufficientField: return "InsufficientField";
    case FieldVerdict::Kind::SpatialMismatch: return "SpatialMismatch";
  }
  return "?";
}

/// Result of feeding one more layer to the early-stop walk.
struct StepOutcome {
  InfoField field;
  bool contributes;
  std::optional<FieldVerdict::Kind> stop;
};

/// One step of the early-stop walk. A layer contributes when it grows the
/// field or changes the channel count (the reduce/restore layers of a
/// bottleneck). Reaching the reference early only counts once the width is
/// back at the design's output width, i.e. the prefix is already a complete
/// replacement for the standard layer.
inline StepOutcome early_stop_step(const InfoField& before, const LayerSpec& layer, count_t input_channels,
                                   count_t output_channels, const InfoField& reference, bool is_last) {
  StepOutcome out{propagate(before, layer, input_channels), false, std::nullopt};
  out.contributes = out.field != before || layer.in_channels() != layer.out_channels();
  if (!out.contributes) {
    out.stop = FieldVerdict::Kind::InferiorNoGrowth;
  } else if (out.field.spatial_x > reference.spatial_x || out.field.spatial_y > reference.spatial_y) {
    out.stop = FieldVerdict::Kind::SpatialMismatch;
  } else if (!is_last && out.field == reference && layer.out_channels() == output_channels) {
    out.stop = FieldVerdict::Kind::InferiorEarlyFull;
  }
  return out;
}

inline FieldVerdict final_verdict(const InfoField& field, const InfoField& reference) {
  if (field == reference) return {FieldVerdict::Kind::Valid, std::nullopt, field};
  if (field.spatial_x > reference.spatial_x || field.spatial_y > reference.spatial_y)
    return {FieldVerdict::Kind::SpatialMismatch, std::nullopt, field};
  return {FieldVerdict::Kind::InsufficientField, std::nullopt, field};
}

/// Walks the design left to right with the early-stop mechanism and compares
/// the final field with `reference` (the field of the standard layer being
/// replaced).
inline FieldVerdict classify(std::span<const LayerSpec> design, count_t input_channels, const InfoField& reference) {
  check_chain(design, input_channels);
  const count_t output_channels = design.back().out_channels();
  InfoField f = InfoField::initial(input_channels);
  for (std::size_t i = 0; i < design.size(); ++i) {
    auto step = early_stop_step(f, design[i], input_channels, output_channels, reference, i + 1 == design.size());
    f = step.field;
    if (step.stop) return {*step.stop, i, f};
  }
  return final_verdict(f, reference);
}

/// Per-layer record of the walk, used as the audit trail for survivors.
struct FieldTraceEntry {
  std::size_t index;
  InfoField field;
  bool grew;
  bool changed_width;
};

inline std::vector<FieldTraceEntry> trace_field(std::span<const LayerSpec> design, count_t input_channels) {
  check_chain(design, input_channels);
  std::vector<FieldTraceEntry> out;
  InfoField f = InfoField::initial(input_channels);
  for (std::size_t i = 0; i < design.size(); ++i) {
    InfoField next = propagate(f, design[i], input_channels);
    out.push_back({i, next, next != f, design[i].in_channels() != design[i].out_channels()});
    f = next;
  }
  return out;
}

}  // namespace sk
