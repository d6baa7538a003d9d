#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace sk {

using count_t = std::int64_t;

/// Raised when a layer, design or request violates a structural constraint
/// (group divisibility, channel compatibility, shape caps, budgets).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class KernelType { Standard, GroupConv, Depthwise, Pointwise, PointwiseGroup };

inline const char* kernel_symbol(KernelType t) {
  switch (t) {
    case KernelType::Standard: return "STD";
    case KernelType::GroupConv: return "GC";
    case KernelType::Depthwise: return "DW";
    case KernelType::Pointwise: return "PW";
    case KernelType::PointwiseGroup: return "PWG";
  }
  return "?";
}

/// One convolution kind with its spatial extent and (where applicable) group
/// number. Channel-dependent constraints are checked by LayerSpec.
class KernelKind {
 public:
  static KernelKind standard(int k = 3) { return {KernelType::Standard, k, k, 1}; }
  static KernelKind standard(int kx, int ky) { return {KernelType::Standard, kx, ky, 1}; }

  static KernelKind group_conv(int groups, int k = 3) { return group_conv(groups, k, k); }
  static KernelKind group_conv(int groups, int kx, int ky) {
    if (groups < 2) throw ValidationError("group convolution needs M >= 2, got M=" + std::to_string(groups));
    return {KernelType::GroupConv, kx, ky, groups};
  }

  static KernelKind depthwise(int k = 3) { return depthwise(k, k); }
  static KernelKind depthwise(int kx, int ky) {
    if (kx < 2 && ky < 2) throw ValidationError("depthwise convolution with a 1x1 kernel is degenerate");
    return {KernelType::Depthwise, kx, ky, 1};
  }

  static KernelKind pointwise() { return {KernelType::Pointwise, 1, 1, 1}; }

  static KernelKind pointwise_group(int groups) {
    if (groups < 2) throw ValidationError("pointwise group convolution needs N >= 2, got N=" + std::to_string(groups));
    return {KernelType::PointwiseGroup, 1, 1, groups};
  }

  // Bypasses the group-range rules (M=1, M=C, N=1). Only the test suite uses
  // this, to relate the sparse kinds to their degenerate extremes.
  static KernelKind unchecked(KernelType t, int kx, int ky, int groups) { return {t, kx, ky, groups}; }

  KernelType type() const { return type_; }
  int kx() const { return kx_; }
  int ky() const { return ky_; }
  int groups() const { return groups_; }
  bool has_spatial_extent() const { return kx_ > 1 || ky_ > 1; }
  bool is_grouped() const { return type_ == KernelType::GroupConv || type_ == KernelType::PointwiseGroup; }
  const char* symbol() const { return kernel_symbol(type_); }

  std::string describe() const {
    std::string s = symbol();
    if (is_grouped()) s += "(" + std::to_string(groups_) + ")";
    if (has_spatial_extent() && (kx_ != 3 || ky_ != 3)) s += "[" + std::to_string(kx_) + "x" + std::to_string(ky_) + "]";
    return s;
  }

  friend bool operator==(const KernelKind&, const KernelKind&) = default;

 private:
  KernelKind(KernelType t, int kx, int ky, int groups) : type_(t), kx_(kx), ky_(ky), groups_(groups) {
    if (kx < 1 || ky < 1) throw ValidationError("kernel spatial size must be >= 1");
  }

  KernelType type_;
  int kx_;
  int ky_;
  int groups_;
};

struct TensorShape {
  count_t channels;
  count_t height;
  count_t width;

  TensorShape(count_t c, count_t h, count_t w) : channels(c), height(h), width(w) {
    if (c < 1 || h < 1 || w < 1) throw ValidationError("tensor shape dimensions must be positive");
  }
};

struct SpatialSize {
  count_t height;
  count_t width;
};

/// A kernel bound to concrete input/output channel counts.
class LayerSpec {
 public:
  LayerSpec(KernelKind kind, count_t in_channels, count_t out_channels)
      : LayerSpec(kind, in_channels, out_channels, true) {}

  /// Keeps divisibility checks but skips the group-number ranges, so
  /// GroupConv(M=1) and GroupConv(M=C) can be built for comparison tests.
  static LayerSpec relaxed(KernelKind kind, count_t in_channels, count_t out_channels) {
    return LayerSpec(kind, in_channels, out_channels, false);
  }

  const KernelKind& kind() const { return kind_; }
  count_t in_channels() const { return in_; }
  count_t out_channels() const { return out_; }

  std::string describe() const {
    return kind_.describe() + " " + std::to_string(in_) + "->" + std::to_string(out_);
  }

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;

 private:
  LayerSpec(KernelKind kind, count_t in, count_t out, bool check_ranges) : kind_(kind), in_(in), out_(out) {
    if (in < 1 || out < 1) throw ValidationError("channel counts must be positive in " + describe());
    const count_t g = kind.groups();
    switch (kind.type()) {
      case KernelType::Depthwise:
        if (in != out)
          throw ValidationError("depthwise layer must keep the channel count, got " + describe());
        break;
      case KernelType::GroupConv:
        if (check_ranges && (g < 2 || g > in - 1))
          throw ValidationError("group number M=" + std::to_string(g) + " outside [2, C-1] for " + describe());
        [[fallthrough]];
      case KernelType::PointwiseGroup:
        if (check_ranges && g < 2)
          throw ValidationError("group number " + std::to_string(g) + " below 2 for " + describe());
        if (g < 1 || in % g != 0)
          throw ValidationError("group number " + std::to_string(g) + " does not divide input channels " +
                                std::to_string(in));
        if (out % g != 0)
          throw ValidationError("group number " + std::to_string(g) + " does not divide output channels " +
                                std::to_string(out));
        break;
      case KernelType::Standard:
      case KernelType::Pointwise:
        break;
    }
  }

  KernelKind kind_;
  count_t in_;
  count_t out_;
};

/// Weight count of one layer, biases excluded.
inline count_t param_count(const LayerSpec& layer) {
  const auto& k = layer.kind();
  const count_t area = count_t{k.kx()} * k.ky();
  const count_t c = layer.in_channels();
  const count_t f = layer.out_channels();
  switch (k.type()) {
    case KernelType::Standard: return area * c * f;
    case KernelType::GroupConv: return area * (c / k.groups()) * f;
    case KernelType::Depthwise: return area * c;
    case KernelType::Pointwise: return c * f;
    case KernelType::PointwiseGroup: return (c / k.groups()) * f;
  }
  return 0;
}

/// Multiply-accumulates at the given output resolution (stride already folded
/// into `out`).
inline count_t flop_count(const LayerSpec& layer, SpatialSize out) {
  if (out.height < 1 || out.width < 1) throw ValidationError("output spatial size must be positive");
  return param_count(layer) * out.height * out.width;
}

inline count_t out_channels(const LayerSpec& layer) {
  if (layer.kind().type() == KernelType::Depthwise && layer.in_channels() != layer.out_channels())
    throw ValidationError("depthwise layer must keep the channel count");
  return layer.out_channels();
}

}  // namespace sk
