#pragma once

#include <algorithm>
#include <cctype>
#include <regex>
#include <string>
#include <vector>

#include "sk/efficiency.hpp"
#include "sk/kernels.hpp"

namespace sk {

/// How a block sizes the layers between its first and last kernel.
enum class InnerWidth {
  Input,       // stay at the block's input width until the last layer
  Output,      // jump to the output width at the first layer (ResNet basic block)
  Bottleneck,  // run at output / bottleneck_divisor
};

struct BlockLayer {
  KernelType type;
  int groups = 1;
};

/// One residual block design: a kernel sequence plus its width rule.
struct BlockDesign {
  std::string name;
  std::vector<BlockLayer> layers;
  InnerWidth inner = InnerWidth::Input;
  count_t bottleneck_divisor = 4;

  static BlockDesign from_family(Family f, Groups g = {}) {
    BlockDesign b;
    b.inner = family_bottleneck(f) ? InnerWidth::Bottleneck : InnerWidth::Input;
    switch (f) {
      case Family::DwPw: b.layers = {{KernelType::Depthwise}, {KernelType::Pointwise}}; break;
      case Family::GcPwg:
        b.layers = {{KernelType::GroupConv, static_cast<int>(g.m)}, {KernelType::PointwiseGroup, static_cast<int>(g.n)}};
        break;
      case Family::PwDwPw: b.layers = {{KernelType::Pointwise}, {KernelType::Depthwise}, {KernelType::Pointwise}}; break;
      case Family::PwgDwPwg:
        b.layers = {{KernelType::PointwiseGroup, static_cast<int>(g.m)},
                    {KernelType::Depthwise},
                    {KernelType::PointwiseGroup, static_cast<int>(g.n)}};
        break;
    }
    b.name = b.describe();
    return b;
  }

  /// Two 3x3 standard convolutions, the plain residual block.
  static BlockDesign standard_basic() {
    BlockDesign b{"", {{KernelType::Standard}, {KernelType::Standard}}, InnerWidth::Output, 4};
    b.name = b.describe();
    return b;
  }

  /// Parses "gc(4)+pwg(32)", "pw+std+pw", "pwg(4)+dw+pwg(4)". Three-kernel
  /// designs starting and ending with a pointwise kind are bottlenecks unless
  /// `divisor` is 0.
  static BlockDesign parse(const std::string& text, count_t divisor = 4) {
    static const std::regex token(R"(^\s*(std|gc|dw|pw|pwg)\s*(?:\(\s*(\d+)\s*\))?\s*$)", std::regex::icase);
    BlockDesign b;
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto end = text.find('+', start);
      const std::string part = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
      std::smatch m;
      if (!std::regex_match(part, m, token)) throw ValidationError("cannot parse block component '" + part + "'");
      std::string sym = m[1].str();
      std::transform(sym.begin(), sym.end(), sym.begin(), [](unsigned char c) { return std::tolower(c); });
      const int g = m[2].matched ? std::stoi(m[2].str()) : 1;
      KernelType t = sym == "std" ? KernelType::Standard
                     : sym == "gc" ? KernelType::GroupConv
                     : sym == "dw" ? KernelType::Depthwise
                     : sym == "pw" ? KernelType::Pointwise
                                   : KernelType::PointwiseGroup;
      if ((t == KernelType::GroupConv || t == KernelType::PointwiseGroup) && !m[2].matched)
        throw ValidationError(sym + " needs a group number, e.g. " + sym + "(4)");
      if (!(t == KernelType::GroupConv || t == KernelType::PointwiseGroup) && m[2].matched)
        throw ValidationError(sym + " takes no group number");
      b.layers.push_back({t, g});
      if (end == std::string::npos) break;
      start = end + 1;
    }
    const auto pointwise = [](KernelType t) { return t == KernelType::Pointwise || t == KernelType::PointwiseGroup; };
    if (b.layers.size() >= 3 && pointwise(b.layers.front().type) && pointwise(b.layers.back().type) && divisor > 0) {
      b.inner = InnerWidth::Bottleneck;
      b.bottleneck_divisor = divisor;
    } else if (b.layers.size() == 2 && b.layers[0].type == KernelType::Standard &&
               b.layers[1].type == KernelType::Standard) {
      b.inner = InnerWidth::Output;
    }
    b.name = b.describe();
    return b;
  }

  std::string describe() const {
    std::string s;
    for (std::size_t i = 0; i < layers.size(); ++i) {
      if (i) s += "+";
      s += kernel_symbol(layers[i].type);
      if (layers[i].type == KernelType::GroupConv || layers[i].type == KernelType::PointwiseGroup)
        s += "(" + std::to_string(layers[i].groups) + ")";
    }
    if (inner == InnerWidth::Bottleneck) s += " [1:" + std::to_string(bottleneck_divisor) + "]";
    return s;
  }

  std::size_t kernels() const { return layers.size(); }

  /// Concrete layers for one block instance.
  std::vector<LayerSpec> instantiate(count_t cin, count_t cout, int k = 3) const {
    if (inner == InnerWidth::Bottleneck && cout % bottleneck_divisor != 0)
      throw ValidationError("bottleneck 1:" + std::to_string(bottleneck_divisor) + " needs the divisor to divide " +
                            std::to_string(cout));
    const count_t mid = inner == InnerWidth::Input    ? cin
                        : inner == InnerWidth::Output ? cout
                                                      : cout / bottleneck_divisor;
    std::vector<LayerSpec> out;
    for (std::size_t i = 0; i < layers.size(); ++i) {
      const count_t a = i == 0 ? cin : mid;
      const count_t b = i + 1 == layers.size() ? cout : mid;
      const auto& l = layers[i];
      KernelKind kind = l.type == KernelType::Standard    ? KernelKind::standard(k)
                        : l.type == KernelType::GroupConv ? KernelKind::group_conv(l.groups, k)
                        : l.type == KernelType::Depthwise ? KernelKind::depthwise(k)
                        : l.type == KernelType::Pointwise ? KernelKind::pointwise()
                                                          : KernelKind::pointwise_group(l.groups);
      out.emplace_back(kind, a, b);
    }
    return out;
  }
};

/// Four-stage residual skeleton: 3x3 stride-2 stem, 3x3 stride-2 max pool,
/// stages of B blocks at widths w*(1, 2, 4, 8), global pool and a classifier.
struct NetworkLayout {
  count_t blocks_per_stage = 8;
  count_t image_size = 224;
  count_t image_channels = 3;
  count_t classes = 1000;
  int stem_kernel = 3;
  int kernel = 3;
  std::vector<count_t> stage_multipliers{1, 2, 4, 8};

  void validate() const {
    if (blocks_per_stage < 1) throw ValidationError("blocks per stage must be >= 1");
    if (stage_multipliers.empty()) throw ValidationError("layout has no stages");
    if (image_size < 1 || classes < 1) throw ValidationError("image size and classes must be positive");
  }
};

struct Conventions {
  bool projection_shortcuts = false;  // 1x1 convolution on shortcuts that change width
  bool batch_norm = false;            // two parameters per channel after every convolution
  bool bias = false;                  // per-output-channel bias on every convolution and the classifier
  bool classifier = true;

  std::string describe() const {
    std::string s = projection_shortcuts ? "projection shortcuts" : "identity shortcuts";
    s += batch_norm ? ", BN counted" : ", BN excluded";
    s += bias ? ", biases counted" : ", biases excluded";
    s += classifier ? ", classifier counted" : ", classifier excluded";
    return s;
  }
};

struct StageBreakdown {
  std::size_t index;
  count_t width;
  count_t spatial;  // output resolution
  count_t block_params = 0;
  count_t shortcut_params = 0;
  count_t norm_params = 0;
  count_t macs = 0;
  count_t params() const { return block_params + shortcut_params + norm_params; }
};

struct SizingReport {
  std::string block;
  count_t width = 0;
  count_t blocks_per_stage = 0;
  count_t depth = 0;
  count_t stem_params = 0;
  count_t classifier_params = 0;
  std::vector<StageBreakdown> stages;
  count_t total_params = 0;
  count_t total_macs = 0;
  Conventions conventions;
};

/// Counted depth: stem, every kernel of every block, classifier.
inline count_t depth_of(const NetworkLayout& layout, const BlockDesign& block, count_t blocks_per_stage) {
  if (blocks_per_stage < 1) throw ValidationError("blocks per stage must be >= 1");
  return 1 + static_cast<count_t>(layout.stage_multipliers.size()) * blocks_per_stage *
                 static_cast<count_t>(block.kernels()) +
         1;
}

inline SizingReport model_params(const NetworkLayout& layout, const BlockDesign& block, count_t width,
                                 const Conventions& conv = {}) {
  layout.validate();
  if (width < 1) throw ValidationError("width must be >= 1");
  SizingReport r;
  r.block = block.name;
  r.width = width;
  r.blocks_per_stage = layout.blocks_per_stage;
  r.depth = depth_of(layout, block, layout.blocks_per_stage);
  r.conventions = conv;

  const count_t stem_area = count_t{layout.stem_kernel} * layout.stem_kernel;
  count_t spatial = (layout.image_size + 1) / 2;
  r.stem_params = stem_area * layout.image_channels * width + (conv.bias ? width : 0) + (conv.batch_norm ? 2 * width : 0);
  r.total_macs += stem_area * layout.image_channels * width * spatial * spatial;
  spatial = (spatial + 1) / 2;  // max pool

  count_t prev = width;
  for (std::size_t s = 0; s < layout.stage_multipliers.size(); ++s) {
    StageBreakdown st{s + 1, width * layout.stage_multipliers[s], 0};
    const count_t in_spatial = spatial;
    if (s > 0) spatial = (spatial + 1) / 2;
    st.spatial = spatial;
    for (count_t b = 0; b < layout.blocks_per_stage; ++b) {
      const count_t cin = b == 0 ? prev : st.width;
      const bool downsample = s > 0 && b == 0;
      std::vector<LayerSpec> layers;
      try {
        layers = block.instantiate(cin, st.width, layout.kernel);
      } catch (const ValidationError& e) {
        throw ValidationError("stage " + std::to_string(s + 1) + " block " + std::to_string(b + 1) + ": " + e.what());
      }
      bool strided = !downsample;
      for (const auto& l : layers) {
        if (!strided && l.kind().has_spatial_extent()) strided = true;
        const count_t res = strided ? spatial : in_spatial;
        st.block_params += param_count(l) + (conv.bias ? l.out_channels() : 0);
        if (conv.batch_norm) st.norm_params += 2 * l.out_channels();
        st.macs += flop_count(l, {res, res});
      }
      if (cin != st.width && conv.projection_shortcuts) {
        st.shortcut_params += cin * st.width + (conv.bias ? st.width : 0);
        if (conv.batch_norm) st.norm_params += 2 * st.width;
        st.macs += cin * st.width * spatial * spatial;
      }
    }
    r.total_macs += st.macs;
    r.stages.push_back(st);
    prev = st.width;
  }
  if (conv.classifier) {
    r.classifier_params = prev * layout.classes + (conv.bias ? layout.classes : 0);
    r.total_macs += prev * layout.classes;
  }
  r.total_params = r.stem_params + r.classifier_params;
  for (const auto& st : r.stages) r.total_params += st.params();
  return r;
}

namespace detail {

/// Parameter count with divisibility ignored (fractional group sizes kept
/// exact); increasing in width, and equal to model_params where legal.
inline Rational relaxed_model_params(const NetworkLayout& layout, const BlockDesign& block, count_t width,
                                     const Conventions& conv) {
  const count_t stem_area = count_t{layout.stem_kernel} * layout.stem_kernel;
  Rational total = stem_area * layout.image_channels * width + (conv.bias ? width : 0) + (conv.batch_norm ? 2 * width : 0);
  const count_t area = count_t{layout.kernel} * layout.kernel;
  count_t prev = width;
  for (count_t mult : layout.stage_multipliers) {
    const count_t w = width * mult;
    for (count_t b = 0; b < layout.blocks_per_stage; ++b) {
      const count_t cin = b == 0 ? prev : w;
      const Rational mid = block.inner == InnerWidth::Input    ? Rational(cin)
                           : block.inner == InnerWidth::Output ? Rational(w)
                                                               : Rational(w, block.bottleneck_divisor);
      for (std::size_t i = 0; i < block.layers.size(); ++i) {
        const Rational a = i == 0 ? Rational(cin) : mid;
        const Rational o = i + 1 == block.layers.size() ? Rational(w) : mid;
        const auto& l = block.layers[i];
        switch (l.type) {
          case KernelType::Standard: total += area * a * o; break;
          case KernelType::GroupConv: total += area * a * o / l.groups; break;
          case KernelType::Depthwise: total += area * a; break;
          case KernelType::Pointwise: total += a * o; break;
          case KernelType::PointwiseGroup: total += a * o / l.groups; break;
        }
        if (conv.bias) total += o;
        if (conv.batch_norm) total += 2 * o;
      }
      if (cin != w && conv.projection_shortcuts)
        total += cin * w + (conv.bias ? w : 0) + (conv.batch_norm ? 2 * w : 0);
    }
    prev = w;
  }
  if (conv.classifier) total += prev * layout.classes + (conv.bias ? layout.classes : 0);
  return total;
}

}  // namespace detail

/// Largest width whose model fits in `budget`. The relaxed count bounds the
/// search; the answer is the widest legal width at or below that bound.
inline SizingReport solve_width(count_t budget, const NetworkLayout& layout, const BlockDesign& block,
                                const Conventions& conv = {}) {
  layout.validate();
  if (budget < 1) throw ValidationError("budget must be positive");
  const auto fits = [&](count_t w) { return detail::relaxed_model_params(layout, block, w, conv) <= budget; };
  if (!fits(1)) throw ValidationError("budget " + std::to_string(budget) + " is below the smallest model");
  count_t lo = 1, hi = 2;
  while (fits(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const count_t mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  for (count_t w = lo; w >= 1; --w) {
    try {
      auto r = model_params(layout, block, w, conv);
      if (r.total_params <= budget) return r;
    } catch (const ValidationError&) {
    }
  }
  throw ValidationError("no legal width of " + block.name + " fits in budget " + std::to_string(budget));
}

}  // namespace sk
