#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sk/kernels.hpp"

namespace sk {

inline constexpr count_t kOracleMaxChannels = 16;
inline constexpr count_t kOracleMaxSpatial = 9;
inline constexpr count_t kOraclePartitionSearchMaxChannels = 8;

/// Thrown when a request is beyond the oracle's desk-scale limits.
class OracleRefusal : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Reading order `perm[p]` = channel of the previous layer's output that
/// lands at input position p of the next layer.
using ChannelPermutation = std::vector<count_t>;

/// Channel shuffle after a layer with `groups` groups: reshape to
/// (groups, width/groups), transpose, flatten.
inline ChannelPermutation interleave_shuffle(count_t width, count_t groups) {
  ChannelPermutation perm(static_cast<std::size_t>(width));
  const count_t per = width / groups;
  for (count_t p = 0; p < width; ++p) perm[p] = (p % groups) * per + p / groups;
  return perm;
}

inline ChannelPermutation identity_permutation(count_t width) {
  ChannelPermutation perm(static_cast<std::size_t>(width));
  std::iota(perm.begin(), perm.end(), count_t{0});
  return perm;
}

struct GraphNode {
  count_t channel;
  count_t x;
  count_t y;
  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphField {
  count_t spatial_x;
  count_t spatial_y;
  count_t channels;
  friend bool operator==(const GraphField&, const GraphField&) = default;
};

inline std::string to_string(const GraphField& f) {
  return "(" + std::to_string(f.spatial_x) + ", " + std::to_string(f.spatial_y) + ", " + std::to_string(f.channels) +
         ")";
}

/// Layer-by-layer dependency graph of a small design. Edges are produced on
/// demand from the index sets of each convolution kind: output channel f of a
/// grouped layer with g groups reads the input channels of group
/// floor(f / (F/g)); spatial kernels read a kx-by-ky window.
class DependencyGraph {
 public:
  /// `boundary_perms[i]` sits between layer i-1 and layer i (index 0 is
  /// unused and must be empty). Missing entries default to interleave after
  /// grouped layers and identity elsewhere.
  DependencyGraph(std::vector<LayerSpec> layers, TensorShape input,
                  std::vector<ChannelPermutation> boundary_perms = {})
      : layers_(std::move(layers)), input_(input), perms_(std::move(boundary_perms)) {
    if (layers_.empty()) throw ValidationError("design has no layers");
    if (layers_.front().in_channels() != input_.channels)
      throw ValidationError("input tensor has " + std::to_string(input_.channels) + " channels, design reads " +
                            std::to_string(layers_.front().in_channels()));
    for (std::size_t i = 0; i + 1 < layers_.size(); ++i)
      if (layers_[i].out_channels() != layers_[i + 1].in_channels())
        throw ValidationError("boundary " + std::to_string(i + 1) + ": channel mismatch");
    for (const auto& l : layers_)
      if (l.in_channels() > kOracleMaxChannels || l.out_channels() > kOracleMaxChannels)
        throw OracleRefusal("oracle is limited to " + std::to_string(kOracleMaxChannels) + " channels per layer");
    if (input_.height > kOracleMaxSpatial || input_.width > kOracleMaxSpatial)
      throw OracleRefusal("oracle is limited to " + std::to_string(kOracleMaxSpatial) + "x" +
                          std::to_string(kOracleMaxSpatial) + " inputs");
    count_t ex = 1, ey = 1;
    for (const auto& l : layers_) {
      ex += l.kind().kx() - 1;
      ey += l.kind().ky() - 1;
    }
    if (ex > input_.width || ey > input_.height)
      throw OracleRefusal("input " + std::to_string(input_.height) + "x" + std::to_string(input_.width) +
                          " is smaller than the total field extent " + std::to_string(ey) + "x" + std::to_string(ex));
    perms_.resize(layers_.size());
    for (std::size_t i = 1; i < layers_.size(); ++i) {
      const count_t w = layers_[i].in_channels();
      if (perms_[i].empty()) {
        const auto& prev = layers_[i - 1].kind();
        perms_[i] = prev.is_grouped() ? interleave_shuffle(w, prev.groups()) : identity_permutation(w);
      }
      if (static_cast<count_t>(perms_[i].size()) != w) throw ValidationError("permutation size mismatch");
    }
  }

  /// Input extents of each layer's output map (valid convolution, stride 1).
  std::pair<count_t, count_t> output_size(std::size_t layer) const {
    count_t h = input_.height, w = input_.width;
    for (std::size_t i = 0; i <= layer; ++i) {
      h -= layers_[i].kind().ky() - 1;
      w -= layers_[i].kind().kx() - 1;
    }
    return {h, w};
  }

  std::span<const LayerSpec> layers() const { return layers_; }
  const ChannelPermutation& permutation_before(std::size_t layer) const { return perms_[layer]; }

  /// Input channels of `layer` that output channel `f` reads (before the
  /// boundary permutation is applied).
  std::vector<count_t> channel_sources(std::size_t layer, count_t f) const {
    const auto& l = layers_[layer];
    const count_t c = l.in_channels(), out = l.out_channels();
    std::vector<count_t> src;
    switch (l.kind().type()) {
      case KernelType::Depthwise: src.push_back(f); break;
      case KernelType::Standard:
      case KernelType::Pointwise:
        for (count_t i = 0; i < c; ++i) src.push_back(i);
        break;
      case KernelType::GroupConv:
      case KernelType::PointwiseGroup: {
        const count_t g = l.kind().groups();
        const count_t group = f / (out / g);
        for (count_t i = 0; i < c / g; ++i) src.push_back(group * (c / g) + i);
        break;
      }
    }
    return src;
  }

  /// Nodes of the previous layer's output (or the input tensor for layer 0)
  /// that node `n` of layer `layer`'s output depends on.
  std::vector<GraphNode> predecessors(std::size_t layer, const GraphNode& n) const {
    const auto& k = layers_[layer].kind();
    std::vector<GraphNode> out;
    for (count_t src : channel_sources(layer, n.channel)) {
      const count_t ch = layer == 0 ? src : perms_[layer][src];
      for (count_t dy = 0; dy < k.ky(); ++dy)
        for (count_t dx = 0; dx < k.kx(); ++dx) out.push_back({ch, n.x + dx, n.y + dy});
    }
    return out;
  }

  /// Reachable input nodes from output node (`channel`, central position).
  GraphField field_of_output(count_t channel) const {
    const std::size_t last = layers_.size() - 1;
    auto [h, w] = output_size(last);
    std::vector<GraphNode> frontier{{channel, w / 2, h / 2}};
    for (std::size_t l = layers_.size(); l-- > 0;) {
      const count_t width = l == 0 ? input_.channels : layers_[l - 1].out_channels();
      std::vector<char> seen(static_cast<std::size_t>(width * input_.height * input_.width), 0);
      std::vector<GraphNode> next;
      for (const auto& n : frontier)
        for (const auto& p : predecessors(l, n)) {
          auto& s = seen[static_cast<std::size_t>((p.channel * input_.height + p.y) * input_.width + p.x)];
          if (!s) {
            s = 1;
            next.push_back(p);
          }
        }
      frontier = std::move(next);
    }
    count_t x0 = input_.width, x1 = -1, y0 = input_.height, y1 = -1;
    std::vector<char> ch(static_cast<std::size_t>(input_.channels), 0);
    for (const auto& n : frontier) {
      x0 = std::min(x0, n.x);
      x1 = std::max(x1, n.x);
      y0 = std::min(y0, n.y);
      y1 = std::max(y1, n.y);
      ch[static_cast<std::size_t>(n.channel)] = 1;
    }
    return {x1 - x0 + 1, y1 - y0 + 1, static_cast<count_t>(std::count(ch.begin(), ch.end(), 1))};
  }

 private:
  std::vector<LayerSpec> layers_;
  TensorShape input_;
  std::vector<ChannelPermutation> perms_;
};

inline TensorShape oracle_input_shape(std::span<const LayerSpec> design) {
  if (design.empty()) throw ValidationError("design has no layers");
  count_t ex = 1, ey = 1;
  for (const auto& l : design) {
    ex += l.kind().kx() - 1;
    ey += l.kind().ky() - 1;
  }
  return TensorShape(design.front().in_channels(), ey, ex);
}

/// Field of the central activation of output channel 0 under interleave
/// shuffles after every grouped layer.
inline GraphField graph_information_field(std::span<const LayerSpec> design, TensorShape input) {
  return DependencyGraph({design.begin(), design.end()}, input).field_of_output(0);
}

inline GraphField graph_information_field(std::span<const LayerSpec> design) {
  return graph_information_field(design, oracle_input_shape(design));
}

namespace detail {

/// Every way of splitting {0..n-1} into `groups` equal blocks, up to block
/// order, written as a permutation whose consecutive runs are the blocks.
inline void equal_block_partitions(count_t n, count_t groups, const std::function<void(const ChannelPermutation&)>& f) {
  const count_t per = n / groups;
  ChannelPermutation perm;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::function<void(count_t)> rec = [&](count_t filled) {
    if (filled == n) {
      f(perm);
      return;
    }
    const bool new_block = filled % per == 0;
    count_t start = 0;
    if (new_block) {
      // Blocks are unordered: a new block opens with the smallest free channel.
      while (used[static_cast<std::size_t>(start)]) ++start;
      used[static_cast<std::size_t>(start)] = 1;
      perm.push_back(start);
      rec(filled + 1);
      perm.pop_back();
      used[static_cast<std::size_t>(start)] = 0;
      return;
    }
    // Within a block channels are listed in increasing order.
    for (count_t c = perm.back() + 1; c < n; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      used[static_cast<std::size_t>(c)] = 1;
      perm.push_back(c);
      rec(filled + 1);
      perm.pop_back();
      used[static_cast<std::size_t>(c)] = 0;
    }
  };
  rec(0);
}

}  // namespace detail

struct PermutationSearchResult {
  GraphField best;
  std::vector<ChannelPermutation> witness;  // boundary permutations achieving `best`
  count_t tried = 0;
};

/// Best field over all channel arrangements in front of grouped layers. Only
/// the split of channels into groups matters there; in front of other kinds
/// the arrangement cannot change any dependency set. Limited to small widths.
inline PermutationSearchResult best_permutation_field(std::span<const LayerSpec> design, TensorShape input) {
  for (const auto& l : design)
    if (l.in_channels() > kOraclePartitionSearchMaxChannels)
      throw OracleRefusal("permutation search is limited to " + std::to_string(kOraclePartitionSearchMaxChannels) +
                          " channels");
  std::vector<LayerSpec> layers(design.begin(), design.end());
  std::vector<ChannelPermutation> perms(layers.size());
  for (std::size_t i = 1; i < layers.size(); ++i) perms[i] = identity_permutation(layers[i].in_channels());

  PermutationSearchResult res{{0, 0, 0}, {}, 0};
  const auto better = [](const GraphField& a, const GraphField& b) {
    return std::tie(a.channels, a.spatial_x, a.spatial_y) > std::tie(b.channels, b.spatial_x, b.spatial_y);
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == layers.size()) {
      ++res.tried;
      auto f = DependencyGraph(layers, input, perms).field_of_output(0);
      if (res.tried == 1 || better(f, res.best)) {
        res.best = f;
        res.witness = perms;
      }
      return;
    }
    if (i == 0 || !layers[i].kind().is_grouped()) {
      rec(i + 1);
      return;
    }
    detail::equal_block_partitions(layers[i].in_channels(), layers[i].kind().groups(), [&](const ChannelPermutation& p) {
      perms[i] = p;
      rec(i + 1);
    });
    perms[i] = identity_permutation(layers[i].in_channels());
  };
  rec(0);
  return res;
}

/// Two-kernel group-number families with an exact integer parameter formula.
enum class GroupObjective {
  GcPwg,     // 9*C*(C/M) + (C/N)*F, intermediate width C
  PwgDwPwg,  // (C/M)*K + 9*K + (K/N)*F, intermediate width K = F/4
};

enum class GroupConstraint { ProductAtMostIntermediate, ProductEqualsIntermediate };

struct GroupPair {
  count_t m;
  count_t n;
  friend bool operator==(const GroupPair&, const GroupPair&) = default;
  friend auto operator<=>(const GroupPair&, const GroupPair&) = default;
};

struct DivisorGridResult {
  count_t min_value = 0;
  std::vector<GroupPair> argmin;
  count_t intermediate = 0;
  count_t feasible_pairs = 0;
};

inline constexpr count_t kDivisorGridMaxChannels = 4096;

/// Exhaustive minimisation over every feasible (M, N); returns all minimisers.
inline DivisorGridResult divisor_grid_min(GroupObjective obj, count_t C, count_t F,
                                          GroupConstraint constraint = GroupConstraint::ProductAtMostIntermediate) {
  if (C < 1 || F < 1) throw ValidationError("channel counts must be positive");
  if (C > kDivisorGridMaxChannels || F > kDivisorGridMaxChannels)
    throw OracleRefusal("divisor grid is limited to " + std::to_string(kDivisorGridMaxChannels) + " channels");
  DivisorGridResult r;
  count_t inter = C;
  if (obj == GroupObjective::PwgDwPwg) {
    if (F % 4 != 0) throw ValidationError("bottleneck needs 4 | F, got F=" + std::to_string(F));
    inter = F / 4;
  }
  r.intermediate = inter;
  for (count_t m = 2; m <= C; ++m) {
    if (C % m || inter % m) continue;
    if (obj == GroupObjective::GcPwg && m > C - 1) continue;
    for (count_t n = 2; n <= inter; ++n) {
      if (inter % n || F % n) continue;
      const count_t prod = m * n;
      if (constraint == GroupConstraint::ProductAtMostIntermediate ? prod > inter : prod != inter) continue;
      ++r.feasible_pairs;
      const count_t v = obj == GroupObjective::GcPwg ? 9 * C * (C / m) + (C / n) * F
                                                     : (C / m) * inter + 9 * inter + (inter / n) * F;
      if (r.argmin.empty() || v < r.min_value) {
        r.min_value = v;
        r.argmin = {{m, n}};
      } else if (v == r.min_value) {
        r.argmin.push_back({m, n});
      }
    }
  }
  if (r.argmin.empty())
    throw ValidationError("no feasible group pair for C=" + std::to_string(C) + ", F=" + std::to_string(F));
  return r;
}

}  // namespace sk
