#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sk/efficiency.hpp"
#include "sk/oracles.hpp"
#include "sk/search.hpp"
#include "sk/sizer.hpp"

namespace sk {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline std::string decimal6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline json rational_json(const Rational& r) {
  return {{"exact", to_string(r)}, {"decimal", decimal6(boost::rational_cast<double>(r))}};
}

/// One invocation's output: what was asked, with which settings, and what
/// came back.
struct ReportDocument {
  int schema_version = kSchemaVersion;
  std::vector<std::string> command;
  json config = json::object();
  json results = json::object();
  json audit = json::object();

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

inline void to_json(json& j, const ReportDocument& d) {
  j = json{{"schema_version", d.schema_version},
           {"command", d.command},
           {"config", d.config},
           {"results", d.results},
           {"audit", d.audit}};
}

inline void from_json(const json& j, ReportDocument& d) {
  j.at("schema_version").get_to(d.schema_version);
  if (d.schema_version != kSchemaVersion)
    throw ValidationError("unsupported report schema version " + std::to_string(d.schema_version));
  j.at("command").get_to(d.command);
  d.config = j.at("config");
  d.results = j.at("results");
  d.audit = j.at("audit");
}

inline std::string serialize(const ReportDocument& d) { return json(d).dump(2) + "\n"; }

inline ReportDocument parse_report(const std::string& text) { return json::parse(text).get<ReportDocument>(); }

inline json field_json(const InfoField& f, count_t channels) {
  return {{"spatial_x", f.spatial_x},
          {"spatial_y", f.spatial_y},
          {"coverage", to_string(f.coverage)},
          {"channels", f.channel_count(channels)}};
}

inline json config_json(const SearchConfig& c) {
  return {{"max_length", c.max_length},
          {"channels", c.reference_C},
          {"out_channels", c.reference_F},
          {"alpha", to_string(c.alpha())},
          {"spatial_k", c.spatial_k},
          {"bottleneck_variants", c.enable_bottleneck_variants},
          {"domination_filter", c.enable_domination_filter},
          {"domination_grid", c.domination_grid}};
}

inline json counts_json(const CandidateCounts& c) {
  return {{"examined", c.examined},
          {"valid", c.valid},
          {"inferior_no_growth", c.no_growth},
          {"inferior_early_full", c.early_full},
          {"spatial_mismatch", c.spatial_mismatch},
          {"insufficient_field", c.insufficient}};
}

inline json audit_json(const StageAudit& a) {
  return {{"sequences_raw", a.sequences_raw},
          {"removed_repeated", a.removed_repeated},
          {"sequences_after_composition", a.sequences_after_composition},
          {"sequences_with_valid_candidate", a.sequences_with_valid},
          {"families", a.families},
          {"removed_redundant", a.removed_redundant},
          {"removed_variants", a.removed_variants},
          {"removed_dominated", a.removed_dominated},
          {"families_final", a.families_final},
          {"candidates", counts_json(a.candidates)}};
}

inline json witness_json(const Witness& w) {
  return {{"sequence", to_string(w.sequence)},
          {"groups", w.groups},
          {"widths", w.widths},
          {"params", w.params},
          {"design", w.candidate().describe()}};
}

inline json family_json(const DesignFamily& f, const SearchConfig& cfg, bool with_witnesses) {
  json trace = json::array();
  for (const auto& e : f.audit)
    trace.push_back({{"index", e.index},
                     {"field", field_json(e.field, cfg.reference_C)},
                     {"grew", e.grew},
                     {"changed_width", e.changed_width}});
  json j{{"name", f.name()},
         {"sequence", to_string(f.canonical_sequence)},
         {"bottleneck", f.bottleneck},
         {"min_params", f.min_params},
         {"best", witness_json(f.best)},
         {"witness_count", f.witnesses.size()},
         {"known", identify_known(f, f.best.groups, cfg.reference_C)},
         {"field_trace", trace},
         {"audit_ok", f.audit_ok(InfoField::standard_reference(cfg.spatial_k, cfg.spatial_k))}};
  if (with_witnesses) {
    json ws = json::array();
    for (const auto& w : f.witnesses) ws.push_back(witness_json(w));
    j["witnesses"] = ws;
  }
  return j;
}

inline json search_results_json(const SearchResult& r, const SearchConfig& cfg, bool with_witnesses) {
  json fams = json::array();
  for (const auto& f : r.families) fams.push_back(family_json(f, cfg, with_witnesses));
  json dropped = json::array();
  for (const auto& d : r.dropped) dropped.push_back({{"name", d.family.name()}, {"reason", d.reason}});
  return {{"families", fams}, {"dropped", dropped}};
}

inline json groups_json(const std::vector<GroupPair>& gs) {
  json a = json::array();
  for (const auto& g : gs) a.push_back({{"M", g.m}, {"N", g.n}});
  return a;
}

inline json efficiency_json(const EfficiencyReport& r) {
  json j{{"family", family_name(r.family)},
         {"C", r.C},
         {"F", r.F},
         {"ratio", rational_json(r.ratio)},
         {"params", r.params},
         {"standard_params", r.standard_params},
         {"field", field_json(r.field, r.C)},
         {"field_matches_standard", r.field_matches_standard}};
  if (family_has_groups(r.family)) {
    j["groups"] = {{"M", r.groups.m}, {"N", r.groups.n}};
    j["constraint_ok"] = r.constraint_ok;
    j["theorem1"] = r.theorem1;
  }
  return j;
}

inline json optimal_json(const OptimalGroups& o) {
  return {{"continuous", {{"M", decimal6(o.continuous_m)}, {"N", decimal6(o.continuous_n)},
                          {"ratio", decimal6(o.continuous_ratio)}}},
          {"discrete", {{"argmin", groups_json(o.discrete)},
                        {"params", o.discrete_params},
                        {"ratio", rational_json(o.discrete_ratio)}}},
          {"gap", decimal6(o.gap())}};
}

inline json width_json(const WidthReport& w) {
  json j{{"family", family_name(w.family)},
         {"budget", w.budget},
         {"alpha", to_string(w.alpha)},
         {"greatest_width", decimal6(w.greatest_width)},
         {"best_width", w.best_width},
         {"best_params", w.best_params},
         {"condition", w.condition}};
  if (family_has_groups(w.family)) j["best_groups"] = {{"M", w.best_groups.m}, {"N", w.best_groups.n}};
  return j;
}

inline json sizing_json(const SizingReport& r) {
  json stages = json::array();
  for (const auto& s : r.stages)
    stages.push_back({{"stage", s.index},
                      {"width", s.width},
                      {"output_size", s.spatial},
                      {"block_params", s.block_params},
                      {"shortcut_params", s.shortcut_params},
                      {"norm_params", s.norm_params},
                      {"params", s.params()},
                      {"macs", s.macs}});
  return {{"block", r.block},
          {"width", r.width},
          {"blocks_per_stage", r.blocks_per_stage},
          {"depth", r.depth},
          {"stem_params", r.stem_params},
          {"classifier_params", r.classifier_params},
          {"stages", stages},
          {"total_params", r.total_params},
          {"total_params_millions", decimal6(static_cast<double>(r.total_params) / 1e6)},
          {"total_macs", r.total_macs},
          {"conventions", r.conventions.describe()}};
}

/// Plain-text column table.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render(bool emphasise_header = false) const {
    std::vector<std::size_t> w;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (w.size() <= i) w.push_back(0);
        w[i] = std::max(w[i], r[i].size());
      }
    std::ostringstream os;
    for (std::size_t ri = 0; ri < rows_.size(); ++ri) {
      std::string line;
      for (std::size_t i = 0; i < rows_[ri].size(); ++i) {
        line += rows_[ri][i];
        if (i + 1 < rows_[ri].size()) line += std::string(w[i] - rows_[ri][i].size() + 2, ' ');
      }
      if (ri == 0 && emphasise_header) line = "\033[1m" + line + "\033[0m";
      os << line << "\n";
    }
    return os.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

/// Graphviz description of a small design: one node per (layer, channel) at
/// a fixed spatial slice. Green edges carry spatial dependency, blue edges
/// channel mixing; shuffles appear as their own node column.
inline std::string to_dot(const DependencyGraph& g) {
  std::ostringstream os;
  const auto layers = g.layers();
  os << "digraph design {\n  rankdir=LR;\n  node [shape=circle, fontsize=9, width=0.3];\n";
  const auto emit_column = [&](const std::string& id, const std::string& label, count_t width, const char* fill) {
    os << "  subgraph cluster_" << id << " {\n    label=\"" << label << "\";\n    style=dashed;\n";
    for (count_t c = 0; c < width; ++c)
      os << "    " << id << "_" << c << " [label=\"" << c << "\", style=filled, fillcolor=\"" << fill << "\"];\n";
    os << "  }\n";
  };
  emit_column("input", "input", layers.front().in_channels(), "white");
  std::string prev = "input";
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& perm = g.permutation_before(l);
    const bool shuffled = l > 0 && perm != identity_permutation(layers[l].in_channels());
    std::string src_col = prev;
    if (shuffled) {
      const std::string pid = "shuffle" + std::to_string(l);
      emit_column(pid, "shuffle", layers[l].in_channels(), "lightyellow");
      for (count_t p = 0; p < layers[l].in_channels(); ++p)
        os << "  " << prev << "_" << perm[static_cast<std::size_t>(p)] << " -> " << pid << "_" << p
           << " [color=gray, style=dashed];\n";
      src_col = pid;
    }
    const std::string id = "layer" + std::to_string(l);
    emit_column(id, std::to_string(l) + ": " + layers[l].describe(), layers[l].out_channels(), "lightgray");
    const char* colour = layers[l].kind().has_spatial_extent() ? "green" : "blue";
    for (count_t f = 0; f < layers[l].out_channels(); ++f)
      for (count_t c : g.channel_sources(l, f))
        os << "  " << src_col << "_" << c << " -> " << id << "_" << f << " [color=" << colour << "];\n";
    prev = id;
  }
  os << "}\n";
  return os.str();
}

}  // namespace sk
