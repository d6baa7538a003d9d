#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "sk/sk.hpp"

using namespace sk;

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kDisagreement = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool use_colour() { return std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO); }

std::string str(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::vector<count_t> parse_list(const std::string& text) {
  std::vector<count_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("expected a comma-separated list of integers, got '" + text + "'");
    }
  }
  return out;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw UsageError("expected an integer or a fraction like 3/2, got '" + text + "'");
  }
}

Groups parse_groups(const std::string& text) {
  auto v = parse_list(text);
  if (v.size() != 2) throw UsageError("--groups takes two numbers M,N");
  return {v[0], v[1]};
}

Family family_arg(const std::string& text) {
  try {
    return parse_family(text);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
}

Groups default_groups(Family f) {
  if (f == Family::GcPwg) return {16, 16};
  if (f == Family::PwgDwPwg) return {4, 4};
  return {};
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  int max_len = 6;
  count_t channels = 64;
  std::optional<count_t> out_channels;
  std::optional<std::string> alpha;
  bool no_bottleneck = false;
  bool no_domination = false;
  bool audit = false;
  int jobs = 1;
};

ReportDocument cmd_search(const SearchArgs& a) {
  SearchConfig cfg;
  if (a.max_len < 1 || a.max_len > kMaxDesignLength)
    throw UsageError("--max-len must be between 1 and " + std::to_string(kMaxDesignLength));
  if (a.out_channels && a.alpha) throw UsageError("--out-channels and --alpha are mutually exclusive");
  if (a.channels < 1) throw UsageError("--channels must be positive");
  cfg.max_length = a.max_len;
  cfg.reference_C = a.channels;
  cfg.reference_F = a.channels;
  if (a.out_channels) cfg.reference_F = *a.out_channels;
  if (a.alpha) {
    const Rational f = parse_rational(*a.alpha) * a.channels;
    if (f.denominator() != 1 || f.numerator() < 1) throw ValidationError("alpha * channels must be a positive integer");
    cfg.reference_F = f.numerator();
  }
  cfg.enable_bottleneck_variants = !a.no_bottleneck;
  cfg.enable_domination_filter = !a.no_domination;
  cfg.jobs = a.jobs;
  cfg.validate();
  const auto r = run_search(cfg);
  ReportDocument doc;
  doc.config = config_json(cfg);
  doc.results = search_results_json(r, cfg, a.audit);
  doc.audit = audit_json(r.audit);
  return doc;
}

std::string render_search(const ReportDocument& d, bool audit) {
  std::ostringstream os;
  TextTable t({"family", "best assignment", "params", "witnesses", "known as", "audit"});
  for (const auto& f : d.results["families"]) {
    std::string known;
    for (const auto& k : f["known"]) known += (known.empty() ? "" : ", ") + k.get<std::string>();
    t.add({str(f["name"]), str(f["best"]["design"]), str(f["min_params"]), str(f["witness_count"]),
           known.empty() ? "-" : known, f["audit_ok"].get<bool>() ? "ok" : "FAILED"});
  }
  const auto& c = d.config;
  os << "reference C=" << str(c["channels"]) << " F=" << str(c["out_channels"]) << " k=" << str(c["spatial_k"])
     << ", max length " << str(c["max_length"]) << ", domination filter "
     << (c["domination_filter"].get<bool>() ? "on" : "off") << "\n\n";
  os << t.render(use_colour());
  const auto& s = d.audit;
  os << "\nstages: " << str(s["sequences_raw"]) << " raw, " << str(s["removed_repeated"]) << " repeated, "
     << str(s["sequences_after_composition"]) << " after composition, " << str(s["sequences_with_valid_candidate"])
     << " with a valid candidate, " << str(s["families"]) << " families, " << str(s["removed_redundant"])
     << " redundant, " << str(s["removed_variants"]) << " variants, " << str(s["removed_dominated"])
     << " dominated, " << str(s["families_final"]) << " final\n";
  const auto& cc = s["candidates"];
  os << "candidates: " << str(cc["examined"]) << " examined, " << str(cc["valid"]) << " valid, "
     << str(cc["inferior_no_growth"]) << " no growth, " << str(cc["inferior_early_full"]) << " early full, "
     << str(cc["spatial_mismatch"]) << " spatial mismatch, " << str(cc["insufficient_field"]) << " insufficient\n";
  if (audit) {
    os << "\nfield traces:\n";
    for (const auto& f : d.results["families"]) {
      os << "  " << str(f["name"]) << ":";
      for (const auto& e : f["field_trace"])
        os << " (" << str(e["field"]["spatial_x"]) << "," << str(e["field"]["spatial_y"]) << ","
           << str(e["field"]["channels"]) << ")" << (e["grew"].get<bool>() ? "" : "*");
      os << "\n";
      if (f.contains("witnesses"))
        for (const auto& w : f["witnesses"]) os << "    " << str(w["design"]) << "  " << str(w["params"]) << "\n";
    }
    os << "  (* = width change without field growth)\n\ndropped:\n";
    for (const auto& x : d.results["dropped"]) os << "  " << str(x["name"]) << ": " << str(x["reason"]) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string family;
  count_t c = 64;
  std::optional<count_t> f;
  std::optional<std::string> groups;
};

ReportDocument cmd_analyze(const AnalyzeArgs& a) {
  const Family fam = family_arg(a.family);
  const count_t F = a.f.value_or(a.c);
  ReportDocument doc;
  doc.config = {{"family", family_name(fam)}, {"C", a.c}, {"F", F}};
  std::optional<OptimalGroups> opt;
  Groups g;
  if (family_has_groups(fam)) {
    opt = optimal_group_numbers(fam, a.c, F);
    g = a.groups ? parse_groups(*a.groups) : Groups{opt->discrete.front().m, opt->discrete.front().n};
  } else if (a.groups) {
    throw UsageError(std::string(family_name(fam)) + " takes no --groups");
  }
  const auto rep = analyze(fam, a.c, F, g);
  doc.results = efficiency_json(rep);
  if (opt) doc.results["optimal_groups"] = optimal_json(*opt);
  std::vector<int> per_kernel;
  const auto seq = family_sequence(fam);
  for (std::size_t i = 0, gi = 0; i < seq.size(); ++i)
    per_kernel.push_back(is_grouped(seq[i]) ? static_cast<int>(gi++ == 0 ? g.m : g.n) : 1);
  doc.results["known"] = identify_known(seq, family_bottleneck(fam), per_kernel, a.c);
  return doc;
}

std::string render_analyze(const ReportDocument& d) {
  std::ostringstream os;
  const auto& r = d.results;
  os << str(r["family"]) << " at C=" << str(r["C"]) << ", F=" << str(r["F"]);
  if (r.contains("groups")) os << ", M=" << str(r["groups"]["M"]) << ", N=" << str(r["groups"]["N"]);
  os << "\n";
  os << "  params:        " << str(r["params"]) << " (standard " << str(r["standard_params"]) << ")\n";
  os << "  ratio:         " << str(r["ratio"]["exact"]) << " = " << str(r["ratio"]["decimal"]) << "\n";
  os << "  field:         (" << str(r["field"]["spatial_x"]) << ", " << str(r["field"]["spatial_y"]) << ", "
     << str(r["field"]["channels"]) << ")" << (r["field_matches_standard"].get<bool>() ? " = standard" : " != standard")
     << "\n";
  if (r.contains("constraint_ok")) {
    os << "  M*N <= width:  " << (r["constraint_ok"].get<bool>() ? "yes" : "no") << "\n";
    os << "  M*N = width:   " << (r["theorem1"].get<bool>() ? "yes" : "no") << "\n";
  }
  if (r.contains("optimal_groups")) {
    const auto& o = r["optimal_groups"];
    os << "  continuous:    M=" << str(o["continuous"]["M"]) << " N=" << str(o["continuous"]["N"])
       << " ratio>=" << str(o["continuous"]["ratio"]) << "\n";
    os << "  discrete:      ";
    for (const auto& p : o["discrete"]["argmin"]) os << "(" << str(p["M"]) << "," << str(p["N"]) << ") ";
    os << "params " << str(o["discrete"]["params"]) << " ratio " << str(o["discrete"]["ratio"]["exact"]) << " = "
       << str(o["discrete"]["ratio"]["decimal"]) << ", gap " << str(o["gap"]) << "\n";
  }
  std::string known;
  for (const auto& k : r["known"]) known += (known.empty() ? "" : ", ") + k.get<std::string>();
  os << "  known as:      " << (known.empty() ? "-" : known) << "\n";
  return os.str();
}

// ---------------------------------------------------------------- size / width

struct SizeArgs {
  std::optional<std::string> family;
  std::optional<std::string> block;
  std::optional<std::string> groups;
  count_t divisor = 4;
  count_t width = 0;
  count_t blocks = 8;
  count_t budget = 0;
  std::string alpha = "1";
  bool single_layer = false;
  bool bn = false;
  bool bias = false;
  bool projection = false;
  bool no_classifier = false;
};

BlockDesign block_from(const SizeArgs& a) {
  if (a.family.has_value() == a.block.has_value()) throw UsageError("give exactly one of --family or --block");
  if (a.block) {
    if (a.groups) throw UsageError("--groups applies to --family; write group numbers inside --block");
    return BlockDesign::parse(*a.block, a.divisor);
  }
  if (*a.family == "standard") return BlockDesign::standard_basic();
  const Family f = family_arg(*a.family);
  return BlockDesign::from_family(f, a.groups ? parse_groups(*a.groups) : default_groups(f));
}

Conventions conventions_from(const SizeArgs& a) {
  Conventions c;
  c.batch_norm = a.bn;
  c.bias = a.bias;
  c.projection_shortcuts = a.projection;
  c.classifier = !a.no_classifier;
  return c;
}

ReportDocument cmd_size(const SizeArgs& a) {
  if (a.width < 1) throw UsageError("--width must be positive");
  NetworkLayout layout;
  layout.blocks_per_stage = a.blocks;
  const auto block = block_from(a);
  ReportDocument doc;
  doc.config = {{"block", block.name}, {"width", a.width}, {"blocks_per_stage", a.blocks}};
  doc.results = sizing_json(model_params(layout, block, a.width, conventions_from(a)));
  return doc;
}

ReportDocument cmd_width(const SizeArgs& a) {
  if (a.budget < 1) throw UsageError("--budget must be positive");
  ReportDocument doc;
  if (a.single_layer) {
    if (!a.family) throw UsageError("--single-layer needs --family");
    const Family f = family_arg(*a.family);
    doc.config = {{"family", family_name(f)}, {"budget", a.budget}, {"alpha", a.alpha}, {"scope", "single layer"}};
    doc.results = width_json(greatest_width(f, a.budget, parse_rational(a.alpha)));
    return doc;
  }
  NetworkLayout layout;
  layout.blocks_per_stage = a.blocks;
  const auto block = block_from(a);
  doc.config = {{"block", block.name}, {"budget", a.budget}, {"blocks_per_stage", a.blocks}, {"scope", "network"}};
  doc.results = sizing_json(solve_width(a.budget, layout, block, conventions_from(a)));
  return doc;
}

std::string render_sizing(const json& r) {
  std::ostringstream os;
  os << str(r["block"]) << ", width " << str(r["width"]) << ", B=" << str(r["blocks_per_stage"]) << ", depth "
     << str(r["depth"]) << "\n";
  TextTable t({"stage", "width", "output", "block params", "shortcut", "norm", "MACs"});
  t.add({"stem", "", "", str(r["stem_params"]), "", "", ""});
  for (const auto& s : r["stages"])
    t.add({str(s["stage"]), str(s["width"]), str(s["output_size"]) + "x" + str(s["output_size"]),
           str(s["block_params"]), str(s["shortcut_params"]), str(s["norm_params"]), str(s["macs"])});
  t.add({"classifier", "", "", str(r["classifier_params"]), "", "", ""});
  os << t.render(use_colour());
  os << "total: " << str(r["total_params"]) << " parameters (" << str(r["total_params_millions"]) << "M), "
     << str(r["total_macs"]) << " MACs\nconventions: " << str(r["conventions"]) << "\n";
  return os.str();
}

std::string render_width(const ReportDocument& d) {
  if (d.config["scope"] == "network") return render_sizing(d.results);
  const auto& r = d.results;
  std::ostringstream os;
  os << str(r["family"]) << " single layer, budget " << str(r["budget"]) << ", alpha " << str(r["alpha"]) << "\n";
  os << "  closed-form G:  " << str(r["greatest_width"]) << " (" << str(r["condition"]) << ")\n";
  os << "  best width:     " << str(r["best_width"]) << " with " << str(r["best_params"]) << " parameters";
  if (r.contains("best_groups")) os << " at M=" << str(r["best_groups"]["M"]) << ", N=" << str(r["best_groups"]["N"]);
  os << "\n";
  return os.str();
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  bool theorem1 = false;
  bool infofield = false;
  count_t c_max = 0;
  int len_max = 4;
};

struct VerifyOutcome {
  ReportDocument doc;
  bool agreed = true;
};

json verify_theorem1(count_t c_max, bool& agreed) {
  count_t cases = 0;
  json bad = json::array();
  for (count_t C = 4; C <= c_max; C += 2)
    for (count_t F : {C, 2 * C, 4 * C}) {
      const auto r = divisor_grid_min(GroupObjective::GcPwg, C, F);
      ++cases;
      for (const auto& p : r.argmin)
        if (p.m * p.n != C)
          bad.push_back({{"C", C}, {"F", F}, {"M", p.m}, {"N", p.n}, {"params", r.min_value}});
    }
  if (!bad.empty()) agreed = false;
  return {{"cases", cases}, {"counterexamples", bad}, {"pass", bad.empty()}};
}

json verify_infofield(count_t c_max, int len_max, bool& agreed) {
  count_t designs = 0, by_interleave = 0, by_search = 0;
  json bad = json::array();
  for (count_t C = 4; C <= c_max; C += 4) {
    SearchConfig cfg;
    cfg.reference_C = C;
    cfg.reference_F = C;
    for (int len = 1; len <= len_max; ++len) {
      std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
      Sequence seq(static_cast<std::size_t>(len));
      while (true) {
        for (int i = 0; i < len; ++i) seq[i] = kAlphabet[idx[i]];
        for (const auto& cand : concretize(seq, cfg)) {
          const auto layers = cand.layers(3);
          const auto f = field_of(layers, C);
          const GraphField calc{f.spatial_x, f.spatial_y, f.channel_count(C)};
          const auto g = graph_information_field(layers);
          ++designs;
          if (g == calc) {
            ++by_interleave;
            continue;
          }
          if (C <= kOraclePartitionSearchMaxChannels &&
              best_permutation_field(layers, oracle_input_shape(layers)).best == calc) {
            ++by_search;
            continue;
          }
          bad.push_back({{"C", C}, {"design", cand.describe()}, {"calculus", to_string(calc)}, {"graph", to_string(g)}});
        }
        int p = len - 1;
        while (p >= 0 && ++idx[static_cast<std::size_t>(p)] == kAlphabet.size()) idx[static_cast<std::size_t>(p--)] = 0;
        if (p < 0) break;
      }
    }
  }
  if (!bad.empty()) agreed = false;
  return {{"designs", designs},
          {"matched_by_interleave", by_interleave},
          {"matched_by_permutation_search", by_search},
          {"counterexamples", bad},
          {"pass", bad.empty()}};
}

VerifyOutcome cmd_verify(VerifyArgs a) {
  if (!a.theorem1 && !a.infofield) a.theorem1 = a.infofield = true;
  if (a.c_max == 0) a.c_max = -1;  // per-check defaults below
  if (a.len_max < 1 || a.len_max > 4) throw UsageError("--len-max must be between 1 and 4");
  VerifyOutcome out;
  out.doc.config = {{"len_max", a.len_max}};
  if (a.theorem1) {
    const count_t c = a.c_max == -1 ? 64 : a.c_max;
    if (c < 4) throw UsageError("--c-max must be at least 4");
    out.doc.config["theorem1_c_max"] = c;
    out.doc.results["theorem1"] = verify_theorem1(c, out.agreed);
  }
  if (a.infofield) {
    const count_t c = a.c_max == -1 ? 16 : a.c_max;
    if (c < 4) throw UsageError("--c-max must be at least 4");
    if (c > kOracleMaxChannels) throw UsageError("--c-max for --infofield is limited to 16");
    out.doc.config["infofield_c_max"] = c;
    out.doc.results["infofield"] = verify_infofield(c, a.len_max, out.agreed);
  }
  return out;
}

std::string render_verify(const ReportDocument& d) {
  std::ostringstream os;
  if (d.results.contains("theorem1")) {
    const auto& t = d.results["theorem1"];
    os << (t["pass"].get<bool>() ? "PASS" : "FAIL") << " theorem1: " << str(t["cases"])
       << " (C, F) cases, every minimiser has M*N = C\n";
    for (const auto& b : t["counterexamples"]) os << "  counterexample " << b.dump() << "\n";
  }
  if (d.results.contains("infofield")) {
    const auto& t = d.results["infofield"];
    os << (t["pass"].get<bool>() ? "PASS" : "FAIL") << " infofield: " << str(t["designs"])
       << " designs, calculus = reachability (" << str(t["matched_by_interleave"]) << " by interleave, "
       << str(t["matched_by_permutation_search"]) << " by permutation search)\n";
    for (const auto& b : t["counterexamples"]) os << "  counterexample " << b.dump() << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- graph

struct GraphArgs {
  std::string design;
  count_t channels = 4;
  std::optional<count_t> out_channels;
  std::optional<std::string> groups;
  bool bottleneck = false;
};

std::string cmd_graph(const GraphArgs& a) {
  const count_t C = a.channels;
  const count_t F = a.out_channels.value_or(C);
  if (C < 1 || F < 1) throw UsageError("channel counts must be positive");
  std::vector<LayerSpec> layers;
  if (a.design == "standard") {
    if (a.groups) throw UsageError("standard takes no --groups");
    layers.emplace_back(KernelKind::standard(3), C, F);
  } else {
    const auto seq = parse_sequence(a.design);
    const auto plan = channel_plan(seq, C, F, a.bottleneck);
    if (!plan) throw ValidationError("no legal channel plan for " + to_string(seq));
    std::vector<count_t> gs = a.groups ? parse_list(*a.groups) : std::vector<count_t>{};
    const auto grouped = static_cast<std::size_t>(std::count_if(seq.begin(), seq.end(), is_grouped));
    if (gs.empty()) {
      for (std::size_t i = 0; i < seq.size(); ++i)
        if (is_grouped(seq[i])) gs.push_back(2);
    }
    if (gs.size() != grouped)
      throw UsageError("--groups needs " + std::to_string(grouped) + " numbers, one per grouped kernel");
    for (std::size_t i = 0, gi = 0; i < seq.size(); ++i) {
      const int g = is_grouped(seq[i]) ? static_cast<int>(gs[gi++]) : 1;
      layers.emplace_back(make_kind(seq[i], g, 3), (*plan)[i], (*plan)[i + 1]);
    }
  }
  return to_dot(DependencyGraph(layers, oracle_input_shape(layers)));
}

void emit(const ReportDocument& d, const std::string& format, const std::string& table) {
  if (format == "json")
    std::cout << serialize(d);
  else
    std::cout << table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse-kernel design-space search, efficiency analysis and model sizing"};
  app.require_subcommand(1);
  std::string format = "table";
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));
  };

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "enumerate and prune kernel sequences");
  search->add_option("--max-len", sa.max_len, "longest sequence (1-6)");
  search->add_option("--channels", sa.channels, "reference input channels C");
  search->add_option("--out-channels", sa.out_channels, "reference output channels F (default C)");
  search->add_option("--alpha", sa.alpha, "F = alpha * C, e.g. 2 or 3/2");
  search->add_flag("--no-bottleneck", sa.no_bottleneck, "skip bottleneck variants");
  search->add_flag("--no-domination", sa.no_domination, "keep every valid family");
  search->add_flag("--audit", sa.audit, "include witnesses, field traces and dropped families");
  search->add_option("--jobs", sa.jobs, "worker threads");
  add_format(search);

  AnalyzeArgs aa;
  auto* an = app.add_subcommand("analyze", "parameter efficiency of one family");
  an->add_option("family", aa.family, "dw+pw, gc+pwg, pw+dw+pw or pwg+dw+pwg")->required();
  an->add_option("--c", aa.c, "input channels");
  an->add_option("--f", aa.f, "output channels (default C)");
  an->add_option("--groups", aa.groups, "M,N (default: discrete optimum)");
  add_format(an);

  SizeArgs za;
  const auto add_block_opts = [&](CLI::App* sub) {
    sub->add_option("--family", za.family, "standard, dw+pw, gc+pwg, pw+dw+pw or pwg+dw+pwg");
    sub->add_option("--block", za.block, "explicit block, e.g. 'pw+gc(16)+pw'");
    sub->add_option("--groups", za.groups, "M,N for grouped families (defaults 16,16 and 4,4)");
    sub->add_option("--bottleneck-divisor", za.divisor, "K = output / divisor for --block bottlenecks");
    sub->add_option("--blocks", za.blocks, "blocks per stage B");
    sub->add_flag("--include-bn", za.bn, "count batch-norm scale and shift");
    sub->add_flag("--include-bias", za.bias, "count convolution and classifier biases");
    sub->add_flag("--projection", za.projection, "1x1 projection on width-changing shortcuts");
    sub->add_flag("--no-classifier", za.no_classifier, "leave out the final fully connected layer");
    add_format(sub);
  };
  auto* size = app.add_subcommand("size", "whole-network parameter and MAC count");
  size->add_option("--width", za.width, "stage-1 width")->required();
  add_block_opts(size);
  auto* width = app.add_subcommand("width", "greatest width under a parameter budget");
  width->add_option("--budget", za.budget, "parameter budget P")->required();
  width->add_option("--alpha", za.alpha, "F = alpha * C (single layer)");
  width->add_flag("--single-layer", za.single_layer, "closed-form width of one layer instead of the network");
  add_block_opts(width);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the brute-force oracles");
  verify->add_flag("--theorem1", va.theorem1, "exhaust group pairs for the M*N = C optimum");
  verify->add_flag("--infofield", va.infofield, "compare the field calculus with graph reachability");
  verify->add_option("--c-max", va.c_max, "largest channel count (defaults 64 and 16)");
  verify->add_option("--len-max", va.len_max, "longest sequence for --infofield (1-4)");
  add_format(verify);

  GraphArgs ga;
  auto* graph = app.add_subcommand("graph", "Graphviz drawing of a small design");
  graph->add_option("design", ga.design, "e.g. dw+pw, pwg+dw+pwg or standard")->required();
  graph->add_option("--channels", ga.channels, "input channels");
  graph->add_option("--out-channels", ga.out_channels, "output channels (default C)");
  graph->add_option("--groups", ga.groups, "group numbers of the grouped kernels, in order");
  graph->add_flag("--bottleneck", ga.bottleneck, "run intermediates at F/4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  const std::vector<std::string> command(argv + 1, argv + argc);
  try {
    if (*search) {
      auto d = cmd_search(sa);
      d.command = command;
      emit(d, format, render_search(d, sa.audit));
    } else if (*an) {
      auto d = cmd_analyze(aa);
      d.command = command;
      emit(d, format, render_analyze(d));
    } else if (*size) {
      auto d = cmd_size(za);
      d.command = command;
      emit(d, format, render_sizing(d.results));
    } else if (*width) {
      auto d = cmd_width(za);
      d.command = command;
      emit(d, format, render_width(d));
    } else if (*verify) {
      if (verify->count("--c-max") && va.c_max < 1) throw UsageError("--c-max must be positive");
      auto out = cmd_verify(va);
      out.doc.command = command;
      emit(out.doc, format, render_verify(out.doc));
      if (!out.agreed) return kDisagreement;
    } else if (*graph) {
      std::cout << cmd_graph(ga);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}
