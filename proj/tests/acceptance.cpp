// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include "sk/sk.hpp"

using namespace sk;

namespace {

int failures = 0;

void report(bool ok, const std::string& id, const std::string& text) {
  std::printf("%s %s %s\n", ok ? "PASS" : "FAIL", id.c_str(), text.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::set<std::string> names(const SearchResult& r) {
  std::set<std::string> out;
  for (const auto& f : r.families) out.insert(f.name());
  return out;
}

const std::set<std::string> kFour{"DW+PW", "GC+PWG", "PW+DW+PW (bottleneck)", "PWG+DW+PWG (bottleneck)"};

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_search(SearchConfig{});
  const double secs = seconds_since(t0);
  bool ok = names(r) == kFour && secs < 60;
  std::ostringstream os;
  os << "search at defaults: " << r.families.size() << " families in " << secs << " s";
  SearchConfig off;
  off.enable_domination_filter = false;
  const auto all = run_search(off);
  const auto n = names(all);
  bool audits = true;
  for (const auto& f : all.families) {
    if (!f.audit_ok(InfoField::standard_reference())) audits = false;
    for (const auto& e : f.audit)
      if (!e.grew && !e.changed_width) audits = false;
  }
  const bool contains = std::includes(n.begin(), n.end(), kFour.begin(), kFour.end());
  ok = ok && contains && audits;
  os << "; filter off: " << all.families.size() << " families, four included " << (contains ? "yes" : "no")
     << ", every audit complete " << (audits ? "yes" : "no");
  report(ok, "1", os.str());
}

void criterion2() {
  count_t cases = 0, bad = 0;
  for (count_t C = 4; C <= 64; C += 2)
    for (count_t F : {C, 2 * C, 4 * C}) {
      const auto r = divisor_grid_min(GroupObjective::GcPwg, C, F);
      ++cases;
      for (const auto& p : r.argmin)
        if (p.m * p.n != C) {
          ++bad;
          std::printf("  counterexample C=%lld F=%lld M=%lld N=%lld\n", static_cast<long long>(C),
                      static_cast<long long>(F), static_cast<long long>(p.m), static_cast<long long>(p.n));
        }
    }
  report(bad == 0, "2", "every minimiser has M*N = C over " + std::to_string(cases) + " (C, F) cases");
}

void criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  count_t designs = 0, via_search = 0, bad = 0;
  for (count_t C : {4, 8, 12, 16}) {
    SearchConfig cfg;
    cfg.reference_C = C;
    cfg.reference_F = C;
    for (int len = 1; len <= 4; ++len) {
      std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
      while (true) {
        Sequence seq;
        for (auto i : idx) seq.push_back(kAlphabet[i]);
        for (const auto& cand : concretize(seq, cfg)) {
          const auto layers = cand.layers(3);
          const auto f = field_of(layers, C);
          const GraphField calc{f.spatial_x, f.spatial_y, f.channel_count(C)};
          ++designs;
          if (graph_information_field(layers) == calc) continue;
          if (C <= kOraclePartitionSearchMaxChannels &&
              best_permutation_field(layers, oracle_input_shape(layers)).best == calc) {
            ++via_search;
            continue;
          }
          ++bad;
          std::printf("  counterexample C=%lld %s calculus %s graph %s\n", static_cast<long long>(C),
                      cand.describe().c_str(), to_string(calc).c_str(),
                      to_string(graph_information_field(layers)).c_str());
        }
        int p = len - 1;
        while (p >= 0 && ++idx[static_cast<std::size_t>(p)] == kAlphabet.size()) idx[static_cast<std::size_t>(p--)] = 0;
        if (p < 0) break;
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << "calculus = reachability on " << designs << " designs (" << via_search << " needed permutation search), "
     << bad << " mismatches, " << secs << " s";
  report(bad == 0 && secs < 300, "3", os.str());
}

void criterion4() {
  int configs = 0, bad = 0;
  for (count_t C : {8, 12, 16, 24, 32, 48, 64, 96, 128, 256})
    for (count_t F : {C / 2, C, 2 * C, 4 * C})
      for (Family f : kFamilies) {
        std::vector<Groups> gs{{}};
        if (f == Family::GcPwg) gs = {{2, 2}, {4, 2}, {C / 2, 2}};
        if (f == Family::PwgDwPwg) gs = {{2, 2}, {2, 4}};
        for (auto g : gs) {
          std::vector<LayerSpec> layers;
          try {
            layers = family_layers(f, C, F, g);
          } catch (const ValidationError&) {
            continue;
          }
          count_t sum = 0;
          for (const auto& l : layers) sum += param_count(l);
          ++configs;
          if (ratio(f, C, F, g) * (9 * C * F) != Rational(sum)) ++bad;
        }
      }
  struct Anchor {
    Family f;
    count_t P;
    double G;
    Groups g;
  };
  bool anchors = true;
  std::ostringstream os;
  for (const auto& a : {Anchor{Family::DwPw, 90, 6, {}}, Anchor{Family::GcPwg, 1296, 36, {18, 2}},
                        Anchor{Family::PwDwPw, 17, 4, {}}, Anchor{Family::PwgDwPwg, 100, 16, {2, 2}}}) {
    const auto w = greatest_width(a.f, a.P, 1);
    const bool ok = std::abs(w.greatest_width - a.G) <= 1e-9 * a.G && w.best_width == static_cast<count_t>(a.G) &&
                    w.best_params == a.P && (!family_has_groups(a.f) || w.best_groups == a.g) &&
                    design_params(a.f, w.best_width, w.best_width, a.g) == a.P;
    anchors = anchors && ok;
    os << " " << family_name(a.f) << "(P=" << a.P << ")->" << w.best_width;
  }
  report(bad == 0 && configs >= 200 && anchors, "4",
         "ratio*9CF = summed params on " + std::to_string(configs) + " configurations (" + std::to_string(bad) +
             " mismatches); width anchors" + os.str());
}

void criterion5() {
  const double n = optimal_group_numbers(Family::GcPwg, 64, 576).continuous_n;
  const double m = optimal_group_numbers(Family::PwgDwPwg, 64, 64).continuous_m;
  bool ok = std::abs(n - 8) <= 8e-12 && std::abs(m - 4) <= 4e-12;
  int checked = 0, below = 0;
  for (count_t C = 4; C <= 256; C += 4)
    for (count_t F : {C, 2 * C, 4 * C})
      for (Family f : {Family::GcPwg, Family::PwgDwPwg}) {
        try {
          const auto o = optimal_group_numbers(f, C, F);
          ++checked;
          if (boost::rational_cast<double>(o.discrete_ratio) < o.continuous_ratio * (1 - 1e-12)) ++below;
        } catch (const ValidationError&) {
        }
      }
  ok = ok && below == 0;
  std::ostringstream os;
  os << "N(F=576) = " << n << ", M(C=64) = " << m << "; discrete ratio >= continuous bound on " << checked
     << " cases (" << below << " below)";
  report(ok, "5", os.str());
}

void criterion6() {
  const std::regex rep("(.+?)\\1+");
  int total = 0, disagree = 0;
  for (int len = 1; len <= 6; ++len) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
    while (true) {
      Sequence seq;
      std::string text;
      for (auto i : idx) {
        seq.push_back(kAlphabet[i]);
        text += static_cast<char>('A' + i);
      }
      ++total;
      if (is_repeated(seq) != std::regex_match(text, rep)) ++disagree;
      int p = len - 1;
      while (p >= 0 && ++idx[static_cast<std::size_t>(p)] == kAlphabet.size()) idx[static_cast<std::size_t>(p--)] = 0;
      if (p < 0) break;
    }
  }
  const auto A = Sk::GC, B = Sk::DW, C = Sk::PW;
  bool examples = is_repeated(Sequence{A, A, A, A, A, A}) && is_repeated(Sequence{A, B, A, B, A, B}) &&
                  is_repeated(Sequence{A, B, C, A, B, C});
  for (Sk s : kAlphabet) examples = examples && !is_repeated(Sequence{s});
  report(total == 5460 && disagree == 0 && examples, "6",
         "tiling and regex agree on " + std::to_string(total) + " sequences (" + std::to_string(disagree) +
             " disagreements); example forms handled");
}

void criterion7() {
  bool all = true;
  const auto sub = [&](bool ok, const std::string& id, const std::string& text) {
    report(ok, id, text);
    --failures;  // counted once, on the summary line
    all = all && ok;
  };
  NetworkLayout b8;
  b8.blocks_per_stage = 8;
  const auto pdp = BlockDesign::parse("pw+std+pw");
  sub(depth_of(b8, pdp, 8) == 98 && depth_of(b8, pdp, 16) == 194, "7a",
      "depth 98 at B=8 and 194 at B=16 for a three-kernel block");

  NetworkLayout b2;
  b2.blocks_per_stage = 2;
  struct Row {
    const char* label;
    BlockDesign block;
    count_t width;
    double printed;
  };
  const std::vector<Row> rows{
      {"standard", BlockDesign::standard_basic(), 64, 11.2},
      {"DW+PW", BlockDesign::from_family(Family::DwPw), 72, 0.8},
      {"DW+PW", BlockDesign::from_family(Family::DwPw), 280, 11.2},
      {"GC(4)+PWG(32)", BlockDesign::parse("gc(4)+pwg(32)"), 128, 11.2},
      {"GC(16)+PWG(16)", BlockDesign::parse("gc(16)+pwg(16)"), 256, 11.3},
      {"PW+DW+PW", BlockDesign::from_family(Family::PwDwPw), 400, 11.0},
      {"PWG(4)+DW+PWG(4)", BlockDesign::parse("pwg(4)+dw+pwg(4)"), 560, 11.3},
      {"ResNet bottleneck", BlockDesign::parse("pw+std+pw", 4), 192, 11.3},
      {"ResNeXt", BlockDesign::parse("pw+gc(16)+pw", 2), 192, 11.1},
      {"GC(100)+PWG(2)", BlockDesign::parse("gc(100)+pwg(2)"), 200, 8.6},
      {"PWG(100)+DW+PWG(2)", BlockDesign::parse("pwg(100)+dw+pwg(2)"), 700, 10.4},
  };
  char id = 'b';
  for (const auto& r : rows) {
    char buf[320];
    try {
      const double got = static_cast<double>(model_params(b2, r.block, r.width).total_params) / 1e6;
      const double dev = (got - r.printed) / r.printed;
      std::string note;
      if (std::abs(dev) > 0.15) {
        // Diagnostic only: which block count would have matched this row.
        for (count_t b = 1; b <= 8; ++b) {
          NetworkLayout alt;
          alt.blocks_per_stage = b;
          const double v = static_cast<double>(model_params(alt, r.block, r.width).total_params) / 1e6;
          if (std::abs(v - r.printed) <= 0.15 * r.printed) {
            char m[64];
            std::snprintf(m, sizeof m, "; B=%lld would give %.2fM", static_cast<long long>(b), v);
            note += m;
          }
        }
        if (note.empty()) note = "; no B in 1..8 lands within 15%";
      }
      std::snprintf(buf, sizeof buf, "%s at width %lld: %.2fM vs printed %.1fM (%+.0f%%, B=2%s)", r.label,
                    static_cast<long long>(r.width), got, r.printed, 100 * dev, note.c_str());
      sub(std::abs(dev) <= 0.15, std::string("7") + id, buf);
    } catch (const ValidationError& e) {
      std::snprintf(buf, sizeof buf, "%s at width %lld: %s", r.label, static_cast<long long>(r.width), e.what());
      sub(false, std::string("7") + id, buf);
    }
    ++id;
  }

  const auto w_dw = solve_width(11'200'000, b2, BlockDesign::from_family(Family::DwPw)).width;
  const auto w_pdp = solve_width(11'200'000, b2, BlockDesign::from_family(Family::PwDwPw)).width;
  const auto w_sh = solve_width(11'200'000, b2, BlockDesign::from_family(Family::PwgDwPwg, {4, 4})).width;
  sub(w_dw < w_pdp && w_pdp < w_sh, std::string("7") + id++,
      "widths at 11.2M: DW+PW " + std::to_string(w_dw) + " < PW+DW+PW " + std::to_string(w_pdp) + " < PWG+DW+PWG " +
          std::to_string(w_sh));
  const auto w_gc = solve_width(8'600'000, b2, BlockDesign::parse("gc(100)+pwg(2)")).width;
  sub(std::abs(static_cast<double>(w_gc) - 200) <= 30, std::string("7") + id++,
      "GC(100)+PWG(2) width at 8.6M: " + std::to_string(w_gc) + " (target 200 +-15%)");
  report(all, "7", "sizing tables (see sub-lines)");
}

void criterion8() {
  report(true, "8", "accuracy columns are not reproduced and not asserted; the field/accuracy link is documented only");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  return failures == 0 ? 0 : 1;
}
