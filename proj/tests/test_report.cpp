#include <gtest/gtest.h>

#include "sk/report.hpp"

using namespace sk;

TEST(Report, RoundTrip) {
  SearchConfig cfg;
  cfg.max_length = 3;
  const auto r = run_search(cfg);
  ReportDocument d;
  d.command = {"search", "--max-len", "3"};
  d.config = config_json(cfg);
  d.results = search_results_json(r, cfg, true);
  d.audit = audit_json(r.audit);
  const auto text = serialize(d);
  EXPECT_EQ(parse_report(text), d);
  EXPECT_EQ(serialize(parse_report(text)), text);
}

TEST(Report, DeterministicAcrossRuns) {
  SearchConfig cfg;
  cfg.max_length = 4;
  const auto a = search_results_json(run_search(cfg), cfg, true).dump();
  cfg.jobs = 2;
  EXPECT_EQ(search_results_json(run_search(cfg), cfg, true).dump(), a);
}

TEST(Report, SchemaVersionChecked) {
  ReportDocument d;
  auto j = json(d);
  j["schema_version"] = kSchemaVersion + 1;
  EXPECT_THROW(parse_report(j.dump()), ValidationError);
}

TEST(Report, RationalsCarryExactAndDecimal) {
  const auto j = rational_json(Rational(1, 3));
  EXPECT_EQ(j["exact"], "1/3");
  EXPECT_EQ(j["decimal"], "0.333333");
  EXPECT_EQ(rational_json(Rational(4))["exact"], "4");
}

TEST(Report, TextTableAligns) {
  TextTable t({"a", "bb"});
  t.add({"ccc", "d"});
  EXPECT_EQ(t.render(), "a    bb\nccc  d\n");
  EXPECT_NE(t.render(true).find("\033[1m"), std::string::npos);
}

TEST(Report, DotColoursAndShuffles) {
  const std::vector<LayerSpec> d{LayerSpec(KernelKind::pointwise_group(2), 4, 4), LayerSpec(KernelKind::depthwise(), 4, 4),
                                 LayerSpec(KernelKind::pointwise_group(2), 4, 4)};
  const auto dot = to_dot(DependencyGraph(d, oracle_input_shape(d)));
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("color=green"), std::string::npos);
  EXPECT_NE(dot.find("color=blue"), std::string::npos);
  EXPECT_NE(dot.find("shuffle1"), std::string::npos);
  // DW edges are channel-parallel: 4 green edges into layer 1.
  std::size_t green = 0;
  for (std::size_t p = dot.find("color=green"); p != std::string::npos; p = dot.find("color=green", p + 1)) ++green;
  EXPECT_EQ(green, 4u);
}
