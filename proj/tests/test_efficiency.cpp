#include <gtest/gtest.h>

#include <cmath>

#include "sk/efficiency.hpp"

using namespace sk;

TEST(Efficiency, RatioMatchesSummedParamsOnAGrid) {
  int configs = 0;
  for (count_t C : {8, 12, 16, 24, 32, 48, 64, 96, 128, 256})
    for (count_t F : {C, 2 * C, 4 * C, C / 2}) {
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
          EXPECT_EQ(ratio(f, C, F, g) * (9 * C * F), Rational(sum)) << family_name(f) << " " << C << "," << F;
          ++configs;
        }
      }
    }
  EXPECT_GE(configs, 200);
}

TEST(Efficiency, KnownRatios) {
  EXPECT_EQ(ratio(Family::DwPw, 100, 100), Rational(1, 100) + Rational(1, 9));
  EXPECT_EQ(ratio(Family::GcPwg, 36, 36, {18, 2}), Rational(1, 9));
  EXPECT_EQ(ratio(Family::PwDwPw, 64, 64), Rational(64 + 64 + 9, 36 * 64));
}

TEST(Efficiency, ShuffleRatioAtFullProduct) {
  for (count_t C : {16, 32, 64})
    for (count_t M : {2, 4}) {
      const count_t K = C / 4, N = K / M;
      if (N < 2) continue;
      EXPECT_EQ(ratio(Family::PwgDwPwg, C, C, {M, N}), pwg_dw_pwg_ratio_at_product(C, M));
    }
}

TEST(Efficiency, ContinuousOptimaOnPerfectSquares) {
  const auto g = optimal_group_numbers(Family::GcPwg, 64, 576);
  EXPECT_NEAR(g.continuous_n, 8.0, 8.0 * 1e-12);
  const auto s = optimal_group_numbers(Family::PwgDwPwg, 64, 64);
  EXPECT_NEAR(s.continuous_m, 4.0, 4.0 * 1e-12);
  EXPECT_THROW(optimal_group_numbers(Family::DwPw, 64, 64), ValidationError);
}

TEST(Efficiency, DiscreteNeverBeatsContinuousBound) {
  for (count_t C = 4; C <= 128; C += 4)
    for (count_t F : {C, 2 * C}) {
      for (Family f : {Family::GcPwg, Family::PwgDwPwg}) {
        OptimalGroups o;
        try {
          o = optimal_group_numbers(f, C, F);
        } catch (const ValidationError&) {
          continue;
        }
        EXPECT_GE(boost::rational_cast<double>(o.discrete_ratio), o.continuous_ratio * (1 - 1e-12))
            << family_name(f) << " " << C << "," << F;
      }
    }
}

TEST(Efficiency, GreatestWidthAnchors) {
  EXPECT_DOUBLE_EQ(continuous_greatest_width(Family::DwPw, 90, 1), 6.0);
  EXPECT_NEAR(continuous_greatest_width(Family::GcPwg, 1296, 1), 36.0, 1e-9);
  EXPECT_DOUBLE_EQ(continuous_greatest_width(Family::PwDwPw, 17, 1), 4.0);
  EXPECT_NEAR(continuous_greatest_width(Family::PwgDwPwg, 100, 1), 16.0, 1e-9);
  EXPECT_EQ(design_params(Family::DwPw, 6, 6), 90);
  EXPECT_EQ(design_params(Family::GcPwg, 36, 36, {18, 2}), 1296);
  EXPECT_EQ(design_params(Family::PwDwPw, 4, 4), 17);
  EXPECT_EQ(design_params(Family::PwgDwPwg, 16, 16, {2, 2}), 100);
}

TEST(Efficiency, IntegerWidthIsTheLargestThatFits) {
  for (Family f : kFamilies)
    for (count_t P : {1000, 5000, 20000}) {
      const auto w = greatest_width(f, P, 1);
      EXPECT_LE(w.best_params, P);
      EXPECT_LE(static_cast<double>(w.best_width), w.greatest_width + 1e-9);
      for (count_t c = w.best_width + 1; c <= w.best_width + 8; ++c) {
        auto m = min_params_at_width(f, c, 1);
        if (m) EXPECT_GT(m->first, P) << family_name(f) << " " << c;
      }
    }
  EXPECT_THROW(greatest_width(Family::DwPw, 5, 1), ValidationError);
}

TEST(Efficiency, AnalyzeReport) {
  const auto r = analyze(Family::PwgDwPwg, 64, 64, {4, 4});
  EXPECT_TRUE(r.field_matches_standard);
  EXPECT_TRUE(r.constraint_ok);
  EXPECT_TRUE(r.theorem1);
  EXPECT_EQ(r.standard_params, 36864);
  const auto bad = analyze(Family::GcPwg, 64, 64, {16, 8});
  EXPECT_FALSE(bad.constraint_ok);
  EXPECT_FALSE(bad.field_matches_standard);
  EXPECT_THROW(analyze(Family::GcPwg, 64, 64, {5, 2}), ValidationError);
}

TEST(Efficiency, ParseFamily) {
  EXPECT_EQ(parse_family("pwg+dw+pwg"), Family::PwgDwPwg);
  EXPECT_EQ(parse_family("DW+PW"), Family::DwPw);
  EXPECT_THROW(parse_family("dw"), ValidationError);
}
