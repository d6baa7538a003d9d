#include <gtest/gtest.h>

#include "sk/sizer.hpp"

using namespace sk;

namespace {

NetworkLayout layout_b(count_t b) {
  NetworkLayout l;
  l.blocks_per_stage = b;
  return l;
}

// Plain ResNet basic-block count, written out by hand.
count_t basic_resnet(count_t w, count_t b) {
  count_t total = 27 * w;
  count_t prev = w;
  for (count_t m : {1, 2, 4, 8}) {
    const count_t s = w * m;
    for (count_t i = 0; i < b; ++i) {
      const count_t cin = i == 0 ? prev : s;
      total += 9 * cin * s + 9 * s * s;
    }
    prev = s;
  }
  return total + prev * 1000;
}

}  // namespace

TEST(Sizer, DepthFormula) {
  const auto l = layout_b(8);
  EXPECT_EQ(depth_of(l, BlockDesign::from_family(Family::PwDwPw), 8), 98);
  EXPECT_EQ(depth_of(l, BlockDesign::parse("pw+std+pw"), 16), 194);
  EXPECT_EQ(depth_of(l, BlockDesign::from_family(Family::DwPw), 8), 66);
  EXPECT_THROW(depth_of(l, BlockDesign::standard_basic(), 0), ValidationError);
}

TEST(Sizer, StandardBlockMatchesHandCount) {
  for (count_t w : {16, 64})
    for (count_t b : {1, 2, 3}) {
      EXPECT_EQ(model_params(layout_b(b), BlockDesign::standard_basic(), w).total_params, basic_resnet(w, b));
    }
}

TEST(Sizer, ConventionsAddWhatTheySay) {
  const auto l = layout_b(2);
  const auto blk = BlockDesign::from_family(Family::DwPw);
  const auto base = model_params(l, blk, 32);
  Conventions c;
  c.classifier = false;
  EXPECT_EQ(base.total_params - model_params(l, blk, 32, c).total_params, 256 * 1000);
  c = {};
  c.projection_shortcuts = true;
  // Three width-changing shortcuts: 32->64, 64->128, 128->256.
  EXPECT_EQ(model_params(l, blk, 32, c).total_params - base.total_params, 32 * 64 + 64 * 128 + 128 * 256);
  c = {};
  c.batch_norm = true;
  const auto bn = model_params(l, blk, 32, c);
  count_t channels = 32;  // stem
  count_t prev = 32;
  for (count_t s : {32, 64, 128, 256}) {
    channels += prev + 3 * s;  // DW keeps the block input width, PW outputs s
    prev = s;
  }
  EXPECT_EQ(bn.total_params - base.total_params, 2 * channels);
}

TEST(Sizer, RelaxedCountAgreesWhereLegal) {
  for (const auto& blk : {BlockDesign::from_family(Family::GcPwg, {4, 8}), BlockDesign::from_family(Family::PwgDwPwg, {4, 4}),
                          BlockDesign::from_family(Family::PwDwPw), BlockDesign::standard_basic()})
    for (count_t w : {32, 64, 128}) {
      const auto l = layout_b(2);
      EXPECT_EQ(detail::relaxed_model_params(l, blk, w, {}), Rational(model_params(l, blk, w).total_params)) << blk.name;
    }
}

TEST(Sizer, DivisibilityErrorsNameTheBlock) {
  try {
    model_params(layout_b(2), BlockDesign::from_family(Family::GcPwg, {16, 16}), 63);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("stage 1 block 1"), std::string::npos);
  }
}

TEST(Sizer, SolveWidthIsMaximal) {
  const auto l = layout_b(2);
  for (const auto& blk : {BlockDesign::from_family(Family::DwPw), BlockDesign::from_family(Family::PwgDwPwg, {4, 4})}) {
    const auto r = solve_width(5'000'000, l, blk);
    EXPECT_LE(r.total_params, 5'000'000);
    for (count_t w = r.width + 1; w <= r.width + 16; ++w) {
      try {
        EXPECT_GT(model_params(l, blk, w).total_params, 5'000'000) << blk.name << " " << w;
      } catch (const ValidationError&) {
      }
    }
  }
  EXPECT_THROW(solve_width(10, l, BlockDesign::standard_basic()), ValidationError);
}

TEST(Sizer, WidthOrderingAtFixedBudget) {
  const auto l = layout_b(2);
  const auto dw = solve_width(11'200'000, l, BlockDesign::from_family(Family::DwPw)).width;
  const auto pdp = solve_width(11'200'000, l, BlockDesign::from_family(Family::PwDwPw)).width;
  const auto shuf = solve_width(11'200'000, l, BlockDesign::from_family(Family::PwgDwPwg, {4, 4})).width;
  EXPECT_LT(dw, pdp);
  EXPECT_LT(pdp, shuf);
}

TEST(Sizer, ParseBlocks) {
  const auto b = BlockDesign::parse("PWG(4)+dw+pwg(4)");
  EXPECT_EQ(b.inner, InnerWidth::Bottleneck);
  EXPECT_EQ(b.name, "PWG(4)+DW+PWG(4) [1:4]");
  EXPECT_EQ(BlockDesign::parse("pw+gc(16)+pw", 2).name, "PW+GC(16)+PW [1:2]");
  EXPECT_EQ(BlockDesign::parse("gc(4)+pwg(32)").inner, InnerWidth::Input);
  EXPECT_EQ(BlockDesign::parse("std+std").inner, InnerWidth::Output);
  EXPECT_THROW(BlockDesign::parse("gc+pw"), ValidationError);
  EXPECT_THROW(BlockDesign::parse("dw(2)+pw"), ValidationError);
  EXPECT_THROW(BlockDesign::parse("dw++pw"), ValidationError);
}

TEST(Sizer, InstantiateWidths) {
  const auto layers = BlockDesign::from_family(Family::PwDwPw).instantiate(64, 128);
  ASSERT_EQ(layers.size(), 3u);
  EXPECT_EQ(layers[0].out_channels(), 32);
  EXPECT_EQ(layers[2].in_channels(), 32);
  EXPECT_EQ(layers[2].out_channels(), 128);
  EXPECT_THROW(BlockDesign::from_family(Family::PwDwPw).instantiate(64, 66), ValidationError);
}
