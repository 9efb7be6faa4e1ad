#include <gtest/gtest.h>

#include <set>

#include "fuzz.hpp"
#include "guikit/guienv_gen.hpp"

using namespace guikit;

namespace {

constexpr auto kAbs = PositionSpace::absolute_px;

PageElement element(std::int64_t id, std::string text, Box box, std::int64_t order,
                    bool interactive = false) {
  return {id, std::move(text), box, order, interactive};
}

PageCapture grid_capture(int width, int height, int n, int cell = 60) {
  PageCapture c;
  c.url = "https://example.test";
  c.viewport = {width, height};
  c.screenshot = "shots/page.png";
  const int per_row = width / cell;
  for (int i = 0; i < n; ++i) {
    const double x = (i % per_row) * cell, y = (i / per_row) * cell;
    c.elements.push_back(element(i, "label " + std::to_string(i),
                                 Box{x + 5, y + 5, x + cell - 5, y + cell - 5, kAbs}, i));
  }
  return c;
}

}  // namespace

TEST(GlobalAnnotation, SingleElement) {
  PageCapture c = grid_capture(1000, 500, 0);
  c.elements.push_back(element(1, "Log in", Box{100, 50, 200, 100, kAbs}, 0));
  EXPECT_EQ(global_annotation(c).serialized, "Log in<box>100 100 200 200</box>");
}

TEST(GlobalAnnotation, LayoutOrderAndBlankText) {
  PageCapture c = grid_capture(1000, 1000, 0);
  c.elements.push_back(element(1, "second", Box{0, 0, 10, 10, kAbs}, 2));
  c.elements.push_back(element(2, "first", Box{0, 0, 10, 10, kAbs}, 1));
  c.elements.push_back(element(3, "  ", Box{0, 0, 10, 10, kAbs}, 0));
  EXPECT_EQ(global_annotation(c).serialized,
            "first<box>0 0 10 10</box>\nsecond<box>0 0 10 10</box>");
  EXPECT_EQ(global_annotation(grid_capture(100, 100, 0)).serialized, "");
}

TEST(Crop, TilesTopDown) {
  const auto crops = crop_capture(grid_capture(1366, 2400, 0), CropSpec{});
  ASSERT_EQ(crops.size(), 3u);
  EXPECT_EQ(crops[0].viewport, (Viewport{1366, 1080}));
  EXPECT_EQ(crops[1].viewport, (Viewport{1366, 1080}));
  EXPECT_EQ(crops[2].viewport, (Viewport{1366, 240}));
  EXPECT_EQ(crops[2].crop, (CropRect{0, 2160, 1366, 240}));
}

TEST(Crop, LeftRightWithinRow) {
  const auto crops = crop_capture(grid_capture(4000, 1500, 0), CropSpec{});
  ASSERT_EQ(crops.size(), 6u);
  EXPECT_EQ(crops[1].crop, (CropRect{1920, 0, 1920, 1080}));
  EXPECT_EQ(crops[2].crop, (CropRect{3840, 0, 160, 1080}));
  EXPECT_EQ(crops[3].crop, (CropRect{0, 1080, 1920, 420}));
}

TEST(Crop, SmallPageIsOneIdenticalCrop) {
  const PageCapture c = grid_capture(800, 600, 30);
  const auto crops = crop_capture(c, CropSpec{});
  ASSERT_EQ(crops.size(), 1u);
  EXPECT_EQ(crops[0].elements, c.elements);
  EXPECT_EQ(crops[0].viewport, c.viewport);
}

TEST(Crop, BoundaryElementDropped) {
  PageCapture c = grid_capture(1000, 2000, 0);
  c.elements.push_back(element(1, "straddles", Box{10, 1070, 50, 1090, kAbs}, 0));
  c.elements.push_back(element(2, "edge", Box{10, 1060, 50, 1080, kAbs}, 1));
  const auto crops = crop_capture(c, CropSpec{});
  ASSERT_EQ(crops.size(), 2u);
  ASSERT_EQ(crops[0].elements.size(), 1u);
  EXPECT_EQ(crops[0].elements[0].id, 2);
  EXPECT_TRUE(crops[1].elements.empty());
}

TEST(Filter, Threshold) {
  const CropSpec spec;
  std::vector<PageCapture> crops = {grid_capture(800, 600, 9), grid_capture(800, 600, 10)};
  const auto kept = filter_crops(crops, spec);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].elements.size(), 10u);
  EXPECT_TRUE(filter_crops({}, spec).empty());
}

TEST(Filter, BlankElementsDoNotCount) {
  PageCapture c = grid_capture(800, 600, 10);
  c.elements[3].text = " ";
  EXPECT_TRUE(filter_crops({c}, CropSpec{}).empty());
}

TEST(Sample, DistinctAndDeterministic) {
  const PageCapture c = grid_capture(800, 600, 25);
  const CropSpec spec;
  const auto a = sample_qa(c, spec, 7);
  ASSERT_EQ(a.size(), 10u);
  std::set<std::int64_t> ids;
  for (const auto& s : a) ids.insert(s.element_id);
  EXPECT_EQ(ids.size(), 10u);
  EXPECT_EQ(a, sample_qa(c, spec, 7));
  EXPECT_NE(a, sample_qa(c, spec, 8));
}

TEST(Sample, ExhaustiveWhenExactlyTen) {
  const auto s = sample_qa(grid_capture(800, 600, 10), CropSpec{}, 1);
  std::set<std::int64_t> ids;
  for (const auto& q : s) ids.insert(q.element_id);
  EXPECT_EQ(ids, (std::set<std::int64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}));
}

TEST(Sample, TooFewThrows) {
  EXPECT_THROW(sample_qa(grid_capture(800, 600, 9), CropSpec{}, 1), std::invalid_argument);
}

TEST(Sample, AnswersMatchSourceElement) {
  const PageCapture c = grid_capture(800, 600, 40);
  for (const auto& s : sample_qa(c, CropSpec{}, 3)) {
    const PageElement& e = c.elements[static_cast<std::size_t>(s.element_id)];
    EXPECT_EQ(s.text, e.text);
    EXPECT_EQ(s.box, convert_space(e.box, PositionSpace::scaled_1000, c.viewport));
  }
}

TEST(Sample, KindsAreMixed) {
  const PageCapture c = grid_capture(1200, 1200, 400);
  CropSpec spec;
  spec.samples_per_crop = 400;
  spec.min_elements = 400;
  int text2bbox = 0;
  for (const auto& s : sample_qa(c, spec, 5)) text2bbox += s.kind == QaKind::text2bbox;
  EXPECT_GT(text2bbox, 150);
  EXPECT_LT(text2bbox, 250);
}

TEST(UniformBelow, CoversRangeEvenly) {
  std::mt19937_64 rng(1);
  std::vector<int> counts(7);
  for (int i = 0; i < 70000; ++i) ++counts[uniform_below(rng, 7)];
  for (int n : counts) {
    EXPECT_GT(n, 9500);
    EXPECT_LT(n, 10500);
  }
  EXPECT_THROW(uniform_below(rng, 0), std::invalid_argument);
}

TEST(CropSpec, Problems) {
  EXPECT_TRUE(CropSpec{}.problems().empty());
  CropSpec bad;
  bad.samples_per_crop = 11;
  EXPECT_EQ(bad.problems().size(), 1u);
}

TEST(GuienvProperty, ContainmentRebaseAndDeterminism) {
  fuzz::Gen g(51);
  const CropSpec spec;
  for (int i = 0; i < 30; ++i) {
    const PageCapture c = fuzz::synthetic_capture(g, "p" + std::to_string(i),
                                                  g.integer(400, 4000), g.integer(400, 5000));
    ASSERT_TRUE(validate_capture(c).empty());
    const auto out = generate_guienv(c, spec, 99);
    std::set<std::int64_t> seen;
    for (const auto& crop : out.crops) {
      ASSERT_TRUE(crop.crop);
      EXPECT_LE(crop.viewport.width_px, spec.max_width);
      EXPECT_LE(crop.viewport.height_px, spec.max_height);
      for (const auto& e : crop.elements) {
        EXPECT_GE(e.box.x1, 0);
        EXPECT_GE(e.box.y1, 0);
        EXPECT_LE(e.box.x2, crop.viewport.width_px);
        EXPECT_LE(e.box.y2, crop.viewport.height_px);
        const PageElement& orig = c.elements[static_cast<std::size_t>(e.id)];
        EXPECT_EQ(e.box.x1 + crop.crop->x, orig.box.x1);
        EXPECT_EQ(e.box.y2 + crop.crop->y, orig.box.y2);
        EXPECT_TRUE(seen.insert(e.id).second);
      }
    }
    EXPECT_EQ(out.samples.size(), out.kept.size() * spec.samples_per_crop);
    const auto again = generate_guienv(c, spec, 99);
    EXPECT_EQ(out.samples, again.samples);
    EXPECT_EQ(out.global.serialized, again.global.serialized);
  }
}
