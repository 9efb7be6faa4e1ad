#include <gtest/gtest.h>

#include <cmath>

#include "fuzz.hpp"
#include "guikit/aitw_convert.hpp"

using namespace guikit;
using namespace guikit::aitw;
namespace sa = guikit::aitw::source_actions;

namespace {

constexpr auto kRel = PositionSpace::relative_unit;

Frame frame(SourceAction a, bool navbar = true) {
  return {"f.png", Viewport{1080, 2400}, std::move(a), navbar};
}

Record record(std::vector<Frame> frames) {
  return {"ep", "turn on wifi", std::move(frames)};
}

}  // namespace

TEST(Gesture, TapOrSwipe) {
  const ConvertConfig cfg;
  EXPECT_EQ(convert_gesture({0.5, 0.5, kRel}, {0.5, 0.5, kRel}, cfg),
            make_tap({0.5, 0.5, kRel}));
  EXPECT_EQ(convert_gesture({0.2, 0.8, kRel}, {0.8, 0.8, kRel}, cfg),
            make_swipe({0.2, 0.8, kRel}, {0.8, 0.8, kRel}));
}

TEST(Gesture, BoundaryIsTap) {
  ConvertConfig cfg;
  cfg.tap_swipe_split_distance = 0.25;
  // 0.25 is exact in binary, so the distance equals the split exactly.
  EXPECT_EQ(convert_gesture({0.5, 0.5, kRel}, {0.75, 0.5, kRel}, cfg).kind(), ActionKind::tap);
  EXPECT_EQ(convert_gesture({0.5, 0.5, kRel}, {0.5, std::nextafter(0.75, 1.0), kRel}, cfg).kind(),
            ActionKind::swipe);
  // With the default split, 0.04 - 0 is exactly the split distance.
  const ConvertConfig def;
  EXPECT_EQ(convert_gesture({0.5, 0.0, kRel}, {0.5, 0.04, kRel}, def).kind(), ActionKind::tap);
  EXPECT_EQ(convert_gesture({0.5, 0.0, kRel}, {0.5, std::nextafter(0.04, 1.0), kRel}, def).kind(),
            ActionKind::swipe);
}

TEST(ConvertRecord, AllSevenKinds) {
  ConvertConfig cfg;
  cfg.navbar.home_button = {0.5, 0.98, kRel};
  const Episode ep = convert_record(
      record({frame(sa::DualPoint{{0.3, 0.3, kRel}, {0.3, 0.31, kRel}}),
              frame(sa::DualPoint{{0.5, 0.8, kRel}, {0.5, 0.2, kRel}}),
              frame(sa::Type{"hello"}), frame(sa::Enter{}), frame(sa::GoBack{}),
              frame(sa::GoHome{}), frame(sa::TaskComplete{}), frame(sa::TaskImpossible{})}),
      cfg);
  ASSERT_EQ(ep.steps.size(), 8u);
  EXPECT_EQ(ep.source, "smartphone");
  EXPECT_EQ(ep.space, kRel);
  EXPECT_EQ(ep.metadata.at("tap_swipe_split_distance"), "0.04");
  const std::vector<Action> want = {
      make_tap({0.3, 0.3, kRel}),
      make_swipe({0.5, 0.8, kRel}, {0.5, 0.2, kRel}),
      make_input("hello"),
      make_enter(),
      make_tap({0.25, 0.975, kRel}),
      make_tap({0.5, 0.98, kRel}),
      make_answer("task complete"),
      make_answer("task impossible")};
  for (std::size_t i = 0; i < want.size(); ++i) {
    ASSERT_EQ(ep.steps[i].actions.size(), 1u);
    EXPECT_EQ(ep.steps[i].actions[0], want[i]) << i;
    EXPECT_EQ(ep.steps[i].viewport, (Viewport{1080, 2400}));
  }
  EXPECT_TRUE(validate_episode(ep).empty());
}

TEST(ConvertRecord, NavbarRequired) {
  const Record r = record({frame(sa::Enter{}, false), frame(sa::GoBack{}, false)});
  const auto rejection = check_record(r);
  ASSERT_TRUE(rejection);
  EXPECT_EQ(rejection->frame_index, 1u);
  EXPECT_EQ(rejection->reason, RejectReason::go_back_without_navbar);
  EXPECT_THROW(convert_record(r, {}), std::invalid_argument);
  // Frames without navbar are fine when they do not need it.
  EXPECT_FALSE(check_record(record({frame(sa::Enter{}, false)})));
}

TEST(FilterRecords, KeepsAndRejects) {
  std::vector<Record> in = {record({frame(sa::GoHome{})}),
                            record({frame(sa::GoHome{}, false)}), record({})};
  in[1].episode_id = "bad";
  const auto out = filter_records(in);
  ASSERT_EQ(out.kept.size(), 1u);
  ASSERT_EQ(out.rejected.size(), 2u);
  EXPECT_EQ(out.rejected[0].record_index, 1u);
  EXPECT_EQ(out.rejected[0].episode_id, "bad");
  EXPECT_EQ(out.rejected[0].reason, RejectReason::go_home_without_navbar);
  EXPECT_EQ(out.rejected[1].reason, RejectReason::no_frames);
  const auto empty = filter_records({});
  EXPECT_TRUE(empty.kept.empty());
  EXPECT_TRUE(empty.rejected.empty());
}

TEST(ConvertConfig, Problems) {
  ConvertConfig cfg;
  EXPECT_TRUE(cfg.problems().empty());
  cfg.tap_swipe_split_distance = 0;
  cfg.navbar.back_button = {1.2, 0.5, kRel};
  EXPECT_EQ(cfg.problems().size(), 2u);
}

TEST(ConvertProperty, RandomRecordsValidateAndKeepFrameCount) {
  fuzz::Gen g(41);
  const ConvertConfig cfg;
  for (int i = 0; i < 500; ++i) {
    std::vector<Frame> frames;
    const int n = g.integer(1, 12);
    for (int k = 0; k < n; ++k) {
      SourceAction a;
      switch (g.integer(0, 6)) {
        case 0: a = sa::DualPoint{g.point(kRel, {1, 1}), g.point(kRel, {1, 1})}; break;
        case 1: a = sa::Type{g.text()}; break;
        case 2: a = sa::Enter{}; break;
        case 3: a = sa::GoBack{}; break;
        case 4: a = sa::GoHome{}; break;
        case 5: a = sa::TaskComplete{}; break;
        default: a = sa::TaskImpossible{}; break;
      }
      frames.push_back({"f" + std::to_string(k) + ".png", g.viewport(), a, g.chance(0.9)});
    }
    const Record r = record(frames);
    if (check_record(r)) continue;
    const Episode a = convert_record(r, cfg);
    EXPECT_EQ(a.steps.size(), r.frames.size());
    EXPECT_TRUE(validate_episode(a).empty());
    EXPECT_EQ(a, convert_record(r, cfg));
  }
}
