#pragma once

#include <string>
#include <variant>
#include <vector>

#include "guikit/episode.hpp"

namespace guikit::aitw {

namespace source_actions {
struct DualPoint {
  Point touch;
  Point lift;
};
struct Type {
  std::string text;
};
struct Enter {};
struct GoBack {};
struct GoHome {};
struct TaskComplete {};
struct TaskImpossible {};
}  // namespace source_actions

/// The seven smartphone action kinds found in AITW logs.
using SourceAction =
    std::variant<source_actions::DualPoint, source_actions::Type,
                 source_actions::Enter, source_actions::GoBack,
                 source_actions::GoHome, source_actions::TaskComplete,
                 source_actions::TaskImpossible>;

std::string_view source_action_name(const SourceAction& action);

struct Frame {
  std::string screenshot;
  Viewport viewport;
  SourceAction action;
  bool has_bottom_navbar = true;
};

/// AITW points are in relative units.
struct Record {
  std::string episode_id;
  std::string instruction;
  std::vector<Frame> frames;
};

struct NavbarConfig {
  Point back_button{0.25, 0.975, PositionSpace::relative_unit};
  Point home_button{0.5, 0.975, PositionSpace::relative_unit};
};

struct ConvertConfig {
  /// Gestures whose touch-lift distance is at most this become taps.
  double tap_swipe_split_distance = 0.04;
  NavbarConfig navbar;

  std::vector<std::string> problems() const;
};

inline constexpr std::string_view kTaskCompleteAnswer = "task complete";
inline constexpr std::string_view kTaskImpossibleAnswer = "task impossible";
inline constexpr std::string_view kSourceTag = "smartphone";

/// tap at the touch point when the gesture is short, otherwise a swipe.
Action convert_gesture(const Point& touch, const Point& lift,
                       const ConvertConfig& cfg);

enum class RejectReason {
  no_frames,
  go_back_without_navbar,
  go_home_without_navbar,
};

std::string_view to_string(RejectReason reason);

struct Rejection {
  std::size_t record_index = 0;
  std::string episode_id;
  std::size_t frame_index = 0;
  RejectReason reason = RejectReason::no_frames;
};

/// Checks the navbar precondition; the first violation, if any.
std::optional<Rejection> check_record(const Record& record);

/// Maps every frame to one step. Throws std::invalid_argument when
/// check_record rejects the record.
Episode convert_record(const Record& record, const ConvertConfig& cfg);

struct FilterResult {
  std::vector<Record> kept;
  std::vector<Rejection> rejected;
};

/// Splits records into those satisfying the navbar requirement and the
/// rejected ones, both in input order.
FilterResult filter_records(std::vector<Record> records);

}  // namespace guikit::aitw
