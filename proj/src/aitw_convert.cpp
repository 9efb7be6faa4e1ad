#include "guikit/aitw_convert.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace guikit::aitw {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool in_unit_square(const Point& p) {
  return p.space == PositionSpace::relative_unit && valid(p);
}

}  // namespace

std::string_view source_action_name(const SourceAction& action) {
  return std::visit(
      overloaded{
          [](const source_actions::DualPoint&) { return "dual_point"; },
          [](const source_actions::Type&) { return "type"; },
          [](const source_actions::Enter&) { return "enter"; },
          [](const source_actions::GoBack&) { return "go_back"; },
          [](const source_actions::GoHome&) { return "go_home"; },
          [](const source_actions::TaskComplete&) { return "task_complete"; },
          [](const source_actions::TaskImpossible&) {
            return "task_impossible";
          },
      },
      action);
}

std::vector<std::string> ConvertConfig::problems() const {
  std::vector<std::string> out;
  if (!(tap_swipe_split_distance > 0.0 && tap_swipe_split_distance < 1.0)) {
    out.push_back("tap_swipe_split_distance must be in (0, 1)");
  }
  if (!in_unit_square(navbar.back_button)) {
    out.push_back("navbar back button must be a relative point in [0,1]^2");
  }
  if (!in_unit_square(navbar.home_button)) {
    out.push_back("navbar home button must be a relative point in [0,1]^2");
  }
  return out;
}

Action convert_gesture(const Point& touch, const Point& lift,
                       const ConvertConfig& cfg) {
  const double d = std::hypot(lift.x - touch.x, lift.y - touch.y);
  if (d <= cfg.tap_swipe_split_distance) return make_tap(touch);
  return make_swipe(touch, lift);
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::no_frames: return "no frames";
    case RejectReason::go_back_without_navbar:
      return "go_back on a frame without the bottom navigation bar";
    case RejectReason::go_home_without_navbar:
      return "go_home on a frame without the bottom navigation bar";
  }
  return "unknown";
}

std::optional<Rejection> check_record(const Record& record) {
  if (record.frames.empty()) {
    return Rejection{0, record.episode_id, 0, RejectReason::no_frames};
  }
  for (std::size_t i = 0; i < record.frames.size(); ++i) {
    const Frame& f = record.frames[i];
    if (f.has_bottom_navbar) continue;
    if (std::holds_alternative<source_actions::GoBack>(f.action)) {
      return Rejection{0, record.episode_id, i,
                       RejectReason::go_back_without_navbar};
    }
    if (std::holds_alternative<source_actions::GoHome>(f.action)) {
      return Rejection{0, record.episode_id, i,
                       RejectReason::go_home_without_navbar};
    }
  }
  return std::nullopt;
}

Episode convert_record(const Record& record, const ConvertConfig& cfg) {
  if (auto rejection = check_record(record)) {
    throw std::invalid_argument("record " + record.episode_id + " rejected: " +
                                std::string(to_string(rejection->reason)));
  }
  Episode ep;
  ep.episode_id = record.episode_id;
  ep.instruction = record.instruction;
  ep.source = std::string(kSourceTag);
  ep.space = PositionSpace::relative_unit;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", cfg.tap_swipe_split_distance);
  ep.metadata["tap_swipe_split_distance"] = buf;

  for (const Frame& f : record.frames) {
    Step step;
    step.screenshot = f.screenshot;
    step.viewport = f.viewport;
    step.actions.push_back(std::visit(
        overloaded{
            [&](const source_actions::DualPoint& a) {
              return convert_gesture(a.touch, a.lift, cfg);
            },
            [](const source_actions::Type& a) { return make_input(a.text); },
            [](const source_actions::Enter&) { return make_enter(); },
            [&](const source_actions::GoBack&) {
              return make_tap(cfg.navbar.back_button);
            },
            [&](const source_actions::GoHome&) {
              return make_tap(cfg.navbar.home_button);
            },
            [](const source_actions::TaskComplete&) {
              return make_answer(std::string(kTaskCompleteAnswer));
            },
            [](const source_actions::TaskImpossible&) {
              return make_answer(std::string(kTaskImpossibleAnswer));
            },
        },
        f.action));
    ep.steps.push_back(std::move(step));
  }
  return ep;
}

FilterResult filter_records(std::vector<Record> records) {
  FilterResult out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (auto rejection = check_record(records[i])) {
      rejection->record_index = i;
      out.rejected.push_back(std::move(*rejection));
    } else {
      out.kept.push_back(std::move(records[i]));
    }
  }
  return out;
}

}  // namespace guikit::aitw
