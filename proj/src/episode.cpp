#include "guikit/episode.hpp"

#include <set>

namespace guikit {

namespace {

bool within_viewport(const Point& p, const Viewport& vp) {
  return p.x <= vp.width_px && p.y <= vp.height_px;
}

bool within_viewport(const Box& b, const Viewport& vp) {
  return b.x2 <= vp.width_px && b.y2 <= vp.height_px;
}

class StepChecker {
 public:
  StepChecker(const Episode& episode, std::size_t step_index,
              std::vector<Diagnostic>& out)
      : episode_(episode),
        step_(episode.steps[step_index]),
        index_(step_index),
        out_(out) {}

  void run() {
    if (!step_.viewport.valid()) {
      report({}, "viewport must have positive width and height");
    }
    if (step_.actions.empty()) report({}, "step has no golden actions");
    check_candidates();
    for (std::size_t i = 0; i < step_.actions.size(); ++i) {
      check_action(i, step_.actions[i]);
    }
  }

 private:
  void report(std::optional<std::size_t> action, std::string message) {
    out_.push_back({index_, action, std::move(message)});
  }

  void check_box(std::optional<std::size_t> action, const Box& b,
                 std::string_view what) {
    if (b.space != episode_.space) {
      report(action, std::string(what) + " is not in the episode's space " +
                         std::string(to_string(episode_.space)));
      return;
    }
    if (!valid(b)) {
      report(action, std::string(what) + " box invalid for " +
                         std::string(to_string(b.space)) +
                         " (requires x1<=x2, y1<=y2 and in-range coordinates)");
      return;
    }
    if (b.space == PositionSpace::absolute_px && step_.viewport.valid() &&
        !within_viewport(b, step_.viewport)) {
      report(action, std::string(what) + " box exceeds the viewport");
    }
  }

  void check_point(std::size_t action, const Point& p, std::string_view what) {
    if (p.space != episode_.space) {
      report(action, std::string(what) + " is not in the episode's space " +
                         std::string(to_string(episode_.space)));
      return;
    }
    if (!valid(p)) {
      report(action, std::string(what) + " point out of range for " +
                         std::string(to_string(p.space)));
      return;
    }
    if (p.space == PositionSpace::absolute_px && step_.viewport.valid() &&
        !within_viewport(p, step_.viewport)) {
      report(action, std::string(what) + " point exceeds the viewport");
    }
  }

  void check_candidates() {
    std::set<std::int64_t> seen;
    for (const auto& c : step_.candidates) {
      if (!seen.insert(c.element_id).second) {
        report({}, "duplicate candidate element_id " +
                       std::to_string(c.element_id));
      }
      check_box({}, c.box, "candidate " + std::to_string(c.element_id));
    }
  }

  void check_action(std::size_t i, const Action& action) {
    if (const Box* box = element_box_of(action)) {
      check_box(i, *box, std::string(to_string(action.kind())) + " element");
      if (auto id = element_id_of(action)) {
        bool found = false;
        for (const auto& c : step_.candidates) found |= c.element_id == *id;
        if (!found) {
          report(i, "element_id " + std::to_string(*id) +
                        " not among the step's candidates");
        }
      }
    }
    if (auto* tap = action.get_if<actions::Tap>()) {
      check_point(i, tap->point, "tap");
    }
    if (auto* swipe = action.get_if<actions::Swipe>()) {
      check_point(i, swipe->from, "swipe from");
      check_point(i, swipe->to, "swipe to");
    }
    if (auto* sel = action.get_if<actions::SelectText>()) {
      check_point(i, sel->from, "select_text from");
      check_point(i, sel->to, "select_text to");
    }
    if (auto* scroll = action.get_if<actions::Scroll>()) {
      if (scroll->delta.space != episode_.space) {
        report(i, "scroll delta is not in the episode's space");
      } else if (!valid(scroll->delta)) {
        report(i, "scroll delta invalid for " +
                      std::string(to_string(scroll->delta.space)));
      }
    }
  }

  const Episode& episode_;
  const Step& step_;
  std::size_t index_;
  std::vector<Diagnostic>& out_;
};

}  // namespace

std::string to_string(const Diagnostic& d) {
  std::string out = "step " + std::to_string(d.step_index);
  if (d.action_index) out += " action " + std::to_string(*d.action_index);
  return out + ": " + d.message;
}

std::vector<Diagnostic> validate_episode(const Episode& episode) {
  std::vector<Diagnostic> out;
  for (std::size_t i = 0; i < episode.steps.size(); ++i) {
    StepChecker(episode, i, out).run();
  }
  return out;
}

}  // namespace guikit
