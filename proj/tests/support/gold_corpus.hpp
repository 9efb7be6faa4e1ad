#pragma once

// Golden episodes whose actions survive serialization exactly, and the
// prediction files that replay them. Used for self-consistency checks.

#include <fstream>
#include <string>
#include <vector>

#include "fuzz.hpp"
#include "guikit/action_format.hpp"
#include "guikit/json_io.hpp"

namespace fuzz {

inline guikit::Action gold_action(Gen& g, guikit::ActionKind kind, PositionSpace s,
                                  const Viewport& vp,
                                  const std::vector<guikit::CandidateElement>& cands) {
  using namespace guikit;
  auto element = [&]() -> std::pair<Box, std::optional<std::int64_t>> {
    if (!cands.empty() && g.chance(0.6)) {
      const auto& c = cands[g.integer(0, static_cast<int>(cands.size()) - 1)];
      return {c.box, c.element_id};
    }
    return {g.small_box(s, vp), std::nullopt};
  };
  auto two_points = [&] {
    Point a = g.point(s, vp), b = g.point(s, vp);
    while (a == b) b = g.point(s, vp);
    return std::pair{a, b};
  };
  switch (kind) {
    case ActionKind::click: {
      auto [b, id] = element();
      return make_click(b, id);
    }
    case ActionKind::hover: {
      auto [b, id] = element();
      return make_hover(b, id);
    }
    case ActionKind::select: {
      auto [b, id] = element();
      return make_select(b, g.ascii_phrase(), id);
    }
    case ActionKind::swipe: {
      auto [a, b] = two_points();
      return make_swipe(a, b);
    }
    case ActionKind::select_text: {
      auto [a, b] = two_points();
      return make_select_text(a, b);
    }
    default:
      return g.action(kind, s, vp);
  }
}

inline guikit::Episode gold_episode(Gen& g, const std::string& id, PositionSpace s) {
  guikit::Episode ep;
  ep.episode_id = id;
  ep.instruction = g.ascii_phrase() + " task";
  ep.source = "web";
  ep.space = s;
  const int steps = g.integer(1, 5);
  for (int i = 0; i < steps; ++i) {
    guikit::Step step;
    step.screenshot = id + "/" + std::to_string(i) + ".png";
    step.viewport = g.viewport(2048);
    step.candidates = g.candidates(s, step.viewport, 8);
    for (int k = g.integer(1, 3); k > 0; --k) {
      step.actions.push_back(gold_action(g, g.kind(), s, step.viewport, step.candidates));
    }
    ep.steps.push_back(std::move(step));
  }
  return ep;
}

/// One prediction per golden step: the golden actions serialized in `fmt`.
inline std::vector<guikit::io::Prediction> replay_predictions(
    const std::vector<guikit::Episode>& episodes, guikit::ParseFormat fmt) {
  std::vector<guikit::io::Prediction> out;
  for (const auto& ep : episodes) {
    for (std::size_t s = 0; s < ep.steps.size(); ++s) {
      out.push_back({ep.episode_id, s,
                     guikit::serialize_actions(ep.steps[s].actions, fmt, ep.space,
                                               ep.steps[s].viewport),
                     std::nullopt});
    }
  }
  return out;
}

inline void write_episodes(const std::string& path, const std::vector<guikit::Episode>& eps) {
  std::ofstream f(path, std::ios::binary);
  for (const auto& ep : eps) f << guikit::io::dump_line(guikit::io::episode_to_json(ep)) << '\n';
}

inline void write_predictions(const std::string& path,
                              const std::vector<guikit::io::Prediction>& preds) {
  std::ofstream f(path, std::ios::binary);
  for (const auto& p : preds) f << guikit::io::dump_line(guikit::io::prediction_to_json(p)) << '\n';
}

}  // namespace fuzz
