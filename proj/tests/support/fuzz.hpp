#pragma once

// Random valid actions, episodes and captures for property tests. Relative
// coordinates sit on a 0.001 grid so that every format renders them exactly.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "guikit/action.hpp"
#include "guikit/episode.hpp"
#include "guikit/page_capture.hpp"

namespace fuzz {

using guikit::ActionKind;
using guikit::Box;
using guikit::Point;
using guikit::PositionSpace;
using guikit::Viewport;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  Viewport viewport(int max_side = 4096) {
    return {integer(64, max_side), integer(64, max_side)};
  }

  PositionSpace space() {
    static const PositionSpace all[] = {PositionSpace::absolute_px,
                                        PositionSpace::relative_unit,
                                        PositionSpace::scaled_1000};
    return all[integer(0, 2)];
  }

  double coord(PositionSpace s, int extent) {
    switch (s) {
      case PositionSpace::absolute_px: return integer(0, extent);
      case PositionSpace::scaled_1000: return integer(0, 999);
      default: return integer(0, 1000) / 1000.0;
    }
  }

  Point point(PositionSpace s, const Viewport& vp) {
    return {coord(s, vp.width_px), coord(s, vp.height_px), s};
  }

  Box box(PositionSpace s, const Viewport& vp) {
    double x1 = coord(s, vp.width_px), x2 = coord(s, vp.width_px);
    double y1 = coord(s, vp.height_px), y2 = coord(s, vp.height_px);
    if (x1 > x2) std::swap(x1, x2);
    if (y1 > y2) std::swap(y1, y2);
    return {x1, y1, x2, y2, s};
  }

  /// Box with positive area, smaller than about a fifth of the viewport.
  Box small_box(PositionSpace s, const Viewport& vp) {
    const double w = s == PositionSpace::absolute_px ? vp.width_px
                     : s == PositionSpace::scaled_1000 ? 999.0 : 1.0;
    const double h = s == PositionSpace::absolute_px ? vp.height_px
                     : s == PositionSpace::scaled_1000 ? 999.0 : 1.0;
    const double step = s == PositionSpace::relative_unit ? 0.001 : 1.0;
    const int wn = std::max(1, static_cast<int>(w / step / 5));
    const int hn = std::max(1, static_cast<int>(h / step / 5));
    const int bw = integer(1, wn), bh = integer(1, hn);
    const int x = integer(0, static_cast<int>(w / step) - bw);
    const int y = integer(0, static_cast<int>(h / step) - bh);
    return {x * step, y * step, (x + bw) * step, (y + bh) * step, s};
  }

  guikit::ScrollDelta delta(PositionSpace s, const Viewport& vp) {
    auto one = [&](int extent) -> double {
      if (chance(0.2)) return 0.0;
      switch (s) {
        case PositionSpace::absolute_px: return integer(-2 * extent, 2 * extent);
        case PositionSpace::scaled_1000: return integer(-999, 999);
        default: return integer(-2000, 2000) / 1000.0;
      }
    };
    guikit::ScrollDelta d{one(vp.height_px), one(vp.width_px), s};
    if (d.down == 0.0 && d.right == 0.0) d.down = s == PositionSpace::relative_unit ? 0.1 : 100;
    return d;
  }

  /// ASCII-only phrase with articles, punctuation and mixed case.
  std::string ascii_phrase(int max_words = 5) {
    static const char* vocab[] = {"the",  "a",      "an",    "Log",   "in",
                                  "Paris", "cake",  "butter", "French", "search",
                                  "red",  "blue",   "green", "Submit", "x",
                                  "42",   "don't",  "e-mail", "ok!",   "THE",
                                  "An.",  "(a)",    "anna",   "then"};
    std::string out;
    const int n = integer(0, max_words);
    for (int i = 0; i < n; ++i) {
      if (i) out += chance(0.8) ? " " : "  ";
      out += vocab[integer(0, static_cast<int>(std::size(vocab)) - 1)];
    }
    return out;
  }

  /// Arbitrary text including quotes, escapes, commas and non-ASCII.
  std::string text() {
    static const char* pieces[] = {"hello", " ",  "world", ",",  "\"",    "\\",
                                   ":",     "<box>", "]",  "[",  "café", "\t",
                                   "{",     "}",  "a b",   "'", "0.5",  "#"};
    std::string out;
    const int n = integer(0, 6);
    for (int i = 0; i < n; ++i) {
      out += pieces[integer(0, static_cast<int>(std::size(pieces)) - 1)];
    }
    return out;
  }

  std::optional<std::int64_t> maybe_id() {
    if (chance(0.3)) return std::nullopt;
    return integer(0, 1000000);
  }

  guikit::Action action(ActionKind kind, PositionSpace s, const Viewport& vp) {
    using namespace guikit;
    switch (kind) {
      case ActionKind::click: return make_click(box(s, vp), maybe_id());
      case ActionKind::hover: return make_hover(box(s, vp), maybe_id());
      case ActionKind::tap: return make_tap(point(s, vp));
      case ActionKind::input: return make_input(text());
      case ActionKind::scroll: return make_scroll(delta(s, vp));
      case ActionKind::swipe: return make_swipe(point(s, vp), point(s, vp));
      case ActionKind::select_text: return make_select_text(point(s, vp), point(s, vp));
      case ActionKind::copy: return make_copy();
      case ActionKind::enter: return make_enter();
      case ActionKind::select: return make_select(box(s, vp), text(), maybe_id());
      case ActionKind::answer: return make_answer(text());
    }
    return make_enter();
  }

  ActionKind kind() {
    return guikit::kAllActionKinds[integer(0, static_cast<int>(guikit::kAllActionKinds.size()) - 1)];
  }

  std::vector<guikit::CandidateElement> candidates(PositionSpace s, const Viewport& vp,
                                                   int max_count) {
    std::vector<guikit::CandidateElement> out;
    const int n = integer(0, max_count);
    std::vector<std::int64_t> ids;
    for (int i = 0; i < n; ++i) ids.push_back(i * 3 + integer(0, 2));
    std::shuffle(ids.begin(), ids.end(), rng_);
    for (auto id : ids) out.push_back({id, small_box(s, vp), std::nullopt});
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

/// Capture of `width` x `height` filled with a grid of small labelled
/// elements; a few are blank, a few straddle tile boundaries.
inline guikit::PageCapture synthetic_capture(Gen& g, const std::string& name,
                                             int width, int height) {
  guikit::PageCapture c;
  c.url = "https://example.test/" + name;
  c.viewport = {width, height};
  c.screenshot = "shots/" + name + ".png";
  std::int64_t id = 0;
  std::vector<std::int64_t> orders;
  for (int y = 10; y + 40 <= height; y += g.integer(50, 140)) {
    for (int x = 10; x + 60 <= width; x += g.integer(120, 400)) {
      guikit::PageElement e;
      e.id = id++;
      e.text = g.chance(0.1) ? std::string(" ") : "item " + std::to_string(e.id);
      const int w = g.integer(20, std::min(300, width - x));
      const int h = g.integer(10, std::min(60, height - y));
      e.box = {double(x), double(y), double(x + w), double(y + h),
               PositionSpace::absolute_px};
      e.interactive = g.chance(0.4);
      c.elements.push_back(std::move(e));
    }
  }
  for (std::size_t i = 0; i < c.elements.size(); ++i) orders.push_back(std::int64_t(i) * 2);
  std::shuffle(orders.begin(), orders.end(), g.rng());
  for (std::size_t i = 0; i < c.elements.size(); ++i) c.elements[i].order = orders[i];
  return c;
}

}  // namespace fuzz
