#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "guikit/geometry.hpp"

namespace guikit {

enum class ActionKind {
  click,
  hover,
  tap,
  input,
  scroll,
  swipe,
  select_text,
  copy,
  enter,
  select,
  answer,
};

inline constexpr std::array<ActionKind, 11> kAllActionKinds = {
    ActionKind::click,  ActionKind::hover,       ActionKind::tap,
    ActionKind::input,  ActionKind::scroll,      ActionKind::swipe,
    ActionKind::select_text, ActionKind::copy,   ActionKind::enter,
    ActionKind::select, ActionKind::answer,
};

std::string_view to_string(ActionKind kind);
std::optional<ActionKind> action_kind_from_string(std::string_view name);

namespace actions {

struct Click {
  Box element;
  std::optional<std::int64_t> element_id;
  friend bool operator==(const Click&, const Click&) = default;
};

struct Hover {
  Box element;
  std::optional<std::int64_t> element_id;
  friend bool operator==(const Hover&, const Hover&) = default;
};

struct Tap {
  Point point;
  friend bool operator==(const Tap&, const Tap&) = default;
};

struct Input {
  std::string text;
  friend bool operator==(const Input&, const Input&) = default;
};

struct Scroll {
  ScrollDelta delta;
  friend bool operator==(const Scroll&, const Scroll&) = default;
};

struct Swipe {
  Point from;
  Point to;
  friend bool operator==(const Swipe&, const Swipe&) = default;
};

struct SelectText {
  Point from;
  Point to;
  friend bool operator==(const SelectText&, const SelectText&) = default;
};

struct Copy {
  friend bool operator==(const Copy&, const Copy&) = default;
};

struct Enter {
  friend bool operator==(const Enter&, const Enter&) = default;
};

struct Select {
  Box element;
  std::optional<std::int64_t> element_id;
  std::string text;
  friend bool operator==(const Select&, const Select&) = default;
};

struct Answer {
  std::string text;
  friend bool operator==(const Answer&, const Answer&) = default;
};

}  // namespace actions

/// One action of the unified action space. The alternative order matches
/// ActionKind so `payload.index()` is the kind.
using ActionPayload =
    std::variant<actions::Click, actions::Hover, actions::Tap, actions::Input,
                 actions::Scroll, actions::Swipe, actions::SelectText,
                 actions::Copy, actions::Enter, actions::Select,
                 actions::Answer>;

struct Action {
  ActionPayload payload;

  ActionKind kind() const { return static_cast<ActionKind>(payload.index()); }

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&payload);
  }

  friend bool operator==(const Action&, const Action&) = default;
};

inline Action make_click(Box element, std::optional<std::int64_t> id = {}) {
  return {actions::Click{element, id}};
}
inline Action make_hover(Box element, std::optional<std::int64_t> id = {}) {
  return {actions::Hover{element, id}};
}
inline Action make_tap(Point p) { return {actions::Tap{p}}; }
inline Action make_input(std::string text) {
  return {actions::Input{std::move(text)}};
}
inline Action make_scroll(ScrollDelta d) { return {actions::Scroll{d}}; }
inline Action make_swipe(Point from, Point to) {
  return {actions::Swipe{from, to}};
}
inline Action make_select_text(Point from, Point to) {
  return {actions::SelectText{from, to}};
}
inline Action make_copy() { return {actions::Copy{}}; }
inline Action make_enter() { return {actions::Enter{}}; }
inline Action make_select(Box element, std::string text,
                          std::optional<std::int64_t> id = {}) {
  return {actions::Select{element, id, std::move(text)}};
}
inline Action make_answer(std::string text) {
  return {actions::Answer{std::move(text)}};
}

/// Space shared by the action's geometry, or nullopt for geometry-free
/// actions and for actions whose fields disagree.
std::optional<PositionSpace> geometry_space(const Action& action);
bool has_geometry(ActionKind kind);
bool is_pointing(ActionKind kind);  // click, hover, select: carry an element

/// The action with every geometry field converted to `target`.
Action convert_space(const Action& action, PositionSpace target,
                     std::optional<Viewport> viewport = std::nullopt);

/// Element id carried by click/hover/select, if any.
std::optional<std::int64_t> element_id_of(const Action& action);
const Box* element_box_of(const Action& action);

}  // namespace guikit
