#include "guikit/action.hpp"

#include <vector>

namespace guikit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::click: return "click";
    case ActionKind::hover: return "hover";
    case ActionKind::tap: return "tap";
    case ActionKind::input: return "input";
    case ActionKind::scroll: return "scroll";
    case ActionKind::swipe: return "swipe";
    case ActionKind::select_text: return "select_text";
    case ActionKind::copy: return "copy";
    case ActionKind::enter: return "enter";
    case ActionKind::select: return "select";
    case ActionKind::answer: return "answer";
  }
  return "unknown";
}

std::optional<ActionKind> action_kind_from_string(std::string_view name) {
  for (ActionKind kind : kAllActionKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

bool has_geometry(ActionKind kind) {
  switch (kind) {
    case ActionKind::input:
    case ActionKind::copy:
    case ActionKind::enter:
    case ActionKind::answer:
      return false;
    default:
      return true;
  }
}

bool is_pointing(ActionKind kind) {
  return kind == ActionKind::click || kind == ActionKind::hover ||
         kind == ActionKind::select;
}

std::optional<PositionSpace> geometry_space(const Action& action) {
  std::vector<PositionSpace> spaces;
  std::visit(overloaded{
                 [&](const actions::Click& a) { spaces = {a.element.space}; },
                 [&](const actions::Hover& a) { spaces = {a.element.space}; },
                 [&](const actions::Select& a) { spaces = {a.element.space}; },
                 [&](const actions::Tap& a) { spaces = {a.point.space}; },
                 [&](const actions::Scroll& a) { spaces = {a.delta.space}; },
                 [&](const actions::Swipe& a) {
                   spaces = {a.from.space, a.to.space};
                 },
                 [&](const actions::SelectText& a) {
                   spaces = {a.from.space, a.to.space};
                 },
                 [](const auto&) {},
             },
             action.payload);
  if (spaces.empty()) return std::nullopt;
  for (PositionSpace s : spaces) {
    if (s != spaces.front()) return std::nullopt;
  }
  return spaces.front();
}

Action convert_space(const Action& action, PositionSpace target,
                     std::optional<Viewport> viewport) {
  Action out = action;
  std::visit(overloaded{
                 [&](actions::Click& a) {
                   a.element = convert_space(a.element, target, viewport);
                 },
                 [&](actions::Hover& a) {
                   a.element = convert_space(a.element, target, viewport);
                 },
                 [&](actions::Select& a) {
                   a.element = convert_space(a.element, target, viewport);
                 },
                 [&](actions::Tap& a) {
                   a.point = convert_space(a.point, target, viewport);
                 },
                 [&](actions::Scroll& a) {
                   a.delta = convert_space(a.delta, target, viewport);
                 },
                 [&](actions::Swipe& a) {
                   a.from = convert_space(a.from, target, viewport);
                   a.to = convert_space(a.to, target, viewport);
                 },
                 [&](actions::SelectText& a) {
                   a.from = convert_space(a.from, target, viewport);
                   a.to = convert_space(a.to, target, viewport);
                 },
                 [](auto&) {},
             },
             out.payload);
  return out;
}

std::optional<std::int64_t> element_id_of(const Action& action) {
  if (auto* a = action.get_if<actions::Click>()) return a->element_id;
  if (auto* a = action.get_if<actions::Hover>()) return a->element_id;
  if (auto* a = action.get_if<actions::Select>()) return a->element_id;
  return std::nullopt;
}

const Box* element_box_of(const Action& action) {
  if (auto* a = action.get_if<actions::Click>()) return &a->element;
  if (auto* a = action.get_if<actions::Hover>()) return &a->element;
  if (auto* a = action.get_if<actions::Select>()) return &a->element;
  return nullptr;
}

}  // namespace guikit
