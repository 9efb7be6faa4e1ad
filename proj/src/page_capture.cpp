#include "guikit/page_capture.hpp"

#include <algorithm>
#include <set>

namespace guikit {

bool PageElement::ocr_eligible() const {
  return std::any_of(text.begin(), text.end(), [](char c) {
    return c != ' ' && c != '\t' && c != '\n' && c != '\r';
  });
}

std::vector<std::string> validate_capture(const PageCapture& capture) {
  std::vector<std::string> problems;
  if (!capture.viewport.valid()) {
    problems.push_back("viewport must have positive width and height");
  }
  std::set<std::int64_t> ids;
  std::set<std::int64_t> orders;
  for (const auto& e : capture.elements) {
    const std::string name = "element " + std::to_string(e.id);
    if (!ids.insert(e.id).second) problems.push_back("duplicate " + name);
    if (!orders.insert(e.order).second) {
      problems.push_back(name + ": duplicate layout order " +
                         std::to_string(e.order));
    }
    if (e.box.space != PositionSpace::absolute_px) {
      problems.push_back(name + ": box must be in absolute_px");
    } else if (!valid(e.box)) {
      problems.push_back(name + ": malformed box");
    } else if (capture.viewport.valid() &&
               (e.box.x2 > capture.viewport.width_px ||
                e.box.y2 > capture.viewport.height_px)) {
      problems.push_back(name + ": box outside the page");
    }
  }
  return problems;
}

std::vector<const PageElement*> in_layout_order(const PageCapture& capture) {
  std::vector<const PageElement*> out;
  out.reserve(capture.elements.size());
  for (const auto& e : capture.elements) out.push_back(&e);
  std::stable_sort(out.begin(), out.end(),
                   [](const PageElement* a, const PageElement* b) {
                     return a->order < b->order;
                   });
  return out;
}

}  // namespace guikit
