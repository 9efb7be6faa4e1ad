#include "guikit/autoannotate.hpp"

#include <map>
#include <stdexcept>

#include "guikit/action_format.hpp"

namespace guikit {

namespace {

std::string_view trim(std::string_view s) {
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

AnnotationResult invalid(AnnotationResult r, std::string reason) {
  r.valid = false;
  r.actions.clear();
  r.rejection_reason = std::move(reason);
  return r;
}

}  // namespace

OverlayPlan build_overlay_plan(const PageCapture& capture) {
  OverlayPlan plan;
  plan.capture_ref = capture.screenshot;
  std::int64_t label = 0;
  for (const PageElement* e : in_layout_order(capture)) {
    if (!e->interactive) continue;
    plan.marks.push_back({e->id, e->box, label++});
  }
  return plan;
}

std::string overlay_screenshot_ref(std::string_view screenshot) {
  const std::size_t slash = screenshot.find_last_of('/');
  const std::size_t dot = screenshot.find_last_of('.');
  if (dot == std::string_view::npos ||
      (slash != std::string_view::npos && dot < slash)) {
    return std::string(screenshot) + ".overlay";
  }
  return std::string(screenshot.substr(0, dot)) + ".overlay" +
         std::string(screenshot.substr(dot));
}

AnnotationRequest build_request(const PageCapture& capture,
                                const OverlayPlan& plan,
                                std::string_view prompt_template) {
  for (std::string_view placeholder : kRequiredPlaceholders) {
    if (prompt_template.find(placeholder) == std::string_view::npos) {
      throw std::invalid_argument("template is missing placeholder " +
                                  std::string(placeholder));
    }
  }
  std::string prompt(prompt_template);
  replace_all(prompt, "{element_count}", std::to_string(plan.marks.size()));
  replace_all(prompt, "{viewport}",
              std::to_string(capture.viewport.width_px) + "x" +
                  std::to_string(capture.viewport.height_px));
  replace_all(prompt, "{url}", capture.url);
  return {plan.capture_ref,
          std::move(prompt),
          {capture.screenshot, overlay_screenshot_ref(capture.screenshot)}};
}

AnnotationResult parse_response(std::string_view text,
                                const PageCapture& capture,
                                const OverlayPlan& plan) {
  (void)capture;
  std::map<std::int64_t, const OverlayPlan::Mark*> by_label;
  for (const auto& m : plan.marks) by_label[m.label] = &m;

  AnnotationResult result;
  bool have_instruction = false;
  std::size_t line_start = 0;
  std::size_t line_no = 0;
  while (line_start <= text.size()) {
    std::size_t end = text.find('\n', line_start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(line_start, end - line_start);
    const std::size_t base = line_start;
    line_start = end + 1;
    ++line_no;
    const std::string_view line = trim(raw);

    if (line.starts_with("instruction:")) {
      if (have_instruction) continue;
      std::string_view value = trim(line.substr(12));
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
        value = value.substr(1, value.size() - 2);
      }
      result.instruction = std::string(value);
      have_instruction = !result.instruction.empty();
      continue;
    }
    if (!line.starts_with("action:")) {
      if (end == text.size()) break;
      continue;
    }

    try {
      auto fields = detail::parse_csv_fields(raw, base);
      detail::Record record;
      record.name = std::get<std::string>(fields.front().value);
      record.offset = base;
      for (auto it = fields.begin() + 1; it != fields.end(); ++it) {
        if (it->key == "element_id") continue;
        if (it->key == "element") {
          const auto* label = std::get_if<double>(&it->value);
          if (label == nullptr) {
            return invalid(std::move(result),
                           "line " + std::to_string(line_no) +
                               ": element must be an overlay label");
          }
          auto mark = by_label.find(static_cast<std::int64_t>(*label));
          if (static_cast<double>(static_cast<std::int64_t>(*label)) != *label ||
              mark == by_label.end()) {
            return invalid(std::move(result),
                           "unknown label " + std::to_string(static_cast<long long>(*label)));
          }
          const Box& b = mark->second->box;
          record.fields.push_back({"element", std::vector<double>{b.x1, b.y1, b.x2, b.y2}, it->offset});
          record.fields.push_back({"element_id", static_cast<double>(mark->second->element_id), it->offset});
          continue;
        }
        record.fields.push_back(std::move(*it));
      }
      result.actions.push_back(
          detail::action_from_record(record, PositionSpace::absolute_px));
    } catch (const ParseError& e) {
      if (e.kind() == ParseErrorKind::unknown_action) {
        return invalid(std::move(result), "unknown action on line " +
                                              std::to_string(line_no));
      }
      return invalid(std::move(result), "line " + std::to_string(line_no) +
                                            ": " + e.reason());
    } catch (const std::bad_variant_access&) {
      return invalid(std::move(result), "line " + std::to_string(line_no) +
                                            ": action name must be a word");
    }
    if (end == text.size()) break;
  }

  if (!have_instruction) return invalid(std::move(result), "no instruction");
  if (result.actions.empty()) return invalid(std::move(result), "no actions");
  result.valid = true;
  return result;
}

Episode to_episode(const AnnotationResult& result, const PageCapture& capture,
                   std::string episode_id) {
  Episode ep;
  ep.episode_id = std::move(episode_id);
  ep.instruction = result.instruction;
  ep.source = "web";
  ep.space = PositionSpace::absolute_px;
  Step step;
  step.screenshot = capture.screenshot;
  step.viewport = capture.viewport;
  for (const auto& e : capture.elements) {
    step.candidates.push_back({e.id, e.box, e.text});
  }
  step.actions = result.actions;
  ep.steps.push_back(std::move(step));
  return ep;
}

}  // namespace guikit
