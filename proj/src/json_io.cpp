#include "guikit/json_io.hpp"

#include <cmath>

namespace guikit::io {

FormatError::FormatError(std::string where, std::string reason)
    : std::runtime_error(where + ": " + reason),
      where_(std::move(where)),
      reason_(std::move(reason)) {}

LineError::LineError(std::size_t line, std::string reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason),
      line_(line) {}

std::vector<JsonLine> read_jsonl(std::istream& in) {
  std::vector<JsonLine> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back({line, json::parse(text)});
    } catch (const json::exception& e) {
      throw LineError(line, std::string("invalid JSON: ") + e.what());
    }
  }
  return out;
}

std::string dump_line(const json& value) {
  return value.dump(-1, ' ', false, json::error_handler_t::replace);
}

namespace {

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw FormatError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(path + "/" + key, "missing");
  return *it;
}

const json* optional_member(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw FormatError(path, "expected a string");
  return v.get<std::string>();
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw FormatError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw FormatError(path, "expected a finite number");
  return d;
}

std::int64_t as_int(const json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 9.0e15) {
      return static_cast<std::int64_t>(d);
    }
  }
  throw FormatError(path, "expected an integer");
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw FormatError(path, "expected a boolean");
  return v.get<bool>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw FormatError(path, "expected an array");
  return v;
}

std::vector<double> numbers(const json& v, std::size_t arity,
                            const std::string& path) {
  as_array(v, path);
  if (v.size() != arity) {
    throw FormatError(path, "expected " + std::to_string(arity) + " numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < arity; ++i) {
    out.push_back(as_number(v[i], path + "/" + std::to_string(i)));
  }
  return out;
}

Box box_from(const json& v, PositionSpace space, const std::string& path) {
  const auto n = numbers(v, 4, path);
  return {n[0], n[1], n[2], n[3], space};
}

Point point_from(const json& v, PositionSpace space, const std::string& path) {
  const auto n = numbers(v, 2, path);
  return {n[0], n[1], space};
}

json box_json(const Box& b) { return json::array({b.x1, b.y1, b.x2, b.y2}); }
json point_json(const Point& p) { return json::array({p.x, p.y}); }

Viewport viewport_from(const json& v, const std::string& path) {
  as_array(v, path);
  if (v.size() != 2) throw FormatError(path, "expected [width, height]");
  const auto w = as_int(v[0], path + "/0");
  const auto h = as_int(v[1], path + "/1");
  if (w <= 0 || h <= 0 || w > INT32_MAX || h > INT32_MAX) {
    throw FormatError(path, "viewport sides must be positive");
  }
  return {static_cast<int>(w), static_cast<int>(h)};
}

json viewport_json(const Viewport& v) {
  return json::array({v.width_px, v.height_px});
}

PositionSpace space_from(const json& v, const std::string& path) {
  auto space = position_space_from_string(as_string(v, path));
  if (!space) throw FormatError(path, "unknown position space");
  return *space;
}

int as_int32(const json& v, const std::string& path) {
  const auto i = as_int(v, path);
  if (i < INT32_MIN || i > INT32_MAX) throw FormatError(path, "out of range");
  return static_cast<int>(i);
}

}  // namespace

json action_to_json(const Action& action) {
  const detail::Record r = detail::record_from_action(action);
  json obj = json::object();
  obj["name"] = r.name;
  for (const auto& f : r.fields) {
    if (const auto* d = std::get_if<double>(&f.value)) {
      if (f.key == "element_id") {
        obj[f.key] = static_cast<std::int64_t>(*d);
      } else {
        obj[f.key] = *d;
      }
    } else if (const auto* s = std::get_if<std::string>(&f.value)) {
      obj[f.key] = *s;
    } else {
      obj[f.key] = std::get<std::vector<double>>(f.value);
    }
  }
  return obj;
}

Action action_from_json(const json& value, PositionSpace space) {
  if (!value.is_object()) throw FormatError("", "action must be an object");
  try {
    auto actions = parse_actions(dump_line(value), ParseFormat::json_style, space);
    if (actions.size() != 1) throw FormatError("", "expected one action");
    return std::move(actions.front());
  } catch (const ParseError& e) {
    throw FormatError("", e.reason());
  }
}

json episode_to_json(const Episode& episode) {
  json steps = json::array();
  for (const Step& s : episode.steps) {
    json candidates = json::array();
    for (const auto& c : s.candidates) {
      json cj = {{"id", c.element_id}, {"box", box_json(c.box)}};
      if (c.text) cj["text"] = *c.text;
      candidates.push_back(std::move(cj));
    }
    json actions = json::array();
    for (const auto& a : s.actions) actions.push_back(action_to_json(a));
    steps.push_back({{"screenshot", s.screenshot},
                     {"viewport", viewport_json(s.viewport)},
                     {"candidates", std::move(candidates)},
                     {"actions", std::move(actions)}});
  }
  return {{"episode_id", episode.episode_id},
          {"instruction", episode.instruction},
          {"source", episode.source},
          {"space", std::string(to_string(episode.space))},
          {"metadata", episode.metadata},
          {"steps", std::move(steps)}};
}

Episode episode_from_json(const json& v) {
  Episode ep;
  ep.episode_id = as_string(member(v, "episode_id", ""), "/episode_id");
  ep.instruction = as_string(member(v, "instruction", ""), "/instruction");
  if (const json* src = optional_member(v, "source")) {
    ep.source = as_string(*src, "/source");
  }
  if (const json* sp = optional_member(v, "space")) {
    ep.space = space_from(*sp, "/space");
  }
  if (const json* md = optional_member(v, "metadata")) {
    if (!md->is_object()) throw FormatError("/metadata", "expected an object");
    for (auto it = md->begin(); it != md->end(); ++it) {
      ep.metadata[it.key()] = as_string(it.value(), "/metadata/" + it.key());
    }
  }
  const json& steps = as_array(member(v, "steps", ""), "/steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string p = "/steps/" + std::to_string(i);
    const json& sj = steps[i];
    Step step;
    step.screenshot = as_string(member(sj, "screenshot", p), p + "/screenshot");
    step.viewport = viewport_from(member(sj, "viewport", p), p + "/viewport");
    if (const json* cands = optional_member(sj, "candidates")) {
      as_array(*cands, p + "/candidates");
      for (std::size_t k = 0; k < cands->size(); ++k) {
        const std::string cp = p + "/candidates/" + std::to_string(k);
        const json& cj = (*cands)[k];
        CandidateElement c;
        c.element_id = as_int(member(cj, "id", cp), cp + "/id");
        c.box = box_from(member(cj, "box", cp), ep.space, cp + "/box");
        if (const json* t = optional_member(cj, "text")) {
          c.text = as_string(*t, cp + "/text");
        }
        step.candidates.push_back(std::move(c));
      }
    }
    const json& actions = as_array(member(sj, "actions", p), p + "/actions");
    for (std::size_t k = 0; k < actions.size(); ++k) {
      try {
        step.actions.push_back(action_from_json(actions[k], ep.space));
      } catch (const FormatError& e) {
        throw FormatError(p + "/actions/" + std::to_string(k), e.reason());
      }
    }
    ep.steps.push_back(std::move(step));
  }
  return ep;
}

json prediction_to_json(const Prediction& p) {
  json out = {{"episode_id", p.episode_id},
              {"step_index", p.step_index},
              {"response", p.response}};
  if (p.format) out["format"] = std::string(to_string(*p.format));
  return out;
}

Prediction prediction_from_json(const json& v) {
  Prediction p;
  p.episode_id = as_string(member(v, "episode_id", ""), "/episode_id");
  const auto idx = as_int(member(v, "step_index", ""), "/step_index");
  if (idx < 0) throw FormatError("/step_index", "must be non-negative");
  p.step_index = static_cast<std::size_t>(idx);
  p.response = as_string(member(v, "response", ""), "/response");
  if (const json* f = optional_member(v, "format")) {
    p.format = parse_format_from_string(as_string(*f, "/format"));
    if (!p.format) throw FormatError("/format", "unknown parse format");
  }
  return p;
}

json capture_to_json(const PageCapture& c) {
  json elements = json::array();
  for (const auto& e : c.elements) {
    elements.push_back({{"id", e.id},
                        {"text", e.text},
                        {"box", box_json(e.box)},
                        {"order", e.order},
                        {"interactive", e.interactive}});
  }
  json out = {{"url", c.url},
              {"viewport", viewport_json(c.viewport)},
              {"screenshot", c.screenshot},
              {"elements", std::move(elements)}};
  if (c.crop) {
    out["crop"] = {c.crop->x, c.crop->y, c.crop->width, c.crop->height};
  }
  return out;
}

PageCapture capture_from_json(const json& v) {
  PageCapture c;
  c.url = as_string(member(v, "url", ""), "/url");
  c.viewport = viewport_from(member(v, "viewport", ""), "/viewport");
  c.screenshot = as_string(member(v, "screenshot", ""), "/screenshot");
  const json& elements = as_array(member(v, "elements", ""), "/elements");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::string p = "/elements/" + std::to_string(i);
    const json& ej = elements[i];
    PageElement e;
    e.id = as_int(member(ej, "id", p), p + "/id");
    e.text = as_string(member(ej, "text", p), p + "/text");
    e.box = box_from(member(ej, "box", p), PositionSpace::absolute_px, p + "/box");
    e.order = as_int(member(ej, "order", p), p + "/order");
    e.interactive = as_bool(member(ej, "interactive", p), p + "/interactive");
    c.elements.push_back(std::move(e));
  }
  if (const json* crop = optional_member(v, "crop")) {
    as_array(*crop, "/crop");
    if (crop->size() != 4) throw FormatError("/crop", "expected [x, y, w, h]");
    c.crop = CropRect{as_int32((*crop)[0], "/crop/0"), as_int32((*crop)[1], "/crop/1"),
                      as_int32((*crop)[2], "/crop/2"), as_int32((*crop)[3], "/crop/3")};
  }
  return c;
}

json aitw_record_to_json(const aitw::Record& r) {
  namespace sa = aitw::source_actions;
  json frames = json::array();
  for (const auto& f : r.frames) {
    json action = {{"type", std::string(aitw::source_action_name(f.action))}};
    if (const auto* dp = std::get_if<sa::DualPoint>(&f.action)) {
      action["touch"] = point_json(dp->touch);
      action["lift"] = point_json(dp->lift);
    } else if (const auto* t = std::get_if<sa::Type>(&f.action)) {
      action["text"] = t->text;
    }
    frames.push_back({{"screenshot", f.screenshot},
                      {"viewport", viewport_json(f.viewport)},
                      {"action", std::move(action)},
                      {"has_bottom_navbar", f.has_bottom_navbar}});
  }
  return {{"episode_id", r.episode_id},
          {"instruction", r.instruction},
          {"frames", std::move(frames)}};
}

aitw::Record aitw_record_from_json(const json& v) {
  namespace sa = aitw::source_actions;
  aitw::Record r;
  r.episode_id = as_string(member(v, "episode_id", ""), "/episode_id");
  r.instruction = as_string(member(v, "instruction", ""), "/instruction");
  const json& frames = as_array(member(v, "frames", ""), "/frames");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const std::string p = "/frames/" + std::to_string(i);
    const json& fj = frames[i];
    aitw::Frame f;
    f.screenshot = as_string(member(fj, "screenshot", p), p + "/screenshot");
    f.viewport = viewport_from(member(fj, "viewport", p), p + "/viewport");
    if (const json* nav = optional_member(fj, "has_bottom_navbar")) {
      f.has_bottom_navbar = as_bool(*nav, p + "/has_bottom_navbar");
    }
    const std::string ap = p + "/action";
    const json& aj = member(fj, "action", p);
    const std::string type = as_string(member(aj, "type", ap), ap + "/type");
    const auto rel = PositionSpace::relative_unit;
    if (type == "dual_point") {
      f.action = sa::DualPoint{point_from(member(aj, "touch", ap), rel, ap + "/touch"),
                               point_from(member(aj, "lift", ap), rel, ap + "/lift")};
    } else if (type == "type") {
      f.action = sa::Type{as_string(member(aj, "text", ap), ap + "/text")};
    } else if (type == "enter") {
      f.action = sa::Enter{};
    } else if (type == "go_back") {
      f.action = sa::GoBack{};
    } else if (type == "go_home") {
      f.action = sa::GoHome{};
    } else if (type == "task_complete") {
      f.action = sa::TaskComplete{};
    } else if (type == "task_impossible") {
      f.action = sa::TaskImpossible{};
    } else {
      throw FormatError(ap + "/type", "unknown AITW action '" + type + "'");
    }
    r.frames.push_back(std::move(f));
  }
  return r;
}

json report_to_json(const MetricsReport& r, const ScoringConfig& cfg) {
  json per_action = json::object();
  for (const auto& [kind, counts] : r.per_action_counts) {
    per_action[std::string(to_string(kind))] = {
        {"count", counts.count}, {"success_count", counts.success_count}};
  }
  json iou_at = json::object();
  for (const auto& [t, rate] : r.ocr.text2bbox_iou_at) {
    iou_at[format_coordinate(t, PositionSpace::absolute_px)] = rate;
  }
  return {
      {"type_em", r.type_em},
      {"cli_acc", r.cli_acc},
      {"step_sr", r.step_sr},
      {"per_action_counts", std::move(per_action)},
      {"ocr",
       {{"bbox2text_em", r.ocr.bbox2text_em},
        {"bbox2text_f1", r.ocr.bbox2text_f1},
        {"text2bbox_iou_at", std::move(iou_at)},
        {"bbox2text_count", r.ocr.bbox2text_count},
        {"text2bbox_count", r.ocr.text2bbox_count}}},
      {"detail",
       {{"step_count", r.step_count},
        {"slot_count", r.slot_count},
        {"cli_count", r.cli_count},
        {"action_success_rate", r.action_success_rate},
        {"mean_action_score", r.mean_action_score},
        {"fallback_steps", r.fallback_steps}}},
      {"config",
       {{"tap_radius", cfg.tap_radius},
        {"text_success_threshold", cfg.text_success_threshold},
        {"select_text_iou_threshold", cfg.select_text_iou_threshold},
        {"grounding_iou_thresholds", cfg.grounding_iou_thresholds}}},
  };
}

json step_result_to_json(const StepResult& result) {
  json slots = json::array();
  for (const auto& s : result.per_action) {
    json sj = {{"type_match", s.type_match},
               {"score", s.score},
               {"success", s.success}};
    if (s.attached_element_id) sj["attached_element_id"] = *s.attached_element_id;
    if (s.used_fallback) sj["used_fallback"] = true;
    if (!s.detail.empty()) sj["detail"] = s.detail;
    slots.push_back(std::move(sj));
  }
  return {{"per_action", std::move(slots)},
          {"step_success", result.step_success},
          {"used_fallback", result.used_fallback}};
}

json overlay_plan_to_json(const OverlayPlan& plan) {
  json marks = json::array();
  for (const auto& m : plan.marks) {
    marks.push_back({{"element_id", m.element_id},
                     {"box", box_json(m.box)},
                     {"label", m.label}});
  }
  return {{"capture_ref", plan.capture_ref}, {"marks", std::move(marks)}};
}

OverlayPlan overlay_plan_from_json(const json& v) {
  OverlayPlan plan;
  plan.capture_ref = as_string(member(v, "capture_ref", ""), "/capture_ref");
  const json& marks = as_array(member(v, "marks", ""), "/marks");
  for (std::size_t i = 0; i < marks.size(); ++i) {
    const std::string p = "/marks/" + std::to_string(i);
    const json& mj = marks[i];
    plan.marks.push_back(
        {as_int(member(mj, "element_id", p), p + "/element_id"),
         box_from(member(mj, "box", p), PositionSpace::absolute_px, p + "/box"),
         as_int(member(mj, "label", p), p + "/label")});
  }
  return plan;
}

json request_to_json(const AnnotationRequest& r) {
  return {{"capture_ref", r.capture_ref},
          {"prompt", r.prompt},
          {"image_refs", r.image_refs}};
}

json annotation_result_to_json(const AnnotationResult& r) {
  json actions = json::array();
  for (const auto& a : r.actions) actions.push_back(action_to_json(a));
  json out = {{"instruction", r.instruction},
              {"actions", std::move(actions)},
              {"valid", r.valid}};
  if (r.rejection_reason) out["rejection_reason"] = *r.rejection_reason;
  out["human_verified"] =
      r.human_verified ? json(*r.human_verified) : json(nullptr);
  return out;
}

json qa_sample_to_json(const QASample& s) {
  json out = {{"id", s.id},
              {"kind", std::string(to_string(s.kind))},
              {"crop_ref", s.crop_ref},
              {"crop", {s.crop.x, s.crop.y, s.crop.width, s.crop.height}},
              {"element_id", s.element_id}};
  const json box = box_json(s.box);
  if (s.kind == QaKind::text2bbox) {
    out["prompt"] = s.text;
    out["answer"] = box;
  } else {
    out["prompt"] = box;
    out["answer"] = s.text;
  }
  return out;
}

QASample qa_sample_from_json(const json& v) {
  QASample s;
  s.id = as_string(member(v, "id", ""), "/id");
  const std::string kind = as_string(member(v, "kind", ""), "/kind");
  if (kind == "text2bbox") {
    s.kind = QaKind::text2bbox;
  } else if (kind == "bbox2text") {
    s.kind = QaKind::bbox2text;
  } else {
    throw FormatError("/kind", "unknown QA kind '" + kind + "'");
  }
  s.crop_ref = as_string(member(v, "crop_ref", ""), "/crop_ref");
  const json& crop = as_array(member(v, "crop", ""), "/crop");
  if (crop.size() != 4) throw FormatError("/crop", "expected [x, y, w, h]");
  s.crop = {as_int32(crop[0], "/crop/0"), as_int32(crop[1], "/crop/1"),
            as_int32(crop[2], "/crop/2"), as_int32(crop[3], "/crop/3")};
  s.element_id = as_int(member(v, "element_id", ""), "/element_id");
  const char* text_key = s.kind == QaKind::text2bbox ? "prompt" : "answer";
  const char* box_key = s.kind == QaKind::text2bbox ? "answer" : "prompt";
  s.text = as_string(member(v, text_key, ""), std::string("/") + text_key);
  s.box = box_from(member(v, box_key, ""), PositionSpace::scaled_1000,
                   std::string("/") + box_key);
  return s;
}

json global_annotation_to_json(const GlobalAnnotation& g) {
  return {{"capture_ref", g.capture_ref}, {"text", g.serialized}};
}

}  // namespace guikit::io
