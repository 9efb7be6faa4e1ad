#include "guikit/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace guikit {

namespace {

constexpr std::string_view kPunctuation = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";
constexpr double kElementFallbackIou = 0.5;

bool is_ws(char ch) {
  return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\v' ||
         ch == '\f';
}

std::vector<std::string> tokens_ws(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ws(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_ws(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

Box span_rect(const Point& a, const Point& b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x),
          std::max(a.y, b.y), a.space};
}

bool is_zero(const ScrollDelta& d) { return d.down == 0.0 && d.right == 0.0; }

// Predicted geometry must be valid for its space before it is scored.
bool geometry_valid(const Action& a) {
  if (const Box* b = element_box_of(a)) return valid(*b);
  if (auto* t = a.get_if<actions::Tap>()) return valid(t->point);
  if (auto* s = a.get_if<actions::Swipe>()) return valid(s->from) && valid(s->to);
  if (auto* s = a.get_if<actions::SelectText>()) {
    return valid(s->from) && valid(s->to);
  }
  if (auto* s = a.get_if<actions::Scroll>()) return valid(s->delta);
  return true;
}

class ActionScorer {
 public:
  ActionScorer(std::span<const CandidateElement> candidates,
               const Viewport& viewport, const ScoringConfig& cfg)
      : viewport_(viewport), cfg_(cfg) {
    candidates_.reserve(candidates.size());
    for (const auto& c : candidates) {
      CandidateElement rel = c;
      rel.box = convert_space(c.box, PositionSpace::relative_unit, viewport);
      candidates_.push_back(std::move(rel));
    }
  }

  ActionScore operator()(const Action& pred_in, const Action& gold_in) const {
    ActionScore out;
    if (pred_in.kind() != gold_in.kind()) {
      out.detail = "type mismatch";
      return out;
    }
    out.type_match = true;
    if (!geometry_valid(pred_in)) {
      out.detail = "invalid predicted geometry";
      return out;
    }
    const Action pred =
        convert_space(pred_in, PositionSpace::relative_unit, viewport_);
    const Action gold =
        convert_space(gold_in, PositionSpace::relative_unit, viewport_);

    switch (pred.kind()) {
      case ActionKind::click:
      case ActionKind::hover: {
        out.score = iou(*element_box_of(pred), *element_box_of(gold));
        out.success = element_matches(pred, gold, out.score, out);
        break;
      }
      case ActionKind::select: {
        const auto& p = *pred.get_if<actions::Select>();
        const auto& g = *gold.get_if<actions::Select>();
        const double box_iou = iou(p.element, g.element);
        const double f1 = token_f1(p.text, g.text);
        out.score = (box_iou + f1) / 2.0;
        const bool element_ok = element_matches(pred, gold, box_iou, out);
        out.success = element_ok && f1 > cfg_.text_success_threshold;
        break;
      }
      case ActionKind::tap: {
        const Point& p = pred.get_if<actions::Tap>()->point;
        const Point& g = gold.get_if<actions::Tap>()->point;
        const double d = std::hypot(p.x - g.x, p.y - g.y);
        out.success = d < cfg_.tap_radius;
        out.score = tap_score(d, cfg_);
        break;
      }
      case ActionKind::input:
        out.score = token_f1(pred.get_if<actions::Input>()->text,
                             gold.get_if<actions::Input>()->text);
        out.success = out.score > cfg_.text_success_threshold;
        break;
      case ActionKind::answer:
        out.score = token_f1(pred.get_if<actions::Answer>()->text,
                             gold.get_if<actions::Answer>()->text);
        out.success = out.score > cfg_.text_success_threshold;
        break;
      case ActionKind::scroll: {
        const ScrollDelta& p = pred.get_if<actions::Scroll>()->delta;
        const ScrollDelta& g = gold.get_if<actions::Scroll>()->delta;
        if (is_zero(p) || is_zero(g)) {
          out.detail = "zero scroll displacement";
        } else {
          out.success = direction_of(p) == direction_of(g);
        }
        out.score = out.success ? 1.0 : 0.0;
        break;
      }
      case ActionKind::swipe: {
        const auto& p = *pred.get_if<actions::Swipe>();
        const auto& g = *gold.get_if<actions::Swipe>();
        if (p.from == p.to || g.from == g.to) {
          out.detail = "zero swipe displacement";
        } else {
          out.success = direction_of(p.from, p.to) == direction_of(g.from, g.to);
        }
        out.score = out.success ? 1.0 : 0.0;
        break;
      }
      case ActionKind::select_text: {
        const auto& p = *pred.get_if<actions::SelectText>();
        const auto& g = *gold.get_if<actions::SelectText>();
        out.score = iou(span_rect(p.from, p.to), span_rect(g.from, g.to));
        out.success = out.score > cfg_.select_text_iou_threshold;
        break;
      }
      case ActionKind::copy:
      case ActionKind::enter:
        out.score = 1.0;
        out.success = true;
        break;
    }
    return out;
  }

 private:
  // Element exact match through attachment, or the IoU fallback when the
  // step carries no candidates.
  bool element_matches(const Action& pred, const Action& gold, double box_iou,
                       ActionScore& out) const {
    if (candidates_.empty()) {
      out.used_fallback = true;
      out.detail = "no candidates: element success from IoU > 0.5";
      return box_iou > kElementFallbackIou;
    }
    const std::int64_t attached =
        attach_element(*element_box_of(pred), candidates_);
    out.attached_element_id = attached;
    const auto gold_id = element_id_of(gold);
    const std::int64_t expected =
        gold_id ? *gold_id : attach_element(*element_box_of(gold), candidates_);
    return attached == expected;
  }

  std::vector<CandidateElement> candidates_;
  Viewport viewport_;
  const ScoringConfig& cfg_;
};

}  // namespace

std::vector<std::string> ScoringConfig::problems() const {
  std::vector<std::string> out;
  auto unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!unit(tap_radius)) out.push_back("tap_radius must be in (0, 1]");
  if (!unit(text_success_threshold)) {
    out.push_back("text_success_threshold must be in (0, 1]");
  }
  if (!unit(select_text_iou_threshold)) {
    out.push_back("select_text_iou_threshold must be in (0, 1]");
  }
  for (std::size_t i = 0; i < grounding_iou_thresholds.size(); ++i) {
    if (!unit(grounding_iou_thresholds[i])) {
      out.push_back("grounding thresholds must be in (0, 1]");
    }
    if (i > 0 && grounding_iou_thresholds[i] <= grounding_iou_thresholds[i - 1]) {
      out.push_back("grounding thresholds must be strictly increasing");
    }
  }
  return out;
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::up: return "up";
    case Direction::down: return "down";
    case Direction::left: return "left";
    case Direction::right: return "right";
  }
  return "unknown";
}

double StepResult::mean_score() const {
  if (per_action.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& s : per_action) sum += s.score;
  return sum / static_cast<double>(per_action.size());
}

double iou(const Box& a, const Box& b) {
  if (a.space != b.space) {
    throw GeometryError("iou of boxes in different position spaces");
  }
  const double area_a = a.area();
  const double area_b = b.area();
  if (area_a <= 0.0 || area_b <= 0.0) return 0.0;
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  return inter / (area_a + area_b - inter);
}

std::int64_t attach_element(const Box& pred,
                            std::span<const CandidateElement> candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("attach_element needs at least one candidate");
  }
  const Point c = pred.center();
  const CandidateElement* best = nullptr;
  double best_d2 = 0.0;
  for (const auto& cand : candidates) {
    if (cand.box.space != pred.space) {
      throw GeometryError("candidate box in a different position space");
    }
    const Point cc = cand.box.center();
    const double d2 = (cc.x - c.x) * (cc.x - c.x) + (cc.y - c.y) * (cc.y - c.y);
    if (best == nullptr || d2 < best_d2 ||
        (d2 == best_d2 && cand.element_id < best->element_id)) {
      best = &cand;
      best_d2 = d2;
    }
  }
  return best->element_id;
}

std::string normalize_answer(std::string_view text) {
  std::string stripped;
  stripped.reserve(text.size());
  for (char ch : text) {
    if (kPunctuation.find(ch) != std::string_view::npos) continue;
    const auto u = static_cast<unsigned char>(ch);
    stripped.push_back(u < 0x80 ? static_cast<char>(std::tolower(u)) : ch);
  }

  // Articles are removed only as whole words. Non-ASCII bytes count as word
  // characters so "aé" stays intact.
  auto word_char = [](char ch) {
    const auto u = static_cast<unsigned char>(ch);
    return u >= 0x80 || std::isalnum(u) || ch == '_';
  };
  std::string spaced;
  spaced.reserve(stripped.size());
  std::size_t i = 0;
  while (i < stripped.size()) {
    const bool at_word_start = i == 0 || !word_char(stripped[i - 1]);
    bool dropped = false;
    if (at_word_start) {
      for (std::string_view article : {"the", "an", "a"}) {
        const std::size_t end = i + article.size();
        if (std::string_view(stripped).substr(i, article.size()) == article &&
            (end == stripped.size() || !word_char(stripped[end]))) {
          spaced.push_back(' ');
          i = end;
          dropped = true;
          break;
        }
      }
    }
    if (!dropped) spaced.push_back(stripped[i++]);
  }

  std::string out;
  for (const auto& token : tokens_ws(spaced)) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

double token_f1(std::string_view pred, std::string_view gold) {
  const auto p = tokens_ws(normalize_answer(pred));
  const auto g = tokens_ws(normalize_answer(gold));
  if (p.empty() && g.empty()) return 1.0;
  if (p.empty() || g.empty()) return 0.0;
  std::unordered_map<std::string, int> gold_counts;
  for (const auto& t : g) ++gold_counts[t];
  int common = 0;
  for (const auto& t : p) {
    auto it = gold_counts.find(t);
    if (it != gold_counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / p.size();
  const double recall = static_cast<double>(common) / g.size();
  return 2.0 * precision * recall / (precision + recall);
}

Direction direction_of(const ScrollDelta& delta) {
  if (is_zero(delta)) {
    throw std::invalid_argument("scroll delta has no displacement");
  }
  if (std::abs(delta.down) >= std::abs(delta.right)) {
    return delta.down > 0.0 ? Direction::down : Direction::up;
  }
  return delta.right > 0.0 ? Direction::right : Direction::left;
}

Direction direction_of(const Point& from, const Point& to) {
  return direction_of(ScrollDelta{to.y - from.y, to.x - from.x, from.space});
}

double tap_score(double distance, const ScoringConfig& cfg) {
  if (!(distance < cfg.tap_radius)) return 0.0;
  return std::max(0.0, 1.0 - distance / cfg.tap_radius);
}

ActionScore score_action(const Action& pred, const Action& gold,
                         std::span<const CandidateElement> candidates,
                         const Viewport& viewport, const ScoringConfig& cfg) {
  return ActionScorer(candidates, viewport, cfg)(pred, gold);
}

StepResult score_step(std::span<const Action> preds,
                      std::span<const Action> golds,
                      std::span<const CandidateElement> candidates,
                      const Viewport& viewport, const ScoringConfig& cfg) {
  const ActionScorer scorer(candidates, viewport, cfg);
  StepResult result;
  result.per_action.reserve(golds.size());
  bool all = !golds.empty();
  for (std::size_t i = 0; i < golds.size(); ++i) {
    ActionScore s;
    if (i < preds.size()) {
      s = scorer(preds[i], golds[i]);
    } else {
      s.detail = "missing prediction";
    }
    all = all && s.success;
    result.used_fallback = result.used_fallback || s.used_fallback;
    result.per_action.push_back(std::move(s));
  }
  result.step_success = all;
  return result;
}

Bbox2TextScore eval_bbox2text(std::string_view pred, std::string_view gold) {
  return {normalize_answer(pred) == normalize_answer(gold) ? 1 : 0,
          token_f1(pred, gold)};
}

std::map<double, bool> eval_text2bbox(const Box& pred, const Box& gold,
                                      const ScoringConfig& cfg) {
  const double v = iou(pred, gold);
  std::map<double, bool> hits;
  for (double t : cfg.grounding_iou_thresholds) hits[t] = v >= t;
  return hits;
}

MetricsAccumulator::MetricsAccumulator(std::vector<double> grounding_thresholds)
    : thresholds_(std::move(grounding_thresholds)) {
  for (double t : thresholds_) t2b_hits_[t] = 0;
}

void MetricsAccumulator::add(const Step& step, const StepResult& result) {
  ++steps_;
  if (result.step_success) ++successful_steps_;
  if (result.used_fallback) ++fallback_steps_;
  const std::size_t n = std::min(step.actions.size(), result.per_action.size());
  for (std::size_t i = 0; i < n; ++i) {
    const ActionKind kind = step.actions[i].kind();
    const ActionScore& s = result.per_action[i];
    ++slots_;
    if (s.type_match) ++type_matches_;
    if (s.success) ++successful_slots_;
    score_sum_ += s.score;
    auto& counts = per_action_[kind];
    ++counts.count;
    if (s.success) ++counts.success_count;
    if (kind == ActionKind::click || kind == ActionKind::tap) {
      ++cli_slots_;
      if (s.success) ++cli_successes_;
    }
  }
}

void MetricsAccumulator::add_bbox2text(const Bbox2TextScore& score) {
  ++b2t_count_;
  b2t_em_sum_ += static_cast<std::size_t>(score.em);
  b2t_f1_sum_ += score.f1;
}

void MetricsAccumulator::add_text2bbox(const std::map<double, bool>& hits) {
  ++t2b_count_;
  for (const auto& [t, hit] : hits) {
    if (hit) ++t2b_hits_[t];
  }
}

void MetricsAccumulator::merge(const MetricsAccumulator& other) {
  steps_ += other.steps_;
  successful_steps_ += other.successful_steps_;
  slots_ += other.slots_;
  type_matches_ += other.type_matches_;
  successful_slots_ += other.successful_slots_;
  score_sum_ += other.score_sum_;
  cli_slots_ += other.cli_slots_;
  cli_successes_ += other.cli_successes_;
  fallback_steps_ += other.fallback_steps_;
  for (const auto& [kind, c] : other.per_action_) {
    per_action_[kind].count += c.count;
    per_action_[kind].success_count += c.success_count;
  }
  b2t_count_ += other.b2t_count_;
  b2t_em_sum_ += other.b2t_em_sum_;
  b2t_f1_sum_ += other.b2t_f1_sum_;
  t2b_count_ += other.t2b_count_;
  for (const auto& [t, hits] : other.t2b_hits_) t2b_hits_[t] += hits;
}

MetricsReport MetricsAccumulator::report() const {
  auto rate = [](double num, std::size_t den) {
    return den == 0 ? 0.0 : num / static_cast<double>(den);
  };
  MetricsReport r;
  r.step_count = steps_;
  r.slot_count = slots_;
  r.cli_count = cli_slots_;
  r.type_em = rate(type_matches_, slots_);
  r.cli_acc = rate(cli_successes_, cli_slots_);
  r.step_sr = rate(successful_steps_, steps_);
  r.action_success_rate = rate(successful_slots_, slots_);
  r.mean_action_score = rate(score_sum_, slots_);
  r.fallback_steps = fallback_steps_;
  r.per_action_counts = per_action_;
  r.ocr.bbox2text_count = b2t_count_;
  r.ocr.text2bbox_count = t2b_count_;
  r.ocr.bbox2text_em = rate(b2t_em_sum_, b2t_count_);
  r.ocr.bbox2text_f1 = rate(b2t_f1_sum_, b2t_count_);
  for (const auto& [t, hits] : t2b_hits_) {
    r.ocr.text2bbox_iou_at[t] = rate(hits, t2b_count_);
  }
  return r;
}

MetricsReport aggregate(std::span<const std::pair<Step, StepResult>> results) {
  MetricsAccumulator acc;
  for (const auto& [step, result] : results) acc.add(step, result);
  return acc.report();
}

}  // namespace guikit
