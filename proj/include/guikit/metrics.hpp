#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "guikit/action.hpp"
#include "guikit/episode.hpp"

namespace guikit {

struct ScoringConfig {
  /// Tap success radius, in relative units.
  double tap_radius = 0.14;
  /// input/answer/select text succeeds when token F1 is strictly above this.
  double text_success_threshold = 0.5;
  double select_text_iou_threshold = 0.5;
  /// IoU@t thresholds for text2bbox grounding, strictly increasing.
  std::vector<double> grounding_iou_thresholds = {0.2, 0.5, 0.7};

  /// Violated invariants, empty when the config is usable.
  std::vector<std::string> problems() const;
};

enum class Direction { up, down, left, right };

std::string_view to_string(Direction d);

struct ActionScore {
  bool type_match = false;
  double score = 0.0;
  bool success = false;
  std::optional<std::int64_t> attached_element_id;
  /// Element success fell back to IoU because the step has no candidates.
  bool used_fallback = false;
  std::string detail;
};

struct StepResult {
  /// One entry per golden action slot.
  std::vector<ActionScore> per_action;
  bool step_success = false;
  bool used_fallback = false;

  double mean_score() const;
};

// ---------------------------------------------------------------------------
// Primitive measures

/// Intersection over union. Zero for disjoint boxes and for zero-area boxes,
/// including two identical degenerate boxes. Throws GeometryError when the
/// boxes are in different spaces.
double iou(const Box& a, const Box& b);

/// Candidate whose box center is nearest to the center of `pred`; ties go to
/// the lowest element_id. Throws std::invalid_argument on an empty list and
/// GeometryError when spaces differ.
std::int64_t attach_element(const Box& pred,
                            std::span<const CandidateElement> candidates);

/// SQuAD answer normalization: lowercase, drop ASCII punctuation, drop the
/// articles a/an/the, collapse whitespace.
std::string normalize_answer(std::string_view text);

/// Token-level F1 over normalized answers. Both empty gives 1, one empty 0.
double token_f1(std::string_view pred, std::string_view gold);

/// Direction of the dominant axis; the vertical axis wins exact ties.
/// Throws std::invalid_argument for zero displacement.
Direction direction_of(const ScrollDelta& delta);
Direction direction_of(const Point& from, const Point& to);

/// 1 - d / radius when d < radius, otherwise 0.
double tap_score(double distance, const ScoringConfig& cfg);

// ---------------------------------------------------------------------------
// Action and step scoring

/// Scores one predicted action against a golden one. All geometry is first
/// normalized to relative units with `viewport`, so results do not depend on
/// the position space the actions are written in. With an empty candidate
/// list, element success for click/hover/select falls back to IoU > 0.5.
/// Predicted geometry that is invalid for its space scores zero.
ActionScore score_action(const Action& pred, const Action& gold,
                         std::span<const CandidateElement> candidates,
                         const Viewport& viewport, const ScoringConfig& cfg);

/// Aligns preds[i] with golds[i] for the n golden slots. Extra predictions
/// are ignored and missing ones fail.
StepResult score_step(std::span<const Action> preds,
                      std::span<const Action> golds,
                      std::span<const CandidateElement> candidates,
                      const Viewport& viewport, const ScoringConfig& cfg);

// ---------------------------------------------------------------------------
// OCR / grounding

struct Bbox2TextScore {
  int em = 0;
  double f1 = 0.0;
};

Bbox2TextScore eval_bbox2text(std::string_view pred, std::string_view gold);

/// hit@t for every configured threshold, hit meaning iou >= t.
std::map<double, bool> eval_text2bbox(const Box& pred, const Box& gold,
                                      const ScoringConfig& cfg);

// ---------------------------------------------------------------------------
// Aggregation

struct ActionCounts {
  std::size_t count = 0;
  std::size_t success_count = 0;

  friend bool operator==(const ActionCounts&, const ActionCounts&) = default;
};

struct OcrReport {
  double bbox2text_em = 0.0;
  double bbox2text_f1 = 0.0;
  std::map<double, double> text2bbox_iou_at;
  std::size_t bbox2text_count = 0;
  std::size_t text2bbox_count = 0;
};

struct MetricsReport {
  double type_em = 0.0;
  double cli_acc = 0.0;
  double step_sr = 0.0;
  /// Keyed by the golden action kind of each slot.
  std::map<ActionKind, ActionCounts> per_action_counts;
  OcrReport ocr;

  std::size_t step_count = 0;
  std::size_t slot_count = 0;
  /// Golden click/tap slots, the Cli.Acc denominator.
  std::size_t cli_count = 0;
  /// Successful slots over all slots (per-action reading of StepSR).
  double action_success_rate = 0.0;
  double mean_action_score = 0.0;
  /// Steps whose element success used the IoU fallback.
  std::size_t fallback_steps = 0;
};

/// Associative, commutative fold over scored steps and OCR samples.
class MetricsAccumulator {
 public:
  explicit MetricsAccumulator(std::vector<double> grounding_thresholds = {0.2, 0.5, 0.7});

  void add(const Step& step, const StepResult& result);
  void add_bbox2text(const Bbox2TextScore& score);
  void add_text2bbox(const std::map<double, bool>& hits);
  void merge(const MetricsAccumulator& other);

  MetricsReport report() const;

 private:
  std::vector<double> thresholds_;
  std::size_t steps_ = 0;
  std::size_t successful_steps_ = 0;
  std::size_t slots_ = 0;
  std::size_t type_matches_ = 0;
  std::size_t successful_slots_ = 0;
  double score_sum_ = 0.0;
  std::size_t cli_slots_ = 0;
  std::size_t cli_successes_ = 0;
  std::size_t fallback_steps_ = 0;
  std::map<ActionKind, ActionCounts> per_action_;
  std::size_t b2t_count_ = 0;
  std::size_t b2t_em_sum_ = 0;
  double b2t_f1_sum_ = 0.0;
  std::size_t t2b_count_ = 0;
  std::map<double, std::size_t> t2b_hits_;
};

MetricsReport aggregate(std::span<const std::pair<Step, StepResult>> results);

}  // namespace guikit
