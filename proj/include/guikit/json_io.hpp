#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "guikit/action.hpp"
#include "guikit/action_format.hpp"
#include "guikit/aitw_convert.hpp"
#include "guikit/autoannotate.hpp"
#include "guikit/episode.hpp"
#include "guikit/guienv_gen.hpp"
#include "guikit/metrics.hpp"
#include "guikit/page_capture.hpp"

namespace guikit::io {

using nlohmann::json;

/// Schema violation in a record. `where` is a JSON-pointer-like path.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string where, std::string reason);

  const std::string& where() const { return where_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string where_;
  std::string reason_;
};

/// One non-blank line of a JSONL file, 1-based line number.
struct JsonLine {
  std::size_t line = 0;
  json value;
};

/// Problem located at a line of a JSONL file.
class LineError : public std::runtime_error {
 public:
  LineError(std::size_t line, std::string reason);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads every non-blank line as a JSON value. Throws LineError.
std::vector<JsonLine> read_jsonl(std::istream& in);

/// Compact single-line form used for every JSONL record.
std::string dump_line(const json& value);

// Actions are stored as json_style objects with full numeric precision.
json action_to_json(const Action& action);
Action action_from_json(const json& value, PositionSpace space);

json episode_to_json(const Episode& episode);
Episode episode_from_json(const json& value);

/// A model response for one golden step.
struct Prediction {
  std::string episode_id;
  std::size_t step_index = 0;
  std::string response;
  /// Overrides the format given on the command line.
  std::optional<ParseFormat> format;
};

json prediction_to_json(const Prediction& p);
Prediction prediction_from_json(const json& value);

json capture_to_json(const PageCapture& capture);
PageCapture capture_from_json(const json& value);

json aitw_record_to_json(const aitw::Record& record);
aitw::Record aitw_record_from_json(const json& value);

json report_to_json(const MetricsReport& report, const ScoringConfig& cfg);
json step_result_to_json(const StepResult& result);

json overlay_plan_to_json(const OverlayPlan& plan);
OverlayPlan overlay_plan_from_json(const json& value);

json request_to_json(const AnnotationRequest& request);
json annotation_result_to_json(const AnnotationResult& result);

json qa_sample_to_json(const QASample& sample);
QASample qa_sample_from_json(const json& value);
json global_annotation_to_json(const GlobalAnnotation& global);

}  // namespace guikit::io
