#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "guikit/action.hpp"
#include "guikit/episode.hpp"
#include "guikit/page_capture.hpp"

namespace guikit {

/// Indexed mask boxes to draw over a screenshot, one per interactive
/// element, labeled 0..k-1 in layout order.
struct OverlayPlan {
  struct Mark {
    std::int64_t element_id = 0;
    Box box;
    std::int64_t label = 0;

    friend bool operator==(const Mark&, const Mark&) = default;
  };

  std::string capture_ref;
  std::vector<Mark> marks;

  friend bool operator==(const OverlayPlan&, const OverlayPlan&) = default;
};

/// Prompt plus the two screenshots sent together: the original first, the
/// overlay second.
struct AnnotationRequest {
  std::string capture_ref;
  std::string prompt;
  std::array<std::string, 2> image_refs;
};

struct AnnotationResult {
  std::string instruction;
  /// Absolute-pixel actions with element ids resolved from labels.
  std::vector<Action> actions;
  bool valid = false;
  std::optional<std::string> rejection_reason;
  /// Outcome of human review, unset until someone checks the result.
  std::optional<bool> human_verified;
};

OverlayPlan build_overlay_plan(const PageCapture& capture);

/// Path of the overlay screenshot for a capture screenshot:
/// "shots/a.png" -> "shots/a.overlay.png".
std::string overlay_screenshot_ref(std::string_view screenshot);

/// Placeholders that every template must contain.
inline constexpr std::array<std::string_view, 2> kRequiredPlaceholders = {
    "{element_count}", "{viewport}"};

/// Instantiates `prompt_template`. {element_count} becomes the number of
/// marks, {viewport} becomes "WIDTHxHEIGHT" and the optional {url} the
/// capture URL. Throws std::invalid_argument naming the first required
/// placeholder that is missing.
AnnotationRequest build_request(const PageCapture& capture,
                                const OverlayPlan& plan,
                                std::string_view prompt_template);

/// Reads a response of the form
///
///   instruction: Search for flights to Paris
///   action: click, element: 2
///   action: input, text: "Paris"
///
/// Action lines use the csv_style grammar in absolute pixels, except that
/// `element` holds an overlay label. Labels resolve to the element's box
/// and id. Other lines are ignored. Problems make the result invalid
/// rather than throwing.
AnnotationResult parse_response(std::string_view text,
                                const PageCapture& capture,
                                const OverlayPlan& plan);

/// One-step episode for a valid result, candidates taken from the capture.
Episode to_episode(const AnnotationResult& result, const PageCapture& capture,
                   std::string episode_id);

}  // namespace guikit
