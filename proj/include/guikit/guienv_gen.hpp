#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "guikit/page_capture.hpp"

namespace guikit {

struct CropSpec {
  int max_width = 1920;
  int max_height = 1080;
  std::size_t min_elements = 10;
  std::size_t samples_per_crop = 10;

  std::vector<std::string> problems() const;
};

enum class QaKind { text2bbox, bbox2text };

std::string_view to_string(QaKind kind);

/// One grounding (text2bbox) or OCR (bbox2text) question about a crop. The
/// box is in scaled_1000 space relative to the crop.
struct QASample {
  std::string id;
  QaKind kind = QaKind::text2bbox;
  std::string crop_ref;
  CropRect crop;
  std::int64_t element_id = 0;
  std::string text;
  Box box{0, 0, 0, 0, PositionSpace::scaled_1000};

  friend bool operator==(const QASample&, const QASample&) = default;
};

struct GlobalAnnotation {
  std::string capture_ref;
  /// One `text<box>x1 y1 x2 y2</box>` line per OCR-eligible element in
  /// layout order, boxes in scaled_1000 relative to the full page.
  std::string serialized;
};

GlobalAnnotation global_annotation(const PageCapture& capture);

/// Splits the page into non-overlapping tiles of at most max_width x
/// max_height, top-down then left-right. Each crop keeps only elements
/// fully inside its tile, re-based to tile-local pixels.
std::vector<PageCapture> crop_capture(const PageCapture& capture,
                                      const CropSpec& spec);

/// Keeps crops with at least `min_elements` OCR-eligible elements.
std::vector<PageCapture> filter_crops(std::vector<PageCapture> crops,
                                      const CropSpec& spec);

/// Reference of a crop: source screenshot plus its tile rectangle.
std::string crop_ref(const PageCapture& crop);

/// Seed for one crop's generator, derived from the run seed and the crop
/// reference so results do not depend on processing order.
std::uint64_t crop_seed(std::uint64_t run_seed, std::string_view crop_ref);

/// Draws `samples_per_crop` distinct OCR-eligible elements uniformly without
/// replacement and picks a QA kind for each, 50/50. Deterministic for a
/// fixed seed. Throws std::invalid_argument if the crop has too few
/// eligible elements.
std::vector<QASample> sample_qa(const PageCapture& crop, const CropSpec& spec,
                                std::uint64_t seed);

/// Output of the crop, filter and sample pipeline for one capture.
struct GuienvOutput {
  GlobalAnnotation global;
  std::vector<PageCapture> crops;
  std::vector<PageCapture> kept;
  std::vector<QASample> samples;
};

GuienvOutput generate_guienv(const PageCapture& capture, const CropSpec& spec,
                             std::uint64_t seed);

/// Uniform integer in [0, bound) using rejection sampling, independent of
/// the standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace guikit
