#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "guikit/geometry.hpp"

namespace guikit {

struct PageElement {
  std::int64_t id = 0;
  std::string text;
  /// Absolute pixels within the captured page.
  Box box{0, 0, 0, 0, PositionSpace::absolute_px};
  /// Position in the page's layout sequence.
  std::int64_t order = 0;
  bool interactive = false;

  /// Elements with non-blank text can serve as OCR targets.
  bool ocr_eligible() const;

  friend bool operator==(const PageElement&, const PageElement&) = default;
};

/// Pixel rectangle of a crop inside its source screenshot.
struct CropRect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  friend bool operator==(const CropRect&, const CropRect&) = default;
};

/// A rendered page: screenshot reference plus its elements. For full-page
/// captures `viewport` is the size of the whole rendered page.
struct PageCapture {
  std::string url;
  Viewport viewport;
  std::string screenshot;
  std::vector<PageElement> elements;
  /// Set on crops produced by crop_capture.
  std::optional<CropRect> crop;

  friend bool operator==(const PageCapture&, const PageCapture&) = default;
};

/// Invariant violations: duplicate ids or layout orders, boxes outside the
/// page or malformed, non-positive viewport. Empty when valid.
std::vector<std::string> validate_capture(const PageCapture& capture);

/// Elements sorted by layout order.
std::vector<const PageElement*> in_layout_order(const PageCapture& capture);

}  // namespace guikit
