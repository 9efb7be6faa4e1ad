#include "guikit/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace guikit {

namespace {

bool is_integral(double v) { return std::isfinite(v) && std::floor(v) == v; }

void require_viewport(const std::optional<Viewport>& viewport) {
  if (!viewport) {
    throw GeometryError("conversion to or from absolute_px requires a viewport");
  }
  if (!viewport->valid()) {
    throw GeometryError("viewport dimensions must be positive");
  }
}

// One axis of a box/point conversion. `extent` is the viewport size along
// the axis and is only read when absolute_px is involved.
double convert_coordinate(double v, PositionSpace from, PositionSpace to,
                          double extent) {
  double relative = 0.0;
  switch (from) {
    case PositionSpace::absolute_px: relative = v / extent; break;
    case PositionSpace::relative_unit: relative = v; break;
    case PositionSpace::scaled_1000: relative = v / 1000.0; break;
  }
  switch (to) {
    case PositionSpace::absolute_px:
      return relative * extent;
    case PositionSpace::relative_unit: return relative;
    case PositionSpace::scaled_1000: return to_scaled_1000(relative);
  }
  return relative;
}

// Scroll distances are signed and may exceed one viewport, so the scaled
// form truncates toward zero and clamps to (-1000, 1000).
double convert_distance(double v, PositionSpace from, PositionSpace to,
                        double extent) {
  double relative = 0.0;
  switch (from) {
    case PositionSpace::absolute_px: relative = v / extent; break;
    case PositionSpace::relative_unit: relative = v; break;
    case PositionSpace::scaled_1000: relative = v / 1000.0; break;
  }
  switch (to) {
    case PositionSpace::absolute_px:
      return relative * extent;
    case PositionSpace::relative_unit: return relative;
    case PositionSpace::scaled_1000: {
      const double scaled = std::trunc(relative * 1000.0 +
                                       (relative >= 0 ? 1e-9 : -1e-9));
      return std::clamp(scaled, -999.0, 999.0);
    }
  }
  return relative;
}

bool involves_absolute(PositionSpace a, PositionSpace b) {
  return a == PositionSpace::absolute_px || b == PositionSpace::absolute_px;
}

}  // namespace

std::string_view to_string(PositionSpace space) {
  switch (space) {
    case PositionSpace::absolute_px: return "absolute_px";
    case PositionSpace::relative_unit: return "relative_unit";
    case PositionSpace::scaled_1000: return "scaled_1000";
  }
  return "unknown";
}

std::optional<PositionSpace> position_space_from_string(std::string_view text) {
  if (text == "absolute_px" || text == "abs" || text == "absolute") {
    return PositionSpace::absolute_px;
  }
  if (text == "relative_unit" || text == "rel" || text == "relative") {
    return PositionSpace::relative_unit;
  }
  if (text == "scaled_1000" || text == "scaled") {
    return PositionSpace::scaled_1000;
  }
  return std::nullopt;
}

bool coordinate_in_range(double value, PositionSpace space) {
  if (!std::isfinite(value)) return false;
  switch (space) {
    case PositionSpace::absolute_px: return value >= 0.0;
    case PositionSpace::relative_unit: return value >= 0.0 && value <= 1.0;
    case PositionSpace::scaled_1000:
      return is_integral(value) && value >= 0.0 && value <= 999.0;
  }
  return false;
}

bool valid(const Point& p) {
  return coordinate_in_range(p.x, p.space) && coordinate_in_range(p.y, p.space);
}

bool valid(const Box& b) {
  return coordinate_in_range(b.x1, b.space) &&
         coordinate_in_range(b.y1, b.space) &&
         coordinate_in_range(b.x2, b.space) &&
         coordinate_in_range(b.y2, b.space) && b.x1 <= b.x2 && b.y1 <= b.y2;
}

bool valid(const ScrollDelta& d) {
  if (!std::isfinite(d.down) || !std::isfinite(d.right)) return false;
  if (d.space == PositionSpace::scaled_1000) {
    return is_integral(d.down) && is_integral(d.right) &&
           std::abs(d.down) <= 999.0 && std::abs(d.right) <= 999.0;
  }
  return true;
}

double to_scaled_1000(double relative) {
  // The epsilon absorbs representation error such as 0.481 * 1000 landing
  // just below 481.
  const double scaled = std::floor(relative * 1000.0 + 1e-9);
  return std::clamp(scaled, 0.0, 999.0);
}

Point convert_space(const Point& p, PositionSpace target,
                    std::optional<Viewport> viewport) {
  if (p.space == target) return p;
  if (!valid(p)) throw GeometryError("point coordinates out of range");
  if (involves_absolute(p.space, target)) require_viewport(viewport);
  const double w = viewport ? viewport->width_px : 1.0;
  const double h = viewport ? viewport->height_px : 1.0;
  return {convert_coordinate(p.x, p.space, target, w),
          convert_coordinate(p.y, p.space, target, h), target};
}

Box convert_space(const Box& b, PositionSpace target,
                  std::optional<Viewport> viewport) {
  if (b.space == target) return b;
  if (!valid(b)) throw GeometryError("box coordinates out of range");
  if (involves_absolute(b.space, target)) require_viewport(viewport);
  const double w = viewport ? viewport->width_px : 1.0;
  const double h = viewport ? viewport->height_px : 1.0;
  return {convert_coordinate(b.x1, b.space, target, w),
          convert_coordinate(b.y1, b.space, target, h),
          convert_coordinate(b.x2, b.space, target, w),
          convert_coordinate(b.y2, b.space, target, h), target};
}

ScrollDelta convert_space(const ScrollDelta& d, PositionSpace target,
                          std::optional<Viewport> viewport) {
  if (d.space == target) return d;
  if (!valid(d)) throw GeometryError("scroll delta out of range");
  if (involves_absolute(d.space, target)) require_viewport(viewport);
  const double w = viewport ? viewport->width_px : 1.0;
  const double h = viewport ? viewport->height_px : 1.0;
  return {convert_distance(d.down, d.space, target, h),
          convert_distance(d.right, d.space, target, w), target};
}

std::string format_coordinate(double value, PositionSpace space) {
  char buf[64];
  switch (space) {
    case PositionSpace::relative_unit: {
      std::snprintf(buf, sizeof buf, "%.3f", value);
      std::string out(buf);
      if (out == "-0.000") out = "0.000";
      return out;
    }
    case PositionSpace::scaled_1000:
      return std::to_string(std::llround(value));
    case PositionSpace::absolute_px: {
      if (is_integral(value) && std::abs(value) < 1e15) {
        return std::to_string(static_cast<long long>(value));
      }
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
      return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
    }
  }
  return {};
}

}  // namespace guikit
