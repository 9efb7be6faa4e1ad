#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace guikit {

/// Coordinate convention used by a piece of geometry.
///
/// absolute_px   pixels relative to the top-left corner of the viewport
/// relative_unit fractions of the viewport size, in [0, 1]
/// scaled_1000   relative values scaled to integers in [0, 1000)
enum class PositionSpace { absolute_px, relative_unit, scaled_1000 };

std::string_view to_string(PositionSpace space);
/// Accepts both the long names and the short CLI forms (abs, rel, scaled).
std::optional<PositionSpace> position_space_from_string(std::string_view text);

struct Viewport {
  int width_px = 0;
  int height_px = 0;

  bool valid() const { return width_px > 0 && height_px > 0; }
  friend bool operator==(const Viewport&, const Viewport&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  PositionSpace space = PositionSpace::relative_unit;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Box {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;
  PositionSpace space = PositionSpace::relative_unit;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }
  Point center() const { return {(x1 + x2) / 2.0, (y1 + y2) / 2.0, space}; }

  friend bool operator==(const Box&, const Box&) = default;
};

/// Scroll distance. Positive `down` scrolls toward the bottom of the page,
/// negative scrolls up; `right` is the horizontal counterpart.
struct ScrollDelta {
  double down = 0.0;
  double right = 0.0;
  PositionSpace space = PositionSpace::absolute_px;

  friend bool operator==(const ScrollDelta&, const ScrollDelta&) = default;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Range check for a single box/point coordinate in `space`. Absolute values
/// only need to be finite and non-negative here; viewport bounds are checked
/// by the episode validator.
bool coordinate_in_range(double value, PositionSpace space);
bool valid(const Point& p);
bool valid(const Box& b);
bool valid(const ScrollDelta& d);

/// Conversions between position spaces. Converting to the geometry's own
/// space returns it unchanged. A viewport is required whenever absolute_px
/// is the source or the target; GeometryError is thrown if it is missing or
/// if the input is out of range for its space.
Point convert_space(const Point& p, PositionSpace target,
                    std::optional<Viewport> viewport = std::nullopt);
Box convert_space(const Box& b, PositionSpace target,
                  std::optional<Viewport> viewport = std::nullopt);
ScrollDelta convert_space(const ScrollDelta& d, PositionSpace target,
                          std::optional<Viewport> viewport = std::nullopt);

/// floor(relative * 1000) clamped to [0, 999].
double to_scaled_1000(double relative);

/// Renders a coordinate the way it is written in action text: relative
/// values with exactly three decimals, scaled values as integers, absolute
/// values as integers when integral and in shortest round-trip form
/// otherwise.
std::string format_coordinate(double value, PositionSpace space);

}  // namespace guikit
