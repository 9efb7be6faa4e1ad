#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "guikit/action.hpp"

namespace guikit {

/// Text grammars used to write actions in model responses.
///
///   json_style  {"name":"click","element":[0.481,0.565,0.506,0.592]}
///   yaml_style  name: click
///               element: [0.481, 0.565, 0.506, 0.592]
///   csv_style   action: click, element: <box>481 565 506 592</box>
///
/// Multiple actions are written one record after another, separated by a
/// newline. json_style and csv_style records are single lines; a yaml_style
/// record starts at its `name:` line.
enum class ParseFormat { json_style, yaml_style, csv_style };

std::string_view to_string(ParseFormat format);
/// Accepts json/yaml/csv as well as the *_style names.
std::optional<ParseFormat> parse_format_from_string(std::string_view text);

enum class ParseErrorKind { malformed, unknown_action, payload_mismatch };

std::string_view to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t offset, std::string reason);

  ParseErrorKind kind() const { return kind_; }
  /// Byte offset into the parsed text where the problem was detected.
  std::size_t offset() const { return offset_; }
  const std::string& reason() const { return reason_; }

 private:
  ParseErrorKind kind_;
  std::size_t offset_;
  std::string reason_;
};

/// Writes `action` in `format` with its geometry expressed in `space`.
/// Throws GeometryError when the conversion needs a viewport that is absent.
std::string serialize_action(const Action& action, ParseFormat format,
                             PositionSpace space,
                             std::optional<Viewport> viewport = std::nullopt);

std::string serialize_actions(std::span<const Action> actions,
                              ParseFormat format, PositionSpace space,
                              std::optional<Viewport> viewport = std::nullopt);

/// Parses every action record in `text`, in order. Geometry is tagged with
/// `space`, the position space the text is written in; range checks are
/// left to validation. Blank lines are ignored; anything else that does not
/// form a valid record raises ParseError.
std::vector<Action> parse_actions(
    std::string_view text, ParseFormat format,
    PositionSpace space = PositionSpace::relative_unit);

namespace detail {

/// Format-independent view of one action record: its name followed by
/// key/value fields in written order.
using FieldValue = std::variant<double, std::string, std::vector<double>>;

struct Field {
  std::string key;
  FieldValue value;
  std::size_t offset = 0;
};

struct Record {
  std::string name;
  std::vector<Field> fields;
  std::size_t offset = 0;
};

Record record_from_action(const Action& action);
Action action_from_record(const Record& record, PositionSpace space);

/// Parses the comma-separated `key: value` list of one csv_style line.
/// `base` is added to offsets reported in fields and errors.
std::vector<Field> parse_csv_fields(std::string_view line, std::size_t base);

/// JSON string literal for `text` (quotes and escapes included).
std::string quote(std::string_view text);

}  // namespace detail

}  // namespace guikit
