#include "guikit/action_format.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace guikit {

using nlohmann::json;

ParseError::ParseError(ParseErrorKind kind, std::size_t offset,
                       std::string reason)
    : std::runtime_error(std::string(to_string(kind)) + " at byte " +
                         std::to_string(offset) + ": " + reason),
      kind_(kind),
      offset_(offset),
      reason_(std::move(reason)) {}

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::malformed: return "malformed";
    case ParseErrorKind::unknown_action: return "unknown action";
    case ParseErrorKind::payload_mismatch: return "payload mismatch";
  }
  return "error";
}

std::string_view to_string(ParseFormat format) {
  switch (format) {
    case ParseFormat::json_style: return "json_style";
    case ParseFormat::yaml_style: return "yaml_style";
    case ParseFormat::csv_style: return "csv_style";
  }
  return "unknown";
}

std::optional<ParseFormat> parse_format_from_string(std::string_view text) {
  if (text == "json" || text == "json_style") return ParseFormat::json_style;
  if (text == "yaml" || text == "yaml_style") return ParseFormat::yaml_style;
  if (text == "csv" || text == "csv_style") return ParseFormat::csv_style;
  return std::nullopt;
}

namespace detail {

namespace {

[[noreturn]] void fail(ParseErrorKind kind, std::size_t offset,
                       std::string reason) {
  throw ParseError(kind, offset, std::move(reason));
}

bool is_space(char c) { return c == ' ' || c == '\t'; }

bool is_key_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (is_space(s.front()) || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (is_space(s.back()) || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> to_number(std::string_view token) {
  if (token.empty()) return std::nullopt;
  if (token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

// Cursor over a single line of csv_style or yaml_style text.
class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t base)
      : line_(line), base_(base) {}

  bool done() const { return pos_ >= line_.size(); }
  char peek() const { return done() ? '\0' : line_[pos_]; }
  std::size_t offset() const { return base_ + pos_; }

  void skip_spaces() {
    while (!done() && is_space(line_[pos_])) ++pos_;
  }

  bool consume(std::string_view token) {
    if (line_.substr(pos_).starts_with(token)) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  std::string key() {
    skip_spaces();
    const std::size_t start = pos_;
    while (!done() && is_key_char(line_[pos_])) ++pos_;
    if (pos_ == start) fail(ParseErrorKind::malformed, offset(), "expected key");
    std::string k(line_.substr(start, pos_ - start));
    skip_spaces();
    if (!consume(":")) {
      fail(ParseErrorKind::malformed, offset(), "expected ':' after key");
    }
    skip_spaces();
    return k;
  }

  // `comma_terminated` selects csv_style (values end at ',') versus
  // yaml_style (a value runs to the end of the line).
  FieldValue value(bool comma_terminated) {
    skip_spaces();
    if (done()) fail(ParseErrorKind::malformed, offset(), "missing value");
    const char c = peek();
    if (c == '"') return quoted();
    if (c == '[') return number_list("[", "]");
    if (line_.substr(pos_).starts_with("<box>")) {
      return number_list("<box>", "</box>");
    }
    if (line_.substr(pos_).starts_with("<point>")) {
      return number_list("<point>", "</point>");
    }
    const std::size_t start = pos_;
    if (comma_terminated) {
      while (!done() && line_[pos_] != ',') ++pos_;
    } else {
      pos_ = line_.size();
    }
    const std::string_view token = trim(line_.substr(start, pos_ - start));
    if (token.empty()) fail(ParseErrorKind::malformed, base_ + start, "empty value");
    if (auto n = to_number(token)) return *n;
    return std::string(token);
  }

 private:
  FieldValue quoted() {
    const std::size_t start = pos_;
    ++pos_;
    bool escaped = false;
    while (!done()) {
      const char c = line_[pos_++];
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        try {
          json parsed = json::parse(line_.substr(start, pos_ - start));
          if (parsed.is_string()) return parsed.get<std::string>();
        } catch (const json::exception&) {
        }
        fail(ParseErrorKind::malformed, base_ + start, "invalid string literal");
      }
    }
    fail(ParseErrorKind::malformed, base_ + start, "unterminated string");
  }

  FieldValue number_list(std::string_view open, std::string_view close) {
    const std::size_t start = pos_;
    pos_ += open.size();
    std::vector<double> values;
    while (true) {
      while (!done() && (is_space(line_[pos_]) || line_[pos_] == ',')) ++pos_;
      if (done()) {
        fail(ParseErrorKind::malformed, base_ + start,
             "unterminated " + std::string(open));
      }
      if (consume(close)) return values;
      const std::size_t token_start = pos_;
      while (!done() && !is_space(line_[pos_]) && line_[pos_] != ',' &&
             line_[pos_] != close.front()) {
        ++pos_;
      }
      auto n = to_number(line_.substr(token_start, pos_ - token_start));
      if (!n) {
        fail(ParseErrorKind::malformed, base_ + token_start,
             "expected number inside " + std::string(open));
      }
      values.push_back(*n);
    }
  }

  std::string_view line_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

struct FieldSpec {
  std::string_view key;
  bool required;
};

std::vector<FieldSpec> field_specs(ActionKind kind) {
  switch (kind) {
    case ActionKind::click:
    case ActionKind::hover:
      return {{"element", true}, {"element_id", false}};
    case ActionKind::tap: return {{"point", true}};
    case ActionKind::input:
    case ActionKind::answer: return {{"text", true}};
    case ActionKind::scroll: return {{"down", true}, {"right", true}};
    case ActionKind::swipe:
    case ActionKind::select_text: return {{"from", true}, {"to", true}};
    case ActionKind::copy:
    case ActionKind::enter: return {};
    case ActionKind::select:
      return {{"element", true}, {"element_id", false}, {"text", true}};
  }
  return {};
}

std::vector<double> as_list(const Field& f, std::size_t arity,
                            std::string_view name) {
  const auto* v = std::get_if<std::vector<double>>(&f.value);
  if (v == nullptr || v->size() != arity) {
    fail(ParseErrorKind::payload_mismatch, f.offset,
         "field '" + f.key + "' of " + std::string(name) + " needs " +
             std::to_string(arity) + " numbers");
  }
  return *v;
}

double as_number(const Field& f, std::string_view name) {
  const auto* v = std::get_if<double>(&f.value);
  if (v == nullptr) {
    fail(ParseErrorKind::payload_mismatch, f.offset,
         "field '" + f.key + "' of " + std::string(name) + " must be a number");
  }
  return *v;
}

std::string as_text(const Field& f, std::string_view name) {
  const auto* v = std::get_if<std::string>(&f.value);
  if (v == nullptr) {
    fail(ParseErrorKind::payload_mismatch, f.offset,
         "field '" + f.key + "' of " + std::string(name) + " must be a string");
  }
  return *v;
}

std::int64_t as_id(const Field& f, std::string_view name) {
  const double v = as_number(f, name);
  constexpr double kLimit = 9.0e15;
  if (std::floor(v) != v || std::abs(v) > kLimit) {
    fail(ParseErrorKind::payload_mismatch, f.offset,
         "element_id of " + std::string(name) + " must be an integer");
  }
  return static_cast<std::int64_t>(v);
}

std::vector<double> box_values(const Box& b) { return {b.x1, b.y1, b.x2, b.y2}; }
std::vector<double> point_values(const Point& p) { return {p.x, p.y}; }

}  // namespace

std::string quote(std::string_view text) {
  return json(std::string(text)).dump(-1, ' ', false,
                                      json::error_handler_t::replace);
}

Record record_from_action(const Action& action) {
  Record r;
  r.name = std::string(to_string(action.kind()));
  auto add = [&](std::string key, FieldValue value) {
    r.fields.push_back({std::move(key), std::move(value), 0});
  };
  auto add_id = [&](const std::optional<std::int64_t>& id) {
    if (id) add("element_id", static_cast<double>(*id));
  };
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, actions::Click> ||
                      std::is_same_v<T, actions::Hover>) {
          add("element", box_values(a.element));
          add_id(a.element_id);
        } else if constexpr (std::is_same_v<T, actions::Select>) {
          add("element", box_values(a.element));
          add_id(a.element_id);
          add("text", a.text);
        } else if constexpr (std::is_same_v<T, actions::Tap>) {
          add("point", point_values(a.point));
        } else if constexpr (std::is_same_v<T, actions::Input> ||
                             std::is_same_v<T, actions::Answer>) {
          add("text", a.text);
        } else if constexpr (std::is_same_v<T, actions::Scroll>) {
          add("down", a.delta.down);
          add("right", a.delta.right);
        } else if constexpr (std::is_same_v<T, actions::Swipe> ||
                             std::is_same_v<T, actions::SelectText>) {
          add("from", point_values(a.from));
          add("to", point_values(a.to));
        }
      },
      action.payload);
  return r;
}

Action action_from_record(const Record& record, PositionSpace space) {
  const auto kind = action_kind_from_string(record.name);
  if (!kind) {
    fail(ParseErrorKind::unknown_action, record.offset,
         "unknown action name '" + record.name + "'");
  }
  const std::string_view name = to_string(*kind);
  const auto specs = field_specs(*kind);

  std::vector<const Field*> slots(specs.size(), nullptr);
  for (const Field& f : record.fields) {
    std::size_t i = 0;
    while (i < specs.size() && specs[i].key != f.key) ++i;
    if (i == specs.size()) {
      fail(ParseErrorKind::payload_mismatch, f.offset,
           "unexpected field '" + f.key + "' for " + std::string(name));
    }
    if (slots[i] != nullptr) {
      fail(ParseErrorKind::payload_mismatch, f.offset,
           "duplicate field '" + f.key + "'");
    }
    slots[i] = &f;
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].required && slots[i] == nullptr) {
      fail(ParseErrorKind::payload_mismatch, record.offset,
           std::string(name) + " requires field '" + std::string(specs[i].key) +
               "'");
    }
  }

  auto box = [&](const Field& f) {
    auto v = as_list(f, 4, name);
    return Box{v[0], v[1], v[2], v[3], space};
  };
  auto point = [&](const Field& f) {
    auto v = as_list(f, 2, name);
    return Point{v[0], v[1], space};
  };
  auto id = [&](std::size_t slot) -> std::optional<std::int64_t> {
    if (slots[slot] == nullptr) return std::nullopt;
    return as_id(*slots[slot], name);
  };

  switch (*kind) {
    case ActionKind::click: return make_click(box(*slots[0]), id(1));
    case ActionKind::hover: return make_hover(box(*slots[0]), id(1));
    case ActionKind::tap: return make_tap(point(*slots[0]));
    case ActionKind::input: return make_input(as_text(*slots[0], name));
    case ActionKind::answer: return make_answer(as_text(*slots[0], name));
    case ActionKind::scroll:
      return make_scroll({as_number(*slots[0], name),
                          as_number(*slots[1], name), space});
    case ActionKind::swipe:
      return make_swipe(point(*slots[0]), point(*slots[1]));
    case ActionKind::select_text:
      return make_select_text(point(*slots[0]), point(*slots[1]));
    case ActionKind::copy: return make_copy();
    case ActionKind::enter: return make_enter();
    case ActionKind::select:
      return make_select(box(*slots[0]), as_text(*slots[2], name), id(1));
  }
  fail(ParseErrorKind::unknown_action, record.offset, "unhandled action kind");
}

std::vector<Field> parse_csv_fields(std::string_view line, std::size_t base) {
  std::vector<Field> fields;
  LineScanner scan(line, base);
  while (true) {
    scan.skip_spaces();
    if (scan.done()) break;
    const std::size_t at = scan.offset();
    std::string key = scan.key();
    fields.push_back({std::move(key), scan.value(true), at});
    scan.skip_spaces();
    if (scan.done()) break;
    if (!scan.consume(",")) {
      fail(ParseErrorKind::malformed, scan.offset(), "expected ',' between fields");
    }
    scan.skip_spaces();
    if (scan.done()) {
      fail(ParseErrorKind::malformed, scan.offset(), "trailing ','");
    }
  }
  return fields;
}

}  // namespace detail

namespace {

using detail::Field;
using detail::FieldValue;
using detail::Record;

// Renders record values for one grammar.
std::string render_list(const std::vector<double>& values, PositionSpace space,
                        std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += sep;
    out += format_coordinate(values[i], space);
  }
  return out;
}

std::string render_scalar(const Field& f, PositionSpace space) {
  const double v = std::get<double>(f.value);
  if (f.key == "element_id") return std::to_string(static_cast<long long>(v));
  return format_coordinate(v, space);
}

std::string emit_json(const Record& r, PositionSpace space) {
  std::string out = "{\"name\":" + detail::quote(r.name);
  for (const Field& f : r.fields) {
    out += "," + detail::quote(f.key) + ":";
    if (auto* s = std::get_if<std::string>(&f.value)) {
      out += detail::quote(*s);
    } else if (auto* l = std::get_if<std::vector<double>>(&f.value)) {
      out += "[" + render_list(*l, space, ",") + "]";
    } else {
      out += render_scalar(f, space);
    }
  }
  return out + "}";
}

std::string emit_yaml(const Record& r, PositionSpace space) {
  std::string out = "name: " + r.name;
  for (const Field& f : r.fields) {
    out += "\n" + f.key + ": ";
    if (auto* s = std::get_if<std::string>(&f.value)) {
      out += detail::quote(*s);
    } else if (auto* l = std::get_if<std::vector<double>>(&f.value)) {
      out += "[" + render_list(*l, space, ", ") + "]";
    } else {
      out += render_scalar(f, space);
    }
  }
  return out;
}

std::string emit_csv(const Record& r, PositionSpace space) {
  std::string out = "action: " + r.name;
  for (const Field& f : r.fields) {
    out += ", " + f.key + ": ";
    if (auto* s = std::get_if<std::string>(&f.value)) {
      out += detail::quote(*s);
    } else if (auto* l = std::get_if<std::vector<double>>(&f.value)) {
      const std::string_view tag = l->size() == 4 ? "box" : "point";
      out += "<" + std::string(tag) + ">" + render_list(*l, space, " ") +
             "</" + std::string(tag) + ">";
    } else {
      out += render_scalar(f, space);
    }
  }
  return out;
}

struct Line {
  std::string_view text;
  std::size_t offset;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back({text.substr(start, end - start), start});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

bool blank(std::string_view s) {
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

FieldValue json_field_value(const json& v, std::size_t offset,
                            const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      throw ParseError(ParseErrorKind::malformed, offset,
                       "field '" + key + "' is not a finite number");
    }
    return d;
  }
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) {
        throw ParseError(ParseErrorKind::payload_mismatch, offset,
                         "field '" + key + "' must contain only numbers");
      }
      const double d = e.get<double>();
      if (!std::isfinite(d)) {
        throw ParseError(ParseErrorKind::malformed, offset,
                         "field '" + key + "' is not a finite number");
      }
      out.push_back(d);
    }
    return out;
  }
  throw ParseError(ParseErrorKind::payload_mismatch, offset,
                   "field '" + key + "' has an unsupported value type");
}

std::vector<Record> records_json(std::string_view text) {
  std::vector<Record> records;
  for (const Line& line : split_lines(text)) {
    if (blank(line.text)) continue;
    json obj;
    try {
      obj = json::parse(line.text);
    } catch (const json::parse_error& e) {
      const std::size_t within = e.byte > 0 ? e.byte - 1 : 0;
      throw ParseError(ParseErrorKind::malformed,
                       line.offset + std::min(within, line.text.size()),
                       "invalid JSON record");
    } catch (const json::exception&) {
      throw ParseError(ParseErrorKind::malformed, line.offset,
                       "invalid JSON record");
    }
    if (!obj.is_object()) {
      throw ParseError(ParseErrorKind::malformed, line.offset,
                       "JSON record must be an object");
    }
    auto name = obj.find("name");
    if (name == obj.end() || !name->is_string()) {
      throw ParseError(ParseErrorKind::malformed, line.offset,
                       "JSON record needs a string 'name'");
    }
    Record r{name->get<std::string>(), {}, line.offset};
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (it.key() == "name") continue;
      r.fields.push_back(
          {it.key(), json_field_value(it.value(), line.offset, it.key()),
           line.offset});
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<Record> records_yaml(std::string_view text) {
  std::vector<Record> records;
  for (const Line& line : split_lines(text)) {
    if (blank(line.text) || detail::trim(line.text) == "---") {
      continue;
    }
    detail::LineScanner scan(line.text, line.offset);
    const std::size_t at = line.offset;
    std::string key = scan.key();
    FieldValue value = scan.value(false);
    if (key == "name") {
      auto* name = std::get_if<std::string>(&value);
      if (name == nullptr) {
        throw ParseError(ParseErrorKind::malformed, at,
                         "action name must be a word");
      }
      records.push_back({*name, {}, at});
      continue;
    }
    if (records.empty()) {
      throw ParseError(ParseErrorKind::malformed, at,
                       "field before the first 'name:' line");
    }
    records.back().fields.push_back({std::move(key), std::move(value), at});
  }
  return records;
}

std::vector<Record> records_csv(std::string_view text) {
  std::vector<Record> records;
  for (const Line& line : split_lines(text)) {
    if (blank(line.text)) continue;
    auto fields = detail::parse_csv_fields(line.text, line.offset);
    if (fields.empty() || fields.front().key != "action") {
      throw ParseError(ParseErrorKind::malformed, line.offset,
                       "csv record must start with 'action:'");
    }
    auto* name = std::get_if<std::string>(&fields.front().value);
    if (name == nullptr) {
      throw ParseError(ParseErrorKind::malformed, fields.front().offset,
                       "action name must be a word");
    }
    Record r{*name, {}, line.offset};
    r.fields.assign(std::make_move_iterator(fields.begin() + 1),
                    std::make_move_iterator(fields.end()));
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace

std::string serialize_action(const Action& action, ParseFormat format,
                             PositionSpace space,
                             std::optional<Viewport> viewport) {
  const Record r = detail::record_from_action(convert_space(action, space, viewport));
  switch (format) {
    case ParseFormat::json_style: return emit_json(r, space);
    case ParseFormat::yaml_style: return emit_yaml(r, space);
    case ParseFormat::csv_style: return emit_csv(r, space);
  }
  return {};
}

std::string serialize_actions(std::span<const Action> actions,
                              ParseFormat format, PositionSpace space,
                              std::optional<Viewport> viewport) {
  std::string out;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i > 0) out += '\n';
    out += serialize_action(actions[i], format, space, viewport);
  }
  return out;
}

std::vector<Action> parse_actions(std::string_view text, ParseFormat format,
                                  PositionSpace space) {
  std::vector<Record> records;
  switch (format) {
    case ParseFormat::json_style: records = records_json(text); break;
    case ParseFormat::yaml_style: records = records_yaml(text); break;
    case ParseFormat::csv_style: records = records_csv(text); break;
  }
  std::vector<Action> out;
  out.reserve(records.size());
  for (const Record& r : records) {
    out.push_back(detail::action_from_record(r, space));
  }
  return out;
}

}  // namespace guikit
