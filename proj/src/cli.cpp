#include "guikit/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "guikit/json_io.hpp"

namespace guikit {

namespace fs = std::filesystem;
using io::json;

namespace {

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError("cannot write " + path);
  return out;
}

std::vector<io::JsonLine> read_lines(const std::string& path) {
  auto in = open_in(path);
  try {
    return io::read_jsonl(in);
  } catch (const io::LineError& e) {
    throw CliError(path + ": " + e.what());
  }
}

template <class F>
auto at_line(const std::string& path, std::size_t line, F&& f) {
  try {
    return f();
  } catch (const io::FormatError& e) {
    throw CliError(path + ": line " + std::to_string(line) + ": " + e.what());
  }
}

std::optional<double> to_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<double> number_list(const std::string& text, char sep) {
  std::vector<double> out;
  std::string_view rest = text;
  while (true) {
    const auto pos = rest.find(sep);
    auto v = to_double(rest.substr(0, pos));
    if (!v) throw CliError("invalid number list '" + text + "'");
    out.push_back(*v);
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  return out;
}

Point relative_point(const std::string& text) {
  const auto v = number_list(text, ',');
  if (v.size() != 2) throw CliError("expected x,y but got '" + text + "'");
  return {v[0], v[1], PositionSpace::relative_unit};
}

void fail_on(const std::vector<std::string>& problems) {
  if (problems.empty()) return;
  std::string msg = problems.front();
  for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
  throw CliError(msg);
}

// ---------------------------------------------------------------------------
// eval

struct EvalOptions {
  std::string gold;
  std::string pred;
  std::string format = "json";
  std::string space = "rel";
  std::string report;
  std::string per_step;
  std::string qa_gold;
  std::string qa_pred;
  std::string grounding = "0.2,0.5,0.7";
  ScoringConfig cfg;
};

struct QaTotals {
  std::size_t missing = 0;
};

QaTotals eval_qa(const EvalOptions& o, MetricsAccumulator& acc) {
  QaTotals totals;
  std::map<std::string, json> answers;
  for (const auto& jl : read_lines(o.qa_pred)) {
    const auto id = at_line(o.qa_pred, jl.line, [&] {
      auto it = jl.value.find("id");
      if (!jl.value.is_object() || it == jl.value.end() || !it->is_string()) {
        throw io::FormatError("/id", "missing");
      }
      if (!jl.value.contains("answer")) throw io::FormatError("/answer", "missing");
      return it->get<std::string>();
    });
    if (!answers.emplace(id, jl.value["answer"]).second) {
      throw CliError(o.qa_pred + ": line " + std::to_string(jl.line) +
                     ": duplicate id " + id);
    }
  }
  std::set<std::string> known;
  for (const auto& jl : read_lines(o.qa_gold)) {
    const QASample gold =
        at_line(o.qa_gold, jl.line, [&] { return io::qa_sample_from_json(jl.value); });
    known.insert(gold.id);
    auto it = answers.find(gold.id);
    if (it == answers.end()) ++totals.missing;
    if (gold.kind == QaKind::bbox2text) {
      std::string pred;
      if (it != answers.end() && it->second.is_string()) {
        pred = it->second.get<std::string>();
      }
      acc.add_bbox2text(eval_bbox2text(pred, gold.text));
    } else {
      std::map<double, bool> hits;
      for (double t : o.cfg.grounding_iou_thresholds) hits[t] = false;
      if (it != answers.end() && it->second.is_array() && it->second.size() == 4 &&
          std::all_of(it->second.begin(), it->second.end(),
                      [](const json& v) { return v.is_number(); })) {
        const json& a = it->second;
        const Box pred{a[0].get<double>(), a[1].get<double>(), a[2].get<double>(),
                       a[3].get<double>(), PositionSpace::scaled_1000};
        hits = eval_text2bbox(pred, gold.box, o.cfg);
      }
      acc.add_text2bbox(hits);
    }
  }
  for (const auto& [id, _] : answers) {
    if (!known.count(id)) throw CliError(o.qa_pred + ": unknown id " + id);
  }
  return totals;
}

int cmd_eval(EvalOptions o, std::ostream& out) {
  o.cfg.grounding_iou_thresholds = number_list(o.grounding, ',');
  fail_on(o.cfg.problems());
  const ParseFormat format = *parse_format_from_string(o.format);
  const PositionSpace space = *position_space_from_string(o.space);

  std::vector<Episode> gold;
  std::map<std::string, std::size_t> by_id;
  for (const auto& jl : read_lines(o.gold)) {
    Episode ep = at_line(o.gold, jl.line, [&] { return io::episode_from_json(jl.value); });
    const auto diags = validate_episode(ep);
    if (!diags.empty()) {
      throw CliError(o.gold + ": line " + std::to_string(jl.line) + ": " +
                     to_string(diags.front()));
    }
    if (!by_id.emplace(ep.episode_id, gold.size()).second) {
      throw CliError(o.gold + ": line " + std::to_string(jl.line) +
                     ": duplicate episode_id " + ep.episode_id);
    }
    gold.push_back(std::move(ep));
  }

  std::map<std::pair<std::size_t, std::size_t>, io::Prediction> preds;
  for (const auto& jl : read_lines(o.pred)) {
    io::Prediction p =
        at_line(o.pred, jl.line, [&] { return io::prediction_from_json(jl.value); });
    const std::string key = "episode_id=" + p.episode_id +
                            " step_index=" + std::to_string(p.step_index);
    auto ep = by_id.find(p.episode_id);
    if (ep == by_id.end() || p.step_index >= gold[ep->second].steps.size()) {
      throw CliError(o.pred + ": line " + std::to_string(jl.line) +
                     ": no golden step for " + key);
    }
    if (!preds.emplace(std::pair{ep->second, p.step_index}, std::move(p)).second) {
      throw CliError(o.pred + ": line " + std::to_string(jl.line) +
                     ": duplicate prediction for " + key);
    }
  }

  std::optional<std::ofstream> per_step;
  if (!o.per_step.empty()) per_step = open_out(o.per_step);

  MetricsAccumulator acc(o.cfg.grounding_iou_thresholds);
  std::size_t unparseable = 0;
  std::size_t missing = 0;
  for (std::size_t e = 0; e < gold.size(); ++e) {
    const Episode& ep = gold[e];
    for (std::size_t s = 0; s < ep.steps.size(); ++s) {
      const Step& step = ep.steps[s];
      std::vector<Action> actions;
      std::optional<std::string> parse_error;
      auto it = preds.find({e, s});
      if (it == preds.end()) {
        ++missing;
      } else {
        try {
          actions = parse_actions(it->second.response,
                                  it->second.format.value_or(format), space);
        } catch (const ParseError& err) {
          ++unparseable;
          parse_error = "byte " + std::to_string(err.offset()) + ": " + err.reason();
        }
      }
      const StepResult result =
          score_step(actions, step.actions, step.candidates, step.viewport, o.cfg);
      acc.add(step, result);
      if (per_step) {
        json line = {{"episode_id", ep.episode_id}, {"step_index", s}};
        line.update(io::step_result_to_json(result));
        if (parse_error) line["parse_error"] = *parse_error;
        *per_step << io::dump_line(line) << '\n';
      }
    }
  }

  std::optional<QaTotals> qa;
  if (!o.qa_gold.empty()) qa = eval_qa(o, acc);

  const MetricsReport report = acc.report();
  json doc = io::report_to_json(report, o.cfg);
  doc["detail"]["unparseable_predictions"] = unparseable;
  doc["detail"]["missing_predictions"] = missing;
  if (qa) doc["ocr"]["missing_predictions"] = qa->missing;
  auto report_out = open_out(o.report);
  report_out << doc.dump(2) << '\n';

  out << "steps " << report.step_count << ", type_em " << report.type_em
      << ", cli_acc " << report.cli_acc << ", step_sr " << report.step_sr << '\n';
  if (report.cli_count == 0) out << "no click/tap slots: cli_acc reported as 0\n";
  return 0;
}

// ---------------------------------------------------------------------------
// convert aitw

struct ConvertOptions {
  std::string in;
  std::string out;
  double split = 0.04;
  std::string navbar_back = "0.25,0.975";
  std::string navbar_home = "0.5,0.975";
};

int cmd_convert_aitw(const ConvertOptions& o, std::ostream& out) {
  aitw::ConvertConfig cfg;
  cfg.tap_swipe_split_distance = o.split;
  cfg.navbar.back_button = relative_point(o.navbar_back);
  cfg.navbar.home_button = relative_point(o.navbar_home);
  fail_on(cfg.problems());

  std::vector<aitw::Record> records;
  std::vector<std::size_t> lines;
  for (const auto& jl : read_lines(o.in)) {
    records.push_back(
        at_line(o.in, jl.line, [&] { return io::aitw_record_from_json(jl.value); }));
    lines.push_back(jl.line);
  }

  const auto filtered = aitw::filter_records(std::move(records));
  auto file = open_out(o.out);
  for (const auto& r : filtered.kept) {
    file << io::dump_line(io::episode_to_json(aitw::convert_record(r, cfg))) << '\n';
  }
  out << "kept=" << filtered.kept.size()
      << " rejected=" << filtered.rejected.size() << '\n';
  for (const auto& r : filtered.rejected) {
    out << "rejected " << r.episode_id << " (line " << lines[r.record_index]
        << ", frame " << r.frame_index << "): " << aitw::to_string(r.reason)
        << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// gen guienv

struct GenOptions {
  std::string captures;
  std::string out;
  std::string crop = "1920x1080";
  std::size_t min_elements = 10;
  std::size_t samples = 10;
  std::uint64_t seed = 0;
};

int cmd_gen_guienv(const GenOptions& o, std::ostream& out) {
  CropSpec spec;
  const auto x = o.crop.find('x');
  const auto w = to_double(std::string_view(o.crop).substr(0, x));
  const auto h = x == std::string::npos
                     ? std::nullopt
                     : to_double(std::string_view(o.crop).substr(x + 1));
  if (!w || !h || *w != std::floor(*w) || *h != std::floor(*h) || *w > 1e9 || *h > 1e9) {
    throw CliError("--crop expects WIDTHxHEIGHT, got '" + o.crop + "'");
  }
  spec.max_width = static_cast<int>(*w);
  spec.max_height = static_cast<int>(*h);
  spec.min_elements = o.min_elements;
  spec.samples_per_crop = o.samples;
  fail_on(spec.problems());

  if (!fs::is_directory(o.captures)) throw CliError("not a directory: " + o.captures);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(o.captures)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  fs::create_directories(o.out);

  auto global = open_out((fs::path(o.out) / "global.jsonl").string());
  auto crops = open_out((fs::path(o.out) / "crops.jsonl").string());
  auto qa = open_out((fs::path(o.out) / "qa.jsonl").string());

  json listed = json::array();
  std::size_t total_crops = 0, total_kept = 0, total_samples = 0;
  for (const auto& path : files) {
    const std::string name = path.filename().string();
    for (const auto& jl : read_lines(path.string())) {
      const PageCapture capture = at_line(name, jl.line, [&] {
        return io::capture_from_json(jl.value);
      });
      const auto problems = validate_capture(capture);
      if (!problems.empty()) {
        throw CliError(name + ": line " + std::to_string(jl.line) + ": " +
                       problems.front());
      }
      const GuienvOutput gen = generate_guienv(capture, spec, o.seed);
      global << io::dump_line(io::global_annotation_to_json(gen.global)) << '\n';
      for (const auto& c : gen.kept) crops << io::dump_line(io::capture_to_json(c)) << '\n';
      for (const auto& s : gen.samples) qa << io::dump_line(io::qa_sample_to_json(s)) << '\n';
      listed.push_back({{"file", name},
                        {"line", jl.line},
                        {"capture_ref", capture.screenshot},
                        {"crops", gen.crops.size()},
                        {"kept_crops", gen.kept.size()},
                        {"samples", gen.samples.size()}});
      total_crops += gen.crops.size();
      total_kept += gen.kept.size();
      total_samples += gen.samples.size();
    }
  }

  const json manifest = {
      {"seed", o.seed},
      {"crop_spec",
       {{"max_width", spec.max_width},
        {"max_height", spec.max_height},
        {"min_elements", spec.min_elements},
        {"samples_per_crop", spec.samples_per_crop}}},
      {"captures", listed},
      {"totals",
       {{"captures", listed.size()},
        {"crops", total_crops},
        {"kept_crops", total_kept},
        {"samples", total_samples}}},
  };
  auto m = open_out((fs::path(o.out) / "manifest.json").string());
  m << manifest.dump(2) << '\n';
  out << "captures=" << listed.size() << " crops=" << total_crops
      << " kept=" << total_kept << " samples=" << total_samples << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// annotate

struct AnnotateOptions {
  std::string captures;
  std::string plans;
  std::string template_file;
  std::string responses;
  std::string out;
  std::string episodes;
};

std::vector<PageCapture> load_captures(const std::string& path) {
  std::vector<PageCapture> out;
  for (const auto& jl : read_lines(path)) {
    PageCapture c = at_line(path, jl.line, [&] { return io::capture_from_json(jl.value); });
    const auto problems = validate_capture(c);
    if (!problems.empty()) {
      throw CliError(path + ": line " + std::to_string(jl.line) + ": " + problems.front());
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::map<std::string, OverlayPlan> load_plans(const std::string& path) {
  std::map<std::string, OverlayPlan> out;
  for (const auto& jl : read_lines(path)) {
    OverlayPlan p = at_line(path, jl.line, [&] { return io::overlay_plan_from_json(jl.value); });
    const std::string ref = p.capture_ref;
    if (!out.emplace(ref, std::move(p)).second) {
      throw CliError(path + ": line " + std::to_string(jl.line) +
                     ": duplicate plan for " + ref);
    }
  }
  return out;
}

const OverlayPlan& plan_for(const std::map<std::string, OverlayPlan>& plans,
                            const PageCapture& c) {
  auto it = plans.find(c.screenshot);
  if (it == plans.end()) throw CliError("no overlay plan for " + c.screenshot);
  return it->second;
}

std::string read_text(const std::string& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_annotate_plan(const AnnotateOptions& o, std::ostream& out) {
  const auto captures = load_captures(o.captures);
  auto file = open_out(o.out);
  for (const auto& c : captures) {
    file << io::dump_line(io::overlay_plan_to_json(build_overlay_plan(c))) << '\n';
  }
  out << "plans=" << captures.size() << '\n';
  return 0;
}

int cmd_annotate_request(const AnnotateOptions& o, std::ostream& out) {
  const auto captures = load_captures(o.captures);
  const auto plans = load_plans(o.plans);
  const std::string tmpl = read_text(o.template_file);
  auto file = open_out(o.out);
  for (const auto& c : captures) {
    AnnotationRequest r;
    try {
      r = build_request(c, plan_for(plans, c), tmpl);
    } catch (const std::invalid_argument& e) {
      throw CliError(o.template_file + ": " + e.what());
    }
    file << io::dump_line(io::request_to_json(r)) << '\n';
  }
  out << "requests=" << captures.size() << '\n';
  return 0;
}

int cmd_annotate_parse(const AnnotateOptions& o, std::ostream& out) {
  const auto captures = load_captures(o.captures);
  const auto plans = load_plans(o.plans);
  std::map<std::string, std::string> stems;
  for (const auto& c : captures) {
    const std::string stem = fs::path(c.screenshot).stem().string();
    auto [it, fresh] = stems.emplace(stem, c.screenshot);
    if (!fresh) {
      throw CliError("screenshots " + it->second + " and " + c.screenshot +
                     " map to the same response file " + stem + ".txt");
    }
  }

  auto file = open_out(o.out);
  std::optional<std::ofstream> episodes;
  if (!o.episodes.empty()) episodes = open_out(o.episodes);
  std::size_t valid = 0, invalid = 0, missing = 0;
  for (const auto& c : captures) {
    const fs::path response =
        fs::path(o.responses) / (fs::path(c.screenshot).stem().string() + ".txt");
    if (!fs::is_regular_file(response)) {
      ++missing;
      continue;
    }
    const AnnotationResult r =
        parse_response(read_text(response.string()), c, plan_for(plans, c));
    json line = {{"capture_ref", c.screenshot}};
    line.update(io::annotation_result_to_json(r));
    file << io::dump_line(line) << '\n';
    if (r.valid) {
      ++valid;
      if (episodes) {
        *episodes << io::dump_line(io::episode_to_json(to_episode(r, c, c.screenshot)))
                  << '\n';
      }
    } else {
      ++invalid;
    }
  }
  out << "valid=" << valid << " invalid=" << invalid << " missing=" << missing << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// validate

enum class FileKind { episode, capture };

std::optional<FileKind> kind_of(const json& v) {
  if (!v.is_object()) return std::nullopt;
  if (v.contains("steps")) return FileKind::episode;
  if (v.contains("elements")) return FileKind::capture;
  return std::nullopt;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  auto in = open_in(path);
  std::optional<FileKind> kind;
  std::size_t records = 0, problems = 0;
  auto report = [&](std::size_t line, const std::string& msg) {
    out << path << ":" << line << ": " << msg << '\n';
    ++problems;
  };
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++records;
    json value;
    try {
      value = json::parse(text);
    } catch (const json::exception&) {
      report(line, "invalid JSON");
      continue;
    }
    const auto k = kind_of(value);
    if (!kind) {
      if (!k) throw CliError(path + ": line " + std::to_string(line) +
                             ": unknown file kind, expected episodes or page captures");
      kind = k;
    }
    if (k != kind) {
      report(line, kind == FileKind::episode ? "record is not an episode"
                                             : "record is not a page capture");
      continue;
    }
    try {
      if (*kind == FileKind::episode) {
        for (const auto& d : validate_episode(io::episode_from_json(value))) {
          report(line, to_string(d));
        }
      } else {
        for (const auto& p : validate_capture(io::capture_from_json(value))) {
          report(line, p);
        }
      }
    } catch (const io::FormatError& e) {
      report(line, e.what());
    }
  }
  err << records << " records, " << problems << " problems\n";
  return problems == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"GUI agent action space, evaluation and data tools", "guikit"};
  app.require_subcommand(1);

  const std::vector<std::string> formats = {"json", "yaml", "csv"};
  const std::vector<std::string> spaces = {"abs", "rel", "scaled"};

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score predictions against golden episodes");
  eval_cmd->add_option("--gold", eval.gold, "Golden episodes (JSONL)")->required();
  eval_cmd->add_option("--pred", eval.pred, "Predictions (JSONL)")->required();
  eval_cmd->add_option("--format", eval.format, "Response grammar")
      ->check(CLI::IsMember(formats))->capture_default_str();
  eval_cmd->add_option("--space", eval.space, "Position space of predictions")
      ->check(CLI::IsMember(spaces))->capture_default_str();
  eval_cmd->add_option("--report", eval.report, "Report output (JSON)")->required();
  eval_cmd->add_option("--per-step", eval.per_step, "Per-step results (JSONL)");
  eval_cmd->add_option("--tap-radius", eval.cfg.tap_radius)->capture_default_str();
  eval_cmd->add_option("--text-threshold", eval.cfg.text_success_threshold)
      ->capture_default_str();
  eval_cmd->add_option("--select-text-iou", eval.cfg.select_text_iou_threshold)
      ->capture_default_str();
  eval_cmd->add_option("--grounding-iou", eval.grounding, "Comma-separated IoU@t thresholds")
      ->capture_default_str();
  auto* qa_gold = eval_cmd->add_option("--qa-gold", eval.qa_gold, "QA samples (JSONL)");
  auto* qa_pred = eval_cmd->add_option("--qa-pred", eval.qa_pred, "QA answers (JSONL)");
  qa_gold->needs(qa_pred);
  qa_pred->needs(qa_gold);

  ConvertOptions conv;
  auto* convert_cmd = app.add_subcommand("convert", "Convert external datasets");
  convert_cmd->require_subcommand(1);
  auto* aitw_cmd = convert_cmd->add_subcommand("aitw", "AITW records to episodes");
  aitw_cmd->add_option("--in", conv.in)->required();
  aitw_cmd->add_option("--out", conv.out)->required();
  aitw_cmd->add_option("--split-dist", conv.split)->capture_default_str();
  aitw_cmd->add_option("--navbar-back", conv.navbar_back)->capture_default_str();
  aitw_cmd->add_option("--navbar-home", conv.navbar_home)->capture_default_str();

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate datasets");
  gen_cmd->require_subcommand(1);
  auto* guienv_cmd = gen_cmd->add_subcommand("guienv", "Global annotations and QA samples");
  guienv_cmd->add_option("--captures", gen.captures, "Directory of capture JSONL files")
      ->required();
  guienv_cmd->add_option("--out", gen.out)->required();
  guienv_cmd->add_option("--crop", gen.crop)->capture_default_str();
  guienv_cmd->add_option("--min-elements", gen.min_elements)->capture_default_str();
  guienv_cmd->add_option("--samples", gen.samples)->capture_default_str();
  guienv_cmd->add_option("--seed", gen.seed)->capture_default_str();

  AnnotateOptions ann;
  auto* ann_cmd = app.add_subcommand("annotate", "Auto-annotation requests and responses");
  ann_cmd->require_subcommand(1);
  auto* plan_cmd = ann_cmd->add_subcommand("plan", "Overlay plans for captures");
  plan_cmd->add_option("--captures", ann.captures)->required();
  plan_cmd->add_option("--out", ann.out)->required();
  auto* request_cmd = ann_cmd->add_subcommand("request", "Instantiate request prompts");
  request_cmd->add_option("--captures", ann.captures)->required();
  request_cmd->add_option("--plans", ann.plans)->required();
  request_cmd->add_option("--template", ann.template_file)->required();
  request_cmd->add_option("--out", ann.out)->required();
  auto* parse_cmd = ann_cmd->add_subcommand("parse", "Parse response text files");
  parse_cmd->add_option("--captures", ann.captures)->required();
  parse_cmd->add_option("--plans", ann.plans)->required();
  parse_cmd->add_option("--responses", ann.responses,
                        "Directory holding <screenshot stem>.txt per capture")
      ->required();
  parse_cmd->add_option("--out", ann.out)->required();
  parse_cmd->add_option("--episodes", ann.episodes, "Episodes for valid results");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check an episode or capture file");
  validate_cmd->add_option("file", validate_path)->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(eval, out);
    if (aitw_cmd->parsed()) return cmd_convert_aitw(conv, out);
    if (guienv_cmd->parsed()) return cmd_gen_guienv(gen, out);
    if (plan_cmd->parsed()) return cmd_annotate_plan(ann, out);
    if (request_cmd->parsed()) return cmd_annotate_request(ann, out);
    if (parse_cmd->parsed()) return cmd_annotate_parse(ann, out);
    if (validate_cmd->parsed()) return cmd_validate(validate_path, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace guikit
