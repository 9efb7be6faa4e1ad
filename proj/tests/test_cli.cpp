#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "gold_corpus.hpp"
#include "guikit/cli.hpp"

using namespace guikit;
namespace fs = std::filesystem;
using io::json;

namespace {

const std::string kFixtures = GUIKIT_FIXTURES_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "guikit");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("guikit-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

json read_json(const std::string& path) { return json::parse(slurp(path)); }

constexpr auto kRel = PositionSpace::relative_unit;

std::vector<Episode> tap_episodes() {
  std::vector<Episode> out;
  for (int i = 0; i < 5; ++i) {
    Episode ep;
    ep.episode_id = "tap-" + std::to_string(i);
    ep.instruction = "press it";
    ep.space = kRel;
    Step s;
    s.screenshot = "t.png";
    s.viewport = {1000, 1000};
    s.actions = {make_tap({0.1 * (i + 1), 0.5, kRel})};
    ep.steps.push_back(s);
    out.push_back(ep);
  }
  return out;
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"eval", "--gold", "x"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliEval, AllCorrectThenOneWrongTap) {
  TempDir dir;
  const auto eps = tap_episodes();
  fuzz::write_episodes(dir / "gold.jsonl", eps);
  auto preds = fuzz::replay_predictions(eps, ParseFormat::json_style);
  fuzz::write_predictions(dir / "pred.jsonl", preds);
  CliRun r = run({"eval", "--gold", dir / "gold.jsonl", "--pred", dir / "pred.jsonl", "--report",
               dir / "report.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json rep = read_json(dir / "report.json");
  EXPECT_EQ(rep.at("step_sr"), 1.0);
  EXPECT_EQ(rep.at("cli_acc"), 1.0);
  EXPECT_NE(r.out.find("steps 5"), std::string::npos);

  preds[2].response = R"({"name": "tap", "point": [0.9, 0.9]})";
  fuzz::write_predictions(dir / "pred.jsonl", preds);
  r = run({"eval", "--gold", dir / "gold.jsonl", "--pred", dir / "pred.jsonl", "--report",
           dir / "report.json", "--per-step", dir / "steps.jsonl"});
  ASSERT_EQ(r.code, 0) << r.err;
  rep = read_json(dir / "report.json");
  EXPECT_DOUBLE_EQ(rep.at("step_sr").get<double>(), 0.8);
  EXPECT_DOUBLE_EQ(rep.at("type_em").get<double>(), 1.0);
  std::istringstream steps(slurp(dir / "steps.jsonl"));
  EXPECT_EQ(io::read_jsonl(steps).size(), 5u);
}

TEST(CliEval, MissingAndUnparseable) {
  TempDir dir;
  const auto eps = tap_episodes();
  fuzz::write_episodes(dir / "gold.jsonl", eps);
  auto preds = fuzz::replay_predictions(eps, ParseFormat::csv_style);
  preds.pop_back();
  preds[0].response = "tap at somewhere";
  fuzz::write_predictions(dir / "pred.jsonl", preds);
  const CliRun r = run({"eval", "--gold", dir / "gold.jsonl", "--pred", dir / "pred.jsonl",
                     "--format", "csv", "--report", dir / "report.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = read_json(dir / "report.json");
  EXPECT_EQ(rep.at("detail").at("unparseable_predictions"), 1);
  EXPECT_EQ(rep.at("detail").at("missing_predictions"), 1);
  EXPECT_DOUBLE_EQ(rep.at("step_sr").get<double>(), 0.6);
}

TEST(CliEval, UnknownEpisodeIsAnError) {
  TempDir dir;
  const auto eps = tap_episodes();
  fuzz::write_episodes(dir / "gold.jsonl", eps);
  auto preds = fuzz::replay_predictions(eps, ParseFormat::json_style);
  preds[1].episode_id = "nope";
  fuzz::write_predictions(dir / "pred.jsonl", preds);
  const CliRun r = run({"eval", "--gold", dir / "gold.jsonl", "--pred", dir / "pred.jsonl",
                     "--report", dir / "report.json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("episode_id=nope step_index=0"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST(CliEval, DuplicatePredictionIsAnError) {
  TempDir dir;
  const auto eps = tap_episodes();
  fuzz::write_episodes(dir / "gold.jsonl", eps);
  auto preds = fuzz::replay_predictions(eps, ParseFormat::json_style);
  preds.push_back(preds[0]);
  fuzz::write_predictions(dir / "pred.jsonl", preds);
  const CliRun r = run({"eval", "--gold", dir / "gold.jsonl", "--pred", dir / "pred.jsonl",
                     "--report", dir / "report.json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("duplicate prediction"), std::string::npos);
}

TEST(CliEval, SelfConsistencyEveryFormatAndSpace) {
  fuzz::Gen g(71);
  for (const auto& [space, flag] : {std::pair{PositionSpace::absolute_px, "abs"},
                                    std::pair{PositionSpace::relative_unit, "rel"},
                                    std::pair{PositionSpace::scaled_1000, "scaled"}}) {
    std::vector<Episode> eps;
    for (int i = 0; i < 20; ++i) eps.push_back(fuzz::gold_episode(g, "e" + std::to_string(i), space));
    for (const auto& [fmt, fname] : {std::pair{ParseFormat::json_style, "json"},
                                     std::pair{ParseFormat::yaml_style, "yaml"},
                                     std::pair{ParseFormat::csv_style, "csv"}}) {
      TempDir dir;
      fuzz::write_episodes(dir / "gold.jsonl", eps);
      fuzz::write_predictions(dir / "pred.jsonl", fuzz::replay_predictions(eps, fmt));
      const CliRun r = run({"eval", "--gold", dir / "gold.jsonl", "--pred", dir / "pred.jsonl",
                         "--format", fname, "--space", flag, "--report", dir / "r.json"});
      ASSERT_EQ(r.code, 0) << r.err;
      const json rep = read_json(dir / "r.json");
      EXPECT_EQ(rep.at("step_sr"), 1.0) << flag << " " << fname;
      EXPECT_EQ(rep.at("type_em"), 1.0) << flag << " " << fname;
      EXPECT_EQ(rep.at("detail").at("unparseable_predictions"), 0);
    }
  }
}

TEST(CliEval, QaScoring) {
  TempDir dir;
  fuzz::write_episodes(dir / "gold.jsonl", tap_episodes());
  fuzz::write_predictions(dir / "pred.jsonl",
                          fuzz::replay_predictions(tap_episodes(), ParseFormat::json_style));
  write(dir / "qa.jsonl",
        R"({"id":"q1","kind":"bbox2text","crop_ref":"a#0,0,10x10","crop":[0,0,10,10],"element_id":1,"prompt":[0,0,500,500],"answer":"Log in"})"
        "\n"
        R"({"id":"q2","kind":"text2bbox","crop_ref":"a#0,0,10x10","crop":[0,0,10,10],"element_id":2,"prompt":"Cart","answer":[0,0,500,500]})"
        "\n");
  write(dir / "qa_pred.jsonl", R"({"id":"q1","answer":"log in."})"
                               "\n"
                               R"({"id":"q2","answer":[0,250,500,500]})"
                               "\n");
  const CliRun r = run({"eval", "--gold", dir / "gold.jsonl", "--pred", dir / "pred.jsonl",
                     "--report", dir / "r.json", "--qa-gold", dir / "qa.jsonl", "--qa-pred",
                     dir / "qa_pred.jsonl"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json ocr = read_json(dir / "r.json").at("ocr");
  EXPECT_EQ(ocr.at("bbox2text_em"), 1.0);
  EXPECT_EQ(ocr.at("text2bbox_iou_at").at("0.2"), 1.0);
  EXPECT_EQ(ocr.at("text2bbox_iou_at").at("0.5"), 1.0);
  EXPECT_EQ(ocr.at("text2bbox_iou_at").at("0.7"), 0.0);
}

TEST(CliConvert, Fixture) {
  TempDir dir;
  const CliRun r = run({"convert", "aitw", "--in", kFixtures + "/aitw_small.jsonl", "--out",
                     dir / "eps.jsonl"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "kept=3 rejected=1\n"
            "rejected nav-3 (line 4, frame 0): go_back on a frame without the bottom navigation bar\n");
  std::istringstream in(slurp(dir / "eps.jsonl"));
  const auto lines = io::read_jsonl(in);
  ASSERT_EQ(lines.size(), 3u);
  for (const auto& jl : lines) {
    EXPECT_TRUE(validate_episode(io::episode_from_json(jl.value)).empty());
  }
  const Episode search = io::episode_from_json(lines[1].value);
  EXPECT_EQ(search.steps[0].actions[0].kind(), ActionKind::swipe);
  EXPECT_EQ(search.steps[1].actions[0], make_input("coffee"));
  EXPECT_EQ(run({"validate", dir / "eps.jsonl"}).code, 0);
}

TEST(CliConvert, EmptyInputAndBadConfig) {
  TempDir dir;
  write(dir / "empty.jsonl", "");
  CliRun r = run({"convert", "aitw", "--in", dir / "empty.jsonl", "--out", dir / "o.jsonl"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "kept=0 rejected=0\n");
  EXPECT_EQ(slurp(dir / "o.jsonl"), "");
  r = run({"convert", "aitw", "--in", dir / "empty.jsonl", "--out", dir / "o.jsonl",
           "--navbar-back", "2,0.5"});
  EXPECT_EQ(r.code, 1);
  write(dir / "bad.jsonl", "{\"episode_id\":\"x\"}\n");
  r = run({"convert", "aitw", "--in", dir / "bad.jsonl", "--out", dir / "o.jsonl"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
}

TEST(CliGen, DeterministicAndListsEveryCapture) {
  TempDir dir;
  fs::create_directories(dir / "caps");
  fuzz::Gen g(81);
  {
    std::ofstream f(dir / "caps/a.jsonl");
    // 1920x2160 splits into two full crops.
    PageCapture c = fuzz::synthetic_capture(g, "tall", 1920, 2160);
    f << io::dump_line(io::capture_to_json(c)) << '\n';
    PageCapture tiny;
    tiny.url = "https://example.test/tiny";
    tiny.viewport = {300, 200};
    tiny.screenshot = "shots/tiny.png";
    f << io::dump_line(io::capture_to_json(tiny)) << '\n';
  }
  const std::vector<std::string> args = {"gen",  "guienv", "--captures", dir / "caps",
                                         "--out", dir / "out1", "--seed", "5"};
  CliRun r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const json manifest = read_json(dir / "out1/manifest.json");
  ASSERT_EQ(manifest.at("captures").size(), 2u);
  EXPECT_EQ(manifest.at("captures")[0].at("crops"), 2);
  const auto kept = manifest.at("captures")[0].at("kept_crops").get<int>();
  EXPECT_EQ(manifest.at("captures")[0].at("samples"), kept * 10);
  EXPECT_EQ(manifest.at("captures")[1].at("samples"), 0);
  EXPECT_EQ(manifest.at("captures")[1].at("line"), 2);
  EXPECT_EQ(manifest.at("seed"), 5);

  auto args2 = args;
  args2[5] = dir / "out2";
  ASSERT_EQ(run(args2).code, 0);
  for (const char* f : {"global.jsonl", "crops.jsonl", "qa.jsonl", "manifest.json"}) {
    EXPECT_EQ(slurp(dir / ("out1/" + std::string(f))), slurp(dir / ("out2/" + std::string(f))))
        << f;
  }
  auto args3 = args;
  args3[7] = "6";
  args3[5] = dir / "out3";
  ASSERT_EQ(run(args3).code, 0);
  if (kept > 0) EXPECT_NE(slurp(dir / "out1/qa.jsonl"), slurp(dir / "out3/qa.jsonl"));

  EXPECT_EQ(run({"gen", "guienv", "--captures", dir / "caps", "--out", dir / "o", "--samples",
                 "11"})
                .code,
            1);
  EXPECT_EQ(run({"gen", "guienv", "--captures", dir / "caps", "--out", dir / "o", "--crop",
                 "big"})
                .code,
            1);
}

TEST(CliAnnotate, PlanRequestParse) {
  TempDir dir;
  const std::string caps = kFixtures + "/captures/shop.jsonl";
  CliRun r = run({"annotate", "plan", "--captures", caps, "--out", dir / "plans.jsonl"});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"annotate", "request", "--captures", caps, "--plans", dir / "plans.jsonl",
           "--template", kFixtures + "/template.txt", "--out", dir / "req.jsonl"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json req = json::parse(slurp(dir / "req.jsonl"));
  EXPECT_NE(req.dump().find("(1280x720) has 2 numbered"), std::string::npos) << req.dump();

  fs::create_directories(dir / "resp");
  r = run({"annotate", "parse", "--captures", caps, "--plans", dir / "plans.jsonl",
           "--responses", dir / "resp", "--out", dir / "res.jsonl"});
  EXPECT_EQ(r.out, "valid=0 invalid=0 missing=1\n");
  write(dir / "resp/shop.txt", "instruction: open the cart\naction: click, element: 1\n");
  r = run({"annotate", "parse", "--captures", caps, "--plans", dir / "plans.jsonl",
           "--responses", dir / "resp", "--out", dir / "res.jsonl", "--episodes",
           dir / "eps.jsonl"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "valid=1 invalid=0 missing=0\n");
  const Episode ep = io::episode_from_json(json::parse(slurp(dir / "eps.jsonl")));
  EXPECT_EQ(ep.steps[0].actions[0],
            make_click(Box{1100, 20, 1200, 60, PositionSpace::absolute_px}, 2));
  EXPECT_EQ(run({"validate", dir / "eps.jsonl"}).code, 0);

  write(dir / "t.txt", "no placeholders");
  r = run({"annotate", "request", "--captures", caps, "--plans", dir / "plans.jsonl",
           "--template", dir / "t.txt", "--out", dir / "req.jsonl"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("placeholder"), std::string::npos);
}

TEST(CliValidate, Diagnostics) {
  CliRun r = run({"validate", kFixtures + "/episodes_bad_box.jsonl"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind(kFixtures + "/episodes_bad_box.jsonl:2: ", 0), 0u) << r.out;
  EXPECT_EQ(r.out.find(":1:"), std::string::npos);
  EXPECT_NE(r.err.find("2 records, 1 problems"), std::string::npos);

  r = run({"validate", kFixtures + "/captures/shop.jsonl"});
  EXPECT_EQ(r.code, 0) << r.out;

  TempDir dir;
  write(dir / "odd.jsonl", "{\"hello\": 1}\n");
  r = run({"validate", dir / "odd.jsonl"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("unknown file kind"), std::string::npos);
  r = run({"validate", dir / "missing.jsonl"});
  EXPECT_EQ(r.code, 1);
}
