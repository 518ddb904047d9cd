#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "gml/cli.hpp"
#include "support/fixtures.hpp"

namespace gml::cli {
namespace {

namespace fs = std::filesystem;
using testing::fixture_path;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = run(args, {out, err});
  o.out = out.str();
  o.err = err.str();
  return o;
}

bool parses_as_json(const std::string& text) {
  return nlohmann::json::accept(text);
}

std::vector<fs::path> rule_fixtures() {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(fixture_path("rules"))) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Cli, ValidateStampingIsSilent) {
  auto o = invoke({"validate", fixture_path("stamping.gml")});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_EQ(o.out, "");
}

TEST(Cli, ClassifyStamping) {
  auto o = invoke({"classify", fixture_path("stamping.gml")});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_EQ(o.out, "cloud\n");
}

TEST(Cli, JsonInputIsImported) {
  auto o = invoke({"classify", fixture_path("stamping.json")});
  EXPECT_EQ(o.out, "cloud\n");
}

TEST(Cli, FmtIsIdempotentOnStamping) {
  auto once = invoke({"fmt", fixture_path("stamping.gml")});
  ASSERT_EQ(once.code, kExitOk);
  auto path = fs::temp_directory_path() / "gml_cli_fmt.gml";
  {
    std::ofstream f(path);
    f << once.out;
  }
  auto twice = invoke({"fmt", path.string()});
  EXPECT_EQ(twice.out, once.out);
  fs::remove(path);
}

TEST(Cli, ImportWritesDsl) {
  auto o = invoke({"import", fixture_path("stamping.json")});
  ASSERT_EQ(o.code, kExitOk);
  auto parsed = dsl::parse(o.out);
  ASSERT_TRUE(parsed.ok());
  EXPECT_EQ(*parsed.model, testing::stamping_decls().build());
}

TEST(Cli, RenderToFile) {
  auto path = fs::temp_directory_path() / "gml_cli_render.svg";
  auto o = invoke({"render", fixture_path("stamping.gml"), "-o", path.string(), "--width", "800"});
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_TRUE(fs::file_size(path) > 0);
  fs::remove(path);
}

TEST(Cli, JsonOutputForEverySubcommand) {
  const std::string s = fixture_path("stamping.gml");
  const std::string c = fixture_path("current_state.gml");
  std::vector<std::vector<std::string>> commands{
      {"validate", s},          {"render", s},   {"export", s},
      {"import", fixture_path("stamping.json")}, {"impact", s, "--element", "PosSensor1"},
      {"classify", s},          {"diff", c, s},  {"fmt", s},
      {"validate", fixture_path("rules/E004.trigger.gml")},
      {"validate", fixture_path("rules/P001.trigger.gml")},
  };
  for (auto args : commands) {
    args.push_back("--format");
    args.push_back("json");
    auto o = invoke(args);
    EXPECT_TRUE(parses_as_json(o.out)) << args[0] << ":\n" << o.out;
    EXPECT_NE(o.code, kExitUsage) << args[0];
  }
}

TEST(Cli, DiagnosticsJsonCarriesCodes) {
  auto o = invoke({"validate", fixture_path("rules/E004.trigger.gml"), "--format", "json"});
  EXPECT_EQ(o.code, kExitDiagnostics);
  auto doc = nlohmann::json::parse(o.out);
  ASSERT_TRUE(doc.is_array());
  ASSERT_FALSE(doc.empty());
  EXPECT_EQ(doc[0]["code"], "E004");
  EXPECT_EQ(doc[0]["severity"], "error");
  EXPECT_TRUE(doc[0]["span"].is_object());
}

// Exit code 1 exactly when a report contains an error-severity diagnostic.
TEST(Cli, ExitCodeContractOnRuleCorpus) {
  for (const auto& path : rule_fixtures()) {
    for (bool strict : {false, true}) {
      std::vector<std::string> args{"validate", path.string(), "--format", "json"};
      if (strict) args.push_back("--strict");
      auto o = invoke(args);
      ASSERT_TRUE(parses_as_json(o.out)) << path;
      auto doc = nlohmann::json::parse(o.out);
      bool any_error = false;
      for (const auto& d : doc) any_error |= d["severity"] == "error";
      EXPECT_EQ(o.code, any_error ? kExitDiagnostics : kExitOk) << path << " strict=" << strict;
    }
  }
}

TEST(Cli, StrictPromotesW001) {
  auto path = fixture_path("rules/W001.trigger.gml");
  EXPECT_EQ(invoke({"validate", path}).code, kExitOk);
  EXPECT_EQ(invoke({"validate", path, "--strict"}).code, kExitDiagnostics);
  EXPECT_EQ(invoke({"validate", path, "--strict", "--disable", "W001,W002"}).out, "");
}

TEST(Cli, UsageErrors) {
  const std::string s = fixture_path("stamping.gml");
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"validate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"validate", "/nonexistent/model.gml"}).code, kExitUsage);
  EXPECT_EQ(invoke({"validate", s, "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(invoke({"validate", s, "--disable", "E001"}).code, kExitUsage);
  EXPECT_EQ(invoke({"validate", s, "--disable", "W999"}).code, kExitUsage);
  EXPECT_EQ(invoke({"impact", s}).code, kExitUsage);
  EXPECT_EQ(invoke({"impact", s, "--element", "Ghost"}).code, kExitUsage);
  EXPECT_EQ(invoke({"render", s, "--width", "10", "--scale", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"render", s, "--scale", "-1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"diff", s}).code, kExitUsage);
  EXPECT_EQ(invoke({"export", s, "-o", "/nonexistent/dir/out.json"}).code, kExitUsage);
}

TEST(Cli, HelpExitsZero) {
  auto o = invoke({"--help"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("validate"), std::string::npos);
}

TEST(Cli, ParseErrorsExitOneWithPositions) {
  auto o = invoke({"validate", fixture_path("rules/P001.trigger.gml")});
  EXPECT_EQ(o.code, kExitDiagnostics);
  EXPECT_NE(o.out.find("P001 error"), std::string::npos);
  EXPECT_NE(o.out.find("(2:"), std::string::npos);
}

}  // namespace
}  // namespace gml::cli
