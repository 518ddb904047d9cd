// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gml/analysis.hpp"
#include "gml/dsl.hpp"
#include "gml/interchange.hpp"
#include "gml/render.hpp"
#include "gml/validator.hpp"
#include "support/fixtures.hpp"
#include "support/fuzz.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/svg_scan.hpp"

namespace {

namespace fs = std::filesystem;
using namespace gml;

// Empty on success, otherwise the first problem found.
using Check = std::function<std::string()>;

struct Criterion {
  const char* name;
  Check check;
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ", ") + p;
  return out;
}

std::vector<fs::path> fixture_files(const std::string& extension) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::recursive_directory_iterator(GML_FIXTURE_DIR)) {
    if (entry.path().extension() == extension) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string read(const fs::path& path) {
  return testing::read_fixture(fs::relative(path, GML_FIXTURE_DIR).string());
}

std::vector<Model> buildable_fixtures() {
  std::vector<Model> out;
  for (const auto& path : fixture_files(".gml")) {
    auto r = dsl::parse(read(path));
    if (r.ok()) out.push_back(*std::move(r.model));
  }
  return out;
}

std::string golden_fixture() {
  const auto start = std::chrono::steady_clock::now();
  auto parsed = dsl::parse(testing::read_fixture("stamping.gml"));
  if (!parsed.ok()) return "parse: " + format_text(parsed.diagnostics);
  auto report = validate(*parsed.model);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  if (!report.empty()) return "validate: " + format_text(report);
  if (elapsed >= std::chrono::seconds(1)) return "took longer than 1 s";
  return {};
}

std::string architecture_classification() {
  auto cloud = testing::stamping_decls();
  auto edge = cloud;
  edge.unassign("TrainModel");
  edge.unassign("InferWear");
  edge.assign("TrainModel", "EdgeDevice");
  edge.assign("InferWear", "EdgeDevice");
  auto hybrid = cloud;
  hybrid.unassign("InferWear");
  hybrid.assign("InferWear", "EdgeDevice");

  struct Case {
    const char* what;
    testing::Decls decls;
    Architecture expected;
  };
  for (const auto& c : {Case{"stamping", cloud, Architecture::Cloud},
                        Case{"edge variant", edge, Architecture::Edge},
                        Case{"split variant", hybrid, Architecture::Hybrid}}) {
    auto got = classify_architecture(c.decls.build()).architecture;
    if (got != c.expected) {
      return std::string(c.what) + " classified as " + std::string(to_string(got));
    }
  }
  auto from_file = classify_architecture(testing::parse_fixture("stamping.gml")).architecture;
  if (from_file != Architecture::Cloud) return "stamping.gml classified as " + std::string(to_string(from_file));
  return {};
}

std::string impact_matches(const Model& m, const std::string& seed) {
  auto report = impact(m, seed);
  auto oracle = testing::brute_force_impact(m, seed);
  std::set<std::string> got(report.affected.begin(), report.affected.end());
  if (got != oracle.reachable || got.size() != report.affected.size()) return "affected set differs for " + seed;
  for (std::size_t i = 0; i < report.affected.size(); ++i) {
    if (report.hops[i] != oracle.hops.at(report.affected[i])) return "hop count differs for " + seed;
  }
  return {};
}

std::string impact_analysis() {
  Model m = testing::parse_fixture("stamping.gml");
  if (auto p = impact_matches(m, "PosSensor1"); !p.empty()) return p;
  auto report = impact(m, "PosSensor1");
  if (!report.contains("RecPos1") || !report.contains("InferWear")) return "RecPos1 or InferWear not affected";

  testing::ModelGenerator gen(20240601);
  std::size_t models = 0;
  for (; models < 1000; ++models) {
    Model random = gen.model(30);
    for (const auto& e : random.elements()) {
      if (auto p = impact_matches(random, e.id); !p.empty()) {
        return "generated model " + std::to_string(models) + ": " + p;
      }
    }
  }
  return {};
}

std::set<Code> codes_for(const fs::path& path) {
  std::string text = read(path);
  std::optional<Model> model;
  std::vector<Diagnostic> diagnostics;
  if (path.extension() == ".json") {
    auto r = interchange::import_json(text);
    model = std::move(r.model);
    diagnostics = std::move(r.diagnostics);
  } else {
    auto r = dsl::parse(text);
    model = std::move(r.model);
    diagnostics = std::move(r.diagnostics);
  }
  if (model) {
    auto report = validate(*model);
    diagnostics.insert(diagnostics.end(), report.begin(), report.end());
  }
  std::set<Code> out;
  for (const auto& d : diagnostics) out.insert(d.code);
  return out;
}

std::string rule_catalog() {
  const fs::path dir = fs::path(GML_FIXTURE_DIR) / "rules";
  std::vector<std::string> problems;
  for (Code code : kAllCodes) {
    const std::string name(to_string(code));
    const std::string ext = name[0] == 'J' ? ".json" : ".gml";
    const fs::path trigger = dir / (name + ".trigger" + ext);
    const fs::path near = dir / (name + ".near" + ext);
    if (!fs::exists(trigger) || !fs::exists(near)) {
      problems.push_back(name + " missing fixture");
      continue;
    }
    if (!codes_for(trigger).contains(code)) problems.push_back(name + " not triggered");
    if (codes_for(near).contains(code)) problems.push_back(name + " fires on near-miss");
  }
  return join(problems);
}

std::string round_trips() {
  auto check = [](const Model& m) -> std::string {
    std::string text = dsl::format(m);
    auto parsed = dsl::parse(text);
    if (!parsed.ok() || !(*parsed.model == m)) return "parse(format(m)) != m";
    auto imported = interchange::import_json(interchange::export_json(m));
    if (!imported.ok() || !(*imported.model == m)) return "import(export(m)) != m";
    return {};
  };
  for (const auto& m : buildable_fixtures()) {
    if (auto p = check(m); !p.empty()) return "fixture '" + m.name() + "': " + p;
  }
  testing::ModelGenerator gen(1000003);
  for (int i = 0; i < 1000; ++i) {
    if (auto p = check(gen.model()); !p.empty()) return "generated model " + std::to_string(i) + ": " + p;
  }
  auto via_dsl = dsl::parse(testing::read_fixture("stamping.gml"));
  auto via_json = interchange::import_json(testing::read_fixture("stamping.json"));
  if (!via_dsl.ok() || !via_json.ok() || !(*via_dsl.model == *via_json.model)) {
    return "stamping DSL and JSON paths disagree";
  }
  return {};
}

std::string rendering_conservation() {
  for (const auto& m : buildable_fixtures()) {
    const auto plan = render::layout(m);
    const std::string svg = render::render_svg(plan, m);
    if (svg != render::render_svg(render::layout(m), m)) return m.name() + ": renders differ";

    std::size_t products = 0, resources = 0, functions = 0;
    for (const auto& e : m.elements()) {
      if (is_product(e.kind)) ++products;
      else if (is_resource(e.kind)) ++resources;
      else ++functions;
    }
    auto shapes = testing::svg_shape_counts(svg);
    if (shapes.circles != products || shapes.rounded != resources || shapes.plain != functions) {
      return m.name() + ": shape counts differ";
    }

    auto lines = testing::svg_tags(svg, "polyline");
    if (lines.size() != m.relations().size()) return m.name() + ": relation count differs";
    for (std::size_t i = 0; i < lines.size(); ++i) {
      auto& a = lines[i].attrs;
      const std::string dash = a.contains("stroke-dasharray") ? a["stroke-dasharray"] : "solid";
      const char* expected = "solid";
      if (m.relations()[i].kind == RelationKind::Assignment) expected = "6 4";
      if (m.relations()[i].kind == RelationKind::ProductFlow) expected = "2 4";
      if (dash != expected) return m.name() + ": wrong stroke on relation " + std::to_string(i);
    }
  }
  return {};
}

std::string methodology_diff() {
  Model before = testing::parse_fixture("current_state.gml");
  Model after = testing::parse_fixture("stamping.gml");
  auto changes = diff(before, after);

  std::set<std::string> added;
  for (const auto& e : changes.added_elements) added.insert(e.id);
  const std::set<std::string> expected_elements{"EdgeDevice", "Cloud",      "ProcDisplay", "StoreData",
                                                "ProcPre",    "TrainModel", "InferWear",   "ProcPost"};
  if (added != expected_elements) return "added elements: " + join({added.begin(), added.end()});
  if (!changes.removed_elements.empty() || !changes.removed_relations.empty() || !changes.relabeled.empty()) {
    return "unexpected removals or relabels";
  }

  std::size_t comms = 0, assigns = 0;
  for (const auto& r : changes.added_relations) {
    comms += r.kind == RelationKind::Communication;
    assigns += r.kind == RelationKind::Assignment;
  }
  if (comms != 2 || assigns != 6 || changes.added_relations.size() != 8) {
    return "added relations: " + std::to_string(comms) + " communications, " + std::to_string(assigns) +
           " assignments, " + std::to_string(changes.added_relations.size()) + " total";
  }

  auto applied = apply_diff(before, changes, after.name());
  if (!applied.ok()) return "apply failed: " + format_text(applied.errors);
  if (testing::element_set(*applied.model) != testing::element_set(after) ||
      testing::relation_set(*applied.model) != testing::relation_set(after)) {
    return "applied diff does not reproduce the full model";
  }
  return {};
}

std::string robustness() {
  std::vector<std::string> seeds;
  for (const auto& path : fixture_files(".gml")) seeds.push_back(read(path));
  testing::FuzzInput fuzz(0x5EED, seeds);
  std::size_t models = 0;
  for (int i = 0; i < 100000; ++i) {
    const std::string text = fuzz.next();
    auto r = dsl::parse(text);
    if (r.model.has_value() == has_errors(r.diagnostics)) return "case " + std::to_string(i) + ": inconsistent result";
    for (const auto& d : r.diagnostics) {
      if (auto p = testing::span_problem(text, d); !p.empty()) return "case " + std::to_string(i) + ": " + p;
    }
    models += r.model.has_value();
  }
  std::printf("      (fuzz: 100000 inputs, %zu parsed to models)\n", models);
  return {};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"golden fixture parses and validates cleanly in under 1 s", golden_fixture},
      {"architecture classification: cloud, edge, hybrid", architecture_classification},
      {"impact analysis matches brute-force closure (stamping + 1000 generated)", impact_analysis},
      {"rule catalog: every code has a trigger and a near-miss", rule_catalog},
      {"round-trips: parse/format and import/export (fixtures + 1000 generated)", round_trips},
      {"rendering conservation, stroke mapping, byte-identical output", rendering_conservation},
      {"methodology diff: current state to solution concept", methodology_diff},
      {"robustness: 100000 fuzzed parser inputs", robustness},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string problem;
    try {
      problem = criteria[i].check();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    if (problem.empty()) {
      std::printf("PASS  %zu  %s\n", i + 1, criteria[i].name);
    } else {
      std::printf("FAIL  %zu  %s: %s\n", i + 1, criteria[i].name, problem.c_str());
      ++failed;
    }
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
