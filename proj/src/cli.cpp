#include "gml/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gml/analysis.hpp"
#include "gml/dsl.hpp"
#include "gml/interchange.hpp"
#include "gml/render.hpp"
#include "gml/report.hpp"
#include "gml/validator.hpp"

namespace gml::cli {

namespace {

struct UsageError {
  std::string message;
};

struct Options {
  std::vector<std::string> inputs;
  std::string output;
  std::string format = "text";
  bool strict = false;
  std::vector<std::string> disable;
  std::string element;
  std::optional<double> scale;
  std::optional<double> width;
};

struct Loaded {
  std::optional<Model> model;
  std::vector<Diagnostic> diagnostics;
  dsl::SpanTable spans;
};

bool is_json_path(const std::string& path) {
  return std::filesystem::path(path).extension() == ".json";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot read '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw UsageError{"cannot read '" + path + "'"};
  return buf.str();
}

Loaded load(const std::string& path) {
  std::string text = read_file(path);
  Loaded loaded;
  if (is_json_path(path)) {
    auto imported = interchange::import_json(text);
    loaded.model = std::move(imported.model);
    loaded.diagnostics = std::move(imported.diagnostics);
  } else {
    auto parsed = dsl::parse(text);
    loaded.model = std::move(parsed.model);
    loaded.diagnostics = std::move(parsed.diagnostics);
    loaded.spans = std::move(parsed.spans);
  }
  return loaded;
}

class Runner {
 public:
  Runner(const Options& opts, Streams streams) : opts_(opts), s_(streams) {}

  bool json() const { return opts_.format == "json"; }

  void print_diagnostics(const std::vector<Diagnostic>& diagnostics) {
    if (json()) {
      s_.out << format_json(diagnostics) << '\n';
    } else {
      s_.out << format_text(diagnostics, s_.color);
    }
  }

  // Loads a model or prints why it could not be built.
  std::optional<Model> model_from(const std::string& path) {
    Loaded loaded = load(path);
    if (!loaded.model) {
      print_diagnostics(loaded.diagnostics);
      return std::nullopt;
    }
    spans_ = std::move(loaded.spans);
    return std::move(loaded.model);
  }

  void emit(const std::string& content) {
    if (opts_.output.empty()) {
      s_.out << content;
      return;
    }
    std::ofstream file(opts_.output, std::ios::binary);
    if (!file || !(file << content) || !file.flush()) {
      throw UsageError{"cannot write '" + opts_.output + "'"};
    }
    s_.err << "wrote " << opts_.output << '\n';
  }

  int validate() {
    ValidationConfig config;
    config.strict = opts_.strict;
    try {
      for (const auto& code : opts_.disable) config.disable(code);
    } catch (const ConfigError& e) {
      throw UsageError{e.what()};
    }
    auto model = model_from(opts_.inputs.at(0));
    if (!model) return kExitDiagnostics;
    auto diagnostics = gml::validate(*model, config);
    dsl::attach_spans(diagnostics, spans_);
    print_diagnostics(diagnostics);
    return has_errors(diagnostics) ? kExitDiagnostics : kExitOk;
  }

  int render() {
    auto model = model_from(opts_.inputs.at(0));
    if (!model) return kExitDiagnostics;
    auto plan = render::layout(*model);
    if (json()) {
      emit(report::layout_json(plan));
      return kExitOk;
    }
    render::SvgOptions svg;
    svg.width = opts_.width;
    if (opts_.scale) svg.scale = *opts_.scale;
    emit(render::render_svg(plan, *model, svg));
    return kExitOk;
  }

  int export_json() {
    auto model = model_from(opts_.inputs.at(0));
    if (!model) return kExitDiagnostics;
    emit(interchange::export_json(*model));
    return kExitOk;
  }

  int import_json() {
    auto model = model_from(opts_.inputs.at(0));
    if (!model) return kExitDiagnostics;
    emit(json() ? interchange::export_json(*model) : dsl::format(*model));
    return kExitOk;
  }

  int fmt() {
    std::string original = read_file(opts_.inputs.at(0));
    auto model = model_from(opts_.inputs.at(0));
    if (!model) return kExitDiagnostics;
    std::string formatted = dsl::format(*model);
    if (json()) {
      nlohmann::ordered_json j;
      j["formatted"] = formatted;
      j["changed"] = formatted != original;
      emit(j.dump(2) + "\n");
    } else {
      emit(formatted);
    }
    return kExitOk;
  }

  int impact() {
    auto model = model_from(opts_.inputs.at(0));
    if (!model) return kExitDiagnostics;
    if (!model->contains(opts_.element)) {
      throw UsageError{"unknown element '" + opts_.element + "'"};
    }
    auto result = gml::impact(*model, opts_.element);
    s_.out << (json() ? report::impact_json(result) : report::impact_text(result));
    return kExitOk;
  }

  int classify() {
    auto model = model_from(opts_.inputs.at(0));
    if (!model) return kExitDiagnostics;
    auto result = classify_architecture(*model);
    s_.out << (json() ? report::architecture_json(result) : report::architecture_text(result));
    return kExitOk;
  }

  int diff() {
    auto before = model_from(opts_.inputs.at(0));
    if (!before) return kExitDiagnostics;
    auto after = model_from(opts_.inputs.at(1));
    if (!after) return kExitDiagnostics;
    auto changes = gml::diff(*before, *after);
    s_.out << (json() ? report::diff_json(changes, *before, *after)
                      : report::diff_text(changes, *before, *after));
    return kExitOk;
  }

 private:
  const Options& opts_;
  Streams s_;
  dsl::SpanTable spans_;
};

}  // namespace

int run(const std::vector<std::string>& args, Streams streams) {
  CLI::App app{"Compiler toolchain for AI-in-automation system models (.gml)", "gml"};
  app.require_subcommand(1);
  Options opts;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opts.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", opts.output, "Write the result to a file instead of stdout");
  };
  auto add_input = [&](CLI::App* sub, const char* help) {
    sub->add_option("input", opts.inputs, help)->required()->expected(1);
  };

  auto* validate = app.add_subcommand("validate", "Check a model against the language rules");
  add_input(validate, "Model file (.gml or .json)");
  validate->add_flag("--strict", opts.strict, "Treat W001 and W003 as errors");
  validate->add_option("--disable", opts.disable, "Rule codes to disable (comma separated)")
      ->delimiter(',');
  add_format(validate);

  auto* render = app.add_subcommand("render", "Lay out a model and emit SVG");
  add_input(render, "Model file");
  add_output(render);
  auto* scale = render->add_option("--scale", opts.scale, "Display scale factor")
                    ->check(CLI::PositiveNumber);
  render->add_option("--width", opts.width, "Display width")
      ->check(CLI::PositiveNumber)
      ->excludes(scale);
  add_format(render);

  auto* export_cmd = app.add_subcommand("export", "Write the interchange JSON document");
  add_input(export_cmd, "Model file");
  add_output(export_cmd);
  add_format(export_cmd);

  auto* import_cmd = app.add_subcommand("import", "Read an interchange document, write .gml text");
  add_input(import_cmd, "Interchange JSON file");
  add_output(import_cmd);
  add_format(import_cmd);

  auto* impact = app.add_subcommand("impact", "Elements affected by a change to one element");
  add_input(impact, "Model file");
  impact->add_option("--element", opts.element, "Changed element id")->required();
  add_format(impact);

  auto* classify = app.add_subcommand("classify", "Classify the AI software architecture");
  add_input(classify, "Model file");
  add_format(classify);

  auto* diff = app.add_subcommand("diff", "Compare two versions of a model");
  diff->add_option("old", opts.inputs, "Earlier model and later model")->required()->expected(2);
  add_format(diff);

  auto* fmt = app.add_subcommand("fmt", "Print the canonical form of a .gml file");
  add_input(fmt, "Model file");
  add_output(fmt);
  add_format(fmt);

  std::vector<const char*> argv{"gml"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, streams.out, streams.err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, streams.out, streams.err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, streams.out, streams.err);
    return kExitUsage;
  }

  Runner runner(opts, streams);
  try {
    if (validate->parsed()) return runner.validate();
    if (render->parsed()) return runner.render();
    if (export_cmd->parsed()) return runner.export_json();
    if (import_cmd->parsed()) return runner.import_json();
    if (impact->parsed()) return runner.impact();
    if (classify->parsed()) return runner.classify();
    if (diff->parsed()) return runner.diff();
    if (fmt->parsed()) return runner.fmt();
  } catch (const UsageError& e) {
    streams.err << "gml: " << e.message << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace gml::cli
