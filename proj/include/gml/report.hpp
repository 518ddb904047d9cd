#pragma once

#include <string>

#include "gml/analysis.hpp"
#include "gml/model.hpp"
#include "gml/render.hpp"

// Human-readable and JSON record forms of the analysis results. JSON output
// is two-space indented with keys in a fixed order.
namespace gml::report {

std::string impact_text(const ImpactReport& report);
std::string impact_json(const ImpactReport& report);

std::string architecture_text(const ArchitectureClass& result);
std::string architecture_json(const ArchitectureClass& result);

/// Added/removed elements grouped by level, then relations.
std::string diff_text(const ModelDiff& changes, const Model& before, const Model& after);
std::string diff_json(const ModelDiff& changes, const Model& before, const Model& after);

std::string layout_json(const render::LayoutPlan& plan);

}  // namespace gml::report
