#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gml/model.hpp"

namespace gml::render {

// Geometry constants, in abstract units.
inline constexpr long kBandHeight = 220;
inline constexpr long kColumnPitch = 240;
inline constexpr long kStackPitch = 70;
inline constexpr long kLaneLabelWidth = 200;
inline constexpr long kProductRadius = 28;
inline constexpr long kResourceWidth = 160;
inline constexpr long kResourceHeight = 60;
inline constexpr long kResourceCorner = 12;
inline constexpr long kFunctionWidth = 140;
inline constexpr long kFunctionHeight = 44;
/// Functions per stacked column before wrapping into the next grid column.
inline constexpr std::size_t kMaxStack = 3;

enum class Shape : std::uint8_t { Circle, Rectangle, RoundedRectangle };
enum class Stroke : std::uint8_t { Solid, Dashed, Dotted };
enum class Arrowheads : std::uint8_t { None, One, Two };

Shape shape_for(ElementKind kind);
Stroke stroke_for(RelationKind kind);
Arrowheads arrowheads_for(const Relation& relation);

struct Point {
  long x = 0;
  long y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Placement {
  std::string id;
  Shape shape = Shape::Rectangle;
  Point center;
  long width = 0;
  long height = 0;
  LevelResult level;
  /// Undetermined-level elements live in a side column outside the bands.
  bool gutter = false;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct Route {
  std::size_t relation = 0;  // decl_index
  std::vector<Point> points;
  Stroke stroke = Stroke::Solid;
  Arrowheads arrowheads = Arrowheads::None;

  friend bool operator==(const Route&, const Route&) = default;
};

struct Band {
  Level level = Level::TechnicalProcess;
  long top = 0;
  long bottom = 0;

  friend bool operator==(const Band&, const Band&) = default;
};

struct LayoutPlan {
  /// Parallel to model.elements().
  std::vector<Placement> elements;
  /// Parallel to model.relations().
  std::vector<Route> routes;
  /// Index 0 is level 1 (bottom band).
  std::array<Band, 4> bands{};
  long width = 0;
  long height = 0;

  const Band& band(Level level) const { return bands[to_int(level) - 1]; }

  friend bool operator==(const LayoutPlan&, const LayoutPlan&) = default;
};

/// Places every element on the four level bands (level 4 at the top).
/// Resources go left to right by declaration order, each followed by the
/// stack of functions assigned to it; level 1 follows the product flow
/// order. Labels never influence geometry.
LayoutPlan layout(const Model& model);

struct SvgOptions {
  /// Display width in user units; overrides `scale`. The viewBox is fixed.
  std::optional<double> width;
  double scale = 1.0;
};

/// SVG 1.1 document. Same model and options give identical bytes.
std::string render_svg(const LayoutPlan& plan, const Model& model, const SvgOptions& options = {});

std::string xml_escape(std::string_view text);

}  // namespace gml::render
