#include "gml/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <queue>
#include <sstream>

namespace gml::render {

Shape shape_for(ElementKind kind) {
  switch (category(kind)) {
    case Category::Product: return Shape::Circle;
    case Category::Resource: return Shape::RoundedRectangle;
    case Category::Function: return Shape::Rectangle;
  }
  return Shape::Rectangle;
}

Stroke stroke_for(RelationKind kind) {
  switch (kind) {
    case RelationKind::Communication: return Stroke::Solid;
    case RelationKind::Assignment: return Stroke::Dashed;
    case RelationKind::ProductFlow: return Stroke::Dotted;
  }
  return Stroke::Solid;
}

Arrowheads arrowheads_for(const Relation& relation) {
  switch (relation.kind) {
    case RelationKind::Communication:
      return relation.bidirectional ? Arrowheads::Two : Arrowheads::One;
    case RelationKind::Assignment: return Arrowheads::None;
    case RelationKind::ProductFlow: return Arrowheads::One;
  }
  return Arrowheads::None;
}

namespace {

long slot_x(std::size_t slot) {
  return kLaneLabelWidth + static_cast<long>(slot) * kColumnPitch + kColumnPitch / 2;
}

long band_top(Level level) { return (4 - to_int(level)) * kBandHeight; }
long band_center(Level level) { return band_top(level) + kBandHeight / 2; }

Placement make_placement(const Element& e, LevelResult level) {
  Placement p;
  p.id = e.id;
  p.shape = shape_for(e.kind);
  p.level = level;
  switch (p.shape) {
    case Shape::Circle:
      p.width = p.height = 2 * kProductRadius;
      break;
    case Shape::RoundedRectangle:
      p.width = kResourceWidth;
      p.height = kResourceHeight;
      break;
    case Shape::Rectangle:
      p.width = kFunctionWidth;
      p.height = kFunctionHeight;
      break;
  }
  return p;
}

// Products and transforms in product-flow order; ties and cycles resolved
// by declaration order.
std::vector<std::size_t> process_order(const Model& model, const std::vector<std::size_t>& nodes) {
  std::map<std::size_t, std::size_t> indegree;
  for (std::size_t n : nodes) indegree[n] = 0;
  std::map<std::size_t, std::vector<std::size_t>> successors;
  for (const Relation& r : model.relations()) {
    if (r.kind != RelationKind::ProductFlow) continue;
    std::size_t from = model.at(r.from).decl_index;
    std::size_t to = model.at(r.to).decl_index;
    successors[from].push_back(to);
    indegree[to]++;
  }

  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (const auto& [n, d] : indegree) {
    if (d == 0) ready.push(n);
  }
  std::vector<std::size_t> order;
  std::map<std::size_t, bool> placed;
  while (order.size() < nodes.size()) {
    if (ready.empty()) {
      for (std::size_t n : nodes) {
        if (!placed[n]) {
          ready.push(n);
          indegree[n] = 0;
          break;
        }
      }
    }
    std::size_t n = ready.top();
    ready.pop();
    if (placed[n]) continue;
    placed[n] = true;
    order.push_back(n);
    for (std::size_t s : successors[n]) {
      if (!placed[s] && indegree[s] > 0 && --indegree[s] == 0) ready.push(s);
    }
  }
  return order;
}

Point anchor(const Placement& p, const Point& toward) {
  long dx = toward.x - p.center.x;
  long dy = toward.y - p.center.y;
  if (std::labs(dx) >= std::labs(dy)) {
    long side = dx >= 0 ? p.width / 2 : -p.width / 2;
    return {p.center.x + side, p.center.y};
  }
  long side = dy >= 0 ? p.height / 2 : -p.height / 2;
  return {p.center.x, p.center.y + side};
}

}  // namespace

LayoutPlan layout(const Model& model) {
  LayoutPlan plan;
  const auto& elements = model.elements();

  std::vector<LevelResult> levels;
  levels.reserve(elements.size());
  for (const Element& e : elements) {
    levels.push_back(derive_level(e, model));
    plan.elements.push_back(make_placement(e, levels.back()));
  }

  // Host resource of each stacked function.
  std::map<std::size_t, std::vector<std::size_t>> stacks;
  std::vector<std::size_t> gutter;
  std::vector<std::size_t> process_nodes;
  for (const Element& e : elements) {
    const std::size_t i = e.decl_index;
    if (!levels[i]) {
      gutter.push_back(i);
    } else if (is_product(e.kind) || e.kind == ElementKind::Transform) {
      process_nodes.push_back(i);
    } else if (is_function(e.kind)) {
      const auto& host = model.at(model.relations()[model.assignments_of(e.id).front()].resource());
      stacks[host.decl_index].push_back(i);
    }
  }

  std::size_t columns = 0;
  {
    std::size_t slot = 0;
    for (std::size_t i : process_order(model, process_nodes)) {
      plan.elements[i].center = {slot_x(slot++), band_center(Level::TechnicalProcess)};
    }
    columns = std::max(columns, slot);
  }
  for (Level level : {Level::FieldDevice, Level::ControlAndMonitoring, Level::ComputerAndCloud}) {
    std::size_t slot = 0;
    const long cy = band_center(level);
    for (const Element& e : elements) {
      if (!is_resource(e.kind) || levels[e.decl_index] != level) continue;
      plan.elements[e.decl_index].center = {slot_x(slot++), cy};
      const auto& stack = stacks[e.decl_index];
      for (std::size_t j = 0; j < stack.size(); ++j) {
        std::size_t column = j / kMaxStack;
        std::size_t in_column = std::min(kMaxStack, stack.size() - column * kMaxStack);
        long row = static_cast<long>(j % kMaxStack);
        long offset = (2 * row - static_cast<long>(in_column - 1)) * (kStackPitch / 2);
        plan.elements[stack[j]].center = {slot_x(slot + column), cy + offset};
      }
      slot += (stack.size() + kMaxStack - 1) / kMaxStack;
    }
    columns = std::max(columns, slot);
  }

  plan.height = 4 * kBandHeight;
  if (!gutter.empty()) {
    const std::size_t per_column = static_cast<std::size_t>(plan.height / kStackPitch);
    for (std::size_t j = 0; j < gutter.size(); ++j) {
      auto& p = plan.elements[gutter[j]];
      p.gutter = true;
      p.center = {slot_x(columns + j / per_column),
                  kStackPitch / 2 + static_cast<long>(j % per_column) * kStackPitch};
    }
    columns += (gutter.size() + per_column - 1) / per_column;
  }
  plan.width = kLaneLabelWidth + static_cast<long>(std::max<std::size_t>(columns, 1)) * kColumnPitch;

  for (Level level : kAllLevels) {
    plan.bands[to_int(level) - 1] = Band{level, band_top(level), band_top(level) + kBandHeight};
  }

  for (const Relation& r : model.relations()) {
    const Placement& from = plan.elements[model.at(r.from).decl_index];
    const Placement& to = plan.elements[model.at(r.to).decl_index];
    plan.routes.push_back(Route{r.decl_index,
                                {anchor(from, to.center), anchor(to, from.center)},
                                stroke_for(r.kind),
                                arrowheads_for(r)});
  }
  return plan;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

namespace {

std::string_view class_of(Stroke s) {
  switch (s) {
    case Stroke::Solid: return "communication";
    case Stroke::Dashed: return "assignment";
    case Stroke::Dotted: return "product-flow";
  }
  return "";
}

long display_size(long units, double factor) {
  return std::max(1L, std::lround(static_cast<double>(units) * factor));
}

}  // namespace

std::string render_svg(const LayoutPlan& plan, const Model& model, const SvgOptions& options) {
  double factor = options.width ? *options.width / static_cast<double>(plan.width) : options.scale;
  if (!(factor > 0.0) || !std::isfinite(factor)) factor = 1.0;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << display_size(plan.width, factor) << "\" height=\"" << display_size(plan.height, factor)
      << "\" viewBox=\"0 0 " << plan.width << ' ' << plan.height << "\""
      << " font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<title>" << xml_escape(model.name()) << "</title>\n";
  svg << "<defs>\n"
      << "<marker id=\"arrow-end\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"8\""
         " markerHeight=\"8\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#333333\"/>"
         "</marker>\n"
      << "<marker id=\"arrow-start\" viewBox=\"0 0 10 10\" refX=\"0\" refY=\"5\" markerWidth=\"8\""
         " markerHeight=\"8\" orient=\"auto\"><path d=\"M10,0 L0,5 L10,10 z\" fill=\"#333333\"/>"
         "</marker>\n"
      << "</defs>\n";

  svg << "<g class=\"bands\">\n";
  for (auto it = plan.bands.rbegin(); it != plan.bands.rend(); ++it) {
    const Band& b = *it;
    const char* fill = to_int(b.level) % 2 == 0 ? "#f2f2f2" : "#fafafa";
    svg << "<path class=\"band level-" << to_int(b.level) << "\" d=\"M0," << b.top << " H"
        << plan.width << " V" << b.bottom << " H0 Z\" fill=\"" << fill
        << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    svg << "<text class=\"band-label\" x=\"10\" y=\"" << b.top + 20 << "\" font-weight=\"bold\">Level "
        << to_int(b.level) << " - " << level_name(b.level) << "</text>\n";
  }
  svg << "</g>\n";

  svg << "<g class=\"relations\" fill=\"none\" stroke=\"#333333\" stroke-width=\"2\">\n";
  for (const Route& route : plan.routes) {
    svg << "<polyline id=\"rel-" << route.relation << "\" class=\"" << class_of(route.stroke)
        << "\" points=\"";
    for (std::size_t i = 0; i < route.points.size(); ++i) {
      svg << (i ? " " : "") << route.points[i].x << ',' << route.points[i].y;
    }
    svg << '"';
    if (route.stroke == Stroke::Dashed) svg << " stroke-dasharray=\"6 4\"";
    if (route.stroke == Stroke::Dotted) svg << " stroke-dasharray=\"2 4\"";
    if (route.arrowheads == Arrowheads::Two) svg << " marker-start=\"url(#arrow-start)\"";
    if (route.arrowheads != Arrowheads::None) svg << " marker-end=\"url(#arrow-end)\"";
    svg << "/>\n";
  }
  svg << "</g>\n";

  svg << "<g class=\"elements\" stroke=\"#222222\" stroke-width=\"1.5\">\n";
  for (std::size_t i = 0; i < plan.elements.size(); ++i) {
    const Placement& p = plan.elements[i];
    const Element& e = model.elements()[i];
    const long left = p.center.x - p.width / 2;
    const long top = p.center.y - p.height / 2;
    switch (p.shape) {
      case Shape::Circle:
        svg << "<circle id=\"" << xml_escape(p.id) << "\" class=\"product\" cx=\"" << p.center.x
            << "\" cy=\"" << p.center.y << "\" r=\"" << kProductRadius << "\" fill=\"#fff2cc\"/>\n";
        break;
      case Shape::RoundedRectangle:
        svg << "<rect id=\"" << xml_escape(p.id) << "\" class=\"resource " << keyword(e.kind)
            << "\" x=\"" << left << "\" y=\"" << top << "\" width=\"" << p.width << "\" height=\""
            << p.height << "\" rx=\"" << kResourceCorner << "\" ry=\"" << kResourceCorner
            << "\" fill=\"#dae8fc\"/>\n";
        break;
      case Shape::Rectangle:
        svg << "<rect id=\"" << xml_escape(p.id) << "\" class=\"function " << keyword(e.kind)
            << "\" x=\"" << left << "\" y=\"" << top << "\" width=\"" << p.width << "\" height=\""
            << p.height << "\" fill=\"#d5e8d4\"/>\n";
        break;
    }
    svg << "<text x=\"" << p.center.x << "\" y=\"" << p.center.y
        << "\" text-anchor=\"middle\" dominant-baseline=\"middle\" stroke=\"none\">"
        << xml_escape(e.label.value_or(e.id)) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace gml::render
