#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gml/model.hpp"

namespace gml {

// ---------------------------------------------------------------------------
// Change impact

struct ImpactReport {
  std::string seed;
  /// Ordered by (hops, element decl_index); the seed comes first.
  std::vector<std::string> affected;
  /// Parallel to `affected`.
  std::vector<std::size_t> hops;
  /// Relations that first reached each non-seed element, in discovery order.
  std::vector<const Relation*> trace;

  bool contains(std::string_view id) const;
};

/// Breadth-first closure from `seed`. Assignments are followed both ways,
/// communications and product flows only along their declared direction
/// (communications both ways when bidirectional). Throws LookupError.
ImpactReport impact(const Model& model, std::string_view seed);

// ---------------------------------------------------------------------------
// AI architecture

enum class Architecture : std::uint8_t { Cloud, Edge, OnPremises, Hybrid, None };

std::string_view to_string(Architecture architecture);

/// One host (or the lack of one) of a train/inference function.
struct HostingEvidence {
  std::string function;
  std::optional<std::string> host;       // nullopt: unassigned
  std::optional<ElementKind> host_kind;
  LevelResult level;
};

struct ArchitectureClass {
  Architecture architecture = Architecture::None;
  std::vector<HostingEvidence> evidence;
};

/// Classifies where the train and inference functions run. All cloud hosts
/// give cloud, controllers/edge devices give edge, local computers give
/// on-premises, any mixture (including unassigned next to assigned) gives
/// hybrid, and no train/inference function gives none.
ArchitectureClass classify_architecture(const Model& model);

/// The classification rule on its own, over the hosts' kinds (nullopt for
/// an unassigned function).
Architecture classify_hosts(const std::vector<std::optional<ElementKind>>& hosts);

// ---------------------------------------------------------------------------
// Model diff

struct ElementChange {
  std::string id;
  std::optional<std::string> old_label;
  std::optional<std::string> new_label;
  Attributes old_attributes;
  Attributes new_attributes;
};

/// Index 0..3 are levels 1..4, index 4 is "undetermined".
using LevelCounts = std::array<std::size_t, 5>;

struct ModelDiff {
  std::vector<Element> added_elements;
  std::vector<Element> removed_elements;
  /// Same id and kind, different label or attributes.
  std::vector<ElementChange> relabeled;
  std::vector<Relation> added_relations;
  std::vector<Relation> removed_relations;
  /// Added elements per level of the new model, removed per level of the old.
  LevelCounts added_per_level{};
  LevelCounts removed_per_level{};

  bool empty() const {
    return added_elements.empty() && removed_elements.empty() && relabeled.empty() &&
           added_relations.empty() && removed_relations.empty();
  }
};

std::size_t level_slot(LevelResult level);

/// Elements are keyed by id, relations by relation_key. An element whose
/// kind changed is reported as removed plus added.
ModelDiff diff(const Model& before, const Model& after);

/// Applies a diff; the result carries `after`'s name when given.
BuildResult apply_diff(const Model& before, const ModelDiff& changes,
                       std::optional<std::string> name = std::nullopt);

}  // namespace gml
