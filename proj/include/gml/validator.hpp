#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "gml/diagnostic.hpp"
#include "gml/model.hpp"

namespace gml {

/// Function kind -> resource kinds it may plausibly be assigned to.
using CompatibilityMatrix = std::map<ElementKind, std::set<ElementKind>>;

/// automate -> controller, edge; record -> sensor, controller, edge, local,
/// cloud; store/process/train/inference -> controller, edge, local, cloud;
/// transform -> actuator.
const CompatibilityMatrix& default_compatibility();

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Codes produced by validate(); only these can be disabled.
inline constexpr Code kRuleCodes[] = {Code::E004, Code::W001, Code::W002, Code::W003,
                                      Code::W004, Code::W005, Code::W006, Code::I001};

class ValidationConfig {
 public:
  /// Promotes W001 and W003 to error severity.
  bool strict = false;

  /// Throws ConfigError for codes validate() never emits.
  void disable(Code code);
  void disable(std::string_view code);
  bool enabled(Code code) const { return !disabled_.contains(code); }
  const std::set<Code>& disabled() const { return disabled_; }

  /// Replaces the allowed hosts for one function kind.
  void allow(ElementKind function, std::set<ElementKind> resources);
  const CompatibilityMatrix& compatibility() const { return matrix_; }

 private:
  std::set<Code> disabled_;
  CompatibilityMatrix matrix_ = default_compatibility();
};

/// Runs every enabled rule. The report is ordered by (code, subject
/// declaration index) and identical for identical inputs.
std::vector<Diagnostic> validate(const Model& model, const ValidationConfig& config = {});

}  // namespace gml
