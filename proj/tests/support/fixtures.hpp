#pragma once

// Hand-built copy of the stamping machine model, written independently of
// the .gml text so the parser can be checked against it.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gml/dsl.hpp"
#include "gml/model.hpp"

namespace gml::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(GML_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Model parse_fixture(const std::string& name) {
  auto result = dsl::parse(read_fixture(name));
  if (!result.ok()) throw std::runtime_error("fixture " + name + " does not parse");
  return *std::move(result.model);
}

struct Decls {
  std::string name;
  std::vector<ElementDecl> elements;
  std::vector<RelationDecl> relations;

  Model build() const {
    auto result = build_model(name, elements, relations);
    if (!result.ok()) throw std::runtime_error("decls do not build");
    return *std::move(result.model);
  }

  void assign(const std::string& function, const std::string& resource) {
    relations.push_back({RelationKind::Assignment, function, resource, false, {}});
  }
  void comm(const std::string& from, const std::string& to, bool both = false) {
    relations.push_back({RelationKind::Communication, from, to, both, {}});
  }
  void flow(const std::string& from, const std::string& to) {
    relations.push_back({RelationKind::ProductFlow, from, to, false, {}});
  }
  void element(ElementKind kind, const std::string& id, std::optional<std::string> label = {}) {
    elements.push_back({id, kind, std::move(label), {}});
  }
  /// Removes every assignment of `function`.
  void unassign(const std::string& function) {
    std::erase_if(relations, [&](const RelationDecl& r) {
      return r.kind == RelationKind::Assignment && r.from == function;
    });
  }
};

inline Decls stamping_decls() {
  using K = ElementKind;
  Decls d;
  d.name = "stamping machine";
  d.element(K::Product, "MetalPlate", "metal plate");
  d.element(K::Product, "Part", "part");
  d.element(K::Product, "RestMaterial", "rest material");
  d.element(K::Transform, "Stamping", "stamping");
  d.element(K::Sensor, "PosSensor1", "position sensor 1");
  d.element(K::Sensor, "PosSensor2", "position sensor 2");
  d.element(K::Actuator, "Motor", "electric motor");
  d.element(K::Controller, "MotorController", "motor controller");
  d.element(K::Controller, "MachineController", "machine controller");
  d.element(K::EdgeDevice, "EdgeDevice", "edge device");
  d.element(K::CloudSystem, "Cloud", "cloud");
  d.element(K::Record, "RecPos1", "record position");
  d.element(K::Record, "RecPos2", "record position");
  d.element(K::Automate, "AutoMotor", "automate motor");
  d.element(K::Automate, "AutoMachine", "automate machine");
  d.element(K::Record, "RecTime", "record time stamps");
  d.element(K::Process, "ProcDisplay", "display wear condition");
  d.element(K::Store, "StoreData", "store data");
  d.element(K::Process, "ProcPre", "pre-processing");
  d.element(K::Train, "TrainModel", "train wear model");
  d.element(K::Inference, "InferWear", "infer belt wear");
  d.element(K::Process, "ProcPost", "post-processing");

  d.flow("MetalPlate", "Stamping");
  d.flow("Stamping", "Part");
  d.flow("Stamping", "RestMaterial");

  d.comm("PosSensor1", "MotorController");
  d.comm("PosSensor2", "MotorController");
  d.comm("MotorController", "MachineController", true);
  d.comm("MotorController", "Motor");
  d.comm("MachineController", "EdgeDevice", true);
  d.comm("EdgeDevice", "Cloud", true);

  d.assign("RecPos1", "PosSensor1");
  d.assign("RecPos2", "PosSensor2");
  d.assign("AutoMotor", "MotorController");
  d.assign("AutoMachine", "MachineController");
  d.assign("RecTime", "MachineController");
  d.assign("ProcDisplay", "MachineController");
  d.assign("StoreData", "Cloud");
  d.assign("ProcPre", "Cloud");
  d.assign("TrainModel", "Cloud");
  d.assign("InferWear", "Cloud");
  d.assign("ProcPost", "Cloud");
  return d;
}

}  // namespace gml::testing
