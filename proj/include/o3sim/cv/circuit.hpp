#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "o3sim/cv/gates.hpp"

namespace o3sim::cv {

struct Circuit {
  std::vector<GateSpec> gates;
};

// JSON form: array of {"kind": "...", "params": [..], "targets": [..]}
// applied in array order.
Circuit circuit_from_json(const nlohmann::json& j);
nlohmann::json circuit_to_json(const Circuit& c);
Circuit load_circuit(const std::string& path);
void save_circuit(const Circuit& c, const std::string& path);

const char* gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

// total leakage across the applied gates
double apply_circuit(QumodeRegister& reg, const Circuit& c);

// Snapshot format: one JSON header line {"n_modes", "n_max", "count",
// "dtype": "complex128"} followed by raw little-endian complex doubles.
void save_register(const QumodeRegister& reg, const std::string& path);
QumodeRegister load_register(const std::string& path);

}  // namespace o3sim::cv
