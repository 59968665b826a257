#include "o3sim/cv/circuit.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace o3sim::cv {

namespace {

struct KindName {
  GateKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {GateKind::squeeze, "squeeze"},
    {GateKind::displace, "displace"},
    {GateKind::rotate, "rotate"},
    {GateKind::fourier, "fourier"},
    {GateKind::quad_phase, "quad_phase"},
    {GateKind::cubic_phase, "cubic_phase"},
    {GateKind::kerr, "kerr"},
    {GateKind::cross_kerr, "cross_kerr"},
    {GateKind::beam_splitter, "beam_splitter"},
    {GateKind::cx, "cx"},
    {GateKind::cz, "cz"},
};

}  // namespace

const char* gate_kind_name(GateKind kind) {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  throw std::logic_error("unhandled gate kind");
}

GateKind gate_kind_from_name(const std::string& name) {
  for (const auto& kn : kKindNames)
    if (name == kn.name) return kn.kind;
  throw std::invalid_argument("unknown gate kind: " + name);
}

Circuit circuit_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("circuit must be an array");
  Circuit c;
  for (const auto& e : j) {
    GateSpec g;
    g.kind = gate_kind_from_name(e.at("kind").get<std::string>());
    const auto params = e.value("params", std::vector<double>{});
    if (g.kind != GateKind::fourier) {
      if (params.size() != 1)
        throw std::invalid_argument("gate needs exactly one parameter");
      g.param = params[0];
    } else if (!params.empty()) {
      throw std::invalid_argument("fourier takes no parameter");
    }
    const auto targets = e.at("targets").get<std::vector<int>>();
    if (static_cast<int>(targets.size()) != g.arity())
      throw std::invalid_argument("target count does not match gate arity");
    g.target = targets[0];
    if (g.arity() == 2) g.target2 = targets[1];
    c.gates.push_back(g);
  }
  return c;
}

nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& g : c.gates) {
    nlohmann::json e;
    e["kind"] = gate_kind_name(g.kind);
    e["params"] = g.kind == GateKind::fourier ? std::vector<double>{}
                                              : std::vector<double>{g.param};
    e["targets"] = g.arity() == 2 ? std::vector<int>{g.target, g.target2}
                                  : std::vector<int>{g.target};
    j.push_back(e);
  }
  return j;
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file: " + path);
  nlohmann::json j;
  in >> j;
  return circuit_from_json(j);
}

void save_circuit(const Circuit& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write circuit file: " + path);
  out << circuit_to_json(c).dump(2) << '\n';
}

double apply_circuit(QumodeRegister& reg, const Circuit& c) {
  double leak = 0.0;
  for (const auto& g : c.gates) leak += apply_gate(reg, g);
  return leak;
}

void save_register(const QumodeRegister& reg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write register file: " + path);
  nlohmann::json header;
  header["n_modes"] = reg.n_modes();
  header["n_max"] = reg.n_max();
  header["count"] = reg.size();
  header["dtype"] = "complex128";
  out << header.dump() << '\n';
  static_assert(sizeof(cdouble) == 16);
  out.write(reinterpret_cast<const char*>(reg.amplitudes().data()),
            reg.size() * static_cast<std::int64_t>(sizeof(cdouble)));
}

QumodeRegister load_register(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open register file: " + path);
  std::string line;
  std::getline(in, line);
  const auto header = nlohmann::json::parse(line);
  if (header.at("dtype").get<std::string>() != "complex128")
    throw std::runtime_error("unsupported snapshot dtype");
  QumodeRegister reg(header.at("n_modes").get<int>(),
                     header.at("n_max").get<int>());
  if (header.at("count").get<std::int64_t>() != reg.size())
    throw std::runtime_error("snapshot count does not match shape");
  in.read(reinterpret_cast<char*>(reg.amplitudes().data()),
          reg.size() * static_cast<std::int64_t>(sizeof(cdouble)));
  if (!in) throw std::runtime_error("truncated register snapshot");
  return reg;
}

}  // namespace o3sim::cv
