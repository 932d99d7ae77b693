#include "scv/structure_io.hpp"

#include <fstream>
#include <map>

#include "json.hpp"

namespace scv {

using nlohmann::ordered_json;

MemoryStructure load_structure(const std::string& json_text, const Vocabulary& vocab) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("structure file: invalid JSON: ") + e.what());
  }

  if (!j.contains("universe") || !j["universe"].is_array())
    throw ParseError("structure file: missing universe array");
  std::map<std::string, Elem> id;
  MemoryStructure m;
  for (const auto& name : j["universe"]) {
    if (!name.is_string()) throw ParseError("structure file: universe entries must be strings");
    std::string n = name.get<std::string>();
    if (id.count(n)) throw ParseError("structure file: duplicate element " + n);
    id[n] = m.size++;
  }
  auto elem = [&](const std::string& n) {
    auto it = id.find(n);
    if (it == id.end()) throw ParseError("structure file: unknown element " + n);
    return it->second;
  };

  if (j.contains("constants"))
    for (auto& [name, v] : j["constants"].items()) m.consts[name] = elem(v.get<std::string>());
  if (j.contains("unary"))
    for (auto& [name, arr] : j["unary"].items()) {
      auto& set = m.unary[name];
      for (const auto& v : arr) set.insert(elem(v.get<std::string>()));
    }
  if (j.contains("binary"))
    for (auto& [name, arr] : j["binary"].items()) {
      auto& rel = m.binary[name];
      for (const auto& pair : arr) {
        if (!pair.is_array() || pair.size() != 2)
          throw ParseError("structure file: binary entries must be 2-arrays");
        rel.insert({elem(pair[0].get<std::string>()), elem(pair[1].get<std::string>())});
      }
    }

  for (const auto& c : {names::kNull, names::kTrue, names::kFalse})
    if (!m.consts.count(c)) throw ParseError("structure file: missing constant " + c);

  // Derive the universe split when omitted.
  if (!m.unary.count(names::kAux))
    m.unary[names::kAux] = {m.null_elem(), m.true_elem(), m.false_elem()};
  if (!m.unary.count(names::kAddresses)) {
    auto& addr = m.unary[names::kAddresses];
    const auto& aux = m.unary[names::kAux];
    for (Elem e = 0; e < m.size; ++e)
      if (!aux.count(e)) addr.insert(e);
  }
  for (const auto& u : {names::kAlloc, names::kPossibleTargets, names::kMemPool})
    if (!m.unary.count(u)) m.unary[u] = {};

  // Unmentioned vocabulary symbols default to empty / null.
  for (const auto& u : vocab.unary_order())
    if (!m.unary.count(u)) m.unary[u] = {};
  for (const auto& b : vocab.binary_order())
    if (!m.binary.count(b)) m.binary[b] = {};
  for (const auto& c : vocab.const_order())
    if (!m.consts.count(c)) m.consts[c] = m.null_elem();

  auto violations = validate(m, vocab);
  if (!violations.empty())
    throw ParseError("structure file rejected:\n" + describe(violations));
  return m;
}

MemoryStructure load_structure_file(const std::string& path, const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open structure file " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_structure(text, vocab);
}

std::string store_structure(const MemoryStructure& m) {
  std::vector<std::string> name(m.size);
  int addr_count = 0;
  for (Elem e = 0; e < m.size; ++e) {
    if (m.consts.count(names::kNull) && m.const_of(names::kNull) == e)
      name[e] = "null";
    else if (m.consts.count(names::kTrue) && m.const_of(names::kTrue) == e)
      name[e] = "T";
    else if (m.consts.count(names::kFalse) && m.const_of(names::kFalse) == e)
      name[e] = "F";
    else
      name[e] = "a" + std::to_string(addr_count++);
  }
  ordered_json j;
  j["universe"] = name;
  ordered_json consts = ordered_json::object();
  for (const auto& [c, e] : m.consts) consts[c] = name[e];
  j["constants"] = consts;
  ordered_json unary = ordered_json::object();
  for (const auto& [u, set] : m.unary) {
    std::vector<std::string> elems;
    for (Elem e : set) elems.push_back(name[e]);
    unary[u] = elems;
  }
  j["unary"] = unary;
  ordered_json binary = ordered_json::object();
  for (const auto& [b, rel] : m.binary) {
    std::vector<std::vector<std::string>> pairs;
    for (const auto& [a, c] : rel) pairs.push_back({name[a], name[c]});
    binary[b] = pairs;
  }
  j["binary"] = binary;
  return j.dump(2);
}

}  // namespace scv
