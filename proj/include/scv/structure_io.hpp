#pragma once

#include <string>

#include "scv/memstruct.hpp"

namespace scv {

// Structure files are JSON documents with keys universe (array of element
// names), constants (name -> element), unary (name -> array), binary
// (name -> array of 2-arrays). The address partition is read from the unary
// entries; Aux/Addresses are derived when omitted. The loader validates and
// rejects invalid structures with the violation list.
MemoryStructure load_structure(const std::string& json_text, const Vocabulary& vocab);
MemoryStructure load_structure_file(const std::string& path, const Vocabulary& vocab);

// Canonical element names: null/T/F then a0, a1, ...
std::string store_structure(const MemoryStructure& m);

}  // namespace scv
