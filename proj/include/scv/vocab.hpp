#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scv/common.hpp"

namespace scv {

namespace names {
inline const std::string kNull = "null";
inline const std::string kTrue = "T";
inline const std::string kFalse = "F";
inline const std::string kAddresses = "Addresses";
inline const std::string kAlloc = "Alloc";
inline const std::string kPossibleTargets = "PossibleTargets";
inline const std::string kMemPool = "MemPool";
inline const std::string kAux = "Aux";
inline const std::string kForest = "F1";  // reserved for the CT2 forest symbol
inline const std::string kAbort = "abo";

inline std::string ghost(const std::string& s) { return s + "_gho"; }
inline std::string ext(const std::string& s) { return s + "_ext"; }
}  // namespace names

// Symbol table for one verification problem: constants (program variables,
// label constants), unary relations (required partitions plus user concepts),
// binary relations (fields and other roles), ghost twins and ext twins.
class Vocabulary {
 public:
  Vocabulary();

  void declare_var(const std::string& name);
  void declare_field(const std::string& name);
  void declare_concept(const std::string& name);
  void declare_role(const std::string& name);  // non-field binary relation
  void declare_partition_concept(const std::string& name);
  // Adds a ghost twin for an already-declared var/field/concept/role.
  void declare_ghost(const std::string& base);
  // Free constants left to a model search (label constants o_y, o_abo).
  void declare_free_const(const std::string& name);

  // Copy of this vocabulary with an ext twin for every rem symbol.
  Vocabulary with_ext() const;

  bool has_const(const std::string& n) const { return consts_.count(n) != 0; }
  bool has_unary(const std::string& n) const { return unary_.count(n) != 0; }
  bool has_binary(const std::string& n) const { return binary_.count(n) != 0; }

  bool is_var(const std::string& n) const { return vars_.count(n) != 0; }
  bool is_field(const std::string& n) const;        // declared program field
  bool is_field_like(const std::string& n) const;   // field or ghost of a field
  bool is_ghost(const std::string& n) const { return ghosts_.count(n) != 0; }
  bool is_ext(const std::string& n) const { return exts_.count(n) != 0; }
  bool is_free_const(const std::string& n) const { return free_consts_.count(n) != 0; }
  bool is_partition_concept(const std::string& n) const { return partitions_.count(n) != 0; }
  static bool is_required_unary(const std::string& n);
  static bool is_required_const(const std::string& n);

  // The rem symbols: unary/binary relations that are not fields, not ghost
  // symbols and not required symbols. Declaration order.
  std::vector<std::string> rem_symbols() const;

  const std::vector<std::string>& vars() const { return var_order_; }
  const std::vector<std::string>& fields() const { return field_order_; }
  // Fields plus ghost twins of fields, in declaration order. These all obey
  // the functional-field conditions.
  std::vector<std::string> field_like() const;
  const std::vector<std::string>& const_order() const { return const_order_; }
  const std::vector<std::string>& unary_order() const { return unary_order_; }
  const std::vector<std::string>& binary_order() const { return binary_order_; }
  const std::vector<std::string>& ghost_decl_order() const { return ghost_decl_order_; }

  std::optional<std::string> ghost_of(const std::string& base) const;
  std::optional<std::string> ext_base(const std::string& ext_name) const;

  // Restriction to the given relation/constant names (required symbols kept).
  Vocabulary restrict_to(const std::set<std::string>& keep) const;

 private:
  void add_const(const std::string& n);
  void add_unary(const std::string& n);
  void add_binary(const std::string& n);
  void check_fresh(const std::string& n) const;

  std::set<std::string> consts_, unary_, binary_;
  std::vector<std::string> const_order_, unary_order_, binary_order_;
  std::set<std::string> vars_, fields_, free_consts_, ghosts_, exts_, partitions_;
  std::vector<std::string> var_order_, field_order_, ghost_decl_order_;
  std::map<std::string, std::string> ghost_of_;  // base -> twin
  std::map<std::string, std::string> ext_of_;    // base -> twin
  std::map<std::string, std::string> ext_base_;  // twin -> base
};

}  // namespace scv
