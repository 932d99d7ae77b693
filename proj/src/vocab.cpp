#include "scv/vocab.hpp"

#include <algorithm>

namespace scv {

namespace {
const std::vector<std::string> kRequiredConsts = {names::kNull, names::kTrue, names::kFalse};
const std::vector<std::string> kRequiredUnary = {names::kAddresses, names::kAlloc,
                                                 names::kPossibleTargets, names::kMemPool,
                                                 names::kAux};
}  // namespace

Vocabulary::Vocabulary() {
  for (const auto& c : kRequiredConsts) add_const(c);
  for (const auto& u : kRequiredUnary) add_unary(u);
}

bool Vocabulary::is_required_unary(const std::string& n) {
  return std::find(kRequiredUnary.begin(), kRequiredUnary.end(), n) != kRequiredUnary.end();
}

bool Vocabulary::is_required_const(const std::string& n) {
  return std::find(kRequiredConsts.begin(), kRequiredConsts.end(), n) != kRequiredConsts.end();
}

void Vocabulary::check_fresh(const std::string& n) const {
  if (n == names::kForest) throw VocabError("name is reserved for the forest symbol: " + n);
  if (n.size() > 4 && n.substr(n.size() - 4) == "_gho" && ghosts_.count(n) == 0)
    throw VocabError("the _gho suffix is reserved for ghost twins: " + n);
  if (n.size() > 4 && n.substr(n.size() - 4) == "_ext" && exts_.count(n) == 0)
    throw VocabError("the _ext suffix is reserved for ext twins: " + n);
  if (consts_.count(n) || unary_.count(n) || binary_.count(n))
    throw VocabError("name already declared: " + n);
}

void Vocabulary::add_const(const std::string& n) {
  if (consts_.insert(n).second) const_order_.push_back(n);
}
void Vocabulary::add_unary(const std::string& n) {
  if (unary_.insert(n).second) unary_order_.push_back(n);
}
void Vocabulary::add_binary(const std::string& n) {
  if (binary_.insert(n).second) binary_order_.push_back(n);
}

void Vocabulary::declare_var(const std::string& n) {
  check_fresh(n);
  add_const(n);
  vars_.insert(n);
  var_order_.push_back(n);
}

void Vocabulary::declare_field(const std::string& n) {
  check_fresh(n);
  add_binary(n);
  fields_.insert(n);
  field_order_.push_back(n);
}

void Vocabulary::declare_concept(const std::string& n) {
  check_fresh(n);
  add_unary(n);
}

void Vocabulary::declare_role(const std::string& n) {
  check_fresh(n);
  add_binary(n);
}

void Vocabulary::declare_partition_concept(const std::string& n) {
  check_fresh(n);
  add_unary(n);
  partitions_.insert(n);
}

void Vocabulary::declare_ghost(const std::string& base) {
  if (ghost_of_.count(base)) return;
  std::string twin = names::ghost(base);
  if (consts_.count(twin) || unary_.count(twin) || binary_.count(twin))
    throw VocabError("ghost twin name collides: " + twin);
  if (consts_.count(base)) {
    add_const(twin);
  } else if (unary_.count(base)) {
    if (is_required_unary(base)) throw VocabError("required symbols have no ghost twin: " + base);
    add_unary(twin);
  } else if (binary_.count(base)) {
    add_binary(twin);
  } else {
    throw VocabError("ghost declaration of unknown symbol: " + base);
  }
  ghosts_.insert(twin);
  ghost_of_[base] = twin;
  ghost_decl_order_.push_back(base);
}

void Vocabulary::declare_free_const(const std::string& n) {
  check_fresh(n);
  add_const(n);
  free_consts_.insert(n);
}

bool Vocabulary::is_field(const std::string& n) const { return fields_.count(n) != 0; }

bool Vocabulary::is_field_like(const std::string& n) const {
  if (fields_.count(n)) return true;
  if (!is_ghost(n)) return false;
  for (const auto& [base, twin] : ghost_of_)
    if (twin == n) return fields_.count(base) != 0;
  return false;
}

std::vector<std::string> Vocabulary::field_like() const {
  std::vector<std::string> out = field_order_;
  for (const auto& f : field_order_) {
    auto it = ghost_of_.find(f);
    if (it != ghost_of_.end()) out.push_back(it->second);
  }
  return out;
}

std::vector<std::string> Vocabulary::rem_symbols() const {
  std::vector<std::string> out;
  for (const auto& u : unary_order_)
    if (!is_required_unary(u) && !is_ghost(u) && !is_ext(u)) out.push_back(u);
  for (const auto& b : binary_order_)
    if (!fields_.count(b) && !is_ghost(b) && !is_ext(b)) out.push_back(b);
  return out;
}

Vocabulary Vocabulary::with_ext() const {
  Vocabulary v = *this;
  for (const auto& r : rem_symbols()) {
    std::string twin = names::ext(r);
    if (v.consts_.count(twin) || v.unary_.count(twin) || v.binary_.count(twin))
      throw VocabError("ext twin name collides: " + twin);
    if (unary_.count(r))
      v.add_unary(twin);
    else
      v.add_binary(twin);
    v.exts_.insert(twin);
    v.ext_of_[r] = twin;
    v.ext_base_[twin] = r;
  }
  return v;
}

std::optional<std::string> Vocabulary::ghost_of(const std::string& base) const {
  auto it = ghost_of_.find(base);
  if (it == ghost_of_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Vocabulary::ext_base(const std::string& ext_name) const {
  auto it = ext_base_.find(ext_name);
  if (it == ext_base_.end()) return std::nullopt;
  return it->second;
}

Vocabulary Vocabulary::restrict_to(const std::set<std::string>& keep) const {
  // Close under twin->base so field-likeness and ext bookkeeping survive.
  std::set<std::string> want = keep;
  for (const auto& [base, twin] : ghost_of_)
    if (want.count(twin)) want.insert(base);
  for (const auto& [twin, base] : ext_base_)
    if (want.count(twin)) want.insert(base);

  Vocabulary v;
  for (const auto& c : const_order_) {
    if (is_required_const(c) || !want.count(c)) continue;
    v.add_const(c);
    if (vars_.count(c)) {
      v.vars_.insert(c);
      v.var_order_.push_back(c);
    }
    if (free_consts_.count(c)) v.free_consts_.insert(c);
    if (ghosts_.count(c)) v.ghosts_.insert(c);
  }
  for (const auto& u : unary_order_) {
    if (is_required_unary(u) || !want.count(u)) continue;
    v.add_unary(u);
    if (ghosts_.count(u)) v.ghosts_.insert(u);
    if (exts_.count(u)) v.exts_.insert(u);
    if (partitions_.count(u)) v.partitions_.insert(u);
  }
  for (const auto& b : binary_order_) {
    if (!want.count(b)) continue;
    v.add_binary(b);
    if (fields_.count(b)) {
      v.fields_.insert(b);
      v.field_order_.push_back(b);
    }
    if (ghosts_.count(b)) v.ghosts_.insert(b);
    if (exts_.count(b)) v.exts_.insert(b);
  }
  for (const auto& [base, twin] : ghost_of_) {
    bool twin_in = v.consts_.count(twin) || v.unary_.count(twin) || v.binary_.count(twin);
    if (twin_in) {
      v.ghost_of_[base] = twin;
      v.ghost_decl_order_.push_back(base);
    }
  }
  for (const auto& [base, twin] : ext_of_)
    if (v.unary_.count(twin) || v.binary_.count(twin)) {
      v.ext_of_[base] = twin;
      v.ext_base_[twin] = base;
    }
  return v;
}

}  // namespace scv
