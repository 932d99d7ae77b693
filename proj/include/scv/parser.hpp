#pragma once

#include <functional>
#include <string>

#include "scv/dl.hpp"
#include "scv/prog.hpp"
#include "scv/sl.hpp"

namespace scv {

// Standalone entry points for the concrete text syntaxes (docs/grammar.md).
// `resolve` may map otherwise-unknown names (partition placeholders).
using NameResolver = std::function<ConceptPtr(const std::string&)>;

LFormulaPtr parse_lformula(const std::string& text, const Vocabulary& vocab,
                           const std::map<std::string, LFormulaPtr>* named = nullptr,
                           const NameResolver& resolve = nullptr);
SlFormula parse_sl(const std::string& text, const Vocabulary& vocab);
CommandPtr parse_command(const std::string& text, const Vocabulary& vocab);

// Deterministic labeling of new/field-read commands (y1, y2, ... skipping
// declared constants), in syntax order.
CommandPtr label_commands(const CommandPtr& c, const Vocabulary& vocab);

}  // namespace scv
