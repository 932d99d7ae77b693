#include "scv/translate.hpp"

namespace scv {

namespace {

char other(char z) { return z == 'x' ? 'y' : 'x'; }
Term tvar(char z) { return z == 'x' ? var_x() : var_y(); }

Fo2Ptr tr_concept(const ConceptPtr& c, char z);

Fo2Ptr tr_role(const RolePtr& r, char z, char zb) {
  switch (r->kind) {
    case Role::Kind::Atomic:
      return fo_binary(r->name, tvar(z), tvar(zb));
    case Role::Kind::Union:
      return fo_or({tr_role(r->r, z, zb), tr_role(r->s, z, zb)});
    case Role::Kind::Intersect:
      return fo_and({tr_role(r->r, z, zb), tr_role(r->s, z, zb)});
    case Role::Kind::Diff:
      return fo_and({tr_role(r->r, z, zb), fo_not(tr_role(r->s, z, zb))});
    case Role::Kind::Inverse:
      return tr_role(r->r, zb, z);
    case Role::Kind::Product:
      return fo_and({tr_concept(r->c, z), tr_concept(r->d, zb)});
  }
  throw InternalError("tr_role");
}

Fo2Ptr tr_concept(const ConceptPtr& c, char z) {
  switch (c->kind) {
    case Concept::Kind::Atomic:
      return fo_unary(c->name, tvar(z));
    case Concept::Kind::Nominal:
      return fo_eq(tvar(z), cterm(c->name));
    case Concept::Kind::Top:
      return fo_true();
    case Concept::Kind::Bottom:
      return fo_false();
    case Concept::Kind::And:
      return fo_and({tr_concept(c->lhs, z), tr_concept(c->rhs, z)});
    case Concept::Kind::Or:
      return fo_or({tr_concept(c->lhs, z), tr_concept(c->rhs, z)});
    case Concept::Kind::Not:
      return fo_not(tr_concept(c->lhs, z));
    case Concept::Kind::Exists: {
      char zb = other(z);
      return fo_exists(zb, fo_and({tr_role(c->role, z, zb), tr_concept(c->lhs, zb)}));
    }
  }
  throw InternalError("tr_concept");
}

}  // namespace

Fo2Ptr to_fo2(const LFormulaPtr& f) {
  switch (f->kind) {
    case LFormula::Kind::ConceptIncl:
      return fo_forall('x', fo_implies(tr_concept(f->c1, 'x'), tr_concept(f->c2, 'x')));
    case LFormula::Kind::RoleIncl:
      return fo_forall(
          'x', fo_forall('y', fo_implies(tr_role(f->r1, 'x', 'y'), tr_role(f->r2, 'x', 'y'))));
    case LFormula::Kind::Func:
      return fo_forall('x', fo_count(Fo2Formula::Cmp::AtMost, 1, 'y', tr_role(f->r1, 'x', 'y')));
    case LFormula::Kind::And:
      return fo_and({to_fo2(f->f1), to_fo2(f->f2)});
    case LFormula::Kind::Or:
      return fo_or({to_fo2(f->f1), to_fo2(f->f2)});
    case LFormula::Kind::Not:
      return fo_not(to_fo2(f->f1));
    case LFormula::Kind::Implies:
      return fo_implies(to_fo2(f->f1), to_fo2(f->f2));
  }
  throw InternalError("to_fo2");
}

std::vector<std::string> partition_names(const std::string& tag, size_t chunk_count) {
  std::vector<std::string> out;
  for (size_t i = 1; i <= chunk_count; ++i)
    out.push_back("P" + (tag.empty() ? "" : tag + "_") + std::to_string(i));
  return out;
}

namespace {

ConceptPtr expr_nominal(const SlExpr& e) {
  return nominal(e.is_null ? names::kNull : e.var);
}

LFormulaPtr pure_to_dl(const PureAtom& a) {
  switch (a.kind) {
    case PureAtom::Kind::True:
      return ltrue();
    case PureAtom::Kind::Eq:
      return concept_equiv(expr_nominal(a.lhs), expr_nominal(a.rhs));
    case PureAtom::Kind::Neq:
      return lnot(concept_equiv(expr_nominal(a.lhs), expr_nominal(a.rhs)));
  }
  throw InternalError("pure_to_dl");
}

// The four segment inclusions plus the empty case for one list chunk.
LFormulaPtr ls_to_dl(const LsChunk& ls, const std::string& pname) {
  ConceptPtr part = atomic_concept(pname);
  ConceptPtr head = expr_nominal(ls.from);
  ConceptPtr end = expr_nominal(ls.to);
  RolePtr next_inv = rinverse(atomic_role(kListField));
  LFormulaPtr nonempty = land({
      concept_incl(head, part),
      concept_incl(end, exists(next_inv, part)),
      concept_incl(end, cnot(part)),
      concept_incl(part, cor(head, exists(next_inv, part))),
  });
  LFormulaPtr empty = land(concept_incl(part, bottom_concept()), concept_equiv(head, end));
  return lor(nonempty, empty);
}

// Points-to chunks name a single cell and pin every field: listed bindings
// explicitly, the remaining program fields implicitly to null.
LFormulaPtr points_to_dl(const PointsToChunk& pt, const std::string& pname,
                         const Vocabulary& vocab) {
  std::vector<LFormulaPtr> conj;
  conj.push_back(concept_equiv(atomic_concept(pname), nominal(pt.var)));
  std::set<std::string> listed;
  for (const auto& [fld, val] : pt.fields) {
    listed.insert(fld);
    conj.push_back(
        role_incl(rproduct(nominal(pt.var), expr_nominal(val)), atomic_role(fld)));
  }
  for (const auto& fld : vocab.fields())
    if (!listed.count(fld))
      conj.push_back(
          role_incl(rproduct(nominal(pt.var), nominal(names::kNull)), atomic_role(fld)));
  return land(conj);
}

}  // namespace

ShapeDl shape_to_dl(const SlFormula& f, const std::vector<std::string>& pnames,
                    const Vocabulary& vocab) {
  std::vector<LFormulaPtr> conj;

  if (f.emp) {
    conj.push_back(concept_equiv(atomic_concept(names::kAlloc), bottom_concept()));
  } else {
    if (pnames.size() != f.chunks.size())
      throw PreconditionError("shape_to_dl: one partition name per chunk required");
    for (const auto& n : pnames)
      if (vocab.has_const(n) || vocab.has_binary(n) ||
          (vocab.has_unary(n) && !vocab.is_partition_concept(n)))
        throw VocabError("partition concept collides with a declared symbol: " + n);
    // The chunks cover Alloc...
    ConceptPtr uni = nullptr;
    for (const auto& n : pnames) {
      ConceptPtr p = atomic_concept(n);
      uni = uni ? cor(uni, p) : p;
    }
    if (uni) conj.push_back(concept_equiv(uni, atomic_concept(names::kAlloc)));
    // ...each chunk is what its form says...
    for (size_t i = 0; i < f.chunks.size(); ++i) {
      if (const auto* pt = std::get_if<PointsToChunk>(&f.chunks[i]))
        conj.push_back(points_to_dl(*pt, pnames[i], vocab));
      else
        conj.push_back(ls_to_dl(std::get<LsChunk>(f.chunks[i]), pnames[i]));
    }
    // ...and they are pairwise disjoint.
    for (size_t i = 0; i < pnames.size(); ++i)
      for (size_t j = i + 1; j < pnames.size(); ++j)
        conj.push_back(concept_equiv(cand(atomic_concept(pnames[i]), atomic_concept(pnames[j])),
                                     bottom_concept()));
  }

  for (const auto& a : f.pure) conj.push_back(pure_to_dl(a));

  return {land(conj), f.emp ? std::vector<std::string>{} : pnames};
}

Fo2Ptr segment_forest_clause(const std::string& partition, const std::string& field,
                             const SlExpr& head) {
  auto P = [&](Term t) { return fo_unary(partition, t); };
  // Inside the chunk the forest coincides with the field.
  Fo2Ptr coincide = fo_forall(
      'x', fo_forall('y', fo_implies(fo_and({P(var_x()), P(var_y())}),
                                     fo_iff(fo_binary(names::kForest, var_x(), var_y()),
                                            fo_binary(field, var_x(), var_y())))));
  // A chunk cell with no forest predecessor in the chunk is the head.
  Fo2Ptr root = fo_forall(
      'x',
      fo_implies(fo_and({P(var_x()),
                         fo_forall('y', fo_implies(P(var_y()),
                                                   fo_not(fo_binary(names::kForest, var_y(),
                                                                    var_x()))))}),
                 fo_eq(var_x(), cterm(head.is_null ? names::kNull : head.var))));
  return fo_and({coincide, root});
}

Ct2Formula shape_to_ct2(const SlFormula& f, const std::vector<std::string>& pnames,
                        const Vocabulary& vocab) {
  ShapeDl dl = shape_to_dl(f, pnames, vocab);
  std::vector<Fo2Ptr> body = {to_fo2(dl.formula)};
  Ct2Formula out;
  for (size_t i = 0; i < f.chunks.size(); ++i) {
    if (const auto* ls = std::get_if<LsChunk>(&f.chunks[i])) {
      body.push_back(segment_forest_clause(pnames[i], kListField, ls->from));
      out.segments.push_back({pnames[i], kListField});
    }
  }
  out.body = fo_and(std::move(body));
  return out;
}

}  // namespace scv
