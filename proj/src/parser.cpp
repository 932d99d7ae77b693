#include "scv/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <variant>

#include "scv/translate.hpp"

namespace scv {

namespace {

// ---- lexer ----------------------------------------------------------------

struct Token {
  enum class Kind { Ident, Nominal, FormulaRef, Symbol, Number, End };
  Kind kind;
  std::string text;
  int line, col;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;
  std::vector<Token> tokens;

  explicit Lexer(const std::string& s) : src(s) { run(); }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }

  void advance(size_t k) {
    for (size_t i = 0; i < k; ++i) {
      if (pos < src.size() && src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  bool starts(const std::string& s) const { return src.compare(pos, s.size(), s) == 0; }

  void run() {
    static const std::vector<std::string> symbols = {
        "|->", ":=", "<=", "==", "&&", "||", "->", "!=", "^-", "(", ")", "{", "}", "[", "]",
        ";",   ":",  ",", ".",  "*",  "&",  "|",  "!",  "~",  "=",  "\\"};
    while (pos < src.size()) {
      char c = src[pos];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      if (starts("//")) {
        while (pos < src.size() && src[pos] != '\n') advance(1);
        continue;
      }
      int tl = line, tc = col;
      if (starts("o:")) {
        advance(2);
        std::string name = ident();
        if (name.empty()) fail("expected a constant name after o:");
        tokens.push_back({Token::Kind::Nominal, name, tl, tc});
        continue;
      }
      if (c == '@') {
        advance(1);
        std::string name = ident();
        if (name.empty()) fail("expected a formula name after @");
        tokens.push_back({Token::Kind::FormulaRef, name, tl, tc});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        tokens.push_back({Token::Kind::Ident, ident(), tl, tc});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
          num += src[pos];
          advance(1);
        }
        tokens.push_back({Token::Kind::Number, num, tl, tc});
        continue;
      }
      bool matched = false;
      for (const auto& s : symbols) {
        if (starts(s)) {
          advance(s.size());
          tokens.push_back({Token::Kind::Symbol, s, tl, tc});
          matched = true;
          break;
        }
      }
      if (!matched) fail(std::string("unexpected character '") + c + "'");
    }
    tokens.push_back({Token::Kind::End, "", line, col});
  }

  std::string ident() {
    std::string out;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
      out += src[pos];
      advance(1);
    }
    return out;
  }
};

// ---- token stream with backtracking ----------------------------------------

struct Stream {
  const std::vector<Token>& toks;
  size_t at = 0;

  const Token& peek(size_t k = 0) const {
    return toks[std::min(at + k, toks.size() - 1)];
  }
  const Token& next() { return toks[std::min(at++, toks.size() - 1)]; }
  bool is_sym(const std::string& s, size_t k = 0) const {
    return peek(k).kind == Token::Kind::Symbol && peek(k).text == s;
  }
  bool is_ident(const std::string& s, size_t k = 0) const {
    return peek(k).kind == Token::Kind::Ident && peek(k).text == s;
  }
  bool eat_sym(const std::string& s) {
    if (!is_sym(s)) return false;
    ++at;
    return true;
  }
  bool eat_ident(const std::string& s) {
    if (!is_ident(s)) return false;
    ++at;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError("line " + std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg +
                     (t.kind == Token::Kind::End ? " (at end of input)"
                                                 : " (at '" + t.text + "')"));
  }
  void expect_sym(const std::string& s) {
    if (!eat_sym(s)) fail("expected '" + s + "'");
  }
  void expect_ident(const std::string& s) {
    if (!eat_ident(s)) fail("expected '" + s + "'");
  }
  std::string expect_name(const std::string& what) {
    if (peek().kind != Token::Kind::Ident) fail("expected " + what);
    return next().text;
  }
};

// ---- description-logic expressions ------------------------------------------

// Concept-or-role value for the unified expression grammar.
struct CR {
  ConceptPtr c;
  RolePtr r;
  bool is_concept() const { return c != nullptr; }
};

struct LParser {
  Stream& s;
  const Vocabulary& vocab;
  const std::map<std::string, LFormulaPtr>* named;
  const NameResolver& resolve;

  ConceptPtr as_concept(const CR& v, const char* what) {
    if (!v.is_concept()) s.fail(std::string("expected a concept ") + what);
    return v.c;
  }
  RolePtr as_role(const CR& v, const char* what) {
    if (v.is_concept()) s.fail(std::string("expected a role ") + what);
    return v.r;
  }

  CR primary() {
    if (s.peek().kind == Token::Kind::Nominal) {
      std::string n = s.next().text;
      if (!vocab.has_const(n)) s.fail("unknown constant " + n);
      return {nominal(n), nullptr};
    }
    if (s.eat_ident("top")) return {top_concept(), nullptr};
    if (s.eat_ident("bot")) return {bottom_concept(), nullptr};
    if (s.eat_ident("ex")) {
      RolePtr r = as_role(parse_union(), "after ex");
      s.expect_sym(".");
      CR body = unary();
      return {exists(r, as_concept(body, "after the . of ex")), nullptr};
    }
    if (s.eat_sym("(")) {
      CR first = parse_union();
      if (s.eat_sym(",")) {
        CR second = parse_union();
        s.expect_sym(")");
        return {nullptr, rproduct(as_concept(first, "in a pair"), as_concept(second, "in a pair"))};
      }
      s.expect_sym(")");
      return first;
    }
    if (s.peek().kind == Token::Kind::Ident) {
      std::string n = s.next().text;
      if (vocab.has_unary(n)) return {atomic_concept(n), nullptr};
      if (vocab.has_binary(n)) return {nullptr, atomic_role(n)};
      if (resolve) {
        if (ConceptPtr c = resolve(n)) return {c, nullptr};
      }
      s.fail("unknown symbol " + n);
    }
    s.fail("expected a concept or role expression");
  }

  CR postfix() {
    CR v = primary();
    while (s.is_sym("^-")) {
      s.next();
      v = {nullptr, rinverse(as_role(v, "before ^-"))};
    }
    return v;
  }

  CR unary() {
    if (s.eat_sym("!")) {
      CR v = unary();
      return {cnot(as_concept(v, "after !")), nullptr};
    }
    return postfix();
  }

  CR product() {
    CR v = unary();
    if (s.is_ident("x")) {
      s.next();
      CR w = unary();
      return {nullptr, rproduct(as_concept(v, "左 of x"), as_concept(w, "after x"))};
    }
    return v;
  }

  CR intersect() {
    CR v = product();
    while (s.is_sym("&")) {
      s.next();
      CR w = product();
      if (v.is_concept() != w.is_concept()) s.fail("& mixes a concept and a role");
      v = v.is_concept() ? CR{cand(v.c, w.c), nullptr} : CR{nullptr, rintersect(v.r, w.r)};
    }
    return v;
  }

  CR diff() {
    CR v = intersect();
    while (s.is_sym("\\")) {
      s.next();
      CR w = intersect();
      v = {nullptr, rdiff(as_role(v, "before \\"), as_role(w, "after \\"))};
    }
    return v;
  }

  CR parse_union() {
    CR v = diff();
    while (s.is_sym("|") && !s.is_sym("|->")) {
      s.next();
      CR w = diff();
      if (v.is_concept() != w.is_concept()) s.fail("| mixes a concept and a role");
      v = v.is_concept() ? CR{cor(v.c, w.c), nullptr} : CR{nullptr, runion(v.r, w.r)};
    }
    return v;
  }

  LFormulaPtr atom() {
    if (s.is_ident("func") && s.is_sym("(", 1)) {
      s.next();
      s.next();
      RolePtr r = as_role(parse_union(), "in func(..)");
      s.expect_sym(")");
      return func(r);
    }
    if (s.peek().kind == Token::Kind::FormulaRef) {
      std::string name = s.next().text;
      if (!named || !named->count(name)) s.fail("unknown formula @" + name);
      return named->at(name);
    }
    if (s.is_sym("(")) {
      size_t save = s.at;
      s.next();
      try {
        LFormulaPtr f = formula();
        s.expect_sym(")");
        return f;
      } catch (const ParseError&) {
        s.at = save;
      }
    }
    CR lhs = parse_union();
    bool equiv;
    if (s.eat_sym("<="))
      equiv = false;
    else if (s.eat_sym("=="))
      equiv = true;
    else
      s.fail("expected <= or == in an inclusion");
    CR rhs = parse_union();
    if (lhs.is_concept() != rhs.is_concept()) s.fail("inclusion mixes a concept and a role");
    if (lhs.is_concept()) return equiv ? concept_equiv(lhs.c, rhs.c) : concept_incl(lhs.c, rhs.c);
    return equiv ? role_equiv(lhs.r, rhs.r) : role_incl(lhs.r, rhs.r);
  }

  LFormulaPtr funary() {
    if (s.eat_sym("!")) return lnot(funary());
    return atom();
  }

  LFormulaPtr fand() {
    LFormulaPtr f = funary();
    while (s.eat_sym("&&")) f = land(f, funary());
    return f;
  }

  LFormulaPtr forr() {
    LFormulaPtr f = fand();
    while (s.eat_sym("||")) f = lor(f, fand());
    return f;
  }

  LFormulaPtr formula() {
    LFormulaPtr f = forr();
    if (s.eat_sym("->")) return limplies(f, formula());
    return f;
  }
};

// ---- separation-logic assertions ---------------------------------------------

struct SlParser {
  Stream& s;
  const Vocabulary& vocab;

  SlExpr expr() {
    if (s.eat_ident("null")) return sl_null();
    std::string n = s.expect_name("a variable or null");
    if (!vocab.is_var(n)) s.fail("unknown variable " + n);
    return sl_var(n);
  }

  std::optional<std::vector<PureAtom>> try_pure() {
    size_t save = s.at;
    try {
      std::vector<PureAtom> atoms;
      while (true) {
        PureAtom a;
        if (s.eat_ident("true")) {
          a.kind = PureAtom::Kind::True;
        } else {
          a.lhs = expr();
          if (s.eat_sym("="))
            a.kind = PureAtom::Kind::Eq;
          else if (s.eat_sym("!="))
            a.kind = PureAtom::Kind::Neq;
          else
            s.fail("expected = or != in a pure atom");
          a.rhs = expr();
        }
        atoms.push_back(a);
        if (s.eat_sym("&&")) continue;
        break;
      }
      if (!s.is_sym("|") || s.is_sym("|->")) s.fail("pure part must end with |");
      s.next();
      return atoms;
    } catch (const ParseError&) {
      s.at = save;
      return std::nullopt;
    }
  }

  Chunk chunk() {
    if (s.is_ident("ls") && s.is_sym("(", 1)) {
      s.next();
      s.next();
      SlExpr from = expr();
      s.expect_sym(",");
      SlExpr to = expr();
      s.expect_sym(")");
      return LsChunk{from, to};
    }
    std::string var = s.expect_name("a points-to cell variable");
    if (!vocab.is_var(var)) s.fail("unknown variable " + var);
    s.expect_sym("|->");
    s.expect_sym("[");
    PointsToChunk pt;
    pt.var = var;
    if (!s.is_sym("]")) {
      while (true) {
        std::string f = s.expect_name("a field name");
        if (!vocab.is_field(f)) s.fail("unknown field " + f);
        s.expect_sym(":");
        pt.fields.push_back({f, expr()});
        if (s.eat_sym(",")) continue;
        break;
      }
    }
    s.expect_sym("]");
    return pt;
  }

  SlFormula parse() {
    SlFormula out;
    if (auto pure = try_pure()) out.pure = *pure;
    if (s.eat_ident("emp")) {
      out.emp = true;
      return out;
    }
    out.chunks.push_back(chunk());
    while (s.eat_sym("*")) out.chunks.push_back(chunk());
    return out;
  }
};

// ---- programs -------------------------------------------------------------------

struct ProgParser {
  Stream& s;
  const Vocabulary& vocab;

  std::string var_name() {
    std::string n = s.expect_name("a variable");
    if (!vocab.is_var(n)) s.fail("unknown variable " + n);
    return n;
  }

  Expr expr() {
    if (s.eat_ident("null")) return e_null();
    std::string n = var_name();
    if (s.eat_sym(".")) {
      std::string f = s.expect_name("a field");
      if (!vocab.is_field(f)) s.fail("unknown field " + f);
      return e_field(n, f);
    }
    return e_var(n);
  }

  BoolPtr batom() {
    if (s.eat_ident("T")) return b_lit(true);
    if (s.eat_ident("F")) return b_lit(false);
    if (s.eat_sym("(")) {
      BoolPtr b = bor();
      s.expect_sym(")");
      return b;
    }
    Expr a = expr();
    s.expect_sym("=");
    Expr b = expr();
    return b_eq(a, b);
  }

  BoolPtr bunary() {
    if (s.eat_sym("~")) return b_not(bunary());
    return batom();
  }

  BoolPtr band() {
    BoolPtr b = bunary();
    while (s.eat_ident("and")) b = b_and(b, bunary());
    return b;
  }

  BoolPtr bor() {
    BoolPtr b = band();
    while (s.eat_ident("or")) b = b_or(b, band());
    return b;
  }

  CommandPtr stmt() {
    if (s.eat_ident("skip")) return c_skip();
    if (s.is_ident("dispose") && s.is_sym("(", 1)) {
      s.next();
      s.next();
      std::string v = var_name();
      s.expect_sym(")");
      return c_dispose(v);
    }
    if (s.is_ident("assume") && s.is_sym("(", 1)) {
      s.next();
      s.next();
      BoolPtr b = bor();
      s.expect_sym(")");
      return c_assume(b);
    }
    if (s.eat_ident("if")) {
      BoolPtr b = bor();
      s.expect_ident("then");
      s.expect_sym("{");
      CommandPtr thenc = seq();
      s.expect_sym("}");
      if (s.eat_ident("else")) {
        s.expect_sym("{");
        CommandPtr elsec = seq();
        s.expect_sym("}");
        return c_if_else(b, thenc, elsec);
      }
      return c_if(b, thenc);
    }
    std::string v = var_name();
    if (s.eat_sym(".")) {
      std::string f = s.expect_name("a field");
      if (!vocab.is_field(f)) s.fail("unknown field " + f);
      s.expect_sym(":=");
      return c_field_assign(v, f, expr());
    }
    s.expect_sym(":=");
    if (s.eat_ident("new")) return c_new(v);
    return c_assign(v, expr());
  }

  CommandPtr seq() {
    if (s.is_sym("}") || s.peek().kind == Token::Kind::End) return c_skip();  // empty block
    std::vector<CommandPtr> cs;
    cs.push_back(stmt());
    while (s.eat_sym(";")) {
      if (s.is_sym("}") || s.peek().kind == Token::Kind::End) break;  // trailing ;
      cs.push_back(stmt());
    }
    return c_seq(cs);
  }
};

// ---- labeling ----------------------------------------------------------------

struct Labeler {
  const Vocabulary& vocab;
  int counter = 1;

  std::string fresh() {
    std::string name;
    do {
      name = "y" + std::to_string(counter++);
    } while (vocab.has_const(name));
    return name;
  }

  CommandPtr go(const CommandPtr& c) {
    switch (c->kind) {
      case Command::Kind::Seq: {
        auto a = go(c->s1), b = go(c->s2);
        return a == c->s1 && b == c->s2 ? c : c_seq(a, b);
      }
      case Command::Kind::IfThen: {
        auto a = go(c->s1);
        return a == c->s1 ? c : c_if(c->cond, a);
      }
      case Command::Kind::IfThenElse: {
        auto a = go(c->s1), b = go(c->s2);
        return a == c->s1 && b == c->s2 ? c : c_if_else(c->cond, a, b);
      }
      case Command::Kind::New:
        return c->label.empty() ? with_label(c, fresh()) : c;
      case Command::Kind::Assign:
        if (c->expr.kind == Expr::Kind::Field && c->label.empty())
          return with_label(c, fresh());
        return c;
      default:
        return c;
    }
  }
};

}  // namespace

CommandPtr label_commands(const CommandPtr& c, const Vocabulary& vocab) {
  Labeler l{vocab};
  return l.go(c);
}

LFormulaPtr parse_lformula(const std::string& text, const Vocabulary& vocab,
                           const std::map<std::string, LFormulaPtr>* named,
                           const NameResolver& resolve) {
  Lexer lex(text);
  Stream s{lex.tokens};
  LParser p{s, vocab, named, resolve};
  LFormulaPtr f = p.formula();
  if (s.peek().kind != Token::Kind::End) s.fail("trailing input after formula");
  return f;
}

SlFormula parse_sl(const std::string& text, const Vocabulary& vocab) {
  Lexer lex(text);
  Stream s{lex.tokens};
  SlParser p{s, vocab};
  SlFormula f = p.parse();
  if (s.peek().kind != Token::Kind::End) s.fail("trailing input after assertion");
  return f;
}

CommandPtr parse_command(const std::string& text, const Vocabulary& vocab) {
  Lexer lex(text);
  Stream s{lex.tokens};
  ProgParser p{s, vocab};
  CommandPtr c = p.seq();
  if (s.peek().kind != Token::Kind::End) s.fail("trailing input after command");
  return c;
}

// ---- annotation files -----------------------------------------------------------

namespace {

struct RawLoc {
  std::string name;
  bool init = false;
  std::pair<size_t, size_t> shp_range, cnt_range;
  int line = 0;
};

struct RawEdge {
  std::string from, to;
  std::pair<size_t, size_t> code_range;
  int line = 0;
};

struct RawFormula {
  std::string name;
  std::pair<size_t, size_t> range;
};

// Collects a token range up to the next top-level occurrence of `stop`,
// respecting nesting of (), [], {}.
std::pair<size_t, size_t> span_until(Stream& s, const std::string& stop) {
  size_t begin = s.at;
  int depth = 0;
  while (true) {
    const Token& t = s.peek();
    if (t.kind == Token::Kind::End) s.fail("unexpected end of file (missing '" + stop + "')");
    if (t.kind == Token::Kind::Symbol) {
      if (depth == 0 && t.text == stop) break;
      if (t.text == "(" || t.text == "[" || t.text == "{")
        ++depth;
      else if (t.text == ")" || t.text == "]" || t.text == "}")
        --depth;
    }
    s.next();
  }
  size_t end = s.at;
  s.next();  // consume stop
  return {begin, end};
}

std::vector<Token> slice(const std::vector<Token>& toks, std::pair<size_t, size_t> range) {
  std::vector<Token> out(toks.begin() + range.first, toks.begin() + range.second);
  Token end{Token::Kind::End, "", out.empty() ? 0 : out.back().line, 0};
  out.push_back(end);
  return out;
}

bool is_placeholder(const std::string& n) {
  if (n.size() < 2 || n[0] != 'P') return false;
  for (size_t i = 1; i < n.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(n[i]))) return false;
  return true;
}

}  // namespace

ProgramGraph parse_program(const std::string& text) {
  Lexer lex(text);
  Stream s{lex.tokens};
  ProgramGraph g;
  std::vector<RawLoc> raw_locs;
  std::vector<RawEdge> raw_edges;
  std::vector<RawFormula> raw_formulas;

  auto name_list = [&](auto&& declare) {
    while (true) {
      std::string n = s.expect_name("a name");
      declare(n);
      if (s.eat_sym(",")) continue;
      break;
    }
    s.expect_sym(";");
  };

  while (s.peek().kind != Token::Kind::End) {
    if (s.eat_ident("fields")) {
      name_list([&](const std::string& n) { g.vocab.declare_field(n); });
    } else if (s.eat_ident("vars")) {
      name_list([&](const std::string& n) { g.vocab.declare_var(n); });
    } else if (s.eat_ident("concepts")) {
      name_list([&](const std::string& n) { g.vocab.declare_concept(n); });
    } else if (s.eat_ident("roles")) {
      name_list([&](const std::string& n) { g.vocab.declare_role(n); });
    } else if (s.eat_ident("ghost")) {
      name_list([&](const std::string& n) { g.vocab.declare_ghost(n); });
    } else if (s.eat_ident("options")) {
      s.expect_sym("{");
      while (!s.eat_sym("}")) {
        std::string key = s.expect_name("an option name");
        s.expect_sym(":");
        if (s.peek().kind != Token::Kind::Number && s.peek().kind != Token::Kind::Ident)
          s.fail("expected an option value");
        g.options[key] = s.next().text;
        s.expect_sym(";");
      }
    } else if (s.eat_ident("formula")) {
      RawFormula rf;
      rf.name = s.expect_name("a formula name");
      if (g.vocab.has_const(rf.name) || g.vocab.has_unary(rf.name) ||
          g.vocab.has_binary(rf.name))
        s.fail("formula name collides with a declared symbol: " + rf.name);
      s.expect_sym("=");
      rf.range = span_until(s, ";");
      raw_formulas.push_back(rf);
    } else if (s.eat_ident("loc")) {
      RawLoc rl;
      rl.line = s.peek().line;
      rl.name = s.expect_name("a location name");
      rl.init = s.eat_ident("init");
      s.expect_sym("{");
      bool saw_shp = false, saw_cnt = false;
      while (!s.eat_sym("}")) {
        if (s.eat_ident("shp")) {
          s.expect_sym(":");
          rl.shp_range = span_until(s, ";");
          saw_shp = true;
        } else if (s.eat_ident("cnt")) {
          s.expect_sym(":");
          rl.cnt_range = span_until(s, ";");
          saw_cnt = true;
        } else {
          s.fail("expected shp: or cnt: in a location block");
        }
      }
      if (!saw_shp || !saw_cnt) s.fail("location " + rl.name + " needs both shp: and cnt:");
      raw_locs.push_back(rl);
    } else if (s.eat_ident("edge")) {
      RawEdge re;
      re.line = s.peek().line;
      re.from = s.expect_name("a source location");
      s.expect_sym("->");
      re.to = s.expect_name("a target location");
      s.expect_sym("{");
      re.code_range = span_until(s, "}");
      raw_edges.push_back(re);
    } else {
      s.fail("expected a declaration, formula, loc or edge block");
    }
  }

  // Locations: shapes now, partitions declared, contents later.
  std::set<std::string> loc_names;
  for (const auto& rl : raw_locs) {
    if (!loc_names.insert(rl.name).second)
      throw ParseError("line " + std::to_string(rl.line) + ": duplicate location " + rl.name);
    GraphLocation loc;
    loc.name = rl.name;
    auto shp_toks = slice(lex.tokens, rl.shp_range);
    Stream shp_s{shp_toks};
    SlParser sp{shp_s, g.vocab};
    loc.shape = sp.parse();
    if (shp_s.peek().kind != Token::Kind::End) shp_s.fail("trailing input in shp:");
    loc.partitions = partition_names(rl.name, loc.shape.chunks.size());
    for (const auto& p : loc.partitions) g.vocab.declare_partition_concept(p);
    if (rl.init) {
      if (!g.init.empty())
        throw ParseError("line " + std::to_string(rl.line) + ": two init locations");
      g.init = rl.name;
    }
    g.locations.push_back(std::move(loc));
  }
  if (g.locations.empty()) throw ParseError("no locations declared");
  if (g.init.empty()) throw ParseError("no init location declared");

  // Named formulas, in order; placeholders stay unresolved.
  for (const auto& rf : raw_formulas) {
    auto toks = slice(lex.tokens, rf.range);
    Stream fs{toks};
    NameResolver placeholder = [](const std::string& n) -> ConceptPtr {
      return is_placeholder(n) ? atomic_concept(n) : nullptr;
    };
    LParser lp{fs, g.vocab, &g.formulas, placeholder};
    LFormulaPtr f = lp.formula();
    if (fs.peek().kind != Token::Kind::End) fs.fail("trailing input in formula " + rf.name);
    g.formulas[rf.name] = f;
  }

  // Contents, with per-location placeholder resolution.
  for (size_t i = 0; i < raw_locs.size(); ++i) {
    GraphLocation& loc = g.locations[i];
    auto toks = slice(lex.tokens, raw_locs[i].cnt_range);
    Stream cs{toks};
    NameResolver resolve_here = [&](const std::string& n) -> ConceptPtr {
      if (!is_placeholder(n)) return nullptr;
      size_t idx = std::stoul(n.substr(1));
      if (idx == 0 || idx > loc.partitions.size())
        throw ParseError("location " + loc.name + " has no chunk " + n);
      return atomic_concept(loc.partitions[idx - 1]);
    };
    LParser lp{cs, g.vocab, &g.formulas, resolve_here};
    LFormulaPtr f = lp.formula();
    if (cs.peek().kind != Token::Kind::End) cs.fail("trailing input in cnt: of " + loc.name);
    // Spliced named formulas may carry placeholders: resolve them here too.
    Substitution sub;
    for (size_t k = 1; k <= loc.partitions.size(); ++k)
      sub.concepts["P" + std::to_string(k)] = atomic_concept(loc.partitions[k - 1]);
    loc.content = substitute(f, sub);
    SymbolUse use;
    collect_symbols(loc.content, use);
    for (const auto& n : use.concepts)
      if (is_placeholder(n))
        throw ParseError("cnt: of " + loc.name + " references missing chunk " + n);
    for (const auto& n : use.concepts)
      if (n == names::kMemPool || n == names::kPossibleTargets)
        throw ParseError("annotations may not mention " + n);
  }

  // Edges: parse, desugar, label.
  std::set<std::pair<std::string, std::string>> seen_edges;
  for (const auto& re : raw_edges) {
    if (!loc_names.count(re.from) || !loc_names.count(re.to))
      throw ParseError("line " + std::to_string(re.line) + ": edge between unknown locations " +
                       re.from + " -> " + re.to);
    if (!seen_edges.insert({re.from, re.to}).second)
      throw ParseError("line " + std::to_string(re.line) + ": duplicate edge " + re.from +
                       " -> " + re.to);
    if (re.to == g.init)
      throw ParseError("line " + std::to_string(re.line) +
                       ": the init location cannot have incoming edges");
    auto toks = slice(lex.tokens, re.code_range);
    Stream es{toks};
    ProgParser pp{es, g.vocab};
    CommandPtr code = pp.seq();
    if (es.peek().kind != Token::Kind::End) es.fail("trailing input in edge code");
    std::vector<std::string> fresh;
    code = desugar(code, fresh);
    for (const auto& v : fresh) g.vocab.declare_var(v);
    code = label_commands(code, g.vocab);
    g.edges.push_back({re.from, re.to, code});
  }

  return g;
}

// ---- pretty printing --------------------------------------------------------------

namespace {
void print_names(std::ostream& os, const std::string& kw, const std::vector<std::string>& ns) {
  if (ns.empty()) return;
  os << kw << " ";
  for (size_t i = 0; i < ns.size(); ++i) os << (i ? ", " : "") << ns[i];
  os << ";\n";
}
}  // namespace

std::string to_text(const ProgramGraph& g) {
  std::ostringstream os;
  print_names(os, "fields", g.vocab.fields());
  print_names(os, "vars", g.vocab.vars());
  std::vector<std::string> concepts, roles;
  for (const auto& u : g.vocab.unary_order())
    if (!Vocabulary::is_required_unary(u) && !g.vocab.is_ghost(u) && !g.vocab.is_ext(u) &&
        !g.vocab.is_partition_concept(u))
      concepts.push_back(u);
  for (const auto& b : g.vocab.binary_order())
    if (!g.vocab.is_field(b) && !g.vocab.is_ghost(b) && !g.vocab.is_ext(b)) roles.push_back(b);
  print_names(os, "concepts", concepts);
  print_names(os, "roles", roles);
  print_names(os, "ghost", g.vocab.ghost_decl_order());
  if (!g.options.empty()) {
    os << "options {";
    for (const auto& [k, v] : g.options) os << " " << k << ": " << v << ";";
    os << " }\n";
  }
  for (const auto& [name, f] : g.formulas)
    os << "formula " << name << " = " << to_text(f) << ";\n";
  for (const auto& loc : g.locations) {
    os << "loc " << loc.name << (loc.name == g.init ? " init" : "") << " {\n";
    os << "  shp: " << to_text(loc.shape) << ";\n";
    os << "  cnt: " << to_text(loc.content) << ";\n";
    os << "}\n";
  }
  for (const auto& e : g.edges)
    os << "edge " << e.from << " -> " << e.to << " { " << to_text(e.code) << " }\n";
  return os.str();
}

}  // namespace scv
