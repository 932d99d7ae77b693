// Command-line front end: verify / interpret / translate / wp / validate.
// Exit codes: 0 = verified (or success), 1 = refuted/invalid, 2 = inconclusive,
// 3 = usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "scv/parser.hpp"
#include "scv/structure_io.hpp"
#include "scv/translate.hpp"
#include "scv/verify.hpp"
#include "scv/wp.hpp"

using nlohmann::ordered_json;
using namespace scv;

namespace {

struct Args {
  std::string mode;
  std::string file;
  std::map<std::string, std::string> flags;
  bool has(const std::string& f) const { return flags.count(f) != 0; }
  std::string get(const std::string& f, const std::string& dflt = "") const {
    auto it = flags.find(f);
    return it == flags.end() ? dflt : it->second;
  }
  int get_int(const std::string& f, int dflt) const {
    auto it = flags.find(f);
    return it == flags.end() ? dflt : std::stoi(it->second);
  }
};

const char* kUsage =
    "usage: scv <mode> <file> [flags]\n"
    "modes:\n"
    "  verify <prog.sv>     discharge every edge's verification condition\n"
    "  interpret <prog.sv>  run a path on a structure file\n"
    "  translate <prog.sv>  emit the DL / first-order images of the annotations\n"
    "  wp <prog.sv>         emit the backwards transformer image of a formula\n"
    "  validate <s.json>    check a structure file against the memory model\n"
    "flags:\n"
    "  --bound N        search bound on universe size (default 6)\n"
    "  --reserve K      pool reserve for interpretation (default 4)\n"
    "  --jobs J         discharge edges concurrently (default 1)\n"
    "  --seed S         decision-order jitter for the search (default 0)\n"
    "  --json | --text  report format for verify (default text)\n"
    "  --structure F    interpret: initial structure file\n"
    "  --path \"a->b b->c\"  interpret: edge sequence\n"
    "  --edge a:b       wp: the edge whose code is transformed\n"
    "  --formula X      wp/translate: @name or a formula in the DL syntax\n"
    "  --loc L          translate: restrict to one location / resolve P<i>\n"
    "  --find-model N   translate: search for a model of --formula\n";

Args parse_args(int argc, char** argv) {
  Args a;
  if (argc < 3) throw ParseError("missing mode or file");
  a.mode = argv[1];
  a.file = argv[2];
  for (int i = 3; i < argc; ++i) {
    std::string f = argv[i];
    if (f.rfind("--", 0) != 0) throw ParseError("unexpected argument " + f);
    f = f.substr(2);
    if (f == "json" || f == "text") {
      a.flags[f] = "1";
    } else {
      if (i + 1 >= argc) throw ParseError("flag --" + f + " needs a value");
      a.flags[f] = argv[++i];
    }
  }
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LFormulaPtr formula_from_flag(const ProgramGraph& g, const std::string& spec,
                              const GraphLocation* context) {
  NameResolver resolve = nullptr;
  if (context) {
    const GraphLocation* loc = context;
    resolve = [loc](const std::string& n) -> ConceptPtr {
      if (n.size() >= 2 && n[0] == 'P') {
        bool digits = true;
        for (size_t i = 1; i < n.size(); ++i)
          digits = digits && std::isdigit(static_cast<unsigned char>(n[i]));
        if (digits) {
          size_t idx = std::stoul(n.substr(1));
          if (idx >= 1 && idx <= loc->partitions.size())
            return atomic_concept(loc->partitions[idx - 1]);
        }
      }
      return nullptr;
    };
  }
  LFormulaPtr f = parse_lformula(spec, g.vocab, &g.formulas, resolve);
  if (context) {
    Substitution sub;
    for (size_t k = 1; k <= context->partitions.size(); ++k)
      sub.concepts["P" + std::to_string(k)] = atomic_concept(context->partitions[k - 1]);
    f = substitute(f, sub);
  }
  return f;
}

ordered_json witness_json(const Verdict& v) {
  ordered_json w;
  w["size"] = v.found_size;
  w["poolPadded"] = v.pool_padded;
  w["structure"] = ordered_json::parse(store_structure(*v.witness));
  return w;
}

int do_verify(const Args& args) {
  ProgramGraph g = parse_program(read_file(args.file));
  int bound = args.get_int("bound", std::stoi(g.options.count("bound") ? g.options.at("bound")
                                                                       : "6"));
  int jobs = args.get_int("jobs", 1);
  SearchOptions opts;
  opts.seed = static_cast<unsigned>(args.get_int("seed", 0));

  ProgramReport report;
  bool inconclusive = false;
  std::string inconclusive_msg;
  try {
    report = check_program(g, bound, jobs, opts);
  } catch (const InconclusiveError& e) {
    inconclusive = true;
    inconclusive_msg = e.what();
  }

  if (inconclusive) {
    std::cerr << "inconclusive: " << inconclusive_msg << "\n";
    return 2;
  }

  ordered_json j;
  j["program"] = args.file;
  j["bound"] = bound;
  ordered_json edges = ordered_json::array();
  for (const auto& er : report.edges) {
    ordered_json e;
    e["edge"] = er.from + "->" + er.to;
    e["verdict"] = er.verdict.counterexample ? "counterexample" : "no_counterexample";
    e["bound"] = bound;
    if (er.verdict.counterexample) {
      e["witness"] = witness_json(er.verdict);
      e["classification"] = er.classification;
    }
    e["timeMs"] = er.time_ms;
    edges.push_back(e);
  }
  j["edges"] = edges;
  j["overall"] = report.verified ? "VERIFIED" : "REFUTED";

  if (args.has("json")) {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& er : report.edges) {
      std::cout << er.from << " -> " << er.to << ": "
                << (er.verdict.counterexample
                        ? "counterexample at size " + std::to_string(er.verdict.found_size) +
                              " (" + er.classification + ")"
                        : "no counterexample up to " + std::to_string(bound))
                << "  [" << static_cast<int>(er.time_ms) << " ms]\n";
      if (er.verdict.counterexample)
        std::cout << store_structure(*er.verdict.witness) << "\n";
    }
    std::cout << (report.verified ? "VERIFIED" : "REFUTED") << " (bound " << bound << ")\n";
  }
  return report.verified ? 0 : 1;
}

int do_interpret(const Args& args) {
  ProgramGraph g = parse_program(read_file(args.file));
  if (!args.has("structure")) throw ParseError("interpret needs --structure");
  MemoryStructure m = load_structure_file(args.get("structure"), g.vocab);
  std::vector<const GraphEdge*> path;
  std::istringstream ps(args.get("path"));
  std::string step;
  while (ps >> step) {
    auto arrow = step.find("->");
    if (arrow == std::string::npos) throw ParseError("path steps look like from->to");
    path.push_back(&g.edge(step.substr(0, arrow), step.substr(arrow + 2)));
  }
  RunOutcome out = run_path(g, path, m);
  switch (out.kind) {
    case RunOutcome::Kind::Ok:
      std::cout << store_structure(out.result) << "\n";
      return 0;
    case RunOutcome::Kind::Abort:
      std::cout << "abort\n";
      return 0;
    case RunOutcome::Kind::OutOfReserve:
      std::cout << "out-of-reserve\n";
      return 2;
  }
  return 3;
}

int do_translate(const Args& args) {
  ProgramGraph g = parse_program(read_file(args.file));
  std::string only_loc = args.get("loc");

  if (args.has("formula")) {
    const GraphLocation* ctx = nullptr;
    if (!only_loc.empty()) ctx = &g.location(only_loc);
    LFormulaPtr f = formula_from_flag(g, args.get("formula"), ctx);
    std::cout << "dl: " << to_text(f) << "\n";
    std::cout << "fo2: " << to_text(to_fo2(f)) << "\n";
    if (args.has("find-model")) {
      int bound = args.get_int("find-model", 6);
      SearchOptions opts;
      opts.seed = static_cast<unsigned>(args.get_int("seed", 0));
      SymbolUse use;
      collect_symbols(f, use);
      std::set<std::string> keep;
      keep.insert(use.consts.begin(), use.consts.end());
      keep.insert(use.concepts.begin(), use.concepts.end());
      keep.insert(use.roles.begin(), use.roles.end());
      Verdict v = find_model(Ct2Formula{fo_true(), {}}, {f}, g.vocab.restrict_to(keep), bound,
                             opts);
      if (v.counterexample) {
        std::cout << "model found at size " << v.found_size << ":\n"
                  << store_structure(*v.witness) << "\n";
        return 0;
      }
      std::cout << "no model up to size " << bound << "\n";
      return 1;
    }
    return 0;
  }

  for (const auto& loc : g.locations) {
    if (!only_loc.empty() && loc.name != only_loc) continue;
    std::cout << "loc " << loc.name << "\n";
    std::cout << "  shp: " << to_text(loc.shape) << "\n";
    ShapeDl a = shape_to_dl(loc.shape, loc.partitions, g.vocab);
    std::cout << "  dl(shp): " << to_text(a.formula) << "\n";
    Ct2Formula b = shape_to_ct2(loc.shape, loc.partitions, g.vocab);
    std::cout << "  ct2(shp): " << to_text(b) << "\n";
    std::cout << "  cnt: " << to_text(loc.content) << "\n";
    std::cout << "  fo2(cnt): " << to_text(to_fo2(loc.content)) << "\n";
  }
  return 0;
}

int do_wp(const Args& args) {
  ProgramGraph g = parse_program(read_file(args.file));
  std::string espec = args.get("edge");
  auto colon = espec.find(':');
  if (colon == std::string::npos) throw ParseError("wp needs --edge from:to");
  const GraphEdge& e = g.edge(espec.substr(0, colon), espec.substr(colon + 1));
  if (!args.has("formula")) throw ParseError("wp needs --formula");
  LFormulaPtr f = formula_from_flag(g, args.get("formula"), &g.location(e.to));
  WpResult wr = wp_transform(e.code, f, g.vocab.with_ext());
  std::cout << to_text(wr.formula) << "\n";
  return 0;
}

int do_validate(const Args& args) {
  // Structure files are validated against the vocabulary of a program file
  // when one is supplied; otherwise against their own symbols.
  Vocabulary vocab;
  if (args.has("program")) {
    vocab = parse_program(read_file(args.get("program"))).vocab;
  } else {
    // Infer vocabulary from the file: every binary symbol is a field.
    ordered_json j = ordered_json::parse(read_file(args.file), nullptr, true, true);
    if (j.contains("constants"))
      for (auto& [name, v] : j["constants"].items()) {
        (void)v;
        if (!Vocabulary::is_required_const(name)) vocab.declare_var(name);
      }
    if (j.contains("unary"))
      for (auto& [name, v] : j["unary"].items()) {
        (void)v;
        if (!Vocabulary::is_required_unary(name)) vocab.declare_concept(name);
      }
    if (j.contains("binary"))
      for (auto& [name, v] : j["binary"].items()) {
        (void)v;
        vocab.declare_field(name);
      }
  }
  try {
    load_structure(read_file(args.file), vocab);
  } catch (const ParseError& e) {
    std::cout << e.what() << "\n";
    return 1;
  }
  std::cout << "valid\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    Args args = parse_args(argc, argv);
    if (args.mode == "verify") return do_verify(args);
    if (args.mode == "interpret") return do_interpret(args);
    if (args.mode == "translate") return do_translate(args);
    if (args.mode == "wp") return do_wp(args);
    if (args.mode == "validate") return do_validate(args);
    throw ParseError("unknown mode " + args.mode);
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n" << kUsage;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
