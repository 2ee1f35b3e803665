// cayclique: command-line front end.
//
// Exit status: 0 success, 1 verification failure, 2 parse or usage error,
// 3 search budget or size cap exhausted, 4 small instance without --allow-small.
// Results go to standard output only when the command succeeds.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cayclique/cayley.hpp"
#include "cayclique/cayley_io.hpp"
#include "cayclique/codes.hpp"
#include "cayclique/ensemble.hpp"
#include "cayclique/graph_io.hpp"
#include "cayclique/reduce.hpp"

namespace fs = std::filesystem;
using namespace cayclique;

namespace {

struct Config {
  unsigned p = 2;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t max_nodes = SearchBudget{}.max_nodes;
  std::uint64_t max_vertices = kDefaultMaterializeCap;
  bool deterministic = false;
  std::string output_dir = ".";

  std::string input;
  std::string what = "clique";
  bool allow_small = false;
  std::size_t omega_q = 0;
  std::string spec_file;
  std::size_t level = 1;
  std::string group_file;
  std::optional<std::uint32_t> h;
  std::string suite;
  std::size_t v = 0;
  std::string code_file;
  std::string graph_file;
  std::size_t count = 50;

  SearchBudget budget() const { return SearchBudget{max_nodes}; }
};

class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Either a DIMACS graph or a Cayley spec, by the first content line.
struct Input {
  std::optional<Graph> graph;
  std::optional<CayleySpec> spec;
};

Input load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line == "c" || line.rfind("c ", 0) == 0) continue;
    break;
  }
  Input out;
  if (line.rfind("cayley", 0) == 0)
    out.spec = load_spec(path);
  else
    out.graph = load_dimacs(path);
  return out;
}

Graph load_graph(const std::string& path) {
  auto in = load_input(path);
  if (!in.graph) throw ParseError(path + ": expected a DIMACS graph");
  return *in.graph;
}

CayleySpec load_spec_file(const std::string& path) {
  auto in = load_input(path);
  if (!in.spec) throw ParseError(path + ": expected a cayley spec");
  return *in.spec;
}

LinearCode load_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  auto code = read_code(in);
  if (!code.distance_cert()) try_certify(code, std::uint64_t{1} << 22);
  return code;
}

void check_prime(unsigned p) {
  if (!is_prime(p)) throw ParseError("--p must be prime");
}

fs::path output_path(const Config& cfg, const std::string& name) {
  fs::create_directories(cfg.output_dir);
  return fs::path(cfg.output_dir) / name;
}

template <class T, class Write, class Read>
void write_checked(const fs::path& path, const T& value, Write write, Read read) {
  {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write(out, value);
  }
  std::ifstream back(path);
  if (!(read(back) == value)) throw std::logic_error("round trip failed for " + path.string());
}

void write_spec_checked(const fs::path& path, const CayleySpec& spec) {
  const auto table = spec.group().table();
  write_checked(path, spec, [](std::ostream& o, const CayleySpec& s) { write_spec(o, s); },
                [&](std::istream& i) { return read_spec(i, path.parent_path(), table); });
}

void write_code_checked(const fs::path& path, const LinearCode& code) {
  {
    std::ofstream out(path);
    write_code(out, code);
  }
  std::ifstream back(path);
  if (to_text(read_code(back)) != to_text(code)) throw std::logic_error("round trip failed for " + path.string());
}

std::string join(const std::vector<Vertex>& vs, int offset = 0) {
  std::string s;
  for (auto v : vs) s += (s.empty() ? "" : " ") + std::to_string(v + offset);
  return s;
}

std::string element_text(const Element& e) {
  std::string s;
  for (auto x : e) s += std::to_string(x);
  return s;
}

// ---------------------------------------------------------------------------

void cmd_solve(const Config& cfg, std::ostream& out) {
  auto in = load_input(cfg.input);
  if (cfg.what == "clique" && in.spec) {
    const auto r = cayley_clique(*in.spec, cfg.budget());
    out << "omega=" << r.size << '\n' << "witness=";
    for (std::size_t i = 0; i < r.witness.size(); ++i) out << (i ? " " : "") << element_text(r.witness[i]);
    out << '\n';
    return;
  }
  const Graph g = in.graph ? *in.graph : materialize(*in.spec, cfg.max_vertices);
  if (cfg.what == "clique") {
    const auto r = max_clique(g, cfg.budget());
    out << "omega=" << r.size << '\n' << "witness=" << join(r.witness, 1) << '\n';
  } else if (cfg.what == "chroma") {
    const auto r = chromatic_number(g, cfg.budget());
    out << "chi=" << r.colors << '\n' << "coloring=";
    for (std::size_t i = 0; i < r.coloring.size(); ++i) out << (i ? " " : "") << r.coloring[i];
    out << '\n';
  } else if (cfg.what == "alpha") {
    const auto r = max_independent_set(g, cfg.budget());
    out << "alpha=" << r.size << '\n' << "witness=" << join(r.witness, 1) << '\n';
  } else {
    throw ParseError("--what must be clique, chroma or alpha");
  }
}

void cmd_reduce(const Config& cfg, std::ostream& out) {
  check_prime(cfg.p);
  const auto x = load_graph(cfg.input);
  const bool small = x.order() < std::size_t{cfg.p} * cfg.p;
  if (small && !cfg.allow_small)
    throw SmallInstance("v=" + std::to_string(x.order()) + " < p^2; use --allow-small or solve directly");
  const auto r = small ? reduce_small(x, cfg.p, true, cfg.budget()) : reduce_clique(x, cfg.p, true, cfg.budget());
  const auto stem = fs::path(cfg.input).stem().string();
  const auto spec_path = output_path(cfg, stem + ".spec");
  const auto code_path = output_path(cfg, stem + ".code");
  const auto report_path = output_path(cfg, stem + ".report");
  write_spec_checked(spec_path, r.quotient->spec);
  write_code_checked(code_path, *r.code);
  const auto report = to_text(r, cfg.deterministic);
  std::ofstream(report_path) << report;
  out << report << "spec_file=" << spec_path.string() << '\n'
      << "code_file=" << code_path.string() << '\n'
      << "report_file=" << report_path.string() << '\n';
}

void cmd_recover(const Config& cfg, std::ostream& out) {
  check_prime(cfg.p);
  const auto x = load_graph(cfg.input);
  std::size_t omega_q = cfg.omega_q;
  if (!cfg.spec_file.empty()) omega_q = cayley_clique_number(load_spec_file(cfg.spec_file), cfg.budget());
  if (omega_q == 0) throw ParseError("recover needs --omega-q or --spec");
  const auto r = recover_omega(omega_q, cfg.p, x);
  out << "omega_quotient=" << omega_q << '\n' << "omega=" << r.omega << '\n' << "caveat_path=" << to_string(r.path) << '\n';
}

void cmd_gadget(const Config& cfg, std::ostream& out) {
  const auto base = load_spec_file(cfg.input);
  const auto g = gadget(base, cfg.level);
  const auto path = output_path(cfg, fs::path(cfg.input).stem().string() + ".gadget" + std::to_string(cfg.level) + ".spec");
  write_spec_checked(path, g.spec);
  out << "level=" << cfg.level << '\n'
      << "rank=" << g.spec.group().rank() << '\n'
      << "degree=" << g.spec.degree() << '\n'
      << "spec_file=" << path.string() << '\n';
}

void cmd_approx(const Config& cfg, std::ostream& out) {
  check_prime(cfg.p);
  const auto x = load_graph(cfg.input);
  const auto budget = cfg.budget();
  const auto cap = cfg.max_vertices;
  const ColorabilityOracle oracle = [budget, cap](const CayleySpec& s, std::size_t k) {
    return cayley_colorability(s, k, budget, cap).colorable;
  };
  const auto r = approx_clique_driver(x, cfg.p, oracle);
  out << "rank=" << r.rank << '\n'
      << "y=" << r.y << '\n'
      << "bound=" << r.bound << '\n'
      << "bracket=[" << r.bound << "," << r.bracket_hi << ")\n"
      << "oracle_calls=" << r.oracle_calls << '\n'
      << "caveat=" << (r.caveat ? r.note : "none") << '\n';
}

void cmd_embed(const Config& cfg, std::ostream& out) {
  const auto x = load_graph(cfg.input);
  const auto r = embed_cubelike(x);
  const auto path = output_path(cfg, fs::path(cfg.input).stem().string() + ".cubelike.spec");
  write_spec_checked(path, r.quotient.spec);
  out << "m=" << r.m << '\n'
      << "padded=" << r.padded << '\n'
      << "code_k=" << r.code.k() << '\n'
      << "order=" << r.order << '\n'
      << "bound=" << r.bound << '\n'
      << "induced=" << (r.induced.ok ? "PASS" : "FAIL") << '\n';
  for (Vertex v = 0; v < r.embedding.size(); ++v) out << "vertex " << v + 1 << " -> " << element_text(r.embedding[v]) << '\n';
  out << "spec_file=" << path.string() << '\n';
}

void cmd_lift(const Config& cfg, std::ostream& out) {
  const auto spec = load_spec_file(cfg.input);
  if (cfg.group_file.empty()) throw ParseError("lift needs --group");
  const auto table = std::make_shared<const GroupTable>(load_group(cfg.group_file));
  const auto h = cfg.h ? *cfg.h : cauchy_element(*table, spec.group().p());
  const auto out_path = output_path(cfg, fs::path(cfg.input).stem().string() + ".lift.spec");
  const auto source = fs::relative(fs::absolute(cfg.group_file), fs::absolute(out_path.parent_path())).string();
  const auto lifted = lift_connection_set(spec, table, h, source);
  write_spec_checked(out_path, lifted);
  const auto r = verify_lift(spec, lifted, h, cfg.budget());
  out << "h=" << h << '\n'
      << "blocks=" << r.blocks << '\n'
      << "expected_blocks=" << r.expected_blocks << '\n'
      << "components=" << r.components << '\n'
      << "blocks_isomorphic=" << (r.blocks_isomorphic ? "true" : "false") << '\n'
      << "omega_input=" << r.omega_input << '\n'
      << "omega_lifted=" << r.omega_lifted << '\n'
      << "spec_file=" << out_path.string() << '\n';
  if (!r.ok()) throw VerificationFailed("lift verification failed");
}

// ---------------------------------------------------------------------------

struct SuiteResult {
  std::vector<std::string> lines;
  bool ok = true;
  void add(bool pass, const std::string& name, const std::string& counterexample = {}) {
    lines.push_back(std::string(pass ? "PASS " : "FAIL ") + name + (pass || counterexample.empty() ? "" : ": " + counterexample));
    ok = ok && pass;
  }
};

std::size_t ladder(std::size_t omega_x, Coeff p) {
  if (p == 2 && omega_x == 3) return 4;
  if (p == 3 && omega_x == 2) return 3;
  return omega_x;
}

void suite_sums(const Config& cfg, SuiteResult& res) {
  check_prime(cfg.p);
  if (cfg.v == 0) throw ParseError("--v is required");
  const auto r = check_sum_distinctness(cfg.v, cfg.p);
  std::string ce;
  if (!r.violations.empty()) ce = r.violations.front().kind;
  res.add(r.sidon, "sidon p=" + std::to_string(cfg.p) + " v=" + std::to_string(cfg.v), ce);
  res.add(r.sums, "sums p=" + std::to_string(cfg.p) + " v=" + std::to_string(cfg.v), ce);
}

void suite_distance_ladder(const Config& cfg, SuiteResult& res) {
  const auto code = load_code(cfg.code_file);
  const auto x = load_graph(cfg.graph_file.empty() ? cfg.input : cfg.graph_file);
  if (code.n() != x.order()) throw ParseError("code length differs from graph order");
  const Coeff p = code.p();
  const auto fc = free_cayley(x, p);
  const auto d = code.distance_cert() ? code.distance_cert()->to_string() : std::string("?");
  if (code.distance_at_least(3)) {
    bool coclique = true;
    std::string ce;
    const auto rows = code.basis();
    // Every codeword is a non-neighbour of 0, which suffices by translation.
    const auto group = fc.spec.group();
    std::vector<Element> words{group.identity()};
    for (const auto& row : rows) {
      const auto current = words;
      for (Coeff s = 1; s < p; ++s)
        for (const auto& w : current) {
          Element e = w;
          for (std::size_t i = 0; i < e.size(); ++i) e[i] = (e[i] + s * row[i]) % p;
          words.push_back(e);
        }
    }
    for (const auto& w : words)
      if (fc.spec.contains(w)) {
        coclique = false;
        ce = element_text(w);
        break;
      }
    res.add(coclique, "d>=3 code is a coclique (d=" + d + ")", ce);
  } else {
    res.add(true, "d>=3 not applicable (d=" + d + ")");
  }
  if (code.distance_at_least(5)) {
    const auto r = verify_induced_copy(quotient(fc, code));
    res.add(r.ok, "d>=5 induced copy of X", r.reason);
  } else {
    res.add(true, "d>=5 not applicable (d=" + d + ")");
  }
  if (code.distance_at_least(7)) {
    const auto q = cayley_clique_number(quotient(fc, code).spec, cfg.budget());
    const auto w = ladder(max_clique(x, cfg.budget()).size, p);
    res.add(q == w, "d>=7 omega preserved", "omega(quotient)=" + std::to_string(q) + " expected " + std::to_string(w));
  } else {
    res.add(true, "d>=7 not applicable (d=" + d + ")");
  }
}

void suite_cover(const Config& cfg, SuiteResult& res) {
  check_prime(cfg.p);
  const auto x = load_graph(cfg.graph_file.empty() ? cfg.input : cfg.graph_file);
  const auto r = cover_structure(x, cfg.p);
  res.add(r.ok, "Z_" + std::to_string(cfg.p) + "(X)[0] vs T(X): " + r.kind, r.cover.ok ? "matching" : "cover check");
}

void suite_ladder(const Config& cfg, SuiteResult& res) {
  check_prime(cfg.p);
  std::size_t bad = 0;
  std::string ce;
  for (const auto& x : graph_ensemble(cfg.count, 2, 8, cfg.seed)) {
    const auto w = max_clique(x, cfg.budget()).size;
    const auto q = cayley_clique_number(free_connection_set(x, cfg.p), cfg.budget());
    if (q != ladder(w, cfg.p) && bad++ == 0) ce = to_dimacs(x);
  }
  res.add(bad == 0, "omega ladder over " + std::to_string(cfg.count) + " graphs (seed " + std::to_string(cfg.seed) + ")", ce);
}

void suite_gadget(const Config& cfg, SuiteResult& res) {
  const auto base = load_spec_file(cfg.input);
  const auto omega = cayley_clique_number(base, cfg.budget());
  const auto n = base.group().rank();
  for (std::size_t i = 1; i <= n; ++i) {
    const auto g = materialize(gadget(base, i).spec, cfg.max_vertices);
    const auto pi = poly::ipow(base.group().p(), static_cast<unsigned>(i));
    const auto pn = poly::ipow(base.group().p(), static_cast<unsigned>(n));
    const auto alpha = max_independent_set(g, cfg.budget()).size;
    const auto chi = chromatic_number(g, cfg.budget()).colors;
    res.add(alpha == std::min<std::uint64_t>(pi, omega), "alpha(Gamma_" + std::to_string(i) + ")=min(p^i, omega)",
            "alpha=" + std::to_string(alpha));
    res.add((chi == pn) == (omega >= pi), "chi(Gamma_" + std::to_string(i) + ")=p^n iff omega>=p^i", "chi=" + std::to_string(chi));
  }
}

void cmd_verify(const Config& cfg, std::ostream& out) {
  SuiteResult res;
  if (cfg.suite == "sidon" || cfg.suite == "sums")
    suite_sums(cfg, res);
  else if (cfg.suite == "distance-ladder")
    suite_distance_ladder(cfg, res);
  else if (cfg.suite == "cover")
    suite_cover(cfg, res);
  else if (cfg.suite == "ladder")
    suite_ladder(cfg, res);
  else if (cfg.suite == "gadget")
    suite_gadget(cfg, res);
  else
    throw ParseError("unknown suite '" + cfg.suite + "' (sidon, distance-ladder, cover, ladder, gadget)");
  for (const auto& line : res.lines) out << line << '\n';
  if (!res.ok) {
    // Failure lines are the result of a verify run, so they are still shown.
    std::cout << out.rdbuf();
    throw VerificationFailed("verification failed");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley graph clique reductions"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--p", cfg.p, "prime")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for generated graph families")->capture_default_str();
  app.add_option("--max-nodes", cfg.max_nodes, "search node budget")->check(CLI::PositiveNumber);
  app.add_option("--max-vertices", cfg.max_vertices, "cap on materialized graph order")->check(CLI::PositiveNumber);
  app.add_flag("--deterministic", cfg.deterministic, "omit timings from reports");
  app.add_option("--output-dir", cfg.output_dir, "directory for written files")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "exact clique, chromatic or independence number");
  solve->add_option("--what", cfg.what, "clique | chroma | alpha")->capture_default_str();
  solve->add_option("input", cfg.input, "DIMACS graph or cayley spec")->required();

  auto* reduce = app.add_subcommand("reduce", "graph -> quotient Cayley spec, code and report");
  reduce->add_flag("--allow-small", cfg.allow_small, "emit the free spec when v < p^2");
  reduce->add_option("input", cfg.input, "DIMACS graph")->required();

  auto* recover = app.add_subcommand("recover", "omega(X) from the clique number of its quotient");
  recover->add_option("--omega-q", cfg.omega_q, "clique number of the quotient");
  recover->add_option("--spec", cfg.spec_file, "quotient spec to solve instead");
  recover->add_option("input", cfg.input, "DIMACS graph")->required();

  auto* gad = app.add_subcommand("gadget", "chromatic gadget Gamma_i of a spec");
  gad->add_option("--level", cfg.level, "level i")->capture_default_str();
  gad->add_option("input", cfg.input, "cayley spec over Z_p^n")->required();

  auto* approx = app.add_subcommand("approx", "y with p^y <= omega(Gamma) < p^(y+1)");
  approx->add_option("input", cfg.input, "DIMACS graph")->required();

  auto* embed = app.add_subcommand("embed", "cubelike graph with an induced copy");
  embed->add_option("input", cfg.input, "DIMACS graph")->required();

  auto* lift = app.add_subcommand("lift", "lift a spec over Z_p^m into G^m");
  lift->add_option("--group", cfg.group_file, "group table file")->required();
  lift->add_option("--element", cfg.h, "table index of an element of order p (default: first one)");
  lift->add_option("input", cfg.input, "cayley spec over Z_p^m")->required();

  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("--suite", cfg.suite, "sidon | distance-ladder | cover | ladder | gadget")->required();
  verify->add_option("--v", cfg.v, "number of generators (sidon)");
  verify->add_option("--code", cfg.code_file, "code file (distance-ladder)");
  verify->add_option("--graph", cfg.graph_file, "DIMACS graph");
  verify->add_option("--count", cfg.count, "ensemble size (ladder)")->capture_default_str();
  verify->add_option("input", cfg.input, "input file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ostringstream out;
  try {
    if (*solve) cmd_solve(cfg, out);
    if (*reduce) cmd_reduce(cfg, out);
    if (*recover) cmd_recover(cfg, out);
    if (*gad) cmd_gadget(cfg, out);
    if (*approx) cmd_approx(cfg, out);
    if (*embed) cmd_embed(cfg, out);
    if (*lift) cmd_lift(cfg, out);
    if (*verify) cmd_verify(cfg, out);
  } catch (const VerificationFailed& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const SmallInstance& e) {
    std::cerr << "small instance: " << e.what() << '\n';
    return 4;
  } catch (const BudgetExhausted& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const SizeCapExceeded& e) {
    std::cerr << "size cap: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cout << out.str();
  return 0;
}
