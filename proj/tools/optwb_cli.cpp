// optwb: command-line front end for evaluating and analysing OPT patterns and
// for running the tiling reduction end to end.
//
// Exit codes: 0 success (or no counterexample), 1 violated / witness not
// verified, 2 usage, parse or IO error, 3 no periodic tiling within bound.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "optwb/analysis.hpp"
#include "optwb/core.hpp"
#include "optwb/eval.hpp"
#include "optwb/json_io.hpp"
#include "optwb/pattern.hpp"
#include "optwb/reduction.hpp"
#include "optwb/tiling.hpp"

namespace fs = std::filesystem;
using namespace optwb;

namespace {

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kError = 2;
constexpr int kNoTiling = 3;

struct GlobalOptions {
  bool json = false;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
};

struct BudgetOptions {
  std::size_t max_triples = SearchBudget{}.max_triples;
  std::optional<std::size_t> max_fresh;
  std::uint64_t max_candidates = SearchBudget{}.max_candidates;

  SearchBudget budget() const {
    return SearchBudget{max_triples, max_fresh, max_candidates};
  }
};

struct TilingOptions {
  std::size_t max_period = kDefaultMaxPeriod;
  std::size_t max_n = kDefaultMaxSquare;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_file(const GlobalOptions& g, const std::string& name,
                       const std::string& content) {
  fs::create_directories(g.out_dir);
  const fs::path path = fs::path(g.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return path.string();
}

// Parse errors carry the offending file name.
template <typename F>
auto load(const std::string& path, F parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ":" + std::to_string(e.line()) + ":" +
                             std::to_string(e.column()) + ": " + e.what());
  } catch (const InstanceError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

Pattern load_pattern(const std::string& path) {
  return load(path, [](const std::string& t) { return parse_pattern(t); });
}

Graph load_graph(const std::string& path) {
  return load(path, [](const std::string& t) { return parse_graph(t); });
}

TilingInstance load_instance(const std::string& path) {
  return load(path, [](const std::string& t) { return parse_instance(t); });
}

PeriodicTiling load_tiling(const std::string& path) {
  return load(path, [](const std::string& t) { return parse_periodic_tiling(t); });
}

std::string pattern_file(const Pattern& p) { return to_string(p) + "\n"; }

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int run_eval(const GlobalOptions& g, const std::string& graph_path,
             const std::string& pattern_path) {
  const Graph graph = load_graph(graph_path);
  const Pattern pattern = load_pattern(pattern_path);
  const SolutionSet s = evaluate(pattern, graph);
  if (g.json) {
    print_json(solutions_to_json(s));
  } else {
    std::cout << solutions_to_text(s);
  }
  return kOk;
}

int run_classify(const GlobalOptions& g, const std::string& pattern_path) {
  const Pattern p = load_pattern(pattern_path);
  const bool wd = is_well_designed(p);
  const bool wwd = is_weakly_well_designed(p);
  if (g.json) {
    print_json({{"well_designed", wd}, {"weakly_well_designed", wwd}});
  } else {
    std::cout << "well_designed: " << (wd ? "true" : "false") << "\n"
              << "weakly_well_designed: " << (wwd ? "true" : "false") << "\n";
  }
  return kOk;
}

enum class Relation { Subsumes, Contains, Equivalent };

int run_relation(const GlobalOptions& g, Relation rel, const std::string& p_path,
                 const std::string& p2_path,
                 const std::optional<std::string>& graph_path,
                 const BudgetOptions& b, const std::optional<std::string>& resume) {
  const Pattern p = load_pattern(p_path);
  const Pattern p2 = load_pattern(p2_path);
  const SearchBudget budget = b.budget();

  Verdict v;
  if (graph_path) {
    const Graph graph = load_graph(*graph_path);
    switch (rel) {
      case Relation::Subsumes: v = check_subsumed_on(p, p2, graph); break;
      case Relation::Contains: v = check_contained_on(p, p2, graph); break;
      case Relation::Equivalent: v = check_equivalent_on(p, p2, graph); break;
    }
  } else {
    SearchOptions options;
    if (resume) {
      const auto sep = resume->find(':');
      if (sep == std::string::npos) {
        throw std::runtime_error("--resume expects TRIPLES:INDEX");
      }
      try {
        options.resume_from = EnumerationPosition{
            static_cast<std::size_t>(std::stoull(resume->substr(0, sep))),
            rank_from_string(resume->substr(sep + 1))};
      } catch (const std::exception&) {
        throw std::runtime_error("--resume expects TRIPLES:INDEX");
      }
    }
    switch (rel) {
      case Relation::Subsumes:
        v = find_subsumption_counterexample(p, p2, budget, options);
        break;
      case Relation::Contains:
        v = find_containment_counterexample(p, p2, budget, options);
        break;
      case Relation::Equivalent:
        v = find_equivalence_counterexample(p, p2, budget, options);
        break;
    }
  }

  nlohmann::json files = nlohmann::json::object();
  if (v.witness) {
    files["graph"] = write_file(g, "counterexample.nt",
                                serialize_graph(v.witness->graph));
    files["mapping"] = write_file(
        g, "counterexample.json", mapping_to_json(v.witness->mapping).dump(2) + "\n");
  }

  if (g.json) {
    nlohmann::json j = verdict_to_json(v, graph_path ? nullptr : &budget);
    if (!files.empty()) j["files"] = files;
    print_json(j);
  } else {
    std::cout << verdict_to_text(v);
    if (!graph_path && v.budget_exhausted) {
      std::cout << "resume: " << v.position.triples << ":"
                << rank_to_string(v.position.index) << "\n";
    }
    for (const auto& [kind, path] : files.items()) {
      std::cout << "wrote " << path.get<std::string>() << "\n";
    }
  }
  return v.status == VerdictStatus::Violated ? kViolated : kOk;
}

struct Reduction {
  std::string p_text;
  std::string p2_text;
};

Reduction reduce(const TilingInstance& inst) {
  return Reduction{pattern_file(build_p(inst)), pattern_file(build_p_prime(inst))};
}

int run_reduce(const GlobalOptions& g, const std::string& instance_path) {
  const TilingInstance inst = load_instance(instance_path);
  const Reduction r = reduce(inst);
  const TileNaming naming = name_tiles(inst);
  const nlohmann::json manifest = reduction_manifest(
      inst, naming, std::nullopt, {{"P.sp", r.p_text}, {"Pprime.sp", r.p2_text}});
  const std::string p_file = write_file(g, "P.sp", r.p_text);
  const std::string p2_file = write_file(g, "Pprime.sp", r.p2_text);
  const std::string m_file = write_file(g, "manifest.json", manifest.dump(2) + "\n");

  const std::size_t opts = build_p_prime(inst).opt_count();
  if (g.json) {
    print_json({{"files", {{"P", p_file}, {"Pprime", p2_file}, {"manifest", m_file}}},
                {"pprime_opt_nodes", opts},
                {"renamed_tiles", manifest["renamed_tiles"]}});
  } else {
    std::cout << "wrote " << p_file << "\nwrote " << p2_file << "\nwrote "
              << m_file << "\nPprime OPT nodes: " << opts << "\n";
    for (const auto& [from, to] : naming.renamed) {
      std::cout << "renamed tile " << from << " -> " << to << "\n";
    }
  }
  return kOk;
}

struct WitnessRun {
  int code = kOk;
  nlohmann::json report;
  std::optional<PeriodicTiling> tiling;
  std::map<std::string, std::string> files;  // name -> content
};

// Shared by `witness` and `pipeline`: obtains a periodic tiling, builds the
// witness pair and checks it against the generated patterns.
WitnessRun witness_for(const TilingInstance& inst,
                       const std::optional<std::string>& tiling_path,
                       const TilingOptions& t) {
  WitnessRun run;
  if (tiling_path) {
    run.tiling = load_tiling(*tiling_path);
    if (!verify_periodic(inst, *run.tiling)) {
      throw std::runtime_error(*tiling_path +
                               ": not a periodic tiling of the instance");
    }
  } else {
    run.tiling = find_periodic(inst, t.max_period, t.max_period);
  }
  if (!run.tiling) {
    run.code = kNoTiling;
    run.report = {{"periodic_tiling", nullptr},
                  {"max_period", t.max_period},
                  {"verified", nullptr}};
    return run;
  }
  const WitnessPair w = build_witness(inst, *run.tiling);
  const bool ok = verify_witness(build_p(inst), build_p_prime(inst), w);
  run.code = ok ? kOk : kViolated;
  run.files["G.nt"] = serialize_graph(w.graph);
  run.files["mu.json"] = mapping_to_json(w.mapping).dump(2) + "\n";
  run.report = {{"periodic_tiling", periodic_tiling_to_json(*run.tiling)},
                {"graph_triples", w.graph.size()},
                {"mapping", mapping_to_json(w.mapping)},
                {"verified", ok}};
  return run;
}

void print_witness_text(const WitnessRun& run) {
  if (!run.tiling) {
    std::cout << "no periodic tiling with periods <= "
              << run.report["max_period"].get<std::size_t>() << "\n";
    return;
  }
  std::cout << "periodic tiling " << run.tiling->p() << "x" << run.tiling->q()
            << "\n";
  for (const auto& row : run.tiling->grid.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::cout << (i ? " " : "") << row[i];
    }
    std::cout << "\n";
  }
  std::cout << "witness graph: " << run.report["graph_triples"].get<std::size_t>()
            << " triples\nmapping: "
            << to_string(mapping_from_json(run.report["mapping"])) << "\n"
            << "verified: " << (run.code == kOk ? "true" : "false") << "\n";
}

int run_witness(const GlobalOptions& g, const std::string& instance_path,
                const std::optional<std::string>& tiling_path,
                const TilingOptions& t) {
  const TilingInstance inst = load_instance(instance_path);
  WitnessRun run = witness_for(inst, tiling_path, t);
  nlohmann::json written = nlohmann::json::object();
  for (const auto& [name, content] : run.files) {
    written[name] = write_file(g, name, content);
  }
  if (g.json) {
    run.report["files"] = written;
    print_json(run.report);
  } else {
    print_witness_text(run);
    for (const auto& [name, path] : written.items()) {
      std::cout << "wrote " << path.get<std::string>() << "\n";
    }
  }
  return run.code;
}

int run_tile(const GlobalOptions& g, const std::string& instance_path,
             bool periodic, bool certify, const TilingOptions& t) {
  const TilingInstance inst = load_instance(instance_path);
  if (!periodic && !certify) periodic = certify = true;
  nlohmann::json report = nlohmann::json::object();
  std::ostringstream text;
  if (periodic) {
    auto pt = find_periodic(inst, t.max_period, t.max_period);
    report["periodic_tiling"] = pt ? periodic_tiling_to_json(*pt) : nlohmann::json();
    report["max_period"] = t.max_period;
    if (pt) {
      text << "periodic tiling " << pt->p() << "x" << pt->q() << "\n";
      for (const auto& row : pt->grid.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          text << (i ? " " : "") << row[i];
        }
        text << "\n";
      }
    } else {
      text << "no periodic tiling with periods <= " << t.max_period << "\n";
    }
  }
  if (certify) {
    auto n = certify_untileable(inst, t.max_n);
    report["untileable_square"] = n ? nlohmann::json(*n) : nlohmann::json();
    report["max_n"] = t.max_n;
    if (n) {
      text << "untileable: no " << *n << "x" << *n << " square can be tiled\n";
    } else {
      text << "no untileability certificate with n <= " << t.max_n << "\n";
    }
  }
  if (g.json) {
    print_json(report);
  } else {
    std::cout << text.str();
  }
  return kOk;
}

int run_pipeline(const GlobalOptions& g, const std::string& instance_path,
                 const TilingOptions& t) {
  const TilingInstance inst = load_instance(instance_path);
  const Reduction r = reduce(inst);
  WitnessRun run = witness_for(inst, std::nullopt, t);
  std::optional<std::size_t> certificate;
  if (!run.tiling) certificate = certify_untileable(inst, t.max_n);

  std::map<std::string, std::string> contents = run.files;
  contents["P.sp"] = r.p_text;
  contents["Pprime.sp"] = r.p2_text;
  if (run.tiling) {
    contents["tiling.json"] = periodic_tiling_to_json(*run.tiling).dump(2) + "\n";
  }
  const nlohmann::json manifest =
      reduction_manifest(inst, name_tiles(inst), run.tiling, contents);

  nlohmann::json written = nlohmann::json::object();
  for (const auto& [name, content] : contents) {
    written[name] = write_file(g, name, content);
  }
  written["manifest.json"] = write_file(g, "manifest.json", manifest.dump(2) + "\n");

  run.report["untileable_square"] =
      certificate ? nlohmann::json(*certificate) : nlohmann::json();
  if (g.json) {
    run.report["files"] = written;
    print_json(run.report);
  } else {
    print_witness_text(run);
    if (certificate) {
      std::cout << "untileable: no " << *certificate << "x" << *certificate
                << " square can be tiled\n";
    }
    for (const auto& [name, path] : written.items()) {
      std::cout << "wrote " << path.get<std::string>() << "\n";
    }
  }
  return run.code;
}

void add_budget_flags(CLI::App* cmd, BudgetOptions& b) {
  cmd->add_option("--max-triples", b.max_triples,
                  "Largest candidate graph size")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-fresh", b.max_fresh,
                  "Fresh IRIs in the candidate vocabulary (default: number of "
                  "variables)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-candidates", b.max_candidates,
                  "Stop after examining this many graphs")
      ->check(CLI::NonNegativeNumber);
}

void add_tiling_flags(CLI::App* cmd, TilingOptions& t, bool with_period,
                      bool with_square) {
  if (with_period) {
    cmd->add_option("--max-period", t.max_period, "Largest torus period searched")
        ->check(CLI::PositiveNumber);
  }
  if (with_square) {
    cmd->add_option("--max-n", t.max_n, "Largest square tried for a certificate")
        ->check(CLI::NonNegativeNumber);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate and analyse SPARQL OPT patterns; run the tiling reduction"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_flag("--json", g.json, "Print JSON instead of text");
  app.add_option("--out", g.out_dir, "Directory for generated files");
  app.add_option("--seed", g.seed, "Seed for randomized tooling");

  std::string graph_path, pattern_path, p_path, p2_path, instance_path;
  std::optional<std::string> on_graph, tiling_path, resume;
  BudgetOptions budget;
  TilingOptions tiling;
  bool find_periodic_flag = false;
  bool certify_flag = false;

  auto* eval = app.add_subcommand("eval", "Evaluate a pattern over a graph");
  eval->add_option("graph", graph_path, "Graph file")->required();
  eval->add_option("pattern", pattern_path, "Pattern file")->required();

  auto* classify = app.add_subcommand("classify", "Report fragment membership");
  classify->add_option("pattern", pattern_path, "Pattern file")->required();

  std::map<CLI::App*, Relation> relations;
  for (const auto& [name, rel, help] :
       {std::tuple{"subsumes", Relation::Subsumes, "Search for a graph on which P is not subsumed by P2"},
        std::tuple{"contains", Relation::Contains, "Search for a graph on which P is not contained in P2"},
        std::tuple{"equiv", Relation::Equivalent, "Search for a graph on which P and P2 differ"}}) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("p", p_path, "Pattern P")->required();
    cmd->add_option("p2", p2_path, "Pattern P2")->required();
    cmd->add_option("--on-graph", on_graph, "Check this graph only");
    cmd->add_option("--resume", resume, "Resume a search at TRIPLES:INDEX");
    add_budget_flags(cmd, budget);
    relations[cmd] = rel;
  }

  auto* reduce_cmd = app.add_subcommand("reduce", "Write P.sp, Pprime.sp and manifest.json");
  reduce_cmd->add_option("instance", instance_path, "Tiling instance JSON")->required();

  auto* witness = app.add_subcommand("witness", "Build and verify the witness graph");
  witness->add_option("instance", instance_path, "Tiling instance JSON")->required();
  witness->add_option("--tiling", tiling_path, "Periodic tiling JSON (default: search)");
  add_tiling_flags(witness, tiling, true, false);

  auto* tile = app.add_subcommand("tile", "Search for periodic tilings and certificates");
  tile->add_option("instance", instance_path, "Tiling instance JSON")->required();
  tile->add_flag("--find-periodic", find_periodic_flag, "Search for a periodic tiling");
  tile->add_flag("--certify-untileable", certify_flag,
                 "Search for an untileable square");
  add_tiling_flags(tile, tiling, true, true);

  auto* pipeline = app.add_subcommand("pipeline", "reduce, tile and witness in one run");
  pipeline->add_option("instance", instance_path, "Tiling instance JSON")->required();
  add_tiling_flags(pipeline, tiling, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (eval->parsed()) return run_eval(g, graph_path, pattern_path);
    if (classify->parsed()) return run_classify(g, pattern_path);
    for (const auto& [cmd, rel] : relations) {
      if (cmd->parsed()) {
        return run_relation(g, rel, p_path, p2_path, on_graph, budget, resume);
      }
    }
    if (reduce_cmd->parsed()) return run_reduce(g, instance_path);
    if (witness->parsed()) return run_witness(g, instance_path, tiling_path, tiling);
    if (tile->parsed()) {
      return run_tile(g, instance_path, find_periodic_flag, certify_flag, tiling);
    }
    if (pipeline->parsed()) return run_pipeline(g, instance_path, tiling);
  } catch (const std::exception& e) {
    std::cerr << "optwb: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
