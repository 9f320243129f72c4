#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "bdg/errors.hpp"
#include "bdg_cli/commands.hpp"
#include "bdg_cli/graph_io.hpp"

namespace {

// exit codes
constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kUsage = 2;
constexpr int kRuntime = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace bdg::cli;
  ExperimentConfig cfg;
  std::string out_path, format = "json", steps_text, replicas_text, max_states_text;

  CLI::App app{"Growth rates of ballistic deposition on finite graphs"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.add_option("--seed", cfg.seed, "root RNG seed")->capture_default_str();
  app.add_option("--out", out_path, "write the result here instead of stdout");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads for replicas")->check(CLI::PositiveNumber);
  app.add_flag("--cross-check", cfg.cross_check, "run every applicable method and compare");

  auto graph_opt = [&](CLI::App* c) {
    c->add_option("--graph", cfg.graph, "family string (cycle:7, theorem1:1,2,2, ...) or graph JSON file")
        ->required();
  };
  auto mc_opts = [&](CLI::App* c) {
    c->add_option("--steps", steps_text, "discrete steps per replica (1e6 style accepted)");
    c->add_option("--replicas", replicas_text, "independent replicas");
    c->add_option("--horizon", cfg.horizon, "continuous-time horizon instead of steps");
    c->add_option("--rule", cfg.rule, "nnn or nn")->capture_default_str();
    c->add_flag("--proportional", cfg.proportional, "draw vertices proportionally to intensity");
    c->add_option("--batches", cfg.batches, "batch means for the variance estimate");
  };
  auto chain_opts = [&](CLI::App* c) {
    c->add_option("--M", cfg.cap, "surface-chain height cap")->capture_default_str();
    c->add_option("--stride", cfg.stride, "spacing of the three caps solved")->capture_default_str();
    c->add_option("--max-states", max_states_text, "state budget of the surface chain");
  };

  auto* gamma = app.add_subcommand("gamma", "estimate or compute gamma(G)");
  graph_opt(gamma);
  gamma->add_option("--method", cfg.method, "mc, chain, closed-form or series")
      ->check(CLI::IsMember({"mc", "chain", "closed-form", "series"}));
  gamma->add_option("--tol", cfg.tol, "series tolerance")->capture_default_str();
  gamma->add_option("--check-tol", cfg.check_tol, "agreement required by --cross-check")->capture_default_str();
  gamma->add_flag("--sigma2", cfg.sigma2, "also solve for sigma^2 (chain)");
  gamma->add_option("--checkpoints", cfg.checkpoints, "trajectory rows per replica");
  gamma->add_option("--trajectory", cfg.trajectory_out, "CSV of per-replica checkpoints");
  gamma->add_option("--export-chain", cfg.chain_out, "triplet dump of the chain at cap M");
  gamma->add_option("--table", cfg.table_k, "max-load table rows (series)");
  mc_opts(gamma);
  chain_opts(gamma);

  auto* bounds = app.add_subcommand("bounds", "spectral upper and star lower bound");
  graph_opt(bounds);
  bounds->add_flag("--mc", cfg.with_mc, "attach a Monte Carlo estimate");
  bounds->add_option("--lower-chain", cfg.lower_chain, "also solve the limit lower-bound chain at this size");
  mc_opts(bounds);

  auto* clt = app.add_subcommand("clt", "standardized max/min samples with KS and F tests");
  graph_opt(clt);
  clt->add_option("--gamma", cfg.gamma, "reference gamma (default: exact when known)");
  clt->add_option("--level", cfg.level, "test level")->capture_default_str();
  clt->add_flag("--sigma2", cfg.sigma2, "compare against the chain's sigma^2");
  mc_opts(clt);
  chain_opts(clt);

  auto* nn = app.add_subcommand("nn", "nearest-neighbour rule on K_n");
  nn->add_option("--n", cfg.n, "size of the complete graph")->required();
  nn->add_flag("--mc", cfg.with_mc, "attach a Monte Carlo estimate");
  mc_opts(nn);

  auto* sweep = app.add_subcommand("sweep", "one row per family member");
  sweep->add_option("--family", cfg.family, "cycle, star, complete, path, cocktail")->required();
  sweep->add_option("--n", cfg.n_range, "range such as 4..40")->required();
  sweep->add_option("--method", cfg.method, "mc, chain, closed-form, series or bounds")
      ->check(CLI::IsMember({"mc", "chain", "closed-form", "series", "bounds"}));
  sweep->add_option("--expect-lo", cfg.expect_lo, "assert gamma + 3 SE above this");
  sweep->add_option("--expect-hi", cfg.expect_hi, "assert gamma - 3 SE below this");
  sweep->add_option("--tol", cfg.tol, "series tolerance")->capture_default_str();
  mc_opts(sweep);
  chain_opts(sweep);

  auto* info = app.add_subcommand("graph-info", "degrees, girth, distances, spectral radius");
  graph_opt(info);
  info->add_option("--export", cfg.export_graph, "write the graph as a JSON document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (!steps_text.empty()) cfg.steps = parse_count(steps_text);
    if (!replicas_text.empty()) cfg.replicas = parse_count(replicas_text);
    if (!max_states_text.empty()) cfg.max_states = parse_count(max_states_text);
    if (cfg.replicas > 1'000'000) throw UsageError("too many replicas");
    cfg.format = format == "csv" ? Format::csv : Format::json;
    cfg.command = app.get_subcommands().front()->get_name();

    ResultRecord rec = execute(cfg);
    if (out_path.empty()) {
      emit(rec, cfg.format, std::cout);
    } else {
      std::ofstream f(out_path);
      if (!f) throw UsageError("cannot write " + out_path);
      emit(rec, cfg.format, f);
    }
    for (const auto& msg : rec.failed) std::cerr << "assertion failed: " << msg << '\n';
    return rec.ok() ? kOk : kAssertion;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const bdg::DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
}
