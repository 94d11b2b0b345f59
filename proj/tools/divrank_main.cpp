// divrank command-line entry point.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "divrank/aggregate.hpp"
#include "divrank/assign.hpp"
#include "divrank/components.hpp"
#include "divrank/error.hpp"
#include "divrank/impossibility.hpp"
#include "divrank/io.hpp"
#include "divrank/partition.hpp"
#include "divrank/pipeline.hpp"
#include "divrank/verify.hpp"
#include "json.hpp"

using namespace divrank;

namespace {

struct InputOptions {
  std::string conflicts;
  std::string format = "csv";

  void add(CLI::App* cmd) {
    cmd->add_option("--conflicts", conflicts, "conflict graph file")->required();
    cmd->add_option("--format", format, "csv (author_id,paper_id) or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  ConflictGraph load() const {
    auto parsed = parse_conflicts(read_file(conflicts), format == "json"
                                                            ? ConflictFormat::kGraphJson
                                                            : ConflictFormat::kPairsCsv);
    for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
    return parsed.graph;
  }
};

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    write_file(path, contents);
  }
}

std::vector<int> parse_checkpoints(const std::string& text) {
  std::vector<int> out;
  std::string item;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      if (!item.empty()) {
        try {
          out.push_back(std::stoi(item));
        } catch (const std::exception&) {
          throw ParseError("bad checkpoint '" + item + "'");
        }
      }
      item.clear();
    } else {
      item += text[i];
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divrank: strategyproof conference peer review"};
  app.require_subcommand(1);
  std::function<void()> action;

  // stats
  InputOptions stats_in;
  std::string stats_out;
  auto* stats = app.add_subcommand("stats", "component statistics of a conflict graph");
  stats_in.add(stats);
  bool stats_tsv = false;
  stats->add_option("--out", stats_out, "write stats json here");
  stats->add_flag("--tsv", stats_tsv, "print tab-separated values instead of a table");
  stats->callback([&] {
    action = [&] {
      const auto summary = summarize(stats_in.load());
      std::cout << (stats_tsv ? summary_tsv(summary) : render_summary(summary));
      if (!stats_out.empty()) write_file(stats_out, serialize(summary));
    };
  });

  // prune
  InputOptions prune_in;
  int prune_remove = 0;
  std::string prune_checkpoints;
  std::string prune_mode = "adaptive";
  std::string prune_out;
  auto* prune = app.add_subcommand("prune", "remove top-degree authors and track components");
  prune_in.add(prune);
  prune->add_option("--remove", prune_remove, "number of authors to remove")->required();
  prune->add_option("--checkpoints", prune_checkpoints,
                    "comma-separated removal counts to snapshot (default: 0 and --remove)");
  prune->add_option("--mode", prune_mode)->check(CLI::IsMember({"adaptive", "initial"}));
  bool prune_tsv_flag = false;
  prune->add_option("--out", prune_out, "write prune json here");
  prune->add_flag("--tsv", prune_tsv_flag, "print tab-separated values instead of a table");
  prune->callback([&] {
    action = [&] {
      const auto graph = prune_in.load();
      auto checkpoints = prune_checkpoints.empty() ? std::vector<int>{0, prune_remove}
                                                   : parse_checkpoints(prune_checkpoints);
      const auto trace = prune_top_degree(
          graph, prune_remove, checkpoints,
          prune_mode == "initial" ? DegreeMode::kInitial : DegreeMode::kAdaptive);
      std::cout << (prune_tsv_flag ? prune_tsv(trace) : render_prune(trace, graph.labels()));
      if (!prune_out.empty()) write_file(prune_out, serialize(trace, graph.labels()));
    };
  });

  // partition
  InputOptions part_in;
  AssignmentParams part_params;
  std::string part_out;
  auto* part = app.add_subcommand("partition", "split reviewers and papers into two sides");
  part_in.add(part);
  part->add_option("--mu", part_params.mu)->required();
  part->add_option("--lambda", part_params.lambda)->required();
  part->add_option("--out", part_out, "partition json (default stdout)");
  part->callback([&] {
    action = [&] {
      const auto graph = part_in.load();
      part_params.validate(graph.num_papers());
      PartitionDiagnostics diag;
      const auto result = partition(graph, part_params, &diag);
      std::cerr << "components=" << diag.num_components << " r=" << diag.chosen_reviewers
                << " p=" << diag.chosen_papers << " ratio=" << diag.ratio.str() << "\n";
      emit(part_out, serialize(result, graph.labels()));
    };
  });

  // assign
  InputOptions assign_in;
  AssignmentParams assign_params;
  std::string assign_partition;
  std::string assign_strategy = "round-robin";
  std::string assign_out;
  auto* assign = app.add_subcommand("assign", "assign papers across the split");
  assign_in.add(assign);
  assign->add_option("--mu", assign_params.mu)->required();
  assign->add_option("--lambda", assign_params.lambda)->required();
  assign->add_option("--partition", assign_partition, "precomputed partition json");
  assign->add_option("--strategy", assign_strategy);
  assign->add_option("--out", assign_out, "assignment json (default stdout)");
  assign->callback([&] {
    action = [&] {
      const auto graph = assign_in.load();
      assign_params.validate(graph.num_papers());
      const auto split = assign_partition.empty()
                             ? partition(graph, assign_params)
                             : parse_partition(read_file(assign_partition), graph.labels());
      const auto rg = assign_across(split, graph.num_papers(), assign_params,
                                    assign_strategy_by_name(assign_strategy));
      emit(assign_out, serialize(rg, assign_params, graph.labels()));
    };
  });

  // aggregate
  InputOptions agg_in;
  std::string agg_partition;
  std::string agg_profile;
  std::string agg_strategy = "borda";
  std::string agg_out;
  auto* agg = app.add_subcommand("aggregate", "Contract-and-Sort each side and interleave");
  agg_in.add(agg);
  agg->add_option("--partition", agg_partition)->required();
  agg->add_option("--profile", agg_profile)->required();
  agg->add_option("--strategy", agg_strategy);
  agg->add_option("--out", agg_out, "ranking json (default stdout)");
  agg->callback([&] {
    action = [&] {
      const auto graph = agg_in.load();
      const auto split = parse_partition(read_file(agg_partition), graph.labels());
      const auto profile = parse_profile(read_file(agg_profile), graph.labels());
      const auto out =
          divide_and_rank_aggregate(profile, split, aggregate_strategy_by_name(agg_strategy));
      emit(agg_out, serialize(out, graph.labels()));
    };
  });

  // check
  InputOptions check_in;
  std::string check_property;
  std::string check_assignment;
  std::string check_profile;
  std::string check_ranking;
  std::string check_partition;
  std::string check_strategy = "borda";
  std::uint64_t check_trials = 1000;
  std::optional<std::uint64_t> check_seed;
  bool check_exhaustive = false;
  std::string check_out;
  auto* check = app.add_subcommand("check", "verify GU, PU or SP");
  check_in.add(check);
  check->add_option("property", check_property, "gu, pu or sp")
      ->required()
      ->check(CLI::IsMember({"gu", "pu", "sp"}));
  check->add_option("--assignment", check_assignment)->required();
  check->add_option("--profile", check_profile, "profile json (gu, pu)");
  check->add_option("--ranking", check_ranking, "output ranking json (gu, pu)");
  check->add_option("--partition", check_partition, "partition json (sp)");
  check->add_option("--strategy", check_strategy, "aggregation strategy (sp)");
  check->add_option("--trials", check_trials, "sampled deviations (sp)");
  check->add_option("--seed", check_seed, "sampling seed (sp without --exhaustive)");
  check->add_flag("--exhaustive", check_exhaustive, "enumerate every profile (sp)");
  check->add_option("--out", check_out, "report json (default stdout)");
  check->callback([&] {
    action = [&] {
      const auto graph = check_in.load();
      const auto& labels = graph.labels();
      const auto rg = parse_assignment(read_file(check_assignment), labels).review_graph;
      PropertyReport result;
      if (check_property == "sp") {
        if (check_partition.empty()) throw ContractViolation("sp needs --partition");
        const auto mech = divide_and_rank_mechanism(
            parse_partition(read_file(check_partition), labels),
            aggregate_strategy_by_name(check_strategy));
        if (check_exhaustive) {
          result = check_sp_exhaustive(rg, graph, mech);
        } else {
          if (!check_seed) throw ContractViolation("sampled sp needs --seed");
          result = check_sp_randomized(rg, graph, mech, check_trials, *check_seed);
        }
      } else {
        if (check_profile.empty() || check_ranking.empty()) {
          throw ContractViolation(check_property + " needs --profile and --ranking");
        }
        const auto profile = parse_profile(read_file(check_profile), labels);
        const AggregateRanking out(parse_ranking(read_file(check_ranking), labels));
        result = check_property == "gu" ? check_gu(rg, profile, out)
                                        : check_pu(rg, profile, out);
      }
      emit(check_out, serialize(result, labels));
      if (!result.verdict) std::cerr << "property violated\n";
    };
  });

  // simulate
  int sim_n = 0;
  int sim_n1 = 0;
  double sim_delta = 0.05;
  std::uint64_t sim_trials = 10000;
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo experiments");
  simulate->require_subcommand(1);
  auto* misplace = simulate->add_subcommand("misplacement", "interleaving displacement");
  misplace->add_option("--n", sim_n)->required();
  misplace->add_option("--n1", sim_n1)->required();
  misplace->add_option("--delta", sim_delta);
  misplace->add_option("--trials", sim_trials);
  misplace->add_option("--seed", sim_seed)->required();
  misplace->add_option("--out", sim_out);
  misplace->callback([&] {
    action = [&] {
      emit(sim_out, serialize(misplacement_monte_carlo(sim_n, sim_n1, sim_delta, sim_trials,
                                                       sim_seed)));
    };
  });

  // verify-impossibility
  int imp_n = 2;
  int imp_m = 2;
  std::string imp_out;
  auto* imp = app.add_subcommand("verify-impossibility", "finite impossibility checks");
  imp->require_subcommand(1);
  auto* census = imp->add_subcommand("theorem7", "PU + WSP census under total rankings");
  census->alias("total-ranking");
  census->add_option("--n", imp_n);
  census->add_option("--m", imp_m);
  census->add_option("--out", imp_out);
  census->callback([&] {
    action = [&] { emit(imp_out, serialize(total_ranking_census(imp_n, imp_m))); };
  });
  auto* chain = imp->add_subcommand("prop6", "GU + WSP search on the chain instance");
  chain->alias("chain");
  chain->add_option("--out", imp_out);
  chain->callback([&] {
    action = [&] { emit(imp_out, serialize(certify_chain_instance())); };
  });

  // pipeline
  InputOptions pipe_in;
  PipelineConfig pipe;
  std::string pipe_profile;
  std::optional<std::uint64_t> pipe_seed;
  auto* pipeline = app.add_subcommand("pipeline", "partition, assign, aggregate and verify");
  pipe_in.add(pipeline);
  pipeline->add_option("--mu", pipe.params.mu)->required();
  pipeline->add_option("--lambda", pipe.params.lambda)->required();
  pipeline->add_option("--profile", pipe_profile);
  pipeline->add_option("--assign-strategy", pipe.assign_strategy);
  pipeline->add_option("--aggregate-strategy", pipe.aggregate_strategy);
  pipeline->add_option("--sp-trials", pipe.sp_trials);
  pipeline->add_option("--seed", pipe_seed);
  pipeline->add_option("--out-dir", pipe.output_dir)->required();
  pipeline->callback([&] {
    action = [&] {
      pipe.conflicts_path = pipe_in.conflicts;
      pipe.conflicts_format =
          pipe_in.format == "json" ? ConflictFormat::kGraphJson : ConflictFormat::kPairsCsv;
      if (!pipe_profile.empty()) pipe.profile_path = pipe_profile;
      pipe.seed = pipe_seed;
      const auto result = run_pipeline(pipe);
      for (const auto& name : result.written) std::cout << "wrote " << name << "\n";
      if (result.gu && !result.gu->verdict) std::cerr << "GU violated\n";
      if (result.sp && !result.sp->verdict) std::cerr << "SP violated\n";
    };
  });

  // report
  std::string report_dir;
  auto* rep = app.add_subcommand("report", "summarize artifacts in a directory");
  rep->add_option("--dir", report_dir)->required();
  rep->callback([&] { action = [&] { std::cout << report(report_dir); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorCode::kParse);
  }

  try {
    if (action) action();
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error [" << error_code_name(ErrorCode::kParse) << "]: " << e.what() << "\n";
    return static_cast<int>(ErrorCode::kParse);
  }
  return 0;
}
