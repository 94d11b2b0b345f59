#include "divrank/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>

#include "divrank/partition.hpp"
#include "json.hpp"

namespace divrank {

AssignStrategy assign_strategy_by_name(const std::string& name) {
  if (name == "round-robin") return AssignStrategy::round_robin();
  throw ContractViolation("unknown assignment strategy '" + name + "'");
}

AggregateStrategy aggregate_strategy_by_name(const std::string& name) {
  if (name == "borda") return AggregateStrategy::borda();
  if (name == "index") {
    return {"index", [](const std::vector<PaperIndex>& members,
                        std::span<const Ranking>) { return members; }};
  }
  throw ContractViolation("unknown aggregation strategy '" + name + "'");
}

StageError::StageError(std::string stage, const Error& cause)
    : Error(cause.code(), "stage '" + stage + "' failed [" +
                              error_code_name(cause.code()) + "]: " + cause.what()),
      stage_(std::move(stage)) {}

namespace {

template <typename F>
auto stage(const std::string& name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  } catch (const nlohmann::json::exception& e) {
    throw StageError(name, ParseError(e.what()));
  }
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  namespace fs = std::filesystem;
  PipelineResult result;
  const fs::path out_dir(config.output_dir);
  auto emit = [&](const std::string& name, const std::string& contents) {
    write_file((out_dir / name).string(), contents);
    result.written.push_back(name);
  };

  const ConflictGraph graph = stage("ingest", [&] {
    if (config.profile_path && !config.seed) {
      throw ContractViolation("a seed is required to sample SP deviations");
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::kParse, "cannot create '" + config.output_dir + "'");
    auto parsed = parse_conflicts(read_file(config.conflicts_path), config.conflicts_format);
    emit("graph.json", serialize(parsed.graph));
    return parsed.graph;
  });
  const Labels& labels = graph.labels();

  const PartitionResult split = stage("partition", [&] {
    config.params.validate(graph.num_papers());
    auto p = partition(graph, config.params);
    emit("partition.json", serialize(p, labels));
    return p;
  });

  const ReviewGraph rg = stage("assign", [&] {
    auto assigned = assign_across(split, graph.num_papers(), config.params,
                                  assign_strategy_by_name(config.assign_strategy));
    const auto check = validate_assignment(assigned, graph, config.params);
    if (!check.ok) {
      throw ContractViolation("assignment fails " + check.clause + ": " + check.detail);
    }
    emit("assignment.json", serialize(assigned, config.params, labels));
    return assigned;
  });

  if (!config.profile_path) return result;

  const AggregateStrategy strategy = stage(
      "aggregate", [&] { return aggregate_strategy_by_name(config.aggregate_strategy); });
  const Profile profile = stage("aggregate", [&] {
    auto pr = parse_profile(read_file(*config.profile_path), labels);
    check_profile_alignment(rg, pr);
    return pr;
  });
  const AggregateRanking output = stage("aggregate", [&] {
    auto out = divide_and_rank_aggregate(profile, split, strategy);
    emit("ranking.json", serialize(out, labels));
    return out;
  });

  stage("verify", [&] {
    result.gu = check_gu(rg, profile, output);
    emit("gu_report.json", serialize(*result.gu, labels));
    result.sp = check_sp_randomized(rg, graph, divide_and_rank_mechanism(split, strategy),
                                    config.sp_trials, *config.seed);
    emit("sp_report.json", serialize(*result.sp, labels));
    return 0;
  });
  return result;
}

namespace {

nlohmann::json sizes_json(const ComponentStats& stats) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : stats.sizes) out.push_back({s.reviewers, s.papers});
  return out;
}

std::string format(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::string pair_str(ComponentSize s) {
  return "(" + std::to_string(s.reviewers) + ", " + std::to_string(s.papers) + ")";
}

}  // namespace

std::string serialize(const AuthorshipSummary& s) {
  nlohmann::json doc;
  doc["num_papers"] = s.num_papers;
  doc["num_authors"] = s.num_authors;
  doc["num_conflicts"] = s.num_conflicts;
  doc["avg_papers_per_author"] = s.avg_papers_per_author;
  doc["max_papers_per_author"] = s.max_papers_per_author;
  doc["num_components"] = s.components.num_components();
  doc["component_sizes"] = sizes_json(s.components);
  return doc.dump(2) + "\n";
}

std::string serialize(const PruneTrace& trace, const Labels& labels) {
  nlohmann::json doc;
  nlohmann::json removed = nlohmann::json::array();
  for (ReviewerIndex r : trace.removed_authors) {
    removed.push_back(labels.reviewers[static_cast<std::size_t>(r)]);
  }
  doc["removed_authors"] = std::move(removed);
  nlohmann::json snaps = nlohmann::json::array();
  for (const auto& snap : trace.snapshots) {
    snaps.push_back({{"removed", snap.removed},
                     {"num_components", snap.stats.num_components()},
                     {"component_sizes", sizes_json(snap.stats)}});
  }
  doc["snapshots"] = std::move(snaps);
  return doc.dump(2) + "\n";
}

std::string render_summary(const AuthorshipSummary& s) {
  std::string out = "Conflict graph\n";
  out += format("  %-28s %d\n", "papers", s.num_papers);
  out += format("  %-28s %d\n", "authors", s.num_authors);
  out += format("  %-28s %d\n", "conflicts", s.num_conflicts);
  out += format("  %-28s %.3f\n", "avg papers per author", s.avg_papers_per_author);
  out += format("  %-28s %d\n", "max papers per author", s.max_papers_per_author);
  out += format("  %-28s %d\n", "connected components", s.components.num_components());
  out += format("  %-28s %s\n", "largest (authors, papers)",
                pair_str(s.components.largest(0)).c_str());
  out += format("  %-28s %s\n", "second (authors, papers)",
                pair_str(s.components.largest(1)).c_str());
  return out;
}

namespace {

struct PruneRow {
  int removed;
  int components;
  ComponentSize largest;
};

std::string render_prune_rows(const std::vector<PruneRow>& rows,
                              const std::vector<std::string>& removed) {
  std::string out = "Top-degree author pruning\n";
  out += format("  %8s  %10s  %s\n", "removed", "components", "largest (authors, papers)");
  for (const auto& row : rows) {
    out += format("  %8d  %10d  %s\n", row.removed, row.components,
                  pair_str(row.largest).c_str());
  }
  if (!removed.empty()) {
    out += "  removal order:";
    for (const auto& id : removed) out += " " + id;
    out += "\n";
  }
  return out;
}

}  // namespace

std::string render_prune(const PruneTrace& trace, const Labels& labels) {
  std::vector<PruneRow> rows;
  for (const auto& snap : trace.snapshots) {
    rows.push_back({snap.removed, snap.stats.num_components(), snap.stats.largest()});
  }
  std::vector<std::string> removed;
  for (ReviewerIndex r : trace.removed_authors) {
    removed.push_back(labels.reviewers[static_cast<std::size_t>(r)]);
  }
  return render_prune_rows(rows, removed);
}

std::string summary_tsv(const AuthorshipSummary& s) {
  const auto first = s.components.largest(0);
  const auto second = s.components.largest(1);
  std::string out =
      "papers\tauthors\tconflicts\tavg_papers_per_author\tmax_papers_per_author\t"
      "components\tlargest_authors\tlargest_papers\tsecond_authors\tsecond_papers\n";
  out += format("%d\t%d\t%d\t%.3f\t%d\t%d\t%d\t%d\t%d\t%d\n", s.num_papers, s.num_authors,
                s.num_conflicts, s.avg_papers_per_author, s.max_papers_per_author,
                s.components.num_components(), first.reviewers, first.papers,
                second.reviewers, second.papers);
  return out;
}

std::string prune_tsv(const PruneTrace& trace) {
  std::string out = "removed\tcomponents\tlargest_authors\tlargest_papers\n";
  for (const auto& snap : trace.snapshots) {
    const auto largest = snap.stats.largest();
    out += format("%d\t%d\t%d\t%d\n", snap.removed, snap.stats.num_components(),
                  largest.reviewers, largest.papers);
  }
  return out;
}

std::string report(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path base(dir);
  if (!fs::exists(base / "graph.json")) {
    throw ParseError("no graph.json in '" + dir + "'");
  }
  try {
    const ConflictGraph graph =
        parse_conflicts(read_file((base / "graph.json").string()), ConflictFormat::kGraphJson)
            .graph;
    const Labels& labels = graph.labels();
    std::string out = render_summary(summarize(graph));

    if (fs::exists(base / "prune.json")) {
      const auto doc = nlohmann::json::parse(read_file((base / "prune.json").string()));
      std::vector<PruneRow> rows;
      for (const auto& snap : doc.at("snapshots")) {
        ComponentSize largest;
        if (!snap.at("component_sizes").empty()) {
          largest = {snap["component_sizes"][0][0].get<int>(),
                     snap["component_sizes"][0][1].get<int>()};
        }
        rows.push_back({snap.at("removed").get<int>(),
                        snap.at("num_components").get<int>(), largest});
      }
      out += "\n" + render_prune_rows(
                        rows, doc.at("removed_authors").get<std::vector<std::string>>());
    }

    if (fs::exists(base / "partition.json")) {
      const auto split = parse_partition(read_file((base / "partition.json").string()), labels);
      out += "\nPartition\n";
      out += format("  %-28s %zu reviewers, %zu papers\n", "C", split.c.reviewers.size(),
                    split.c.papers.size());
      out += format("  %-28s %zu reviewers, %zu papers\n", "Cbar",
                    split.cbar.reviewers.size(), split.cbar.papers.size());
    }

    if (fs::exists(base / "assignment.json")) {
      const auto parsed =
          parse_assignment(read_file((base / "assignment.json").string()), labels);
      const auto counts = parsed.review_graph.review_counts();
      std::size_t max_load = 0;
      std::size_t edges = 0;
      for (const auto& set : parsed.review_graph.review_sets()) {
        max_load = std::max(max_load, set.size());
        edges += set.size();
      }
      const int min_reviews =
          counts.empty() ? 0 : *std::min_element(counts.begin(), counts.end());
      out += "\nAssignment\n";
      out += format("  %-28s mu=%d lambda=%d\n", "params", parsed.params.mu,
                    parsed.params.lambda);
      out += format("  %-28s %zu\n", "review edges", edges);
      out += format("  %-28s %zu\n", "max papers per reviewer", max_load);
      out += format("  %-28s %d\n", "min reviews per paper", min_reviews);
    }

    std::vector<fs::path> reports;
    for (const auto& entry : fs::directory_iterator(base)) {
      const auto name = entry.path().filename().string();
      if (name.size() > 12 && name.ends_with("_report.json")) reports.push_back(entry.path());
    }
    std::sort(reports.begin(), reports.end());
    if (!reports.empty()) {
      out += "\nProperties\n";
      for (const auto& path : reports) {
        const auto doc = nlohmann::json::parse(read_file(path.string()));
        out += format("  %-4s %-5s cases=%llu", doc.at("property").get<std::string>().c_str(),
                      doc.at("verdict").get<bool>() ? "pass" : "FAIL",
                      static_cast<unsigned long long>(doc.at("cases_checked").get<std::uint64_t>()));
        const auto note = doc.value("note", std::string());
        if (!note.empty()) out += "  " + note;
        out += "\n";
        if (doc.contains("witness") && !doc["witness"].is_null()) {
          out += "       witness: " + doc["witness"].at("description").get<std::string>() + "\n";
        }
      }
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed artifact: ") + e.what());
  }
}

}  // namespace divrank
