#pragma once

// End-to-end orchestration over artifact files, strategy registries and the
// plain-text report renderer.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divrank/aggregate.hpp"
#include "divrank/assign.hpp"
#include "divrank/components.hpp"
#include "divrank/error.hpp"
#include "divrank/io.hpp"
#include "divrank/verify.hpp"

namespace divrank {

// Known ids: "round-robin".
AssignStrategy assign_strategy_by_name(const std::string& name);
// Known ids: "borda", "index" (members in ascending paper index).
AggregateStrategy aggregate_strategy_by_name(const std::string& name);

// Error raised by a pipeline stage; keeps the original code.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct PipelineConfig {
  std::string conflicts_path;
  ConflictFormat conflicts_format = ConflictFormat::kPairsCsv;
  std::optional<std::string> profile_path;
  AssignmentParams params;
  std::string assign_strategy = "round-robin";
  std::string aggregate_strategy = "borda";
  std::optional<std::uint64_t> seed;  // required when a profile is given
  std::uint64_t sp_trials = 1000;
  std::string output_dir;
};

struct PipelineResult {
  std::vector<std::string> written;  // file names relative to output_dir
  std::optional<PropertyReport> gu;
  std::optional<PropertyReport> sp;
};

// Stages: ingest, partition, assign, aggregate, verify. Writes graph.json,
// partition.json, assignment.json and, with a profile, ranking.json,
// gu_report.json and sp_report.json. Throws StageError.
PipelineResult run_pipeline(const PipelineConfig& config);

std::string serialize(const AuthorshipSummary& summary);
std::string serialize(const PruneTrace& trace, const Labels& labels);

// Table-style text renderers; output depends only on the arguments.
std::string render_summary(const AuthorshipSummary& summary);
std::string render_prune(const PruneTrace& trace, const Labels& labels);
// Header line plus data rows, tab separated.
std::string summary_tsv(const AuthorshipSummary& summary);
std::string prune_tsv(const PruneTrace& trace);

// Renders whatever artifacts exist in `dir`: graph.json (component table),
// prune.json (pruning table), partition.json, assignment.json and
// *_report.json verdicts. Throws ParseError when graph.json is missing.
std::string report(const std::string& dir);

}  // namespace divrank
