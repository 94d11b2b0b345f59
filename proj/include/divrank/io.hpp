#pragma once

// Text formats for the data model. Every serializer emits canonical JSON
// (sorted object keys, two-space indent, LF line endings, trailing newline),
// so parse(serialize(x)) == x and equal values serialize to equal bytes.
//
//   pairs-csv        header `author_id,paper_id`, one conflict per row
//   graph-json       {"conflicts":[[r,p],...],"papers":[...],"reviewers":[...]}
//   assignment-json  {"params":{"lambda":L,"mu":M},"review_sets":{r:[p,...]}}
//   profile-json     {r:[p best-first,...]}
//   ranking-json     [p best-first,...]
//   partition-json   {"C":{"papers":[...],"reviewers":[...]},"Cbar":{...}}
//
// Ids are strings; integer ids in JSON input are accepted and stringified.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "divrank/model.hpp"

namespace divrank {

enum class ConflictFormat { kPairsCsv, kGraphJson };

struct ParsedConflicts {
  ConflictGraph graph;
  // One entry per deduplicated repeat pair.
  std::vector<std::string> warnings;
};

// Index assignment is first-appearance order (csv) or array order (json).
ParsedConflicts parse_conflicts(std::string_view text, ConflictFormat format);
ParsedConflicts parse_conflicts(std::istream& in, ConflictFormat format);

std::string serialize(const ConflictGraph& graph);
std::string serialize_pairs_csv(const ConflictGraph& graph);

struct ParsedAssignment {
  AssignmentParams params;
  ReviewGraph review_graph;
};

ParsedAssignment parse_assignment(std::string_view text, const Labels& labels);
std::string serialize(const ReviewGraph& rg, const AssignmentParams& params,
                      const Labels& labels);

// Reviewers absent from the document get an empty ranking. Ties (repeated
// papers) are rejected.
Profile parse_profile(std::string_view text, const Labels& labels);
std::string serialize(const Profile& profile, const Labels& labels);

Ranking parse_ranking(std::string_view text, const Labels& labels);
std::string serialize_ranking(const Ranking& ranking, const Labels& labels);
std::string serialize(const AggregateRanking& ranking, const Labels& labels);

PartitionResult parse_partition(std::string_view text, const Labels& labels);
std::string serialize(const PartitionResult& partition, const Labels& labels);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace divrank
