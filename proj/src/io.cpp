#include "divrank/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "divrank/error.hpp"
#include "json.hpp"

namespace divrank {
namespace {

using nlohmann::json;

std::string canonical(const json& doc) { return doc.dump(2) + "\n"; }

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::string id_of(const json& value, const char* what) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return value.dump();
  throw ParseError(std::string(what) + ": ids must be strings or integers");
}

class IdTable {
 public:
  IdTable(const std::vector<std::string>& ids, const char* kind) : kind_(kind) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      index_.emplace(ids[i], static_cast<int>(i));
    }
  }
  int lookup(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
      throw ParseError(std::string("unknown ") + kind_ + " id '" + id + "'");
    }
    return it->second;
  }

 private:
  const char* kind_;
  std::unordered_map<std::string, int> index_;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

ParsedConflicts parse_pairs_csv(std::string_view text) {
  std::vector<std::string> reviewer_ids;
  std::vector<std::string> paper_ids;
  std::unordered_map<std::string, int> reviewer_index;
  std::unordered_map<std::string, int> paper_index;
  std::vector<Conflict> conflicts;
  std::vector<std::string> warnings;
  std::vector<std::pair<Conflict, std::size_t>> seen_at;

  auto intern = [](std::unordered_map<std::string, int>& index,
                   std::vector<std::string>& ids, std::string_view id) {
    auto [it, inserted] =
        index.emplace(std::string(id), static_cast<int>(ids.size()));
    if (inserted) ids.emplace_back(id);
    return it->second;
  };

  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "author_id,paper_id") {
        throw ParseError("expected header 'author_id,paper_id'", line_no);
      }
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos ||
        line.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError("expected exactly two fields", line_no);
    }
    const auto author = trim(line.substr(0, comma));
    const auto paper = trim(line.substr(comma + 1));
    if (author.empty() || paper.empty()) {
      throw ParseError("empty field", line_no);
    }
    const Conflict c{intern(reviewer_index, reviewer_ids, author),
                     intern(paper_index, paper_ids, paper)};
    conflicts.push_back(c);
    seen_at.emplace_back(c, line_no);
  }

  std::sort(seen_at.begin(), seen_at.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  });
  for (std::size_t i = 1; i < seen_at.size(); ++i) {
    if (seen_at[i].first == seen_at[i - 1].first) {
      const auto& c = seen_at[i].first;
      warnings.push_back(
          "line " + std::to_string(seen_at[i].second) + ": duplicate pair (" +
          reviewer_ids[static_cast<std::size_t>(c.reviewer)] + "," +
          paper_ids[static_cast<std::size_t>(c.paper)] + ") ignored");
    }
  }

  const int m = static_cast<int>(reviewer_ids.size());
  const int n = static_cast<int>(paper_ids.size());
  Labels labels{std::move(reviewer_ids), std::move(paper_ids)};
  return {ConflictGraph(m, n, std::move(conflicts), std::move(labels)),
          std::move(warnings)};
}

std::vector<std::string> unique_ids(const json& array, const char* what) {
  if (!array.is_array()) {
    throw ParseError(std::string(what) + " must be an array");
  }
  std::vector<std::string> ids;
  for (const auto& v : array) ids.push_back(id_of(v, what));
  auto sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParseError(std::string(what) + " contains a repeated id");
  }
  return ids;
}

ParsedConflicts parse_graph_json(std::string_view text) {
  const json doc = parse_json(text, "graph-json");
  if (!doc.is_object() || !doc.contains("reviewers") ||
      !doc.contains("papers") || !doc.contains("conflicts")) {
    throw ParseError(
        "graph-json: expected object with reviewers, papers, conflicts");
  }
  Labels labels{unique_ids(doc["reviewers"], "reviewers"),
                unique_ids(doc["papers"], "papers")};
  const IdTable reviewers(labels.reviewers, "reviewer");
  const IdTable papers(labels.papers, "paper");

  const auto& edges = doc["conflicts"];
  if (!edges.is_array()) throw ParseError("conflicts must be an array");
  std::vector<Conflict> conflicts;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2) {
      throw ParseError("each conflict must be a [reviewer, paper] pair");
    }
    conflicts.push_back({reviewers.lookup(id_of(e[0], "conflicts")),
                         papers.lookup(id_of(e[1], "conflicts"))});
  }
  std::vector<std::string> warnings;
  auto sorted = conflicts;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) {
      warnings.push_back(
          "duplicate pair (" +
          labels.reviewers[static_cast<std::size_t>(sorted[i].reviewer)] +
          "," + labels.papers[static_cast<std::size_t>(sorted[i].paper)] +
          ") ignored");
    }
  }
  const int m = static_cast<int>(labels.reviewers.size());
  const int n = static_cast<int>(labels.papers.size());
  return {ConflictGraph(m, n, std::move(conflicts), std::move(labels)),
          std::move(warnings)};
}

Ranking ranking_from(const json& array, const IdTable& papers,
                     const std::string& what) {
  if (!array.is_array()) throw ParseError(what + " must be an array");
  Ranking ranking;
  for (const auto& v : array) {
    ranking.push_back(papers.lookup(id_of(v, what.c_str())));
  }
  auto sorted = ranking;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParseError(what + " repeats a paper (ties are not allowed)");
  }
  return ranking;
}

json ids(const std::vector<int>& indices, const std::vector<std::string>& table) {
  json out = json::array();
  for (int i : indices) out.push_back(table.at(static_cast<std::size_t>(i)));
  return out;
}

// profile-json and the review_sets member of assignment-json share a shape.
std::vector<Ranking> per_reviewer_lists(const json& doc, const Labels& labels,
                                        const char* what) {
  if (!doc.is_object()) {
    throw ParseError(std::string(what) + " must be an object");
  }
  const IdTable reviewers(labels.reviewers, "reviewer");
  const IdTable papers(labels.papers, "paper");
  std::vector<Ranking> lists(labels.reviewers.size());
  for (const auto& [key, value] : doc.items()) {
    const auto r = static_cast<std::size_t>(reviewers.lookup(key));
    lists[r] = ranking_from(value, papers, std::string(what) + "[" + key + "]");
  }
  return lists;
}

json per_reviewer_json(const std::vector<Ranking>& lists, const Labels& labels) {
  json out = json::object();
  for (std::size_t i = 0; i < lists.size(); ++i) {
    out[labels.reviewers.at(i)] = ids(lists[i], labels.papers);
  }
  return out;
}

Side side_from(const json& doc, const IdTable& reviewers, const IdTable& papers,
               const char* what) {
  if (!doc.is_object() || !doc.contains("reviewers") || !doc.contains("papers")) {
    throw ParseError(std::string("partition-json: side ") + what +
                     " needs reviewers and papers");
  }
  Side side;
  for (const auto& id : unique_ids(doc["reviewers"], "reviewers")) {
    side.reviewers.push_back(reviewers.lookup(id));
  }
  for (const auto& id : unique_ids(doc["papers"], "papers")) {
    side.papers.push_back(papers.lookup(id));
  }
  std::sort(side.reviewers.begin(), side.reviewers.end());
  std::sort(side.papers.begin(), side.papers.end());
  return side;
}

}  // namespace

ParsedConflicts parse_conflicts(std::string_view text, ConflictFormat format) {
  return format == ConflictFormat::kPairsCsv ? parse_pairs_csv(text)
                                             : parse_graph_json(text);
}

ParsedConflicts parse_conflicts(std::istream& in, ConflictFormat format) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_conflicts(buffer.str(), format);
}

std::string serialize(const ConflictGraph& graph) {
  const auto& labels = graph.labels();
  json doc;
  doc["reviewers"] = labels.reviewers;
  doc["papers"] = labels.papers;
  json edges = json::array();
  for (const auto& c : graph.conflicts()) {
    edges.push_back({labels.reviewers[static_cast<std::size_t>(c.reviewer)],
                     labels.papers[static_cast<std::size_t>(c.paper)]});
  }
  doc["conflicts"] = std::move(edges);
  return canonical(doc);
}

std::string serialize_pairs_csv(const ConflictGraph& graph) {
  const auto& labels = graph.labels();
  std::string out = "author_id,paper_id\n";
  for (const auto& c : graph.conflicts()) {
    out += labels.reviewers[static_cast<std::size_t>(c.reviewer)];
    out += ',';
    out += labels.papers[static_cast<std::size_t>(c.paper)];
    out += '\n';
  }
  return out;
}

ParsedAssignment parse_assignment(std::string_view text, const Labels& labels) {
  const json doc = parse_json(text, "assignment-json");
  if (!doc.is_object() || !doc.contains("params") ||
      !doc.contains("review_sets")) {
    throw ParseError("assignment-json: expected params and review_sets");
  }
  const auto& params = doc["params"];
  if (!params.is_object() || !params.contains("mu") ||
      !params.contains("lambda") || !params["mu"].is_number_integer() ||
      !params["lambda"].is_number_integer()) {
    throw ParseError("assignment-json: params needs integer mu and lambda");
  }
  ParsedAssignment out;
  out.params = {params["mu"].get<int>(), params["lambda"].get<int>()};
  auto sets = per_reviewer_lists(doc["review_sets"], labels, "review_sets");
  out.review_graph =
      ReviewGraph(static_cast<int>(labels.papers.size()), std::move(sets));
  return out;
}

std::string serialize(const ReviewGraph& rg, const AssignmentParams& params,
                      const Labels& labels) {
  json doc;
  doc["params"] = {{"mu", params.mu}, {"lambda", params.lambda}};
  doc["review_sets"] = per_reviewer_json(rg.review_sets(), labels);
  return canonical(doc);
}

Profile parse_profile(std::string_view text, const Labels& labels) {
  return per_reviewer_lists(parse_json(text, "profile-json"), labels, "profile");
}

std::string serialize(const Profile& profile, const Labels& labels) {
  return canonical(per_reviewer_json(profile, labels));
}

Ranking parse_ranking(std::string_view text, const Labels& labels) {
  const IdTable papers(labels.papers, "paper");
  return ranking_from(parse_json(text, "ranking-json"), papers, "ranking");
}

std::string serialize_ranking(const Ranking& ranking, const Labels& labels) {
  return canonical(ids(ranking, labels.papers));
}

std::string serialize(const AggregateRanking& ranking, const Labels& labels) {
  return serialize_ranking(ranking.order(), labels);
}

PartitionResult parse_partition(std::string_view text, const Labels& labels) {
  const json doc = parse_json(text, "partition-json");
  if (!doc.is_object() || !doc.contains("C") || !doc.contains("Cbar")) {
    throw ParseError("partition-json: expected sides C and Cbar");
  }
  const IdTable reviewers(labels.reviewers, "reviewer");
  const IdTable papers(labels.papers, "paper");
  return {side_from(doc["C"], reviewers, papers, "C"),
          side_from(doc["Cbar"], reviewers, papers, "Cbar")};
}

std::string serialize(const PartitionResult& partition, const Labels& labels) {
  auto side = [&](const Side& s) {
    return json{{"reviewers", ids(s.reviewers, labels.reviewers)},
                {"papers", ids(s.papers, labels.papers)}};
  };
  json doc;
  doc["C"] = side(partition.c);
  doc["Cbar"] = side(partition.cbar);
  return canonical(doc);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParse, "cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace divrank
