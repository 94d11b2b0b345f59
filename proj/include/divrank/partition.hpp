#pragma once

// Two-way split of the conflict graph along connected components: a
// subset-sum table over component (reviewer, paper) sizes, a balance scan over
// the reachable cells and backtracking to recover the chosen components.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "divrank/components.hpp"
#include "divrank/error.hpp"
#include "divrank/model.hpp"

namespace divrank {

// Non-negative rational; den == 0 with num > 0 is +infinity. 0/0 reads as 0.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  bool is_infinite() const { return den == 0 && num > 0; }
  double value() const;
  std::string str() const;
};

bool operator<(const Ratio& a, const Ratio& b);
bool operator==(const Ratio& a, const Ratio& b);
inline bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }

// max{ p/(m-r), (n-p)/r }: the load ratio when side C holds r reviewers and p
// papers. Zero denominators are infinite unless the numerator is zero.
Ratio split_ratio(int m, int n, int r, int p);

// T[k][r][p] over components 1..k (1-based layers), bit-packed.
class ReachabilityTable {
 public:
  ReachabilityTable(std::span<const ComponentSize> components, int num_reviewers,
                    int num_papers);

  int layers() const { return layers_; }
  bool at(int k, int r, int p) const;
  // Number of cell updates performed by the recurrence.
  std::uint64_t fill_operations() const { return fill_operations_; }

 private:
  std::size_t offset(int k, int r, int p) const;

  int layers_;
  int m_;
  int n_;
  std::vector<bool> bits_;
  std::uint64_t fill_operations_ = 0;
};

class InfeasiblePartition : public Error {
 public:
  InfeasiblePartition(Ratio best, const AssignmentParams& params);
  // Smallest ratio over all reachable splits (may be infinite).
  const Ratio& best_ratio() const { return best_; }

 private:
  Ratio best_;
};

struct PartitionDiagnostics {
  int num_components = 0;
  int chosen_reviewers = 0;  // r of the selected cell
  int chosen_papers = 0;     // p of the selected cell
  Ratio ratio;
  std::uint64_t fill_operations = 0;
};

// Requires m >= 2 and valid params. Among reachable cells picks the one with
// the smallest split_ratio (ties: smaller r, then smaller p) and throws
// InfeasiblePartition when that ratio exceeds mu/lambda.
PartitionResult partition(const ConflictGraph& graph,
                          const AssignmentParams& params,
                          PartitionDiagnostics* diagnostics = nullptr);

struct PartitionCheck {
  bool ok = true;
  std::string clause;   // "cover", "disjoint", "crossing-conflict", "ratio"
  std::string detail;
  std::optional<Conflict> edge;  // set for crossing-conflict
};

PartitionCheck verify_partition(const PartitionResult& result,
                                const ConflictGraph& graph,
                                const AssignmentParams& params);

}  // namespace divrank
