#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aggvote/core.hpp"
#include "aggvote/learners.hpp"

namespace aggvote {

// Joint prediction vector of M base classifiers at one query point, packed
// into a word: bit m carries expert m's label.
struct PatternVector {
  std::uint64_t bits = 0;
  std::uint32_t width = 0;

  int bit(std::size_t m) const { return static_cast<int>((bits >> m) & 1u); }

  friend bool operator==(const PatternVector& a, const PatternVector& b) {
    return a.bits == b.bits && a.width == b.width;
  }
};

PatternVector compute_pattern(std::span<const BaseClassifier> experts,
                              const FeatureObject& x);

// Batch variant. Nearest-neighbor experts sharing a training sample and
// metric are bundled: one distance pass per query serves every k.
std::vector<PatternVector> compute_patterns(
    std::span<const BaseClassifier> experts,
    std::span<const FeatureObject> queries);
std::vector<PatternVector> compute_patterns(
    std::span<const BaseClassifier> experts, const Dataset& queries);

// One pattern observed in the vote sample: how many points carry it and how
// many of those are labeled 1.
struct VoteCell {
  std::uint64_t bits = 0;
  std::int64_t count = 0;
  std::int64_t positives = 0;
};

// Aggregated vote sample: per observed pattern, occupancy and positive
// count. Cells are sorted by pattern bits; the table is immutable and
// independent of the vote sample's ordering.
class VoteTable {
 public:
  VoteTable() = default;

  static VoteTable build(std::span<const BaseClassifier> experts,
                         const Dataset& vote_sample);
  static VoteTable from_patterns(std::size_t width,
                                 std::span<const PatternVector> patterns,
                                 std::span<const int> labels);
  static VoteTable from_cells(std::size_t width, std::vector<VoteCell> cells);

  std::size_t width() const { return width_; }
  const std::vector<VoteCell>& cells() const { return cells_; }
  const VoteCell* find(std::uint64_t bits) const;
  std::int64_t total() const { return total_; }

 private:
  std::size_t width_ = 0;
  std::int64_t total_ = 0;
  std::vector<VoteCell> cells_;
};

// Number of coordinate disagreements still counted as a match: patterns p, q
// match when popcount(p XOR q) stays at or below this. The agreement
// condition "fraction >= 1 - alpha" reduces to "disagreements <= floor(
// alpha * M)"; the epsilon nudge keeps the floor exact for the rational
// alphas the grids use (1/5, 2/5, ...), where the product can land one ulp
// under the true integer.
std::size_t allowed_disagreements(double alpha, std::size_t width);

struct VoterCounts {
  std::int64_t count = 0;
  std::int64_t positives = 0;
};

// Tally over the cells within the allowed disagreement radius of q.
VoterCounts alpha_ball_counts(const VoteTable& table, PatternVector q,
                              double alpha);

// Fraction of positive voters. An empty voter set scores 0.
double vote_score(VoterCounts c);

// 1 iff the score exceeds 1/2 strictly, decided in integer arithmetic; an
// exact half, like an empty voter set, yields 0.
int vote_label(VoterCounts c);

// Per-(table, alpha) evaluator. With at most 4096 distinct patterns the
// whole pattern space is tabulated up front and lookups are O(1); wider
// patterns fall back to scanning the observed cells per query.
class AlphaNeighborhood {
 public:
  AlphaNeighborhood(const VoteTable& table, double alpha);

  VoterCounts counts(PatternVector q) const;
  double score(PatternVector q) const { return vote_score(counts(q)); }
  int label(PatternVector q) const { return vote_label(counts(q)); }
  double alpha() const { return alpha_; }

 private:
  const VoteTable* table_;
  double alpha_;
  std::size_t allowed_;
  std::vector<VoterCounts> dense_;  // 2^M entries when tabulated, else empty
};

// The full rule: M experts fitted on one part of the sample, a vote table
// built from the other part, and a disagreement budget alpha. A query is
// classified by the majority label of the vote-sample points whose expert
// pattern matches the query's within the budget.
class AggregatedClassifier {
 public:
  AggregatedClassifier(std::vector<BaseClassifier> experts,
                       const Dataset& vote_sample, double alpha);
  AggregatedClassifier(std::vector<BaseClassifier> experts, VoteTable table,
                       double alpha);

  double alpha() const { return neighborhood_.alpha(); }
  std::size_t width() const { return table_.width(); }
  const VoteTable& table() const { return table_; }
  std::span<const BaseClassifier> experts() const { return experts_; }

  PatternVector pattern_of(const FeatureObject& x) const;
  VoterCounts counts_for(PatternVector q) const;
  double score(const FeatureObject& x) const;
  int classify(const FeatureObject& x) const;
  std::vector<int> classify_batch(std::span<const FeatureObject> queries) const;

 private:
  std::vector<BaseClassifier> experts_;
  VoteTable table_;
  AlphaNeighborhood neighborhood_;
};

// Indices into the vote sample whose pattern matches q within the alpha
// budget. The score equals the mean label over exactly this set.
std::vector<std::size_t> matching_voters(
    std::span<const PatternVector> vote_patterns, PatternVector q,
    double alpha);

// Empirical cell probabilities over a labeled sample: per pattern nu, the
// mass of (pattern = nu, y = 0) and (pattern = nu, y = 1) points, their gap
// and their sum. Cells whose labels balance exactly are flagged: the vote is
// a knife edge there and convergence of the rule is at its slowest.
struct CellStats {
  std::uint64_t bits = 0;
  std::int64_t count = 0;
  std::int64_t positives = 0;
  double p0 = 0.0;
  double p1 = 0.0;
  double gap = 0.0;     // p1 - p0
  double sigma2 = 0.0;  // p1 + p0
  bool knife_edge = false;
};

struct CellDiagnostics {
  std::size_t width = 0;
  std::int64_t total = 0;
  std::vector<CellStats> cells;
};

CellDiagnostics cell_diagnostics(const VoteTable& table);
CellDiagnostics cell_diagnostics(std::span<const BaseClassifier> experts,
                                 const Dataset& sample);

}  // namespace aggvote
