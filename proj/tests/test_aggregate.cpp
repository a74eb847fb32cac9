#include <doctest.h>

#include <memory>
#include <vector>

#include "aggvote/aggregate.hpp"
#include "aggvote/model_io.hpp"
#include "aggvote/random.hpp"
#include "naive_vote.hpp"

using namespace aggvote;

namespace {

VoteTable two_cell_table() {
  // the worked example used throughout: pattern "00" seen 3 times with 2
  // positives, pattern "01" once with 0 positives
  std::vector<VoteCell> cells;
  cells.push_back({pattern_from_string("00"), 3, 2});
  cells.push_back({pattern_from_string("01"), 1, 0});
  return VoteTable::from_cells(2, std::move(cells));
}

PatternVector pat(const std::string& s) {
  return PatternVector{pattern_from_string(s),
                       static_cast<std::uint32_t>(s.size())};
}

// random tables and queries used by the equivalence and invariance suites
struct RandomCase {
  std::vector<PatternVector> patterns;
  std::vector<int> labels;
  naive::Vote nv;
  std::size_t width;
};

RandomCase random_case(RandomStream& s, std::size_t max_width = 10) {
  RandomCase rc;
  rc.width = 1 + s.uniform_index(max_width);
  const std::size_t n = 1 + s.uniform_index(60);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t bits = 0;
    std::vector<int> row(rc.width);
    for (std::size_t m = 0; m < rc.width; ++m) {
      const int b = static_cast<int>(s.uniform_index(2));
      row[m] = b;
      bits |= static_cast<std::uint64_t>(b) << m;
    }
    const int y = static_cast<int>(s.uniform_index(2));
    rc.patterns.push_back({bits, static_cast<std::uint32_t>(rc.width)});
    rc.labels.push_back(y);
    rc.nv.patterns.push_back(row);
    rc.nv.labels.push_back(y);
  }
  return rc;
}

std::vector<int> bits_row(std::uint64_t bits, std::size_t width) {
  std::vector<int> row(width);
  for (std::size_t m = 0; m < width; ++m) row[m] = (bits >> m) & 1;
  return row;
}

}  // namespace

TEST_CASE("vote table aggregates patterns and is order-independent") {
  std::vector<PatternVector> pats{pat("00"), pat("01"), pat("00"), pat("00")};
  std::vector<int> labels{1, 0, 1, 0};
  const VoteTable t = VoteTable::from_patterns(2, pats, labels);
  CHECK(t.width() == 2);
  CHECK(t.total() == 4);
  REQUIRE(t.cells().size() == 2);
  const VoteCell* c00 = t.find(pattern_from_string("00"));
  REQUIRE(c00 != nullptr);
  CHECK(c00->count == 3);
  CHECK(c00->positives == 2);
  const VoteCell* c01 = t.find(pattern_from_string("01"));
  REQUIRE(c01 != nullptr);
  CHECK(c01->count == 1);
  CHECK(c01->positives == 0);
  CHECK(t.find(pattern_from_string("11")) == nullptr);

  // permuting the vote sample leaves the table unchanged
  std::vector<PatternVector> perm{pat("01"), pat("00"), pat("00"), pat("00")};
  std::vector<int> perm_labels{0, 0, 1, 1};
  const VoteTable t2 = VoteTable::from_patterns(2, perm, perm_labels);
  REQUIRE(t2.cells().size() == t.cells().size());
  for (std::size_t i = 0; i < t.cells().size(); ++i) {
    CHECK(t2.cells()[i].bits == t.cells()[i].bits);
    CHECK(t2.cells()[i].count == t.cells()[i].count);
    CHECK(t2.cells()[i].positives == t.cells()[i].positives);
  }
}

TEST_CASE("worked example: scores at alpha 0 and alpha 1/2") {
  const VoteTable t = two_cell_table();

  // exact match only: score("00") = 2/3
  CHECK(vote_score(alpha_ball_counts(t, pat("00"), 0.0)) ==
        doctest::Approx(2.0 / 3.0));
  // alpha = 1/2 over width 2 allows one disagreement: the ball around "00"
  // covers "00" and "01", so the score is (2+0)/(3+1) = 1/2
  CHECK(vote_score(alpha_ball_counts(t, pat("00"), 0.5)) ==
        doctest::Approx(0.5));
  // an exact half is not a strict majority
  CHECK(vote_label(alpha_ball_counts(t, pat("00"), 0.5)) == 0);
  CHECK(vote_label(alpha_ball_counts(t, pat("00"), 0.0)) == 1);

  // unseen pattern at alpha 0: empty voter set scores 0 and classifies 0
  const VoterCounts unseen = alpha_ball_counts(t, pat("11"), 0.0);
  CHECK(unseen.count == 0);
  CHECK(vote_score(unseen) == 0.0);
  CHECK(vote_label(unseen) == 0);

  // "11" at alpha 1/2 reaches "01" only: 1 voter, 0 positives
  const VoterCounts near = alpha_ball_counts(t, pat("11"), 0.5);
  CHECK(near.count == 1);
  CHECK(near.positives == 0);
}

TEST_CASE("allowed_disagreements floors alpha * width exactly") {
  CHECK(allowed_disagreements(0.0, 8) == 0);
  CHECK(allowed_disagreements(0.5, 2) == 1);
  CHECK(allowed_disagreements(0.49, 2) == 0);
  // rational alphas whose product sits one ulp under the integer
  CHECK(allowed_disagreements(0.2, 5) == 1);    // 0.2*5
  CHECK(allowed_disagreements(0.4, 5) == 2);    // 0.4*5
  CHECK(allowed_disagreements(0.2, 10) == 2);
  CHECK(allowed_disagreements(1.0 / 3.0, 9) == 3);
  CHECK(allowed_disagreements(2.0 / 3.0, 9) == 6);
  CHECK(allowed_disagreements(0.1, 30) == 3);
  CHECK(allowed_disagreements(0.7, 10) == 7);
  CHECK_THROWS_AS(allowed_disagreements(-0.1, 5), ConfigError);
  CHECK_THROWS_AS(allowed_disagreements(1.0, 5), ConfigError);
}

TEST_CASE("rational floor identity over a dense grid") {
  // floor(alpha M) computed through the nudge agrees with exact integer
  // arithmetic for every alpha = num/den, den <= 20, M <= 64
  for (int den = 1; den <= 20; ++den) {
    for (int num = 0; num < den; ++num) {
      const double alpha = static_cast<double>(num) / den;
      for (std::size_t M = 1; M <= 64; ++M) {
        const std::size_t expect =
            static_cast<std::size_t>((static_cast<std::int64_t>(num) *
                                      static_cast<std::int64_t>(M)) /
                                     den);
        CHECK(allowed_disagreements(alpha, M) == expect);
      }
    }
  }
}

TEST_CASE("alpha-ball tallies equal the naive oracle exactly") {
  RandomStream s(SeedSpec{101, 0});
  for (int rep = 0; rep < 400; ++rep) {
    const RandomCase rc = random_case(s);
    const VoteTable t =
        VoteTable::from_patterns(rc.width, rc.patterns, rc.labels);
    const int den = 1 + static_cast<int>(s.uniform_index(20));
    const int num = static_cast<int>(s.uniform_index(den));
    const double alpha = static_cast<double>(num) / den;
    const AlphaNeighborhood hood(t, alpha);
    for (int q = 0; q < 8; ++q) {
      const std::uint64_t qbits = s.next_u64() & ((1ULL << rc.width) - 1);
      const PatternVector qp{qbits, static_cast<std::uint32_t>(rc.width)};
      const naive::Tally nt =
          naive::tally_rational(rc.nv, bits_row(qbits, rc.width), num, den);
      const VoterCounts vc = alpha_ball_counts(t, qp, alpha);
      CHECK(vc.count == nt.count);
      CHECK(vc.positives == nt.positives);
      const VoterCounts hc = hood.counts(qp);
      CHECK(hc.count == nt.count);
      CHECK(hc.positives == nt.positives);
      // one division on integer tallies on both sides: bitwise equality
      CHECK(hood.score(qp) ==
            naive::score_rational(rc.nv, bits_row(qbits, rc.width), num, den));
      CHECK(hood.label(qp) ==
            naive::label_rational(rc.nv, bits_row(qbits, rc.width), num, den));
    }
  }
}

TEST_CASE("cell scan above the tabulation cutoff matches the oracle") {
  // widths 13-16 exceed the dense cutoff and take the per-query scan path
  RandomStream s(SeedSpec{102, 0});
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t width = 13 + s.uniform_index(4);
    RandomCase rc;
    rc.width = width;
    const std::size_t n = 5 + s.uniform_index(100);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bits = s.next_u64() & ((1ULL << width) - 1);
      const int y = static_cast<int>(s.uniform_index(2));
      rc.patterns.push_back({bits, static_cast<std::uint32_t>(width)});
      rc.labels.push_back(y);
      rc.nv.patterns.push_back(bits_row(bits, width));
      rc.nv.labels.push_back(y);
    }
    const VoteTable t = VoteTable::from_patterns(width, rc.patterns, rc.labels);
    const AlphaNeighborhood hood(t, 0.25);
    for (int q = 0; q < 20; ++q) {
      const std::uint64_t qbits = s.next_u64() & ((1ULL << width) - 1);
      const PatternVector qp{qbits, static_cast<std::uint32_t>(width)};
      const naive::Tally nt =
          naive::tally_rational(rc.nv, bits_row(qbits, width), 1, 4);
      const VoterCounts vc = hood.counts(qp);
      CHECK(vc.count == nt.count);
      CHECK(vc.positives == nt.positives);
    }
  }
}

TEST_CASE("voter counts grow with alpha") {
  RandomStream s(SeedSpec{103, 0});
  for (int rep = 0; rep < 100; ++rep) {
    const RandomCase rc = random_case(s);
    const VoteTable t =
        VoteTable::from_patterns(rc.width, rc.patterns, rc.labels);
    const std::uint64_t qbits = s.next_u64() & ((1ULL << rc.width) - 1);
    const PatternVector qp{qbits, static_cast<std::uint32_t>(rc.width)};
    std::int64_t prev = -1;
    for (double alpha : {0.0, 0.1, 0.25, 0.5, 0.75, 0.99}) {
      const VoterCounts c = alpha_ball_counts(t, qp, alpha);
      CHECK(c.count >= prev);
      prev = c.count;
    }
    // alpha just below 1 allows width-1 disagreements: everything votes
    // except points whose pattern is the exact complement of the query
    const std::uint64_t mask = (1ULL << rc.width) - 1;
    const VoteCell* comp = t.find(~qbits & mask);
    const std::int64_t excluded = comp == nullptr ? 0 : comp->count;
    const VoterCounts all = alpha_ball_counts(t, qp, 0.999999);
    CHECK(all.count == t.total() - excluded);
  }
}

TEST_CASE("scores are invariant to replicating the vote sample") {
  RandomStream s(SeedSpec{104, 0});
  for (int rep = 0; rep < 50; ++rep) {
    const RandomCase rc = random_case(s);
    std::vector<PatternVector> doubled = rc.patterns;
    std::vector<int> doubled_labels = rc.labels;
    doubled.insert(doubled.end(), rc.patterns.begin(), rc.patterns.end());
    doubled_labels.insert(doubled_labels.end(), rc.labels.begin(),
                          rc.labels.end());
    const VoteTable t1 =
        VoteTable::from_patterns(rc.width, rc.patterns, rc.labels);
    const VoteTable t2 =
        VoteTable::from_patterns(rc.width, doubled, doubled_labels);
    for (double alpha : {0.0, 0.3, 0.6}) {
      for (int q = 0; q < 5; ++q) {
        const std::uint64_t qbits = s.next_u64() & ((1ULL << rc.width) - 1);
        const PatternVector qp{qbits, static_cast<std::uint32_t>(rc.width)};
        const VoterCounts a = alpha_ball_counts(t1, qp, alpha);
        const VoterCounts b = alpha_ball_counts(t2, qp, alpha);
        CHECK(b.count == 2 * a.count);
        CHECK(b.positives == 2 * a.positives);
        CHECK(vote_score(a) == vote_score(b));
        CHECK(vote_label(a) == vote_label(b));
      }
    }
  }
}

TEST_CASE("tallies are invariant to permuting the expert coordinates") {
  RandomStream s(SeedSpec{105, 0});
  for (int rep = 0; rep < 50; ++rep) {
    const RandomCase rc = random_case(s, 8);
    std::vector<std::size_t> perm(rc.width);
    for (std::size_t i = 0; i < rc.width; ++i) perm[i] = i;
    s.shuffle(perm);
    auto permute = [&](std::uint64_t bits) {
      std::uint64_t out = 0;
      for (std::size_t m = 0; m < rc.width; ++m) {
        out |= static_cast<std::uint64_t>((bits >> m) & 1) << perm[m];
      }
      return out;
    };
    std::vector<PatternVector> moved;
    for (const PatternVector& p : rc.patterns) {
      moved.push_back({permute(p.bits), p.width});
    }
    const VoteTable t1 =
        VoteTable::from_patterns(rc.width, rc.patterns, rc.labels);
    const VoteTable t2 = VoteTable::from_patterns(rc.width, moved, rc.labels);
    for (int q = 0; q < 10; ++q) {
      const std::uint64_t qbits = s.next_u64() & ((1ULL << rc.width) - 1);
      const double alpha = s.uniform() * 0.9;
      const VoterCounts a =
          alpha_ball_counts(t1, {qbits, static_cast<std::uint32_t>(rc.width)},
                            alpha);
      const VoterCounts b = alpha_ball_counts(
          t2, {permute(qbits), static_cast<std::uint32_t>(rc.width)}, alpha);
      CHECK(a.count == b.count);
      CHECK(a.positives == b.positives);
    }
  }
}

TEST_CASE("scores stay in [0,1]") {
  RandomStream s(SeedSpec{106, 0});
  for (int rep = 0; rep < 200; ++rep) {
    const RandomCase rc = random_case(s);
    const VoteTable t =
        VoteTable::from_patterns(rc.width, rc.patterns, rc.labels);
    const std::uint64_t qbits = s.next_u64() & ((1ULL << rc.width) - 1);
    const double alpha = s.uniform() * 0.99;
    const double score = vote_score(
        alpha_ball_counts(t, {qbits, static_cast<std::uint32_t>(rc.width)},
                          alpha));
    CHECK(score >= 0.0);
    CHECK(score <= 1.0);
  }
}

TEST_CASE("unanimous voters force the shared label") {
  std::vector<PatternVector> pats{pat("101"), pat("101"), pat("100")};
  std::vector<int> ones{1, 1, 1};
  const VoteTable t = VoteTable::from_patterns(3, pats, ones);
  for (double alpha : {0.0, 1.0 / 3.0, 2.0 / 3.0}) {
    CHECK(vote_label(alpha_ball_counts(t, pat("101"), alpha)) == 1);
    CHECK(vote_score(alpha_ball_counts(t, pat("101"), alpha)) == 1.0);
  }
  std::vector<int> zeros{0, 0, 0};
  const VoteTable tz = VoteTable::from_patterns(3, pats, zeros);
  for (double alpha : {0.0, 1.0 / 3.0, 2.0 / 3.0}) {
    CHECK(vote_label(alpha_ball_counts(tz, pat("101"), alpha)) == 0);
    CHECK(vote_score(alpha_ball_counts(tz, pat("101"), alpha)) == 0.0);
  }
}

TEST_CASE("end-to-end classifier with real experts matches per-point replay") {
  RandomStream g(SeedSpec{107, 0});
  std::vector<LabeledPoint> pts;
  for (int i = 0; i < 120; ++i) {
    const int y = static_cast<int>(g.uniform_index(2));
    pts.push_back({make_vector({g.normal() + 1.5 * y, g.normal() - y}), y});
  }
  const Dataset all(pts);
  auto [fit, vote] = split_sample(all, 70);
  auto fit_ptr = std::make_shared<const Dataset>(fit);
  std::vector<ExpertSpec> specs(3);
  specs[0].k = 1;
  specs[1].k = 3;
  specs[2].type = ExpertType::Fisher;
  RandomStream fs(SeedSpec{108, 0});
  std::vector<BaseClassifier> experts = fit_roster(specs, fit_ptr, fs);

  const AggregatedClassifier rule(experts, vote, 1.0 / 3.0);
  CHECK(rule.width() == 3);
  CHECK(rule.alpha() == doctest::Approx(1.0 / 3.0));

  // replay: per point, per expert, build the pattern by hand
  naive::Vote nv;
  for (std::size_t i = 0; i < vote.size(); ++i) {
    std::vector<int> row;
    for (const BaseClassifier& e : experts) row.push_back(e.predict(vote[i].x));
    nv.patterns.push_back(row);
    nv.labels.push_back(vote[i].y);
  }
  RandomStream q(SeedSpec{109, 0});
  for (int i = 0; i < 100; ++i) {
    const FeatureObject x = make_vector({q.normal(), q.normal()});
    std::vector<int> row;
    for (const BaseClassifier& e : experts) row.push_back(e.predict(x));
    CHECK(rule.classify(x) == naive::label_rational(nv, row, 1, 3));
    CHECK(rule.score(x) == naive::score_rational(nv, row, 1, 3));
  }

  // classify_batch agrees with classify
  std::vector<FeatureObject> queries;
  for (int i = 0; i < 40; ++i) {
    queries.push_back(make_vector({q.normal(), q.normal()}));
  }
  const std::vector<int> batch = rule.classify_batch(queries);
  for (std::size_t i = 0; i < queries.size(); ++i) {
    CHECK(batch[i] == rule.classify(queries[i]));
  }
}

TEST_CASE("compute_patterns bundles knn experts without changing results") {
  RandomStream g(SeedSpec{110, 0});
  std::vector<LabeledPoint> pts;
  for (int i = 0; i < 80; ++i) {
    const int y = static_cast<int>(g.uniform_index(2));
    pts.push_back({make_vector({g.normal() + y, g.normal(), g.normal()}), y});
  }
  auto train = std::make_shared<const Dataset>(Dataset(pts));
  std::vector<ExpertSpec> specs;
  for (std::size_t k : {1, 3, 5, 7, 9}) {
    ExpertSpec e;
    e.k = k;
    specs.push_back(e);
  }
  RandomStream fs(SeedSpec{111, 0});
  std::vector<BaseClassifier> experts = fit_roster(specs, train, fs);
  std::vector<FeatureObject> queries;
  for (int i = 0; i < 50; ++i) {
    queries.push_back(
        make_vector({g.normal(), g.normal(), g.normal()}));
  }
  const std::vector<PatternVector> bundled =
      compute_patterns(experts, queries);
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const PatternVector solo = compute_pattern(experts, queries[i]);
    CHECK(bundled[i] == solo);
    for (std::size_t m = 0; m < experts.size(); ++m) {
      CHECK(bundled[i].bit(m) == experts[m].predict(queries[i]));
    }
  }
}

TEST_CASE("cell diagnostics on the worked example") {
  // sample of 4: three points with pattern "00" (two positive), one with
  // pattern "01" (negative)
  std::vector<PatternVector> pats{pat("00"), pat("00"), pat("00"), pat("01")};
  std::vector<int> labels{1, 1, 0, 0};
  const VoteTable t = VoteTable::from_patterns(2, pats, labels);
  const CellDiagnostics diag = cell_diagnostics(t);
  CHECK(diag.width == 2);
  CHECK(diag.total == 4);
  REQUIRE(diag.cells.size() == 2);

  const CellStats& c00 = diag.cells[0].bits == pattern_from_string("00")
                             ? diag.cells[0]
                             : diag.cells[1];
  const CellStats& c01 = diag.cells[0].bits == pattern_from_string("01")
                             ? diag.cells[0]
                             : diag.cells[1];
  CHECK(c00.p1 == doctest::Approx(0.5));    // 2 of 4
  CHECK(c00.p0 == doctest::Approx(0.25));   // 1 of 4
  CHECK(c00.gap == doctest::Approx(0.25));
  CHECK(c00.sigma2 == doctest::Approx(0.75));
  CHECK_FALSE(c00.knife_edge);
  CHECK(c01.p1 == doctest::Approx(0.0));
  CHECK(c01.p0 == doctest::Approx(0.25));
  CHECK(c01.gap == doctest::Approx(-0.25));
  CHECK_FALSE(c01.knife_edge);
}

TEST_CASE("knife-edge cells are flagged") {
  std::vector<PatternVector> pats{pat("1"), pat("1"), pat("0")};
  std::vector<int> labels{1, 0, 1};
  const VoteTable t = VoteTable::from_patterns(1, pats, labels);
  const CellDiagnostics diag = cell_diagnostics(t);
  REQUIRE(diag.cells.size() == 2);
  const CellStats& c1 = diag.cells[0].bits == 1 ? diag.cells[0]
                                                : diag.cells[1];
  const CellStats& c0 = diag.cells[0].bits == 0 ? diag.cells[0]
                                                : diag.cells[1];
  CHECK(c1.knife_edge);        // 1 of 2 positive
  CHECK_FALSE(c0.knife_edge);  // 1 of 1 positive
}

TEST_CASE("matching_voters returns exactly the score's support") {
  RandomStream s(SeedSpec{112, 0});
  for (int rep = 0; rep < 60; ++rep) {
    const RandomCase rc = random_case(s);
    const int den = 1 + static_cast<int>(s.uniform_index(10));
    const int num = static_cast<int>(s.uniform_index(den));
    const double alpha = static_cast<double>(num) / den;
    const std::uint64_t qbits = s.next_u64() & ((1ULL << rc.width) - 1);
    const PatternVector qp{qbits, static_cast<std::uint32_t>(rc.width)};
    const std::vector<std::size_t> voters =
        matching_voters(rc.patterns, qp, alpha);
    // membership agrees with the naive rational predicate per point
    std::vector<bool> in(rc.patterns.size(), false);
    for (std::size_t j : voters) in[j] = true;
    std::int64_t pos = 0;
    for (std::size_t j = 0; j < rc.patterns.size(); ++j) {
      const bool expect = naive::matches_rational(
          rc.nv.patterns[j], bits_row(qbits, rc.width), num, den);
      CHECK(in[j] == expect);
      if (in[j]) pos += rc.labels[j];
    }
    const VoteTable t =
        VoteTable::from_patterns(rc.width, rc.patterns, rc.labels);
    const VoterCounts c = alpha_ball_counts(t, qp, alpha);
    CHECK(c.count == static_cast<std::int64_t>(voters.size()));
    CHECK(c.positives == pos);
  }
}

TEST_CASE("table and classifier constructors validate their inputs") {
  CHECK_THROWS_AS(VoteTable::from_cells(0, {}), ConfigError);
  CHECK_THROWS_AS(VoteTable::from_cells(65, {}), ConfigError);
  // duplicate cells
  std::vector<VoteCell> dup{{0, 1, 0}, {0, 2, 1}};
  CHECK_THROWS_AS(VoteTable::from_cells(2, std::move(dup)), DataError);
  // positives exceeding count
  std::vector<VoteCell> bad{{0, 1, 2}};
  CHECK_THROWS_AS(VoteTable::from_cells(2, std::move(bad)), DataError);
  // pattern beyond the width
  std::vector<VoteCell> wide{{1ULL << 3, 1, 0}};
  CHECK_THROWS_AS(VoteTable::from_cells(2, std::move(wide)), DataError);

  // width mismatch between roster and table
  RandomStream g(SeedSpec{113, 0});
  std::vector<LabeledPoint> pts;
  for (int i = 0; i < 20; ++i) {
    pts.push_back({make_vector({g.normal() + (i % 2)}), i % 2});
  }
  auto train = std::make_shared<const Dataset>(Dataset(pts));
  std::vector<ExpertSpec> specs(2);
  specs[0].k = 1;
  specs[1].k = 3;
  RandomStream fs(SeedSpec{114, 0});
  std::vector<BaseClassifier> experts = fit_roster(specs, train, fs);
  const VoteTable three = VoteTable::from_cells(3, {{0, 1, 1}});
  CHECK_THROWS_AS(AggregatedClassifier(experts, three, 0.0), ConfigError);

  // empty vote sample
  CHECK_THROWS_AS(VoteTable::build(experts, Dataset()), ConfigError);

  // query layout mismatch in batch pattern computation
  std::vector<FeatureObject> badq{make_vector({1.0, 2.0})};
  CHECK_THROWS_AS(compute_patterns(experts, badq), DataError);
}

TEST_CASE("pattern strings map index to expert coordinate") {
  CHECK(pattern_string(0b110, 3) == "011");
  CHECK(pattern_from_string("011") == 0b110);
  CHECK(pattern_string(0, 4) == "0000");
  for (std::uint64_t b = 0; b < 32; ++b) {
    CHECK(pattern_from_string(pattern_string(b, 5)) == b);
  }
  CHECK_THROWS_AS(pattern_from_string("01a"), DataError);
  CHECK_THROWS_AS(pattern_from_string(""), DataError);
}
