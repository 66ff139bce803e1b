#include <catch2/catch_amalgamated.hpp>

#include "seqvote/profile_io.hpp"
#include "seqvote/search.hpp"
#include "test_util.hpp"

using namespace seqvote;
using testutil::mask;

namespace {

bool same_outcome(const SearchOutcome& a, const SearchOutcome& b) {
  if (a.exhausted != b.exhausted || a.profiles_scanned != b.profiles_scanned) return false;
  if (a.hits.size() != b.hits.size()) return false;
  for (std::size_t i = 0; i < a.hits.size(); ++i) {
    if (a.hits[i].index != b.hits[i].index) return false;
    if (!(a.hits[i].profile == b.hits[i].profile)) return false;
    if (a.hits[i].winners != b.hits[i].winners) return false;
    if (!(a.hits[i].report == b.hits[i].report)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("profile space sizes") {
  CHECK(ProfileSpace(2, 3, VotingRule::Plurality, TieRule::Kind::Uniform, false).size() == 36);
  CHECK(ProfileSpace(3, 3, VotingRule::Plurality, TieRule::Kind::Uniform, true).size() == 36);
  CHECK(ProfileSpace(5, 2, VotingRule::Plurality, TieRule::Kind::Uniform, true).size() == 16);
  // deterministic canonical pins the tie order, voters range freely
  CHECK(ProfileSpace(2, 3, VotingRule::Plurality, TieRule::Kind::Deterministic, true).size() == 36);
  // without canonicalization the tie order is iterated as well
  CHECK(ProfileSpace(2, 3, VotingRule::Plurality, TieRule::Kind::Deterministic, false).size() ==
        216);
  CHECK(ProfileSpace(4, 1, VotingRule::Approval, TieRule::Kind::Uniform, false).size() == 1);
}

TEST_CASE("profile space enumeration order is deterministic") {
  ProfileSpace space(2, 3, VotingRule::Plurality, TieRule::Kind::Uniform, false);
  const Profile first = space.at(0);
  CHECK(first.voters[0].ranking() == std::vector<int>{0, 1, 2});
  CHECK(first.voters[1].ranking() == std::vector<int>{0, 1, 2});
  // the last voter advances fastest
  const Profile second = space.at(1);
  CHECK(second.voters[0].ranking() == std::vector<int>{0, 1, 2});
  CHECK(second.voters[1].ranking() == std::vector<int>{0, 2, 1});
  const Profile last = space.at(space.size() - 1);
  CHECK(last.voters[0].ranking() == std::vector<int>{2, 1, 0});
  CHECK(last.voters[1].ranking() == std::vector<int>{2, 1, 0});

  ProfileSpace again(2, 3, VotingRule::Plurality, TieRule::Kind::Uniform, false);
  for (std::uint64_t i = 0; i < space.size(); ++i) CHECK(space.at(i) == again.at(i));
  CHECK_THROWS_AS(space.at(space.size()), std::out_of_range);
}

TEST_CASE("canonical uniform spaces pin the first voter") {
  ProfileSpace space(3, 3, VotingRule::Approval, TieRule::Kind::Uniform, true);
  for (std::uint64_t i = 0; i < space.size(); ++i)
    CHECK(space.at(i).voters[0].ranking() == std::vector<int>{0, 1, 2});
}

TEST_CASE("deterministic tie orders advance slowest without canonicalization") {
  ProfileSpace space(1, 3, VotingRule::Plurality, TieRule::Kind::Deterministic, false);
  REQUIRE(space.size() == 36);
  CHECK(space.at(0).tie.order().ranking() == std::vector<int>{0, 1, 2});
  CHECK(space.at(5).tie.order().ranking() == std::vector<int>{0, 1, 2});
  CHECK(space.at(6).tie.order().ranking() == std::vector<int>{0, 2, 1});
  CHECK(space.at(35).tie.order().ranking() == std::vector<int>{2, 1, 0});
}

TEST_CASE("an explicit tie order pins the enumeration") {
  ProfileSpace space(2, 3, VotingRule::Plurality, TieRule::Kind::Deterministic, false,
                     std::vector<int>{2, 1, 0});
  CHECK(space.size() == 36);
  for (std::uint64_t i = 0; i < space.size(); i += 7)
    CHECK(space.at(i).tie.order().ranking() == std::vector<int>{2, 1, 0});
}

TEST_CASE("profile space rejects bad parameters") {
  CHECK_THROWS_AS(ProfileSpace(0, 3, VotingRule::Plurality, TieRule::Kind::Uniform, true),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProfileSpace(2, 9, VotingRule::Plurality, TieRule::Kind::Uniform, true),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProfileSpace(2, 3, VotingRule::Plurality, TieRule::Kind::Uniform, true,
                               std::vector<int>{0, 1, 2}),
                  std::invalid_argument);
}

TEST_CASE("find_paradoxes locates and certifies") {
  SECTION("two-voter plurality-deterministic pareto paradox exists") {
    SearchSpec spec{2, 3, VotingRule::Plurality, TieRule::Kind::Deterministic,
                    ParadoxKind::ParetoWeak, 1, true, std::nullopt};
    const SearchOutcome out = find_paradoxes(spec, 1);
    REQUIRE(out.hits.size() == 1);
    CHECK(out.hits[0].report.pareto_weak);
    CHECK(out.hits[0].report.pareto_strong);
  }
  SECTION("two-voter approval-uniform pareto paradox cannot happen") {
    SearchSpec spec{2, 3, VotingRule::Approval, TieRule::Kind::Uniform, ParadoxKind::ParetoWeak,
                    std::nullopt, true, std::nullopt};
    const SearchOutcome out = find_paradoxes(spec, 1);
    CHECK(out.hits.empty());
    CHECK(out.exhausted);
    CHECK(out.profiles_scanned == 6);
  }
  SECTION("two alternatives never reject their majority favourite") {
    SearchSpec spec{3, 2, VotingRule::Plurality, TieRule::Kind::Uniform,
                    ParadoxKind::CondorcetWinner, std::nullopt, true, std::nullopt};
    const SearchOutcome out = find_paradoxes(spec, 1);
    CHECK(out.hits.empty());
    CHECK(out.exhausted);
  }
}

TEST_CASE("hits are valid: re-solving reproduces winners and flags") {
  SearchSpec spec{2, 3, VotingRule::Plurality, TieRule::Kind::Deterministic,
                  ParadoxKind::ParetoWeak, std::nullopt, true, std::nullopt};
  const SearchOutcome out = find_paradoxes(spec, 1);
  CHECK(out.exhausted);
  REQUIRE(!out.hits.empty());
  for (const SearchHit& hit : out.hits) {
    const AltSet winners = spe_outcome(hit.profile);
    CHECK(winners == hit.winners);
    CHECK(classify_paradoxes(hit.profile, winners) == hit.report);
  }
}

TEST_CASE("results are identical across worker counts") {
  SearchSpec spec{5, 3, VotingRule::Plurality, TieRule::Kind::Deterministic,
                  ParadoxKind::CondorcetWinner, std::nullopt, true, std::nullopt};
  const SearchOutcome solo = find_paradoxes(spec, 1);
  const SearchOutcome quad = find_paradoxes(spec, 4);
  CHECK(solo.exhausted);
  CHECK(solo.hits.size() == 140);
  CHECK(same_outcome(solo, quad));

  SearchSpec limited = spec;
  limited.limit = 5;
  const SearchOutcome solo_limited = find_paradoxes(limited, 1);
  const SearchOutcome quad_limited = find_paradoxes(limited, 4);
  CHECK(solo_limited.hits.size() == 5);
  CHECK_FALSE(solo_limited.exhausted);
  CHECK(same_outcome(solo_limited, quad_limited));
  // limited results are a prefix of the exhaustive scan
  for (std::size_t i = 0; i < solo_limited.hits.size(); ++i)
    CHECK(solo_limited.hits[i].index == solo.hits[i].index);
  CHECK(solo_limited.profiles_scanned == solo.hits[4].index + 1);
}

TEST_CASE("relabeling carries paradoxes onto canonical representatives") {
  SearchSpec spec{2, 3, VotingRule::Plurality, TieRule::Kind::Deterministic,
                  ParadoxKind::ParetoWeak, std::nullopt, false, std::nullopt};
  const SearchOutcome out = find_paradoxes(spec, 1);
  REQUIRE(!out.hits.empty());
  for (std::size_t i = 0; i < out.hits.size(); i += 3) {
    const SearchHit& hit = out.hits[i];
    const std::vector<int> perm = canonicalizing_permutation(hit.profile);
    const Profile canon = relabeled(hit.profile, perm);
    CHECK(canon.tie.order().ranking() == std::vector<int>{0, 1, 2});
    const AltSet winners = spe_outcome(canon);
    CHECK(winners == relabeled_set(hit.winners, perm));
    const ParadoxReport report = classify_paradoxes(canon, winners);
    CHECK(report.pareto_weak == hit.report.pareto_weak);
    CHECK(report.pareto_strong == hit.report.pareto_strong);
    CHECK(report.condorcet_winner_paradox == hit.report.condorcet_winner_paradox);
    CHECK(report.condorcet_loser_paradox == hit.report.condorcet_loser_paradox);
  }
}

TEST_CASE("outcomes are equivariant under random relabelings") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 25; ++trial) {
    const Profile p = testutil::random_profile(1 + int(rng() % 4), 3, rng);
    const std::vector<int> perm = testutil::random_order(3, rng).ranking();
    CHECK(spe_outcome(relabeled(p, perm)) == relabeled_set(spe_outcome(p), perm));
  }
}

TEST_CASE("exhaustive scans beyond the budget are refused without a limit") {
  SearchSpec spec{8, 4, VotingRule::Approval, TieRule::Kind::Deterministic,
                  ParadoxKind::ParetoWeak, std::nullopt, false, std::nullopt};
  CHECK_THROWS_AS(find_paradoxes(spec, 1), FeasibilityError);
  CHECK_THROWS_AS(find_paradoxes(SearchSpec{2, 3, VotingRule::Plurality, TieRule::Kind::Uniform,
                                            ParadoxKind::ParetoWeak, 0, true, std::nullopt},
                                 1),
                  std::invalid_argument);
}

TEST_CASE("verify_absence certifies small spaces") {
  for (int n : {2, 3}) {
    for (auto [rule, tie] : {std::pair{VotingRule::Approval, TieRule::Kind::Deterministic},
                             std::pair{VotingRule::Approval, TieRule::Kind::Uniform},
                             std::pair{VotingRule::Plurality, TieRule::Kind::Uniform}}) {
      SearchSpec spec{n, 3, rule, tie, ParadoxKind::ParetoWeak, std::nullopt, true, std::nullopt};
      const AbsenceResult res = verify_absence(spec, 1);
      CHECK(res.absent);
      CHECK(res.profiles_scanned > 0);
    }
  }
  SearchSpec counterexample{2, 3, VotingRule::Plurality, TieRule::Kind::Deterministic,
                            ParadoxKind::ParetoWeak, std::nullopt, true, std::nullopt};
  CHECK_FALSE(verify_absence(counterexample, 1).absent);
}

TEST_CASE("every hit flags the requested paradox") {
  for (ParadoxKind kind : {ParadoxKind::CondorcetWinner, ParadoxKind::CondorcetLoser,
                           ParadoxKind::ParetoWeak, ParadoxKind::ParetoStrong}) {
    SearchSpec spec{3, 3, VotingRule::Plurality, TieRule::Kind::Deterministic, kind, std::nullopt,
                    true, std::nullopt};
    const SearchOutcome out = find_paradoxes(spec, 1);
    for (const SearchHit& hit : out.hits) {
      switch (kind) {
        case ParadoxKind::CondorcetWinner: CHECK(hit.report.condorcet_winner_paradox); break;
        case ParadoxKind::CondorcetLoser: CHECK(hit.report.condorcet_loser_paradox); break;
        case ParadoxKind::ParetoWeak: CHECK(hit.report.pareto_weak); break;
        case ParadoxKind::ParetoStrong: CHECK(hit.report.pareto_strong); break;
      }
    }
  }
}
