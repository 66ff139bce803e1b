#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "seqvote/core.hpp"

namespace seqvote {

/// Pairwise-majority structure of a profile together with the four paradox
/// flags evaluated against one winning set.
struct ParadoxReport {
  std::optional<int> condorcet_winner;
  std::optional<int> condorcet_loser;
  std::vector<std::pair<int, int>> pareto_pairs;  // (dominator, dominated)
  bool condorcet_winner_paradox = false;
  bool condorcet_loser_paradox = false;
  bool pareto_weak = false;
  bool pareto_strong = false;
  bool operator==(const ParadoxReport&) const = default;
};

/// (# voters ranking a above b) - (# voters ranking b above a).
/// Positive means a beats b pairwise.
inline int pairwise_margin(const Profile& profile, int a, int b) {
  const int m = profile.alternative_count();
  if (a == b) throw std::invalid_argument("pairwise margin needs two distinct alternatives");
  if (a < 0 || a >= m || b < 0 || b >= m)
    throw std::invalid_argument("alternative index out of range");
  int margin = 0;
  for (const PreferenceOrder& voter : profile.voters)
    margin += voter.rank_of(a) < voter.rank_of(b) ? 1 : -1;
  return margin;
}

/// The alternative beating every other pairwise, if one exists.
inline std::optional<int> condorcet_winner(const Profile& profile) {
  const int m = profile.alternative_count();
  for (int x = 0; x < m; ++x) {
    bool wins_all = true;
    for (int y = 0; y < m && wins_all; ++y)
      if (y != x && pairwise_margin(profile, x, y) <= 0) wins_all = false;
    if (wins_all) return x;
  }
  return std::nullopt;
}

/// The alternative losing to every other pairwise, if one exists.
inline std::optional<int> condorcet_loser(const Profile& profile) {
  const int m = profile.alternative_count();
  for (int x = 0; x < m; ++x) {
    bool loses_all = true;
    for (int y = 0; y < m && loses_all; ++y)
      if (y != x && pairwise_margin(profile, x, y) >= 0) loses_all = false;
    if (loses_all) return x;
  }
  return std::nullopt;
}

/// All ordered pairs (x, y) such that every voter ranks x above y,
/// lexicographically ordered.
inline std::vector<std::pair<int, int>> pareto_dominations(const Profile& profile) {
  const int m = profile.alternative_count();
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      if (x == y) continue;
      bool dominates = true;
      for (const PreferenceOrder& voter : profile.voters)
        if (voter.rank_of(x) > voter.rank_of(y)) {
          dominates = false;
          break;
        }
      if (dominates) pairs.emplace_back(x, y);
    }
  return pairs;
}

/// Evaluate the four paradox definitions against a winning set produced for
/// the same profile.
inline ParadoxReport classify_paradoxes(const Profile& profile, AltSet winners) {
  if (winners == 0) throw std::invalid_argument("winning set is empty");
  if (winners & ~full_set(profile.alternative_count()))
    throw std::invalid_argument("winning set not covered by the profile");
  ParadoxReport report;
  report.condorcet_winner = condorcet_winner(profile);
  report.condorcet_loser = condorcet_loser(profile);
  report.pareto_pairs = pareto_dominations(profile);
  report.condorcet_winner_paradox =
      report.condorcet_winner && !set_contains(winners, *report.condorcet_winner);
  report.condorcet_loser_paradox =
      report.condorcet_loser && winners == alt_bit(*report.condorcet_loser);
  for (const auto& [dominator, dominated] : report.pareto_pairs) {
    (void)dominator;
    if (set_contains(winners, dominated)) report.pareto_weak = true;
    if (winners == alt_bit(dominated)) report.pareto_strong = true;
  }
  return report;
}

}  // namespace seqvote
