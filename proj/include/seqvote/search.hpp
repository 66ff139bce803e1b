#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "seqvote/analysis.hpp"
#include "seqvote/core.hpp"
#include "seqvote/solver.hpp"

namespace seqvote {

enum class ParadoxKind { CondorcetWinner, CondorcetLoser, ParetoWeak, ParetoStrong };

/// A profile-space scan request.
struct SearchSpec {
  int voters = 1;
  int alternatives = 1;
  VotingRule rule = VotingRule::Plurality;
  TieRule::Kind tie = TieRule::Kind::Uniform;
  ParadoxKind paradox = ParadoxKind::CondorcetWinner;
  std::optional<std::uint64_t> limit;
  bool canonical = true;
  // Deterministic only: pin the tie-break order to this ranking instead of
  // the identity (canonical) or the iterated orders (non-canonical).
  std::optional<std::vector<int>> tie_order;
};

/// The space of preference-profile assignments, randomly addressable so it
/// can be sharded across workers.
///
/// Orders are indexed lexicographically (index 0 is the identity). Voters
/// advance lexicographically with the last voter fastest. Canonical mode
/// quotients alternative relabeling: under uniform tie-breaking voter 1 is
/// pinned to the identity order; under deterministic tie-breaking the
/// tie-break order is pinned instead and all voters range freely. Without
/// canonicalization, deterministic spaces additionally iterate the tie-break
/// order as the slowest-advancing digit.
class ProfileSpace {
 public:
  ProfileSpace(int voters, int alternatives, VotingRule rule, TieRule::Kind tie, bool canonical,
               std::optional<std::vector<int>> tie_order = std::nullopt)
      : n_(voters), m_(alternatives), rule_(rule), tie_kind_(tie), canonical_(canonical) {
    if (n_ < 1) throw std::invalid_argument("enumeration needs at least one voter");
    if (m_ < 1 || m_ > 8)
      throw std::invalid_argument("enumeration supports 1..8 alternatives");
    PreferenceOrder order = PreferenceOrder::identity(m_);
    std::vector<int> ranking = order.ranking();
    do {
      orders_.push_back(PreferenceOrder(ranking));
    } while (std::next_permutation(ranking.begin(), ranking.end()));
    order_count_ = orders_.size();

    labels_.reserve(m_);
    for (int i = 0; i < m_; ++i) labels_.push_back(std::string(1, char('A' + i)));

    if (tie_order) {
      if (tie_kind_ != TieRule::Kind::Deterministic)
        throw std::invalid_argument("tie order given for a uniform tie rule");
      pinned_tie_ = PreferenceOrder(*tie_order);
      if (pinned_tie_->size() != m_)
        throw std::invalid_argument("tie order arity mismatch");
    } else if (tie_kind_ == TieRule::Kind::Deterministic && canonical_) {
      pinned_tie_ = PreferenceOrder::identity(m_);
    }
    iterate_tie_ = tie_kind_ == TieRule::Kind::Deterministic && !pinned_tie_;
    first_free_voter_ = (tie_kind_ == TieRule::Kind::Uniform && canonical_) ? 1 : 0;

    const int digits = (n_ - first_free_voter_) + (iterate_tie_ ? 1 : 0);
    size_ = 1;
    for (int i = 0; i < digits; ++i) {
      const std::uint64_t next = detail::saturating_mul(size_, order_count_);
      if (next == std::numeric_limits<std::uint64_t>::max())
        throw std::overflow_error("profile space size overflows");
      size_ = next;
    }
  }

  std::uint64_t size() const { return size_; }
  int voters() const { return n_; }
  int alternatives() const { return m_; }
  const std::vector<PreferenceOrder>& orders() const { return orders_; }

  Profile at(std::uint64_t index) const {
    if (index >= size_) throw std::out_of_range("profile index out of range");
    std::uint64_t rest = index;
    std::size_t tie_index = 0;
    if (iterate_tie_) {
      std::uint64_t per_tie = size_ / order_count_;
      tie_index = static_cast<std::size_t>(rest / per_tie);
      rest %= per_tie;
    }
    Profile profile;
    profile.alternatives = labels_;
    profile.rule = rule_;
    profile.voters.reserve(n_);
    std::vector<std::size_t> digit(n_, 0);
    for (int v = n_ - 1; v >= first_free_voter_; --v) {
      digit[v] = static_cast<std::size_t>(rest % order_count_);
      rest /= order_count_;
    }
    for (int v = 0; v < n_; ++v) profile.voters.push_back(orders_[digit[v]]);
    if (tie_kind_ == TieRule::Kind::Uniform) {
      profile.tie = TieRule::uniform();
    } else {
      profile.tie = TieRule::deterministic(pinned_tie_ ? *pinned_tie_ : orders_[tie_index]);
    }
    return profile;
  }

 private:
  int n_;
  int m_;
  VotingRule rule_;
  TieRule::Kind tie_kind_;
  bool canonical_;
  std::optional<PreferenceOrder> pinned_tie_;
  bool iterate_tie_ = false;
  int first_free_voter_ = 0;
  std::vector<PreferenceOrder> orders_;
  std::vector<std::string> labels_;
  std::uint64_t order_count_ = 1;
  std::uint64_t size_ = 1;
};

inline ProfileSpace enumerate_profiles(const SearchSpec& spec) {
  return ProfileSpace(spec.voters, spec.alternatives, spec.rule, spec.tie, spec.canonical,
                      spec.tie_order);
}

/// The alternative relabeling that maps a profile into canonical position:
/// voter 1's order becomes the identity under uniform tie-breaking, the
/// tie-break order becomes the identity under deterministic.
inline std::vector<int> canonicalizing_permutation(const Profile& profile) {
  const PreferenceOrder& anchor =
      profile.tie.is_deterministic() ? profile.tie.order() : profile.voters.front();
  std::vector<int> perm(anchor.size());
  for (int rank = 0; rank < anchor.size(); ++rank) perm[anchor.alternative_at(rank)] = rank;
  return perm;
}

struct SearchHit {
  std::uint64_t index = 0;
  Profile profile;
  AltSet winners = 0;
  ParadoxReport report;
};

struct SearchOutcome {
  std::vector<SearchHit> hits;
  bool exhausted = false;
  std::uint64_t profiles_scanned = 0;
};

namespace detail {

inline bool paradox_flag(const ParadoxReport& report, ParadoxKind kind) {
  switch (kind) {
    case ParadoxKind::CondorcetWinner: return report.condorcet_winner_paradox;
    case ParadoxKind::CondorcetLoser: return report.condorcet_loser_paradox;
    case ParadoxKind::ParetoWeak: return report.pareto_weak;
    case ParadoxKind::ParetoStrong: return report.pareto_strong;
  }
  return false;
}

// The requested paradox needs its pairwise precondition; profiles without it
// can be skipped before solving.
inline bool paradox_possible(const Profile& profile, ParadoxKind kind) {
  switch (kind) {
    case ParadoxKind::CondorcetWinner: return condorcet_winner(profile).has_value();
    case ParadoxKind::CondorcetLoser: return condorcet_loser(profile).has_value();
    case ParadoxKind::ParetoWeak:
    case ParadoxKind::ParetoStrong: return !pareto_dominations(profile).empty();
  }
  return true;
}

inline std::uint64_t estimated_scan_ops(const SearchSpec& spec, std::uint64_t space_size) {
  const std::uint64_t branching = spec.rule == VotingRule::Approval
                                      ? saturating_pow(2, spec.alternatives)
                                      : std::uint64_t(spec.alternatives) + 1;
  const std::uint64_t per_profile =
      saturating_mul(memo_state_bound(spec.voters, spec.alternatives), branching);
  return saturating_mul(space_size, per_profile);
}

// Rough per-scan op budget the no-limit guard refuses beyond.
inline constexpr std::uint64_t kSearchGuardOps = 50'000'000'000ull;

inline void scan_range(const ProfileSpace& space, const SearchSpec& spec, std::uint64_t lo,
                       std::uint64_t hi, std::vector<SearchHit>& out,
                       const std::atomic<bool>* stop) {
  for (std::uint64_t i = lo; i < hi; ++i) {
    if (stop && stop->load(std::memory_order_relaxed)) return;
    Profile profile = space.at(i);
    if (!paradox_possible(profile, spec.paradox)) continue;
    const AltSet winners = Solver(profile).outcome();
    ParadoxReport report = classify_paradoxes(profile, winners);
    if (paradox_flag(report, spec.paradox))
      out.push_back(SearchHit{i, std::move(profile), winners, std::move(report)});
  }
}

}  // namespace detail

/// Solve every profile in the spec's space and collect the ones exhibiting
/// the requested paradox, in enumeration order, up to the optional limit.
///
/// The scan is sharded into contiguous chunks dispatched to `workers`
/// threads (0 = hardware concurrency); each worker owns a private solver
/// memo and results are merged in enumeration order, so the outcome is
/// identical for every worker count. Without a limit, scans beyond the
/// feasibility budget are refused.
inline SearchOutcome find_paradoxes(const SearchSpec& spec, int workers = 0) {
  if (spec.limit && *spec.limit < 1) throw std::invalid_argument("limit must be at least 1");
  const ProfileSpace space = enumerate_profiles(spec);
  const std::uint64_t total = space.size();
  if (!spec.limit && detail::estimated_scan_ops(spec, total) > detail::kSearchGuardOps)
    throw FeasibilityError(
        "exhaustive scan over this space exceeds the feasibility budget; set a limit");

  if (workers <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    workers = hw == 0 ? 1 : static_cast<int>(hw);
  }

  SearchOutcome outcome;
  if (workers == 1 || total < 256) {
    std::uint64_t scanned = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
      std::vector<SearchHit> found;
      detail::scan_range(space, spec, i, i + 1, found, nullptr);
      scanned = i + 1;
      for (auto& hit : found) outcome.hits.push_back(std::move(hit));
      if (spec.limit && outcome.hits.size() >= *spec.limit) break;
    }
    outcome.profiles_scanned = scanned;
    outcome.exhausted = scanned == total;
    return outcome;
  }

  const std::uint64_t chunk =
      std::clamp<std::uint64_t>(total / (std::uint64_t(workers) * 8), 64, 8192);
  const std::uint64_t num_chunks = (total + chunk - 1) / chunk;

  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<bool> stop{false};
  std::mutex merge_mutex;
  std::map<std::uint64_t, std::vector<SearchHit>> pending;
  std::uint64_t next_to_merge = 0;
  std::uint64_t merged_profiles = 0;

  auto merge_ready = [&](std::uint64_t id, std::vector<SearchHit> found) {
    std::lock_guard<std::mutex> lock(merge_mutex);
    pending.emplace(id, std::move(found));
    while (!stop.load()) {
      auto it = pending.find(next_to_merge);
      if (it == pending.end()) break;
      const std::uint64_t lo = next_to_merge * chunk;
      const std::uint64_t hi = std::min(lo + chunk, total);
      for (auto& hit : it->second) {
        outcome.hits.push_back(std::move(hit));
        if (spec.limit && outcome.hits.size() >= *spec.limit) {
          merged_profiles = outcome.hits.back().index + 1;
          stop.store(true);
          break;
        }
      }
      if (!stop.load()) merged_profiles = hi;
      pending.erase(it);
      ++next_to_merge;
    }
  };

  auto worker_main = [&]() {
    while (!stop.load(std::memory_order_relaxed)) {
      const std::uint64_t id = next_chunk.fetch_add(1);
      if (id >= num_chunks) return;
      const std::uint64_t lo = id * chunk;
      const std::uint64_t hi = std::min(lo + chunk, total);
      std::vector<SearchHit> found;
      detail::scan_range(space, spec, lo, hi, found, &stop);
      if (stop.load(std::memory_order_relaxed) && found.empty()) {
        // Chunks abandoned after the stop flag are irrelevant: the limit was
        // already reached inside the merged prefix.
        merge_ready(id, {});
        return;
      }
      merge_ready(id, std::move(found));
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker_main);
  for (auto& t : pool) t.join();

  outcome.profiles_scanned = merged_profiles;
  outcome.exhausted = merged_profiles == total;
  return outcome;
}

struct AbsenceResult {
  bool absent = false;
  std::uint64_t profiles_scanned = 0;
};

/// Exhaustively certify that no profile in the canonical space exhibits the
/// requested paradox. True only when the whole space was scanned hit-free.
inline AbsenceResult verify_absence(const SearchSpec& spec, int workers = 0) {
  SearchSpec scan = spec;
  scan.limit.reset();
  scan.canonical = true;
  const SearchOutcome outcome = find_paradoxes(scan, workers);
  return AbsenceResult{outcome.hits.empty() && outcome.exhausted, outcome.profiles_scanned};
}

}  // namespace seqvote
