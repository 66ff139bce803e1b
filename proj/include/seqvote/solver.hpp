#pragma once

#include <cassert>
#include <cstring>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "seqvote/core.hpp"

namespace seqvote {

struct SolveStats {
  std::uint64_t states_visited = 0;
  std::uint64_t memo_hits = 0;
};

/// Outcome of a solve plus the canonical equilibrium ballot sequence:
/// replaying `path` from the zero tally reproduces `winners`.
struct SolveResult {
  AltSet winners = 0;
  std::vector<Ballot> path;
  SolveStats stats;
};

struct SolverOptions {
  bool memoize = true;  // disable to recurse on states without a memo table
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) out = saturating_mul(out, base);
  return out;
}

}  // namespace detail

/// Upper bound on distinct (next, counts) states: sum over i of (i+1)^m.
inline std::uint64_t memo_state_bound(int voters, int alternatives) {
  std::uint64_t total = 0;
  for (int i = 0; i <= voters; ++i) {
    const std::uint64_t level = detail::saturating_pow(std::uint64_t(i) + 1, alternatives);
    if (total > std::numeric_limits<std::uint64_t>::max() - level)
      return std::numeric_limits<std::uint64_t>::max();
    total += level;
  }
  return total;
}

/// Backward-induction solver for one profile.
///
/// The continuation game below a tally depends only on the next voter index
/// and the current counts, never on the ballot history, so values are
/// memoized on (next, counts). Counts are packed into a fixed-width key: a
/// dense table when the full count cube is small, a 64-bit packed key when it
/// fits, and raw count bytes otherwise.
class Solver {
 public:
  explicit Solver(const Profile& profile, SolverOptions options = {})
      : profile_(profile), options_(options) {
    validate_profile(profile);
    m_ = profile.alternative_count();
    n_ = profile.voter_count();
    counts_.assign(m_, 0);
    for (Ballot b : legal_ballots(profile.rule, m_)) ballots_.push_back(b.approved);
    init_memo();
  }

  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  /// The unique SPE outcome.
  AltSet outcome() {
    ensure_solved();
    return root_value_;
  }

  /// Outcome plus the canonical equilibrium path: at every tally the first
  /// ballot in canonical order whose continuation value is the voter's
  /// optimum.
  SolveResult with_path() {
    ensure_solved();
    SolveResult result;
    result.winners = root_value_;
    result.path.reserve(n_);
    for (int next = 0; next < n_; ++next) {
      const PreferenceOrder& order = profile_.voters[next];
      AltSet value = 0;
      AltSet chosen = 0;
      bool have = false;
      for (AltSet b : ballots_) {
        bump(b, +1);
        const AltSet v = best_value(next + 1);
        bump(b, -1);
        if (!have || lifted_compare(order, v, value) > 0) {
          value = v;
          chosen = b;
          have = true;
        }
      }
      result.path.push_back(Ballot{chosen});
      bump(chosen, +1);
    }
    const AltSet replayed = winning_set(counts_, profile_.tie);
    for (const Ballot b : result.path) bump(b.approved, -1);
    assert(replayed == root_value_);
    (void)replayed;
    result.stats = stats_;
    return result;
  }

  const SolveStats& stats() const { return stats_; }

 private:
  enum class MemoMode { Dense, Hash64, HashBytes, Off };

  void init_memo() {
    if (!options_.memoize) {
      mode_ = MemoMode::Off;
      return;
    }
    const std::uint64_t side = std::uint64_t(n_) + 1;
    const std::uint64_t cube = detail::saturating_pow(side, m_);
    const std::uint64_t total = detail::saturating_mul(cube, side);
    constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 22;
    pack_width_ = std::bit_width(static_cast<unsigned>(n_));
    if (total <= kDenseLimit) {
      mode_ = MemoMode::Dense;
      dense_stride_ = cube;
      dense_.assign(total, 0);  // 0 = unset; winning sets are never empty
    } else if (m_ * pack_width_ <= 64) {
      mode_ = MemoMode::Hash64;
      hash64_.resize(n_ + 1);
    } else {
      mode_ = MemoMode::HashBytes;
      hash_bytes_.resize(n_ + 1);
    }
  }

  std::uint64_t dense_index(int next) const {
    std::uint64_t idx = 0;
    for (int j = m_ - 1; j >= 0; --j) idx = idx * (std::uint64_t(n_) + 1) + counts_[j];
    return std::uint64_t(next) * dense_stride_ + idx;
  }

  std::uint64_t packed_key() const {
    std::uint64_t key = 0;
    for (int j = 0; j < m_; ++j) key |= std::uint64_t(counts_[j]) << (j * pack_width_);
    return key;
  }

  std::string byte_key() const {
    return std::string(reinterpret_cast<const char*>(counts_.data()),
                       counts_.size() * sizeof(int));
  }

  bool memo_lookup(int next, AltSet& value) {
    switch (mode_) {
      case MemoMode::Dense: {
        const AltSet v = dense_[dense_index(next)];
        if (v == 0) return false;
        value = v;
        return true;
      }
      case MemoMode::Hash64: {
        const auto& level = hash64_[next];
        const auto it = level.find(packed_key());
        if (it == level.end()) return false;
        value = it->second;
        return true;
      }
      case MemoMode::HashBytes: {
        const auto& level = hash_bytes_[next];
        const auto it = level.find(byte_key());
        if (it == level.end()) return false;
        value = it->second;
        return true;
      }
      case MemoMode::Off:
        return false;
    }
    return false;
  }

  void memo_store(int next, AltSet value) {
    switch (mode_) {
      case MemoMode::Dense:
        dense_[dense_index(next)] = value;
        break;
      case MemoMode::Hash64:
        hash64_[next].emplace(packed_key(), value);
        break;
      case MemoMode::HashBytes:
        hash_bytes_[next].emplace(byte_key(), value);
        break;
      case MemoMode::Off:
        break;
    }
  }

  void bump(AltSet ballot, int delta) {
    while (ballot) {
      counts_[std::countr_zero(ballot)] += delta;
      ballot &= ballot - 1;
    }
  }

  AltSet best_value(int next) {
    AltSet value = 0;
    if (memo_lookup(next, value)) {
      ++stats_.memo_hits;
      return value;
    }
    ++stats_.states_visited;
    if (next == n_) {
      value = winning_set(counts_, profile_.tie);
    } else {
      const PreferenceOrder& order = profile_.voters[next];
      for (AltSet b : ballots_) {
        bump(b, +1);
        const AltSet v = best_value(next + 1);
        bump(b, -1);
        if (value == 0 || lifted_compare(order, v, value) > 0) value = v;
      }
    }
    memo_store(next, value);
    return value;
  }

  void ensure_solved() {
    if (solved_) return;
    root_value_ = best_value(0);
    solved_ = true;
  }

  const Profile& profile_;
  SolverOptions options_;
  int m_ = 0;
  int n_ = 0;
  std::vector<AltSet> ballots_;
  std::vector<int> counts_;
  MemoMode mode_ = MemoMode::Off;
  int pack_width_ = 0;
  std::uint64_t dense_stride_ = 0;
  std::vector<AltSet> dense_;
  std::vector<std::unordered_map<std::uint64_t, AltSet>> hash64_;
  std::vector<std::unordered_map<std::string, AltSet>> hash_bytes_;
  bool solved_ = false;
  AltSet root_value_ = 0;
  SolveStats stats_;
};

/// The unique SPE winning set of the profile.
inline AltSet spe_outcome(const Profile& profile) { return Solver(profile).outcome(); }

/// SPE outcome plus the canonical equilibrium ballot sequence.
inline SolveResult spe_path(const Profile& profile) { return Solver(profile).with_path(); }

/// Verification oracle: recurses over complete ballot histories with no
/// memoization and no state merging; counts are re-derived from the history
/// at every leaf. Refuses game trees beyond 10^7 leaves.
inline AltSet naive_outcome(const Profile& profile) {
  validate_profile(profile);
  const int m = profile.alternative_count();
  const int n = profile.voter_count();
  std::vector<AltSet> ballots;
  for (Ballot b : legal_ballots(profile.rule, m)) ballots.push_back(b.approved);
  const std::uint64_t leaves = detail::saturating_pow(ballots.size(), n);
  if (leaves > 10'000'000)
    throw FeasibilityError("full game tree has more than 1e7 leaves; use spe_outcome");

  std::vector<AltSet> history;
  history.reserve(n);
  std::vector<int> counts(m);

  auto evaluate = [&](auto&& self) -> AltSet {
    if (static_cast<int>(history.size()) == n) {
      std::fill(counts.begin(), counts.end(), 0);
      for (AltSet b : history) {
        while (b) {
          ++counts[std::countr_zero(b)];
          b &= b - 1;
        }
      }
      return winning_set(counts, profile.tie);
    }
    const PreferenceOrder& order = profile.voters[history.size()];
    AltSet value = 0;
    for (AltSet b : ballots) {
      history.push_back(b);
      const AltSet v = self(self);
      history.pop_back();
      if (value == 0 || lifted_compare(order, v, value) > 0) value = v;
    }
    return value;
  };
  return evaluate(evaluate);
}

}  // namespace seqvote
