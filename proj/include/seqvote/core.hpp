#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seqvote {

// Alternatives are identified by dense indices [0, m); labels are display-only.
inline constexpr int kMaxAlternatives = 32;

/// Subset of alternatives; bit i stands for the alternative with index i.
using AltSet = std::uint32_t;

constexpr AltSet alt_bit(int alt) { return AltSet{1} << alt; }

constexpr AltSet full_set(int m) {
  return m >= kMaxAlternatives ? ~AltSet{0} : (AltSet{1} << m) - 1;
}

constexpr bool set_contains(AltSet s, int alt) { return (s >> alt) & 1u; }

constexpr int set_size(AltSet s) { return std::popcount(s); }

/// Thrown when a requested scan or game tree exceeds the feasibility guard.
struct FeasibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One voter's strict total order over all alternatives, most preferred first.
class PreferenceOrder {
 public:
  explicit PreferenceOrder(std::vector<int> ranking) : ranking_(std::move(ranking)) {
    const int m = static_cast<int>(ranking_.size());
    if (m < 1 || m > kMaxAlternatives)
      throw std::invalid_argument("preference order must rank 1..32 alternatives");
    rank_of_.assign(m, -1);
    for (int r = 0; r < m; ++r) {
      const int alt = ranking_[r];
      if (alt < 0 || alt >= m)
        throw std::invalid_argument("preference order names an out-of-range alternative");
      if (rank_of_[alt] != -1)
        throw std::invalid_argument("preference order repeats an alternative");
      rank_of_[alt] = r;
    }
  }

  static PreferenceOrder identity(int m) {
    std::vector<int> r(m);
    std::iota(r.begin(), r.end(), 0);
    return PreferenceOrder(std::move(r));
  }

  int size() const { return static_cast<int>(ranking_.size()); }
  const std::vector<int>& ranking() const { return ranking_; }
  int alternative_at(int rank) const { return ranking_[rank]; }
  int top() const { return ranking_.front(); }

  /// Rank of an alternative; 0 is most preferred.
  int rank_of(int alt) const { return rank_of_[alt]; }

  /// Map a set of alternatives to rank space: bit r set iff the alternative
  /// ranked r-th belongs to s.
  AltSet to_rank_set(AltSet s) const {
    AltSet out = 0;
    while (s) {
      const int alt = std::countr_zero(s);
      s &= s - 1;
      out |= alt_bit(rank_of_[alt]);
    }
    return out;
  }

  bool operator==(const PreferenceOrder& other) const { return ranking_ == other.ranking_; }

 private:
  std::vector<int> ranking_;
  std::vector<int> rank_of_;
};

enum class VotingRule { Plurality, Approval };

/// Deterministic tie-breaking carries a fixed priority order over the
/// alternatives; uniform tie-breaking keeps every tied alternative.
class TieRule {
 public:
  enum class Kind { Deterministic, Uniform };

  static TieRule uniform() { return TieRule(Kind::Uniform, std::nullopt); }
  static TieRule deterministic(PreferenceOrder order) {
    return TieRule(Kind::Deterministic, std::move(order));
  }

  Kind kind() const { return kind_; }
  bool is_uniform() const { return kind_ == Kind::Uniform; }
  bool is_deterministic() const { return kind_ == Kind::Deterministic; }

  const PreferenceOrder& order() const {
    if (!order_) throw std::logic_error("uniform tie rule has no priority order");
    return *order_;
  }

  bool operator==(const TieRule& other) const {
    return kind_ == other.kind_ && order_ == other.order_;
  }

 private:
  TieRule(Kind kind, std::optional<PreferenceOrder> order)
      : kind_(kind), order_(std::move(order)) {}

  Kind kind_;
  std::optional<PreferenceOrder> order_;
};

/// One cast vote: at most one alternative under plurality (empty = abstain),
/// any subset under approval.
struct Ballot {
  AltSet approved = 0;
  bool operator==(const Ballot&) const = default;
};

/// A full election: alternatives, voters in speaking order, rule, tie-breaking.
struct Profile {
  std::vector<std::string> alternatives;  // labels; position is the alternative index
  std::vector<PreferenceOrder> voters;
  VotingRule rule = VotingRule::Plurality;
  TieRule tie = TieRule::uniform();

  int alternative_count() const { return static_cast<int>(alternatives.size()); }
  int voter_count() const { return static_cast<int>(voters.size()); }

  std::optional<int> index_of(std::string_view label) const {
    for (int i = 0; i < alternative_count(); ++i)
      if (alternatives[i] == label) return i;
    return std::nullopt;
  }

  bool operator==(const Profile&) const = default;
};

/// Throws std::invalid_argument when a structural invariant is violated.
inline void validate_profile(const Profile& p) {
  const int m = p.alternative_count();
  if (m < 1 || m > kMaxAlternatives)
    throw std::invalid_argument("profile must have 1..32 alternatives");
  for (const auto& label : p.alternatives)
    if (label.empty()) throw std::invalid_argument("alternative label is empty");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (p.alternatives[i] == p.alternatives[j])
        throw std::invalid_argument("duplicate alternative label '" + p.alternatives[i] + "'");
  if (p.voters.empty()) throw std::invalid_argument("profile has no voters");
  for (const auto& voter : p.voters)
    if (voter.size() != m)
      throw std::invalid_argument("voter order does not rank the profile's alternatives");
  if (p.tie.is_deterministic() && p.tie.order().size() != m)
    throw std::invalid_argument("tie-break order does not rank the profile's alternatives");
}

/// Vote counts after the first `next` voters have spoken.
struct TallyState {
  std::vector<int> counts;
  int next = 0;
  bool operator==(const TallyState&) const = default;
};

inline TallyState initial_tally(int m) { return TallyState{std::vector<int>(m, 0), 0}; }

/// Most preferred member of s under the given order.
inline int top_alternative(const PreferenceOrder& order, AltSet s) {
  if (s == 0) throw std::invalid_argument("empty subset");
  if (s & ~full_set(order.size()))
    throw std::invalid_argument("subset not covered by the order");
  return order.alternative_at(std::countr_zero(order.to_rank_set(s)));
}

/// Strict total order on nonempty subsets induced by a preference order:
/// better top element first, then smaller cardinality, then the same test on
/// the sets with the shared top removed. Greater means s1 is preferred;
/// equal holds only for identical sets.
inline std::strong_ordering lifted_compare(const PreferenceOrder& order, AltSet s1, AltSet s2) {
  if (s1 == 0 || s2 == 0) throw std::invalid_argument("empty subset");
  const AltSet universe = full_set(order.size());
  if ((s1 & ~universe) || (s2 & ~universe))
    throw std::invalid_argument("subset not covered by the order");
  AltSet p1 = order.to_rank_set(s1);
  AltSet p2 = order.to_rank_set(s2);
  if (p1 == p2) return std::strong_ordering::equal;
  const int c1 = set_size(p1);
  const int c2 = set_size(p2);
  for (;;) {
    const int r1 = std::countr_zero(p1);
    const int r2 = std::countr_zero(p2);
    if (r1 != r2) return r1 < r2 ? std::strong_ordering::greater : std::strong_ordering::less;
    if (c1 != c2) return c1 < c2 ? std::strong_ordering::greater : std::strong_ordering::less;
    p1 &= p1 - 1;
    p2 &= p2 - 1;
    if (p1 == p2) return std::strong_ordering::equal;
  }
}

/// Canonical ballot order: by cardinality, then lexicographically on the
/// ascending member indices; the abstention comes first.
inline bool canonical_ballot_less(AltSet a, AltSet b) {
  if (set_size(a) != set_size(b)) return set_size(a) < set_size(b);
  while (a && b) {
    const int ia = std::countr_zero(a);
    const int ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

/// Every ballot a voter may cast, in canonical ballot order.
inline std::vector<Ballot> legal_ballots(VotingRule rule, int m) {
  if (m < 1 || m > kMaxAlternatives)
    throw std::invalid_argument("alternative count out of range");
  std::vector<Ballot> out;
  if (rule == VotingRule::Plurality) {
    out.reserve(m + 1);
    out.push_back(Ballot{0});
    for (int i = 0; i < m; ++i) out.push_back(Ballot{alt_bit(i)});
  } else {
    if (m > 24) throw std::length_error("approval ballot space too large to enumerate");
    out.reserve(std::size_t{1} << m);
    for (AltSet s = 0; s <= full_set(m); ++s) out.push_back(Ballot{s});
    std::sort(out.begin(), out.end(),
              [](Ballot a, Ballot b) { return canonical_ballot_less(a.approved, b.approved); });
  }
  return out;
}

inline bool ballot_is_legal(const Profile& profile, Ballot ballot) {
  if (ballot.approved & ~full_set(profile.alternative_count())) return false;
  if (profile.rule == VotingRule::Plurality && set_size(ballot.approved) > 1) return false;
  return true;
}

/// Record one ballot; the input state is unchanged.
inline TallyState apply_ballot(const Profile& profile, const TallyState& state, Ballot ballot) {
  if (state.next >= profile.voter_count())
    throw std::logic_error("ballot applied to a terminal tally");
  if (static_cast<int>(state.counts.size()) != profile.alternative_count())
    throw std::invalid_argument("tally does not match the profile's alternatives");
  if (!ballot_is_legal(profile, ballot))
    throw std::invalid_argument("ballot not legal under the profile's rule");
  TallyState out = state;
  AltSet s = ballot.approved;
  while (s) {
    ++out.counts[std::countr_zero(s)];
    s &= s - 1;
  }
  ++out.next;
  return out;
}

/// Election outcome for the given counts: all maximum-vote alternatives under
/// uniform tie-breaking, the highest-priority one of them under deterministic.
inline AltSet winning_set(const std::vector<int>& counts, const TieRule& tie) {
  const int m = static_cast<int>(counts.size());
  if (m < 1 || m > kMaxAlternatives)
    throw std::invalid_argument("counts vector arity out of range");
  int best = counts[0];
  for (int i = 1; i < m; ++i) best = std::max(best, counts[i]);
  AltSet winners = 0;
  for (int i = 0; i < m; ++i)
    if (counts[i] == best) winners |= alt_bit(i);
  if (tie.is_uniform()) return winners;
  return alt_bit(top_alternative(tie.order(), winners));
}

/// Rename alternatives: index i becomes perm[i], labels travel along.
inline Profile relabeled(const Profile& profile, const std::vector<int>& perm) {
  const int m = profile.alternative_count();
  // perm must be a permutation of [0, m)
  PreferenceOrder check{perm};
  if (check.size() != m) throw std::invalid_argument("permutation arity mismatch");
  Profile out;
  out.rule = profile.rule;
  out.alternatives.resize(m);
  for (int i = 0; i < m; ++i) out.alternatives[perm[i]] = profile.alternatives[i];
  auto remap = [&](const PreferenceOrder& order) {
    std::vector<int> r(m);
    for (int k = 0; k < m; ++k) r[k] = perm[order.alternative_at(k)];
    return PreferenceOrder(std::move(r));
  };
  out.voters.reserve(profile.voters.size());
  for (const auto& voter : profile.voters) out.voters.push_back(remap(voter));
  out.tie = profile.tie.is_uniform() ? TieRule::uniform()
                                     : TieRule::deterministic(remap(profile.tie.order()));
  return out;
}

inline AltSet relabeled_set(AltSet s, const std::vector<int>& perm) {
  AltSet out = 0;
  while (s) {
    out |= alt_bit(perm[std::countr_zero(s)]);
    s &= s - 1;
  }
  return out;
}

}  // namespace seqvote
