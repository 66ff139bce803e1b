#pragma once

#include <cctype>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "seqvote/analysis.hpp"
#include "seqvote/core.hpp"
#include "seqvote/solver.hpp"

namespace seqvote {

/// Malformed profile document; carries the offending line number.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_number, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool valid_label(std::string_view label) {
  if (label.empty()) return false;
  for (char c : label)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// A ranking written as label(>label)*, resolved against the profile's labels.
inline PreferenceOrder parse_ranking(std::string_view text, int line,
                                     const std::vector<std::string>& labels) {
  const int m = static_cast<int>(labels.size());
  std::vector<int> ranking;
  std::vector<bool> seen(m, false);
  for (std::string_view token : split(text, '>')) {
    token = trim(token);
    if (!valid_label(token)) throw ParseError(line, "bad alternative label '" + std::string(token) + "'");
    int index = -1;
    for (int i = 0; i < m; ++i)
      if (labels[i] == token) {
        index = i;
        break;
      }
    if (index < 0) throw ParseError(line, "unknown alternative '" + std::string(token) + "'");
    if (seen[index]) throw ParseError(line, "duplicate alternative '" + std::string(token) + "'");
    seen[index] = true;
    ranking.push_back(index);
  }
  if (static_cast<int>(ranking.size()) != m)
    throw ParseError(line, "ranking lists " + std::to_string(ranking.size()) + " of " +
                               std::to_string(m) + " alternatives");
  return PreferenceOrder(std::move(ranking));
}

}  // namespace detail

/// Parse a profile document:
///   rule=plurality|approval
///   tie=uniform | tie=deterministic:<label(>label)*>
///   alts=<comma-separated labels>
///   one voter ranking per line, label(>label)*
/// '#' starts a comment, blank lines are ignored.
inline Profile parse_profile(std::string_view text) {
  Profile profile;
  enum class Stage { Rule, Tie, Alts, Voters } stage = Stage::Rule;
  std::string tie_spec;
  int tie_line = 0;
  bool tie_uniform = true;
  int line = 0;
  int last_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line;
    if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    const std::string_view body = detail::trim(raw);
    if (body.empty()) continue;
    last_line = line;

    switch (stage) {
      case Stage::Rule: {
        if (!body.starts_with("rule=")) throw ParseError(line, "expected rule=plurality|approval");
        const std::string_view value = body.substr(5);
        if (value == "plurality") profile.rule = VotingRule::Plurality;
        else if (value == "approval") profile.rule = VotingRule::Approval;
        else throw ParseError(line, "unknown voting rule '" + std::string(value) + "'");
        stage = Stage::Tie;
        break;
      }
      case Stage::Tie: {
        if (!body.starts_with("tie="))
          throw ParseError(line, "expected tie=uniform or tie=deterministic:<order>");
        const std::string_view value = body.substr(4);
        if (value == "uniform") {
          tie_uniform = true;
        } else if (value.starts_with("deterministic:")) {
          tie_uniform = false;
          tie_spec = std::string(value.substr(14));
          tie_line = line;
        } else {
          throw ParseError(line, "unknown tie rule '" + std::string(value) + "'");
        }
        stage = Stage::Alts;
        break;
      }
      case Stage::Alts: {
        if (!body.starts_with("alts=")) throw ParseError(line, "expected alts=<labels>");
        for (std::string_view token : detail::split(body.substr(5), ',')) {
          token = detail::trim(token);
          if (!detail::valid_label(token))
            throw ParseError(line, "bad alternative label '" + std::string(token) + "'");
          if (profile.index_of(token))
            throw ParseError(line, "duplicate alternative '" + std::string(token) + "'");
          profile.alternatives.emplace_back(token);
        }
        if (profile.alternative_count() > kMaxAlternatives)
          throw ParseError(line, "more than 32 alternatives");
        if (!tie_uniform)
          profile.tie =
              TieRule::deterministic(detail::parse_ranking(tie_spec, tie_line, profile.alternatives));
        stage = Stage::Voters;
        break;
      }
      case Stage::Voters: {
        if (body.starts_with("rule=") || body.starts_with("tie=") || body.starts_with("alts="))
          throw ParseError(line, "misplaced directive after the voter section started");
        profile.voters.push_back(detail::parse_ranking(body, line, profile.alternatives));
        break;
      }
    }
  }

  const int eof = last_line + 1;
  if (stage == Stage::Rule) throw ParseError(eof, "missing rule= line");
  if (stage == Stage::Tie) throw ParseError(eof, "missing tie= line");
  if (stage == Stage::Alts) throw ParseError(eof, "missing alts= line");
  if (profile.voters.empty()) throw ParseError(eof, "no voter rankings");
  validate_profile(profile);
  return profile;
}

inline std::string order_to_string(const Profile& profile, const PreferenceOrder& order) {
  std::string out;
  for (int r = 0; r < order.size(); ++r) {
    if (r) out += '>';
    out += profile.alternatives[order.alternative_at(r)];
  }
  return out;
}

inline std::string set_to_string(const Profile& profile, AltSet s) {
  std::string out = "{";
  bool first = true;
  while (s) {
    const int alt = std::countr_zero(s);
    s &= s - 1;
    if (!first) out += ',';
    out += profile.alternatives[alt];
    first = false;
  }
  return out + "}";
}

/// Canonical document form; parse(serialize(p)) == p.
inline std::string serialize_profile(const Profile& profile) {
  validate_profile(profile);
  for (const auto& label : profile.alternatives)
    if (!detail::valid_label(label))
      throw std::invalid_argument("label '" + label + "' is not representable in a document");
  std::string out = "rule=";
  out += profile.rule == VotingRule::Plurality ? "plurality" : "approval";
  out += "\ntie=";
  if (profile.tie.is_uniform()) out += "uniform";
  else out += "deterministic:" + order_to_string(profile, profile.tie.order());
  out += "\nalts=";
  for (int i = 0; i < profile.alternative_count(); ++i) {
    if (i) out += ',';
    out += profile.alternatives[i];
  }
  out += '\n';
  for (const auto& voter : profile.voters) out += order_to_string(profile, voter) + "\n";
  return out;
}

enum class ReportFormat { Text, Json };

/// Render a solved and classified profile. Text mode is an aligned table of
/// voters, equilibrium ballots, outcome and paradox flags; json mode has the
/// stable fields winners/path/condorcet_winner/condorcet_loser/pareto_pairs/
/// paradoxes/stats and is byte-identical across runs for identical inputs.
inline std::string format_report(const Profile& profile, const SolveResult& result,
                                 const ParadoxReport& report, ReportFormat format) {
  const auto label_of = [&](int alt) { return profile.alternatives[alt]; };
  std::vector<std::string> flags;
  if (report.condorcet_winner_paradox) flags.push_back("condorcet_winner");
  if (report.condorcet_loser_paradox) flags.push_back("condorcet_loser");
  if (report.pareto_weak) flags.push_back("pareto_weak");
  if (report.pareto_strong) flags.push_back("pareto_strong");

  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    auto set_labels = [&](AltSet s) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      while (s) {
        arr.push_back(label_of(std::countr_zero(s)));
        s &= s - 1;
      }
      return arr;
    };
    j["winners"] = set_labels(result.winners);
    nlohmann::ordered_json path = nlohmann::ordered_json::array();
    for (const Ballot b : result.path) path.push_back(set_labels(b.approved));
    j["path"] = path;
    j["condorcet_winner"] =
        report.condorcet_winner ? nlohmann::ordered_json(label_of(*report.condorcet_winner))
                                : nlohmann::ordered_json(nullptr);
    j["condorcet_loser"] =
        report.condorcet_loser ? nlohmann::ordered_json(label_of(*report.condorcet_loser))
                               : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& [dominator, dominated] : report.pareto_pairs)
      pairs.push_back({label_of(dominator), label_of(dominated)});
    j["pareto_pairs"] = pairs;
    j["paradoxes"] = {{"condorcet_winner", report.condorcet_winner_paradox},
                      {"condorcet_loser", report.condorcet_loser_paradox},
                      {"pareto_weak", report.pareto_weak},
                      {"pareto_strong", report.pareto_strong}};
    j["stats"] = {{"states_visited", result.stats.states_visited},
                  {"memo_hits", result.stats.memo_hits}};
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "rule: " << (profile.rule == VotingRule::Plurality ? "plurality" : "approval") << "\n";
  if (profile.tie.is_uniform()) out << "tie: uniform\n";
  else out << "tie: deterministic (" << order_to_string(profile, profile.tie.order()) << ")\n";
  out << "alternatives: ";
  for (int i = 0; i < profile.alternative_count(); ++i)
    out << (i ? ", " : "") << profile.alternatives[i];
  out << "\n";

  std::size_t pref_width = std::string("preference").size();
  for (const auto& voter : profile.voters)
    pref_width = std::max(pref_width, order_to_string(profile, voter).size());
  out << "voter  " << std::left << std::setw(static_cast<int>(pref_width)) << "preference"
      << "  ballot\n";
  for (int v = 0; v < profile.voter_count(); ++v) {
    out << std::right << std::setw(5) << (v + 1) << "  " << std::left
        << std::setw(static_cast<int>(pref_width)) << order_to_string(profile, profile.voters[v])
        << "  "
        << (v < static_cast<int>(result.path.size()) ? set_to_string(profile, result.path[v].approved)
                                                     : std::string("-"))
        << "\n";
  }
  out << "outcome: " << set_to_string(profile, result.winners) << "\n";
  out << "condorcet winner: "
      << (report.condorcet_winner ? label_of(*report.condorcet_winner) : "-") << "\n";
  out << "condorcet loser: "
      << (report.condorcet_loser ? label_of(*report.condorcet_loser) : "-") << "\n";
  out << "pareto dominations:";
  if (report.pareto_pairs.empty()) out << " -";
  for (const auto& [dominator, dominated] : report.pareto_pairs)
    out << " " << label_of(dominator) << ">" << label_of(dominated);
  out << "\n";
  out << "paradoxes:";
  if (flags.empty()) out << " none";
  for (const auto& f : flags) out << " " << f;
  out << "\n";
  out << "states visited: " << result.stats.states_visited
      << ", memo hits: " << result.stats.memo_hits << "\n";
  return out.str();
}

}  // namespace seqvote
