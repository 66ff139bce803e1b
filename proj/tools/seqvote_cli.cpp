// seqvote: SPE solver, paradox analysis and profile search for strategic
// sequential voting.
//
// Exit codes: 0 success, 1 usage or parse error, 2 fixture/verification
// mismatch, 3 feasibility-guard refusal.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seqvote/fixtures.hpp"
#include "seqvote/profile_io.hpp"
#include "seqvote/search.hpp"
#include "seqvote/solver.hpp"

namespace {

using namespace seqvote;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ReportFormat parse_format(const std::string& format) {
  return format == "json" ? ReportFormat::Json : ReportFormat::Text;
}

std::string flags_line(const ParadoxReport& report) {
  std::string out;
  if (report.condorcet_winner_paradox) out += " condorcet_winner";
  if (report.condorcet_loser_paradox) out += " condorcet_loser";
  if (report.pareto_weak) out += " pareto_weak";
  if (report.pareto_strong) out += " pareto_strong";
  return out.empty() ? " none" : out;
}

int run_solve(const std::string& path, const std::string& format, bool show_path) {
  const Profile profile = parse_profile(read_file(path));
  const SolveResult result = spe_path(profile);
  const ParadoxReport report = classify_paradoxes(profile, result.winners);
  if (format == "json" || show_path) {
    std::cout << format_report(profile, result, report, parse_format(format));
  } else {
    std::cout << "outcome: " << set_to_string(profile, result.winners) << "\n"
              << "paradoxes:" << flags_line(report) << "\n"
              << "states visited: " << result.stats.states_visited
              << ", memo hits: " << result.stats.memo_hits << "\n";
  }
  return 0;
}

int run_analyze(const std::string& path, const std::string& format) {
  const Profile profile = parse_profile(read_file(path));
  const SolveResult result = spe_path(profile);
  const ParadoxReport report = classify_paradoxes(profile, result.winners);
  std::cout << format_report(profile, result, report, parse_format(format));
  if (format != "json") {
    const int m = profile.alternative_count();
    std::cout << "pairwise margins (positive: row beats column):\n";
    std::cout << "     ";
    for (int b = 0; b < m; ++b) std::cout << std::setw(5) << profile.alternatives[b];
    std::cout << "\n";
    for (int a = 0; a < m; ++a) {
      std::cout << std::setw(5) << profile.alternatives[a];
      for (int b = 0; b < m; ++b) {
        if (a == b) {
          std::cout << std::setw(5) << ".";
          continue;
        }
        const int margin = pairwise_margin(profile, a, b);
        if (margin == 0) std::cout << std::setw(5) << 0;
        else std::cout << std::setw(5) << std::showpos << margin << std::noshowpos;
      }
      std::cout << "\n";
    }
  }
  return 0;
}

VotingRule parse_rule(const std::string& rule) {
  if (rule == "plurality") return VotingRule::Plurality;
  if (rule == "approval") return VotingRule::Approval;
  throw CLI::ValidationError("--rule", "unknown voting rule '" + rule + "'");
}

ParadoxKind parse_paradox(const std::string& paradox) {
  if (paradox == "condorcet_winner") return ParadoxKind::CondorcetWinner;
  if (paradox == "condorcet_loser") return ParadoxKind::CondorcetLoser;
  if (paradox == "pareto_weak") return ParadoxKind::ParetoWeak;
  if (paradox == "pareto_strong") return ParadoxKind::ParetoStrong;
  throw CLI::ValidationError("--paradox", "unknown paradox '" + paradox + "'");
}

// "uniform", "deterministic" or "deterministic:C>B>A" (labels A.. of the
// generated alphabet).
std::pair<TieRule::Kind, std::optional<std::vector<int>>> parse_tie(const std::string& tie,
                                                                    int alternatives) {
  if (tie == "uniform") return {TieRule::Kind::Uniform, std::nullopt};
  if (tie == "deterministic") return {TieRule::Kind::Deterministic, std::nullopt};
  if (tie.starts_with("deterministic:")) {
    std::vector<std::string> labels;
    for (int i = 0; i < alternatives; ++i) labels.push_back(std::string(1, char('A' + i)));
    std::vector<int> order;
    std::vector<bool> seen(alternatives, false);
    std::stringstream ss(tie.substr(14));
    std::string token;
    while (std::getline(ss, token, '>')) {
      int index = -1;
      for (int i = 0; i < alternatives; ++i)
        if (labels[i] == token) index = i;
      if (index < 0) throw CLI::ValidationError("--tie", "unknown alternative '" + token + "'");
      if (seen[index]) throw CLI::ValidationError("--tie", "duplicate alternative '" + token + "'");
      seen[index] = true;
      order.push_back(index);
    }
    if (static_cast<int>(order.size()) != alternatives)
      throw CLI::ValidationError("--tie", "tie order must rank all alternatives");
    return {TieRule::Kind::Deterministic, order};
  }
  throw CLI::ValidationError("--tie", "expected uniform or deterministic[:<order>]");
}

int run_search(int voters, int alternatives, const std::string& rule, const std::string& tie,
               const std::string& paradox, std::optional<std::uint64_t> limit, bool no_canonical,
               int workers) {
  SearchSpec spec;
  spec.voters = voters;
  spec.alternatives = alternatives;
  spec.rule = parse_rule(rule);
  std::tie(spec.tie, spec.tie_order) = parse_tie(tie, alternatives);
  spec.paradox = parse_paradox(paradox);
  spec.limit = limit;
  spec.canonical = !no_canonical;

  const SearchOutcome outcome = find_paradoxes(spec, workers);
  for (std::size_t k = 0; k < outcome.hits.size(); ++k) {
    const SearchHit& hit = outcome.hits[k];
    std::cout << "hit " << (k + 1) << " at profile " << hit.index << ":\n"
              << serialize_profile(hit.profile)
              << "winners: " << set_to_string(hit.profile, hit.winners) << "\n"
              << "paradoxes:" << flags_line(hit.report) << "\n\n";
  }
  std::cout << "profiles scanned: " << outcome.profiles_scanned << "\n"
            << "exhausted: " << (outcome.exhausted ? "yes" : "no") << "\n"
            << "hits: " << outcome.hits.size() << "\n";
  return 0;
}

int run_verify() {
  const auto outcomes = run_fixtures();
  int passed = 0;
  for (const auto& out : outcomes) {
    std::cout << (out.passed ? "PASS " : "FAIL ") << out.name << " — " << out.detail << "\n";
    if (out.passed) ++passed;
  }
  std::cout << passed << "/" << outcomes.size() << " fixtures passed\n";
  return passed == static_cast<int>(outcomes.size()) ? 0 : 2;
}

int run_enumerate(int voters, int alternatives, bool canonical) {
  ProfileSpace space(voters, alternatives, VotingRule::Plurality, TieRule::Kind::Uniform,
                     canonical);
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const Profile p = space.at(i);
    for (int v = 0; v < p.voter_count(); ++v)
      std::cout << (v ? " " : "") << order_to_string(p, p.voters[v]);
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strategic sequential voting: SPE solver, paradox analysis and profile search"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string file;
  std::string format = "text";
  bool show_path = false;
  auto* solve = app.add_subcommand("solve", "compute the SPE outcome of a profile file");
  solve->add_option("file", file, "profile document")->required();
  solve->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  solve->add_flag("--path", show_path, "show every voter's equilibrium ballot");
  solve->callback([&] { exit_code = run_solve(file, format, show_path); });

  auto* analyze = app.add_subcommand("analyze", "solve and report the full paradox analysis");
  analyze->add_option("file", file, "profile document")->required();
  analyze->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  analyze->callback([&] { exit_code = run_analyze(file, format); });

  int voters = 0;
  int alternatives = 0;
  std::string rule = "plurality";
  std::string tie = "uniform";
  std::string paradox;
  std::uint64_t limit_value = 0;
  bool no_canonical = false;
  int workers = 0;
  auto* search = app.add_subcommand("search", "hunt a profile space for a paradox");
  search->add_option("--voters", voters, "number of voters")->required();
  search->add_option("--alts", alternatives, "number of alternatives")->required();
  search->add_option("--rule", rule, "plurality|approval");
  search->add_option("--tie", tie, "uniform|deterministic[:<order>]");
  search->add_option("--paradox", paradox,
                     "condorcet_winner|condorcet_loser|pareto_weak|pareto_strong")
      ->required();
  auto* limit_opt = search->add_option("--limit", limit_value, "stop after this many hits");
  search->add_flag("--no-canonical", no_canonical, "scan the full space without relabeling quotient");
  search->add_option("--workers", workers, "worker threads (0 = hardware)");
  search->callback([&] {
    exit_code = run_search(voters, alternatives, rule, tie, paradox,
                           limit_opt->count() ? std::optional<std::uint64_t>(limit_value)
                                              : std::nullopt,
                           no_canonical, workers);
  });

  auto* verify = app.add_subcommand("verify-paper", "run the embedded fixture suite");
  verify->callback([&] { exit_code = run_verify(); });

  bool canonical = false;
  auto* enumerate = app.add_subcommand("enumerate", "list voter-order assignments");
  enumerate->add_option("--voters", voters, "number of voters")->required();
  enumerate->add_option("--alts", alternatives, "number of alternatives")->required();
  enumerate->add_flag("--canonical", canonical, "pin voter 1 to the identity order");
  enumerate->callback([&] { exit_code = run_enumerate(voters, alternatives, canonical); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const FeasibilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
