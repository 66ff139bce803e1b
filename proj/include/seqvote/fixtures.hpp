#pragma once

#include <string>
#include <vector>

#include "seqvote/analysis.hpp"
#include "seqvote/profile_io.hpp"
#include "seqvote/solver.hpp"

namespace seqvote {

/// One regression scenario with its known SPE outcome and paradox flags.
struct Fixture {
  std::string name;
  std::string document;
  std::vector<std::string> expected_winners;
  bool condorcet_winner_paradox = false;
  bool condorcet_loser_paradox = false;
  bool pareto_weak = false;
  bool pareto_strong = false;
  std::string source;
};

/// The embedded regression suite: twelve scenarios whose equilibrium outcomes
/// are known, covering all four voting systems and all four paradoxes.
inline const std::vector<Fixture>& builtin_fixtures() {
  static const std::vector<Fixture> fixtures = {
      {"t1-uniform",
       "rule=plurality\n"
       "tie=uniform\n"
       "alts=A,B,C\n"
       "C>A>B\n"
       "A>C>B\n"
       "A>C>B\n"
       "B>A>C\n"
       "C>B>A\n",
       {"C"},
       true, false, false, false,
       "five-voter plurality-uniform election that rejects the Condorcet winner A"},
      {"t1-deterministic",
       "rule=plurality\n"
       "tie=deterministic:C>B>A\n"
       "alts=A,B,C\n"
       "C>A>B\n"
       "A>C>B\n"
       "A>C>B\n"
       "B>A>C\n",
       {"C"},
       true, false, false, false,
       "the same scenario read as four voters with the fifth order as tie-break"},
      {"t2",
       "rule=plurality\n"
       "tie=deterministic:C>B>A\n"
       "alts=A,B,C\n"
       "A>C>B\n"
       "C>B>A\n"
       "B>C>A\n"
       "A>B>C\n"
       "A>B>C\n"
       "B>A>C\n",
       {"C"},
       false, true, false, false,
       "six-voter plurality-deterministic election of the Condorcet loser C"},
      {"t3",
       "rule=plurality\n"
       "tie=uniform\n"
       "alts=A,B,C\n"
       "A>C>B\n"
       "C>B>A\n"
       "B>C>A\n"
       "A>B>C\n"
       "A>B>C\n"
       "C>B>A\n"
       "B>A>C\n",
       {"C"},
       true, true, false, false,
       "seven-voter plurality-uniform election where the Condorcet loser C wins "
       "alone (B is also a beaten Condorcet winner here)"},
      {"t4",
       "rule=approval\n"
       "tie=deterministic:B>C>A\n"
       "alts=A,B,C\n"
       "C>A>B\n"
       "A>C>B\n"
       "A>C>B\n"
       "B>A>C\n",
       {"C"},
       true, false, false, false,
       "four-voter approval-deterministic election that rejects the Condorcet winner A"},
      {"t5",
       "rule=approval\n"
       "tie=uniform\n"
       "alts=A,B,C\n"
       "C>A>B\n"
       "C>A>B\n"
       "A>C>B\n"
       "A>C>B\n"
       "B>A>C\n",
       {"C"},
       true, false, false, false,
       "five-voter approval-uniform election that rejects the Condorcet winner A"},
      {"t6",
       "rule=approval\n"
       "tie=deterministic:C>A>B\n"
       "alts=A,B,C\n"
       "B>C>A\n"
       "B>C>A\n"
       "A>C>B\n"
       "A>C>B\n"
       "B>A>C\n"
       "A>B>C\n",
       {"C"},
       false, true, false, false,
       "six-voter approval-deterministic election of the Condorcet loser C"},
      {"t7",
       "rule=approval\n"
       "tie=uniform\n"
       "alts=A,B,C\n"
       "B>C>A\n"
       "B>C>A\n"
       "A>B>C\n"
       "C>A>B\n"
       "A>C>B\n"
       "A>C>B\n"
       "B>A>C\n",
       {"C"},
       true, true, false, false,
       "seven-voter approval-uniform election where the Condorcet loser C wins "
       "alone (A is also a beaten Condorcet winner here)"},
      {"t8",
       "rule=approval\n"
       "tie=deterministic:D>A>B>C\n"
       "alts=A,B,C,D\n"
       "A>C>B>D\n"
       "A>C>B>D\n"
       "D>A>C>B\n"
       "D>A>C>B\n"
       "B>D>A>C\n",
       {"C"},
       false, false, true, true,
       "five-voter approval-deterministic election of C, Pareto dominated by A"},
      {"t9",
       "rule=plurality\n"
       "tie=uniform\n"
       "alts=A,B,C,D\n"
       "A>B>D>C\n"
       "D>A>C>B\n"
       "D>C>B>A\n"
       "A>B>D>C\n"
       "B>A>D>C\n"
       "B>D>A>C\n",
       {"A", "C"},
       false, false, true, false,
       "six-voter plurality-uniform election whose winning set contains C, "
       "Pareto dominated by D"},
      {"t10",
       "rule=approval\n"
       "tie=uniform\n"
       "alts=A,B,C,D\n"
       "A>B>D>C\n"
       "D>C>B>A\n"
       "D>C>A>B\n"
       "B>D>C>A\n"
       "A>B>D>C\n"
       "B>D>A>C\n",
       {"A", "C"},
       false, false, true, false,
       "six-voter approval-uniform election whose winning set contains C, "
       "Pareto dominated by D"},
      {"cx",
       "rule=plurality\n"
       "tie=deterministic:C>B>A\n"
       "alts=A,B,C\n"
       "A>C>B\n"
       "B>A>C\n",
       {"C"},
       false, false, true, true,
       "two-voter plurality election under a hostile tie-break order electing C, "
       "Pareto dominated by A"},
  };
  return fixtures;
}

struct FixtureOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Solve every embedded fixture and compare outcome and paradox flags to the
/// recorded expectations.
inline std::vector<FixtureOutcome> run_fixtures() {
  std::vector<FixtureOutcome> outcomes;
  for (const Fixture& fixture : builtin_fixtures()) {
    const Profile profile = parse_profile(fixture.document);
    const AltSet winners = spe_outcome(profile);
    const ParadoxReport report = classify_paradoxes(profile, winners);

    AltSet expected = 0;
    for (const auto& label : fixture.expected_winners) expected |= alt_bit(*profile.index_of(label));

    std::string detail;
    if (winners != expected)
      detail += "outcome " + set_to_string(profile, winners) + ", expected " +
                set_to_string(profile, expected) + "; ";
    auto check_flag = [&](const char* flag, bool actual, bool wanted) {
      if (actual != wanted)
        detail += std::string(flag) + "=" + (actual ? "true" : "false") + ", expected " +
                  (wanted ? "true" : "false") + "; ";
    };
    check_flag("condorcet_winner_paradox", report.condorcet_winner_paradox,
               fixture.condorcet_winner_paradox);
    check_flag("condorcet_loser_paradox", report.condorcet_loser_paradox,
               fixture.condorcet_loser_paradox);
    check_flag("pareto_weak", report.pareto_weak, fixture.pareto_weak);
    check_flag("pareto_strong", report.pareto_strong, fixture.pareto_strong);

    FixtureOutcome out;
    out.name = fixture.name;
    out.passed = detail.empty();
    out.detail = out.passed ? "outcome " + set_to_string(profile, winners) : detail;
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

}  // namespace seqvote
