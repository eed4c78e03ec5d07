#pragma once

#include "powsim/engine.hpp"
#include "powsim/events.hpp"
#include "powsim/history.hpp"
#include "powsim/theory.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace powsim {

struct AgentConfig {
    long horizon = 0;  // total letters, including the forced initial Nothing step
    Seeds seeds;
    std::uint64_t policy_seed = 4;
    TheoryConfig theory;
};

struct NamedExperiment {
    std::string name;
    EventPattern pattern;
};

struct AgentOutputs {
    History history;
    StatStore store;
    StabilityTracker stability;
    std::vector<int> group_at;               // group after letters 1..t (index 0 = initial)
    std::vector<TestStateEstimate> estimates;  // one per test
    int final_group = 0;
};

/// The live loop: act (uniform over correct moves), observe, match the
/// experiments, count statistics, track stability, classify the group.
/// Moments are evaluated once their bounded futures have arrived.
AgentOutputs run_agent(const CumulativeWorld& world, const std::vector<NamedExperiment>& experiments,
                       const std::vector<Test>& tests, const GroupingAutomaton& grouping,
                       const AgentConfig& cfg);

/// The same statistics from a recorded history instead of a live world.
AgentOutputs replay_agent(const History& log, const std::vector<NamedExperiment>& experiments,
                          const std::vector<Test>& tests, const GroupingAutomaton& grouping,
                          const TheoryConfig& theory);

/// Deterministic structured-text report: per test, per group — n, m,
/// prediction, confidence — plus the config echo.
std::string format_report(const AgentOutputs& out, const std::vector<NamedExperiment>& experiments,
                          const std::vector<Test>& tests, const GroupingAutomaton& grouping,
                          const AgentConfig& cfg, const std::string& config_echo);

}  // namespace powsim
