#include "powsim/agent.hpp"

#include <cstdio>
#include <stdexcept>

namespace powsim {
namespace {

struct Collector {
    const std::vector<NamedExperiment>& experiments;
    const std::vector<Test>& tests;
    const GroupingAutomaton& grouping;
    TheoryConfig theory;

    History history;
    std::vector<int> group_at;  // [0] = initial group, [t] = group after letter t
    StatStore store;
    StabilityTracker stability;

    explicit Collector(const std::vector<NamedExperiment>& exps, const std::vector<Test>& ts,
                       const GroupingAutomaton& g, TheoryConfig th)
        : experiments(exps), tests(ts), grouping(g), theory(th) {
        grouping.validate();
        group_at.push_back(grouping.initial);
    }

    void push(StepLetter letter) {
        history.steps.push_back(std::move(letter));
        group_at.push_back(grouping.step(group_at.back(), history.steps.back()));
        const int t = history.length();

        // A moment q is decidable once its bounded future has arrived.
        for (size_t ti = 0; ti < tests.size(); ++ti) {
            const Test& test = tests[ti];
            const int f_cond = test.condition.future_need();
            const int q_cond = t - f_cond;
            if (q_cond >= 1) {
                const LocalHistory lh = localize(history, q_cond, q_cond - 1, f_cond);
                const TestEvaluation ev = evaluate_test(test, lh);
                if (ev.defined) stability.observe(static_cast<int>(ti), group_at[q_cond], ev.value, q_cond);
            }
            for (size_t ei = 0; ei < experiments.size(); ++ei) {
                const int f = std::max(f_cond, experiments[ei].pattern.future_need());
                const int q = t - f;
                if (q < 1) continue;
                const LocalHistory lh = localize(history, q, q - 1, f);
                record_observation(store, static_cast<int>(ei), experiments[ei].pattern,
                                   static_cast<int>(ti), test, lh, group_at[q]);
            }
        }
    }

    AgentOutputs finish() {
        AgentOutputs out;
        out.final_group = group_at.back();
        std::vector<int> experiment_ids(experiments.size());
        for (size_t i = 0; i < experiment_ids.size(); ++i) experiment_ids[i] = static_cast<int>(i);
        for (size_t ti = 0; ti < tests.size(); ++ti)
            out.estimates.push_back(predict_test_state(store, stability, static_cast<int>(ti),
                                                       experiment_ids, grouping.group_count(),
                                                       out.final_group, history.length(), theory));
        out.history = std::move(history);
        out.store = std::move(store);
        out.stability = std::move(stability);
        out.group_at = std::move(group_at);
        return out;
    }
};

}  // namespace

AgentOutputs run_agent(const CumulativeWorld& world, const std::vector<NamedExperiment>& experiments,
                       const std::vector<Test>& tests, const GroupingAutomaton& grouping,
                       const AgentConfig& cfg) {
    Collector collector(experiments, tests, grouping, cfg.theory);
    WorldInstance inst(world, cfg.seeds);
    RandomStream policy(cfg.policy_seed, splitmix::kGammaNoise);

    for (long t = 1; t <= cfg.horizon; ++t) {
        ActionVec a;
        if (t == 1) {
            a = world.signature().nothing_action();
        } else {
            const MoveFlags flags = inst.correctness();
            std::vector<long> correct;
            for (long i = 0; i < static_cast<long>(flags.per_action.size()); ++i)
                if (flags.per_action[i]) correct.push_back(i);
            if (correct.empty()) break;  // stuck world: no correct move
            a = world.signature().decode_action(correct[policy.cell(correct.size())]);
        }
        if (!inst.apply(a))
            throw std::runtime_error("incorrect move at step " + std::to_string(t));
        const MoveFlags flags = inst.correctness();
        collector.push({a, inst.view(), flags.per_action, flags.per_group});
    }
    return collector.finish();
}

AgentOutputs replay_agent(const History& log, const std::vector<NamedExperiment>& experiments,
                          const std::vector<Test>& tests, const GroupingAutomaton& grouping,
                          const TheoryConfig& theory) {
    Collector collector(experiments, tests, grouping, theory);
    for (const StepLetter& letter : log.steps) collector.push(letter);
    return collector.finish();
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string format_report(const AgentOutputs& out, const std::vector<NamedExperiment>& experiments,
                          const std::vector<Test>& tests, const GroupingAutomaton& grouping,
                          const AgentConfig& cfg, const std::string& config_echo) {
    std::string r;
    r += "# theory report\n";
    r += "steps=" + std::to_string(out.history.length());
    r += " c0=" + num(cfg.theory.c0) + " half_life=" + num(cfg.theory.half_life);
    r += " seed_predictable=" + std::to_string(cfg.seeds.predictable);
    r += " seed_unpredictable=" + std::to_string(cfg.seeds.unpredictable);
    r += " seed_noise=" + std::to_string(cfg.seeds.noise);
    r += " seed_policy=" + std::to_string(cfg.policy_seed) + "\n";
    if (!config_echo.empty()) r += "world: " + config_echo + "\n";
    r += "current_group=" + grouping.group_names[out.final_group] + "\n";

    for (size_t ti = 0; ti < tests.size(); ++ti) {
        r += "test \"" + tests[ti].name + "\"\n";
        for (int g = 0; g < grouping.group_count(); ++g) {
            const TheoryOutput& combined = out.estimates[ti].per_group[g];
            r += "  group " + grouping.group_names[g] + ": prediction=" + num(combined.prediction) +
                 " confidence=" + num(combined.confidence) + "\n";
            for (size_t ei = 0; ei < experiments.size(); ++ei) {
                const StatRecord rec = out.store.at({static_cast<int>(ei), static_cast<int>(ti), g});
                const TheoryOutput o = predict_from_experiment(rec, cfg.theory.c0);
                r += "    experiment \"" + experiments[ei].name + "\": n=" + std::to_string(rec.n) +
                     " m=" + std::to_string(rec.m) + " prediction=" + num(o.prediction) +
                     " confidence=" + num(o.confidence) + "\n";
            }
            const TheoryOutput stab =
                out.stability.query(static_cast<int>(ti), g, out.history.length(), cfg.theory.half_life);
            r += "    stability: prediction=" + num(stab.prediction) +
                 " confidence=" + num(stab.confidence) + "\n";
        }
    }
    return r;
}

}  // namespace powsim
