#include "powsim/theory.hpp"

#include <algorithm>
#include <cmath>

namespace powsim {

TestEvaluation evaluate_test(const Test& t, const LocalHistory& lh) {
    if (!event_holds(t.condition, lh)) return {false, false};
    return {true, t.result.evaluate(lh.present())};
}

TheoryOutput predict_from_experiment(const StatRecord& rec, double c0) {
    if (rec.total() == 0) return {0.5, 0};
    const double total = static_cast<double>(rec.total());
    return {to_double(rec.prediction_ratio()), total / (total + c0)};
}

TheoryOutput predict_from_stability(bool last_value, long steps_since, double half_life) {
    return {last_value ? 1.0 : 0.0, std::exp2(-static_cast<double>(steps_since) / half_life)};
}

TheoryOutput combine_predictions(const std::vector<TheoryOutput>& outputs) {
    for (const auto& o : outputs)
        if (o.confidence >= 1.0) return {o.prediction, 1.0};
    double weight = 0, mean = 0, miss = 1;
    for (const auto& o : outputs) {
        weight += o.confidence;
        mean += o.confidence * o.prediction;
        miss *= 1.0 - o.confidence;
    }
    if (weight == 0) return {0.5, 0};
    return {mean / weight, 1.0 - miss};
}

bool record_observation(StatStore& store, int experiment_id, const EventPattern& experiment,
                        int test_id, const Test& test, const LocalHistory& lh, int group) {
    if (!event_holds(experiment, lh)) return false;
    const TestEvaluation ev = evaluate_test(test, lh);
    if (!ev.defined) return false;
    store.count({experiment_id, test_id, group}, ev.value);
    return true;
}

void GroupingAutomaton::validate() const {
    if (group_names.empty()) throw std::invalid_argument("grouping automaton has no groups");
    if (initial < 0 || initial >= group_count())
        throw std::invalid_argument("grouping automaton initial group out of range");
    if (rules.size() != group_names.size())
        throw std::invalid_argument("grouping automaton needs a rule list per group");
    for (size_t g = 0; g < rules.size(); ++g) {
        if (rules[g].empty())
            throw std::invalid_argument("group '" + group_names[g] + "' has no rules");
        for (const auto& r : rules[g])
            if (r.next < 0 || r.next >= group_count())
                throw std::invalid_argument("group '" + group_names[g] + "' rule target out of range");
        const StepTemplate& last = rules[g].back().when;
        const bool catch_all =
            last.flags.empty() &&
            std::all_of(last.action.begin(), last.action.end(), [](int v) { return v < 0; }) &&
            std::all_of(last.obs.begin(), last.obs.end(), [](int v) { return v < 0; });
        if (!catch_all)
            throw std::invalid_argument("group '" + group_names[g] +
                                        "' needs a catch-all final rule to stay total");
    }
}

GroupingAutomaton trivial_grouping() {
    GroupingAutomaton g;
    g.group_names = {"all"};
    g.initial = 0;
    g.rules = {{GroupingAutomaton::Rule{StepTemplate{}, 0}}};
    return g;
}

int classify_group(const GroupingAutomaton& g, const History& h) {
    int state = g.initial;
    for (const auto& step : h.steps) state = g.step(state, step);
    return state;
}

TestStateEstimate predict_test_state(const StatStore& store, const StabilityTracker& stability,
                                     int test_id, const std::vector<int>& experiment_ids,
                                     int group_count, int current_group, long current_step,
                                     const TheoryConfig& cfg) {
    TestStateEstimate est;
    est.current_group = current_group;
    for (int g = 0; g < group_count; ++g) {
        std::vector<TheoryOutput> outputs;
        for (int e : experiment_ids) {
            const StatRecord rec = store.at({e, test_id, g});
            if (rec.total() > 0) outputs.push_back(predict_from_experiment(rec, cfg.c0));
        }
        const TheoryOutput stab = stability.query(test_id, g, current_step, cfg.half_life);
        if (stab.confidence > 0) outputs.push_back(stab);
        est.per_group.push_back(combine_predictions(outputs));
    }
    return est;
}

}  // namespace powsim
