#pragma once

#include "powsim/events.hpp"
#include "powsim/history.hpp"
#include "powsim/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace powsim {

/// Where a test reads its result: a visible variable or one of the
/// correctness summaries, compared against a constant.
struct TestResult {
    enum Kind { VisibleVar, GroupAll, GroupNobody };
    Kind kind = VisibleVar;
    int index = 0;  // observation coordinate or group index
    int value = 0;  // expected constant (0/1 for flags)

    bool evaluate(const StepLetter& present) const {
        switch (kind) {
            case VisibleVar:
                return present.observation[index] == value;
            case GroupAll:
                return present.group_all_nobody[index].first == (value != 0);
            case GroupNobody:
                return present.group_all_nobody[index].second == (value != 0);
        }
        return false;
    }
};

/// An experiment with a result: the condition event plus a present-step read.
struct Test {
    std::string name;
    EventPattern condition;
    TestResult result;
};

/// The test function at one moment: defined iff the condition happened; the
/// value then depends only on the present step.
struct TestEvaluation {
    bool defined = false;
    bool value = false;
};
TestEvaluation evaluate_test(const Test& t, const LocalHistory& lh);

/// YES/NO counts for one (experiment, test, group) cell.
struct StatRecord {
    long n = 0;
    long m = 0;

    long total() const { return n + m; }
    Rational prediction_ratio() const { return total() == 0 ? Rational(1, 2) : Rational(n, n + m); }
};

struct TheoryOutput {
    double prediction = 0.5;
    double confidence = 0;
};

struct TheoryConfig {
    double c0 = 10;       // evidence scale of the experiment confidence
    double half_life = 3; // steps for the stability confidence to halve
};

/// prediction = n/(n+m); confidence = (n+m)/(n+m+c0), 0 on no evidence.
TheoryOutput predict_from_experiment(const StatRecord& rec, double c0 = 10);

/// The standing-value assumption: the last observed value, with confidence
/// decaying by half every half_life steps.
TheoryOutput predict_from_stability(bool last_value, long steps_since, double half_life);

/// Confidence-weighted mean with noisy-OR confidence. A defined test moment
/// (some confidence 1) dominates.
TheoryOutput combine_predictions(const std::vector<TheoryOutput>& outputs);

struct StatKey {
    int experiment = 0;
    int test = 0;
    int group = 0;
    auto operator<=>(const StatKey&) const = default;
};

/// Mergeable counts store; merge is commutative and associative.
class StatStore {
public:
    void count(const StatKey& key, bool yes) {
        StatRecord& r = records_[key];
        (yes ? r.n : r.m) += 1;
    }
    StatRecord at(const StatKey& key) const {
        const auto it = records_.find(key);
        return it == records_.end() ? StatRecord{} : it->second;
    }
    void merge(const StatStore& other) {
        for (const auto& [key, rec] : other.records_) {
            records_[key].n += rec.n;
            records_[key].m += rec.m;
        }
    }
    const std::map<StatKey, StatRecord>& records() const { return records_; }

private:
    std::map<StatKey, StatRecord> records_;
};

/// Counts the moment iff both the experiment and the test condition hold.
/// Returns true when something was recorded.
bool record_observation(StatStore& store, int experiment_id, const EventPattern& experiment,
                        int test_id, const Test& test, const LocalHistory& lh, int group = 0);

/// Last defined value per (test, group) and when it was seen.
class StabilityTracker {
public:
    void observe(int test, int group, bool value, long step) { last_[{test, group}] = {value, step}; }
    TheoryOutput query(int test, int group, long current_step, double half_life) const {
        const auto it = last_.find({test, group});
        if (it == last_.end()) return {0.5, 0};
        return predict_from_stability(it->second.first, current_step - it->second.second, half_life);
    }

private:
    std::map<std::pair<int, int>, std::pair<bool, long>> last_;
};

/// Groups of relative stability as the states of a deterministic, total
/// automaton over step letters. Rules are tried in order; validation demands
/// a catch-all final rule per state so every letter has exactly one successor.
struct GroupingAutomaton {
    struct Rule {
        StepTemplate when;
        int next = 0;
    };
    std::vector<std::string> group_names;
    int initial = 0;
    std::vector<std::vector<Rule>> rules;  // per group

    int group_count() const { return static_cast<int>(group_names.size()); }
    void validate() const;
    int step(int group, const StepLetter& l) const {
        for (const auto& r : rules[group])
            if (r.when.matches(l)) return r.next;
        throw std::logic_error("grouping automaton not total (validate() not run?)");
    }
};

/// A single-group automaton: the test-property case.
GroupingAutomaton trivial_grouping();

/// The automaton state after consuming the history.
int classify_group(const GroupingAutomaton& g, const History& h);

/// Per-group (prediction, confidence) for one test.
struct TestStateEstimate {
    std::vector<TheoryOutput> per_group;
    int current_group = 0;
};

TestStateEstimate predict_test_state(const StatStore& store, const StabilityTracker& stability,
                                     int test_id, const std::vector<int>& experiment_ids,
                                     int group_count, int current_group, long current_step,
                                     const TheoryConfig& cfg);

}  // namespace powsim
