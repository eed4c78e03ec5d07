#pragma once

// Toy worlds used across the unit and acceptance suites.

#include "powsim/table_world.hpp"
#include "powsim/world.hpp"

#include <memory>

namespace powsim::fixtures {

/// Def2 coin world: START forks to HEADS/TAILS inside [lo, hi] hundredths,
/// both fall back to START. Signature 2-action x 3-observation values.
inline std::shared_ptr<WorldDef2> coin_world(std::int64_t lo, std::int64_t hi) {
    auto w = std::make_shared<WorldDef2>();
    w->sig.actions = {{"a", 2, {"Nothing", "go"}}};
    w->sig.observations = {{"face", 3, {"Nothing", "H", "T"}}};
    w->states = {"start", "heads", "tails"};
    w->initial = 0;
    w->view = {{0}, {1}, {2}};
    for (int a = 0; a < 2; ++a) {
        IntervalDistribution fork;
        fork.outcomes.push_back({1, hundredths(lo), hundredths(hi)});
        fork.outcomes.push_back({2, hundredths(lo), hundredths(hi)});
        w->transitions.emplace(std::make_pair(0, long(a)), fork);
        IntervalDistribution back;
        back.outcomes.push_back({0, hundredths(100), hundredths(100)});
        w->transitions.emplace(std::make_pair(1, long(a)), back);
        w->transitions.emplace(std::make_pair(2, long(a)), back);
    }
    return w;
}

/// Deterministic 1-state world where every action is a self-loop.
inline std::shared_ptr<WorldDef2> one_state_world() {
    auto w = std::make_shared<WorldDef2>();
    w->sig.actions = {{"a", 2, {"Nothing", "go"}}};
    w->sig.observations = {{"x", 2, {"Nothing", "on"}}};
    w->states = {"only"};
    w->initial = 0;
    w->view = {{1}};
    IntervalDistribution self;
    self.outcomes.push_back({0, hundredths(100), hundredths(100)});
    w->transitions.emplace(std::make_pair(0, 0L), self);
    w->transitions.emplace(std::make_pair(0, 1L), self);
    MoveGroup g;
    g.name = "go";
    g.templates = {{1}};
    w->move_groups.push_back(g);
    return w;
}

/// Constants-only Def3 world with the free / holding / over shape: three
/// standard states, pickup correct only in free, newgame only in over.
inline std::unique_ptr<TableWorld> free_holding_over() {
    TableWorldSpec spec;
    spec.sig.actions = {{"cmd", 4, {"Nothing", "pickup", "putdown", "newgame"}}};
    spec.sig.observations = {{"phase", 4, {"Nothing", "free", "held", "over"}}};
    spec.states = {"free", "holding", "over"};
    spec.initial_state = 0;
    spec.initial_assignment = {1, 2, 3};  // constant per-state phase value

    auto rule = [&](int state, int cmd, int next) {
        TransitionRule r;
        r.state = state;
        r.action = {cmd};
        r.outcomes.push_back({StateDelta{next, {}}, Rational(1), Rational(1)});
        spec.rules.push_back(r);
    };
    rule(0, 0, 0);  // wait
    rule(0, 1, 1);  // pickup -> holding
    rule(0, 2, 2);  // putdown ends the game in this toy
    rule(1, 0, 1);
    rule(1, 2, 0);  // putdown -> free
    rule(2, 0, 2);
    rule(2, 3, 0);  // newgame -> free

    MoveGroup pick;
    pick.name = "pickup";
    pick.templates = {{1}};
    spec.move_groups.push_back(pick);
    return std::make_unique<TableWorld>(std::move(spec));
}

/// Two standard states, one mutable invisible variable on the first state.
/// Pressing "go" in L toggles the bit and crosses over; "go" in R returns.
inline std::unique_ptr<TableWorld> toggle_world() {
    TableWorldSpec spec;
    spec.sig.actions = {{"a", 2, {"Nothing", "go"}}};
    spec.sig.observations = {{"here", 3, {"Nothing", "L", "R"}}};
    spec.states = {"L", "R"};
    spec.initial_state = 0;
    spec.invisible = {{"bit", 2, {}}};
    // Layout per state: [here, bit]; R's bit is unused and constant.
    spec.initial_assignment = {1, 0, 2, 0};

    TransitionRule wait0{0, {0}, {}, {{StateDelta{0, {}}, Rational(1), Rational(1)}}};
    TransitionRule wait1{1, {0}, {}, {{StateDelta{1, {}}, Rational(1), Rational(1)}}};
    TransitionRule go_l0{0, {1}, {{1, 0}}, {{StateDelta{1, {{1, 1}}}, Rational(1), Rational(1)}}};
    TransitionRule go_l1{0, {1}, {{1, 1}}, {{StateDelta{1, {{1, 0}}}, Rational(1), Rational(1)}}};
    TransitionRule go_r{1, {1}, {}, {{StateDelta{0, {}}, Rational(1), Rational(1)}}};
    spec.rules = {wait0, wait1, go_l0, go_l1, go_r};
    return std::make_unique<TableWorld>(std::move(spec));
}

/// Def4 world with one noisy Boolean visible variable: TRUE state shows 1,
/// FALSE state shows 0, volume 1/2, spectrum (1/2, 1/2). Transitions carry
/// genuine interval slack so the Theorem-3 image exercises grouped bounds.
inline std::unique_ptr<TableWorld> noisy_bool_world() {
    TableWorldSpec spec;
    spec.sig.actions = {{"a", 2, {"Nothing", "go"}}};
    spec.sig.observations = {{"bit", 2, {"Nothing", "on"}}};
    spec.states = {"TRUE", "FALSE"};
    spec.initial_state = 0;
    spec.initial_assignment = {1, 0};

    auto fork = [&](int state, int action) {
        TransitionRule r;
        r.state = state;
        r.action = {action};
        r.outcomes.push_back({StateDelta{0, {}}, hundredths(30), hundredths(70)});
        r.outcomes.push_back({StateDelta{1, {}}, hundredths(30), hundredths(70)});
        spec.rules.push_back(r);
    };
    fork(0, 0);
    fork(0, 1);
    fork(1, 0);
    fork(1, 1);

    NoiseEntry n;
    n.slot = 0;
    n.descriptor.volume = Rational(1, 2);
    n.descriptor.spectrum = {Rational(1, 2), Rational(1, 2)};
    spec.noise.push_back(n);
    return std::make_unique<TableWorld>(std::move(spec));
}

/// 4-state Def4 world with one noisy Boolean variable and interval
/// transitions: a ring with chance forks.
inline std::unique_ptr<TableWorld> ring4_noisy() {
    TableWorldSpec spec;
    spec.sig.actions = {{"a", 2, {"Nothing", "go"}}};
    spec.sig.observations = {{"bit", 2, {"Nothing", "on"}}};
    spec.states = {"s0", "s1", "s2", "s3"};
    spec.initial_state = 0;
    spec.initial_assignment = {0, 1, 1, 0};

    auto fork = [&](int state, int action, int t1, int t2, std::int64_t lo, std::int64_t hi) {
        TransitionRule r;
        r.state = state;
        r.action = {action};
        if (t1 == t2) {
            r.outcomes.push_back({StateDelta{t1, {}}, Rational(1), Rational(1)});
        } else {
            r.outcomes.push_back({StateDelta{t1, {}}, hundredths(lo), hundredths(hi)});
            r.outcomes.push_back({StateDelta{t2, {}}, hundredths(lo), hundredths(hi)});
        }
        spec.rules.push_back(r);
    };
    fork(0, 0, 0, 0, 0, 0);
    fork(0, 1, 1, 2, 40, 60);
    fork(1, 0, 1, 1, 0, 0);
    fork(1, 1, 2, 3, 20, 80);
    fork(2, 0, 2, 0, 50, 50);
    fork(2, 1, 3, 3, 0, 0);
    fork(3, 0, 3, 1, 30, 70);
    fork(3, 1, 0, 0, 0, 0);

    NoiseEntry n;
    n.slot = 0;
    n.descriptor.volume = Rational(1, 10);
    n.descriptor.spectrum = {Rational(1, 2), Rational(1, 2)};
    spec.noise.push_back(n);
    return std::make_unique<TableWorld>(std::move(spec));
}

}  // namespace powsim::fixtures
