#include "powsim/experimental.hpp"

#include <deque>
#include <set>

namespace powsim {
namespace {

struct Explorer {
    const CumulativeWorld& w;
    int horizon;
    long state_cap;

    std::vector<CumulativeState> states;
    std::map<CumulativeState, int> index;
    std::vector<MoveFlags> flags;
    std::vector<std::vector<ViewOutput>> outputs;

    int intern(const CumulativeState& s) {
        const auto it = index.find(s);
        if (it != index.end()) return it->second;
        if (static_cast<long>(states.size()) >= state_cap)
            throw ResourceError("experimental property search exceeds state cap " +
                                std::to_string(state_cap));
        const int id = static_cast<int>(states.size());
        index.emplace(s, id);
        states.push_back(s);
        flags.push_back(move_correctness(w, s));
        outputs.push_back(possible_outputs(w, s));
        return id;
    }

    StepLetter letter(const ActionVec& a, int target, const ObsVec& view) const {
        return {a, view, flags[target].per_action, flags[target].per_group};
    }

    // Every (edge) expansion of one state: all defined actions, possible
    // outcomes, possible renders of the target.
    template <typename Fn>
    void expand(int from, bool nothing_only, Fn&& visit) {
        const long actions = w.signature().action_space_size();
        for (long idx = 0; idx < actions; ++idx) {
            const ActionVec a = w.signature().decode_action(idx);
            if (nothing_only && a != w.signature().nothing_action()) continue;
            const auto t = w.transition(states[from], a);
            if (!t) continue;
            for (const auto& o : t->outcomes) {
                if (o.hi == Rational(0)) continue;
                const int target = intern(apply_delta(states[from], o.delta));
                for (const auto& out : outputs[target]) visit(target, letter(a, target, out.values));
            }
        }
    }
};

}  // namespace

std::vector<CumulativeState> experimental_property(const CumulativeWorld& w, const EventPattern& e,
                                                   int horizon, long state_cap) {
    Explorer ex{w, horizon, state_cap, {}, {}, {}, {}};
    const int root = ex.intern(w.initial());

    // Past sweep: BFS over (state, past-automaton state); depth is the moment
    // index q. The origin expands separately (only the forced all-Nothing
    // action a_1), so a step looping back to the initial state still gets the
    // full action set afterwards.
    std::set<std::pair<int, int>> seen;
    std::deque<std::tuple<int, int, int>> frontier;  // (state, m1, depth)
    std::set<int> candidates;                        // states with an accepting past arrival

    ex.expand(root, true, [&](int target, const StepLetter& l) {
        const int m1p = e.past.step(e.past.start, l);
        if (e.past.states[m1p].accept) candidates.insert(target);
        if (seen.insert({target, m1p}).second) frontier.push_back({target, m1p, 1});
    });

    while (!frontier.empty()) {
        const auto [s, m1, depth] = frontier.front();
        frontier.pop_front();
        if (depth >= horizon) continue;
        ex.expand(s, false, [&](int target, const StepLetter& l) {
            const int m1p = e.past.step(m1, l);
            if (e.past.states[m1p].accept) candidates.insert(target);
            if (seen.insert({target, m1p}).second) frontier.push_back({target, m1p, depth + 1});
        });
    }

    // Future sweep per candidate: can the future automaton accept within the
    // horizon? Accepting start covers the empty future.
    std::map<int, bool> future_ok;
    auto check_future = [&](int s0) {
        std::set<std::pair<int, int>> fseen;
        std::deque<std::tuple<int, int, int>> ffrontier;
        if (e.future.states[e.future.start].accept) return true;
        ffrontier.push_back({s0, e.future.start, 0});
        fseen.insert({s0, e.future.start});
        bool ok = false;
        while (!ffrontier.empty() && !ok) {
            const auto [s, m2, depth] = ffrontier.front();
            ffrontier.pop_front();
            if (depth >= horizon) continue;
            ex.expand(s, false, [&](int target, const StepLetter& l) {
                const int m2p = e.future.step(m2, l);
                if (e.future.states[m2p].accept) ok = true;
                if (fseen.insert({target, m2p}).second) ffrontier.push_back({target, m2p, depth + 1});
            });
        }
        return ok;
    };

    std::vector<CumulativeState> result;
    for (int s : candidates) {
        auto [it, fresh] = future_ok.try_emplace(s, false);
        if (fresh) it->second = check_future(s);
        if (it->second) result.push_back(ex.states[s]);
    }
    return result;
}

std::map<CumulativeState, bool> smallest_test_property(const CumulativeWorld& w, const Test& t,
                                                       int horizon, long state_cap) {
    if (w.noise() != nullptr)
        throw std::invalid_argument("smallest_test_property needs a noise-free world");
    std::map<CumulativeState, bool> prop;
    for (const CumulativeState& s : experimental_property(w, t.condition, horizon, state_cap)) {
        const MoveFlags f = move_correctness(w, s);
        const StepLetter present{w.signature().nothing_action(), w.visible_of(s), f.per_action,
                                 f.per_group};
        prop.emplace(s, t.result.evaluate(present));
    }
    return prop;
}

}  // namespace powsim
