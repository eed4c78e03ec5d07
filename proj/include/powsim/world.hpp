#pragma once

#include "powsim/interval.hpp"
#include "powsim/rational.hpp"
#include "powsim/signature.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace powsim {

/// A cumulative move: a set of actions treated as one, with the Boolean
/// summaries all(g) and nobody(g). Members are given as action templates
/// (per-coordinate value or -1 wildcard).
struct MoveGroup {
    std::string name;
    std::vector<std::vector<int>> templates;

    bool contains(const ActionVec& a) const {
        for (const auto& t : templates) {
            bool ok = t.size() == a.size();
            for (size_t i = 0; ok && i < t.size(); ++i)
                if (t[i] >= 0 && t[i] != a[i]) ok = false;
            if (ok) return true;
        }
        return false;
    }
};

/// Noise of one visible variable: replaced with probability `volume` by a
/// spectrum sample. spectrum[v] is the probability of replacement value v and
/// has one entry per value of the variable.
struct NoiseDescriptor {
    Rational volume{0};
    std::vector<Rational> spectrum;

    bool zero() const { return volume == Rational(0); }

    void validate(int card) const {
        if (volume < Rational(0) || volume > Rational(1))
            throw std::invalid_argument("noise volume outside [0, 1]");
        if (zero()) return;
        if (static_cast<int>(spectrum.size()) != card)
            throw std::invalid_argument("noise spectrum length must equal the variable cardinality");
        Rational sum(0);
        for (const auto& p : spectrum) {
            if (p < Rational(0)) throw std::invalid_argument("negative spectrum entry");
            sum += p;
        }
        if (sum != Rational(1)) throw std::invalid_argument("spectrum sums to " + to_string(sum) + ", not 1");
    }
};

/// The full hidden configuration of a Definition-3/4 world: the standard
/// state plus the value of every variable of every state.
struct CumulativeState {
    int standard = 0;
    std::vector<int> assignment;  // |S| * (m+u), state-major

    bool operator==(const CumulativeState&) const = default;
    bool operator<(const CumulativeState& o) const {
        if (standard != o.standard) return standard < o.standard;
        return assignment < o.assignment;
    }
};

/// One possible effect of a transition: successor standard state plus
/// variable updates.
struct StateDelta {
    int next_standard = 0;
    std::vector<std::pair<int, int>> sets;  // (variable index, value)
};

struct TransitionOutcome {
    StateDelta delta;
    Rational lo{1};
    Rational hi{1};
    int group = -1;
    Rational split{1};
};

struct Transition {
    std::vector<TransitionOutcome> outcomes;
};

inline CumulativeState apply_delta(const CumulativeState& s, const StateDelta& d) {
    CumulativeState next = s;
    next.standard = d.next_standard;
    for (const auto& [var, val] : d.sets) next.assignment[var] = val;
    return next;
}

class NoiseModel;

/// A world under Definition 3 (or 4, when noise() is non-null): standard
/// states carrying m visible and u invisible variables, a partial multivalued
/// World over cumulative states. Undefined transitions are incorrect moves.
class CumulativeWorld {
public:
    virtual ~CumulativeWorld() = default;

    virtual const ScalarSignature& signature() const = 0;
    virtual const std::vector<std::string>& state_names() const = 0;
    virtual int invisible_per_state() const = 0;
    virtual int variable_card(int state, int slot) const = 0;
    virtual CumulativeState initial() const = 0;
    virtual std::optional<Transition> transition(const CumulativeState& s, const ActionVec& a) const = 0;
    virtual const std::vector<MoveGroup>& groups() const = 0;
    virtual const NoiseModel* noise() const { return nullptr; }

    /// Cheap correctness probe; transition() remains the source of truth.
    virtual bool action_defined(const CumulativeState& s, const ActionVec& a) const {
        return transition(s, a).has_value();
    }

    int standard_state_count() const { return static_cast<int>(state_names().size()); }
    int visible_per_state() const { return signature().obs_dims(); }
    int vars_per_state() const { return visible_per_state() + invisible_per_state(); }
    int var_index(int state, int slot) const { return state * vars_per_state() + slot; }

    /// What View reads: the visible variables of the current standard state.
    ObsVec visible_of(const CumulativeState& s) const {
        ObsVec v(visible_per_state());
        for (int j = 0; j < visible_per_state(); ++j) v[j] = s.assignment[var_index(s.standard, j)];
        return v;
    }
};

/// Volume and spectrum per (cumulative state, visible variable). Descriptors
/// may depend on the state's variable values (they live in invisible
/// variables, which the world may change).
class NoiseModel {
public:
    virtual ~NoiseModel() = default;
    virtual NoiseDescriptor descriptor(const CumulativeWorld& w, const CumulativeState& s, int state,
                                       int slot) const = 0;
};

/// Definition-2 world: finite states, constant per-state view, partial
/// multivalued World with interval probabilities.
struct WorldDef2 {
    ScalarSignature sig;
    std::vector<std::string> states;
    int initial = 0;
    std::vector<ObsVec> view;                          // per state
    std::map<std::pair<int, long>, IntervalDistribution> transitions;  // (state, encoded action)
    std::vector<MoveGroup> move_groups;
    bool rational_bounds = false;  // set by transforms; lifts the hundredths rule

    const IntervalDistribution* find(int state, const ActionVec& a) const {
        auto it = transitions.find({state, sig.encode_action(a)});
        return it == transitions.end() ? nullptr : &it->second;
    }
};

/// World-level validation: every distribution plus the hundredths rule for
/// hand-authored specs.
struct WorldValidation {
    bool ok = true;
    std::vector<std::string> messages;
};
WorldValidation validate_world(const WorldDef2& w);

/// The constants-only embedding of a Def2 world as a Def3 world (every
/// variable a constant).
std::unique_ptr<CumulativeWorld> embed_def2(std::shared_ptr<const WorldDef2> w);

/// Per-action correctness plus the per-group (all, nobody) summaries.
struct MoveFlags {
    std::vector<bool> per_action;                  // indexed by encoded action
    std::vector<std::pair<bool, bool>> per_group;  // (all, nobody)
};

MoveFlags move_correctness(const CumulativeWorld& w, const CumulativeState& s);

/// Recompute group summaries from per-action flags (the redundancy check).
std::vector<std::pair<bool, bool>> group_flags(const ScalarSignature& sig,
                                               const std::vector<MoveGroup>& groups,
                                               const std::vector<bool>& per_action);

/// Size of the noise bookkeeping of a Definition-4 world: k+1 invisible
/// variables per visible variable per state (volume plus spectrum entries).
/// Zero for a noise-free world.
inline long noise_variable_count(const CumulativeWorld& w) {
    if (!w.noise()) return 0;
    long per_state = 0;
    for (const auto& c : w.signature().observations) per_state += c.card + 1;
    return w.standard_state_count() * per_state;
}

}  // namespace powsim
