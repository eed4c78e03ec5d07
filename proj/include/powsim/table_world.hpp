#pragma once

#include "powsim/world.hpp"

#include <memory>

namespace powsim {

/// Variable guard: rule applies only when variable `var` has value `value`.
struct VarGuard {
    int var = 0;
    int value = 0;
};

/// One transition rule of a table world. Rules are tried in declaration
/// order; the first whose state, action template and guards match defines the
/// distribution. No match means the move is incorrect.
struct TransitionRule {
    int state = 0;
    std::vector<int> action;  // per-coordinate value or -1 wildcard
    std::vector<VarGuard> when;
    std::vector<TransitionOutcome> outcomes;

    bool matches(const CumulativeState& s, const ActionVec& a) const {
        if (s.standard != state) return false;
        for (size_t i = 0; i < action.size(); ++i)
            if (action[i] >= 0 && action[i] != a[i]) return false;
        for (const auto& g : when)
            if (s.assignment[g.var] != g.value) return false;
        return true;
    }
};

/// Static (state, slot [, value]) noise table entry; state/value -1 = any.
struct NoiseEntry {
    int state = -1;
    int slot = 0;
    int when_value = -1;
    NoiseDescriptor descriptor;
};

struct TableWorldSpec {
    ScalarSignature sig;
    std::vector<std::string> states;
    int initial_state = 0;
    std::vector<Coordinate> invisible;   // invisible slots (name + default cardinality)
    std::vector<int> card_overrides;     // per variable index, 0 = use slot default
    std::vector<int> initial_assignment; // |S| * (m+u)
    std::vector<TransitionRule> rules;
    std::vector<MoveGroup> move_groups;
    std::vector<NoiseEntry> noise;       // nonempty => Definition-4 world
    bool rational_bounds = false;

    int vars_per_state() const { return sig.obs_dims() + static_cast<int>(invisible.size()); }
    int var_index(int state, int slot) const { return state * vars_per_state() + slot; }
    void validate() const;  // throws std::invalid_argument
};

class TableWorld;

class TableNoise final : public NoiseModel {
public:
    explicit TableNoise(const TableWorldSpec* spec) : spec_(spec) {}
    NoiseDescriptor descriptor(const CumulativeWorld& w, const CumulativeState& s, int state,
                               int slot) const override;

private:
    const TableWorldSpec* spec_;
};

class TableWorld final : public CumulativeWorld {
public:
    explicit TableWorld(TableWorldSpec spec);

    const ScalarSignature& signature() const override { return spec_.sig; }
    const std::vector<std::string>& state_names() const override { return spec_.states; }
    int invisible_per_state() const override { return static_cast<int>(spec_.invisible.size()); }
    int variable_card(int state, int slot) const override;
    CumulativeState initial() const override;
    std::optional<Transition> transition(const CumulativeState& s, const ActionVec& a) const override;
    const std::vector<MoveGroup>& groups() const override { return spec_.move_groups; }
    const NoiseModel* noise() const override { return spec_.noise.empty() ? nullptr : &noise_model_; }

    const TableWorldSpec& spec() const { return spec_; }

private:
    TableWorldSpec spec_;
    TableNoise noise_model_;
};

}  // namespace powsim
