#include "powsim/table_world.hpp"

namespace powsim {

void TableWorldSpec::validate() const {
    sig.validate();
    if (states.empty()) throw std::invalid_argument("world has no states");
    if (initial_state < 0 || initial_state >= static_cast<int>(states.size()))
        throw std::invalid_argument("initial state out of range");
    const size_t total = states.size() * static_cast<size_t>(vars_per_state());
    if (initial_assignment.size() != total)
        throw std::invalid_argument("initial assignment must cover all |S|*(m+u) variables");
    for (const auto& rule : rules) {
        if (rule.state < 0 || rule.state >= static_cast<int>(states.size()))
            throw std::invalid_argument("rule state out of range");
        if (rule.action.size() != static_cast<size_t>(sig.action_dims()))
            throw std::invalid_argument("rule action template has wrong arity");
        if (rule.outcomes.empty()) throw std::invalid_argument("rule with empty outcome list");
        for (const auto& o : rule.outcomes) {
            if (o.delta.next_standard < 0 || o.delta.next_standard >= static_cast<int>(states.size()))
                throw std::invalid_argument("outcome successor state out of range");
            for (const auto& [var, val] : o.delta.sets)
                if (var < 0 || static_cast<size_t>(var) >= total)
                    throw std::invalid_argument("outcome sets a variable out of range");
        }
    }
    for (const auto& n : noise) {
        if (n.slot < 0 || n.slot >= sig.obs_dims())
            throw std::invalid_argument("noise entry on a non-visible slot");
        n.descriptor.validate(sig.observations[n.slot].card);
    }
}

NoiseDescriptor TableNoise::descriptor(const CumulativeWorld& w, const CumulativeState& s, int state,
                                       int slot) const {
    const int value = s.assignment[w.var_index(state, slot)];
    for (const auto& e : spec_->noise) {
        if (e.state >= 0 && e.state != state) continue;
        if (e.slot != slot) continue;
        if (e.when_value >= 0 && e.when_value != value) continue;
        return e.descriptor;
    }
    return {};
}

TableWorld::TableWorld(TableWorldSpec spec) : spec_(std::move(spec)), noise_model_(&spec_) {
    spec_.validate();
}

int TableWorld::variable_card(int state, int slot) const {
    const int idx = spec_.var_index(state, slot);
    if (idx < static_cast<int>(spec_.card_overrides.size()) && spec_.card_overrides[idx] > 0)
        return spec_.card_overrides[idx];
    if (slot < spec_.sig.obs_dims()) return spec_.sig.observations[slot].card;
    return spec_.invisible[slot - spec_.sig.obs_dims()].card;
}

CumulativeState TableWorld::initial() const {
    return {spec_.initial_state, spec_.initial_assignment};
}

std::optional<Transition> TableWorld::transition(const CumulativeState& s, const ActionVec& a) const {
    for (const auto& rule : spec_.rules)
        if (rule.matches(s, a)) return Transition{rule.outcomes};
    return std::nullopt;
}

}  // namespace powsim
