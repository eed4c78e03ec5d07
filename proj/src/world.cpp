#include "powsim/world.hpp"

namespace powsim {

WorldValidation validate_world(const WorldDef2& w) {
    WorldValidation out;
    auto fail = [&](const std::string& msg) {
        out.ok = false;
        out.messages.push_back(msg);
    };

    try {
        w.sig.validate();
    } catch (const std::exception& e) {
        fail(e.what());
        return out;
    }
    if (w.states.empty()) fail("world has no states");
    if (w.initial < 0 || w.initial >= static_cast<int>(w.states.size())) fail("initial state out of range");
    if (w.view.size() != w.states.size()) fail("view table size differs from state count");
    for (size_t s = 0; s < w.view.size(); ++s)
        if (!w.sig.obs_in_range(w.view[s])) fail("view of state '" + w.states[s] + "' out of signature bounds");

    for (const auto& [key, dist] : w.transitions) {
        const std::string where =
            "transition (" + w.states[key.first] + ", action " + std::to_string(key.second) + ")";
        const ValidationReport rep = validate_distribution(dist);
        for (const auto& v : rep.violations)
            fail(where + ": " + v.constraint +
                 (v.index > 0 ? " at i=" + std::to_string(v.index) : "") + " — " + v.detail);
        for (const auto& o : dist.outcomes) {
            if (o.target < 0 || o.target >= static_cast<int>(w.states.size()))
                fail(where + ": outcome target out of range");
            if (!w.rational_bounds && (!is_hundredths(o.lo) || !is_hundredths(o.hi)))
                fail(where + ": bounds are not hundredths (rational bounds need the rational_bounds flag)");
        }
    }
    return out;
}

namespace {

class Def2Embedding final : public CumulativeWorld {
public:
    explicit Def2Embedding(std::shared_ptr<const WorldDef2> w) : w_(std::move(w)) {
        const int m = w_->sig.obs_dims();
        init_.standard = w_->initial;
        init_.assignment.resize(w_->states.size() * m);
        for (size_t s = 0; s < w_->states.size(); ++s)
            for (int j = 0; j < m; ++j) init_.assignment[s * m + j] = w_->view[s][j];
    }

    const ScalarSignature& signature() const override { return w_->sig; }
    const std::vector<std::string>& state_names() const override { return w_->states; }
    int invisible_per_state() const override { return 0; }
    int variable_card(int, int slot) const override { return w_->sig.observations[slot].card; }
    CumulativeState initial() const override { return init_; }
    const std::vector<MoveGroup>& groups() const override { return w_->move_groups; }

    std::optional<Transition> transition(const CumulativeState& s, const ActionVec& a) const override {
        const IntervalDistribution* dist = w_->find(s.standard, a);
        if (!dist) return std::nullopt;
        Transition t;
        for (const auto& o : dist->outcomes)
            t.outcomes.push_back({StateDelta{o.target, {}}, o.lo, o.hi, o.group, o.split});
        return t;
    }

    bool action_defined(const CumulativeState& s, const ActionVec& a) const override {
        return w_->find(s.standard, a) != nullptr;
    }

private:
    std::shared_ptr<const WorldDef2> w_;
    CumulativeState init_;
};

}  // namespace

std::unique_ptr<CumulativeWorld> embed_def2(std::shared_ptr<const WorldDef2> w) {
    return std::make_unique<Def2Embedding>(std::move(w));
}

std::vector<std::pair<bool, bool>> group_flags(const ScalarSignature& sig,
                                               const std::vector<MoveGroup>& groups,
                                               const std::vector<bool>& per_action) {
    std::vector<std::pair<bool, bool>> out;
    out.reserve(groups.size());
    for (const auto& g : groups) {
        bool all = true, nobody = true;
        for (long idx = 0; idx < static_cast<long>(per_action.size()); ++idx) {
            if (!g.contains(sig.decode_action(idx))) continue;
            if (per_action[idx])
                nobody = false;
            else
                all = false;
        }
        out.emplace_back(all, nobody);
    }
    return out;
}

MoveFlags move_correctness(const CumulativeWorld& w, const CumulativeState& s) {
    MoveFlags f;
    const long n = w.signature().action_space_size();
    f.per_action.resize(n);
    for (long idx = 0; idx < n; ++idx)
        f.per_action[idx] = w.action_defined(s, w.signature().decode_action(idx));
    f.per_group = group_flags(w.signature(), w.groups(), f.per_action);
    return f;
}

}  // namespace powsim
