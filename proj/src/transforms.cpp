#include "powsim/transforms.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace powsim {

std::optional<DeterminizedWorld::BigState> DeterminizedWorld::big_world(const BigState& b,
                                                                        const ActionVec& a) const {
    const IntervalDistribution* dist = base->find(b.s, a);
    if (!dist) return std::nullopt;
    RandomStream good(b.x, splitmix::kGammaPredictable);
    RandomStream bad(b.y, splitmix::kGammaUnpredictable);
    const int target = sample_outcome(*dist, good, bad);
    return BigState{target, good.state(), bad.state()};
}

MoveFlags DeterminizedWorld::correctness(const BigState& b) const {
    MoveFlags f;
    const long n = base->sig.action_space_size();
    f.per_action.resize(n);
    for (long idx = 0; idx < n; ++idx)
        f.per_action[idx] = base->find(b.s, base->sig.decode_action(idx)) != nullptr;
    f.per_group = group_flags(base->sig, base->move_groups, f.per_action);
    return f;
}

DeterminizedWorld def2_to_def1(std::shared_ptr<const WorldDef2> world, std::uint64_t seed_x,
                               std::uint64_t seed_y) {
    const WorldValidation v = validate_world(*world);
    if (!v.ok) throw std::invalid_argument("def2_to_def1 needs a validated world: " + v.messages.front());
    for (const auto& [key, dist] : world->transitions)
        for (const auto& o : dist.outcomes)
            if (o.group >= 0)
                throw std::invalid_argument("def2_to_def1 needs plain distributions, not grouped ones");
    return {std::move(world), seed_x, seed_y};
}

std::vector<CumulativeState> reachable_states(const CumulativeWorld& w, const ReachOptions& opt) {
    std::map<CumulativeState, int> seen;
    std::vector<CumulativeState> order;
    std::deque<std::pair<CumulativeState, int>> frontier;

    const CumulativeState init = w.initial();
    seen.emplace(init, 0);
    order.push_back(init);
    frontier.push_back({init, 0});

    const long actions = w.signature().action_space_size();
    while (!frontier.empty()) {
        const auto [cur, depth] = frontier.front();
        frontier.pop_front();
        for (long idx = 0; idx < actions; ++idx) {
            const auto t = w.transition(cur, w.signature().decode_action(idx));
            if (!t) continue;
            for (const auto& o : t->outcomes) {
                if (o.hi == Rational(0)) continue;  // impossible outcome
                CumulativeState next = apply_delta(cur, o.delta);
                if (seen.count(next)) continue;
                if (depth + 1 > opt.reach_bound)
                    throw ResourceError("reachable set not closed within reach bound " +
                                        std::to_string(opt.reach_bound));
                if (static_cast<long>(order.size()) + 1 > opt.state_cap)
                    throw ResourceError("reachable set exceeds state cap " +
                                        std::to_string(opt.state_cap));
                seen.emplace(next, static_cast<int>(order.size()));
                order.push_back(next);
                frontier.push_back({std::move(next), depth + 1});
            }
        }
    }
    return order;
}

WorldDef2 def3_to_def2(const CumulativeWorld& w, const ReachOptions& opt) {
    if (w.noise()) throw std::invalid_argument("def3_to_def2 takes a noise-free world; run def4_to_def3 first");
    const std::vector<CumulativeState> states = reachable_states(w, opt);
    std::map<CumulativeState, int> index;
    for (size_t i = 0; i < states.size(); ++i) index.emplace(states[i], static_cast<int>(i));

    WorldDef2 out;
    out.sig = w.signature();
    out.move_groups = w.groups();
    out.initial = 0;
    for (size_t i = 0; i < states.size(); ++i) {
        out.states.push_back("q" + std::to_string(i) + "_" + w.state_names()[states[i].standard]);
        out.view.push_back(w.visible_of(states[i]));
    }

    const long actions = w.signature().action_space_size();
    for (size_t i = 0; i < states.size(); ++i) {
        for (long idx = 0; idx < actions; ++idx) {
            const auto t = w.transition(states[i], w.signature().decode_action(idx));
            if (!t) continue;
            IntervalDistribution dist;
            for (const auto& o : t->outcomes) {
                const CumulativeState next = apply_delta(states[i], o.delta);
                const auto it = index.find(next);
                if (it == index.end()) {
                    if (o.hi == Rational(0)) continue;  // dropped with the impossible branch
                    throw ResourceError("transition target beyond the explored set");
                }
                dist.outcomes.push_back({it->second, o.lo, o.hi, o.group, o.split});
                if (!is_hundredths(o.lo) || !is_hundredths(o.hi)) out.rational_bounds = true;
            }
            out.transitions.emplace(std::make_pair(static_cast<int>(i), idx), std::move(dist));
        }
    }
    return out;
}

std::vector<ViewOutput> possible_outputs(const CumulativeWorld& w, const CumulativeState& s) {
    const ObsVec truth = w.visible_of(s);
    std::vector<ViewOutput> outputs = {{ObsVec{}, Rational(1)}};
    for (int slot = 0; slot < w.visible_per_state(); ++slot) {
        // Per-value render distribution of this visible variable.
        std::vector<std::pair<int, Rational>> dist;
        const NoiseDescriptor d =
            w.noise() ? w.noise()->descriptor(w, s, s.standard, slot) : NoiseDescriptor{};
        if (d.zero()) {
            dist.emplace_back(truth[slot], Rational(1));
        } else {
            const int card = w.signature().observations[slot].card;
            for (int v = 0; v < card; ++v) {
                Rational p = d.volume * d.spectrum[v];
                if (v == truth[slot]) p += Rational(1) - d.volume;
                if (p > Rational(0)) dist.emplace_back(v, p);
            }
        }
        std::vector<ViewOutput> extended;
        for (const auto& base : outputs)
            for (const auto& [v, p] : dist) {
                ViewOutput o = base;
                o.values.push_back(v);
                o.p *= p;
                extended.push_back(std::move(o));
            }
        outputs = std::move(extended);
    }
    return outputs;
}

TableWorldSpec def4_to_def3(const CumulativeWorld& w, const ReachOptions& opt) {
    const std::vector<CumulativeState> states = reachable_states(w, opt);
    std::map<CumulativeState, int> index;
    for (size_t i = 0; i < states.size(); ++i) index.emplace(states[i], static_cast<int>(i));

    std::vector<std::vector<ViewOutput>> outputs(states.size());
    std::vector<int> first_state(states.size() + 1, 0);
    for (size_t i = 0; i < states.size(); ++i) {
        outputs[i] = possible_outputs(w, states[i]);
        first_state[i + 1] = first_state[i] + static_cast<int>(outputs[i].size());
        if (first_state[i + 1] > opt.state_cap)
            throw ResourceError("split state count exceeds state cap " + std::to_string(opt.state_cap));
    }

    TableWorldSpec out;
    out.sig = w.signature();
    out.move_groups = w.groups();
    out.rational_bounds = true;
    // The initial render is never observed (histories start at a_1, v_1), so
    // the first output of the initial cumulative state serves as s_0.
    out.initial_state = first_state[0];
    for (size_t i = 0; i < states.size(); ++i)
        for (size_t oi = 0; oi < outputs[i].size(); ++oi) {
            out.states.push_back("s" + std::to_string(i) + "_o" + std::to_string(oi));
            for (int v : outputs[i][oi].values) out.initial_assignment.push_back(v);
        }

    const long actions = w.signature().action_space_size();
    for (size_t i = 0; i < states.size(); ++i) {
        for (long idx = 0; idx < actions; ++idx) {
            const ActionVec a = w.signature().decode_action(idx);
            const auto t = w.transition(states[i], a);
            if (!t) continue;
            // All splits of state i behave the same; they differ only in the
            // present. One rule per split, same outcome list. Group ids name
            // the source chance outcome; inherited and fresh ids share one
            // numbering so they cannot collide.
            std::vector<TransitionOutcome> image;
            std::map<std::pair<bool, int>, int> group_ids;
            auto group_id_for = [&](const TransitionOutcome& o, size_t j) {
                const std::pair<bool, int> key =
                    o.group >= 0 ? std::pair{true, o.group} : std::pair{false, static_cast<int>(j)};
                return group_ids.try_emplace(key, static_cast<int>(group_ids.size())).first->second;
            };
            for (size_t j = 0; j < t->outcomes.size(); ++j) {
                const auto& o = t->outcomes[j];
                const CumulativeState next = apply_delta(states[i], o.delta);
                const auto it = index.find(next);
                if (it == index.end()) {
                    if (o.hi == Rational(0)) continue;
                    throw ResourceError("transition target beyond the explored set");
                }
                const auto& target_outputs = outputs[it->second];
                const bool split = target_outputs.size() > 1 || o.group >= 0;
                for (size_t oi = 0; oi < target_outputs.size(); ++oi) {
                    const Rational p = target_outputs[oi].p;
                    TransitionOutcome img;
                    img.delta.next_standard = first_state[it->second] + static_cast<int>(oi);
                    img.lo = o.lo * p;
                    img.hi = o.hi * p;
                    img.group = split ? group_id_for(o, j) : -1;
                    img.split = o.split * p;
                    image.push_back(std::move(img));
                }
            }
            for (int oi = 0; oi < static_cast<int>(outputs[i].size()); ++oi) {
                TransitionRule rule;
                rule.state = first_state[i] + oi;
                rule.action.assign(a.begin(), a.end());
                rule.outcomes = image;
                out.rules.push_back(std::move(rule));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

ActionVec pick_uniform_correct(const ScalarSignature& sig, const std::vector<bool>& per_action,
                               RandomStream& policy) {
    std::vector<long> correct;
    for (long i = 0; i < static_cast<long>(per_action.size()); ++i)
        if (per_action[i]) correct.push_back(i);
    if (correct.empty()) return {};
    return sig.decode_action(correct[policy.cell(correct.size())]);
}

class CumulativeSource final : public TraceSource {
public:
    explicit CumulativeSource(const CumulativeWorld& w) : world_(&w) {}
    const ScalarSignature& signature() const override { return world_->signature(); }

    std::vector<ObsVec> episode(int horizon, Seeds seeds, RandomStream& policy) override {
        WorldInstance inst(*world_, seeds);
        std::vector<ObsVec> trace;
        for (int step = 1; step <= horizon; ++step) {
            ActionVec a = step == 1 ? world_->signature().nothing_action()
                                    : pick_uniform_correct(world_->signature(),
                                                           inst.correctness().per_action, policy);
            if (a.empty()) break;  // no correct move: episode ends early
            if (!inst.apply(a))
                throw std::runtime_error(step == 1 ? "initial Nothing action is an incorrect move"
                                                   : "policy chose an incorrect move");
            trace.push_back(inst.view());
        }
        return trace;
    }

private:
    const CumulativeWorld* world_;
};

class OwningCumulativeSource final : public TraceSource {
public:
    explicit OwningCumulativeSource(std::shared_ptr<const WorldDef2> w)
        : def2_(std::move(w)), world_(embed_def2(def2_)), inner_(*world_) {}
    const ScalarSignature& signature() const override { return inner_.signature(); }
    std::vector<ObsVec> episode(int horizon, Seeds seeds, RandomStream& policy) override {
        return inner_.episode(horizon, seeds, policy);
    }

private:
    std::shared_ptr<const WorldDef2> def2_;
    std::unique_ptr<CumulativeWorld> world_;
    CumulativeSource inner_;
};

class DeterminizedSource final : public TraceSource {
public:
    explicit DeterminizedSource(const DeterminizedWorld& w) : world_(&w) {}
    const ScalarSignature& signature() const override { return world_->base->sig; }

    std::vector<ObsVec> episode(int horizon, Seeds seeds, RandomStream& policy) override {
        // The episode seeds become the hidden natural numbers; marginalizing
        // over episodes marginalizes over seeds.
        DeterminizedWorld::BigState b{world_->base->initial, seeds.predictable, seeds.unpredictable};
        std::vector<ObsVec> trace;
        for (int step = 1; step <= horizon; ++step) {
            ActionVec a = step == 1 ? world_->base->sig.nothing_action()
                                    : pick_uniform_correct(world_->base->sig,
                                                           world_->correctness(b).per_action, policy);
            if (a.empty()) break;
            const auto next = world_->big_world(b, a);
            if (!next)
                throw std::runtime_error(step == 1 ? "initial Nothing action is an incorrect move"
                                                   : "policy chose an incorrect move");
            b = *next;
            trace.push_back(world_->view(b));
        }
        return trace;
    }

private:
    const DeterminizedWorld* world_;
};

std::string trace_key(const std::vector<ObsVec>& trace) {
    std::string key;
    for (const auto& v : trace) {
        for (int x : v) key += std::to_string(x) + ",";
        key += "|";
    }
    return key;
}

}  // namespace

std::unique_ptr<TraceSource> trace_source(const CumulativeWorld& w) {
    return std::make_unique<CumulativeSource>(w);
}
std::unique_ptr<TraceSource> trace_source(std::shared_ptr<const WorldDef2> w) {
    return std::make_unique<OwningCumulativeSource>(std::move(w));
}
std::unique_ptr<TraceSource> trace_source(const DeterminizedWorld& w) {
    return std::make_unique<DeterminizedSource>(w);
}

TraceDistanceReport trace_distance(TraceSource& a, TraceSource& b, long episodes, int horizon,
                                   std::uint64_t seed) {
    if (!same_shape(a.signature(), b.signature()))
        throw std::invalid_argument("equivalence check needs worlds with one signature shape");

    TraceDistanceReport rep;
    rep.episodes = episodes;
    rep.horizon = horizon;
    rep.per_step.assign(horizon, 0.0);

    std::map<std::string, std::pair<long, long>> counts;
    std::vector<std::map<std::string, std::pair<long, long>>> step_counts(horizon);

    for (int side = 0; side < 2; ++side) {
        TraceSource& src = side == 0 ? a : b;
        for (long e = 0; e < episodes; ++e) {
            Seeds seeds{derive_seed(seed, e * 8 + side * 4 + 0), derive_seed(seed, e * 8 + side * 4 + 1),
                        derive_seed(seed, e * 8 + side * 4 + 2)};
            RandomStream policy(derive_seed(seed, e * 8 + 3), splitmix::kGammaNoise);
            const std::vector<ObsVec> trace = src.episode(horizon, seeds, policy);
            auto& slot = counts[trace_key(trace)];
            (side == 0 ? slot.first : slot.second) += 1;
            for (size_t s = 0; s < trace.size(); ++s) {
                auto& ss = step_counts[s][trace_key({trace[s]})];
                (side == 0 ? ss.first : ss.second) += 1;
            }
        }
    }

    auto tv = [&](const std::map<std::string, std::pair<long, long>>& m) {
        double sum = 0;
        for (const auto& [key, c] : m)
            sum += std::abs(static_cast<double>(c.first) / episodes -
                            static_cast<double>(c.second) / episodes);
        return sum / 2;
    };
    rep.distance = tv(counts);
    for (int s = 0; s < horizon; ++s) rep.per_step[s] = tv(step_counts[s]);
    return rep;
}

}  // namespace powsim
