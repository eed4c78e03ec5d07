#include "powsim/engine.hpp"

namespace powsim {
namespace {

int sample_spectrum(const NoiseDescriptor& d, RandomStream& stream) {
    std::int64_t den = 1;
    for (const auto& p : d.spectrum) den = checked_lcm(den, p.denominator());
    const std::uint64_t u = stream.cell(static_cast<std::uint64_t>(den));
    std::uint64_t cum = 0;
    for (size_t v = 0; v < d.spectrum.size(); ++v) {
        cum += static_cast<std::uint64_t>(d.spectrum[v].numerator() * (den / d.spectrum[v].denominator()));
        if (u < cum) return static_cast<int>(v);
    }
    return static_cast<int>(d.spectrum.size()) - 1;
}

}  // namespace

RenderedView render_view(const CumulativeWorld& w, const CumulativeState& s, RandomStream& noise_stream) {
    RenderedView out;
    const ObsVec truth = w.visible_of(s);
    out.values = truth;
    out.vars.resize(truth.size());
    for (size_t j = 0; j < truth.size(); ++j) out.vars[j].value = truth[j];

    const NoiseModel* noise = w.noise();
    if (!noise) return out;

    for (size_t j = 0; j < truth.size(); ++j) {
        const NoiseDescriptor d = noise->descriptor(w, s, s.standard, static_cast<int>(j));
        if (d.zero()) continue;
        // Corrupt with probability Volume, then draw the replacement from the
        // spectrum. Two draws on corruption, one otherwise.
        const std::uint64_t den = static_cast<std::uint64_t>(d.volume.denominator());
        const bool corrupted = noise_stream.cell(den) < static_cast<std::uint64_t>(d.volume.numerator());
        if (!corrupted) continue;
        const int v = sample_spectrum(d, noise_stream);
        out.vars[j] = {v, true};
        out.values[j] = v;
    }
    return out;
}

StepResult step_world(const CumulativeWorld& w, const CumulativeState& current, const ActionVec& action,
                      RandomStream& predictable, RandomStream& unpredictable) {
    if (!w.signature().action_in_range(action))
        throw std::invalid_argument("malformed action vector");
    const std::optional<Transition> t = w.transition(current, action);
    if (!t) return {true, current};

    IntervalDistribution dist;
    for (const auto& o : t->outcomes) dist.outcomes.push_back({static_cast<int>(dist.outcomes.size()),
                                                               o.lo, o.hi, o.group, o.split});
    const size_t pick = sample_outcome_index(dist, predictable, unpredictable);
    return {false, apply_delta(current, t->outcomes[pick].delta)};
}

WorldInstance::WorldInstance(const CumulativeWorld& w, Seeds seeds)
    : world_(&w),
      state_(w.initial()),
      predictable_(seeds.predictable, splitmix::kGammaPredictable),
      unpredictable_(seeds.unpredictable, splitmix::kGammaUnpredictable),
      noise_(seeds.noise, splitmix::kGammaNoise) {
    render();
}

void WorldInstance::reset(Seeds seeds) {
    state_ = world_->initial();
    predictable_ = RandomStream(seeds.predictable, splitmix::kGammaPredictable);
    unpredictable_ = RandomStream(seeds.unpredictable, splitmix::kGammaUnpredictable);
    noise_ = RandomStream(seeds.noise, splitmix::kGammaNoise);
    render();
}

bool WorldInstance::apply(const ActionVec& action) {
    const StepResult r = step_world(*world_, state_, action, predictable_, unpredictable_);
    if (r.incorrect) return false;
    state_ = r.state;
    render();
    return true;
}

void WorldInstance::render() { view_ = render_view(*world_, state_, noise_); }

}  // namespace powsim
