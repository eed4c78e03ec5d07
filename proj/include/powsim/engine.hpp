#pragma once

#include "powsim/world.hpp"

#include <cstdint>

namespace powsim {

struct Seeds {
    std::uint64_t predictable = 1;
    std::uint64_t unpredictable = 2;
    std::uint64_t noise = 3;
};

/// One rendered visible variable: the value View returned and whether the
/// noise replaced the true value (the replacement may coincide with it).
struct RenderedVar {
    int value = 0;
    bool corrupted = false;
};

struct RenderedView {
    ObsVec values;
    std::vector<RenderedVar> vars;
};

/// View of a state through its noise model. Consumes nothing from the stream
/// for zero-volume descriptors, so an all-volumes-zero Definition-4 world
/// renders exactly like its underlying Definition-3 world.
RenderedView render_view(const CumulativeWorld& w, const CumulativeState& s, RandomStream& noise_stream);

struct IncorrectMove {};

/// World(s, a): the sampled successor, or IncorrectMove when the transition
/// is undefined (the state is left untouched). Malformed action vectors are a
/// caller bug and throw instead.
struct StepResult {
    bool incorrect = false;
    CumulativeState state;
};

StepResult step_world(const CumulativeWorld& w, const CumulativeState& current, const ActionVec& action,
                      RandomStream& predictable, RandomStream& unpredictable);

/// A running world: current cumulative state plus the three chance streams.
/// Single-owner; copy it to run Monte-Carlo branches in parallel.
class WorldInstance {
public:
    WorldInstance(const CumulativeWorld& w, Seeds seeds);

    void reset(Seeds seeds);

    const ObsVec& view() const { return view_.values; }
    const RenderedView& rendered() const { return view_; }
    const CumulativeState& state() const { return state_; }
    MoveFlags correctness() const { return move_correctness(*world_, state_); }

    /// Returns false on IncorrectMove; the instance (state, streams, view) is
    /// then unchanged.
    bool apply(const ActionVec& action);

private:
    void render();

    const CumulativeWorld* world_;
    CumulativeState state_;
    RandomStream predictable_;
    RandomStream unpredictable_;
    RandomStream noise_;
    RenderedView view_;
};

}  // namespace powsim
