#pragma once

#include "powsim/engine.hpp"
#include "powsim/table_world.hpp"
#include "powsim/world.hpp"

#include <functional>
#include <memory>

namespace powsim {

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Theorem-1 image of a Def2 world: deterministic, single-valued and total on
/// the defined (state, action) pairs, with the chance hidden in the two
/// natural-number coordinates x and y. The generators advance x twice and y
/// once per step, exactly like the engine streams, so equal seeds give the
/// engine run and its determinization identical trajectories.
struct DeterminizedWorld {
    std::shared_ptr<const WorldDef2> base;
    std::uint64_t seed_x = 0;
    std::uint64_t seed_y = 0;

    struct BigState {
        int s = 0;
        std::uint64_t x = 0;
        std::uint64_t y = 0;
        bool operator==(const BigState&) const = default;
    };

    BigState initial() const { return {base->initial, seed_x, seed_y}; }
    std::optional<BigState> big_world(const BigState& b, const ActionVec& a) const;
    const ObsVec& view(const BigState& b) const { return base->view[b.s]; }
    MoveFlags correctness(const BigState& b) const;
};

/// Requires a validated world with plain (ungrouped) distributions.
DeterminizedWorld def2_to_def1(std::shared_ptr<const WorldDef2> world, std::uint64_t seed_x,
                               std::uint64_t seed_y);

struct ReachOptions {
    int reach_bound = 10000;      // BFS depth budget
    long state_cap = 1000000;     // resource cap on the reachable set
};

/// Reachable cumulative states, breadth-first from the initial state along
/// possible outcomes (hi > 0) of defined actions. Throws ResourceError when
/// the cap is hit or the set does not close within the depth budget.
std::vector<CumulativeState> reachable_states(const CumulativeWorld& w, const ReachOptions& opt);

/// Theorem-2 flattening: the reachable cumulative states become the standard
/// states of a Def2 world with inherited transitions and views.
WorldDef2 def3_to_def2(const CumulativeWorld& w, const ReachOptions& opt = {});

/// Theorem-3 split: every cumulative state becomes one state per possible
/// View output; inbound intervals [a, b] rescale to [a*p, b*p]. The output is
/// noise-free (its visible variables are constants).
TableWorldSpec def4_to_def3(const CumulativeWorld& w, const ReachOptions& opt = {});

/// Possible View outputs of one cumulative state with their probabilities.
struct ViewOutput {
    ObsVec values;
    Rational p{1};
};
std::vector<ViewOutput> possible_outputs(const CumulativeWorld& w, const CumulativeState& s);

// ---------------------------------------------------------------------------
// Statistical trace-equivalence harness.

struct TraceDistanceReport {
    long episodes = 0;
    int horizon = 0;
    double distance = 0;                // total-variation estimate over whole traces
    std::vector<double> per_step;       // TV of per-step observation marginals
};

/// One side of an equivalence check: produces seeded observation traces under
/// the shared uniform-over-correct-moves policy.
class TraceSource {
public:
    virtual ~TraceSource() = default;
    virtual const ScalarSignature& signature() const = 0;
    virtual std::vector<ObsVec> episode(int horizon, Seeds seeds, RandomStream& policy) = 0;
};

std::unique_ptr<TraceSource> trace_source(const CumulativeWorld& w);
std::unique_ptr<TraceSource> trace_source(std::shared_ptr<const WorldDef2> w);
std::unique_ptr<TraceSource> trace_source(const DeterminizedWorld& w);

/// Estimates the total-variation distance between the two observation-trace
/// distributions. Episode seeds derive from `seed` independently per side;
/// the policy rule is shared.
TraceDistanceReport trace_distance(TraceSource& a, TraceSource& b, long episodes, int horizon,
                                   std::uint64_t seed);

}  // namespace powsim
