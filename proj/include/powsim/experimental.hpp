#pragma once

#include "powsim/events.hpp"
#include "powsim/theory.hpp"
#include "powsim/transforms.hpp"
#include "powsim/world.hpp"

#include <map>
#include <optional>
#include <vector>

namespace powsim {

/// The experimental property of an event: reachable cumulative states with
/// some local history around them (inside the horizon) where the event
/// happened. Exhaustive search over bounded histories, shared along the
/// (state, automaton-state) product. Histories start with the forced Nothing
/// action; noisy worlds branch over every possible View output.
/// Throws ResourceError past the state cap.
std::vector<CumulativeState> experimental_property(const CumulativeWorld& w, const EventPattern& e,
                                                   int horizon, long state_cap = 100000);

/// The smallest property of a test: its value on every state the condition
/// can be performed around, read from the state's noise-free present.
/// Requires a noise-free world (under noise the result is not a function of
/// the state).
std::map<CumulativeState, bool> smallest_test_property(const CumulativeWorld& w, const Test& t,
                                                       int horizon, long state_cap = 100000);

}  // namespace powsim
