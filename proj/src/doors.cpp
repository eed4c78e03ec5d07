#include "powsim/doors.hpp"

namespace powsim::doors {

namespace {
constexpr int kVars = 4;
}

DoorsWorld::DoorsWorld(std::vector<std::vector<bool>> schedules) : schedules_(std::move(schedules)) {
    if (schedules_.empty()) throw std::invalid_argument("doors world needs at least one door");
    for (const auto& s : schedules_)
        if (s.empty()) throw std::invalid_argument("every door needs a nonempty periodic schedule");

    const int n = door_count();
    Coordinate at_door{"at_door", n + 1, {"Nothing"}};
    for (int d = 0; d < n; ++d) at_door.value_names.push_back("d" + std::to_string(d));
    sig_.actions = {{"move", 4, {"Nothing", "left", "right", "try"}}};
    sig_.observations = {at_door, {"try_result", 3, {"Nothing", "Locked", "Unlocked"}}};
    for (int d = 0; d < n; ++d) state_names_.push_back("door" + std::to_string(d));
    groups_ = {{"try", {{Try}}}};
}

int DoorsWorld::variable_card(int state, int slot) const {
    switch (slot) {
        case SlotAtDoor: return door_count() + 1;
        case SlotTryResult: return 3;
        case SlotLocked: return 2;
        case SlotPhase: return static_cast<int>(schedules_[state].size());
    }
    throw std::invalid_argument("bad slot");
}

CumulativeState DoorsWorld::initial() const {
    CumulativeState s;
    s.standard = 0;
    s.assignment.resize(door_count() * kVars);
    for (int d = 0; d < door_count(); ++d) {
        s.assignment[d * kVars + SlotAtDoor] = d + 1;
        s.assignment[d * kVars + SlotTryResult] = NoTry;
        s.assignment[d * kVars + SlotLocked] = schedules_[d][0] ? 1 : 0;
        s.assignment[d * kVars + SlotPhase] = 0;
    }
    return s;
}

bool DoorsWorld::action_defined(const CumulativeState& s, const ActionVec& a) const {
    switch (a[0]) {
        case Left: return s.standard > 0;
        case Right: return s.standard < door_count() - 1;
        default: return true;
    }
}

std::optional<Transition> DoorsWorld::transition(const CumulativeState& s, const ActionVec& a) const {
    if (!action_defined(s, a)) return std::nullopt;

    StateDelta delta;
    delta.next_standard = s.standard + (a[0] == Left ? -1 : a[0] == Right ? 1 : 0);
    for (int d = 0; d < door_count(); ++d) {
        const int period = static_cast<int>(schedules_[d].size());
        const int phase = (s.assignment[d * kVars + SlotPhase] + 1) % period;
        const int locked = schedules_[d][phase] ? 1 : 0;
        if (phase != s.assignment[d * kVars + SlotPhase]) delta.sets.push_back({d * kVars + SlotPhase, phase});
        if (locked != s.assignment[d * kVars + SlotLocked]) delta.sets.push_back({d * kVars + SlotLocked, locked});
        // try_result shows only on the step that tried.
        const int result = (a[0] == Try && d == delta.next_standard) ? (locked ? Locked : Unlocked) : NoTry;
        if (result != s.assignment[d * kVars + SlotTryResult])
            delta.sets.push_back({d * kVars + SlotTryResult, result});
    }

    Transition t;
    t.outcomes.push_back({std::move(delta), Rational(1), Rational(1)});
    return t;
}

std::unique_ptr<DoorsWorld> build_doors_world(std::vector<std::vector<bool>> schedules) {
    return std::make_unique<DoorsWorld>(std::move(schedules));
}

}  // namespace powsim::doors
