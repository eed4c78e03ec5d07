#pragma once

#include "powsim/world.hpp"

#include <memory>
#include <vector>

namespace powsim::doors {

enum Action : int { Wait = 0, Left = 1, Right = 2, Try = 3 };
enum TryResult : int { NoTry = 0, Locked = 1, Unlocked = 2 };
enum Slot : int { SlotAtDoor = 0, SlotTryResult = 1, SlotLocked = 2, SlotPhase = 3 };

/// A corridor of doors. Each door's locked bit follows its own periodic
/// schedule (true = locked), ticking once per step as an invisible variable.
/// Trying the door is always a correct move and reveals the bit in the
/// try_result observation for that one step.
class DoorsWorld final : public CumulativeWorld {
public:
    explicit DoorsWorld(std::vector<std::vector<bool>> schedules);

    const ScalarSignature& signature() const override { return sig_; }
    const std::vector<std::string>& state_names() const override { return state_names_; }
    int invisible_per_state() const override { return 2; }  // locked bit + schedule phase
    int variable_card(int state, int slot) const override;
    CumulativeState initial() const override;
    std::optional<Transition> transition(const CumulativeState& s, const ActionVec& a) const override;
    bool action_defined(const CumulativeState& s, const ActionVec& a) const override;
    const std::vector<MoveGroup>& groups() const override { return groups_; }

    int door_count() const { return static_cast<int>(schedules_.size()); }
    bool locked_at(int door, long step) const {
        return schedules_[door][step % schedules_[door].size()];
    }

private:
    std::vector<std::vector<bool>> schedules_;
    ScalarSignature sig_;
    std::vector<std::string> state_names_;
    std::vector<MoveGroup> groups_;
};

std::unique_ptr<DoorsWorld> build_doors_world(std::vector<std::vector<bool>> schedules);

}  // namespace powsim::doors
