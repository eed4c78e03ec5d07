#pragma once

#include "powsim/signature.hpp"
#include "powsim/world.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace powsim {

/// One step of a history: the action taken, what View returned for the state
/// it led to, and that state's correctness flags (per action, plus the
/// per-group all/nobody summaries).
struct StepLetter {
    ActionVec action;
    ObsVec observation;
    std::vector<bool> correct;                     // indexed by encoded action
    std::vector<std::pair<bool, bool>> group_all_nobody;

    bool operator==(const StepLetter&) const = default;
};

/// The sequence a_1, v_1, ..., a_{t-1}, v_{t-1}. The first action is the
/// all-Nothing vector.
struct History {
    std::vector<StepLetter> steps;

    int length() const { return static_cast<int>(steps.size()); }
    const StepLetter& at(int t) const { return steps.at(t - 1); }  // 1-based
};

/// A window around a moment q, re-indexed so the moment's step sits at 0.
/// past holds indices -k..0 (nonempty), future 1..s. absolute_origin is set
/// when the past actually starts at a_1.
struct LocalHistory {
    std::vector<StepLetter> past;
    std::vector<StepLetter> future;
    bool absolute_origin = false;

    const StepLetter& present() const { return past.back(); }
};

/// Window extraction: past = steps q-k..q (clipped at the history start),
/// future = steps q+1..q+s (clipped at the end). Throws on q out of range.
LocalHistory localize(const History& h, int q, int k, int s);

/// History log line format: t TAB action-tuple TAB observation-tuple TAB
/// correctness-bits. Tuples comma-separated, bits one char per encoded action.
std::string format_step(int t, const StepLetter& step);
void write_history(std::ostream& os, const History& h);

/// Parses a log written by write_history; group summaries are recomputed from
/// the per-action bits.
History read_history(std::istream& is, const ScalarSignature& sig, const std::vector<MoveGroup>& groups);

}  // namespace powsim
