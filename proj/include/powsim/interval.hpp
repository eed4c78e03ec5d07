#pragma once

#include "powsim/random.hpp"
#include "powsim/rational.hpp"

#include <string>
#include <vector>

namespace powsim {

/// One possible successor with its probability interval [lo, hi].
/// Transformed worlds carry the factorization of their bounds: outcomes that
/// came from splitting one source outcome share a `group` id and record the
/// split probability, with lo = group_lo * split (and likewise hi).
struct IntervalOutcome {
    int target = 0;
    Rational lo{0};
    Rational hi{0};
    int group = -1;        // <0: plain outcome
    Rational split{1};
};

struct IntervalDistribution {
    std::vector<IntervalOutcome> outcomes;
};

struct Violation {
    std::string constraint;  // "bounds", "sum-lo", "sum-hi", "(1)", "(1)-equality",
                             // "distinct-targets", "range", "group-split"
    int index = 0;           // 1-based outcome index; 0 when not index-specific
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    int equality_count = 0;  // how many indices meet inequality (1) with equality

    void add(std::string constraint, int index, std::string detail) {
        ok = false;
        violations.push_back({std::move(constraint), index, std::move(detail)});
    }
};

ValidationReport validate_distribution(const IntervalDistribution& dist);

/// Two-phase sampling of one outcome index. Phase 1 picks a grid cell against
/// the lower bounds; on the remainder, phase 2 keeps option i alive below
/// c_i = (hi_i - lo_i)/(1 - Sum) and the unpredictable stream picks among the
/// R survivors as (y mod R) + 1. Always consumes two predictable draws and one
/// unpredictable draw (plus one predictable draw for the split of a grouped
/// distribution), so a run stays aligned with its determinization.
/// Requires a distribution whose group level passes validate_distribution.
size_t sample_outcome_index(const IntervalDistribution& dist, RandomStream& predictable,
                            RandomStream& unpredictable);

/// The spec-level operation: returns the chosen target id.
int sample_outcome(const IntervalDistribution& dist, RandomStream& predictable,
                   RandomStream& unpredictable);

}  // namespace powsim
