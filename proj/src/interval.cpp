#include "powsim/interval.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace powsim {
namespace {

struct Bound {
    Rational lo, hi;
};

// Group level of a distribution: plain outcomes are their own group. Order of
// first appearance. Returns bounds plus, per group, the member indices.
struct GroupView {
    std::vector<Bound> bounds;
    std::vector<std::vector<size_t>> members;
};

GroupView group_view(const IntervalDistribution& dist) {
    GroupView g;
    std::map<int, size_t> group_slot;
    for (size_t i = 0; i < dist.outcomes.size(); ++i) {
        const auto& o = dist.outcomes[i];
        if (o.group < 0) {
            g.bounds.push_back({o.lo, o.hi});
            g.members.push_back({i});
        } else {
            auto [it, fresh] = group_slot.try_emplace(o.group, g.bounds.size());
            if (fresh) {
                g.bounds.push_back({Rational(0), Rational(0)});
                g.members.push_back({});
            }
            g.bounds[it->second].lo += o.lo;
            g.bounds[it->second].hi += o.hi;
            g.members[it->second].push_back(i);
        }
    }
    return g;
}

void check_bounds(ValidationReport& rep, const std::vector<Bound>& bounds) {
    Rational sum_lo(0), sum_hi(0);
    for (size_t i = 0; i < bounds.size(); ++i) {
        const auto& b = bounds[i];
        const int idx = static_cast<int>(i) + 1;
        if (b.lo < Rational(0) || b.hi > Rational(1))
            rep.add("range", idx, "bounds outside [0, 1]");
        if (b.lo > b.hi) rep.add("bounds", idx, "lo > hi");
        sum_lo += b.lo;
        sum_hi += b.hi;
    }
    if (sum_lo > Rational(1)) rep.add("sum-lo", 0, "sum of lower bounds exceeds 1: " + to_string(sum_lo));
    if (sum_hi < Rational(1)) rep.add("sum-hi", 0, "sum of upper bounds below 1: " + to_string(sum_hi));

    // Inequality (1): hi_i <= 1 - Sum + lo_i, with equality for at least one i.
    for (size_t i = 0; i < bounds.size(); ++i) {
        const Rational limit = Rational(1) - sum_lo + bounds[i].lo;
        if (bounds[i].hi > limit)
            rep.add("(1)", static_cast<int>(i) + 1,
                    "hi exceeds 1 - Sum + lo = " + to_string(limit));
        else if (bounds[i].hi == limit)
            ++rep.equality_count;
    }
    if (rep.equality_count == 0) rep.add("(1)-equality", 0, "inequality (1) is strict for every i");
}

}  // namespace

ValidationReport validate_distribution(const IntervalDistribution& dist) {
    ValidationReport rep;
    if (dist.outcomes.empty()) {
        rep.add("malformed", 0, "empty outcome list");
        return rep;
    }
    std::set<int> seen;
    for (size_t i = 0; i < dist.outcomes.size(); ++i) {
        if (!seen.insert(dist.outcomes[i].target).second)
            rep.add("distinct-targets", static_cast<int>(i) + 1, "duplicate target");
    }

    const GroupView g = group_view(dist);
    check_bounds(rep, g.bounds);

    // Grouped outcomes: splits of one group sum to 1, bounds factor exactly.
    for (size_t gi = 0; gi < g.members.size(); ++gi) {
        if (g.members[gi].size() == 1 && dist.outcomes[g.members[gi][0]].group < 0) continue;
        Rational split_sum(0);
        for (size_t i : g.members[gi]) {
            const auto& o = dist.outcomes[i];
            split_sum += o.split;
            if (o.lo != g.bounds[gi].lo * o.split || o.hi != g.bounds[gi].hi * o.split)
                rep.add("group-split", static_cast<int>(i) + 1, "bounds do not factor as group * split");
        }
        if (split_sum != Rational(1))
            rep.add("group-split", 0, "splits sum to " + to_string(split_sum) + ", not 1");
    }
    return rep;
}

namespace {

// Uniform point on [0, 1] as a cell of a grid every boundary lands on.
// Stands in for Theorem 1's Q = lcm(1..100) grid: a uniform draw on any
// common-denominator grid selects subintervals with identical probabilities.
std::uint64_t grid_for(const std::vector<Bound>& bounds, const Rational& remainder) {
    std::int64_t d = 1;
    for (const auto& b : bounds) d = checked_lcm(d, b.lo.denominator());
    d = checked_lcm(d, remainder.denominator());
    return static_cast<std::uint64_t>(d);
}

}  // namespace

size_t sample_outcome_index(const IntervalDistribution& dist, RandomStream& predictable,
                            RandomStream& unpredictable) {
    const GroupView g = group_view(dist);
    const size_t k = g.bounds.size();

    Rational sum_lo(0);
    for (const auto& b : g.bounds) sum_lo += b.lo;
    const Rational remainder = Rational(1) - sum_lo;

    // Phase 1: subintervals of lengths lo_1..lo_k, then the remainder.
    const std::uint64_t d1 = grid_for(g.bounds, remainder);
    const std::uint64_t p1 = predictable.cell(d1);

    size_t chosen_group = k;  // k = fell into the remainder
    std::uint64_t cum = 0;
    for (size_t i = 0; i < k; ++i) {
        cum += static_cast<std::uint64_t>(g.bounds[i].lo.numerator() *
                                          (static_cast<std::int64_t>(d1) / g.bounds[i].lo.denominator()));
        if (p1 < cum) {
            chosen_group = i;
            break;
        }
    }

    // Phase 2 coefficients c_i = (hi_i - lo_i) / remainder.
    std::vector<Rational> c(k, Rational(0));
    std::int64_t d2 = 1;
    if (remainder > Rational(0)) {
        for (size_t i = 0; i < k; ++i) {
            c[i] = (g.bounds[i].hi - g.bounds[i].lo) / remainder;
            d2 = checked_lcm(d2, c[i].denominator());
        }
    }
    const std::uint64_t p2 = predictable.cell(static_cast<std::uint64_t>(d2));
    const std::uint64_t y = unpredictable.next();

    if (chosen_group == k) {
        // Option i survives while the point is below c_i; the validated
        // equality in (1) makes the zero-survivor tail have length zero.
        std::vector<size_t> survivors;
        for (size_t i = 0; i < k; ++i) {
            const std::uint64_t edge = static_cast<std::uint64_t>(
                c[i].numerator() * (d2 / c[i].denominator()));
            if (p2 < edge) survivors.push_back(i);
        }
        const size_t r = survivors.size();
        if (r == 0) throw std::logic_error("sample_outcome: empty survivor set (unvalidated distribution?)");
        chosen_group = survivors[y % r];
    }

    const auto& members = g.members[chosen_group];
    if (members.size() == 1) return members[0];

    // Grouped outcome: the split is predictable chance with known probabilities.
    std::int64_t ds = 1;
    for (size_t i : members) ds = checked_lcm(ds, dist.outcomes[i].split.denominator());
    const std::uint64_t ps = predictable.cell(static_cast<std::uint64_t>(ds));
    std::uint64_t cums = 0;
    for (size_t i : members) {
        const auto& s = dist.outcomes[i].split;
        cums += static_cast<std::uint64_t>(s.numerator() * (ds / s.denominator()));
        if (ps < cums) return i;
    }
    return members.back();
}

int sample_outcome(const IntervalDistribution& dist, RandomStream& predictable,
                   RandomStream& unpredictable) {
    return dist.outcomes[sample_outcome_index(dist, predictable, unpredictable)].target;
}

}  // namespace powsim
