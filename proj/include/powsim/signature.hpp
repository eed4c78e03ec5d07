#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace powsim {

using ActionVec = std::vector<int>;
using ObsVec = std::vector<int>;

/// One action or observation coordinate: a finite scalar with k >= 2 values.
/// Value 0 of every coordinate is Nothing.
struct Coordinate {
    std::string name;
    int card = 2;
    std::vector<std::string> value_names;  // optional; index 0 defaults to "Nothing"

    std::string value_name(int v) const {
        if (v >= 0 && v < static_cast<int>(value_names.size()) && !value_names[v].empty())
            return value_names[v];
        if (v == 0) return "Nothing";
        return std::to_string(v);
    }

    /// Name lookup first ("1" may be a value *name*); numeric literal as fallback.
    std::optional<int> value_of(const std::string& s) const {
        for (int v = 0; v < static_cast<int>(value_names.size()); ++v)
            if (value_names[v] == s) return v;
        if (s == "Nothing" || s == "nothing") return 0;
        try {
            size_t pos = 0;
            const int v = std::stoi(s, &pos);
            if (pos == s.size() && v >= 0 && v < card) return v;
        } catch (const std::exception&) {
        }
        return std::nullopt;
    }
};

/// Shapes of the action and observation vectors (dimensions n and m,
/// per-coordinate cardinalities).
struct ScalarSignature {
    std::vector<Coordinate> actions;
    std::vector<Coordinate> observations;

    int action_dims() const { return static_cast<int>(actions.size()); }
    int obs_dims() const { return static_cast<int>(observations.size()); }

    long action_space_size() const {
        long n = 1;
        for (const auto& c : actions) n *= c.card;
        return n;
    }

    void validate() const {
        if (actions.empty() || observations.empty())
            throw std::invalid_argument("signature needs at least one action and one observation coordinate");
        for (const auto& c : actions)
            if (c.card < 2) throw std::invalid_argument("action coordinate '" + c.name + "' needs cardinality >= 2");
        for (const auto& c : observations)
            if (c.card < 2) throw std::invalid_argument("observation coordinate '" + c.name + "' needs cardinality >= 2");
    }

    bool action_in_range(const ActionVec& a) const {
        if (a.size() != actions.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] < 0 || a[i] >= actions[i].card) return false;
        return true;
    }

    bool obs_in_range(const ObsVec& v) const {
        if (v.size() != observations.size()) return false;
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] < 0 || v[i] >= observations[i].card) return false;
        return true;
    }

    /// Mixed-radix encoding of an action vector, first coordinate most significant.
    long encode_action(const ActionVec& a) const {
        if (!action_in_range(a)) throw std::invalid_argument("action vector out of signature bounds");
        long idx = 0;
        for (size_t i = 0; i < a.size(); ++i) idx = idx * actions[i].card + a[i];
        return idx;
    }

    ActionVec decode_action(long idx) const {
        ActionVec a(actions.size(), 0);
        for (size_t i = actions.size(); i-- > 0;) {
            a[i] = static_cast<int>(idx % actions[i].card);
            idx /= actions[i].card;
        }
        return a;
    }

    ActionVec nothing_action() const { return ActionVec(actions.size(), 0); }
};

inline bool operator==(const Coordinate& a, const Coordinate& b) {
    return a.name == b.name && a.card == b.card;
}

/// Signature compatibility for trace comparison: same shape, names ignored for values.
inline bool same_shape(const ScalarSignature& a, const ScalarSignature& b) {
    if (a.actions.size() != b.actions.size() || a.observations.size() != b.observations.size()) return false;
    for (size_t i = 0; i < a.actions.size(); ++i)
        if (a.actions[i].card != b.actions[i].card) return false;
    for (size_t i = 0; i < a.observations.size(); ++i)
        if (a.observations[i].card != b.observations[i].card) return false;
    return true;
}

}  // namespace powsim
