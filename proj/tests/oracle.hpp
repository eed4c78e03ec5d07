#pragma once

// Definition-level brute force for event matching, used as the oracle the
// compiled matcher is checked against. No automata: word membership is
// decided by direct scans, and Definitions A/B are evaluated by enumerating
// every suffix u1 of past and every prefix u2 of future.

#include "powsim/events.hpp"
#include "powsim/history.hpp"

#include <vector>

namespace powsim::oracle {

using Word = std::vector<StepLetter>;

inline bool seq_matches_at(const std::vector<StepTemplate>& seq, const Word& w, size_t offset) {
    if (offset + seq.size() > w.size()) return false;
    for (size_t i = 0; i < seq.size(); ++i)
        if (!seq[i].matches(w[offset + i])) return false;
    return true;
}

inline bool word_is_seq(const std::vector<StepTemplate>& seq, const Word& w) {
    return w.size() == seq.size() && seq_matches_at(seq, w, 0);
}

inline int occurrence_count(const std::vector<StepTemplate>& seq, const Word& w) {
    int count = 0;
    for (size_t off = 0; off + seq.size() <= w.size(); ++off)
        if (seq_matches_at(seq, w, off)) ++count;
    return count;
}

/// w in L1 for the event's past language.
inline bool member_past(const EventAst& ast, const Word& w) {
    switch (ast.op) {
        case PastOp::Seq:
            return word_is_seq(ast.past_seq, w);
        case PastOp::Ends:
            return w.size() >= ast.past_seq.size() &&
                   seq_matches_at(ast.past_seq, w, w.size() - ast.past_seq.size());
        case PastOp::Begins:
            return seq_matches_at(ast.past_seq, w, 0);
        case PastOp::Contains:
            return occurrence_count(ast.past_seq, w) > 0;
        case PastOp::Mod:
            return occurrence_count(ast.past_seq, w) % ast.mod_n == ast.mod_m;
    }
    return false;
}

/// w in L2: the future language is a template sequence or {epsilon}.
inline bool member_future(const EventAst& ast, const Word& w) {
    return word_is_seq(ast.future_seq, w);
}

/// Definition A / Definition B, spelled out: exists u1 (suffix of past for A,
/// past itself for B) in L1 and u2 prefix of future in L2.
inline bool event_holds(const EventAst& ast, const LocalHistory& lh) {
    bool past_ok = false;
    if (ast.kind == 'B') {
        past_ok = member_past(ast, lh.past);
    } else {
        for (size_t start = 0; start <= lh.past.size() && !past_ok; ++start) {
            const Word u1(lh.past.begin() + start, lh.past.end());
            past_ok = member_past(ast, u1);
        }
    }
    if (!past_ok) return false;
    for (size_t len = 0; len <= lh.future.size(); ++len) {
        const Word u2(lh.future.begin(), lh.future.begin() + len);
        if (member_future(ast, u2)) return true;
    }
    return false;
}

}  // namespace powsim::oracle
