#pragma once

#include "powsim/history.hpp"
#include "powsim/signature.hpp"
#include "powsim/world.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace powsim {

/// Everything templates can mention: the signature plus the declared
/// cumulative-move groups.
struct EventContext {
    ScalarSignature sig;
    std::vector<MoveGroup> groups;

    int group_index(const std::string& name) const {
        for (size_t i = 0; i < groups.size(); ++i)
            if (groups[i].name == name) return static_cast<int>(i);
        return -1;
    }
};

/// Constraint on a group summary flag of a letter.
struct FlagConstraint {
    enum Kind { All, Nobody };
    Kind kind = All;
    int group = 0;
    bool required = true;
};

/// Letter predicate: per-coordinate constraints (value or -1 wildcard) on the
/// action and observation, plus optional flag constraints.
struct StepTemplate {
    std::vector<int> action;
    std::vector<int> obs;
    std::vector<FlagConstraint> flags;

    bool matches(const StepLetter& l) const {
        for (size_t i = 0; i < action.size(); ++i)
            if (action[i] >= 0 && action[i] != l.action[i]) return false;
        for (size_t i = 0; i < obs.size(); ++i)
            if (obs[i] >= 0 && obs[i] != l.observation[i]) return false;
        for (const auto& f : flags) {
            const auto& [all, nobody] = l.group_all_nobody[f.group];
            if ((f.kind == FlagConstraint::All ? all : nobody) != f.required) return false;
        }
        return true;
    }
};

enum class PastOp { Ends, Begins, Contains, Mod, Seq };

struct EventAst {
    char kind = 'A';
    PastOp op = PastOp::Ends;
    std::vector<StepTemplate> past_seq;
    int mod_m = 0;
    int mod_n = 1;
    std::vector<StepTemplate> future_seq;  // empty = epsilon
};

/// Deterministic, total automaton over step letters. Each state evaluates its
/// template list on the letter and indexes the successor table with the
/// resulting satisfaction mask.
struct Dfa {
    struct State {
        std::vector<int> templates;  // indices into the pool
        std::vector<int> next;       // size 1 << templates.size()
        bool accept = false;
    };
    std::vector<StepTemplate> pool;
    std::vector<State> states;
    int start = 0;

    int step(int state, const StepLetter& l) const {
        const State& st = states[state];
        unsigned mask = 0;
        for (size_t j = 0; j < st.templates.size(); ++j)
            if (pool[st.templates[j]].matches(l)) mask |= 1u << j;
        return st.next[mask];
    }

    bool accepts(const std::vector<StepLetter>& word) const {
        int s = start;
        for (const auto& l : word) s = step(s, l);
        return states[s].accept;
    }
};

class EventParseError : public std::runtime_error {
public:
    EventParseError(const std::string& what, size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    size_t position() const { return position_; }

private:
    size_t position_;
};

/// A compiled experiment: languages L1 (past) and L2 (future) as total DFAs.
/// For kind A the past machine recognizes Sigma*.L1, so running it over any
/// window checks "some suffix of past is in L1".
struct EventPattern {
    char kind = 'A';
    EventAst ast;
    Dfa past;
    Dfa future;
    std::string source_text;

    /// Letters of future needed before the event is decidable at a moment.
    int future_need() const { return static_cast<int>(ast.future_seq.size()); }
};

EventPattern compile_event(const EventAst& ast, const EventContext& ctx, std::string source_text = "");
EventPattern parse_event(const std::string& text, const EventContext& ctx);
std::string pretty_print(const EventAst& ast, const EventContext& ctx);

/// One bare step template, e.g. "<*;at_door=d1>" (grouping-file rule syntax).
StepTemplate parse_step_template(const std::string& text, const EventContext& ctx);

/// Definition A / Definition B matching. Kind B demands an origin-anchored
/// local history and throws std::invalid_argument otherwise.
bool event_holds(const EventPattern& e, const LocalHistory& lh);

}  // namespace powsim
