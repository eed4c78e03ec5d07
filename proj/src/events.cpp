#include "powsim/events.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace powsim {
namespace {

// ---------------------------------------------------------------------------
// NFA over template-labelled edges and its subset construction.

struct Nfa {
    struct Edge {
        int from;
        int tmpl;  // index into the pool, -1 = any letter
        int to;
    };
    int states = 0;
    int start = 0;
    std::vector<Edge> edges;
    std::set<int> accept;
};

// Chain for a template sequence, optionally Sigma-looped at either end.
Nfa chain(int pool_offset, int len, bool loop_front, bool loop_back) {
    Nfa n;
    n.states = len + 1;
    for (int i = 0; i < len; ++i) n.edges.push_back({i, pool_offset + i, i + 1});
    if (loop_front) n.edges.push_back({0, -1, 0});
    if (loop_back) n.edges.push_back({len, -1, len});
    n.accept.insert(len);
    return n;
}

Dfa determinize(const Nfa& nfa, std::vector<StepTemplate> pool) {
    Dfa dfa;
    dfa.pool = std::move(pool);
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> subsets;

    auto intern = [&](std::vector<int> subset) {
        std::sort(subset.begin(), subset.end());
        subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
        auto [it, fresh] = index.try_emplace(subset, static_cast<int>(subsets.size()));
        if (fresh) subsets.push_back(it->first);
        return it->second;
    };

    dfa.start = intern({nfa.start});
    for (size_t cur = 0; cur < subsets.size(); ++cur) {
        const std::vector<int> subset = subsets[cur];
        std::vector<int> tmpls;
        for (const auto& e : nfa.edges)
            if (e.tmpl >= 0 && std::binary_search(subset.begin(), subset.end(), e.from))
                tmpls.push_back(e.tmpl);
        std::sort(tmpls.begin(), tmpls.end());
        tmpls.erase(std::unique(tmpls.begin(), tmpls.end()), tmpls.end());

        Dfa::State st;
        st.templates = tmpls;
        st.accept = std::any_of(subset.begin(), subset.end(), [&](int q) { return nfa.accept.count(q); });
        st.next.resize(size_t{1} << tmpls.size());
        for (unsigned mask = 0; mask < st.next.size(); ++mask) {
            std::vector<int> succ;
            for (const auto& e : nfa.edges) {
                if (!std::binary_search(subset.begin(), subset.end(), e.from)) continue;
                if (e.tmpl < 0) {
                    succ.push_back(e.to);
                    continue;
                }
                const auto pos = std::lower_bound(tmpls.begin(), tmpls.end(), e.tmpl) - tmpls.begin();
                if (mask & (1u << pos)) succ.push_back(e.to);
            }
            st.next[mask] = intern(std::move(succ));
        }
        if (dfa.states.size() <= cur) dfa.states.resize(cur + 1);
        dfa.states[cur] = std::move(st);
    }
    dfa.states.resize(subsets.size());
    return dfa;
}

// Occurrence-count-mod-n machine: runs the Sigma*P detector and counts the
// positions where an occurrence of P ends.
Dfa mod_product(const Dfa& detector, int m, int n) {
    Dfa dfa;
    dfa.pool = detector.pool;
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> order;

    auto intern = [&](int d, int c) {
        auto [it, fresh] = index.try_emplace({d, c}, static_cast<int>(order.size()));
        if (fresh) order.push_back({d, c});
        return it->second;
    };

    dfa.start = intern(detector.start, 0);
    for (size_t cur = 0; cur < order.size(); ++cur) {
        const auto [d, c] = order[cur];
        const Dfa::State& base = detector.states[d];
        Dfa::State st;
        st.templates = base.templates;
        st.accept = (c == m);
        st.next.resize(base.next.size());
        for (unsigned mask = 0; mask < base.next.size(); ++mask) {
            const int d2 = base.next[mask];
            const int c2 = (c + (detector.states[d2].accept ? 1 : 0)) % n;
            st.next[mask] = intern(d2, c2);
        }
        if (dfa.states.size() <= cur) dfa.states.resize(cur + 1);
        dfa.states[cur] = std::move(st);
    }
    dfa.states.resize(order.size());
    return dfa;
}

Dfa epsilon_future() {
    Dfa dfa;
    Dfa::State st;
    st.accept = true;
    st.next = {0};
    dfa.states.push_back(st);
    return dfa;
}

// ---------------------------------------------------------------------------
// DSL scanner/parser.

struct Scanner {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool utf8_at(const char* seq) const {
        const size_t len = std::char_traits<char>::length(seq);
        return text.compare(pos, len, seq) == 0;
    }

    // One symbolic token: handles the unicode angle brackets and epsilon.
    bool eat_sym(char ascii, const char* utf8) {
        skip_ws();
        if (pos < text.size() && text[pos] == ascii) {
            ++pos;
            return true;
        }
        if (utf8 && utf8_at(utf8)) {
            pos += std::char_traits<char>::length(utf8);
            return true;
        }
        return false;
    }

    void expect_sym(char ascii, const char* utf8, const std::string& what) {
        if (!eat_sym(ascii, utf8)) throw EventParseError("expected " + what, pos);
    }

    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == '+';
    }

    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) ++pos;
        if (pos == start) throw EventParseError("expected identifier", pos);
        return text.substr(start, pos - start);
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
};

struct RawItem {
    enum Kind { Star, Pair, Flag, Bare } kind = Star;
    std::string name;   // pair: coord name; flag: group name
    std::string value;
    bool flag_all = true;
    size_t pos = 0;
};

RawItem parse_item(Scanner& sc) {
    RawItem item;
    item.pos = sc.pos;
    if (sc.eat_sym('*', nullptr)) {
        item.kind = RawItem::Star;
        return item;
    }
    const std::string first = sc.ident();
    if ((first == "all" || first == "nobody") && sc.eat_sym('(', nullptr)) {
        item.kind = RawItem::Flag;
        item.flag_all = first == "all";
        item.name = sc.ident();
        sc.expect_sym(')', nullptr, "')'");
        sc.expect_sym('=', nullptr, "'=' after flag");
        item.value = sc.ident();
        return item;
    }
    if (sc.eat_sym('=', nullptr)) {
        item.kind = RawItem::Pair;
        item.name = first;
        item.value = sc.ident();
        return item;
    }
    item.kind = RawItem::Bare;
    item.value = first;
    return item;
}

bool parse_bool(const std::string& s, size_t pos) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw EventParseError("expected a Boolean, got '" + s + "'", pos);
}

void resolve_side(const std::vector<RawItem>& items, const std::vector<Coordinate>& coords,
                  bool is_obs_side, const EventContext& ctx, std::vector<int>& out,
                  std::vector<FlagConstraint>& flags) {
    out.assign(coords.size(), -1);

    const bool positional =
        items.size() == coords.size() &&
        std::all_of(items.begin(), items.end(),
                    [](const RawItem& i) { return i.kind == RawItem::Star || i.kind == RawItem::Bare; }) &&
        !(items.size() == 1 && items[0].kind == RawItem::Star);

    if (positional) {
        for (size_t i = 0; i < items.size(); ++i) {
            if (items[i].kind == RawItem::Star) continue;
            const auto v = coords[i].value_of(items[i].value);
            if (!v)
                throw EventParseError("'" + items[i].value + "' is not a value of coordinate '" +
                                          coords[i].name + "'",
                                      items[i].pos);
            out[i] = *v;
        }
        return;
    }

    for (const auto& item : items) {
        switch (item.kind) {
            case RawItem::Star:
                break;
            case RawItem::Pair: {
                size_t ci = coords.size();
                for (size_t i = 0; i < coords.size(); ++i)
                    if (coords[i].name == item.name) ci = i;
                if (ci == coords.size())
                    throw EventParseError("unknown coordinate '" + item.name + "'", item.pos);
                const auto v = coords[ci].value_of(item.value);
                if (!v)
                    throw EventParseError("'" + item.value + "' is not a value of coordinate '" +
                                              item.name + "'",
                                          item.pos);
                out[ci] = *v;
                break;
            }
            case RawItem::Flag: {
                if (!is_obs_side)
                    throw EventParseError("flag constraints belong on the observation side", item.pos);
                const int g = ctx.group_index(item.name);
                if (g < 0) throw EventParseError("unknown move group '" + item.name + "'", item.pos);
                flags.push_back({item.flag_all ? FlagConstraint::All : FlagConstraint::Nobody, g,
                                 parse_bool(item.value, item.pos)});
                break;
            }
            case RawItem::Bare: {
                // A value name that is unique across this side's coordinates.
                int hit_coord = -1, hit_value = -1;
                for (size_t i = 0; i < coords.size(); ++i) {
                    for (int v = 0; v < static_cast<int>(coords[i].value_names.size()); ++v) {
                        if (coords[i].value_names[v] != item.value) continue;
                        if (hit_coord >= 0)
                            throw EventParseError("value '" + item.value + "' is ambiguous", item.pos);
                        hit_coord = static_cast<int>(i);
                        hit_value = v;
                    }
                }
                if (hit_coord < 0)
                    throw EventParseError("unknown value '" + item.value + "'", item.pos);
                out[hit_coord] = hit_value;
                break;
            }
        }
    }
}

StepTemplate parse_template(Scanner& sc, const EventContext& ctx) {
    auto parse_items = [&](char terminator, const char* terminator_utf8) {
        std::vector<RawItem> items;
        items.push_back(parse_item(sc));
        while (sc.eat_sym(',', nullptr)) items.push_back(parse_item(sc));
        (void)terminator;
        (void)terminator_utf8;
        return items;
    };

    StepTemplate t;
    const std::vector<RawItem> action_items = parse_items(';', nullptr);
    sc.expect_sym(';', nullptr, "';' between action and observation patterns");
    const std::vector<RawItem> obs_items = parse_items('>', "\xE2\x9F\xA9");
    sc.expect_sym('>', "\xE2\x9F\xA9", "closing template bracket");

    std::vector<FlagConstraint> dummy;
    resolve_side(action_items, ctx.sig.actions, false, ctx, t.action, dummy);
    if (!dummy.empty()) throw EventParseError("flag constraints belong on the observation side", sc.pos);
    resolve_side(obs_items, ctx.sig.observations, true, ctx, t.obs, t.flags);
    return t;
}

std::vector<StepTemplate> parse_seq(Scanner& sc, const EventContext& ctx) {
    std::vector<StepTemplate> seq;
    while (sc.eat_sym('<', "\xE2\x9F\xA8")) seq.push_back(parse_template(sc, ctx));
    if (seq.empty()) throw EventParseError("expected a template sequence", sc.pos);
    return seq;
}

}  // namespace

EventPattern compile_event(const EventAst& ast, const EventContext& ctx, std::string source_text) {
    EventPattern e;
    e.kind = ast.kind;
    e.ast = ast;
    e.source_text = source_text.empty() ? pretty_print(ast, ctx) : std::move(source_text);

    const int r = static_cast<int>(ast.past_seq.size());
    const bool kind_a = ast.kind == 'A';
    if (kind_a && (ast.op == PastOp::Begins || ast.op == PastOp::Mod))
        throw std::invalid_argument("begins/mod anchor the history origin and need a kind-B event");

    // Past machine: for kind A this is Sigma*.L1 (suffix semantics), for
    // kind B it is L1 itself.
    bool loop_front = false, loop_back = false;
    switch (ast.op) {
        case PastOp::Ends:
            loop_front = true;  // Sigma*P either way
            break;
        case PastOp::Seq:
            loop_front = kind_a;  // exact for B, suffix for A
            break;
        case PastOp::Contains:
            loop_front = loop_back = true;
            break;
        case PastOp::Begins:
            loop_back = true;
            break;
        case PastOp::Mod:
            loop_front = true;  // occurrence detector, then the counter product
            break;
    }
    const Dfa base = determinize(chain(0, r, loop_front, loop_back), ast.past_seq);
    e.past = ast.op == PastOp::Mod ? mod_product(base, ast.mod_m, ast.mod_n) : base;

    // Future machine: L2.Sigma* with absorbing accept, so a final-state check
    // is "some prefix of future is in L2".
    if (ast.future_seq.empty())
        e.future = epsilon_future();
    else
        e.future = determinize(
            chain(0, static_cast<int>(ast.future_seq.size()), false, true), ast.future_seq);
    return e;
}

EventPattern parse_event(const std::string& text, const EventContext& ctx) {
    Scanner sc{text};
    EventAst ast;

    sc.skip_ws();
    const std::string kind = sc.ident();
    if (kind != "A" && kind != "B") throw EventParseError("event must start with 'A:' or 'B:'", 0);
    ast.kind = kind[0];
    sc.expect_sym(':', nullptr, "':' after the kind");

    sc.skip_ws();
    const size_t save = sc.pos;
    bool is_op = false;
    std::string op_name;
    if (!sc.at_end() && std::isalpha(static_cast<unsigned char>(sc.text[sc.pos]))) {
        op_name = sc.ident();
        if (sc.eat_sym('(', nullptr))
            is_op = true;
        else
            sc.pos = save;
    }

    if (is_op) {
        if (op_name == "ends")
            ast.op = PastOp::Ends;
        else if (op_name == "begins")
            ast.op = PastOp::Begins;
        else if (op_name == "contains")
            ast.op = PastOp::Contains;
        else if (op_name == "mod")
            ast.op = PastOp::Mod;
        else
            throw EventParseError("unknown operator '" + op_name + "'", save);
        ast.past_seq = parse_seq(sc, ctx);
        if (ast.op == PastOp::Mod) {
            sc.expect_sym(',', nullptr, "',' before mod residue");
            const size_t mpos = sc.pos;
            try {
                ast.mod_m = std::stoi(sc.ident());
                sc.expect_sym(',', nullptr, "',' before mod modulus");
                ast.mod_n = std::stoi(sc.ident());
            } catch (const EventParseError&) {
                throw;
            } catch (const std::exception&) {
                throw EventParseError("mod needs integer residue and modulus", mpos);
            }
            if (ast.mod_n < 1 || ast.mod_m < 0 || ast.mod_m >= ast.mod_n)
                throw EventParseError("mod needs 0 <= m < n", mpos);
        }
        sc.expect_sym(')', nullptr, "')'");
    } else {
        ast.op = PastOp::Seq;
        ast.past_seq = parse_seq(sc, ctx);
    }

    sc.expect_sym('/', nullptr, "'/' between past and future");
    sc.skip_ws();
    if (sc.utf8_at("\xCE\xB5"))
        sc.pos += 2;
    else if (sc.text.compare(sc.pos, 3, "eps") == 0)
        sc.pos += 3;
    else
        ast.future_seq = parse_seq(sc, ctx);
    if (!sc.at_end()) throw EventParseError("trailing input after the event", sc.pos);

    try {
        return compile_event(ast, ctx, text);
    } catch (const std::invalid_argument& err) {
        throw EventParseError(err.what(), 0);
    }
}

std::string pretty_print(const EventAst& ast, const EventContext& ctx) {
    auto print_tmpl = [&](const StepTemplate& t) {
        std::string s = "\xE2\x9F\xA8";
        bool any = false;
        for (size_t i = 0; i < t.action.size(); ++i) {
            if (t.action[i] < 0) continue;
            if (any) s += ",";
            s += ctx.sig.actions[i].name + "=" + ctx.sig.actions[i].value_name(t.action[i]);
            any = true;
        }
        if (!any) s += "*";
        s += ";";
        any = false;
        for (size_t i = 0; i < t.obs.size(); ++i) {
            if (t.obs[i] < 0) continue;
            if (any) s += ",";
            s += ctx.sig.observations[i].name + "=" + ctx.sig.observations[i].value_name(t.obs[i]);
            any = true;
        }
        for (const auto& f : t.flags) {
            if (any) s += ",";
            s += std::string(f.kind == FlagConstraint::All ? "all" : "nobody") + "(" +
                 ctx.groups[f.group].name + ")=" + (f.required ? "true" : "false");
            any = true;
        }
        if (!any) s += "*";
        return s + "\xE2\x9F\xA9";
    };
    auto print_seq = [&](const std::vector<StepTemplate>& seq) {
        std::string s;
        for (const auto& t : seq) s += print_tmpl(t);
        return s;
    };

    std::string out;
    out += ast.kind;
    out += ": ";
    switch (ast.op) {
        case PastOp::Ends:
            out += "ends(" + print_seq(ast.past_seq) + ")";
            break;
        case PastOp::Begins:
            out += "begins(" + print_seq(ast.past_seq) + ")";
            break;
        case PastOp::Contains:
            out += "contains(" + print_seq(ast.past_seq) + ")";
            break;
        case PastOp::Mod:
            out += "mod(" + print_seq(ast.past_seq) + ", " + std::to_string(ast.mod_m) + ", " +
                   std::to_string(ast.mod_n) + ")";
            break;
        case PastOp::Seq:
            out += print_seq(ast.past_seq);
            break;
    }
    out += " / ";
    out += ast.future_seq.empty() ? "\xCE\xB5" : print_seq(ast.future_seq);
    return out;
}

StepTemplate parse_step_template(const std::string& text, const EventContext& ctx) {
    Scanner sc{text};
    sc.expect_sym('<', "\xE2\x9F\xA8", "template bracket");
    StepTemplate t = parse_template(sc, ctx);
    if (!sc.at_end()) throw EventParseError("trailing input after the template", sc.pos);
    return t;
}

bool event_holds(const EventPattern& e, const LocalHistory& lh) {
    if (e.kind == 'B' && !lh.absolute_origin)
        throw std::invalid_argument("kind-B event on a local history that does not start at the origin");
    return e.past.accepts(lh.past) && e.future.accepts(lh.future);
}

}  // namespace powsim
