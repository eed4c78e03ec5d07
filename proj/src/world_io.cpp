#include "powsim/world_io.hpp"

#include "powsim/chess.hpp"
#include "powsim/doors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace powsim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& what) {
    throw SpecError(source + ": " + what);
}

Rational parse_prob(const json& j, const std::string& source, const std::string& where) {
    if (j.is_number_integer()) {
        const std::int64_t h = j.get<std::int64_t>();
        if (h < 0 || h > 100) fail(source, where + ": hundredths value " + std::to_string(h) + " outside 0..100");
        return hundredths(h);
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
        const std::int64_t num = j[0].get<std::int64_t>(), den = j[1].get<std::int64_t>();
        if (den <= 0) fail(source, where + ": rational with nonpositive denominator");
        return Rational(num, den);
    }
    fail(source, where + ": probabilities are integer hundredths or [num, den] rationals, not rounded");
}

json prob_json(const Rational& r) {
    const Rational scaled = r * Rational(100);
    if (scaled.denominator() == 1) return scaled.numerator();
    return json::array({r.numerator(), r.denominator()});
}

Coordinate parse_coordinate(const json& j, const std::string& source) {
    Coordinate c;
    c.name = j.value("name", "");
    if (!j.contains("card")) fail(source, "coordinate '" + c.name + "' needs a cardinality");
    c.card = j["card"].get<int>();
    if (j.contains("values")) c.value_names = j["values"].get<std::vector<std::string>>();
    if (static_cast<int>(c.value_names.size()) > c.card)
        fail(source, "coordinate '" + c.name + "' has more value names than its cardinality");
    return c;
}

json coordinate_json(const Coordinate& c) {
    json j{{"name", c.name}, {"card", c.card}};
    if (!c.value_names.empty()) j["values"] = c.value_names;
    return j;
}

ScalarSignature parse_signature(const json& j, const std::string& source) {
    if (!j.contains("actions") || !j.contains("observations"))
        fail(source, "signature needs actions and observations");
    ScalarSignature sig;
    for (const auto& c : j["actions"]) sig.actions.push_back(parse_coordinate(c, source));
    for (const auto& c : j["observations"]) sig.observations.push_back(parse_coordinate(c, source));
    try {
        sig.validate();
    } catch (const std::exception& e) {
        fail(source, e.what());
    }
    return sig;
}

json signature_json(const ScalarSignature& sig) {
    json actions = json::array(), observations = json::array();
    for (const auto& c : sig.actions) actions.push_back(coordinate_json(c));
    for (const auto& c : sig.observations) observations.push_back(coordinate_json(c));
    return {{"actions", actions}, {"observations", observations}};
}

int state_index(const std::vector<std::string>& states, const json& j, const std::string& source) {
    if (j.is_number_integer()) {
        const int s = j.get<int>();
        if (s < 0 || s >= static_cast<int>(states.size())) fail(source, "state index out of range");
        return s;
    }
    const std::string name = j.get<std::string>();
    for (size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return static_cast<int>(i);
    fail(source, "unknown state '" + name + "'");
}

// Action template entry: value name, integer, or "*".
int action_entry(const json& j, const Coordinate& c, const std::string& source) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "*") return -1;
        const auto v = c.value_of(s);
        if (!v) fail(source, "'" + s + "' is not a value of action coordinate '" + c.name + "'");
        return *v;
    }
    const int v = j.get<int>();
    if (v < -1 || v >= c.card) fail(source, "action value out of range for '" + c.name + "'");
    return v;
}

std::vector<int> parse_action_template(const json& j, const ScalarSignature& sig,
                                       const std::string& source) {
    if (!j.is_array() || j.size() != sig.actions.size())
        fail(source, "action template needs one entry per coordinate");
    std::vector<int> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(action_entry(j[i], sig.actions[i], source));
    return out;
}

std::vector<MoveGroup> parse_groups(const json& j, const ScalarSignature& sig,
                                    const std::string& source) {
    std::vector<MoveGroup> groups;
    for (const auto& g : j) {
        MoveGroup mg;
        mg.name = g.value("name", "");
        if (mg.name.empty()) fail(source, "move group needs a name");
        for (const auto& t : g.at("actions")) mg.templates.push_back(parse_action_template(t, sig, source));
        groups.push_back(std::move(mg));
    }
    return groups;
}

json groups_json(const std::vector<MoveGroup>& groups) {
    json out = json::array();
    for (const auto& g : groups) {
        json ts = json::array();
        for (const auto& t : g.templates) ts.push_back(t);
        out.push_back({{"name", g.name}, {"actions", ts}});
    }
    return out;
}

IntervalOutcome parse_outcome(const json& j, const std::vector<std::string>& states,
                              const std::string& source) {
    IntervalOutcome o;
    if (j.is_array()) {
        if (j.size() != 3) fail(source, "outcome arrays are [target, lo, hi]");
        o.target = state_index(states, j[0], source);
        o.lo = parse_prob(j[1], source, "outcome lo");
        o.hi = parse_prob(j[2], source, "outcome hi");
        return o;
    }
    o.target = state_index(states, j.at("target"), source);
    o.lo = parse_prob(j.at("lo"), source, "outcome lo");
    o.hi = parse_prob(j.at("hi"), source, "outcome hi");
    if (j.contains("group")) {
        o.group = j["group"].get<int>();
        o.split = parse_prob(j.at("split"), source, "outcome split");
    }
    return o;
}

std::shared_ptr<WorldDef2> parse_def2(const json& j, const std::string& source) {
    auto w = std::make_shared<WorldDef2>();
    w->sig = parse_signature(j.at("signature"), source);
    w->states = j.at("states").get<std::vector<std::string>>();
    if (w->states.empty()) fail(source, "world needs at least one state");
    w->initial = state_index(w->states, j.at("initial"), source);
    w->rational_bounds = j.value("rational_bounds", false);

    const json& view = j.at("view");
    for (const auto& name : w->states) {
        if (!view.contains(name)) fail(source, "view is missing state '" + name + "'");
        w->view.push_back(view[name].get<ObsVec>());
        if (!w->sig.obs_in_range(w->view.back())) fail(source, "view of '" + name + "' out of range");
    }

    for (const auto& t : j.value("transitions", json::array())) {
        const int s = state_index(w->states, t.at("state"), source);
        const std::vector<int> tmpl = parse_action_template(t.at("action"), w->sig, source);
        ActionVec a;
        for (const int v : tmpl) {
            if (v < 0) fail(source, "def2 transitions take exact actions, not wildcards");
            a.push_back(v);
        }
        IntervalDistribution dist;
        for (const auto& o : t.at("outcomes")) dist.outcomes.push_back(parse_outcome(o, w->states, source));
        if (!w->transitions.emplace(std::make_pair(s, w->sig.encode_action(a)), std::move(dist)).second)
            fail(source, "duplicate transition for state '" + w->states[s] + "'");
    }
    if (j.contains("groups")) w->move_groups = parse_groups(j["groups"], w->sig, source);
    return w;
}

int slot_index(const json& j, const ScalarSignature& sig, const std::vector<Coordinate>& invisible,
               const std::string& source) {
    if (j.is_number_integer()) return j.get<int>();
    const std::string name = j.get<std::string>();
    for (size_t i = 0; i < sig.observations.size(); ++i)
        if (sig.observations[i].name == name) return static_cast<int>(i);
    for (size_t i = 0; i < invisible.size(); ++i)
        if (invisible[i].name == name) return static_cast<int>(sig.observations.size() + i);
    fail(source, "unknown variable slot '" + name + "'");
}

std::shared_ptr<TableWorld> parse_table(const json& j, const std::string& source, bool allow_noise) {
    TableWorldSpec spec;
    spec.sig = parse_signature(j.at("signature"), source);
    spec.states = j.at("states").get<std::vector<std::string>>();
    if (spec.states.empty()) fail(source, "world needs at least one state");
    spec.initial_state = state_index(spec.states, j.at("initial"), source);
    spec.rational_bounds = j.value("rational_bounds", false);
    for (const auto& c : j.value("invisible", json::array()))
        spec.invisible.push_back(parse_coordinate(c, source));

    const int vars = spec.vars_per_state();
    spec.initial_assignment.assign(spec.states.size() * vars, 0);
    const json& assignment = j.at("assignment");
    for (size_t s = 0; s < spec.states.size(); ++s) {
        if (!assignment.contains(spec.states[s]))
            fail(source, "assignment is missing state '" + spec.states[s] + "'");
        const auto vals = assignment[spec.states[s]].get<std::vector<int>>();
        if (static_cast<int>(vals.size()) != vars)
            fail(source, "assignment of '" + spec.states[s] + "' needs m+u values");
        for (int k = 0; k < vars; ++k) spec.initial_assignment[s * vars + k] = vals[k];
    }

    if (j.contains("card_overrides")) {
        spec.card_overrides.assign(spec.states.size() * vars, 0);
        for (const auto& o : j["card_overrides"]) {
            const int s = state_index(spec.states, o.at("state"), source);
            const int slot = slot_index(o.at("slot"), spec.sig, spec.invisible, source);
            spec.card_overrides[spec.var_index(s, slot)] = o.at("card").get<int>();
        }
    }

    for (const auto& r : j.value("rules", json::array())) {
        TransitionRule rule;
        rule.state = state_index(spec.states, r.at("state"), source);
        rule.action = parse_action_template(r.at("action"), spec.sig, source);
        for (const auto& g : r.value("when", json::array())) {
            const int s = state_index(spec.states, g.at("state"), source);
            const int slot = slot_index(g.at("slot"), spec.sig, spec.invisible, source);
            rule.when.push_back({spec.var_index(s, slot), g.at("is").get<int>()});
        }
        for (const auto& o : r.at("outcomes")) {
            TransitionOutcome out;
            out.delta.next_standard = state_index(spec.states, o.at("next"), source);
            out.lo = parse_prob(o.at("lo"), source, "outcome lo");
            out.hi = parse_prob(o.at("hi"), source, "outcome hi");
            if (o.contains("group")) {
                out.group = o["group"].get<int>();
                out.split = parse_prob(o.at("split"), source, "outcome split");
            }
            for (const auto& set : o.value("set", json::array())) {
                const int s = state_index(spec.states, set.at("state"), source);
                const int slot = slot_index(set.at("slot"), spec.sig, spec.invisible, source);
                out.delta.sets.push_back({spec.var_index(s, slot), set.at("to").get<int>()});
            }
            rule.outcomes.push_back(std::move(out));
        }
        spec.rules.push_back(std::move(rule));
    }

    if (j.contains("groups")) spec.move_groups = parse_groups(j["groups"], spec.sig, source);

    for (const auto& n : j.value("noise", json::array())) {
        if (!allow_noise) fail(source, "def3 worlds do not carry noise; use kind def4");
        NoiseEntry e;
        if (n.contains("state") && !(n["state"].is_string() && n["state"] == "*"))
            e.state = state_index(spec.states, n["state"], source);
        e.slot = slot_index(n.at("slot"), spec.sig, spec.invisible, source);
        if (e.slot >= spec.sig.obs_dims()) fail(source, "noise belongs on a visible slot");
        if (n.contains("when_value")) e.when_value = n["when_value"].get<int>();
        e.descriptor.volume = parse_prob(n.at("volume"), source, "noise volume");
        for (const auto& p : n.at("spectrum"))
            e.descriptor.spectrum.push_back(parse_prob(p, source, "spectrum entry"));
        spec.noise.push_back(std::move(e));
    }

    try {
        return std::make_shared<TableWorld>(std::move(spec));
    } catch (const std::exception& e) {
        fail(source, e.what());
    }
}

LoadedWorld load_builtin(const json& j, const std::string& source) {
    LoadedWorld out;
    const std::string name = j.value("name", "");
    const json cfg = j.value("config", json::object());
    if (name == "chess") {
        chess::ChessConfig c;
        if (cfg.contains("color_volume")) c.color_volume = parse_prob(cfg["color_volume"], source, "color_volume");
        if (cfg.contains("chessman_volume"))
            c.chessman_volume = parse_prob(cfg["chessman_volume"], source, "chessman_volume");
        if (cfg.contains("king_volume")) c.king_volume = parse_prob(cfg["king_volume"], source, "king_volume");
        c.move_cap = cfg.value("move_cap", 200);
        c.opponent_policy = cfg.value("opponent", "greedy");
        out.kind = "builtin:chess";
        out.echo = "chess opponent=" + c.opponent_policy + " move_cap=" + std::to_string(c.move_cap) +
                   " color_volume=" + to_string(c.color_volume) +
                   " chessman_volume=" + to_string(c.chessman_volume) +
                   " king_volume=" + to_string(c.king_volume);
        try {
            out.world = chess::build_chess_world(c);
        } catch (const std::exception& e) {
            fail(source, e.what());
        }
        return out;
    }
    if (name == "doors") {
        std::vector<std::vector<bool>> schedules;
        for (const auto& s : cfg.at("schedules")) {
            std::vector<bool> sched;
            for (const auto& bit : s) sched.push_back(bit.get<int>() != 0);
            schedules.push_back(std::move(sched));
        }
        out.kind = "builtin:doors";
        out.echo = "doors n=" + std::to_string(schedules.size());
        try {
            out.world = doors::build_doors_world(std::move(schedules));
        } catch (const std::exception& e) {
            fail(source, e.what());
        }
        return out;
    }
    fail(source, "unknown builtin world '" + name + "'");
}

}  // namespace

LoadedWorld load_world_text(const std::string& text, const std::string& source_name) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(source_name + ": " + e.what());
    }
    const std::string kind = j.value("kind", "");
    LoadedWorld out;
    if (kind == "builtin") return load_builtin(j, source_name);
    if (kind == "def2") {
        out.kind = kind;
        out.def2 = parse_def2(j, source_name);
        out.world = embed_def2(out.def2);
        out.echo = "def2 states=" + std::to_string(out.def2->states.size());
        return out;
    }
    if (kind == "def3" || kind == "def4") {
        out.kind = kind;
        auto table = parse_table(j, source_name, kind == "def4");
        out.echo = kind + " states=" + std::to_string(table->state_names().size());
        out.world = std::move(table);
        return out;
    }
    fail(source_name, "kind must be def2, def3, def4 or builtin");
}

LoadedWorld load_world(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_world_text(ss.str(), path);
}

WorldValidation validate_loaded(const LoadedWorld& w) {
    if (w.def2) return validate_world(*w.def2);
    WorldValidation out;
    const auto* table = dynamic_cast<const TableWorld*>(w.world.get());
    if (!table) return out;  // builtin worlds are correct by construction

    const TableWorldSpec& spec = table->spec();
    for (size_t ri = 0; ri < spec.rules.size(); ++ri) {
        const TransitionRule& rule = spec.rules[ri];
        const std::string where = "rule " + std::to_string(ri + 1) + " (state '" +
                                  spec.states[rule.state] + "')";
        IntervalDistribution dist;
        std::vector<const StateDelta*> deltas;
        for (const auto& o : rule.outcomes) {
            // Target identity is the full delta, not just the successor state.
            int target = -1;
            for (size_t d = 0; d < deltas.size(); ++d)
                if (deltas[d]->next_standard == o.delta.next_standard && deltas[d]->sets == o.delta.sets)
                    target = static_cast<int>(d);
            if (target < 0) {
                target = static_cast<int>(deltas.size());
                deltas.push_back(&o.delta);
            }
            dist.outcomes.push_back({target, o.lo, o.hi, o.group, o.split});
            if (!spec.rational_bounds && (!is_hundredths(o.lo) || !is_hundredths(o.hi))) {
                out.ok = false;
                out.messages.push_back(where +
                                       ": bounds are not hundredths (rational bounds need the "
                                       "rational_bounds flag)");
            }
        }
        const ValidationReport rep = validate_distribution(dist);
        for (const auto& v : rep.violations) {
            out.ok = false;
            out.messages.push_back(where + ": " + v.constraint +
                                   (v.index > 0 ? " at i=" + std::to_string(v.index) : "") + " — " +
                                   v.detail);
        }
    }
    return out;
}

std::string world_def2_text(const WorldDef2& w) {
    json j;
    j["kind"] = "def2";
    j["signature"] = signature_json(w.sig);
    j["states"] = w.states;
    j["initial"] = w.states[w.initial];
    if (w.rational_bounds) j["rational_bounds"] = true;
    json view = json::object();
    for (size_t s = 0; s < w.states.size(); ++s) view[w.states[s]] = w.view[s];
    j["view"] = view;
    json transitions = json::array();
    for (const auto& [key, dist] : w.transitions) {
        json outcomes = json::array();
        for (const auto& o : dist.outcomes) {
            json oj{{"target", w.states[o.target]}, {"lo", prob_json(o.lo)}, {"hi", prob_json(o.hi)}};
            if (o.group >= 0) {
                oj["group"] = o.group;
                oj["split"] = prob_json(o.split);
            }
            outcomes.push_back(oj);
        }
        transitions.push_back({{"state", w.states[key.first]},
                               {"action", w.sig.decode_action(key.second)},
                               {"outcomes", outcomes}});
    }
    j["transitions"] = transitions;
    if (!w.move_groups.empty()) j["groups"] = groups_json(w.move_groups);
    return j.dump(2) + "\n";
}

std::string world_table_text(const TableWorldSpec& spec) {
    json j;
    j["kind"] = spec.noise.empty() ? "def3" : "def4";
    j["signature"] = signature_json(spec.sig);
    j["states"] = spec.states;
    j["initial"] = spec.states[spec.initial_state];
    if (spec.rational_bounds) j["rational_bounds"] = true;
    if (!spec.invisible.empty()) {
        json inv = json::array();
        for (const auto& c : spec.invisible) inv.push_back(coordinate_json(c));
        j["invisible"] = inv;
    }
    const int vars = spec.vars_per_state();
    json assignment = json::object();
    for (size_t s = 0; s < spec.states.size(); ++s) {
        std::vector<int> vals(spec.initial_assignment.begin() + s * vars,
                              spec.initial_assignment.begin() + (s + 1) * vars);
        assignment[spec.states[s]] = vals;
    }
    j["assignment"] = assignment;

    auto var_ref = [&](int var) {
        const int s = var / vars, slot = var % vars;
        const std::string slot_name = slot < spec.sig.obs_dims()
                                          ? spec.sig.observations[slot].name
                                          : spec.invisible[slot - spec.sig.obs_dims()].name;
        return json{{"state", spec.states[s]}, {"slot", slot_name}};
    };

    if (!spec.card_overrides.empty()) {
        json overrides = json::array();
        for (size_t v = 0; v < spec.card_overrides.size(); ++v)
            if (spec.card_overrides[v] > 0) {
                json o = var_ref(static_cast<int>(v));
                o["card"] = spec.card_overrides[v];
                overrides.push_back(o);
            }
        j["card_overrides"] = overrides;
    }

    json rules = json::array();
    for (const auto& r : spec.rules) {
        json rj;
        rj["state"] = spec.states[r.state];
        json action = json::array();
        for (const int v : r.action) action.push_back(v < 0 ? json("*") : json(v));
        rj["action"] = action;
        if (!r.when.empty()) {
            json when = json::array();
            for (const auto& g : r.when) {
                json gj = var_ref(g.var);
                gj["is"] = g.value;
                when.push_back(gj);
            }
            rj["when"] = when;
        }
        json outcomes = json::array();
        for (const auto& o : r.outcomes) {
            json oj{{"next", spec.states[o.delta.next_standard]},
                    {"lo", prob_json(o.lo)},
                    {"hi", prob_json(o.hi)}};
            if (o.group >= 0) {
                oj["group"] = o.group;
                oj["split"] = prob_json(o.split);
            }
            if (!o.delta.sets.empty()) {
                json sets = json::array();
                for (const auto& [var, val] : o.delta.sets) {
                    json sj = var_ref(var);
                    sj["to"] = val;
                    sets.push_back(sj);
                }
                oj["set"] = sets;
            }
            outcomes.push_back(oj);
        }
        rj["outcomes"] = outcomes;
        rules.push_back(rj);
    }
    j["rules"] = rules;
    if (!spec.move_groups.empty()) j["groups"] = groups_json(spec.move_groups);

    if (!spec.noise.empty()) {
        json noise = json::array();
        for (const auto& n : spec.noise) {
            json nj;
            nj["state"] = n.state < 0 ? json("*") : json(spec.states[n.state]);
            nj["slot"] = spec.sig.observations[n.slot].name;
            if (n.when_value >= 0) nj["when_value"] = n.when_value;
            nj["volume"] = prob_json(n.descriptor.volume);
            json spectrum = json::array();
            for (const auto& p : n.descriptor.spectrum) spectrum.push_back(prob_json(p));
            nj["spectrum"] = spectrum;
            noise.push_back(nj);
        }
        j["noise"] = noise;
    }
    return j.dump(2) + "\n";
}

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecError(path + ": cannot write file");
    out << text;
}

}  // namespace

void save_world_def2(const WorldDef2& w, const std::string& path) { write_file(path, world_def2_text(w)); }
void save_world_table(const TableWorldSpec& spec, const std::string& path) {
    write_file(path, world_table_text(spec));
}

TestResult parse_test_result(const std::string& text, const EventContext& ctx) {
    const auto eq = text.rfind('=');
    if (eq == std::string::npos) throw SpecError("test result needs the form var=value: " + text);
    const std::string lhs = text.substr(0, eq), rhs = text.substr(eq + 1);

    TestResult r;
    const auto paren = lhs.find('(');
    if (paren != std::string::npos && lhs.back() == ')') {
        const std::string fn = lhs.substr(0, paren);
        const std::string group = lhs.substr(paren + 1, lhs.size() - paren - 2);
        if (fn != "all" && fn != "nobody") throw SpecError("unknown flag '" + fn + "' in test result");
        r.kind = fn == "all" ? TestResult::GroupAll : TestResult::GroupNobody;
        r.index = ctx.group_index(group);
        if (r.index < 0) throw SpecError("unknown move group '" + group + "' in test result");
        if (rhs == "true" || rhs == "1")
            r.value = 1;
        else if (rhs == "false" || rhs == "0")
            r.value = 0;
        else
            throw SpecError("flag results compare against true/false: " + text);
        return r;
    }

    r.kind = TestResult::VisibleVar;
    r.index = -1;
    for (size_t i = 0; i < ctx.sig.observations.size(); ++i)
        if (ctx.sig.observations[i].name == lhs) r.index = static_cast<int>(i);
    if (r.index < 0) throw SpecError("unknown visible variable '" + lhs + "' in test result");
    const auto v = ctx.sig.observations[r.index].value_of(rhs);
    if (!v) throw SpecError("'" + rhs + "' is not a value of '" + lhs + "'");
    r.value = *v;
    return r;
}

TestBattery load_tests_text(const std::string& text, const EventContext& ctx,
                            const std::string& source_name) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(source_name + ": " + e.what());
    }
    TestBattery battery;
    try {
        for (const auto& e : j.value("experiments", json::array()))
            battery.experiments.push_back(
                {e.at("name").get<std::string>(), parse_event(e.at("event").get<std::string>(), ctx)});
        for (const auto& t : j.value("tests", json::array())) {
            Test test;
            test.name = t.at("name").get<std::string>();
            test.condition = parse_event(t.at("condition").get<std::string>(), ctx);
            test.result = parse_test_result(t.at("result").get<std::string>(), ctx);
            battery.tests.push_back(std::move(test));
        }
    } catch (const EventParseError& e) {
        throw SpecError(source_name + ": " + e.what());
    } catch (const json::exception& e) {
        throw SpecError(source_name + ": " + e.what());
    }
    if (battery.tests.empty()) throw SpecError(source_name + ": no tests declared");
    return battery;
}

TestBattery load_tests(const std::string& path, const EventContext& ctx) {
    std::ifstream in(path);
    if (!in) throw SpecError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_tests_text(ss.str(), ctx, path);
}

GroupingAutomaton load_grouping_text(const std::string& text, const EventContext& ctx,
                                     const std::string& source_name) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(source_name + ": " + e.what());
    }
    GroupingAutomaton g;
    try {
        g.group_names = j.at("groups").get<std::vector<std::string>>();
        auto index_of = [&](const std::string& name) {
            for (size_t i = 0; i < g.group_names.size(); ++i)
                if (g.group_names[i] == name) return static_cast<int>(i);
            throw SpecError(source_name + ": unknown group '" + name + "'");
        };
        g.initial = index_of(j.at("initial").get<std::string>());
        g.rules.resize(g.group_names.size());
        for (const auto& r : j.at("rules")) {
            GroupingAutomaton::Rule rule;
            const int from = index_of(r.at("from").get<std::string>());
            rule.next = index_of(r.at("to").get<std::string>());
            if (r.contains("when")) {
                rule.when = parse_step_template(r["when"].get<std::string>(), ctx);
            } else {
                rule.when.action.assign(ctx.sig.action_dims(), -1);
                rule.when.obs.assign(ctx.sig.obs_dims(), -1);
            }
            g.rules[from].push_back(std::move(rule));
        }
        g.validate();
    } catch (const EventParseError& e) {
        throw SpecError(source_name + ": " + e.what());
    } catch (const json::exception& e) {
        throw SpecError(source_name + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw SpecError(source_name + ": " + e.what());
    }
    return g;
}

GroupingAutomaton load_grouping(const std::string& path, const EventContext& ctx) {
    std::ifstream in(path);
    if (!in) throw SpecError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_grouping_text(ss.str(), ctx, path);
}

}  // namespace powsim
