#include "powsim/cli.hpp"

#include "powsim/agent.hpp"
#include "powsim/transforms.hpp"
#include "powsim/world_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace powsim::cli {
namespace {

void emit(const std::string& text, const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecError(path + ": cannot write file");
    out << text;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

bool refuse_invalid(const LoadedWorld& w, std::ostream& err) {
    const WorldValidation v = validate_loaded(w);
    for (const auto& msg : v.messages) err << "invalid: " << msg << "\n";
    return !v.ok;
}

}  // namespace

int cmd_validate(const std::string& spec_path, std::ostream& out) {
    LoadedWorld loaded;
    try {
        loaded = load_world(spec_path);
    } catch (const SpecError& e) {
        out << "parse error: " << e.what() << "\n";
        return kParseError;
    }
    const WorldValidation v = validate_loaded(loaded);
    if (!v.ok) {
        for (const auto& msg : v.messages) out << "invalid: " << msg << "\n";
        return kValidationFailure;
    }
    out << "ok: " << loaded.echo << "\n";
    return kOk;
}

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
    LoadedWorld loaded;
    try {
        loaded = load_world(opt.world_path);
    } catch (const SpecError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    }
    if (refuse_invalid(loaded, err)) return kValidationFailure;
    try {
        const CumulativeWorld& w = *loaded.world;
        WorldInstance inst(w, opt.seeds.engine());
        RandomStream policy(opt.seeds.policy, splitmix::kGammaNoise);
        History h;
        for (long t = 0; t <= opt.horizon; ++t) {
            ActionVec a;
            if (t == 0) {
                a = w.signature().nothing_action();
            } else {
                const MoveFlags flags = inst.correctness();
                std::vector<long> correct;
                for (long i = 0; i < static_cast<long>(flags.per_action.size()); ++i)
                    if (flags.per_action[i]) correct.push_back(i);
                if (correct.empty()) break;
                a = w.signature().decode_action(correct[policy.cell(correct.size())]);
            }
            if (!inst.apply(a))
                throw std::runtime_error("incorrect move at step " + std::to_string(t + 1));
            const MoveFlags flags = inst.correctness();
            h.steps.push_back({a, inst.view(), flags.per_action, flags.per_group});
        }
        std::stringstream log;
        write_history(log, h);
        emit(log.str(), opt.out_path, out);
        return kOk;
    } catch (const std::exception& e) {
        err << "run failed: " << e.what() << "\n";
        return kValidationFailure;
    }
}

int cmd_agent(const AgentOptions& opt, std::ostream& out, std::ostream& err) {
    LoadedWorld loaded;
    TestBattery battery;
    GroupingAutomaton grouping;
    History replay_log;
    const bool replay = !opt.replay_log.empty();
    try {
        loaded = load_world(opt.world_path);
        const EventContext ctx = loaded.context();
        battery = load_tests(opt.tests_path, ctx);
        grouping = opt.grouping_path.empty() ? trivial_grouping() : load_grouping(opt.grouping_path, ctx);
        if (replay) {
            std::ifstream in(opt.replay_log);
            if (!in) throw SpecError(opt.replay_log + ": cannot open file");
            replay_log = read_history(in, ctx.sig, ctx.groups);
        }
    } catch (const SpecError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::exception& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    }
    if (refuse_invalid(loaded, err)) return kValidationFailure;

    try {
        AgentConfig cfg;
        cfg.horizon = opt.horizon;
        cfg.seeds = opt.seeds.engine();
        cfg.policy_seed = opt.seeds.policy;
        cfg.theory = {opt.c0, opt.half_life};
        const AgentOutputs outputs =
            replay ? replay_agent(replay_log, battery.experiments, battery.tests, grouping, cfg.theory)
                   : run_agent(*loaded.world, battery.experiments, battery.tests, grouping, cfg);
        emit(format_report(outputs, battery.experiments, battery.tests, grouping, cfg, loaded.echo),
             opt.out_path, out);
        if (!opt.log_path.empty()) {
            std::stringstream log;
            write_history(log, outputs.history);
            emit(log.str(), opt.log_path, out);
        }
        return kOk;
    } catch (const ResourceError& e) {
        err << "resource cap: " << e.what() << "\n";
        return kResourceCap;
    } catch (const std::exception& e) {
        err << "agent failed: " << e.what() << "\n";
        return kValidationFailure;
    }
}

int cmd_transform(const TransformOptions& opt, std::ostream& err) {
    LoadedWorld loaded;
    try {
        loaded = load_world(opt.in_path);
    } catch (const SpecError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    }
    if (refuse_invalid(loaded, err)) return kValidationFailure;
    try {
        const ReachOptions reach{opt.reach_bound, opt.state_cap};
        if (opt.from == "def4" && opt.to == "def3") {
            save_world_table(def4_to_def3(*loaded.world, reach), opt.out_path);
        } else if (opt.from == "def3" && opt.to == "def2") {
            save_world_def2(def3_to_def2(*loaded.world, reach), opt.out_path);
        } else if (opt.from == "def4" && opt.to == "def2") {
            const TableWorld mid(def4_to_def3(*loaded.world, reach));
            save_world_def2(def3_to_def2(mid, reach), opt.out_path);
        } else {
            err << "unsupported transform " << opt.from << " -> " << opt.to << "\n";
            return kParseError;
        }
        return kOk;
    } catch (const ResourceError& e) {
        err << "resource cap: " << e.what() << "\n";
        return kResourceCap;
    } catch (const std::exception& e) {
        err << "transform failed: " << e.what() << "\n";
        return kValidationFailure;
    }
}

int cmd_equiv_check(const EquivOptions& opt, std::ostream& out, std::ostream& err) {
    LoadedWorld a, b;
    try {
        a = load_world(opt.a_path);
        b = load_world(opt.b_path);
    } catch (const SpecError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    }
    if (refuse_invalid(a, err) || refuse_invalid(b, err)) return kValidationFailure;
    try {
        auto sa = trace_source(*a.world);
        auto sb = trace_source(*b.world);
        const TraceDistanceReport rep = trace_distance(*sa, *sb, opt.episodes, opt.horizon, opt.seed);
        std::string text;
        text += "# trace distance report\n";
        text += "episodes=" + std::to_string(rep.episodes) + " horizon=" + std::to_string(rep.horizon) +
                " seed=" + std::to_string(opt.seed) + "\n";
        text += "distance=" + format_double(rep.distance) + "\n";
        for (size_t s = 0; s < rep.per_step.size(); ++s)
            text += "step " + std::to_string(s + 1) + " marginal=" + format_double(rep.per_step[s]) + "\n";
        emit(text, opt.out_path, out);
        return kOk;
    } catch (const std::exception& e) {
        err << "equiv-check failed: " << e.what() << "\n";
        return kValidationFailure;
    }
}

}  // namespace powsim::cli
