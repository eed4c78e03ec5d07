#include "powsim/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace powsim::cli;

namespace {

void add_seed_flags(CLI::App* cmd, SeedOptions& seeds) {
    cmd->add_option("--seed-predictable", seeds.predictable, "Predictable-chance stream seed");
    cmd->add_option("--seed-unpredictable", seeds.unpredictable, "Unpredictable-chance stream seed");
    cmd->add_option("--seed-noise", seeds.noise, "Observation-noise stream seed");
    cmd->add_option("--seed-policy", seeds.policy, "Action-policy stream seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partially observable world simulator: worlds, transforms, events, test theories"};
    app.require_subcommand(1);

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "Check a world spec file");
    validate->add_option("spec", validate_path, "World spec file")->required();

    RunOptions run;
    CLI::App* run_cmd = app.add_subcommand("run", "Run episodes and write a history log");
    run_cmd->add_option("--world", run.world_path, "World spec file")->required();
    run_cmd->add_option("--horizon", run.horizon, "Policy steps after the initial Nothing step");
    run_cmd->add_option("--out", run.out_path, "History log path (default stdout)");
    add_seed_flags(run_cmd, run.seeds);

    AgentOptions agent;
    CLI::App* agent_cmd = app.add_subcommand("agent", "Collect statistics and emit a theory report");
    agent_cmd->add_option("--world", agent.world_path, "World spec file")->required();
    agent_cmd->add_option("--tests", agent.tests_path, "Tests/experiments file")->required();
    agent_cmd->add_option("--grouping", agent.grouping_path, "Grouping automaton file");
    agent_cmd->add_option("--horizon", agent.horizon, "Total steps including the initial Nothing step");
    agent_cmd->add_option("--c0", agent.c0, "Experiment confidence scale");
    agent_cmd->add_option("--half-life", agent.half_life, "Stability confidence half-life (steps)");
    agent_cmd->add_option("--out", agent.out_path, "Report path (default stdout)");
    agent_cmd->add_option("--log", agent.log_path, "Also write the history log here");
    add_seed_flags(agent_cmd, agent.seeds);

    AgentOptions report;
    CLI::App* report_cmd = app.add_subcommand("report", "Recompute a theory report from a history log");
    report_cmd->add_option("--world", report.world_path, "World spec file")->required();
    report_cmd->add_option("--tests", report.tests_path, "Tests/experiments file")->required();
    report_cmd->add_option("--grouping", report.grouping_path, "Grouping automaton file");
    report_cmd->add_option("--log", report.replay_log, "History log to replay")->required();
    report_cmd->add_option("--c0", report.c0, "Experiment confidence scale");
    report_cmd->add_option("--half-life", report.half_life, "Stability confidence half-life (steps)");
    report_cmd->add_option("--out", report.out_path, "Report path (default stdout)");

    TransformOptions transform;
    CLI::App* transform_cmd = app.add_subcommand("transform", "Rewrite a world into a lower definition");
    transform_cmd->add_option("--from", transform.from, "Source kind (def4 or def3)")->required();
    transform_cmd->add_option("--to", transform.to, "Target kind (def3 or def2)")->required();
    transform_cmd->add_option("in", transform.in_path, "Input spec")->required();
    transform_cmd->add_option("out", transform.out_path, "Output spec")->required();
    transform_cmd->add_option("--reach-bound", transform.reach_bound, "Reachability depth budget");
    transform_cmd->add_option("--state-cap", transform.state_cap, "Reachable-state resource cap");

    EquivOptions equiv;
    CLI::App* equiv_cmd = app.add_subcommand("equiv-check", "Statistical trace-equivalence check");
    equiv_cmd->add_option("a", equiv.a_path, "First world spec")->required();
    equiv_cmd->add_option("b", equiv.b_path, "Second world spec")->required();
    equiv_cmd->add_option("--episodes", equiv.episodes, "Episodes per side");
    equiv_cmd->add_option("--horizon", equiv.horizon, "Steps per episode");
    equiv_cmd->add_option("--seed", equiv.seed, "Master seed");
    equiv_cmd->add_option("--out", equiv.out_path, "Report path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return cmd_validate(validate_path, std::cout);
    if (run_cmd->parsed()) return cmd_run(run, std::cout, std::cerr);
    if (agent_cmd->parsed()) return cmd_agent(agent, std::cout, std::cerr);
    if (report_cmd->parsed()) return cmd_agent(report, std::cout, std::cerr);
    if (transform_cmd->parsed()) return cmd_transform(transform, std::cerr);
    if (equiv_cmd->parsed()) return cmd_equiv_check(equiv, std::cout, std::cerr);
    return kParseError;
}
