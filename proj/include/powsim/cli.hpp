#pragma once

#include "powsim/engine.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace powsim::cli {

// Exit codes shared by every subcommand.
constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kParseError = 2;
constexpr int kResourceCap = 3;

struct SeedOptions {
    std::uint64_t predictable = 1;
    std::uint64_t unpredictable = 2;
    std::uint64_t noise = 3;
    std::uint64_t policy = 4;

    Seeds engine() const { return {predictable, unpredictable, noise}; }
};

int cmd_validate(const std::string& spec_path, std::ostream& out);

struct RunOptions {
    std::string world_path;
    long horizon = 100;  // policy steps after the forced initial Nothing step
    SeedOptions seeds;
    std::string out_path;  // empty = stdout
};
int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err);

struct AgentOptions {
    std::string world_path;
    std::string tests_path;
    std::string grouping_path;  // empty = single group of relative stability
    std::string replay_log;     // empty = live run
    long horizon = 100;         // total letters including the initial Nothing step
    SeedOptions seeds;
    double c0 = 10;
    double half_life = 3;
    std::string out_path;
    std::string log_path;  // optional history log copy
};
int cmd_agent(const AgentOptions& opt, std::ostream& out, std::ostream& err);

struct TransformOptions {
    std::string from;  // def4 | def3
    std::string to;    // def3 | def2
    std::string in_path;
    std::string out_path;
    int reach_bound = 10000;
    long state_cap = 1000000;
};
int cmd_transform(const TransformOptions& opt, std::ostream& err);

struct EquivOptions {
    std::string a_path;
    std::string b_path;
    long episodes = 10000;
    int horizon = 5;
    std::uint64_t seed = 1;
    std::string out_path;  // empty = stdout
};
int cmd_equiv_check(const EquivOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace powsim::cli
