#pragma once

#include "powsim/agent.hpp"
#include "powsim/events.hpp"
#include "powsim/table_world.hpp"
#include "powsim/theory.hpp"
#include "powsim/world.hpp"

#include <memory>
#include <string>

namespace powsim {

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A world loaded from a spec file: always usable through the cumulative
/// interface; the Def2 table is kept when the file was def2-kind.
struct LoadedWorld {
    std::string kind;
    std::shared_ptr<const WorldDef2> def2;
    std::shared_ptr<CumulativeWorld> world;
    std::string echo;  // one-line config echo for reports

    EventContext context() const { return {world->signature(), world->groups()}; }
};

/// Probabilities in spec files: a bare integer is hundredths, [num, den] is an
/// exact rational. Anything else (floats included) is rejected, not rounded.
LoadedWorld load_world(const std::string& path);
LoadedWorld load_world_text(const std::string& text, const std::string& source_name);

/// Distribution-level validation of a loaded world: every transition passes
/// validate_distribution, and bounds are hundredths unless the file carries
/// the rational_bounds flag. Builtin worlds are correct by construction.
WorldValidation validate_loaded(const LoadedWorld& w);

void save_world_def2(const WorldDef2& w, const std::string& path);
void save_world_table(const TableWorldSpec& spec, const std::string& path);
std::string world_def2_text(const WorldDef2& w);
std::string world_table_text(const TableWorldSpec& spec);

/// Test battery file: experiments (event DSL) and tests (condition DSL plus a
/// "var=value" / "all(g)=..." / "nobody(g)=..." result).
struct TestBattery {
    std::vector<NamedExperiment> experiments;
    std::vector<Test> tests;
};
TestBattery load_tests(const std::string& path, const EventContext& ctx);
TestBattery load_tests_text(const std::string& text, const EventContext& ctx,
                            const std::string& source_name);

GroupingAutomaton load_grouping(const std::string& path, const EventContext& ctx);
GroupingAutomaton load_grouping_text(const std::string& text, const EventContext& ctx,
                                     const std::string& source_name);

/// A test result reference, e.g. "color=White" or "nobody(pickup)=false".
TestResult parse_test_result(const std::string& text, const EventContext& ctx);

}  // namespace powsim
