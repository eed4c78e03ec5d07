#include "powsim/history.hpp"

#include <doctest.h>

#include <sstream>

using namespace powsim;

namespace {

History history_of_length(int t) {
    History h;
    for (int i = 1; i <= t; ++i) {
        StepLetter s;
        s.action = {i % 2};
        s.observation = {i % 2};
        s.correct = {true, false};
        h.steps.push_back(s);
    }
    return h;
}

}  // namespace

TEST_CASE("localize re-indexes the window around q") {
    const History h = history_of_length(5);
    const LocalHistory lh = localize(h, 3, 2, 1);
    CHECK(lh.past.size() == 3);   // steps 1..3 as indices -2..0
    CHECK(lh.future.size() == 1); // step 4 as index 1
    CHECK(lh.present() == h.at(3));
    CHECK(lh.future[0] == h.at(4));
    CHECK(lh.absolute_origin);    // the clipped window reaches a_1 here
}

TEST_CASE("localize clips at the origin") {
    const History h = history_of_length(5);
    const LocalHistory lh = localize(h, 1, 10, 0);
    CHECK(lh.past.size() == 1);
    CHECK(lh.present() == h.at(1));
    CHECK(lh.absolute_origin);
}

TEST_CASE("localize clips at the end") {
    const History h = history_of_length(5);
    const LocalHistory lh = localize(h, 5, 1, 10);
    CHECK(lh.future.empty());
    CHECK(!lh.absolute_origin);
}

TEST_CASE("localize rejects out-of-range moments") {
    const History h = history_of_length(3);
    CHECK_THROWS_AS(localize(h, 0, 1, 1), std::out_of_range);
    CHECK_THROWS_AS(localize(h, 4, 1, 1), std::out_of_range);
}

TEST_CASE("history log round-trips") {
    ScalarSignature sig;
    sig.actions = {{"a", 2, {}}};
    sig.observations = {{"x", 2, {}}};
    MoveGroup g;
    g.name = "go";
    g.templates = {{1}};

    const History h = history_of_length(4);
    std::stringstream ss;
    write_history(ss, h);
    const History back = read_history(ss, sig, {g});
    REQUIRE(back.length() == h.length());
    for (int t = 1; t <= h.length(); ++t) {
        CHECK(back.at(t).action == h.at(t).action);
        CHECK(back.at(t).observation == h.at(t).observation);
        CHECK(back.at(t).correct == h.at(t).correct);
        // Group summaries recomputed from the per-action bits.
        CHECK(back.at(t).group_all_nobody == group_flags(sig, {g}, h.at(t).correct));
    }
}

TEST_CASE("bad log lines are reported with their line number") {
    ScalarSignature sig;
    sig.actions = {{"a", 2, {}}};
    sig.observations = {{"x", 2, {}}};
    std::stringstream ss("1\t0\t0\t10\n2\t0\t0\t1\n");
    try {
        read_history(ss, sig, {});
        FAIL("expected a log error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}
