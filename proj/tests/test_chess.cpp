#include "powsim/chess.hpp"

#include "powsim/engine.hpp"

#include <doctest.h>

#include <set>

using namespace powsim;
using namespace powsim::chess;

namespace {

ActionVec act(int h, int v, int cmd) { return {h, v, cmd}; }

// Seeded random walk over correct moves, probing every step.
struct Walker {
    const ChessWorld& world;
    Position pos;
    RandomStream rng;

    Walker(const ChessWorld& w, std::uint64_t seed) : world(w), pos(w.decode(w.initial())), rng(seed) {}

    ActionVec random_correct() {
        std::vector<ActionVec> ok;
        for (long i = 0; i < 36; ++i) {
            const ActionVec a = world.signature().decode_action(i);
            if (world.action_legal(pos, a)) ok.push_back(a);
        }
        REQUIRE(!ok.empty());
        return ok[rng.cell(ok.size())];
    }

    void step() {
        const auto next = world.step(pos, random_correct());
        REQUIRE(next);
        pos = *next;
    }
};

}  // namespace

TEST_CASE("chess world shape: 36 actions, 64 states, paper observation domains") {
    const auto w = build_chess_world();
    CHECK(w->signature().action_space_size() == 36);
    CHECK(w->standard_state_count() == 64);
    REQUIRE(w->signature().obs_dims() == 3);
    CHECK(w->signature().observations[0].card == 7);
    CHECK(w->signature().observations[0].value_names ==
          std::vector<std::string>{"Nothing", "Pawn", "Knight", "Bishop", "Rook", "Queen", "King"});
    CHECK(w->signature().observations[1].value_names ==
          std::vector<std::string>{"Nothing", "Black", "White"});
    CHECK(w->signature().observations[2].value_names ==
          std::vector<std::string>{"Nothing", "-1", "0", "1"});
    CHECK(w->invisible_per_state() == 2);
}

TEST_CASE("incorrect moves of the example world") {
    const auto w = build_chess_world();
    Position p = w->decode(w->initial());
    REQUIRE(p.eye == square_of(0, 0));  // a1

    CHECK(!w->step(p, act(1, 0, 0)));  // left column: no left
    CHECK(!w->step(p, act(1, 2, 0)));  // diagonal off the board
    CHECK(!w->step(p, act(0, 2, 0)));  // below rank 1
    CHECK(w->step(p, act(2, 1, 0)));   // diagonal up-right is fine

    // Black piece or empty square: no right to pick up.
    p.eye = square_of(0, 7);  // a8, black rook
    CHECK(!w->step(p, act(0, 0, 1)));
    p.eye = square_of(4, 4);  // e5, empty
    CHECK(!w->step(p, act(0, 0, 1)));

    // Holding: no second pickup.
    p.eye = square_of(4, 1);  // e2 white pawn
    const auto held = w->step(p, act(0, 0, 1));
    REQUIRE(held);
    CHECK(held->holding());
    CHECK(!w->step(*held, act(0, 0, 1)));

    // New game only after the game ends.
    CHECK(!w->step(p, act(0, 0, 3)));

    // Put down with an empty hand, or as an illegal chess move.
    CHECK(!w->step(p, act(0, 0, 2)));
    Position back = *held;
    back.eye = square_of(4, 1);  // origin square: not a chess move
    CHECK(!w->step(back, act(0, 0, 2)));
    back.eye = square_of(4, 5);  // e2 -> e6: too far for a pawn
    CHECK(!w->step(back, act(0, 0, 2)));
    back.eye = square_of(4, 3);  // e2 -> e4
    CHECK(w->step(back, act(0, 0, 2)));
}

TEST_CASE("pick up moves the piece into the origin's invisible variable") {
    const auto w = build_chess_world();
    WorldInstance inst(*w, {1, 2, 3});
    REQUIRE(inst.apply(act(2, 0, 0)));
    REQUIRE(inst.apply(act(2, 0, 0)));
    REQUIRE(inst.apply(act(2, 0, 0)));
    REQUIRE(inst.apply(act(2, 1, 0)));  // now e2
    const int eye = inst.state().standard;
    CHECK(eye == square_of(4, 1));
    CHECK(inst.view() == ObsVec{Pawn, White, 0});

    const int before_piece = inst.state().assignment[eye * 5 + SlotChessman];
    CHECK(before_piece == Pawn);
    REQUIRE(inst.apply(act(0, 0, 1)));  // pick up, eye stays
    CHECK(inst.state().assignment[eye * 5 + SlotChessman] == NoPiece);
    CHECK(inst.state().assignment[eye * 5 + SlotColor] == NoColor);
    CHECK(inst.state().assignment[eye * 5 + SlotHand] == Pawn);
    CHECK(inst.view() == ObsVec{0, 0, 0});  // the square now shows empty
}

TEST_CASE("commands act on the pre-movement square") {
    const auto w = build_chess_world();
    WorldInstance inst(*w, {1, 2, 3});
    REQUIRE(inst.apply(act(2, 0, 0)));  // b1
    REQUIRE(inst.apply(act(2, 0, 0)));  // c1
    REQUIRE(inst.apply(act(2, 0, 0)));  // d1
    REQUIRE(inst.apply(act(2, 1, 1)));  // pick up d1's queen while moving to e2
    const Position p = w->decode(inst.state());
    CHECK(p.hand_piece == Queen);
    CHECK(p.hand_from == square_of(3, 0));
    CHECK(p.eye == square_of(4, 1));
}

TEST_CASE("putting down replies with the deterministic opponent in the same step") {
    const auto w = build_chess_world();
    WorldInstance inst(*w, {1, 2, 3});
    REQUIRE(inst.apply(act(2, 1, 0)));  // b2
    REQUIRE(inst.apply(act(0, 1, 1)));  // pick up the b2 pawn, eye to b3
    REQUIRE(inst.apply(act(0, 1, 0)));  // b4
    const Position before = w->decode(inst.state());
    REQUIRE(before.hand_piece == Pawn);
    REQUIRE(inst.apply(act(0, 0, 2)));  // pawn b2 -> b4

    const Position after = w->decode(inst.state());
    CHECK(after.board[square_of(1, 3)] == Square{Pawn, White});
    CHECK(!after.holding());
    CHECK(after.ply == 2);  // our ply plus the immediate reply
    // The reply is the smallest (from, to) black move: a7 -> a5.
    CHECK(after.board[square_of(0, 6)].empty());
    CHECK(after.board[square_of(0, 4)] == Square{Pawn, Black});
    CHECK(after.in_play());
}

TEST_CASE("opponent plays a forced move and prefers the queen capture") {
    // Lone black rook must take the only reachable piece.
    Position p = from_snapshot("8/8/8/8/8/2r5/2Q4k/K7 eye=a1 hand=- reward=Nothing ply=0");
    const auto forced = opponent_move(p.board);
    REQUIRE(forced);
    // c3 rook: captures queen at c2 (value 9 beats pawn moves elsewhere).
    CHECK(*forced == Move{square_of(2, 2), square_of(2, 1)});

    // Queen and pawn both capturable: the queen goes.
    Position q = from_snapshot("8/8/8/3p4/2Q1P3/8/7k/K7 eye=a1 hand=- reward=Nothing ply=0");
    const auto greedy = opponent_move(q.board);
    REQUIRE(greedy);
    CHECK(q.board[greedy->to].piece == Queen);
}

TEST_CASE("opponent is determined: same position, same move") {
    RandomStream rng(424242);
    const auto w = build_chess_world();
    Walker walker(*w, 31337);
    int checked = 0;
    for (int step = 0; step < 60000 && checked < 10000; ++step) {
        walker.step();
        if (!walker.pos.in_play() || !opponent_move(walker.pos.board)) {
            walker.pos = w->decode(w->initial());
            continue;
        }
        const auto a = opponent_move(walker.pos.board);
        const auto b = opponent_move(walker.pos.board);
        REQUIRE(a == b);
        ++checked;
    }
    CHECK(checked == 10000);
    (void)rng;
}

TEST_CASE("piece conservation under a random walk") {
    const auto w = build_chess_world();
    Walker walker(*w, 99);
    auto count = [](const Position& p) {
        int pieces = 0;
        for (const auto& sq : p.board)
            if (!sq.empty()) ++pieces;
        return pieces + (p.holding() ? 1 : 0);
    };
    int prev = count(walker.pos);
    for (int i = 0; i < 3000; ++i) {
        const Position before = walker.pos;
        walker.step();
        const int now = count(walker.pos);
        if (before.in_play() && walker.pos.in_play() && before.holding() == walker.pos.holding())
            CHECK(now <= prev);  // captures only reduce
        CHECK(!(walker.pos.holding() && !walker.pos.board[walker.pos.hand_from].empty()));
        prev = now;
        if (!walker.pos.in_play() && walker.rng.cell(4) == 0) {
            const auto fresh = w->step(walker.pos, act(0, 0, 3));
            REQUIRE(fresh);
            walker.pos = *fresh;
            prev = count(walker.pos);
        }
    }
}

TEST_CASE("noise overlays follow the example") {
    ChessConfig cfg;
    cfg.color_volume = Rational(1, 10);
    cfg.chessman_volume = Rational(1, 10);
    cfg.king_volume = Rational(1, 20);
    const auto w = build_chess_world(cfg);
    REQUIRE(w->noise());

    const CumulativeState init = w->initial();
    const NoiseModel& noise = *w->noise();

    // Empty square: color noise has Volume = 0.
    const int empty_sq = square_of(4, 4);
    CHECK(noise.descriptor(*w, init, empty_sq, SlotColor).zero());
    CHECK(noise.descriptor(*w, init, empty_sq, SlotChessman).zero());

    // Occupied square: color volume 0.10, spectrum 50/50 Black/White.
    const auto color = noise.descriptor(*w, init, square_of(0, 0), SlotColor);
    CHECK(color.volume == Rational(1, 10));
    CHECK(color.spectrum == std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1, 2)});

    // Chessman noise only for Pawn and Bishop; King noise goes to Queen only.
    CHECK(noise.descriptor(*w, init, square_of(0, 0), SlotChessman).zero());   // rook
    CHECK(!noise.descriptor(*w, init, square_of(0, 1), SlotChessman).zero());  // pawn
    CHECK(!noise.descriptor(*w, init, square_of(2, 0), SlotChessman).zero());  // bishop
    const auto king = noise.descriptor(*w, init, square_of(4, 0), SlotChessman);
    CHECK(king.volume == Rational(1, 20));
    CHECK(king.spectrum[Queen] == Rational(1));

    // King renders are sometimes Queen; Queen renders are never King.
    RandomStream stream(7, splitmix::kGammaNoise);
    CumulativeState king_view = init;
    king_view.standard = square_of(4, 0);
    CumulativeState queen_view = init;
    queen_view.standard = square_of(3, 0);
    int king_as_queen = 0;
    for (int i = 0; i < 100000; ++i) {
        if (render_view(*w, king_view, stream).values[0] == Queen) ++king_as_queen;
        CHECK(render_view(*w, queen_view, stream).values[0] != King);
    }
    CHECK(king_as_queen > 0);
}

TEST_CASE("zero volumes collapse to a Definition 3 world") {
    ChessConfig cfg;
    cfg.color_volume = cfg.chessman_volume = cfg.king_volume = Rational(0);
    const auto w = build_chess_world(cfg);
    CHECK(w->noise() == nullptr);
}

TEST_CASE("snapshots round-trip") {
    const auto w = build_chess_world();
    Walker walker(*w, 5);
    for (int i = 0; i < 200; ++i) walker.step();
    const std::string snap = to_snapshot(walker.pos);
    CHECK(from_snapshot(snap) == walker.pos);
    const Position fresh = w->decode(w->initial());
    CHECK(from_snapshot(to_snapshot(fresh)) == fresh);
}

TEST_CASE("transition deltas agree with the structured step") {
    const auto w = build_chess_world();
    WorldInstance inst(*w, {21, 22, 23});
    RandomStream rng(77);
    for (int i = 0; i < 500; ++i) {
        const Position before = w->decode(inst.state());
        std::vector<ActionVec> ok;
        for (long ai = 0; ai < 36; ++ai) {
            const ActionVec a = w->signature().decode_action(ai);
            if (w->action_legal(before, a)) ok.push_back(a);
        }
        const ActionVec a = ok[rng.cell(ok.size())];
        REQUIRE(inst.apply(a));
        CHECK(w->decode(inst.state()) == *w->step(before, a));
    }
}

TEST_CASE("opponent with no legal move ends the game in a draw") {
    // Black's only piece is a blocked pawn; our put-down leaves it moveless.
    const auto w = build_chess_world();
    Position p = from_snapshot("8/8/8/8/2p5/2P5/8/K7 eye=a3 hand=P@a2 reward=Nothing ply=10");
    const auto done = w->step(p, act(0, 0, 2));  // pawn a2 -> a3
    REQUIRE(done);
    CHECK(done->reward == RewardDraw);
    CHECK(!done->in_play());
}

TEST_CASE("capturing the black king wins; losing the white king loses") {
    const auto w = build_chess_world();
    Position win = from_snapshot("8/8/8/8/8/2k5/8/K7 eye=c3 hand=R@c1 reward=Nothing ply=0");
    const auto won = w->step(win, act(0, 0, 2));  // rook c1 -> c3 takes the king
    REQUIRE(won);
    CHECK(won->reward == RewardWin);

    // The reply captures our king: queen on the c-file, king on c2.
    Position lose = from_snapshot("8/8/8/8/2q5/8/2K5/8 eye=d3 hand=P@d2 reward=Nothing ply=0");
    const auto lost = w->step(lose, act(0, 0, 2));  // pawn d2 -> d3; queen takes c2
    REQUIRE(lost);
    CHECK(lost->reward == RewardLose);
    CHECK(lost->board[square_of(2, 1)] == Square{Queen, Black});
}

TEST_CASE("move cap forces a draw") {
    ChessConfig cfg;
    cfg.move_cap = 2;
    const auto w = build_chess_world(cfg);
    WorldInstance inst(*w, {1, 2, 3});
    REQUIRE(inst.apply(act(2, 1, 0)));  // b2
    REQUIRE(inst.apply(act(0, 1, 1)));  // lift the b2 pawn, eye b3
    REQUIRE(inst.apply(act(0, 0, 2)));  // put down b2 -> b3: ply reaches the cap
    const Position p = w->decode(inst.state());
    CHECK(p.reward == RewardDraw);
    // After the game ends, new game becomes correct and pickup incorrect.
    CHECK(w->action_legal(p, act(0, 0, 3)));
    CHECK(!w->action_legal(p, act(0, 0, 1)));
}

TEST_CASE("noise bookkeeping counts k+1 invisible variables per visible one") {
    const auto noisy = build_chess_world();
    CHECK(noise_variable_count(*noisy) == 64L * ((7 + 1) + (3 + 1) + (4 + 1)));
    ChessConfig quiet;
    quiet.color_volume = quiet.chessman_volume = quiet.king_volume = Rational(0);
    CHECK(noise_variable_count(*build_chess_world(quiet)) == 0);
}
