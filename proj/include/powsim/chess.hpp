#pragma once

#include "powsim/rational.hpp"
#include "powsim/world.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>

namespace powsim::chess {

// Piece codes are the chessman observation values.
enum Piece : int { NoPiece = 0, Pawn = 1, Knight = 2, Bishop = 3, Rook = 4, Queen = 5, King = 6 };
enum Color : int { NoColor = 0, Black = 1, White = 2 };

struct Square {
    int piece = NoPiece;
    int color = NoColor;
    bool empty() const { return piece == NoPiece; }
    bool operator==(const Square&) const = default;
};

using Board = std::array<Square, 64>;

// Square index in file-rank order: a1=0, a2=1, ..., b1=8, ..., h8=63.
inline int square_of(int file, int rank) { return file * 8 + rank; }
inline int file_of(int sq) { return sq / 8; }
inline int rank_of(int sq) { return sq % 8; }
std::string square_name(int sq);

Board initial_board();

struct Move {
    int from = 0;
    int to = 0;
    bool operator==(const Move&) const = default;
};

/// Simplified legality: full piece geometry with blocking, no check rules, no
/// castling / en passant / promotion. The destination may hold either king.
bool legal_move(const Board& b, int color, int from, int to);
std::vector<Move> legal_moves(const Board& b, int color);

/// The imaginary opponent: captures the highest-value white piece if it can
/// (ties by smallest (from, to) in file-rank order), otherwise plays the
/// smallest (from, to) legal move. Same position, same move, always.
std::optional<Move> opponent_move(const Board& b);

struct ChessConfig {
    std::string opponent_policy = "greedy";
    Rational color_volume{1, 10};
    Rational chessman_volume{1, 10};
    Rational king_volume{1, 20};
    int move_cap = 200;  // plies until a forced draw
};

// Variable slots per square state.
enum Slot : int { SlotChessman = 0, SlotColor = 1, SlotReward = 2, SlotHand = 3, SlotPly = 4 };
enum RewardValue : int { RewardNothing = 0, RewardLose = 1, RewardDraw = 2, RewardWin = 3 };

/// The structured view of a cumulative state: board, eye, hand, phase.
struct Position {
    Board board;
    int eye = 0;
    int hand_piece = NoPiece;
    int hand_from = 0;
    int reward = RewardNothing;
    int ply = 0;

    bool in_play() const { return reward == RewardNothing; }
    bool holding() const { return hand_piece != NoPiece; }
    bool operator==(const Position&) const = default;
};

/// Snapshot line: FEN piece placement, then eye/hand/reward/ply fields.
std::string to_snapshot(const Position& p);
Position from_snapshot(const std::string& line);

class ChessWorld final : public CumulativeWorld {
public:
    explicit ChessWorld(ChessConfig cfg);

    const ScalarSignature& signature() const override { return sig_; }
    const std::vector<std::string>& state_names() const override { return state_names_; }
    int invisible_per_state() const override { return 2; }  // hand + ply counter
    int variable_card(int state, int slot) const override;
    CumulativeState initial() const override;
    std::optional<Transition> transition(const CumulativeState& s, const ActionVec& a) const override;
    bool action_defined(const CumulativeState& s, const ActionVec& a) const override;
    const std::vector<MoveGroup>& groups() const override { return groups_; }
    const NoiseModel* noise() const override;

    const ChessConfig& config() const { return cfg_; }
    Position decode(const CumulativeState& s) const;
    CumulativeState encode(const Position& p) const;

    /// One agent step on the structured view; nullopt = IncorrectMove.
    std::optional<Position> step(const Position& p, const ActionVec& a) const;
    bool action_legal(const Position& p, const ActionVec& a) const;

private:
    ChessConfig cfg_;
    ScalarSignature sig_;
    std::vector<std::string> state_names_;
    std::vector<MoveGroup> groups_;
    std::unique_ptr<NoiseModel> noise_;
};

std::unique_ptr<ChessWorld> build_chess_world(ChessConfig cfg = {});

}  // namespace powsim::chess
