#include "powsim/chess.hpp"

#include <algorithm>
#include <sstream>

namespace powsim::chess {

std::string square_name(int sq) {
    return std::string(1, static_cast<char>('a' + file_of(sq))) + std::to_string(rank_of(sq) + 1);
}

Board initial_board() {
    Board b{};
    const std::array<int, 8> back = {Rook, Knight, Bishop, Queen, King, Bishop, Knight, Rook};
    for (int f = 0; f < 8; ++f) {
        b[square_of(f, 0)] = {back[f], White};
        b[square_of(f, 1)] = {Pawn, White};
        b[square_of(f, 6)] = {Pawn, Black};
        b[square_of(f, 7)] = {back[f], Black};
    }
    return b;
}

namespace {

bool path_clear(const Board& b, int from, int to) {
    const int df = (file_of(to) > file_of(from)) - (file_of(to) < file_of(from));
    const int dr = (rank_of(to) > rank_of(from)) - (rank_of(to) < rank_of(from));
    int f = file_of(from) + df, r = rank_of(from) + dr;
    while (square_of(f, r) != to) {
        if (!b[square_of(f, r)].empty()) return false;
        f += df;
        r += dr;
    }
    return true;
}

int piece_value(int piece) {
    switch (piece) {
        case Pawn: return 1;
        case Knight: return 3;
        case Bishop: return 3;
        case Rook: return 5;
        case Queen: return 9;
        case King: return 100;
    }
    return 0;
}

}  // namespace

bool legal_move(const Board& b, int color, int from, int to) {
    if (from == to || from < 0 || from > 63 || to < 0 || to > 63) return false;
    const Square src = b[from];
    if (src.empty() || src.color != color) return false;
    if (b[to].color == color) return false;

    const int df = file_of(to) - file_of(from);
    const int dr = rank_of(to) - rank_of(from);
    switch (src.piece) {
        case Pawn: {
            const int fwd = color == White ? 1 : -1;
            const int start = color == White ? 1 : 6;
            if (df == 0 && dr == fwd) return b[to].empty();
            if (df == 0 && dr == 2 * fwd && rank_of(from) == start)
                return b[to].empty() && b[square_of(file_of(from), rank_of(from) + fwd)].empty();
            if (std::abs(df) == 1 && dr == fwd) return !b[to].empty();  // capture only
            return false;
        }
        case Knight:
            return (std::abs(df) == 1 && std::abs(dr) == 2) || (std::abs(df) == 2 && std::abs(dr) == 1);
        case Bishop:
            return std::abs(df) == std::abs(dr) && df != 0 && path_clear(b, from, to);
        case Rook:
            return ((df == 0) != (dr == 0)) && path_clear(b, from, to);
        case Queen:
            return (std::abs(df) == std::abs(dr) || (df == 0) != (dr == 0)) && path_clear(b, from, to);
        case King:
            return std::max(std::abs(df), std::abs(dr)) == 1;
    }
    return false;
}

std::vector<Move> legal_moves(const Board& b, int color) {
    std::vector<Move> out;
    for (int from = 0; from < 64; ++from) {
        if (b[from].empty() || b[from].color != color) continue;
        for (int to = 0; to < 64; ++to)
            if (legal_move(b, color, from, to)) out.push_back({from, to});
    }
    return out;
}

std::optional<Move> opponent_move(const Board& b) {
    const std::vector<Move> moves = legal_moves(b, Black);  // already (from, to) ascending
    if (moves.empty()) return std::nullopt;
    const Move* best_capture = nullptr;
    int best_value = 0;
    for (const Move& m : moves) {
        if (b[m.to].color != White) continue;
        if (piece_value(b[m.to].piece) > best_value) {
            best_value = piece_value(b[m.to].piece);
            best_capture = &m;
        }
    }
    return best_capture ? *best_capture : moves.front();
}

// ---------------------------------------------------------------------------

std::string to_snapshot(const Position& p) {
    static const char* white_codes = " PNBRQK";
    static const char* black_codes = " pnbrqk";
    std::string fen;
    for (int r = 7; r >= 0; --r) {
        int run = 0;
        for (int f = 0; f < 8; ++f) {
            const Square sq = p.board[square_of(f, r)];
            if (sq.empty()) {
                ++run;
                continue;
            }
            if (run) fen += std::to_string(run);
            run = 0;
            fen += (sq.color == White ? white_codes : black_codes)[sq.piece];
        }
        if (run) fen += std::to_string(run);
        if (r) fen += '/';
    }
    std::string hand = "-";
    if (p.holding()) hand = std::string(1, white_codes[p.hand_piece]) + "@" + square_name(p.hand_from);
    static const char* rewards[] = {"Nothing", "-1", "0", "1"};
    return fen + " eye=" + square_name(p.eye) + " hand=" + hand + " reward=" + rewards[p.reward] +
           " ply=" + std::to_string(p.ply);
}

Position from_snapshot(const std::string& line) {
    Position p;
    p.board = Board{};
    std::stringstream ss(line);
    std::string fen, field;
    ss >> fen;
    int r = 7, f = 0;
    for (const char c : fen) {
        if (c == '/') {
            --r;
            f = 0;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            f += c - '0';
        } else {
            const std::string codes = " pnbrqk";
            const int piece = static_cast<int>(codes.find(std::tolower(c)));
            p.board[square_of(f, r)] = {piece, std::isupper(c) ? White : Black};
            ++f;
        }
    }
    while (ss >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad snapshot field: " + field);
        const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "eye") {
            p.eye = square_of(val[0] - 'a', val[1] - '1');
        } else if (key == "hand") {
            if (val != "-") {
                p.hand_piece = static_cast<int>(std::string(" PNBRQK").find(val[0]));
                p.hand_from = square_of(val[2] - 'a', val[3] - '1');
            }
        } else if (key == "reward") {
            const std::vector<std::string> rewards = {"Nothing", "-1", "0", "1"};
            p.reward = static_cast<int>(std::find(rewards.begin(), rewards.end(), val) - rewards.begin());
        } else if (key == "ply") {
            p.ply = std::stoi(val);
        }
    }
    return p;
}

// ---------------------------------------------------------------------------

namespace {

class ChessNoise final : public NoiseModel {
public:
    explicit ChessNoise(const ChessConfig* cfg) : cfg_(cfg) {}

    NoiseDescriptor descriptor(const CumulativeWorld& w, const CumulativeState& s, int state,
                               int slot) const override {
        const int value = s.assignment[w.var_index(state, slot)];
        NoiseDescriptor d;
        if (slot == SlotColor) {
            if (value == NoColor) return d;  // empty square: Volume = 0
            d.volume = cfg_->color_volume;
            d.spectrum = {Rational(0), Rational(1, 2), Rational(1, 2)};  // 50% Black, 50% White
        } else if (slot == SlotChessman) {
            if (value == Pawn || value == Bishop) {
                d.volume = cfg_->chessman_volume;
                d.spectrum = {Rational(0), Rational(1, 2), Rational(0), Rational(1, 2),
                              Rational(0), Rational(0),    Rational(0)};  // Pawn 50%, Bishop 50%
            } else if (value == King) {
                d.volume = cfg_->king_volume;
                d.spectrum = {Rational(0), Rational(0), Rational(0), Rational(0),
                              Rational(0), Rational(1), Rational(0)};  // Queen on 100%
            }
        }
        return d;
    }

private:
    const ChessConfig* cfg_;
};

constexpr int kVars = 5;

}  // namespace

ChessWorld::ChessWorld(ChessConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.opponent_policy != "greedy")
        throw std::invalid_argument("unknown opponent policy '" + cfg_.opponent_policy + "'");
    sig_.actions = {{"h", 3, {"Nothing", "left", "right"}},
                    {"v", 3, {"Nothing", "up", "down"}},
                    {"cmd", 4, {"Nothing", "pickup", "putdown", "newgame"}}};
    sig_.observations = {
        {"chessman", 7, {"Nothing", "Pawn", "Knight", "Bishop", "Rook", "Queen", "King"}},
        {"color", 3, {"Nothing", "Black", "White"}},
        {"reward", 4, {"Nothing", "-1", "0", "1"}}};
    for (int sq = 0; sq < 64; ++sq) state_names_.push_back(square_name(sq));
    groups_ = {{"pickup", {{-1, -1, 1}}}, {"putdown", {{-1, -1, 2}}}, {"newgame", {{-1, -1, 3}}}};
    const bool noiseless = cfg_.color_volume == Rational(0) && cfg_.chessman_volume == Rational(0) &&
                           cfg_.king_volume == Rational(0);
    if (!noiseless) noise_ = std::make_unique<ChessNoise>(&cfg_);
}

const NoiseModel* ChessWorld::noise() const { return noise_.get(); }

int ChessWorld::variable_card(int, int slot) const {
    switch (slot) {
        case SlotChessman: return 7;
        case SlotColor: return 3;
        case SlotReward: return 4;
        case SlotHand: return 7;
        case SlotPly: return cfg_.move_cap + 2;
    }
    throw std::invalid_argument("bad slot");
}

Position ChessWorld::decode(const CumulativeState& s) const {
    Position p;
    p.eye = s.standard;
    for (int sq = 0; sq < 64; ++sq) {
        p.board[sq] = {s.assignment[sq * kVars + SlotChessman], s.assignment[sq * kVars + SlotColor]};
        const int hand = s.assignment[sq * kVars + SlotHand];
        if (hand != NoPiece) {
            p.hand_piece = hand;
            p.hand_from = sq;
        }
    }
    p.reward = s.assignment[SlotReward];
    p.ply = s.assignment[SlotPly];
    return p;
}

CumulativeState ChessWorld::encode(const Position& p) const {
    CumulativeState s;
    s.standard = p.eye;
    s.assignment.resize(64 * kVars);
    for (int sq = 0; sq < 64; ++sq) {
        s.assignment[sq * kVars + SlotChessman] = p.board[sq].piece;
        s.assignment[sq * kVars + SlotColor] = p.board[sq].color;
        s.assignment[sq * kVars + SlotReward] = p.reward;  // shared across squares
        s.assignment[sq * kVars + SlotHand] = (p.holding() && p.hand_from == sq) ? p.hand_piece : NoPiece;
        s.assignment[sq * kVars + SlotPly] = p.ply;
    }
    return s;
}

CumulativeState ChessWorld::initial() const {
    Position p;
    p.board = initial_board();
    p.eye = 0;  // a1
    return encode(p);
}

bool ChessWorld::action_legal(const Position& p, const ActionVec& a) const {
    const int df = a[0] == 1 ? -1 : a[0] == 2 ? 1 : 0;
    const int dr = a[1] == 1 ? 1 : a[1] == 2 ? -1 : 0;
    const int f = file_of(p.eye) + df, r = rank_of(p.eye) + dr;
    if (f < 0 || f > 7 || r < 0 || r > 7) return false;

    switch (a[2]) {
        case 0:
            return true;
        case 1:  // pick up the piece under the eye
            return p.in_play() && !p.holding() && p.board[p.eye].color == White;
        case 2:  // put the held piece down on the eyed square
            return p.in_play() && p.holding() && [&] {
                Board b = p.board;
                b[p.hand_from] = {p.hand_piece, White};  // place back to test the move
                return legal_move(b, White, p.hand_from, p.eye);
            }();
        case 3:  // new game only once the old one ended
            return !p.in_play();
    }
    return false;
}

std::optional<Position> ChessWorld::step(const Position& p, const ActionVec& a) const {
    if (!action_legal(p, a)) return std::nullopt;
    Position next = p;

    switch (a[2]) {
        case 1: {
            next.hand_piece = p.board[p.eye].piece;
            next.hand_from = p.eye;
            next.board[p.eye] = {};
            break;
        }
        case 2: {
            const bool king_taken = p.board[p.eye].piece == King;
            next.board[p.eye] = {p.hand_piece, White};
            next.hand_piece = NoPiece;
            next.hand_from = 0;
            ++next.ply;
            if (king_taken) {
                next.reward = RewardWin;
            } else if (next.ply >= cfg_.move_cap) {
                next.reward = RewardDraw;
            } else if (const auto reply = opponent_move(next.board); !reply) {
                next.reward = RewardDraw;
            } else {
                const bool white_king_taken = next.board[reply->to].piece == King;
                next.board[reply->to] = next.board[reply->from];
                next.board[reply->from] = {};
                ++next.ply;
                if (white_king_taken)
                    next.reward = RewardLose;
                else if (next.ply >= cfg_.move_cap)
                    next.reward = RewardDraw;
            }
            break;
        }
        case 3: {
            next.board = initial_board();
            next.hand_piece = NoPiece;
            next.hand_from = 0;
            next.reward = RewardNothing;
            next.ply = 0;
            break;
        }
        default:
            break;
    }

    const int df = a[0] == 1 ? -1 : a[0] == 2 ? 1 : 0;
    const int dr = a[1] == 1 ? 1 : a[1] == 2 ? -1 : 0;
    next.eye = square_of(file_of(p.eye) + df, rank_of(p.eye) + dr);
    return next;
}

bool ChessWorld::action_defined(const CumulativeState& s, const ActionVec& a) const {
    return action_legal(decode(s), a);
}

std::optional<Transition> ChessWorld::transition(const CumulativeState& s, const ActionVec& a) const {
    const auto next = step(decode(s), a);
    if (!next) return std::nullopt;
    const CumulativeState target = encode(*next);

    StateDelta delta;
    delta.next_standard = target.standard;
    for (size_t i = 0; i < target.assignment.size(); ++i)
        if (target.assignment[i] != s.assignment[i])
            delta.sets.emplace_back(static_cast<int>(i), target.assignment[i]);

    Transition t;
    t.outcomes.push_back({std::move(delta), Rational(1), Rational(1)});
    return t;
}

std::unique_ptr<ChessWorld> build_chess_world(ChessConfig cfg) {
    return std::make_unique<ChessWorld>(std::move(cfg));
}

}  // namespace powsim::chess
