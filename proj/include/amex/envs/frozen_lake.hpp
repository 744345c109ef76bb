#pragma once

#include <string>
#include <vector>

#include "amex/errors.hpp"
#include "amex/mdp.hpp"

namespace amex {

// Non-slippery FrozenLake on a rectangular {S,F,H,G} map with a move budget.
// Moves off the board are clipped in place.  Arriving on H ends the episode
// with reward 0, arriving on G with reward 1; exhausting the budget ends it
// wherever the agent stands.
class FrozenLakeEnv {
public:
    struct State {
        int row = 0;
        int col = 0;
        int steps_remaining = 0;
    };

    enum Action { Left = 0, Down = 1, Right = 2, Up = 3 };

    FrozenLakeEnv(std::vector<std::string> rows, int horizon);

    static const std::vector<std::string>& default_map();  // the standard 8x8 layout
    static FrozenLakeEnv standard(int horizon = 400);
    static std::vector<std::string> parse_map(const std::string& text);
    static FrozenLakeEnv from_map_file(const std::string& path, int horizon = 400);

    std::string name() const { return "frozenlake"; }
    int n_rows() const { return static_cast<int>(rows_.size()); }
    int n_cols() const { return static_cast<int>(rows_.front().size()); }
    int horizon() const { return horizon_; }
    const std::vector<std::string>& rows() const { return rows_; }
    char cell(int row, int col) const { return rows_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]; }

    State initial() const { return State{start_row_, start_col_, horizon_}; }

    bool is_terminal(const State& s) const {
        char c = cell(s.row, s.col);
        return c == 'H' || c == 'G' || s.steps_remaining == 0;
    }

    int action_count(const State& s) const { return is_terminal(s) ? 0 : 4; }

    State transition(const State& s, int a) const;

    double reward(const State& s) const { return cell(s.row, s.col) == 'G' ? 1.0 : 0.0; }

    StateKey encode(const State& s) const {
        return std::to_string(s.row) + "." + std::to_string(s.col) + "." +
               std::to_string(s.steps_remaining);
    }

private:
    std::vector<std::string> rows_;
    int horizon_;
    int start_row_ = 0;
    int start_col_ = 0;
};

}  // namespace amex
