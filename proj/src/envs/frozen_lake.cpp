#include "amex/envs/frozen_lake.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace amex {

FrozenLakeEnv::FrozenLakeEnv(std::vector<std::string> rows, int horizon)
    : rows_(std::move(rows)), horizon_(horizon) {
    if (horizon_ < 1) throw PreconditionViolation("frozenlake: horizon must be positive");
    if (rows_.empty()) throw PreconditionViolation("frozenlake: empty map");
    int starts = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].size() != rows_.front().size())
            throw PreconditionViolation("frozenlake: ragged map rows");
        for (std::size_t c = 0; c < rows_[r].size(); ++c) {
            char ch = rows_[r][c];
            if (ch != 'S' && ch != 'F' && ch != 'H' && ch != 'G')
                throw PreconditionViolation(std::string("frozenlake: bad map cell '") + ch + "'");
            if (ch == 'S') {
                start_row_ = static_cast<int>(r);
                start_col_ = static_cast<int>(c);
                ++starts;
            }
        }
    }
    if (starts != 1) throw PreconditionViolation("frozenlake: map needs exactly one S");
}

const std::vector<std::string>& FrozenLakeEnv::default_map() {
    static const std::vector<std::string> kMap = {
        "SFFFFFFF",
        "FFFFFFFF",
        "FFFHFFFF",
        "FFFFFHFF",
        "FFFHFFFF",
        "FHHFFFHF",
        "FHFFHFHF",
        "FFFHFFFG",
    };
    return kMap;
}

FrozenLakeEnv FrozenLakeEnv::standard(int horizon) {
    return FrozenLakeEnv(default_map(), horizon);
}

std::vector<std::string> FrozenLakeEnv::parse_map(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (!line.empty()) rows.push_back(line);
    }
    return rows;
}

FrozenLakeEnv FrozenLakeEnv::from_map_file(const std::string& path, int horizon) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open map file");
    std::stringstream buf;
    buf << in.rdbuf();
    return FrozenLakeEnv(parse_map(buf.str()), horizon);
}

FrozenLakeEnv::State FrozenLakeEnv::transition(const State& s, int a) const {
    if (is_terminal(s)) throw PreconditionViolation("frozenlake: transition from terminal state");
    int row = s.row;
    int col = s.col;
    switch (a) {
        case Left: col = std::max(0, col - 1); break;
        case Down: row = std::min(n_rows() - 1, row + 1); break;
        case Right: col = std::min(n_cols() - 1, col + 1); break;
        case Up: row = std::max(0, row - 1); break;
        default: throw PreconditionViolation("frozenlake: bad action");
    }
    return State{row, col, s.steps_remaining - 1};
}

}  // namespace amex
