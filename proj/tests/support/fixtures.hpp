#pragma once

#include "wspe/wspe.hpp"

namespace fixtures {

using namespace wspe;

/// Running example: Büchi objectives F1 = {v1}, F2 = {v3, v5}.
inline Game example() {
    RawGame raw;
    raw.num_players = 2;
    raw.owner = {2, 1, 1, 1, 2, 1, 1};
    raw.edges = {{0, 1}, {0, 4}, {1, 2}, {2, 1}, {2, 3}, {3, 3}, {4, 5}, {4, 6}, {5, 5}, {6, 6}};
    raw.objectives = {Buchi{{1}}, Buchi{{3, 5}}};
    raw.initial = 0;
    return validate_game(raw);
}

/// example without the v4 branch.
inline Game example_left() {
    RawGame raw;
    raw.num_players = 2;
    raw.owner = {2, 1, 1, 1};
    raw.edges = {{0, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 3}};
    raw.objectives = {Buchi{{1}}, Buchi{{3}}};
    raw.initial = 0;
    return validate_game(raw);
}

inline Game self_loop(ObjectiveSpec obj = Buchi{{0}}) {
    RawGame raw;
    raw.num_players = 1;
    raw.owner = {1};
    raw.edges = {{0, 0}};
    raw.objectives = {std::move(obj)};
    raw.initial = 0;
    return validate_game(raw);
}

inline Payoff P(const char* bits) { return Payoff::parse(bits); }

} // namespace fixtures
