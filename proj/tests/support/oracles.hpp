#pragma once

// Slow, literal reference implementations the library is checked against.

#include "maskdist/game.hpp"
#include "maskdist/lts.hpp"
#include "maskdist/solver.hpp"

#include <set>
#include <tuple>

namespace maskdist::testing
{

// The layered sets U^j_i computed set by set, exactly as defined: refuter
// states (the error state included) need one successor in U^j_i, plain
// verifier states need all successors in the union up to j and one in U^j_i,
// fault-pending verifier states look one layer down. U^1_i = {Err} for every
// i >= 1. Returns the least i and, for that i, the least j per state.
layer_table naive_layers( const game_graph& g );

// Weak edges by repeated relational composition, with labels as values.
using labelled_edge = std::tuple<state_id, label, state_id>;
std::set<labelled_edge> naive_weak_edges( const lts& system );

// The saturated relation of the library in the same form.
std::set<labelled_edge> weak_edge_set( const lts& system );

} // namespace maskdist::testing
