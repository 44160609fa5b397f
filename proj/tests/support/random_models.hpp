#pragma once

// Random transition systems and game graphs for the property suites.

#include "maskdist/game.hpp"
#include "maskdist/lts.hpp"

#include <random>

namespace maskdist::testing
{

using rng = std::mt19937_64;

struct lts_shape
{
    std::size_t max_states = 6;
    std::size_t observables = 3; // drawn from a, b, c
    std::size_t faults = 0;      // drawn from f, g
    bool tau = false;
    bool deadlock_free = false;  // every state gets a non-fault edge
    double density = 0.3;        // chance of each (source, label, target)
};

lts random_lts( rng& r, const lts_shape& shape );

struct derive_shape
{
    std::size_t max_states = 6;
    std::size_t faults = 2;       // fault labels, starting at `first_fault`
    std::size_t first_fault = 0;  // 0: f, 1: g
    double fault_density = 0.15;
    double mutation = 0.3;        // chance of one random extra or dropped edge
};

// An implementation built from `base`: every state is copied once or twice
// (each copy behaves like its original), fault edges join random states, and
// occasionally one edge is added or removed. Mostly masking, sometimes not.
lts derive_impl( rng& r, const lts& base, const derive_shape& shape );

// A nominal/implementation pair: random spec plus, in two cases out of three,
// a derived implementation, otherwise an unrelated random one.
struct lts_pair
{
    lts spec;
    lts impl;
};

lts_pair random_pair( rng& r, mode m );

struct game_shape
{
    std::size_t max_states = 200;
    double fault_share = 0.3; // verifier states whose pending symbol is a fault
    std::size_t max_out = 3;
};

// Bipartite refuter/verifier graph with an error sink. Fault labels lead
// only into fault-pending verifier states; states without successors get
// an edge into the error state.
game_graph random_game( rng& r, const game_shape& shape );

} // namespace maskdist::testing
