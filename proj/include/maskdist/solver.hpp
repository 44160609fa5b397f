#pragma once

#include "maskdist/game.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace maskdist
{

using rational = boost::rational<std::int64_t>;

constexpr std::uint32_t infinite = std::numeric_limits<std::uint32_t>::max();

// Per game state: the least fault budget i with the state in some U^j_i, and
// the least such j at that budget. Both are `infinite` outside the refuter's
// winning region.
struct layer_table
{
    std::vector<std::uint32_t> budget;
    std::vector<std::uint32_t> depth;

    friend bool operator==( const layer_table&, const layer_table& ) = default;
};

// Layered attractor: layer 1 is the refuter attractor of the error state in
// which fault-pending verifier states are never attracted; layer i adds as
// seeds the fault-pending states whose successors all lie in layer i-1.
layer_table solve_layers( const game_graph& g );

// 1/budget(initial), or 0 when the initial state is outside every layer.
rational value( const game_graph& g, const layer_table& layers );
rational value( const game_graph& g );

// Chosen edge per state, as an index into `g.out(v)`.
struct strategy_map
{
    std::vector<std::optional<std::uint32_t>> choice;

    [[nodiscard]] bool defined( node_id v ) const { return choice[ v ].has_value(); }
    [[nodiscard]] std::size_t size() const;
};

struct strategies
{
    strategy_map refuter;
    strategy_map verifier;
};

// Refuter: on finite-budget states, a successor of the same budget and least
// depth. Verifier: on infinite-budget states, a successor of infinite budget.
// Ties go to the lowest target index.
strategies extract_strategies( const game_graph& g, const layer_table& layers );

struct play
{
    std::vector<node_id> states;  // states[k] --edges[k]--> states[k+1]
    std::vector<game_edge> edges;
    bool lasso = false;           // the last state repeats an earlier one and Err is never visited
};

// Play against the refuter strategy in which the verifier keeps the budget,
// then the depth, as high as possible. Absent when the budget is infinite.
std::optional<play> witness_trace( const game_graph& g, const layer_table& layers );

// 1/(1 + faults) on plays ending at Err, 0 on lassos.
rational payoff( const play& p );

// Three decimals, half away from zero.
std::string to_decimal( const rational& r );

struct witness_step
{
    std::string from;
    std::string label;
    std::string to;
    bool fault = false;
};

struct distance_report
{
    rational value{ 0 };
    std::optional<std::uint32_t> fault_budget;
    std::optional<play> witness;
    std::vector<witness_step> witness_steps;
    std::size_t spec_states = 0;
    std::size_t impl_states = 0;
    std::size_t game_states = 0;
    std::size_t game_edges = 0;
    double build_ms = 0;
    double solve_ms = 0;
    std::vector<std::string> warnings;
};

// Masks the nominal model, builds the game for `m`, solves it and extracts
// the witness.
distance_report distance( const lts& spec, const lts& impl, mode m );

// Steps rendered with model-level state descriptions.
std::vector<witness_step> render_play( const game_graph& g, const play& p, const lts& spec, const lts& impl );

} // namespace maskdist
