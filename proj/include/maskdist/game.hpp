#pragma once

#include "maskdist/lts.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace maskdist
{

using node_id = std::uint32_t;

enum class player : std::uint8_t
{
    refuter,
    verifier,
    err,
};

enum class pending_kind : std::uint8_t
{
    hash,
    spec_move, // the refuter moved the nominal model; the implementation must answer
    impl_move, // the refuter moved the implementation; the nominal model must answer
};

struct game_state
{
    player turn = player::refuter;
    state_id spec = 0;
    pending_kind pending = pending_kind::hash;
    label_id pending_label = 0; // game label id, meaningful unless pending is hash
    state_id impl = 0;

    static game_state err() { return { player::err, 0, pending_kind::hash, 0, 0 }; }

    friend bool operator==( const game_state&, const game_state& ) = default;
};

struct game_edge
{
    label_id label = 0; // game label id
    node_id target = 0;
    bool fault = false; // the label is a fault
    bool err = false;   // the target is the error state
};

// Bipartite refuter/verifier game with a distinguished error sink. Built
// either by `build_strong` / `build_weak` or by hand through add_state,
// add_edge and finalize.
class game_graph
{
    std::vector<label> _labels;
    std::vector<game_state> _states;
    std::vector<std::uint32_t> _first;
    std::vector<game_edge> _edges;
    std::vector<transition> _pending_edges;
    node_id _initial = 0;
    node_id _err = 0;
    bool _has_err = false;

public:
    label_id add_label( const label& l );
    node_id add_state( const game_state& s );
    void add_edge( node_id from, label_id l, node_id to ) { _pending_edges.push_back( { from, l, to } ); }
    void set_initial( node_id v ) { _initial = v; }

    // Groups edges by source, keeping insertion order, and computes weights.
    void finalize();

    [[nodiscard]] std::size_t state_count() const { return _states.size(); }
    [[nodiscard]] std::size_t edge_count() const { return _edges.size(); }
    [[nodiscard]] node_id initial() const { return _initial; }
    [[nodiscard]] bool has_err() const { return _has_err; }
    [[nodiscard]] node_id err() const { return _err; }
    [[nodiscard]] const game_state& state( node_id v ) const { return _states[ v ]; }
    [[nodiscard]] player turn( node_id v ) const { return _states[ v ].turn; }
    [[nodiscard]] const std::vector<label>& labels() const { return _labels; }
    [[nodiscard]] const label& label_of( label_id l ) const { return _labels[ l ]; }

    [[nodiscard]] std::span<const game_edge> out( node_id v ) const
    {
        return { _edges.data() + _first[ v ], _edges.data() + _first[ v + 1 ] };
    }

    // Verifier state whose pending symbol is an implementation fault.
    [[nodiscard]] bool fault_pending( node_id v ) const
    {
        const auto& s = _states[ v ];
        return s.turn == player::verifier && s.pending == pending_kind::impl_move && _labels[ s.pending_label ].is_fault();
    }
};

enum class mode
{
    strong,
    weak,
};

// Game over the strong transition relations. `spec_m` must already carry
// the mask self-loops.
game_graph build_strong( const lts& spec_m, const lts& impl );

// Game over the saturated relations of both systems; the masking answer
// still uses the strong mask edges.
game_graph build_weak( const lts& spec_m, const lts& impl );

game_graph build( const lts& spec_m, const lts& impl, mode m );

// `(spec, pending, impl, turn)` with model-level state descriptions, or `Err`.
std::string describe( const game_graph& g, node_id v, const lts& spec, const lts& impl );

// Legend of states followed by one line per edge: `src label dst wF wE`.
std::string dump( const game_graph& g, const lts& spec, const lts& impl );

} // namespace maskdist
