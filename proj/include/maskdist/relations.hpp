#pragma once

// Relational counterparts of the game: masking simulation and bisimulation
// by greatest-fixpoint refinement of a pair table.

#include "maskdist/game.hpp"
#include "maskdist/lts.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace maskdist
{

class pair_relation
{
    std::size_t _rows = 0;
    std::size_t _cols = 0;
    std::vector<bool> _bits;

public:
    pair_relation() = default;
    pair_relation( std::size_t rows, std::size_t cols, bool full )
            : _rows{ rows }, _cols{ cols }, _bits( rows * cols, full )
    {
    }

    [[nodiscard]] std::size_t rows() const { return _rows; }
    [[nodiscard]] std::size_t cols() const { return _cols; }
    [[nodiscard]] bool contains( state_id s, state_id t ) const { return _bits[ s * _cols + t ]; }
    void set( state_id s, state_id t, bool v ) { _bits[ s * _cols + t ] = v; }

    [[nodiscard]] std::vector<std::pair<state_id, state_id>> pairs() const;

    friend bool operator==( const pair_relation&, const pair_relation& ) = default;
};

// Greatest masking simulation between `spec` (without mask loops, fault
// free) and `impl`, restricted to the pairs reachable from the initial pair
// through matched moves. Absent when the initial pair is not related. The
// weak mode matches strong moves of one side with weak moves of the other.
std::optional<pair_relation> masking_sim( const lts& spec, const lts& impl, mode m );

// The weak relation obtained as the strong one over both saturated systems.
std::optional<pair_relation> masking_sim_saturated( const lts& spec, const lts& impl );

// Whether one refinement pass over `r` would delete a pair.
bool removes_any( const lts& spec, const lts& impl, mode m, const pair_relation& r );

// (Weak) bisimilarity of two fault-free systems.
bool bisimilar( const lts& a, const lts& b, mode m );

// `specState ~ implState`, one pair per line.
std::string dump( const pair_relation& r, const lts& spec, const lts& impl );

} // namespace maskdist
