#pragma once

#include "maskdist/gcl.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace maskdist
{

using state_id = std::uint32_t;
using label_id = std::uint32_t;

enum class label_kind : std::uint8_t
{
    observable,
    tau,
    fault,
    mask,
};

struct label
{
    label_kind kind = label_kind::observable;
    std::string name; // empty for tau and mask

    static label observable( std::string name ) { return { label_kind::observable, std::move( name ) }; }
    static label fault( std::string name ) { return { label_kind::fault, std::move( name ) }; }
    static label tau() { return { label_kind::tau, {} }; }
    static label mask() { return { label_kind::mask, {} }; }

    [[nodiscard]] bool is_fault() const { return kind == label_kind::fault; }

    friend bool operator==( const label&, const label& ) = default;
    friend auto operator<=>( const label&, const label& ) = default;
};

// obs:name, tau, fault:name, mask
std::string to_string( const label& l );

// One bit per declared boolean variable.
class valuation
{
    std::vector<std::uint64_t> _words;
    std::size_t _width = 0;

public:
    valuation() = default;
    explicit valuation( std::size_t width ) : _words( ( width + 63 ) / 64, 0 ), _width{ width } {}

    [[nodiscard]] std::size_t width() const { return _width; }
    [[nodiscard]] bool get( std::size_t i ) const { return ( _words[ i / 64 ] >> ( i % 64 ) ) & 1u; }

    void set( std::size_t i, bool v )
    {
        auto mask = std::uint64_t{ 1 } << ( i % 64 );
        if ( v )
            _words[ i / 64 ] |= mask;
        else
            _words[ i / 64 ] &= ~mask;
    }

    [[nodiscard]] std::size_t hash() const;

    friend bool operator==( const valuation&, const valuation& ) = default;
};

struct valuation_hash
{
    std::size_t operator()( const valuation& v ) const { return v.hash(); }
};

struct transition
{
    state_id source = 0;
    label_id label = 0;
    state_id target = 0;

    friend bool operator==( const transition&, const transition& ) = default;
    friend auto operator<=>( const transition&, const transition& ) = default;
};

// Explicit labelled transition system. State 0 is the initial state.
class lts
{
    std::vector<label> _alphabet;
    std::vector<transition> _transitions;
    std::size_t _state_count = 0;

    // Optional model-level information, present when compiled from a program.
    std::vector<valuation> _valuations;
    std::vector<std::string> _variables;

public:
    lts() = default;

    state_id add_state();
    state_id add_state( valuation v );
    label_id add_label( const label& l ); // interns
    void add_transition( state_id from, label_id l, state_id to );
    void add_transition( state_id from, const label& l, state_id to ) { add_transition( from, add_label( l ), to ); }
    void set_variables( std::vector<std::string> names ) { _variables = std::move( names ); }

    [[nodiscard]] std::size_t state_count() const { return _state_count; }
    [[nodiscard]] const std::vector<label>& alphabet() const { return _alphabet; }
    [[nodiscard]] const std::vector<transition>& transitions() const { return _transitions; }
    [[nodiscard]] const label& label_of( label_id id ) const { return _alphabet[ id ]; }
    [[nodiscard]] std::optional<label_id> find_label( const label& l ) const;

    [[nodiscard]] bool has_valuations() const { return !_valuations.empty(); }
    [[nodiscard]] const valuation& valuation_of( state_id s ) const { return _valuations[ s ]; }
    [[nodiscard]] const std::vector<std::string>& variables() const { return _variables; }

    [[nodiscard]] std::set<label> fault_set() const;
    [[nodiscard]] std::vector<state_id> deadlocks() const;

    // `x=1,y=0` when valuations are known, `s<i>` otherwise.
    [[nodiscard]] std::string describe( state_id s ) const;

    // Transitions sorted and without duplicates.
    void normalize();
};

// Per-state outgoing transitions, grouped by label.
class adjacency
{
    std::vector<std::uint32_t> _first;
    std::vector<std::pair<label_id, state_id>> _out;

public:
    adjacency( std::size_t state_count, std::span<const transition> transitions );

    [[nodiscard]] std::span<const std::pair<label_id, state_id>> out( state_id s ) const
    {
        return { _out.data() + _first[ s ], _out.data() + _first[ s + 1 ] };
    }

    // Targets of `s` under label `l`.
    [[nodiscard]] std::span<const std::pair<label_id, state_id>> out( state_id s, label_id l ) const;
};

struct compile_options
{
    std::size_t state_cap = std::size_t{ 1 } << 24;
};

// Interleaving semantics: each enabled action of each running instance
// yields one transition; assignments are simultaneous.
lts compile( const gcl::program& program, const compile_options& options = {} );

// Removes every transition carrying a forbidden label and every state no
// longer reachable from the initial state.
lts restrict( const lts& system, const std::set<label>& forbidden );

// Adds a mask self-loop to every state.
lts augment_mask( const lts& system );

// Faults whose name is in `names` become observable actions of the same name.
lts expose_faults( const lts& system, const std::set<std::string>& names );

struct weak_edges
{
    // The source alphabet, with tau appended when the source lacks it; label
    // ids of the source remain valid.
    std::vector<label> alphabet;
    std::vector<transition> edges; // sorted, duplicate free
};

// Weak transition relation: tau-padded observable steps, reflexive
// transitive tau-closure, strong fault and mask steps.
weak_edges saturate( const lts& system );

// The saturated relation as a transition system over the same states.
lts saturated_system( const lts& system );

// STATES n / INIT 0 / `src label dst` sorted by (src, label text, dst).
std::string export_text( const lts& system );

// Transitions whose label is tau, when any.
bool has_tau( const lts& system );

} // namespace maskdist
