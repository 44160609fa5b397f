#include "maskdist/lts.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <tuple>

namespace maskdist
{

std::string to_string( const label& l )
{
    switch ( l.kind ) {
    case label_kind::observable: return "obs:" + l.name;
    case label_kind::tau: return "tau";
    case label_kind::fault: return "fault:" + l.name;
    case label_kind::mask: return "mask";
    }
    return {};
}

std::size_t valuation::hash() const
{
    std::size_t h = _width;
    for ( auto w : _words )
        h ^= std::hash<std::uint64_t>{}( w ) + 0x9e3779b97f4a7c15ULL + ( h << 6 ) + ( h >> 2 );
    return h;
}

state_id lts::add_state()
{
    return static_cast<state_id>( _state_count++ );
}

state_id lts::add_state( valuation v )
{
    _valuations.push_back( std::move( v ) );
    return add_state();
}

label_id lts::add_label( const label& l )
{
    if ( auto id = find_label( l ) )
        return *id;
    _alphabet.push_back( l );
    return static_cast<label_id>( _alphabet.size() - 1 );
}

std::optional<label_id> lts::find_label( const label& l ) const
{
    for ( std::size_t i = 0; i < _alphabet.size(); ++i )
        if ( _alphabet[ i ] == l )
            return static_cast<label_id>( i );
    return std::nullopt;
}

void lts::add_transition( state_id from, label_id l, state_id to )
{
    _transitions.push_back( { from, l, to } );
}

std::set<label> lts::fault_set() const
{
    std::set<label> out;
    for ( const auto& l : _alphabet )
        if ( l.is_fault() )
            out.insert( l );
    return out;
}

std::vector<state_id> lts::deadlocks() const
{
    std::vector<bool> has_out( _state_count, false );
    for ( const auto& t : _transitions )
        has_out[ t.source ] = true;
    std::vector<state_id> out;
    for ( state_id s = 0; s < _state_count; ++s )
        if ( !has_out[ s ] )
            out.push_back( s );
    return out;
}

std::string lts::describe( state_id s ) const
{
    if ( !has_valuations() || _variables.empty() )
        return "s" + std::to_string( s );
    std::string out;
    const auto& v = _valuations[ s ];
    for ( std::size_t i = 0; i < _variables.size(); ++i ) {
        if ( i > 0 )
            out += ',';
        out += _variables[ i ];
        out += v.get( i ) ? "=1" : "=0";
    }
    return out;
}

void lts::normalize()
{
    std::sort( _transitions.begin(), _transitions.end() );
    _transitions.erase( std::unique( _transitions.begin(), _transitions.end() ), _transitions.end() );
}

adjacency::adjacency( std::size_t state_count, std::span<const transition> transitions )
        : _first( state_count + 1, 0 )
{
    std::vector<transition> sorted( transitions.begin(), transitions.end() );
    std::sort( sorted.begin(), sorted.end() );
    sorted.erase( std::unique( sorted.begin(), sorted.end() ), sorted.end() );
    for ( const auto& t : sorted )
        ++_first[ t.source + 1 ];
    for ( std::size_t s = 0; s < state_count; ++s )
        _first[ s + 1 ] += _first[ s ];
    _out.reserve( sorted.size() );
    for ( const auto& t : sorted )
        _out.emplace_back( t.label, t.target );
}

std::span<const std::pair<label_id, state_id>> adjacency::out( state_id s, label_id l ) const
{
    auto all = out( s );
    auto lo = std::lower_bound( all.begin(), all.end(), std::pair<label_id, state_id>{ l, 0 } );
    auto hi = lo;
    while ( hi != all.end() && hi->first == l )
        ++hi;
    return { lo, hi };
}

namespace
{

// Copies the states listed in `keep` (old ids, increasing) with their labels
// renumbered through `label_map`; returns the new system.
lts rebuild( const lts& src, const std::vector<bool>& keep_state, const std::vector<bool>& keep_label )
{
    lts out;
    out.set_variables( src.variables() );
    std::vector<state_id> new_id( src.state_count(), 0 );
    for ( state_id s = 0; s < src.state_count(); ++s ) {
        if ( !keep_state[ s ] )
            continue;
        new_id[ s ] = src.has_valuations() ? out.add_state( src.valuation_of( s ) ) : out.add_state();
    }
    std::vector<label_id> new_label( src.alphabet().size(), 0 );
    for ( label_id l = 0; l < src.alphabet().size(); ++l )
        if ( keep_label[ l ] )
            new_label[ l ] = out.add_label( src.label_of( l ) );
    for ( const auto& t : src.transitions() )
        if ( keep_label[ t.label ] && keep_state[ t.source ] && keep_state[ t.target ] )
            out.add_transition( new_id[ t.source ], new_label[ t.label ], new_id[ t.target ] );
    out.normalize();
    return out;
}

} // namespace

lts restrict( const lts& system, const std::set<label>& forbidden )
{
    std::vector<bool> keep_label( system.alphabet().size() );
    for ( label_id l = 0; l < system.alphabet().size(); ++l )
        keep_label[ l ] = forbidden.count( system.label_of( l ) ) == 0;

    std::vector<bool> reached( system.state_count(), false );
    if ( system.state_count() > 0 ) {
        adjacency adj( system.state_count(), system.transitions() );
        std::deque<state_id> todo{ 0 };
        reached[ 0 ] = true;
        while ( !todo.empty() ) {
            state_id s = todo.front();
            todo.pop_front();
            for ( auto [ l, t ] : adj.out( s ) ) {
                if ( keep_label[ l ] && !reached[ t ] ) {
                    reached[ t ] = true;
                    todo.push_back( t );
                }
            }
        }
    }
    return rebuild( system, reached, keep_label );
}

lts augment_mask( const lts& system )
{
    lts out = system;
    label_id m = out.add_label( label::mask() );
    for ( state_id s = 0; s < out.state_count(); ++s )
        out.add_transition( s, m, s );
    out.normalize();
    return out;
}

lts expose_faults( const lts& system, const std::set<std::string>& names )
{
    lts out;
    out.set_variables( system.variables() );
    for ( state_id s = 0; s < system.state_count(); ++s )
        system.has_valuations() ? out.add_state( system.valuation_of( s ) ) : out.add_state();
    std::vector<label_id> relabel;
    for ( const auto& l : system.alphabet() ) {
        label m = l;
        if ( l.is_fault() && names.count( l.name ) > 0 )
            m.kind = label_kind::observable;
        relabel.push_back( out.add_label( m ) );
    }
    for ( const auto& t : system.transitions() )
        out.add_transition( t.source, relabel[ t.label ], t.target );
    out.normalize();
    return out;
}

weak_edges saturate( const lts& system )
{
    weak_edges w;
    w.alphabet = system.alphabet();
    label_id tau_id = 0;
    if ( auto id = system.find_label( label::tau() ) ) {
        tau_id = *id;
    } else {
        w.alphabet.push_back( label::tau() );
        tau_id = static_cast<label_id>( w.alphabet.size() - 1 );
    }

    std::size_t n = system.state_count();
    adjacency adj( n, system.transitions() );

    // closure[s]: states reachable from s through zero or more tau steps.
    std::vector<std::vector<state_id>> closure( n );
    std::vector<std::uint32_t> seen( n, 0 );
    std::uint32_t stamp = 0;
    for ( state_id s = 0; s < n; ++s ) {
        ++stamp;
        std::vector<state_id> stack{ s };
        seen[ s ] = stamp;
        while ( !stack.empty() ) {
            state_id u = stack.back();
            stack.pop_back();
            closure[ s ].push_back( u );
            for ( auto [ l, t ] : adj.out( u, tau_id ) ) {
                (void)l;
                if ( seen[ t ] != stamp ) {
                    seen[ t ] = stamp;
                    stack.push_back( t );
                }
            }
        }
        std::sort( closure[ s ].begin(), closure[ s ].end() );
    }

    for ( state_id s = 0; s < n; ++s ) {
        for ( state_id u : closure[ s ] )
            w.edges.push_back( { s, tau_id, u } );
        for ( state_id u : closure[ s ] )
            for ( auto [ l, v ] : adj.out( u ) )
                if ( w.alphabet[ l ].kind == label_kind::observable )
                    for ( state_id x : closure[ v ] )
                        w.edges.push_back( { s, l, x } );
        for ( auto [ l, v ] : adj.out( s ) ) {
            auto kind = w.alphabet[ l ].kind;
            if ( kind == label_kind::fault || kind == label_kind::mask )
                w.edges.push_back( { s, l, v } );
        }
    }
    std::sort( w.edges.begin(), w.edges.end() );
    w.edges.erase( std::unique( w.edges.begin(), w.edges.end() ), w.edges.end() );
    return w;
}

lts saturated_system( const lts& system )
{
    weak_edges w = saturate( system );
    lts out;
    out.set_variables( system.variables() );
    for ( state_id s = 0; s < system.state_count(); ++s )
        system.has_valuations() ? out.add_state( system.valuation_of( s ) ) : out.add_state();
    for ( const auto& l : w.alphabet )
        out.add_label( l );
    for ( const auto& t : w.edges )
        out.add_transition( t.source, t.label, t.target );
    out.normalize();
    return out;
}

bool has_tau( const lts& system )
{
    auto id = system.find_label( label::tau() );
    if ( !id )
        return false;
    return std::any_of( system.transitions().begin(), system.transitions().end(),
                        [ & ]( const transition& t ) { return t.label == *id; } );
}

std::string export_text( const lts& system )
{
    std::vector<std::tuple<state_id, std::string, state_id>> rows;
    rows.reserve( system.transitions().size() );
    for ( const auto& t : system.transitions() )
        rows.emplace_back( t.source, to_string( system.label_of( t.label ) ), t.target );
    std::sort( rows.begin(), rows.end() );
    rows.erase( std::unique( rows.begin(), rows.end() ), rows.end() );

    std::ostringstream out;
    out << "STATES " << system.state_count() << "\nINIT 0\n";
    for ( const auto& [ s, l, t ] : rows )
        out << s << ' ' << l << ' ' << t << '\n';
    return out.str();
}

} // namespace maskdist
