#include "maskdist/game.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace maskdist
{

label_id game_graph::add_label( const label& l )
{
    for ( std::size_t i = 0; i < _labels.size(); ++i )
        if ( _labels[ i ] == l )
            return static_cast<label_id>( i );
    _labels.push_back( l );
    return static_cast<label_id>( _labels.size() - 1 );
}

node_id game_graph::add_state( const game_state& s )
{
    _states.push_back( s );
    auto v = static_cast<node_id>( _states.size() - 1 );
    if ( s.turn == player::err ) {
        _err = v;
        _has_err = true;
    }
    return v;
}

void game_graph::finalize()
{
    _first.assign( _states.size() + 1, 0 );
    for ( const auto& e : _pending_edges )
        ++_first[ e.source + 1 ];
    for ( std::size_t v = 0; v < _states.size(); ++v )
        _first[ v + 1 ] += _first[ v ];
    _edges.assign( _pending_edges.size(), {} );
    std::vector<std::uint32_t> fill( _first.begin(), _first.end() - 1 );
    for ( const auto& e : _pending_edges ) {
        _edges[ fill[ e.source ]++ ] = { e.label, e.target, _labels[ e.label ].is_fault(),
                                         _has_err && e.target == _err };
    }
    _pending_edges.clear();
    _pending_edges.shrink_to_fit();
}

namespace
{

void check_alphabets( const lts& spec, const lts& impl )
{
    std::map<std::string, label_kind> seen;
    for ( const auto& l : spec.alphabet() )
        if ( l.is_fault() )
            throw alphabet_clash( "the nominal model declares fault '" + l.name + "'" );
    for ( const auto* sys : { &spec, &impl } ) {
        for ( const auto& l : sys->alphabet() ) {
            if ( l.kind != label_kind::observable && l.kind != label_kind::fault )
                continue;
            auto [ it, fresh ] = seen.emplace( l.name, l.kind );
            if ( !fresh && it->second != l.kind )
                throw alphabet_clash( "label '" + l.name + "' is used both as an action and as a fault" );
        }
    }
}

struct node_key
{
    std::uint64_t states;
    std::uint64_t pending;

    friend bool operator==( const node_key&, const node_key& ) = default;
};

struct node_key_hash
{
    std::size_t operator()( const node_key& k ) const
    {
        return std::hash<std::uint64_t>{}( k.states * 0x9e3779b97f4a7c15ULL ^ k.pending );
    }
};

class builder
{
    const lts& _spec;
    const lts& _impl;
    adjacency _spec_adj;
    adjacency _impl_adj;
    game_graph _g;

    // Game label per source label id; in_sigma marks members of the shared alphabet.
    std::vector<label_id> _spec_label, _impl_label;
    std::vector<bool> _spec_sigma, _impl_sigma;
    std::vector<label_id> _sigma;
    // Game label -> source label id, when the source has it.
    std::vector<std::optional<label_id>> _spec_of, _impl_of;
    std::optional<label_id> _spec_mask;

    std::unordered_map<node_key, node_id, node_key_hash> _index;
    std::deque<node_id> _todo;

    node_id intern( const game_state& s )
    {
        std::uint64_t code = 0;
        if ( s.pending != pending_kind::hash )
            code = 1 + 2 * std::uint64_t{ s.pending_label } + ( s.pending == pending_kind::impl_move ? 1 : 0 );
        node_key key{ ( std::uint64_t{ s.spec } << 32 ) | s.impl, code };
        auto [ it, fresh ] = _index.emplace( key, 0 );
        if ( fresh ) {
            it->second = _g.add_state( s );
            _todo.push_back( it->second );
        }
        return it->second;
    }

    // Both expanders return whether at least one edge was added.
    bool expand_refuter( node_id v, const game_state& s )
    {
        bool any = false;
        for ( auto [ l, t ] : _spec_adj.out( s.spec ) )
            if ( _spec_sigma[ l ] ) {
                label_id gl = _spec_label[ l ];
                _g.add_edge( v, gl, intern( { player::verifier, t, pending_kind::spec_move, gl, s.impl } ) );
                any = true;
            }
        for ( auto [ l, t ] : _impl_adj.out( s.impl ) )
            if ( _impl_sigma[ l ] || _impl.label_of( l ).is_fault() ) {
                label_id gl = _impl_label[ l ];
                _g.add_edge( v, gl, intern( { player::verifier, s.spec, pending_kind::impl_move, gl, t } ) );
                any = true;
            }
        return any;
    }

    bool expand_verifier( node_id v, const game_state& s )
    {
        bool any = false;
        if ( s.pending == pending_kind::spec_move ) {
            if ( auto l = _impl_of[ s.pending_label ] )
                for ( auto [ ll, t ] : _impl_adj.out( s.impl, *l ) ) {
                    (void)ll;
                    _g.add_edge( v, s.pending_label, intern( { player::refuter, s.spec, pending_kind::hash, 0, t } ) );
                    any = true;
                }
        } else if ( _g.label_of( s.pending_label ).is_fault() ) {
            if ( _spec_mask ) {
                label_id gm = _spec_label[ *_spec_mask ];
                for ( auto [ ll, t ] : _spec_adj.out( s.spec, *_spec_mask ) ) {
                    (void)ll;
                    _g.add_edge( v, gm, intern( { player::refuter, t, pending_kind::hash, 0, s.impl } ) );
                    any = true;
                }
            }
        } else if ( auto l = _spec_of[ s.pending_label ] ) {
            for ( auto [ ll, t ] : _spec_adj.out( s.spec, *l ) ) {
                (void)ll;
                _g.add_edge( v, s.pending_label, intern( { player::refuter, t, pending_kind::hash, 0, s.impl } ) );
                any = true;
            }
        }
        return any;
    }

public:
    builder( const lts& spec, const lts& impl, bool tau_in_sigma )
            : _spec{ spec },
              _impl{ impl },
              _spec_adj( spec.state_count(), spec.transitions() ),
              _impl_adj( impl.state_count(), impl.transitions() )
    {
        check_alphabets( spec, impl );

        auto in_sigma = [ & ]( const label& l ) {
            return l.kind == label_kind::observable || ( l.kind == label_kind::tau && tau_in_sigma );
        };
        if ( tau_in_sigma )
            _sigma.push_back( _g.add_label( label::tau() ) );
        for ( const auto* sys : { &spec, &impl } )
            for ( const auto& l : sys->alphabet() )
                if ( in_sigma( l ) ) {
                    auto before = _g.labels().size();
                    label_id gl = _g.add_label( l );
                    if ( _g.labels().size() > before )
                        _sigma.push_back( gl );
                }

        for ( const auto& l : spec.alphabet() ) {
            _spec_label.push_back( _g.add_label( l ) );
            _spec_sigma.push_back( in_sigma( l ) );
        }
        for ( const auto& l : impl.alphabet() ) {
            _impl_label.push_back( _g.add_label( l ) );
            _impl_sigma.push_back( in_sigma( l ) );
        }
        _spec_of.assign( _g.labels().size(), std::nullopt );
        _impl_of.assign( _g.labels().size(), std::nullopt );
        for ( label_id l = 0; l < _spec_label.size(); ++l )
            _spec_of[ _spec_label[ l ] ] = l;
        for ( label_id l = 0; l < _impl_label.size(); ++l )
            _impl_of[ _impl_label[ l ] ] = l;
        _spec_mask = spec.find_label( label::mask() );
        if ( _sigma.empty() )
            _sigma.push_back( _g.add_label( label::tau() ) );
    }

    game_graph run()
    {
        if ( _spec.state_count() == 0 || _impl.state_count() == 0 )
            throw error( "cannot build a game over an empty transition system" );

        _g.set_initial( intern( { player::refuter, 0, pending_kind::hash, 0, 0 } ) );
        std::vector<node_id> stuck;
        while ( !_todo.empty() ) {
            node_id v = _todo.front();
            _todo.pop_front();
            game_state s = _g.state( v );
            bool any = s.turn == player::refuter ? expand_refuter( v, s ) : expand_verifier( v, s );
            if ( !any )
                stuck.push_back( v );
        }

        if ( !stuck.empty() ) {
            node_id err = _g.add_state( game_state::err() );
            for ( node_id v : stuck )
                for ( label_id l : _sigma )
                    _g.add_edge( v, l, err );
            for ( label_id l : _sigma )
                _g.add_edge( err, l, err );
        }
        _g.finalize();
        return std::move( _g );
    }
};

} // namespace

game_graph build_strong( const lts& spec_m, const lts& impl )
{
    bool tau = spec_m.find_label( label::tau() ).has_value() || impl.find_label( label::tau() ).has_value();
    return builder( spec_m, impl, tau ).run();
}

game_graph build_weak( const lts& spec_m, const lts& impl )
{
    lts spec_w = saturated_system( spec_m );
    lts impl_w = saturated_system( impl );
    return builder( spec_w, impl_w, true ).run();
}

game_graph build( const lts& spec_m, const lts& impl, mode m )
{
    return m == mode::strong ? build_strong( spec_m, impl ) : build_weak( spec_m, impl );
}

std::string describe( const game_graph& g, node_id v, const lts& spec, const lts& impl )
{
    const auto& s = g.state( v );
    if ( s.turn == player::err )
        return "Err";
    std::string pending = "#";
    if ( s.pending != pending_kind::hash ) {
        const auto& l = g.label_of( s.pending_label );
        pending = ( l.kind == label_kind::tau ? std::string( "tau" ) : l.name ) +
                  ( s.pending == pending_kind::spec_move ? "^1" : "^2" );
    }
    return "(" + spec.describe( s.spec ) + " | " + pending + " | " + impl.describe( s.impl ) + " | " +
           ( s.turn == player::refuter ? "R" : "V" ) + ")";
}

std::string dump( const game_graph& g, const lts& spec, const lts& impl )
{
    std::ostringstream out;
    out << "# states " << g.state_count() << ", edges " << g.edge_count() << ", initial " << g.initial() << '\n';
    for ( node_id v = 0; v < g.state_count(); ++v )
        out << "# " << v << ' ' << describe( g, v, spec, impl ) << '\n';
    for ( node_id v = 0; v < g.state_count(); ++v )
        for ( const auto& e : g.out( v ) )
            out << v << ' ' << to_string( g.label_of( e.label ) ) << ' ' << e.target << ' ' << int( e.fault ) << ' '
                << int( e.err ) << '\n';
    return out.str();
}

} // namespace maskdist
