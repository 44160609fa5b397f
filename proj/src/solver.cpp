#include "maskdist/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace maskdist
{

namespace
{

// Predecessor edges in CSR form, one entry per edge.
struct reverse_graph
{
    std::vector<std::uint32_t> first;
    std::vector<node_id> source;

    explicit reverse_graph( const game_graph& g ) : first( g.state_count() + 1, 0 )
    {
        for ( node_id v = 0; v < g.state_count(); ++v )
            for ( const auto& e : g.out( v ) )
                ++first[ e.target + 1 ];
        for ( std::size_t v = 0; v < g.state_count(); ++v )
            first[ v + 1 ] += first[ v ];
        source.resize( first.back() );
        std::vector<std::uint32_t> fill( first.begin(), first.end() - 1 );
        for ( node_id v = 0; v < g.state_count(); ++v )
            for ( const auto& e : g.out( v ) )
                source[ fill[ e.target ]++ ] = v;
    }
};

// Settles states in increasing depth order.
class bucket_queue
{
    std::vector<std::vector<node_id>> _buckets;

public:
    void push( std::uint32_t depth, node_id v )
    {
        if ( _buckets.size() <= depth )
            _buckets.resize( depth + 1 );
        _buckets[ depth ].push_back( v );
    }

    template <typename Visit>
    void drain( Visit visit )
    {
        for ( std::uint32_t d = 0; d < _buckets.size(); ++d ) {
            // visit may push into bucket d + 1 and reallocate
            for ( std::size_t k = 0; k < _buckets[ d ].size(); ++k )
                visit( d, _buckets[ d ][ k ] );
            _buckets[ d ].clear();
        }
    }
};

} // namespace

layer_table solve_layers( const game_graph& g )
{
    std::size_t n = g.state_count();
    layer_table table{ std::vector<std::uint32_t>( n, infinite ), std::vector<std::uint32_t>( n, infinite ) };
    if ( !g.has_err() )
        return table;

    reverse_graph rev( g );
    std::vector<node_id> fault_nodes;
    for ( node_id v = 0; v < n; ++v )
        if ( g.fault_pending( v ) )
            fault_nodes.push_back( v );

    std::vector<std::uint32_t> prev( n, infinite ); // depth at the previous layer
    std::vector<std::uint32_t> cur( n, infinite );
    std::vector<std::uint32_t> missing( n, 0 );
    std::size_t prev_size = 0;

    for ( std::uint32_t layer = 1;; ++layer ) {
        std::fill( cur.begin(), cur.end(), infinite );
        for ( node_id v = 0; v < n; ++v )
            missing[ v ] = static_cast<std::uint32_t>( g.out( v ).size() );

        bucket_queue queue;
        cur[ g.err() ] = 1;
        queue.push( 1, g.err() );
        if ( layer > 1 ) {
            for ( node_id v : fault_nodes ) {
                std::uint32_t worst = 0;
                for ( const auto& e : g.out( v ) )
                    worst = std::max( worst, prev[ e.target ] );
                if ( worst != infinite && !g.out( v ).empty() ) {
                    cur[ v ] = worst + 1;
                    queue.push( worst + 1, v );
                }
            }
        }

        std::size_t size = 0;
        queue.drain( [ & ]( std::uint32_t d, node_id v ) {
            if ( cur[ v ] != d )
                return;
            ++size;
            for ( auto k = rev.first[ v ]; k < rev.first[ v + 1 ]; ++k ) {
                node_id u = rev.source[ k ];
                if ( cur[ u ] != infinite && cur[ u ] <= d )
                    continue;
                switch ( g.turn( u ) ) {
                case player::refuter:
                    if ( cur[ u ] == infinite ) {
                        cur[ u ] = d + 1;
                        queue.push( d + 1, u );
                    }
                    break;
                case player::verifier:
                    if ( g.fault_pending( u ) )
                        break;
                    if ( --missing[ u ] == 0 ) {
                        cur[ u ] = d + 1;
                        queue.push( d + 1, u );
                    }
                    break;
                case player::err: break;
                }
            }
        } );

        for ( node_id v = 0; v < n; ++v )
            if ( cur[ v ] != infinite && table.budget[ v ] == infinite ) {
                table.budget[ v ] = layer;
                table.depth[ v ] = cur[ v ];
            }
        if ( size == prev_size || fault_nodes.empty() )
            break;
        prev_size = size;
        prev.swap( cur );
    }
    return table;
}

rational value( const game_graph& g, const layer_table& layers )
{
    auto b = layers.budget[ g.initial() ];
    return b == infinite ? rational( 0 ) : rational( 1, b );
}

rational value( const game_graph& g )
{
    return value( g, solve_layers( g ) );
}

std::size_t strategy_map::size() const
{
    return static_cast<std::size_t>( std::count_if( choice.begin(), choice.end(),
                                                    []( const auto& c ) { return c.has_value(); } ) );
}

strategies extract_strategies( const game_graph& g, const layer_table& layers )
{
    std::size_t n = g.state_count();
    strategies s{ { std::vector<std::optional<std::uint32_t>>( n ) },
                  { std::vector<std::optional<std::uint32_t>>( n ) } };
    for ( node_id v = 0; v < n; ++v ) {
        auto out = g.out( v );
        auto b = layers.budget[ v ];
        if ( g.turn( v ) == player::refuter && b != infinite ) {
            std::optional<std::uint32_t> best;
            for ( std::uint32_t k = 0; k < out.size(); ++k ) {
                node_id t = out[ k ].target;
                if ( layers.budget[ t ] != b )
                    continue;
                if ( !best || layers.depth[ t ] < layers.depth[ out[ *best ].target ] ||
                     ( layers.depth[ t ] == layers.depth[ out[ *best ].target ] && t < out[ *best ].target ) )
                    best = k;
            }
            s.refuter.choice[ v ] = best;
        } else if ( g.turn( v ) == player::verifier && b == infinite ) {
            std::optional<std::uint32_t> best;
            for ( std::uint32_t k = 0; k < out.size(); ++k )
                if ( layers.budget[ out[ k ].target ] == infinite && ( !best || out[ k ].target < out[ *best ].target ) )
                    best = k;
            s.verifier.choice[ v ] = best;
        }
    }
    return s;
}

std::optional<play> witness_trace( const game_graph& g, const layer_table& layers )
{
    if ( layers.budget[ g.initial() ] == infinite )
        return std::nullopt;
    auto refuter = extract_strategies( g, layers ).refuter;

    play p;
    node_id v = g.initial();
    p.states.push_back( v );
    while ( g.turn( v ) != player::err ) {
        auto out = g.out( v );
        std::uint32_t k = 0;
        if ( g.turn( v ) == player::refuter ) {
            k = *refuter.choice[ v ];
        } else {
            for ( std::uint32_t c = 1; c < out.size(); ++c ) {
                node_id t = out[ c ].target, best = out[ k ].target;
                auto key = [ & ]( node_id x ) { return std::pair{ layers.budget[ x ], layers.depth[ x ] }; };
                if ( key( t ) > key( best ) || ( key( t ) == key( best ) && t < best ) )
                    k = c;
            }
        }
        p.edges.push_back( out[ k ] );
        v = out[ k ].target;
        p.states.push_back( v );
    }
    return p;
}

rational payoff( const play& p )
{
    if ( p.states.size() != p.edges.size() + 1 )
        throw malformed_play( "a play needs exactly one more state than edges" );
    if ( !p.edges.empty() && p.edges.back().err ) {
        auto faults = std::count_if( p.edges.begin(), p.edges.end(), []( const game_edge& e ) { return e.fault; } );
        return rational( 1, 1 + faults );
    }
    if ( p.lasso && p.states.size() > 1 &&
         std::find( p.states.begin(), p.states.end() - 1, p.states.back() ) != p.states.end() - 1 &&
         std::none_of( p.edges.begin(), p.edges.end(), []( const game_edge& e ) { return e.err; } ) )
        return rational( 0 );
    throw malformed_play( "play neither reaches the error state nor closes a cycle" );
}

std::string to_decimal( const rational& r )
{
    auto num = r.numerator(), den = r.denominator();
    bool negative = num < 0;
    if ( negative )
        num = -num;
    auto scaled = ( num * 2000 + den ) / ( 2 * den );
    char buf[ 64 ];
    std::snprintf( buf, sizeof buf, "%s%lld.%03lld", negative ? "-" : "", static_cast<long long>( scaled / 1000 ),
                   static_cast<long long>( scaled % 1000 ) );
    return buf;
}

std::vector<witness_step> render_play( const game_graph& g, const play& p, const lts& spec, const lts& impl )
{
    std::vector<witness_step> out;
    for ( std::size_t k = 0; k < p.edges.size(); ++k ) {
        const auto& l = g.label_of( p.edges[ k ].label );
        out.push_back( { describe( g, p.states[ k ], spec, impl ),
                         l.kind == label_kind::tau ? "tau" : l.kind == label_kind::mask ? "M" : l.name,
                         describe( g, p.states[ k + 1 ], spec, impl ), p.edges[ k ].fault } );
    }
    return out;
}

distance_report distance( const lts& spec, const lts& impl, mode m )
{
    using clock = std::chrono::steady_clock;
    distance_report r;
    r.spec_states = spec.state_count();
    r.impl_states = impl.state_count();

    auto dead = spec.deadlocks();
    if ( !dead.empty() ) {
        std::string list;
        for ( std::size_t k = 0; k < dead.size() && k < 5; ++k )
            list += ( k > 0 ? ", " : "" ) + spec.describe( dead[ k ] );
        if ( dead.size() > 5 )
            list += ", ...";
        r.warnings.push_back( "nominal model has " + std::to_string( dead.size() ) + " deadlock state(s): " + list );
    }
    if ( m == mode::strong && ( has_tau( spec ) || has_tau( impl ) ) )
        r.warnings.push_back( "internal actions are matched as ordinary actions in strong mode; consider --weak" );

    auto t0 = clock::now();
    lts spec_m = augment_mask( spec );
    game_graph g = build( spec_m, impl, m );
    auto t1 = clock::now();
    layer_table layers = solve_layers( g );
    auto t2 = clock::now();

    r.game_states = g.state_count();
    r.game_edges = g.edge_count();
    r.build_ms = std::chrono::duration<double, std::milli>( t1 - t0 ).count();
    r.solve_ms = std::chrono::duration<double, std::milli>( t2 - t1 ).count();
    r.value = value( g, layers );
    if ( layers.budget[ g.initial() ] != infinite )
        r.fault_budget = layers.budget[ g.initial() ];
    r.witness = witness_trace( g, layers );
    if ( r.witness )
        r.witness_steps = render_play( g, *r.witness, spec, impl );
    return r;
}

} // namespace maskdist
