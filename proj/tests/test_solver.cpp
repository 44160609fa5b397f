#include "corpus.hpp"
#include "maskdist/error.hpp"
#include "maskdist/solver.hpp"
#include "oracles.hpp"
#include "random_models.hpp"
#include "running_example.hpp"

#include <doctest.h>

#include <algorithm>

using namespace maskdist;
using namespace maskdist::testing;

namespace
{

struct hand_game
{
    game_graph g;
    label_id a, f, m;

    hand_game()
    {
        a = g.add_label( label::observable( "a" ) );
        f = g.add_label( label::fault( "f" ) );
        m = g.add_label( label::mask() );
    }
    node_id refuter() { return g.add_state( { player::refuter, 0, pending_kind::hash, 0, 0 } ); }
    node_id verifier() { return g.add_state( { player::verifier, 0, pending_kind::spec_move, a, 0 } ); }
    node_id fault_pending() { return g.add_state( { player::verifier, 0, pending_kind::impl_move, f, 0 } ); }
    node_id err() { return g.add_state( game_state::err() ); }
};

} // namespace

TEST_CASE( "direct error: budget 1" )
{
    hand_game h;
    auto r0 = h.refuter();
    auto e = h.err();
    h.g.add_edge( r0, h.a, e );
    h.g.add_edge( e, h.a, e );
    h.g.finalize();

    auto layers = solve_layers( h.g );
    CHECK( layers.budget[ e ] == 1 );
    CHECK( layers.depth[ e ] == 1 );
    CHECK( layers.budget[ r0 ] == 1 );
    CHECK( layers.depth[ r0 ] == 2 );
    CHECK( value( h.g ) == rational( 1 ) );
    CHECK( layers == naive_layers( h.g ) );
}

TEST_CASE( "one masked fault before the error: budget 2" )
{
    hand_game h;
    auto r0 = h.refuter();
    auto v1 = h.fault_pending();
    auto r2 = h.refuter();
    auto e = h.err();
    h.g.add_edge( r0, h.f, v1 );
    h.g.add_edge( v1, h.m, r2 );
    h.g.add_edge( r2, h.a, e );
    h.g.add_edge( e, h.a, e );
    h.g.finalize();

    auto layers = solve_layers( h.g );
    CHECK( layers.budget[ r2 ] == 1 );
    CHECK( layers.depth[ r2 ] == 2 );
    CHECK( layers.budget[ v1 ] == 2 );
    CHECK( layers.depth[ v1 ] == 3 );
    CHECK( layers.budget[ r0 ] == 2 );
    CHECK( layers.depth[ r0 ] == 4 );
    CHECK( value( h.g, layers ) == rational( 1, 2 ) );
    CHECK( layers == naive_layers( h.g ) );

    auto w = witness_trace( h.g, layers );
    REQUIRE( w );
    CHECK( w->states == std::vector<node_id>{ r0, v1, r2, e } );
    CHECK( payoff( *w ) == rational( 1, 2 ) );
}

TEST_CASE( "verifier escapes into a cycle: value 0" )
{
    hand_game h;
    auto r0 = h.refuter();
    auto v1 = h.verifier();
    auto r2 = h.refuter();
    auto e = h.err();
    h.g.add_edge( r0, h.a, v1 );
    h.g.add_edge( v1, h.a, r2 );
    h.g.add_edge( v1, h.a, r0 );
    h.g.add_edge( r2, h.a, e );
    h.g.add_edge( e, h.a, e );
    h.g.finalize();

    auto layers = solve_layers( h.g );
    CHECK( layers.budget[ r0 ] == infinite );
    CHECK( layers.budget[ v1 ] == infinite );
    CHECK( layers.budget[ r2 ] == 1 );
    CHECK( value( h.g, layers ) == rational( 0 ) );
    CHECK_FALSE( witness_trace( h.g, layers ) );
    CHECK( layers == naive_layers( h.g ) );

    auto s = extract_strategies( h.g, layers );
    REQUIRE( s.verifier.defined( v1 ) );
    CHECK( h.g.out( v1 )[ *s.verifier.choice[ v1 ] ].target == r0 );
    CHECK_FALSE( s.refuter.defined( r0 ) );
    CHECK( s.refuter.defined( r2 ) );

    play p{ { r0, v1, r0 }, { h.g.out( r0 )[ 0 ], h.g.out( v1 )[ 1 ] }, true };
    CHECK( payoff( p ) == rational( 0 ) );
}

TEST_CASE( "verifier forced out of every option" )
{
    hand_game h;
    auto r0 = h.refuter();
    auto v1 = h.verifier();
    auto r2 = h.refuter();
    auto r3 = h.refuter();
    auto v4 = h.verifier();
    auto e = h.err();
    h.g.add_edge( r0, h.a, v1 );
    h.g.add_edge( v1, h.a, r2 );
    h.g.add_edge( v1, h.a, r3 );
    h.g.add_edge( r2, h.a, e );
    h.g.add_edge( r3, h.a, v4 );
    h.g.add_edge( v4, h.a, r2 );
    h.g.add_edge( e, h.a, e );
    h.g.finalize();

    auto layers = solve_layers( h.g );
    CHECK( layers.depth[ r2 ] == 2 );
    CHECK( layers.depth[ v4 ] == 3 );
    CHECK( layers.depth[ r3 ] == 4 );
    CHECK( layers.depth[ v1 ] == 5 );
    CHECK( layers.depth[ r0 ] == 6 );
    CHECK( value( h.g, layers ) == rational( 1 ) );
    CHECK( layers == naive_layers( h.g ) );

    // The witness takes the long way through r3.
    auto w = witness_trace( h.g, layers );
    REQUIRE( w );
    CHECK( w->states == std::vector<node_id>{ r0, v1, r3, v4, r2, e } );
}

TEST_CASE( "payoff rejects malformed plays" )
{
    hand_game h;
    auto r0 = h.refuter();
    auto v1 = h.verifier();
    h.g.add_edge( r0, h.a, v1 );
    h.g.add_edge( v1, h.a, r0 );
    h.g.finalize();
    auto e0 = h.g.out( r0 )[ 0 ];
    auto e1 = h.g.out( v1 )[ 0 ];

    CHECK_THROWS_AS( payoff( play{ { r0, v1 }, { e0, e1 }, false } ), malformed_play );
    CHECK_THROWS_AS( payoff( play{ { r0, v1 }, { e0 }, false } ), malformed_play );
    CHECK_THROWS_AS( payoff( play{ { r0, v1 }, { e0 }, true } ), malformed_play );
    CHECK( payoff( play{ { r0, v1, r0 }, { e0, e1 }, true } ) == rational( 0 ) );
}

TEST_CASE( "to_decimal rounds half away from zero" )
{
    CHECK( to_decimal( rational( 0 ) ) == "0.000" );
    CHECK( to_decimal( rational( 1 ) ) == "1.000" );
    CHECK( to_decimal( rational( 1, 3 ) ) == "0.333" );
    CHECK( to_decimal( rational( 2, 3 ) ) == "0.667" );
    CHECK( to_decimal( rational( 1, 8 ) ) == "0.125" );
    CHECK( to_decimal( rational( 1, 16 ) ) == "0.063" );
    CHECK( to_decimal( rational( 1, 2000 ) ) == "0.001" );
    CHECK( to_decimal( rational( 1, 2001 ) ) == "0.000" );
    CHECK( to_decimal( rational( -1, 3 ) ) == "-0.333" );
}

TEST_CASE( "running example distances" )
{
    auto spec = memory_nominal();
    auto r1 = distance( spec, memory_one_fault(), mode::strong );
    CHECK( r1.value == rational( 0 ) );
    CHECK_FALSE( r1.fault_budget );
    CHECK_FALSE( r1.witness );

    auto r2 = distance( spec, memory_two_faults(), mode::strong );
    CHECK( r2.value == rational( 1, 3 ) );
    REQUIRE( r2.fault_budget );
    CHECK( *r2.fault_budget == 3 );
    REQUIRE( r2.witness );
    CHECK( payoff( *r2.witness ) == rational( 1, 3 ) );
    auto faults = std::count_if( r2.witness_steps.begin(), r2.witness_steps.end(),
                                 []( const witness_step& s ) { return s.fault; } );
    CHECK( faults == 2 );
    CHECK( r2.witness_steps.back().to == "Err" );

    for ( auto m : { mode::strong, mode::weak } )
        CHECK( distance( spec, memory_two_faults(), m ).value == rational( 1, 3 ) );
}

TEST_CASE( "nominal deadlocks and strong tau produce warnings" )
{
    lts spec;
    spec.add_state();
    spec.add_state();
    spec.add_transition( 0, label::tau(), 1 );
    auto r = distance( spec, spec, mode::strong );
    CHECK( r.warnings.size() == 2 );
    CHECK( distance( spec, spec, mode::weak ).warnings.size() == 1 );
}

TEST_CASE( "memory cell with three bits: two faults in the witness" )
{
    auto spec = corpus::load_model( MASKDIST_MODELS "/memory/memory_nominal.gcl", 1u << 20 );
    auto impl = corpus::load_model( MASKDIST_MODELS "/memory/memory_3.gcl", 1u << 20 );
    auto r = distance( spec, impl, mode::strong );
    CHECK( r.value == rational( 1, 3 ) );
    REQUIRE( r.witness );
    CHECK( payoff( *r.witness ) == r.value );
    auto faults = std::count_if( r.witness->edges.begin(), r.witness->edges.end(),
                                 []( const game_edge& e ) { return e.fault; } );
    CHECK( faults == 2 );
}

TEST_CASE( "random games: layered solver matches the literal definition" )
{
    rng r{ 2024 };
    for ( int i = 0; i < 150; ++i ) {
        auto g = random_game( r, { 60, 0.3, 3 } );
        auto fast = solve_layers( g );
        auto slow = naive_layers( g );
        CHECK( fast == slow );
        if ( fast != slow )
            break;
    }
}

TEST_CASE( "random games: witness payoff equals value, verifier lassos pay 0" )
{
    rng r{ 99 };
    for ( int i = 0; i < 200; ++i ) {
        auto g = random_game( r, { 80, 0.3, 3 } );
        auto layers = solve_layers( g );
        auto v = value( g, layers );
        auto w = witness_trace( g, layers );
        CHECK( bool( w ) == ( v != rational( 0 ) ) );
        if ( w ) {
            CHECK( payoff( *w ) == v );
            auto faults = std::count_if( w->edges.begin(), w->edges.end(), []( const game_edge& e ) { return e.fault; } );
            CHECK( std::uint32_t( faults ) + 1 == layers.budget[ g.initial() ] );
        }
    }
}
