// maskdist: masking distance between a nominal model and a fault-tolerant
// implementation, both written in the guarded-command language.

#include "corpus.hpp"

#include "maskdist/gcl.hpp"
#include "maskdist/lts.hpp"
#include "maskdist/relations.hpp"
#include "maskdist/report.hpp"
#include "maskdist/solver.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace maskdist;

namespace
{

enum exit_code
{
    ok = 0,
    failure = 1,
    not_masking = 2,
    cap_exceeded = 3,
};

struct run_config
{
    std::string spec_path;
    std::string impl_path;
    bool weak = false;
    bool derive_nominal = false;
    std::string format = "text";
    std::size_t state_cap = compile_options{}.state_cap;
    bool trace = false;
};

lts load( const std::string& path, std::size_t cap )
{
    return corpus::load_model( path, cap );
}

struct models
{
    lts spec;
    lts impl;
};

models load_models( const run_config& c )
{
    models m;
    m.impl = load( c.impl_path, c.state_cap );
    m.spec = c.derive_nominal ? restrict( m.impl, m.impl.fault_set() ) : load( c.spec_path, c.state_cap );
    return m;
}

mode mode_of( const run_config& c )
{
    return c.weak ? mode::weak : mode::strong;
}

void print_warnings( const distance_report& r )
{
    for ( const auto& w : r.warnings )
        std::cerr << "warning: " << w << '\n';
}

int run_dist( const run_config& c )
{
    auto m = load_models( c );
    auto r = distance( m.spec, m.impl, mode_of( c ) );
    print_warnings( r );
    if ( c.format == "machine" ) {
        std::cout << render_machine( r ) << '\n';
    } else {
        std::cout << render_text( r ) << '\n';
        if ( c.trace )
            std::cout << render_trace( r );
    }
    return ok;
}

int run_check( const run_config& c )
{
    auto m = load_models( c );
    auto r = distance( m.spec, m.impl, mode_of( c ) );
    print_warnings( r );
    if ( r.value == rational( 0 ) ) {
        std::cout << "MASKING: yes\n";
        if ( auto rel = masking_sim( m.spec, m.impl, mode_of( c ) ); rel && c.trace )
            std::cout << dump( *rel, m.spec, m.impl );
        return ok;
    }
    std::cout << "MASKING: no (" << render_text( r ) << ")\n";
    return not_masking;
}

int run_trace( const run_config& c )
{
    auto m = load_models( c );
    auto r = distance( m.spec, m.impl, mode_of( c ) );
    print_warnings( r );
    std::cout << render_text( r ) << '\n' << render_trace( r );
    return ok;
}

int run_stats( const run_config& c )
{
    auto m = load_models( c );
    auto describe_lts = [ & ]( const char* name, const lts& l ) {
        std::size_t faults = 0;
        for ( const auto& t : l.transitions() )
            faults += l.label_of( t.label ).is_fault() ? 1 : 0;
        std::cout << name << ": " << l.state_count() << " states, " << l.transitions().size() << " transitions ("
                  << faults << " faulty), " << l.variables().size() << " variables, " << l.deadlocks().size()
                  << " deadlocks\n";
    };
    describe_lts( "nominal", m.spec );
    describe_lts( "implementation", m.impl );
    auto r = distance( m.spec, m.impl, mode_of( c ) );
    std::cout << "game: " << r.game_states << " states, " << r.game_edges << " edges\n";
    std::cout << "build: " << r.build_ms << " ms, solve: " << r.solve_ms << " ms\n";
    std::cout << render_text( r ) << '\n';
    return ok;
}

// Numbered choices from standard input; `q` or end of input stops.
int run_simulate( const run_config& c, std::istream& in, std::ostream& out )
{
    lts impl = load( c.impl_path, c.state_cap );
    if ( c.spec_path.empty() && !c.derive_nominal ) {
        adjacency adj( impl.state_count(), impl.transitions() );
        state_id s = 0;
        while ( true ) {
            out << "state " << impl.describe( s ) << '\n';
            auto moves = adj.out( s );
            if ( moves.empty() ) {
                out << "deadlock\n";
                return ok;
            }
            for ( std::size_t k = 0; k < moves.size(); ++k )
                out << "  [" << k << "] " << to_string( impl.label_of( moves[ k ].first ) ) << " -> "
                    << impl.describe( moves[ k ].second ) << '\n';
            out << "> " << std::flush;
            std::string line;
            if ( !std::getline( in, line ) || line == "q" )
                return ok;
            std::size_t k = 0;
            try {
                k = std::stoul( line );
            } catch ( const std::exception& ) {
                k = moves.size();
            }
            if ( k >= moves.size() ) {
                out << "no such choice\n";
                continue;
            }
            s = moves[ k ].second;
        }
    }

    lts spec = c.derive_nominal ? restrict( impl, impl.fault_set() ) : load( c.spec_path, c.state_cap );
    lts spec_m = augment_mask( spec );
    game_graph g = build( spec_m, impl, mode_of( c ) );
    auto layers = solve_layers( g );
    node_id v = g.initial();
    std::size_t faults = 0;
    while ( true ) {
        out << "state " << describe( g, v, spec, impl );
        if ( layers.budget[ v ] != infinite )
            out << " (refuter wins within budget " << layers.budget[ v ] << ")";
        out << '\n';
        if ( g.turn( v ) == player::err ) {
            out << "error state reached after " << faults << " fault(s); payoff 1/" << faults + 1 << '\n';
            return ok;
        }
        auto moves = g.out( v );
        for ( std::size_t k = 0; k < moves.size(); ++k )
            out << "  [" << k << "] " << to_string( g.label_of( moves[ k ].label ) ) << ( moves[ k ].fault ? " [fault]" : "" )
                << " -> " << describe( g, moves[ k ].target, spec, impl ) << '\n';
        out << "> " << std::flush;
        std::string line;
        if ( !std::getline( in, line ) || line == "q" )
            return ok;
        std::size_t k = 0;
        try {
            k = std::stoul( line );
        } catch ( const std::exception& ) {
            k = moves.size();
        }
        if ( k >= moves.size() ) {
            out << "no such choice\n";
            continue;
        }
        faults += moves[ k ].fault ? 1 : 0;
        v = moves[ k ].target;
    }
}

void add_model_options( CLI::App* sub, run_config& c, bool spec_required )
{
    auto* spec = sub->add_option( "--spec", c.spec_path, "Nominal model" )->check( CLI::ExistingFile );
    sub->add_option( "--impl", c.impl_path, "Fault-tolerant implementation" )->required()->check( CLI::ExistingFile );
    auto* derive = sub->add_flag( "--derive-nominal", c.derive_nominal,
                                  "Use the implementation without its faulty actions as the nominal model" );
    spec->excludes( derive );
    derive->excludes( spec );
    sub->add_flag( "--weak", c.weak, "Abstract from internal actions" );
    sub->add_option( "--state-cap", c.state_cap, "Maximum number of reachable states per model" );
    if ( spec_required )
        sub->callback( [ &c, sub ]() {
            if ( c.spec_path.empty() && !c.derive_nominal )
                throw CLI::ValidationError( sub->get_name(), "either --spec or --derive-nominal is required" );
        } );
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Masking fault-tolerance distance between guarded-command models" };
    app.require_subcommand( 1 );

    run_config c;
    if ( const char* cap = std::getenv( "MASKDIST_STATE_CAP" ) )
        c.state_cap = std::strtoull( cap, nullptr, 10 );

    auto* dist = app.add_subcommand( "dist", "Print the masking distance" );
    add_model_options( dist, c, true );
    dist->add_option( "--format", c.format, "Output format" )->check( CLI::IsMember( { "text", "machine" } ) );
    dist->add_flag( "--trace", c.trace, "Also print a trace to the error state" );

    auto* check = app.add_subcommand( "check", "Decide masking fault-tolerance; exit status 2 when not masking" );
    add_model_options( check, c, true );
    check->add_flag( "--relation", c.trace, "Print the masking relation when there is one" );

    auto* trace = app.add_subcommand( "trace", "Print a trace to the error state" );
    add_model_options( trace, c, true );

    auto* simulate = app.add_subcommand( "simulate", "Step through the implementation, or the game when a nominal model is given" );
    add_model_options( simulate, c, false );

    auto* stats = app.add_subcommand( "stats", "Model and game sizes" );
    add_model_options( stats, c, true );

    bench_config bc;
    auto* bench = app.add_subcommand( "bench", "Run the corpus against expected distances" );
    bench->add_option( "--corpus", bc.corpus, "Corpus directory" )->required()->check( CLI::ExistingDirectory );
    bench->add_option( "--fixtures", bc.fixtures, "Fixture file" )->required()->check( CLI::ExistingFile );
    bench->add_option( "--threads", bc.threads, "Worker threads" );
    bench->add_option( "--state-cap", bc.state_cap, "Maximum number of reachable states per model" );
    bench->add_flag( "--trace", bc.trace, "Print the witness of every row" );

    try {
        app.parse( argc, argv );
    } catch ( const CLI::ParseError& e ) {
        return app.exit( e ) == 0 ? ok : failure;
    }

    try {
        if ( *dist )
            return run_dist( c );
        if ( *check )
            return run_check( c );
        if ( *trace )
            return run_trace( c );
        if ( *simulate )
            return run_simulate( c, std::cin, std::cout );
        if ( *stats )
            return run_stats( c );
        if ( *bench )
            return run_bench( bc, std::cout ) ? ok : failure;
    } catch ( const state_explosion& e ) {
        std::cerr << "error: " << e.what() << '\n';
        return cap_exceeded;
    } catch ( const std::exception& e ) {
        std::cerr << e.what() << '\n';
        return failure;
    }
    return failure;
}
