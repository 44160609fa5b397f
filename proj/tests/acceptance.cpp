// Acceptance run: one PASS/FAIL line per check, non-zero exit when any
// check fails.

#include "corpus.hpp"
#include "oracles.hpp"
#include "random_models.hpp"
#include "running_example.hpp"

#include "maskdist/gcl.hpp"
#include "maskdist/relations.hpp"
#include "maskdist/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace maskdist;
using namespace maskdist::testing;
namespace fs = std::filesystem;

namespace
{

struct check_result
{
    bool pass = true;
    std::string detail;
    std::vector<std::string> notes; // printed under the line
};

std::string mode_name( mode m )
{
    return m == mode::strong ? "strong" : "weak";
}

std::string fraction( const rational& r )
{
    return std::to_string( r.numerator() ) + "/" + std::to_string( r.denominator() );
}

std::size_t fault_count( const play& p )
{
    return std::count_if( p.edges.begin(), p.edges.end(), []( const game_edge& e ) { return e.fault; } );
}

constexpr std::size_t state_cap = std::size_t{ 1 } << 22;

check_result corpus_rows( const fs::path& models, const std::string& fixtures, double seconds,
                          std::vector<corpus::row_result>& keep )
{
    check_result c;
    auto rows = corpus::read_fixtures( models / fixtures );
    auto t0 = std::chrono::steady_clock::now();
    keep = corpus::evaluate( models, rows, 0, state_cap );
    double elapsed = std::chrono::duration<double>( std::chrono::steady_clock::now() - t0 ).count();
    std::size_t passed = 0;
    for ( const auto& r : keep ) {
        if ( r.pass ) {
            ++passed;
            continue;
        }
        c.pass = false;
        std::string name = r.row.model + "_" + r.row.params + " (" + mode_name( r.row.m ) + ")";
        c.notes.push_back( name + ": expected " + fraction( r.row.expected ) + ", got " +
                           ( r.error.empty() ? fraction( r.report.value ) : "error: " + r.error ) );
    }
    std::ostringstream d;
    d.precision( 2 );
    d << std::fixed << passed << "/" << keep.size() << " rows match, " << elapsed << " s";
    if ( elapsed > seconds ) {
        c.pass = false;
        d << " (limit " << seconds << " s)";
    }
    c.detail = d.str();
    return c;
}

check_result running_example()
{
    check_result c;
    auto spec = memory_nominal();
    auto one = memory_one_fault();
    auto two = memory_two_faults();

    auto d1 = distance( spec, one, mode::strong );
    if ( d1.value != rational( 0 ) ) {
        c.pass = false;
        c.notes.push_back( "one-fault implementation: distance " + fraction( d1.value ) );
    }
    auto rel = masking_sim( spec, one, mode::strong );
    std::vector<std::pair<state_id, state_id>> want{ { 0, 0 }, { 0, 2 }, { 1, 1 } };
    if ( !rel || rel->pairs() != want ) {
        c.pass = false;
        c.notes.push_back( "masking relation differs from {(s0,t0), (s1,t1), (s0,t2)}" );
    }
    auto d2 = distance( spec, two, mode::strong );
    std::size_t faults = d2.witness ? fault_count( *d2.witness ) : 0;
    if ( d2.value != rational( 1, 3 ) || !d2.witness || faults != 2 ) {
        c.pass = false;
        c.notes.push_back( "two-fault implementation: distance " + fraction( d2.value ) + ", witness faults " +
                           std::to_string( faults ) );
    }
    c.detail = "d(A') = " + fraction( d1.value ) + ", relation " + std::to_string( rel ? rel->pairs().size() : 0 ) +
               " pairs, d(A'') = " + fraction( d2.value ) + " with " + std::to_string( faults ) + " faults";
    return c;
}

check_result zero_iff_masking( rng& r, std::size_t per_mode )
{
    check_result c;
    std::size_t masking = 0, total = 0, bad = 0;
    for ( auto m : { mode::strong, mode::weak } )
        for ( std::size_t i = 0; i < per_mode; ++i ) {
            auto [ spec, impl ] = random_pair( r, m );
            bool zero = distance( spec, impl, m ).value == rational( 0 );
            bool sim = masking_sim( spec, impl, m ).has_value();
            ++total;
            masking += sim;
            if ( zero != sim ) {
                ++bad;
                if ( c.notes.size() < 3 )
                    c.notes.push_back( mode_name( m ) + " pair " + std::to_string( i ) + ": value " +
                                       ( zero ? "0" : "> 0" ) + ", relation " + ( sim ? "exists" : "absent" ) );
            }
        }
    c.pass = bad == 0;
    c.detail = std::to_string( total ) + " pairs (" + std::to_string( masking ) + " masking), " + std::to_string( bad ) +
               " disagreements";
    return c;
}

check_result layers_match_definition( rng& r, std::size_t count )
{
    check_result c;
    std::size_t bad = 0, largest = 0;
    for ( std::size_t i = 0; i < count; ++i ) {
        auto g = random_game( r, { 200, 0.3, 3 } );
        largest = std::max( largest, g.state_count() );
        if ( solve_layers( g ) != naive_layers( g ) )
            ++bad;
    }
    c.pass = bad == 0;
    c.detail = std::to_string( count ) + " games up to " + std::to_string( largest ) + " states, " +
               std::to_string( bad ) + " disagreements";
    return c;
}

check_result triangle( rng& r, std::size_t count )
{
    check_result c;
    std::size_t bad = 0, nonzero = 0;
    for ( std::size_t i = 0; i < count; ++i ) {
        mode m = i % 2 ? mode::weak : mode::strong;
        lts_shape shape;
        shape.max_states = 3;
        shape.observables = 2;
        shape.tau = m == mode::weak && i % 4 == 1;
        shape.deadlock_free = true;
        lts a = random_lts( r, shape );

        derive_shape first;
        first.faults = 1;
        first.first_fault = 0;
        first.max_states = 6;
        lts a1 = derive_impl( r, a, first );
        derive_shape second = first;
        second.first_fault = 1;
        second.max_states = 10;
        lts a2 = derive_impl( r, a1, second );

        auto d02 = distance( a, a2, m ).value;
        auto d01 = distance( a, a1, m ).value;
        auto d12 = distance( expose_faults( a1, { "f" } ), expose_faults( a2, { "f" } ), m ).value;
        nonzero += d02 != rational( 0 );
        if ( d02 > d01 + d12 ) {
            ++bad;
            if ( c.notes.size() < 3 )
                c.notes.push_back( "triple " + std::to_string( i ) + " (" + mode_name( m ) + "): " + fraction( d02 ) +
                                   " > " + fraction( d01 ) + " + " + fraction( d12 ) );
        }
    }
    c.pass = bad == 0;
    c.detail = std::to_string( count ) + " triples (" + std::to_string( nonzero ) + " with d(A,A'') > 0), " +
               std::to_string( bad ) + " violations";
    return c;
}

check_result witness_payoffs( rng& r, const std::vector<corpus::row_result>& rows, std::size_t lassos )
{
    check_result c;
    std::size_t witnesses = 0;
    auto check_report = [ & ]( const std::string& name, const distance_report& rep ) {
        if ( rep.value == rational( 0 ) )
            return;
        ++witnesses;
        if ( !rep.witness || payoff( *rep.witness ) != rep.value ) {
            c.pass = false;
            c.notes.push_back( name + ": witness payoff " +
                               ( rep.witness ? fraction( payoff( *rep.witness ) ) : std::string( "missing" ) ) +
                               ", value " + fraction( rep.value ) );
        }
    };
    for ( const auto& row : rows )
        if ( row.error.empty() )
            check_report( row.row.model + "_" + row.row.params, row.report );
    check_report( "running example", distance( memory_nominal(), memory_two_faults(), mode::strong ) );

    std::size_t played = 0, attempts = 0;
    std::uniform_int_distribution<std::size_t> any;
    while ( played < lassos && attempts < 100 * lassos ) {
        ++attempts;
        mode m = attempts % 2 ? mode::strong : mode::weak;
        auto [ spec, impl ] = random_pair( r, m );
        auto g = build( augment_mask( spec ), impl, m );
        auto layers = solve_layers( g );
        if ( layers.budget[ g.initial() ] != infinite )
            continue;
        auto verifier = extract_strategies( g, layers ).verifier;
        play p;
        std::vector<bool> seen( g.state_count() );
        node_id v = g.initial();
        p.states.push_back( v );
        seen[ v ] = true;
        bool conforming = true;
        while ( true ) {
            auto out = g.out( v );
            std::size_t k = 0;
            if ( g.turn( v ) == player::refuter ) {
                k = any( r ) % out.size();
            } else if ( verifier.defined( v ) ) {
                k = *verifier.choice[ v ];
            } else {
                conforming = false;
                break;
            }
            p.edges.push_back( out[ k ] );
            v = out[ k ].target;
            p.states.push_back( v );
            if ( seen[ v ] )
                break;
            seen[ v ] = true;
        }
        p.lasso = true;
        ++played;
        bool zero = false;
        try {
            zero = conforming && payoff( p ) == rational( 0 );
        } catch ( const std::exception& ) {
        }
        if ( !zero ) {
            c.pass = false;
            if ( c.notes.size() < 5 )
                c.notes.push_back( "lasso " + std::to_string( played ) + " of length " +
                                   std::to_string( p.edges.size() ) + " does not pay 0" );
        }
    }
    if ( played < lassos ) {
        c.pass = false;
        c.notes.push_back( "only " + std::to_string( played ) + " value-0 games found" );
    }
    c.detail = std::to_string( witnesses ) + " witnesses, " + std::to_string( played ) + " verifier lassos";
    return c;
}

check_result one_iff_not_bisimilar( rng& r, const fs::path& models, const std::vector<corpus::row_result>& rows,
                                    std::size_t pairs )
{
    check_result c;
    std::size_t ones = 0, total = 0;
    auto check_pair = [ & ]( const std::string& name, const lts& spec, const lts& impl, mode m, const rational& v ) {
        ++total;
        bool one = v == rational( 1 );
        ones += one;
        bool bisim = bisimilar( spec, restrict( impl, impl.fault_set() ), m );
        if ( one == bisim ) {
            c.pass = false;
            if ( c.notes.size() < 5 )
                c.notes.push_back( name + ": value " + fraction( v ) + ", " + ( bisim ? "bisimilar" : "not bisimilar" ) );
        }
    };
    for ( const auto& row : rows ) {
        if ( !row.error.empty() )
            continue;
        auto paths = corpus::locate( models, row.row );
        auto spec = corpus::load_model( paths.spec, state_cap );
        auto impl = corpus::load_model( paths.impl, state_cap );
        check_pair( row.row.model + "_" + row.row.params, spec, impl, row.row.m, row.report.value );
    }
    for ( std::size_t i = 0; i < pairs; ++i ) {
        mode m = i % 2 ? mode::weak : mode::strong;
        auto [ spec, impl ] = random_pair( r, m );
        check_pair( "random pair " + std::to_string( i ), spec, impl, m, distance( spec, impl, m ).value );
    }
    c.detail = std::to_string( total ) + " pairs (" + std::to_string( ones ) + " with value 1)";
    return c;
}

std::string slurp( const fs::path& p )
{
    std::ifstream in( p );
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

check_result round_trips( const fs::path& models )
{
    check_result c;
    std::size_t files = 0;
    for ( const auto& entry : fs::recursive_directory_iterator( models ) ) {
        if ( entry.path().extension() != ".gcl" )
            continue;
        ++files;
        auto name = fs::relative( entry.path(), models ).string();
        try {
            auto p = gcl::parse( slurp( entry.path() ) );
            auto printed = gcl::pretty_print( p );
            auto q = gcl::parse( printed );
            if ( !gcl::structurally_equal( p, q ) || gcl::pretty_print( q ) != printed ) {
                c.pass = false;
                c.notes.push_back( name + ": printed program parses differently" );
            }
        } catch ( const std::exception& e ) {
            c.pass = false;
            c.notes.push_back( name + ": " + e.what() );
        }
    }
    if ( files == 0 ) {
        c.pass = false;
        c.notes.push_back( "no model files under " + models.string() );
    }
    c.detail = std::to_string( files ) + " model files";
    return c;
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Acceptance checks" };
    std::string models_dir;
    bool extended = false;
    std::string only;
    std::uint64_t seed = 20240611;
    app.add_option( "--models", models_dir, "Model corpus" )->required()->check( CLI::ExistingDirectory );
    app.add_flag( "--extended", extended, "Also run the larger corpus rows" );
    app.add_option( "--only", only, "Run a single check by key" );
    app.add_option( "--seed", seed, "Seed for the random suites" );
    CLI11_PARSE( app, argc, argv );
    fs::path models = models_dir;

    rng r{ seed };
    std::vector<corpus::row_result> desk, larger;
    // Rows for the witness and bisimilarity checks when the corpus checks are skipped.
    auto corpus_results = [ & ] {
        if ( desk.empty() )
            desk = corpus::evaluate( models, corpus::read_fixtures( models / "fixtures.txt" ), 0, state_cap );
        auto rows = desk;
        rows.insert( rows.end(), larger.begin(), larger.end() );
        return rows;
    };

    struct check
    {
        std::string key;
        std::string title;
        std::function<check_result()> run;
    };
    std::vector<check> checks{
        { "desk", "desk-scale corpus values within 60 s",
          [ & ] { return corpus_rows( models, "fixtures.txt", 60.0, desk ); } },
        { "extended", "extended corpus values",
          [ & ] { return corpus_rows( models, "fixtures_extended.txt", 3600.0, larger ); } },
        { "running_example", "running example", [] { return running_example(); } },
        { "zero_iff_masking", "value 0 iff masking simulation, both modes",
          [ & ] { return zero_iff_masking( r, 1000 ); } },
        { "layers", "layered attractor equals the literal layer definition",
          [ & ] { return layers_match_definition( r, 500 ); } },
        { "triangle", "triangle inequality", [ & ] { return triangle( r, 500 ); } },
        { "payoffs", "witness payoffs", [ & ] { return witness_payoffs( r, corpus_results(), 100 ); } },
        { "one_iff_not_bisimilar", "value 1 iff not bisimilar without faults",
          [ & ] { return one_iff_not_bisimilar( r, models, corpus_results(), 200 ); } },
        { "round_trip", "parse after pretty-print is the identity", [ & ] { return round_trips( models ); } },
    };

    bool all = true, ran = false;
    for ( const auto& c : checks ) {
        if ( !only.empty() && c.key != only )
            continue;
        if ( c.key == "extended" && !extended && only.empty() ) {
            std::cout << "SKIP " << c.title << ": run with --extended\n";
            continue;
        }
        ran = true;
        check_result res;
        try {
            res = c.run();
        } catch ( const std::exception& e ) {
            res = { false, std::string( "exception: " ) + e.what(), {} };
        }
        all = all && res.pass;
        std::cout << ( res.pass ? "PASS " : "FAIL " ) << c.title << ": " << res.detail << '\n';
        for ( const auto& n : res.notes )
            std::cout << "    " << n << '\n';
        std::cout.flush();
    }
    if ( !ran ) {
        std::cerr << "no check named " << only << '\n';
        return 1;
    }
    if ( only.empty() )
        std::cout << ( all ? "all checks passed" : "some checks failed" ) << '\n';
    return all ? 0 : 1;
}
