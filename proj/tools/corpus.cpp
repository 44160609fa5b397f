#include "corpus.hpp"

#include "maskdist/gcl.hpp"
#include "maskdist/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace maskdist::corpus
{

lts load_model( const std::filesystem::path& path, std::size_t state_cap )
{
    std::ifstream in( path );
    if ( !in )
        throw load_error( path.string() + ": cannot open file" );
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return compile( gcl::parse( buf.str() ), { state_cap } );
    } catch ( const parse_error& e ) {
        throw load_error( path.string() + ":" + e.what() );
    } catch ( const resolve_error& e ) {
        throw load_error( path.string() + ":" + e.what() );
    } catch ( const initial_not_unique& e ) {
        throw load_error( path.string() + ": " + e.what() );
    }
}

namespace
{

std::vector<std::string> split( const std::string& s, char sep )
{
    std::vector<std::string> out;
    std::stringstream in( s );
    std::string item;
    while ( std::getline( in, item, sep ) )
        out.push_back( item );
    if ( !s.empty() && s.back() == sep )
        out.emplace_back();
    return out;
}

std::string trim( const std::string& s )
{
    auto b = s.find_first_not_of( " \t\r" );
    if ( b == std::string::npos )
        return {};
    auto e = s.find_last_not_of( " \t\r" );
    return s.substr( b, e - b + 1 );
}

} // namespace

std::vector<fixture_row> parse_fixtures( std::istream& in )
{
    std::vector<fixture_row> rows;
    std::string line;
    int number = 0;
    while ( std::getline( in, line ) ) {
        ++number;
        if ( auto hash = line.find( '#' ); hash != std::string::npos )
            line.erase( hash );
        line = trim( line );
        if ( line.empty() )
            continue;
        auto fail = [ & ]( const std::string& what ) {
            return error( "fixtures:" + std::to_string( number ) + ": " + what );
        };
        auto fields = split( line, ';' );
        if ( fields.size() != 4 )
            throw fail( "expected `model;params;mode;num/den`" );
        fixture_row row;
        row.model = trim( fields[ 0 ] );
        row.params = trim( fields[ 1 ] );
        row.line = number;
        auto m = trim( fields[ 2 ] );
        if ( m == "strong" )
            row.m = mode::strong;
        else if ( m == "weak" )
            row.m = mode::weak;
        else
            throw fail( "mode must be `strong` or `weak`" );
        auto frac = split( trim( fields[ 3 ] ), '/' );
        try {
            if ( frac.size() != 2 )
                throw std::invalid_argument( "fraction" );
            std::size_t used = 0;
            auto num = std::stoll( frac[ 0 ], &used );
            if ( used != frac[ 0 ].size() )
                throw std::invalid_argument( "numerator" );
            auto den = std::stoll( frac[ 1 ], &used );
            if ( used != frac[ 1 ].size() || den <= 0 )
                throw std::invalid_argument( "denominator" );
            row.expected = rational( num, den );
        } catch ( const std::logic_error& ) {
            throw fail( "expected value must read num/den" );
        }
        if ( row.model.empty() )
            throw fail( "missing model name" );
        rows.push_back( row );
    }
    return rows;
}

std::vector<fixture_row> read_fixtures( const std::filesystem::path& path )
{
    std::ifstream in( path );
    if ( !in )
        throw error( path.string() + ": cannot open file" );
    return parse_fixtures( in );
}

row_paths locate( const std::filesystem::path& corpus, const fixture_row& row )
{
    auto dir = corpus / row.model;
    std::string stem = row.model + ( row.params.empty() ? "" : "_" + row.params );
    row_paths p;
    p.impl = dir / ( stem + ".gcl" );
    if ( !std::filesystem::exists( p.impl ) )
        throw error( "missing model file " + p.impl.string() );
    while ( true ) {
        auto candidate = dir / ( stem + "_nominal.gcl" );
        if ( std::filesystem::exists( candidate ) ) {
            p.spec = candidate;
            return p;
        }
        auto cut = stem.rfind( '_' );
        if ( cut == std::string::npos || stem.size() <= row.model.size() )
            break;
        stem.erase( cut );
    }
    throw error( "no nominal model for " + p.impl.string() );
}

std::vector<row_result> evaluate( const std::filesystem::path& corpus, const std::vector<fixture_row>& rows,
                                  unsigned threads, std::size_t state_cap )
{
    std::vector<row_result> results( rows.size() );
    std::atomic<std::size_t> next{ 0 };
    auto worker = [ & ]() {
        for ( std::size_t k = next++; k < rows.size(); k = next++ ) {
            auto& r = results[ k ];
            r.row = rows[ k ];
            auto start = std::chrono::steady_clock::now();
            try {
                auto paths = locate( corpus, rows[ k ] );
                lts impl = load_model( paths.impl, state_cap );
                lts spec = load_model( paths.spec, state_cap );
                r.report = distance( spec, impl, rows[ k ].m );
                r.pass = r.report.value == rows[ k ].expected;
            } catch ( const std::exception& e ) {
                r.error = e.what();
            }
            r.wall_ms =
                std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - start ).count();
        }
    };
    if ( threads == 0 )
        threads = std::max( 1u, std::thread::hardware_concurrency() );
    threads = static_cast<unsigned>( std::min<std::size_t>( threads, std::max<std::size_t>( rows.size(), 1 ) ) );
    std::vector<std::thread> pool;
    for ( unsigned t = 1; t < threads; ++t )
        pool.emplace_back( worker );
    worker();
    for ( auto& t : pool )
        t.join();
    return results;
}

} // namespace maskdist::corpus

bool run_bench( const bench_config& c, std::ostream& out )
{
    using namespace maskdist;
    auto rows = corpus::read_fixtures( c.fixtures );
    auto results = corpus::evaluate( c.corpus, rows, c.threads, c.state_cap );
    std::size_t failed = 0;
    for ( const auto& r : results ) {
        auto name = r.row.model + ( r.row.params.empty() ? "" : " " + r.row.params );
        auto expected = std::to_string( r.row.expected.numerator() ) + "/" +
                        std::to_string( r.row.expected.denominator() );
        out << ( r.pass ? "PASS " : "FAIL " ) << std::left << std::setw( 22 ) << name << ' '
            << ( r.row.m == mode::weak ? "weak  " : "strong" ) << " expected " << expected;
        if ( r.error.empty() ) {
            out << " got " << r.report.value.numerator() << '/' << r.report.value.denominator() << " game "
                << r.report.game_states << " states " << std::fixed << std::setprecision( 1 ) << r.wall_ms << " ms";
        } else {
            out << " error: " << r.error;
        }
        out << '\n';
        if ( c.trace && !r.report.witness_steps.empty() )
            out << render_trace( r.report );
        failed += r.pass ? 0 : 1;
    }
    out << results.size() - failed << '/' << results.size() << " rows match\n";
    return failed == 0;
}
