#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace
{

struct outcome
{
    int status = -1;
    std::string out;
};

// Runs the tool with `args`, capturing standard output only.
outcome run( const std::string& args, const std::string& env = {} )
{
    std::string cmd = env + ( env.empty() ? "" : " " ) + MASKDIST_CLI + std::string( " " ) + args + " 2>/dev/null";
    outcome o;
    FILE* pipe = popen( cmd.c_str(), "r" );
    REQUIRE( pipe != nullptr );
    std::array<char, 4096> buf{};
    while ( auto n = std::fread( buf.data(), 1, buf.size(), pipe ) )
        o.out.append( buf.data(), n );
    int raw = pclose( pipe );
    o.status = WIFEXITED( raw ) ? WEXITSTATUS( raw ) : -1;
    return o;
}

const std::string models = MASKDIST_MODELS;
const std::string memory = " --spec " + models + "/memory/memory_nominal.gcl --impl " + models + "/memory/memory_3.gcl";

} // namespace

TEST_CASE( "dist" )
{
    auto o = run( "dist" + memory );
    CHECK( o.status == 0 );
    CHECK( o.out == "masking distance = 1/3 (0.333)\n" );

    o = run( "dist --format machine" + memory );
    CHECK( o.status == 0 );
    CHECK( o.out.find( "\"value_den\": 3" ) != std::string::npos );

    o = run( "dist --trace" + memory );
    CHECK( o.out.find( "[fault]" ) != std::string::npos );
    CHECK( o.out.find( "--> Err" ) != std::string::npos );
}

TEST_CASE( "check" )
{
    auto o = run( "check" + memory );
    CHECK( o.status == 2 );
    CHECK( o.out.rfind( "MASKING: no", 0 ) == 0 );

    // The implementation checked against itself, faults removed, is masking.
    std::string self = " --impl " + models + "/memory/memory_nominal.gcl --derive-nominal";
    o = run( "check --relation" + self );
    CHECK( o.status == 0 );
    CHECK( o.out.rfind( "MASKING: yes\n", 0 ) == 0 );
    CHECK( o.out.find( " ~ " ) != std::string::npos );
}

TEST_CASE( "weak mode" )
{
    auto o = run( "dist --weak --spec " + models + "/brp/brp_1_1_nominal.gcl --impl " + models + "/brp/brp_1_1.gcl" );
    CHECK( o.status == 0 );
    CHECK( o.out == "masking distance = 1/3 (0.333)\n" );
}

TEST_CASE( "usage and load failures" )
{
    CHECK( run( "" ).status == 1 );
    CHECK( run( "dist --impl " + models + "/memory/memory_3.gcl" ).status == 1 );
    CHECK( run( "dist --spec " + models + "/memory/memory_nominal.gcl --impl /nonexistent.gcl" ).status == 1 );
    CHECK( run( "dist --derive-nominal --impl " + models + "/byzantine/byzantine_listing.gcl" ).status == 1 );
}

TEST_CASE( "state cap" )
{
    CHECK( run( "dist --state-cap 2" + memory ).status == 3 );
    CHECK( run( "dist" + memory, "MASKDIST_STATE_CAP=2" ).status == 3 );
    CHECK( run( "dist" + memory, "MASKDIST_STATE_CAP=100000" ).status == 0 );
}

TEST_CASE( "stats and simulate" )
{
    auto o = run( "stats" + memory );
    CHECK( o.status == 0 );
    CHECK( o.out.find( "game: " ) != std::string::npos );

    o = run( "simulate --impl " + models + "/memory/memory_3.gcl < /dev/null" );
    CHECK( o.status == 0 );
    CHECK( o.out.rfind( "state ", 0 ) == 0 );
}

TEST_CASE( "bench" )
{
    auto o = run( "bench --corpus " + models + " --fixtures " + models + "/fixtures.txt" );
    CHECK( o.out.find( "memory" ) != std::string::npos );
}
