#pragma once

// Model loading and the fixture-driven corpus runner shared by the command
// line tool and the acceptance suite.

#include "maskdist/lts.hpp"
#include "maskdist/solver.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace maskdist::corpus
{

// Diagnostic already prefixed with the file name.
struct load_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Parses and compiles a model file. state_explosion passes through.
lts load_model( const std::filesystem::path& path, std::size_t state_cap );

// One line `model;params;mode;num/den`; `#` starts a comment.
struct fixture_row
{
    std::string model;
    std::string params;
    mode m = mode::strong;
    rational expected;
    int line = 0;
};

std::vector<fixture_row> parse_fixtures( std::istream& in );
std::vector<fixture_row> read_fixtures( const std::filesystem::path& path );

// impl: <corpus>/<model>/<model>_<params>.gcl. spec: the nominal model with
// the longest matching prefix, dropping `_segment`s from the parameters.
struct row_paths
{
    std::filesystem::path spec;
    std::filesystem::path impl;
};

row_paths locate( const std::filesystem::path& corpus, const fixture_row& row );

struct row_result
{
    fixture_row row;
    bool pass = false;
    std::string error; // set when the row could not be evaluated
    distance_report report;
    double wall_ms = 0;
};

// Rows are evaluated on `threads` workers; results keep fixture order.
std::vector<row_result> evaluate( const std::filesystem::path& corpus, const std::vector<fixture_row>& rows,
                                  unsigned threads, std::size_t state_cap );

} // namespace maskdist::corpus

struct bench_config
{
    std::string corpus;
    std::string fixtures;
    unsigned threads = 0; // 0: hardware concurrency
    std::size_t state_cap = maskdist::compile_options{}.state_cap;
    bool trace = false;
};

// Prints one line per row and a summary; false when any row fails.
bool run_bench( const bench_config& c, std::ostream& out );
