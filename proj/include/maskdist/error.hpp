#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace maskdist
{

struct source_pos
{
    int line = 1;
    int column = 1;

    friend bool operator==( const source_pos&, const source_pos& ) = default;
};

std::string to_string( source_pos pos );

// Root of every error raised by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class parse_error : public error
{
    source_pos _pos;
    std::vector<std::string> _expected;

public:
    parse_error( source_pos pos, const std::string& message, std::vector<std::string> expected = {} );

    [[nodiscard]] source_pos pos() const { return _pos; }
    [[nodiscard]] const std::vector<std::string>& expected() const { return _expected; }
};

class resolve_error : public error
{
    source_pos _pos;

public:
    resolve_error( source_pos pos, const std::string& message );

    [[nodiscard]] source_pos pos() const { return _pos; }
};

// Zero or several valuations satisfy the conjunction of Initial clauses.
class initial_not_unique : public error
{
public:
    using error::error;
};

class state_explosion : public error
{
    std::size_t _cap;

public:
    explicit state_explosion( std::size_t cap );

    [[nodiscard]] std::size_t cap() const { return _cap; }
};

// A label is used as an observable action on one side and as a fault on the other.
class alphabet_clash : public error
{
public:
    using error::error;
};

class malformed_play : public error
{
public:
    using error::error;
};

} // namespace maskdist
