#include "maskdist/error.hpp"

namespace maskdist
{

std::string to_string( source_pos pos )
{
    return std::to_string( pos.line ) + ":" + std::to_string( pos.column );
}

parse_error::parse_error( source_pos pos, const std::string& message, std::vector<std::string> expected )
        : error{ to_string( pos ) + ": " + message }, _pos{ pos }, _expected{ std::move( expected ) }
{
}

resolve_error::resolve_error( source_pos pos, const std::string& message )
        : error{ to_string( pos ) + ": " + message }, _pos{ pos }
{
}

state_explosion::state_explosion( std::size_t cap )
        : error{ "reachable state count exceeds the cap of " + std::to_string( cap ) }, _cap{ cap }
{
}

} // namespace maskdist
