#include "maskdist/report.hpp"

#include <json.hpp>

#include <sstream>

namespace maskdist
{

std::string render_text( const distance_report& r )
{
    std::ostringstream out;
    out << "masking distance = " << r.value.numerator() << '/' << r.value.denominator() << " (" << to_decimal( r.value )
        << ")";
    return out.str();
}

std::string render_trace( const distance_report& r )
{
    if ( r.witness_steps.empty() )
        return "no trace to the error state\n";
    std::ostringstream out;
    for ( std::size_t k = 0; k < r.witness_steps.size(); ++k ) {
        const auto& s = r.witness_steps[ k ];
        out << k + 1 << ". " << s.from << " --" << s.label << ( s.fault ? " [fault]" : "" ) << "--> " << s.to << '\n';
    }
    return out.str();
}

std::string render_machine( const distance_report& r )
{
    nlohmann::json doc;
    doc[ "value_num" ] = r.value.numerator();
    doc[ "value_den" ] = r.value.denominator();
    doc[ "value" ] = to_decimal( r.value );
    if ( r.fault_budget )
        doc[ "fault_budget" ] = *r.fault_budget;
    else
        doc[ "fault_budget" ] = nullptr;
    doc[ "states" ] = { { "spec", r.spec_states }, { "impl", r.impl_states }, { "game", r.game_states } };
    doc[ "edges" ] = r.game_edges;
    doc[ "build_ms" ] = r.build_ms;
    doc[ "solve_ms" ] = r.solve_ms;
    auto witness = nlohmann::json::array();
    for ( const auto& s : r.witness_steps )
        witness.push_back( { { "from", s.from }, { "label", s.label }, { "to", s.to }, { "fault", s.fault } } );
    doc[ "witness" ] = witness;
    doc[ "warnings" ] = r.warnings;
    return doc.dump( 2 );
}

rational parse_machine_value( const std::string& document )
{
    auto doc = nlohmann::json::parse( document );
    return { doc.at( "value_num" ).get<std::int64_t>(), doc.at( "value_den" ).get<std::int64_t>() };
}

} // namespace maskdist
