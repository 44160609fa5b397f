#pragma once

#include "maskdist/solver.hpp"

#include <string>

namespace maskdist
{

// `masking distance = 1/3 (0.333)`
std::string render_text( const distance_report& r );

// Witness steps, one per line, faults marked.
std::string render_trace( const distance_report& r );

// Single JSON document with value_num, value_den, fault_budget, states,
// edges, solve_ms and witness.
std::string render_machine( const distance_report& r );

// Value carried by a machine document.
rational parse_machine_value( const std::string& document );

} // namespace maskdist
