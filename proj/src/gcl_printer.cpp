#include "maskdist/gcl.hpp"

#include <sstream>

namespace maskdist::gcl
{

namespace
{

// Binding strength; higher binds tighter.
int precedence( const expr& e )
{
    switch ( e.kind ) {
    case expr_kind::disjunction: return 1;
    case expr_kind::conjunction: return 2;
    case expr_kind::equality: return 3;
    case expr_kind::negation: return 4;
    default: return 5;
    }
}

void print( std::ostream& out, const expr& e );

// Children built programmatically may need parentheses the parser would
// have recorded as a group node.
void print_operand( std::ostream& out, const expr& child, int min_prec )
{
    if ( precedence( child ) < min_prec ) {
        out << '(';
        print( out, child );
        out << ')';
    } else {
        print( out, child );
    }
}

void print_nary( std::ostream& out, const expr& e, const char* op )
{
    int prec = precedence( e );
    for ( std::size_t i = 0; i < e.operands.size(); ++i ) {
        if ( i > 0 )
            out << ' ' << op << ' ';
        print_operand( out, e.operands[ i ], prec + 1 );
    }
}

void print( std::ostream& out, const expr& e )
{
    switch ( e.kind ) {
    case expr_kind::constant: out << ( e.value ? "true" : "false" ); break;
    case expr_kind::variable: out << e.name; break;
    case expr_kind::negation:
        out << '!';
        print_operand( out, e.operands[ 0 ], precedence( e ) );
        break;
    case expr_kind::conjunction: print_nary( out, e, "&&" ); break;
    case expr_kind::disjunction: print_nary( out, e, "||" ); break;
    case expr_kind::equality:
        print_operand( out, e.operands[ 0 ], precedence( e ) );
        out << " == ";
        print_operand( out, e.operands[ 1 ], precedence( e ) + 1 );
        break;
    case expr_kind::group:
        out << '(';
        print( out, e.operands[ 0 ] );
        out << ')';
        break;
    }
}

const char* modifier( action_kind k )
{
    switch ( k ) {
    case action_kind::faulty: return "faulty ";
    case action_kind::internal: return "internal ";
    default: return "";
    }
}

} // namespace

std::string pretty_print( const expr& e )
{
    std::ostringstream out;
    print( out, e );
    return out.str();
}

std::string pretty_print( const program& p )
{
    std::ostringstream out;
    for ( const auto& g : p.globals )
        out << "Global " << g.name << ": BOOL;\n";
    if ( !p.globals.empty() )
        out << '\n';

    for ( const auto& proc : p.processes ) {
        out << "Process " << proc.name;
        if ( !proc.formals.empty() ) {
            out << '(';
            for ( std::size_t i = 0; i < proc.formals.size(); ++i )
                out << ( i > 0 ? ", " : "" ) << proc.formals[ i ].name << ": BOOL";
            out << ')';
        }
        out << " {\n";
        for ( const auto& v : proc.locals )
            out << "    " << v.name << ": BOOL;\n";
        out << "    Initial: " << pretty_print( proc.initial ) << ";\n";
        out << "    Normative: " << pretty_print( proc.normative ) << ";\n";
        for ( const auto& a : proc.actions ) {
            out << "    [" << a.label << "] " << modifier( a.kind ) << pretty_print( a.guard ) << " -> ";
            for ( std::size_t i = 0; i < a.assignments.size(); ++i )
                out << ( i > 0 ? ", " : "" ) << a.assignments[ i ].target << " = "
                    << pretty_print( a.assignments[ i ].value );
            out << ";\n";
        }
        out << "}\n\n";
    }

    out << "Main() {\n";
    for ( const auto& inst : p.main.instances )
        out << "    " << inst.name << ": " << inst.process << ";\n";
    for ( const auto& run : p.main.runs ) {
        out << "    run " << run.instance << '(';
        for ( std::size_t i = 0; i < run.actuals.size(); ++i )
            out << ( i > 0 ? ", " : "" ) << run.actuals[ i ];
        out << ");\n";
    }
    out << "}\n";
    return out.str();
}

bool structurally_equal( const expr& a, const expr& b )
{
    if ( a.kind != b.kind || a.operands.size() != b.operands.size() )
        return false;
    if ( a.kind == expr_kind::constant && a.value != b.value )
        return false;
    if ( a.kind == expr_kind::variable && a.name != b.name )
        return false;
    for ( std::size_t i = 0; i < a.operands.size(); ++i )
        if ( !structurally_equal( a.operands[ i ], b.operands[ i ] ) )
            return false;
    return true;
}

namespace
{

bool same_vars( const std::vector<var_decl>& a, const std::vector<var_decl>& b )
{
    if ( a.size() != b.size() )
        return false;
    for ( std::size_t i = 0; i < a.size(); ++i )
        if ( a[ i ].name != b[ i ].name || a[ i ].type != b[ i ].type )
            return false;
    return true;
}

bool same_action( const action& a, const action& b )
{
    if ( a.label != b.label || a.kind != b.kind || a.assignments.size() != b.assignments.size() )
        return false;
    if ( !structurally_equal( a.guard, b.guard ) )
        return false;
    for ( std::size_t i = 0; i < a.assignments.size(); ++i ) {
        if ( a.assignments[ i ].target != b.assignments[ i ].target )
            return false;
        if ( !structurally_equal( a.assignments[ i ].value, b.assignments[ i ].value ) )
            return false;
    }
    return true;
}

bool same_process( const process_decl& a, const process_decl& b )
{
    if ( a.name != b.name || !same_vars( a.formals, b.formals ) || !same_vars( a.locals, b.locals ) )
        return false;
    if ( !structurally_equal( a.initial, b.initial ) || !structurally_equal( a.normative, b.normative ) )
        return false;
    if ( a.actions.size() != b.actions.size() )
        return false;
    for ( std::size_t i = 0; i < a.actions.size(); ++i )
        if ( !same_action( a.actions[ i ], b.actions[ i ] ) )
            return false;
    return true;
}

} // namespace

bool structurally_equal( const program& a, const program& b )
{
    if ( !same_vars( a.globals, b.globals ) || a.processes.size() != b.processes.size() )
        return false;
    for ( std::size_t i = 0; i < a.processes.size(); ++i )
        if ( !same_process( a.processes[ i ], b.processes[ i ] ) )
            return false;

    const auto& ma = a.main;
    const auto& mb = b.main;
    if ( ma.instances.size() != mb.instances.size() || ma.runs.size() != mb.runs.size() )
        return false;
    for ( std::size_t i = 0; i < ma.instances.size(); ++i )
        if ( ma.instances[ i ].name != mb.instances[ i ].name ||
             ma.instances[ i ].process != mb.instances[ i ].process )
            return false;
    for ( std::size_t i = 0; i < ma.runs.size(); ++i )
        if ( ma.runs[ i ].instance != mb.runs[ i ].instance || ma.runs[ i ].actuals != mb.runs[ i ].actuals )
            return false;
    return true;
}

} // namespace maskdist::gcl
