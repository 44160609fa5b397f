#include "maskdist/gcl.hpp"

#include <map>
#include <set>

namespace maskdist::gcl
{

namespace
{

struct scope
{
    std::set<std::string> globals;
    std::set<std::string> locals; // formals and locals of the current process

    [[nodiscard]] bool knows( const std::string& name ) const
    {
        return locals.count( name ) > 0 || globals.count( name ) > 0;
    }
};

void check_expr( const expr& e, const scope& sc )
{
    if ( e.kind == expr_kind::variable ) {
        if ( !sc.knows( e.name ) )
            throw resolve_error( e.pos, "unknown identifier '" + e.name + "'" );
        return;
    }
    for ( const auto& op : e.operands )
        check_expr( op, sc );
}

void check_process( const process_decl& p, const std::set<std::string>& globals )
{
    scope sc{ globals, {} };
    for ( const auto* list : { &p.formals, &p.locals } ) {
        for ( const auto& v : *list ) {
            if ( globals.count( v.name ) > 0 )
                throw resolve_error( v.pos, "'" + v.name + "' shadows a global variable" );
            if ( !sc.locals.insert( v.name ).second )
                throw resolve_error( v.pos, "duplicate declaration of '" + v.name + "'" );
        }
    }

    check_expr( p.initial, sc );
    check_expr( p.normative, sc );

    for ( const auto& a : p.actions ) {
        if ( a.label == "M" || a.label == "tau" )
            throw resolve_error( a.pos, "action label '" + a.label + "' is reserved" );
        check_expr( a.guard, sc );
        std::set<std::string> assigned;
        for ( const auto& as : a.assignments ) {
            if ( !sc.knows( as.target ) )
                throw resolve_error( as.pos, "unknown identifier '" + as.target + "'" );
            if ( !assigned.insert( as.target ).second )
                throw resolve_error( as.pos, "'" + as.target + "' is assigned twice in action '" + a.label + "'" );
            check_expr( as.value, sc );
        }
    }
}

} // namespace

void resolve( const program& p )
{
    std::set<std::string> globals;
    for ( const auto& g : p.globals )
        if ( !globals.insert( g.name ).second )
            throw resolve_error( g.pos, "duplicate declaration of global '" + g.name + "'" );

    std::set<std::string> process_names;
    for ( const auto& proc : p.processes ) {
        if ( !process_names.insert( proc.name ).second )
            throw resolve_error( proc.pos, "duplicate declaration of process '" + proc.name + "'" );
        check_process( proc, globals );
    }

    std::map<std::string, const instance_decl*> instances;
    for ( const auto& inst : p.main.instances ) {
        if ( !instances.emplace( inst.name, &inst ).second )
            throw resolve_error( inst.pos, "duplicate declaration of instance '" + inst.name + "'" );
        if ( p.find_process( inst.process ) == nullptr )
            throw resolve_error( inst.pos, "unknown process '" + inst.process + "'" );
    }

    std::set<std::string> started;
    for ( const auto& run : p.main.runs ) {
        auto it = instances.find( run.instance );
        if ( it == instances.end() )
            throw resolve_error( run.pos, "unknown instance '" + run.instance + "'" );
        if ( !started.insert( run.instance ).second )
            throw resolve_error( run.pos, "instance '" + run.instance + "' is run twice" );
        const process_decl* proc = p.find_process( it->second->process );
        if ( run.actuals.size() != proc->formals.size() )
            throw resolve_error( run.pos, "process '" + proc->name + "' expects " +
                                              std::to_string( proc->formals.size() ) + " argument(s), got " +
                                              std::to_string( run.actuals.size() ) );
        for ( const auto& actual : run.actuals )
            if ( globals.count( actual ) == 0 )
                throw resolve_error( run.pos, "actual parameter '" + actual + "' is not a global variable" );
    }
}

} // namespace maskdist::gcl
