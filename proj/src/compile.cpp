#include "maskdist/lts.hpp"

#include <deque>
#include <map>
#include <unordered_map>

namespace maskdist
{

namespace
{

using gcl::action_kind;
using gcl::expr;
using gcl::expr_kind;

// Postfix code over variable indices.
enum class op : std::uint8_t
{
    push_false,
    push_true,
    load,
    negate,
    conj, // arg = operand count
    disj,
    equal,
};

struct instr
{
    op code;
    std::uint32_t arg = 0;
};

using code = std::vector<instr>;

void emit( const expr& e, const std::map<std::string, std::size_t>& vars, code& out )
{
    switch ( e.kind ) {
    case expr_kind::constant: out.push_back( { e.value ? op::push_true : op::push_false } ); return;
    case expr_kind::variable:
        out.push_back( { op::load, static_cast<std::uint32_t>( vars.at( e.name ) ) } );
        return;
    case expr_kind::group: emit( e.operands[ 0 ], vars, out ); return;
    case expr_kind::negation:
        emit( e.operands[ 0 ], vars, out );
        out.push_back( { op::negate } );
        return;
    case expr_kind::conjunction:
    case expr_kind::disjunction:
        for ( const auto& o : e.operands )
            emit( o, vars, out );
        out.push_back( { e.kind == expr_kind::conjunction ? op::conj : op::disj,
                         static_cast<std::uint32_t>( e.operands.size() ) } );
        return;
    case expr_kind::equality:
        emit( e.operands[ 0 ], vars, out );
        emit( e.operands[ 1 ], vars, out );
        out.push_back( { op::equal } );
        return;
    }
}

// Three-valued logic for the initial-state search: 0 false, 1 true, 2 unknown.
using tri = std::uint8_t;
constexpr tri unknown = 2;

class machine
{
    std::vector<tri> _stack;

public:
    // `value(i)` yields the tri value of variable i.
    template <typename Load>
    tri run( const code& c, Load value )
    {
        _stack.clear();
        for ( const auto& in : c ) {
            switch ( in.code ) {
            case op::push_false: _stack.push_back( 0 ); break;
            case op::push_true: _stack.push_back( 1 ); break;
            case op::load: _stack.push_back( value( in.arg ) ); break;
            case op::negate: {
                tri& t = _stack.back();
                if ( t != unknown )
                    t = 1 - t;
                break;
            }
            case op::conj:
            case op::disj: {
                tri absorbing = in.code == op::conj ? 0 : 1;
                tri result = 1 - absorbing;
                for ( std::uint32_t k = 0; k < in.arg; ++k ) {
                    tri t = _stack.back();
                    _stack.pop_back();
                    if ( t == absorbing )
                        result = absorbing;
                    else if ( t == unknown && result != absorbing )
                        result = unknown;
                }
                _stack.push_back( result );
                break;
            }
            case op::equal: {
                tri b = _stack.back();
                _stack.pop_back();
                tri a = _stack.back();
                _stack.back() = ( a == unknown || b == unknown ) ? unknown : tri( a == b );
                break;
            }
            }
        }
        return _stack.back();
    }
};

struct compiled_action
{
    label_id label;
    code guard;
    std::vector<std::pair<std::size_t, code>> assignments;
};

struct layout
{
    std::vector<std::string> names;
    std::vector<code> initials;
    std::vector<compiled_action> actions;
};

label to_label( const gcl::action& a )
{
    switch ( a.kind ) {
    case action_kind::faulty: return label::fault( a.label );
    case action_kind::internal: return label::tau();
    default: return label::observable( a.label );
    }
}

layout build_layout( const gcl::program& p, lts& out )
{
    layout lay;
    std::map<std::string, std::size_t> globals;
    for ( const auto& g : p.globals ) {
        globals[ g.name ] = lay.names.size();
        lay.names.push_back( g.name );
    }

    std::map<std::string, const gcl::run_stmt*> runs;
    for ( const auto& r : p.main.runs )
        runs[ r.instance ] = &r;

    for ( const auto& inst : p.main.instances ) {
        auto run = runs.find( inst.name );
        if ( run == runs.end() )
            continue;
        const auto* proc = p.find_process( inst.process );
        auto scope = globals;
        for ( std::size_t k = 0; k < proc->formals.size(); ++k )
            scope[ proc->formals[ k ].name ] = globals.at( run->second->actuals[ k ] );
        for ( const auto& v : proc->locals ) {
            scope[ v.name ] = lay.names.size();
            lay.names.push_back( inst.name + "." + v.name );
        }

        code init;
        emit( proc->initial, scope, init );
        lay.initials.push_back( std::move( init ) );

        for ( const auto& a : proc->actions ) {
            compiled_action ca;
            ca.label = out.add_label( to_label( a ) );
            emit( a.guard, scope, ca.guard );
            for ( const auto& as : a.assignments ) {
                std::size_t target = scope.at( as.target );
                for ( const auto& prev : ca.assignments )
                    if ( prev.first == target )
                        throw resolve_error( as.pos, "instance '" + inst.name + "' binds '" + as.target +
                                                         "' to a variable already assigned by action '" +
                                                         a.label + "'" );
                code value;
                emit( as.value, scope, value );
                ca.assignments.emplace_back( target, std::move( value ) );
            }
            lay.actions.push_back( std::move( ca ) );
        }
    }
    return lay;
}

void mentioned( const code& c, std::vector<bool>& seen )
{
    for ( const auto& in : c )
        if ( in.code == op::load )
            seen[ in.arg ] = true;
}

// Depth-first search over partial assignments; stops after two solutions.
class initial_search
{
    const layout& _lay;
    machine _m;
    std::vector<tri> _partial;
    std::vector<valuation> _found;

    bool consistent()
    {
        for ( const auto& c : _lay.initials )
            if ( _m.run( c, [ & ]( std::uint32_t i ) { return _partial[ i ]; } ) == 0 )
                return false;
        return true;
    }

    void search( std::size_t i )
    {
        if ( _found.size() >= 2 || !consistent() )
            return;
        if ( i == _partial.size() ) {
            valuation v( _partial.size() );
            for ( std::size_t k = 0; k < _partial.size(); ++k )
                v.set( k, _partial[ k ] == 1 );
            _found.push_back( std::move( v ) );
            return;
        }
        for ( tri b : { tri( 0 ), tri( 1 ) } ) {
            _partial[ i ] = b;
            search( i + 1 );
        }
        _partial[ i ] = unknown;
    }

public:
    explicit initial_search( const layout& lay ) : _lay{ lay }, _partial( lay.names.size(), unknown ) {}

    std::vector<valuation> run()
    {
        search( 0 );
        return std::move( _found );
    }
};

std::string render( const valuation& v, const std::vector<std::string>& names )
{
    std::string out;
    for ( std::size_t i = 0; i < names.size(); ++i )
        out += ( i > 0 ? "," : "" ) + names[ i ] + ( v.get( i ) ? "=1" : "=0" );
    return out;
}

valuation initial_valuation( const layout& lay )
{
    std::vector<bool> seen( lay.names.size(), false );
    for ( const auto& c : lay.initials )
        mentioned( c, seen );
    for ( std::size_t i = 0; i < seen.size(); ++i )
        if ( !seen[ i ] )
            throw initial_not_unique( "initial state is not unique: variable '" + lay.names[ i ] +
                                      "' is not constrained by any Initial clause" );

    auto found = initial_search( lay ).run();
    if ( found.empty() )
        throw initial_not_unique( "initial state is not unique: no valuation satisfies the Initial clauses" );
    if ( found.size() > 1 )
        throw initial_not_unique( "initial state is not unique: both " + render( found[ 0 ], lay.names ) +
                                  " and " + render( found[ 1 ], lay.names ) + " satisfy the Initial clauses" );
    return found[ 0 ];
}

} // namespace

lts compile( const gcl::program& program, const compile_options& options )
{
    lts out;
    layout lay = build_layout( program, out );
    out.set_variables( lay.names );

    std::unordered_map<valuation, state_id, valuation_hash> index;
    std::vector<valuation> states;
    std::deque<state_id> todo;

    auto intern = [ & ]( valuation v ) -> state_id {
        auto [ it, fresh ] = index.emplace( v, static_cast<state_id>( states.size() ) );
        if ( fresh ) {
            if ( states.size() >= options.state_cap )
                throw state_explosion( options.state_cap );
            states.push_back( std::move( v ) );
            todo.push_back( it->second );
        }
        return it->second;
    };

    intern( initial_valuation( lay ) );

    machine m;
    std::vector<transition> edges;
    while ( !todo.empty() ) {
        state_id s = todo.front();
        todo.pop_front();
        const valuation pre = states[ s ];
        auto load = [ & ]( std::uint32_t i ) { return tri( pre.get( i ) ); };
        for ( const auto& a : lay.actions ) {
            if ( m.run( a.guard, load ) != 1 )
                continue;
            valuation post = pre;
            for ( const auto& [ target, value ] : a.assignments )
                post.set( target, m.run( value, load ) == 1 );
            edges.push_back( { s, a.label, intern( std::move( post ) ) } );
        }
    }

    for ( auto& v : states )
        out.add_state( std::move( v ) );
    for ( const auto& e : edges )
        out.add_transition( e.source, e.label, e.target );
    out.normalize();
    return out;
}

} // namespace maskdist
