#include "maskdist/relations.hpp"

#include <deque>
#include <sstream>

namespace maskdist
{

std::vector<std::pair<state_id, state_id>> pair_relation::pairs() const
{
    std::vector<std::pair<state_id, state_id>> out;
    for ( state_id s = 0; s < _rows; ++s )
        for ( state_id t = 0; t < _cols; ++t )
            if ( contains( s, t ) )
                out.emplace_back( s, t );
    return out;
}

namespace
{

// Moves of one system to be answered by the other system with the same
// label (or with a mask move when the label is a fault).
struct matching
{
    adjacency moves;
    adjacency answers;
    std::vector<std::optional<label_id>> answer_label;
    std::vector<bool> skip; // mask loops are never moves

    matching( const lts& move_edges, const lts& answer_edges )
            : moves( move_edges.state_count(), move_edges.transitions() ),
              answers( answer_edges.state_count(), answer_edges.transitions() )
    {
        auto mask = answer_edges.find_label( label::mask() );
        for ( const auto& l : move_edges.alphabet() ) {
            if ( l.is_fault() )
                answer_label.push_back( mask );
            else
                answer_label.push_back( answer_edges.find_label( l ) );
        }
        skip.resize( move_edges.alphabet().size() );
        for ( std::size_t l = 0; l < skip.size(); ++l )
            skip[ l ] = move_edges.alphabet()[ l ].kind == label_kind::mask;
    }

    // Every move from `x` has an answer from `y` landing in the relation;
    // `related(mover_target, answer_target)`.
    template <typename Related>
    bool matched( state_id x, state_id y, Related related ) const
    {
        for ( auto [ l, u ] : moves.out( x ) ) {
            if ( skip[ l ] )
                continue;
            if ( !answer_label[ l ] )
                return false;
            bool found = false;
            for ( auto [ al, v ] : answers.out( y, *answer_label[ l ] ) ) {
                (void)al;
                if ( related( u, v ) ) {
                    found = true;
                    break;
                }
            }
            if ( !found )
                return false;
        }
        return true;
    }
};

// Greatest relation R such that spec moves are matched by impl and impl
// moves are matched by spec.
pair_relation refine( const matching& spec_moves, const matching& impl_moves, std::size_t rows, std::size_t cols )
{
    pair_relation r( rows, cols, true );
    bool changed = true;
    while ( changed ) {
        changed = false;
        for ( state_id s = 0; s < rows; ++s )
            for ( state_id t = 0; t < cols; ++t ) {
                if ( !r.contains( s, t ) )
                    continue;
                bool ok = spec_moves.matched( s, t, [ & ]( state_id u, state_id v ) { return r.contains( u, v ); } ) &&
                          impl_moves.matched( t, s, [ & ]( state_id v, state_id u ) { return r.contains( u, v ); } );
                if ( !ok ) {
                    r.set( s, t, false );
                    changed = true;
                }
            }
    }
    return r;
}

pair_relation reachable_part( const pair_relation& full, const matching& spec_moves, const matching& impl_moves )
{
    pair_relation out( full.rows(), full.cols(), false );
    std::deque<std::pair<state_id, state_id>> todo{ { 0, 0 } };
    out.set( 0, 0, true );
    auto visit = [ & ]( state_id u, state_id v ) {
        if ( full.contains( u, v ) && !out.contains( u, v ) ) {
            out.set( u, v, true );
            todo.emplace_back( u, v );
        }
    };
    while ( !todo.empty() ) {
        auto [ s, t ] = todo.front();
        todo.pop_front();
        for ( auto [ l, u ] : spec_moves.moves.out( s ) )
            if ( !spec_moves.skip[ l ] && spec_moves.answer_label[ l ] )
                for ( auto [ al, v ] : spec_moves.answers.out( t, *spec_moves.answer_label[ l ] ) ) {
                    (void)al;
                    visit( u, v );
                }
        for ( auto [ l, v ] : impl_moves.moves.out( t ) )
            if ( !impl_moves.skip[ l ] && impl_moves.answer_label[ l ] )
                for ( auto [ al, u ] : impl_moves.answers.out( s, *impl_moves.answer_label[ l ] ) ) {
                    (void)al;
                    visit( u, v );
                }
    }
    return out;
}

struct systems
{
    lts spec_m;
    lts spec_answer;
    lts impl_answer;
};

systems prepare( const lts& spec, const lts& impl, mode m )
{
    systems out{ augment_mask( spec ), {}, {} };
    if ( m == mode::weak ) {
        out.spec_answer = saturated_system( out.spec_m );
        out.impl_answer = saturated_system( impl );
    } else {
        out.spec_answer = out.spec_m;
        out.impl_answer = impl;
    }
    return out;
}

} // namespace

std::optional<pair_relation> masking_sim( const lts& spec, const lts& impl, mode m )
{
    systems sys = prepare( spec, impl, m );
    matching spec_moves( sys.spec_m, sys.impl_answer );
    matching impl_moves( impl, sys.spec_answer );
    pair_relation full = refine( spec_moves, impl_moves, spec.state_count(), impl.state_count() );
    if ( spec.state_count() == 0 || impl.state_count() == 0 || !full.contains( 0, 0 ) )
        return std::nullopt;
    return reachable_part( full, spec_moves, impl_moves );
}

std::optional<pair_relation> masking_sim_saturated( const lts& spec, const lts& impl )
{
    return masking_sim( saturated_system( spec ), saturated_system( impl ), mode::strong );
}

bool removes_any( const lts& spec, const lts& impl, mode m, const pair_relation& r )
{
    systems sys = prepare( spec, impl, m );
    matching spec_moves( sys.spec_m, sys.impl_answer );
    matching impl_moves( impl, sys.spec_answer );
    for ( auto [ s, t ] : r.pairs() ) {
        bool ok = spec_moves.matched( s, t, [ & ]( state_id u, state_id v ) { return r.contains( u, v ); } ) &&
                  impl_moves.matched( t, s, [ & ]( state_id v, state_id u ) { return r.contains( u, v ); } );
        if ( !ok )
            return true;
    }
    return false;
}

bool bisimilar( const lts& a, const lts& b, mode m )
{
    if ( a.state_count() == 0 || b.state_count() == 0 )
        return a.state_count() == b.state_count();
    lts aa = m == mode::weak ? saturated_system( a ) : a;
    lts bb = m == mode::weak ? saturated_system( b ) : b;
    matching a_moves( aa, bb );
    matching b_moves( bb, aa );
    return refine( a_moves, b_moves, aa.state_count(), bb.state_count() ).contains( 0, 0 );
}

std::string dump( const pair_relation& r, const lts& spec, const lts& impl )
{
    std::ostringstream out;
    for ( auto [ s, t ] : r.pairs() )
        out << spec.describe( s ) << " ~ " << impl.describe( t ) << '\n';
    return out.str();
}

} // namespace maskdist
