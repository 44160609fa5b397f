#include "maskdist/gcl.hpp"

#include <cctype>
#include <sstream>

namespace maskdist::gcl
{

namespace
{

enum class tok
{
    ident,
    lbrace,
    rbrace,
    lparen,
    rparen,
    lbracket,
    rbracket,
    semicolon,
    colon,
    comma,
    assign,
    eq,
    bang,
    and_,
    or_,
    arrow,
    eof,
};

struct token
{
    tok kind = tok::eof;
    std::string text;
    source_pos pos;
};

std::string describe( const token& t )
{
    switch ( t.kind ) {
    case tok::ident: return "'" + t.text + "'";
    case tok::eof: return "end of input";
    default: return "'" + t.text + "'";
    }
}

class lexer
{
    std::string_view _src;
    std::size_t _at = 0;
    int _line = 1;
    int _col = 1;

    [[nodiscard]] char peek( std::size_t ahead = 0 ) const
    {
        return _at + ahead < _src.size() ? _src[ _at + ahead ] : '\0';
    }

    void advance()
    {
        if ( _src[ _at ] == '\n' ) {
            ++_line;
            _col = 1;
        } else {
            ++_col;
        }
        ++_at;
    }

    void skip_space_and_comments()
    {
        while ( _at < _src.size() ) {
            char c = peek();
            if ( std::isspace( static_cast<unsigned char>( c ) ) ) {
                advance();
            } else if ( c == '/' && peek( 1 ) == '/' ) {
                while ( _at < _src.size() && peek() != '\n' )
                    advance();
            } else {
                break;
            }
        }
    }

public:
    explicit lexer( std::string_view src ) : _src{ src } {}

    token next()
    {
        skip_space_and_comments();
        token t;
        t.pos = { _line, _col };
        if ( _at >= _src.size() ) {
            t.kind = tok::eof;
            return t;
        }

        char c = peek();
        if ( std::isalpha( static_cast<unsigned char>( c ) ) || c == '_' ) {
            std::size_t start = _at;
            while ( std::isalnum( static_cast<unsigned char>( peek() ) ) || peek() == '_' )
                advance();
            t.kind = tok::ident;
            t.text = std::string{ _src.substr( start, _at - start ) };
            return t;
        }

        auto two = [ & ]( tok kind, const char* text ) {
            advance();
            advance();
            t.kind = kind;
            t.text = text;
            return t;
        };
        auto one = [ & ]( tok kind ) {
            t.kind = kind;
            t.text = std::string( 1, c );
            advance();
            return t;
        };

        switch ( c ) {
        case '{': return one( tok::lbrace );
        case '}': return one( tok::rbrace );
        case '(': return one( tok::lparen );
        case ')': return one( tok::rparen );
        case '[': return one( tok::lbracket );
        case ']': return one( tok::rbracket );
        case ';': return one( tok::semicolon );
        case ':': return one( tok::colon );
        case ',': return one( tok::comma );
        case '!': return one( tok::bang );
        case '=':
            if ( peek( 1 ) == '=' )
                return two( tok::eq, "==" );
            return one( tok::assign );
        case '&':
            if ( peek( 1 ) == '&' )
                return two( tok::and_, "&&" );
            break;
        case '|':
            if ( peek( 1 ) == '|' )
                return two( tok::or_, "||" );
            break;
        case '-':
            if ( peek( 1 ) == '>' )
                return two( tok::arrow, "->" );
            break;
        default: break;
        }
        throw parse_error( t.pos, std::string{ "unexpected character '" } + c + "'" );
    }
};

bool is_keyword( const std::string& s )
{
    static const char* const keywords[] = { "Global", "Process", "Main",   "Initial", "Normative", "run",
                                            "faulty", "internal", "true",  "false",   "BOOL" };
    for ( const char* k : keywords )
        if ( s == k )
            return true;
    return false;
}

class parser
{
    lexer _lex;
    token _cur;

    void bump() { _cur = _lex.next(); }

    [[noreturn]] void fail( std::vector<std::string> expected ) const
    {
        std::ostringstream msg;
        msg << "unexpected " << describe( _cur ) << ", expected ";
        for ( std::size_t i = 0; i < expected.size(); ++i ) {
            if ( i > 0 )
                msg << ( i + 1 == expected.size() ? " or " : ", " );
            msg << expected[ i ];
        }
        throw parse_error( _cur.pos, msg.str(), std::move( expected ) );
    }

    [[nodiscard]] bool at_keyword( const char* kw ) const { return _cur.kind == tok::ident && _cur.text == kw; }

    token expect( tok kind, const char* what )
    {
        if ( _cur.kind != kind )
            fail( { what } );
        token t = _cur;
        bump();
        return t;
    }

    void expect_keyword( const char* kw )
    {
        if ( !at_keyword( kw ) )
            fail( { std::string{ "'" } + kw + "'" } );
        bump();
    }

    token expect_name( const char* what )
    {
        if ( _cur.kind != tok::ident || is_keyword( _cur.text ) )
            fail( { what } );
        token t = _cur;
        bump();
        return t;
    }

    // a, b, c : BOOL ;
    std::vector<var_decl> var_list( bool with_semicolon )
    {
        std::vector<token> names;
        names.push_back( expect_name( "identifier" ) );
        while ( _cur.kind == tok::comma ) {
            bump();
            names.push_back( expect_name( "identifier" ) );
        }
        expect( tok::colon, "':'" );
        expect_keyword( "BOOL" );
        if ( with_semicolon )
            expect( tok::semicolon, "';'" );
        std::vector<var_decl> out;
        for ( const auto& n : names )
            out.push_back( { n.text, var_type::boolean, n.pos } );
        return out;
    }

    expr primary()
    {
        source_pos pos = _cur.pos;
        if ( _cur.kind == tok::lparen ) {
            bump();
            expr inner = disjunction();
            expect( tok::rparen, "')'" );
            return expr::group( std::move( inner ), pos );
        }
        if ( at_keyword( "true" ) || at_keyword( "false" ) ) {
            bool v = _cur.text == "true";
            bump();
            return expr::constant( v, pos );
        }
        if ( _cur.kind == tok::ident && !is_keyword( _cur.text ) ) {
            std::string name = _cur.text;
            bump();
            return expr::variable( std::move( name ), pos );
        }
        fail( { "identifier", "'true'", "'false'", "'!'", "'('" } );
    }

    expr unary()
    {
        if ( _cur.kind == tok::bang ) {
            source_pos pos = _cur.pos;
            bump();
            return expr::negation( unary(), pos );
        }
        return primary();
    }

    expr equality()
    {
        expr lhs = unary();
        while ( _cur.kind == tok::eq ) {
            source_pos pos = _cur.pos;
            bump();
            lhs = expr::equality( std::move( lhs ), unary(), pos );
        }
        return lhs;
    }

    expr conjunction()
    {
        expr first = equality();
        if ( _cur.kind != tok::and_ )
            return first;
        source_pos pos = first.pos;
        std::vector<expr> ops;
        ops.push_back( std::move( first ) );
        while ( _cur.kind == tok::and_ ) {
            bump();
            ops.push_back( equality() );
        }
        return expr::conjunction( std::move( ops ), pos );
    }

    expr disjunction()
    {
        expr first = conjunction();
        if ( _cur.kind != tok::or_ )
            return first;
        source_pos pos = first.pos;
        std::vector<expr> ops;
        ops.push_back( std::move( first ) );
        while ( _cur.kind == tok::or_ ) {
            bump();
            ops.push_back( conjunction() );
        }
        return expr::disjunction( std::move( ops ), pos );
    }

    action parse_action()
    {
        action a;
        a.pos = expect( tok::lbracket, "'['" ).pos;
        a.label = expect_name( "action label" ).text;
        expect( tok::rbracket, "']'" );
        if ( at_keyword( "faulty" ) || at_keyword( "internal" ) ) {
            a.kind = _cur.text == "faulty" ? action_kind::faulty : action_kind::internal;
            bump();
            if ( at_keyword( "faulty" ) || at_keyword( "internal" ) )
                throw parse_error( _cur.pos, "an action carries at most one of 'faulty' and 'internal'" );
        }
        a.guard = disjunction();
        expect( tok::arrow, "'->'" );
        for ( ;; ) {
            assignment as;
            token target = expect_name( "assignment target" );
            as.target = target.text;
            as.pos = target.pos;
            expect( tok::assign, "'='" );
            as.value = disjunction();
            a.assignments.push_back( std::move( as ) );
            if ( _cur.kind != tok::comma )
                break;
            bump();
        }
        expect( tok::semicolon, "';'" );
        return a;
    }

    process_decl parse_process()
    {
        process_decl p;
        p.pos = _cur.pos;
        expect_keyword( "Process" );
        p.name = expect_name( "process name" ).text;
        if ( _cur.kind == tok::lparen ) {
            bump();
            if ( _cur.kind != tok::rparen ) {
                for ( ;; ) {
                    token name = expect_name( "parameter name" );
                    expect( tok::colon, "':'" );
                    expect_keyword( "BOOL" );
                    p.formals.push_back( { name.text, var_type::boolean, name.pos } );
                    if ( _cur.kind != tok::comma )
                        break;
                    bump();
                }
            }
            expect( tok::rparen, "')'" );
        }
        expect( tok::lbrace, "'{'" );

        while ( _cur.kind == tok::ident && !is_keyword( _cur.text ) ) {
            auto vars = var_list( true );
            p.locals.insert( p.locals.end(), vars.begin(), vars.end() );
        }

        if ( !at_keyword( "Initial" ) )
            fail( { "variable declaration", "'Initial'" } );
        bump();
        expect( tok::colon, "':'" );
        p.initial = disjunction();
        expect( tok::semicolon, "';'" );

        if ( at_keyword( "Normative" ) ) {
            bump();
            expect( tok::colon, "':'" );
            p.normative = disjunction();
            expect( tok::semicolon, "';'" );
        } else {
            p.normative = expr::constant( true, _cur.pos );
        }

        if ( _cur.kind != tok::lbracket )
            fail( { "'['" } );
        while ( _cur.kind == tok::lbracket )
            p.actions.push_back( parse_action() );
        expect( tok::rbrace, "'}'" );
        return p;
    }

    main_block parse_main()
    {
        main_block m;
        m.pos = _cur.pos;
        expect_keyword( "Main" );
        expect( tok::lparen, "'('" );
        expect( tok::rparen, "')'" );
        expect( tok::lbrace, "'{'" );
        for ( ;; ) {
            if ( at_keyword( "run" ) ) {
                run_stmt r;
                r.pos = _cur.pos;
                bump();
                r.instance = expect_name( "instance name" ).text;
                expect( tok::lparen, "'('" );
                if ( _cur.kind != tok::rparen ) {
                    for ( ;; ) {
                        r.actuals.push_back( expect_name( "global variable" ).text );
                        if ( _cur.kind != tok::comma )
                            break;
                        bump();
                    }
                }
                expect( tok::rparen, "')'" );
                expect( tok::semicolon, "';'" );
                m.runs.push_back( std::move( r ) );
            } else if ( _cur.kind == tok::ident && !is_keyword( _cur.text ) ) {
                instance_decl d;
                d.pos = _cur.pos;
                d.name = _cur.text;
                bump();
                expect( tok::colon, "':'" );
                d.process = expect_name( "process name" ).text;
                expect( tok::semicolon, "';'" );
                m.instances.push_back( std::move( d ) );
            } else if ( _cur.kind == tok::rbrace ) {
                bump();
                break;
            } else {
                fail( { "instance declaration", "'run'", "'}'" } );
            }
        }
        return m;
    }

public:
    explicit parser( std::string_view src ) : _lex{ src } { bump(); }

    program parse_program()
    {
        program p;
        while ( at_keyword( "Global" ) ) {
            bump();
            auto vars = var_list( true );
            p.globals.insert( p.globals.end(), vars.begin(), vars.end() );
        }
        while ( at_keyword( "Process" ) )
            p.processes.push_back( parse_process() );
        if ( !at_keyword( "Main" ) ) {
            if ( p.processes.empty() )
                fail( { "'Global'", "'Process'", "'Main'" } );
            fail( { "'Process'", "'Main'" } );
        }
        p.main = parse_main();
        if ( _cur.kind != tok::eof )
            fail( { "end of input" } );
        return p;
    }
};

} // namespace

expr expr::constant( bool v, source_pos pos )
{
    expr e;
    e.kind = expr_kind::constant;
    e.value = v;
    e.pos = pos;
    return e;
}

expr expr::variable( std::string name, source_pos pos )
{
    expr e;
    e.kind = expr_kind::variable;
    e.name = std::move( name );
    e.pos = pos;
    return e;
}

expr expr::negation( expr inner, source_pos pos )
{
    expr e;
    e.kind = expr_kind::negation;
    e.operands.push_back( std::move( inner ) );
    e.pos = pos;
    return e;
}

expr expr::conjunction( std::vector<expr> es, source_pos pos )
{
    expr e;
    e.kind = expr_kind::conjunction;
    e.operands = std::move( es );
    e.pos = pos;
    return e;
}

expr expr::disjunction( std::vector<expr> es, source_pos pos )
{
    expr e;
    e.kind = expr_kind::disjunction;
    e.operands = std::move( es );
    e.pos = pos;
    return e;
}

expr expr::equality( expr lhs, expr rhs, source_pos pos )
{
    expr e;
    e.kind = expr_kind::equality;
    e.operands.push_back( std::move( lhs ) );
    e.operands.push_back( std::move( rhs ) );
    e.pos = pos;
    return e;
}

expr expr::group( expr inner, source_pos pos )
{
    expr e;
    e.kind = expr_kind::group;
    e.operands.push_back( std::move( inner ) );
    e.pos = pos;
    return e;
}

const process_decl* program::find_process( std::string_view name ) const
{
    for ( const auto& p : processes )
        if ( p.name == name )
            return &p;
    return nullptr;
}

program parse_unresolved( std::string_view source )
{
    return parser{ source }.parse_program();
}

program parse( std::string_view source )
{
    program p = parse_unresolved( source );
    resolve( p );
    return p;
}

std::vector<std::pair<std::string, action_kind>> action_signature( const program& p )
{
    std::vector<std::pair<std::string, action_kind>> out;
    for ( const auto& proc : p.processes )
        for ( const auto& a : proc.actions )
            out.emplace_back( a.label, a.kind );
    return out;
}

} // namespace maskdist::gcl
