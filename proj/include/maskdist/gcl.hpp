#pragma once

// Guarded-command modelling language: AST, parser and pretty printer.
//
// A program is a list of global boolean declarations, a list of process
// templates and a Main block that instantiates and runs them. Every process
// carries Initial / Normative predicates and a list of labelled actions
//
//     [label] (faulty|internal)? guard -> x = e, y = f;
//
// Formal parameters are bound by reference to global variables.

#include "maskdist/error.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maskdist::gcl
{

enum class expr_kind
{
    constant,
    variable,
    negation,
    conjunction, // n-ary
    disjunction, // n-ary
    equality,    // binary
    group,       // parenthesised sub-expression, kept for round-tripping
};

struct expr
{
    expr_kind kind = expr_kind::constant;
    bool value = false;          // constant
    std::string name;            // variable
    std::vector<expr> operands;  // everything else
    source_pos pos;

    static expr constant( bool v, source_pos pos = {} );
    static expr variable( std::string name, source_pos pos = {} );
    static expr negation( expr e, source_pos pos = {} );
    static expr conjunction( std::vector<expr> es, source_pos pos = {} );
    static expr disjunction( std::vector<expr> es, source_pos pos = {} );
    static expr equality( expr lhs, expr rhs, source_pos pos = {} );
    static expr group( expr e, source_pos pos = {} );
};

enum class var_type
{
    boolean,
};

struct var_decl
{
    std::string name;
    var_type type = var_type::boolean;
    source_pos pos;
};

enum class action_kind
{
    normal,
    faulty,
    internal,
};

struct assignment
{
    std::string target;
    expr value;
    source_pos pos;
};

struct action
{
    std::string label;
    action_kind kind = action_kind::normal;
    expr guard;
    std::vector<assignment> assignments;
    source_pos pos;
};

struct process_decl
{
    std::string name;
    std::vector<var_decl> formals;
    std::vector<var_decl> locals;
    expr initial;
    expr normative; // parsed and kept, never used by the analysis
    std::vector<action> actions;
    source_pos pos;
};

struct instance_decl
{
    std::string name;
    std::string process;
    source_pos pos;
};

struct run_stmt
{
    std::string instance;
    std::vector<std::string> actuals;
    source_pos pos;
};

struct main_block
{
    std::vector<instance_decl> instances;
    std::vector<run_stmt> runs;
    source_pos pos;
};

struct program
{
    std::vector<var_decl> globals;
    std::vector<process_decl> processes;
    main_block main;

    [[nodiscard]] const process_decl* find_process( std::string_view name ) const;
};

// Structural equality: compares everything except source positions.
bool structurally_equal( const expr& a, const expr& b );
bool structurally_equal( const program& a, const program& b );

// Syntax analysis followed by static resolution. Throws parse_error or
// resolve_error.
program parse( std::string_view source );

// Syntax only; used by tests that exercise the resolver separately.
program parse_unresolved( std::string_view source );

void resolve( const program& p );

std::string pretty_print( const program& p );
std::string pretty_print( const expr& e );

// Every (label, kind) pair of every process, in declaration order.
std::vector<std::pair<std::string, action_kind>> action_signature( const program& p );

} // namespace maskdist::gcl
