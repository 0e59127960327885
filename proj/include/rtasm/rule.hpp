#pragma once

#include "rtasm/state.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rtasm {

/// Function application (including the built-ins =, <, + and CT), variable reference,
/// or literal.
struct Term {
    enum class Kind { Apply, Variable, Literal };

    Kind kind = Kind::Literal;
    std::string name;       // symbol for Apply, variable name for Variable
    std::vector<Term> args; // Apply only
    Value literal;          // Literal only

    static Term apply(std::string symbol, std::vector<Term> args = {});
    static Term variable(std::string name);
    static Term constant(Value v);

    friend bool operator==(const Term&, const Term&) = default;
};

Term operator+(Term a, Term b);
Term eq(Term a, Term b);
Term lt(Term a, Term b);

bool is_builtin(const std::string& symbol);

struct Guard {
    enum class Kind { Atom, And, Or, Not, Forall };

    Kind kind = Kind::Atom;
    Term atom;                   // Atom
    std::vector<Guard> operands; // And/Or: two or more; Not/Forall: exactly one
    std::string variable;        // Forall
    std::string universe;        // Forall

    static Guard of(Term t);
    static Guard all(std::vector<Guard> gs);
    static Guard any(std::vector<Guard> gs);
    static Guard negate(Guard g);
    static Guard forall(std::string var, std::string universe, Guard body);

    friend bool operator==(const Guard&, const Guard&) = default;
};

struct Rule {
    enum class Kind { Update, Conditional, Block, VarRange };

    Kind kind = Kind::Block;
    // Update: head(args) := rhs
    std::string head;
    std::vector<Term> args;
    Term rhs;
    // Conditional: guard, body = {then} or {then, else}
    Guard guard;
    // Block: body; VarRange: variable ranges over universe, body = {rule}
    std::vector<Rule> body;
    std::string variable;
    std::string universe;

    static Rule update(std::string head, std::vector<Term> args, Term rhs);
    static Rule when(Guard g, Rule then_rule, std::optional<Rule> else_rule = std::nullopt);
    static Rule block(std::vector<Rule> rules);
    static Rule var_range(std::string var, std::string universe, Rule body);

    friend bool operator==(const Rule&, const Rule&) = default;
};

struct Module {
    std::string name;
    Rule rule;
    friend bool operator==(const Module&, const Module&) = default;
};

/// A finite set of closed modules; each module is executed by its own agent.
struct Program {
    std::vector<Module> modules;

    const Module* find(const std::string& name) const;
    /// Throws Error(UnknownAgent).
    const Module& at(const std::string& name) const;
};

using Environment = std::map<std::string, Value>;

Value eval_term(const State& s, const Environment& env, const Term& e);
bool eval_guard(const State& s, const Environment& env, const Guard& g);
UpdateSet collect_updates(const State& s, const Environment& env, const Rule& r);

/// Update set consistent and containing at least one nontrivial update.
bool enabled(const State& s, const Rule& r);
bool enabled(const State& s, const Environment& env, const Rule& r);

/// Function symbols appearing as update-rule heads.
std::set<std::string> head_symbols(const Rule& r);

/// Function symbols read or written by a term, guard or rule (built-ins excluded).
std::set<std::string> symbols_of(const Term& t);
std::set<std::string> symbols_of(const Guard& g);
std::set<std::string> symbols_of(const Rule& r);

/// Checks well-formedness against a vocabulary: arities, no variable heads, heads internal,
/// every variable bound, CT never a head. Throws on the first problem.
void check_program(const Program& p, const Vocabulary& vocabulary);

/// Moments at which some comparison inside `r` that mentions CT can change truth value,
/// assuming every non-CT location keeps its value in `s`. Update right-hand sides are
/// treated as comparisons against the current content, since triviality also decides
/// enabledness. Terms must be affine in CT; anything else throws Error(Unsupported).
std::vector<Rational> ct_critical_points(const State& s, const Rule& r);
std::vector<Rational> ct_critical_points(const State& s, const Environment& env, const Guard& g);

std::string to_string(const Term& t);
std::string to_string(const Guard& g);
/// Pretty printer; parse_rule(to_string(r)) == r.
std::string to_string(const Rule& r, int indent = 0);

} // namespace rtasm
