#include "rtasm/rule.hpp"

#include "rtasm/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace rtasm {

Term Term::apply(std::string symbol, std::vector<Term> args)
{
    Term t;
    t.kind = Kind::Apply;
    t.name = std::move(symbol);
    t.args = std::move(args);
    return t;
}

Term Term::variable(std::string name)
{
    Term t;
    t.kind = Kind::Variable;
    t.name = std::move(name);
    return t;
}

Term Term::constant(Value v)
{
    Term t;
    t.kind = Kind::Literal;
    t.literal = std::move(v);
    return t;
}

Term operator+(Term a, Term b) { return Term::apply("+", {std::move(a), std::move(b)}); }
Term eq(Term a, Term b) { return Term::apply("=", {std::move(a), std::move(b)}); }
Term lt(Term a, Term b) { return Term::apply("<", {std::move(a), std::move(b)}); }

bool is_builtin(const std::string& symbol) { return symbol == "=" || symbol == "<" || symbol == "+"; }

Guard Guard::of(Term t)
{
    Guard g;
    g.kind = Kind::Atom;
    g.atom = std::move(t);
    return g;
}

Guard Guard::all(std::vector<Guard> gs)
{
    Guard g;
    g.kind = Kind::And;
    g.operands = std::move(gs);
    return g;
}

Guard Guard::any(std::vector<Guard> gs)
{
    Guard g;
    g.kind = Kind::Or;
    g.operands = std::move(gs);
    return g;
}

Guard Guard::negate(Guard inner)
{
    Guard g;
    g.kind = Kind::Not;
    g.operands.push_back(std::move(inner));
    return g;
}

Guard Guard::forall(std::string var, std::string universe, Guard body)
{
    Guard g;
    g.kind = Kind::Forall;
    g.variable = std::move(var);
    g.universe = std::move(universe);
    g.operands.push_back(std::move(body));
    return g;
}

Rule Rule::update(std::string head, std::vector<Term> args, Term rhs)
{
    Rule r;
    r.kind = Kind::Update;
    r.head = std::move(head);
    r.args = std::move(args);
    r.rhs = std::move(rhs);
    return r;
}

Rule Rule::when(Guard g, Rule then_rule, std::optional<Rule> else_rule)
{
    Rule r;
    r.kind = Kind::Conditional;
    r.guard = std::move(g);
    r.body.push_back(std::move(then_rule));
    if (else_rule)
        r.body.push_back(std::move(*else_rule));
    return r;
}

Rule Rule::block(std::vector<Rule> rules)
{
    Rule r;
    r.kind = Kind::Block;
    r.body = std::move(rules);
    return r;
}

Rule Rule::var_range(std::string var, std::string universe, Rule body)
{
    Rule r;
    r.kind = Kind::VarRange;
    r.variable = std::move(var);
    r.universe = std::move(universe);
    r.body.push_back(std::move(body));
    return r;
}

const Module* Program::find(const std::string& name) const
{
    auto it = std::find_if(modules.begin(), modules.end(), [&](const Module& m) { return m.name == name; });
    return it == modules.end() ? nullptr : &*it;
}

const Module& Program::at(const std::string& name) const
{
    if (auto* m = find(name))
        return *m;
    throw Error(ErrorCode::UnknownAgent, "no module named '" + name + "'");
}

namespace {

const std::vector<Atom>& universe_of(const State& s, const std::string& name)
{
    if (auto* u = s.vocabulary().universe(name))
        return *u;
    throw Error(ErrorCode::UnknownSymbol, "'" + name + "' is not a universe");
}

Value eval_builtin(const std::string& op, const Value& a, const Value& b)
{
    if (op == "=")
        return Value(a == b);
    if (!a.is_number() || !b.is_number())
        throw Error(ErrorCode::TypeError, "'" + op + "' applied to " + a.to_string() + " and " + b.to_string());
    if (op == "<")
        return Value(a.as_number() < b.as_number());
    return Value(a.as_number() + b.as_number());
}

} // namespace

Value eval_term(const State& s, const Environment& env, const Term& e)
{
    switch (e.kind) {
    case Term::Kind::Literal: return e.literal;
    case Term::Kind::Variable: {
        auto it = env.find(e.name);
        if (it == env.end())
            throw Error(ErrorCode::UnboundVariable, "variable '" + e.name + "' is not bound");
        return it->second;
    }
    case Term::Kind::Apply: break;
    }

    if (is_builtin(e.name)) {
        if (e.args.size() != 2)
            throw Error(ErrorCode::ArityMismatch, "'" + e.name + "' is binary");
        return eval_builtin(e.name, eval_term(s, env, e.args[0]), eval_term(s, env, e.args[1]));
    }

    std::vector<Value> args;
    args.reserve(e.args.size());
    for (const auto& a : e.args)
        args.push_back(eval_term(s, env, a));

    // Universe names double as membership predicates.
    if (!s.vocabulary().find(e.name) && s.vocabulary().is_universe(e.name) && args.size() == 1) {
        const auto& u = universe_of(s, e.name);
        return Value(args[0].is_atom() && std::find(u.begin(), u.end(), args[0].as_atom()) != u.end());
    }
    return s.read(Location(e.name, std::move(args)));
}

bool eval_guard(const State& s, const Environment& env, const Guard& g)
{
    switch (g.kind) {
    case Guard::Kind::Atom: {
        auto v = eval_term(s, env, g.atom);
        if (!v.is_bool())
            throw Error(ErrorCode::TypeError, "guard '" + to_string(g.atom) + "' evaluated to " + v.to_string());
        return v.as_bool();
    }
    case Guard::Kind::And:
        return std::all_of(g.operands.begin(), g.operands.end(),
                           [&](const Guard& o) { return eval_guard(s, env, o); });
    case Guard::Kind::Or:
        return std::any_of(g.operands.begin(), g.operands.end(),
                           [&](const Guard& o) { return eval_guard(s, env, o); });
    case Guard::Kind::Not: return !eval_guard(s, env, g.operands.at(0));
    case Guard::Kind::Forall: {
        Environment inner = env;
        for (const auto& b : universe_of(s, g.universe)) {
            inner[g.variable] = Value(b);
            if (!eval_guard(s, inner, g.operands.at(0)))
                return false;
        }
        return true;
    }
    }
    return false;
}

namespace {

void collect_into(const State& s, const Environment& env, const Rule& r, UpdateSet& out)
{
    switch (r.kind) {
    case Rule::Kind::Update: {
        std::vector<Value> args;
        args.reserve(r.args.size());
        for (const auto& a : r.args)
            args.push_back(eval_term(s, env, a));
        out.insert(Update{Location(r.head, std::move(args)), eval_term(s, env, r.rhs)});
        return;
    }
    case Rule::Kind::Conditional:
        if (eval_guard(s, env, r.guard))
            collect_into(s, env, r.body.at(0), out);
        else if (r.body.size() > 1)
            collect_into(s, env, r.body[1], out);
        return;
    case Rule::Kind::Block:
        for (const auto& child : r.body)
            collect_into(s, env, child, out);
        return;
    case Rule::Kind::VarRange: {
        Environment inner = env;
        for (const auto& b : universe_of(s, r.universe)) {
            inner[r.variable] = Value(b);
            collect_into(s, inner, r.body.at(0), out);
        }
        return;
    }
    }
}

} // namespace

UpdateSet collect_updates(const State& s, const Environment& env, const Rule& r)
{
    UpdateSet out;
    collect_into(s, env, r, out);
    return out;
}

bool enabled(const State& s, const Rule& r) { return enabled(s, {}, r); }

bool enabled(const State& s, const Environment& env, const Rule& r)
{
    const auto updates = collect_updates(s, env, r);
    if (!consistent(updates))
        return false;
    return std::any_of(updates.begin(), updates.end(),
                       [&](const Update& u) { return s.read(u.location) != u.value; });
}

std::set<std::string> head_symbols(const Rule& r)
{
    std::set<std::string> heads;
    std::function<void(const Rule&)> walk = [&](const Rule& x) {
        if (x.kind == Rule::Kind::Update)
            heads.insert(x.head);
        for (const auto& child : x.body)
            walk(child);
    };
    walk(r);
    return heads;
}

namespace {

void add_symbols(const Term& t, std::set<std::string>& out)
{
    if (t.kind == Term::Kind::Apply && !is_builtin(t.name))
        out.insert(t.name);
    for (const auto& a : t.args)
        add_symbols(a, out);
}

void add_symbols(const Guard& g, std::set<std::string>& out)
{
    add_symbols(g.atom, out);
    for (const auto& o : g.operands)
        add_symbols(o, out);
}

void add_symbols(const Rule& r, std::set<std::string>& out)
{
    if (r.kind == Rule::Kind::Update)
        out.insert(r.head);
    for (const auto& a : r.args)
        add_symbols(a, out);
    add_symbols(r.rhs, out);
    add_symbols(r.guard, out);
    for (const auto& child : r.body)
        add_symbols(child, out);
}

} // namespace

std::set<std::string> symbols_of(const Term& t)
{
    std::set<std::string> out;
    add_symbols(t, out);
    return out;
}

std::set<std::string> symbols_of(const Guard& g)
{
    std::set<std::string> out;
    add_symbols(g, out);
    return out;
}

std::set<std::string> symbols_of(const Rule& r)
{
    std::set<std::string> out;
    add_symbols(r, out);
    return out;
}

namespace {

struct WellFormedness {
    const Vocabulary& vocabulary;
    std::vector<std::string> bound;

    bool is_bound(const std::string& name) const
    {
        return std::find(bound.begin(), bound.end(), name) != bound.end();
    }

    void term(const Term& t)
    {
        switch (t.kind) {
        case Term::Kind::Literal: return;
        case Term::Kind::Variable:
            if (!is_bound(t.name))
                throw Error(ErrorCode::UnboundVariable, "variable '" + t.name + "' is free");
            return;
        case Term::Kind::Apply: break;
        }
        if (is_builtin(t.name)) {
            if (t.args.size() != 2)
                throw Error(ErrorCode::ArityMismatch, "'" + t.name + "' is binary");
        } else if (auto* sym = vocabulary.find(t.name)) {
            if (sym->arity != t.args.size())
                throw Error(ErrorCode::ArityMismatch, "'" + t.name + "' has arity " + std::to_string(sym->arity));
        } else if (!(vocabulary.is_universe(t.name) && t.args.size() == 1)) {
            throw Error(ErrorCode::UnknownSymbol, "'" + t.name + "' is not in the vocabulary");
        }
        for (const auto& a : t.args)
            term(a);
    }

    void guard(const Guard& g)
    {
        if (g.kind == Guard::Kind::Atom)
            return term(g.atom);
        if (g.kind == Guard::Kind::Forall) {
            if (!vocabulary.is_universe(g.universe))
                throw Error(ErrorCode::UnknownSymbol, "'" + g.universe + "' is not a universe");
            bound.push_back(g.variable);
            guard(g.operands.at(0));
            bound.pop_back();
            return;
        }
        for (const auto& o : g.operands)
            guard(o);
    }

    void rule(const Rule& r)
    {
        switch (r.kind) {
        case Rule::Kind::Update: {
            if (is_bound(r.head))
                throw Error(ErrorCode::TypeError, "variable '" + r.head + "' cannot be the head of an update");
            const auto& sym = vocabulary.at(r.head);
            if (sym.name == kCurrentTime || sym.classification != SymbolClass::Internal)
                throw Error(ErrorCode::TypeError, "head '" + r.head + "' is not an internal function");
            if (sym.arity != r.args.size())
                throw Error(ErrorCode::ArityMismatch, "'" + r.head + "' has arity " + std::to_string(sym.arity));
            for (const auto& a : r.args)
                term(a);
            term(r.rhs);
            return;
        }
        case Rule::Kind::Conditional: guard(r.guard); break;
        case Rule::Kind::Block: break;
        case Rule::Kind::VarRange:
            if (!vocabulary.is_universe(r.universe))
                throw Error(ErrorCode::UnknownSymbol, "'" + r.universe + "' is not a universe");
            bound.push_back(r.variable);
            rule(r.body.at(0));
            bound.pop_back();
            return;
        }
        for (const auto& child : r.body)
            rule(child);
    }
};

// Affine function of CT: slope * CT + offset. A slope of zero means `value` holds a
// CT-independent value; `truth_depends_on_ct` marks comparisons whose truth varies.
struct Affine {
    Value value;
    Rational slope{0};
    Rational offset{0};
    bool truth_depends_on_ct = false;

    bool ct_free() const { return slope == 0 && !truth_depends_on_ct; }
};

struct CriticalPoints {
    const State& state;
    std::vector<Rational> points;

    void compare(const Affine& a, const Affine& b)
    {
        auto side = [](const Affine& x, Rational& slope, Rational& offset) {
            if (x.slope != 0) {
                slope = x.slope;
                offset = x.offset;
                return true;
            }
            if (!x.value.is_number() || x.value.as_number().is_infinite())
                return false;
            slope = 0;
            offset = x.value.as_number().finite();
            return true;
        };
        Rational s1, o1, s2, o2;
        if (!side(a, s1, o1) || !side(b, s2, o2) || s1 == s2)
            return;
        Rational t = (o2 - o1) / (s1 - s2);
        if (t >= 0)
            points.push_back(std::move(t));
    }

    Affine term(const Environment& env, const Term& t)
    {
        if (t.kind != Term::Kind::Apply)
            return Affine{eval_term(state, env, t)};
        if (t.name == kCurrentTime && t.args.empty())
            return Affine{Value(), Rational(1), Rational(0)};
        if (is_builtin(t.name)) {
            auto a = term(env, t.args.at(0));
            auto b = term(env, t.args.at(1));
            if (a.truth_depends_on_ct || b.truth_depends_on_ct)
                throw Error(ErrorCode::Unsupported, "nested CT-dependent comparison in " + to_string(t));
            if (a.ct_free() && b.ct_free())
                return Affine{eval_builtin(t.name, a.value, b.value)};
            if (t.name == "+") {
                auto infinite = [](const Affine& x) {
                    return x.slope == 0 && x.value.is_number() && x.value.as_number().is_infinite();
                };
                if (infinite(a) || infinite(b))
                    return Affine{Value::infinity()};
                auto finite_offset = [](const Affine& x) {
                    return x.slope != 0 ? x.offset : x.value.as_number().finite();
                };
                Affine sum;
                sum.slope = a.slope + b.slope;
                sum.offset = finite_offset(a) + finite_offset(b);
                if (sum.slope == 0)
                    return Affine{Value(sum.offset)};
                return sum;
            }
            compare(a, b);
            Affine r;
            r.truth_depends_on_ct = true;
            return r;
        }
        std::vector<Value> args;
        for (const auto& a : t.args) {
            auto v = term(env, a);
            if (!v.ct_free())
                throw Error(ErrorCode::Unsupported, "CT inside the argument of " + to_string(t));
            args.push_back(v.value);
        }
        Term folded = Term::apply(t.name);
        for (auto& v : args)
            folded.args.push_back(Term::constant(std::move(v)));
        return Affine{eval_term(state, env, folded)};
    }

    void guard(const Environment& env, const Guard& g)
    {
        switch (g.kind) {
        case Guard::Kind::Atom: term(env, g.atom); return;
        case Guard::Kind::Forall: {
            Environment inner = env;
            for (const auto& b : universe_of(state, g.universe)) {
                inner[g.variable] = Value(b);
                guard(inner, g.operands.at(0));
            }
            return;
        }
        default:
            for (const auto& o : g.operands)
                guard(env, o);
        }
    }

    void rule(const Environment& env, const Rule& r)
    {
        switch (r.kind) {
        case Rule::Kind::Update: {
            std::vector<Value> args;
            for (const auto& a : r.args) {
                auto v = term(env, a);
                if (!v.ct_free())
                    throw Error(ErrorCode::Unsupported, "CT inside the location of an update to " + r.head);
                args.push_back(v.value);
            }
            auto rhs = term(env, r.rhs);
            if (rhs.truth_depends_on_ct)
                throw Error(ErrorCode::Unsupported, "CT-dependent comparison assigned to " + r.head);
            if (rhs.slope != 0)
                compare(rhs, Affine{state.read(Location(r.head, std::move(args)))});
            return;
        }
        case Rule::Kind::Conditional: guard(env, r.guard); break;
        case Rule::Kind::Block: break;
        case Rule::Kind::VarRange: {
            Environment inner = env;
            for (const auto& b : universe_of(state, r.universe)) {
                inner[r.variable] = Value(b);
                rule(inner, r.body.at(0));
            }
            return;
        }
        }
        for (const auto& child : r.body)
            rule(env, child);
    }

    std::vector<Rational> finish()
    {
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        return std::move(points);
    }
};

} // namespace

void check_program(const Program& p, const Vocabulary& vocabulary)
{
    for (const auto& m : p.modules)
        WellFormedness{vocabulary, {}}.rule(m.rule);
}

std::vector<Rational> ct_critical_points(const State& s, const Rule& r)
{
    CriticalPoints cp{s, {}};
    cp.rule({}, r);
    return cp.finish();
}

std::vector<Rational> ct_critical_points(const State& s, const Environment& env, const Guard& g)
{
    CriticalPoints cp{s, {}};
    cp.guard(env, g);
    return cp.finish();
}

namespace {

bool is_comparison(const Term& t) { return t.kind == Term::Kind::Apply && (t.name == "=" || t.name == "<"); }
bool is_sum(const Term& t) { return t.kind == Term::Kind::Apply && t.name == "+"; }

void print_term(std::ostream& os, const Term& t)
{
    switch (t.kind) {
    case Term::Kind::Literal: os << t.literal; return;
    case Term::Kind::Variable: os << t.name; return;
    case Term::Kind::Apply: break;
    }
    if (is_builtin(t.name)) {
        const auto& lhs = t.args.at(0);
        const auto& rhs = t.args.at(1);
        const bool wrap_lhs = is_comparison(lhs);
        const bool wrap_rhs = is_comparison(rhs) || (is_sum(t) && is_sum(rhs));
        if (wrap_lhs)
            os << '(';
        print_term(os, lhs);
        if (wrap_lhs)
            os << ')';
        os << ' ' << t.name << ' ';
        if (wrap_rhs)
            os << '(';
        print_term(os, rhs);
        if (wrap_rhs)
            os << ')';
        return;
    }
    os << t.name;
    if (!t.args.empty()) {
        os << '(';
        for (std::size_t i = 0; i < t.args.size(); ++i) {
            if (i)
                os << ", ";
            print_term(os, t.args[i]);
        }
        os << ')';
    }
}

void print_guard(std::ostream& os, const Guard& g)
{
    auto operand = [&](const Guard& o) {
        const bool wrap = o.kind == Guard::Kind::And || o.kind == Guard::Kind::Or;
        if (wrap)
            os << '(';
        print_guard(os, o);
        if (wrap)
            os << ')';
    };
    switch (g.kind) {
    case Guard::Kind::Atom: print_term(os, g.atom); return;
    case Guard::Kind::And:
    case Guard::Kind::Or:
        for (std::size_t i = 0; i < g.operands.size(); ++i) {
            if (i)
                os << (g.kind == Guard::Kind::And ? " and " : " or ");
            operand(g.operands[i]);
        }
        return;
    case Guard::Kind::Not:
        os << "not ";
        operand(g.operands.at(0));
        return;
    case Guard::Kind::Forall:
        os << "forall " << g.variable << " in " << g.universe << " (";
        print_guard(os, g.operands.at(0));
        os << ')';
        return;
    }
}

void print_rule(std::ostream& os, const Rule& r, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    switch (r.kind) {
    case Rule::Kind::Update:
        os << pad << r.head;
        if (!r.args.empty()) {
            os << '(';
            for (std::size_t i = 0; i < r.args.size(); ++i) {
                if (i)
                    os << ", ";
                print_term(os, r.args[i]);
            }
            os << ')';
        }
        os << " := ";
        print_term(os, r.rhs);
        os << '\n';
        return;
    case Rule::Kind::Conditional:
        os << pad << "if ";
        print_guard(os, r.guard);
        os << " then\n";
        print_rule(os, r.body.at(0), indent + 1);
        if (r.body.size() > 1) {
            os << pad << "else\n";
            print_rule(os, r.body[1], indent + 1);
        }
        os << pad << "endif\n";
        return;
    case Rule::Kind::Block:
        os << pad << "block\n";
        for (const auto& child : r.body)
            print_rule(os, child, indent + 1);
        os << pad << "endblock\n";
        return;
    case Rule::Kind::VarRange:
        os << pad << "var " << r.variable << " ranges over " << r.universe << '\n';
        print_rule(os, r.body.at(0), indent + 1);
        os << pad << "endvar\n";
        return;
    }
}

} // namespace

std::string to_string(const Term& t)
{
    std::ostringstream os;
    print_term(os, t);
    return os.str();
}

std::string to_string(const Guard& g)
{
    std::ostringstream os;
    print_guard(os, g);
    return os.str();
}

std::string to_string(const Rule& r, int indent)
{
    std::ostringstream os;
    print_rule(os, r, indent);
    return os.str();
}

} // namespace rtasm
