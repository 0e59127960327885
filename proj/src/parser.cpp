#include "rtasm/parser.hpp"

#include "rtasm/error.hpp"

#include <cctype>
#include <set>

namespace rtasm {

namespace {

const std::set<std::string> kKeywords = {"if",  "then",   "else",  "endif", "block", "endblock", "var",  "ranges",
                                         "over", "endvar", "and",   "or",    "not",   "forall",   "in",   "infinity",
                                         "true", "false"};

struct Token {
    enum class Kind { Identifier, Keyword, Number, Symbol, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
    int column = 1;
};

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> tokens;
    int line = 1, column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::SyntaxError, std::to_string(line) + ":" + std::to_string(column) + ": " + what);
    };

    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token tok;
        tok.line = line;
        tok.column = column;
        std::size_t j = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            tok.text = std::string(text.substr(i, j - i));
            tok.kind = kKeywords.count(tok.text) ? Token::Kind::Keyword : Token::Kind::Identifier;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            if (j < text.size() && (text[j] == '.' || text[j] == '/')) {
                const std::size_t k = j + 1;
                if (k >= text.size() || !std::isdigit(static_cast<unsigned char>(text[k])))
                    fail("malformed number");
                j = k;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                    ++j;
            }
            tok.text = std::string(text.substr(i, j - i));
            tok.kind = Token::Kind::Number;
        } else if (c == ':' && i + 1 < text.size() && text[i + 1] == '=') {
            tok.text = ":=";
            tok.kind = Token::Kind::Symbol;
            j = i + 2;
        } else if (c == '(' || c == ')' || c == ',' || c == '=' || c == '<' || c == '+') {
            tok.text = std::string(1, c);
            tok.kind = Token::Kind::Symbol;
            j = i + 1;
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
        advance(j - i);
        tokens.push_back(std::move(tok));
    }
    Token end;
    end.line = line;
    end.column = column;
    tokens.push_back(end);
    return tokens;
}

class Parser {
public:
    Parser(std::string_view text, const GuardAbbreviations& abbreviations)
        : tokens_(tokenize(text)), abbreviations_(abbreviations)
    {
    }

    Rule parse_program()
    {
        auto rules = rule_sequence({});
        expect_end();
        if (rules.empty())
            fail(peek(), "expected a rule");
        return rules.size() == 1 ? std::move(rules.front()) : Rule::block(std::move(rules));
    }

    Guard parse_guard_only()
    {
        auto g = guard();
        expect_end();
        return g;
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }

    bool at(std::string_view text) const
    {
        const auto& t = peek();
        return (t.kind == Token::Kind::Keyword || t.kind == Token::Kind::Symbol) && t.text == text;
    }

    [[noreturn]] void fail(const Token& t, const std::string& what) const
    {
        const std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw Error(ErrorCode::SyntaxError,
                    std::to_string(t.line) + ":" + std::to_string(t.column) + ": " + what + ", found " + found);
    }

    void expect(std::string_view text)
    {
        if (!at(text))
            fail(peek(), "expected '" + std::string(text) + "'");
        ++pos_;
    }

    void expect_end() const
    {
        if (peek().kind != Token::Kind::End)
            fail(peek(), "expected end of input");
    }

    std::string identifier(const std::string& what)
    {
        if (peek().kind != Token::Kind::Identifier)
            fail(peek(), "expected " + what);
        return tokens_[pos_++].text;
    }

    bool is_bound(const std::string& name) const
    {
        for (const auto& b : bound_)
            if (b == name)
                return true;
        return false;
    }

    bool starts_rule() const
    {
        return at("if") || at("block") || at("var") || peek().kind == Token::Kind::Identifier;
    }

    std::vector<Rule> rule_sequence(std::initializer_list<std::string_view> terminators)
    {
        std::vector<Rule> rules;
        while (starts_rule()) {
            bool stop = false;
            for (auto t : terminators)
                stop = stop || at(t);
            if (stop)
                break;
            rules.push_back(rule());
        }
        return rules;
    }

    Rule rules_as_one(std::initializer_list<std::string_view> terminators)
    {
        auto rules = rule_sequence(terminators);
        if (rules.empty())
            fail(peek(), "expected a rule");
        return rules.size() == 1 ? std::move(rules.front()) : Rule::block(std::move(rules));
    }

    Rule rule()
    {
        if (at("if")) {
            ++pos_;
            auto g = guard();
            expect("then");
            auto then_rule = rules_as_one({"else", "endif"});
            std::optional<Rule> else_rule;
            if (at("else")) {
                ++pos_;
                else_rule = rules_as_one({"endif"});
            }
            expect("endif");
            return Rule::when(std::move(g), std::move(then_rule), std::move(else_rule));
        }
        if (at("block")) {
            ++pos_;
            auto rules = rule_sequence({"endblock"});
            expect("endblock");
            return Rule::block(std::move(rules));
        }
        if (at("var")) {
            ++pos_;
            auto var = identifier("a variable name");
            expect("ranges");
            expect("over");
            auto universe = identifier("a universe name");
            bound_.push_back(var);
            auto body = rules_as_one({"endvar"});
            bound_.pop_back();
            expect("endvar");
            return Rule::var_range(std::move(var), std::move(universe), std::move(body));
        }
        const Token& head_token = peek();
        auto head = identifier("a rule");
        if (is_bound(head))
            fail(head_token, "variable '" + head + "' cannot be the head of an update");
        std::vector<Term> args;
        if (at("(")) {
            ++pos_;
            args = term_list();
            expect(")");
        }
        expect(":=");
        if (!starts_term())
            fail(peek(), "expected a right-hand term");
        auto rhs = expression();
        return Rule::update(std::move(head), std::move(args), std::move(rhs));
    }

    bool starts_term() const
    {
        const auto& t = peek();
        return t.kind == Token::Kind::Identifier || t.kind == Token::Kind::Number || at("infinity") || at("true") ||
               at("false") || at("(");
    }

    std::vector<Term> term_list()
    {
        std::vector<Term> args;
        args.push_back(expression());
        while (at(",")) {
            ++pos_;
            args.push_back(expression());
        }
        return args;
    }

    Guard guard()
    {
        std::vector<Guard> parts;
        parts.push_back(conjunction());
        while (at("or")) {
            ++pos_;
            parts.push_back(conjunction());
        }
        return parts.size() == 1 ? std::move(parts.front()) : Guard::any(std::move(parts));
    }

    Guard conjunction()
    {
        std::vector<Guard> parts;
        parts.push_back(unary());
        while (at("and")) {
            ++pos_;
            parts.push_back(unary());
        }
        return parts.size() == 1 ? std::move(parts.front()) : Guard::all(std::move(parts));
    }

    Guard unary()
    {
        if (at("not")) {
            ++pos_;
            return Guard::negate(unary());
        }
        if (at("forall")) {
            ++pos_;
            auto var = identifier("a variable name");
            expect("in");
            auto universe = identifier("a universe name");
            expect("(");
            bound_.push_back(var);
            auto body = guard();
            bound_.pop_back();
            expect(")");
            return Guard::forall(std::move(var), std::move(universe), std::move(body));
        }
        if (peek().kind == Token::Kind::Identifier && !is_bound(peek().text)) {
            auto it = abbreviations_.find(peek().text);
            if (it != abbreviations_.end() && !(peek(1).kind == Token::Kind::Symbol && peek(1).text != ")" &&
                                                peek(1).text != ",")) {
                ++pos_;
                return it->second;
            }
        }
        if (at("(")) {
            // Either a parenthesized term starting a comparison or a parenthesized guard.
            const auto saved = pos_;
            try {
                auto t = expression();
                if (!(at("and") || at("or") || at(")") || at("then") || peek().kind == Token::Kind::End))
                    throw Error(ErrorCode::SyntaxError, "not a term");
                return Guard::of(std::move(t));
            } catch (const Error&) {
                pos_ = saved;
            }
            ++pos_;
            auto g = guard();
            expect(")");
            return g;
        }
        if (!starts_term())
            fail(peek(), "expected a guard");
        return Guard::of(expression());
    }

    Term expression()
    {
        auto lhs = sum();
        if (at("=") || at("<")) {
            const std::string op = tokens_[pos_++].text;
            if (!starts_term())
                fail(peek(), "expected a term after '" + op + "'");
            auto rhs = sum();
            return Term::apply(op, {std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    Term sum()
    {
        auto t = primary();
        while (at("+")) {
            ++pos_;
            t = std::move(t) + primary();
        }
        return t;
    }

    Term primary()
    {
        const auto& tok = peek();
        if (tok.kind == Token::Kind::Number) {
            ++pos_;
            return Term::constant(Value(parse_rational(tok.text)));
        }
        if (at("infinity")) {
            ++pos_;
            return Term::constant(Value::infinity());
        }
        if (at("true") || at("false")) {
            ++pos_;
            return Term::constant(Value(tok.text == "true"));
        }
        if (at("(")) {
            ++pos_;
            auto t = expression();
            expect(")");
            return t;
        }
        if (tok.kind != Token::Kind::Identifier)
            fail(tok, "expected a term");
        auto name = identifier("a term");
        if (is_bound(name)) {
            if (at("("))
                fail(peek(), "variable '" + name + "' applied to arguments");
            return Term::variable(std::move(name));
        }
        std::vector<Term> args;
        if (at("(")) {
            ++pos_;
            args = term_list();
            expect(")");
        }
        return Term::apply(std::move(name), std::move(args));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<std::string> bound_;
    const GuardAbbreviations& abbreviations_;
};

} // namespace

Rule parse_rule(std::string_view text, const GuardAbbreviations& abbreviations)
{
    return Parser(text, abbreviations).parse_program();
}

Guard parse_guard(std::string_view text, const GuardAbbreviations& abbreviations)
{
    return Parser(text, abbreviations).parse_guard_only();
}

} // namespace rtasm
