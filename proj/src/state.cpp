#include "rtasm/state.hpp"

#include "rtasm/error.hpp"

#include <sstream>

namespace rtasm {

void Vocabulary::add(FunctionSymbol symbol)
{
    auto name = symbol.name;
    symbols_[name] = std::move(symbol);
}

void Vocabulary::add_universe(std::string name, std::vector<Atom> elements)
{
    universes_[std::move(name)] = std::move(elements);
}

const FunctionSymbol* Vocabulary::find(const std::string& name) const
{
    auto it = symbols_.find(name);
    return it == symbols_.end() ? nullptr : &it->second;
}

const FunctionSymbol& Vocabulary::at(const std::string& name) const
{
    if (auto* s = find(name))
        return *s;
    throw Error(ErrorCode::UnknownSymbol, "'" + name + "' is not in the vocabulary");
}

const std::vector<Atom>* Vocabulary::universe(const std::string& name) const
{
    auto it = universes_.find(name);
    return it == universes_.end() ? nullptr : &it->second;
}

std::strong_ordering operator<=>(const Location& a, const Location& b)
{
    if (auto c = a.symbol <=> b.symbol; c != 0)
        return c;
    const auto n = std::min(a.args.size(), b.args.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = a.args[i] <=> b.args[i]; c != 0)
            return c;
    return a.args.size() <=> b.args.size();
}

std::string Location::to_string() const
{
    if (args.empty())
        return symbol;
    std::ostringstream os;
    os << symbol << '(';
    for (std::size_t i = 0; i < args.size(); ++i)
        os << (i ? "," : "") << args[i];
    os << ')';
    return os.str();
}

Location Location::parse(const std::string& text)
{
    auto open = text.find('(');
    if (open == std::string::npos)
        return Location(text);
    if (text.back() != ')')
        throw Error(ErrorCode::ParseError, "malformed location '" + text + "'");
    Location loc(text.substr(0, open));
    const auto inner = text.substr(open + 1, text.size() - open - 2);
    std::size_t start = 0;
    while (start <= inner.size()) {
        auto comma = inner.find(',', start);
        if (comma == std::string::npos)
            comma = inner.size();
        loc.args.push_back(Value::parse(inner.substr(start, comma - start)));
        start = comma + 1;
    }
    return loc;
}

std::strong_ordering operator<=>(const Update& a, const Update& b)
{
    if (auto c = a.location <=> b.location; c != 0)
        return c;
    return a.value <=> b.value;
}

State::State(std::shared_ptr<const Vocabulary> vocabulary) : vocabulary_(std::move(vocabulary)) {}

void State::check_location(const Location& location) const
{
    const auto& symbol = vocabulary_->at(location.symbol);
    if (symbol.arity != location.args.size())
        throw Error(ErrorCode::ArityMismatch, location.to_string() + ": '" + symbol.name + "' has arity " +
                                                  std::to_string(symbol.arity));
}

Value State::read(const Location& location) const
{
    check_location(location);
    if (auto it = interp_.find(location); it != interp_.end())
        return it->second;
    return vocabulary_->at(location.symbol).is_relation ? Value(false) : Value();
}

void State::write(const Location& location, Value value)
{
    check_location(location);
    const bool relation = vocabulary_->at(location.symbol).is_relation;
    if (relation && !value.is_bool())
        throw Error(ErrorCode::IllegalValue,
                    "relation location " + location.to_string() + " cannot hold " + value.to_string());
    // Defaults are not stored, so equal interpretations compare equal.
    const Value fallback = relation ? Value(false) : Value();
    if (value == fallback)
        interp_.erase(location);
    else
        interp_.insert_or_assign(location, std::move(value));
}

bool operator==(const State& a, const State& b) { return a.interp_ == b.interp_; }

bool consistent(const UpdateSet& updates)
{
    const Update* prev = nullptr;
    for (const auto& u : updates) {
        if (prev && prev->location == u.location && prev->value != u.value)
            return false;
        prev = &u;
    }
    return true;
}

std::pair<State, bool> apply_updates(const State& state, const UpdateSet& updates)
{
    for (const auto& u : updates) {
        const auto& symbol = state.vocabulary().at(u.location.symbol);
        if (symbol.is_relation && !u.value.is_bool())
            throw Error(ErrorCode::IllegalValue,
                        "relation location " + u.location.to_string() + " cannot hold " + u.value.to_string());
    }
    if (!consistent(updates))
        return {state, false};

    State next = state;
    bool changed = false;
    for (const auto& u : updates) {
        if (state.read(u.location) != u.value) {
            next.write(u.location, u.value);
            changed = true;
        }
    }
    return {std::move(next), changed};
}

Value read_location(const State& state, const Location& location) { return state.read(location); }

UpdateSet nontrivial_updates(const State& state, const UpdateSet& updates)
{
    UpdateSet result;
    for (const auto& u : updates)
        if (state.read(u.location) != u.value)
            result.insert(u);
    return result;
}

} // namespace rtasm
