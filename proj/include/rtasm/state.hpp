#pragma once

#include "rtasm/value.hpp"

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace rtasm {

enum class SymbolClass { Static, Internal, External };

struct FunctionSymbol {
    std::string name;
    std::size_t arity = 0;
    bool is_relation = false;
    SymbolClass classification = SymbolClass::Static;

    friend bool operator==(const FunctionSymbol&, const FunctionSymbol&) = default;
};

/// Name of the distinguished current-time symbol.
inline constexpr const char* kCurrentTime = "CT";

/// Function symbols plus the finite universes the program may quantify over.
class Vocabulary {
public:
    void add(FunctionSymbol symbol);
    void add_universe(std::string name, std::vector<Atom> elements);

    const FunctionSymbol* find(const std::string& name) const;
    /// Throws Error(UnknownSymbol).
    const FunctionSymbol& at(const std::string& name) const;

    const std::vector<Atom>* universe(const std::string& name) const;
    bool is_universe(const std::string& name) const { return universe(name) != nullptr; }

    const std::map<std::string, FunctionSymbol>& symbols() const { return symbols_; }
    const std::map<std::string, std::vector<Atom>>& universes() const { return universes_; }

private:
    std::map<std::string, FunctionSymbol> symbols_;
    std::map<std::string, std::vector<Atom>> universes_;
};

struct Location {
    std::string symbol;
    std::vector<Value> args;

    Location() = default;
    Location(std::string s, std::vector<Value> a = {}) : symbol(std::move(s)), args(std::move(a)) {}

    friend bool operator==(const Location&, const Location&) = default;
    friend std::strong_ordering operator<=>(const Location& a, const Location& b);

    /// "Dir", "Deadline(trk1)".
    std::string to_string() const;
    /// Inverse of to_string.
    static Location parse(const std::string& text);
};

struct Update {
    Location location;
    Value value;

    friend bool operator==(const Update&, const Update&) = default;
    friend std::strong_ordering operator<=>(const Update& a, const Update& b);
};

/// Ordered set; identical pairs collapse.
using UpdateSet = std::set<Update>;

/// Finite interpretation over a shared immutable vocabulary. Unmapped locations read as
/// undef, or false for relations.
class State {
public:
    explicit State(std::shared_ptr<const Vocabulary> vocabulary);

    const Vocabulary& vocabulary() const { return *vocabulary_; }
    const std::shared_ptr<const Vocabulary>& vocabulary_ptr() const { return vocabulary_; }

    /// Throws UnknownSymbol, ArityMismatch.
    Value read(const Location& location) const;

    /// Unchecked write used when assembling states; validates symbol, arity and relation values.
    void write(const Location& location, Value value);

    const std::map<Location, Value>& contents() const { return interp_; }

    friend bool operator==(const State& a, const State& b);

private:
    void check_location(const Location& location) const;

    std::shared_ptr<const Vocabulary> vocabulary_;
    std::map<Location, Value> interp_;
};

bool consistent(const UpdateSet& updates);

/// Performs a consistent update set; an inconsistent one is a no-op. `changed` reports
/// whether any nontrivial update was performed.
std::pair<State, bool> apply_updates(const State& state, const UpdateSet& updates);

Value read_location(const State& state, const Location& location);

/// Updates whose value differs from the current content.
UpdateSet nontrivial_updates(const State& state, const UpdateSet& updates);

} // namespace rtasm
