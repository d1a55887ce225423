#pragma once
#include <stdexcept>
#include <string>

namespace dlops {

// Base for all engine errors so callers can catch one type at the API edge.
struct EngineError : std::runtime_error {
    explicit EngineError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structural misuse: mixed ambient algebras, bad generator data, invalid prime.
struct DomainError : EngineError {
    explicit DomainError(const std::string& msg) : EngineError(msg) {}
};

// Degree bound violations: relation above bound, query above bound.
struct BoundError : EngineError {
    explicit BoundError(const std::string& msg) : EngineError(msg) {}
};

// Expression text failed to parse; position is a byte offset into the input.
struct ParseError : EngineError {
    ParseError(const std::string& msg, size_t position)
        : EngineError(msg), pos(position) {}
    size_t pos;
};

// An operation value was requested that neither the table nor the
// instability axioms determine.  Never silently zero.
struct MissingTableEntry : EngineError {
    MissingTableEntry(const std::string& side_, const std::string& word_,
                      const std::string& generator_)
        : EngineError("no table entry for " + side_ + " action of " + word_ +
                      " on " + generator_),
          side(side_), word(word_), generator(generator_) {}
    std::string side, word, generator;
};

// Search space exceeded an enumeration budget; carries the offending size.
struct BudgetError : EngineError {
    BudgetError(const std::string& msg, unsigned long long size_)
        : EngineError(msg), size(size_) {}
    unsigned long long size;
};

} // namespace dlops
