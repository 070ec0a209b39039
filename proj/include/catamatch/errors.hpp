#pragma once

#include <stdexcept>
#include <string>

namespace cm {

// Error hierarchy shared by all modules. Everything derives from Error so
// callers can catch the whole family at the CLI boundary.

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero in GF(p)") {}
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(what) {}
};

class FieldTooSmall : public Error {
public:
    explicit FieldTooSmall(const std::string& what) : Error(what) {}
};

// The tape API was used out of order (double compression, reading a
// compressed block, restoring a pristine block, ...).
class ContractViolation : public Error {
public:
    explicit ContractViolation(const std::string& what) : Error(what) {}
};

// A restoration callback produced zero or more than one candidate. This is
// the runtime face of the uniqueness lemmas; it must never fire on a
// legitimate run.
class UniquenessViolation : public Error {
public:
    explicit UniquenessViolation(const std::string& what) : Error(what) {}
};

// A structural consequence promised by a lemma failed to hold (e.g. the
// extracted edge set is not a perfect matching). Surfaced loudly, never
// repaired silently.
class LemmaViolation : public Error {
public:
    explicit LemmaViolation(const std::string& what) : Error(what) {}
};

class PreconditionViolation : public Error {
public:
    explicit PreconditionViolation(const std::string& what) : Error(what) {}
};

} // namespace cm
