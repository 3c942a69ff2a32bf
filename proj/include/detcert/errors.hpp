#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace detcert {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Malformed polynomial or file text; position is a 1-based column.
class ParseError : public Error {
public:
    ParseError(const std::string& what_arg, std::size_t pos)
        : Error(what_arg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Operands disagree on variable count or shape.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what_arg) : Error(what_arg) {}
};

// Input rejected before any computation starts.
class InputError : public Error {
public:
    explicit InputError(const std::string& what_arg) : Error(what_arg) {}
};

// Some entry is not weighted homogeneous w.r.t. the declared weights.
class NotQuasihomogeneousError : public Error {
public:
    NotQuasihomogeneousError(const std::string& what_arg,
                             std::vector<std::pair<int, int>> bad)
        : Error(what_arg), entries(std::move(bad)) {}
    std::vector<std::pair<int, int>> entries;  // offending (row, col), 1-based
};

// Degree matrix violates d_ij - d_ik = d_lj - d_lk.
class TypeRelationError : public Error {
public:
    TypeRelationError(const std::string& what_arg, int i_, int l_, int j_, int k_)
        : Error(what_arg), i(i_), l(l_), j(j_), k(k_) {}
    int i, l, j, k;  // 1-based row pair (i,l) and column pair (j,k)
};

// A zero entry whose degree the type relations cannot pin down.
class UnconstrainedEntryError : public Error {
public:
    UnconstrainedEntryError(const std::string& what_arg, int i_, int j_)
        : Error(what_arg), i(i_), j(j_) {}
    int i, j;  // 1-based
};

// Perturbation entries that break the strict degree condition.
class DegreeConditionError : public Error {
public:
    DegreeConditionError(const std::string& what_arg,
                         std::vector<std::pair<int, int>> bad,
                         std::string term_)
        : Error(what_arg), entries(std::move(bad)), term(std::move(term_)) {}
    std::vector<std::pair<int, int>> entries;  // offending (row, col), 1-based
    std::string term;                          // printed offending term
};

}  // namespace detcert
