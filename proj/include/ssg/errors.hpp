#pragma once

#include <stdexcept>
#include <string>

namespace ssg {

// Malformed input text (group files, words, lassos, JSON documents).
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input that violates a precondition (phi not a function,
// nucleus not state-closed, level out of range, ...).
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// A search or closure exceeded its configured budget.  This is an explicit
// "unknown" outcome, never a wrong answer.
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Reached a state the algorithms guarantee impossible; indicates a bug or
// inconsistent hand-edited input (e.g. a run slice that cannot be decoded).
struct internal_inconsistency : std::runtime_error {
    explicit internal_inconsistency(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ssg
