/*
 * Error types shared across the library.
 *
 * invariant_violation signals that two independent computation routes
 * for the same quantity disagreed; it always indicates a bug, never
 * bad user input. budget_exhausted signals that an adaptive search hit
 * its configured depth or time limit before reaching a decision; the
 * partial state it reports is still sound.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace simplexdet {

struct invariant_violation : std::logic_error {
    explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

struct budget_exhausted : std::runtime_error {
    explicit budget_exhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace simplexdet
