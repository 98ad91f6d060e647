/*
 * Dense root isolation on (0,1) by bisection with Descartes counting.
 *
 * This is the classical expanded-coefficient route. It only scales to
 * moderate degrees, so the sign engine from sparsepoly.hpp is the one
 * production code paths use; this module provides the independent
 * cross-check route for tests plus an escalation path for inputs the
 * sparse engine reports as undecidable.
 *
 * All coefficients are exact integers. Subdivision is certified: a
 * square-free input makes Descartes counts reach 0 or 1 at a finite
 * depth, and square-freeness itself is certified by a trivial gcd of
 * the polynomial and its derivative modulo a prime that divides
 * neither leading coefficient.
 */
#pragma once

#include <utility>
#include <vector>

#include "simplexdet/bigint.hpp"
#include "simplexdet/sparsepoly.hpp"

namespace simplexdet {

struct DensePoly {
    std::vector<Int> c;  // c[i] multiplies x^i; trailing zeros trimmed

    long long degree() const { return (long long)c.size() - 1; }
    Rat value_at(const Rat& x) const;
    bool zero() const { return c.empty(); }
};

// Expands a sparse polynomial; refuses degrees above the cap.
DensePoly dense_from_sparse(const SparsePoly& f, long long max_degree);

// gcd(f, f') is constant modulo a prime not dividing the leading
// coefficients: a proof that f is square-free over the rationals.
// Returns false when the modular gcd is nontrivial (which leaves
// square-freeness undecided for the rare unlucky prime).
bool squarefree_certificate(const DensePoly& f);

struct Isolation {
    std::vector<std::pair<Rat, Rat>> brackets;  // one simple root each, open intervals
    std::vector<Rat> exact_roots;               // dyadic roots hit head-on
};

// Isolates all roots in (0,1). Requires a square-free certificate from
// the caller; throws budget_exhausted past max_depth.
Isolation isolate_roots_01(const DensePoly& f, int max_depth = 128);

// Root-free on (0,1) means a positive leading behavior cannot dip
// negative: the dense nonnegativity oracle for square-free inputs.
NonnegResult nonnegative_on_unit_dense(const DensePoly& f, int max_depth = 128);

}  // namespace simplexdet
