#pragma once

#include "carnot/multipoly.hpp"

#include <stdexcept>
#include <vector>

namespace carnot {

struct NonHomogeneousInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A capped computation ended before reaching a verdict. Distinct from any
// answer; callers surface it as "partial", never as rigid/nonrigid.
struct ComputationCapReached : std::runtime_error {
    explicit ComputationCapReached(unsigned long steps_done)
        : std::runtime_error("computation cap reached"), steps(steps_done) {}
    unsigned long steps;
};

struct GroebnerOptions {
    MonoOrder order = MonoOrder::Grevlex;
    // Maximum S-pair reductions; 0 means "module default, possibly overridden
    // by the CARNOT_MAX_GB_STEPS environment variable".
    unsigned long max_steps = 0;
};

struct GroebnerResult {
    std::vector<MultiPoly> basis;  // reduced basis, monic, sorted ascending in the order
    MonoOrder order = MonoOrder::Grevlex;
    bool complete = true;
    unsigned long steps = 0;
};

unsigned long effective_gb_budget(const GroebnerOptions& opt);

GroebnerResult groebner_basis(const std::vector<MultiPoly>& generators,
                              const GroebnerOptions& opt = {});

// Fully reduced remainder of p modulo the given basis; no term of the result
// is divisible by any leading term of the basis.
MultiPoly normal_form(const MultiPoly& p, const std::vector<MultiPoly>& basis,
                      MonoOrder order = MonoOrder::Grevlex);

// Decides whether the common complex zero set of a homogeneous ideal is {0}:
// true iff the reduced grevlex basis has, for every variable, an element whose
// leading monomial is a pure power of it. Empty input: the variety is all of
// C^n, so the answer is false for n >= 1. Throws NonHomogeneousInput when a
// nonzero generator is not homogeneous of positive degree, and
// ComputationCapReached when the basis computation hits the step budget.
bool only_origin(int nvars, const std::vector<MultiPoly>& generators,
                 const GroebnerOptions& opt = {}, GroebnerResult* out_basis = nullptr);

}  // namespace carnot
