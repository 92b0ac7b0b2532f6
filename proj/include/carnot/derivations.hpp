#pragma once

#include "carnot/algebra.hpp"
#include "carnot/matrix_subspace.hpp"

#include <stdexcept>
#include <vector>

namespace carnot {

struct IdentificationNotInjective : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Basis of g_0(n), the strata-preserving derivations, as the full solution
// space of the Leibniz linear system over all basis pairs.
std::vector<StrataDerivation> strata_derivations(const GradedLieAlgebra& a);

struct HZero {
    std::vector<StrataDerivation> basis;  // derivations vanishing on g_{-s} + ... + g_{-2}
    MatrixSubspace identified;            // their first blocks, a subalgebra of gl(g_{-1})
};

// h_0(n) computed as a kernel inside g_0(n), then identified with its first
// blocks. The restriction map is verified injective; failure signals an
// invalid algebra and raises IdentificationNotInjective.
HZero h_zero(const GradedLieAlgebra& a);

// Basis of {D in g_0(n) : D|g_{-1} + (D|g_{-1})^t = lambda I for some lambda},
// the declared g_{-1} basis being treated as orthonormal. The lambda unknowns
// are eliminated by the solver.
std::vector<StrataDerivation> conformal_subalgebra(const GradedLieAlgebra& a);

// Basis of {D in g_0(n) : D|g_{-1} in span(horizontal)}; the general form of
// the conformal computation for an arbitrary subspace of gl(g_{-1}).
std::vector<StrataDerivation> derivations_with_horizontal_part_in(
    const GradedLieAlgebra& a, const MatrixSubspace& horizontal);

// Span membership over flattened block data.
bool derivation_in_span(const GradedLieAlgebra& a, const std::vector<StrataDerivation>& span,
                        const StrataDerivation& d);

}  // namespace carnot
