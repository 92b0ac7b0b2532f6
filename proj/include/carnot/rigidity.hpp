#pragma once

#include "carnot/algebra.hpp"
#include "carnot/groebner.hpp"
#include "carnot/matrix_subspace.hpp"
#include "carnot/multipoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace carnot {

struct CharacteristicInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// 2x2 minors of ad(sum_i x_i e_i) over the g_{-1} basis, in d_1 variables.
// Nonzero common complex zeros are exactly the elements with rank ad <= 1.
std::vector<MultiPoly> minor_ideal_adX(const GradedLieAlgebra& a);

// 2x2 minors of sum_q z_q A_q for an independent basis A_q; nonzero common
// zeros correspond to the rank-one elements of the span.
std::vector<MultiPoly> minor_ideal_h0(const MatrixSubspace& h0);

// The certificate polynomial P_xi(eta) = det(B_xi o sigma_eta), homogeneous of
// degree n with P_xi(xi) = 1; it vanishes on every characteristic covector.
// Throws CharacteristicInput when sigma_xi fails to be injective.
MultiPoly characteristic_certificate(const MatrixSubspace& g0, const std::vector<Rational>& xi);

struct WitnessOptions {
    int random_budget = 500;
    unsigned long seed = 0x9e3779b97f4a7c15ULL;
};

// Best-effort search for a nonzero X in (complexified) g_{-1} with
// rank ad X <= 1; every returned candidate is re-verified by exact rank.
// Absence is inconclusive; verdicts never depend on this search.
std::optional<std::vector<GaussianRational>> witness_search(const GradedLieAlgebra& a,
                                                            const WitnessOptions& opt = {});

enum class VerdictKind { Rigid, NonrigidDegenerate, NonrigidRankOne };

std::string to_string(VerdictKind k);

struct GbStats {
    unsigned long steps = 0;
    std::size_t basis_size = 0;
};

struct RigidityVerdict {
    VerdictKind kind = VerdictKind::Rigid;
    // Coordinates over the g_{-1} basis; real for degenerate witnesses,
    // possibly complex for rank-one witnesses.
    std::optional<std::vector<GaussianRational>> witness;
    std::vector<std::string> criteria;  // which tests decided, in order applied
    std::optional<bool> cross_check_agrees;
    GbStats gb;
};

struct VerdictOptions {
    bool cross_check = false;
    bool find_witness = false;
    GroebnerOptions gb = {};
    WitnessOptions witness = {};
};

// Decision order: degenerate subspace, then the h^(0) dimension bound, then
// the only-origin test on the ad-minor ideal. Under cross_check the rank-one
// ideal of h^(0) is also decided and the two routes must agree.
RigidityVerdict rigidity_verdict(const GradedLieAlgebra& a, const VerdictOptions& opt = {});

}  // namespace carnot
