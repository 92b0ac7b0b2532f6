#pragma once

#include "carnot/algebra.hpp"
#include "carnot/derivations.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace carnot {

struct TowerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LevelNotComputed : TowerError {
    using TowerError::TowerError;
};
struct TowerNotTerminated : TowerError {
    using TowerError::TowerError;
};

enum class G0Mode { Full, Conformal, H0, Custom };

struct TowerOptions {
    G0Mode mode = G0Mode::Full;
    // A proper g0 selection (conformal, h0, custom) defines the restricted
    // tower Prol(n, g0); the full tower takes g0 = g_0(n) and is unrestricted.
    bool restricted = false;
    int max_level = 10;
    // When false, keep solving past the first zero level up to the cap; used
    // to observe the monotone-termination property directly.
    bool stop_at_first_zero = true;
    std::vector<StrataDerivation> custom_g0;
};

// One prolongation element of level k: for each stratum g_{-j} a matrix whose
// columns are the images of the stratum basis, written in stratum coordinates
// when k - j < 0 and in the computed level-(k-j) basis when k - j >= 0.
struct ProlongationElement {
    int level = 0;
    std::vector<QMatrix> comp;  // comp[j-1] has d_j columns

    std::vector<Rational> flatten() const {
        std::vector<Rational> out;
        for (const auto& m : comp) {
            const auto& f = m.flat();
            out.insert(out.end(), f.begin(), f.end());
        }
        return out;
    }
};

struct TowerStatus {
    enum class Kind { Terminated, CapReached };
    Kind kind = Kind::CapReached;
    int level = 0;  // first zero level when terminated, else the cap
};

class ProlongationTower {
public:
    static ProlongationTower build(const GradedLieAlgebra& a, const TowerOptions& opt);

    const GradedLieAlgebra& algebra() const { return alg_; }
    const TowerOptions& options() const { return opt_; }
    TowerStatus status() const { return status_; }
    bool terminated() const { return status_.kind == TowerStatus::Kind::Terminated; }

    int computed_levels() const { return static_cast<int>(levels_.size()); }
    std::size_t level_dim(int k) const;
    const std::vector<ProlongationElement>& level_basis(int k) const;

    // Dimension of the target space for degree m: a computed level when
    // m >= 0, the stratum g_m when -step <= m < 0, zero deeper down.
    std::size_t target_dim(int m) const;

    // Homogeneous element: level < 0 means stratum -level in stratum
    // coordinates, level >= 0 a computed level in its basis.
    struct Vec {
        int level = 0;
        std::vector<Rational> coords;
        bool is_zero() const {
            for (const auto& x : coords)
                if (!x.is_zero()) return false;
            return true;
        }
    };

    Vec stratum_vec(int depth, std::vector<Rational> coords) const;
    Vec level_vec(int k, std::vector<Rational> coords) const;

    // Graded bracket; throws LevelNotComputed when the target level was not
    // solved and cannot be argued zero.
    Vec bracket(const Vec& u, const Vec& v) const;

    // Coordinates of an externally assembled element in the stored basis of
    // its level, if it lies in the span.
    std::optional<std::vector<Rational>> express(const ProlongationElement& e) const;

    // Direct re-check of the defining constraint, independent of the solver.
    bool leibniz_holds(const ProlongationElement& e) const;

    // Per computed level k: basis (as level coordinates) of
    // h_k = {u in g_k : [u, g_{-s} + ... + g_{-2}] = 0}.
    std::vector<std::vector<std::vector<Rational>>> h_spaces() const;

private:
    GradedLieAlgebra alg_;
    TowerOptions opt_;
    TowerStatus status_;
    std::vector<std::vector<ProlongationElement>> levels_;
    // Bracket tables for nonnegative level pairs: coordinates of
    // [levels_[k][i], levels_[l][j]] in the level k+l basis.
    std::map<std::pair<int, int>, std::vector<std::vector<std::vector<Rational>>>> tables_;

    std::vector<ProlongationElement> solve_level(int k) const;
    std::vector<Rational> act(int k, std::size_t i, std::size_t basis_index) const;
    Vec act_vec(int k, const std::vector<Rational>& coords, const Vec& arg) const;
    void compute_tables();
    ProlongationElement unflatten_element(int k, const std::vector<Rational>& data) const;
    std::vector<std::vector<Rational>> level_flat(int k) const;
};

// Finite graded Lie algebra n + g_0 + ... assembled from a terminated tower.
struct ExportedAlgebra {
    std::vector<std::string> labels;
    std::vector<int> degrees;
    std::size_t dim = 0;
    std::vector<std::vector<std::vector<Rational>>> c;  // c[i][j] = coordinates of [e_i, e_j]

    std::vector<Rational> bracket(const std::vector<Rational>& v,
                                  const std::vector<Rational>& w) const;
};

// Throws TowerNotTerminated unless the tower reached a zero level.
ExportedAlgebra export_graded_algebra(const ProlongationTower& t);

// Re-expresses the table in a new basis; columns of new_in_old are the new
// basis vectors in old coordinates.
ExportedAlgebra change_basis(const ExportedAlgebra& e, const QMatrix& new_in_old,
                             std::vector<std::string> labels);

// All-triples Jacobi and antisymmetry re-verification of an exported table.
bool exported_table_consistent(const ExportedAlgebra& e);

// The su(1,2) presentation of the conformal tower of the 3-dimensional
// Heisenberg algebra: basis (Y, X1, X2, H1, H2, Xb1, Xb2, Yb) obtained from
// the computed levels by the explicit change of basis H1 = 2A1, H2 = A2,
// Xb1 = 2B1, Xb2 = 2B2, Yb = -4C2, where A/B/C are the closed-form conformal
// prolongation elements. Throws TowerError when the tower does not have the
// required shape.
ExportedAlgebra su12_table(const ProlongationTower& t);

// Level-k element generated by a rank-one matrix v0 (x) omega in h^(0): it
// acts by X -> omega(X) * (level k-1 element), vanishing on deeper strata.
// Built independently of the level solver; membership in the computed level
// is checked by the caller via express().
ProlongationElement rank_one_level_element(const ProlongationTower& t,
                                           const std::vector<Rational>& v0,
                                           const std::vector<Rational>& omega, int k);

}  // namespace carnot
