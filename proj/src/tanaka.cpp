#include "carnot/tanaka.hpp"

#include <algorithm>

namespace carnot {

namespace {

void add_scaled(std::vector<Rational>& acc, const Rational& c, const std::vector<Rational>& v) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * v[i];
}

bool all_zero(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

// Expresses vectors in a level basis. The canonical kernel basis has, per
// basis vector, a coordinate slot where it alone is 1; coordinates are then
// read off and verified by exact re-combination. Falls back to a factored
// solve when no such slots exist.
class LevelExpressor {
public:
    explicit LevelExpressor(std::vector<std::vector<Rational>> basis) : basis_(std::move(basis)) {
        const std::size_t m = basis_.size();
        const std::size_t len = m ? basis_.front().size() : 0;
        picks_.assign(m, 0);
        bool ok = m > 0;
        for (std::size_t i = 0; i < m && ok; ++i) {
            bool found = false;
            for (std::size_t c = 0; c < len && !found; ++c) {
                if (!basis_[i][c].is_one()) continue;
                bool alone = true;
                for (std::size_t j = 0; j < m && alone; ++j)
                    if (j != i && !basis_[j][c].is_zero()) alone = false;
                if (alone) {
                    picks_[i] = c;
                    found = true;
                }
            }
            ok = found;
        }
        if (!ok && m > 0) fallback_.emplace(QMatrix::from_cols(basis_));
        fast_ = ok;
    }

    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& w) const {
        if (!fast_) {
            if (fallback_) return fallback_->solve(w);
            return all_zero(w) ? std::optional<std::vector<Rational>>(std::vector<Rational>{})
                               : std::nullopt;
        }
        std::vector<Rational> coords(basis_.size());
        for (std::size_t i = 0; i < basis_.size(); ++i) coords[i] = w[picks_[i]];
        std::vector<Rational> rebuilt(w.size(), Rational(0));
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (coords[i].is_zero()) continue;
            add_scaled(rebuilt, coords[i], basis_[i]);
        }
        for (std::size_t c = 0; c < w.size(); ++c)
            if (rebuilt[c] != w[c]) return std::nullopt;
        return coords;
    }

private:
    std::vector<std::vector<Rational>> basis_;
    std::vector<std::size_t> picks_;
    bool fast_ = false;
    std::optional<PreparedSolver<Rational>> fallback_;
};

}  // namespace

ProlongationTower ProlongationTower::build(const GradedLieAlgebra& a, const TowerOptions& opt) {
    if (opt.max_level < 0) throw std::invalid_argument("prolong_tower: max_level must be >= 0");
    if (opt.mode == G0Mode::Full && opt.restricted)
        throw std::invalid_argument("prolong_tower: restricted mode requires a proper g0 selection");
    if (opt.mode != G0Mode::Full && !opt.restricted)
        throw std::invalid_argument(
            "prolong_tower: a proper g0 selection defines the restricted tower; set restricted");

    ProlongationTower t;
    t.alg_ = a;
    t.opt_ = opt;

    std::vector<StrataDerivation> g0;
    switch (opt.mode) {
        case G0Mode::Full: g0 = strata_derivations(a); break;
        case G0Mode::Conformal: g0 = conformal_subalgebra(a); break;
        case G0Mode::H0: g0 = h_zero(a).basis; break;
        case G0Mode::Custom:
            g0 = opt.custom_g0;
            for (const auto& d : g0)
                if (!is_derivation(a, d))
                    throw std::invalid_argument("prolong_tower: custom g0 element fails Leibniz");
            break;
    }

    std::vector<ProlongationElement> level0;
    for (const auto& d : g0) level0.push_back(ProlongationElement{0, d.blocks});
    t.levels_.push_back(std::move(level0));

    bool found_zero = t.levels_[0].empty();
    int zero_level = 0;
    for (int k = 1; k <= opt.max_level; ++k) {
        if (found_zero && opt.stop_at_first_zero) break;
        auto basis = t.solve_level(k);
        bool empty = basis.empty();
        t.levels_.push_back(std::move(basis));
        if (empty && !found_zero) {
            found_zero = true;
            zero_level = k;
        }
    }
    if (found_zero)
        t.status_ = {TowerStatus::Kind::Terminated, zero_level};
    else
        t.status_ = {TowerStatus::Kind::CapReached, opt.max_level};

    t.compute_tables();
    return t;
}

std::size_t ProlongationTower::level_dim(int k) const {
    if (k < 0) throw std::invalid_argument("level_dim: negative level");
    if (k < computed_levels()) return levels_[k].size();
    if (terminated()) return 0;
    throw LevelNotComputed("level " + std::to_string(k) + " not computed");
}

const std::vector<ProlongationElement>& ProlongationTower::level_basis(int k) const {
    if (k < 0 || k >= computed_levels())
        throw LevelNotComputed("level " + std::to_string(k) + " not computed");
    return levels_[k];
}

std::size_t ProlongationTower::target_dim(int m) const {
    if (m >= 0) return level_dim(m);
    int depth = -m;
    if (depth <= alg_.step()) return alg_.stratum_dim(depth);
    return 0;
}

ProlongationTower::Vec ProlongationTower::stratum_vec(int depth, std::vector<Rational> coords) const {
    if (depth < 1 || depth > alg_.step() || coords.size() != alg_.stratum_dim(depth))
        throw std::invalid_argument("stratum_vec: bad stratum data");
    return {-depth, std::move(coords)};
}

ProlongationTower::Vec ProlongationTower::level_vec(int k, std::vector<Rational> coords) const {
    if (coords.size() != level_dim(k)) throw std::invalid_argument("level_vec: bad coordinate length");
    return {k, std::move(coords)};
}

// Image of the i-th basis element of level k on the algebra basis vector.
std::vector<Rational> ProlongationTower::act(int k, std::size_t i, std::size_t basis_index) const {
    int j = alg_.stratum_of(basis_index);
    std::size_t loc = basis_index - alg_.stratum_offset(j);
    return levels_[k][i].comp[j - 1].col(loc);
}

ProlongationTower::Vec ProlongationTower::act_vec(int k, const std::vector<Rational>& coords,
                                                  const Vec& arg) const {
    const int target = k + arg.level;
    std::vector<Rational> out(target_dim(target), Rational(0));
    if (arg.level < 0) {
        int depth = -arg.level;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i].is_zero()) continue;
            for (std::size_t t = 0; t < arg.coords.size(); ++t) {
                if (arg.coords[t].is_zero()) continue;
                add_scaled(out, coords[i] * arg.coords[t],
                           act(k, i, alg_.stratum_offset(depth) + t));
            }
        }
        return {target, std::move(out)};
    }
    auto it = tables_.find({k, arg.level});
    if (it == tables_.end())
        throw LevelNotComputed("bracket of levels " + std::to_string(k) + " and " +
                               std::to_string(arg.level) + " not available");
    const auto& table = it->second;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].is_zero()) continue;
        for (std::size_t t = 0; t < arg.coords.size(); ++t) {
            if (arg.coords[t].is_zero()) continue;
            add_scaled(out, coords[i] * arg.coords[t], table[i][t]);
        }
    }
    return {target, std::move(out)};
}

ProlongationTower::Vec ProlongationTower::bracket(const Vec& u, const Vec& v) const {
    if (u.level < 0 && v.level < 0) {
        int du = -u.level, dv = -v.level;
        if (u.coords.size() != alg_.stratum_dim(du) || v.coords.size() != alg_.stratum_dim(dv))
            throw std::invalid_argument("bracket: bad stratum coordinates");
        int target = u.level + v.level;
        if (-target > alg_.step()) return {target, {}};
        std::vector<Rational> fu(alg_.dim()), fv(alg_.dim());
        for (std::size_t i = 0; i < u.coords.size(); ++i)
            fu[alg_.stratum_offset(du) + i] = u.coords[i];
        for (std::size_t i = 0; i < v.coords.size(); ++i)
            fv[alg_.stratum_offset(dv) + i] = v.coords[i];
        auto full = alg_.bracket(fu, fv);
        std::vector<Rational> out(alg_.stratum_dim(-target));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = full[alg_.stratum_offset(-target) + i];
        return {target, std::move(out)};
    }
    if (u.level >= 0 && v.level < 0) return act_vec(u.level, u.coords, v);
    if (u.level < 0 && v.level >= 0) {
        Vec w = act_vec(v.level, v.coords, u);
        for (auto& x : w.coords) x = -x;
        return w;
    }
    auto it = tables_.find({u.level, v.level});
    if (it == tables_.end())
        throw LevelNotComputed("bracket of levels " + std::to_string(u.level) + " and " +
                               std::to_string(v.level) + " not available");
    std::vector<Rational> out(target_dim(u.level + v.level), Rational(0));
    for (std::size_t i = 0; i < u.coords.size(); ++i) {
        if (u.coords[i].is_zero()) continue;
        for (std::size_t j = 0; j < v.coords.size(); ++j) {
            if (v.coords[j].is_zero()) continue;
            add_scaled(out, u.coords[i] * v.coords[j], it->second[i][j]);
        }
    }
    return {u.level + v.level, std::move(out)};
}

ProlongationElement ProlongationTower::unflatten_element(int k,
                                                         const std::vector<Rational>& data) const {
    ProlongationElement e;
    e.level = k;
    std::size_t pos = 0;
    for (int j = 1; j <= alg_.step(); ++j) {
        std::size_t rows = target_dim(k - j), cols = alg_.stratum_dim(j);
        QMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = data.at(pos++);
        e.comp.push_back(std::move(m));
    }
    return e;
}

std::vector<std::vector<Rational>> ProlongationTower::level_flat(int k) const {
    std::vector<std::vector<Rational>> rows;
    for (const auto& e : levels_[k]) rows.push_back(e.flatten());
    return rows;
}

std::vector<ProlongationElement> ProlongationTower::solve_level(int k) const {
    const GradedLieAlgebra& a = alg_;
    const int s = a.step();

    std::vector<std::size_t> start(s);
    std::size_t total = 0;
    for (int j = 1; j <= s; ++j) {
        start[j - 1] = total;
        total += target_dim(k - j) * a.stratum_dim(j);
    }
    auto unknown = [&](int j, std::size_t row, std::size_t col) {
        return start[j - 1] + row * a.stratum_dim(j) + col;
    };

    // Action of the t-th basis element of the target space for degree m on the
    // algebra basis vector q, in coordinates of the next target space.
    auto act_target = [&](int m, std::size_t t, std::size_t q) -> std::vector<Rational> {
        int jq = a.stratum_of(q);
        if (m >= 0) return act(m, t, q);
        int dm = -m;
        std::size_t g = a.stratum_offset(dm) + t;
        const auto& full = a.bracket_basis(g, q);
        int td = dm + jq;
        std::vector<Rational> out(td <= s ? a.stratum_dim(td) : 0);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = full[a.stratum_offset(td) + i];
        return out;
    };

    std::vector<std::vector<Rational>> rows;
    for (std::size_t p = 0; p < a.dim(); ++p)
        for (std::size_t q = p + 1; q < a.dim(); ++q) {
            int ip = a.stratum_of(p), jq = a.stratum_of(q);
            std::size_t tdim = target_dim(k - ip - jq);
            if (tdim == 0) continue;
            std::vector<std::vector<Rational>> eq(tdim, std::vector<Rational>(total));

            // phi([x_p, x_q])
            const auto& cpq = a.bracket_basis(p, q);
            for (std::size_t t = 0; t < a.dim(); ++t) {
                if (cpq[t].is_zero()) continue;
                int jt = a.stratum_of(t);
                std::size_t loc_t = t - a.stratum_offset(jt);
                for (std::size_t r = 0; r < tdim; ++r)
                    eq[r][unknown(jt, r, loc_t)] += cpq[t];
            }
            // -[phi(x_p), x_q]
            std::size_t loc_p = p - a.stratum_offset(ip);
            for (std::size_t t = 0; t < target_dim(k - ip); ++t) {
                auto v = act_target(k - ip, t, q);
                for (std::size_t r = 0; r < tdim; ++r)
                    if (!v[r].is_zero()) eq[r][unknown(ip, t, loc_p)] -= v[r];
            }
            // -[x_p, phi(x_q)] = +[phi(x_q), x_p]
            std::size_t loc_q = q - a.stratum_offset(jq);
            for (std::size_t t = 0; t < target_dim(k - jq); ++t) {
                auto w = act_target(k - jq, t, p);
                for (std::size_t r = 0; r < tdim; ++r)
                    if (!w[r].is_zero()) eq[r][unknown(jq, t, loc_q)] += w[r];
            }

            for (auto& row : eq)
                if (!all_zero(row)) rows.push_back(std::move(row));
        }

    QMatrix sys = rows.empty() ? QMatrix(0, total) : QMatrix::from_rows(rows);
    std::vector<ProlongationElement> out;
    for (const auto& v : kernel_basis(sys)) out.push_back(unflatten_element(k, v));
    return out;
}

void ProlongationTower::compute_tables() {
    const int n = computed_levels();
    const int max_total = terminated() ? 2 * (n - 1) : n - 1;
    for (int total = 0; total <= max_total; ++total) {
        for (int k = 0; k <= total && k < n; ++k) {
            int l = total - k;
            if (l < 0 || l >= n || k > l) continue;
            const std::size_t dk = levels_[k].size(), dl = levels_[l].size();
            std::vector<std::vector<std::vector<Rational>>> table(
                dk, std::vector<std::vector<Rational>>(dl));
            std::vector<std::vector<std::vector<Rational>>> flipped(
                dl, std::vector<std::vector<Rational>>(dk));
            const std::size_t tdim = target_dim(total);
            std::optional<LevelExpressor> solver;
            if (tdim > 0 && total < n && dk > 0 && dl > 0) solver.emplace(level_flat(total));
            for (std::size_t i = 0; i < dk; ++i) {
                std::vector<Rational> ui(dk, Rational(0));
                ui[i] = Rational(1);
                for (std::size_t j = 0; j < dl; ++j) {
                    std::vector<Rational> vj(dl, Rational(0));
                    vj[j] = Rational(1);
                    // [u, v](x_b) = [u, [v, x_b]] - [v, [u, x_b]]
                    ProlongationElement val;
                    val.level = total;
                    for (int js = 1; js <= alg_.step(); ++js) {
                        QMatrix m(target_dim(total - js), alg_.stratum_dim(js));
                        for (std::size_t loc = 0; loc < alg_.stratum_dim(js); ++loc) {
                            std::size_t b = alg_.stratum_offset(js) + loc;
                            Vec vb{l - js, act(l, j, b)};
                            Vec ub{k - js, act(k, i, b)};
                            Vec t1 = act_vec(k, ui, vb);
                            Vec t2 = act_vec(l, vj, ub);
                            for (std::size_t r = 0; r < m.rows(); ++r)
                                m.at(r, loc) = t1.coords[r] - t2.coords[r];
                        }
                        val.comp.push_back(std::move(m));
                    }
                    std::vector<Rational> coords;
                    if (tdim == 0) {
                        if (!all_zero(val.flatten()))
                            throw TowerError("bracket closure failure at level " +
                                             std::to_string(total));
                    } else {
                        auto c = solver->solve(val.flatten());
                        if (!c)
                            throw TowerError("bracket not expressible in level " +
                                             std::to_string(total));
                        coords = std::move(*c);
                    }
                    std::vector<Rational> neg = coords;
                    for (auto& x : neg) x = -x;
                    table[i][j] = std::move(coords);
                    flipped[j][i] = std::move(neg);
                }
            }
            tables_[{k, l}] = std::move(table);
            if (k != l) tables_[{l, k}] = std::move(flipped);
        }
    }
}

std::optional<std::vector<Rational>> ProlongationTower::express(const ProlongationElement& e) const {
    if (e.level < 0 || e.level >= computed_levels())
        throw LevelNotComputed("express: level not computed");
    return in_span(level_flat(e.level), e.flatten());
}

bool ProlongationTower::leibniz_holds(const ProlongationElement& e) const {
    const GradedLieAlgebra& a = alg_;
    const int k = e.level;
    auto apply = [&](std::size_t b) -> Vec {
        int j = a.stratum_of(b);
        return {k - j, e.comp[j - 1].col(b - a.stratum_offset(j))};
    };
    for (std::size_t p = 0; p < a.dim(); ++p)
        for (std::size_t q = p + 1; q < a.dim(); ++q) {
            int ip = a.stratum_of(p), jq = a.stratum_of(q);
            std::size_t tdim = target_dim(k - ip - jq);
            std::vector<Rational> lhs(tdim, Rational(0));
            const auto& cpq = a.bracket_basis(p, q);
            if (ip + jq <= a.step()) {
                for (std::size_t t = 0; t < a.stratum_dim(ip + jq); ++t) {
                    const Rational& c = cpq[a.stratum_offset(ip + jq) + t];
                    if (c.is_zero()) continue;
                    add_scaled(lhs, c, e.comp[ip + jq - 1].col(t));
                }
            }
            std::vector<Rational> up(a.stratum_dim(ip), Rational(0));
            up[p - a.stratum_offset(ip)] = Rational(1);
            std::vector<Rational> uq(a.stratum_dim(jq), Rational(0));
            uq[q - a.stratum_offset(jq)] = Rational(1);
            Vec t1 = bracket(apply(p), Vec{-jq, uq});
            Vec t2 = bracket(Vec{-ip, up}, apply(q));
            for (std::size_t r = 0; r < tdim; ++r)
                if (lhs[r] != t1.coords[r] + t2.coords[r]) return false;
        }
    return true;
}

std::vector<std::vector<std::vector<Rational>>> ProlongationTower::h_spaces() const {
    std::vector<std::vector<std::vector<Rational>>> out;
    for (int k = 0; k < computed_levels(); ++k) {
        std::size_t deep = 0;
        for (int j = 2; j <= alg_.step(); ++j) deep += target_dim(k - j) * alg_.stratum_dim(j);
        QMatrix m(deep, levels_[k].size());
        for (std::size_t i = 0; i < levels_[k].size(); ++i) {
            std::size_t r = 0;
            for (int j = 2; j <= alg_.step(); ++j)
                for (const auto& x : levels_[k][i].comp[j - 1].flat()) m.at(r++, i) = x;
        }
        out.push_back(kernel_basis(m));
    }

    // h_{-1} = {X in g_{-1} : [X, deeper strata] = 0}, needed for k = 0 below.
    std::vector<std::vector<Rational>> h_minus1;
    {
        const std::size_t d1 = alg_.stratum_dim(1), off = alg_.stratum_offset(1);
        std::vector<std::vector<Rational>> rows;
        for (std::size_t i = 0; i < d1; ++i) {
            std::vector<Rational> col;
            for (std::size_t b = 0; b < alg_.dim(); ++b) {
                if (alg_.stratum_of(b) == 1) continue;
                const auto& v = alg_.bracket_basis(off + i, b);
                col.insert(col.end(), v.begin(), v.end());
            }
            rows.push_back(std::move(col));
        }
        QMatrix m = rows.empty() || rows.front().empty() ? QMatrix(0, d1)
                                                         : QMatrix::from_rows(rows).transpose();
        h_minus1 = kernel_basis(m);
    }

    // [h_k, g_{-1}] must land in h_{k-1}.
    for (int k = 0; k < computed_levels(); ++k) {
        const auto& prev = k == 0 ? h_minus1 : out[k - 1];
        for (const auto& coords : out[k]) {
            for (std::size_t b = 0; b < alg_.stratum_dim(1); ++b) {
                std::vector<Rational> eb(alg_.stratum_dim(1), Rational(0));
                eb[b] = Rational(1);
                Vec w = bracket(Vec{k, coords}, Vec{-1, eb});
                if (!in_span(prev, w.coords))
                    throw TowerError("h-space bracket escapes h_{k-1} at level " +
                                     std::to_string(k));
            }
        }
    }
    return out;
}

std::vector<Rational> ExportedAlgebra::bracket(const std::vector<Rational>& v,
                                               const std::vector<Rational>& w) const {
    std::vector<Rational> out(dim, Rational(0));
    for (std::size_t i = 0; i < dim; ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (w[j].is_zero()) continue;
            Rational f = v[i] * w[j];
            for (std::size_t m = 0; m < dim; ++m)
                if (!c[i][j][m].is_zero()) out[m] += f * c[i][j][m];
        }
    }
    return out;
}

ExportedAlgebra export_graded_algebra(const ProlongationTower& t) {
    if (!t.terminated())
        throw TowerNotTerminated("export requires a tower that terminated below the cap");
    const GradedLieAlgebra& a = t.algebra();

    ExportedAlgebra e;
    std::vector<ProlongationTower::Vec> gens;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        int j = a.stratum_of(i);
        std::vector<Rational> u(a.stratum_dim(j), Rational(0));
        u[i - a.stratum_offset(j)] = Rational(1);
        gens.push_back({-j, std::move(u)});
        e.labels.push_back(a.basis_name(i));
        e.degrees.push_back(-j);
    }
    std::vector<std::size_t> level_offset;
    for (int k = 0; k < t.computed_levels(); ++k) {
        level_offset.push_back(e.labels.size());
        for (std::size_t i = 0; i < t.level_dim(k); ++i) {
            std::vector<Rational> u(t.level_dim(k), Rational(0));
            u[i] = Rational(1);
            gens.push_back({k, std::move(u)});
            e.labels.push_back("g" + std::to_string(k) + "_" + std::to_string(i));
            e.degrees.push_back(k);
        }
    }
    e.dim = gens.size();
    e.c.assign(e.dim, std::vector<std::vector<Rational>>(e.dim, std::vector<Rational>(e.dim)));

    auto to_global = [&](const ProlongationTower::Vec& v) {
        std::vector<Rational> out(e.dim, Rational(0));
        if (v.coords.empty()) return out;
        std::size_t off;
        if (v.level < 0) {
            if (-v.level > a.step()) return out;
            off = a.stratum_offset(-v.level);
        } else {
            off = level_offset.at(v.level);
        }
        for (std::size_t i = 0; i < v.coords.size(); ++i) out[off + i] = v.coords[i];
        return out;
    };

    for (std::size_t i = 0; i < e.dim; ++i)
        for (std::size_t j = 0; j < e.dim; ++j) e.c[i][j] = to_global(t.bracket(gens[i], gens[j]));
    return e;
}

ExportedAlgebra change_basis(const ExportedAlgebra& e, const QMatrix& new_in_old,
                             std::vector<std::string> labels) {
    if (new_in_old.rows() != e.dim || new_in_old.cols() != e.dim || labels.size() != e.dim)
        throw std::invalid_argument("change_basis: shape mismatch");
    auto inv = inverse(new_in_old);
    if (!inv) throw std::invalid_argument("change_basis: singular basis change");
    ExportedAlgebra out;
    out.labels = std::move(labels);
    out.dim = e.dim;
    out.degrees.assign(e.dim, 0);
    for (std::size_t i = 0; i < e.dim; ++i) {
        int deg = 0;
        for (std::size_t r = 0; r < e.dim; ++r)
            if (!new_in_old.at(r, i).is_zero()) deg = e.degrees[r];
        out.degrees[i] = deg;
    }
    out.c.assign(e.dim, std::vector<std::vector<Rational>>(e.dim));
    for (std::size_t i = 0; i < e.dim; ++i)
        for (std::size_t j = 0; j < e.dim; ++j)
            out.c[i][j] = inv->apply(e.bracket(new_in_old.col(i), new_in_old.col(j)));
    return out;
}

bool exported_table_consistent(const ExportedAlgebra& e) {
    for (std::size_t i = 0; i < e.dim; ++i)
        for (std::size_t j = 0; j < e.dim; ++j)
            for (std::size_t m = 0; m < e.dim; ++m)
                if (e.c[i][j][m] + e.c[j][i][m] != Rational(0)) return false;
    for (std::size_t i = 0; i < e.dim; ++i)
        for (std::size_t j = i + 1; j < e.dim; ++j)
            for (std::size_t k = j + 1; k < e.dim; ++k) {
                std::vector<Rational> ei(e.dim), ej(e.dim), ek(e.dim);
                ei[i] = Rational(1);
                ej[j] = Rational(1);
                ek[k] = Rational(1);
                auto s1 = e.bracket(e.bracket(ei, ej), ek);
                auto s2 = e.bracket(e.bracket(ej, ek), ei);
                auto s3 = e.bracket(e.bracket(ek, ei), ej);
                for (std::size_t m = 0; m < e.dim; ++m)
                    if (!(s1[m] + s2[m] + s3[m]).is_zero()) return false;
            }
    return true;
}

ExportedAlgebra su12_table(const ProlongationTower& t) {
    const GradedLieAlgebra& a = t.algebra();
    bool shape = a.step() == 2 && a.stratum_dim(1) == 2 && a.stratum_dim(2) == 1 &&
                 a.bracket_basis(0, 1)[2] == Rational(1) &&
                 a.bracket_basis(0, 1)[0].is_zero() && a.bracket_basis(0, 1)[1].is_zero();
    if (!shape || !t.terminated() || t.computed_levels() < 4 || t.level_dim(0) != 2 ||
        t.level_dim(1) != 2 || t.level_dim(2) != 1 || t.level_dim(3) != 0)
        throw TowerError("su12 basis change needs the conformal tower of the 3-dim Heisenberg algebra");

    auto express_or_throw = [&](const ProlongationElement& e) {
        auto c = t.express(e);
        if (!c) throw TowerError("su12 basis change: computed levels do not span the closed-form elements");
        return *c;
    };

    // A1 = (1/2) X1 (x) dx1 + (1/2) X2 (x) dx2 + Y (x) dy, A2 = X1 (x) dx2 - X2 (x) dx1.
    ProlongationElement a1{0,
                           {QMatrix::identity(2).scaled(Rational(1, 2)), QMatrix::identity(1)}};
    QMatrix rot(2, 2);
    rot.at(0, 1) = Rational(1);
    rot.at(1, 0) = Rational(-1);
    ProlongationElement a2{0, {rot, QMatrix(1, 1)}};
    auto a1c = express_or_throw(a1), a2c = express_or_throw(a2);

    auto col_combo = [](const std::vector<Rational>& c, const Rational& s) {
        std::vector<Rational> out = c;
        for (auto& x : out) x *= s;
        return out;
    };

    // B1 = A1 (x) dx1 - (3/2) A2 (x) dx2 - X2 (x) dy, B2 = A1 (x) dx2 + (3/2) A2 (x) dx1 + X1 (x) dy.
    ProlongationElement b1{1, {QMatrix::from_cols({a1c, col_combo(a2c, Rational(-3, 2))}),
                               QMatrix::from_cols({{Rational(0), Rational(-1)}})}};
    ProlongationElement b2{1, {QMatrix::from_cols({col_combo(a2c, Rational(3, 2)), a1c}),
                               QMatrix::from_cols({{Rational(1), Rational(0)}})}};
    auto b1c = express_or_throw(b1), b2c = express_or_throw(b2);

    // C2 = (1/2) B2 (x) dx1 - (1/2) B1 (x) dx2 + A1 (x) dy.
    ProlongationElement c2{2, {QMatrix::from_cols({col_combo(b2c, Rational(1, 2)),
                                                   col_combo(b1c, Rational(-1, 2))}),
                               QMatrix::from_cols({a1c})}};
    auto c2c = express_or_throw(c2);

    ExportedAlgebra exported = export_graded_algebra(t);
    // Old order: X1, X2, Y, level0 (2), level1 (2), level2 (1). New order per
    // the bracket table: Y, X1, X2, H1=2A1, H2=A2, Xb1=2B1, Xb2=2B2, Yb=-4C2.
    QMatrix p(8, 8);
    p.at(2, 0) = Rational(1);
    p.at(0, 1) = Rational(1);
    p.at(1, 2) = Rational(1);
    for (int r = 0; r < 2; ++r) {
        p.at(3 + r, 3) = Rational(2) * a1c[r];
        p.at(3 + r, 4) = a2c[r];
        p.at(5 + r, 5) = Rational(2) * b1c[r];
        p.at(5 + r, 6) = Rational(2) * b2c[r];
    }
    p.at(7, 7) = Rational(-4) * c2c[0];
    return change_basis(exported, p, {"Y", "X1", "X2", "H1", "H2", "Xb1", "Xb2", "Yb"});
}

ProlongationElement rank_one_level_element(const ProlongationTower& t,
                                           const std::vector<Rational>& v0,
                                           const std::vector<Rational>& omega, int k) {
    const GradedLieAlgebra& a = t.algebra();
    const std::size_t d1 = a.stratum_dim(1);
    if (v0.size() != d1 || omega.size() != d1)
        throw std::invalid_argument("rank_one_level_element: bad vector sizes");
    QMatrix first(d1, d1);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j) first.at(i, j) = v0[i] * omega[j];
    ProlongationElement cur;
    cur.level = 0;
    cur.comp.push_back(std::move(first));
    for (int j = 2; j <= a.step(); ++j)
        cur.comp.emplace_back(a.stratum_dim(j), a.stratum_dim(j));

    for (int m = 1; m <= k; ++m) {
        auto coords = t.express(cur);
        if (!coords)
            throw TowerError("rank_one_level_element: predecessor not in the computed level");
        ProlongationElement next;
        next.level = m;
        QMatrix head(t.target_dim(m - 1), d1);
        for (std::size_t b = 0; b < d1; ++b)
            for (std::size_t r = 0; r < head.rows(); ++r) head.at(r, b) = omega[b] * (*coords)[r];
        next.comp.push_back(std::move(head));
        for (int j = 2; j <= a.step(); ++j)
            next.comp.emplace_back(t.target_dim(m - j), a.stratum_dim(j));
        cur = std::move(next);
    }
    return cur;
}

}  // namespace carnot
