#include "carnot/groebner.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>

namespace carnot {

namespace {

constexpr unsigned long kDefaultBudget = 500000;

// Term list sorted descending under the active order.
struct OPoly {
    std::vector<MultiPoly::Term> t;
    int sugar = 0;
    bool is_zero() const { return t.empty(); }
    const MultiPoly::Term& lt() const { return t.front(); }
};

OPoly to_ordered(const MultiPoly& p, MonoOrder order) {
    OPoly q;
    q.t = p.terms();
    std::sort(q.t.begin(), q.t.end(),
              [order](const MultiPoly::Term& a, const MultiPoly::Term& b) {
                  return mono_cmp(order, a.first, b.first) > 0;
              });
    q.sugar = p.total_degree();
    return q;
}

MultiPoly from_ordered(int nvars, const OPoly& p) {
    return MultiPoly::from_terms(nvars, p.t);
}

// r -= c * x^e * g, both sorted; merge keeps the order.
void sub_mul(OPoly& r, const Rational& c, const Expv& e, const OPoly& g, MonoOrder order) {
    std::vector<MultiPoly::Term> out;
    out.reserve(r.t.size() + g.t.size());
    std::size_t i = 0, j = 0;
    while (i < r.t.size() || j < g.t.size()) {
        if (j == g.t.size()) {
            out.push_back(std::move(r.t[i++]));
            continue;
        }
        Expv ge = mono_mul(g.t[j].first, e);
        if (i == r.t.size()) {
            Rational coeff = -(c * g.t[j].second);
            if (!coeff.is_zero()) out.emplace_back(std::move(ge), std::move(coeff));
            ++j;
            continue;
        }
        int cmp = mono_cmp(order, r.t[i].first, ge);
        if (cmp > 0) {
            out.push_back(std::move(r.t[i++]));
        } else if (cmp < 0) {
            Rational coeff = -(c * g.t[j].second);
            if (!coeff.is_zero()) out.emplace_back(std::move(ge), std::move(coeff));
            ++j;
        } else {
            Rational coeff = r.t[i].second - c * g.t[j].second;
            if (!coeff.is_zero()) out.emplace_back(std::move(ge), std::move(coeff));
            ++i;
            ++j;
        }
    }
    r.t = std::move(out);
    r.sugar = std::max(r.sugar, g.sugar + mono_deg(e));
}

// Full reduction: every term of the remainder escapes all leading terms.
OPoly reduce_full(OPoly p, const std::vector<OPoly>& basis, MonoOrder order) {
    std::vector<MultiPoly::Term> rem;
    while (!p.t.empty()) {
        bool reduced = false;
        for (const OPoly& g : basis) {
            if (g.is_zero()) continue;
            if (mono_divides(g.lt().first, p.t.front().first)) {
                Rational c = p.t.front().second / g.lt().second;
                Expv e = mono_div(p.t.front().first, g.lt().first);
                sub_mul(p, c, e, g, order);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.push_back(std::move(p.t.front()));
            p.t.erase(p.t.begin());
        }
    }
    p.t = std::move(rem);
    return p;
}

// (1/lc f) x^(l/lt f) f - (1/lc g) x^(l/lt g) g, with l = lcm of the leading monomials.
OPoly s_poly(const OPoly& f, const OPoly& g, MonoOrder order) {
    Expv l = mono_lcm(f.lt().first, g.lt().first);
    Expv ef = mono_div(l, f.lt().first);
    Expv eg = mono_div(l, g.lt().first);
    OPoly s;
    Rational cf = f.lt().second.inverse();
    for (const auto& [e, c] : f.t) s.t.emplace_back(mono_mul(e, ef), c * cf);
    s.sugar = f.sugar + mono_deg(ef);
    sub_mul(s, g.lt().second.inverse(), eg, g, order);
    s.sugar = std::max(f.sugar + mono_deg(ef), g.sugar + mono_deg(eg));
    return s;
}

struct PairKey {
    int sugar;
    Expv lcm;
    std::size_t i, j;
};

}  // namespace

unsigned long effective_gb_budget(const GroebnerOptions& opt) {
    if (opt.max_steps != 0) return opt.max_steps;
    if (const char* env = std::getenv("CARNOT_MAX_GB_STEPS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultBudget;
}

GroebnerResult groebner_basis(const std::vector<MultiPoly>& generators,
                              const GroebnerOptions& opt) {
    const MonoOrder order = opt.order;
    const unsigned long budget = effective_gb_budget(opt);
    int nvars = generators.empty() ? 0 : generators.front().nvars();

    std::vector<OPoly> g;
    for (const MultiPoly& p : generators) {
        if (p.nvars() != nvars) throw std::invalid_argument("groebner_basis: arity mismatch");
        if (p.is_zero()) continue;
        g.push_back(to_ordered(p.monic(order), order));
    }

    GroebnerResult result;
    result.order = order;

    // Pair queue with sugar-then-lcm selection; `done` records processed or
    // discarded pairs for the chain criterion.
    auto cmp_key = [order](const PairKey& a, const PairKey& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        int c = mono_cmp(order, a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::vector<PairKey> queue;
    std::set<std::pair<std::size_t, std::size_t>> done;
    auto push_pairs_for = [&](std::size_t m) {
        for (std::size_t i = 0; i < m; ++i) {
            Expv l = mono_lcm(g[i].lt().first, g[m].lt().first);
            int sugar = std::max(g[i].sugar + mono_deg(l) - mono_deg(g[i].lt().first),
                                 g[m].sugar + mono_deg(l) - mono_deg(g[m].lt().first));
            queue.push_back(PairKey{sugar, std::move(l), i, m});
        }
    };
    for (std::size_t m = 0; m < g.size(); ++m) push_pairs_for(m);

    unsigned long steps = 0;
    bool complete = true;
    while (!queue.empty()) {
        auto it = std::min_element(queue.begin(), queue.end(), cmp_key);
        PairKey pk = std::move(*it);
        queue.erase(it);
        done.insert({pk.i, pk.j});

        const OPoly& f1 = g[pk.i];
        const OPoly& f2 = g[pk.j];
        // Buchberger's first criterion: coprime leading terms.
        if (mono_coprime(f1.lt().first, f2.lt().first)) continue;
        // Chain criterion: a third leading term divides the lcm and both
        // side pairs were already treated.
        bool chained = false;
        for (std::size_t k = 0; k < g.size() && !chained; ++k) {
            if (k == pk.i || k == pk.j || g[k].is_zero()) continue;
            if (!mono_divides(g[k].lt().first, pk.lcm)) continue;
            auto key1 = std::minmax(pk.i, k);
            auto key2 = std::minmax(pk.j, k);
            if (done.count({key1.first, key1.second}) && done.count({key2.first, key2.second}))
                chained = true;
        }
        if (chained) continue;

        if (++steps > budget) {
            complete = false;
            break;
        }
        OPoly h = reduce_full(s_poly(f1, f2, order), g, order);
        if (h.is_zero()) continue;
        Rational inv = h.lt().second.inverse();
        for (auto& [e, c] : h.t) c = c * inv;
        g.push_back(std::move(h));
        push_pairs_for(g.size() - 1);
    }

    // Minimalize: drop generators whose leading term another one divides.
    std::vector<bool> keep(g.size(), true);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!keep[i]) continue;
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (i == j || !keep[j]) continue;
            if (mono_divides(g[j].lt().first, g[i].lt().first) &&
                !(g[i].lt().first == g[j].lt().first && j > i)) {
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<OPoly> minimal;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (keep[i]) minimal.push_back(std::move(g[i]));

    // Inter-reduce to the unique reduced basis.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<OPoly> others;
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            OPoly r = reduce_full(minimal[i], others, order);
            if (!(r.t == minimal[i].t)) {
                changed = true;
                if (r.is_zero()) {
                    minimal.erase(minimal.begin() + i);
                    break;
                }
                Rational inv = r.lt().second.inverse();
                for (auto& [e, c] : r.t) c = c * inv;
                minimal[i] = std::move(r);
            }
        }
    }

    std::sort(minimal.begin(), minimal.end(), [order](const OPoly& a, const OPoly& b) {
        return mono_cmp(order, a.lt().first, b.lt().first) < 0;
    });
    for (const OPoly& p : minimal) result.basis.push_back(from_ordered(nvars, p));
    result.complete = complete;
    result.steps = steps;
    return result;
}

MultiPoly normal_form(const MultiPoly& p, const std::vector<MultiPoly>& basis, MonoOrder order) {
    std::vector<OPoly> g;
    for (const MultiPoly& q : basis)
        if (!q.is_zero()) g.push_back(to_ordered(q, order));
    return from_ordered(p.nvars(), reduce_full(to_ordered(p, order), g, order));
}

bool only_origin(int nvars, const std::vector<MultiPoly>& generators, const GroebnerOptions& opt,
                 GroebnerResult* out_basis) {
    if (nvars < 1) throw std::invalid_argument("only_origin: needs at least one variable");
    std::vector<MultiPoly> gens;
    for (const MultiPoly& p : generators) {
        if (p.is_zero()) continue;
        auto d = p.homogeneous_degree();
        if (!d || *d < 1)
            throw NonHomogeneousInput("only_origin: generators must be homogeneous of positive degree");
        gens.push_back(p);
    }
    if (gens.empty()) return false;  // variety is all of C^n

    GroebnerOptions gopt = opt;
    gopt.order = MonoOrder::Grevlex;
    GroebnerResult gb = groebner_basis(gens, gopt);
    if (out_basis) *out_basis = gb;
    if (!gb.complete) throw ComputationCapReached(gb.steps);

    for (int v = 0; v < nvars; ++v) {
        bool found = false;
        for (const MultiPoly& p : gb.basis) {
            const Expv& e = p.leading_term(MonoOrder::Grevlex).first;
            bool pure = e[v] > 0;
            for (int w = 0; w < nvars && pure; ++w)
                if (w != v && e[w] != 0) pure = false;
            if (pure) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace carnot
