#include "carnot/ss_prolongation.hpp"

#include <map>
#include <sstream>

namespace carnot {

namespace {

template <class F>
std::vector<SSElement<F>> solve_level(const MatrixSubspaceT<F>& g0, int k) {
    const int n = static_cast<int>(g0.n);
    SSElement<F> model(n, k);
    const std::size_t tcount = model.tuple_count();
    const std::size_t unknowns = static_cast<std::size_t>(n) * tcount;

    // Quotient of gl(n) by the subspace; a slice lies in the span iff its
    // projection vanishes.
    QuotientMap<F> quo(static_cast<std::size_t>(n) * n, g0.flattened());
    const std::size_t q = quo.dim();

    std::vector<std::vector<int>> lowers = weakly_increasing_tuples(n, k);

    // Precompute the projection of each matrix unit E_ij.
    std::vector<std::vector<F>> unit_proj(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<F> e(static_cast<std::size_t>(n) * n, F(0));
            e[static_cast<std::size_t>(i) * n + j] = F(1);
            unit_proj[static_cast<std::size_t>(i) * n + j] = quo.project(e);
        }

    Matrix<F> sys(lowers.size() * q, unknowns);
    for (std::size_t li = 0; li < lowers.size(); ++li) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<int> t = lowers[li];
                t.push_back(j);
                std::sort(t.begin(), t.end());
                std::size_t col = static_cast<std::size_t>(i) * tcount + model.rank_of(t);
                const auto& proj = unit_proj[static_cast<std::size_t>(i) * n + j];
                for (std::size_t r = 0; r < q; ++r)
                    sys.at(li * q + r, col) += proj[r];
            }
    }

    std::vector<SSElement<F>> out;
    for (const auto& v : kernel_basis(sys)) {
        SSElement<F> e(n, k);
        e.c = v;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

template <class F>
std::vector<SSElement<F>> ss_prolongation_level(const MatrixSubspaceT<F>& g0, int k) {
    if (k < 0) throw std::invalid_argument("ss_prolongation_level: negative level");
    if (k == 0) {
        std::vector<SSElement<F>> out;
        for (const auto& m : g0.basis) {
            SSElement<F> e(static_cast<int>(g0.n), 0);
            for (int i = 0; i < static_cast<int>(g0.n); ++i)
                for (int j = 0; j < static_cast<int>(g0.n); ++j)
                    e.set_coeff(i, {j}, m.at(i, j));
            out.push_back(std::move(e));
        }
        return out;
    }
    return solve_level(g0, k);
}

template std::vector<SSElement<Rational>> ss_prolongation_level(const MatrixSubspaceT<Rational>&, int);
template std::vector<SSElement<GaussianRational>> ss_prolongation_level(
    const MatrixSubspaceT<GaussianRational>&, int);

FiniteTypeScan finite_type_scan(const MatrixSubspace& g0, int max_k) {
    if (max_k < 1) throw std::invalid_argument("finite_type_scan: max_k must be >= 1");
    FiniteTypeScan scan;
    scan.dims.push_back(g0.dim());
    for (int k = 1; k <= max_k; ++k) {
        std::size_t d = ss_prolongation_level(g0, k).size();
        scan.dims.push_back(d);
        scan.scanned_to = k;
        if (d == 0) {
            scan.finite = true;
            scan.type = k;
            break;
        }
    }
    return scan;
}

MatrixSubspace classical_matrix_algebra(const std::string& kind, std::size_t n) {
    if (n < 1) throw std::invalid_argument("classical_matrix_algebra: n must be >= 1");
    std::vector<QMatrix> basis;
    auto unit = [n](std::size_t i, std::size_t j) {
        QMatrix m(n, n);
        m.at(i, j) = Rational(1);
        return m;
    };
    if (kind == "gl") {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) basis.push_back(unit(i, j));
    } else if (kind == "sl") {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) basis.push_back(unit(i, j));
        for (std::size_t i = 0; i + 1 < n; ++i) {
            QMatrix m(n, n);
            m.at(i, i) = Rational(1);
            m.at(n - 1, n - 1) = Rational(-1);
            basis.push_back(m);
        }
    } else if (kind == "o") {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                QMatrix m(n, n);
                m.at(i, j) = Rational(1);
                m.at(j, i) = Rational(-1);
                basis.push_back(m);
            }
    } else if (kind == "co") {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                QMatrix m(n, n);
                m.at(i, j) = Rational(1);
                m.at(j, i) = Rational(-1);
                basis.push_back(m);
            }
        basis.push_back(QMatrix::identity(n));
    } else {
        throw std::invalid_argument("classical_matrix_algebra: unknown kind '" + kind + "'");
    }
    return MatrixSubspace(n, std::move(basis));
}

MatrixSubspace rank_one_subspace(const std::vector<Rational>& v,
                                 const std::vector<Rational>& omega) {
    if (v.size() != omega.size() || v.empty())
        throw std::invalid_argument("rank_one_subspace: bad vector sizes");
    std::size_t n = v.size();
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = v[i] * omega[j];
    if (m.is_zero()) throw std::invalid_argument("rank_one_subspace: zero matrix");
    return MatrixSubspace(n, {m});
}

MatrixSubspace parse_matrix_subspace(const std::string& text) {
    std::vector<std::vector<std::vector<Rational>>> blocks;
    std::vector<std::vector<Rational>> current;
    std::istringstream in(text);
    std::string line;
    auto flush = [&]() {
        if (!current.empty()) {
            blocks.push_back(current);
            current.clear();
        }
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<Rational> row;
        std::string tok;
        while (ls >> tok) row.push_back(Rational::parse(tok));
        if (row.empty())
            flush();
        else
            current.push_back(std::move(row));
    }
    flush();
    if (blocks.empty()) throw std::invalid_argument("matrix subspace file: no matrices");
    std::size_t n = blocks.front().size();
    std::vector<QMatrix> basis;
    for (const auto& b : blocks) {
        if (b.size() != n) throw std::invalid_argument("matrix subspace file: non-square block");
        for (const auto& r : b)
            if (r.size() != n)
                throw std::invalid_argument("matrix subspace file: ragged or non-square block");
        basis.push_back(QMatrix::from_rows(b));
    }
    return MatrixSubspace(n, std::move(basis));
}

std::string format_matrix_subspace(const MatrixSubspace& s) {
    std::ostringstream os;
    for (std::size_t b = 0; b < s.basis.size(); ++b) {
        if (b) os << "\n";
        for (std::size_t i = 0; i < s.n; ++i) {
            for (std::size_t j = 0; j < s.n; ++j) {
                if (j) os << " ";
                os << s.basis[b].at(i, j).str();
            }
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace carnot
