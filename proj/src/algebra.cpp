#include "carnot/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace carnot {

std::string to_string(ValidationIssue::Kind k) {
    switch (k) {
        case ValidationIssue::Kind::Antisymmetry: return "antisymmetry";
        case ValidationIssue::Kind::Grading: return "grading";
        case ValidationIssue::Kind::Jacobi: return "jacobi";
        case ValidationIssue::Kind::BracketGeneration: return "bracket-generation";
        case ValidationIssue::Kind::Centre: return "centre";
    }
    return "?";
}

ValidationError::ValidationError(std::vector<ValidationIssue> found)
    : std::runtime_error([&found] {
          std::string msg = "algebra fails validation:";
          for (const auto& i : found) msg += "\n  [" + to_string(i.kind) + "] " + i.detail;
          return msg;
      }()),
      issues(std::move(found)) {}

GradedLieAlgebra::Builder& GradedLieAlgebra::Builder::name(std::string n) {
    name_ = std::move(n);
    return *this;
}

GradedLieAlgebra::Builder& GradedLieAlgebra::Builder::stratum(std::vector<std::string> names) {
    strata_.push_back(std::move(names));
    return *this;
}

GradedLieAlgebra::Builder& GradedLieAlgebra::Builder::bracket(
    const std::string& x, const std::string& y,
    std::vector<std::pair<Rational, std::string>> terms) {
    brackets_.emplace_back(x, y, std::move(terms));
    return *this;
}

GradedLieAlgebra GradedLieAlgebra::Builder::build(bool validate) const {
    GradedLieAlgebra a;
    a.name_ = name_;
    a.strata_ = strata_;
    for (std::size_t j = 0; j < strata_.size(); ++j) {
        a.offsets_.push_back(a.names_.size());
        for (const auto& n : strata_[j]) {
            if (a.index_.count(n))
                throw std::invalid_argument("duplicate basis name '" + n + "'");
            a.index_[n] = a.names_.size();
            a.names_.push_back(n);
            a.depth_.push_back(static_cast<int>(j) + 1);
        }
    }
    const std::size_t d = a.names_.size();
    if (d == 0) throw std::invalid_argument("algebra has no basis elements");
    a.c_.assign(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d, Rational(0))));

    std::vector<std::vector<bool>> given(d, std::vector<bool>(d, false));
    for (const auto& [xn, yn, terms] : brackets_) {
        auto xi = a.index_.find(xn);
        auto yi = a.index_.find(yn);
        if (xi == a.index_.end()) throw std::invalid_argument("unknown basis name '" + xn + "'");
        if (yi == a.index_.end()) throw std::invalid_argument("unknown basis name '" + yn + "'");
        std::size_t i = xi->second, j = yi->second;
        if (given[i][j] || given[j][i])
            throw std::invalid_argument("duplicate or conflicting bracket specification for [" +
                                        xn + "," + yn + "]");
        given[i][j] = given[j][i] = true;
        std::vector<Rational> v(d, Rational(0));
        for (const auto& [coef, tn] : terms) {
            auto ti = a.index_.find(tn);
            if (ti == a.index_.end())
                throw std::invalid_argument("unknown basis name '" + tn + "' in bracket value");
            v[ti->second] += coef;
        }
        a.c_[i][j] = v;
        for (auto& x : v) x = -x;
        a.c_[j][i] = std::move(v);
    }

    if (validate) {
        auto issues = a.validate();
        if (!issues.empty()) throw ValidationError(std::move(issues));
    }
    return a;
}

std::optional<std::size_t> GradedLieAlgebra::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<ValidationIssue> GradedLieAlgebra::validate() const {
    std::vector<ValidationIssue> issues;
    const std::size_t d = dim();
    const int s = step();

    // Antisymmetry (can only fail for hand-assembled tables).
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j)
            for (std::size_t m = 0; m < d; ++m)
                if (c_[i][j][m] + c_[j][i][m] != Rational(0)) {
                    issues.push_back({ValidationIssue::Kind::Antisymmetry,
                                      "[" + names_[i] + "," + names_[j] + "] != -[" + names_[j] +
                                          "," + names_[i] + "]"});
                    m = d;
                    break;
                }

    // Grading: [g_{-i}, g_{-j}] lands in g_{-(i+j)} (zero when i + j > s).
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            int target = depth_[i] + depth_[j];
            for (std::size_t m = 0; m < d; ++m) {
                if (c_[i][j][m].is_zero()) continue;
                if (target > s || depth_[m] != target) {
                    issues.push_back(
                        {ValidationIssue::Kind::Grading,
                         "[" + names_[i] + "," + names_[j] + "] has a component on " + names_[m] +
                             " outside stratum " + std::to_string(target)});
                    break;
                }
            }
        }

    // Jacobi identity on basis triples.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = j + 1; k < d; ++k) {
                std::vector<Rational> ei(d), ej(d), ek(d);
                ei[i] = Rational(1);
                ej[j] = Rational(1);
                ek[k] = Rational(1);
                auto jac = bracket(bracket(ei, ej), ek);
                auto t2 = bracket(bracket(ej, ek), ei);
                auto t3 = bracket(bracket(ek, ei), ej);
                bool bad = false;
                for (std::size_t m = 0; m < d; ++m)
                    if (!(jac[m] + t2[m] + t3[m]).is_zero()) bad = true;
                if (bad)
                    issues.push_back({ValidationIssue::Kind::Jacobi,
                                      "Jacobi fails on (" + names_[i] + "," + names_[j] + "," +
                                          names_[k] + ")"});
            }

    // Bracket generation: span [g_{-1}, g_{-j}] = g_{-(j+1)} for j = 1..s-1.
    for (int j = 1; j + 1 <= s; ++j) {
        std::vector<std::vector<Rational>> images;
        for (std::size_t a = stratum_offset(1); a < stratum_offset(1) + stratum_dim(1); ++a)
            for (std::size_t b = stratum_offset(j); b < stratum_offset(j) + stratum_dim(j); ++b) {
                std::vector<Rational> proj(stratum_dim(j + 1));
                for (std::size_t m = 0; m < stratum_dim(j + 1); ++m)
                    proj[m] = c_[a][b][stratum_offset(j + 1) + m];
                images.push_back(std::move(proj));
            }
        if (span_rank(images) != stratum_dim(j + 1))
            issues.push_back({ValidationIssue::Kind::BracketGeneration,
                              "[g_-1, g_-" + std::to_string(j) + "] does not span stratum " +
                                  std::to_string(j + 1)});
    }

    // g_{-s} is central.
    for (std::size_t a = stratum_offset(s); a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t m = 0; m < d; ++m)
                if (!c_[a][b][m].is_zero()) {
                    issues.push_back({ValidationIssue::Kind::Centre,
                                      "[" + names_[a] + "," + names_[b] + "] != 0 but " +
                                          names_[a] + " lies in the last stratum"});
                    b = d;
                    break;
                }

    return issues;
}

std::string GradedLieAlgebra::serialize() const {
    std::ostringstream os;
    os << "name " << name_ << "\n";
    os << "step " << step() << "\n";
    for (int j = 1; j <= step(); ++j) {
        os << "stratum " << j << ":";
        for (const auto& n : strata_[j - 1]) os << " " << n;
        os << "\n";
    }
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j) {
            const auto& v = c_[i][j];
            bool nonzero = false;
            for (const auto& x : v)
                if (!x.is_zero()) nonzero = true;
            if (!nonzero) continue;
            os << "bracket [" << names_[i] << "," << names_[j] << "] =";
            bool first = true;
            for (std::size_t m = 0; m < dim(); ++m) {
                if (v[m].is_zero()) continue;
                if (!first) os << " +";
                first = false;
                if (v[m].is_one())
                    os << " " << names_[m];
                else
                    os << " " << v[m].str() << " " << names_[m];
            }
            os << "\n";
        }
    return os.str();
}

namespace {

struct Token {
    enum class Kind { Ident, Int, Sym, End };
    Kind kind;
    std::string text;
    int col;
};

std::vector<Token> tokenize_line(const std::string& line, int line_no) {
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        char ch = line[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        int col = static_cast<int>(i) + 1;
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < line.size() &&
                   (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
                ++j;
            toks.push_back({Token::Kind::Ident, line.substr(i, j - i), col});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            toks.push_back({Token::Kind::Int, line.substr(i, j - i), col});
            i = j;
        } else if (std::string("[],=+-/:").find(ch) != std::string::npos) {
            toks.push_back({Token::Kind::Sym, std::string(1, ch), col});
            ++i;
        } else {
            throw ParseError(line_no, col, std::string("unexpected character '") + ch + "'");
        }
    }
    toks.push_back({Token::Kind::End, "", static_cast<int>(line.size()) + 1});
    return toks;
}

class LineParser {
public:
    LineParser(std::vector<Token> toks, int line_no) : t_(std::move(toks)), line_(line_no) {}

    const Token& peek() const { return t_[pos_]; }
    bool at_end() const { return peek().kind == Token::Kind::End; }

    Token expect_ident(const std::string& what) {
        if (peek().kind != Token::Kind::Ident)
            throw ParseError(line_, peek().col, "expected " + what);
        return t_[pos_++];
    }
    Token expect_int(const std::string& what) {
        if (peek().kind != Token::Kind::Int)
            throw ParseError(line_, peek().col, "expected " + what);
        return t_[pos_++];
    }
    void expect_sym(const std::string& s) {
        if (peek().kind != Token::Kind::Sym || peek().text != s)
            throw ParseError(line_, peek().col, "expected '" + s + "'");
        ++pos_;
    }
    bool accept_sym(const std::string& s) {
        if (peek().kind == Token::Kind::Sym && peek().text == s) {
            ++pos_;
            return true;
        }
        return false;
    }

    // term := [sign] integer [/ positive-integer] name | [sign] name
    std::pair<Rational, std::string> parse_term() {
        long sign = 1;
        if (accept_sym("-"))
            sign = -1;
        else
            accept_sym("+");
        if (peek().kind == Token::Kind::Int) {
            std::string num = t_[pos_++].text;
            std::string den = "1";
            if (accept_sym("/")) den = expect_int("positive denominator").text;
            Rational coef = Rational::parse(num + "/" + den) * Rational(sign);
            std::string name = expect_ident("basis name after coefficient").text;
            return {coef, name};
        }
        std::string name = expect_ident("basis name").text;
        return {Rational(sign), name};
    }

    int line() const { return line_; }

private:
    std::vector<Token> t_;
    std::size_t pos_ = 0;
    int line_;
};

}  // namespace

GradedLieAlgebra parse_algebra(const std::string& text, bool validate) {
    GradedLieAlgebra::Builder builder;
    bool saw_name = false;
    std::optional<int> declared_step;
    int expected_stratum = 1;
    std::set<std::string> seen_names;
    std::set<std::pair<std::string, std::string>> seen_pairs;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        LineParser p(tokenize_line(raw, line_no), line_no);
        if (p.at_end()) continue;
        Token head = p.expect_ident("directive (name, step, stratum, bracket)");
        if (head.text == "name") {
            builder.name(p.expect_ident("algebra name").text);
            saw_name = true;
        } else if (head.text == "step") {
            declared_step = std::stoi(p.expect_int("step count").text);
            if (*declared_step < 1) throw ParseError(line_no, head.col, "step must be >= 1");
        } else if (head.text == "stratum") {
            int j = std::stoi(p.expect_int("stratum index").text);
            p.expect_sym(":");
            if (j != expected_stratum)
                throw ParseError(line_no, head.col,
                                 "expected stratum " + std::to_string(expected_stratum) +
                                     ", got " + std::to_string(j));
            ++expected_stratum;
            std::vector<std::string> names;
            while (!p.at_end()) {
                Token n = p.expect_ident("basis name");
                if (!seen_names.insert(n.text).second)
                    throw ParseError(line_no, n.col, "duplicate basis name '" + n.text + "'");
                names.push_back(n.text);
            }
            if (names.empty()) throw ParseError(line_no, head.col, "empty stratum");
            builder.stratum(std::move(names));
        } else if (head.text == "bracket") {
            p.expect_sym("[");
            std::string x = p.expect_ident("basis name").text;
            p.expect_sym(",");
            std::string y = p.expect_ident("basis name").text;
            p.expect_sym("]");
            p.expect_sym("=");
            auto pair = x < y ? std::make_pair(x, y) : std::make_pair(y, x);
            if (!seen_pairs.insert(pair).second)
                throw ParseError(line_no, head.col,
                                 "bracket [" + x + "," + y + "] specified more than once");
            std::vector<std::pair<Rational, std::string>> terms;
            terms.push_back(p.parse_term());
            while (!p.at_end()) {
                if (!p.accept_sym("+")) {
                    // allow "- term" as "+ (-term)"
                    if (p.peek().kind == Token::Kind::Sym && p.peek().text == "-") {
                        auto t = p.parse_term();
                        terms.push_back(std::move(t));
                        continue;
                    }
                    throw ParseError(line_no, p.peek().col, "expected '+' between terms");
                }
                terms.push_back(p.parse_term());
            }
            builder.bracket(x, y, std::move(terms));
        } else {
            throw ParseError(line_no, head.col, "unknown directive '" + head.text + "'");
        }
    }

    if (!saw_name) throw ParseError(line_no, 1, "missing 'name' line");
    if (!declared_step) throw ParseError(line_no, 1, "missing 'step' line");
    if (expected_stratum - 1 != *declared_step)
        throw ParseError(line_no, 1,
                         "declared step " + std::to_string(*declared_step) + " but found " +
                             std::to_string(expected_stratum - 1) + " strata");
    try {
        return builder.build(validate);
    } catch (const ValidationError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, 1, e.what());
    }
}

std::vector<ValidationIssue> validate_structure(const GradedLieAlgebra& a) { return a.validate(); }

std::vector<std::vector<Rational>> degenerate_subspace(const GradedLieAlgebra& a) {
    const std::size_t d1 = a.stratum_dim(1);
    const std::size_t off = a.stratum_offset(1);
    // Rows: components of [e_i, e_b] over all b in g_{-1}; columns i in g_{-1}.
    QMatrix m(d1 * a.dim(), d1);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t b = 0; b < d1; ++b) {
            const auto& v = a.bracket_basis(off + i, off + b);
            for (std::size_t c = 0; c < a.dim(); ++c) m.at(b * a.dim() + c, i) = v[c];
        }
    return kernel_basis(m);
}

QMatrix StrataDerivation::full_matrix(const GradedLieAlgebra& a) const {
    QMatrix m(a.dim(), a.dim());
    for (int j = 1; j <= a.step(); ++j) {
        std::size_t off = a.stratum_offset(j);
        const QMatrix& b = blocks.at(j - 1);
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) m.at(off + r, off + c) = b.at(r, c);
    }
    return m;
}

std::vector<Rational> StrataDerivation::apply(const GradedLieAlgebra& a,
                                              const std::vector<Rational>& v) const {
    return full_matrix(a).apply(v);
}

std::vector<Rational> StrataDerivation::flatten() const {
    std::vector<Rational> out;
    for (const auto& b : blocks) {
        const auto& f = b.flat();
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

StrataDerivation StrataDerivation::unflatten(const GradedLieAlgebra& a,
                                             const std::vector<Rational>& data) {
    StrataDerivation d;
    std::size_t pos = 0;
    for (int j = 1; j <= a.step(); ++j) {
        std::size_t dj = a.stratum_dim(j);
        QMatrix b(dj, dj);
        for (std::size_t r = 0; r < dj; ++r)
            for (std::size_t c = 0; c < dj; ++c) b.at(r, c) = data.at(pos++);
        d.blocks.push_back(std::move(b));
    }
    if (pos != data.size()) throw std::invalid_argument("StrataDerivation: bad data length");
    return d;
}

bool is_derivation(const GradedLieAlgebra& a, const StrataDerivation& d) {
    QMatrix m = d.full_matrix(a);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j) {
            std::vector<Rational> ei(a.dim()), ej(a.dim());
            ei[i] = Rational(1);
            ej[j] = Rational(1);
            auto lhs = m.apply(a.bracket_basis(i, j));
            auto rhs = a.bracket(m.apply(ei), ej);
            auto rhs2 = a.bracket(ei, m.apply(ej));
            for (std::size_t k = 0; k < a.dim(); ++k)
                if (lhs[k] != rhs[k] + rhs2[k]) return false;
        }
    return true;
}

StrataDerivation grading_derivation(const GradedLieAlgebra& a) {
    StrataDerivation d;
    for (int j = 1; j <= a.step(); ++j)
        d.blocks.push_back(QMatrix::identity(a.stratum_dim(j)).scaled(Rational(j)));
    return d;
}

namespace {

GradedLieAlgebra build_abelian(int n) {
    GradedLieAlgebra::Builder b;
    b.name("abelian_" + std::to_string(n));
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
    b.stratum(names);
    return b.build();
}

GradedLieAlgebra build_heisenberg(int dim) {
    if (dim < 3 || dim % 2 == 0)
        throw std::invalid_argument("heisenberg: dimension must be odd and >= 3");
    int n = (dim - 1) / 2;
    GradedLieAlgebra::Builder b;
    b.name("heisenberg_" + std::to_string(dim));
    std::vector<std::string> names;
    for (int i = 1; i <= 2 * n; ++i) names.push_back("X" + std::to_string(i));
    b.stratum(names);
    b.stratum({"Y"});
    for (int i = 1; i <= n; ++i)
        b.bracket("X" + std::to_string(2 * i - 1), "X" + std::to_string(2 * i),
                  {{Rational(1), "Y"}});
    return b.build();
}

GradedLieAlgebra build_free_two_step(int m) {
    if (m < 2) throw std::invalid_argument("free_two_step: needs at least 2 generators");
    GradedLieAlgebra::Builder b;
    b.name("free_two_step_" + std::to_string(m));
    std::vector<std::string> first, second;
    for (int i = 1; i <= m; ++i) first.push_back("X" + std::to_string(i));
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            second.push_back("Y" + std::to_string(i) + std::to_string(j));
    b.stratum(first).stratum(second);
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            b.bracket("X" + std::to_string(i), "X" + std::to_string(j),
                      {{Rational(1), "Y" + std::to_string(i) + std::to_string(j)}});
    return b.build();
}

GradedLieAlgebra build_engel() {
    GradedLieAlgebra::Builder b;
    b.name("engel");
    b.stratum({"X1", "X2"}).stratum({"X3"}).stratum({"X4"});
    b.bracket("X1", "X2", {{Rational(1), "X3"}});
    b.bracket("X1", "X3", {{Rational(1), "X4"}});
    return b.build();
}

// Realification of the complex Heisenberg algebra [Z1, Z2] = W.
GradedLieAlgebra build_complex_heisenberg_real() {
    GradedLieAlgebra::Builder b;
    b.name("complex_heisenberg_real");
    b.stratum({"X1", "X2", "X3", "X4"}).stratum({"Y1", "Y2"});
    b.bracket("X1", "X3", {{Rational(1), "Y1"}});
    b.bracket("X1", "X4", {{Rational(1), "Y2"}});
    b.bracket("X2", "X3", {{Rational(1), "Y2"}});
    b.bracket("X2", "X4", {{Rational(-1), "Y1"}});
    return b.build();
}

// Appends k abelian generators to the first stratum of the base algebra.
GradedLieAlgebra build_product_with_abelian(const GradedLieAlgebra& base, int k) {
    if (k < 1) throw std::invalid_argument("product_with_abelian: k must be >= 1");
    GradedLieAlgebra::Builder b;
    b.name(base.name() + "_xR" + std::to_string(k));
    for (int j = 1; j <= base.step(); ++j) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < base.stratum_dim(j); ++i)
            names.push_back(base.basis_name(base.stratum_offset(j) + i));
        if (j == 1)
            for (int i = 1; i <= k; ++i) names.push_back("W" + std::to_string(i));
        b.stratum(std::move(names));
    }
    for (std::size_t i = 0; i < base.dim(); ++i)
        for (std::size_t j = i + 1; j < base.dim(); ++j) {
            const auto& v = base.bracket_basis(i, j);
            std::vector<std::pair<Rational, std::string>> terms;
            for (std::size_t m = 0; m < base.dim(); ++m)
                if (!v[m].is_zero()) terms.emplace_back(v[m], base.basis_name(m));
            if (!terms.empty()) b.bracket(base.basis_name(i), base.basis_name(j), terms);
        }
    return b.build();
}

std::vector<std::string> split_key(const std::string& key) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : key) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

GradedLieAlgebra catalog_build(const std::string& key) {
    auto parts = split_key(key);
    const std::string& kind = parts[0];
    auto want_int = [&](std::size_t i) {
        if (i >= parts.size()) throw std::invalid_argument("catalog '" + key + "': missing parameter");
        return std::stoi(parts[i]);
    };
    if (kind == "abelian") return build_abelian(want_int(1));
    if (kind == "heisenberg") return build_heisenberg(want_int(1));
    if (kind == "free_two_step") return build_free_two_step(want_int(1));
    if (kind == "engel") return build_engel();
    if (kind == "complex_heisenberg_real") return build_complex_heisenberg_real();
    if (kind == "product_with_abelian") {
        if (parts.size() < 3)
            throw std::invalid_argument("catalog '" + key + "': expected product_with_abelian:<base>:K");
        std::string base_key;
        for (std::size_t i = 1; i + 1 < parts.size(); ++i) {
            if (i > 1) base_key += ":";
            base_key += parts[i];
        }
        int k = std::stoi(parts.back());
        return build_product_with_abelian(catalog_build(base_key), k);
    }
    throw std::invalid_argument("unknown catalog name '" + key + "'");
}

std::vector<std::string> catalog_names() {
    return {"abelian:N", "heisenberg:N", "free_two_step:M", "engel", "complex_heisenberg_real",
            "product_with_abelian:<base>:K"};
}

}  // namespace carnot
