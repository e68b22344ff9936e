#include "qcas/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace qcas {

namespace {

void sparse_add(SparseVec& dst, int idx, const Rat& c) {
    if (c == 0) return;
    auto it = dst.find(idx);
    if (it == dst.end()) {
        dst.emplace(idx, c);
    } else {
        it->second += c;
        if (it->second == 0) dst.erase(it);
    }
}

std::string vec_str(const GradedAlgebra& alg, const SparseVec& v) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : v) {
        if (!first) os << " + ";
        first = false;
        os << rat_to_string(c) << "*" << alg.label(i);
    }
    return os.str();
}

}  // namespace

int GradedAlgebra::find(const std::string& lbl) const {
    for (int i = 0; i < size(); ++i)
        if (basis[i].label == lbl) return i;
    return -1;
}

int GradedAlgebra::divisor_count() const {
    int r = 0;
    for (int i = 1; i < size() && codim(i) == 1; ++i) ++r;
    return r;
}

Rat GradedAlgebra::integral_of_basis(int i) const {
    auto it = integrals.find(i);
    return it == integrals.end() ? Rat(0) : it->second;
}

Rat GradedAlgebra::integral_of(const SparseVec& x) const {
    Rat acc(0);
    for (const auto& [i, c] : x) acc += c * integral_of_basis(i);
    return acc;
}

SparseVec GradedAlgebra::multiply(int a, int b) const {
    if (a == 0) return SparseVec{{b, Rat(1)}};
    if (b == 0) return SparseVec{{a, Rat(1)}};
    if (codim(a) + codim(b) > n) return {};
    auto key = std::minmax(a, b);
    auto it = products.find(key);
    if (it == products.end())
        throw QcasError("validation", "product " + label(a) + " * " + label(b) + " is not listed");
    return it->second;
}

SparseVec GradedAlgebra::multiply(const SparseVec& x, const SparseVec& y) const {
    SparseVec out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            SparseVec p = multiply(a, b);
            Rat c = ca * cb;
            for (const auto& [i, ci] : p) sparse_add(out, i, c * ci);
        }
    return out;
}

Rat GradedAlgebra::triple_integral(int a, int b, int c) const {
    // integral of T_a T_b T_c; reassociate so each step stays basis-level
    SparseVec ab = multiply(a, b);
    Rat acc(0);
    for (const auto& [i, ci] : ab) {
        SparseVec p = multiply(i, c);
        acc += ci * integral_of(p);
    }
    return acc;
}

ValidationReport validate_algebra(const GradedAlgebra& alg) {
    ValidationReport rep;
    auto bad = [&rep](const std::string& check, const std::string& detail) {
        rep.items.push_back({check, detail});
    };

    if (alg.basis.empty()) {
        bad("basis", "empty basis");
        return rep;
    }
    if (alg.n < 1) bad("dimension", "socle codimension must be at least 1");
    if (alg.basis[0].codim != 0) bad("identity", "first basis element must have codimension 0");
    int zeros = 0;
    for (const auto& b : alg.basis) zeros += (b.codim == 0);
    if (zeros != 1) bad("identity", "exactly one codimension-0 element expected");
    for (int i = 1; i < alg.size(); ++i) {
        if (alg.codim(i) < 1 || alg.codim(i) > alg.n)
            bad("grading", "codimension of " + alg.label(i) + " out of range 1.." + std::to_string(alg.n));
        if (i > 1 && alg.codim(i) < alg.codim(i - 1))
            bad("basis-order", "codimensions must be nondecreasing; " + alg.label(i) + " breaks the order");
    }
    if (alg.divisor_count() < 1) bad("basis", "at least one codimension-1 element required");
    {
        std::vector<std::string> seen;
        for (const auto& b : alg.basis) {
            if (std::find(seen.begin(), seen.end(), b.label) != seen.end())
                bad("basis", "duplicate label " + b.label);
            seen.push_back(b.label);
        }
    }
    int top = 0;
    for (int i = 0; i < alg.size(); ++i) top += (alg.codim(i) == alg.n);
    if (top != 1) {
        bad("socle", "expected exactly one codimension-" + std::to_string(alg.n) +
                        " element, found " + std::to_string(top));
    }
    if (!rep.ok()) return rep;  // layout is broken; deeper checks would cascade

    // product table domain and grading
    for (int a = 1; a < alg.size(); ++a)
        for (int b = a; b < alg.size(); ++b) {
            bool listed = alg.products.count({a, b}) > 0;
            bool in_range = alg.codim(a) + alg.codim(b) <= alg.n;
            if (in_range && !listed)
                bad("products", "missing product " + alg.label(a) + " * " + alg.label(b));
            if (!in_range && listed)
                bad("products", "product " + alg.label(a) + " * " + alg.label(b) +
                                    " exceeds codimension " + std::to_string(alg.n));
            if (in_range && listed) {
                int want = alg.codim(a) + alg.codim(b);
                for (const auto& [i, c] : alg.products.at({a, b})) {
                    if (c == 0) bad("products", "stored zero coefficient in " + alg.label(a) + " * " + alg.label(b));
                    if (alg.codim(i) != want)
                        bad("grading", alg.label(a) + " * " + alg.label(b) + " has a component " +
                                           alg.label(i) + " of codimension " + std::to_string(alg.codim(i)) +
                                           ", expected " + std::to_string(want));
                }
            }
        }
    if (!rep.ok()) return rep;

    // integral supported exactly on the socle
    for (int i = 0; i < alg.size(); ++i) {
        Rat v = alg.integral_of_basis(i);
        if (alg.codim(i) < alg.n && v != 0)
            bad("integral", "integral of " + alg.label(i) + " must vanish below codimension " +
                                std::to_string(alg.n));
        if (alg.codim(i) == alg.n && v == 0)
            bad("integral", "integral must be nonzero on the codimension-" + std::to_string(alg.n) +
                                " element " + alg.label(i));
    }

    // associativity on all basis triples
    for (int a = 1; a < alg.size(); ++a)
        for (int b = a; b < alg.size(); ++b)
            for (int c = b; c < alg.size(); ++c) {
                SparseVec left = alg.multiply(alg.multiply(a, b), SparseVec{{c, Rat(1)}});
                SparseVec right = alg.multiply(SparseVec{{a, Rat(1)}}, alg.multiply(b, c));
                if (left != right)
                    bad("associativity",
                        "(" + alg.label(a) + " " + alg.label(b) + ") " + alg.label(c) + " = " +
                            vec_str(alg, left) + " but " + alg.label(a) + " (" + alg.label(b) + " " +
                            alg.label(c) + ") = " + vec_str(alg, right));
            }

    // nondegenerate pairing
    {
        int m = alg.size();
        std::vector<std::vector<Rat>> g(m, std::vector<Rat>(m, Rat(0)));
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) g[a][b] = alg.integral_of(alg.multiply(a, b));
        if (invert_matrix(g).empty()) bad("pairing", "intersection pairing is singular");
    }
    return rep;
}

std::vector<std::vector<Rat>> invert_matrix(const std::vector<std::vector<Rat>>& m) {
    int k = (int)m.size();
    std::vector<std::vector<Rat>> a(m);
    std::vector<std::vector<Rat>> inv(k, std::vector<Rat>(k, Rat(0)));
    for (int i = 0; i < k; ++i) inv[i][i] = 1;
    for (int col = 0; col < k; ++col) {
        int piv = -1;
        for (int row = col; row < k; ++row)
            if (a[row][col] != 0) { piv = row; break; }
        if (piv < 0) return {};
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = a[col][col];
        for (int j = 0; j < k; ++j) { a[col][j] /= d; inv[col][j] /= d; }
        for (int row = 0; row < k; ++row) {
            if (row == col || a[row][col] == 0) continue;
            Rat f = a[row][col];
            for (int j = 0; j < k; ++j) {
                a[row][j] -= f * a[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

PairingData pairing_data(const GradedAlgebra& alg) {
    PairingData pd;
    int m = alg.size();
    pd.gram.assign(m, std::vector<Rat>(m, Rat(0)));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) pd.gram[a][b] = alg.integral_of(alg.multiply(a, b));
    pd.inverse = invert_matrix(pd.gram);
    if (pd.inverse.empty())
        throw QcasError("validation", "intersection pairing of " + alg.name + " is singular");
    for (int e = 0; e < m; ++e)
        for (int f = 0; f < m; ++f)
            if (pd.inverse[e][f] != 0) pd.inverse_support.push_back({e, f});
    return pd;
}

bool is_generated_by_divisors(const GradedAlgebra& alg) {
    // row-reduce the span of divisor products degree by degree
    int r = alg.divisor_count();
    std::vector<SparseVec> layer;  // spanning set of the current codimension
    for (int i = 1; i <= r; ++i) layer.push_back(SparseVec{{i, Rat(1)}});
    for (int c = 2; c <= alg.n; ++c) {
        std::vector<SparseVec> next;
        for (const auto& x : layer)
            for (int i = 1; i <= r; ++i) next.push_back(alg.multiply(x, SparseVec{{i, Rat(1)}}));
        // rank of `next` inside the codimension-c piece
        std::vector<int> piece;
        for (int i = 0; i < alg.size(); ++i)
            if (alg.codim(i) == c) piece.push_back(i);
        std::vector<std::vector<Rat>> rows;
        for (const auto& v : next) {
            std::vector<Rat> row(piece.size(), Rat(0));
            for (size_t j = 0; j < piece.size(); ++j) {
                auto it = v.find(piece[j]);
                if (it != v.end()) row[j] = it->second;
            }
            rows.push_back(row);
        }
        size_t rank = 0;
        for (size_t col = 0; col < piece.size(); ++col) {
            size_t piv = rank;
            while (piv < rows.size() && rows[piv][col] == 0) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[piv], rows[rank]);
            for (size_t row = 0; row < rows.size(); ++row) {
                if (row == rank || rows[row][col] == 0) continue;
                Rat f = rows[row][col] / rows[rank][col];
                for (size_t j = col; j < piece.size(); ++j) rows[row][j] -= f * rows[rank][j];
            }
            ++rank;
        }
        if (rank < piece.size()) return false;
        layer = std::move(next);
    }
    return true;
}

}  // namespace qcas
