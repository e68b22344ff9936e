#include "qcas/degrees.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

namespace qcas {

namespace {

long long llgcd(long long a, long long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) { long long t = a % b; a = b; b = t; }
    return a;
}

IVec primitive(const std::vector<Rat>& v) {
    // clear denominators (positively), divide by content
    Int lcm(1);
    for (const auto& x : v) {
        Int den = x.get_den();
        Int g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        lcm = lcm / g * den;
    }
    std::vector<Int> w;
    for (const auto& x : v) w.push_back(Int(x.get_num() * (lcm / x.get_den())));
    Int content(0);
    for (const auto& x : w) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    IVec out;
    for (const auto& x : w) {
        Int q = content == 0 ? x : Int(x / content);
        if (!q.fits_slong_p()) throw QcasError("validation", "cone data overflows machine integers");
        out.push_back(q.get_si());
    }
    return out;
}

// rank of a rational matrix
int rat_rank(std::vector<std::vector<Rat>> m) {
    if (m.empty()) return 0;
    size_t cols = m[0].size(), rank = 0;
    for (size_t col = 0; col < cols && rank < m.size(); ++col) {
        size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        for (size_t row = 0; row < m.size(); ++row) {
            if (row == rank || m[row][col] == 0) continue;
            Rat f = m[row][col] / m[rank][col];
            for (size_t j = col; j < cols; ++j) m[row][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return (int)rank;
}

// one-dimensional kernel of a rational matrix with `dim` columns, if any
std::optional<std::vector<Rat>> kernel_vector(std::vector<std::vector<Rat>> m, int dim) {
    std::vector<int> pivot_col;
    size_t rank = 0;
    for (int col = 0; col < dim && rank < m.size(); ++col) {
        size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        Rat d = m[rank][col];
        for (int j = 0; j < dim; ++j) m[rank][j] /= d;
        for (size_t row = 0; row < m.size(); ++row) {
            if (row == rank || m[row][col] == 0) continue;
            Rat f = m[row][col];
            for (int j = 0; j < dim; ++j) m[row][j] -= f * m[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if ((int)rank != dim - 1) return std::nullopt;
    int free_col = 0;
    while (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) ++free_col;
    std::vector<Rat> v(dim, Rat(0));
    v[free_col] = 1;
    for (size_t i = 0; i < rank; ++i) v[pivot_col[i]] = -m[i][free_col];
    return v;
}

struct LinCons {
    std::vector<Rat> c;
    Rat rhs;  // c.x >= rhs
};

// eliminate variable k from constraints over variables 0..k
std::vector<LinCons> fm_eliminate(const std::vector<LinCons>& cons, int k) {
    std::vector<LinCons> out, pos, neg;
    for (const auto& L : cons) {
        if (L.c[k] == 0) out.push_back(L);
        else if (L.c[k] > 0) pos.push_back(L);
        else neg.push_back(L);
    }
    for (const auto& p : pos)
        for (const auto& q : neg) {
            Rat mp = -q.c[k], mq = p.c[k];
            LinCons nl;
            nl.c.assign(p.c.size(), Rat(0));
            for (size_t i = 0; i < nl.c.size(); ++i) nl.c[i] = mp * p.c[i] + mq * q.c[i];
            nl.rhs = mp * p.rhs + mq * q.rhs;
            out.push_back(std::move(nl));
        }
    return out;
}

long long rat_floor(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    if (!q.fits_slong_p()) throw QcasError("validation", "enumeration bound overflows machine integers");
    return q.get_si();
}

long long rat_ceil(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    if (!q.fits_slong_p()) throw QcasError("validation", "enumeration bound overflows machine integers");
    return q.get_si();
}

// all integer points of {x : every constraint holds}, via projections
std::vector<IVec> enumerate_region(int dim, const std::vector<LinCons>& sys) {
    std::vector<std::vector<LinCons>> proj(dim + 1);
    proj[dim] = sys;
    for (int k = dim - 1; k >= 1; --k) proj[k] = fm_eliminate(proj[k + 1], k);

    std::vector<IVec> out;
    IVec x(dim, 0);
    std::function<void(int)> rec = [&](int k) {
        bool has_lo = false, has_hi = false;
        long long lo = 0, hi = 0;
        for (const auto& L : proj[k + 1]) {
            Rat residual = L.rhs;
            for (int i = 0; i < k; ++i) residual -= L.c[i] * to_rat(x[i]);
            if (L.c[k] == 0) {
                if (residual > 0) return;  // infeasible prefix
                continue;
            }
            if (L.c[k] > 0) {
                long long b = rat_ceil(residual / L.c[k]);
                if (!has_lo || b > lo) { lo = b; has_lo = true; }
            } else {
                long long b = rat_floor(residual / L.c[k]);
                if (!has_hi || b < hi) { hi = b; has_hi = true; }
            }
        }
        if (!has_lo || !has_hi)
            throw QcasError("validation",
                            "enumeration region is unbounded; the functional is not strictly positive on the cone");
        for (long long v = lo; v <= hi; ++v) {
            x[k] = v;
            if (k + 1 == dim) out.push_back(x);
            else rec(k + 1);
        }
        x[k] = 0;
    };
    rec(0);
    return out;
}

void check_row_sizes(const ConeSpec& cone) {
    for (const auto& row : cone.ineqs)
        if ((int)row.size() != cone.dim)
            throw QcasError("validation", "cone inequality has wrong length");
}

}  // namespace

ConeSpec cone_from_ineqs(int dim, std::vector<IVec> ineqs) {
    ConeSpec c;
    c.dim = dim;
    c.ineqs = std::move(ineqs);
    check_row_sizes(c);
    c.omega.assign(dim, 0);
    for (const auto& row : c.ineqs)
        for (int i = 0; i < dim; ++i) c.omega[i] += row[i];
    return c;
}

ConeSpec cone_from_rays(int dim, std::vector<IVec> rays) {
    if ((int)rays.size() != dim)
        throw QcasError("validation",
                        "ray presentation must be simplicial: expected " + std::to_string(dim) +
                            " linearly independent rays, got " + std::to_string(rays.size()));
    // columns are the rays; x in cone iff R^{-1} x >= 0 componentwise
    std::vector<std::vector<Rat>> m(dim, std::vector<Rat>(dim, Rat(0)));
    for (int j = 0; j < dim; ++j) {
        if ((int)rays[j].size() != dim) throw QcasError("validation", "cone ray has wrong length");
        for (int i = 0; i < dim; ++i) m[i][j] = to_rat(rays[j][i]);
    }
    auto inv = invert_matrix(m);
    if (inv.empty())
        throw QcasError("validation", "ray presentation must be simplicial: rays are linearly dependent");
    std::vector<IVec> hrows;
    for (int i = 0; i < dim; ++i) hrows.push_back(primitive(inv[i]));
    ConeSpec c = cone_from_ineqs(dim, std::move(hrows));
    c.rays = std::move(rays);
    c.from_rays = true;
    return c;
}

void validate_cone(const ConeSpec& cone) {
    if (cone.dim < 1) throw QcasError("validation", "cone dimension must be at least 1");
    check_row_sizes(cone);
    std::vector<std::vector<Rat>> m;
    for (const auto& row : cone.ineqs) {
        std::vector<Rat> r;
        for (auto v : row) r.push_back(to_rat(v));
        m.push_back(r);
    }
    if (rat_rank(m) != cone.dim)
        throw QcasError("validation", "cone is not strongly convex (its inequalities admit a line)");
    for (const auto& g : cone_generators(cone)) {
        long long dot = 0;
        for (int i = 0; i < cone.dim; ++i) dot += cone.omega[i] * g[i];
        if (dot <= 0)
            throw QcasError("validation", "ordering functional fails strict positivity on a cone generator");
    }
}

std::vector<IVec> cone_generators(const ConeSpec& cone) {
    int dim = cone.dim;
    std::vector<IVec> gens;
    auto consider = [&](const std::vector<Rat>& v) {
        for (int sign = 0; sign < 2; ++sign) {
            std::vector<Rat> w(v);
            if (sign) for (auto& x : w) x = -x;
            bool inside = true;
            for (const auto& row : cone.ineqs) {
                Rat dot(0);
                for (int i = 0; i < dim; ++i) dot += to_rat(row[i]) * w[i];
                if (dot < 0) { inside = false; break; }
            }
            if (!inside) continue;
            IVec p = primitive(w);
            bool zero = std::all_of(p.begin(), p.end(), [](long long x) { return x == 0; });
            if (!zero && std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
        }
    };
    if (dim == 1) {
        consider({Rat(1)});
    } else {
        // each extreme ray spans the kernel of dim-1 active inequalities
        std::vector<int> idx(cone.ineqs.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::vector<int> pick;
        std::function<void(size_t)> choose = [&](size_t start) {
            if ((int)pick.size() == dim - 1) {
                std::vector<std::vector<Rat>> sub;
                for (int p : pick) {
                    std::vector<Rat> r;
                    for (auto v : cone.ineqs[p]) r.push_back(to_rat(v));
                    sub.push_back(r);
                }
                if (auto v = kernel_vector(sub, dim)) consider(*v);
                return;
            }
            for (size_t i = start; i < idx.size(); ++i) {
                pick.push_back(idx[i]);
                choose(i + 1);
                pick.pop_back();
            }
        };
        choose(0);
    }
    std::sort(gens.begin(), gens.end());
    return gens;
}

bool cone_contains(const ConeSpec& cone, const IVec& x) {
    if ((int)x.size() != cone.dim) return false;
    for (const auto& row : cone.ineqs) {
        long long dot = 0;
        for (int i = 0; i < cone.dim; ++i) dot += row[i] * x[i];
        if (dot < 0) return false;
    }
    return true;
}

std::vector<IVec> lattice_points_up_to(const ConeSpec& cone, const IVec& w, const Rat& bound) {
    if ((int)w.size() != cone.dim) throw QcasError("usage", "functional has wrong length");
    std::vector<LinCons> sys;
    for (const auto& row : cone.ineqs) {
        LinCons L;
        for (auto v : row) L.c.push_back(to_rat(v));
        L.rhs = 0;
        sys.push_back(L);
    }
    LinCons cap;  // -w.x >= -bound
    for (auto v : w) cap.c.push_back(to_rat(-v));
    cap.rhs = -bound;
    sys.push_back(cap);
    auto pts = enumerate_region(cone.dim, sys);
    std::vector<IVec> out;
    for (auto& p : pts) {
        if (std::all_of(p.begin(), p.end(), [](long long x) { return x == 0; })) continue;
        out.push_back(std::move(p));
    }
    auto value = [&](const IVec& p) {
        long long dot = 0;
        for (int i = 0; i < cone.dim; ++i) dot += w[i] * p[i];
        return dot;
    };
    std::sort(out.begin(), out.end(), [&](const IVec& a, const IVec& b) {
        long long va = value(a), vb = value(b);
        if (va != vb) return va < vb;
        return a < b;
    });
    return out;
}

std::vector<IVec> curve_classes_up_to(const ConeSpec& cone, const Rat& bound) {
    validate_cone(cone);
    return lattice_points_up_to(cone, cone.omega, bound);
}

Rat pairing_with_divisor(const IVec& beta, const std::vector<Rat>& divisor_coords) {
    if (beta.size() != divisor_coords.size())
        throw QcasError("usage", "curve class and divisor coordinate lengths differ");
    Rat acc(0);
    for (size_t i = 0; i < beta.size(); ++i) acc += to_rat(beta[i]) * divisor_coords[i];
    return acc;
}

Rat Bundle::omega_value(const IVec& beta) const {
    Rat acc(0);
    for (int i = 0; i < cone.dim; ++i) acc += to_rat(cone.omega[i]) * to_rat(beta[i]);
    return acc;
}

Rat Bundle::anticanonical_degree(const IVec& beta) const {
    if (!K) throw QcasError("usage", "canonical class required");
    return -pairing_with_divisor(beta, K->coords);
}

std::string nvar_to_string(const NVar& v) {
    std::ostringstream os;
    os << "N(";
    for (size_t i = 0; i < v.beta.size(); ++i) os << (i ? "," : "") << v.beta[i];
    os << ";";
    for (size_t i = 0; i < v.d.size(); ++i) os << (i ? "," : "") << v.d[i];
    os << ")";
    return os.str();
}

NVar nvar_from_string(const std::string& s) {
    auto fail = [&]() -> QcasError {
        return QcasError("usage", "bad variable syntax (expected N(b1,..;d1,..)): " + s);
    };
    size_t i = 0;
    auto skip_ws = [&]() { while (i < s.size() && isspace((unsigned char)s[i])) ++i; };
    skip_ws();
    if (i >= s.size() || s[i] != 'N') throw fail();
    ++i;
    skip_ws();
    if (i >= s.size() || s[i] != '(') throw fail();
    ++i;
    auto read_list = [&](char stop) {
        IVec out;
        skip_ws();
        if (i < s.size() && s[i] == stop) return out;  // empty list
        while (true) {
            skip_ws();
            size_t j = i;
            if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
            size_t k = j;
            while (k < s.size() && isdigit((unsigned char)s[k])) ++k;
            if (k == j) throw fail();
            out.push_back(std::stoll(s.substr(i, k - i)));
            i = k;
            skip_ws();
            if (i < s.size() && s[i] == ',') { ++i; continue; }
            break;
        }
        return out;
    };
    NVar v;
    v.beta = read_list(';');
    if (i >= s.size() || s[i] != ';') throw fail();
    ++i;
    v.d = read_list(')');
    if (i >= s.size() || s[i] != ')') throw fail();
    ++i;
    skip_ws();
    if (i != s.size()) throw fail();
    return v;
}

std::vector<long long> insertion_weights(const GradedAlgebra& alg) {
    std::vector<long long> w;
    for (int i = 1 + alg.divisor_count(); i < alg.size(); ++i) w.push_back(alg.codim(i) - 1);
    return w;
}

long long weighted_degree(const GradedAlgebra& alg, const IVec& d) {
    auto w = insertion_weights(alg);
    if (d.size() != w.size()) throw QcasError("usage", "degree vector has wrong length");
    long long acc = 0;
    for (size_t j = 0; j < w.size(); ++j) acc += d[j] * w[j];
    return acc;
}

std::optional<long long> admissible_target(const Bundle& b, const IVec& beta) {
    if (!b.K) return std::nullopt;
    Rat t = b.anticanonical_degree(beta) + Rat(b.alg.n) - 3;
    if (t.get_den() != 1) return std::nullopt;
    if (!t.get_num().fits_slong_p()) throw QcasError("validation", "dimension target overflows");
    return t.get_num().get_si();
}

bool admissible(const Bundle& b, const NVar& v) {
    if (!b.K) return true;
    auto t = admissible_target(b, v.beta);
    if (!t) return false;
    return weighted_degree(b.alg, v.d) == *t;
}

namespace {

std::vector<IVec> weighted_compositions(const std::vector<long long>& w, long long target) {
    std::vector<IVec> out;
    if (target < 0) return out;
    IVec d(w.size(), 0);
    std::function<void(size_t, long long)> rec = [&](size_t j, long long rem) {
        if (j == w.size()) {
            if (rem == 0) out.push_back(d);
            return;
        }
        if (j + 1 == w.size()) {
            if (rem % w[j] == 0) {
                d[j] = rem / w[j];
                out.push_back(d);
                d[j] = 0;
            }
            return;
        }
        for (long long v = 0; v * w[j] <= rem; ++v) {
            d[j] = v;
            rec(j + 1, rem - v * w[j]);
        }
        d[j] = 0;
    };
    rec(0, target);
    return out;
}

}  // namespace

std::vector<IVec> admissible_degrees(const Bundle& b, const IVec& beta) {
    auto t = admissible_target(b, beta);
    if (!t) return {};
    return weighted_compositions(insertion_weights(b.alg), *t);
}

std::vector<IVec> degree_vectors_up_to(const GradedAlgebra& alg, long long dbound) {
    int s = alg.higher_count();
    std::vector<IVec> out;
    IVec d(s, 0);
    std::function<void(int, long long)> rec = [&](int j, long long rem) {
        if (j == s) {
            out.push_back(d);
            return;
        }
        for (long long v = 0; v <= rem; ++v) {
            d[j] = v;
            rec(j + 1, rem - v);
        }
        d[j] = 0;
    };
    rec(0, dbound);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IVec> relation_degrees(const Bundle& b, const IVec& beta, const std::array<int, 4>& codims) {
    if (!b.K) throw QcasError("usage", "canonical class required for relation degree enumeration");
    int csum = codims[0] + codims[1] + codims[2] + codims[3];
    Rat t = b.anticanonical_degree(beta) - Rat(csum - b.alg.n);
    if (t.get_den() != 1 || t < 0) return {};
    return weighted_compositions(insertion_weights(b.alg), t.get_num().get_si());
}

SeedVars seed_variables(const Bundle& b, std::optional<Rat> bound) {
    SeedVars out;
    out.min_bound = 0;
    std::vector<IVec> betas;
    if (b.K) {
        bool antik_positive = true;
        std::vector<Rat> mk;
        for (const auto& c : b.K->coords) mk.push_back(-c);
        validate_cone(b.cone);
        for (const auto& g : cone_generators(b.cone)) {
            if (pairing_with_divisor(g, mk) <= 0) { antik_positive = false; break; }
        }
        if (antik_positive) {
            long long wmax = 0;
            for (auto w : insertion_weights(b.alg)) wmax = std::max(wmax, w);
            Rat cap = to_rat(2 * wmax) - Rat(b.alg.n) + 3;  // largest <beta,-K> a |d|<=2 seed allows
            if (cap >= 1) {
                std::vector<Rat> scaled(mk);
                Int lcm(1);
                for (const auto& x : scaled) {
                    Int den = x.get_den(), g;
                    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
                    lcm = lcm / g * den;
                }
                IVec w;
                for (const auto& x : scaled) {
                    Int v = x.get_num() * (lcm / x.get_den());
                    w.push_back(v.get_si());
                }
                betas = lattice_points_up_to(b.cone, w, cap * Rat(lcm));
            }
        } else {
            if (!bound)
                throw QcasError("usage",
                                "seed enumeration needs an explicit bound: -K is not strictly positive on the cone");
            betas = curve_classes_up_to(b.cone, *bound);
        }
        if (bound) {
            std::vector<IVec> kept;
            for (auto& beta : betas)
                if (b.omega_value(beta) <= *bound) kept.push_back(beta);
            betas = kept;
        }
    } else {
        if (!bound) throw QcasError("usage", "seed enumeration needs an explicit bound without a canonical class");
        betas = curve_classes_up_to(b.cone, *bound);
    }

    for (const auto& beta : betas) {
        std::vector<IVec> ds;
        if (b.K) {
            for (auto& d : admissible_degrees(b, beta)) {
                long long total = 0;
                for (auto v : d) total += v;
                if (total <= 2) ds.push_back(d);
            }
        } else {
            ds = degree_vectors_up_to(b.alg, 2);
        }
        for (auto& d : ds) {
            out.vars.push_back(NVar{beta, d});
            Rat ov = b.omega_value(beta);
            if (ov > out.min_bound) out.min_bound = ov;
        }
    }
    std::sort(out.vars.begin(), out.vars.end(), [&](const NVar& a, const NVar& c) {
        Rat oa = b.omega_value(a.beta), oc = b.omega_value(c.beta);
        if (oa != oc) return oa < oc;
        return std::tie(a.beta, a.d) < std::tie(c.beta, c.d);
    });
    return out;
}

}  // namespace qcas
