#include "qcas/wdvv.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

namespace qcas {

void QuadPoly::add_lin(const NVar& v, const Rat& c) {
    if (c == 0) return;
    auto it = lin.find(v);
    if (it == lin.end()) {
        lin.emplace(v, c);
        return;
    }
    it->second += c;
    if (it->second == 0) lin.erase(it);
}

void QuadPoly::add_quad(const NVar& a, const NVar& b, const Rat& c) {
    if (c == 0) return;
    auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto it = quad.find(key);
    if (it == quad.end()) {
        quad.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second == 0) quad.erase(it);
}

QuadPoly& QuadPoly::operator+=(const QuadPoly& o) {
    for (const auto& [v, c] : o.lin) add_lin(v, c);
    for (const auto& [k, c] : o.quad) add_quad(k.first, k.second, c);
    return *this;
}

QuadPoly& QuadPoly::operator-=(const QuadPoly& o) {
    for (const auto& [v, c] : o.lin) add_lin(v, -c);
    for (const auto& [k, c] : o.quad) add_quad(k.first, k.second, -c);
    return *this;
}

QuadPoly& QuadPoly::operator*=(const Rat& c) {
    if (c == 0) {
        lin.clear();
        quad.clear();
        return *this;
    }
    for (auto& [v, x] : lin) x *= c;
    for (auto& [k, x] : quad) x *= c;
    return *this;
}

std::string quadpoly_to_string(const QuadPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Rat& c, const std::string& mono) {
        Rat a = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (a != 1) os << rat_to_string(a) << "*";
        os << mono;
    };
    for (const auto& [v, c] : p.lin) emit(c, nvar_to_string(v));
    for (const auto& [k, c] : p.quad) emit(c, nvar_to_string(k.first) + "*" + nvar_to_string(k.second));
    return os.str();
}

CanonTuple canonical_tuple(int i, int j, int k, int l) {
    CanonTuple out{{i, j, k, l}, 1, false};
    if (i == 0 || j == 0 || k == 0 || l == 0 || k == i || l == j) {
        out.trivial = true;
        return out;
    }
    const std::array<std::pair<std::array<int, 4>, int>, 8> orbit{{
        {{i, j, k, l}, 1},
        {{j, i, l, k}, 1},
        {{k, l, i, j}, 1},
        {{l, k, j, i}, 1},
        {{k, j, i, l}, -1},
        {{j, k, l, i}, -1},
        {{i, l, k, j}, -1},
        {{l, i, j, k}, -1},
    }};
    out.t = orbit[0].first;
    out.sign = 1;
    for (const auto& [t, s] : orbit) {
        if (t < out.t) {
            out.t = t;
            out.sign = s;
        }
    }
    return out;
}

std::string relation_id_to_string(const GradedAlgebra& alg, const RelationId& id) {
    std::ostringstream os;
    os << "<" << alg.label(id.t[0]) << "," << alg.label(id.t[1]) << "," << alg.label(id.t[2])
       << "," << alg.label(id.t[3]) << ">(";
    for (size_t i = 0; i < id.beta.size(); ++i) os << (i ? "," : "") << id.beta[i];
    os << ";";
    for (size_t i = 0; i < id.d.size(); ++i) os << (i ? "," : "") << id.d[i];
    os << ")";
    if (id.sign < 0) os << "[-]";
    return os.str();
}

std::optional<std::pair<Rat, NVar>> gamma_coefficient(const Bundle& b, int x, int y, int z,
                                                      const IVec& beta, const IVec& d) {
    Rat factor(1);
    NVar v{beta, d};
    for (int idx : {x, y, z}) {
        if (idx == 0) return std::nullopt;
        if (b.alg.is_divisor(idx)) factor *= to_rat(beta[idx - 1]);
        else v.d[b.alg.higher_slot(idx)] += 1;
    }
    if (!admissible(b, v)) return std::nullopt;
    return std::make_pair(factor, v);
}

QuadPoly linear_contribution(const Bundle& b, int i, int j, int k, int l, const IVec& beta,
                             const IVec& d) {
    QuadPoly p;
    auto add_block = [&](int a1, int a2, int m1, int m2, int sgn) {
        for (const auto& [q, t] : b.alg.multiply(m1, m2)) {
            if (auto g = gamma_coefficient(b, a1, a2, q, beta, d))
                p.add_lin(g->second, sgn * t * g->first);
        }
    };
    add_block(i, j, k, l, 1);
    add_block(k, l, i, j, 1);
    add_block(j, k, i, l, -1);
    add_block(i, l, j, k, -1);
    return p;
}

namespace {

// ordered decompositions beta = b1 + b2 with both summands nonzero cone points
std::vector<IVec> proper_splits(const ConeSpec& cone, const IVec& beta) {
    long long cap = 0;
    for (int c = 0; c < cone.dim; ++c) cap += cone.omega[c] * beta[c];
    std::vector<IVec> out;
    for (auto& p : lattice_points_up_to(cone, cone.omega, Rat(static_cast<long>(cap)))) {
        IVec rest(cone.dim);
        bool zero = true;
        for (int c = 0; c < cone.dim; ++c) {
            rest[c] = beta[c] - p[c];
            if (rest[c] != 0) zero = false;
        }
        if (!zero && cone_contains(cone, rest)) out.push_back(p);
    }
    return out;
}

QuadPoly quadratic_over_splits(const Bundle& b, const PairingData& pd, int i, int j, int k, int l,
                               const IVec& beta, const IVec& d, const std::vector<IVec>& splits) {
    QuadPoly p;
    const size_t s = d.size();
    IVec delta1(s, 0), delta2(s, 0);
    IVec beta2(b.cone.dim);
    std::function<void(size_t, Rat)> rec = [&](size_t slot, Rat binom) {
        if (slot < s) {
            for (long long v = 0; v <= d[slot]; ++v) {
                delta1[slot] = v;
                delta2[slot] = d[slot] - v;
                rec(slot + 1, binom * binomial(d[slot], v));
            }
            delta1[slot] = 0;
            delta2[slot] = d[slot];
            return;
        }
        for (const auto& b1 : splits) {
            for (int c = 0; c < b.cone.dim; ++c) beta2[c] = beta[c] - b1[c];
            for (auto [e, f] : pd.inverse_support) {
                const Rat& gef = pd.inverse[e][f];
                // + Gamma_{jke} g^{ef} Gamma_{fil}
                if (auto g1 = gamma_coefficient(b, j, k, e, b1, delta1))
                    if (auto g2 = gamma_coefficient(b, f, i, l, beta2, delta2))
                        p.add_quad(g1->second, g2->second, binom * gef * g1->first * g2->first);
                // - Gamma_{ije} g^{ef} Gamma_{fkl}
                if (auto g1 = gamma_coefficient(b, i, j, e, b1, delta1))
                    if (auto g2 = gamma_coefficient(b, f, k, l, beta2, delta2))
                        p.add_quad(g1->second, g2->second, -binom * gef * g1->first * g2->first);
            }
        }
    };
    rec(0, Rat(1));
    return p;
}

std::optional<Relation> build_normalized(const Bundle& b, const PairingData& pd,
                                         const std::array<int, 4>& t, const IVec& beta,
                                         const IVec& d, const std::vector<IVec>& splits) {
    QuadPoly p = linear_contribution(b, t[0], t[1], t[2], t[3], beta, d);
    p -= quadratic_over_splits(b, pd, t[0], t[1], t[2], t[3], beta, d, splits);
    if (p.is_zero()) return std::nullopt;
    int sign = 1;
    const Rat& lead = p.lin.empty() ? p.quad.begin()->second : p.lin.begin()->second;
    if (lead < 0) {
        p *= Rat(-1);
        sign = -1;
    }
    return Relation{RelationId{t, beta, d, sign}, std::move(p)};
}

unsigned worker_count(size_t items) {
    unsigned n = 0;
    if (const char* env = std::getenv("QCSOLVE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw usage_error("QCSOLVE_THREADS must be a positive integer");
        n = static_cast<unsigned>(v);
    } else {
        n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
    }
    if (items < n) n = items ? static_cast<unsigned>(items) : 1;
    return n;
}

}  // namespace

QuadPoly quadratic_contribution(const Bundle& b, const PairingData& pd, int i, int j, int k, int l,
                                const IVec& beta, const IVec& d) {
    return quadratic_over_splits(b, pd, i, j, k, l, beta, d, proper_splits(b.cone, beta));
}

QuadPoly build_relation(const Bundle& b, const PairingData& pd, int i, int j, int k, int l,
                        const IVec& beta, const IVec& d) {
    QuadPoly p = linear_contribution(b, i, j, k, l, beta, d);
    p -= quadratic_contribution(b, pd, i, j, k, l, beta, d);
    return p;
}

QuadPoly build_relation(const Bundle& b, const PairingData& pd, const SparseVec& xi,
                        const SparseVec& pi, const SparseVec& rho, const SparseVec& sigma,
                        const IVec& beta, const IVec& d) {
    QuadPoly p;
    auto splits = proper_splits(b.cone, beta);
    for (const auto& [a, ca] : xi)
        for (const auto& [bb, cb] : pi)
            for (const auto& [c, cc] : rho)
                for (const auto& [e, ce] : sigma) {
                    Rat coef = ca * cb * cc * ce;
                    if (coef == 0) continue;
                    QuadPoly q = linear_contribution(b, a, bb, c, e, beta, d);
                    q -= quadratic_over_splits(b, pd, a, bb, c, e, beta, d, splits);
                    q *= coef;
                    p += q;
                }
    return p;
}

std::vector<Relation> enumerate_relations(const Bundle& b, const PairingData& pd, const IVec& beta,
                                          std::optional<long long> dbound) {
    const int sz = b.alg.size();
    std::vector<std::array<int, 4>> reps;
    for (int i = 1; i < sz; ++i)
        for (int j = 1; j < sz; ++j)
            for (int k = 1; k < sz; ++k)
                for (int l = 1; l < sz; ++l) {
                    auto c = canonical_tuple(i, j, k, l);
                    if (c.trivial) continue;
                    if (c.t == std::array<int, 4>{i, j, k, l}) reps.push_back(c.t);
                }

    std::vector<std::pair<std::array<int, 4>, IVec>> items;
    for (const auto& t : reps) {
        std::vector<IVec> ds;
        if (b.K) {
            ds = relation_degrees(
                b, beta, {b.alg.codim(t[0]), b.alg.codim(t[1]), b.alg.codim(t[2]), b.alg.codim(t[3])});
        } else if (dbound) {
            ds = degree_vectors_up_to(b.alg, *dbound);
        } else {
            throw usage_error("degree bound required without a canonical class");
        }
        for (auto& d : ds) items.emplace_back(t, std::move(d));
    }

    auto splits = proper_splits(b.cone, beta);
    unsigned nt = worker_count(items.size());
    std::vector<std::vector<Relation>> buckets(nt);
    auto run = [&](unsigned tid) {
        for (size_t w = tid; w < items.size(); w += nt) {
            if (auto r = build_normalized(b, pd, items[w].first, beta, items[w].second, splits))
                buckets[tid].push_back(std::move(*r));
        }
    };
    if (nt == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(run, t);
        for (auto& th : pool) th.join();
    }

    std::vector<Relation> out;
    for (auto& bucket : buckets)
        for (auto& r : bucket) out.push_back(std::move(r));
    std::sort(out.begin(), out.end(), [](const Relation& a, const Relation& c) {
        return std::tie(a.id.d, a.id.t) < std::tie(c.id.d, c.id.t);
    });
    return out;
}

std::vector<Relation> enumerate_seed_relations(const Bundle& b, const PairingData& pd,
                                               std::optional<Rat> bound) {
    std::vector<IVec> betas;
    if (b.K) {
        // a degree-zero relation with two divisor slots needs
        // <beta,-K> = codim_i + codim_k + 2 - n, capped by n + 2
        std::vector<Rat> mk;
        for (const auto& c : b.K->coords) mk.push_back(-c);
        Int lcm(1);
        for (const auto& x : mk) {
            Int den = x.get_den(), g;
            mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
            lcm = lcm / g * den;
        }
        IVec w;
        for (const auto& x : mk) w.push_back(Int(x.get_num() * (lcm / x.get_den())).get_si());
        betas = lattice_points_up_to(b.cone, w, Rat(to_int(b.alg.n + 2)) * Rat(lcm));
        if (bound) {
            std::vector<IVec> kept;
            for (auto& beta : betas)
                if (b.omega_value(beta) <= *bound) kept.push_back(beta);
            betas = kept;
        }
    } else {
        if (!bound) throw usage_error("seed relation enumeration needs a bound without a canonical class");
        betas = curve_classes_up_to(b.cone, *bound);
    }

    const int sz = b.alg.size();
    const int r = b.alg.divisor_count();
    std::vector<Relation> out;
    for (const auto& beta : betas) {
        auto splits = proper_splits(b.cone, beta);
        IVec d(b.alg.higher_count(), 0);
        std::set<std::array<int, 4>> seen;
        std::vector<Relation> at_beta;
        for (int i = 1; i < sz; ++i)
            for (int sj = 1; sj <= r; ++sj)
                for (int k = 1; k < sz; ++k)
                    for (int sl = 1; sl <= r; ++sl) {
                        auto c = canonical_tuple(i, sj, k, sl);
                        if (c.trivial || !seen.insert(c.t).second) continue;
                        if (b.K) {
                            // the grading condition decides which degree-zero
                            // relations exist; some of those are still the zero
                            // polynomial (a pairing with beta can vanish) and
                            // they are kept as trivially satisfied members
                            int csum = b.alg.codim(c.t[0]) + b.alg.codim(c.t[1]) +
                                       b.alg.codim(c.t[2]) + b.alg.codim(c.t[3]);
                            if (b.anticanonical_degree(beta) != Rat(csum - b.alg.n)) continue;
                            auto rel = build_normalized(b, pd, c.t, beta, d, splits);
                            if (rel) at_beta.push_back(std::move(*rel));
                            else at_beta.push_back(Relation{RelationId{c.t, beta, d, 1}, QuadPoly{}});
                        } else if (auto rel = build_normalized(b, pd, c.t, beta, d, splits)) {
                            at_beta.push_back(std::move(*rel));
                        }
                    }
        std::sort(at_beta.begin(), at_beta.end(),
                  [](const Relation& a, const Relation& c) { return a.id.t < c.id.t; });
        for (auto& rel : at_beta) out.push_back(std::move(rel));
    }
    return out;
}

FormulaCounts count_formulas(long long r) {
    if (r < 1) throw usage_error("basis size must be positive");
    Int R = to_int(r);
    Int p1 = R * R * R * R - 6 * R * R * R + 15 * R * R - 18 * R + 8;
    Int p2 = R * R * R * R - 4 * R * R * R + 5 * R * R - 2 * R;
    if (p1 % 8 != 0 || p2 % 12 != 0)
        throw QcasError("internal", "count polynomial is not integral at r=" + std::to_string(r));
    return {p1 / 8, p2 / 12};
}

FormulaCounts brute_count(int r) {
    if (r < 1) throw usage_error("basis size must be positive");
    if (r > 10) throw QcasError("range", "brute-force count limited to basis size 10");
    std::set<std::array<int, 4>> orbits;
    for (int i = 1; i < r; ++i)
        for (int j = 1; j < r; ++j)
            for (int k = 1; k < r; ++k)
                for (int l = 1; l < r; ++l) {
                    auto c = canonical_tuple(i, j, k, l);
                    if (!c.trivial) orbits.insert(c.t);
                }
    // cyclic sum dependency: when both translates of a tuple are valid, the
    // three orbits involved are pairwise distinct and one of them is redundant
    std::set<std::array<std::array<int, 4>, 3>> triples;
    for (const auto& t : orbits) {
        std::array<int, 4> t1{t[1], t[2], t[0], t[3]}, t2{t[2], t[0], t[1], t[3]};
        auto c1 = canonical_tuple(t1[0], t1[1], t1[2], t1[3]);
        auto c2 = canonical_tuple(t2[0], t2[1], t2[2], t2[3]);
        if (c1.trivial || c2.trivial) continue;
        std::array<std::array<int, 4>, 3> tri{t, c1.t, c2.t};
        std::sort(tri.begin(), tri.end());
        triples.insert(tri);
    }
    return {Int(static_cast<long>(orbits.size())),
            Int(static_cast<long>(orbits.size() - triples.size()))};
}

bool check_two_out_of_three(const Bundle& b, const PairingData& pd, int i, int j, int k, int l,
                            const IVec& beta, const IVec& d) {
    QuadPoly p = build_relation(b, pd, i, j, k, l, beta, d);
    p += build_relation(b, pd, j, k, i, l, beta, d);
    p += build_relation(b, pd, k, i, j, l, beta, d);
    return p.is_zero();
}

bool check_three_symbols(const Bundle& b, const PairingData& pd, int i, int j, int k, int l, int m,
                         const IVec& beta, const IVec& d) {
    if (!b.alg.is_higher(m)) throw QcasError("precondition", "pivot slot must have codimension >= 2");
    int ms = b.alg.higher_slot(m);
    if (d[ms] < 1) throw QcasError("precondition", "pivot degree must be at least 1");
    auto weight = [&](int x) -> Rat {
        if (x == 0) return Rat(0);
        if (b.alg.is_divisor(x)) return to_rat(beta[x - 1]);
        return Rat(1);
    };
    auto shifted = [&](int x) {
        IVec nd = d;
        nd[ms] -= 1;
        if (b.alg.is_higher(x)) nd[b.alg.higher_slot(x)] += 1;
        return nd;
    };
    QuadPoly p = build_relation(b, pd, i, j, k, l, beta, d);
    Rat wj = weight(j), wl = weight(l);
    if (wj != 0) {
        QuadPoly q = build_relation(b, pd, i, l, k, m, beta, shifted(j));
        q *= wj;
        p += q;
    }
    if (wl != 0) {
        QuadPoly q = build_relation(b, pd, i, m, k, j, beta, shifted(l));
        q *= wl;
        p += q;
    }
    return p.is_zero();
}

bool check_m_diagonal(const Bundle& b, const PairingData& pd, int i, int j, int k, int l, int m,
                      const IVec& beta, const IVec& d) {
    auto splits = proper_splits(b.cone, beta);
    const size_t s = d.size();
    auto side = [&](int a1, int a2, int b1, int b2) {
        QuadPoly p;
        IVec delta1(s, 0), delta2(s, 0), beta2(b.cone.dim);
        std::function<void(size_t, Rat)> rec = [&](size_t slot, Rat binom) {
            if (slot < s) {
                for (long long v = 0; v <= d[slot]; ++v) {
                    delta1[slot] = v;
                    delta2[slot] = d[slot] - v;
                    rec(slot + 1, binom * binomial(d[slot], v));
                }
                delta1[slot] = 0;
                delta2[slot] = d[slot];
                return;
            }
            for (const auto& bb1 : splits) {
                for (int c = 0; c < b.cone.dim; ++c) beta2[c] = beta[c] - bb1[c];
                for (auto [e, f] : pd.inverse_support) {
                    const Rat& gef = pd.inverse[e][f];
                    for (const auto& [q, t] : b.alg.multiply(m, e)) {
                        if (auto g1 = gamma_coefficient(b, a1, a2, q, bb1, delta1))
                            if (auto g2 = gamma_coefficient(b, f, b1, b2, beta2, delta2))
                                p.add_quad(g1->second, g2->second,
                                           binom * t * gef * g1->first * g2->first);
                    }
                }
            }
        };
        rec(0, Rat(1));
        return p;
    };
    return side(i, j, k, l) == side(k, l, i, j);
}

QuadPoly five_symbols_combination(const Bundle& b, const PairingData& pd, int i, int j, int k,
                                  int l, int m, const IVec& beta, const IVec& d) {
    auto unit = [](int x) { return SparseVec{{x, Rat(1)}}; };
    QuadPoly p = build_relation(b, pd, b.alg.multiply(m, i), unit(j), unit(k), unit(l), beta, d);
    p -= build_relation(b, pd, unit(m), b.alg.multiply(i, j), unit(k), unit(l), beta, d);
    p += build_relation(b, pd, unit(m), unit(i), b.alg.multiply(j, k), unit(l), beta, d);
    p -= build_relation(b, pd, unit(m), unit(i), unit(j), b.alg.multiply(k, l), beta, d);
    p += build_relation(b, pd, b.alg.multiply(l, m), unit(i), unit(j), unit(k), beta, d);
    if (!p.lin.empty())
        throw QcasError("internal", "five-term combination produced a nonzero linear part");
    return p;
}

}  // namespace qcas
