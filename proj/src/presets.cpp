#include "qcas/presets.hpp"

namespace qcas {

namespace {

long long param_or(const std::map<std::string, long long>& params, const std::string& key,
                   std::optional<long long> fallback = std::nullopt) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (fallback) return *fallback;
    throw usage_error("preset parameter '" + key + "' is required");
}

void reject_unknown(const std::map<std::string, long long>& params,
                    const std::vector<std::string>& accepted) {
    for (const auto& [k, v] : params) {
        bool ok = false;
        for (const auto& a : accepted)
            if (a == k) ok = true;
        if (!ok) throw usage_error("preset does not take parameter '" + k + "'");
    }
}

Bundle projective_space(long long n, long long b) {
    if (n < 2) throw usage_error("projective space preset needs n >= 2");
    if (b < 1 || b > n + 1)
        throw usage_error("projective space preset needs 1 <= b <= n+1");
    Bundle out;
    out.alg.name = n == 2 && b == 3 ? "P2" : "Pn";
    out.alg.n = (int)n;
    out.alg.basis.push_back({"1", 0});
    for (long long i = 1; i <= n; ++i)
        out.alg.basis.push_back({"h" + (i == 1 ? "" : std::to_string(i)), (int)i});
    for (long long i = 1; i <= n; ++i)
        for (long long j = i; j <= n; ++j)
            if (i + j <= n) out.alg.products[{(int)i, (int)j}] = {{(int)(i + j), Rat(1)}};
    out.alg.integrals = {{(int)n, Rat(1)}};
    out.cone = cone_from_ineqs(1, {{1}});
    out.K = CanonicalClass{{Rat(-to_rat(b))}};
    return out;
}

Bundle p1xp1() {
    Bundle out;
    out.alg.name = "P1xP1";
    out.alg.n = 2;
    out.alg.basis = {{"1", 0}, {"a", 1}, {"b", 1}, {"ab", 2}};
    out.alg.products[{1, 1}] = {};
    out.alg.products[{2, 2}] = {};
    out.alg.products[{1, 2}] = {{3, Rat(1)}};
    out.alg.integrals = {{3, Rat(1)}};
    out.cone = cone_from_rays(2, {{1, 0}, {0, 1}});
    out.K = CanonicalClass{{Rat(-2), Rat(-2)}};
    return out;
}

Bundle toric_ex2() {
    Bundle out;
    out.alg.name = "toric_ex2";  // definition-file identifiers have no hyphens
    out.alg.n = 3;
    out.alg.basis = {{"1", 0},    {"D1", 1},   {"D2", 1},
                     {"D1D2", 2}, {"D2D2", 2}, {"D1D2D2", 3}};
    out.alg.products[{1, 1}] = {{3, Rat(2)}};   // D1^2 = 2 D1D2
    out.alg.products[{1, 2}] = {{3, Rat(1)}};
    out.alg.products[{2, 2}] = {{4, Rat(1)}};
    out.alg.products[{1, 3}] = {{5, Rat(2)}};
    out.alg.products[{1, 4}] = {{5, Rat(1)}};
    out.alg.products[{2, 3}] = {{5, Rat(1)}};
    out.alg.products[{2, 4}] = {};  // D2^3 = 0
    out.alg.integrals = {{5, Rat(1)}};
    out.cone = cone_from_rays(2, {{1, 0}, {0, 1}});
    out.K = CanonicalClass{{Rat(-2), Rat(-1)}};
    return out;
}

Bundle grassmann_shape(const std::string& name, long long b, const Rat& int_h4,
                       const Rat& c_sq_over_h4) {
    Bundle out;
    out.alg.name = name;
    out.alg.n = 4;
    out.alg.basis = {{"1", 0}, {"h", 1}, {"c", 2}, {"h2", 2}, {"h3", 3}, {"h4", 4}};
    out.alg.products[{1, 1}] = {{3, Rat(1)}};  // h*h = h2
    out.alg.products[{1, 2}] = {};             // h*c = 0
    out.alg.products[{1, 3}] = {{4, Rat(1)}};
    out.alg.products[{1, 4}] = {{5, Rat(1)}};
    out.alg.products[{2, 2}] = {{5, c_sq_over_h4}};
    out.alg.products[{2, 3}] = {};
    out.alg.products[{3, 3}] = {{5, Rat(1)}};
    out.alg.integrals = {{5, int_h4}};
    out.cone = cone_from_ineqs(1, {{1}});
    out.K = CanonicalClass{{Rat(-to_rat(b))}};
    return out;
}

Bundle g25() {
    Bundle out;
    out.alg.name = "G25";
    out.alg.n = 6;
    out.alg.basis = {{"1", 0},  {"t1", 1}, {"t2", 2}, {"t3", 2}, {"t4", 3},
                     {"t5", 3}, {"t6", 4}, {"t7", 4}, {"t8", 5}, {"t9", 6}};
    out.alg.products[{1, 1}] = {{2, Rat(1)}};
    out.alg.products[{1, 2}] = {{4, Rat(1)}};
    out.alg.products[{1, 3}] = {{5, Rat(1)}};
    out.alg.products[{1, 4}] = {{6, Rat(1)}};
    out.alg.products[{1, 5}] = {{7, Rat(1, 3)}};
    out.alg.products[{1, 6}] = {{8, Rat(5)}};
    out.alg.products[{1, 7}] = {};
    out.alg.products[{1, 8}] = {{9, Rat(1)}};
    out.alg.products[{2, 2}] = {{6, Rat(1)}};
    out.alg.products[{2, 3}] = {{7, Rat(1, 3)}};
    out.alg.products[{2, 4}] = {{8, Rat(5)}};
    out.alg.products[{2, 5}] = {};
    out.alg.products[{2, 6}] = {{9, Rat(5)}};
    out.alg.products[{2, 7}] = {};
    out.alg.products[{3, 3}] = {{6, Rat(1)}, {7, Rat(-11, 3)}};
    out.alg.products[{3, 4}] = {};
    out.alg.products[{3, 5}] = {{8, Rat(5)}};
    out.alg.products[{3, 6}] = {};
    out.alg.products[{3, 7}] = {{9, Rat(15)}};
    out.alg.products[{4, 4}] = {{9, Rat(5)}};
    out.alg.products[{4, 5}] = {};
    out.alg.products[{5, 5}] = {{9, Rat(5)}};
    out.alg.integrals = {{9, Rat(1)}};
    out.cone = cone_from_ineqs(1, {{1}});
    out.K = CanonicalClass{{Rat(-5)}};
    return out;
}

}  // namespace

std::vector<PresetInfo> preset_catalog() {
    return {
        {"P2", "the projective plane", {}},
        {"Pn", "projective n-space with K = -b h", {"n", "b"}},
        {"P1xP1", "product of two projective lines", {}},
        {"toric-ex2", "toric threefold with D1^2 = 2 D1D2 and D2^3 = 0", {}},
        {"G24", "rank-2 Grassmannian of 4-space", {}},
        {"Sym2P2", "symmetric square of the projective plane", {"int_h4", "int_c2"}},
        {"G25", "rank-2 Grassmannian of 5-space", {}},
    };
}

std::vector<std::string> preset_doc(const std::string& name) {
    if (name == "P2")
        return {"complex projective plane; one divisor h, integral normalized by h^2 -> 1"};
    if (name == "Pn")
        return {"projective n-space truncation Q[h]/(h^{n+1}) with K = -b h",
                "parameters: n (>= 2), b (1 <= b <= n+1, default n+1)"};
    if (name == "P1xP1")
        return {"quadric surface; divisors a, b with a^2 = b^2 = 0",
                "swapping the factors is an algebra automorphism"};
    if (name == "toric-ex2")
        return {"smooth toric threefold from the fan on rays e1, e2, e3, -e1, e1-e3",
                "ring Q[D1,D2]/(D1^2 - 2 D1D2, D2^3), normalized so D1D2D2 -> 1"};
    if (name == "G24")
        return {"Grassmannian of 2-planes in 4-space; h the Schubert divisor,",
                "c = s2 - s11 the orthogonal codimension-2 class, so c h = 0,",
                "c^2 = h^4 and both integrate to 2 in the point class"};
    if (name == "Sym2P2")
        return {"symmetric square of the plane; same basis shape as G24 with",
                "K = -3 h; the two socle normalizations are free parameters"};
    if (name == "G25")
        return {"Grassmannian of 2-planes in 5-space in the Graber basis t1..t9",
                "with integral t9 -> 1 and K = -5 t1"};
    throw usage_error("unknown preset: " + name);
}

Bundle get_preset(const std::string& name, const std::map<std::string, long long>& params) {
    if (name == "P2") {
        reject_unknown(params, {});
        return projective_space(2, 3);
    }
    if (name == "Pn") {
        reject_unknown(params, {"n", "b"});
        long long n = param_or(params, "n");
        return projective_space(n, param_or(params, "b", n + 1));
    }
    if (name == "P1xP1") {
        reject_unknown(params, {});
        return p1xp1();
    }
    if (name == "toric-ex2") {
        reject_unknown(params, {});
        return toric_ex2();
    }
    if (name == "G24") {
        reject_unknown(params, {});
        return grassmann_shape("G24", 4, Rat(2), Rat(1));
    }
    if (name == "Sym2P2") {
        reject_unknown(params, {"int_h4", "int_c2"});
        long long ih = param_or(params, "int_h4");
        long long ic = param_or(params, "int_c2");
        if (ih == 0 || ic == 0)
            throw usage_error("Sym2P2 needs nonzero integral parameters");
        return grassmann_shape("Sym2P2", 3, to_rat(ih), Rat(to_rat(ic)) / to_rat(ih));
    }
    if (name == "G25") {
        reject_unknown(params, {});
        return g25();
    }
    throw usage_error("unknown preset: " + name);
}

std::vector<Rat> kontsevich_oracle(long long beta_max) {
    if (beta_max < 1) throw usage_error("oracle needs beta_max >= 1");
    std::vector<Rat> n(beta_max + 1);
    n[1] = 1;
    for (long long b = 2; b <= beta_max; ++b) {
        Rat acc(0);
        for (long long b1 = 1; b1 < b; ++b1) {
            long long b2 = b - b1;
            Rat combo = to_rat(b1 * b1 * b2 * b2) * Rat(binomial(3 * b - 4, 3 * b1 - 2)) -
                        to_rat(b1 * b1 * b1 * b2) * Rat(binomial(3 * b - 4, 3 * b1 - 1));
            acc += n[b1] * n[b2] * combo;
        }
        n[b] = acc;
    }
    return std::vector<Rat>(n.begin() + 1, n.end());
}

QuadPoly g25_linear_condition() {
    QuadPoly p;
    p.add_lin(NVar{{1}, {0, 0, 0, 0, 0, 1, 0, 1}}, Rat(11));
    p.add_lin(NVar{{1}, {0, 0, 0, 0, 1, 0, 0, 1}}, Rat(-6));
    p.add_lin(NVar{{1}, {0, 0, 0, 0, 0, 0, 2, 0}}, Rat(-15));
    return p;
}

SolutionTable g24_degenerate_seed(const std::string& convention) {
    if (convention != "c" && convention != "h2")
        throw usage_error("convention must be 'c' or 'h2'");
    Bundle b = get_preset("G24");
    SolutionTable out;
    IVec quint = convention == "c" ? IVec{5, 0, 0, 0} : IVec{0, 5, 0, 0};
    for (const auto& d : admissible_degrees(b, {1}))
        out.values[NVar{{1}, d}] = d == quint ? Rat(1) : Rat(0);
    if (!out.values.count(NVar{{1}, quint}))
        throw QcasError("internal", "quintuple insertion fell outside the admissible set");
    out.status = "seed";
    return out;
}

}  // namespace qcas
