#include "qcas/solver.hpp"

#include <algorithm>

namespace qcas {

namespace {

Rat lookup(const NVar& v, const SolutionTable& table, bool zero_default) {
    auto it = table.values.find(v);
    if (it != table.values.end()) return it->second;
    if (zero_default) return Rat(0);
    throw validation_error("table has no value for " + nvar_to_string(v));
}

}  // namespace

Rat evaluate_poly(const QuadPoly& p, const SolutionTable& table, bool zero_default) {
    Rat acc(0);
    for (const auto& [v, c] : p.lin) acc += c * lookup(v, table, zero_default);
    for (const auto& [k, c] : p.quad)
        acc += c * lookup(k.first, table, zero_default) * lookup(k.second, table, zero_default);
    return acc;
}

std::string row_tag_to_string(const GradedAlgebra& alg, const RowTag& tag) {
    if (tag.is_pin) return "pin " + nvar_to_string(tag.pin);
    return relation_id_to_string(alg, tag.rel);
}

LinearSystem assemble_system(const Bundle& b, const PairingData& pd, const IVec& beta,
                             const SolutionTable& table) {
    LinearSystem sys;
    sys.beta = beta;
    for (auto& d : admissible_degrees(b, beta)) sys.unknowns.push_back(NVar{beta, d});
    std::map<NVar, int> col;
    for (size_t c = 0; c < sys.unknowns.size(); ++c) col[sys.unknowns[c]] = (int)c;

    for (auto& rel : enumerate_relations(b, pd, beta)) {
        LinRow row;
        row.tag.rel = rel.id;
        for (const auto& [v, c] : rel.poly.lin) {
            auto it = col.find(v);
            if (it == col.end())
                throw QcasError("internal", "linear variable escaped the stage unknowns: " +
                                                nvar_to_string(v));
            row.a[it->second] = c;
        }
        Rat rhs(0);
        for (const auto& [k, c] : rel.poly.quad) {
            auto grab = [&](const NVar& v) {
                auto it = table.values.find(v);
                if (it == table.values.end())
                    throw validation_error("missing lower value " + nvar_to_string(v));
                return it->second;
            };
            rhs -= c * grab(k.first) * grab(k.second);
        }
        row.rhs = rhs;
        sys.rows.push_back(std::move(row));
    }

    // values already fixed at this class enter as pin rows
    for (const auto& [v, val] : table.values) {
        if (v.beta != beta) continue;
        auto it = col.find(v);
        if (it == col.end())
            throw validation_error("pinned variable " + nvar_to_string(v) +
                                   " is not admissible in its curve class");
        LinRow row;
        row.a[it->second] = 1;
        row.rhs = val;
        row.tag.is_pin = true;
        row.tag.pin = v;
        sys.rows.push_back(std::move(row));
    }
    return sys;
}

namespace {

struct WorkRow {
    std::map<int, Rat> a;
    Rat rhs;
    std::set<size_t> src;  // original row indices folded into this one
};

// returns rank; rows are reduced in place to RREF over the given columns
size_t eliminate(std::vector<WorkRow>& rows, size_t ncols, std::vector<int>* pivot_cols) {
    size_t p = 0;
    for (size_t c = 0; c < ncols && p < rows.size(); ++c) {
        size_t cand = p;
        while (cand < rows.size() && !rows[cand].a.count((int)c)) ++cand;
        if (cand == rows.size()) continue;
        std::swap(rows[p], rows[cand]);
        Rat d = rows[p].a[(int)c];
        for (auto& [cc, x] : rows[p].a) x /= d;
        rows[p].rhs /= d;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == p) continue;
            auto it = rows[r].a.find((int)c);
            if (it == rows[r].a.end()) continue;
            Rat f = it->second;
            for (const auto& [cc, x] : rows[p].a) {
                auto jt = rows[r].a.find(cc);
                if (jt == rows[r].a.end()) {
                    Rat nv = -f * x;
                    if (nv != 0) rows[r].a.emplace(cc, nv);
                } else {
                    jt->second -= f * x;
                    if (jt->second == 0) rows[r].a.erase(jt);
                }
            }
            rows[r].rhs -= f * rows[p].rhs;
            rows[r].src.insert(rows[p].src.begin(), rows[p].src.end());
        }
        if (pivot_cols) pivot_cols->push_back((int)c);
        ++p;
    }
    return p;
}

// does this subset of original rows combine to 0 = nonzero? if so report the constant
std::optional<Rat> infeasible_residual(const LinearSystem& sys, const std::set<size_t>& subset,
                                       size_t ncols) {
    std::vector<WorkRow> rows;
    for (size_t idx : subset) {
        WorkRow w;
        w.a = sys.rows[idx].a;
        w.rhs = sys.rows[idx].rhs;
        rows.push_back(std::move(w));
    }
    size_t rank = eliminate(rows, ncols, nullptr);
    for (size_t r = rank; r < rows.size(); ++r)
        if (rows[r].rhs != 0) return rows[r].rhs;
    return std::nullopt;
}

}  // namespace

SolveReport solve_system(const LinearSystem& sys, std::map<NVar, Rat>& assignment) {
    SolveReport rep;
    rep.beta = sys.beta;
    rep.n_unknowns = sys.unknowns.size();
    for (const auto& r : sys.rows)
        if (!r.tag.is_pin) ++rep.n_relations;

    std::vector<WorkRow> rows;
    for (size_t i = 0; i < sys.rows.size(); ++i) {
        WorkRow w;
        w.a = sys.rows[i].a;
        w.rhs = sys.rows[i].rhs;
        w.src = {i};
        rows.push_back(std::move(w));
    }
    std::vector<int> pivot_cols;
    rep.rank = eliminate(rows, sys.unknowns.size(), &pivot_cols);

    for (size_t r = rep.rank; r < rows.size(); ++r) {
        if (rows[r].rhs == 0) continue;
        // greedy-minimize the contributing set, then recompute its residual
        std::set<size_t> core = rows[r].src;
        for (size_t idx : std::vector<size_t>(core.begin(), core.end())) {
            std::set<size_t> trial = core;
            trial.erase(idx);
            if (infeasible_residual(sys, trial, sys.unknowns.size())) core = std::move(trial);
        }
        rep.status = "inconsistent";
        rep.residual = *infeasible_residual(sys, core, sys.unknowns.size());
        for (size_t idx : core) rep.witness.push_back(sys.rows[idx].tag);
        return rep;
    }

    std::set<int> pivots(pivot_cols.begin(), pivot_cols.end());
    for (size_t c = 0; c < sys.unknowns.size(); ++c)
        if (!pivots.count((int)c)) rep.free_vars.push_back(sys.unknowns[c]);

    for (size_t p = 0; p < rep.rank; ++p) {
        // a pivot row assigns its unknown when no free column contributes
        if (rows[p].a.size() == 1)
            assignment[sys.unknowns[pivot_cols[p]]] = rows[p].rhs;
    }
    rep.status = rep.free_vars.empty() ? "unique" : "underdetermined";
    return rep;
}

std::vector<SeedViolation> check_seed_relations(const Bundle& b, const PairingData& pd,
                                                const SolutionTable& seeds,
                                                std::optional<Rat> bound) {
    std::vector<SeedViolation> out;
    for (const auto& rel : enumerate_seed_relations(b, pd, bound)) {
        Rat v = evaluate_poly(rel.poly, seeds, true);
        if (v != 0) out.push_back({rel.id, v});
    }
    return out;
}

ReconstructResult reconstruct(const Bundle& b, const PairingData& pd, const SolutionTable& seeds,
                              const Rat& bound, const std::string& policy) {
    if (policy != "strict" && policy != "pins" && policy != "zero")
        throw usage_error("unknown policy: " + policy);
    if (policy == "strict") {
        for (const auto& [v, val] : seeds.values) {
            long long total = 0;
            for (auto x : v.d) total += x;
            if (total > 2)
                throw usage_error("policy strict accepts only starting data with |d| <= 2; "
                                  "pin " + nvar_to_string(v) + " needs policy pins or zero");
        }
    }

    ReconstructResult res;
    res.table = seeds;
    for (const auto& [v, val] : seeds.values) res.table.pins.insert(v);
    res.table.status = "partial";

    res.seed_violations = check_seed_relations(b, pd, seeds);
    if (!res.seed_violations.empty()) {
        res.table.status = "halted-seed-check";
        return res;
    }

    for (const auto& beta : curve_classes_up_to(b.cone, bound)) {
        if (admissible_degrees(b, beta).empty()) continue;
        auto sys = assemble_system(b, pd, beta, res.table);
        std::map<NVar, Rat> assign;
        auto rep = solve_system(sys, assign);

        if (rep.status == "inconsistent") {
            res.reports.push_back(std::move(rep));
            res.table.status = "halted-inconsistent";
            return res;
        }
        if (rep.status == "underdetermined") {
            if (policy != "zero") {
                res.reports.push_back(std::move(rep));
                res.table.status = "halted-underdetermined";
                return res;
            }
            for (const auto& v : rep.free_vars) {
                LinRow row;
                row.a[(int)(std::find(sys.unknowns.begin(), sys.unknowns.end(), v) -
                            sys.unknowns.begin())] = 1;
                row.rhs = 0;
                row.tag.is_pin = true;
                row.tag.pin = v;
                sys.rows.push_back(std::move(row));
                res.table.free_vars.push_back(v);
            }
            assign.clear();
            auto rep2 = solve_system(sys, assign);
            if (rep2.status != "unique")
                throw QcasError("internal", "zero-filled stage failed to become determined");
        }
        for (const auto& [v, val] : assign)
            if (!res.table.values.count(v)) res.table.values.emplace(v, val);
        res.reports.push_back(std::move(rep));
    }
    res.table.status = "complete";
    res.ok = true;
    return res;
}

VerifyResult verify_table(const Bundle& b, const PairingData& pd, const SolutionTable& table,
                          const Rat& bound, bool zero_default) {
    for (const auto& beta : curve_classes_up_to(b.cone, bound)) {
        for (const auto& rel : enumerate_relations(b, pd, beta)) {
            Rat v = evaluate_poly(rel.poly, table, zero_default);
            if (v != 0) return {false, rel.id, v};
        }
    }
    return {};
}

SolutionTable rescale_table(const SolutionTable& table, const std::vector<Rat>& lambdas) {
    for (const auto& l : lambdas)
        if (l <= 0) throw validation_error("rescaling requires positive factors");
    SolutionTable out = table;
    for (auto& [v, val] : out.values) {
        if (v.beta.size() != lambdas.size())
            throw validation_error("rescaling vector length does not match curve class rank");
        Rat mult(1);
        for (size_t i = 0; i < lambdas.size(); ++i) mult *= rat_pow(lambdas[i], v.beta[i]);
        val *= mult;
    }
    return out;
}

Rat fsr_residual(const Bundle& b, const PairingData& pd, const SolutionTable& table, int i, int j,
                 int k, int l, int m, const IVec& beta, const IVec& d) {
    Rat wb = b.omega_value(beta);
    for (const auto& beta2 : curve_classes_up_to(b.cone, wb)) {
        if (b.omega_value(beta2) >= wb) continue;
        for (const auto& rel : enumerate_relations(b, pd, beta2)) {
            Rat v = evaluate_poly(rel.poly, table, true);
            if (v != 0)
                throw QcasError("precondition",
                                "lower relation " + relation_id_to_string(b.alg, rel.id) +
                                    " evaluates to " + rat_to_string(v));
        }
    }
    auto p = five_symbols_combination(b, pd, i, j, k, l, m, beta, d);
    return evaluate_poly(p, table, true);
}

}  // namespace qcas
