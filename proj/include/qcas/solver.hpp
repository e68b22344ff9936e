#pragma once

#include "qcas/wdvv.hpp"

#include <set>

namespace qcas {

struct SolutionTable {
    std::map<NVar, Rat> values;
    std::set<NVar> pins;    // subset of values fixed from outside
    std::vector<NVar> free_vars;  // variables a zero-fill policy defaulted
    std::string status = "empty";
};

// row provenance: either a generated relation or a pinned variable
struct RowTag {
    bool is_pin = false;
    RelationId rel;
    NVar pin;
};

std::string row_tag_to_string(const GradedAlgebra& alg, const RowTag& tag);

struct LinRow {
    std::map<int, Rat> a;  // column -> coefficient
    Rat rhs;
    RowTag tag;
};

struct LinearSystem {
    IVec beta;
    std::vector<NVar> unknowns;
    std::vector<LinRow> rows;
};

struct SolveReport {
    IVec beta;
    size_t n_relations = 0;
    size_t n_unknowns = 0;
    size_t rank = 0;
    std::string status;  // unique | underdetermined | inconsistent
    std::vector<NVar> free_vars;
    std::vector<RowTag> witness;  // minimal infeasible core
    Rat residual = 0;             // the nonzero constant the core combines to
};

// One row per relation at beta: the linear part over the stage unknowns, the
// quadratic part folded into the right-hand side using lower-class values from
// the table. Table entries at beta itself become pin rows.
LinearSystem assemble_system(const Bundle& b, const PairingData& pd, const IVec& beta,
                             const SolutionTable& table);

// Exact Gauss-Jordan with row provenance. Solved values for determined
// unknowns land in `assignment` (whatever the status); free variables stay out.
SolveReport solve_system(const LinearSystem& sys, std::map<NVar, Rat>& assignment);

struct SeedViolation {
    RelationId id;
    Rat value;
};

// Evaluates every degree-zero two-divisor relation on the seed table
// (absent variables read as zero) and reports the nonzero ones.
std::vector<SeedViolation> check_seed_relations(const Bundle& b, const PairingData& pd,
                                                const SolutionTable& seeds,
                                                std::optional<Rat> bound = std::nullopt);

struct ReconstructResult {
    SolutionTable table;
    std::vector<SolveReport> reports;
    std::vector<SeedViolation> seed_violations;
    bool ok = false;
};

// Stage-by-stage reconstruction in increasing <beta,omega> up to the bound.
// policy "strict": halt on any underdetermined stage, extra pins rejected;
// policy "pins": user pins join the system as rows, halt if frees remain;
// policy "zero": remaining frees are set to 0 and recorded.
// Inconsistency halts under every policy and commits nothing for that stage.
// Seed relations are checked first; violations halt before any stage runs.
ReconstructResult reconstruct(const Bundle& b, const PairingData& pd, const SolutionTable& seeds,
                              const Rat& bound, const std::string& policy);

struct VerifyResult {
    bool ok = true;
    RelationId id;  // first failing relation when !ok
    Rat value = 0;
};

// Evaluates every relation with <beta,omega> <= bound in (beta, d, tuple)
// order. Missing variables read as zero when zero_default is set, otherwise
// they raise a validation error.
VerifyResult verify_table(const Bundle& b, const PairingData& pd, const SolutionTable& table,
                          const Rat& bound, bool zero_default);

// N(beta;d) -> prod lambda_i^{beta_i} * N(beta;d); lambdas must be positive
SolutionTable rescale_table(const SolutionTable& table, const std::vector<Rat>& lambdas);

// Evaluates the five-term combination on the table after verifying that every
// relation on strictly lower curve classes holds (else a precondition error).
Rat fsr_residual(const Bundle& b, const PairingData& pd, const SolutionTable& table, int i, int j,
                 int k, int l, int m, const IVec& beta, const IVec& d);

// table evaluation helper shared by the verification paths
Rat evaluate_poly(const QuadPoly& p, const SolutionTable& table, bool zero_default);

}  // namespace qcas
