#pragma once

#include "qcas/degrees.hpp"

#include <array>

namespace qcas {

// Polynomial in the unknowns N(beta;d): a sparse linear part plus a sparse
// quadratic part over unordered variable pairs. No constant term can arise
// and zero coefficients are never stored.
struct QuadPoly {
    std::map<NVar, Rat> lin;
    std::map<std::pair<NVar, NVar>, Rat> quad;

    void add_lin(const NVar& v, const Rat& c);
    void add_quad(const NVar& a, const NVar& b, const Rat& c);
    bool is_zero() const { return lin.empty() && quad.empty(); }
    QuadPoly& operator+=(const QuadPoly& o);
    QuadPoly& operator-=(const QuadPoly& o);
    QuadPoly& operator*=(const Rat& c);
    bool operator==(const QuadPoly& o) const = default;
};

std::string quadpoly_to_string(const QuadPoly& p);

// Symmetry group of a relation tuple: (i,j,k,l) -> (j,i,l,k) keeps the sign,
// (k,j,i,l) and (i,l,k,j) flip it. Tuples with an identity slot, k=i or l=j
// are trivial (the relation is identically zero).
struct CanonTuple {
    std::array<int, 4> t;
    int sign;
    bool trivial;
};
CanonTuple canonical_tuple(int i, int j, int k, int l);

struct RelationId {
    std::array<int, 4> t;  // canonical representative
    IVec beta;
    IVec d;
    int sign = 1;  // stored polynomial = sign * relation of the canonical tuple
    auto operator<=>(const RelationId&) const = default;
};

std::string relation_id_to_string(const GradedAlgebra& alg, const RelationId& id);

// Third-derivative coefficient of the quantum part of the potential:
// factor = product of beta-pairings over divisor slots, variable picks up a
// degree shift for each higher slot. Empty when a slot is the identity or the
// shifted variable is inadmissible.
std::optional<std::pair<Rat, NVar>> gamma_coefficient(const Bundle& b, int x, int y, int z,
                                                      const IVec& beta, const IVec& d);

QuadPoly linear_contribution(const Bundle& b, int i, int j, int k, int l, const IVec& beta,
                             const IVec& d);
QuadPoly quadratic_contribution(const Bundle& b, const PairingData& pd, int i, int j, int k, int l,
                                const IVec& beta, const IVec& d);

// linear_contribution - quadratic_contribution; identically zero for trivial tuples
QuadPoly build_relation(const Bundle& b, const PairingData& pd, int i, int j, int k, int l,
                        const IVec& beta, const IVec& d);

// multilinear extension over coordinate vectors in the basis
QuadPoly build_relation(const Bundle& b, const PairingData& pd, const SparseVec& xi,
                        const SparseVec& pi, const SparseVec& rho, const SparseVec& sigma,
                        const IVec& beta, const IVec& d);

struct Relation {
    RelationId id;
    QuadPoly poly;
};

// One representative per symmetry orbit, over every degree vector compatible
// with the grading at beta, nonzero polynomials only, sorted by (d, tuple).
// Without a canonical class the degree range must be bounded explicitly.
// Honors QCSOLVE_THREADS for parallel generation.
std::vector<Relation> enumerate_relations(const Bundle& b, const PairingData& pd, const IVec& beta,
                                          std::optional<long long> dbound = std::nullopt);

// The degree-zero relations with two divisor slots, over every curve class
// that can carry one; these reference only variables with |d| <= 2.
std::vector<Relation> enumerate_seed_relations(const Bundle& b, const PairingData& pd,
                                               std::optional<Rat> bound = std::nullopt);

struct FormulaCounts {
    Int mod_sign;
    Int two_of_three;
    bool operator==(const FormulaCounts&) const = default;
};

// closed forms for the number of relation orbits over a basis of size r
FormulaCounts count_formulas(long long r);
// independent check by explicit orbit enumeration; r <= 10
FormulaCounts brute_count(int r);

// <ijkl> + <jkil> + <kijl> = 0 as exact polynomials
bool check_two_out_of_three(const Bundle& b, const PairingData& pd, int i, int j, int k, int l,
                            const IVec& beta, const IVec& d);

// Rel(i,j,k,l;d) + w_j Rel(i,l,k,m;d+e_j-e_m) + w_l Rel(i,m,k,j;d+e_l-e_m) = 0
// where w_x is the beta-pairing for a divisor slot, 1 for a higher slot, 0 for
// the identity. Requires m of codimension >= 2 and d_m >= 1.
bool check_three_symbols(const Bundle& b, const PairingData& pd, int i, int j, int k, int l, int m,
                         const IVec& beta, const IVec& d);

// sum over pairings of Gamma_{ij(me)} g^{ef} Gamma_{fkl} equals the same with
// (ij) and (kl) exchanged
bool check_m_diagonal(const Bundle& b, const PairingData& pd, int i, int j, int k, int l, int m,
                      const IVec& beta, const IVec& d);

// <(mi)jkl> - <m(ij)kl> + <mi(jk)l> - <mij(kl)> + <(lm)ijk>; the linear part
// cancels identically (asserted), the quadratic remainder is returned.
QuadPoly five_symbols_combination(const Bundle& b, const PairingData& pd, int i, int j, int k,
                                  int l, int m, const IVec& beta, const IVec& d);

}  // namespace qcas
