#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcas/rational.hpp"

namespace qcas {

struct BasisElement {
    std::string label;
    int codim = 0;
};

// Sparse coordinate vector over the basis: index -> coefficient, no zero entries.
using SparseVec = std::map<int, Rat>;

// A graded commutative algebra with unit, presented by an ordered basis
// (identity first, then the codimension-1 "divisor" elements, then the
// higher-codimension elements, codims nondecreasing), structure constants
// on unordered pairs, and a linear functional ("integral") supported in the
// top codimension. Products whose codimension sum exceeds n are implicitly 0.
struct GradedAlgebra {
    std::string name;
    int n = 0;  // socle codimension
    std::vector<BasisElement> basis;
    // key (a,b) with a <= b, both non-identity, codim(a)+codim(b) <= n
    std::map<std::pair<int, int>, SparseVec> products;
    std::map<int, Rat> integrals;  // basis index -> integral (zeros may be omitted)

    int size() const { return (int)basis.size(); }
    int codim(int i) const { return basis[i].codim; }
    const std::string& label(int i) const { return basis[i].label; }

    // -1 if no such label
    int find(const std::string& lbl) const;

    // number of codimension-1 elements; they occupy indices 1..r
    int divisor_count() const;
    // number of higher elements; they occupy indices r+1..r+s
    int higher_count() const { return size() - 1 - divisor_count(); }

    bool is_divisor(int i) const { return codim(i) == 1; }
    bool is_higher(int i) const { return i > 0 && codim(i) >= 2; }
    // position of a higher element among the higher block (0-based), -1 otherwise
    int higher_slot(int i) const { return is_higher(i) ? i - 1 - divisor_count() : -1; }

    Rat integral_of_basis(int i) const;
    Rat integral_of(const SparseVec& x) const;

    // T_a * T_b as a sparse coordinate vector; identity acts as identity,
    // pairs over codimension n are zero, and a listed pair returns its
    // stored expansion. Throws if a non-identity pair within range is unlisted.
    SparseVec multiply(int a, int b) const;
    SparseVec multiply(const SparseVec& x, const SparseVec& y) const;

    Rat triple_integral(int a, int b, int c) const;
};

struct Violation {
    std::string check;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> items;
    bool ok() const { return items.empty(); }
};

// Structural and ring-theoretic checks: basis layout, grading of every listed
// product, full associativity, one-dimensional socle with nonzero integral,
// integral vanishing below the top codimension, invertible pairing.
ValidationReport validate_algebra(const GradedAlgebra& alg);

struct PairingData {
    std::vector<std::vector<Rat>> gram;     // g_{ab} = integral of T_a T_b
    std::vector<std::vector<Rat>> inverse;  // exact inverse of gram
    std::vector<std::pair<int, int>> inverse_support;  // ordered (e,f) with g^{ef} != 0
};

// Throws QcasError("validation", ...) when the pairing matrix is singular.
PairingData pairing_data(const GradedAlgebra& alg);

// True when products of codimension-1 elements span every graded piece.
bool is_generated_by_divisors(const GradedAlgebra& alg);

// Exact inverse of a square rational matrix; empty result if singular.
std::vector<std::vector<Rat>> invert_matrix(const std::vector<std::vector<Rat>>& m);

}  // namespace qcas
