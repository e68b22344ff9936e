#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "qcas/algebra.hpp"
#include "qcas/rational.hpp"

namespace qcas {

// Integer coordinate vector (curve classes, insertion degree vectors).
using IVec = std::vector<long long>;

// A strongly convex rational polyhedral cone in the lattice dual to the
// divisor basis. Stored in H-form (rows a with a.x >= 0); ray input is
// accepted for simplicial cones and converted by exact dualization.
struct ConeSpec {
    int dim = 0;
    std::vector<IVec> ineqs;
    std::vector<IVec> rays;  // as given, when ray-presented
    bool from_rays = false;
    IVec omega;  // derived ordering functional: sum of the inequality rows
};

ConeSpec cone_from_ineqs(int dim, std::vector<IVec> ineqs);
ConeSpec cone_from_rays(int dim, std::vector<IVec> rays);

// Throws on a non-pointed cone or a functional that fails strict positivity.
void validate_cone(const ConeSpec& cone);

// Primitive extreme rays of the (validated) cone.
std::vector<IVec> cone_generators(const ConeSpec& cone);

bool cone_contains(const ConeSpec& cone, const IVec& x);

// All nonzero lattice points x of the cone with w.x <= bound, sorted by
// (w.x, lex). Throws when the region is unbounded (w not strictly positive).
std::vector<IVec> lattice_points_up_to(const ConeSpec& cone, const IVec& w, const Rat& bound);

// Same with the derived omega functional.
std::vector<IVec> curve_classes_up_to(const ConeSpec& cone, const Rat& bound);

// Coordinates of the canonical class K over the divisor basis.
struct CanonicalClass {
    std::vector<Rat> coords;
};

// Pairing of a curve class with a divisor given by coordinates.
Rat pairing_with_divisor(const IVec& beta, const std::vector<Rat>& divisor_coords);

// One solving instance: the algebra, the curve cone, and optionally K.
struct Bundle {
    GradedAlgebra alg;
    ConeSpec cone;
    std::optional<CanonicalClass> K;

    Rat omega_value(const IVec& beta) const;
    // <beta, -K>; requires K
    Rat anticanonical_degree(const IVec& beta) const;
};

// One unknown of the system: the count N(beta; d). d has one slot per
// higher-codimension basis element, in basis order. Ordered by (beta, d) lex.
struct NVar {
    IVec beta;
    IVec d;
    auto operator<=>(const NVar&) const = default;
};

std::string nvar_to_string(const NVar& v);  // N(b1,..,br;d1,..,ds)
NVar nvar_from_string(const std::string& s);

// Insertion weights: codim(tau_j) - 1 for each higher basis element.
std::vector<long long> insertion_weights(const GradedAlgebra& alg);

// Weighted insertion degree sum(d_j * weight_j) of d.
long long weighted_degree(const GradedAlgebra& alg, const IVec& d);

// The dimension target sum(d_j w_j) must hit for N(beta;d) to be admissible:
// <beta,-K> + n - 3. nullopt when K is absent or the value is not an integer.
std::optional<long long> admissible_target(const Bundle& b, const IVec& beta);

// With K: true iff the weighted degree meets the target. Without K: always true.
bool admissible(const Bundle& b, const NVar& v);

// All d >= 0 with weighted degree == target(beta); empty when no K applies
// (use degree_vectors_up_to for the unfiltered bounded enumeration).
std::vector<IVec> admissible_degrees(const Bundle& b, const IVec& beta);

// All d >= 0 with |d| <= dbound (no dimension filter), sorted lex.
std::vector<IVec> degree_vectors_up_to(const GradedAlgebra& alg, long long dbound);

// Degrees d at which the relation with entry codimensions `codims` can be
// nonzero: weighted degree == <beta,-K> - (sum(codims) - n).
std::vector<IVec> relation_degrees(const Bundle& b, const IVec& beta, const std::array<int, 4>& codims);

struct SeedVars {
    std::vector<NVar> vars;
    Rat min_bound;  // least omega-bound whose curve classes carry every seed
};

// All admissible N(beta;d) with |d| <= 2. Finite without an explicit bound
// when K is present and -K is strictly positive on the cone; otherwise the
// omega-bound argument is required.
SeedVars seed_variables(const Bundle& b, std::optional<Rat> bound = std::nullopt);

}  // namespace qcas
