#pragma once

#include <map>

#include "qcas/solver.hpp"

namespace qcas {

struct PresetInfo {
    std::string name;
    std::string summary;
    std::vector<std::string> params;  // accepted "--param key=value" keys
};

// Catalog of shipped geometries, each a validated (algebra, cone, K) bundle.
std::vector<PresetInfo> preset_catalog();

// Throws usage_error on an unknown name or out-of-range parameters.
Bundle get_preset(const std::string& name,
                  const std::map<std::string, long long>& params = {});

// Documentation block for a preset, one comment line per entry.
std::vector<std::string> preset_doc(const std::string& name);

// Independent check values for plane curve counts: N_1 = 1 and
//   N_b = sum over b1+b2=b of N_{b1} N_{b2} (b1^2 b2^2 C(3b-4,3b1-2)
//                                            - b1^3 b2 C(3b-4,3b1-1)).
// Implemented directly from the recursion, sharing nothing with the solver.
std::vector<Rat> kontsevich_oracle(long long beta_max);

// The beta=1 linear consequence on the rank-2 Grassmannian of 5-space:
//   11 N(1;t7=1,t9=1) - 6 N(1;t6=1,t9=1) - 15 N(1;t8=2) = 0,
// expressed in slot order (t2..t9).
QuadPoly g25_linear_condition();

// Degenerate starting table on the rank-2 Grassmannian of 4-space: the
// quintuple insertion on the chosen codimension-2 slot ("c" or "h2") is 1,
// every other beta=1 admissible variable is 0.
SolutionTable g24_degenerate_seed(const std::string& convention);

}  // namespace qcas
