#pragma once

#include <vector>

#include "flagstab/flag.hpp"
#include "flagstab/pairing.hpp"

namespace flagstab {

// All n! maximal flags whose members are spans of coordinate vectors,
// ordered by the underlying permutation (lexicographic).
std::vector<GeneralizedFlag> coordinate_maximal_flags(std::size_t n);

// All maximal isotropic flags of a split form whose members are spans of
// signed basis vectors: one sign choice per index magnitude (2^m masks,
// e_0 is never isotropic) times an ordering of the chosen vectors (m!).
// Each flag's support is the selected maximal isotropic subspace.
std::vector<GeneralizedFlag> basis_aligned_isotropic_flags(const Pairing& p);

// Completes a maximal isotropic flag to a maximal flag of the ambient
// space by appending the perps of its members in reverse order. The
// result's iso_part is the input flag back.
GeneralizedFlag extend_isotropic_to_compatible(const GeneralizedFlag& iso, const Pairing& p);

}  // namespace flagstab
