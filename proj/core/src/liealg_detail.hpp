#pragma once

// Internal helpers shared by the subalgebra sources.

#include "flagstab/matrix.hpp"
#include "flagstab/subspace.hpp"

namespace flagstab::detail {

// Lifts rows of coordinates (w.r.t. space's basis rows) back into the
// ambient coordinates of space.
Subspace lift_coordinates(const Subspace& coords, const Subspace& space);

}  // namespace flagstab::detail
