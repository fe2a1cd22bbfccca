#pragma once

#include "hsc/lie.hpp"

namespace hsc::catalog {

// Matrix unit E_{ij} (0-based) of size n.
RationalMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j);

LieAlgebra abelian(std::size_t d);
LieAlgebra sl2();  // basis h, e, f
// sl2 ⋉ Q^2 with the defining representation: basis h, e, f, v1, v2.
LieAlgebra sl2_plane();
// gl2: basis h, e, f, z with z central.
LieAlgebra gl2();

}  // namespace hsc::catalog
