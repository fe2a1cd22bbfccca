#include "hsc/catalog.hpp"

namespace hsc::catalog {

RationalMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j) {
  return RationalMatrix::from_triplets(n, n, {{static_cast<Index>(i), static_cast<Index>(j), Rational(1)}});
}

LieAlgebra abelian(std::size_t d) { return LieAlgebra(d); }

LieAlgebra sl2() {
  auto h = matrix_unit(2, 0, 0) - matrix_unit(2, 1, 1);
  return lie_algebra_from_matrices({h, matrix_unit(2, 0, 1), matrix_unit(2, 1, 0)}, {"h", "e", "f"});
}

LieAlgebra sl2_plane() {
  auto h = matrix_unit(3, 0, 0) - matrix_unit(3, 1, 1);
  return lie_algebra_from_matrices(
      {h, matrix_unit(3, 0, 1), matrix_unit(3, 1, 0), matrix_unit(3, 0, 2), matrix_unit(3, 1, 2)},
      {"h", "e", "f", "v1", "v2"});
}

LieAlgebra gl2() {
  auto h = matrix_unit(2, 0, 0) - matrix_unit(2, 1, 1);
  auto z = matrix_unit(2, 0, 0) + matrix_unit(2, 1, 1);
  return lie_algebra_from_matrices({h, matrix_unit(2, 0, 1), matrix_unit(2, 1, 0), z}, {"h", "e", "f", "z"});
}

}  // namespace hsc::catalog
