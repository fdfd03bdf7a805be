#pragma once

#include <vector>

#include "qadapt/core/json_io.hpp"
#include "qadapt/core/linalg.hpp"
#include "qadapt/core/register_shape.hpp"

namespace qadapt::opt {

using core::ComplexMatrix;
using core::RegisterShape;

class Povm {
 public:
  /// Elements must be PSD (1e-10) and sum to the identity (1e-9).
  Povm(RegisterShape shape, std::vector<ComplexMatrix> elements);

  static Povm computational(RegisterShape shape);
  /// Rank-1 projective measurement onto the columns of a unitary.
  static Povm from_basis(RegisterShape shape, const ComplexMatrix& unitary);

  const RegisterShape& shape() const { return shape_; }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const ComplexMatrix& operator[](std::size_t i) const { return elements_[i]; }
  std::size_t size() const { return elements_.size(); }
  std::size_t dim() const { return shape_.total_dim(); }
  bool is_projective(double tol = core::tol::kEquality) const;

  /// Merges outcomes `i` and `j` into one element (placed at position min(i,j)).
  Povm coarse_grained(std::size_t i, std::size_t j) const;

 private:
  RegisterShape shape_;
  std::vector<ComplexMatrix> elements_;
};

core::Json povm_to_json(const Povm& povm);
Povm povm_from_json(const core::Json& j);

}  // namespace qadapt::opt
