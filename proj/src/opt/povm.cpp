#include "qadapt/opt/povm.hpp"

#include "qadapt/core/error.hpp"

namespace qadapt::opt {

Povm::Povm(RegisterShape shape, std::vector<ComplexMatrix> elements)
    : shape_(std::move(shape)), elements_(std::move(elements)) {
  if (elements_.empty()) throw InputError("POVM needs at least one element");
  const auto d = static_cast<Eigen::Index>(shape_.total_dim());
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (auto& e : elements_) {
    if (e.rows() != d || e.cols() != d) throw InputError("POVM element has the wrong size");
    if (!core::is_psd(e, core::tol::kPsd)) throw InputError("POVM element is not positive semidefinite");
    e = core::hermitize(e);
    sum += e;
  }
  if (core::max_abs(sum - core::identity(shape_.total_dim())) > core::tol::kEquality) {
    throw InputError("POVM elements do not sum to the identity");
  }
}

Povm Povm::computational(RegisterShape shape) {
  return from_basis(shape, core::identity(shape.total_dim()));
}

Povm Povm::from_basis(RegisterShape shape, const ComplexMatrix& unitary) {
  std::vector<ComplexMatrix> els;
  for (Eigen::Index i = 0; i < unitary.cols(); ++i) els.push_back(core::outer(unitary.col(i)));
  return Povm(std::move(shape), std::move(els));
}

bool Povm::is_projective(double tol) const {
  for (const auto& e : elements_) {
    if (!core::is_projector(e, tol)) return false;
  }
  return true;
}

Povm Povm::coarse_grained(std::size_t i, std::size_t j) const {
  if (i == j || i >= size() || j >= size()) throw InputError("coarse_grained: bad outcome indices");
  const std::size_t lo = std::min(i, j);
  const std::size_t hi = std::max(i, j);
  std::vector<ComplexMatrix> els;
  for (std::size_t k = 0; k < size(); ++k) {
    if (k == hi) continue;
    els.push_back(k == lo ? ComplexMatrix(elements_[lo] + elements_[hi]) : elements_[k]);
  }
  return Povm(shape_, std::move(els));
}

core::Json povm_to_json(const Povm& povm) {
  core::Json els = core::Json::array();
  for (const auto& e : povm.elements()) els.push_back(core::matrix_to_json(e));
  return {{"shape", core::shape_to_json(povm.shape())}, {"elements", els}};
}

Povm povm_from_json(const core::Json& j) {
  if (!j.contains("shape") || !j.contains("elements")) {
    throw InputError("POVM payload needs 'shape' and 'elements'");
  }
  std::vector<ComplexMatrix> els;
  for (const auto& e : j.at("elements")) els.push_back(core::matrix_from_json(e));
  return Povm(core::shape_from_json(j.at("shape")), std::move(els));
}

}  // namespace qadapt::opt
