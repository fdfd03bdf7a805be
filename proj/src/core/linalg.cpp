#include "qadapt/core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qadapt/core/error.hpp"

namespace qadapt::core {

namespace {

// Per-subsystem digits of a joint index, most significant first.
std::vector<std::size_t> strides_of(const RegisterShape& shape) {
  const auto& subs = shape.subsystems();
  std::vector<std::size_t> strides(subs.size(), 1);
  for (std::size_t i = subs.size(); i-- > 1;) strides[i - 1] = strides[i] * subs[i].dim;
  return strides;
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw InputError(std::string(what) + ": matrix is not square");
}

void require_shape(const ComplexMatrix& m, const RegisterShape& shape) {
  require_square(m, "operator");
  if (static_cast<std::size_t>(m.rows()) != shape.total_dim()) {
    throw InputError("operator dimension does not match register shape");
  }
}

// Splits every joint index into (index over `sel`, index over the rest).
struct IndexSplit {
  std::vector<std::size_t> selected;
  std::vector<std::size_t> rest;
  std::size_t dim_selected = 1;
  std::size_t dim_rest = 1;
};

IndexSplit split_indices(const RegisterShape& shape, const std::vector<bool>& sel) {
  const auto& subs = shape.subsystems();
  const auto strides = strides_of(shape);
  IndexSplit out;
  for (std::size_t s = 0; s < subs.size(); ++s) {
    (sel[s] ? out.dim_selected : out.dim_rest) *= subs[s].dim;
  }
  const std::size_t total = shape.total_dim();
  out.selected.resize(total);
  out.rest.resize(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t a = 0;
    std::size_t b = 0;
    for (std::size_t s = 0; s < subs.size(); ++s) {
      const std::size_t digit = (idx / strides[s]) % subs[s].dim;
      if (sel[s]) {
        a = a * subs[s].dim + digit;
      } else {
        b = b * subs[s].dim + digit;
      }
    }
    out.selected[idx] = a;
    out.rest[idx] = b;
  }
  return out;
}

std::vector<bool> selection(const RegisterShape& shape, const std::vector<std::string>& labels) {
  std::vector<bool> sel(shape.count(), false);
  for (const auto& l : labels) sel[shape.index_of(l)] = true;
  return sel;
}

}  // namespace

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

bool is_psd(const ComplexMatrix& m, double tol) {
  return is_hermitian(m, tol) && lambda_min(m) >= -tol;
}

bool is_projector(const ComplexMatrix& m, double tol) {
  return is_hermitian(m, tol) && max_abs(m * m - m) <= tol;
}

Eigensystem eig_hermitian(const ComplexMatrix& m, double herm_tol) {
  require_square(m, "eig_hermitian");
  if (!is_hermitian(m, herm_tol)) throw InputError("eig_hermitian: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m));
  // Eigen returns ascending order.
  Eigensystem out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

double lambda_max(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(hermitian), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double lambda_min(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(hermitian), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (is_hermitian(m, 1e-13)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

bool loewner_leq(const ComplexMatrix& x, const ComplexMatrix& y, double tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw InputError("loewner_leq: size mismatch");
  }
  if (!is_hermitian(x) || !is_hermitian(y)) throw InputError("loewner_leq: non-Hermitian input");
  return lambda_min(y - x) >= -tol;
}

ComplexMatrix spectral_apply(const ComplexMatrix& hermitian,
                             const std::function<double(double)>& f) {
  const auto es = eig_hermitian(hermitian);
  RealVector mapped = es.values.unaryExpr(f);
  return es.vectors * mapped.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

ComplexMatrix positive_part(const ComplexMatrix& m) {
  return spectral_apply(m, [](double l) { return l > 0.0 ? l : 0.0; });
}

ComplexMatrix eigenspace_projector(const ComplexMatrix& hermitian, double threshold) {
  return spectral_apply(hermitian, [threshold](double l) { return l > threshold ? 1.0 : 0.0; });
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  return spectral_apply(m, [](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
}

ComplexMatrix pinv_sqrt(const ComplexMatrix& m, double rank_tol) {
  return spectral_apply(m, [rank_tol](double l) { return l > rank_tol ? 1.0 / std::sqrt(l) : 0.0; });
}

std::size_t numerical_rank(const ComplexMatrix& hermitian, double rank_tol) {
  const auto es = eig_hermitian(hermitian);
  return static_cast<std::size_t>((es.values.array() > rank_tol).count());
}

ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

ComplexMatrix identity(std::size_t dim) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterShape& shape,
                            const std::vector<std::string>& keep) {
  require_shape(m, shape);
  const auto split = split_indices(shape, selection(shape, keep));
  const auto dk = static_cast<Eigen::Index>(split.dim_selected);
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  // Group joint indices by traced index so only matching pairs are visited.
  std::vector<std::vector<std::size_t>> by_rest(split.dim_rest);
  for (std::size_t idx = 0; idx < split.rest.size(); ++idx) by_rest[split.rest[idx]].push_back(idx);
  for (const auto& group : by_rest) {
    for (std::size_t i : group) {
      for (std::size_t j : group) {
        out(static_cast<Eigen::Index>(split.selected[i]), static_cast<Eigen::Index>(split.selected[j])) +=
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, const RegisterShape& shape,
                    const std::vector<std::string>& targets) {
  const auto split = split_indices(shape, selection(shape, targets));
  require_square(op, "embed");
  if (static_cast<std::size_t>(op.rows()) != split.dim_selected) {
    throw InputError("embed: operator dimension does not match target subsystems");
  }
  const auto d = static_cast<Eigen::Index>(shape.total_dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  std::vector<std::vector<std::size_t>> by_rest(split.dim_rest);
  for (std::size_t idx = 0; idx < split.rest.size(); ++idx) by_rest[split.rest[idx]].push_back(idx);
  for (const auto& group : by_rest) {
    for (std::size_t i : group) {
      for (std::size_t j : group) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            op(static_cast<Eigen::Index>(split.selected[i]), static_cast<Eigen::Index>(split.selected[j]));
      }
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const RegisterShape& shape,
                                 const std::vector<std::string>& order) {
  require_shape(m, shape);
  if (order.size() != shape.count()) throw InputError("permute_subsystems: order must list every label");
  std::vector<Subsystem> reordered;
  for (const auto& l : order) reordered.push_back(shape.subsystems()[shape.index_of(l)]);
  const RegisterShape target(reordered);  // rejects duplicates
  const auto src_strides = strides_of(shape);
  const auto& dst_subs = target.subsystems();
  const std::size_t total = shape.total_dim();
  // perm[new_index] = old_index
  std::vector<std::size_t> perm(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    std::size_t old_index = 0;
    std::size_t stride = total;
    for (const auto& s : dst_subs) {
      stride /= s.dim;
      const std::size_t digit = rem / stride;
      rem %= stride;
      old_index += digit * src_strides[shape.index_of(s.label)];
    }
    perm[idx] = old_index;
  }
  const auto d = static_cast<Eigen::Index>(total);
  ComplexMatrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out(i, j) = m(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j]));
    }
  }
  return out;
}

}  // namespace qadapt::core
