#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qadapt::core {

struct Subsystem {
  std::string label;
  std::size_t dim = 1;

  bool operator==(const Subsystem&) const = default;
};

/// Ordered list of labelled subsystems. The joint Hilbert space is the
/// tensor product in declaration order; the first subsystem carries the most
/// significant digit of a joint basis index (row-major / Kronecker order).
class RegisterShape {
 public:
  RegisterShape() = default;
  explicit RegisterShape(std::vector<Subsystem> subsystems);

  static RegisterShape single(std::string label, std::size_t dim);

  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  std::size_t count() const { return subsystems_.size(); }
  std::size_t total_dim() const;

  bool contains(const std::string& label) const;
  std::size_t index_of(const std::string& label) const;
  std::size_t dim_of(const std::string& label) const;
  std::vector<std::string> labels() const;

  /// Sub-shape with the given labels, kept in declaration order.
  RegisterShape restricted(const std::vector<std::string>& keep) const;
  /// Labels of this shape that are not in `labels`, in declaration order.
  std::vector<std::string> complement(const std::vector<std::string>& labels) const;
  /// Shape of `this ⊗ other`; labels must stay unique.
  RegisterShape concat(const RegisterShape& other) const;

  bool operator==(const RegisterShape&) const = default;

 private:
  std::vector<Subsystem> subsystems_;
};

}  // namespace qadapt::core
