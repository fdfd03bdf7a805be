#pragma once

#include <optional>
#include <vector>

#include "qadapt/core/json_io.hpp"
#include "qadapt/opt/povm.hpp"

namespace qadapt::opt {

/// Score operators K_j on one register; the program is
///   maximize Σ_j tr(F_j K_j) over POVMs {F_j}
/// with dual  minimize tr Y  subject to  Y ≥ K_j for all j.
class DiscriminationInstance {
 public:
  explicit DiscriminationInstance(std::vector<ComplexMatrix> scores);

  const std::vector<ComplexMatrix>& scores() const { return scores_; }
  std::size_t size() const { return scores_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(scores_.front().rows()); }

 private:
  std::vector<ComplexMatrix> scores_;
};

struct SolverCertificate {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  std::optional<Povm> povm;
  ComplexMatrix dual_witness;
  int iterations = 0;
  bool converged = false;

  double value() const { return primal; }
};

core::Json certificate_to_json(const SolverCertificate& c);

struct BinaryOptimum {
  double value = 0.0;
  Povm povm;
};

/// Closed form: tr K1 + tr[(K0 − K1)_+], with F_0 the projector onto the
/// positive eigenspace of K0 − K1.
BinaryOptimum binary_optimal(const ComplexMatrix& k0, const ComplexMatrix& k1);

enum class SolverMethod {
  automatic,  // closed forms where they exist, barrier up to dim 32, fixed point beyond
  barrier,
  fixed_point,
};

struct SolverOptions {
  double tol = 1e-7;
  int max_iter = 10000;
  SolverMethod method = SolverMethod::automatic;
};

SolverCertificate optimal_discrimination(const DiscriminationInstance& inst,
                                         const SolverOptions& opts = {});

}  // namespace qadapt::opt
