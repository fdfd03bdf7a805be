#include "barrier.hpp"

#include <cmath>
#include <limits>

#include "qadapt/core/error.hpp"

namespace qadapt::opt::detail {

using core::Complex;

namespace {

struct Entry {
  Eigen::Index row;
  Eigen::Index col;
  Complex coef;
};

// Orthonormal basis of d×d Hermitian matrices under the trace inner product:
// E_ii, (E_ik + E_ki)/√2 and i(E_ik − E_ki)/√2.
std::vector<std::vector<Entry>> hermitian_basis(Eigen::Index d) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<std::vector<Entry>> basis;
  for (Eigen::Index i = 0; i < d; ++i) basis.push_back({{i, i, 1.0}});
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index k = i + 1; k < d; ++k) {
      basis.push_back({{i, k, r}, {k, i, r}});
      basis.push_back({{i, k, Complex(0.0, r)}, {k, i, Complex(0.0, -r)}});
    }
  }
  return basis;
}

Eigen::VectorXd coords(const ComplexMatrix& x, const std::vector<std::vector<Entry>>& basis) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    Complex s = 0.0;
    for (const auto& e : basis[a]) s += e.coef * x(e.col, e.row);
    c(static_cast<Eigen::Index>(a)) = s.real();
  }
  return c;
}

ComplexMatrix from_coords(const Eigen::VectorXd& c, const std::vector<std::vector<Entry>>& basis,
                          Eigen::Index d) {
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (const auto& e : basis[a]) x(e.row, e.col) += c(static_cast<Eigen::Index>(a)) * e.coef;
  }
  return x;
}

struct Evaluation {
  bool feasible = false;
  double value = 0.0;
  std::vector<ComplexMatrix> inverses;
};

Evaluation evaluate(const ComplexMatrix& y, const BarrierProblem& p, double t, bool want_inverses) {
  Evaluation ev;
  const ComplexMatrix lifted = lift(y, p.outer);
  double logdet = 0.0;
  for (const auto& k : p.scores) {
    const ComplexMatrix m = core::hermitize(lifted - k);
    Eigen::LLT<ComplexMatrix> llt(m);
    if (llt.info() != Eigen::Success) return ev;
    const auto diag = llt.matrixL().nestedExpression().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
      const double v = diag(i).real();
      if (!(v > 0.0)) return ev;
      logdet += 2.0 * std::log(v);
    }
    if (want_inverses) {
      ev.inverses.push_back(core::hermitize(llt.solve(core::identity(static_cast<std::size_t>(m.rows())))));
    }
  }
  ev.feasible = true;
  ev.value = t * y.trace().real() - logdet;
  return ev;
}

}  // namespace

ComplexMatrix trace_outer(const ComplexMatrix& m, std::size_t outer, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(outer); ++a) out += m.block(a * d, a * d, d, d);
  return out;
}

ComplexMatrix lift(const ComplexMatrix& y, std::size_t outer) {
  if (outer == 1) return y;
  return core::tensor(core::identity(outer), y);
}

BarrierResult solve_barrier(const BarrierProblem& p) {
  if (p.scores.empty()) throw InputError("barrier solver needs at least one score operator");
  const auto d = static_cast<Eigen::Index>(p.dim);
  const auto full = static_cast<Eigen::Index>(p.outer * p.dim);
  double scale = 0.0;
  for (const auto& k : p.scores) {
    if (k.rows() != full || k.cols() != full) throw InputError("score operator has the wrong size");
    scale = std::max(scale, core::lambda_max(k));
  }

  BarrierResult res;
  if (!(scale > 0.0)) {
    // every K_j is zero: Y = 0 is optimal and any feasible Z attains 0
    res.y = ComplexMatrix::Zero(d, d);
    res.z.assign(p.scores.size(), ComplexMatrix::Zero(full, full));
    res.z.front() = core::identity(static_cast<std::size_t>(full)) / static_cast<double>(p.outer);
    res.converged = true;
    return res;
  }

  BarrierProblem scaled = p;
  for (auto& k : scaled.scores) k = core::hermitize(k / scale);
  const double target = p.tol / scale;
  // the recovered primal lags the dual by almost the whole gap, so aim two
  // digits past the requested tolerance while the numerics allow it
  const double aim = target * 1e-2;

  const auto basis = hermitian_basis(d);
  const auto nb = static_cast<Eigen::Index>(basis.size());
  Eigen::VectorXd trace_coords = coords(core::identity(p.dim), basis);

  ComplexMatrix y = 2.0 * core::identity(p.dim);
  double t = 1.0;
  int iters = 0;
  std::vector<ComplexMatrix> best_z;
  double best_primal = -std::numeric_limits<double>::infinity();
  double best_dual = std::numeric_limits<double>::infinity();
  ComplexMatrix best_y = y;

  while (iters < p.max_iter) {
    // centering
    Evaluation ev = evaluate(y, scaled, t, true);
    bool stalled = true;
    for (int newton = 0; newton < 50 && iters < p.max_iter; ++newton, ++iters) {
      ComplexMatrix gsum = ComplexMatrix::Zero(d, d);
      for (const auto& g : ev.inverses) gsum += trace_outer(g, p.outer, p.dim);
      const Eigen::VectorXd grad = t * trace_coords - coords(gsum, basis);

      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(nb, nb);
      for (const auto& g : ev.inverses) {
        // T(m,i,k,l) = Σ_{α,β} G[(β,m),(α,i)] G[(α,k),(β,l)]
        std::vector<Complex> tt(static_cast<std::size_t>(d * d * d * d), 0.0);
        auto at = [d](Eigen::Index m, Eigen::Index i, Eigen::Index k, Eigen::Index l) {
          return static_cast<std::size_t>(((m * d + i) * d + k) * d + l);
        };
        const auto outer = static_cast<Eigen::Index>(p.outer);
        for (Eigen::Index al = 0; al < outer; ++al) {
          for (Eigen::Index be = 0; be < outer; ++be) {
            const auto g1 = g.block(be * d, al * d, d, d);
            const auto g2 = g.block(al * d, be * d, d, d);
            for (Eigen::Index m = 0; m < d; ++m) {
              for (Eigen::Index i = 0; i < d; ++i) {
                const Complex a = g1(m, i);
                for (Eigen::Index k = 0; k < d; ++k) {
                  for (Eigen::Index l = 0; l < d; ++l) tt[at(m, i, k, l)] += a * g2(k, l);
                }
              }
            }
          }
        }
        for (Eigen::Index a = 0; a < nb; ++a) {
          for (Eigen::Index b = a; b < nb; ++b) {
            Complex s = 0.0;
            for (const auto& ea : basis[static_cast<std::size_t>(a)]) {
              for (const auto& eb : basis[static_cast<std::size_t>(b)]) {
                s += ea.coef * eb.coef * tt[at(eb.col, ea.row, ea.col, eb.row)];
              }
            }
            hess(a, b) += s.real();
          }
        }
      }
      hess = hess.selfadjointView<Eigen::Upper>();

      Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
      const Eigen::VectorXd step = -ldlt.solve(grad);
      const double decrement = -grad.dot(step);
      if (!step.allFinite()) break;
      if (!(decrement > 1e-12)) {
        stalled = false;
        break;
      }

      const ComplexMatrix dy = from_coords(step, basis, d);
      // damped Newton for a self-concordant barrier: 1/(1+λ) keeps the
      // iterate interior and needs no function values, which are dominated
      // by rounding once t is large
      const double lam = std::sqrt(decrement);
      double s = lam > 0.25 ? 1.0 / (1.0 + lam) : 1.0;
      bool moved = false;
      for (int h = 0; h < 60; ++h, s *= 0.5) {
        if (evaluate(y + s * dy, scaled, t, false).feasible) {
          moved = true;
          break;
        }
      }
      if (!moved) break;
      y = core::hermitize(y + s * dy);
      ev = evaluate(y, scaled, t, true);
      if (decrement < 1e-10) {
        ++iters;
        stalled = false;
        break;
      }
    }

    // recover Z_j = G_j / t and rescale so that Σ_j Tr_outer Z_j = I exactly
    ComplexMatrix ssum = ComplexMatrix::Zero(d, d);
    for (const auto& g : ev.inverses) ssum += trace_outer(g, p.outer, p.dim) / t;
    const ComplexMatrix fix = lift(core::spectral_apply(ssum, [](double l) {
      return l > 0.0 ? 1.0 / std::sqrt(l) : 0.0;
    }), p.outer);
    std::vector<ComplexMatrix> z;
    double primal = 0.0;
    for (std::size_t j = 0; j < ev.inverses.size(); ++j) {
      z.push_back(core::hermitize(fix * (ev.inverses[j] / t) * fix));
      primal += (z.back() * scaled.scores[j]).trace().real();
    }
    const double dual = y.trace().real();
    if (primal > best_primal) {
      best_primal = primal;
      best_z = z;
    }
    if (dual < best_dual) {
      best_dual = dual;
      best_y = y;
    }
    const double gap = best_dual - best_primal;
    if (gap <= aim || ((stalled || t > 1e14) && gap <= target)) {
      res.converged = true;
      break;
    }
    if (stalled || t > 1e14) break;
    t *= 10.0;
  }

  res.y = best_y * scale;
  for (auto& z : best_z) res.z.push_back(z);
  res.primal = best_primal * scale;
  res.dual = best_dual * scale;
  res.iterations = iters;
  return res;
}

}  // namespace qadapt::opt::detail
