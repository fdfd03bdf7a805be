#include "qadapt/protocol/bcjl.hpp"

#include <bit>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "qadapt/core/error.hpp"
#include "qadapt/core/random.hpp"
#include "qadapt/protocol/onecc.hpp"

namespace qadapt::protocol {

using core::ComplexMatrix;

namespace {

constexpr std::size_t kMaxVerifierQubits = 10;
constexpr std::size_t kMaxEnumerationQubits = 8;
constexpr std::size_t kMaxHidingQubits = 6;

// ⊗_i H^{θ_i}
ComplexMatrix basis_change(const BitString& theta) {
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  ComplexMatrix u = ComplexMatrix::Identity(1, 1);
  for (std::size_t i = 0; i < theta.size(); ++i) u = core::tensor(u, theta[i] ? h : core::identity(2));
  return u;
}

double top_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

double na_bound(const coding::LinearCode& code, double delta) {
  const double n = static_cast<double>(code.n());
  return 1.0 + std::pow(2.0, -0.5 * double(code.d()) + delta * n + coding::binary_entropy(delta) * n);
}

std::vector<BitString> hash_class(const coding::LinearCode& code, const BitString& s, const BitString& r,
                                  std::uint8_t w, std::uint8_t bit) {
  std::vector<BitString> out;
  for (const auto& x : code.coset(s)) {
    if ((coding::inner_product(r, x) ^ w) == bit) out.push_back(x);
  }
  return out;
}

}  // namespace

ComplexMatrix bcjl_verifier(const BitString& x, const BitString& theta, double delta) {
  if (x.size() != theta.size() || x.size() > kMaxVerifierQubits) {
    throw InputError("verifier needs matching lengths and n ≤ 10");
  }
  const auto dim = Eigen::Index(1) << x.size();
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (const auto& z : coding::hamming_ball(x, delta)) diag(Eigen::Index(z.to_index())) = 1.0;
  const ComplexMatrix u = basis_change(theta);
  return u * diag.cast<core::Complex>().asDiagonal() * u.adjoint();
}

double max_ball_overlap(const BitString& x, const BitString& theta, const BitString& xp, const BitString& thetap,
                        double delta) {
  double best = 0.0;
  const auto ball = coding::hamming_ball(x, delta);
  const auto ballp = coding::hamming_ball(xp, delta);
  for (const auto& z : ball) {
    for (const auto& zp : ballp) {
      double v = 1.0;
      for (std::size_t i = 0; i < z.size() && v > 0; ++i) {
        if (theta[i] == thetap[i]) {
          v = z[i] == zp[i] ? v : 0.0;
        } else {
          v /= std::sqrt(2.0);
        }
      }
      best = std::max(best, v);
    }
  }
  return best;
}

BcjlNaReport bcjl_na_binding(const BcjlNaConfig& cfg) {
  const auto& code = cfg.code;
  const std::size_t n = code.n();
  if (n > kMaxEnumerationQubits) throw InputError("BCJL enumeration is limited to n ≤ 8");
  std::vector<BitString> syndromes, hashes;
  if (cfg.s) {
    syndromes.push_back(*cfg.s);
  } else {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << (n - code.k())); ++i) syndromes.push_back(BitString::from_index(i, n - code.k()));
  }
  if (cfg.hash) {
    hashes.push_back(*cfg.hash);
  } else {
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) hashes.push_back(BitString::from_index(i, n));
  }
  const std::uint64_t thetas = std::uint64_t{1} << n;
  std::uint64_t total = 0;
  for (const auto& s : syndromes) {
    for (const auto& r : hashes) total += hash_class(code, s, r, cfg.w, 0).size() * hash_class(code, s, r, cfg.w, 1).size() * thetas * thetas;
  }
  BcjlNaReport rep;
  rep.bound = na_bound(code, cfg.delta);
  rep.full_enumeration = cfg.sample_pairs == 0;
  if (rep.full_enumeration && total > cfg.enumeration_budget) {
    throw InputError("full enumeration needs " + std::to_string(total) + " pairs, over the budget of " +
                     std::to_string(cfg.enumeration_budget) + "; declare a sampled restriction");
  }
  if (!rep.full_enumeration) {
    rep.restriction = std::to_string(cfg.sample_pairs) + " uniformly sampled (x, θ, x', θ') pairs per commitment, seed " +
                      std::to_string(cfg.seed);
  }
  const double ball = double(coding::ball_size(n, coding::ball_radius(n, cfg.delta)));
  auto rng = core::make_rng(cfg.seed, 0xbc71);
  auto evaluate = [&](const BitString& x0, const BitString& t0, const BitString& x1, const BitString& t1) {
    const ComplexMatrix v0 = bcjl_verifier(x0, t0, cfg.delta);
    const ComplexMatrix v1 = bcjl_verifier(x1, t1, cfg.delta);
    const double sum = top_eigenvalue(core::hermitize(v0 + v1));
    const double prod = core::spectral_norm(v0 * v1);
    const double rhs = max_ball_overlap(x0, t0, x1, t1, cfg.delta) * ball;
    if (prod > rhs + 1e-9) ++rep.overlap_failures;
    if (rhs > 0) rep.max_overlap_ratio = std::max(rep.max_overlap_ratio, prod / rhs);
    rep.max_sum = std::max(rep.max_sum, sum);
    ++rep.pairs;
  };
  for (const auto& s : syndromes) {
    for (const auto& r : hashes) {
      const auto x0s = hash_class(code, s, r, cfg.w, 0);
      const auto x1s = hash_class(code, s, r, cfg.w, 1);
      if (x0s.empty() || x1s.empty()) continue;
      ++rep.commitments;
      if (rep.full_enumeration) {
        for (const auto& x0 : x0s) {
          for (const auto& x1 : x1s) {
            for (std::uint64_t a = 0; a < thetas; ++a) {
              for (std::uint64_t b = 0; b < thetas; ++b) {
                evaluate(x0, BitString::from_index(a, n), x1, BitString::from_index(b, n));
              }
            }
          }
        }
      } else {
        std::uniform_int_distribution<std::size_t> p0(0, x0s.size() - 1), p1(0, x1s.size() - 1);
        std::uniform_int_distribution<std::uint64_t> pt(0, thetas - 1);
        for (std::size_t i = 0; i < cfg.sample_pairs; ++i) {
          const auto& x0 = x0s[p0(rng)];
          const auto& x1 = x1s[p1(rng)];
          const auto t0 = BitString::from_index(pt(rng), n);
          evaluate(x0, t0, x1, BitString::from_index(pt(rng), n));
        }
      }
    }
  }
  rep.pass = rep.max_sum <= rep.bound + 1e-9 && rep.overlap_failures == 0;
  return rep;
}

commit::ProjectiveCommitmentScheme bcjl_scheme(const coding::LinearCode& code, double delta, const BitString& s,
                                               const BitString& hash, std::uint8_t w, std::size_t max_openings,
                                               std::uint64_t theta_offset) {
  const std::size_t n = code.n();
  if (n > kMaxVerifierQubits) throw InputError("BCJL scheme is limited to n ≤ 10");
  const std::uint64_t thetas = std::uint64_t{1} << n;
  std::array<std::vector<commit::Opening>, 2> lists;
  for (std::uint8_t bit = 0; bit < 2; ++bit) {
    for (const auto& x : hash_class(code, s, hash, w, bit)) {
      for (std::uint64_t t = 0; t < thetas && lists[bit].size() < max_openings; ++t) {
        const auto theta = BitString::from_index((theta_offset + t) % thetas, n);
        lists[bit].push_back({x.str() + "/" + theta.str(), bcjl_verifier(x, theta, delta)});
      }
    }
    if (lists[bit].empty()) throw InputError("commitment has no opening to bit " + std::to_string(bit));
  }
  return commit::ProjectiveCommitmentScheme(std::move(lists));
}

EquivalenceStats bcjl_equivalence_mc(double delta, std::size_t n, std::size_t mismatches, std::size_t runs,
                                     std::uint64_t seed) {
  if (n == 0 || n > 64 || mismatches > n) throw InputError("equivalence run needs 1 ≤ n ≤ 64 and mismatches ≤ n");
  if (double(mismatches) <= delta * double(n)) throw InputError("mismatch count must exceed δn");
  EquivalenceStats st;
  st.runs = runs;
  st.bound = std::pow(2.0, -delta * double(n));
  if (mismatches <= 20) {
    // every tested-position pattern on the mismatched positions is equally likely
    std::uint64_t agree = 0;
    const std::uint64_t patterns = std::uint64_t{1} << mismatches;
    for (std::uint64_t p = 0; p < patterns; ++p) agree += p == 0 ? 1 : 0;
    st.exact = double(agree) / double(patterns);
  } else {
    st.exact = std::pow(0.5, double(mismatches));
  }
  auto rng = core::make_rng(seed, 0x1e5);
  std::bernoulli_distribution tested(0.5);
  std::size_t hits = 0;
  for (std::size_t run = 0; run < runs; ++run) {
    bool all_agree = true;
    for (std::size_t i = 0; i < n; ++i) {
      const bool t = tested(rng);
      if (i < mismatches && t) all_agree = false;
    }
    hits += all_agree ? 1 : 0;
  }
  st.frequency = runs ? double(hits) / double(runs) : 0.0;
  st.sigma = runs ? std::sqrt(st.exact * (1 - st.exact) / double(runs)) : 0.0;
  st.pass = st.frequency <= st.bound + 3 * st.sigma && std::abs(st.frequency - st.exact) <= 3 * st.sigma + 1e-12;
  return st;
}

std::vector<double> bcjl_view_distribution(const coding::LinearCode& code, std::uint8_t b) {
  const std::size_t n = code.n();
  if (n > kMaxHidingQubits) throw InputError("exact hiding enumeration is limited to n ≤ 6");
  const std::uint64_t size = std::uint64_t{1} << n;
  const std::uint64_t syn = std::uint64_t{1} << (n - code.k());
  std::vector<double> p(size * size * syn * 2, 0.0);
  // x̂ given x: each bit kept with probability ¾ (random basis, random outcome on mismatch)
  for (std::uint64_t xi = 0; xi < size; ++xi) {
    const auto x = BitString::from_index(xi, n);
    const std::uint64_t s = code.syndrome(x).to_index();
    for (std::uint64_t xh = 0; xh < size; ++xh) {
      const auto dist = static_cast<double>(std::popcount(xi ^ xh));
      const double channel = std::pow(0.75, double(n) - dist) * std::pow(0.25, dist);
      for (std::uint64_t ri = 0; ri < size; ++ri) {
        const std::uint8_t w = coding::inner_product(BitString::from_index(ri, n), x) ^ b;
        p[((xh * size + ri) * syn + s) * 2 + w] += channel / double(size * size);
      }
    }
  }
  return p;
}

HidingReport bcjl_hiding_exact(const coding::LinearCode& code) {
  const auto p0 = bcjl_view_distribution(code, 0);
  const auto p1 = bcjl_view_distribution(code, 1);
  HidingReport rep;
  for (std::size_t i = 0; i < p0.size(); ++i) rep.distance += 0.5 * std::abs(p0[i] - p1[i]);
  const double gamma = theta_guessing_analysis(1, 0.0, 1.0).gamma;
  const double n = static_cast<double>(code.n());
  rep.hmin_used = n * std::log2(1.0 / gamma) - (n - double(code.k()));
  rep.bound = std::pow(2.0, -(rep.hmin_used - 1.0) / 2.0);
  rep.vacuous = rep.bound >= 1.0;
  rep.pass = rep.distance <= rep.bound + 1e-9;
  return rep;
}

core::Json bcjl_na_to_json(const BcjlNaReport& r) {
  return {{"max_sum", r.max_sum},
          {"bound", r.bound},
          {"pairs", r.pairs},
          {"commitments", r.commitments},
          {"full_enumeration", r.full_enumeration},
          {"restriction", r.restriction},
          {"overlap_failures", r.overlap_failures},
          {"max_overlap_ratio", r.max_overlap_ratio},
          {"pass", r.pass}};
}

core::Json equivalence_to_json(const EquivalenceStats& s) {
  return {{"runs", s.runs}, {"frequency", s.frequency}, {"exact", s.exact},
          {"bound", s.bound}, {"sigma", s.sigma},         {"pass", s.pass}};
}

core::Json hiding_to_json(const HidingReport& r) {
  return {{"distance", r.distance}, {"hmin_used", r.hmin_used}, {"bound", r.bound},
          {"vacuous", r.vacuous},   {"pass", r.pass}};
}

}  // namespace qadapt::protocol
