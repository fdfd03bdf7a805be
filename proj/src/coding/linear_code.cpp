#include "qadapt/coding/linear_code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "qadapt/core/error.hpp"

namespace qadapt::coding {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<BitString>& rows, std::size_t n) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i][c]) rows[i] = rows[i] ^ rows[r];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::size_t min_weight(const std::vector<BitString>& gen, std::size_t n) {
  const std::size_t k = gen.size();
  std::size_t best = n;
  // Gray-code walk through all nonzero messages
  BitString word(n);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(i));
    word = word ^ gen[bit];
    best = std::min(best, word.weight());
  }
  return best;
}

}  // namespace

std::size_t gf2_rank(std::vector<BitString> rows) {
  if (rows.empty()) return 0;
  return rref(rows, rows.front().size()).size();
}

LinearCode::LinearCode(std::vector<BitString> generator_rows) : generator_(std::move(generator_rows)) {
  if (generator_.empty()) throw InputError("generator matrix needs at least one row");
  n_ = generator_.front().size();
  if (n_ == 0 || n_ > kMaxCodeLength) throw InputError("code length must be in [1, 24]");
  for (const auto& r : generator_) {
    if (r.size() != n_) throw InputError("generator rows must share one length");
  }
  auto reduced = generator_;
  const auto pivots = rref(reduced, n_);
  if (pivots.size() != generator_.size()) throw InputError("generator matrix is not full rank");

  // one parity row per free column f: 1 at f, and G_rref[i][f] at pivot p_i
  for (std::size_t c = 0; c < n_; ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_columns_.push_back(c);
  }
  for (std::size_t f : free_columns_) {
    BitString h(n_);
    h.set(f, 1);
    for (std::size_t i = 0; i < pivots.size(); ++i) h.set(pivots[i], reduced[i][f]);
    parity_.push_back(std::move(h));
  }
  d_ = min_weight(generator_, n_);
}

LinearCode LinearCode::repetition(std::size_t n) {
  BitString ones(n);
  for (std::size_t i = 0; i < n; ++i) ones.set(i, 1);
  return LinearCode({ones});
}

LinearCode LinearCode::hamming74() {
  return LinearCode({BitString::parse("1000110"), BitString::parse("0100101"), BitString::parse("0010011"),
                     BitString::parse("0001111")});
}

LinearCode LinearCode::full_space(std::size_t n) {
  std::vector<BitString> rows;
  for (std::size_t i = 0; i < n; ++i) {
    BitString e(n);
    e.set(i, 1);
    rows.push_back(std::move(e));
  }
  return LinearCode(std::move(rows));
}

LinearCode LinearCode::random(std::size_t n, std::size_t k, core::Rng& rng) {
  if (k == 0 || k > n) throw InputError("random code needs 1 ≤ k ≤ n");
  std::bernoulli_distribution coin(0.5);
  for (;;) {
    std::vector<BitString> rows(k, BitString(n));
    for (auto& r : rows) {
      for (std::size_t i = 0; i < n; ++i) r.set(i, coin(rng) ? 1 : 0);
    }
    if (gf2_rank(rows) == k) return LinearCode(std::move(rows));
  }
}

BitString LinearCode::encode(const BitString& message) const {
  if (message.size() != k()) throw InputError("message length must equal k");
  BitString out(n_);
  for (std::size_t i = 0; i < k(); ++i) {
    if (message[i]) out = out ^ generator_[i];
  }
  return out;
}

std::vector<BitString> LinearCode::codewords() const {
  std::vector<BitString> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k()); ++m) out.push_back(encode(BitString::from_index(m, k())));
  return out;
}

BitString LinearCode::syndrome(const BitString& x) const {
  if (x.size() != n_) throw InputError("syndrome: string length must equal n");
  BitString s(parity_.size());
  for (std::size_t i = 0; i < parity_.size(); ++i) s.set(i, inner_product(parity_[i], x));
  return s;
}

BitString LinearCode::coset_leader(const BitString& s) const {
  if (s.size() != parity_.size()) throw InputError("syndrome length must equal n − k");
  // parity row i is the only one touching free column f_i
  BitString x(n_);
  for (std::size_t i = 0; i < free_columns_.size(); ++i) x.set(free_columns_[i], s[i]);
  return x;
}

std::vector<BitString> LinearCode::coset(const BitString& s) const {
  const auto base = coset_leader(s);
  std::vector<BitString> out;
  for (const auto& c : codewords()) out.push_back(base ^ c);
  std::sort(out.begin(), out.end());
  return out;
}

BitString nearest_coset_rep(const LinearCode& code, const BitString& s, const BitString& reference) {
  if (reference.size() != code.n()) throw InputError("reference length must equal n");
  const auto members = code.coset(s);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  const BitString* pick = nullptr;
  for (const auto& m : members) {
    const std::size_t dist = hamming_distance(m, reference);
    if (dist < best) {  // members are sorted, so the first minimum is the smallest
      best = dist;
      pick = &m;
    }
  }
  return *pick;
}

core::Json code_to_json(const LinearCode& code) {
  core::Json rows = core::Json::array();
  for (const auto& r : code.generator()) rows.push_back(r.str());
  return {{"n", code.n()}, {"k", code.k()}, {"G", rows}, {"d", code.d()}};
}

LinearCode code_from_json(const core::Json& j) {
  if (!j.contains("G") || !j.at("G").is_array()) throw InputError("code payload needs a 'G' array");
  std::vector<BitString> rows;
  for (const auto& r : j.at("G")) rows.push_back(BitString::parse(r.get<std::string>()));
  LinearCode code(std::move(rows));
  if (j.contains("n") && j.at("n").get<std::size_t>() != code.n()) throw InputError("stored n does not match G");
  if (j.contains("k") && j.at("k").get<std::size_t>() != code.k()) throw InputError("stored k does not match G");
  if (j.contains("d") && j.at("d").get<std::size_t>() != code.d()) {
    throw InputError("stored d = " + std::to_string(j.at("d").get<std::size_t>()) + " but the code has d = " +
                     std::to_string(code.d()));
  }
  return code;
}

LinearCode named_code(const std::string& name) {
  if (name == "hamming74") return LinearCode::hamming74();
  auto number = [&](std::size_t prefix) -> std::size_t {
    try {
      return static_cast<std::size_t>(std::stoul(name.substr(prefix)));
    } catch (const std::exception&) {
      throw InputError("unknown code name '" + name + "'");
    }
  };
  if (name.rfind("rep", 0) == 0) return LinearCode::repetition(number(3));
  if (name.rfind("full", 0) == 0) return LinearCode::full_space(number(4));
  throw InputError("unknown code name '" + name + "' (try hamming74, rep3, full4)");
}

std::vector<LinearCode> gv_codes(std::size_t n, std::size_t k, std::size_t trials, std::uint64_t seed) {
  auto rng = core::make_rng(seed, 0x6776);
  std::vector<LinearCode> out;
  for (std::size_t t = 0; t < trials; ++t) out.push_back(LinearCode::random(n, k, rng));
  return out;
}

GvSample gilbert_varshamov_sample(std::size_t n, double rate, double tau, std::size_t trials,
                                  std::uint64_t seed) {
  if (n == 0 || n > 20) throw InputError("Gilbert–Varshamov sampling needs 1 ≤ n ≤ 20");
  if (!(rate > 0.0 && rate <= 1.0) || !(tau >= 0.0 && tau <= 0.5)) {
    throw InputError("Gilbert–Varshamov sampling needs rate in (0, 1] and τ in [0, ½]");
  }
  GvSample out;
  out.trials = trials;
  out.k = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(rate * static_cast<double>(n))));
  out.threshold = static_cast<std::size_t>(std::ceil(tau * static_cast<double>(n) - 1e-9));
  out.in_gv_region = rate < 1.0 - binary_entropy(tau);
  for (const auto& code : gv_codes(n, out.k, trials, seed)) {
    if (code.d() >= out.threshold) ++out.hits;
  }
  out.frequency = trials == 0 ? 0.0 : static_cast<double>(out.hits) / static_cast<double>(trials);
  return out;
}

}  // namespace qadapt::coding
