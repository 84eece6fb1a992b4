#include "ridpolar/rid_oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "ridpolar/exact_linalg.hpp"
#include "ridpolar/hadamard.hpp"
#include "ridpolar/rng.hpp"

namespace ridpolar {
namespace {

// Outcome of one continuity pattern: integer rank quantities per output slot.
using PatternFn = std::function<void(std::span<const std::size_t> continuous,
                                     std::span<std::int64_t> out)>;

// Integer matrix with a 64-bit copy for the fast restricted-rank path.
class RankSource {
 public:
  explicit RankSource(const IntMatrix& m) : m_(m) {
    dense_.reserve(m.entries().size());
    for (const auto& v : m.entries()) {
      if (v > std::numeric_limits<std::int64_t>::max() ||
          v < std::numeric_limits<std::int64_t>::min()) {
        dense_.clear();
        fits_ = false;
        return;
      }
      dense_.push_back(static_cast<std::int64_t>(v));
    }
  }

  std::size_t rank_on(std::span<const std::size_t> cols) const {
    if (cols.empty() || m_.rows() == 0) return 0;
    if (!fits_) {
      std::vector<std::size_t> one_based(cols.begin(), cols.end());
      for (auto& c : one_based) ++c;
      return rank_int(m_, ColumnSet(std::move(one_based)));
    }
    std::vector<std::int64_t> sub(m_.rows() * cols.size());
    for (std::size_t r = 0; r < m_.rows(); ++r)
      for (std::size_t j = 0; j < cols.size(); ++j)
        sub[r * cols.size() + j] = dense_[r * m_.cols() + cols[j]];
    return rank_int(sub, m_.rows(), cols.size());
  }

 private:
  const IntMatrix& m_;
  std::vector<std::int64_t> dense_;
  bool fits_ = true;
};

template <class Real>
Real power(const Real& base, std::size_t e) {
  Real out = 1;
  for (std::size_t i = 0; i < e; ++i) out *= base;
  return out;
}

// E over all 2^k patterns of `fn`, with column j continuous with
// probability deltas[j]. Columns sharing a delta value form one class, and
// outcomes are tallied by per-class continuous counts so that each
// probability is formed once per count vector.
template <class Real>
std::vector<Real> expect_exact(const std::vector<Real>& deltas, std::size_t out_len,
                               const PatternFn& fn) {
  const std::size_t k = deltas.size();
  std::vector<std::size_t> cls(k);
  std::vector<Real> class_delta;
  std::vector<std::size_t> class_size;
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t c = 0;
    while (c < class_delta.size() && !(class_delta[c] == deltas[j])) ++c;
    if (c == class_delta.size()) {
      class_delta.push_back(deltas[j]);
      class_size.push_back(0);
    }
    cls[j] = c;
    ++class_size[c];
  }
  std::vector<std::size_t> stride(class_size.size());
  std::size_t keys = 1;
  for (std::size_t c = 0; c < class_size.size(); ++c) {
    stride[c] = keys;
    keys *= class_size[c] + 1;
  }

  std::vector<std::int64_t> tally(keys * out_len, 0);
  std::vector<std::int64_t> out(out_len);
  std::vector<std::size_t> continuous;
  continuous.reserve(k);
  const std::uint64_t patterns = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    continuous.clear();
    std::size_t key = 0;
    for (std::size_t j = 0; j < k; ++j)
      if ((mask >> j) & 1U) {
        continuous.push_back(j);
        key += stride[cls[j]];
      }
    std::fill(out.begin(), out.end(), 0);
    fn(continuous, out);
    for (std::size_t o = 0; o < out_len; ++o) tally[key * out_len + o] += out[o];
  }

  std::vector<Real> result(out_len, Real(0));
  std::vector<std::size_t> counts(class_size.size());
  for (std::size_t key = 0; key < keys; ++key) {
    std::size_t rest = key;
    Real prob = 1;
    for (std::size_t c = class_size.size(); c-- > 0;) {
      counts[c] = rest / stride[c];
      rest %= stride[c];
      prob *= power(class_delta[c], counts[c]) *
              power(Real(1) - class_delta[c], class_size[c] - counts[c]);
    }
    if (prob == 0) continue;
    for (std::size_t o = 0; o < out_len; ++o)
      if (tally[key * out_len + o] != 0) result[o] += prob * Real(tally[key * out_len + o]);
  }
  return result;
}

struct McResult {
  std::vector<double> mean;
  std::vector<double> std_error;
};

McResult expect_mc(const std::vector<double>& deltas, std::size_t out_len, std::size_t trials,
                   std::uint64_t seed, const PatternFn& fn) {
  if (trials == 0) throw std::invalid_argument("Monte Carlo: trials must be >= 1");
  std::vector<double> sum(out_len, 0.0), sum_sq(out_len, 0.0);
  std::vector<std::int64_t> out(out_len);
  std::vector<std::size_t> continuous;
  for (std::size_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, t);
    continuous.clear();
    for (std::size_t j = 0; j < deltas.size(); ++j)
      if (rng.bernoulli(deltas[j])) continuous.push_back(j);
    std::fill(out.begin(), out.end(), 0);
    fn(continuous, out);
    for (std::size_t o = 0; o < out_len; ++o) {
      const auto v = static_cast<double>(out[o]);
      sum[o] += v;
      sum_sq[o] += v * v;
    }
  }
  McResult r{std::vector<double>(out_len), std::vector<double>(out_len, 0.0)};
  const auto n = static_cast<double>(trials);
  for (std::size_t o = 0; o < out_len; ++o) {
    r.mean[o] = sum[o] / n;
    if (trials > 1) {
      const double var = std::max(0.0, (sum_sq[o] - n * r.mean[o] * r.mean[o]) / (n - 1.0));
      r.std_error[o] = std::sqrt(var / n);
    }
  }
  return r;
}

void check_deltas_double(const std::vector<double>& deltas, std::size_t cols) {
  if (deltas.size() != cols)
    throw std::invalid_argument("deltas: expected " + std::to_string(cols) +
                                " entries (one per column of A), got " +
                                std::to_string(deltas.size()));
  for (std::size_t j = 0; j < deltas.size(); ++j)
    if (!(deltas[j] >= 0.0 && deltas[j] <= 1.0))
      throw std::invalid_argument("deltas[" + std::to_string(j) + "]: value " +
                                  std::to_string(deltas[j]) + " outside [0, 1]");
}

void check_deltas_rational(const std::vector<Rational>& deltas, std::size_t cols) {
  if (deltas.size() != cols)
    throw std::invalid_argument("deltas: expected " + std::to_string(cols) +
                                " entries (one per column of A), got " +
                                std::to_string(deltas.size()));
  for (std::size_t j = 0; j < deltas.size(); ++j)
    if (deltas[j] < 0 || deltas[j] > 1)
      throw std::invalid_argument("deltas[" + std::to_string(j) + "]: outside [0, 1]");
}

void check_enumerable(std::size_t k, const OracleLimits& limits) {
  if (k > limits.max_exact_columns || k >= 64)
    throw std::invalid_argument("exact enumeration: " + std::to_string(k) +
                                " columns exceeds limit " +
                                std::to_string(limits.max_exact_columns));
}

void check_same_cols(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("B: expected " + std::to_string(a.cols()) +
                                " columns to match A, got " + std::to_string(b.cols()));
}

PatternFn rank_fn(const RankSource& a) {
  return [&a](std::span<const std::size_t> cont, std::span<std::int64_t> out) {
    out[0] = static_cast<std::int64_t>(a.rank_on(cont));
  };
}

PatternFn residual_fn(const RankSource& stacked, const RankSource& b) {
  return [&stacked, &b](std::span<const std::size_t> cont, std::span<std::int64_t> out) {
    out[0] = static_cast<std::int64_t>(stacked.rank_on(cont)) -
             static_cast<std::int64_t>(b.rank_on(cont));
  };
}

// Rows 1..N of H_N (or its shuffled variant) as 64-bit sign vectors.
std::vector<std::vector<std::int64_t>> profile_rows(unsigned n, RowOrder order) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::vector<std::int64_t>> rows;
  rows.reserve(size);
  if (order == RowOrder::kSylvester) {
    for (std::size_t i = 1; i <= size; ++i) rows.push_back(hadamard_row(n, i));
  } else {
    for (std::size_t i : shuffled_row_order(n)) rows.push_back(hadamard_row(n, i));
  }
  return rows;
}

// Increment of rank as each row is appended, restricted to `cont`.
PatternFn prefix_influence_fn(const std::vector<std::vector<std::int64_t>>& rows) {
  return [&rows](std::span<const std::size_t> cont, std::span<std::int64_t> out) {
    IncrementalRank basis(cont.size());
    std::vector<std::int64_t> restricted(cont.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (cont.empty()) {
        out[i] = 0;
        continue;
      }
      for (std::size_t j = 0; j < cont.size(); ++j) restricted[j] = rows[i][cont[j]];
      out[i] = basis.add(restricted) ? 1 : 0;
    }
  };
}

// Kronecker rows h_i (x) v^T, column (j, l) at j * k + l.
std::vector<std::vector<std::int64_t>> kron_rows(unsigned n, const std::vector<std::int64_t>& v) {
  const std::size_t size = std::size_t{1} << n;
  const std::size_t k = v.size();
  std::vector<std::vector<std::int64_t>> rows;
  rows.reserve(size);
  for (std::size_t i = 1; i <= size; ++i) {
    const auto h = hadamard_row(n, i);
    std::vector<std::int64_t> row(size * k);
    for (std::size_t j = 0; j < size; ++j)
      for (std::size_t l = 0; l < k; ++l) row[j * k + l] = h[j] * v[l];
    rows.push_back(std::move(row));
  }
  return rows;
}

// out[0..N) = I increments, out[N..2N) = J increments.
PatternFn joint_fn(const std::vector<std::vector<std::int64_t>>& x_rows,
                   const std::vector<std::vector<std::int64_t>>& y_rows) {
  return [&x_rows, &y_rows](std::span<const std::size_t> cont, std::span<std::int64_t> out) {
    const std::size_t size = x_rows.size();
    if (cont.empty()) return;
    IncrementalRank basis(cont.size());
    std::vector<std::int64_t> restricted(cont.size());
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < cont.size(); ++j) restricted[j] = x_rows[i][cont[j]];
      out[i] = basis.add(restricted) ? 1 : 0;
    }
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < cont.size(); ++j) restricted[j] = y_rows[i][cont[j]];
      out[size + i] = basis.add(restricted) ? 1 : 0;
    }
  };
}

void check_generators(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                      std::size_t deltas) {
  if (a.empty()) throw std::invalid_argument("a: generator vector is empty");
  if (b.size() != a.size())
    throw std::invalid_argument("b: expected " + std::to_string(a.size()) + " entries, got " +
                                std::to_string(b.size()));
  if (deltas != a.size())
    throw std::invalid_argument("deltas: expected " + std::to_string(a.size()) + " entries, got " +
                                std::to_string(deltas));
}

}  // namespace

// ---------------------------------------------------------------------------

void LinearModel::validate() const { check_deltas_double(deltas, a.cols()); }

double rid_exact(const LinearModel& m, const OracleLimits& limits) {
  m.validate();
  check_enumerable(m.a.cols(), limits);
  RankSource src(m.a);
  return expect_exact<double>(m.deltas, 1, rank_fn(src))[0];
}

Rational rid_exact(const IntMatrix& a, const std::vector<Rational>& deltas,
                   const OracleLimits& limits) {
  check_deltas_rational(deltas, a.cols());
  check_enumerable(a.cols(), limits);
  RankSource src(a);
  return expect_exact<Rational>(deltas, 1, rank_fn(src))[0];
}

double cond_rid_exact(const LinearModel& m, const IntMatrix& b, const OracleLimits& limits) {
  m.validate();
  check_same_cols(m.a, b);
  check_enumerable(m.a.cols(), limits);
  const IntMatrix stacked = IntMatrix::stack(m.a, b);
  RankSource s(stacked), sb(b);
  return expect_exact<double>(m.deltas, 1, residual_fn(s, sb))[0];
}

Rational cond_rid_exact(const IntMatrix& a, const std::vector<Rational>& deltas, const IntMatrix& b,
                        const OracleLimits& limits) {
  check_deltas_rational(deltas, a.cols());
  check_same_cols(a, b);
  check_enumerable(a.cols(), limits);
  const IntMatrix stacked = IntMatrix::stack(a, b);
  RankSource s(stacked), sb(b);
  return expect_exact<Rational>(deltas, 1, residual_fn(s, sb))[0];
}

McEstimate rid_mc(const LinearModel& m, std::size_t trials, std::uint64_t seed) {
  m.validate();
  RankSource src(m.a);
  auto r = expect_mc(m.deltas, 1, trials, seed, rank_fn(src));
  return {r.mean[0], r.std_error[0]};
}

McEstimate cond_rid_mc(const LinearModel& m, const IntMatrix& b, std::size_t trials,
                       std::uint64_t seed) {
  m.validate();
  check_same_cols(m.a, b);
  const IntMatrix stacked = IntMatrix::stack(m.a, b);
  RankSource s(stacked), sb(b);
  auto r = expect_mc(m.deltas, 1, trials, seed, residual_fn(s, sb));
  return {r.mean[0], r.std_error[0]};
}

double renyi_info(const LinearModel& m, const IntMatrix& b, const OracleLimits& limits) {
  return rid_exact(m, limits) - cond_rid_exact(m, b, limits);
}

Rational renyi_info(const IntMatrix& a, const std::vector<Rational>& deltas, const IntMatrix& b,
                    const OracleLimits& limits) {
  return rid_exact(a, deltas, limits) - cond_rid_exact(a, deltas, b, limits);
}

// ---------------------------------------------------------------------------

ProfileEstimate hadamard_rid_profile(unsigned n, double delta, OracleMethod method,
                                     std::size_t trials, std::uint64_t seed, RowOrder order,
                                     const OracleLimits& limits) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("delta: value " + std::to_string(delta) + " outside [0, 1]");
  if (n > limits.max_mc_level)
    throw std::invalid_argument("hadamard_rid_profile: level " + std::to_string(n) +
                                " exceeds limit " + std::to_string(limits.max_mc_level));
  const std::size_t size = std::size_t{1} << n;
  if (method == OracleMethod::kExact && size > limits.max_exact_profile_columns)
    throw std::invalid_argument("hadamard_rid_profile: N = " + std::to_string(size) +
                                " exceeds the exact limit " +
                                std::to_string(limits.max_exact_profile_columns));
  const auto rows = profile_rows(n, order);
  const std::vector<double> deltas(size, delta);
  ProfileEstimate p;
  if (method == OracleMethod::kExact) {
    p.values = expect_exact<double>(deltas, size, prefix_influence_fn(rows));
    p.std_errors.assign(size, 0.0);
  } else {
    auto r = expect_mc(deltas, size, trials, seed, prefix_influence_fn(rows));
    p.values = std::move(r.mean);
    p.std_errors = std::move(r.std_error);
  }
  return p;
}

std::vector<Rational> hadamard_rid_profile_rational(unsigned n, const Rational& delta,
                                                    RowOrder order, const OracleLimits& limits) {
  if (delta < 0 || delta > 1) throw std::invalid_argument("delta: outside [0, 1]");
  const std::size_t size = std::size_t{1} << std::min(n, 30U);
  if (size > limits.max_exact_profile_columns)
    throw std::invalid_argument("hadamard_rid_profile: N = " + std::to_string(size) +
                                " exceeds the exact limit " +
                                std::to_string(limits.max_exact_profile_columns));
  const auto rows = profile_rows(n, order);
  return expect_exact<Rational>(std::vector<Rational>(size, delta), size,
                                prefix_influence_fn(rows));
}

JointProfile joint_rid_profile(unsigned n, const std::vector<std::int64_t>& a,
                               const std::vector<std::int64_t>& b, const std::vector<double>& deltas,
                               OracleMethod method, std::size_t trials, std::uint64_t seed,
                               const OracleLimits& limits) {
  check_generators(a, b, deltas.size());
  check_deltas_double(deltas, a.size());
  if (n > limits.max_mc_level)
    throw std::invalid_argument("joint_rid_profile: level " + std::to_string(n) + " too large");
  const std::size_t size = std::size_t{1} << n;
  const std::size_t k = a.size();
  if (method == OracleMethod::kExact && size * k > limits.max_exact_profile_columns)
    throw std::invalid_argument("joint_rid_profile: k*N = " + std::to_string(size * k) +
                                " exceeds the exact limit " +
                                std::to_string(limits.max_exact_profile_columns));
  const auto x_rows = kron_rows(n, a);
  const auto y_rows = kron_rows(n, b);
  std::vector<double> col_deltas(size * k);
  for (std::size_t j = 0; j < size; ++j)
    for (std::size_t l = 0; l < k; ++l) col_deltas[j * k + l] = deltas[l];

  JointProfile out;
  if (method == OracleMethod::kExact) {
    auto v = expect_exact<double>(col_deltas, 2 * size, joint_fn(x_rows, y_rows));
    out.i_profile.values.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(size));
    out.j_profile.values.assign(v.begin() + static_cast<std::ptrdiff_t>(size), v.end());
    out.i_profile.std_errors.assign(size, 0.0);
    out.j_profile.std_errors.assign(size, 0.0);
  } else {
    auto r = expect_mc(col_deltas, 2 * size, trials, seed, joint_fn(x_rows, y_rows));
    const auto mid = static_cast<std::ptrdiff_t>(size);
    out.i_profile.values.assign(r.mean.begin(), r.mean.begin() + mid);
    out.j_profile.values.assign(r.mean.begin() + mid, r.mean.end());
    out.i_profile.std_errors.assign(r.std_error.begin(), r.std_error.begin() + mid);
    out.j_profile.std_errors.assign(r.std_error.begin() + mid, r.std_error.end());
  }
  return out;
}

JointProfileRational joint_rid_profile_rational(unsigned n, const std::vector<std::int64_t>& a,
                                                const std::vector<std::int64_t>& b,
                                                const std::vector<Rational>& deltas,
                                                const OracleLimits& limits) {
  check_generators(a, b, deltas.size());
  check_deltas_rational(deltas, a.size());
  const std::size_t size = std::size_t{1} << std::min(n, 30U);
  const std::size_t k = a.size();
  if (size * k > limits.max_exact_profile_columns)
    throw std::invalid_argument("joint_rid_profile: k*N = " + std::to_string(size * k) +
                                " exceeds the exact limit " +
                                std::to_string(limits.max_exact_profile_columns));
  const auto x_rows = kron_rows(n, a);
  const auto y_rows = kron_rows(n, b);
  std::vector<Rational> col_deltas(size * k);
  for (std::size_t j = 0; j < size; ++j)
    for (std::size_t l = 0; l < k; ++l) col_deltas[j * k + l] = deltas[l];
  auto v = expect_exact<Rational>(col_deltas, 2 * size, joint_fn(x_rows, y_rows));
  JointProfileRational out;
  out.i_profile.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(size));
  out.j_profile.assign(v.begin() + static_cast<std::ptrdiff_t>(size), v.end());
  return out;
}

// ---------------------------------------------------------------------------

LinearModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("model: expected a JSON object");
  if (!j.contains("A")) throw std::invalid_argument("A: missing");
  if (!j.contains("deltas")) throw std::invalid_argument("deltas: missing");
  const auto& ja = j.at("A");
  if (!ja.is_array()) throw std::invalid_argument("A: expected an array of rows");
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t r = 0; r < ja.size(); ++r) {
    const auto& jr = ja[r];
    if (!jr.is_array())
      throw std::invalid_argument("A[" + std::to_string(r) + "]: expected an array");
    std::vector<std::int64_t> row;
    for (std::size_t c = 0; c < jr.size(); ++c) {
      if (!jr[c].is_number_integer())
        throw std::invalid_argument("A[" + std::to_string(r) + "][" + std::to_string(c) +
                                    "]: expected an integer");
      row.push_back(jr[c].get<std::int64_t>());
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("A[" + std::to_string(r) + "]: row length " +
                                  std::to_string(row.size()) + " differs from row 0");
    rows.push_back(std::move(row));
  }
  const auto& jd = j.at("deltas");
  if (!jd.is_array()) throw std::invalid_argument("deltas: expected an array");
  LinearModel m;
  std::size_t cols_if_empty = 0;
  if (rows.empty()) cols_if_empty = jd.size();
  m.a = IntMatrix::from_rows(rows, cols_if_empty);
  for (std::size_t i = 0; i < jd.size(); ++i) {
    if (!jd[i].is_number())
      throw std::invalid_argument("deltas[" + std::to_string(i) + "]: expected a number");
    m.deltas.push_back(jd[i].get<double>());
  }
  m.validate();
  return m;
}

nlohmann::json model_to_json(const LinearModel& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.a.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.a.cols(); ++c)
      row.push_back(static_cast<std::int64_t>(m.a.at(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"A", rows}, {"deltas", m.deltas}};
}

}  // namespace ridpolar
