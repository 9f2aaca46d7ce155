// SPDX-License-Identifier: MIT
#include "tenx/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace tenx {

namespace {

constexpr double kDegenerateNorm = 1e-150;

/// Nonzero entries of a tensor: digit strings (stride = order) and values.
struct Support {
  std::size_t order = 0;
  std::vector<std::uint32_t> digits;  // size = count * order
  std::vector<double> values;

  [[nodiscard]] std::size_t count() const noexcept { return values.size(); }
};

Support build_support(const DenseTensor& t) {
  Support s;
  s.order = t.order();
  for_each_index(t.shape(), [&](std::size_t flat, const Index& index) {
    const double v = t[flat];
    if (v == 0.0) return;
    for (std::size_t k = 0; k < index.size(); ++k) {
      s.digits.push_back(static_cast<std::uint32_t>(index[k]));
    }
    s.values.push_back(v);
  });
  return s;
}

double vector_norm(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

/// Normalizes in place; returns the prior norm (0 if degenerate, v untouched).
double normalize(std::vector<double>& v) {
  const double n = vector_norm(v);
  if (n < kDegenerateNorm) return 0.0;
  for (double& x : v) x /= n;
  return n;
}

/// Contraction of all modes except k against xs; writes into g.
void gradient(const Support& s, const std::vector<std::vector<double>>& xs, std::size_t k,
              std::vector<double>& g) {
  std::fill(g.begin(), g.end(), 0.0);
  const std::size_t d = s.order;
  for (std::size_t e = 0; e < s.count(); ++e) {
    const std::uint32_t* digit = &s.digits[e * d];
    double prod = s.values[e];
    for (std::size_t j = 0; j < d; ++j) {
      if (j != k) prod *= xs[j][digit[j]];
    }
    g[digit[k]] += prod;
  }
}

Eigen::MatrixXd to_eigen(const DenseTensor& m) {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(
      m.data().data(), static_cast<Eigen::Index>(m.dim(0)),
      static_cast<Eigen::Index>(m.dim(1)));
}

/// Unit leading left singular vector of an order-2 tensor, via the Gram
/// matrix on the row side (rows are assumed the short side by callers only
/// for efficiency; correctness does not depend on it).
std::vector<double> leading_left_singular_vector(const DenseTensor& m) {
  const Eigen::MatrixXd a = to_eigen(m);
  const Eigen::MatrixXd gram = a * a.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  const Eigen::VectorXd v = solver.eigenvectors().col(gram.rows() - 1);
  std::vector<double> out(v.data(), v.data() + v.size());
  (void)normalize(out);
  return out;
}

struct RunResult {
  double value = 0.0;
  std::vector<std::vector<double>> witnesses;
  bool converged = false;
  std::vector<double> trajectory;
};

/// One alternating-maximization run from the given start vectors.
RunResult run_alternating(const Support& s, const Shape& shape,
                          std::vector<std::vector<double>> xs, const EstimatorConfig& cfg) {
  const std::size_t d = s.order;
  RunResult run;
  run.witnesses = xs;
  double prev = -1.0;
  std::vector<double> g;
  for (std::size_t sweep = 0; sweep < cfg.max_iters; ++sweep) {
    double f = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      g.assign(shape[k], 0.0);
      gradient(s, xs, k, g);
      const double norm = normalize(g);
      if (norm == 0.0) {
        // Degenerate start: keep the last full sweep if one completed,
        // otherwise report nothing so the merge ignores this run.
        if (run.trajectory.empty()) run.witnesses.clear();
        return run;
      }
      xs[k] = g;
      f = norm;
    }
    run.value = f;
    run.witnesses = xs;
    run.trajectory.push_back(f);
    if (prev >= 0.0 && std::abs(f - prev) <= cfg.tol * std::max(1.0, std::abs(f))) {
      run.converged = true;
      return run;
    }
    prev = f;
  }
  return run;
}

/// True iff a's concatenated witnesses are lexicographically smaller.
bool lex_smaller(const std::vector<std::vector<double>>& a,
                 const std::vector<std::vector<double>>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t i = 0; i < a[k].size(); ++i) {
      if (a[k][i] != b[k][i]) return a[k][i] < b[k][i];
    }
  }
  return false;
}

/// Deterministic merge: larger value wins; ties go to the lexicographically
/// smaller witness list.
void merge_best(RunResult& best, const RunResult& candidate) {
  if (candidate.witnesses.empty()) return;
  if (best.witnesses.empty() || candidate.value > best.value ||
      (candidate.value == best.value && lex_smaller(candidate.witnesses, best.witnesses))) {
    best = candidate;
  }
}

std::vector<double> random_unit_vector(std::size_t n, std::mt19937_64& rng, bool nonnegative) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(n);
  double norm = 0.0;
  while (norm == 0.0) {
    for (double& x : v) x = gauss(rng);
    norm = normalize(v);
  }
  if (nonnegative) {
    for (double& x : v) x = std::abs(x);
    (void)normalize(v);
  }
  return v;
}

/// Structured start (a): all-ones vectors, normalized.
std::vector<std::vector<double>> ones_start(const Shape& shape) {
  std::vector<std::vector<double>> xs;
  for (std::size_t n : shape) {
    xs.emplace_back(n, 1.0 / std::sqrt(static_cast<double>(n)));
  }
  return xs;
}

/// Structured start (b): per-mode leading singular vectors of the mode-k
/// matricizations (the mode with the largest matrix norm supplies its exact
/// top singular vector; the other modes get theirs as a consistent guess).
std::vector<std::vector<double>> singular_vector_start(const DenseTensor& t) {
  std::vector<std::vector<double>> xs;
  const std::size_t d = t.order();
  if (d == 1) {
    std::vector<double> x = t.data();
    if (normalize(x) == 0.0) x.assign(t.dim(0), 1.0 / std::sqrt(double(t.dim(0))));
    xs.push_back(std::move(x));
    return xs;
  }
  for (std::size_t k = 0; k < d; ++k) {
    xs.push_back(leading_left_singular_vector(matricize(t, k)));
  }
  return xs;
}

/// Structured start (c): basis vectors of the largest-magnitude entry, which
/// guarantees the estimate is at least max|T_i| (>= 1 for zero-one tensors).
std::vector<std::vector<double>> peak_entry_start(const DenseTensor& t) {
  std::size_t best = 0;
  for (std::size_t flat = 1; flat < t.size(); ++flat) {
    if (std::abs(t[flat]) > std::abs(t[best])) best = flat;
  }
  const Index index = t.multi_index(best);
  std::vector<std::vector<double>> xs;
  for (std::size_t k = 0; k < t.order(); ++k) {
    std::vector<double> e(t.dim(k), 0.0);
    e[index[k]] = 1.0;
    xs.push_back(std::move(e));
  }
  return xs;
}

void require_nonzero(const DenseTensor& t, const char* who) {
  for (double v : t.data()) {
    if (v != 0.0) return;
  }
  throw std::invalid_argument(std::string(who) + ": zero tensor");
}

/// Runs `total` jobs given by `run_one(i)` storing results per index, using
/// cfg.jobs threads; per-index results keep the merge deterministic.
template <typename F>
std::vector<RunResult> run_indexed(std::size_t total, std::size_t jobs, F&& run_one) {
  std::vector<RunResult> results(total);
  if (jobs <= 1 || total <= 1) {
    for (std::size_t i = 0; i < total; ++i) results[i] = run_one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      results[i] = run_one(i);
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n_threads = std::min(jobs, total);
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace

bool is_symmetric_tensor(const DenseTensor& t, double rel_tol) {
  const std::size_t d = t.order();
  for (std::size_t k = 1; k < d; ++k) {
    if (t.dim(k) != t.dim(0)) return false;
  }
  if (d <= 1) return true;
  double peak = 0.0;
  for (double v : t.data()) peak = std::max(peak, std::abs(v));
  const double slack = rel_tol * std::max(1.0, peak);
  // Invariance under the transpositions (0 k) generates invariance under all
  // mode permutations.
  for (std::size_t k = 1; k < d; ++k) {
    Permutation swap = Permutation::identity(d);
    std::swap(swap.map[0], swap.map[k]);
    const DenseTensor swapped = mode_transpose(t, swap);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (std::abs(t[i] - swapped[i]) > slack) return false;
    }
  }
  return true;
}

double matrix_spectral_norm(const DenseTensor& m) {
  if (m.order() != 2) {
    throw std::invalid_argument("matrix_spectral_norm: order-2 input required");
  }
  const Eigen::MatrixXd a = to_eigen(m);
  const Eigen::MatrixXd gram =
      a.rows() <= a.cols() ? Eigen::MatrixXd(a * a.transpose()) : Eigen::MatrixXd(a.transpose() * a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  const double top = solver.eigenvalues()(gram.rows() - 1);
  return std::sqrt(std::max(top, 0.0));
}

double spectral_upper_bound(const DenseTensor& t) {
  double best = frobenius_norm(t);
  const std::size_t d = t.order();
  if (d >= 2) {
    for (std::size_t k = 0; k < d; ++k) {
      best = std::min(best, matrix_spectral_norm(matricize(t, k)));
    }
    if (d % 2 == 0) {
      ModePartition half;
      half.blocks.resize(2);
      for (std::size_t k = 0; k < d / 2; ++k) half.blocks[0].push_back(k);
      for (std::size_t k = d / 2; k < d; ++k) half.blocks[1].push_back(k);
      best = std::min(best, matrix_spectral_norm(unfold(t, half)));
    }
  }
  return best;
}

double uniform_contraction_value(const DenseTensor& t) {
  double sum = 0.0;
  for (double v : t.data()) {
    if (v < 0.0) {
      throw std::invalid_argument("uniform_contraction_value: negative entry");
    }
    sum += v;
  }
  return sum / std::sqrt(static_cast<double>(t.size()));
}

SpectralEstimate spectral_norm_estimate_traced(const DenseTensor& t, const EstimatorConfig& cfg,
                                               std::vector<std::vector<double>>* trajectories) {
  if (cfg.starts < 1 || cfg.tol <= 0.0 || cfg.max_iters < 1) {
    throw std::invalid_argument("estimator: starts >= 1, max_iters >= 1, tol > 0 required");
  }
  require_nonzero(t, "spectral_norm_estimate");
  const Support support = build_support(t);
  const Shape& shape = t.shape();
  const std::size_t d = t.order();

  std::vector<std::vector<std::vector<double>>> starts;
  starts.push_back(ones_start(shape));
  starts.push_back(singular_vector_start(t));
  starts.push_back(peak_entry_start(t));
  const std::size_t structured = starts.size();
  const std::size_t total = structured + cfg.starts;

  const auto results = run_indexed(total, cfg.jobs, [&](std::size_t i) {
    std::vector<std::vector<double>> xs;
    if (i < structured) {
      xs = starts[i];
    } else {
      std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(i - structured)};
      std::mt19937_64 rng(seq);
      for (std::size_t k = 0; k < d; ++k) {
        xs.push_back(random_unit_vector(shape[k], rng, cfg.nonnegative_mode));
      }
    }
    return run_alternating(support, shape, std::move(xs), cfg);
  });

  RunResult best;
  for (const RunResult& r : results) {
    merge_best(best, r);
    if (trajectories != nullptr) trajectories->push_back(r.trajectory);
  }

  SpectralEstimate est;
  est.value = best.value;
  est.witnesses = best.witnesses;
  est.certified_upper = spectral_upper_bound(t);
  est.converged = best.converged;
  est.starts_used = total;
  return est;
}

SpectralEstimate spectral_norm_estimate(const DenseTensor& t, const EstimatorConfig& cfg) {
  return spectral_norm_estimate_traced(t, cfg, nullptr);
}

namespace {

/// Symmetric gradient g = T x^{d-1} (contraction over all modes but the
/// first; symmetry makes the choice of remaining mode irrelevant).
void symmetric_gradient(const Support& s, const std::vector<double>& x, std::vector<double>& g) {
  std::fill(g.begin(), g.end(), 0.0);
  const std::size_t d = s.order;
  for (std::size_t e = 0; e < s.count(); ++e) {
    const std::uint32_t* digit = &s.digits[e * d];
    double prod = s.values[e];
    for (std::size_t j = 1; j < d; ++j) prod *= x[digit[j]];
    g[digit[0]] += prod;
  }
}

/// One shifted symmetric power iteration run; maximizes f(x) = <T, x^(x)d>.
RunResult run_symmetric(const Support& s, std::size_t n, double shift, std::vector<double> x,
                        const EstimatorConfig& cfg) {
  const std::size_t d = s.order;
  RunResult run;
  run.witnesses.assign(d, x);
  std::vector<double> g(n);
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t sweep = 0; sweep < cfg.max_iters; ++sweep) {
    symmetric_gradient(s, x, g);
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) f += x[i] * g[i];
    run.value = f;
    run.witnesses.assign(d, x);
    run.trajectory.push_back(f);
    if (!std::isnan(prev) && std::abs(f - prev) <= cfg.tol * std::max(1.0, std::abs(f))) {
      run.converged = true;
      return run;
    }
    prev = f;
    for (std::size_t i = 0; i < n; ++i) g[i] += shift * x[i];
    if (normalize(g) == 0.0) return run;  // degenerate
    x = g;
  }
  return run;
}

}  // namespace

SpectralEstimate spectral_norm_symmetric(const DenseTensor& t, const EstimatorConfig& cfg) {
  if (cfg.starts < 1 || cfg.tol <= 0.0 || cfg.max_iters < 1) {
    throw std::invalid_argument("estimator: starts >= 1, max_iters >= 1, tol > 0 required");
  }
  if (!is_symmetric_tensor(t)) {
    throw std::invalid_argument("spectral_norm_symmetric: input is not symmetric");
  }
  require_nonzero(t, "spectral_norm_symmetric");
  const std::size_t d = t.order();
  const std::size_t n = t.dim(0);
  const double shift = frobenius_norm(t);

  // For even order, f(-x) = f(x), so the shifted ascent can only reach the
  // maximum of f; the spectral norm is max(|max f|, |min f|), and the minimum
  // is found by ascending on -T.
  std::vector<double> signs = {1.0};
  if (d % 2 == 0) signs.push_back(-1.0);

  std::vector<std::vector<double>> starts;
  starts.push_back(std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
  if (d >= 2) starts.push_back(leading_left_singular_vector(matricize(t, 0)));
  {
    std::size_t best = 0;
    for (std::size_t flat = 1; flat < t.size(); ++flat) {
      if (std::abs(t[flat]) > std::abs(t[best])) best = flat;
    }
    std::vector<double> e(n, 0.0);
    e[t.multi_index(best)[0]] = 1.0;
    starts.push_back(std::move(e));
  }
  const std::size_t structured = starts.size();
  const std::size_t per_branch = structured + cfg.starts;
  const std::size_t total = per_branch * signs.size();

  const auto results = run_indexed(total, cfg.jobs, [&](std::size_t idx) {
    const double sign = signs[idx / per_branch];
    const std::size_t i = idx % per_branch;
    std::vector<double> x;
    if (i < structured) {
      x = starts[i];
    } else {
      std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(idx)};
      std::mt19937_64 rng(seq);
      x = random_unit_vector(n, rng, cfg.nonnegative_mode);
    }
    Support s = build_support(t);
    if (sign < 0.0) {
      for (double& v : s.values) v = -v;
    }
    RunResult run = run_symmetric(s, n, shift, std::move(x), cfg);
    run.value = std::abs(run.value);  // sigma uses |f|
    return run;
  });

  RunResult best;
  for (const RunResult& r : results) merge_best(best, r);

  SpectralEstimate est;
  est.value = best.value;
  est.witnesses = best.witnesses;
  est.certified_upper = spectral_upper_bound(t);
  est.converged = best.converged;
  est.starts_used = total;
  return est;
}

double ratio(const DenseTensor& t, const EstimatorConfig& cfg) {
  require_nonzero(t, "ratio");
  return spectral_norm_estimate(t, cfg).value / frobenius_norm(t);
}

double nuclear_lower_bound(const DenseTensor& t, const DenseTensor& x,
                           const EstimatorConfig& cfg) {
  (void)cfg;
  require_nonzero(x, "nuclear_lower_bound");
  return inner_product(t, x) / spectral_upper_bound(x);
}

}  // namespace tenx
