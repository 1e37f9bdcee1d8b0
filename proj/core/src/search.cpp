#include "qmin/search.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "qmin/error.hpp"
#include "qmin/strongprops.hpp"

namespace qmin {

namespace {

constexpr double kBarrier = 0.05;
constexpr double kBarrierWeight = 10.0;

/// Unknowns: diagonal, edge entries, then q-2 log-gaps for a free spectrum.
struct Problem {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<int> mult;
  std::vector<double> fixed;  // normalized exact targets, empty if free
  int q = 0;
  int spectral = 0;

  int vars() const { return n + static_cast<int>(edges.size()) + spectral; }
  int residuals() const { return n * (n + 1) / 2 + (q - 1) + static_cast<int>(edges.size()); }

  Matrix build(const Vector& x) const {
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = x(i);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto [u, v] = edges[e];
      a(u, v) = a(v, u) = x(n + static_cast<Eigen::Index>(e));
    }
    return a;
  }

  std::vector<double> targets(const Vector& x) const {
    if (!fixed.empty()) return fixed;
    if (q == 1) return {0.0};
    std::vector<double> w(static_cast<std::size_t>(q - 1), 1.0);
    for (int j = 1; j < q - 1; ++j) w[static_cast<std::size_t>(j)] = std::exp(x(vars() - spectral + j - 1));
    double total = 0.0;
    for (double v : w) total += v;
    std::vector<double> t(static_cast<std::size_t>(q));
    t[0] = -1.0;
    for (int j = 1; j < q; ++j) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 2.0 * w[static_cast<std::size_t>(j - 1)] / total;
    t.back() = 1.0;
    return t;
  }

  Vector residual(const Vector& x) const {
    const Matrix a = build(x);
    const auto t = targets(x);
    Vector r(residuals());
    Matrix p = Matrix::Identity(n, n);
    for (double tj : t) p = p * (a - tj * Matrix::Identity(n, n));
    Eigen::Index k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) r(k++) = p(i, j);
    Matrix power = Matrix::Identity(n, n);
    for (int d = 1; d < q; ++d) {
      power = power * a;
      double expect = 0.0;
      for (int j = 0; j < q; ++j) expect += mult[static_cast<std::size_t>(j)] * std::pow(t[static_cast<std::size_t>(j)], d);
      r(k++) = power.trace() - expect;
    }
    for (std::size_t e = 0; e < edges.size(); ++e)
      r(k++) = kBarrierWeight * std::max(0.0, kBarrier - std::abs(x(n + static_cast<Eigen::Index>(e))));
    return r;
  }

  Matrix jacobian(const Vector& x) const {
    const Matrix a = build(x);
    const auto t = targets(x);
    const int m = static_cast<int>(edges.size());
    Matrix jac = Matrix::Zero(residuals(), vars());
    // Prefix and suffix products of the factors (a - t_j I); they all commute.
    std::vector<Matrix> left(static_cast<std::size_t>(q) + 1), right(static_cast<std::size_t>(q) + 1);
    left[0] = Matrix::Identity(n, n);
    for (int j = 0; j < q; ++j) left[j + 1] = left[j] * (a - t[j] * Matrix::Identity(n, n));
    right[q] = Matrix::Identity(n, n);
    for (int j = q - 1; j >= 0; --j) right[j] = (a - t[j] * Matrix::Identity(n, n)) * right[j + 1];
    std::vector<Matrix> powers(static_cast<std::size_t>(std::max(q - 1, 1)));
    powers[0] = Matrix::Identity(n, n);
    for (int d = 1; d < q - 1; ++d) powers[d] = powers[d - 1] * a;
    const int tri = n * (n + 1) / 2;
    auto fill = [&](int var, int u, int v) {
      Matrix dp = Matrix::Zero(n, n);
      for (int j = 0; j < q; ++j) {
        dp.noalias() += left[j].col(u) * right[j + 1].row(v);
        if (u != v) dp.noalias() += left[j].col(v) * right[j + 1].row(u);
      }
      Eigen::Index k = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) jac(k++, var) = dp(i, j);
      for (int d = 1; d < q; ++d) jac(tri + d - 1, var) = (u == v ? 1.0 : 2.0) * d * powers[d - 1](u, v);
    };
    for (int i = 0; i < n; ++i) fill(i, i, i);
    for (int e = 0; e < m; ++e) {
      fill(n + e, edges[e].first, edges[e].second);
      const double xe = x(n + e);
      if (std::abs(xe) < kBarrier) jac(tri + q - 1 + e, n + e) = -kBarrierWeight * (xe >= 0 ? 1.0 : -1.0);
    }
    for (int s = 0; s < spectral; ++s) {
      const int var = n + m + s;
      const double h = 1e-6;
      Vector xp = x, xm = x;
      xp(var) += h;
      xm(var) -= h;
      jac.col(var) = (residual(xp) - residual(xm)) / (2 * h);
    }
    return jac;
  }
};

struct StartOutcome {
  bool converged = false;
  double residual = 0.0;
  Vector x;
};

StartOutcome levenberg_marquardt(const Problem& pr, Vector x, int iterations) {
  Vector r = pr.residual(x);
  double cost = 0.5 * r.squaredNorm();
  double mu = -1.0, nu = 2.0;
  for (int it = 0; it < iterations; ++it) {
    if (r.lpNorm<Eigen::Infinity>() < 1e-14) break;
    const Matrix jac = pr.jacobian(x);
    const Matrix h = jac.transpose() * jac;
    const Vector grad = jac.transpose() * r;
    if (mu < 0) mu = 1e-3 * std::max(1e-12, h.diagonal().maxCoeff());
    const Matrix damped = h + mu * Matrix::Identity(h.rows(), h.cols());
    const Vector step = damped.ldlt().solve(-grad);
    if (!step.allFinite()) break;
    const Vector xn = x + step;
    const Vector rn = pr.residual(xn);
    const double cost_new = 0.5 * rn.squaredNorm();
    const double predicted = 0.5 * step.dot(mu * step - grad);
    const double rho = predicted > 0 ? (cost - cost_new) / predicted : -1.0;
    if (rho > 0 && std::isfinite(cost_new)) {
      const bool tiny = step.norm() <= 1e-15 * (x.norm() + 1e-15);
      x = xn;
      r = rn;
      cost = cost_new;
      mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
      nu = 2.0;
      if (tiny) break;
    } else {
      mu *= nu;
      nu *= 2.0;
      if (mu > 1e30) break;
    }
  }
  StartOutcome out;
  out.residual = r.lpNorm<Eigen::Infinity>();
  double min_edge = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < pr.edges.size(); ++e)
    min_edge = std::min(min_edge, std::abs(x(pr.n + static_cast<Eigen::Index>(e))));
  out.converged = out.residual < 1e-10 && (pr.edges.empty() || min_edge > 1e-4);
  out.x = std::move(x);
  return out;
}

/// Affine map between the target spectrum and [-1,1].
struct Normalization {
  double centre = 0.0;
  double half = 1.0;
};

std::optional<std::string> verify(const RealizationTask& task, const SymMatrix& a, SpectrumSummary& summary) {
  if (!in_pattern(a, task.graph)) return "pattern check failed";
  summary = spectrum_summary(a);
  if (summary.ordered_mult != task.multiplicities) return "multiplicity list mismatch";
  double rho = 1.0;
  for (double v : summary.eigenvalues) rho = std::max(rho, std::abs(v));
  const double tol = 1e-7 * rho;
  std::size_t pos = 0;
  for (std::size_t c = 0; c < summary.clusters.size(); ++c) {
    const int m = summary.clusters[c].multiplicity;
    if (summary.eigenvalues[pos + m - 1] - summary.eigenvalues[pos] > tol) return "cluster spread exceeds 1e-7";
    if (task.values && std::abs(summary.clusters[c].value - (*task.values)[c]) > tol) return "eigenvalue mismatch";
    pos += static_cast<std::size_t>(m);
  }
  if (task.require_ssp && !has_ssp(a, task.graph)) return "SSP check failed";
  return std::nullopt;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, int start) {
  // splitmix64 step on the combined value
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(start) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RealizationTask task_for_spectrum(const Graph& g, const std::vector<double>& sorted_spectrum, double gap) {
  if (static_cast<int>(sorted_spectrum.size()) != g.order())
    throw Error(ErrorKind::InvalidParams, "spectrum length differs from graph order");
  const auto s = summarize(sorted_spectrum, gap);
  RealizationTask task;
  task.graph = g;
  task.multiplicities = s.ordered_mult;
  std::vector<double> values;
  for (const auto& c : s.clusters) values.push_back(c.value);
  task.values = values;
  return task;
}

RealizationResult realize(const RealizationTask& task) {
  const Graph& g = task.graph;
  const int n = g.order();
  RealizationResult result;
  int total = 0;
  for (int m : task.multiplicities) {
    if (m <= 0) throw Error(ErrorKind::InvalidParams, "multiplicities must be positive");
    total += m;
  }
  if (total != n) throw Error(ErrorKind::InvalidParams, "multiplicities must sum to the graph order");
  if (task.values && task.values->size() != task.multiplicities.size())
    throw Error(ErrorKind::InvalidParams, "one target value per multiplicity is required");
  if (task.values && !std::is_sorted(task.values->begin(), task.values->end()))
    throw Error(ErrorKind::InvalidParams, "target values must be ascending");
  const int q = static_cast<int>(task.multiplicities.size());

  if (q == 1) {
    // Only scalar matrices have one eigenvalue.
    if (g.size() > 0) {
      result.message = "a graph with edges has at least two distinct eigenvalues";
      return result;
    }
    SymMatrix a(n);
    for (int i = 0; i < n; ++i) a.set(i, i, task.values ? (*task.values)[0] : 0.0);
    auto err = verify(task, a, result.summary);
    result.success = !err;
    if (result.success) result.matrix = a;
    result.message = err.value_or("ok");
    return result;
  }

  Problem pr;
  pr.n = n;
  pr.edges = g.edges();
  pr.mult = task.multiplicities;
  pr.q = q;
  Normalization norm;
  if (task.values) {
    const auto& v = *task.values;
    norm.centre = (v.front() + v.back()) / 2.0;
    norm.half = (v.back() - v.front()) / 2.0;
    if (!(norm.half > 0)) throw Error(ErrorKind::InvalidParams, "target values must be distinct");
    for (double x : v) pr.fixed.push_back((x - norm.centre) / norm.half);
  } else {
    pr.spectral = std::max(0, q - 2);
  }

  std::optional<Vector> base;
  std::vector<int> resample;
  if (task.initial) {
    if (task.initial->size() != n) throw Error(ErrorKind::DimensionMismatch, "initial matrix has the wrong order");
    Vector x0 = Vector::Zero(pr.vars());
    for (int i = 0; i < n; ++i) x0(i) = ((*task.initial)(i, i) - norm.centre) / norm.half;
    for (std::size_t e = 0; e < pr.edges.size(); ++e) {
      const auto [u, v] = pr.edges[e];
      x0(n + static_cast<Eigen::Index>(e)) = (*task.initial)(u, v) / norm.half;
      for (auto [ru, rv] : task.resample_edges)
        if (std::minmax(ru, rv) == std::minmax(u, v)) resample.push_back(static_cast<int>(e));
    }
    base = x0;
  }

  auto run_start = [&](int start) {
    std::mt19937_64 rng(derive_seed(task.seed, start));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector x(pr.vars());
    if (base) {
      x = *base;
      for (Eigen::Index i = 0; i < n + static_cast<Eigen::Index>(pr.edges.size()); ++i) x(i) += task.initial_noise * normal(rng);
      for (int e : resample) {
        const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
        x(n + e) = sign * 0.3 * (0.5 + unit(rng)) * task.resample_scale;
      }
    } else {
      for (int i = 0; i < n; ++i) x(i) = 0.5 * normal(rng);
      for (std::size_t e = 0; e < pr.edges.size(); ++e) {
        const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
        x(n + static_cast<Eigen::Index>(e)) = sign * (0.3 + 0.7 * unit(rng));
      }
    }
    for (int s = 0; s < pr.spectral; ++s) x(pr.vars() - pr.spectral + s) = 0.3 * normal(rng);
    return levenberg_marquardt(pr, x, task.iterations);
  };

  auto to_matrix = [&](const Vector& x) {
    const Matrix a = pr.build(x);
    SymMatrix out(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) out.set(i, j, norm.half * a(i, j) + (i == j ? norm.centre : 0.0));
    return out;
  };

  int threads = task.threads > 0 ? task.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, threads);
  result.best_residual = std::numeric_limits<double>::infinity();
  std::string last_reject;
  for (int batch = 0; batch < task.starts; batch += threads) {
    const int count = std::min(threads, task.starts - batch);
    std::vector<StartOutcome> outcomes(static_cast<std::size_t>(count));
    std::vector<std::string> errors(static_cast<std::size_t>(count));
    std::vector<SpectrumSummary> summaries(static_cast<std::size_t>(count));
    std::vector<std::optional<SymMatrix>> verified(static_cast<std::size_t>(count));
    auto work = [&](int slot) {
      try {
        outcomes[slot] = run_start(batch + slot);
        if (!outcomes[slot].converged) return;
        SymMatrix a = to_matrix(outcomes[slot].x);
        auto err = verify(task, a, summaries[slot]);
        if (err)
          errors[slot] = *err;
        else
          verified[slot] = std::move(a);
      } catch (const std::exception& e) {
        errors[slot] = e.what();
      }
    };
    std::vector<std::thread> pool;
    for (int slot = 1; slot < count; ++slot) pool.emplace_back(work, slot);
    work(0);
    for (auto& t : pool) t.join();
    for (int slot = 0; slot < count; ++slot) {
      ++result.attempts;
      result.best_residual = std::min(result.best_residual, outcomes[slot].residual);
      if (!errors[slot].empty()) last_reject = errors[slot];
      if (verified[slot]) {
        result.success = true;
        result.matrix = std::move(verified[slot]);
        result.summary = std::move(summaries[slot]);
        result.start = batch + slot;
        result.start_seed = derive_seed(task.seed, batch + slot);
        result.message = "verified";
        return result;
      }
    }
  }
  result.message = "inconclusive: no verified realization after " + std::to_string(result.attempts) + " starts" +
                   (last_reject.empty() ? "" : " (last rejection: " + last_reject + ")");
  return result;
}

namespace {

std::optional<AugmentResult> augment_search(const SymMatrix& a, const Graph& g, int cluster,
                                            const std::vector<int>& alpha, const SearchBudget& budget) {
  const auto s = spectrum_summary(a);
  if (cluster < 0 || cluster >= s.q) throw Error(ErrorKind::InvalidParams, "eigenvalue cluster index out of range");
  const int n = g.order();
  RealizationTask task;
  task.graph = add_vertex(g, alpha);
  task.multiplicities = s.ordered_mult;
  task.multiplicities[static_cast<std::size_t>(cluster)] += 1;
  std::vector<double> values;
  for (const auto& c : s.clusters) values.push_back(c.value);
  task.values = values;
  task.require_ssp = true;
  task.seed = budget.seed;
  task.starts = budget.starts;
  task.iterations = budget.iterations;
  task.threads = budget.threads;
  SymMatrix start(n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) start.set(i, j, a(i, j));
  start.set(n, n, values[static_cast<std::size_t>(cluster)]);
  task.initial = start;
  for (int v : alpha) task.resample_edges.push_back({v, n});
  auto res = realize(task);
  if (!res.success) return std::nullopt;
  return AugmentResult{*res.matrix, task.graph, res.summary};
}

}  // namespace

std::optional<AugmentResult> augment(const SymMatrix& a, const Graph& g, int cluster, const std::vector<int>& alpha,
                                     const SearchBudget& budget) {
  if (!augmentation_hypothesis(a, g, cluster, alpha))
    throw Error(ErrorKind::HypothesisNotSatisfied, "some eigenvector meets alpha in fewer than two vertices");
  return augment_search(a, g, cluster, alpha, budget);
}

std::optional<AugmentResult> add_universal_vertex_witness(const SymMatrix& a, const Graph& g, int cluster,
                                                          const SearchBudget& budget) {
  for (int v = 0; v < g.order(); ++v)
    if (g.degree(v) < 2)
      throw Error(ErrorKind::DegreeConditionViolated, "vertex " + std::to_string(v + 1) + " has fewer than two neighbours");
  if (!has_ssp(a, g)) throw Error(ErrorKind::HypothesisNotSatisfied, "augmentation needs a matrix with SSP");
  std::vector<int> alpha(static_cast<std::size_t>(g.order()));
  for (int v = 0; v < g.order(); ++v) alpha[static_cast<std::size_t>(v)] = v;
  return augment_search(a, g, cluster, alpha, budget);
}

}  // namespace qmin
