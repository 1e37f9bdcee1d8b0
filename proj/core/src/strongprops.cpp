#include "qmin/strongprops.hpp"

#include <algorithm>
#include <cmath>

#include "qmin/error.hpp"

namespace qmin {

namespace {

void require_pattern(const SymMatrix& a, const Graph& g, double tol) {
  if (a.size() != g.order()) throw Error(ErrorKind::DimensionMismatch, "matrix and graph orders differ");
  if (!in_pattern(a, g, tol)) throw Error(ErrorKind::PatternMismatch, "matrix is not in S(G)");
}

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

PropertyReport full_column_rank(const Matrix& m, int p, double tol) {
  PropertyReport r;
  r.unknowns = p;
  if (p == 0) {
    r.holds = true;
    return r;
  }
  r.rank = rank_report(m, tol);
  r.holds = r.rank.rank == p;
  return r;
}

}  // namespace

Matrix ssp_matrix(const SymMatrix& a, const Graph& g) {
  const int n = a.size();
  const auto rows = g.non_edges();
  Matrix m(static_cast<Eigen::Index>(rows.size()), n * (n - 1) / 2);
  int col = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++col)
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto [k, l] = rows[r];
        m(static_cast<Eigen::Index>(r), col) =
            a(k, i) * delta(j, l) - a(k, j) * delta(i, l) - delta(k, i) * a(j, l) + delta(k, j) * a(i, l);
      }
  return m;
}

PropertyReport ssp_report(const SymMatrix& a, const Graph& g, double rank_tol, double pattern_tol) {
  require_pattern(a, g, pattern_tol);
  const int p = static_cast<int>(g.non_edges().size());
  if (p == 0) return full_column_rank(Matrix(), 0, rank_tol);
  return full_column_rank(ssp_matrix(a, g), p, rank_tol);
}

bool has_ssp(const SymMatrix& a, const Graph& g, double rank_tol) { return ssp_report(a, g, rank_tol).holds; }

Matrix commutator_system(const SymMatrix& a, const Graph& g) {
  const int n = a.size();
  const auto unknowns = g.non_edges();
  Matrix m(n * (n - 1) / 2, static_cast<Eigen::Index>(unknowns.size()));
  for (std::size_t c = 0; c < unknowns.size(); ++c) {
    const auto [k, l] = unknowns[c];
    int row = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++row)
        m(row, static_cast<Eigen::Index>(c)) =
            a(i, k) * delta(j, l) + a(i, l) * delta(j, k) - delta(i, k) * a(l, j) - delta(i, l) * a(k, j);
  }
  return m;
}

Matrix smp_system(const SymMatrix& a, const Graph& g) {
  const int n = a.size();
  const auto unknowns = g.non_edges();
  const Matrix comm = commutator_system(a, g);
  Matrix m(comm.rows() + n, comm.cols());
  m.topRows(comm.rows()) = comm;
  const auto ev = eigenvalues(a);
  const double lo = ev.empty() ? 0.0 : ev.front(), hi = ev.empty() ? 0.0 : ev.back();
  const double half = (hi - lo) / 2.0;
  Matrix b = a.dense() - ((hi + lo) / 2.0) * Matrix::Identity(n, n);
  if (half > 0) b /= half;
  Matrix power = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    auto row = m.row(comm.rows() + i);
    for (std::size_t c = 0; c < unknowns.size(); ++c) {
      const auto [k, l] = unknowns[c];
      row(static_cast<Eigen::Index>(c)) = 2.0 * power(k, l);
    }
    power = power * b;
  }
  return m;
}

PropertyReport smp_report(const SymMatrix& a, const Graph& g, double rank_tol, double pattern_tol) {
  require_pattern(a, g, pattern_tol);
  const int p = static_cast<int>(g.non_edges().size());
  if (p == 0) return full_column_rank(Matrix(), 0, rank_tol);
  return full_column_rank(smp_system(a, g), p, rank_tol);
}

bool has_smp(const SymMatrix& a, const Graph& g, double rank_tol) { return smp_report(a, g, rank_tol).holds; }

Matrix cluster_basis(const SymMatrix& a, int cluster, std::optional<double> gap) {
  const auto es = eigensystem(a);
  std::vector<double> ev(es.values.data(), es.values.data() + es.values.size());
  const auto s = summarize(ev, gap.value_or(default_gap(ev)));
  if (cluster < 0 || cluster >= s.q) throw Error(ErrorKind::InvalidParams, "eigenvalue cluster index out of range");
  int start = 0;
  for (int c = 0; c < cluster; ++c) start += s.ordered_mult[c];
  return es.vectors.middleCols(start, s.ordered_mult[cluster]);
}

bool augmentation_hypothesis(const SymMatrix& a, const Graph& g, int cluster, const std::vector<int>& alpha,
                             double rank_tol) {
  if (a.size() != g.order()) throw Error(ErrorKind::DimensionMismatch, "matrix and graph orders differ");
  const Matrix v = cluster_basis(a, cluster);
  const auto k = v.cols();
  if (static_cast<Eigen::Index>(alpha.size()) != k + 1)
    throw Error(ErrorKind::MultiplicityMismatch, "alpha must have multiplicity + 1 vertices");
  for (int x : alpha)
    if (x < 0 || x >= a.size()) throw Error(ErrorKind::MissingElement, "alpha vertex out of range");
  for (std::size_t drop = 0; drop < alpha.size(); ++drop) {
    Matrix rows(k, k);
    Eigen::Index r = 0;
    for (std::size_t t = 0; t < alpha.size(); ++t)
      if (t != drop) rows.row(r++) = v.row(alpha[t]);
    if (qmin::rank_tol(rows, rank_tol) < k) return false;
  }
  return true;
}

WitnessRecord make_witness(std::string id, const Graph& g, const SymMatrix& a, WitnessFlags claimed, std::string source,
                           int auto_limit) {
  if (a.size() != g.order()) throw Error(ErrorKind::DimensionMismatch, "witness matrix and graph orders differ");
  WitnessRecord rec;
  rec.id = std::move(id);
  rec.graph = g;
  rec.matrix = a;
  rec.source = std::move(source);
  rec.summary = spectrum_summary(a);
  rec.rank = rank_tol(a.dense());
  rec.verified.pattern = in_pattern(a, g);
  auto fail = [&](const char* what) {
    throw Error(ErrorKind::VerificationFailed, "witness " + rec.id + ": claimed " + what + " does not verify");
  };
  if (claimed.pattern && !rec.verified.pattern) fail("pattern");
  if (!rec.verified.pattern) {
    if (claimed.ssp || claimed.smp || claimed.orthogonal) fail("property on a matrix outside S(G)");
    return rec;
  }
  rec.verified.orthogonal = is_orthogonal_witness(a, g);
  if (claimed.orthogonal && !rec.verified.orthogonal) fail("orthogonality");
  const bool affordable = g.order() <= auto_limit;
  if (claimed.ssp || affordable) rec.verified.ssp = has_ssp(a, g);
  if (claimed.ssp && !rec.verified.ssp) fail("SSP");
  if (rec.verified.ssp) {
    rec.verified.smp = true;
    if (claimed.smp || affordable) rec.verified.smp = has_smp(a, g);
  } else if (claimed.smp || affordable) {
    rec.verified.smp = has_smp(a, g);
  }
  if (claimed.smp && !rec.verified.smp) fail("SMP");
  return rec;
}

}  // namespace qmin
