#include "delayh2/synthesis.hpp"

#include <cmath>
#include <random>

namespace delayh2 {

FactorCoefficients hj_coefficients(const Plant& p, const ControlSolution& cs,
                                   const EstimationSolution& es, int n) {
  require(n >= 1, ErrorCode::kInvalidArgument, "hj_coefficients: N must be >= 1");
  FactorCoefficients out;
  out.H.reserve(static_cast<size_t>(n));
  out.J.reserve(static_cast<size_t>(n));
  out.H.push_back(cs.OmegaHalf);
  out.J.push_back(es.PsiHalf);
  Matrix apow_b2 = p.B2();  // A^{i-1} B2
  Matrix apow_l = es.L;     // A^{i-1} L
  const Matrix left = -cs.OmegaHalf * cs.K;
  for (int i = 1; i < n; ++i) {
    out.H.push_back(left * apow_b2);
    out.J.push_back(-p.C2() * apow_l * es.PsiHalf);
    apow_b2 = p.A() * apow_b2;
    apow_l = p.A() * apow_l;
  }
  return out;
}

FirTransfer t_coefficients(const Plant& p, const ControlSolution& cs,
                           const EstimationSolution& es, int n) {
  require(n >= 1, ErrorCode::kInvalidArgument, "t_coefficients: N must be >= 1");
  std::vector<Matrix> t;
  t.reserve(static_cast<size_t>(n));
  const Matrix left = cs.OmegaHalf * cs.K;
  Matrix right = es.L * es.PsiHalf;  // A^{i-1} L Psi^{1/2}
  for (int i = 1; i <= n; ++i) {
    t.push_back(left * right);
    right = p.A() * right;
  }
  return FirTransfer(std::move(t));
}

FirTransfer g_coefficients(const FirTransfer& v, const std::vector<Matrix>& h,
                           const std::vector<Matrix>& j) {
  const int n = v.horizon();
  require(static_cast<int>(h.size()) >= n && static_cast<int>(j.size()) >= n,
          ErrorCode::kDimensionMismatch, "g_coefficients: not enough H/J coefficients");
  if (n == 0) return v;
  require(h.front().cols() == v.rows() && j.front().rows() == v.cols(),
          ErrorCode::kDimensionMismatch, "g_coefficients: V does not match H and J");
  FirTransfer g = FirTransfer::zero(n, h.front().rows(), j.front().cols());
  for (int k = 1; k <= n; ++k) {
    if (v.at(k).isZero(0.0)) continue;
    for (int jj = 0; k + jj <= n; ++jj) {
      const Matrix hv = h[static_cast<size_t>(jj)] * v.at(k);
      for (int l = 0; k + jj + l <= n; ++l) {
        g.at(k + jj + l) += hv * j[static_cast<size_t>(l)];
      }
    }
  }
  return g;
}

namespace {

Vector stack(const FirTransfer& f) {
  const Eigen::Index block = f.rows() * f.cols();
  Vector out(block * f.horizon());
  for (int i = 1; i <= f.horizon(); ++i) {
    out.segment((i - 1) * block, block) = f.at(i).reshaped();
  }
  return out;
}

}  // namespace

double QpProblem::objective(const Vector& v) const {
  if (v.size() == 0) return 0.0;
  return v.dot(hessian * v) + 2.0 * v.dot(linear_term);
}

FirTransfer QpProblem::scatter(const Vector& v) const {
  require(v.size() == static_cast<Eigen::Index>(variables.size()),
          ErrorCode::kDimensionMismatch, "QpProblem::scatter: wrong vector length");
  FirTransfer out = FirTransfer::zero(horizon, rows, cols);
  for (size_t i = 0; i < variables.size(); ++i) {
    const QpVariable& var = variables[i];
    out.at(var.lag)(var.row, var.col) = v(static_cast<Eigen::Index>(i));
  }
  return out;
}

QpProblem assemble_qp(const InformationPattern& pattern, const std::vector<Matrix>& h,
                      const std::vector<Matrix>& j, const FirTransfer& t) {
  const int n = pattern.horizon();
  require(t.horizon() == n, ErrorCode::kDimensionMismatch,
          "assemble_qp: T horizon differs from the pattern horizon");
  QpProblem qp;
  qp.horizon = n;
  qp.rows = pattern.u_blocks().total();
  qp.cols = pattern.y_blocks().total();
  require(t.rows() == qp.rows && t.cols() == qp.cols, ErrorCode::kDimensionMismatch,
          "assemble_qp: T does not match the pattern partitions");

  // Lexicographic in (lag, block row, block col, entry row, entry col).
  const BlockPartition& u = pattern.u_blocks();
  const BlockPartition& y = pattern.y_blocks();
  for (int lag = 1; lag <= n; ++lag) {
    const BlockMask& m = pattern.mask(lag);
    for (int a = 0; a < u.count(); ++a) {
      for (int b = 0; b < y.count(); ++b) {
        if (!m(a, b)) continue;
        for (int r = 0; r < u.size(a); ++r) {
          for (int c = 0; c < y.size(b); ++c) {
            qp.variables.push_back({lag, a, b, u.offset(a) + r, y.offset(b) + c});
          }
        }
      }
    }
  }

  qp.target = stack(t);
  const auto nv = static_cast<Eigen::Index>(qp.variables.size());
  qp.map_matrix = Matrix::Zero(qp.target.size(), nv);
  for (Eigen::Index i = 0; i < nv; ++i) {
    const QpVariable& var = qp.variables[static_cast<size_t>(i)];
    FirTransfer unit = FirTransfer::zero(n, qp.rows, qp.cols);
    unit.at(var.lag)(var.row, var.col) = 1.0;
    qp.map_matrix.col(i) = stack(g_coefficients(unit, h, j));
  }
  qp.hessian = qp.map_matrix.transpose() * qp.map_matrix;
  qp.linear_term = qp.map_matrix.transpose() * qp.target;
  return qp;
}

QpSolution solve_qp(const QpProblem& qp, const Tolerances& tol) {
  QpSolution s;
  if (qp.empty()) {
    s.v = Vector(0);
  } else {
    s.v = -solve_spd(qp.hessian, qp.linear_term, tol);
  }
  s.V = qp.scatter(s.v);
  s.objective = qp.objective(s.v);
  return s;
}

SynthesisResult synthesize(const Plant& plant, const InformationPattern& pattern,
                           const Tolerances& tol) {
  require(pattern.u_blocks().total() == plant.controls(), ErrorCode::kDimensionMismatch,
          "pattern control partition does not match the plant's control dimension");
  require(pattern.y_blocks().total() == plant.measurements(),
          ErrorCode::kDimensionMismatch,
          "pattern measurement partition does not match the plant's measurement dimension");
  const int n = pattern.horizon();

  SynthesisResult r;
  r.control = control_dare(plant, tol);
  r.estimation = estimation_dare(plant, tol);
  r.factors = build_factors(plant, r.control, r.estimation);
  r.hj = hj_coefficients(plant, r.control, r.estimation, n);
  r.T = t_coefficients(plant, r.control, r.estimation, n);

  r.qp = assemble_qp(pattern, r.hj.H, r.hj.J, r.T);
  r.qp_solution = solve_qp(r.qp, tol);
  r.V_star = r.qp_solution.V;
  r.G = g_coefficients(r.V_star, r.hj.H, r.hj.J);
  r.decomposition_value = r.G.squared_norm() + 2.0 * fir_inner_product(r.G, r.T);

  r.Q_centralized = q_centralized(r.factors);
  r.Q_delayed = q_delayed(r.factors, n);
  // Q* = Q_N + W_L G W_R.
  const StateSpace correction =
      series(series(r.factors.W_L, fir_to_ss(r.G)), r.factors.W_R);
  r.Q_star = add(r.Q_delayed, correction);
  r.U_star = add(r.Q_star, -fir_to_ss(r.V_star));

  r.norm_centralized = h2_norm(closed_loop(plant, r.Q_centralized), tol);
  r.norm_delayed = h2_norm(closed_loop(plant, r.Q_delayed), tol);
  r.norm_decentralized = h2_norm(closed_loop(plant, r.Q_star), tol);
  return r;
}

double stationarity_residual(const Plant& plant, const StateSpace& q,
                             const InformationPattern& pattern,
                             const StationarityOptions& options, const Tolerances& tol) {
  require(options.trials >= 1, ErrorCode::kInvalidArgument,
          "stationarity_residual: trials must be positive");
  require(options.tail_lags >= 0, ErrorCode::kInvalidArgument,
          "stationarity_residual: tail_lags must be nonnegative");
  const StateSpace error = closed_loop(plant, q);
  const StateSpace p12 = plant.p12();
  const StateSpace p21 = plant.p21();
  const int horizon = pattern.horizon() + options.tail_lags;
  const Eigen::Index rows = plant.controls();
  const Eigen::Index cols = plant.measurements();

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < options.trials; ++trial) {
    FirTransfer delta = FirTransfer::zero(horizon, rows, cols);
    for (int lag = 1; lag <= horizon; ++lag) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
          const double x = normal(rng);
          if (pattern.allows(lag, static_cast<int>(r), static_cast<int>(c))) {
            delta.at(lag)(r, c) = x;
          }
        }
      }
    }
    const double norm = std::sqrt(delta.squared_norm());
    if (norm == 0.0) continue;
    for (int lag = 1; lag <= horizon; ++lag) delta.at(lag) /= norm;
    const StateSpace direction = series(series(p12, fir_to_ss(delta)), p21);
    worst = std::max(worst, std::abs(2.0 * inner_product(error, direction, tol)));
  }
  return worst;
}

StateSpace recover_feedback(const StateSpace& q, const Plant& plant, const Tolerances& tol) {
  require(q.outputs() == plant.controls() && q.inputs() == plant.measurements(),
          ErrorCode::kDimensionMismatch, "recover_feedback: Q has wrong shape");
  if (q.d().size() > 0 && q.d().cwiseAbs().maxCoeff() > tol.strictly_proper) {
    fail(ErrorCode::kNonStrictlyProper, "recover_feedback: Q must be strictly proper");
  }
  // Internal-model form: u = Q e, e = y - P22 u.
  const Eigen::Index nq = q.states();
  const Eigen::Index n = plant.states();
  Matrix a(nq + n, nq + n);
  a << q.a(), -q.b() * plant.C2(), plant.B2() * q.c(), plant.A();
  Matrix b(nq + n, q.inputs());
  b << q.b(), Matrix::Zero(n, q.inputs());
  Matrix c(q.outputs(), nq + n);
  c << q.c(), Matrix::Zero(q.outputs(), n);
  return StateSpace(std::move(a), std::move(b), std::move(c),
                    Matrix::Zero(q.outputs(), q.inputs()));
}

}  // namespace delayh2
