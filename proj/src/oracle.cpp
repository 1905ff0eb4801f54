#include "delayh2/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace delayh2 {

namespace {

// [D, C B, C A B, ...] up to lag `count - 1`.
std::vector<Matrix> impulse_response(const Matrix& a, const Matrix& b, const Matrix& c,
                                     const Matrix& d, int count) {
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(count));
  out.push_back(d);
  Matrix x = b;
  for (int i = 1; i < count; ++i) {
    out.push_back(c * x);
    x = a * x;
  }
  return out;
}

}  // namespace

OracleResult fir_truncated_optimum(const Plant& plant, const InformationPattern& pattern,
                                   const OracleConfig& cfg, const Tolerances& tol) {
  const int m = cfg.fir_length;
  const int h = cfg.cost_horizon;
  const int n = pattern.horizon();
  require(m > n, ErrorCode::kInvalidArgument, "oracle: FIR length must exceed the pattern horizon");
  if (h < m + 10 * static_cast<int>(plant.states())) {
    std::ostringstream os;
    os << "oracle: cost horizon " << h << " is below M + 10 n = "
       << m + 10 * plant.states();
    fail(ErrorCode::kInvalidArgument, os.str());
  }
  require(pattern.u_blocks().total() == plant.controls() &&
              pattern.y_blocks().total() == plant.measurements(),
          ErrorCode::kDimensionMismatch, "oracle: pattern does not match the plant");

  const Eigen::Index q1 = plant.performance();
  const Eigen::Index m1 = plant.disturbances();
  const Eigen::Index p2 = plant.controls();
  const Eigen::Index q2 = plant.measurements();
  const Eigen::Index block = q1 * m1;

  const auto p11 = impulse_response(plant.A(), plant.B1(), plant.C1(),
                                    Matrix::Zero(q1, m1), h + 1);
  const auto p12 = impulse_response(plant.A(), plant.B2(), plant.C1(), plant.D12(), h + 1);
  const auto p21 = impulse_response(plant.A(), plant.B1(), plant.C2(), plant.D21(), h + 1);

  // response[r + c p2][s] = sum_{a+b=s} P12_a e_r e_c' P21_b, for s = 0..h-1.
  std::vector<std::vector<Matrix>> response(static_cast<size_t>(p2 * q2));
  for (Eigen::Index c = 0; c < q2; ++c) {
    for (Eigen::Index r = 0; r < p2; ++r) {
      auto& seq = response[static_cast<size_t>(r + c * p2)];
      seq.assign(static_cast<size_t>(h), Matrix::Zero(q1, m1));
      for (int s = 0; s < h; ++s) {
        for (int a = 0; a <= s; ++a) {
          seq[static_cast<size_t>(s)].noalias() +=
              p12[static_cast<size_t>(a)].col(r) * p21[static_cast<size_t>(s - a)].row(c);
        }
      }
    }
  }

  struct Var {
    int lag;
    Eigen::Index row, col;
  };
  std::vector<Var> vars;
  for (int lag = 1; lag <= m; ++lag) {
    for (Eigen::Index c = 0; c < q2; ++c) {
      for (Eigen::Index r = 0; r < p2; ++r) {
        if (pattern.allows(lag, static_cast<int>(r), static_cast<int>(c))) {
          vars.push_back({lag, r, c});
        }
      }
    }
  }

  const Eigen::Index rows = block * (h + 1);
  const auto nv = static_cast<Eigen::Index>(vars.size());
  Vector rhs(rows);
  for (int t = 0; t <= h; ++t) rhs.segment(t * block, block) = p11[static_cast<size_t>(t)].reshaped();
  Matrix design = Matrix::Zero(rows, nv);
  for (Eigen::Index k = 0; k < nv; ++k) {
    const Var& v = vars[static_cast<size_t>(k)];
    const auto& seq = response[static_cast<size_t>(v.row + v.col * p2)];
    for (int t = v.lag; t <= h; ++t) {
      design.col(k).segment(t * block, block) = seq[static_cast<size_t>(t - v.lag)].reshaped();
    }
  }

  OracleResult out;
  Vector x = Vector::Zero(nv);
  if (nv > 0) {
    Matrix gram = Matrix::Zero(nv, nv);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(design.transpose());
    gram = gram.selfadjointView<Eigen::Lower>();
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    out.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    if (!(out.condition <= 1e12)) {
      std::ostringstream os;
      os << "oracle: normal equations are ill-conditioned (condition " << out.condition << ")";
      fail(ErrorCode::kIllConditioned, os.str());
    }
    x = -solve_spd(gram, design.transpose() * rhs, tol);
  }
  out.norm = (rhs + design * x).norm();

  out.Q = FirTransfer::zero(m, p2, q2);
  for (Eigen::Index k = 0; k < nv; ++k) {
    const Var& v = vars[static_cast<size_t>(k)];
    out.Q.at(v.lag)(v.row, v.col) = x(k);
  }
  return out;
}

}  // namespace delayh2
