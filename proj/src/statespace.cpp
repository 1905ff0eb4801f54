#include "delayh2/statespace.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace delayh2 {

StateSpace::StateSpace(Matrix a, Matrix b, Matrix c, Matrix d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const Eigen::Index n = a_.rows();
  require(a_.cols() == n, ErrorCode::kDimensionMismatch, "StateSpace: A is not square");
  require(b_.rows() == n && c_.cols() == n, ErrorCode::kDimensionMismatch,
          "StateSpace: B or C does not match the state dimension");
  require(d_.rows() == c_.rows() && d_.cols() == b_.cols(),
          ErrorCode::kDimensionMismatch, "StateSpace: D is not conformable with B and C");
  check_finite(a_, "A");
  check_finite(b_, "B");
  check_finite(c_, "C");
  check_finite(d_, "D");
}

StateSpace StateSpace::static_gain(const Matrix& d) {
  return StateSpace(Matrix(0, 0), Matrix(0, d.cols()), Matrix(d.rows(), 0), d);
}

StateSpace StateSpace::zero(Eigen::Index outputs, Eigen::Index inputs) {
  return static_gain(Matrix::Zero(outputs, inputs));
}

StateSpace StateSpace::operator-() const { return StateSpace(a_, b_, -c_, -d_); }

FirTransfer::FirTransfer(std::vector<Matrix> lag_coefficients)
    : coeffs_(std::move(lag_coefficients)) {
  if (!coeffs_.empty()) {
    rows_ = coeffs_.front().rows();
    cols_ = coeffs_.front().cols();
  }
  for (const Matrix& m : coeffs_) {
    require(m.rows() == rows_ && m.cols() == cols_, ErrorCode::kDimensionMismatch,
            "FirTransfer: coefficients have inconsistent shapes");
    check_finite(m, "FIR coefficient");
  }
}

FirTransfer FirTransfer::zero(int horizon, Eigen::Index rows, Eigen::Index cols) {
  FirTransfer f(std::vector<Matrix>(static_cast<size_t>(horizon), Matrix::Zero(rows, cols)));
  f.rows_ = rows;
  f.cols_ = cols;
  return f;
}

double FirTransfer::squared_norm() const {
  double s = 0.0;
  for (const Matrix& m : coeffs_) s += m.squaredNorm();
  return s;
}

double fir_inner_product(const FirTransfer& f, const FirTransfer& g) {
  require(f.rows() == g.rows() && f.cols() == g.cols(), ErrorCode::kDimensionMismatch,
          "fir_inner_product: shape mismatch");
  const int common = std::min(f.horizon(), g.horizon());
  double s = 0.0;
  for (int i = 1; i <= common; ++i) s += f.at(i).cwiseProduct(g.at(i)).sum();
  return s;
}

StateSpace series(const StateSpace& g1, const StateSpace& g2) {
  require(g1.inputs() == g2.outputs(), ErrorCode::kDimensionMismatch,
          "series: inner dimensions do not agree");
  const Eigen::Index n1 = g1.states();
  const Eigen::Index n2 = g2.states();
  Matrix a = Matrix::Zero(n1 + n2, n1 + n2);
  a.topLeftCorner(n1, n1) = g1.a();
  a.topRightCorner(n1, n2) = g1.b() * g2.c();
  a.bottomRightCorner(n2, n2) = g2.a();
  Matrix b(n1 + n2, g2.inputs());
  b.topRows(n1) = g1.b() * g2.d();
  b.bottomRows(n2) = g2.b();
  Matrix c(g1.outputs(), n1 + n2);
  c.leftCols(n1) = g1.c();
  c.rightCols(n2) = g1.d() * g2.c();
  return StateSpace(std::move(a), std::move(b), std::move(c), g1.d() * g2.d());
}

StateSpace add(const StateSpace& g1, const StateSpace& g2) {
  require(g1.inputs() == g2.inputs() && g1.outputs() == g2.outputs(),
          ErrorCode::kDimensionMismatch, "add: systems have different shapes");
  const Eigen::Index n1 = g1.states();
  const Eigen::Index n2 = g2.states();
  Matrix a = Matrix::Zero(n1 + n2, n1 + n2);
  a.topLeftCorner(n1, n1) = g1.a();
  a.bottomRightCorner(n2, n2) = g2.a();
  Matrix b(n1 + n2, g1.inputs());
  b << g1.b(), g2.b();
  Matrix c(g1.outputs(), n1 + n2);
  c << g1.c(), g2.c();
  return StateSpace(std::move(a), std::move(b), std::move(c), g1.d() + g2.d());
}

std::vector<Matrix> markov(const StateSpace& g, int k) {
  require(k >= 1, ErrorCode::kInvalidArgument, "markov: k must be positive");
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(k));
  out.push_back(g.d());
  Matrix ab = g.b();  // A^{i-1} B
  for (int i = 1; i < k; ++i) {
    out.push_back(g.c() * ab);
    ab = g.a() * ab;
  }
  return out;
}

namespace {

void require_stable(const StateSpace& g, const Tolerances& tol, const char* what) {
  if (g.states() > 0 && !is_stable(g.a(), tol)) {
    std::ostringstream os;
    os << what << ": system is not stable (spectral radius "
       << spectral_radius(g.a()) << ")";
    fail(ErrorCode::kUnstable, os.str());
  }
}

}  // namespace

double h2_norm(const StateSpace& g, const Tolerances& tol) {
  require_stable(g, tol, "h2_norm");
  double sq = g.d().squaredNorm();
  if (g.states() > 0) {
    const Matrix w = dlyap(g.a(), g.b() * g.b().transpose(), tol);
    sq += (g.c() * w * g.c().transpose()).trace();
  }
  return std::sqrt(std::max(sq, 0.0));
}

double inner_product(const StateSpace& g, const StateSpace& h, const Tolerances& tol) {
  require(g.inputs() == h.inputs() && g.outputs() == h.outputs(),
          ErrorCode::kDimensionMismatch, "inner_product: systems have different shapes");
  require_stable(g, tol, "inner_product");
  require_stable(h, tol, "inner_product");
  double s = g.d().cwiseProduct(h.d()).sum();
  if (g.states() > 0 && h.states() > 0) {
    const Matrix w = solve_stein(g.a(), h.a(), g.b() * h.b().transpose(), tol);
    s += (g.c() * w * h.c().transpose()).trace();
  }
  return s;
}

ComplexMatrix evalz(const StateSpace& g, Complex z, const Tolerances& tol) {
  const Eigen::Index n = g.states();
  ComplexMatrix out = g.d().cast<Complex>();
  if (n == 0) return out;
  Eigen::EigenSolver<Matrix> es(g.a(), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(z - es.eigenvalues()(i)) < tol.resolvent) {
      fail(ErrorCode::kSingularResolvent, "evalz: z is an eigenvalue of A");
    }
  }
  const ComplexMatrix resolvent =
      z * ComplexMatrix::Identity(n, n) - g.a().cast<Complex>();
  out += g.c().cast<Complex>() *
         resolvent.partialPivLu().solve(g.b().cast<Complex>());
  return out;
}

StateSpace delay(const StateSpace& g, int n) {
  require(n >= 0, ErrorCode::kInvalidArgument, "delay: negative delay");
  if (n == 0) return g;
  const Eigen::Index p = g.outputs();
  const Eigen::Index s = n * p;
  Matrix a = Matrix::Zero(s, s);
  for (int k = 1; k < n; ++k) a.block(k * p, (k - 1) * p, p, p).setIdentity();
  Matrix b = Matrix::Zero(s, p);
  b.topRows(p).setIdentity();
  Matrix c = Matrix::Zero(p, s);
  c.rightCols(p).setIdentity();
  const StateSpace shift(std::move(a), std::move(b), std::move(c), Matrix::Zero(p, p));
  return series(shift, g);
}

StateSpace fir_to_ss(const FirTransfer& f) {
  const int n = f.horizon();
  const Eigen::Index q = f.cols();
  const Eigen::Index s = n * q;
  Matrix a = Matrix::Zero(s, s);
  for (int k = 1; k < n; ++k) a.block(k * q, (k - 1) * q, q, q).setIdentity();
  Matrix b = Matrix::Zero(s, q);
  if (n > 0) b.topRows(q).setIdentity();
  Matrix c(f.rows(), s);
  for (int k = 1; k <= n; ++k) c.middleCols((k - 1) * q, q) = f.at(k);
  return StateSpace(std::move(a), std::move(b), std::move(c), Matrix::Zero(f.rows(), q));
}

}  // namespace delayh2
