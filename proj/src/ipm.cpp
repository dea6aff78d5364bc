#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>

#include "ambush/error.hpp"
#include "ambush/solver.hpp"

namespace ambush {

namespace {

// Rows of A that are linearly dependent on earlier rows, found by a Cholesky
// factorisation of A A^T that skips pivots collapsing to zero.
std::vector<int> dependent_rows(const SparseMatrix& a) {
  const Eigen::MatrixXd gram = Eigen::MatrixXd(a * a.transpose());
  const int m = static_cast<int>(gram.rows());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  std::vector<int> dropped;
  for (int k = 0; k < m; ++k) {
    double d = gram(k, k) - l.row(k).head(k).squaredNorm();
    if (d <= 1e-9 * std::max(1.0, gram(k, k))) {
      dropped.push_back(k);
      continue;
    }
    const double root = std::sqrt(d);
    l(k, k) = root;
    for (int i = k + 1; i < m; ++i) {
      l(i, k) = (gram(i, k) - l.row(i).head(k).dot(l.row(k).head(k))) / root;
    }
  }
  return dropped;
}

SparseMatrix select_rows(const SparseMatrix& a, const std::vector<int>& keep) {
  std::vector<int> map(a.rows(), -1);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) map[keep[i]] = i;
  std::vector<Eigen::Triplet<double>> trips;
  for (int j = 0; j < a.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(a, j); it; ++it) {
      if (map[it.row()] >= 0) trips.emplace_back(map[it.row()], j, it.value());
    }
  }
  SparseMatrix out(static_cast<Eigen::Index>(keep.size()), a.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

// Dense Cholesky of A diag(d) A^T with escalating diagonal regularisation.
// The normal matrix is factorised in extended precision: near the optimum
// D spans twenty-odd orders of magnitude and double Cholesky stalls the
// primal residual around 1e-7.
class NormalEquations {
 public:
  using Real = long double;
  using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

  explicit NormalEquations(const SparseMatrix& a) : a_(a.cast<Real>()) {}

  void factor(const Eigen::VectorXd& d) {
    d_ = d.cast<Real>();
    matrix_ = Mat(a_ * d_.asDiagonal() * a_.transpose());
    const Vec diag = matrix_.diagonal().cwiseAbs().cwiseMax(Real(1e-300));
    Real reg = 0.0;
    for (int attempt = 0; attempt < 14; ++attempt) {
      Mat shifted = matrix_;
      if (reg > 0.0) shifted.diagonal() += reg * diag;
      llt_.compute(shifted);
      if (llt_.info() == Eigen::Success) return;
      reg = reg == 0.0 ? Real(1e-14) : reg * 10;
    }
    throw Error(ErrorKind::kSolver, "ipm normal equations could not be factorised");
  }

  // Iterative refinement against the unregularised matrix.
  Vec solve(const Vec& rhs) const {
    Vec sol = llt_.solve(rhs);
    Vec resid = rhs - matrix_ * sol;
    Real norm = resid.cwiseAbs().maxCoeff();
    for (int step = 0; step < 6 && norm > 0; ++step) {
      const Vec trial = sol + llt_.solve(resid);
      const Vec trial_resid = rhs - matrix_ * trial;
      const Real trial_norm = trial_resid.cwiseAbs().maxCoeff();
      if (!(trial_norm < norm / 2)) {
        if (trial_norm < norm) sol = trial;
        break;
      }
      sol = trial;
      resid = trial_resid;
      norm = trial_norm;
    }
    return sol;
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const { return solve(Vec(rhs.cast<Real>())).cast<double>(); }

  // Newton direction for residuals rp, rd and complementarity target rc.
  void direction(const Eigen::VectorXd& rp, const Eigen::VectorXd& rd, const Eigen::VectorXd& rc,
                 const Eigen::VectorXd& s, Eigen::VectorXd& dx, Eigen::VectorXd& dy, Eigen::VectorXd& ds) const {
    const Vec rd_l = rd.cast<Real>();
    const Vec rcs = rc.cast<Real>().cwiseQuotient(s.cast<Real>());
    const Vec base = rcs - d_.cwiseProduct(rd_l);
    const Vec dy_l = solve(Vec(rp.cast<Real>() - a_ * base));
    const Vec aty = a_.transpose() * dy_l;
    dx = (base + d_.cwiseProduct(aty)).cast<double>();
    dy = dy_l.cast<double>();
    ds = (rd_l - aty).cast<double>();
  }

 private:
  Eigen::SparseMatrix<Real> a_;
  Vec d_;
  Mat matrix_;
  Eigen::LLT<Mat> llt_;
};

double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double step = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv(i) < 0.0) step = std::min(step, -v(i) / dv(i));
  }
  return step;
}

}  // namespace

SolveReport ipm_solve(const StandardLP& lp, const IpmOptions& opts) {
  SolveReport rep;
  rep.solver = SolverKind::kIpm;
  const int n = lp.cols();

  rep.redundant_rows = dependent_rows(lp.a_eq);
  std::vector<int> keep;
  {
    std::vector<bool> drop(lp.rows(), false);
    for (int r : rep.redundant_rows) drop[r] = true;
    for (int r = 0; r < lp.rows(); ++r) {
      if (!drop[r]) keep.push_back(r);
    }
  }
  const SparseMatrix a = select_rows(lp.a_eq, keep);
  Eigen::VectorXd b(static_cast<Eigen::Index>(keep.size()));
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) b(i) = lp.b_eq(keep[i]);
  const Eigen::VectorXd& c = lp.c;
  const double b_norm = 1.0 + (b.size() ? b.cwiseAbs().maxCoeff() : 0.0);
  const double c_norm = 1.0 + (c.size() ? c.cwiseAbs().maxCoeff() : 0.0);

  auto finish = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y_kept, const Eigen::VectorXd& s) {
    rep.x = x;
    rep.y = Eigen::VectorXd::Zero(lp.rows());
    for (int i = 0; i < static_cast<int>(keep.size()); ++i) rep.y(keep[i]) = y_kept(i);
    rep.reduced_costs = s;
    rep.objective = c.dot(x);
    rep.max_primal_residual = (lp.a_eq * x - lp.b_eq).cwiseAbs().maxCoeff();
    rep.max_dual_residual = (c - lp.a_eq.transpose() * rep.y - s).cwiseAbs().maxCoeff();
  };

  NormalEquations normal(a);

  // Mehrotra's starting point.
  normal.factor(Eigen::VectorXd::Ones(n));
  Eigen::VectorXd x = a.transpose() * normal.solve(b);
  Eigen::VectorXd y = normal.solve(Eigen::VectorXd(a * c));
  Eigen::VectorXd s = c - a.transpose() * y;
  x.array() += std::max(-1.5 * x.minCoeff(), 0.0);
  s.array() += std::max(-1.5 * s.minCoeff(), 0.0);
  {
    const double xs = x.dot(s);
    if (xs > 0.0) {
      x.array() += 0.5 * xs / s.sum();
      s.array() += 0.5 * xs / x.sum();
    }
    for (int i = 0; i < n; ++i) {
      if (!(x(i) > 0.0)) x(i) = 1.0;
      if (!(s(i) > 0.0)) s(i) = 1.0;
    }
  }

  for (int iter = 0;; ++iter) {
    const Eigen::VectorXd rp = b - a * x;
    const Eigen::VectorXd rd = c - a.transpose() * y - s;
    const double mu = x.dot(s) / n;
    const double pobj = c.dot(x);
    const double dobj = b.dot(y);
    rep.mu_history.push_back(mu);
    rep.iterations = iter;
    rep.duality_gap = x.dot(s) / (1.0 + std::abs(pobj));

    const double primal_infeas = rp.size() ? rp.cwiseAbs().maxCoeff() / b_norm : 0.0;
    const double dual_infeas = rd.cwiseAbs().maxCoeff() / c_norm;
    if (primal_infeas <= opts.feasibility_tol && dual_infeas <= opts.feasibility_tol &&
        rep.duality_gap <= opts.gap_tol) {
      finish(x, y, s);
      const double tol = opts.feasibility_tol * (1.0 + lp.b_eq.cwiseAbs().maxCoeff());
      rep.status = rep.max_primal_residual <= tol ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
      return rep;
    }
    // Divergence of the iterates certifies infeasibility of one side.
    if (x.cwiseAbs().maxCoeff() > 1e10 * b_norm * c_norm && pobj < -1e8 * c_norm) {
      rep.status = SolveStatus::kUnbounded;
      finish(x, y, s);
      return rep;
    }
    if (y.size() && y.cwiseAbs().maxCoeff() > 1e10 * b_norm * c_norm && dobj > 1e8 * b_norm) {
      rep.status = SolveStatus::kInfeasible;
      finish(x, y, s);
      return rep;
    }
    if (iter >= opts.max_iterations) {
      std::ostringstream os;
      os << "ipm exceeded the iteration cap of " << opts.max_iterations << " (final relative gap "
         << rep.duality_gap << ", primal infeasibility " << primal_infeas << ")";
      throw Error(ErrorKind::kIterationCap, os.str());
    }

    const Eigen::VectorXd d = x.cwiseQuotient(s);
    normal.factor(d);

    auto direction = [&](const Eigen::VectorXd& rc, Eigen::VectorXd& dx, Eigen::VectorXd& dy, Eigen::VectorXd& ds) {
      normal.direction(rp, rd, rc, s, dx, dy, ds);
    };

    Eigen::VectorXd dx_aff, dy_aff, ds_aff;
    const Eigen::VectorXd xs = x.cwiseProduct(s);
    direction(-xs, dx_aff, dy_aff, ds_aff);
    const double ap_aff = std::min(1.0, max_step(x, dx_aff));
    const double ad_aff = std::min(1.0, max_step(s, ds_aff));
    const double mu_aff = (x + ap_aff * dx_aff).dot(s + ad_aff * ds_aff) / n;
    const double sigma = std::pow(mu_aff / mu, 3);

    Eigen::VectorXd dx, dy, ds;
    const Eigen::VectorXd rc = (-xs - dx_aff.cwiseProduct(ds_aff)).array() + sigma * mu;
    direction(rc, dx, dy, ds);
    const double ap = std::min(1.0, opts.step_fraction * max_step(x, dx));
    const double ad = std::min(1.0, opts.step_fraction * max_step(s, ds));
    x += ap * dx;
    y += ad * dy;
    s += ad * ds;
  }
}

}  // namespace ambush
