#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ambush/error.hpp"
#include "ambush/solver.hpp"

namespace ambush {

const char* to_string(SolverKind kind) { return kind == SolverKind::kSimplex ? "simplex" : "ipm"; }

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

SolverKind solver_from_string(const std::string& name) {
  if (name == "simplex") return SolverKind::kSimplex;
  if (name == "ipm") return SolverKind::kIpm;
  throw Error(ErrorKind::kUsage, "unknown solver '" + name + "' (expected simplex or ipm)");
}

SolveReport solve_lp(const StandardLP& lp, SolverKind kind, const SolverOptions& opts) {
  return kind == SolverKind::kSimplex ? simplex_solve(lp, opts.simplex) : ipm_solve(lp, opts.ipm);
}

namespace {

// Revised simplex over the row-sign-normalised problem (b >= 0). Columns
// [0, n) are structural, [n, n + artificials) are artificial unit columns.
class RevisedSimplex {
 public:
  RevisedSimplex(const StandardLP& lp, const SimplexOptions& opts)
      : lp_(lp), opts_(opts), m_(lp.rows()), n_(lp.cols()) {
    sign_ = Eigen::VectorXd::Ones(m_);
    for (int r = 0; r < m_; ++r) {
      if (lp_.b_eq(r) < 0) sign_(r) = -1.0;
    }
    b_ = sign_.cwiseProduct(lp_.b_eq);
  }

  SolveReport solve() {
    SolveReport rep;
    rep.solver = SolverKind::kSimplex;
    initial_basis();

    if (!artificial_rows_.empty()) {
      Eigen::VectorXd cost = Eigen::VectorXd::Zero(n_ + num_art());
      cost.tail(num_art()).setOnes();
      const Outcome phase1 = run(cost);
      if (phase1 == Outcome::kUnbounded) {
        throw Error(ErrorKind::kSolver, "simplex phase I reported an unbounded ray");
      }
      double infeas = 0.0;
      for (int r = 0; r < m_; ++r) {
        if (basis_[r] >= n_) infeas += std::max(0.0, x_basic_(r));
      }
      rep.phase1_infeasibility = infeas;
      if (infeas > opts_.feasibility_tol * (1.0 + b_.cwiseAbs().maxCoeff())) {
        rep.status = SolveStatus::kInfeasible;
        rep.iterations = iterations_;
        return rep;
      }
      drive_out_artificials(rep);
    }

    Eigen::VectorXd cost = Eigen::VectorXd::Zero(n_ + num_art());
    cost.head(n_) = lp_.c;
    const Outcome phase2 = run(cost);
    rep.iterations = iterations_;
    if (phase2 == Outcome::kUnbounded) {
      rep.status = SolveStatus::kUnbounded;
      rep.unbounded_column = unbounded_column_;
      return rep;
    }

    rep.status = SolveStatus::kOptimal;
    rep.x = Eigen::VectorXd::Zero(n_);
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_) rep.x(basis_[r]) = std::max(0.0, x_basic_(r));
    }
    rep.objective = lp_.c.dot(rep.x);
    const Eigen::VectorXd y = duals(cost);
    rep.y = sign_.cwiseProduct(y);
    rep.reduced_costs = lp_.c - lp_.a_eq.transpose() * rep.y;
    rep.max_primal_residual = (lp_.a_eq * rep.x - lp_.b_eq).cwiseAbs().maxCoeff();
    return rep;
  }

 private:
  enum class Outcome { kOptimal, kUnbounded };

  [[nodiscard]] int num_art() const { return static_cast<int>(artificial_rows_.size()); }

  // Column j of the normalised matrix, dense.
  Eigen::VectorXd column(int j) const {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(m_);
    if (j >= n_) {
      col(artificial_rows_[j - n_]) = 1.0;
      return col;
    }
    for (SparseMatrix::InnerIterator it(lp_.a_eq, j); it; ++it) col(it.row()) = sign_(it.row()) * it.value();
    return col;
  }

  double dot_column(const Eigen::VectorXd& v, int j) const {
    if (j >= n_) return v(artificial_rows_[j - n_]);
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(lp_.a_eq, j); it; ++it) s += v(it.row()) * sign_(it.row()) * it.value();
    return s;
  }

  void initial_basis() {
    basis_.assign(m_, -1);
    // Reuse structural columns that are positive multiples of a unit vector.
    for (int j = 0; j < n_; ++j) {
      int nnz = 0;
      int row = -1;
      double val = 0.0;
      for (SparseMatrix::InnerIterator it(lp_.a_eq, j); it; ++it) {
        if (it.value() == 0.0) continue;
        ++nnz;
        row = static_cast<int>(it.row());
        val = sign_(row) * it.value();
      }
      if (nnz == 1 && val > 0.0 && basis_[row] < 0) basis_[row] = j;
    }
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < 0) {
        basis_[r] = n_ + num_art();
        artificial_rows_.push_back(r);
      }
    }
    is_basic_.assign(n_ + num_art(), false);
    for (int r = 0; r < m_; ++r) is_basic_[basis_[r]] = true;
    refactor();
  }

  void refactor() {
    Eigen::MatrixXd basis_matrix(m_, m_);
    for (int r = 0; r < m_; ++r) basis_matrix.col(r) = column(basis_[r]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    binv_ = lu.inverse();
    x_basic_ = binv_ * b_;
  }

  Eigen::VectorXd duals(const Eigen::VectorXd& cost) const {
    Eigen::VectorXd cb(m_);
    for (int r = 0; r < m_; ++r) cb(r) = cost(basis_[r]);
    return binv_.transpose() * cb;
  }

  void pivot(int row, int entering, const Eigen::VectorXd& u) {
    const double piv = u(row);
    const double theta = x_basic_(row) / piv;
    x_basic_ -= theta * u;
    x_basic_(row) = theta;
    binv_.row(row) /= piv;
    const Eigen::RowVectorXd pivot_row = binv_.row(row);
    for (int i = 0; i < m_; ++i) {
      if (i != row && u(i) != 0.0) binv_.row(i) -= u(i) * pivot_row;
    }
    is_basic_[basis_[row]] = false;
    basis_[row] = entering;
    is_basic_[entering] = true;
    ++iterations_;
    if (iterations_ % opts_.refactor_interval == 0) refactor();
  }

  Outcome run(const Eigen::VectorXd& cost) {
    while (true) {
      if (iterations_ >= opts_.max_iterations) {
        throw Error(ErrorKind::kIterationCap,
                    "simplex exceeded the iteration cap of " + std::to_string(opts_.max_iterations));
      }
      const Eigen::VectorXd y = duals(cost);
      // Bland: lowest-index improving column. Artificials never re-enter.
      int entering = -1;
      for (int j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        if (cost(j) - dot_column(y, j) < -opts_.optimality_tol) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return Outcome::kOptimal;

      const Eigen::VectorXd u = binv_ * column(entering);
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m_; ++r) {
        if (u(r) <= opts_.pivot_tol) continue;
        const double ratio = std::max(0.0, x_basic_(r)) / u(r);
        if (leave < 0) {
          best = ratio;
          leave = r;
          continue;
        }
        const double slack = 1e-12 * (1.0 + best);
        if (ratio < best - slack) {
          best = ratio;
          leave = r;
        } else if (ratio <= best + slack && basis_[r] < basis_[leave]) {
          leave = r;
        }
      }
      if (leave < 0) {
        unbounded_column_ = entering;
        return Outcome::kUnbounded;
      }
      pivot(leave, entering, u);
    }
  }

  // Swaps zero-valued basic artificials for structural columns where possible;
  // the rest mark linearly dependent rows and stay basic at zero.
  void drive_out_artificials(SolveReport& rep) {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      const Eigen::RowVectorXd row = binv_.row(r);
      int entering = -1;
      for (int j = 0; j < n_; ++j) {
        if (!is_basic_[j] && std::abs(dot_column(row.transpose(), j)) > 1e-7) {
          entering = j;
          break;
        }
      }
      if (entering < 0) {
        rep.redundant_rows.push_back(artificial_rows_[basis_[r] - n_]);
        continue;
      }
      const Eigen::VectorXd u = binv_ * column(entering);
      pivot(r, entering, u);
    }
  }

  const StandardLP& lp_;
  SimplexOptions opts_;
  int m_;
  int n_;
  Eigen::VectorXd sign_;
  Eigen::VectorXd b_;
  std::vector<int> artificial_rows_;
  std::vector<int> basis_;
  std::vector<bool> is_basic_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd x_basic_;
  int iterations_ = 0;
  int unbounded_column_ = -1;
};

}  // namespace

SolveReport simplex_solve(const StandardLP& lp, const SimplexOptions& opts) {
  if (lp.rows() == 0) {
    SolveReport rep;
    rep.solver = SolverKind::kSimplex;
    rep.x = Eigen::VectorXd::Zero(lp.cols());
    for (int j = 0; j < lp.cols(); ++j) {
      if (lp.c(j) < 0) {
        rep.status = SolveStatus::kUnbounded;
        rep.unbounded_column = j;
        return rep;
      }
    }
    rep.y = Eigen::VectorXd::Zero(0);
    rep.reduced_costs = lp.c;
    return rep;
  }
  return RevisedSimplex(lp, opts).solve();
}

}  // namespace ambush
