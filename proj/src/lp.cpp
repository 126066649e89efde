#include "contracta/lp.hpp"

#include <cmath>
#include <limits>

#include "contracta/error.hpp"
#include "contracta/settings.hpp"

namespace contracta {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxPivots = 200000;

// How an original variable maps onto nonnegative standard-form columns.
struct VariableMap {
  enum class Kind { Shift, Mirror, Split } kind;
  double offset;     // lower bound (Shift) or upper bound (Mirror)
  std::size_t col;   // first standard-form column
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }
  double& value() { return at(rows_, cols_); }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Recomputes the reduced-cost row for maximizing costs^T z.
  void price(const Vector& costs) {
    for (std::size_t c = 0; c <= cols_; ++c) {
      double acc = c < cols_ ? -costs[c] : 0.0;
      for (std::size_t r = 0; r < rows_; ++r) acc += costs[basis_[r]] * at(r, c);
      cost(c) = acc;
    }
  }

  enum class Result { Optimal, Unbounded };

  // Bland's rule: first improving column enters; among minimum-ratio rows the
  // one with the smallest basic index leaves.
  Result run(std::size_t eligible_cols, double opt_tol, double pivot_tol) {
    for (int iter = 0; iter < kMaxPivots; ++iter) {
      std::size_t enter = eligible_cols;
      for (std::size_t c = 0; c < eligible_cols; ++c) {
        if (cost(c) < -opt_tol) {
          enter = c;
          break;
        }
      }
      if (enter == eligible_cols) return Result::Optimal;

      std::size_t leave = rows_;
      double best = kInf;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a <= pivot_tol) continue;
        const double ratio = std::max(0.0, rhs(r)) / a;
        if (leave == rows_) {
          best = ratio;
          leave = r;
          continue;
        }
        const double slack = 1e-12 * (1.0 + best);
        if (ratio < best - slack) {
          best = ratio;
          leave = r;
        } else if (ratio <= best + slack && basis_[r] < basis_[leave]) {
          best = std::min(best, ratio);
          leave = r;
        }
      }
      if (leave == rows_) return Result::Unbounded;
      pivot(leave, enter);
    }
    throw Error(ErrorCode::IterationLimit, "simplex exceeded pivot budget");
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

void validate(const LinearProgram& p) {
  const std::size_t n = p.objective.size();
  if (p.constraints.rows() > 0 && p.constraints.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "constraint column count differs from objective length");
  if (p.rhs.size() != p.constraints.rows())
    throw Error(ErrorCode::DimensionMismatch, "rhs length differs from constraint row count");
  if (!p.lower.empty() && p.lower.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "lower bound length differs from variable count");
  if (!p.upper.empty() && p.upper.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "upper bound length differs from variable count");
  for (double v : p.objective)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "objective entry not finite");
  for (double v : p.rhs)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "rhs entry not finite");
}

}  // namespace

double feasibility_residual(const LinearProgram& p, std::span<const double> x) {
  double worst = -kInf;
  for (std::size_t i = 0; i < p.constraints.rows(); ++i)
    worst = std::max(worst, dot(p.constraints.row(i), x) - p.rhs[i]);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!p.lower.empty() && std::isfinite(p.lower[j])) worst = std::max(worst, p.lower[j] - x[j]);
    if (!p.upper.empty() && std::isfinite(p.upper[j])) worst = std::max(worst, x[j] - p.upper[j]);
  }
  return worst;
}

LpOutcome solve_lp(const LinearProgram& p) {
  validate(p);
  const Settings cfg = settings();
  const std::size_t n = p.objective.size();
  const std::size_t m = p.constraints.rows();

  // Map each variable to nonnegative standard-form columns.
  std::vector<VariableMap> maps;
  maps.reserve(n);
  std::size_t std_cols = 0;
  std::vector<std::pair<std::size_t, double>> range_rows;  // (column, width)
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = p.lower.empty() ? -kInf : p.lower[j];
    const double hi = p.upper.empty() ? kInf : p.upper[j];
    if (std::isfinite(lo)) {
      maps.push_back({VariableMap::Kind::Shift, lo, std_cols});
      if (std::isfinite(hi)) range_rows.emplace_back(std_cols, hi - lo);
      std_cols += 1;
    } else if (std::isfinite(hi)) {
      maps.push_back({VariableMap::Kind::Mirror, hi, std_cols});
      std_cols += 1;
    } else {
      maps.push_back({VariableMap::Kind::Split, 0.0, std_cols});
      std_cols += 2;
    }
  }

  const std::size_t rows = m + range_rows.size();
  DenseMatrix a(rows, std_cols);
  Vector b(rows);
  Vector c(std_cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& vm = maps[j];
    switch (vm.kind) {
      case VariableMap::Kind::Shift:
        c[vm.col] = p.objective[j];
        break;
      case VariableMap::Kind::Mirror:
        c[vm.col] = -p.objective[j];
        break;
      case VariableMap::Kind::Split:
        c[vm.col] = p.objective[j];
        c[vm.col + 1] = -p.objective[j];
        break;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    double bi = p.rhs[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double aij = p.constraints(i, j);
      const auto& vm = maps[j];
      switch (vm.kind) {
        case VariableMap::Kind::Shift:
          a(i, vm.col) = aij;
          bi -= aij * vm.offset;
          break;
        case VariableMap::Kind::Mirror:
          a(i, vm.col) = -aij;
          bi -= aij * vm.offset;
          break;
        case VariableMap::Kind::Split:
          a(i, vm.col) = aij;
          a(i, vm.col + 1) = -aij;
          break;
      }
    }
    b[i] = bi;
  }
  for (std::size_t k = 0; k < range_rows.size(); ++k) {
    a(m + k, range_rows[k].first) = 1.0;
    b[m + k] = range_rows[k].second;
  }

  // Columns: structural | slacks | artificials (one per negative-rhs row).
  std::size_t n_art = 0;
  for (double bi : b)
    if (bi < 0.0) ++n_art;
  const std::size_t slack0 = std_cols;
  const std::size_t art0 = std_cols + rows;
  Tableau t(rows, art0 + n_art);
  double rhs_scale = 1.0;
  {
    std::size_t next_art = art0;
    for (std::size_t i = 0; i < rows; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < std_cols; ++j) t.at(i, j) = sign * a(i, j);
      t.at(i, slack0 + i) = sign;
      t.rhs(i) = sign * b[i];
      rhs_scale = std::max(rhs_scale, std::abs(b[i]));
      if (sign < 0.0) {
        t.at(i, next_art) = 1.0;
        t.basic(i) = next_art++;
      } else {
        t.basic(i) = slack0 + i;
      }
    }
  }

  if (n_art > 0) {
    Vector phase1(t.cols(), 0.0);
    for (std::size_t j = art0; j < t.cols(); ++j) phase1[j] = -1.0;
    t.price(phase1);
    t.run(t.cols(), cfg.opt_tol, cfg.pivot_tol);
    if (t.value() < -cfg.feas_tol * rhs_scale) return {LpStatus::Infeasible, 0.0, std::nullopt};
    // Drive remaining artificials out of the basis where possible.
    for (std::size_t r = 0; r < rows; ++r) {
      if (t.basic(r) < art0) continue;
      std::size_t best = art0;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(t.at(r, j)) > cfg.pivot_tol &&
            (best == art0 || std::abs(t.at(r, j)) > std::abs(t.at(r, best))))
          best = j;
      }
      if (best < art0) t.pivot(r, best);
    }
  }

  Vector phase2(t.cols(), 0.0);
  for (std::size_t j = 0; j < std_cols; ++j) phase2[j] = c[j];
  t.price(phase2);
  if (t.run(art0, cfg.opt_tol, cfg.pivot_tol) == Tableau::Result::Unbounded)
    return {LpStatus::Unbounded, kInf, std::nullopt};

  Vector z(t.cols(), 0.0);
  for (std::size_t r = 0; r < rows; ++r) z[t.basic(r)] = std::max(0.0, t.rhs(r));
  Vector x(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& vm = maps[j];
    switch (vm.kind) {
      case VariableMap::Kind::Shift: x[j] = vm.offset + z[vm.col]; break;
      case VariableMap::Kind::Mirror: x[j] = vm.offset - z[vm.col]; break;
      case VariableMap::Kind::Split: x[j] = z[vm.col] - z[vm.col + 1]; break;
    }
  }
  const double value = dot(p.objective, x);
  return {LpStatus::Optimal, value, std::move(x)};
}

}  // namespace contracta
