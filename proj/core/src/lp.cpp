#include "kato/lp.hpp"

#include <stdexcept>

namespace kato {

namespace {

// Dense phase-one tableau. Variables: x = xp - xm (free split), one slack per
// inequality, one artificial per row. Minimize the sum of artificials.
class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
  Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void pivot(int pr, int pc) {
    Rat inv = at(pr, pc);
    for (int j = 0; j < cols_; ++j) at(pr, j) /= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == pr || at(i, pc) == 0) continue;
      Rat f = at(i, pc);
      for (int j = 0; j < cols_; ++j) at(i, j) -= f * at(pr, j);
    }
  }

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

}  // namespace

std::optional<RatVec> lp_feasible(const std::vector<LinearConstraint>& equalities,
                                  const std::vector<LinearConstraint>& inequalities_ge) {
  int dim = -1;
  for (const auto& c : equalities) dim = static_cast<int>(c.coeffs.size());
  for (const auto& c : inequalities_ge) dim = static_cast<int>(c.coeffs.size());
  if (dim < 0) return RatVec{};  // no constraints, empty witness
  for (const auto& c : equalities)
    if (static_cast<int>(c.coeffs.size()) != dim)
      throw std::invalid_argument("lp_feasible: mixed dimensions");
  for (const auto& c : inequalities_ge)
    if (static_cast<int>(c.coeffs.size()) != dim)
      throw std::invalid_argument("lp_feasible: mixed dimensions");

  int m = static_cast<int>(equalities.size() + inequalities_ge.size());
  if (m == 0) return RatVec(dim, Rat(0));
  int n_slack = static_cast<int>(inequalities_ge.size());
  // Columns: [xp(dim) | xm(dim) | slack(n_slack) | artificial(m) | rhs]
  int n_struct = 2 * dim + n_slack;
  int n_cols = n_struct + m + 1;
  Tableau t(m + 1, n_cols);  // last row: phase-one objective

  int r = 0;
  auto load_row = [&](const LinearConstraint& c, int slack_idx) {
    bool neg = c.rhs < 0;
    Rat s = neg ? Rat(-1) : Rat(1);
    for (int j = 0; j < dim; ++j) {
      t.at(r, j) = s * c.coeffs[j];
      t.at(r, dim + j) = -s * c.coeffs[j];
    }
    if (slack_idx >= 0) t.at(r, 2 * dim + slack_idx) = -s;  // a.x - slack = rhs
    t.at(r, n_struct + r) = 1;
    t.at(r, n_cols - 1) = s * c.rhs;
    ++r;
  };
  for (const auto& c : equalities) load_row(c, -1);
  for (size_t k = 0; k < inequalities_ge.size(); ++k)
    load_row(inequalities_ge[k], static_cast<int>(k));

  // Objective row: minimize sum of artificials == maximize -sum.
  // Express reduced costs by subtracting each constraint row.
  for (int j = 0; j < n_cols; ++j) {
    Rat s = 0;
    for (int i = 0; i < m; ++i) s += t.at(i, j);
    t.at(m, j) = -s;
  }
  for (int i = 0; i < m; ++i) t.at(m, n_struct + i) = 0;

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n_struct + i;

  for (;;) {
    // Bland: entering column = lowest index with negative reduced cost.
    int enter = -1;
    for (int j = 0; j < n_cols - 1; ++j)
      if (t.at(m, j) < 0) { enter = j; break; }
    if (enter < 0) break;
    // Leaving row: min ratio, ties by lowest basis index.
    int leave = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      if (t.at(i, enter) <= 0) continue;
      Rat ratio = t.at(i, n_cols - 1) / t.at(i, enter);
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) throw std::logic_error("lp_feasible: phase-one unbounded");
    t.pivot(leave, enter);
    basis[leave] = enter;
  }

  if (t.at(m, n_cols - 1) != 0) return std::nullopt;  // optimum > 0: infeasible

  // Pivot any artificial still basic (at value 0) out, or its row is redundant.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n_struct) continue;
    int enter = -1;
    for (int j = 0; j < n_struct; ++j)
      if (t.at(i, j) != 0) { enter = j; break; }
    if (enter >= 0) {
      t.pivot(i, enter);
      basis[i] = enter;
    }
  }

  RatVec x(dim, Rat(0));
  for (int i = 0; i < m; ++i) {
    if (basis[i] >= 2 * dim) continue;
    Rat val = t.at(i, n_cols - 1);
    if (basis[i] < dim)
      x[basis[i]] += val;
    else
      x[basis[i] - dim] -= val;
  }
  return x;
}

}  // namespace kato
