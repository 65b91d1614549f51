#include "tspgap/lp.hpp"

#include <utility>

#include "tspgap/errors.hpp"

namespace tspgap {

int LinearProgram::add_variable(Rat cost, Rat lower, std::optional<Rat> upper) {
  if (upper && *upper < lower) throw ValidationError("variable upper bound below lower bound");
  variables_.push_back(LpVariable{std::move(cost), std::move(lower), std::move(upper)});
  return num_variables() - 1;
}

int LinearProgram::add_constraint(LpConstraint constraint) {
  for (const auto& t : constraint.terms) {
    if (t.variable < 0 || t.variable >= num_variables()) {
      throw ValidationError("constraint references undeclared variable " + std::to_string(t.variable));
    }
  }
  constraints_.push_back(std::move(constraint));
  return num_constraints() - 1;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

namespace {

// Tableau over shifted variables x' = x - lower, so every column has lower
// bound 0. Columns: structurals, one slack per row, one artificial per row.
class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp)
      : lp_(lp), nv_(lp.num_variables()), m_(lp.num_constraints()), cols_(nv_ + 2 * m_) {}

  LpSolution run() {
    build();
    LpSolution out;
    bool need_phase1 = false;
    for (int i = 0; i < m_; ++i) need_phase1 |= basis_[i] >= nv_ + m_;
    if (need_phase1) {
      std::vector<Rat> phase1(cols_, Rat(0));
      for (int i = 0; i < m_; ++i) {
        if (!upper_[art(i)]) phase1[art(i)] = 1;
      }
      set_costs(phase1);
      iterate(/*allow_artificial=*/true);
      Rat infeasibility = 0;
      for (int i = 0; i < m_; ++i) infeasibility += x_[art(i)];
      if (infeasibility > 0) {
        out.status = LpStatus::kInfeasible;
        out.pivots = pivots_;
        return out;
      }
      drive_out_artificials();
    }
    for (int i = 0; i < m_; ++i) upper_[art(i)] = Rat(0);

    std::vector<Rat> phase2(cols_, Rat(0));
    for (int j = 0; j < nv_; ++j) phase2[j] = lp_.variables()[j].cost;
    set_costs(phase2);
    if (!iterate(/*allow_artificial=*/false)) {
      out.status = LpStatus::kUnbounded;
      out.pivots = pivots_;
      return out;
    }
    return extract();
  }

 private:
  int slack(int i) const { return nv_ + i; }
  int art(int i) const { return nv_ + m_ + i; }

  void build() {
    tableau_.assign(m_, std::vector<Rat>(cols_, Rat(0)));
    upper_.assign(cols_, std::nullopt);
    x_.assign(cols_, Rat(0));
    at_upper_.assign(cols_, false);
    basic_.assign(cols_, false);
    basis_.assign(m_, -1);
    sigma_.assign(m_, 1);

    for (int j = 0; j < nv_; ++j) {
      const auto& v = lp_.variables()[j];
      if (v.upper) upper_[j] = *v.upper - v.lower;
    }
    for (int i = 0; i < m_; ++i) {
      const auto& c = lp_.constraints()[i];
      Rat residual = c.rhs;
      for (const auto& t : c.terms) {
        tableau_[i][t.variable] += t.coefficient;
        residual -= t.coefficient * lp_.variables()[t.variable].lower;
      }
      int slack_coef = c.relation == Relation::kGreaterEqual ? -1 : 1;
      tableau_[i][slack(i)] = slack_coef;
      if (c.relation == Relation::kEqual) upper_[slack(i)] = Rat(0);

      const bool slack_fits = c.relation == Relation::kEqual ? residual == 0 : residual * slack_coef >= 0;
      int basic_col;
      int coef;
      if (slack_fits) {
        basic_col = slack(i);
        coef = slack_coef;
        upper_[art(i)] = Rat(0);
      } else {
        sigma_[i] = residual < 0 ? -1 : 1;
        basic_col = art(i);
        coef = sigma_[i];
      }
      tableau_[i][art(i)] = sigma_[i];
      if (coef == -1) {
        for (auto& a : tableau_[i]) a = -a;
      }
      basis_[i] = basic_col;
      basic_[basic_col] = true;
      x_[basic_col] = coef == -1 ? Rat(-residual) : residual;
    }
  }

  void set_costs(const std::vector<Rat>& costs) {
    cost_ = costs;
    reduced_ = costs;
    for (int i = 0; i < m_; ++i) {
      const Rat& cb = cost_[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j < cols_; ++j) {
        if (tableau_[i][j] != 0) reduced_[j] -= cb * tableau_[i][j];
      }
    }
  }

  bool is_artificial(int j) const { return j >= nv_ + m_; }

  bool movable(int j) const { return !upper_[j] || *upper_[j] != 0; }

  // Returns false when the objective is unbounded below.
  bool iterate(bool allow_artificial) {
    for (;;) {
      int q = -1;
      for (int j = 0; j < cols_; ++j) {
        if (basic_[j] || !movable(j)) continue;
        if (!allow_artificial && is_artificial(j)) continue;
        if ((!at_upper_[j] && reduced_[j] < 0) || (at_upper_[j] && reduced_[j] > 0)) {
          q = j;
          break;
        }
      }
      if (q < 0) return true;
      const int dir = at_upper_[q] ? -1 : 1;

      // Ratio test; ties broken by smallest column index (Bland).
      std::optional<Rat> best;
      int leave_row = -1;  // -1 with best set means a bound flip of q
      int leave_col = -1;
      bool leave_to_upper = false;
      if (upper_[q]) {
        best = *upper_[q];
        leave_col = q;
      }
      for (int i = 0; i < m_; ++i) {
        const Rat& a = tableau_[i][q];
        if (a == 0) continue;
        const int b = basis_[i];
        Rat rate = dir > 0 ? Rat(-a) : a;
        Rat limit;
        bool to_upper;
        if (rate < 0) {
          limit = x_[b] / -rate;
          to_upper = false;
        } else if (upper_[b]) {
          limit = (*upper_[b] - x_[b]) / rate;
          to_upper = true;
        } else {
          continue;
        }
        if (!best || limit < *best || (limit == *best && b < leave_col)) {
          best = limit;
          leave_row = i;
          leave_col = b;
          leave_to_upper = to_upper;
        }
      }
      if (!best) return false;
      const Rat step = *best;

      if (step != 0) {
        for (int i = 0; i < m_; ++i) {
          const Rat& a = tableau_[i][q];
          if (a == 0) continue;
          if (dir > 0) {
            x_[basis_[i]] -= a * step;
          } else {
            x_[basis_[i]] += a * step;
          }
        }
        if (dir > 0) {
          x_[q] += step;
        } else {
          x_[q] -= step;
        }
      }
      if (leave_row < 0) {
        at_upper_[q] = !at_upper_[q];
        x_[q] = at_upper_[q] ? *upper_[q] : Rat(0);
        continue;
      }
      const int out = basis_[leave_row];
      x_[out] = leave_to_upper ? *upper_[out] : Rat(0);
      at_upper_[out] = leave_to_upper;
      at_upper_[q] = false;
      pivot(leave_row, q);
    }
  }

  void pivot(int r, int q) {
    ++pivots_;
    auto& row = tableau_[r];
    const Rat inv = 1 / row[q];
    std::vector<int> nz;
    for (int j = 0; j < cols_; ++j) {
      if (row[j] != 0) {
        row[j] *= inv;
        nz.push_back(j);
      }
    }
    for (int i = 0; i < m_; ++i) {
      if (i == r || tableau_[i][q] == 0) continue;
      const Rat f = tableau_[i][q];
      for (int j : nz) tableau_[i][j] -= f * row[j];
    }
    if (reduced_[q] != 0) {
      const Rat f = reduced_[q];
      for (int j : nz) reduced_[j] -= f * row[j];
    }
    basic_[basis_[r]] = false;
    basic_[q] = true;
    basis_[r] = q;
  }

  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (int j = 0; j < nv_ + m_; ++j) {
        if (!basic_[j] && tableau_[r][j] != 0) {
          const int out = basis_[r];
          x_[out] = 0;
          pivot(r, j);
          break;
        }
      }
      // Otherwise the row is redundant; its artificial stays basic at zero.
    }
  }

  LpSolution extract() {
    LpSolution out;
    out.status = LpStatus::kOptimal;
    out.pivots = pivots_;
    out.basis = basis_;
    out.values.resize(nv_);
    out.objective = 0;
    for (int j = 0; j < nv_; ++j) {
      const auto& v = lp_.variables()[j];
      out.values[j] = x_[j] + v.lower;
      out.objective += v.cost * out.values[j];
    }
    // B^{-1} e_i = sigma_i * (artificial column i of the tableau), so
    // y_i = -sigma_i * reduced cost of artificial i (its cost is zero).
    out.duals.resize(m_);
    for (int i = 0; i < m_; ++i) {
      out.duals[i] = sigma_[i] > 0 ? Rat(-reduced_[art(i)]) : reduced_[art(i)];
    }
    out.reduced_costs.assign(reduced_.begin(), reduced_.begin() + nv_);
    out.dual_objective = 0;
    for (int i = 0; i < m_; ++i) out.dual_objective += lp_.constraints()[i].rhs * out.duals[i];
    for (int j = 0; j < nv_; ++j) {
      const auto& v = lp_.variables()[j];
      const Rat& d = out.reduced_costs[j];
      if (d > 0) {
        out.dual_objective += d * v.lower;
      } else if (d < 0 && v.upper) {
        out.dual_objective += d * *v.upper;
      }
    }
    return out;
  }

  const LinearProgram& lp_;
  int nv_;
  int m_;
  int cols_;
  std::vector<std::vector<Rat>> tableau_;
  std::vector<std::optional<Rat>> upper_;
  std::vector<Rat> x_;
  std::vector<bool> at_upper_;
  std::vector<bool> basic_;
  std::vector<int> basis_;
  std::vector<int> sigma_;
  std::vector<Rat> cost_;
  std::vector<Rat> reduced_;
  int pivots_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) { return Simplex(lp).run(); }

LpSolution add_constraint_and_resolve(LinearProgram& lp, const LpSolution& previous,
                                      LpConstraint constraint) {
  if (previous.status != LpStatus::kOptimal) {
    throw PreconditionError("add_constraint_and_resolve needs an optimal previous solution");
  }
  lp.add_constraint(std::move(constraint));
  return solve_lp(lp);
}

std::optional<std::string> check_optimality_certificate(const LinearProgram& lp,
                                                        const LpSolution& s) {
  if (s.status != LpStatus::kOptimal) return "solution is not optimal";
  const int nv = lp.num_variables();
  const int m = lp.num_constraints();
  if (static_cast<int>(s.values.size()) != nv || static_cast<int>(s.duals.size()) != m) {
    return "size mismatch";
  }
  for (int j = 0; j < nv; ++j) {
    const auto& v = lp.variables()[j];
    if (s.values[j] < v.lower || (v.upper && s.values[j] > *v.upper)) {
      return "variable " + std::to_string(j) + " violates its bounds";
    }
  }
  std::vector<Rat> reduced(nv);
  for (int j = 0; j < nv; ++j) reduced[j] = lp.variables()[j].cost;
  Rat primal = 0;
  for (int j = 0; j < nv; ++j) primal += lp.variables()[j].cost * s.values[j];
  Rat dual = 0;
  for (int i = 0; i < m; ++i) {
    const auto& c = lp.constraints()[i];
    Rat lhs = 0;
    for (const auto& t : c.terms) {
      lhs += t.coefficient * s.values[t.variable];
      reduced[t.variable] -= s.duals[i] * t.coefficient;
    }
    const Rat& y = s.duals[i];
    switch (c.relation) {
      case Relation::kLessEqual:
        if (lhs > c.rhs) return "row " + std::to_string(i) + " violated";
        if (y > 0) return "row " + std::to_string(i) + " dual has wrong sign";
        break;
      case Relation::kGreaterEqual:
        if (lhs < c.rhs) return "row " + std::to_string(i) + " violated";
        if (y < 0) return "row " + std::to_string(i) + " dual has wrong sign";
        break;
      case Relation::kEqual:
        if (lhs != c.rhs) return "row " + std::to_string(i) + " violated";
        break;
    }
    if (y != 0 && lhs != c.rhs) return "row " + std::to_string(i) + " not tight but dual nonzero";
    dual += y * c.rhs;
  }
  for (int j = 0; j < nv; ++j) {
    const auto& v = lp.variables()[j];
    const Rat& d = reduced[j];
    if (d != s.reduced_costs[j]) return "reported reduced cost " + std::to_string(j) + " mismatch";
    if (d > 0) {
      if (s.values[j] != v.lower) return "variable " + std::to_string(j) + " has d>0 off its lower bound";
      dual += d * v.lower;
    } else if (d < 0) {
      if (!v.upper || s.values[j] != *v.upper) {
        return "variable " + std::to_string(j) + " has d<0 off its upper bound";
      }
      dual += d * *v.upper;
    }
  }
  if (dual != primal) return "dual objective " + to_string(dual) + " != primal " + to_string(primal);
  if (dual != s.dual_objective) return "reported dual objective mismatch";
  return std::nullopt;
}

}  // namespace tspgap
