#include "protoselect/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "protoselect/errors.hpp"

namespace protoselect {

namespace {

constexpr double kPivotTol = 1e-9;      // entries below this are treated as zero
constexpr double kObjectiveTol = 1e-7;  // phase-one feasibility threshold
constexpr double kInf = std::numeric_limits<double>::infinity();

const char* relation_text(Relation r) {
  switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::Equal: return "=";
    default: return ">=";
  }
}

}  // namespace

void LinearProgramDense::validate() const {
  const std::size_t n = num_vars();
  const std::size_t m = num_rows();
  if (n == 0) {
    throw InvalidInputError("lp: no variables");
  }
  if (constraints.rows() != m || (m > 0 && constraints.cols() != n)) {
    throw InvalidInputError("lp: constraint matrix shape mismatch");
  }
  if (relations.size() != m || lower.size() != n || upper.size() != n) {
    throw InvalidInputError("lp: field length mismatch");
  }
  for (const double v : objective) {
    if (!std::isfinite(v)) {
      throw InvalidInputError("lp: non-finite objective coefficient");
    }
  }
  if (!constraints.all_finite()) {
    throw InvalidInputError("lp: non-finite constraint coefficient");
  }
  for (const double v : rhs) {
    if (!std::isfinite(v)) {
      throw InvalidInputError("lp: non-finite right-hand side");
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lower[j])) {
      throw InvalidInputError("lp: lower bounds must be finite");
    }
    if (std::isnan(upper[j]) || upper[j] < lower[j]) {
      throw InvalidInputError("lp: empty bound interval");
    }
  }
}

std::string LinearProgramDense::to_text() const {
  std::ostringstream out;
  out.precision(17);
  out << "minimize";
  for (std::size_t j = 0; j < num_vars(); ++j) {
    out << (j == 0 ? " " : " + ") << objective[j] << " x" << j;
  }
  out << "\nsubject to\n";
  for (std::size_t r = 0; r < num_rows(); ++r) {
    bool first = true;
    for (std::size_t j = 0; j < num_vars(); ++j) {
      const double a = constraints(r, j);
      if (a == 0.0) {
        continue;
      }
      out << (first ? "  " : " + ") << a << " x" << j;
      first = false;
    }
    if (first) {
      out << "  0";
    }
    out << " " << relation_text(relations[r]) << " " << rhs[r] << "\n";
  }
  out << "bounds\n";
  for (std::size_t j = 0; j < num_vars(); ++j) {
    out << "  " << lower[j] << " <= x" << j << " <= ";
    if (upper[j] == kInf) {
      out << "inf";
    } else {
      out << upper[j];
    }
    out << "\n";
  }
  return out.str();
}

namespace {

// Internal standard form after shifting out lower bounds and normalizing
// right-hand sides to be nonnegative.
struct Row {
  std::vector<double> a;
  double b = 0.0;
  Relation rel = Relation::LessEqual;
};

}  // namespace

SimplexResult solve_simplex(const LinearProgramDense& lp, std::size_t max_iterations) {
  lp.validate();
  const std::size_t n = lp.num_vars();

  // Substitute x = lower + y (y >= 0) and turn finite upper bounds into rows.
  std::vector<Row> rows;
  rows.reserve(lp.num_rows() + n);
  for (std::size_t r = 0; r < lp.num_rows(); ++r) {
    Row row;
    row.a.assign(n, 0.0);
    double shift = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row.a[j] = lp.constraints(r, j);
      shift += row.a[j] * lp.lower[j];
    }
    row.b = lp.rhs[r] - shift;
    row.rel = lp.relations[r];
    rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.upper[j] == kInf) {
      continue;
    }
    Row row;
    row.a.assign(n, 0.0);
    row.a[j] = 1.0;
    row.b = lp.upper[j] - lp.lower[j];
    row.rel = Relation::LessEqual;
    rows.push_back(std::move(row));
  }
  for (Row& row : rows) {
    if (row.b < 0.0) {
      for (double& v : row.a) {
        v = -v;
      }
      row.b = -row.b;
      if (row.rel == Relation::LessEqual) {
        row.rel = Relation::GreaterEqual;
      } else if (row.rel == Relation::GreaterEqual) {
        row.rel = Relation::LessEqual;
      }
    }
  }

  // Column layout: y variables, then one slack/surplus per row, then one
  // artificial per >=/= row.
  const std::size_t m = rows.size();
  std::size_t num_artificial = 0;
  for (const Row& row : rows) {
    if (row.rel != Relation::LessEqual) {
      ++num_artificial;
    }
  }
  const std::size_t slack_start = n;
  const std::size_t art_start = n + m;
  const std::size_t total = art_start + num_artificial;

  // Tableau rows plus two maintained cost rows (phase 1, phase 2); the last
  // column is the right-hand side.
  std::vector<std::vector<double>> t(m, std::vector<double>(total + 1, 0.0));
  std::vector<double> cost1(total + 1, 0.0);  // phase-1 reduced costs
  std::vector<double> cost2(total + 1, 0.0);  // phase-2 reduced costs
  std::vector<std::size_t> basis(m);

  std::size_t art = art_start;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      t[r][j] = rows[r].a[j];
    }
    t[r][total] = rows[r].b;
    switch (rows[r].rel) {
      case Relation::LessEqual:
        t[r][slack_start + r] = 1.0;
        basis[r] = slack_start + r;
        break;
      case Relation::GreaterEqual:
        t[r][slack_start + r] = -1.0;  // surplus
        t[r][art] = 1.0;
        basis[r] = art++;
        break;
      case Relation::Equal:
        t[r][art] = 1.0;
        basis[r] = art++;
        break;
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    cost2[j] = lp.objective[j];
  }
  // Phase-1 objective: sum of artificials. Their columns cost one; subtract
  // the rows they start basic in so every basic column reads zero.
  for (std::size_t j = art_start; j < total; ++j) {
    cost1[j] = 1.0;
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] >= art_start) {
      for (std::size_t j = 0; j <= total; ++j) {
        cost1[j] -= t[r][j];
      }
    }
  }

  if (max_iterations == 0) {
    max_iterations = 10000 + 50 * (m + total);
  }
  std::size_t iterations = 0;

  const auto pivot = [&](std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / t[pr][pc];
    for (std::size_t j = 0; j <= total; ++j) {
      t[pr][j] *= inv;
    }
    t[pr][pc] = 1.0;  // kill residual rounding
    for (std::size_t r = 0; r < m; ++r) {
      if (r == pr || t[r][pc] == 0.0) {
        continue;
      }
      const double factor = t[r][pc];
      for (std::size_t j = 0; j <= total; ++j) {
        t[r][j] -= factor * t[pr][j];
      }
      t[r][pc] = 0.0;
    }
    for (std::vector<double>* cost : {&cost1, &cost2}) {
      const double factor = (*cost)[pc];
      if (factor != 0.0) {
        for (std::size_t j = 0; j <= total; ++j) {
          (*cost)[j] -= factor * t[pr][j];
        }
        (*cost)[pc] = 0.0;
      }
    }
    basis[pr] = pc;
  };

  // One simplex phase under Bland's rule: entering column is the lowest index
  // with a negative reduced cost, leaving row the lowest-index basic variable
  // among the minimum ratios.
  const auto run_phase = [&](std::vector<double>& cost, std::size_t allowed_cols,
                             const char* phase_name) {
    for (;;) {
      std::size_t entering = total;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (cost[j] < -kPivotTol) {
          entering = j;
          break;
        }
      }
      if (entering == total) {
        return;  // optimal for this phase
      }
      std::size_t leaving = m;
      double best_ratio = kInf;
      for (std::size_t r = 0; r < m; ++r) {
        if (t[r][entering] > kPivotTol) {
          const double ratio = t[r][total] / t[r][entering];
          if (ratio < best_ratio - kPivotTol ||
              (std::fabs(ratio - best_ratio) <= kPivotTol &&
               (leaving == m || basis[r] < basis[leaving]))) {
            best_ratio = ratio;
            leaving = r;
          }
        }
      }
      if (leaving == m) {
        throw SolverError(std::string("simplex: unbounded in ") + phase_name);
      }
      pivot(leaving, entering);
      if (++iterations > max_iterations) {
        throw SolverError("simplex: iteration cap of " +
                          std::to_string(max_iterations) + " exceeded in " +
                          phase_name + " (" + std::to_string(m) + " rows, " +
                          std::to_string(total) + " columns)");
      }
    }
  };

  if (num_artificial > 0) {
    // Artificials may leave but never re-enter.
    run_phase(cost1, art_start, "phase 1");
    // cost1's rhs holds minus the sum of artificials.
    if (-cost1[total] > kObjectiveTol) {
      throw SolverError("simplex: infeasible (phase-1 objective " +
                        std::to_string(-cost1[total]) + ")");
    }
    // Pivot leftover artificials out of the basis where possible; rows that
    // offer no pivot are redundant and stay inert at zero.
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] < art_start) {
        continue;
      }
      for (std::size_t j = 0; j < art_start; ++j) {
        if (std::fabs(t[r][j]) > kPivotTol) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  run_phase(cost2, art_start, "phase 2");

  SimplexResult result;
  result.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) {
      result.x[basis[r]] = t[r][total];
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    result.x[j] += lp.lower[j];
    if (lp.upper[j] != kInf) {
      result.x[j] = std::clamp(result.x[j], lp.lower[j], lp.upper[j]);
    } else {
      result.x[j] = std::max(result.x[j], lp.lower[j]);
    }
  }
  result.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    result.objective += lp.objective[j] * result.x[j];
  }
  result.iterations = iterations;
  return result;
}

}  // namespace protoselect
