#include "gep/lp_problem.hpp"

#include <cmath>

namespace gep {

std::size_t LPProblem::add_column(std::string name, double c, double lower, double upper) {
    cost.push_back(c);
    col_lower.push_back(lower);
    col_upper.push_back(upper);
    col_names.push_back(std::move(name));
    return cost.size() - 1;
}

std::size_t LPProblem::add_row(std::string name, double lower, double upper) {
    row_lower.push_back(lower);
    row_upper.push_back(upper);
    row_names.push_back(std::move(name));
    return row_lower.size() - 1;
}

void LPProblem::add_entry(std::size_t row, std::size_t col, double value) {
    if (value != 0.0) entries.push_back({row, col, value});
}

std::vector<double> row_activity(const LPProblem& problem, const std::vector<double>& x) {
    std::vector<double> act(problem.num_rows(), 0.0);
    for (const auto& e : problem.entries) act[e.row] += e.value * x[e.col];
    return act;
}

double objective_value(const LPProblem& problem, const std::vector<double>& x) {
    double obj = 0.0;
    for (std::size_t j = 0; j < problem.num_cols(); ++j) obj += problem.cost[j] * x[j];
    return obj;
}

Residuals primal_residuals(const LPProblem& problem, const std::vector<double>& x) {
    Residuals r;
    const auto act = row_activity(problem, x);
    for (std::size_t i = 0; i < act.size(); ++i) {
        const double v = std::max(problem.row_lower[i] - act[i], act[i] - problem.row_upper[i]);
        if (v > r.max_row_violation) {
            r.max_row_violation = v;
            r.worst_row = i;
        }
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double v = std::max(problem.col_lower[j] - x[j], x[j] - problem.col_upper[j]);
        if (v > r.max_bound_violation) {
            r.max_bound_violation = v;
            r.worst_col = j;
        }
    }
    return r;
}

std::vector<std::string> check_structure(const LPProblem& p) {
    std::vector<std::string> errors;
    const std::size_t n = p.num_cols();
    const std::size_t m = p.num_rows();
    if (p.col_lower.size() != n || p.col_upper.size() != n || p.col_names.size() != n) {
        errors.push_back("column arrays have inconsistent lengths");
        return errors;
    }
    if (p.row_upper.size() != m || p.row_names.size() != m) {
        errors.push_back("row arrays have inconsistent lengths");
        return errors;
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (std::isnan(p.cost[j]) || std::isinf(p.cost[j])) errors.push_back("column " + p.col_names[j] + ": bad cost");
        if (!(p.col_lower[j] <= p.col_upper[j])) errors.push_back("column " + p.col_names[j] + ": lower > upper");
        if (p.col_lower[j] == kInf || p.col_upper[j] == -kInf) errors.push_back("column " + p.col_names[j] + ": bad bound");
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!(p.row_lower[i] <= p.row_upper[i])) errors.push_back("row " + p.row_names[i] + ": lower > upper");
        if (p.row_lower[i] == kInf || p.row_upper[i] == -kInf) errors.push_back("row " + p.row_names[i] + ": bad bound");
    }
    for (const auto& e : p.entries) {
        if (e.row >= m || e.col >= n) {
            errors.push_back("entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) + ") out of range");
        } else if (!std::isfinite(e.value)) {
            errors.push_back("entry in row " + p.row_names[e.row] + " is not finite");
        }
    }
    return errors;
}

}  // namespace gep
