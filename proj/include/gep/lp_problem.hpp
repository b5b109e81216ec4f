// Sparse linear program in bounded form:
//
//     minimize    c'x
//     subject to  row_lower <= A x <= row_upper
//                 col_lower <=  x  <= col_upper
//
// Equality rows have row_lower == row_upper. Infinite bounds use kInf.

#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace gep {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Entry {
    std::size_t row;
    std::size_t col;
    double value;

    bool operator==(const Entry&) const = default;
};

struct LPProblem {
    std::vector<double> cost;
    std::vector<double> col_lower;
    std::vector<double> col_upper;
    std::vector<std::string> col_names;

    std::vector<double> row_lower;
    std::vector<double> row_upper;
    std::vector<std::string> row_names;

    std::vector<Entry> entries;

    std::size_t num_cols() const { return cost.size(); }
    std::size_t num_rows() const { return row_lower.size(); }

    std::size_t add_column(std::string name, double c, double lower, double upper);
    std::size_t add_row(std::string name, double lower, double upper);
    void add_entry(std::size_t row, std::size_t col, double value);

    bool operator==(const LPProblem&) const = default;
};

/// Post-hoc primal residuals of a candidate point, computed directly from the
/// problem data with no solver state involved.
struct Residuals {
    double max_row_violation = 0.0;
    double max_bound_violation = 0.0;
    std::size_t worst_row = 0;
    std::size_t worst_col = 0;
};

std::vector<double> row_activity(const LPProblem& problem, const std::vector<double>& x);
double objective_value(const LPProblem& problem, const std::vector<double>& x);
Residuals primal_residuals(const LPProblem& problem, const std::vector<double>& x);

/// Problems found in the structure: bad indices, lower > upper, NaN data.
std::vector<std::string> check_structure(const LPProblem& problem);

}  // namespace gep
