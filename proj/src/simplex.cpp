#include "gep/simplex.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace gep {

namespace {

using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

constexpr double kPivotTol = 1e-9;
constexpr double kEps = std::numeric_limits<double>::epsilon();

/// LU of the basis at the last refactorization plus a product-form eta file
/// for the pivots since.
class BasisFactor {
public:
    bool factorize(const SpMat& basis) {
        etas_.clear();
        m_ = static_cast<int>(basis.rows());
        if (m_ == 0) return true;
        lu_ = std::make_unique<Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>>();
        lu_->analyzePattern(basis);
        lu_->factorize(basis);
        return lu_->info() == Eigen::Success;
    }

    void ftran(Vec& v) const {
        if (m_ == 0) return;
        Vec w = lu_->solve(v);
        for (const auto& eta : etas_) {
            const double xr = w[eta.row] / eta.pivot;
            for (std::size_t k = 0; k < eta.idx.size(); ++k) w[eta.idx[k]] -= eta.val[k] * xr;
            w[eta.row] = xr;
        }
        v = std::move(w);
    }

    void btran(Vec& v) const {
        if (m_ == 0) return;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double acc = v[it->row];
            for (std::size_t k = 0; k < it->idx.size(); ++k) acc -= it->val[k] * v[it->idx[k]];
            v[it->row] = acc / it->pivot;
        }
        Vec w = lu_->transpose().solve(v);
        v = std::move(w);
    }

    /// Records the pivot that replaced basis position `row` by a column whose
    /// FTRAN image is `alpha`.
    void push_eta(int row, const Vec& alpha) {
        Eta eta;
        eta.row = row;
        eta.pivot = alpha[row];
        for (int i = 0; i < alpha.size(); ++i) {
            if (i != row && alpha[i] != 0.0) {
                eta.idx.push_back(i);
                eta.val.push_back(alpha[i]);
            }
        }
        etas_.push_back(std::move(eta));
    }

    std::size_t num_etas() const { return etas_.size(); }

private:
    struct Eta {
        int row = 0;
        double pivot = 1.0;
        std::vector<int> idx;
        std::vector<double> val;
    };

    int m_ = 0;
    std::unique_ptr<Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>> lu_;
    std::vector<Eta> etas_;
};

double round_pow2(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) return 1.0;
    return std::exp2(std::round(std::log2(s)));
}

class Simplex {
public:
    Simplex(const LPProblem& p, const SolveOptions& opts) : problem_(p), opts_(opts) {
        m_ = static_cast<int>(p.num_rows());
        n_ = static_cast<int>(p.num_cols());
        build_matrix();
        setup_bounds();
    }

    Solution run();

private:
    enum class NonbasicAt : unsigned char { lower, upper, zero, basic };

    int num_vars() const { return n_ + m_; }

    void build_matrix();
    void compute_scaling(const std::vector<int>& rows, const std::vector<int>& cols, const std::vector<double>& vals);
    void setup_bounds();
    void initial_basis();
    bool refactor();
    void reset_to_slack_basis();
    void recompute_basics();
    double column_dot(int j, const Vec& y) const;
    void load_column(int j, Vec& out) const;

    const LPProblem& problem_;
    SolveOptions opts_;
    int m_ = 0;
    int n_ = 0;

    // Scaled constraint matrix, column-compressed.
    std::vector<int> col_start_;
    std::vector<int> row_idx_;
    std::vector<double> vals_;
    std::vector<double> row_scale_;
    std::vector<double> col_scale_;

    // Per variable, structurals first then logicals.
    std::vector<double> lb_;
    std::vector<double> ub_;
    std::vector<double> cost_;
    std::vector<double> tol_;
    std::vector<double> x_;
    std::vector<NonbasicAt> state_;

    std::vector<int> head_;  // basis position -> variable
    std::vector<int> pos_;   // variable -> basis position or -1
    BasisFactor factor_;
};

void Simplex::build_matrix() {
    // Merge duplicate (row, col) entries by summation.
    std::vector<std::vector<std::pair<int, double>>> by_col(n_);
    for (const auto& e : problem_.entries) {
        by_col[e.col].emplace_back(static_cast<int>(e.row), e.value);
    }
    std::vector<int> rows;
    std::vector<int> cols;
    std::vector<double> vals;
    col_start_.assign(n_ + 1, 0);
    for (int j = 0; j < n_; ++j) {
        auto& c = by_col[j];
        std::stable_sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (!rows.empty() && cols.back() == j && rows.back() == c[k].first) {
                vals.back() += c[k].second;
            } else {
                rows.push_back(c[k].first);
                cols.push_back(j);
                vals.push_back(c[k].second);
            }
        }
    }
    compute_scaling(rows, cols, vals);
    for (std::size_t k = 0; k < vals.size(); ++k) {
        if (vals[k] == 0.0) continue;
        ++col_start_[cols[k] + 1];
        row_idx_.push_back(rows[k]);
        vals_.push_back(vals[k] * row_scale_[rows[k]] * col_scale_[cols[k]]);
    }
    for (int j = 0; j < n_; ++j) col_start_[j + 1] += col_start_[j];
}

void Simplex::compute_scaling(const std::vector<int>& rows, const std::vector<int>& cols,
                              const std::vector<double>& vals) {
    row_scale_.assign(m_, 1.0);
    col_scale_.assign(n_, 1.0);
    if (!opts_.scaling) return;
    constexpr int kPasses = 8;
    for (int pass = 0; pass < kPasses; ++pass) {
        std::vector<double> lo(m_, kInf);
        std::vector<double> hi(m_, 0.0);
        for (std::size_t k = 0; k < vals.size(); ++k) {
            const double a = std::abs(vals[k]) * col_scale_[cols[k]];
            if (a == 0.0) continue;
            lo[rows[k]] = std::min(lo[rows[k]], a);
            hi[rows[k]] = std::max(hi[rows[k]], a);
        }
        for (int i = 0; i < m_; ++i) {
            if (hi[i] > 0.0) row_scale_[i] = 1.0 / std::sqrt(lo[i] * hi[i]);
        }
        std::vector<double> clo(n_, kInf);
        std::vector<double> chi(n_, 0.0);
        for (std::size_t k = 0; k < vals.size(); ++k) {
            const double a = std::abs(vals[k]) * row_scale_[rows[k]];
            if (a == 0.0) continue;
            clo[cols[k]] = std::min(clo[cols[k]], a);
            chi[cols[k]] = std::max(chi[cols[k]], a);
        }
        for (int j = 0; j < n_; ++j) {
            if (chi[j] > 0.0) col_scale_[j] = 1.0 / std::sqrt(clo[j] * chi[j]);
        }
    }
    for (auto& r : row_scale_) r = round_pow2(r);
    for (auto& s : col_scale_) s = round_pow2(s);
}

void Simplex::setup_bounds() {
    const int nv = num_vars();
    lb_.resize(nv);
    ub_.resize(nv);
    cost_.assign(nv, 0.0);
    tol_.resize(nv);
    auto floor_tol = [](double tol, double lo, double hi) {
        double mag = 0.0;
        if (std::isfinite(lo)) mag = std::max(mag, std::abs(lo));
        if (std::isfinite(hi)) mag = std::max(mag, std::abs(hi));
        return std::max(tol, 16.0 * kEps * mag);
    };
    for (int j = 0; j < n_; ++j) {
        const double s = col_scale_[j];
        lb_[j] = problem_.col_lower[j] / s;
        ub_[j] = problem_.col_upper[j] / s;
        cost_[j] = problem_.cost[j] * s;
        tol_[j] = floor_tol(0.5 * opts_.feas_tol / s, lb_[j], ub_[j]);
    }
    for (int i = 0; i < m_; ++i) {
        const double r = row_scale_[i];
        const int v = n_ + i;
        lb_[v] = problem_.row_lower[i] * r;
        ub_[v] = problem_.row_upper[i] * r;
        tol_[v] = floor_tol(0.5 * opts_.feas_tol * r, lb_[v], ub_[v]);
    }
}

void Simplex::initial_basis() {
    const int nv = num_vars();
    x_.assign(nv, 0.0);
    state_.assign(nv, NonbasicAt::zero);
    pos_.assign(nv, -1);
    head_.resize(m_);
    for (int j = 0; j < n_; ++j) {
        if (std::isfinite(lb_[j])) {
            state_[j] = NonbasicAt::lower;
            x_[j] = lb_[j];
        } else if (std::isfinite(ub_[j])) {
            state_[j] = NonbasicAt::upper;
            x_[j] = ub_[j];
        }
    }
    for (int i = 0; i < m_; ++i) {
        head_[i] = n_ + i;
        pos_[n_ + i] = i;
        state_[n_ + i] = NonbasicAt::basic;
    }
}

void Simplex::reset_to_slack_basis() {
    for (int i = 0; i < m_; ++i) {
        const int v = head_[i];
        pos_[v] = -1;
        if (v < n_) {
            if (std::isfinite(lb_[v]) && (!std::isfinite(ub_[v]) || std::abs(x_[v] - lb_[v]) <= std::abs(x_[v] - ub_[v]))) {
                state_[v] = NonbasicAt::lower;
                x_[v] = lb_[v];
            } else if (std::isfinite(ub_[v])) {
                state_[v] = NonbasicAt::upper;
                x_[v] = ub_[v];
            } else {
                state_[v] = NonbasicAt::zero;
                x_[v] = 0.0;
            }
        }
    }
    for (int i = 0; i < m_; ++i) {
        const int v = n_ + i;
        head_[i] = v;
        pos_[v] = i;
        state_[v] = NonbasicAt::basic;
    }
}

bool Simplex::refactor() {
    std::vector<Eigen::Triplet<double, int>> trips;
    for (int p = 0; p < m_; ++p) {
        const int v = head_[p];
        if (v < n_) {
            for (int k = col_start_[v]; k < col_start_[v + 1]; ++k) trips.emplace_back(row_idx_[k], p, vals_[k]);
        } else {
            trips.emplace_back(v - n_, p, -1.0);
        }
    }
    SpMat basis(m_, m_);
    basis.setFromTriplets(trips.begin(), trips.end());
    basis.makeCompressed();
    return factor_.factorize(basis);
}

void Simplex::recompute_basics() {
    Vec rhs = Vec::Zero(m_);
    for (int j = 0; j < num_vars(); ++j) {
        if (pos_[j] >= 0 || x_[j] == 0.0) continue;
        if (j < n_) {
            for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) rhs[row_idx_[k]] -= vals_[k] * x_[j];
        } else {
            rhs[j - n_] += x_[j];
        }
    }
    factor_.ftran(rhs);
    for (int p = 0; p < m_; ++p) x_[head_[p]] = rhs[p];
}

double Simplex::column_dot(int j, const Vec& y) const {
    if (j >= n_) return -y[j - n_];
    double acc = 0.0;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) acc += vals_[k] * y[row_idx_[k]];
    return acc;
}

void Simplex::load_column(int j, Vec& out) const {
    out.setZero(m_);
    if (j >= n_) {
        out[j - n_] = -1.0;
        return;
    }
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) out[row_idx_[k]] = vals_[k];
}

Solution Simplex::run() {
    Solution sol;
    initial_basis();
    refactor();
    recompute_basics();

    const int nv = num_vars();
    Vec cb(m_);
    Vec y(m_);
    Vec alpha(m_);
    std::vector<signed char> infeas(m_, 0);
    std::size_t iter = 0;
    std::size_t degenerate = 0;
    std::size_t resets = 0;
    bool fresh = true;
    bool bland = false;
    bool phase1 = false;
    SolveStatus status = SolveStatus::iteration_limit;

    auto try_refactor = [&]() -> bool {
        if (refactor()) return true;
        if (++resets > 5) return false;
        reset_to_slack_basis();
        refactor();
        return true;
    };

    while (true) {
        if (factor_.num_etas() >= opts_.refactor_interval) {
            if (!try_refactor()) break;
            recompute_basics();
            fresh = true;
        }

        phase1 = false;
        for (int p = 0; p < m_; ++p) {
            const int v = head_[p];
            if (x_[v] < lb_[v] - tol_[v]) {
                infeas[p] = -1;
                phase1 = true;
            } else if (x_[v] > ub_[v] + tol_[v]) {
                infeas[p] = 1;
                phase1 = true;
            } else {
                infeas[p] = 0;
            }
        }
        for (int p = 0; p < m_; ++p) cb[p] = phase1 ? static_cast<double>(infeas[p]) : cost_[head_[p]];
        y = cb;
        factor_.btran(y);

        // Pricing: Dantzig, lowest index on ties; first eligible under Bland.
        int enter = -1;
        int dir = 0;
        double best = 0.0;
        for (int j = 0; j < nv; ++j) {
            const NonbasicAt st = state_[j];
            if (st == NonbasicAt::basic || lb_[j] == ub_[j]) continue;
            const double d = (phase1 ? 0.0 : cost_[j]) - column_dot(j, y);
            int cand_dir = 0;
            if (d < -opts_.opt_tol && (st == NonbasicAt::lower || st == NonbasicAt::zero)) cand_dir = 1;
            if (d > opts_.opt_tol && (st == NonbasicAt::upper || st == NonbasicAt::zero)) cand_dir = -1;
            if (cand_dir == 0) continue;
            if (bland) {
                enter = j;
                dir = cand_dir;
                break;
            }
            if (std::abs(d) > best) {
                best = std::abs(d);
                enter = j;
                dir = cand_dir;
            }
        }

        if (enter < 0) {
            if (!fresh) {
                if (!try_refactor()) break;
                recompute_basics();
                fresh = true;
                continue;
            }
            status = phase1 ? SolveStatus::infeasible : SolveStatus::optimal;
            break;
        }
        if (iter >= opts_.max_iterations) {
            status = SolveStatus::iteration_limit;
            break;
        }

        load_column(enter, alpha);
        factor_.ftran(alpha);

        // Ratio test. rate = d x_B / d theta for a unit move of the entering variable.
        int leave = -1;
        double theta = kInf;
        double leave_bound = 0.0;
        auto target_of = [&](int p, double rate, double& bound) -> bool {
            const int v = head_[p];
            const double xv = x_[v];
            if (rate < 0.0) {
                if (phase1 && infeas[p] == 1) {
                    bound = ub_[v];
                } else if (infeas[p] == -1) {
                    return false;
                } else {
                    bound = lb_[v];
                }
            } else {
                if (phase1 && infeas[p] == -1) {
                    bound = lb_[v];
                } else if (infeas[p] == 1) {
                    return false;
                } else {
                    bound = ub_[v];
                }
            }
            (void)xv;
            return std::isfinite(bound);
        };

        if (bland) {
            for (int p = 0; p < m_; ++p) {
                if (std::abs(alpha[p]) < kPivotTol) continue;
                const double rate = -dir * alpha[p];
                double bound = 0.0;
                if (!target_of(p, rate, bound)) continue;
                const double ratio = std::max(0.0, (bound - x_[head_[p]]) / rate);
                if (ratio < theta || (ratio == theta && leave >= 0 && head_[p] < head_[leave])) {
                    theta = ratio;
                    leave = p;
                    leave_bound = bound;
                }
            }
        } else {
            double theta_max = kInf;
            for (int p = 0; p < m_; ++p) {
                if (std::abs(alpha[p]) < kPivotTol) continue;
                const double rate = -dir * alpha[p];
                double bound = 0.0;
                if (!target_of(p, rate, bound)) continue;
                const int v = head_[p];
                const double relaxed = (std::abs(bound - x_[v]) + tol_[v]) / std::abs(rate);
                theta_max = std::min(theta_max, relaxed);
            }
            if (std::isfinite(theta_max)) {
                double best_pivot = 0.0;
                for (int p = 0; p < m_; ++p) {
                    if (std::abs(alpha[p]) < kPivotTol) continue;
                    const double rate = -dir * alpha[p];
                    double bound = 0.0;
                    if (!target_of(p, rate, bound)) continue;
                    const double ratio = (bound - x_[head_[p]]) / rate;
                    if (ratio <= theta_max && std::abs(alpha[p]) > best_pivot) {
                        best_pivot = std::abs(alpha[p]);
                        leave = p;
                        leave_bound = bound;
                        theta = std::max(0.0, ratio);
                    }
                }
            }
        }

        const double range = ub_[enter] - lb_[enter];
        const bool flip = std::isfinite(range) && range <= theta;
        if (flip) theta = range;

        if (!flip && leave < 0) {
            if (!fresh) {
                if (!try_refactor()) break;
                recompute_basics();
                fresh = true;
                continue;
            }
            // No blocking variable. In phase 1 this only happens through
            // round-off, since the infeasibility sum is bounded below.
            status = phase1 ? SolveStatus::infeasible : SolveStatus::unbounded;
            break;
        }

        ++iter;
        fresh = false;
        if (theta <= 1e-12) {
            if (++degenerate >= opts_.degeneracy_streak) bland = true;
        } else {
            degenerate = 0;
            bland = false;
        }

        x_[enter] += dir * theta;
        for (int p = 0; p < m_; ++p) {
            if (alpha[p] != 0.0) x_[head_[p]] -= dir * theta * alpha[p];
        }

        if (flip) {
            if (dir > 0) {
                x_[enter] = ub_[enter];
                state_[enter] = NonbasicAt::upper;
            } else {
                x_[enter] = lb_[enter];
                state_[enter] = NonbasicAt::lower;
            }
            continue;
        }

        const int out = head_[leave];
        x_[out] = leave_bound;
        state_[out] = (leave_bound == lb_[out]) ? NonbasicAt::lower : NonbasicAt::upper;
        pos_[out] = -1;
        head_[leave] = enter;
        pos_[enter] = leave;
        state_[enter] = NonbasicAt::basic;
        factor_.push_eta(leave, alpha);
    }

    sol.status = status;
    sol.iterations = iter;
    sol.values.resize(n_);
    for (int j = 0; j < n_; ++j) sol.values[j] = x_[j] * col_scale_[j];
    sol.objective = objective_value(problem_, sol.values);
    if (status == SolveStatus::optimal) {
        for (int p = 0; p < m_; ++p) cb[p] = cost_[head_[p]];
        y = cb;
        factor_.btran(y);
        sol.duals.resize(m_);
        for (int i = 0; i < m_; ++i) sol.duals[i] = y[i] * row_scale_[i];
    }
    return sol;
}

}  // namespace

Solution solve(const LPProblem& problem, const SolveOptions& opts) {
    if (!(opts.feas_tol > 0.0) || !(opts.opt_tol > 0.0)) {
        throw std::invalid_argument("solver tolerances must be positive");
    }
    const auto errors = check_structure(problem);
    if (!errors.empty()) throw std::invalid_argument("invalid LP: " + errors.front());

    Solution sol = Simplex(problem, opts).run();
    if (sol.status == SolveStatus::optimal) {
        const Residuals res = primal_residuals(problem, sol.values);
        if ((res.max_row_violation > opts.feas_tol || res.max_bound_violation > opts.feas_tol) && opts.scaling) {
            SolveOptions unscaled = opts;
            unscaled.scaling = false;
            return solve(problem, unscaled);
        }
    }
    return sol;
}

}  // namespace gep
