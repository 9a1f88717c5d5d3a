#include "khardy/lhv.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace khardy {

namespace {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Exact: every finite double is mantissa * 2^exponent.
Rat rat_from_double(double x) {
    if (x == 0.0) return Rat(0);
    int exp = 0;
    const double frac = std::frexp(x, &exp);
    const auto mant = static_cast<long long>(std::ldexp(frac, 53));
    Rat r(mant);
    const int shift = exp - 53;
    if (shift > 0) {
        r *= Rat(Int(1) << shift);
    } else if (shift < 0) {
        r /= Rat(Int(1) << -shift);
    }
    return r;
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

/*
 * Dense exact-rational simplex on the tableau [a | b] with basis tracking.
 * Bland's rule (lowest eligible entering column, lowest basis index on
 * ratio ties) guarantees termination; exact arithmetic removes any
 * degeneracy concern. Problem sizes here are at most ~10 rows by ~40
 * columns, so reduced costs are recomputed from scratch each iteration.
 */
struct Tableau {
    int ncols = 0;
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    std::vector<int> basis;
};

void pivot(Tableau& t, int prow, int pcol) {
    auto& prow_ref = t.a[prow];
    const Rat piv = prow_ref[pcol];
    for (auto& v : prow_ref) v /= piv;
    t.b[prow] /= piv;
    for (std::size_t i = 0; i < t.a.size(); ++i) {
        if (static_cast<int>(i) == prow) continue;
        const Rat f = t.a[i][pcol];
        if (f == 0) continue;
        for (int j = 0; j < t.ncols; ++j) t.a[i][j] -= f * prow_ref[j];
        t.b[i] -= f * t.b[prow];
    }
    t.basis[prow] = pcol;
}

bool is_basic(const Tableau& t, int col) {
    for (const int b : t.basis) {
        if (b == col) return true;
    }
    return false;
}

// Minimizes cost (indexed over all columns) with Bland's rule. Returns false
// only when unbounded, which the callers' problems rule out.
bool minimize(Tableau& t, const std::vector<Rat>& cost) {
    const int m = static_cast<int>(t.a.size());
    for (;;) {
        int enter = -1;
        for (int j = 0; j < t.ncols && enter < 0; ++j) {
            if (is_basic(t, j)) continue;
            Rat d = cost[j];
            for (int i = 0; i < m; ++i) {
                const Rat& cb = cost[t.basis[i]];
                if (cb != 0) d -= cb * t.a[i][j];
            }
            if (d < 0) enter = j;
        }
        if (enter < 0) return true;
        int leave = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (t.a[i][enter] > 0) {
                const Rat ratio = t.b[i] / t.a[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && t.basis[i] < t.basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
        }
        if (leave < 0) return false;
        pivot(t, leave, enter);
    }
}

Rat objective_value(const Tableau& t, const std::vector<Rat>& cost) {
    Rat z = 0;
    for (std::size_t i = 0; i < t.basis.size(); ++i) {
        const Rat& cb = cost[t.basis[i]];
        if (cb != 0) z += cb * t.b[i];
    }
    return z;
}

struct PhaseOne {
    bool feasible = false;
    Rat residual;
    Tableau t;  // artificial-free feasible tableau when feasible
};

// Finds a basic feasible solution of rows * x = rhs, x >= 0 (rhs >= 0
// required) by minimizing the sum of artificial variables.
PhaseOne phase_one(const std::vector<std::vector<Rat>>& rows,
                   const std::vector<Rat>& rhs, int n) {
    const int m = static_cast<int>(rows.size());
    Tableau t;
    t.ncols = n + m;
    t.a.assign(m, std::vector<Rat>(t.ncols, Rat(0)));
    t.b = rhs;
    t.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t.a[i][j] = rows[i][j];
        t.a[i][n + i] = 1;
        t.basis[i] = n + i;
    }
    std::vector<Rat> cost(t.ncols, Rat(0));
    for (int i = 0; i < m; ++i) cost[n + i] = 1;
    minimize(t, cost);

    PhaseOne result;
    result.residual = objective_value(t, cost);
    if (result.residual != 0) return result;

    // Drive leftover artificials (basic at value 0) out; rows that cannot
    // pivot to a structural column are redundant and dropped.
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] < n) continue;
        for (int j = 0; j < n; ++j) {
            if (t.a[i][j] != 0) {
                pivot(t, i, j);
                break;
            }
        }
    }
    result.t.ncols = n;
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] >= n) continue;
        result.t.a.emplace_back(t.a[i].begin(), t.a[i].begin() + n);
        result.t.b.push_back(t.b[i]);
        result.t.basis.push_back(t.basis[i]);
    }
    result.feasible = true;
    return result;
}

std::vector<Rat> basic_solution(const Tableau& t, int n) {
    std::vector<Rat> x(n, Rat(0));
    for (std::size_t i = 0; i < t.basis.size(); ++i) {
        if (t.basis[i] < n) x[t.basis[i]] = t.b[i];
    }
    return x;
}

}  // namespace

bool LhvStrategy::contributes(int observable) const {
    switch (observable) {
        case 0:
            return left_strangeness == Outcome::K0 &&
                   right_strangeness == Outcome::K0bar;
        case 1:
            return left_strangeness == Outcome::K0 &&
                   right_lifetime == Outcome::KL;
        case 2:
            return left_lifetime == Outcome::KL &&
                   right_strangeness == Outcome::K0bar;
        case 3:
            return left_lifetime == Outcome::KS &&
                   right_lifetime == Outcome::KS;
    }
    throw std::out_of_range("observable index must be 0..3");
}

const std::array<LhvStrategy, 16>& enumerate_strategies() {
    static const std::array<LhvStrategy, 16> strategies = [] {
        std::array<LhvStrategy, 16> all{};
        for (int k = 0; k < 16; ++k) {
            all[k].left_strangeness = (k & 8) ? Outcome::K0bar : Outcome::K0;
            all[k].left_lifetime = (k & 4) ? Outcome::KL : Outcome::KS;
            all[k].right_strangeness = (k & 2) ? Outcome::K0bar : Outcome::K0;
            all[k].right_lifetime = (k & 1) ? Outcome::KL : Outcome::KS;
        }
        return all;
    }();
    return strategies;
}

FeasibilityReport lhv_feasibility(const LhvConstraints& constraints) {
    const std::array<const LhvConstraint*, 4> cons = {
        &constraints.p_k0_k0bar, &constraints.p_k0_kl, &constraints.p_kl_k0bar,
        &constraints.p_ks_ks};
    for (const auto* c : cons) {
        if (c->target && (!(*c->target >= 0.0) || !(*c->target <= 1.0))) {
            throw std::invalid_argument(
                "lhv_feasibility: targets must lie in [0, 1]");
        }
        if (!(c->tolerance >= 0.0)) {
            throw std::invalid_argument(
                "lhv_feasibility: tolerances must be nonnegative");
        }
    }

    const auto& strategies = enumerate_strategies();
    constexpr int kStrategies = 16;

    // Rows over the 16 weights: EQ (target, tol 0), or a <= / >= pair for a
    // tolerance interval clipped at 0. Slack columns make them equalities.
    enum class Rel { Eq, Le, Ge };
    struct Row {
        std::array<Rat, kStrategies> coeff;
        Rel rel;
        Rat rhs;
    };
    std::vector<Row> constraint_rows;

    Row norm_row;
    norm_row.coeff.fill(Rat(1));
    norm_row.rel = Rel::Eq;
    norm_row.rhs = 1;
    constraint_rows.push_back(norm_row);

    for (int k = 0; k < 4; ++k) {
        if (!cons[k]->target) continue;
        Row row;
        for (int j = 0; j < kStrategies; ++j) {
            row.coeff[j] = strategies[j].contributes(k) ? 1 : 0;
        }
        const Rat target = rat_from_double(*cons[k]->target);
        const Rat tol = rat_from_double(cons[k]->tolerance);
        if (tol == 0) {
            row.rel = Rel::Eq;
            row.rhs = target;
            constraint_rows.push_back(row);
        } else {
            row.rel = Rel::Le;
            row.rhs = target + tol;
            constraint_rows.push_back(row);
            if (target - tol > 0) {
                row.rel = Rel::Ge;
                row.rhs = target - tol;
                constraint_rows.push_back(row);
            }
        }
    }

    int nslack = 0;
    for (const auto& row : constraint_rows) {
        if (row.rel != Rel::Eq) ++nslack;
    }
    const int ncols = kStrategies + nslack;
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    int slack = kStrategies;
    for (const auto& row : constraint_rows) {
        std::vector<Rat> r(ncols, Rat(0));
        for (int j = 0; j < kStrategies; ++j) r[j] = row.coeff[j];
        if (row.rel == Rel::Le) r[slack++] = 1;
        if (row.rel == Rel::Ge) r[slack++] = -1;
        rows.push_back(std::move(r));
        rhs.push_back(row.rhs);
    }

    FeasibilityReport report;
    PhaseOne phase1 = phase_one(rows, rhs, ncols);
    if (!phase1.feasible) {
        report.feasible = false;
        double gap = 0.0;
        if (cons[0]->target) {
            gap = *cons[0]->target;
            for (int k = 1; k < 4; ++k) {
                if (cons[k]->target) gap -= *cons[k]->target;
            }
        }
        report.violation = gap > 0.0 ? gap : rat_to_double(phase1.residual);
        return report;
    }

    report.feasible = true;
    Tableau& t = phase1.t;
    if (!cons[3]->target) {
        std::vector<Rat> cost(ncols, Rat(0));
        for (int j = 0; j < kStrategies; ++j) {
            if (strategies[j].contributes(3)) cost[j] = 1;
        }
        minimize(t, cost);
        report.min_p_ks_ks = rat_to_double(objective_value(t, cost));
    }
    const std::vector<Rat> x = basic_solution(t, kStrategies);
    report.witness.reserve(kStrategies);
    for (const auto& w : x) report.witness.push_back(rat_to_double(w));
    return report;
}

}  // namespace khardy
