#pragma once

// Dense two-phase simplex over exact rationals with Bland's rule. Slow, but small LPs only.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

enum class Sense { le, eq, ge };

struct LinearProgram {
    int vars = 0;
    std::vector<Rational> objective;  // minimized
    std::vector<std::vector<Rational>> rows;
    std::vector<Sense> sense;
    std::vector<Rational> rhs;

    int add_var(Rational cost = 0)
    {
        objective.push_back(cost);
        for (auto& r : rows) r.push_back(0);
        return vars++;
    }
    void add_row(std::vector<std::pair<int, Rational>> terms, Sense s, Rational b)
    {
        std::vector<Rational> row(vars, 0);
        for (auto& [v, a] : terms) row[v] += a;
        rows.push_back(std::move(row));
        sense.push_back(s);
        rhs.push_back(b);
    }
};

struct LpSolution {
    Rational value;
    std::vector<Rational> x;
};

namespace lp_detail {

struct Tableau {
    std::vector<std::vector<Rational>> a;  // rows x (cols + 1), last column is rhs
    std::vector<int> basis;
    int cols = 0;

    void pivot(int r, int c)
    {
        const Rational p = a[r][c];
        for (auto& v : a[r]) v /= p;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (static_cast<int>(i) == r || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (int j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
        }
        basis[r] = c;
    }

    // Minimizes cost over columns with allowed[c]; false when unbounded.
    bool run(const std::vector<Rational>& cost, const std::vector<bool>& allowed)
    {
        const int m = static_cast<int>(a.size());
        while (true) {
            int enter = -1;
            for (int c = 0; c < cols && enter < 0; ++c) {
                if (!allowed[c]) continue;
                Rational reduced = cost[c];
                for (int r = 0; r < m; ++r) reduced -= cost[basis[r]] * a[r][c];
                if (reduced < 0) enter = c;
            }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int r = 0; r < m; ++r) {
                if (a[r][enter] <= 0) continue;
                const Rational ratio = a[r][cols] / a[r][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace lp_detail

// nullopt when infeasible; throws when unbounded.
inline std::optional<LpSolution> solve_lp(const LinearProgram& lp)
{
    const int m = static_cast<int>(lp.rows.size());
    int slack_count = 0;
    for (auto s : lp.sense)
        if (s != Sense::eq) ++slack_count;
    const int n = lp.vars;
    const int cols = n + slack_count + m;
    lp_detail::Tableau t;
    t.cols = cols;
    t.a.assign(m, std::vector<Rational>(cols + 1, 0));
    t.basis.assign(m, 0);
    int slack = n;
    for (int r = 0; r < m; ++r) {
        const Rational sign = lp.rhs[r] < 0 ? -1 : 1;
        for (int j = 0; j < n; ++j) t.a[r][j] = sign * lp.rows[r][j];
        if (lp.sense[r] == Sense::le) t.a[r][slack++] = sign;
        if (lp.sense[r] == Sense::ge) t.a[r][slack++] = -sign;
        t.a[r][n + slack_count + r] = 1;
        t.a[r][cols] = sign * lp.rhs[r];
        t.basis[r] = n + slack_count + r;
    }
    std::vector<Rational> phase1(cols, 0);
    for (int r = 0; r < m; ++r) phase1[n + slack_count + r] = 1;
    std::vector<bool> all(cols, true);
    t.run(phase1, all);
    Rational infeas = 0;
    for (int r = 0; r < m; ++r)
        if (t.basis[r] >= n + slack_count) infeas += t.a[r][cols];
    if (infeas != 0) return std::nullopt;
    for (int r = 0; r < m; ++r) {
        if (t.basis[r] < n + slack_count) continue;
        for (int c = 0; c < n + slack_count; ++c)
            if (t.a[r][c] != 0) {
                t.pivot(r, c);
                break;
            }
    }
    std::vector<Rational> phase2(cols, 0);
    for (int j = 0; j < n; ++j) phase2[j] = lp.objective[j];
    std::vector<bool> real(cols, false);
    for (int c = 0; c < n + slack_count; ++c) real[c] = true;
    if (!t.run(phase2, real)) throw std::runtime_error("lp oracle: unbounded");
    LpSolution out;
    out.x.assign(n, 0);
    for (int r = 0; r < m; ++r)
        if (t.basis[r] < n) out.x[t.basis[r]] = t.a[r][cols];
    out.value = 0;
    for (int j = 0; j < n; ++j) out.value += lp.objective[j] * out.x[j];
    return out;
}

}  // namespace oracle
