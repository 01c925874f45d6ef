#pragma once

// Exact rational simplex for the tiny ground-truth LPs (matching polytope
// optima with explicit odd-set rows, relaxed b-matching relaxations). All
// arithmetic is exact; Bland's rule guarantees termination. Inputs here have
// b >= 0, so the slack basis is feasible and no phase one is needed.

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "decmatch/errors.hpp"

namespace decmatch {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

// Doubles are dyadic rationals; this conversion is exact.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    long long scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r{BigInt(scaled)};
    if (exp > 0) {
        r *= Rational(BigInt(1) << exp);
    } else if (exp < 0) {
        r /= Rational(BigInt(1) << (-exp));
    }
    return r;
}

inline double rational_to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

struct LpResult {
    bool bounded = true;
    Rational value{0};
    std::vector<Rational> x;
};

// max c'x subject to Ax <= b, x >= 0, with b >= 0 entrywise.
inline LpResult solve_lp_max(const std::vector<std::vector<Rational>>& a,
                             const std::vector<Rational>& b, const std::vector<Rational>& c) {
    const size_t m = a.size();
    const size_t n = c.size();
    for (const auto& bi : b)
        if (bi < Rational(0)) throw std::invalid_argument("solve_lp_max requires b >= 0");

    // tableau: m constraint rows + objective row; columns: n vars, m slacks, rhs
    const size_t cols = n + m + 1;
    std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(cols, Rational(0)));
    for (size_t i = 0; i < m; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("solve_lp_max: ragged constraint matrix");
        for (size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = Rational(1);
        t[i][cols - 1] = b[i];
    }
    for (size_t j = 0; j < n; ++j) t[m][j] = -c[j];

    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) basis[i] = n + i;

    for (;;) {
        size_t enter = cols;  // Bland: smallest index with negative reduced cost
        for (size_t j = 0; j + 1 < cols; ++j) {
            if (t[m][j] < Rational(0)) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;

        size_t leave = m;
        Rational best_ratio(0);
        for (size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= Rational(0)) continue;
            Rational ratio = t[i][cols - 1] / t[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) {
            LpResult res;
            res.bounded = false;
            return res;
        }

        Rational pivot = t[leave][enter];
        for (size_t j = 0; j < cols; ++j) t[leave][j] /= pivot;
        for (size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            Rational factor = t[i][enter];
            if (factor == Rational(0)) continue;
            for (size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[leave][j];
        }
        basis[leave] = enter;
    }

    LpResult res;
    res.x.assign(n, Rational(0));
    for (size_t i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = t[i][cols - 1];
    res.value = t[m][cols - 1];
    return res;
}

}  // namespace decmatch
