#pragma once

// Test-only helpers: an independent numeric oracle for the affine gluing
// data (built by composing chart-to-chart affine maps, not by the rewrite
// rules under test) and deterministic random generators for expressions
// and environments.

#include <complex>
#include <random>
#include <vector>

#include "gv/expr.hpp"

namespace gvtest {

using C = std::complex<double>;

// eta |-> a*eta + b
struct AffineMap {
    C a{1.0, 0.0};
    C b{0.0, 0.0};

    C apply(C eta) const { return a * eta + b; }
    AffineMap after(const AffineMap& g) const { return {a * g.a, a * g.b + b}; }
    AffineMap inverted() const { return {C{1.0, 0.0} / a, -b / a}; }
};

// Numeric values for the chain generators A_i, Xi_i of an n-chart nerve.
struct ChainValues {
    std::vector<C> a;  // a[i] = value of A_i, i = 1..n-1 (index 0 unused)
    std::vector<C> xi; // xi[i] = value of Xi_i

    explicit ChainValues(int n) : a(static_cast<size_t>(n)), xi(static_cast<size_t>(n)) {}

    // eta_j = T(j,k).apply(eta_k), obtained by composing adjacent gluing
    // maps along the chain; independent of the symbolic rewrite rules.
    AffineMap transition(int j, int k) const {
        if (j == k) return {};
        if (j < k) {
            AffineMap t; // identity
            for (int i = k - 1; i >= j; --i)
                t = AffineMap{a[static_cast<size_t>(i)], xi[static_cast<size_t>(i)]}.after(t);
            return t;
        }
        return transition(k, j).inverted();
    }
};

inline gv::Rat random_rational(std::mt19937_64& rng, bool nonzero = false) {
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 5);
    long n = num(rng);
    while (nonzero && n == 0) n = num(rng);
    return gv::make_rat(n, den(rng));
}

// Environment assigning every chain generator and every phi of an n-chart
// nerve a rational value (A-generators nonzero).
inline gv::EvalEnv random_env(int n, std::mt19937_64& rng) {
    gv::EvalEnv env;
    for (int i = 1; i < n; ++i) {
        env.values[gv::Gen{gv::GenKind::A, i}] = gv::rat_to_double(random_rational(rng, true));
        env.values[gv::Gen{gv::GenKind::Xi, i}] = gv::rat_to_double(random_rational(rng));
    }
    for (int j = 1; j <= n; ++j)
        env.values[gv::Gen{gv::GenKind::Phi, j}] = gv::rat_to_double(random_rational(rng));
    return env;
}

inline ChainValues chain_from_env(int n, const gv::EvalEnv& env) {
    ChainValues vals(n);
    for (int i = 1; i < n; ++i) {
        vals.a[static_cast<size_t>(i)] = env.values.at(gv::Gen{gv::GenKind::A, i});
        vals.xi[static_cast<size_t>(i)] = env.values.at(gv::Gen{gv::GenKind::Xi, i});
    }
    return vals;
}

// Random canonical expression over an n-chart nerve. Divisions are kept to
// unit (A-monomial) divisors so every draw is well formed.
inline gv::Expr random_expr(int n, std::mt19937_64& rng, int depth = 3) {
    using gv::Expr;
    std::uniform_int_distribution<int> pick(0, 5);
    if (depth == 0) {
        switch (pick(rng) % 4) {
            case 0:
                return Expr::rational(random_rational(rng));
            case 1: {
                std::uniform_int_distribution<int> i(1, n - 1);
                return Expr::generator(gv::Gen{gv::GenKind::A, i(rng)}, n);
            }
            case 2: {
                std::uniform_int_distribution<int> i(1, n - 1);
                return Expr::generator(gv::Gen{gv::GenKind::Xi, i(rng)}, n);
            }
            default:
                return Expr::coordinate();
        }
    }
    switch (pick(rng)) {
        case 0:
            return random_expr(n, rng, depth - 1) + random_expr(n, rng, depth - 1);
        case 1:
            return random_expr(n, rng, depth - 1) - random_expr(n, rng, depth - 1);
        case 2:
            return random_expr(n, rng, depth - 1) * random_expr(n, rng, depth - 1);
        case 3: {
            std::uniform_int_distribution<int> i(1, n - 1);
            std::uniform_int_distribution<int> e(1, 2);
            return random_expr(n, rng, depth - 1) /
                   Expr::generator(gv::Gen{gv::GenKind::A, i(rng)}, n).pow(e(rng));
        }
        case 4:
            return -random_expr(n, rng, depth - 1);
        default:
            return random_expr(n, rng, depth - 1);
    }
}

} // namespace gvtest
