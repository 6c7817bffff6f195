#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gv/expr.hpp"
#include "support/helpers.hpp"

using namespace gv;
using gvtest::AffineMap;
using gvtest::ChainValues;

namespace {

Expr gen_a(int i, int n) { return Expr::generator(Gen{GenKind::A, i}, n); }
Expr gen_xi(int i, int n) { return Expr::generator(Gen{GenKind::Xi, i}, n); }

} // namespace

TEST_CASE("parse: chain products and composite transitions") {
    const int n = 3;
    CHECK(parse_expr("a(1,2)*a(2,3)", n) == gen_a(1, n) * gen_a(2, n));
    CHECK(parse_expr("a(1,3)", n) == gen_a(1, n) * gen_a(2, n));
    CHECK(parse_expr("xi(2,1)", n) == -(gen_a(1, n).inverse() * gen_xi(1, n)));
}

TEST_CASE("reversed transitions agree with the numeric gluing oracle") {
    // Derive a(2,1), xi(2,1) by actually inverting eta_1 = a*eta_2 + xi,
    // then compare with the symbolic normal form under evaluation.
    std::mt19937_64 rng(42);
    const int n = 4;
    for (int trial = 0; trial < 25; ++trial) {
        const EvalEnv env = gvtest::random_env(n, rng);
        const ChainValues vals = gvtest::chain_from_env(n, env);
        for (int j = 1; j <= n; ++j) {
            for (int k = 1; k <= n; ++k) {
                const AffineMap t = vals.transition(j, k);
                const auto a_sym = Expr::transition_a(j, k, n).evaluate(env, 0.0);
                const auto xi_sym = Expr::transition_xi(j, k, n).evaluate(env, 0.0);
                CHECK(std::abs(a_sym - t.a) < 1e-10);
                CHECK(std::abs(xi_sym - t.b) < 1e-10);
            }
        }
    }
}

TEST_CASE("normalize: chain expansion and identity overlaps") {
    const int n = 3;
    CHECK(Expr::transition_xi(1, 3, n) == gen_xi(1, n) + gen_a(1, n) * gen_xi(2, n));
    for (int j = 1; j <= n; ++j) {
        CHECK(Expr::transition_xi(j, j, n).is_zero());
        CHECK(Expr::transition_a(j, j, n).is_one());
        for (int k = 1; k <= n; ++k)
            CHECK((Expr::transition_a(j, k, n) * Expr::transition_a(k, j, n)).is_one());
    }
}

TEST_CASE("normalize is idempotent") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const Expr e = gvtest::random_expr(5, rng);
        const Expr once = normalize(e);
        CHECK(once.is_canonical());
        CHECK(normalize(once) == once);
    }
}

TEST_CASE("cocycle relations hold for every chain, n up to 6") {
    for (int n = 3; n <= 6; ++n) {
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    const Expr lhs_a = Expr::transition_a(j, l, n) -
                                       Expr::transition_a(j, k, n) * Expr::transition_a(k, l, n);
                    CHECK(lhs_a.is_zero());
                    const Expr lhs_xi = Expr::transition_xi(j, l, n) -
                                        Expr::transition_a(j, k, n) * Expr::transition_xi(k, l, n) -
                                        Expr::transition_xi(j, k, n);
                    CHECK(lhs_xi.is_zero());
                }
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                CHECK((Expr::transition_a(j, k, n) * Expr::transition_a(k, j, n) -
                       Expr::integer(1))
                          .is_zero());
                CHECK((Expr::transition_xi(k, j, n) +
                       Expr::transition_a(k, j, n) * Expr::transition_xi(j, k, n))
                          .is_zero());
            }
    }
}

TEST_CASE("combine: field arithmetic with normalization") {
    const int n = 3;
    const Expr a1 = gen_a(1, n);
    CHECK(combine(ExprOp::mul, {a1, combine(ExprOp::inv, {a1})}).is_one());
    const Expr xi13 = Expr::transition_xi(1, 3, n);
    CHECK(combine(ExprOp::add, {gen_xi(1, n), combine(ExprOp::mul, {a1, gen_xi(2, n)})}) == xi13);
    CHECK(combine(ExprOp::sub, {xi13, xi13}).is_zero());
    CHECK(combine(ExprOp::int_pow, {a1}, -2) == a1.inverse() * a1.inverse());
    CHECK(combine(ExprOp::neg, {xi13}) == -xi13);
}

TEST_CASE("equals") {
    const int n = 3;
    CHECK(equals(Expr::transition_a(1, 3, n), gen_a(1, n) * gen_a(2, n)));
    CHECK_FALSE(equals(gen_xi(1, n), gen_xi(2, n)));
    CHECK(equals(Expr::transition_xi(2, 1, n), -(gen_a(1, n).inverse() * gen_xi(1, n))));
}

TEST_CASE("evaluate: direct substitution") {
    const int n = 3;
    EvalEnv env;
    env.values[Gen{GenKind::A, 1}] = 2.0;
    env.values[Gen{GenKind::A, 2}] = 3.0;
    env.values[Gen{GenKind::Xi, 1}] = 0.5;
    env.values[Gen{GenKind::Xi, 2}] = -1.0 / 3.0;

    CHECK(std::abs((gen_a(1, n) * gen_a(2, n)).evaluate(env, 0.0) - 6.0) < 1e-12);
    // xi(1,3) = xi(1,2) + a(1,2)*xi(2,3) = 1/2 + 2*(-1/3) = -1/6
    CHECK(std::abs(Expr::transition_xi(1, 3, n).evaluate(env, 0.0) - (-1.0 / 6.0)) < 1e-12);
    CHECK(Expr::transition_xi(2, 2, n).evaluate(env, 0.0) == std::complex<double>{0.0, 0.0});

    EvalEnv incomplete;
    CHECK_THROWS_AS(gen_a(1, n).evaluate(incomplete, 0.0), DomainError);
    EvalEnv pole = env;
    pole.values[Gen{GenKind::A, 1}] = 0.0;
    CHECK_THROWS_AS(gen_a(1, n).evaluate(pole, 0.0), DomainError);
}

TEST_CASE("evaluate is a homomorphism over random environments") {
    std::mt19937_64 rng(2024);
    const int n = 4;
    int cases = 0;
    while (cases < 100) {
        const EvalEnv env = gvtest::random_env(n, rng);
        const std::complex<double> x{gv::rat_to_double(gvtest::random_rational(rng)), 0.0};
        const Expr a = gvtest::random_expr(n, rng, 2);
        const Expr b = gvtest::random_expr(n, rng, 2);
        const auto va = a.evaluate(env, x);
        const auto vb = b.evaluate(env, x);
        CHECK(std::abs((a + b).evaluate(env, x) - (va + vb)) < 1e-10);
        CHECK(std::abs((a - b).evaluate(env, x) - (va - vb)) < 1e-10);
        CHECK(std::abs((a * b).evaluate(env, x) - (va * vb)) < 1e-10);
        ++cases;
    }
}

TEST_CASE("parser errors carry positions") {
    CHECK_THROWS_AS(parse_expr("a(1,", 3), ParseError);
    CHECK_THROWS_AS(parse_expr("a(1,2) +", 3), ParseError);
    CHECK_THROWS_AS(parse_expr("1 + * 2", 3), ParseError);
    CHECK_THROWS_AS(parse_expr("a(1,4)", 3), ParseError);  // index out of range
    CHECK_THROWS_AS(parse_expr("xi(0,1)", 3), ParseError); // index out of range
    CHECK_THROWS_AS(parse_expr("1/0", 3), ParseError);
    CHECK_THROWS_AS(parse_expr("1/(x-x)", 3), ParseError);
    try {
        parse_expr("a(1,2) @ 2", 3);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position == 7);
    }
}

TEST_CASE("division: exact quotients pass, non-units are rejected") {
    const int n = 3;
    const Expr one_plus = Expr::integer(1) + gen_xi(1, n);
    CHECK((one_plus * one_plus) / one_plus == one_plus);
    CHECK_THROWS_AS(Expr::integer(1) / one_plus, ArithmeticError);
    CHECK_THROWS_AS(one_plus / Expr(), ArithmeticError);
    // A-monomials are genuine units.
    const Expr u = gen_a(1, n) * gen_a(2, n).pow(2) * Expr::rational(make_rat(3, 4));
    CHECK(u.is_unit());
    CHECK((one_plus / u) * u == one_plus);
}

TEST_CASE("printing then parsing is a fixed point") {
    const int n = 4;
    CHECK(parse_expr(Expr::transition_xi(2, 1, n).str(), n) == Expr::transition_xi(2, 1, n));
    CHECK(parse_expr(Expr().str(), n).is_zero());
    CHECK(parse_expr(Expr::rational(make_rat(-7, 3)).str(), n) ==
          Expr::rational(make_rat(-7, 3)));
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Expr e = gvtest::random_expr(n, rng);
        CAPTURE(e.str());
        CHECK(parse_expr(e.str(), n) == e);
    }
}

TEST_CASE("nerve size discipline") {
    CHECK_THROWS_AS(Expr::transition_a(1, 2, 3) * Expr::transition_a(1, 2, 4), DomainError);
    CHECK_THROWS_AS(Expr::transition_a(1, 4, 3), DomainError);
    CHECK_THROWS_AS(parse_expr("x", 0), DomainError);
    // Constants are universal.
    CHECK((Expr::integer(2) * Expr::transition_a(1, 2, 3)).nerve() == 3);
}
