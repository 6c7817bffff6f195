#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gv/oracle.hpp"
#include "support/helpers.hpp"

using namespace gv;
using namespace gv::oracle;

namespace {

Assignment trivial_assignment(const GrauertModel& m) {
    Assignment out;
    for (int i = 1; i < m.nerve.n; ++i) {
        out[Gen{GenKind::A, i}] = Expr::integer(1);
        out[Gen{GenKind::Xi, i}] = Expr();
    }
    return out;
}

} // namespace

TEST_CASE("default assignment reproduces the constants instance at n = 3") {
    const GrauertModel m = build_model(3, 2, 1, 3);
    const Assignment gens = default_assignment(m);
    const NumericModel nm = instantiate(m, gens, 5, 1);

    CHECK(std::abs(nm.a_value(1, 2, 0.0) - std::complex<double>{2.0, 0.0}) == 0.0);
    CHECK(std::abs(nm.a_value(2, 3, 0.0) - std::complex<double>{3.0, 0.0}) == 0.0);
    CHECK(std::abs(nm.xi_value(1, 2, 0.0) - std::complex<double>{0.5, 0.0}) == 0.0);
    // Derived through the relations: a13 = 6, xi13 = 1/2 + 2*(-1/3) = -1/6.
    CHECK(std::abs(nm.a_value(1, 3, 0.0) - std::complex<double>{6.0, 0.0}) < 1e-15);
    CHECK(std::abs(nm.xi_value(1, 3, 0.0) - std::complex<double>{-1.0 / 6.0, 0.0}) < 1e-15);
}

TEST_CASE("instantiate: validation, determinism, pole avoidance") {
    const GrauertModel m = build_model(3, 2, 1, 3);

    Assignment missing = default_assignment(m);
    missing.erase(Gen{GenKind::Xi, 2});
    CHECK_THROWS_AS(instantiate(m, missing, 5, 1), DomainError);
    CHECK_THROWS_AS(instantiate(m, default_assignment(m), 0, 1), DomainError);

    const NumericModel n1 = instantiate(m, default_assignment(m), 10, 7);
    const NumericModel n2 = instantiate(m, default_assignment(m), 10, 7);
    REQUIRE(n1.samples().size() == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(n1.samples()[i] == n2.samples()[i]);

    // a(1,2) = x vanishes at the origin; every retained sample must clear
    // the pole guard.
    Assignment xdep = default_assignment(m);
    xdep[Gen{GenKind::A, 1}] = Expr::coordinate();
    const NumericModel nx = instantiate(m, xdep, 50, 3);
    for (const auto x : nx.samples()) CHECK(std::abs(nx.a_value(1, 2, x)) >= 1e-6);
}

TEST_CASE("parse_assignment accepts the config surface and rejects misuse") {
    const GrauertModel m = build_model(3, 2, 1, 3);
    const Assignment gens = parse_assignment(m, {{"a(1,2)", "2"},
                                                 {"a(2,3)", "3 + x"},
                                                 {"xi(1,2)", "1/2 + x"},
                                                 {"xi(2,3)", "-1/3"}});
    CHECK(gens.size() == 4);
    const NumericModel nm = instantiate(m, gens, 10, 5);
    CHECK(check_transitions(nm, 1e-6).pass);
    CHECK(check_cocycles_numeric(nm, 1e-10).pass);

    CHECK_THROWS_AS(parse_assignment(m, {{"a(1,3)", "2"}}), DomainError);
    CHECK_THROWS_AS(parse_assignment(m, {{"a(1,2)", "phi(1)"}}), DomainError);
    CHECK_THROWS_AS(parse_assignment(m, {{"a(1,2)", "2"}}), DomainError); // incomplete
}

TEST_CASE("check_transitions: truncation-tier residuals") {
    const GrauertModel m = build_model(3, 2, 1, 3);
    const NumericModel nm = instantiate(m, default_assignment(m), 10, 1);
    const ResidualStats s = check_transitions(nm, 1e-6);
    CHECK(s.pass);
    CHECK(s.count == 6 * 10 * 4);

    const NumericModel triv = instantiate(m, trivial_assignment(m), 5, 1);
    const ResidualStats st = check_transitions(triv, 1e-6);
    CHECK(st.max_abs == 0.0);
}

TEST_CASE("a tampered jet coefficient surfaces as a first-order residual") {
    const GrauertModel m = build_model(3, 2, 1, 3);
    const NumericModel nm = instantiate(m, default_assignment(m), 1, 1);
    const auto x = nm.samples()[0];
    const EvalEnv env = nm.env_at(x);

    const Jet good = theta_transition(m, 1, 2);
    const Jet bad(2, m.order,
                  {good.coefficient(0), good.coefficient(1) + Expr::rational(make_rat(1, 100)),
                   good.coefficient(2), good.coefficient(3)});
    const double theta = 1e-2;
    std::complex<double> vg{0.0, 0.0}, vb{0.0, 0.0};
    for (int c = m.order; c >= 0; --c) {
        vg = vg * theta + good.coefficient(c).evaluate(env, x);
        vb = vb * theta + bad.coefficient(c).evaluate(env, x);
    }
    CHECK(std::abs(std::abs(vb - vg) - 0.01 * theta) < 1e-12);
}

TEST_CASE("check_u1_numeric: derivative matches -xi, linearity confirmed") {
    const GrauertModel m = build_model(3, 2, 1, 3);
    const NumericModel nm = instantiate(m, default_assignment(m), 10, 1);
    CHECK(std::abs(nm.xi_value(1, 2, nm.samples()[0]) - std::complex<double>{0.5, 0.0}) == 0.0);
    const ResidualStats s = check_u1_numeric(nm, 1e-6);
    CHECK(s.pass);

    const NumericModel triv = instantiate(m, trivial_assignment(m), 5, 1);
    CHECK(check_u1_numeric(triv, 1e-6).max_abs == 0.0);
}

TEST_CASE("check_cocycles_numeric: exact identities at float precision") {
    for (int n = 3; n <= 5; ++n) {
        const GrauertModel m = build_model(n, 2, 1, 3);
        const NumericModel nm = instantiate(m, default_assignment(m), 10, 2);
        const ResidualStats s = check_cocycles_numeric(nm, 1e-10);
        CHECK(s.pass);
    }
    const GrauertModel m = build_model(3, 2, 1, 3);
    const NumericModel triv = instantiate(m, trivial_assignment(m), 5, 1);
    CHECK(check_cocycles_numeric(triv, 1e-10).max_abs == 0.0);

    // An inconsistent bump of xi(1,2) moves the conormal residual by
    // exactly the bump size (the residual is linear in the entries).
    const NumericModel nm = instantiate(m, default_assignment(m), 1, 1);
    const auto x = nm.samples()[0];
    const double delta = 1e-3;
    const auto r = -(nm.xi_value(1, 2, x) + delta) + nm.a_value(1, 2, x) * (-nm.xi_value(2, 3, x)) +
                   nm.xi_value(1, 3, x);
    CHECK(std::abs(std::abs(r) - delta) < 1e-12);
}

TEST_CASE("check_derived_consistency: two code paths agree to 1e-12") {
    for (int n : {3, 4}) {
        const GrauertModel m = build_model(n, 2, 1, 3);
        for (long seed = 1; seed <= 3; ++seed) {
            const NumericModel nm = instantiate(m, default_assignment(m), 10, seed);
            CHECK(check_derived_consistency(nm, 1e-12).pass);
        }
    }
}

TEST_CASE("parallel kernels reproduce the serial reference bitwise") {
    const GrauertModel m = build_model(4, 2, 1, 3);
    const NumericModel nm = instantiate(m, default_assignment(m), 25, 11);
    {
        const auto a = check_transitions(nm, 1e-6);
        const auto b = reference::check_transitions(nm, 1e-6);
        CHECK(a.max_abs == b.max_abs);
        CHECK(a.mean == b.mean);
        CHECK(a.count == b.count);
    }
    {
        const auto a = check_u1_numeric(nm, 1e-6);
        const auto b = reference::check_u1_numeric(nm, 1e-6);
        CHECK(a.max_abs == b.max_abs);
        CHECK(a.mean == b.mean);
    }
    {
        const auto a = check_cocycles_numeric(nm, 1e-10);
        const auto b = reference::check_cocycles_numeric(nm, 1e-10);
        CHECK(a.max_abs == b.max_abs);
        CHECK(a.mean == b.mean);
    }
    {
        const auto a = check_derived_consistency(nm, 1e-12);
        const auto b = reference::check_derived_consistency(nm, 1e-12);
        CHECK(a.max_abs == b.max_abs);
        CHECK(a.mean == b.mean);
    }
}

TEST_CASE("stats are deterministic and merge correctly") {
    const GrauertModel m = build_model(3, 2, 1, 3);
    const NumericModel n1 = instantiate(m, default_assignment(m), 10, 42);
    const NumericModel n2 = instantiate(m, default_assignment(m), 10, 42);
    const auto s1 = check_transitions(n1, 1e-6);
    const auto s2 = check_transitions(n2, 1e-6);
    CHECK(s1.max_abs == s2.max_abs);
    CHECK(s1.mean == s2.mean);

    const ResidualStats merged = s1.merged(check_u1_numeric(n1, 1e-6));
    CHECK(merged.count == s1.count + check_u1_numeric(n1, 1e-6).count);
    CHECK(merged.max_abs >= s1.max_abs);
}
