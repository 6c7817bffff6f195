#pragma once

#include <string>
#include <vector>

#include "gv/expr.hpp"

namespace gv {

// Truncated formal power series in one defining function theta_j with Expr
// coefficients. Jets are immutable values; arithmetic requires matching
// chart tags and truncation orders, and composition requires the inner jet
// to preserve the origin (zero constant term).
class Jet {
public:
    Jet(int chart, int order, std::vector<Expr> coeffs);

    static Jet zero(int chart, int order);
    static Jet constant(int chart, int order, Expr c);
    // theta itself.
    static Jet identity(int chart, int order);

    int chart() const { return chart_; }
    int order() const { return order_; }
    const Expr& coefficient(int m) const;
    const std::vector<Expr>& coefficients() const { return coeffs_; }

    bool is_zero() const;
    Jet retag(int new_chart) const;

    Jet operator+(const Jet& o) const;
    Jet operator-(const Jet& o) const;
    Jet operator*(const Jet& o) const;
    Jet operator/(const Jet& o) const; // o must have unit constant term
    Jet operator-() const;

    // Multiplicative inverse; requires a unit constant term.
    Jet inverse() const;

    // Substitute `inner` for this jet's variable; inner must have zero
    // constant term. The result lives in inner's chart.
    Jet compose(const Jet& inner) const;

    // Compositional inverse g with compose(g, *this) = identity up to
    // truncation; requires zero constant term and unit linear term. The
    // output variable is this jet's value, which the data cannot name, so
    // callers supply the chart tag (defaults to the input chart).
    Jet invert_series(int result_chart = -1) const;

    // Truncated quotient with numer = denom * result + O(theta^{N+1}).
    static Jet from_rational(const Jet& numer, const Jet& denom);

    // "c0 + c1*t + ... [chart j, order N]"
    std::string str() const;

    bool operator==(const Jet& o) const;

private:
    int chart_;
    int order_;
    std::vector<Expr> coeffs_;

    void require_same_shape(const Jet& o) const;
};

enum class JetOp { add, sub, mul, div };

Jet jet_arith(JetOp op, const Jet& a, const Jet& b);

} // namespace gv
