#include "gv/jet.hpp"

#include <algorithm>

namespace gv {

Jet::Jet(int chart, int order, std::vector<Expr> coeffs) : chart_(chart), order_(order) {
    if (order < 1) throw DomainError("jet order must be >= 1");
    if (static_cast<int>(coeffs.size()) > order + 1)
        throw DomainError("jet has more coefficients than its order allows");
    coeffs_ = std::move(coeffs);
    coeffs_.resize(static_cast<std::size_t>(order) + 1);
    for (auto& c : coeffs_) c = normalize(c);
}

Jet Jet::zero(int chart, int order) { return Jet(chart, order, {}); }

Jet Jet::constant(int chart, int order, Expr c) { return Jet(chart, order, {std::move(c)}); }

Jet Jet::identity(int chart, int order) {
    return Jet(chart, order, {Expr(), Expr::integer(1)});
}

const Expr& Jet::coefficient(int m) const {
    if (m < 0 || m > order_) throw DomainError("jet coefficient index out of range");
    return coeffs_[static_cast<std::size_t>(m)];
}

bool Jet::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Expr& c) { return c.is_zero(); });
}

Jet Jet::retag(int new_chart) const { return Jet(new_chart, order_, coeffs_); }

void Jet::require_same_shape(const Jet& o) const {
    if (chart_ != o.chart_) throw DomainError("jet chart mismatch");
    if (order_ != o.order_) throw DomainError("jet order mismatch");
}

Jet Jet::operator+(const Jet& o) const {
    require_same_shape(o);
    std::vector<Expr> out(coeffs_.size());
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = coeffs_[m] + o.coeffs_[m];
    return Jet(chart_, order_, std::move(out));
}

Jet Jet::operator-(const Jet& o) const { return *this + (-o); }

Jet Jet::operator-() const {
    std::vector<Expr> out(coeffs_.size());
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = -coeffs_[m];
    return Jet(chart_, order_, std::move(out));
}

Jet Jet::operator*(const Jet& o) const {
    require_same_shape(o);
    std::vector<Expr> out(coeffs_.size());
    for (int m = 0; m <= order_; ++m) {
        Expr acc;
        for (int i = 0; i <= m; ++i)
            acc = acc + coeffs_[static_cast<std::size_t>(i)] *
                            o.coeffs_[static_cast<std::size_t>(m - i)];
        out[static_cast<std::size_t>(m)] = acc;
    }
    return Jet(chart_, order_, std::move(out));
}

Jet Jet::from_rational(const Jet& numer, const Jet& denom) {
    numer.require_same_shape(denom);
    const Expr& d0 = denom.coefficient(0);
    if (d0.is_zero() || !d0.is_unit())
        throw ArithmeticError("jet division requires a unit constant term in the divisor");
    // q_m = (n_m - sum_{i=1..m} d_i q_{m-i}) / d0
    std::vector<Expr> q(numer.coeffs_.size());
    for (int m = 0; m <= numer.order_; ++m) {
        Expr acc = numer.coeffs_[static_cast<std::size_t>(m)];
        for (int i = 1; i <= m; ++i)
            acc = acc - denom.coeffs_[static_cast<std::size_t>(i)] *
                            q[static_cast<std::size_t>(m - i)];
        q[static_cast<std::size_t>(m)] = acc / d0;
    }
    return Jet(numer.chart_, numer.order_, std::move(q));
}

Jet Jet::operator/(const Jet& o) const { return from_rational(*this, o); }

Jet Jet::inverse() const { return from_rational(constant(chart_, order_, Expr::integer(1)), *this); }

Jet Jet::compose(const Jet& inner) const {
    if (order_ != inner.order_) throw DomainError("jet order mismatch in composition");
    if (!inner.coefficient(0).is_zero())
        throw DomainError("composition requires zero constant term in the inner jet");
    // Horner in the inner jet.
    Jet result = constant(inner.chart_, order_, coeffs_[static_cast<std::size_t>(order_)]);
    for (int m = order_ - 1; m >= 0; --m)
        result = result * inner + constant(inner.chart_, order_, coeffs_[static_cast<std::size_t>(m)]);
    return result;
}

Jet Jet::invert_series(int result_chart) const {
    if (!coefficient(0).is_zero())
        throw DomainError("series inversion requires zero constant term");
    const Expr& c1 = coefficient(1);
    if (c1.is_zero() || !c1.is_unit())
        throw DomainError("series inversion requires a unit linear term");
    const int chart = result_chart < 0 ? chart_ : result_chart;

    // Solve compose(g, *this) = identity order by order: the theta^M
    // coefficient of sum_{m<=M} g_m (*this)^m is delta_{M,1}.
    std::vector<Expr> g(static_cast<std::size_t>(order_) + 1);
    std::vector<Jet> powers;
    powers.reserve(static_cast<std::size_t>(order_) + 1);
    powers.push_back(*this); // (*this)^1
    g[1] = c1.inverse();
    Expr c1_pow = c1;
    for (int M = 2; M <= order_; ++M) {
        powers.push_back(powers.back() * *this);
        c1_pow = c1_pow * c1;
        Expr acc;
        for (int m = 1; m < M; ++m)
            acc = acc + g[static_cast<std::size_t>(m)] *
                            powers[static_cast<std::size_t>(m - 1)].coefficient(M);
        g[static_cast<std::size_t>(M)] = (-acc) / c1_pow;
    }
    return Jet(chart, order_, std::move(g));
}

bool Jet::operator==(const Jet& o) const {
    if (chart_ != o.chart_ || order_ != o.order_) return false;
    for (std::size_t m = 0; m < coeffs_.size(); ++m)
        if (!equals(coeffs_[m], o.coeffs_[m])) return false;
    return true;
}

std::string Jet::str() const {
    std::string out;
    for (int m = 0; m <= order_; ++m) {
        std::string c = coeffs_[static_cast<std::size_t>(m)].str();
        if (c.find(' ') != std::string::npos) c = "(" + c + ")";
        if (m > 0) {
            out += " + ";
            c += "*t";
            if (m > 1) c += "^" + std::to_string(m);
        }
        out += c;
    }
    out += " [chart " + std::to_string(chart_) + ", order " + std::to_string(order_) + "]";
    return out;
}

Jet jet_arith(JetOp op, const Jet& a, const Jet& b) {
    switch (op) {
        case JetOp::add:
            return a + b;
        case JetOp::sub:
            return a - b;
        case JetOp::mul:
            return a * b;
        case JetOp::div:
            return a / b;
    }
    throw DomainError("jet_arith: unknown operation");
}

} // namespace gv
