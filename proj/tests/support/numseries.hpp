#pragma once

// Test-only truncated power series over complex coefficients, written as
// plainly as possible (naive convolutions, term-by-term composition). Used
// as the brute-force oracle for the symbolic jet layer: instantiate the
// symbols numerically, redo the construction here, compare coefficients.

#include <complex>
#include <vector>

#include "gv/expr.hpp"
#include "gv/jet.hpp"

namespace gvtest {

struct NumSeries {
    int order;
    std::vector<std::complex<double>> c;

    explicit NumSeries(int n) : order(n), c(static_cast<size_t>(n) + 1) {}

    static NumSeries constant(int n, std::complex<double> z) {
        NumSeries s(n);
        s.c[0] = z;
        return s;
    }

    static NumSeries identity(int n) {
        NumSeries s(n);
        s.c[1] = {1.0, 0.0};
        return s;
    }

    NumSeries add(const NumSeries& o) const {
        NumSeries s(order);
        for (int m = 0; m <= order; ++m) s.c[m] = c[m] + o.c[m];
        return s;
    }

    NumSeries sub(const NumSeries& o) const {
        NumSeries s(order);
        for (int m = 0; m <= order; ++m) s.c[m] = c[m] - o.c[m];
        return s;
    }

    NumSeries mul(const NumSeries& o) const {
        NumSeries s(order);
        for (int m = 0; m <= order; ++m)
            for (int i = 0; i <= m; ++i) s.c[m] += c[i] * o.c[m - i];
        return s;
    }

    NumSeries div(const NumSeries& o) const {
        NumSeries q(order);
        for (int m = 0; m <= order; ++m) {
            std::complex<double> acc = c[m];
            for (int i = 1; i <= m; ++i) acc -= o.c[i] * q.c[m - i];
            q.c[m] = acc / o.c[0];
        }
        return q;
    }

    // this(inner), inner.c[0] == 0; powers accumulated term by term.
    NumSeries compose(const NumSeries& inner) const {
        NumSeries acc = constant(order, c[0]);
        NumSeries p = constant(order, {1.0, 0.0});
        for (int m = 1; m <= order; ++m) {
            p = p.mul(inner);
            NumSeries scaled(order);
            for (int i = 0; i <= order; ++i) scaled.c[i] = c[m] * p.c[i];
            acc = acc.add(scaled);
        }
        return acc;
    }

    std::complex<double> eval(std::complex<double> t) const {
        std::complex<double> r{0.0, 0.0};
        for (int m = order; m >= 0; --m) r = r * t + c[m];
        return r;
    }

    double dist(const NumSeries& o) const {
        double d = 0.0;
        for (int m = 0; m <= order; ++m) d = std::max(d, std::abs(c[m] - o.c[m]));
        return d;
    }
};

inline NumSeries series_of(const gv::Jet& jet, const gv::EvalEnv& env,
                           std::complex<double> x = {0.0, 0.0}) {
    NumSeries s(jet.order());
    for (int m = 0; m <= jet.order(); ++m) s.c[m] = jet.coefficient(m).evaluate(env, x);
    return s;
}

} // namespace gvtest
