#include "gv/grauert.hpp"

namespace gv {

std::vector<std::pair<int, int>> Nerve::ordered_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
            if (j != k) out.emplace_back(j, k);
    return out;
}

std::vector<std::array<int, 3>> Nerve::triples() const {
    std::vector<std::array<int, 3>> out;
    for (int j = 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k)
            for (int l = k + 1; l <= n; ++l) out.push_back({j, k, l});
    return out;
}

GrauertModel build_model(int charts, int genus, int deg_f, int order) {
    if (charts < 3) throw DomainError("model needs at least 3 charts (no triples otherwise)");
    if (genus < 2) throw DomainError("model needs genus >= 2");
    if (order < 1) throw DomainError("truncation order must be >= 1");
    return GrauertModel{Nerve{charts}, genus, deg_f, order};
}

Jet theta_transition(const GrauertModel& m, int j, int k) {
    if (j == k) throw DomainError("theta transition needs distinct charts");
    const Jet numer = Jet::identity(k, m.order);
    const Jet denom = Jet(k, m.order, {m.a(j, k), m.xi(j, k)});
    return Jet::from_rational(numer, denom);
}

// ---------------------------------------------------------------------------
// LineBundleCochain

LineBundleCochain::LineBundleCochain(GrauertModel model,
                                     std::map<std::pair<int, int>, Jet> transitions)
    : model_(std::move(model)), transitions_(std::move(transitions)) {
    for (const auto& [jk, g] : transitions_) {
        if (g.chart() != jk.first) throw DomainError("transition stored in the wrong chart");
        if (g.coefficient(0).is_zero() || !g.coefficient(0).is_unit())
            throw DomainError("transition must have a unit constant term");
    }
}

const Jet& LineBundleCochain::transition(int j, int k) const {
    auto it = transitions_.find({j, k});
    if (it == transitions_.end()) throw DomainError("no transition for this pair");
    return it->second;
}

LineBundleCochain LineBundleCochain::with_transition(int j, int k, Jet g) const {
    auto copy = transitions_;
    auto it = copy.find({j, k});
    if (it == copy.end()) throw DomainError("no transition for this pair");
    it->second = std::move(g);
    return LineBundleCochain(model_, std::move(copy));
}

LineBundleCochain bundle_pullback_F(const GrauertModel& m) {
    std::map<std::pair<int, int>, Jet> ts;
    for (const auto& [j, k] : m.nerve.ordered_pairs())
        ts.emplace(std::make_pair(j, k), Jet::constant(j, m.order, m.a(j, k)));
    return LineBundleCochain(m, std::move(ts));
}

LineBundleCochain bundle_divisor_Y(const GrauertModel& m) {
    std::map<std::pair<int, int>, Jet> ts;
    for (const auto& [j, k] : m.nerve.ordered_pairs()) {
        // v_k/v_j as a jet in theta_k, then re-expressed in chart j.
        const Jet in_k = Jet::from_rational(Jet::constant(k, m.order, Expr::integer(1)),
                                            Jet(k, m.order, {m.a(j, k), m.xi(j, k)}));
        ts.emplace(std::make_pair(j, k), in_k.compose(theta_transition(m, k, j)));
    }
    return LineBundleCochain(m, std::move(ts));
}

LineBundleCochain bundle_L(const GrauertModel& m) {
    return bundle_tensor(bundle_pullback_F(m), bundle_divisor_Y(m));
}

LineBundleCochain bundle_tensor(const LineBundleCochain& a, const LineBundleCochain& b) {
    if (!(a.model() == b.model())) throw DomainError("bundle model mismatch");
    std::map<std::pair<int, int>, Jet> ts;
    for (const auto& [j, k] : a.model().nerve.ordered_pairs())
        ts.emplace(std::make_pair(j, k), a.transition(j, k) * b.transition(j, k));
    return LineBundleCochain(a.model(), std::move(ts));
}

LineBundleCochain bundle_dual(const LineBundleCochain& a) {
    std::map<std::pair<int, int>, Jet> ts;
    for (const auto& [j, k] : a.model().nerve.ordered_pairs())
        ts.emplace(std::make_pair(j, k), a.transition(j, k).inverse());
    return LineBundleCochain(a.model(), std::move(ts));
}

LineBundleCochain bundle_combine(BundleOp op, const LineBundleCochain& a,
                                 const LineBundleCochain* b) {
    switch (op) {
        case BundleOp::tensor:
            if (!b) throw DomainError("tensor needs a second operand");
            return bundle_tensor(a, *b);
        case BundleOp::dual:
            return bundle_dual(a);
    }
    throw DomainError("bundle_combine: unknown operation");
}

Jet bundle_cocycle_residual(const LineBundleCochain& b, int j, int k, int l) {
    const GrauertModel& m = b.model();
    if (j == k || j == l || k == l) throw DomainError("cocycle residual needs a genuine triple");
    const Jet& g_jk = b.transition(j, k);
    const Jet g_kl_in_j = b.transition(k, l).compose(theta_transition(m, k, j));
    const Jet g_jl_inv = b.transition(j, l).inverse();
    return g_jk * g_kl_in_j * g_jl_inv - Jet::constant(j, m.order, Expr::integer(1));
}

// ---------------------------------------------------------------------------
// FlatCochain

const Expr& FlatCochain::t(int j, int k) const {
    auto it = constants.find({j, k});
    if (it == constants.end()) throw DomainError("no restriction entry for this pair");
    return it->second;
}

bool FlatCochain::multiplicative_cocycle(const GrauertModel& m) const {
    for (const auto& [j, k, l] : m.nerve.triples())
        if (!equals(t(j, k) * t(k, l), t(j, l))) return false;
    return true;
}

FlatCochain restrict_to_Y(const LineBundleCochain& b) {
    FlatCochain out;
    out.all_one = true;
    for (const auto& [j, k] : b.model().nerve.ordered_pairs()) {
        Expr c0 = b.transition(j, k).coefficient(0);
        if (!c0.is_one()) out.all_one = false;
        out.constants.emplace(std::make_pair(j, k), std::move(c0));
    }
    return out;
}

} // namespace gv
