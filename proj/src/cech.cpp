#include "gv/cech.hpp"

namespace gv {

const Expr& ConormalCochain::c(int j, int k) const {
    auto it = entries.find({j, k});
    if (it == entries.end()) throw DomainError("no cochain entry for this pair");
    return it->second;
}

bool ConormalCochain::is_zero() const {
    for (const auto& [jk, e] : entries)
        if (!e.is_zero()) return false;
    return true;
}

ZeroCochain ZeroCochain::formal(const GrauertModel& m) {
    ZeroCochain out{m, {}};
    for (int j = 1; j <= m.nerve.n; ++j) out.entries.emplace(j, Expr::unknown_phi(j, m.nerve.n));
    return out;
}

ZeroCochain ZeroCochain::constant(const GrauertModel& m, const Expr& value) {
    ZeroCochain out{m, {}};
    for (int j = 1; j <= m.nerve.n; ++j) out.entries.emplace(j, value);
    return out;
}

const Expr& ZeroCochain::phi(int j) const {
    auto it = entries.find(j);
    if (it == entries.end()) throw DomainError("no 0-cochain entry for this chart");
    return it->second;
}

const Expr& FCochain::c(int j, int k) const {
    auto it = entries.find({j, k});
    if (it == entries.end()) throw DomainError("no cochain entry for this pair");
    return it->second;
}

ConormalCochain extract_u1(const LineBundleCochain& b) {
    const FlatCochain flat = restrict_to_Y(b);
    if (!flat.all_one)
        throw DomainError(
            "u1 extraction needs pre-normalized frames: some restriction t(j,k) != 1");
    ConormalCochain out{b.model(), {}};
    for (const auto& [j, k] : b.model().nerve.ordered_pairs())
        out.entries.emplace(std::make_pair(j, k), b.transition(j, k).coefficient(1));
    return out;
}

Expr cech_cocycle_residual(const ConormalCochain& c, int j, int k, int l) {
    if (!(j < k && k < l)) throw DomainError("cocycle residual needs an ordered triple j < k < l");
    return c.c(j, k) + c.model.a(j, k) * c.c(k, l) - c.c(j, l);
}

ConormalCochain coboundary(const ZeroCochain& phi) {
    ConormalCochain out{phi.model, {}};
    for (const auto& [j, k] : phi.model.nerve.ordered_pairs())
        out.entries.emplace(std::make_pair(j, k), phi.phi(k) * phi.model.a(j, k) - phi.phi(j));
    return out;
}

FCochain to_F_frame(const ConormalCochain& c) {
    return FCochain{c.model, c.entries};
}

ReductionReport claim_3_4_reduction(const ConormalCochain& c) {
    const GrauertModel& m = c.model;
    ReductionReport report;
    report.ordered_pairs = static_cast<int>(m.nerve.ordered_pairs().size());
    report.unordered_pairs = report.ordered_pairs / 2;

    if (c.is_zero()) {
        // delta(0) = 0 exhibits the class as trivial outright.
        report.degenerate = true;
        return report;
    }
    for (const auto& [j, k] : m.nerve.ordered_pairs())
        if (!equals(c.c(j, k), -m.xi(j, k)))
            throw DomainError("reduction expects the u1 cochain of L (entries -xi(j,k))");

    const ZeroCochain phi = ZeroCochain::formal(m);
    const ConormalCochain delta_phi = coboundary(phi);

    // (i) coboundary(phi) = c is, entrywise, phi_k a(j,k) - phi_j = -xi(j,k).
    report.system_matches = true;
    for (const auto& [j, k] : m.nerve.ordered_pairs()) {
        const Expr lhs = delta_phi.c(j, k) - c.c(j, k);
        const Expr row = (phi.phi(k) * m.a(j, k) - phi.phi(j)) + m.xi(j, k);
        if (!equals(lhs, row)) report.system_matches = false;
        report.system_rows.push_back("phi(" + std::to_string(k) + ")*a(" + std::to_string(j) +
                                     "," + std::to_string(k) + ") - phi(" + std::to_string(j) +
                                     ") = -xi(" + std::to_string(j) + "," + std::to_string(k) +
                                     ")");
    }

    // (ii) the same system transported to the F-frame, entrywise.
    const FCochain f_lhs = to_F_frame(delta_phi);
    const FCochain f_rhs = to_F_frame(c);
    report.f_frame_matches = true;
    for (const auto& [j, k] : m.nerve.ordered_pairs())
        if (!equals(f_lhs.c(j, k) - f_rhs.c(j, k),
                    (phi.phi(k) * m.a(j, k) - phi.phi(j)) + m.xi(j, k)))
            report.f_frame_matches = false;

    return report;
}

} // namespace gv
