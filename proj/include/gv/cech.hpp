#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gv/grauert.hpp"

namespace gv {

// Cech 1-cochain valued in the conormal bundle of Y: entry (j,k) is the
// coefficient of the section c(j,k) d theta_j on the overlap. Transport
// between frames uses d theta_k = a(j,k) d theta_j on Y (the linear term of
// the inverse chart transition), so the reversal identity reads
// c(k,j) * a(j,k) + c(j,k) = 0.
struct ConormalCochain {
    GrauertModel model;
    std::map<std::pair<int, int>, Expr> entries;

    const Expr& c(int j, int k) const;
    bool is_zero() const;
};

// 0-cochain phi_j d theta_j per chart.
struct ZeroCochain {
    GrauertModel model;
    std::map<int, Expr> entries;

    // phi_j as the formal unknown generators.
    static ZeroCochain formal(const GrauertModel& m);
    static ZeroCochain constant(const GrauertModel& m, const Expr& value);

    const Expr& phi(int j) const;
};

// Same coefficients rewritten against the pulled-back frame of F^-1's dual;
// both frames transform by a(j,k), which is what makes the relabeling a
// well-defined isomorphism.
struct FCochain {
    GrauertModel model;
    std::map<std::pair<int, int>, Expr> entries;

    const Expr& c(int j, int k) const;
};

// First-order jet coefficients of a pre-normalized transition cochain;
// requires restrict_to_Y(b) to be identically 1.
ConormalCochain extract_u1(const LineBundleCochain& b);

// c(j,k) + a(j,k) c(k,l) - c(j,l) in the d theta_j frame; needs j < k < l.
Expr cech_cocycle_residual(const ConormalCochain& c, int j, int k, int l);

// (delta phi)(j,k) = phi_k a(j,k) - phi_j in the d theta_j frame.
ConormalCochain coboundary(const ZeroCochain& phi);

FCochain to_F_frame(const ConormalCochain& c);

// Outcome of reducing "u1 is a coboundary" to the linear system
// phi_k a(j,k) - phi_j = -xi(j,k) and of transporting it to the F-frame.
struct ReductionReport {
    bool degenerate = false;      // input was the zero cochain
    bool system_matches = false;  // coboundary(phi) = c is entrywise that system
    bool f_frame_matches = false; // transported system agrees entrywise
    int ordered_pairs = 0;
    int unordered_pairs = 0;
    std::vector<std::string> system_rows;

    bool verified() const { return degenerate || (system_matches && f_frame_matches); }
};

// Requires c to be the u1 cochain of L (entries -xi(j,k)) or zero.
ReductionReport claim_3_4_reduction(const ConormalCochain& c);

} // namespace gv
