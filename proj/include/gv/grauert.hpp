#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "gv/jet.hpp"

namespace gv {

// Combinatorics of the cover: a full simplex on n charts, so every ordered
// pair is an overlap and every unordered triple supports a cocycle check.
struct Nerve {
    int n = 0;

    std::vector<std::pair<int, int>> ordered_pairs() const;
    std::vector<std::array<int, 3>> triples() const; // j < k < l

    bool operator==(const Nerve&) const = default;
};

// Symbolic model of the compactified affine bundle over a genus-g curve:
// charts glued by eta_j = a(j,k) eta_k + xi(j,k), section at infinity Y cut
// out by theta_j = 1/eta_j. The symbol universe is the free-generator chain
// of the expr module; genus and deg F are consumed by the intersection
// layer only.
struct GrauertModel {
    Nerve nerve;
    int genus = 2;
    int deg_f = 1;
    int order = 3; // jet truncation

    Expr a(int j, int k) const { return Expr::transition_a(j, k, nerve.n); }
    Expr xi(int j, int k) const { return Expr::transition_xi(j, k, nerve.n); }

    bool operator==(const GrauertModel&) const = default;
};

GrauertModel build_model(int charts, int genus, int deg_f, int order);

// theta_j as a jet in theta_k: theta_k / (a(j,k) + xi(j,k) theta_k).
Jet theta_transition(const GrauertModel& m, int j, int k);

// Restriction of a transition cochain to Y: the constant terms t(j,k).
struct FlatCochain {
    std::map<std::pair<int, int>, Expr> constants;
    bool all_one = false;

    const Expr& t(int j, int k) const;
    // t(j,k) t(k,l) = t(j,l) on every triple.
    bool multiplicative_cocycle(const GrauertModel& m) const;
};

// Line-bundle transition data g(j,k) = e_k/e_j stored as a jet in the first
// index's variable theta_j. Every transition has a unit constant term.
class LineBundleCochain {
public:
    LineBundleCochain(GrauertModel model, std::map<std::pair<int, int>, Jet> transitions);

    const GrauertModel& model() const { return model_; }
    const Jet& transition(int j, int k) const;

    // Copy with one entry replaced; used for perturbation tests.
    LineBundleCochain with_transition(int j, int k, Jet g) const;

private:
    GrauertModel model_;
    std::map<std::pair<int, int>, Jet> transitions_;
};

// p*F: constant transitions a(j,k).
LineBundleCochain bundle_pullback_F(const GrauertModel& m);

// [Y]: v_k/v_j = 1/(a(j,k) + xi(j,k) theta_k), re-expressed in chart j.
LineBundleCochain bundle_divisor_Y(const GrauertModel& m);

// L = p*F (x) [Y]; transitions collapse to 1 - xi(j,k) theta_j exactly.
LineBundleCochain bundle_L(const GrauertModel& m);

LineBundleCochain bundle_tensor(const LineBundleCochain& a, const LineBundleCochain& b);
LineBundleCochain bundle_dual(const LineBundleCochain& a);

enum class BundleOp { tensor, dual };
LineBundleCochain bundle_combine(BundleOp op, const LineBundleCochain& a,
                                 const LineBundleCochain* b = nullptr);

// g(j,k) * (g(k,l) o theta_k(theta_j)) * g(j,l)^-1 - 1, computed in chart j;
// the zero jet exactly when the triple product closes.
Jet bundle_cocycle_residual(const LineBundleCochain& b, int j, int k, int l);

FlatCochain restrict_to_Y(const LineBundleCochain& b);

} // namespace gv
