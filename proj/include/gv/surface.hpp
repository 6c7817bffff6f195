#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gv/cech.hpp"
#include "gv/oracle.hpp"

namespace gv {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Neron-Severi lattice of the ruled surface, basis ([Y], fiber class [f]),
// intersection matrix [[-d, 1], [1, 0]] with d = deg F.

struct NSClass {
    long alpha = 0; // coefficient of [Y]
    long beta = 0;  // coefficient of [f]

    bool operator==(const NSClass&) const = default;
};

long intersect(const NSClass& c1, const NSClass& c2, long deg_f);

inline NSClass class_Y() { return {1, 0}; }
inline NSClass class_fiber() { return {0, 1}; }
// L = p*F (x) [Y] is numerically Y + d f.
NSClass class_L(long deg_f);

// chi(O(D)) = deg D - g + 1 on a genus-g curve.
long euler_char(long genus, long deg);

// ---------------------------------------------------------------------------
// Certificate steps

enum class StepStatus {
    VerifiedSymbolic,
    VerifiedNumeric,
    CitedRule,
    AssumedHypothesis,
    Failed,
};

std::string status_name(StepStatus s);
StepStatus status_from_name(const std::string& name);

struct CertStep {
    std::string id;
    std::string statement;
    StepStatus status = StepStatus::VerifiedSymbolic;
    Json payload = Json::object();
    std::string citation; // required for cited-rule steps
    std::string family;   // cited-rule family tag
    std::vector<CertStep> substeps;

    bool passed() const;
    // Weakest status in the subtree under the order
    // verified > cited-rule > assumed-hypothesis > failed.
    StepStatus weakest() const;

    Json to_json() const;
    static CertStep from_json(const Json& j);
};

struct Certificate {
    std::string verdict;
    StepStatus status = StepStatus::Failed;
    std::vector<CertStep> steps;

    bool passed() const;
    // id of the first failed step in pre-order, empty when none.
    std::string failing_step() const;
    std::vector<std::string> cited_rule_families() const;
    int assumed_hypothesis_count() const;

    Json to_json() const;
    static Certificate from_json(const Json& j);
};

// ---------------------------------------------------------------------------
// Figure 1: the implication diagram between positivity notions.

enum class BundleProperty {
    Ample,
    Positive,
    Semipositive,
    Nef,
    Big,
    TopologicallyTrivial,
    UnitaryFlat,
};

std::string property_name(BundleProperty p);

struct ImplicationRule {
    BundleProperty from;
    BundleProperty to;
    int id; // label (1)..(5)
    std::string citation;
    bool bidirectional = false;
};

const std::vector<ImplicationRule>& figure1_rules();

// Exactly five labeled edges, acyclic except the ample <=> positive pair.
bool figure1_is_valid();

// ---------------------------------------------------------------------------
// Claim-level steps

// Riemann-Roch counting: h0 >= 1 (cited effective-divisor argument),
// chi = 2 - g <= 0, hence h1 >= h0 >= 1. Fails for g < 2.
CertStep lemma_2_6(long genus);

// Case split for nefness plus the self-intersection criterion for bigness;
// numeric payloads carry the computed intersection numbers. Requires d >= 1.
CertStep nef_big_certificate(long deg_f);

// ---------------------------------------------------------------------------
// Full pipeline

struct VerifyOptions {
    int charts = 3;
    int genus = 2;
    int deg_f = 1;
    int order = 3;
    long seed = 1;
    int oracle_samples = 10;
    double tol_truncation = 1e-6;
    double tol_exact = 1e-10;
    double tol_cross = 1e-12;
    bool run_oracle = true;
    // Assignment for the numeric oracle; default constants instance.
    std::optional<oracle::Assignment> assignment;
    // Perturb xi -> xi + 1 in this single L-transition (negative controls).
    std::optional<std::pair<int, int>> corrupt_pair;
};

// Orders the steps, computes the verdict, and mirrors the weakest
// constituent status; any failed step fails the certificate.
Certificate assemble_certificate(std::vector<CertStep> steps);

// Runs the whole chain in order, aborting at the first failed step.
Certificate run_verification(const VerifyOptions& opts);

} // namespace gv
