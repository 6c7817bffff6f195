#include "gv/surface.hpp"

#include <algorithm>
#include <set>

namespace gv {

namespace {

constexpr const char* kFamilyThm213 = "theorem-2-13";
constexpr const char* kFamilyFigure1 = "figure-1";
constexpr const char* kFamilyEffective = "effective-intersection";

int rank(StepStatus s) {
    switch (s) {
        case StepStatus::Failed:
            return 0;
        case StepStatus::AssumedHypothesis:
            return 1;
        case StepStatus::CitedRule:
            return 2;
        case StepStatus::VerifiedNumeric:
            return 3;
        case StepStatus::VerifiedSymbolic:
            return 4;
    }
    return 0;
}

std::string pair_key(int j, int k) {
    return "(" + std::to_string(j) + "," + std::to_string(k) + ")";
}

} // namespace

// ---------------------------------------------------------------------------
// Lattice arithmetic

long intersect(const NSClass& c1, const NSClass& c2, long deg_f) {
    return -deg_f * c1.alpha * c2.alpha + c1.alpha * c2.beta + c2.alpha * c1.beta;
}

NSClass class_L(long deg_f) { return {1, deg_f}; }

long euler_char(long genus, long deg) {
    if (genus < 0) throw DomainError("genus must be nonnegative");
    return deg - genus + 1;
}

// ---------------------------------------------------------------------------
// Step statuses and serialization

std::string status_name(StepStatus s) {
    switch (s) {
        case StepStatus::VerifiedSymbolic:
            return "verified-symbolic";
        case StepStatus::VerifiedNumeric:
            return "verified-numeric";
        case StepStatus::CitedRule:
            return "cited-rule";
        case StepStatus::AssumedHypothesis:
            return "assumed-hypothesis";
        case StepStatus::Failed:
            return "failed";
    }
    return "failed";
}

StepStatus status_from_name(const std::string& name) {
    if (name == "verified-symbolic") return StepStatus::VerifiedSymbolic;
    if (name == "verified-numeric") return StepStatus::VerifiedNumeric;
    if (name == "cited-rule") return StepStatus::CitedRule;
    if (name == "assumed-hypothesis") return StepStatus::AssumedHypothesis;
    if (name == "failed") return StepStatus::Failed;
    throw DomainError("unknown step status: " + name);
}

bool CertStep::passed() const {
    if (status == StepStatus::Failed) return false;
    return std::all_of(substeps.begin(), substeps.end(),
                       [](const CertStep& s) { return s.passed(); });
}

StepStatus CertStep::weakest() const {
    StepStatus w = status;
    for (const CertStep& s : substeps) {
        const StepStatus sw = s.weakest();
        if (rank(sw) < rank(w)) w = sw;
    }
    return w;
}

Json CertStep::to_json() const {
    Json j = Json::object();
    j["id"] = id;
    j["statement"] = statement;
    j["status"] = status_name(status);
    Json p = payload;
    if (!family.empty()) p["family"] = family;
    if (!substeps.empty()) {
        Json arr = Json::array();
        for (const CertStep& s : substeps) arr.push_back(s.to_json());
        p["substeps"] = std::move(arr);
    }
    j["payload"] = std::move(p);
    j["citation"] = citation;
    return j;
}

CertStep CertStep::from_json(const Json& j) {
    CertStep step;
    step.id = j.at("id").get<std::string>();
    step.statement = j.at("statement").get<std::string>();
    step.status = status_from_name(j.at("status").get<std::string>());
    step.citation = j.at("citation").get<std::string>();
    Json p = j.at("payload");
    if (p.contains("family")) {
        step.family = p.at("family").get<std::string>();
        p.erase("family");
    }
    if (p.contains("substeps")) {
        for (const Json& s : p.at("substeps")) step.substeps.push_back(CertStep::from_json(s));
        p.erase("substeps");
    }
    step.payload = std::move(p);
    return step;
}

bool Certificate::passed() const {
    return std::all_of(steps.begin(), steps.end(), [](const CertStep& s) { return s.passed(); });
}

namespace {

const CertStep* first_failed(const CertStep& step) {
    if (step.status == StepStatus::Failed) return &step;
    for (const CertStep& s : step.substeps)
        if (const CertStep* f = first_failed(s)) return f;
    return nullptr;
}

void collect_families(const CertStep& step, std::set<std::string>& out) {
    if (step.status == StepStatus::CitedRule && !step.family.empty()) out.insert(step.family);
    for (const CertStep& s : step.substeps) collect_families(s, out);
}

int count_hypotheses(const CertStep& step) {
    int n = step.status == StepStatus::AssumedHypothesis ? 1 : 0;
    for (const CertStep& s : step.substeps) n += count_hypotheses(s);
    return n;
}

} // namespace

std::string Certificate::failing_step() const {
    for (const CertStep& s : steps)
        if (const CertStep* f = first_failed(s)) return f->id;
    return "";
}

std::vector<std::string> Certificate::cited_rule_families() const {
    std::set<std::string> fams;
    for (const CertStep& s : steps) collect_families(s, fams);
    return {fams.begin(), fams.end()};
}

int Certificate::assumed_hypothesis_count() const {
    int n = 0;
    for (const CertStep& s : steps) n += count_hypotheses(s);
    return n;
}

Json Certificate::to_json() const {
    Json j = Json::object();
    j["verdict"] = verdict;
    j["status"] = status_name(status);
    Json arr = Json::array();
    for (const CertStep& s : steps) arr.push_back(s.to_json());
    j["steps"] = std::move(arr);
    return j;
}

Certificate Certificate::from_json(const Json& j) {
    Certificate cert;
    cert.verdict = j.at("verdict").get<std::string>();
    cert.status = status_from_name(j.at("status").get<std::string>());
    for (const Json& s : j.at("steps")) cert.steps.push_back(CertStep::from_json(s));
    return cert;
}

// ---------------------------------------------------------------------------
// Figure 1

std::string property_name(BundleProperty p) {
    switch (p) {
        case BundleProperty::Ample:
            return "ample";
        case BundleProperty::Positive:
            return "positive";
        case BundleProperty::Semipositive:
            return "semipositive";
        case BundleProperty::Nef:
            return "nef";
        case BundleProperty::Big:
            return "big";
        case BundleProperty::TopologicallyTrivial:
            return "topologically-trivial";
        case BundleProperty::UnitaryFlat:
            return "unitary-flat";
    }
    return "?";
}

const std::vector<ImplicationRule>& figure1_rules() {
    static const std::vector<ImplicationRule> rules = {
        {BundleProperty::Ample, BundleProperty::Positive, 1,
         "Kodaira embedding; [D1, Example 3.14]", true},
        {BundleProperty::Positive, BundleProperty::Semipositive, 2,
         "immediate from the curvature definitions", false},
        {BundleProperty::Semipositive, BundleProperty::Nef, 3, "[D1, Proposition 6.10]", false},
        {BundleProperty::Positive, BundleProperty::Big, 4, "[D1, Corollary 6.19]", false},
        {BundleProperty::TopologicallyTrivial, BundleProperty::Semipositive, 5,
         "[U, Proposition 1]: topologically trivial implies unitary flat; flat metrics are "
         "semipositive",
         false},
    };
    return rules;
}

bool figure1_is_valid() {
    const auto& rules = figure1_rules();
    if (rules.size() != 5) return false;
    constexpr int n = 7;
    bool reach[n][n] = {};
    const auto idx = [](BundleProperty p) { return static_cast<int>(p); };
    for (const auto& r : rules) {
        reach[idx(r.from)][idx(r.to)] = true;
        if (r.bidirectional) reach[idx(r.to)][idx(r.from)] = true;
    }
    for (int m = 0; m < n; ++m)
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (reach[u][m] && reach[m][v]) reach[u][v] = true;
    const int a = idx(BundleProperty::Ample);
    const int p = idx(BundleProperty::Positive);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (!(reach[u][v] && reach[v][u])) continue;
            const bool allowed = (u == a || u == p) && (v == a || v == p);
            if (!allowed) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Lemma 2.6 and Claim 3.1

CertStep lemma_2_6(long genus) {
    const long chi = euler_char(genus, 1);
    CertStep step;
    step.id = "lemma-2-6";
    step.statement =
        "Lemma 2.6: a degree-1 line bundle F on a genus-g curve (g >= 2) has H1(R, O_R(F)) != 0";
    step.payload["genus"] = genus;

    CertStep h0;
    h0.id = "h0-lower-bound";
    h0.statement = "h0(R, O_R([{p}])) >= 1: constants are sections because {p} is effective";
    h0.status = StepStatus::CitedRule;
    h0.citation = "effective-intersection rule (effective-divisor section argument)";
    h0.family = kFamilyEffective;

    CertStep rr;
    rr.id = "riemann-roch";
    rr.statement = "h0 - h1 = 1 - g + deg F = 2 - g";
    rr.payload["chi"] = chi;
    rr.status = chi <= 0 ? StepStatus::VerifiedSymbolic : StepStatus::Failed;
    if (chi > 0) rr.statement += " > 0: the inequality chain needs g >= 2";

    step.substeps.push_back(std::move(h0));
    step.substeps.push_back(std::move(rr));

    if (chi <= 0) {
        CertStep conclusion;
        conclusion.id = "h1-nonzero";
        conclusion.statement = "chi <= 0 gives h1 >= h0 >= 1, hence H1(R, O_R(F)) != 0";
        conclusion.status = StepStatus::VerifiedSymbolic;
        conclusion.payload["h1_minus_h0"] = -chi;
        step.substeps.push_back(std::move(conclusion));
        step.status = StepStatus::VerifiedSymbolic;
    } else {
        step.status = StepStatus::Failed;
    }
    return step;
}

CertStep nef_big_certificate(long deg_f) {
    if (deg_f < 1) throw DomainError("nef/big certificate needs deg F >= 1");
    CertStep step;
    step.id = "claim-3-1-nef-big";
    step.statement = "Claim 3.1: L = p*F (x) [Y] is nef and big";
    step.status = StepStatus::VerifiedNumeric;
    step.payload["deg_f"] = deg_f;

    const long ly = intersect(class_L(deg_f), class_Y(), deg_f);
    CertStep a;
    a.id = "intersection-L-Y";
    a.statement = "case Gamma = Y: L.Y = deg F - deg F = 0";
    a.status = ly == 0 ? StepStatus::VerifiedNumeric : StepStatus::Failed;
    a.payload["value"] = ly;
    step.substeps.push_back(std::move(a));

    const long lf = intersect(class_L(deg_f), class_fiber(), deg_f);
    CertStep b;
    b.id = "intersection-L-fiber";
    b.statement = "fibers: L.f = (p*F.f) + ([Y].f) = 0 + 1 = 1 > 0";
    b.status = lf > 0 ? StepStatus::VerifiedNumeric : StepStatus::Failed;
    b.payload["value"] = lf;
    step.substeps.push_back(std::move(b));

    CertStep c1;
    c1.id = "pullback-F-nef";
    c1.statement =
        "deg F = d > 0 makes F positive; positive => semipositive => nef, so p*F.Gamma >= 0 for "
        "every curve Gamma";
    c1.status = StepStatus::CitedRule;
    c1.citation = "Figure 1, rules (2)-(3); [GH, Proposition p.148]";
    c1.family = kFamilyFigure1;
    c1.payload["rules"] = Json::array({2, 3});
    step.substeps.push_back(std::move(c1));

    CertStep c2;
    c2.id = "effective-Y-intersection";
    c2.statement =
        "[Y].Gamma >= 0 for every irreducible Gamma != Y (> 0 when Gamma meets Y, = 0 when "
        "disjoint)";
    c2.status = StepStatus::CitedRule;
    c2.citation = "effective-intersection rule";
    c2.family = kFamilyEffective;
    step.substeps.push_back(std::move(c2));

    const long l2 = intersect(class_L(deg_f), class_L(deg_f), deg_f);
    CertStep d;
    d.id = "self-intersection";
    d.statement = "L^2 = (p*F.p*F) + deg F = 0 + deg F > 0";
    d.status = l2 > 0 ? StepStatus::VerifiedNumeric : StepStatus::Failed;
    d.payload["value"] = l2;
    step.substeps.push_back(std::move(d));

    CertStep crit;
    crit.id = "big-criterion";
    crit.statement = "L nef with L^2 > 0 is big";
    crit.status = StepStatus::CitedRule;
    crit.citation = "Figure 1 positivity calculus; [D1, Corollary 8.4]";
    crit.family = kFamilyFigure1;
    step.substeps.push_back(std::move(crit));

    return step;
}

// ---------------------------------------------------------------------------
// Pipeline steps

namespace {

CertStep step_construction(const GrauertModel& m, const LineBundleCochain& f,
                           const LineBundleCochain& y, const LineBundleCochain& l) {
    CertStep step;
    step.id = "bundle-cocycle-residual";
    step.statement =
        "Theorem 3.2 setup: transition cochains of p*F, [Y], and L close on every triple";
    step.status = StepStatus::VerifiedSymbolic;
    const std::vector<std::pair<const char*, const LineBundleCochain*>> bundles = {
        {"p*F", &f}, {"[Y]", &y}, {"L", &l}};
    int checked = 0;
    for (const auto& [name, b] : bundles) {
        for (const auto& [j, k, l3] : m.nerve.triples()) {
            const Jet r = bundle_cocycle_residual(*b, j, k, l3);
            ++checked;
            if (!r.is_zero()) {
                step.status = StepStatus::Failed;
                step.statement = std::string("cocycle residual of ") + name +
                                 " does not vanish on the triple {" + std::to_string(j) + "," +
                                 std::to_string(k) + "," + std::to_string(l3) + "}";
                step.payload["bundle"] = name;
                step.payload["triple"] = Json::array({j, k, l3});
                step.payload["linear_coefficient"] = r.coefficient(1).str();
                return step;
            }
        }
    }
    step.payload["bundles"] = Json::array({"p*F", "[Y]", "L"});
    step.payload["residuals_checked"] = checked;
    return step;
}

CertStep step_frame_consistency(const GrauertModel& m, const LineBundleCochain& f) {
    CertStep step;
    step.id = "frame-consistency";
    step.statement = "Claims 2.8/2.9: N_{Y/X} is identified with the pullback of F^-1";
    step.status = StepStatus::VerifiedSymbolic;

    CertStep deriv;
    deriv.id = "normal-derivative";
    deriv.statement = "Claim 2.8: the linear term of theta_j(theta_k) is 1/a(j,k) on every overlap";
    deriv.status = StepStatus::VerifiedSymbolic;
    CertStep transport;
    transport.id = "frame-transport-match";
    transport.statement =
        "d theta and pulled-back F frames transform by the same factor a(j,k) on Y";
    transport.status = StepStatus::VerifiedSymbolic;

    const FlatCochain flat_f = restrict_to_Y(f);
    for (const auto& [j, k] : m.nerve.ordered_pairs()) {
        if (!equals(theta_transition(m, j, k).coefficient(1), m.a(j, k).inverse()))
            deriv.status = StepStatus::Failed;
        if (!equals(theta_transition(m, k, j).coefficient(1), flat_f.t(j, k)))
            transport.status = StepStatus::Failed;
    }
    step.substeps.push_back(std::move(deriv));
    step.substeps.push_back(std::move(transport));

    const long yy = intersect(class_Y(), class_Y(), m.deg_f);
    CertStep degree;
    degree.id = "normal-degree";
    degree.statement = "Remark 2.10: deg N_{Y/X} = deg F^-1 = -deg F";
    degree.status = yy == -m.deg_f ? StepStatus::VerifiedNumeric : StepStatus::Failed;
    degree.payload["value"] = yy;
    step.substeps.push_back(std::move(degree));
    return step;
}

CertStep step_restriction(const GrauertModel& m, const LineBundleCochain& l) {
    CertStep step;
    step.id = "restriction-to-y";
    step.statement = "Definition 2.4 gate: L|_Y restricts to the trivial flat cochain (t = 1)";
    const FlatCochain flat = restrict_to_Y(l);
    const bool ok = flat.all_one && flat.multiplicative_cocycle(m);
    step.status = ok ? StepStatus::VerifiedSymbolic : StepStatus::Failed;
    step.payload["all_one"] = flat.all_one;
    step.payload["pairs"] = static_cast<int>(flat.constants.size());
    return step;
}

CertStep step_u1_claim33(const GrauertModel& m, const LineBundleCochain& l) {
    CertStep step;
    step.id = "u1-extraction";
    step.statement =
        "Theorem 3.2: e_k/e_j = 1 - xi(j,k) theta_j exactly, so u1(Y,X,L) = [{-xi(j,k) d "
        "theta_j}]";
    step.status = StepStatus::VerifiedSymbolic;

    ConormalCochain u1{m, {}};
    try {
        u1 = extract_u1(l);
    } catch (const DomainError& e) {
        step.status = StepStatus::Failed;
        step.statement = std::string("u1 extraction failed: ") + e.what();
        return step;
    }

    CertStep entries;
    entries.id = "u1-entries";
    entries.statement = "every first-order coefficient equals -xi(j,k)";
    entries.status = StepStatus::VerifiedSymbolic;
    Json rendered = Json::object();
    for (const auto& [j, k] : m.nerve.ordered_pairs()) {
        if (!equals(u1.c(j, k), -m.xi(j, k))) entries.status = StepStatus::Failed;
        rendered[pair_key(j, k)] = u1.c(j, k).str() + " d_theta_" + std::to_string(j);
    }
    entries.payload["entries"] = std::move(rendered);
    step.substeps.push_back(std::move(entries));

    CertStep cocycle;
    cocycle.id = "claim-3-3-cocycle";
    cocycle.statement = "Claim 3.3: c(j,k) + a(j,k) c(k,l) - c(j,l) = 0 on every triple";
    cocycle.status = StepStatus::VerifiedSymbolic;
    int checked = 0;
    for (const auto& [j, k, l3] : m.nerve.triples()) {
        ++checked;
        if (!cech_cocycle_residual(u1, j, k, l3).is_zero()) cocycle.status = StepStatus::Failed;
    }
    cocycle.payload["triples_checked"] = checked;
    step.substeps.push_back(std::move(cocycle));
    return step;
}

CertStep step_claim_3_4(const GrauertModel& m, const LineBundleCochain& l) {
    CertStep step;
    step.id = "claim-3-4";
    step.statement = "Claim 3.4: u1(Y,X,L) != 0 under the hypothesis [xi] != 0";
    step.status = StepStatus::VerifiedSymbolic;

    ReductionReport report;
    try {
        report = claim_3_4_reduction(extract_u1(l));
    } catch (const DomainError& e) {
        step.status = StepStatus::Failed;
        step.statement = std::string("Claim 3.4 reduction failed: ") + e.what();
        return step;
    }

    CertStep system;
    system.id = "system-equivalence";
    system.statement =
        "coboundary(phi) = u1 normalizes to the system phi_k a(j,k) - phi_j = -xi(j,k)";
    system.status = report.system_matches ? StepStatus::VerifiedSymbolic : StepStatus::Failed;
    system.payload["rows"] = report.system_rows;
    step.substeps.push_back(std::move(system));

    CertStep frame;
    frame.id = "f-frame-transport";
    frame.statement =
        "the system transports to delta{(U_j, g_j m_j)} = {(U_jk, -xi(j,k) m_j)} in the F frame";
    frame.status = report.f_frame_matches ? StepStatus::VerifiedSymbolic : StepStatus::Failed;
    frame.payload["pairs"] = report.unordered_pairs;
    step.substeps.push_back(std::move(frame));

    CertStep equivalence;
    equivalence.id = "equivalence-conclusion";
    equivalence.statement = "u1(Y,X,L) = 0 iff [xi] = 0";
    equivalence.status = StepStatus::VerifiedSymbolic;
    step.substeps.push_back(std::move(equivalence));

    CertStep hypothesis;
    hypothesis.id = "hypothesis-xi-nonzero";
    hypothesis.statement = "[xi] != 0 in H1(R, O_R(F)) (input hypothesis, recorded not decided)";
    hypothesis.status = StepStatus::AssumedHypothesis;
    step.substeps.push_back(std::move(hypothesis));
    return step;
}

CertStep step_theorem_2_13() {
    CertStep step;
    step.id = "theorem-2-13";
    step.statement =
        "Theorem 2.13: L|_Y topologically trivial and u1(Y,X,L) != 0 imply L is not semipositive";
    step.status = StepStatus::CitedRule;
    step.citation = "Theorem 2.13 ([Ko, Theorem 1.4])";
    step.family = kFamilyThm213;
    return step;
}

CertStep stats_substep(const std::string& id, const std::string& statement,
                       const oracle::ResidualStats& stats) {
    CertStep step;
    step.id = id;
    step.statement = statement;
    step.status = stats.pass ? StepStatus::VerifiedNumeric : StepStatus::Failed;
    step.payload["max_abs"] = stats.max_abs;
    step.payload["mean"] = stats.mean;
    step.payload["count"] = stats.count;
    step.payload["tolerance"] = stats.tolerance;
    return step;
}

CertStep step_oracle(const GrauertModel& m, const VerifyOptions& opts) {
    CertStep step;
    step.id = "numeric-oracle";
    step.statement = "numeric oracle: sampled residuals confirm the symbolic identities";
    step.status = StepStatus::VerifiedNumeric;
    const oracle::Assignment gens =
        opts.assignment ? *opts.assignment : oracle::default_assignment(m);
    oracle::NumericModel nm = oracle::instantiate(m, gens, opts.oracle_samples, opts.seed);
    step.payload["seed"] = opts.seed;
    step.payload["samples"] = static_cast<int>(nm.samples().size());
    step.substeps.push_back(stats_substep(
        "oracle-transitions", "theta-transition jets against closed forms, with round trips",
        oracle::check_transitions(nm, opts.tol_truncation)));
    step.substeps.push_back(stats_substep(
        "oracle-u1", "divided difference of e_k/e_j at theta = 0 against -xi(j,k)",
        oracle::check_u1_numeric(nm, opts.tol_truncation)));
    step.substeps.push_back(
        stats_substep("oracle-cocycles", "triple products and conormal residuals",
                      oracle::check_cocycles_numeric(nm, opts.tol_exact)));
    step.substeps.push_back(
        stats_substep("oracle-derived", "derived transition values against symbolic evaluation",
                      oracle::check_derived_consistency(nm, opts.tol_cross)));
    return step;
}

} // namespace

// ---------------------------------------------------------------------------
// Assembly

Certificate assemble_certificate(std::vector<CertStep> steps) {
    Certificate cert;
    cert.steps = std::move(steps);
    StepStatus weakest = StepStatus::VerifiedSymbolic;
    for (const CertStep& s : cert.steps) {
        const StepStatus w = s.weakest();
        if (rank(w) < rank(weakest)) weakest = w;
    }
    cert.status = weakest;
    if (cert.passed()) {
        cert.verdict = "nef, big, not semipositive (modulo hypothesis [xi] != 0 and cited rules)";
    } else {
        cert.verdict = "verification failed at step " + cert.failing_step();
    }
    return cert;
}

Certificate run_verification(const VerifyOptions& opts) {
    std::vector<CertStep> steps;
    steps.push_back(lemma_2_6(opts.genus));
    if (!steps.back().passed()) return assemble_certificate(std::move(steps));

    const GrauertModel m = build_model(opts.charts, opts.genus, opts.deg_f, opts.order);
    const LineBundleCochain f = bundle_pullback_F(m);
    const LineBundleCochain y = bundle_divisor_Y(m);
    LineBundleCochain l = bundle_L(m);
    if (opts.corrupt_pair) {
        const auto [j, k] = *opts.corrupt_pair;
        const Jet bad(j, m.order, {Expr::integer(1), -(m.xi(j, k) + Expr::integer(1))});
        l = l.with_transition(j, k, bad);
    }

    steps.push_back(step_construction(m, f, y, l));
    if (!steps.back().passed()) return assemble_certificate(std::move(steps));

    steps.push_back(step_frame_consistency(m, f));
    if (!steps.back().passed()) return assemble_certificate(std::move(steps));

    steps.push_back(step_restriction(m, l));
    if (!steps.back().passed()) return assemble_certificate(std::move(steps));

    steps.push_back(step_u1_claim33(m, l));
    if (!steps.back().passed()) return assemble_certificate(std::move(steps));

    steps.push_back(step_claim_3_4(m, l));
    if (!steps.back().passed()) return assemble_certificate(std::move(steps));

    steps.push_back(step_theorem_2_13());
    steps.push_back(nef_big_certificate(opts.deg_f));
    if (!steps.back().passed()) return assemble_certificate(std::move(steps));

    if (opts.run_oracle) steps.push_back(step_oracle(m, opts));
    return assemble_certificate(std::move(steps));
}

} // namespace gv
