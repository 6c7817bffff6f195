#include "gv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>

namespace gv::oracle {

namespace {

using C = std::complex<double>;

constexpr double kPoleGuard = 1e-6;
constexpr double kDiffStep = 1e-4;
const double kThetas[2] = {1e-2, 1e-3};

double unit_interval(std::mt19937_64& eng) {
    // Top 53 bits; avoids distribution objects so draws are reproducible
    // across standard libraries.
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

} // namespace

Assignment default_assignment(const GrauertModel& m) {
    Assignment out;
    for (int i = 1; i < m.nerve.n; ++i) {
        out[Gen{GenKind::A, i}] = Expr::integer(i + 1);
        const long sign = (i % 2 == 1) ? 1 : -1;
        out[Gen{GenKind::Xi, i}] = Expr::rational(make_rat(sign, i + 1));
    }
    return out;
}

Assignment parse_assignment(const GrauertModel& m,
                            const std::map<std::string, std::string>& generators) {
    const int n = m.nerve.n;
    Assignment out;
    for (const auto& [name, text] : generators) {
        const Expr key = parse_expr(name, n);
        // The key must be exactly one free chain generator.
        Gen g{};
        bool ok = key.denominator().is_unit() && key.numerator().terms().size() == 1;
        if (ok) {
            const auto& [mono, coeff] = *key.numerator().terms().begin();
            ok = coeff == 1 && mono.factors().size() == 1 && mono.factors()[0].second == 1;
            if (ok) g = mono.factors()[0].first;
        }
        if (!ok || (g.kind != GenKind::A && g.kind != GenKind::Xi))
            throw DomainError("oracle assignment key is not a free generator: " + name);
        const Expr value = parse_expr(text, n);
        for (const auto& [mono, coeff] : value.numerator().terms())
            for (const auto& [vg, e] : mono.factors())
                if (vg.kind != GenKind::X)
                    throw DomainError("oracle assignment for " + name +
                                      " must be an expression in x and rationals only");
        if (out.count(g)) throw DomainError("duplicate oracle assignment for " + name);
        out.emplace(g, value);
    }
    for (int i = 1; i < n; ++i) {
        if (!out.count(Gen{GenKind::A, i}))
            throw DomainError("oracle assignment misses a(" + std::to_string(i) + "," +
                              std::to_string(i + 1) + ")");
        if (!out.count(Gen{GenKind::Xi, i}))
            throw DomainError("oracle assignment misses xi(" + std::to_string(i) + "," +
                              std::to_string(i + 1) + ")");
    }
    if (static_cast<int>(out.size()) != 2 * (n - 1))
        throw DomainError("oracle assignment must cover exactly the free generators");
    return out;
}

NumericModel::NumericModel(GrauertModel model, Assignment assignment,
                           std::vector<std::complex<double>> samples, long seed)
    : model_(std::move(model)), assignment_(std::move(assignment)), samples_(std::move(samples)),
      seed_(seed) {}

C NumericModel::gen_value(const Gen& g, C x) const {
    auto it = assignment_.find(g);
    if (it == assignment_.end())
        throw DomainError("numeric model has no assignment for " + gen_name(g));
    return it->second.evaluate(EvalEnv{}, x);
}

C NumericModel::a_value(int j, int k, C x) const {
    if (j == k) return {1.0, 0.0};
    if (j < k) {
        C prod{1.0, 0.0};
        for (int i = j; i < k; ++i) prod *= gen_value(Gen{GenKind::A, i}, x);
        return prod;
    }
    return C{1.0, 0.0} / a_value(k, j, x);
}

C NumericModel::xi_value(int j, int k, C x) const {
    if (j == k) return {0.0, 0.0};
    if (j < k) {
        C sum{0.0, 0.0};
        C prefix{1.0, 0.0};
        for (int i = j; i < k; ++i) {
            sum += prefix * gen_value(Gen{GenKind::Xi, i}, x);
            prefix *= gen_value(Gen{GenKind::A, i}, x);
        }
        return sum;
    }
    return -xi_value(k, j, x) / a_value(k, j, x);
}

EvalEnv NumericModel::env_at(C x) const {
    EvalEnv env;
    for (int i = 1; i < model_.nerve.n; ++i) {
        env.values[Gen{GenKind::A, i}] = gen_value(Gen{GenKind::A, i}, x);
        env.values[Gen{GenKind::Xi, i}] = gen_value(Gen{GenKind::Xi, i}, x);
    }
    return env;
}

NumericModel instantiate(const GrauertModel& m, const Assignment& gens, int samples, long seed) {
    if (samples < 1) throw DomainError("oracle needs at least one sample");
    for (int i = 1; i < m.nerve.n; ++i)
        if (!gens.count(Gen{GenKind::A, i}) || !gens.count(Gen{GenKind::Xi, i}))
            throw DomainError("incomplete oracle assignment");
    if (static_cast<int>(gens.size()) != 2 * (m.nerve.n - 1))
        throw DomainError("oracle assignment must cover exactly the free generators");

    NumericModel probe(m, gens, {}, seed);
    std::mt19937_64 eng(static_cast<unsigned long long>(seed));
    std::vector<C> xs;
    xs.reserve(static_cast<std::size_t>(samples));
    const auto pairs = m.nerve.ordered_pairs();
    for (int s = 0; s < samples; ++s) {
        bool placed = false;
        for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
            const double r = std::sqrt(unit_interval(eng));
            const double phi = 2.0 * M_PI * unit_interval(eng);
            const C x{r * std::cos(phi), r * std::sin(phi)};
            placed = true;
            for (const auto& [j, k] : pairs) {
                if (std::abs(probe.a_value(j, k, x)) < kPoleGuard) {
                    placed = false;
                    break;
                }
            }
            if (placed) xs.push_back(x);
        }
        if (!placed) throw DomainError("oracle resampling exhausted near a pole locus");
    }
    return NumericModel(m, gens, std::move(xs), seed);
}

// ---------------------------------------------------------------------------
// Residual statistics

ResidualStats ResidualStats::reduce(const std::vector<double>& residuals, double tol) {
    ResidualStats s;
    s.tolerance = tol;
    s.count = static_cast<long>(residuals.size());
    double sum = 0.0;
    for (const double r : residuals) {
        s.max_abs = std::max(s.max_abs, r);
        sum += r;
    }
    s.mean = s.count > 0 ? sum / static_cast<double>(s.count) : 0.0;
    s.pass = s.max_abs < tol;
    return s;
}

ResidualStats ResidualStats::merged(const ResidualStats& o) const {
    ResidualStats s;
    s.tolerance = std::min(tolerance, o.tolerance);
    s.count = count + o.count;
    s.max_abs = std::max(max_abs, o.max_abs);
    const double total = mean * static_cast<double>(count) + o.mean * static_cast<double>(o.count);
    s.mean = s.count > 0 ? total / static_cast<double>(s.count) : 0.0;
    s.pass = s.max_abs < s.tolerance;
    return s;
}

// ---------------------------------------------------------------------------
// Residual kernels. Each check precomputes its symbolic data, fills a
// residual array indexed by a flat job id, and folds serially, so the
// parallel and reference paths produce identical statistics.

namespace {

struct PairData {
    int j, k;
    Jet fwd; // theta_j in theta_k
    Jet bwd; // theta_k in theta_j
};

std::vector<PairData> transition_jets(const GrauertModel& m) {
    std::vector<PairData> out;
    for (const auto& [j, k] : m.nerve.ordered_pairs())
        out.push_back({j, k, theta_transition(m, j, k), theta_transition(m, k, j)});
    return out;
}

C eval_jet(const Jet& jet, const EvalEnv& env, C x, C theta) {
    C r{0.0, 0.0};
    for (int mth = jet.order(); mth >= 0; --mth) r = r * theta + jet.coefficient(mth).evaluate(env, x);
    return r;
}

// 4 residuals per (pair, sample): direct + round trip at two theta values.
void transition_job(const NumericModel& nm, const PairData& pd, const EvalEnv& env, C x,
                    double* out) {
    const C a = nm.a_value(pd.j, pd.k, x);
    const C xi = nm.xi_value(pd.j, pd.k, x);
    for (int t = 0; t < 2; ++t) {
        const C theta{kThetas[t], 0.0};
        const C via_jet = eval_jet(pd.fwd, env, x, theta);
        const C closed = theta / (a + xi * theta);
        out[2 * t] = std::abs(via_jet - closed);
        const C back = eval_jet(pd.bwd, env, x, via_jet);
        out[2 * t + 1] = std::abs(back - theta);
    }
}

// 2 residuals per (pair, sample): derivative match and second difference.
void u1_job(const NumericModel& nm, int j, int k, C x, double* out) {
    const C a = nm.a_value(j, k, x);
    const C xi = nm.xi_value(j, k, x);
    const auto f = [&](double h) {
        const C tj{h, 0.0};
        const C tk = a * tj / (C{1.0, 0.0} - xi * tj);
        return a / (a + xi * tk);
    };
    const C fp = f(kDiffStep);
    const C fm = f(-kDiffStep);
    const C f0 = f(0.0);
    const C d1 = (fp - fm) / (2.0 * kDiffStep);
    const C d2 = (fp - 2.0 * f0 + fm) / (kDiffStep * kDiffStep);
    out[0] = std::abs(d1 + xi);
    out[1] = std::abs(d2);
}

// 6 residuals per (triple, sample): L and [Y] products at two theta values,
// the constant p*F product, and the conormal cocycle residual.
void cocycle_job(const NumericModel& nm, int j, int k, int l, C x, double* out) {
    const C ajk = nm.a_value(j, k, x), akl = nm.a_value(k, l, x), alj = nm.a_value(l, j, x);
    const C ajl = nm.a_value(j, l, x);
    const C xjk = nm.xi_value(j, k, x), xkl = nm.xi_value(k, l, x), xlj = nm.xi_value(l, j, x);
    const C xjl = nm.xi_value(j, l, x);
    for (int t = 0; t < 2; ++t) {
        const C tj{kThetas[t], 0.0};
        const C tk = ajk * tj / (C{1.0, 0.0} - xjk * tj);
        const C tl = ajl * tj / (C{1.0, 0.0} - xjl * tj);
        const C l_product =
            (C{1.0, 0.0} - xjk * tj) * (C{1.0, 0.0} - xkl * tk) * (C{1.0, 0.0} - xlj * tl);
        out[2 * t] = std::abs(l_product - C{1.0, 0.0});
        const C y_product = l_product / (ajk * akl * alj);
        out[2 * t + 1] = std::abs(y_product - C{1.0, 0.0});
    }
    out[4] = std::abs(ajk * akl * alj - C{1.0, 0.0});
    out[5] = std::abs(-xjk + ajk * (-xkl) - (-xjl));
}

// 2 residuals per (pair, sample): derived numeric path against the symbolic
// normal form under evaluation.
void consistency_job(const NumericModel& nm, int j, int k, const Expr& sym_a, const Expr& sym_xi,
                     const EvalEnv& env, C x, double* out) {
    out[0] = std::abs(nm.a_value(j, k, x) - sym_a.evaluate(env, x));
    out[1] = std::abs(nm.xi_value(j, k, x) - sym_xi.evaluate(env, x));
}

std::vector<EvalEnv> sample_envs(const NumericModel& nm) {
    std::vector<EvalEnv> envs;
    envs.reserve(nm.samples().size());
    for (const C x : nm.samples()) envs.push_back(nm.env_at(x));
    return envs;
}

} // namespace

ResidualStats check_transitions(const NumericModel& nm, double tol) {
    const auto pairs = transition_jets(nm.model());
    const auto envs = sample_envs(nm);
    const std::ptrdiff_t jobs = static_cast<std::ptrdiff_t>(pairs.size() * envs.size());
    std::vector<double> residuals(static_cast<std::size_t>(jobs) * 4);
#ifdef GV_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < jobs; ++i) {
        const std::size_t p = static_cast<std::size_t>(i) / envs.size();
        const std::size_t s = static_cast<std::size_t>(i) % envs.size();
        transition_job(nm, pairs[p], envs[s], nm.samples()[s],
                       residuals.data() + static_cast<std::size_t>(i) * 4);
    }
    return ResidualStats::reduce(residuals, tol);
}

ResidualStats check_u1_numeric(const NumericModel& nm, double tol) {
    const auto pairs = nm.model().nerve.ordered_pairs();
    const std::ptrdiff_t jobs = static_cast<std::ptrdiff_t>(pairs.size() * nm.samples().size());
    std::vector<double> residuals(static_cast<std::size_t>(jobs) * 2);
#ifdef GV_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < jobs; ++i) {
        const std::size_t p = static_cast<std::size_t>(i) / nm.samples().size();
        const std::size_t s = static_cast<std::size_t>(i) % nm.samples().size();
        u1_job(nm, pairs[p].first, pairs[p].second, nm.samples()[s],
               residuals.data() + static_cast<std::size_t>(i) * 2);
    }
    return ResidualStats::reduce(residuals, tol);
}

ResidualStats check_cocycles_numeric(const NumericModel& nm, double tol) {
    const auto triples = nm.model().nerve.triples();
    const std::ptrdiff_t jobs = static_cast<std::ptrdiff_t>(triples.size() * nm.samples().size());
    std::vector<double> residuals(static_cast<std::size_t>(jobs) * 6);
#ifdef GV_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < jobs; ++i) {
        const std::size_t t = static_cast<std::size_t>(i) / nm.samples().size();
        const std::size_t s = static_cast<std::size_t>(i) % nm.samples().size();
        cocycle_job(nm, triples[t][0], triples[t][1], triples[t][2], nm.samples()[s],
                    residuals.data() + static_cast<std::size_t>(i) * 6);
    }
    return ResidualStats::reduce(residuals, tol);
}

ResidualStats check_derived_consistency(const NumericModel& nm, double tol) {
    const auto pairs = nm.model().nerve.ordered_pairs();
    std::vector<std::pair<Expr, Expr>> symbolic;
    symbolic.reserve(pairs.size());
    for (const auto& [j, k] : pairs)
        symbolic.emplace_back(nm.model().a(j, k), nm.model().xi(j, k));
    const auto envs = sample_envs(nm);
    const std::ptrdiff_t jobs = static_cast<std::ptrdiff_t>(pairs.size() * envs.size());
    std::vector<double> residuals(static_cast<std::size_t>(jobs) * 2);
#ifdef GV_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < jobs; ++i) {
        const std::size_t p = static_cast<std::size_t>(i) / envs.size();
        const std::size_t s = static_cast<std::size_t>(i) % envs.size();
        consistency_job(nm, pairs[p].first, pairs[p].second, symbolic[p].first,
                        symbolic[p].second, envs[s], nm.samples()[s],
                        residuals.data() + static_cast<std::size_t>(i) * 2);
    }
    return ResidualStats::reduce(residuals, tol);
}

namespace reference {

ResidualStats check_transitions(const NumericModel& nm, double tol) {
    const auto pairs = transition_jets(nm.model());
    std::vector<double> residuals;
    for (const auto& pd : pairs) {
        for (const C x : nm.samples()) {
            double out[4];
            transition_job(nm, pd, nm.env_at(x), x, out);
            residuals.insert(residuals.end(), out, out + 4);
        }
    }
    return ResidualStats::reduce(residuals, tol);
}

ResidualStats check_u1_numeric(const NumericModel& nm, double tol) {
    std::vector<double> residuals;
    for (const auto& [j, k] : nm.model().nerve.ordered_pairs()) {
        for (const C x : nm.samples()) {
            double out[2];
            u1_job(nm, j, k, x, out);
            residuals.insert(residuals.end(), out, out + 2);
        }
    }
    return ResidualStats::reduce(residuals, tol);
}

ResidualStats check_cocycles_numeric(const NumericModel& nm, double tol) {
    std::vector<double> residuals;
    for (const auto& [j, k, l] : nm.model().nerve.triples()) {
        for (const C x : nm.samples()) {
            double out[6];
            cocycle_job(nm, j, k, l, x, out);
            residuals.insert(residuals.end(), out, out + 6);
        }
    }
    return ResidualStats::reduce(residuals, tol);
}

ResidualStats check_derived_consistency(const NumericModel& nm, double tol) {
    std::vector<double> residuals;
    for (const auto& [j, k] : nm.model().nerve.ordered_pairs()) {
        const Expr sym_a = nm.model().a(j, k);
        const Expr sym_xi = nm.model().xi(j, k);
        for (const C x : nm.samples()) {
            double out[2];
            consistency_job(nm, j, k, sym_a, sym_xi, nm.env_at(x), x, out);
            residuals.insert(residuals.end(), out, out + 2);
        }
    }
    return ResidualStats::reduce(residuals, tol);
}

} // namespace reference

} // namespace gv::oracle
