#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "gv/grauert.hpp"

namespace gv::oracle {

// Free-generator assignment: values are expressions in the base coordinate
// x only (rational constants included). Derived a(j,k), xi(j,k) are always
// computed through the gluing relations, never assigned.
using Assignment = std::map<Gen, Expr>;

// a(i,i+1) = i+1, xi(i,i+1) = (-1)^(i+1)/(i+1); at n = 3 this is the
// constants instance {a12 = 2, a23 = 3, xi12 = 1/2, xi23 = -1/3}.
Assignment default_assignment(const GrauertModel& m);

// Keys are free-generator names in the expression grammar ("a(1,2)", ...);
// values are parsed with the grammar restricted to x and rationals. The
// assignment must cover exactly the free generators.
Assignment parse_assignment(const GrauertModel& m,
                            const std::map<std::string, std::string>& generators);

class NumericModel {
public:
    NumericModel(GrauertModel model, Assignment assignment,
                 std::vector<std::complex<double>> samples, long seed);

    const GrauertModel& model() const { return model_; }
    const std::vector<std::complex<double>>& samples() const { return samples_; }
    long seed() const { return seed_; }

    std::complex<double> gen_value(const Gen& g, std::complex<double> x) const;

    // Derived transition values, composed along the chain / inverted, in
    // parallel to (but independently of) the symbolic rewrite rules.
    std::complex<double> a_value(int j, int k, std::complex<double> x) const;
    std::complex<double> xi_value(int j, int k, std::complex<double> x) const;

    // Environment for Expr::evaluate at one sample point.
    EvalEnv env_at(std::complex<double> x) const;

private:
    GrauertModel model_;
    Assignment assignment_;
    std::vector<std::complex<double>> samples_;
    long seed_;
};

// Draws `samples` points deterministically in the unit disk; points where
// any |a(j,k)(x)| < 1e-6 are redrawn (bounded retries).
NumericModel instantiate(const GrauertModel& m, const Assignment& gens, int samples, long seed);

struct ResidualStats {
    double max_abs = 0.0;
    double mean = 0.0;
    long count = 0;
    double tolerance = 0.0;
    bool pass = false;

    // Serial fold in index order, so results do not depend on scheduling.
    static ResidualStats reduce(const std::vector<double>& residuals, double tol);
    ResidualStats merged(const ResidualStats& o) const;
};

// Jet-vs-closed-form evaluation of the theta transitions at theta in
// {1e-2, 1e-3}, plus the inverse-jet round trip. Truncation-bearing.
ResidualStats check_transitions(const NumericModel& nm, double tol);

// Central divided difference (h = 1e-4) of the closed-form e_k/e_j at
// theta_j = 0 against -xi(j,k), plus a second-difference linearity check.
ResidualStats check_u1_numeric(const NumericModel& nm, double tol);

// Closed-form triple products of the bundle transitions against 1 and the
// conormal residual against 0. Exact identities up to rounding.
ResidualStats check_cocycles_numeric(const NumericModel& nm, double tol);

// Derived transition values against expr evaluation of the symbolic normal
// forms: the two code paths must agree to 1e-12.
ResidualStats check_derived_consistency(const NumericModel& nm, double tol);

// Serial reference implementations, kept as the baseline the parallel
// kernels are tested and benchmarked against.
namespace reference {
ResidualStats check_transitions(const NumericModel& nm, double tol);
ResidualStats check_u1_numeric(const NumericModel& nm, double tol);
ResidualStats check_cocycles_numeric(const NumericModel& nm, double tol);
ResidualStats check_derived_consistency(const NumericModel& nm, double tol);
} // namespace reference

} // namespace gv::oracle
