#pragma once

#include <compare>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gv/error.hpp"
#include "gv/rational.hpp"

namespace gv {

// Free generators of the symbol algebra over a nerve with n charts:
//
//   A_i  = a(i,i+1)    multiplicative transition, 1 <= i <= n-1, invertible
//   Xi_i = xi(i,i+1)   affine part,               1 <= i <= n-1
//   Phi_j              formal unknown 0-cochain coefficient, 1 <= j <= n
//   X                  base-coordinate placeholder
//
// Transitions a(j,k), xi(j,k) for arbitrary ordered pairs are rewritten into
// this chain basis on construction:
//
//   a(j,k)  = prod_{i=j}^{k-1} A_i                        (j < k)
//   xi(j,k) = sum_{i=j}^{k-1} (prod_{m=j}^{i-1} A_m) Xi_i (j < k)
//   a(k,j)  = a(j,k)^-1,   xi(k,j) = -a(j,k)^-1 xi(j,k)
//   a(j,j)  = 1,           xi(j,j) = 0
enum class GenKind : unsigned char { A, Xi, Phi, X };

struct Gen {
    GenKind kind;
    int index; // chain index i for A/Xi, chart j for Phi, 0 for X

    friend auto operator<=>(const Gen&, const Gen&) = default;
};

std::string gen_name(const Gen& g);

// Power product of generators. Factors are sorted by generator and carry
// strictly positive exponents; the empty product is 1.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::pair<Gen, int>> factors);

    bool is_unit() const { return factors_.empty(); }
    int exponent(const Gen& g) const;
    const std::vector<std::pair<Gen, int>>& factors() const { return factors_; }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;

    bool operator==(const Monomial&) const = default;
    // Lexicographic monomial order (earlier generators more significant);
    // compatible with multiplication, so leading terms are well behaved.
    bool operator<(const Monomial& o) const;

private:
    std::vector<std::pair<Gen, int>> factors_;
};

// num / den where den.divides(num).
Monomial monomial_quotient(const Monomial& num, const Monomial& den);

// Multivariate polynomial with exact rational coefficients, stored sparsely.
class Poly {
public:
    Poly() = default; // zero
    explicit Poly(Rat constant);
    static Poly term(Monomial m, Rat c);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rat>& terms() const { return terms_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly negated() const;
    Poly multiplied_by_term(const Monomial& m, const Rat& c) const;

    // Largest term under the monomial order; requires nonzero.
    const std::pair<const Monomial, Rat>& leading() const;

    // Exact division; nullopt if den does not divide num in the polynomial ring.
    static std::optional<Poly> divide_exact(const Poly& num, const Poly& den);

    bool operator==(const Poly&) const = default;

private:
    std::map<Monomial, Rat> terms_;
    void add_term(const Monomial& m, const Rat& c);
};

// Generator assignment for numeric evaluation.
struct EvalEnv {
    std::map<Gen, std::complex<double>> values;
};

// Exact rational expression in the transition symbols, canonicalized under
// the affine-cocycle rewrite relations. Canonical form is a fraction
// num / den where den is a power product of A-generators only and no
// A-generator divides both num and den; two expressions are equal iff their
// canonical forms are identical.
class Expr {
public:
    Expr(); // zero

    static Expr rational(Rat r);
    static Expr integer(long v);
    static Expr generator(Gen g, int nerve);
    static Expr transition_a(int j, int k, int nerve);
    static Expr transition_xi(int j, int k, int nerve);
    static Expr unknown_phi(int j, int nerve);
    static Expr coordinate();

    int nerve() const { return nerve_; }
    bool is_canonical() const { return canonical_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    // Nonzero rational times a Laurent monomial in A-generators; exactly the
    // invertible elements of the coefficient ring.
    bool is_unit() const;
    bool is_constant() const;
    // For constant expressions, the rational value.
    Rat constant_value() const;

    const Poly& numerator() const { return num_; }
    const Monomial& denominator() const { return den_; }

    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr operator-() const;
    Expr inverse() const;
    Expr pow(long k) const;
    friend Expr operator/(const Expr& a, const Expr& b);

    std::complex<double> evaluate(const EvalEnv& env, std::complex<double> x_value) const;

    std::string str() const;

    friend bool equals(const Expr& a, const Expr& b);
    bool operator==(const Expr& o) const { return equals(*this, o); }

private:
    Poly num_;
    Monomial den_; // A-generators only
    int nerve_ = 0; // 0 = constant over any nerve
    bool canonical_ = false;

    Expr(Poly num, Monomial den, int nerve);
    void reduce();
    friend Expr normalize(const Expr& e);
};

// Re-canonicalizes; idempotent, total on well-formed input.
Expr normalize(const Expr& e);

bool equals(const Expr& a, const Expr& b);

enum class ExprOp { add, sub, mul, div, neg, inv, int_pow };

// Exact field arithmetic followed by normalization. add/mul fold any number
// of operands; sub/div take two; neg/inv one; int_pow one plus `power`.
Expr combine(ExprOp op, const std::vector<Expr>& operands, long power = 0);

// Recursive-descent parser for the expression grammar:
//   expr     := term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := atom ['^' integer] | '-' factor | '(' expr ')'
//   atom     := 'a(' int ',' int ')' | 'xi(' int ',' int ')'
//             | 'phi(' int ')' | 'x' | rational
//   rational := int ['/' int]
// Whitespace insignificant. All indices must lie in 1..nerve_size.
Expr parse_expr(std::string_view text, int nerve_size);

} // namespace gv
