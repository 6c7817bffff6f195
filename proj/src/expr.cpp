#include "gv/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gv {

namespace {

// Nerve compatibility: 0 is the universal (constant) nerve.
int unify_nerve(int a, int b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a != b) throw DomainError("nerve size mismatch between expressions");
    return a;
}

void check_chart(int j, int nerve, const char* what) {
    if (j < 1 || j > nerve)
        throw DomainError(std::string(what) + " index " + std::to_string(j) +
                          " out of range for nerve of size " + std::to_string(nerve));
}

std::complex<double> cpow(std::complex<double> base, int e) {
    std::complex<double> r{1.0, 0.0};
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

} // namespace

std::string gen_name(const Gen& g) {
    switch (g.kind) {
        case GenKind::A:
            return "a(" + std::to_string(g.index) + "," + std::to_string(g.index + 1) + ")";
        case GenKind::Xi:
            return "xi(" + std::to_string(g.index) + "," + std::to_string(g.index + 1) + ")";
        case GenKind::Phi:
            return "phi(" + std::to_string(g.index) + ")";
        case GenKind::X:
            return "x";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<std::pair<Gen, int>> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Gen, int>> merged;
    for (const auto& [g, e] : factors_) {
        if (e == 0) continue;
        if (e < 0) throw DomainError("monomial exponent must be positive");
        if (!merged.empty() && merged.back().first == g)
            merged.back().second += e;
        else
            merged.emplace_back(g, e);
    }
    factors_ = std::move(merged);
}

int Monomial::exponent(const Gen& g) const {
    for (const auto& [gen, e] : factors_)
        if (gen == g) return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    std::vector<std::pair<Gen, int>> out;
    auto it = factors_.begin();
    auto jt = o.factors_.begin();
    while (it != factors_.end() || jt != o.factors_.end()) {
        if (jt == o.factors_.end() || (it != factors_.end() && it->first < jt->first)) {
            out.push_back(*it++);
        } else if (it == factors_.end() || jt->first < it->first) {
            out.push_back(*jt++);
        } else {
            out.emplace_back(it->first, it->second + jt->second);
            ++it;
            ++jt;
        }
    }
    Monomial m;
    m.factors_ = std::move(out);
    return m;
}

bool Monomial::divides(const Monomial& o) const {
    for (const auto& [g, e] : factors_)
        if (o.exponent(g) < e) return false;
    return true;
}

bool Monomial::operator<(const Monomial& o) const {
    auto it = factors_.begin();
    auto jt = o.factors_.begin();
    while (it != factors_.end() && jt != o.factors_.end()) {
        if (it->first != jt->first)
            // The side owning the earlier generator has the larger monomial.
            return jt->first < it->first;
        if (it->second != jt->second) return it->second < jt->second;
        ++it;
        ++jt;
    }
    return it == factors_.end() && jt != o.factors_.end();
}

Monomial monomial_quotient(const Monomial& num, const Monomial& den) {
    std::vector<std::pair<Gen, int>> out;
    for (const auto& [g, e] : num.factors()) {
        const int q = e - den.exponent(g);
        if (q < 0) throw ArithmeticError("monomial quotient is not a monomial");
        if (q > 0) out.emplace_back(g, q);
    }
    for (const auto& [g, e] : den.factors())
        if (num.exponent(g) < e) throw ArithmeticError("monomial quotient is not a monomial");
    return Monomial(std::move(out));
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(Rat constant) {
    if (constant != 0) terms_.emplace(Monomial(), std::move(constant));
}

Poly Poly::term(Monomial m, Rat c) {
    Poly p;
    if (c != 0) p.terms_.emplace(std::move(m), std::move(c));
    return p;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator+(const Poly& o) const {
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, Rat(-c));
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    Poly out;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) out.add_term(m1 * m2, Rat(c1 * c2));
    return out;
}

Poly Poly::negated() const {
    Poly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, Rat(-c));
    return out;
}

Poly Poly::multiplied_by_term(const Monomial& m, const Rat& c) const {
    Poly out;
    if (c == 0) return out;
    for (const auto& [m1, c1] : terms_) out.terms_.emplace(m1 * m, Rat(c1 * c));
    return out;
}

const std::pair<const Monomial, Rat>& Poly::leading() const {
    if (terms_.empty()) throw ArithmeticError("leading term of zero polynomial");
    return *terms_.rbegin();
}

std::optional<Poly> Poly::divide_exact(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw ArithmeticError("polynomial division by zero");
    Poly quotient;
    Poly rem = num;
    const auto& [dm, dc] = den.leading();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading();
        if (!dm.divides(rm)) return std::nullopt;
        const Monomial qm = monomial_quotient(rm, dm);
        const Rat qc = rc / dc;
        quotient.add_term(qm, qc);
        rem = rem - den.multiplied_by_term(qm, qc);
    }
    return quotient;
}

// ---------------------------------------------------------------------------
// Expr

Expr::Expr() : canonical_(true) {}

Expr::Expr(Poly num, Monomial den, int nerve)
    : num_(std::move(num)), den_(std::move(den)), nerve_(nerve) {
    reduce();
}

void Expr::reduce() {
    for (const auto& [g, e] : den_.factors())
        if (g.kind != GenKind::A)
            throw ArithmeticError("denominator contains a non-invertible generator");
    if (num_.is_zero()) {
        den_ = Monomial();
        canonical_ = true;
        return;
    }
    // Cancel the common A-content of numerator and denominator.
    std::vector<std::pair<Gen, int>> cancel;
    for (const auto& [g, e] : den_.factors()) {
        int m = e;
        for (const auto& [tm, tc] : num_.terms()) {
            m = std::min(m, tm.exponent(g));
            if (m == 0) break;
        }
        if (m > 0) cancel.emplace_back(g, m);
    }
    if (!cancel.empty()) {
        const Monomial c(std::move(cancel));
        Poly reduced;
        for (const auto& [tm, tc] : num_.terms())
            reduced = reduced + Poly::term(monomial_quotient(tm, c), tc);
        num_ = std::move(reduced);
        den_ = monomial_quotient(den_, c);
    }
    canonical_ = true;
}

Expr normalize(const Expr& e) {
    Expr out(e.num_, e.den_, e.nerve_);
    return out;
}

Expr Expr::rational(Rat r) { return Expr(Poly(std::move(r)), Monomial(), 0); }

Expr Expr::integer(long v) { return rational(Rat(v)); }

Expr Expr::generator(Gen g, int nerve) {
    switch (g.kind) {
        case GenKind::A:
        case GenKind::Xi:
            if (g.index < 1 || g.index + 1 > nerve)
                throw DomainError("chain generator index out of range");
            break;
        case GenKind::Phi:
            check_chart(g.index, nerve, "phi");
            break;
        case GenKind::X:
            return coordinate();
    }
    return Expr(Poly::term(Monomial({{g, 1}}), Rat(1)), Monomial(), nerve);
}

Expr Expr::coordinate() {
    return Expr(Poly::term(Monomial({{Gen{GenKind::X, 0}, 1}}), Rat(1)), Monomial(), 0);
}

Expr Expr::unknown_phi(int j, int nerve) { return generator(Gen{GenKind::Phi, j}, nerve); }

Expr Expr::transition_a(int j, int k, int nerve) {
    check_chart(j, nerve, "a");
    check_chart(k, nerve, "a");
    if (j == k) return integer(1);
    if (j < k) {
        std::vector<std::pair<Gen, int>> fs;
        for (int i = j; i < k; ++i) fs.push_back({Gen{GenKind::A, i}, 1});
        return Expr(Poly::term(Monomial(std::move(fs)), Rat(1)), Monomial(), nerve);
    }
    return transition_a(k, j, nerve).inverse();
}

Expr Expr::transition_xi(int j, int k, int nerve) {
    check_chart(j, nerve, "xi");
    check_chart(k, nerve, "xi");
    if (j == k) return Expr();
    if (j < k) {
        Expr sum;
        for (int i = j; i < k; ++i) {
            std::vector<std::pair<Gen, int>> fs;
            for (int m = j; m < i; ++m) fs.push_back({Gen{GenKind::A, m}, 1});
            fs.push_back({Gen{GenKind::Xi, i}, 1});
            sum = sum + Expr(Poly::term(Monomial(std::move(fs)), Rat(1)), Monomial(), nerve);
        }
        return sum;
    }
    // xi(j,k) with j > k: reversal relation xi(j,k) = -a(k,j)^-1 * xi(k,j).
    return -(transition_a(k, j, nerve).inverse() * transition_xi(k, j, nerve));
}

bool Expr::is_one() const {
    return den_.is_unit() && num_.terms().size() == 1 &&
           num_.terms().begin()->first.is_unit() && num_.terms().begin()->second == 1;
}

bool Expr::is_unit() const {
    if (num_.terms().size() != 1) return false;
    for (const auto& [g, e] : num_.terms().begin()->first.factors())
        if (g.kind != GenKind::A) return false;
    return true;
}

bool Expr::is_constant() const {
    return num_.is_zero() || (den_.is_unit() && num_.terms().size() == 1 &&
                              num_.terms().begin()->first.is_unit());
}

Rat Expr::constant_value() const {
    if (!is_constant()) throw DomainError("expression is not a constant");
    if (num_.is_zero()) return Rat(0);
    return num_.terms().begin()->second;
}

Expr Expr::operator+(const Expr& o) const {
    const int nerve = unify_nerve(nerve_, o.nerve_);
    // Common denominator: per-generator max exponent.
    std::vector<std::pair<Gen, int>> lcm;
    for (const auto& [g, e] : den_.factors()) lcm.emplace_back(g, std::max(e, o.den_.exponent(g)));
    for (const auto& [g, e] : o.den_.factors())
        if (den_.exponent(g) == 0) lcm.emplace_back(g, e);
    const Monomial L(std::move(lcm));
    const Monomial ma = monomial_quotient(L, den_);
    const Monomial mb = monomial_quotient(L, o.den_);
    return Expr(num_.multiplied_by_term(ma, Rat(1)) + o.num_.multiplied_by_term(mb, Rat(1)), L,
                nerve);
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator-() const {
    Expr out = *this;
    out.num_ = num_.negated();
    return out;
}

Expr Expr::operator*(const Expr& o) const {
    return Expr(num_ * o.num_, den_ * o.den_, unify_nerve(nerve_, o.nerve_));
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw ArithmeticError("division by an expression that normalizes to zero");
    const int nerve = unify_nerve(a.nerve_, b.nerve_);
    // a/b = (a.num * b.den) / (a.den * b.num). Strip the A-content of the
    // divisor so it can move into the (A-monomial) denominator, then divide
    // exactly by what remains.
    std::vector<std::pair<Gen, int>> content;
    {
        const auto& first = b.num_.terms().begin()->first;
        for (const auto& [g, e] : first.factors()) {
            if (g.kind != GenKind::A) continue;
            int m = e;
            for (const auto& [tm, tc] : b.num_.terms()) {
                m = std::min(m, tm.exponent(g));
                if (m == 0) break;
            }
            if (m > 0) content.emplace_back(g, m);
        }
    }
    const Monomial acontent(std::move(content));
    Poly divisor;
    for (const auto& [tm, tc] : b.num_.terms())
        divisor = divisor + Poly::term(monomial_quotient(tm, acontent), tc);

    const Poly numerator = a.num_.multiplied_by_term(b.den_, Rat(1));
    if (divisor.terms().size() == 1 && divisor.leading().first.is_unit()) {
        // Divisor reduced to a rational constant.
        Poly scaled;
        const Rat inv = Rat(1) / divisor.leading().second;
        scaled = numerator.multiplied_by_term(Monomial(), inv);
        return Expr(std::move(scaled), a.den_ * acontent, nerve);
    }
    auto q = Poly::divide_exact(numerator, divisor);
    if (!q)
        throw ArithmeticError(
            "divisor is not invertible (only A-monomial units and exact quotients are)");
    return Expr(std::move(*q), a.den_ * acontent, nerve);
}

Expr Expr::inverse() const { return Expr::integer(1) / *this; }

Expr Expr::pow(long k) const {
    if (k == 0) return Expr::integer(1);
    if (k < 0) return inverse().pow(-k);
    Expr base = *this;
    Expr out = Expr::integer(1);
    long e = k;
    while (e > 0) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

bool equals(const Expr& a, const Expr& b) {
    unify_nerve(a.nerve_, b.nerve_);
    return a.num_ == b.num_ && a.den_ == b.den_;
}

Expr combine(ExprOp op, const std::vector<Expr>& operands, long power) {
    const auto need = [&](std::size_t n) {
        if (operands.size() != n)
            throw DomainError("combine: wrong number of operands");
    };
    switch (op) {
        case ExprOp::add: {
            if (operands.empty()) throw DomainError("combine: add needs operands");
            Expr out = operands[0];
            for (std::size_t i = 1; i < operands.size(); ++i) out = out + operands[i];
            return out;
        }
        case ExprOp::mul: {
            if (operands.empty()) throw DomainError("combine: mul needs operands");
            Expr out = operands[0];
            for (std::size_t i = 1; i < operands.size(); ++i) out = out * operands[i];
            return out;
        }
        case ExprOp::sub:
            need(2);
            return operands[0] - operands[1];
        case ExprOp::div:
            need(2);
            return operands[0] / operands[1];
        case ExprOp::neg:
            need(1);
            return -operands[0];
        case ExprOp::inv:
            need(1);
            return operands[0].inverse();
        case ExprOp::int_pow:
            need(1);
            return operands[0].pow(power);
    }
    throw DomainError("combine: unknown operation");
}

std::complex<double> Expr::evaluate(const EvalEnv& env, std::complex<double> x_value) const {
    const auto value_of = [&](const Gen& g) -> std::complex<double> {
        if (g.kind == GenKind::X) return x_value;
        auto it = env.values.find(g);
        if (it == env.values.end())
            throw DomainError("missing assignment for generator " + gen_name(g));
        if (g.kind == GenKind::A && it->second == std::complex<double>{0.0, 0.0})
            throw DomainError("zero value assigned to invertible generator " + gen_name(g));
        return it->second;
    };
    const auto eval_monomial = [&](const Monomial& m) {
        std::complex<double> r{1.0, 0.0};
        for (const auto& [g, e] : m.factors()) r *= cpow(value_of(g), e);
        return r;
    };
    std::complex<double> num{0.0, 0.0};
    for (const auto& [m, c] : num_.terms()) num += rat_to_double(c) * eval_monomial(m);
    if (den_.is_unit()) return num;
    return num / eval_monomial(den_);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string monomial_str(const Monomial& m) {
    std::string out;
    for (const auto& [g, e] : m.factors()) {
        if (!out.empty()) out += "*";
        out += gen_name(g);
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

std::string term_str(const Monomial& m, const Rat& c) {
    const std::string ms = monomial_str(m);
    if (ms.empty()) return rat_str(c);
    if (c == 1) return ms;
    if (c == -1) return "-" + ms;
    return rat_str(c) + "*" + ms;
}

std::string poly_str(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    // Print in descending monomial order, leading term first.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        if (first) {
            out = term_str(m, c);
            first = false;
        } else if (c < 0) {
            out += " - " + term_str(m, Rat(-c));
        } else {
            out += " + " + term_str(m, c);
        }
    }
    return out;
}

} // namespace

std::string Expr::str() const {
    const std::string ns = poly_str(num_);
    if (den_.is_unit()) return ns;
    std::string ds = monomial_str(den_);
    if (den_.factors().size() > 1) ds = "(" + ds + ")";
    if (num_.terms().size() > 1) return "(" + ns + ")/" + ds;
    return ns + "/" + ds;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    Parser(std::string_view text, int nerve) : text_(text), nerve_(nerve) {
        if (nerve < 1) throw DomainError("nerve size must be positive");
    }

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    std::string_view text_;
    int nerve_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    long integer() {
        skip_ws();
        const std::size_t start = pos_;
        std::string digits;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            digits += '-';
            ++pos_;
        }
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            digits += text_[pos_];
            ++pos_;
        }
        if (digits.empty() || digits == "-") {
            pos_ = start;
            fail("expected integer");
        }
        try {
            return std::stol(digits);
        } catch (const std::out_of_range&) {
            pos_ = start;
            fail("integer literal out of range");
        }
    }

    int chart_index() {
        const std::size_t at = pos_;
        const long v = integer();
        if (v < 1 || v > nerve_) {
            pos_ = at;
            fail("index out of range for nerve of size " + std::to_string(nerve_));
        }
        return static_cast<int>(v);
    }

    Expr expr() {
        Expr e = term();
        while (true) {
            if (eat('+'))
                e = e + term();
            else if (eat('-'))
                e = e - term();
            else
                return e;
        }
    }

    Expr term() {
        Expr e = factor();
        while (true) {
            if (eat('*')) {
                e = e * factor();
            } else if (eat('/')) {
                const std::size_t at = pos_;
                try {
                    e = e / factor();
                } catch (const ArithmeticError& err) {
                    throw ParseError(err.what(), at);
                }
            } else {
                return e;
            }
        }
    }

    Expr factor() {
        if (eat('-')) return -factor();
        if (eat('(')) {
            Expr e = expr();
            expect(')');
            return e;
        }
        Expr e = atom();
        if (eat('^')) {
            const std::size_t at = pos_;
            const long k = integer();
            try {
                return e.pow(k);
            } catch (const ArithmeticError& err) {
                throw ParseError(err.what(), at);
            }
        }
        return e;
    }

    Expr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits += text_[pos_];
                ++pos_;
            }
            return Expr::rational(Rat(mpz_class(digits)));
        }
        std::string word;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            word += text_[pos_];
            ++pos_;
        }
        if (word == "a" || word == "xi") {
            expect('(');
            const int j = chart_index();
            expect(',');
            const int k = chart_index();
            expect(')');
            return word == "a" ? Expr::transition_a(j, k, nerve_)
                               : Expr::transition_xi(j, k, nerve_);
        }
        if (word == "phi") {
            expect('(');
            const int j = chart_index();
            expect(')');
            return Expr::unknown_phi(j, nerve_);
        }
        if (word == "x") return Expr::coordinate();
        fail("expected atom");
    }
};

} // namespace

Expr parse_expr(std::string_view text, int nerve_size) {
    return Parser(text, nerve_size).run();
}

} // namespace gv
