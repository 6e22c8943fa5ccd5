#ifndef KSTAB_POLYNOMIAL_HPP
#define KSTAB_POLYNOMIAL_HPP

#include "kstab/errors.hpp"
#include "kstab/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kstab {

// Exponent vector; entry i is the power of the i-th declared variable.
using Mono = std::vector<unsigned>;

// Graded lexicographic order over the declared variable order.  Used for
// normalization and printing only, never for semantics.
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

// Sparse multivariate polynomial with exact rational coefficients.
//
// Invariants: stored coefficients are nonzero (the zero polynomial has an
// empty term map) and every exponent vector has length vars().size().
// Values are immutable in spirit: all operations return fresh polynomials.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Polynomial constant(std::vector<std::string> vars, const Rational& c);
    static Polynomial variable(const std::vector<std::string>& vars, const std::string& name);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Mono, Rational, GrlexLess>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Requires is_constant(); the zero polynomial yields 0.
    Rational constant_value() const;

    int total_degree() const; // -1 for the zero polynomial
    int degree_in(const std::string& var) const;
    bool mentions(const std::string& var) const { return degree_in(var) > 0; }

    // Re-expresses the polynomial over a variable list containing vars().
    Polynomial embedded(const std::vector<std::string>& super) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    Polynomial pow(unsigned e) const;

    // Semantic equality: contexts are merged before comparing terms.
    bool operator==(const Polynomial& rhs) const;
    bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

    // Exact value at a rational point.  Every variable occurring with a
    // positive exponent must be bound; otherwise InputError.
    Rational eval(const std::map<std::string, Rational>& point) const;

    // Simultaneous substitution; unlisted variables map to themselves.
    Polynomial substitute(const std::map<std::string, Polynomial>& repl) const;

    Polynomial derivative(const std::string& var) const;
    Polynomial antiderivative(const std::string& var) const;

    // Coefficient of var^power, with that variable's exponent reset to zero.
    Polynomial coefficient_of(const std::string& var, unsigned power) const;
    std::map<unsigned, Polynomial> coefficients_in(const std::string& var) const;

    // Positive rational c such that (*this)/c has coprime integer
    // coefficients.  Zero polynomial yields 0.
    Rational content() const;
    // Leading coefficient under graded lex; 0 for the zero polynomial.
    Rational leading_coefficient() const;

    bool all_coefficients_nonnegative() const;

    // Canonical printing: graded-lex descending, explicit '*' and '^',
    // re-parseable under the expression grammar.
    std::string str() const;

    void set_term(const Mono& m, const Rational& c); // used by builders

private:
    std::vector<std::string> vars_;
    std::map<Mono, Rational, GrlexLess> terms_;

    int var_index(const std::string& var) const; // -1 if absent
    friend std::vector<std::string> merge_contexts(const Polynomial&, const Polynomial&);
};

std::vector<std::string> merge_contexts(const Polynomial& a, const Polynomial& b);

// Exact division: returns a/b when b divides a, std::nullopt otherwise.
std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b);

// Primitive gcd with positive leading coefficient (1 for coprime input,
// 0 only when both arguments are 0).
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

// Expression grammar of the casebook (see README):
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' nonneg-int)?
//   base   := rational | identifier | '(' expr ')'
// No implicit multiplication.  Identifiers must belong to `vars`.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars);

} // namespace kstab

#endif
