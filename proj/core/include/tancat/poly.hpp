/*
 * poly.hpp
 * --------
 * Exact multivariate polynomials with rational coefficients.
 *
 * A Poly is a sparse map from exponent vectors to nonzero rationals,
 * ordered by graded reverse lexicographic order so that the last map
 * entry is always the leading term.  Every Poly carries its ambient
 * ordered variable list; arithmetic between polynomials over different
 * variable lists is an error, and map_vars() re-embeds a polynomial
 * into a larger ambient ring by variable name.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tancat {

using Rational = boost::multiprecision::cpp_rational;

// Exponent vector; length always equals the ambient variable count.
using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
    int d = 0;
    for (int k : e) d += k;
    return d;
}

// Ascending grevlex comparison: with this as the map comparator the
// largest (leading) monomial is the last entry.
struct GrevlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        for (size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] > b[i];
        }
        return false;
    }
};

struct VarMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Poly {
public:
    using TermMap = std::map<Exponents, Rational, GrevlexLess>;

    Poly() = default;
    Poly(std::vector<std::string> vars, TermMap terms);

    static Poly zero(std::vector<std::string> vars);
    static Poly constant(std::vector<std::string> vars, const Rational& c);
    static Poly variable(const std::vector<std::string>& vars, const std::string& name);
    static Poly monomial(std::vector<std::string> vars, Exponents e, const Rational& c);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Rational value of a constant polynomial (zero for the empty sum).
    Rational constant_value() const;

    int degree() const;  // total degree; -1 for the zero polynomial

    const Exponents& leading_monomial() const;
    const Rational& leading_coeff() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scale(const Rational& c) const;
    Poly pow(int n) const;

    bool operator==(const Poly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Partial derivative with respect to vars()[i].
    Poly derivative(size_t i) const;

    // Substitute images[i] for vars()[i]; all images must share one
    // ambient variable list, which becomes the result's ambient list.
    Poly substitute(const std::vector<Poly>& images) const;

    // Re-embed into a new ambient list; every variable occurring in the
    // polynomial must be present in new_vars.
    Poly map_vars(const std::vector<std::string>& new_vars) const;

    // Exponent of variable `name` in the given monomial, by name lookup.
    int exponent_of(const Exponents& e, const std::string& name) const;

    // Sum of terms linear in vars()[i], divided by that variable.
    // Used to read off nilpotent components such as the coefficient of eps.
    Poly coefficient_of_linear(const std::string& name) const;
    // Terms with exponent 0 in the named variable.
    Poly drop_terms_in(const std::string& name) const;

    std::string to_string() const;

    // Parses the CLI polynomial grammar: identifiers, integer and a/b
    // rational literals, + - * ^ and parentheses.  Throws std::runtime_error
    // with a position-annotated message on bad input.
    static Poly parse(const std::string& text, const std::vector<std::string>& vars);

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    size_t var_index(const std::string& name) const;
    void check_same_vars(const Poly& o) const;
};

std::string format_rational(const Rational& q);

}  // namespace tancat
