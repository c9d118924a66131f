/*
 * ring.hpp
 * --------
 * Finitely presented commutative rings Q[x1..xn]/I.  The reduced
 * Groebner basis of I is computed on first use (normal forms,
 * presentation comparison, rendering) and memoized per presentation;
 * large intermediate rings that only ever serve as morphism domains
 * never pay for a basis.  Values are semantically immutable.
 */
#pragma once

#include "tancat/groebner.hpp"
#include "tancat/poly.hpp"

namespace tancat {

class FPRing {
public:
    // Free ring when gens is empty.
    FPRing() = default;
    FPRing(std::vector<std::string> vars, std::vector<Poly> gens);

    // The rationals: no variables, no relations.
    static FPRing rationals() { return FPRing({}, {}); }
    static FPRing free(std::vector<std::string> vars) { return FPRing(std::move(vars), {}); }
    // Convenience: parse each relation over vars.
    static FPRing presented(std::vector<std::string> vars, const std::vector<std::string>& rels);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Poly>& generators() const { return gens_; }
    const std::vector<Poly>& groebner() const;

    Poly normal_form(const Poly& p) const;
    bool is_zero_in_ring(const Poly& p) const { return normal_form(p).is_zero(); }

    Poly parse(const std::string& text) const { return Poly::parse(text, vars_); }
    Poly var(const std::string& name) const { return Poly::variable(vars_, name); }
    Poly constant(const Rational& c) const { return Poly::constant(vars_, c); }
    Poly zero_poly() const { return Poly::zero(vars_); }

    // Presentation equality: same ordered variables and same reduced
    // basis.  Identical generator lists short-circuit without forcing
    // the basis; signature checks between copies of one construction
    // stay cheap.
    bool operator==(const FPRing& o) const {
        if (vars_ != o.vars_) return false;
        if (gens_ == o.gens_) return true;
        return groebner() == o.groebner();
    }
    bool operator!=(const FPRing& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    std::vector<std::string> vars_;
    std::vector<Poly> gens_;
    mutable std::vector<Poly> gb_;
    mutable bool gb_ready_ = false;
};

// Canonical-form ideal comparison; requires identical variable lists.
bool ideal_equal(const FPRing& a, const FPRing& b);

struct InvalidPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Point {
public:
    Point(FPRing ring, std::vector<Rational> coords);

    const FPRing& ring() const { return ring_; }
    const std::vector<Rational>& coords() const { return coords_; }

private:
    FPRing ring_;
    std::vector<Rational> coords_;
};

Rational evaluate(const Poly& p, const Point& pt);

// First name in candidates not used in taken, else candidate[0] with
// deterministic "__2", "__3" suffixes.
std::string fresh_name(const std::vector<std::string>& taken, const std::string& candidate);

}  // namespace tancat
