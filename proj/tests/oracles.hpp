/*
 * Independent reference implementations used to cross-check the engine.
 * These deliberately avoid the engine's division strategy: the naive
 * reducer scans terms from the bottom up and tries basis elements in
 * reverse order, so agreement with normal_form is meaningful evidence.
 */
#pragma once

#include "tancat/groebner.hpp"
#include "tancat/ring.hpp"

#include <random>

namespace oracle {

using namespace tancat;

inline bool divides(const Exponents& a, const Exponents& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// Reduce p by the basis until no term of p is divisible by any leading
// monomial, picking the lowest reducible term and the last matching
// basis element each time.
inline Poly naive_reduce(Poly p, const std::vector<Poly>& basis) {
    bool changed = true;
    while (changed && !p.is_zero()) {
        changed = false;
        for (auto it = p.terms().begin(); it != p.terms().end() && !changed; ++it) {
            for (auto bi = basis.rbegin(); bi != basis.rend(); ++bi) {
                if (bi->is_zero()) continue;
                if (!divides(bi->leading_monomial(), it->first)) continue;
                Exponents q(it->first.size());
                for (size_t k = 0; k < q.size(); ++k)
                    q[k] = it->first[k] - bi->leading_monomial()[k];
                Rational c = it->second / bi->leading_coeff();
                p = p - Poly::monomial(p.vars(), std::move(q), c) * *bi;
                changed = true;
                break;
            }
        }
    }
    return p;
}

// Deterministic random polynomial over vars: up to max_terms terms of
// total degree <= max_deg with small integer coefficients.
inline Poly random_poly(std::mt19937& rng, const std::vector<std::string>& vars,
                        int max_deg, int max_terms) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> deg(0, max_deg);
    Poly p = Poly::zero(vars);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Exponents e(vars.size(), 0);
        int budget = deg(rng);
        for (int d = 0; d < budget && !vars.empty(); ++d) {
            std::uniform_int_distribution<size_t> pick(0, vars.size() - 1);
            e[pick(rng)] += 1;
        }
        int c = coeff(rng);
        if (c == 0) c = 1;
        p = p + Poly::monomial(vars, std::move(e), c);
    }
    return p;
}

}  // namespace oracle
