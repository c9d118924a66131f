#include "tancat/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>

namespace tancat {

long groebner_step_budget() {
    static long budget = [] {
        if (const char* env = std::getenv("TANCAT_STEP_BUDGET")) {
            long v = std::atol(env);
            if (v > 0) return v;
        }
        return 1000000L;
    }();
    return budget;
}

namespace {

bool divides(const Exponents& a, const Exponents& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents quotient(const Exponents& b, const Exponents& a) {
    Exponents q(b.size());
    for (size_t i = 0; i < b.size(); ++i) q[i] = b[i] - a[i];
    return q;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
    Exponents m(a.size());
    for (size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
    return m;
}

bool coprime(const Exponents& a, const Exponents& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

}  // namespace

namespace {
struct TraceTotals {
    double div_s = 0, buch_s = 0;
    long div_n = 0, buch_n = 0;
    ~TraceTotals() {
        if (std::getenv("TANCAT_GB_TRACE"))
            std::fprintf(stderr, "gb totals: division %.2fs (%ld calls) buchberger %.2fs (%ld calls)\n",
                         div_s, div_n, buch_s, buch_n);
    }
};
TraceTotals trace_totals;
struct ScopeTimer {
    double& acc;
    long& n;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    ~ScopeTimer() {
        acc += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ++n;
    }
};
}  // namespace

Poly division_remainder(const Poly& p, const std::vector<Poly>& basis) {
    ScopeTimer timer{trace_totals.div_s, trace_totals.div_n};
    // reduce in place on the term map: per step, subtract the matching
    // multiple of one basis element instead of rebuilding the polynomial
    Poly::TermMap work = p.terms();
    Poly::TermMap rem;
    while (!work.empty()) {
        auto lead = std::prev(work.end());
        const Exponents& lm = lead->first;
        const Poly* red = nullptr;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            if (divides(g.leading_monomial(), lm)) {
                red = &g;
                break;
            }
        }
        if (!red) {
            // move the leading term to the remainder
            rem.insert(*lead);
            work.erase(lead);
            continue;
        }
        Exponents q = quotient(lm, red->leading_monomial());
        Rational c = lead->second / red->leading_coeff();
        for (const auto& [m, a] : red->terms()) {
            Exponents shifted(m.size());
            for (size_t i = 0; i < m.size(); ++i) shifted[i] = m[i] + q[i];
            Rational delta = a * c;
            auto [it, inserted] = work.emplace(std::move(shifted), -delta);
            if (!inserted) {
                it->second -= delta;
                if (it->second == 0) work.erase(it);
            }
        }
    }
    return Poly(p.vars(), std::move(rem));
}

namespace {

struct Pair {
    size_t i, j;
    Exponents lcm_ij;
    int sugar;
};

int poly_sugar(const Poly& p) { return p.degree(); }

// Division tuned for the Buchberger inner loop: prefers divisors with
// few terms to limit intermediate swell, and stops as soon as the
// leading term is irreducible (basis elements do not need reduced
// tails; zero-reductions still run to completion).
Poly reduce_for_basis(Poly::TermMap work, const std::vector<Poly>& basis,
                      const std::vector<size_t>& by_size,
                      const std::vector<std::string>& vars) {
    // degree prefilter: a divisor's leading degree cannot exceed the
    // reducee's, and total_degree is one int compare vs a full
    // exponent-vector scan
    std::vector<int> lead_deg(basis.size());
    for (size_t i = 0; i < basis.size(); ++i)
        lead_deg[i] = total_degree(basis[i].leading_monomial());
    while (!work.empty()) {
        auto lead = std::prev(work.end());
        const Exponents& lm = lead->first;
        int lm_deg = total_degree(lm);
        const Poly* red = nullptr;
        for (size_t idx : by_size) {
            if (lead_deg[idx] > lm_deg) continue;
            if (divides(basis[idx].leading_monomial(), lm)) {
                red = &basis[idx];
                break;
            }
        }
        if (!red) return Poly(vars, std::move(work));
        Exponents q = quotient(lm, red->leading_monomial());
        Rational c = lead->second / red->leading_coeff();
        for (const auto& [m, a] : red->terms()) {
            Exponents shifted(m.size());
            for (size_t i = 0; i < m.size(); ++i) shifted[i] = m[i] + q[i];
            Rational delta = a * c;
            auto [it, inserted] = work.emplace(std::move(shifted), -delta);
            if (!inserted) {
                it->second -= delta;
                if (it->second == 0) work.erase(it);
            }
        }
    }
    return Poly(vars, {});
}

}  // namespace

std::vector<Poly> buchberger(const std::vector<Poly>& gens) {
    ScopeTimer timer{trace_totals.buch_s, trace_totals.buch_n};
    std::vector<Poly> g;
    std::vector<int> sugar;
    std::vector<Pair> pairs;

    // Gebauer-Moller update: add g[t] to the pair set, discarding pairs
    // covered by the coprimality and chain criteria at insertion time.
    auto update = [&](size_t t) {
        const Exponents& lmt = g[t].leading_monomial();
        std::vector<Exponents> l(t);
        for (size_t i = 0; i < t; ++i) l[i] = lcm(g[i].leading_monomial(), lmt);

        // candidate pairs {i, t}: keep the coprime ones for pruning
        // duty, and the ones whose lcm no other candidate's lcm divides
        std::vector<size_t> pending, kept;
        for (size_t i = 0; i < t; ++i) pending.push_back(i);
        while (!pending.empty()) {
            size_t i = pending.front();
            pending.erase(pending.begin());
            bool keep = coprime(g[i].leading_monomial(), lmt);
            if (!keep) {
                bool dominated = false;
                for (size_t j : pending)
                    if (divides(l[j], l[i])) { dominated = true; break; }
                if (!dominated)
                    for (size_t j : kept)
                        if (divides(l[j], l[i])) { dominated = true; break; }
                keep = !dominated;
            }
            if (keep) kept.push_back(i);
        }

        // prune old pairs strictly inside the new leading monomial's cone
        pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                                   [&](const Pair& pr) {
                                       return divides(lmt, pr.lcm_ij) &&
                                              lcm(g[pr.i].leading_monomial(), lmt) !=
                                                  pr.lcm_ij &&
                                              lcm(g[pr.j].leading_monomial(), lmt) !=
                                                  pr.lcm_ij;
                                   }),
                    pairs.end());

        for (size_t i : kept) {
            if (coprime(g[i].leading_monomial(), lmt)) continue;
            int s = std::max(sugar[i] + total_degree(quotient(l[i], g[i].leading_monomial())),
                             sugar[t] + total_degree(quotient(l[i], lmt)));
            pairs.push_back({i, t, l[i], s});
        }
    };

    for (const auto& p : gens) {
        if (p.is_zero()) continue;
        g.push_back(p.scale(1 / p.leading_coeff()));
        sugar.push_back(poly_sugar(p));
        update(g.size() - 1);
    }

    long budget = groebner_step_budget();
    long steps = 0;
    const bool trace = std::getenv("TANCAT_GB_TRACE") != nullptr;

    // basis indices ordered by term count, so reduction prefers sparse
    // divisors and appends as little as possible per step
    std::vector<size_t> by_size;
    auto resort = [&] {
        by_size.resize(g.size());
        for (size_t i = 0; i < g.size(); ++i) by_size[i] = i;
        std::stable_sort(by_size.begin(), by_size.end(), [&](size_t a, size_t b) {
            return g[a].terms().size() < g[b].terms().size();
        });
    };
    resort();

    while (!pairs.empty()) {
        // sugar strategy: smallest sugar, ties by smallest lcm
        auto best = pairs.begin();
        for (auto it = pairs.begin(); it != pairs.end(); ++it) {
            if (it->sugar < best->sugar ||
                (it->sugar == best->sugar && GrevlexLess{}(it->lcm_ij, best->lcm_ij)))
                best = it;
        }
        Pair pr = *best;
        pairs.erase(best);

        if (trace && steps % 20 == 0) {
            size_t maxbits = 0;
            for (const auto& [m, c] : g.back().terms()) {
                size_t b = boost::multiprecision::msb(
                    boost::multiprecision::abs(boost::multiprecision::numerator(c)) + 1);
                b += boost::multiprecision::msb(boost::multiprecision::denominator(c));
                maxbits = std::max(maxbits, b);
            }
            std::fprintf(stderr,
                         "gb: steps=%ld basis=%zu pairs=%zu sugar=%d lastterms=%zu maxbits=%zu\n",
                         steps, g.size(), pairs.size(), pr.sugar, g.back().terms().size(),
                         maxbits);
        }
        if (++steps > budget)
            throw StepBudgetExceeded("Groebner step budget exceeded (" +
                                     std::to_string(budget) + " S-polynomial reductions)");

        const Poly& fi = g[pr.i];
        const Poly& fj = g[pr.j];
        Poly a = Poly::monomial(fi.vars(), quotient(pr.lcm_ij, fi.leading_monomial()),
                                1 / fi.leading_coeff());
        Poly b = Poly::monomial(fj.vars(), quotient(pr.lcm_ij, fj.leading_monomial()),
                                1 / fj.leading_coeff());
        Poly s = a * fi - b * fj;
        Poly r = reduce_for_basis(s.terms(), g, by_size, s.vars());
        if (r.is_zero()) continue;
        g.push_back(r.scale(1 / r.leading_coeff()));
        sugar.push_back(std::max(pr.sugar, r.degree()));
        update(g.size() - 1);
        resort();
    }

    // interreduce: drop elements whose leading monomial is divisible by
    // another's, then fully reduce each survivor against the rest
    std::vector<Poly> minimal;
    for (size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < g.size(); ++j) {
            if (i == j) continue;
            if (divides(g[j].leading_monomial(), g[i].leading_monomial())) {
                if (g[j].leading_monomial() == g[i].leading_monomial() && j > i) continue;
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(g[i]);
    }

    std::vector<Poly> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = division_remainder(minimal[i], others);
        if (!r.is_zero()) reduced.push_back(r.scale(1 / r.leading_coeff()));
    }

    std::sort(reduced.begin(), reduced.end(), [](const Poly& a, const Poly& b) {
        return GrevlexLess{}(a.leading_monomial(), b.leading_monomial());
    });
    if (trace) {
        size_t nv = gens.empty() ? 0 : gens.front().vars().size();
        std::fprintf(stderr, "gb done: vars=%zu gens=%zu steps=%ld basis=%zu\n", nv,
                     gens.size(), steps, reduced.size());
    }
    return reduced;
}

}  // namespace tancat
