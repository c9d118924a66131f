#include "tancat/ring.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

namespace tancat {

namespace {

// The same presentation is constructed many times across tangent
// towers, width objects and their checks; basis computation dominates,
// so memoize it on the exact (vars, generators) pair.  Single-threaded
// by the concurrency model.
const std::vector<Poly>& memoized_buchberger(const std::vector<std::string>& vars,
                                             const std::vector<Poly>& gens) {
    static std::unordered_map<std::string, std::vector<Poly>> cache;
    std::string key;
    for (const auto& v : vars) {
        key += v;
        key += '\x1f';
    }
    key += '\x1e';
    for (const auto& g : gens) {
        key += g.to_string();
        key += '\x1f';
    }
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, buchberger(gens)).first;
    return it->second;
}

}  // namespace

FPRing::FPRing(std::vector<std::string> vars, std::vector<Poly> gens)
    : vars_(std::move(vars)), gens_(std::move(gens)) {
    std::set<std::string> seen;
    for (const auto& v : vars_)
        if (!seen.insert(v).second)
            throw std::runtime_error("duplicate variable name: " + v);
    for (const auto& g : gens_)
        if (g.vars() != vars_)
            throw VarMismatchError("relation over wrong variable list");
}

const std::vector<Poly>& FPRing::groebner() const {
    if (!gb_ready_) {
        gb_ = memoized_buchberger(vars_, gens_);
        gb_ready_ = true;
    }
    return gb_;
}

FPRing FPRing::presented(std::vector<std::string> vars, const std::vector<std::string>& rels) {
    std::vector<Poly> gens;
    gens.reserve(rels.size());
    for (const auto& r : rels) gens.push_back(Poly::parse(r, vars));
    return FPRing(std::move(vars), std::move(gens));
}

Poly FPRing::normal_form(const Poly& p) const {
    if (p.vars() != vars_) throw VarMismatchError("polynomial over wrong variable list");
    return division_remainder(p, groebner());
}

std::string FPRing::to_string() const {
    std::ostringstream os;
    os << "QQ[";
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (i) os << ", ";
        os << vars_[i];
    }
    os << "]";
    const std::vector<Poly>& gb = groebner();
    if (!gb.empty()) {
        os << " / (";
        for (size_t i = 0; i < gb.size(); ++i) {
            if (i) os << ", ";
            os << gb[i].to_string();
        }
        os << ")";
    }
    return os.str();
}

bool ideal_equal(const FPRing& a, const FPRing& b) {
    if (a.vars() != b.vars()) throw VarMismatchError("ideal comparison over different variable lists");
    return a.groebner() == b.groebner();
}

Point::Point(FPRing ring, std::vector<Rational> coords)
    : ring_(std::move(ring)), coords_(std::move(coords)) {
    if (coords_.size() != ring_.vars().size())
        throw InvalidPointError("coordinate count does not match variable count");
    for (const auto& rel : ring_.generators()) {
        Rational v = 0;
        for (const auto& [m, c] : rel.terms()) {
            Rational t = c;
            for (size_t i = 0; i < m.size(); ++i)
                for (int k = 0; k < m[i]; ++k) t *= coords_[i];
            v += t;
        }
        if (v != 0)
            throw InvalidPointError("relation " + rel.to_string() + " does not vanish at the point");
    }
}

Rational evaluate(const Poly& p, const Point& pt) {
    if (p.vars() != pt.ring().vars())
        throw VarMismatchError("polynomial over wrong variable list");
    Rational v = 0;
    for (const auto& [m, c] : p.terms()) {
        Rational t = c;
        for (size_t i = 0; i < m.size(); ++i)
            for (int k = 0; k < m[i]; ++k) t *= pt.coords()[i];
        v += t;
    }
    return v;
}

std::string fresh_name(const std::vector<std::string>& taken, const std::string& candidate) {
    auto used = [&](const std::string& n) {
        return std::find(taken.begin(), taken.end(), n) != taken.end();
    };
    if (!used(candidate)) return candidate;
    for (int k = 2;; ++k) {
        std::string n = candidate + "__" + std::to_string(k);
        if (!used(n)) return n;
    }
}

}  // namespace tancat
