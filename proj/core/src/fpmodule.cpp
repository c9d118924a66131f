#include "tancat/fpmodule.hpp"

#include <algorithm>
#include <sstream>

namespace tancat {

namespace {

bool divides_exp(const Exponents& a, const Exponents& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// Divide p by {pivot} followed by gb, greedily preferring the pivot,
// and report the accumulated pivot quotient alongside the remainder.
// Multiples of gb elements vanish in the quotient ring, so only the
// pivot's quotient has to be propagated into the row's tail.
struct TrackedDivision {
    Poly quotient, remainder;
};

TrackedDivision divide_tracked(const Poly& p, const Poly& pivot,
                               const std::vector<Poly>& gb) {
    Poly::TermMap work = p.terms();
    Poly::TermMap rem;
    Poly::TermMap quot;
    auto subtract_multiple = [&](const Poly& g, const Exponents& lm, const Rational& lc) {
        Exponents q(lm.size());
        const Exponents& glm = g.leading_monomial();
        for (size_t i = 0; i < lm.size(); ++i) q[i] = lm[i] - glm[i];
        Rational c = lc / g.leading_coeff();
        for (const auto& [m, a] : g.terms()) {
            Exponents shifted(m.size());
            for (size_t i = 0; i < m.size(); ++i) shifted[i] = m[i] + q[i];
            Rational delta = a * c;
            auto [it, inserted] = work.emplace(std::move(shifted), -delta);
            if (!inserted) {
                it->second -= delta;
                if (it->second == 0) work.erase(it);
            }
        }
        return std::pair(std::move(q), std::move(c));
    };
    while (!work.empty()) {
        auto lead = std::prev(work.end());
        const Exponents lm = lead->first;
        const Rational lc = lead->second;
        if (!pivot.is_zero() && divides_exp(pivot.leading_monomial(), lm)) {
            auto [q, c] = subtract_multiple(pivot, lm, lc);
            auto [it, inserted] = quot.emplace(std::move(q), c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0) quot.erase(it);
            }
            continue;
        }
        const Poly* red = nullptr;
        for (const auto& g : gb)
            if (divides_exp(g.leading_monomial(), lm)) {
                red = &g;
                break;
            }
        if (!red) {
            rem.insert(*lead);
            work.erase(lead);
            continue;
        }
        subtract_multiple(*red, lm, lc);
    }
    return {Poly(p.vars(), std::move(quot)), Poly(p.vars(), std::move(rem))};
}

size_t pivot_column(const ModElem& row) {
    for (size_t j = 0; j < row.size(); ++j)
        if (!row[j].is_zero()) return j;
    return row.size();
}

}  // namespace

FPModule::FPModule(FPRing base, std::vector<std::string> gens, std::vector<ModElem> rows)
    : base_(std::move(base)), gens_(std::move(gens)) {
    for (size_t i = 0; i < gens_.size(); ++i)
        for (size_t j = i + 1; j < gens_.size(); ++j)
            if (gens_[i] == gens_[j])
                throw VarMismatchError("duplicate module generator name " + gens_[i]);
    for (auto& row : rows) {
        if (row.size() != gens_.size())
            throw VarMismatchError("relation row has " + std::to_string(row.size()) +
                                   " entries for " + std::to_string(gens_.size()) +
                                   " generators");
        bool nonzero = false;
        for (auto& c : row) {
            if (c.vars() != base_.vars())
                throw VarMismatchError("relation coefficient is not over the base ring");
            c = base_.normal_form(c);
            nonzero = nonzero || !c.is_zero();
        }
        if (nonzero) rows_.push_back(std::move(row));
    }
    build_plan();
}

void FPModule::build_plan() {
    // Group rows by pivot column; a shared column admits only rows
    // supported on that column alone.
    std::vector<std::vector<const ModElem*>> by_col(gens_.size());
    for (const auto& row : rows_) by_col[pivot_column(row)].push_back(&row);
    for (size_t col = 0; col < by_col.size(); ++col) {
        const auto& group = by_col[col];
        if (group.empty()) continue;
        bool pure = true;
        for (const ModElem* row : group)
            for (size_t j = col + 1; j < row->size(); ++j)
                if (!(*row)[j].is_zero()) pure = false;
        if (group.size() == 1 && !pure) {
            ModElem row = *group[0];
            Rational s = 1 / row[col].leading_coeff();
            for (auto& c : row) c = c.scale(s);
            plan_.push_back({col, {}, std::move(row)});
            continue;
        }
        if (!pure) {
            undecided_ = "module presentation outside the decidable fragment: "
                         "several relation rows with nonzero tails pivot on generator " +
                         gens_[col];
            plan_.clear();
            return;
        }
        std::vector<Poly> gens_ideal = base_.groebner();
        for (const ModElem* row : group) gens_ideal.push_back((*row)[col]);
        plan_.push_back({col, buchberger(gens_ideal), {}});
    }
}

FPModule FPModule::free(FPRing base, std::vector<std::string> gens) {
    return FPModule(std::move(base), std::move(gens), {});
}

FPModule FPModule::free_rank(FPRing base, size_t rank) {
    std::vector<std::string> names;
    if (rank == 1) {
        names.push_back("u");
    } else {
        for (size_t k = 1; k <= rank; ++k) names.push_back("u_" + std::to_string(k));
    }
    return free(std::move(base), std::move(names));
}

FPModule FPModule::cokernel(FPRing base, std::vector<std::string> gens,
                            const std::vector<std::vector<std::string>>& rows) {
    std::vector<ModElem> parsed;
    for (const auto& row : rows) {
        ModElem r;
        for (const auto& text : row) r.push_back(base.parse(text));
        parsed.push_back(std::move(r));
    }
    return FPModule(std::move(base), std::move(gens), std::move(parsed));
}

ModElem FPModule::zero_elem() const {
    return ModElem(gens_.size(), base_.zero_poly());
}

ModElem FPModule::gen_elem(const std::string& name) const {
    auto it = std::find(gens_.begin(), gens_.end(), name);
    if (it == gens_.end()) throw VarMismatchError("unknown module generator " + name);
    ModElem e = zero_elem();
    e[it - gens_.begin()] = base_.constant(1);
    return e;
}

ModElem FPModule::parse_elem(const std::vector<std::string>& coeffs) const {
    if (coeffs.size() != gens_.size())
        throw VarMismatchError("expected " + std::to_string(gens_.size()) +
                               " coefficients, got " + std::to_string(coeffs.size()));
    ModElem e;
    for (const auto& text : coeffs) e.push_back(base_.parse(text));
    return e;
}

void FPModule::check_elem(const ModElem& e) const {
    if (e.size() != gens_.size())
        throw VarMismatchError("module element has " + std::to_string(e.size()) +
                               " coefficients for " + std::to_string(gens_.size()) +
                               " generators");
    for (const auto& c : e)
        if (c.vars() != base_.vars())
            throw VarMismatchError("module coefficient is not over the base ring");
}

ModElem FPModule::normal_form(const ModElem& e) const {
    check_elem(e);
    if (!undecided_.empty()) throw UndecidedError(undecided_);
    ModElem r;
    for (const auto& c : e) r.push_back(base_.normal_form(c));
    for (const auto& entry : plan_) {
        if (entry.row.empty()) {
            r[entry.col] = division_remainder(r[entry.col], entry.basis);
        } else {
            auto [q, rem] = divide_tracked(r[entry.col], entry.row[entry.col],
                                           base_.groebner());
            r[entry.col] = std::move(rem);
            for (size_t j = entry.col + 1; j < r.size(); ++j)
                r[j] = base_.normal_form(r[j] - q * entry.row[j]);
        }
    }
    return r;
}

bool FPModule::is_zero(const ModElem& e) const {
    ModElem r = normal_form(e);
    return std::all_of(r.begin(), r.end(), [](const Poly& c) { return c.is_zero(); });
}

bool FPModule::elems_equal(const ModElem& a, const ModElem& b) const {
    check_elem(a);
    check_elem(b);
    ModElem d;
    for (size_t j = 0; j < a.size(); ++j) d.push_back(a[j] - b[j]);
    return is_zero(d);
}

ModElem FPModule::action(const Poly& a, const ModElem& m) const {
    if (a.vars() != base_.vars())
        throw VarMismatchError("scalar is not over the base ring");
    check_elem(m);
    ModElem r;
    for (const auto& c : m) r.push_back(a * c);
    return normal_form(r);
}

std::string FPModule::elem_to_string(const ModElem& e) const {
    std::ostringstream out;
    bool first = true;
    for (size_t j = 0; j < e.size(); ++j) {
        if (e[j].is_zero()) continue;
        if (!first) out << " + ";
        out << "(" << e[j].to_string() << ")*" << gens_[j];
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

std::string FPModule::to_string() const {
    std::ostringstream out;
    out << "module<";
    for (size_t j = 0; j < gens_.size(); ++j) {
        if (j) out << ",";
        out << gens_[j];
    }
    out << "> over " << base_.to_string();
    if (!rows_.empty()) {
        out << " / [";
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (i) out << "; ";
            out << elem_to_string(rows_[i]);
        }
        out << "]";
    }
    return out.str();
}

bool FPModule::operator==(const FPModule& o) const {
    return base_ == o.base_ && gens_ == o.gens_ && rows_ == o.rows_;
}

ModElem module_action(const Poly& a, const ModElem& m, const FPModule& M) {
    return M.action(a, m);
}

namespace {

ModuleRingExtension extend_by_gens(const FPModule& m, bool square_zero) {
    std::vector<std::string> vars = m.base().vars();
    std::vector<std::string> uvars;
    for (const auto& g : m.gens()) {
        std::string u = fresh_name(vars, g);
        vars.push_back(u);
        uvars.push_back(u);
    }
    std::vector<Poly> rels;
    for (const auto& p : m.base().generators()) rels.push_back(p.map_vars(vars));
    if (square_zero) {
        for (size_t i = 0; i < uvars.size(); ++i)
            for (size_t j = i; j < uvars.size(); ++j)
                rels.push_back(Poly::variable(vars, uvars[i]) *
                               Poly::variable(vars, uvars[j]));
    }
    for (const auto& row : m.relations()) {
        Poly p = Poly::zero(vars);
        for (size_t k = 0; k < row.size(); ++k)
            p = p + row[k].map_vars(vars) * Poly::variable(vars, uvars[k]);
        rels.push_back(p);
    }
    return {FPRing(std::move(vars), std::move(rels)), std::move(uvars)};
}

}  // namespace

ModuleRingExtension square_zero_extension(const FPModule& m) {
    return extend_by_gens(m, true);
}

ModuleRingExtension symmetric_algebra(const FPModule& m) {
    return extend_by_gens(m, false);
}

ModuleMorphism::ModuleMorphism(FPModule domain, FPModule codomain,
                               std::vector<ModElem> matrix)
    : ModuleMorphism(domain, std::move(codomain), RingMorphism::identity(domain.base()),
                     std::move(matrix)) {}

ModuleMorphism::ModuleMorphism(FPModule domain, FPModule codomain, RingMorphism base_map,
                               std::vector<ModElem> matrix)
    : dom_(std::move(domain)),
      cod_(std::move(codomain)),
      base_map_(std::move(base_map)),
      matrix_(std::move(matrix)) {
    if (base_map_.domain() != dom_.base() || base_map_.codomain() != cod_.base())
        throw SignatureMismatchError("base morphism does not match the module bases");
    if (matrix_.size() != dom_.gens().size())
        throw SignatureMismatchError("matrix has " + std::to_string(matrix_.size()) +
                                     " rows for " + std::to_string(dom_.gens().size()) +
                                     " domain generators");
    for (auto& img : matrix_) img = cod_.normal_form(img);
    for (const auto& row : dom_.relations()) {
        ModElem acc = cod_.zero_elem();
        for (size_t k = 0; k < row.size(); ++k) {
            Poly mapped = base_map_.apply(row[k]);
            for (size_t j = 0; j < acc.size(); ++j)
                acc[j] = acc[j] + mapped * matrix_[k][j];
        }
        if (!cod_.is_zero(acc))
            throw WellDefinednessError("domain relation " + dom_.elem_to_string(row) +
                                       " maps to " + cod_.elem_to_string(cod_.normal_form(acc)));
    }
}

ModuleMorphism ModuleMorphism::identity(const FPModule& m) {
    std::vector<ModElem> matrix;
    for (const auto& g : m.gens()) matrix.push_back(m.gen_elem(g));
    return ModuleMorphism(m, m, std::move(matrix));
}

ModElem ModuleMorphism::apply(const ModElem& e) const {
    ModElem acc = cod_.zero_elem();
    if (e.size() != matrix_.size())
        throw VarMismatchError("element shape does not match the domain");
    for (size_t k = 0; k < e.size(); ++k) {
        Poly mapped = base_map_.apply(e[k]);
        for (size_t j = 0; j < acc.size(); ++j)
            acc[j] = acc[j] + mapped * matrix_[k][j];
    }
    return cod_.normal_form(acc);
}

bool ModuleMorphism::operator==(const ModuleMorphism& o) const {
    if (dom_ != o.dom_ || cod_ != o.cod_) return false;
    if (!morphisms_equal(base_map_, o.base_map_)) return false;
    for (size_t k = 0; k < matrix_.size(); ++k)
        if (!cod_.elems_equal(matrix_[k], o.matrix_[k])) return false;
    return true;
}

ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
    if (f.codomain() != g.domain())
        throw SignatureMismatchError("module morphism composition signature mismatch");
    std::vector<ModElem> matrix;
    for (const auto& img : f.matrix()) matrix.push_back(g.apply(img));
    return ModuleMorphism(f.domain(), g.codomain(),
                          compose(g.base_map(), f.base_map()), std::move(matrix));
}

}  // namespace tancat
