/*
 * fpmodule.hpp
 * ------------
 * Finitely presented modules over FPRings: generators plus relation
 * rows, module-element normal forms over the quotient ring, module
 * morphisms (optionally across a base-ring morphism), and the two ring
 * constructions built from a module -- the square-zero extension M[eps]
 * and the symmetric algebra Sym_R(M).
 *
 * Element equality is decided for presentations whose relation rows
 * fall into the triangular fragment: per pivot column, either a single
 * row (normalized to a monic pivot) or several rows each supported on
 * that column alone.  Other presentations raise UndecidedError; no
 * general syzygy computation is attempted.
 */
#pragma once

#include "tancat/morphism.hpp"

namespace tancat {

struct UndecidedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A module element: one coefficient Poly (over base vars) per generator.
using ModElem = std::vector<Poly>;

class FPModule {
public:
    FPModule(FPRing base, std::vector<std::string> gens, std::vector<ModElem> rows);

    static FPModule free(FPRing base, std::vector<std::string> gens);
    // Free of the given rank with default names: "u" for rank 1,
    // "u_1".."u_n" otherwise.
    static FPModule free_rank(FPRing base, size_t rank);
    // Rows given as polynomial strings over base.vars, one vector per row.
    static FPModule cokernel(FPRing base, std::vector<std::string> gens,
                             const std::vector<std::vector<std::string>>& rows);

    const FPRing& base() const { return base_; }
    const std::vector<std::string>& gens() const { return gens_; }
    const std::vector<ModElem>& relations() const { return rows_; }

    ModElem zero_elem() const;
    ModElem gen_elem(const std::string& name) const;
    ModElem parse_elem(const std::vector<std::string>& coeffs) const;

    // Coefficient normal forms followed by triangular reduction against
    // the relation rows.  Throws UndecidedError outside the fragment.
    ModElem normal_form(const ModElem& e) const;
    bool is_zero(const ModElem& e) const;
    bool elems_equal(const ModElem& a, const ModElem& b) const;

    // The action a . m: scale every coefficient and reduce.
    ModElem action(const Poly& a, const ModElem& m) const;

    std::string elem_to_string(const ModElem& e) const;
    std::string to_string() const;

    // Presentation equality: same base, generator names, and rows.
    bool operator==(const FPModule& o) const;
    bool operator!=(const FPModule& o) const { return !(*this == o); }

private:
    FPRing base_;
    std::vector<std::string> gens_;
    std::vector<ModElem> rows_;

    // Triangular reduction plan, one entry per pivot column in
    // increasing order.  For a shared column the rows must be supported
    // on that column alone and reduction is ideal membership against
    // basis (a Groebner basis of the ring ideal plus the pivots); for a
    // lone row with a tail, reduction tracks the pivot quotient and
    // propagates it into the later columns.
    struct PlanEntry {
        size_t col;
        std::vector<Poly> basis;   // shared column: GB(ring ideal + pivots)
        ModElem row;               // lone row, monic pivot; empty basis
    };
    std::vector<PlanEntry> plan_;
    std::string undecided_;  // nonempty: fragment violation message

    void build_plan();
    void check_elem(const ModElem& e) const;
};

ModElem module_action(const Poly& a, const ModElem& m, const FPModule& M);

// M[eps] / Sym_R(M): the base presentation extended by one ring
// variable per module generator (fresh "u"-style names kept in uvars,
// parallel to M.gens()).  The square-zero extension adds all pairwise
// nilpotency relations u_i u_j = 0; the symmetric algebra keeps only
// the linear relation rows.
struct ModuleRingExtension {
    FPRing ring;
    std::vector<std::string> uvars;
};

ModuleRingExtension square_zero_extension(const FPModule& m);
ModuleRingExtension symmetric_algebra(const FPModule& m);

// R-linear map (or (g, f) pair of the MOD category when base_map is not
// the identity): matrix rows give the image of each domain generator as
// a codomain combination.  Construction checks that every domain
// relation row maps to zero in the codomain module.
class ModuleMorphism {
public:
    ModuleMorphism(FPModule domain, FPModule codomain, std::vector<ModElem> matrix);
    ModuleMorphism(FPModule domain, FPModule codomain, RingMorphism base_map,
                   std::vector<ModElem> matrix);

    static ModuleMorphism identity(const FPModule& m);

    const FPModule& domain() const { return dom_; }
    const FPModule& codomain() const { return cod_; }
    const RingMorphism& base_map() const { return base_map_; }
    const std::vector<ModElem>& matrix() const { return matrix_; }

    ModElem apply(const ModElem& e) const;

    bool operator==(const ModuleMorphism& o) const;
    bool operator!=(const ModuleMorphism& o) const { return !(*this == o); }

private:
    FPModule dom_, cod_;
    RingMorphism base_map_;
    std::vector<ModElem> matrix_;
};

// compose(g, f) = g after f; f's codomain must equal g's domain.
ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f);

}  // namespace tancat
