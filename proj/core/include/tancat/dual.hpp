/*
 * dual.hpp
 * --------
 * The dual-numbers tangent structure on finitely presented rings:
 * T(R) = R[eps]/(eps^2), its towers and n-fold fibre powers, the six
 * structure morphisms, the vertical-lift comparison map nu, the
 * [T.1]-[T.6]/[T.N] diagram checker, and the vector-field/derivation
 * correspondence.
 *
 * Nilpotent variable names come from the list eps, epsp, eps3, eps4...
 * (eps' printed as epsp), freshened against the base ring's variables.
 */
#pragma once

#include "tancat/derivation.hpp"
#include "tancat/report.hpp"

namespace tancat {

// T^height(base); eps_names lists the nilpotent added per level, inner first.
struct DualTower {
    FPRing base;
    int height = 0;
    FPRing ring;
    std::vector<std::string> eps_names;

    const std::string& top() const { return eps_names.back(); }
};

// T_n(base) = fibre product of n copies of the projection: mutual
// annihilation eps_i * eps_j = 0 for all pairs, including i = j.
struct DualWidth {
    FPRing base;
    int n = 0;
    FPRing ring;
    std::vector<std::string> eps_names;
};

DualTower dual_numbers(const FPRing& r);
DualTower dual_tower(const FPRing& r, int height);
DualWidth dual_width(const FPRing& r, int n);

// Structure morphisms at the top level of a tower.
RingMorphism dual_proj(const DualTower& t);                           // T(B) -> B
RingMorphism dual_zero(const DualTower& t);                           // B -> T(B)
RingMorphism dual_neg(const DualTower& t);                            // T(B) -> T(B)
RingMorphism dual_lift(const DualTower& tb, const DualTower& t2b);    // T(B) -> T^2(B)
RingMorphism dual_flip(const DualTower& tb, const DualTower& t2b);    // swap top two
RingMorphism dual_sum(const DualWidth& w, const DualTower& tb);       // T_2(B) -> T(B)
RingMorphism dual_pi(const DualWidth& w, const DualTower& tb, size_t j);
RingMorphism width_inclusion(const DualWidth& w);                     // B -> T_n(B)
RingMorphism eps_embed(const DualTower& tb, const DualWidth& w, size_t j);

// T applied to f, given one-level extensions of both ends.
RingMorphism apply_T(const RingMorphism& f, const DualTower& tdom, const DualTower& tcod);

// Pairing into a materialized fibre product: the unique map whose
// composite with projection k is maps[k].  embs[k] embeds maps[k]'s
// codomain into the fibre product, shared is the common base composite
// and embS embeds its codomain.  The image of x is
// sum_k embs[k](maps[k](x)) - (n-1) * embS(shared(x)).
RingMorphism fiber_tuple(const std::vector<RingMorphism>& maps,
                         const std::vector<RingMorphism>& embs,
                         const RingMorphism& shared, const RingMorphism& embS);

// The [T.6] comparison map T_2(R) -> T^2(R).
RingMorphism nu(const FPRing& r);

// Base-level components of the tangent structure, replaceable for
// negative-control experiments.  Higher-level components inside the
// checker are always built canonically from the towers.
struct DualStructure {
    FPRing a;
    RingMorphism proj, sum, zero, neg, lift, flip;
};

DualStructure dual_structure(const FPRing& r);
AxiomReport check_tangent_axioms(const DualStructure& s);
AxiomReport check_tangent_axioms(const FPRing& r);

// Vector fields: sections of the projection.
struct VectorFieldDual {
    FPRing ring;
    RingMorphism section;  // ring -> T(ring), proj . section = id (checked)
};

VectorFieldDual make_vector_field(const FPRing& r, const RingMorphism& section);
Derivation vf_to_derivation(const VectorFieldDual& v);
VectorFieldDual derivation_to_vf(const Derivation& d);

}  // namespace tancat
