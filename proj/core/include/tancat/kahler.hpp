/*
 * kahler.hpp
 * ----------
 * The Kahler-differentials tangent structure on the opposite of the
 * category of finitely presented rings.  T(R) adjoins one formal
 * differential d_x per variable and differentiates every relation;
 * iterating gives T^2 and T^3 with operator-word names dp_x, dpd_x,
 * dq_x, ...  All structure morphisms run in the ring direction, so a
 * tangent-category diagram is checked by composing the reversed arrows
 * and comparing generator images modulo the ideal.
 */
#pragma once

#include "tancat/dual.hpp"

namespace tancat {

// One-level extension R -> R[d(x_i)] / (rels, d(rels)).
// dvars is parallel to base.vars().
struct KahlerTangent {
    FPRing base;
    FPRing ring;
    std::vector<std::string> dvars;

    const std::string& d_of(const std::string& v) const;
};

// T^2(R) as the extension chain R -> t1.ring -> ring.
struct KahlerSquare {
    FPRing base;
    FPRing ring;
    KahlerTangent t1, t2;  // t2.ring == ring, t2.base == t1.ring
};

struct TangentSpace {
    FPRing base;
    std::vector<Rational> coords;
    FPRing ring;  // over the d-variables only; relations linear
};

// d(p) = sum_i dp/dx_i * d_x_i over base.vars + d-names.
Poly total_differential(const Poly& p, const FPRing& base);
// d'(d(p)) over base.vars + d + dp + dpd names.
Poly second_differential(const Poly& p, const FPRing& base);

// Extension with explicit differential names (dnames parallel to vars).
KahlerTangent kahler_ext(const FPRing& base, const std::vector<std::string>& dnames);
// Extension with default "d_" + name differentials, freshened.
KahlerTangent kahler_ext_auto(const FPRing& base);

KahlerTangent kahler_tangent(const FPRing& r);
KahlerSquare kahler_square(const FPRing& r);
// Extension chain of the given height (1..3): d, dp, dq operator words.
std::vector<KahlerTangent> kahler_chain(const FPRing& r, int height);

// Structure morphisms, ring direction.
RingMorphism kahler_proj(const KahlerTangent& t);   // R -> T(R)
RingMorphism kahler_zero(const KahlerTangent& t);   // T(R) -> R, d |-> 0
RingMorphism kahler_neg(const KahlerTangent& t);    // T(R) -> T(R), d |-> -d
// T^2(R) -> T(R): d,dp |-> 0, dpd |-> d.  t2 extends t1.ring.
RingMorphism kahler_lift(const KahlerTangent& t1, const KahlerTangent& t2);
// T^2(R) -> T^2(R): d <-> dp, dpd fixed.
RingMorphism kahler_flip(const KahlerTangent& t1, const KahlerTangent& t2);
// T(R) -> T(R) (x)_R T(R): d |-> d^(1) + d^(2); w2 is the pushout of
// two copies of kahler_proj(t).
RingMorphism kahler_sum(const KahlerTangent& t, const TensorResult& w2);

// T applied to f: A -> B, given one-level extensions of both ends:
// x |-> f(x), d(x) |-> d(f(x)).
RingMorphism kahler_apply_T(const RingMorphism& f, const KahlerTangent& tdom,
                            const KahlerTangent& tcod);

// Copairing out of a pushout of two copies of factor_src: the unique
// map restricting to f on the first copy and g on the second.  Throws
// WellDefinednessError if the legs disagree on an identified variable.
RingMorphism pushout_copair(const TensorResult& w, const FPRing& factor_src,
                            const RingMorphism& f, const RingMorphism& g);
// Copairing out of T(pushout): tw extends w.ring, tfac extends the
// factor; legs f, g are defined on tfac.ring.
RingMorphism pushout_copair_T(const KahlerTangent& tw, const TensorResult& w,
                              const KahlerTangent& tfac, const RingMorphism& f,
                              const RingMorphism& g);

// Base-level co-structure components, replaceable for negative controls.
struct KahlerStructure {
    FPRing a;
    KahlerTangent t;
    KahlerSquare sq;
    TensorResult w2;
    RingMorphism proj, sum, zero, neg, lift, flip;
};

KahlerStructure co_structure(const FPRing& r);
AxiomReport check_costructure_axioms(const KahlerStructure& s);
AxiomReport check_costructure_axioms(const FPRing& r);

// Formal evaluation of the differentiated relations at the given
// coordinates.  The coordinate overload does not require the point to
// lie on the variety (the source material evaluates formally); the
// Point overload is strict because Point construction validates.
TangentSpace tangent_space_at(const FPRing& r, const std::vector<Rational>& coords);
TangentSpace tangent_space_at(const FPRing& r, const Point& pt);

// Transposes between the two structures.  f: R -> Tbar(R') goes to
// f#: T(R) -> R' with f#(x) = f_1(x), f#(d x) = f_2(x); g: T(R) -> R'
// goes to gb: R -> Tbar(R') with gb(x) = g(x) + g(d x) * eps.
RingMorphism sharp(const RingMorphism& f, const KahlerTangent& tr, const DualTower& tcod);
RingMorphism flat(const RingMorphism& g, const KahlerTangent& tr, const DualTower& tcod);

}  // namespace tancat
