/*
 * morphism.hpp
 * ------------
 * Ring morphisms between finite presentations as generator-image maps.
 * Construction checks well-definedness (every domain relation must
 * normal-form to zero after substitution), so an ill-defined morphism
 * cannot exist behind the public interface.  Every commuting-diagram
 * check in the engine reduces to morphisms_equal.
 */
#pragma once

#include "tancat/ring.hpp"

#include <map>

namespace tancat {

struct WellDefinednessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SignatureMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class RingMorphism {
public:
    RingMorphism(FPRing domain, FPRing codomain, std::vector<Poly> images);

    static RingMorphism identity(const FPRing& r);
    // Images given by domain variable name; unspecified variables are an error.
    static RingMorphism by_names(const FPRing& domain, const FPRing& codomain,
                                 const std::map<std::string, Poly>& images);
    // Variables mapped by name: each domain variable goes to the codomain
    // variable of the same name unless renames says otherwise.
    static RingMorphism renaming(const FPRing& domain, const FPRing& codomain,
                                 const std::map<std::string, std::string>& renames = {});

    const FPRing& domain() const { return dom_; }
    const FPRing& codomain() const { return cod_; }
    const std::vector<Poly>& images() const { return images_; }
    const Poly& image_of(const std::string& var) const;

    // Substitute and reduce: the action on an arbitrary element.
    Poly apply(const Poly& p) const;

private:
    FPRing dom_, cod_;
    std::vector<Poly> images_;
};

// compose(g, f) = g after f; requires f.codomain == g.domain as presentations.
RingMorphism compose(const RingMorphism& g, const RingMorphism& f);

bool morphisms_equal(const RingMorphism& f, const RingMorphism& g);

// Variables on which two parallel morphisms disagree, with both normal forms.
struct MorphismDiff {
    std::string var;
    Poly lhs, rhs;
};
std::vector<MorphismDiff> morphism_differences(const RingMorphism& f, const RingMorphism& g);

// Pushout presentation of e1 <- base -> e2.  Variables of e2 that are the
// literal image of a base variable mapped to a literal variable by q1 are
// identified with their e1 counterparts; remaining collisions get "__2"
// style suffixes.  Relations: both factors' plus q1(b) - q2(b) glue.
struct TensorResult {
    FPRing ring;
    RingMorphism inj1, inj2;
};
TensorResult tensor_over(const FPRing& base, const FPRing& e1, const FPRing& e2,
                         const RingMorphism& q1, const RingMorphism& q2);

}  // namespace tancat
