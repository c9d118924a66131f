/*
 * derivation.hpp
 * --------------
 * Derivations on finitely presented rings, their Leibniz extension to
 * arbitrary elements, and the Lie bracket.
 */
#pragma once

#include "tancat/ring.hpp"

namespace tancat {

class Derivation {
public:
    // images[i] = D(x_i).  Well-definedness on the quotient is checked:
    // the Leibniz extension of every relation must normal-form to zero.
    Derivation(FPRing ring, std::vector<Poly> images);

    static Derivation zero(const FPRing& r);

    const FPRing& ring() const { return ring_; }
    const std::vector<Poly>& images() const { return images_; }

    bool operator==(const Derivation& o) const {
        return ring_ == o.ring_ && images_ == o.images_;
    }

private:
    FPRing ring_;
    std::vector<Poly> images_;
};

// normal_form(sum_i dp/dx_i * D(x_i))
Poly leibniz_extend(const Derivation& d, const Poly& p);

// [D1, D2] = D1 o D2 - D2 o D1 on generators, re-checked as a derivation.
Derivation lie_bracket(const Derivation& d1, const Derivation& d2);

}  // namespace tancat
