#include "tancat/derivation.hpp"

#include "tancat/morphism.hpp"

namespace tancat {

namespace {

Poly raw_extend(const FPRing& r, const std::vector<Poly>& images, const Poly& p) {
    Poly acc = r.zero_poly();
    for (size_t i = 0; i < r.vars().size(); ++i)
        acc = acc + p.derivative(i) * images[i];
    return r.normal_form(acc);
}

}  // namespace

Derivation::Derivation(FPRing ring, std::vector<Poly> images)
    : ring_(std::move(ring)), images_(std::move(images)) {
    if (images_.size() != ring_.vars().size())
        throw SignatureMismatchError("image count does not match variable count");
    for (auto& im : images_) {
        if (im.vars() != ring_.vars())
            throw VarMismatchError("derivation image over wrong variable list");
        im = ring_.normal_form(im);
    }
    for (const auto& rel : ring_.generators()) {
        Poly v = raw_extend(ring_, images_, rel);
        if (!v.is_zero())
            throw WellDefinednessError("derivation does not kill relation " + rel.to_string() +
                                       " (value " + v.to_string() + ")");
    }
}

Derivation Derivation::zero(const FPRing& r) {
    return Derivation(r, std::vector<Poly>(r.vars().size(), r.zero_poly()));
}

Poly leibniz_extend(const Derivation& d, const Poly& p) {
    if (p.vars() != d.ring().vars())
        throw VarMismatchError("element over wrong variable list");
    return raw_extend(d.ring(), d.images(), p);
}

Derivation lie_bracket(const Derivation& d1, const Derivation& d2) {
    if (d1.ring() != d2.ring()) throw SignatureMismatchError("derivations on different rings");
    std::vector<Poly> images;
    for (size_t i = 0; i < d1.ring().vars().size(); ++i)
        images.push_back(d1.ring().normal_form(leibniz_extend(d1, d2.images()[i]) -
                                               leibniz_extend(d2, d1.images()[i])));
    return Derivation(d1.ring(), std::move(images));
}

}  // namespace tancat
