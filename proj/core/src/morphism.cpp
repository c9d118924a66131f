#include "tancat/morphism.hpp"

#include <algorithm>

namespace tancat {

RingMorphism::RingMorphism(FPRing domain, FPRing codomain, std::vector<Poly> images)
    : dom_(std::move(domain)), cod_(std::move(codomain)), images_(std::move(images)) {
    if (images_.size() != dom_.vars().size())
        throw SignatureMismatchError("image count does not match domain variable count");
    for (auto& im : images_) {
        if (im.vars() != cod_.vars())
            throw VarMismatchError("image over wrong variable list");
        im = cod_.normal_form(im);
    }
    for (const auto& rel : dom_.generators()) {
        Poly image = cod_.normal_form(rel.substitute(images_));
        if (!image.is_zero())
            throw WellDefinednessError("relation " + rel.to_string() +
                                       " maps to nonzero " + image.to_string());
    }
}

RingMorphism RingMorphism::identity(const FPRing& r) {
    std::vector<Poly> images;
    for (const auto& v : r.vars()) images.push_back(r.var(v));
    return RingMorphism(r, r, std::move(images));
}

RingMorphism RingMorphism::by_names(const FPRing& domain, const FPRing& codomain,
                                    const std::map<std::string, Poly>& images) {
    std::vector<Poly> v;
    for (const auto& x : domain.vars()) {
        auto it = images.find(x);
        if (it == images.end())
            throw SignatureMismatchError("no image given for variable " + x);
        v.push_back(it->second);
    }
    if (images.size() != domain.vars().size())
        throw SignatureMismatchError("image given for a variable not in the domain");
    return RingMorphism(domain, codomain, std::move(v));
}

RingMorphism RingMorphism::renaming(const FPRing& domain, const FPRing& codomain,
                                    const std::map<std::string, std::string>& renames) {
    std::vector<Poly> images;
    for (const auto& x : domain.vars()) {
        auto it = renames.find(x);
        images.push_back(codomain.var(it == renames.end() ? x : it->second));
    }
    return RingMorphism(domain, codomain, std::move(images));
}

const Poly& RingMorphism::image_of(const std::string& var) const {
    auto it = std::find(dom_.vars().begin(), dom_.vars().end(), var);
    if (it == dom_.vars().end()) throw VarMismatchError("unknown variable: " + var);
    return images_[static_cast<size_t>(it - dom_.vars().begin())];
}

Poly RingMorphism::apply(const Poly& p) const {
    if (p.vars() != dom_.vars()) throw VarMismatchError("element over wrong variable list");
    if (dom_.vars().empty()) return cod_.normal_form(Poly::constant(cod_.vars(), p.constant_value()));
    return cod_.normal_form(p.substitute(images_));
}

RingMorphism compose(const RingMorphism& g, const RingMorphism& f) {
    if (f.codomain() != g.domain())
        throw SignatureMismatchError("compose: middle presentations differ");
    std::vector<Poly> images;
    images.reserve(f.images().size());
    for (const auto& im : f.images()) images.push_back(g.apply(im));
    return RingMorphism(f.domain(), g.codomain(), std::move(images));
}

std::vector<MorphismDiff> morphism_differences(const RingMorphism& f, const RingMorphism& g) {
    if (f.domain() != g.domain() || f.codomain() != g.codomain())
        throw SignatureMismatchError("parallel morphisms expected");
    std::vector<MorphismDiff> out;
    for (size_t i = 0; i < f.images().size(); ++i) {
        Poly a = f.codomain().normal_form(f.images()[i]);
        Poly b = f.codomain().normal_form(g.images()[i]);
        if (a != b) out.push_back({f.domain().vars()[i], a, b});
    }
    return out;
}

bool morphisms_equal(const RingMorphism& f, const RingMorphism& g) {
    return morphism_differences(f, g).empty();
}

TensorResult tensor_over(const FPRing& base, const FPRing& e1, const FPRing& e2,
                         const RingMorphism& q1, const RingMorphism& q2) {
    if (q1.domain() != base || q2.domain() != base || q1.codomain() != e1 || q2.codomain() != e2)
        throw SignatureMismatchError("tensor_over: structure map signatures do not match");

    auto as_plain_var = [](const Poly& p) -> std::optional<std::string> {
        if (p.terms().size() != 1) return std::nullopt;
        const auto& [m, c] = *p.terms().begin();
        if (c != 1 || total_degree(m) != 1) return std::nullopt;
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] == 1) return p.vars()[i];
        return std::nullopt;
    };

    std::vector<std::string> vars = e1.vars();
    // name of the result variable carrying each e2 variable
    std::map<std::string, std::string> e2_to_result;
    for (size_t j = 0; j < e2.vars().size(); ++j) {
        const std::string& w = e2.vars()[j];
        std::string target;
        for (size_t b = 0; b < base.vars().size() && target.empty(); ++b) {
            auto qw = as_plain_var(q2.images()[b]);
            if (!qw || *qw != w) continue;
            auto qv = as_plain_var(q1.images()[b]);
            if (qv) target = *qv;  // identified with the e1 copy
        }
        if (target.empty()) {
            target = fresh_name(vars, w);
            vars.push_back(target);
        }
        e2_to_result[w] = target;
    }

    std::vector<Poly> e2_images;
    for (const auto& w : e2.vars())
        e2_images.push_back(Poly::variable(vars, e2_to_result.at(w)));

    std::vector<Poly> rels;
    for (const auto& r : e1.generators()) rels.push_back(r.map_vars(vars));
    for (const auto& r : e2.generators()) {
        Poly lifted = e2.vars().empty() ? Poly::constant(vars, r.constant_value())
                                        : r.substitute(e2_images);
        rels.push_back(lifted);
    }
    for (size_t b = 0; b < base.vars().size(); ++b) {
        Poly lhs = q1.images()[b].map_vars(vars);
        Poly rhs = e2.vars().empty()
                       ? Poly::constant(vars, q2.images()[b].constant_value())
                       : q2.images()[b].substitute(e2_images);
        Poly glue = lhs - rhs;
        if (!glue.is_zero()) rels.push_back(glue);
    }

    FPRing ring(vars, rels);

    std::vector<Poly> i1_images;
    for (const auto& v : e1.vars()) i1_images.push_back(ring.var(v));
    std::vector<Poly> i2_images;
    for (const auto& w : e2.vars()) i2_images.push_back(ring.var(e2_to_result.at(w)));

    return TensorResult{ring, RingMorphism(e1, ring, std::move(i1_images)),
                        RingMorphism(e2, ring, std::move(i2_images))};
}

}  // namespace tancat
