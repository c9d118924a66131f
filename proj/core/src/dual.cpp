#include "tancat/dual.hpp"

namespace tancat {

namespace {

std::string pick_eps_name(const std::vector<std::string>& taken) {
    static const std::vector<std::string> candidates{"eps", "epsp", "eps3", "eps4",
                                                     "eps5", "eps6"};
    for (const auto& c : candidates)
        if (std::find(taken.begin(), taken.end(), c) == taken.end()) return c;
    return fresh_name(taken, "eps");
}

}  // namespace

DualTower dual_numbers(const FPRing& r) {
    std::string e = pick_eps_name(r.vars());
    std::vector<std::string> vars = r.vars();
    vars.push_back(e);
    std::vector<Poly> gens;
    for (const auto& g : r.generators()) gens.push_back(g.map_vars(vars));
    Poly ev = Poly::variable(vars, e);
    gens.push_back(ev * ev);
    return DualTower{r, 1, FPRing(vars, gens), {e}};
}

DualTower dual_tower(const FPRing& r, int height) {
    DualTower t{r, 0, r, {}};
    for (int k = 0; k < height; ++k) {
        DualTower next = dual_numbers(t.ring);
        t.height += 1;
        t.ring = next.ring;
        t.eps_names.push_back(next.eps_names[0]);
    }
    return t;
}

DualWidth dual_width(const FPRing& r, int n) {
    std::vector<std::string> vars = r.vars();
    std::vector<std::string> eps;
    for (int i = 1; i <= n; ++i) {
        std::string e = fresh_name(vars, "eps" + std::to_string(i));
        eps.push_back(e);
        vars.push_back(e);
    }
    std::vector<Poly> gens;
    for (const auto& g : r.generators()) gens.push_back(g.map_vars(vars));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            gens.push_back(Poly::variable(vars, eps[i]) * Poly::variable(vars, eps[j]));
    return DualWidth{r, n, FPRing(vars, gens), eps};
}

RingMorphism dual_proj(const DualTower& t) {
    std::vector<Poly> images;
    for (const auto& v : t.base.vars()) images.push_back(t.base.var(v));
    images.push_back(t.base.zero_poly());
    return RingMorphism(t.ring, t.base, std::move(images));
}

RingMorphism dual_zero(const DualTower& t) { return RingMorphism::renaming(t.base, t.ring); }

RingMorphism dual_neg(const DualTower& t) {
    std::vector<Poly> images;
    for (const auto& v : t.base.vars()) images.push_back(t.ring.var(v));
    images.push_back(-t.ring.var(t.top()));
    return RingMorphism(t.ring, t.ring, std::move(images));
}

RingMorphism dual_lift(const DualTower& tb, const DualTower& t2b) {
    std::vector<Poly> images;
    for (const auto& v : tb.base.vars()) images.push_back(t2b.ring.var(v));
    images.push_back(t2b.ring.var(tb.top()) * t2b.ring.var(t2b.top()));
    return RingMorphism(tb.ring, t2b.ring, std::move(images));
}

RingMorphism dual_flip(const DualTower& tb, const DualTower& t2b) {
    return RingMorphism::renaming(t2b.ring, t2b.ring,
                                  {{tb.top(), t2b.top()}, {t2b.top(), tb.top()}});
}

RingMorphism dual_sum(const DualWidth& w, const DualTower& tb) {
    std::vector<Poly> images;
    for (const auto& v : w.base.vars()) images.push_back(tb.ring.var(v));
    for (int i = 0; i < w.n; ++i) images.push_back(tb.ring.var(tb.top()));
    return RingMorphism(w.ring, tb.ring, std::move(images));
}

RingMorphism dual_pi(const DualWidth& w, const DualTower& tb, size_t j) {
    std::vector<Poly> images;
    for (const auto& v : w.base.vars()) images.push_back(tb.ring.var(v));
    for (size_t i = 0; i < static_cast<size_t>(w.n); ++i)
        images.push_back(i == j ? tb.ring.var(tb.top()) : tb.ring.zero_poly());
    return RingMorphism(w.ring, tb.ring, std::move(images));
}

RingMorphism width_inclusion(const DualWidth& w) {
    return RingMorphism::renaming(w.base, w.ring);
}

RingMorphism eps_embed(const DualTower& tb, const DualWidth& w, size_t j) {
    return RingMorphism::renaming(tb.ring, w.ring, {{tb.top(), w.eps_names.at(j)}});
}

RingMorphism apply_T(const RingMorphism& f, const DualTower& tdom, const DualTower& tcod) {
    if (tdom.base != f.domain() || tcod.base != f.codomain())
        throw SignatureMismatchError("apply_T: towers do not extend the morphism's ends");
    std::vector<Poly> images;
    for (const auto& im : f.images()) images.push_back(im.map_vars(tcod.ring.vars()));
    images.push_back(tcod.ring.var(tcod.top()));
    return RingMorphism(tdom.ring, tcod.ring, std::move(images));
}

RingMorphism fiber_tuple(const std::vector<RingMorphism>& maps,
                         const std::vector<RingMorphism>& embs,
                         const RingMorphism& shared, const RingMorphism& embS) {
    if (maps.empty() || maps.size() != embs.size())
        throw SignatureMismatchError("fiber_tuple: component count mismatch");
    const FPRing& dom = maps[0].domain();
    const FPRing& target = embs[0].codomain();
    std::vector<Poly> images;
    for (size_t i = 0; i < dom.vars().size(); ++i) {
        Poly acc = target.zero_poly();
        for (size_t k = 0; k < maps.size(); ++k)
            acc = acc + embs[k].apply(maps[k].images()[i]);
        Poly common = embS.apply(shared.images()[i]);
        acc = acc - common.scale(Rational(static_cast<int>(maps.size()) - 1));
        images.push_back(target.normal_form(acc));
    }
    return RingMorphism(dom, target, std::move(images));
}

DualStructure dual_structure(const FPRing& r) {
    DualTower ta = dual_numbers(r);
    DualTower t2a = dual_numbers(ta.ring);
    DualWidth w2 = dual_width(r, 2);
    return DualStructure{r,
                         dual_proj(ta),
                         dual_sum(w2, ta),
                         dual_zero(ta),
                         dual_neg(ta),
                         dual_lift(ta, t2a),
                         dual_flip(ta, t2a)};
}

RingMorphism nu(const FPRing& r) {
    DualStructure s = dual_structure(r);
    DualTower ta = dual_numbers(r);
    DualTower t2a = dual_numbers(ta.ring);
    DualWidth w2 = dual_width(r, 2);
    DualTower tw2 = dual_numbers(w2.ring);

    RingMorphism pi1 = dual_pi(w2, ta, 0), pi2 = dual_pi(w2, ta, 1);
    RingMorphism u = compose(s.lift, pi1);
    RingMorphism v = compose(dual_zero(t2a), pi2);
    RingMorphism tp = apply_T(s.proj, t2a, ta);
    RingMorphism emb1 = apply_T(eps_embed(ta, w2, 0), t2a, tw2);
    RingMorphism emb2 = apply_T(eps_embed(ta, w2, 1), t2a, tw2);
    RingMorphism embS = RingMorphism::renaming(ta.ring, tw2.ring, {{ta.top(), tw2.top()}});
    RingMorphism pair = fiber_tuple({u, v}, {emb1, emb2}, compose(tp, u), embS);
    RingMorphism tsum = apply_T(s.sum, tw2, t2a);
    return compose(tsum, pair);
}

AxiomReport check_tangent_axioms(const DualStructure& s) {
    const FPRing& a = s.a;
    DualTower ta = dual_numbers(a);
    DualTower t2a = dual_numbers(ta.ring);
    DualTower t3a = dual_numbers(t2a.ring);
    DualWidth w2 = dual_width(a, 2);
    DualWidth w3 = dual_width(a, 3);
    DualTower tw2 = dual_numbers(w2.ring);
    DualWidth w2t = dual_width(ta.ring, 2);

    const RingMorphism& p = s.proj;
    const RingMorphism& sum = s.sum;
    const RingMorphism& zero = s.zero;
    const RingMorphism& neg = s.neg;
    const RingMorphism& lift = s.lift;
    const RingMorphism& flip = s.flip;

    RingMorphism id_a = RingMorphism::identity(a);
    RingMorphism id_ta = RingMorphism::identity(ta.ring);
    RingMorphism id_t2a = RingMorphism::identity(t2a.ring);

    RingMorphism tp = apply_T(p, t2a, ta);
    RingMorphism pt = dual_proj(t2a);
    RingMorphism tsum = apply_T(sum, tw2, t2a);
    RingMorphism tzero = apply_T(zero, ta, t2a);
    RingMorphism tneg = apply_T(neg, t2a, t2a);
    RingMorphism tlift = apply_T(lift, t2a, t3a);
    RingMorphism tflip = apply_T(flip, t3a, t3a);
    RingMorphism lift_t = dual_lift(t2a, t3a);
    RingMorphism flip_t = dual_flip(t2a, t3a);
    RingMorphism sum_t = dual_sum(w2t, t2a);
    RingMorphism zero_t = dual_zero(t2a);
    RingMorphism neg_t = dual_neg(t2a);

    RingMorphism pi1 = dual_pi(w2, ta, 0), pi2 = dual_pi(w2, ta, 1);
    RingMorphism q1 = dual_pi(w3, ta, 0), q2 = dual_pi(w3, ta, 1), q3 = dual_pi(w3, ta, 2);
    RingMorphism tpi1 = apply_T(pi1, tw2, t2a), tpi2 = apply_T(pi2, tw2, t2a);

    // pairing into T_2(A) over p
    auto a2 = [&](const RingMorphism& f, const RingMorphism& g) {
        return fiber_tuple({f, g}, {eps_embed(ta, w2, 0), eps_embed(ta, w2, 1)},
                           compose(p, f), width_inclusion(w2));
    };
    // pairing into T(T_2(A)) over T(p)
    auto b2 = [&](const RingMorphism& u, const RingMorphism& v) {
        RingMorphism emb1 = apply_T(eps_embed(ta, w2, 0), t2a, tw2);
        RingMorphism emb2 = apply_T(eps_embed(ta, w2, 1), t2a, tw2);
        RingMorphism embS =
            RingMorphism::renaming(ta.ring, tw2.ring, {{ta.top(), tw2.top()}});
        return fiber_tuple({u, v}, {emb1, emb2}, compose(tp, u), embS);
    };
    // pairing into T_2(T(A)) over p_T(A)
    auto c2 = [&](const RingMorphism& u, const RingMorphism& v) {
        RingMorphism emb1 =
            RingMorphism::renaming(t2a.ring, w2t.ring, {{t2a.top(), w2t.eps_names[0]}});
        RingMorphism emb2 =
            RingMorphism::renaming(t2a.ring, w2t.ring, {{t2a.top(), w2t.eps_names[1]}});
        return fiber_tuple({u, v}, {emb1, emb2}, compose(pt, u), width_inclusion(w2t));
    };

    AxiomReport rep;
    auto record = [&rep](const std::string& id, auto&& build) {
        try {
            auto [lhs, rhs] = build();
            rep.record(id, lhs, rhs);
        } catch (const std::exception& e) {
            rep.checks.push_back({id, false, std::string("construction failed: ") + e.what()});
        }
    };
    using MP = std::pair<RingMorphism, RingMorphism>;

    record("T1.sum-proj.1", [&] { return MP{compose(p, sum), compose(p, pi1)}; });
    record("T1.sum-proj.2", [&] { return MP{compose(p, sum), compose(p, pi2)}; });
    record("T1.zero-proj", [&] { return MP{compose(p, zero), id_a}; });
    record("T1.sum-assoc", [&] {
        return MP{compose(sum, a2(compose(sum, a2(q1, q2)), q3)),
                  compose(sum, a2(q1, compose(sum, a2(q2, q3))))};
    });
    record("T1.sum-unit.left",
           [&] { return MP{compose(sum, a2(compose(zero, p), id_ta)), id_ta}; });
    record("T1.sum-unit.right",
           [&] { return MP{compose(sum, a2(id_ta, compose(zero, p))), id_ta}; });
    record("T1.sum-comm", [&] { return MP{compose(sum, a2(pi2, pi1)), sum}; });

    record("T2.lift-proj", [&] { return MP{compose(tp, lift), compose(zero, p)}; });
    record("T2.lift-sum", [&] {
        return MP{compose(tsum, b2(compose(lift, pi1), compose(lift, pi2))),
                  compose(lift, sum)};
    });
    record("T2.lift-zero", [&] { return MP{compose(lift, zero), compose(tzero, zero)}; });

    record("T3.flip-proj", [&] { return MP{compose(pt, flip), tp}; });
    record("T3.flip-sum", [&] {
        return MP{compose(sum_t, c2(compose(flip, tpi1), compose(flip, tpi2))),
                  compose(flip, tsum)};
    });
    record("T3.flip-zero", [&] { return MP{compose(flip, tzero), zero_t}; });

    record("T4.involution", [&] { return MP{compose(flip, flip), id_t2a}; });
    record("T4.yang-baxter", [&] {
        return MP{compose(flip_t, compose(tflip, flip_t)),
                  compose(tflip, compose(flip_t, tflip))};
    });

    record("T5.lift-lift", [&] { return MP{compose(lift_t, lift), compose(tlift, lift)}; });
    record("T5.flip-lift", [&] { return MP{compose(flip, lift), lift}; });
    record("T5.flip-lift-swap", [&] {
        return MP{compose(flip_t, compose(tflip, lift_t)), compose(tlift, flip)};
    });

    record("T6.square", [&] {
        RingMorphism nu_s =
            compose(tsum, b2(compose(lift, pi1), compose(zero_t, pi2)));
        return MP{compose(tp, nu_s), compose(zero, compose(p, pi1))};
    });

    record("TN.neg-proj", [&] { return MP{compose(p, neg), p}; });
    record("TN.neg-left",
           [&] { return MP{compose(sum, a2(neg, id_ta)), compose(zero, p)}; });
    record("TN.neg-right",
           [&] { return MP{compose(sum, a2(id_ta, neg)), compose(zero, p)}; });
    record("TN.lift-neg", [&] { return MP{compose(tneg, lift), compose(lift, neg)}; });
    record("TN.flip-neg", [&] { return MP{compose(neg_t, flip), compose(flip, tneg)}; });

    return rep;
}

AxiomReport check_tangent_axioms(const FPRing& r) {
    return check_tangent_axioms(dual_structure(r));
}

VectorFieldDual make_vector_field(const FPRing& r, const RingMorphism& section) {
    DualTower ta = dual_numbers(r);
    if (section.domain() != r || section.codomain() != ta.ring)
        throw SignatureMismatchError("vector field must map R into its dual numbers");
    if (!morphisms_equal(compose(dual_proj(ta), section), RingMorphism::identity(r)))
        throw WellDefinednessError("section does not split the projection");
    return VectorFieldDual{r, section};
}

Derivation vf_to_derivation(const VectorFieldDual& v) {
    DualTower ta = dual_numbers(v.ring);
    std::vector<Poly> images;
    for (const auto& x : v.ring.vars()) {
        Poly c = v.section.image_of(x).coefficient_of_linear(ta.top());
        images.push_back(v.ring.normal_form(c.map_vars(v.ring.vars())));
    }
    return Derivation(v.ring, std::move(images));
}

VectorFieldDual derivation_to_vf(const Derivation& d) {
    DualTower ta = dual_numbers(d.ring());
    std::vector<Poly> images;
    for (size_t i = 0; i < d.ring().vars().size(); ++i) {
        Poly base = ta.ring.var(d.ring().vars()[i]);
        Poly de = d.images()[i].map_vars(ta.ring.vars()) * ta.ring.var(ta.top());
        images.push_back(ta.ring.normal_form(base + de));
    }
    return make_vector_field(d.ring(), RingMorphism(d.ring(), ta.ring, std::move(images)));
}

}  // namespace tancat
