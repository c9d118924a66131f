#include "tancat/kahler.hpp"

namespace tancat {

namespace {

// Formal differential in the base directions of an extension: the base
// variables occupy the leading block of t.ring.vars().
Poly diff_in(const Poly& p, const KahlerTangent& t) {
    Poly out = Poly::zero(t.ring.vars());
    for (size_t i = 0; i < t.base.vars().size(); ++i)
        out = out + p.derivative(i) * Poly::variable(t.ring.vars(), t.dvars[i]);
    return out;
}

std::string plain_var_name(const Poly& p) {
    const auto& vars = p.vars();
    if (p.terms().size() == 1) {
        const auto& [e, c] = *p.terms().begin();
        if (c == 1 && total_degree(e) == 1) {
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] == 1) return vars[i];
        }
    }
    throw SignatureMismatchError("pushout injection image is not a variable: " + p.to_string());
}

void set_leg_image(std::map<std::string, Poly>& m, const FPRing& cod, const std::string& name,
                   const Poly& value) {
    auto it = m.find(name);
    if (it == m.end()) {
        m.emplace(name, value);
    } else if (!cod.is_zero_in_ring(it->second - value)) {
        throw WellDefinednessError("copairing legs disagree on shared variable " + name);
    }
}

}  // namespace

const std::string& KahlerTangent::d_of(const std::string& v) const {
    for (size_t i = 0; i < base.vars().size(); ++i)
        if (base.vars()[i] == v) return dvars[i];
    throw VarMismatchError("no differential for variable " + v);
}

KahlerTangent kahler_ext(const FPRing& base, const std::vector<std::string>& dnames) {
    if (dnames.size() != base.vars().size())
        throw SignatureMismatchError("one differential name per base variable required");
    std::vector<std::string> vars = base.vars();
    vars.insert(vars.end(), dnames.begin(), dnames.end());
    KahlerTangent t{base, FPRing(), dnames};
    std::vector<Poly> gens;
    for (const auto& g : base.generators()) gens.push_back(g.map_vars(vars));
    t.ring = FPRing::free(vars);  // temporary, only to give diff_in its shape
    std::vector<Poly> full = gens;
    for (const auto& g : gens) {
        Poly dg = diff_in(g, t);
        if (!dg.is_zero()) full.push_back(dg);
    }
    t.ring = FPRing(vars, full);
    return t;
}

KahlerTangent kahler_ext_auto(const FPRing& base) {
    std::vector<std::string> taken = base.vars();
    std::vector<std::string> dnames;
    for (const auto& v : base.vars()) {
        std::string n = fresh_name(taken, "d_" + v);
        dnames.push_back(n);
        taken.push_back(n);
    }
    return kahler_ext(base, dnames);
}

KahlerTangent kahler_tangent(const FPRing& r) { return kahler_ext_auto(r); }

std::vector<KahlerTangent> kahler_chain(const FPRing& r, int height) {
    static const std::vector<std::string> tokens{"d", "dp", "dq"};
    if (height < 1 || height > static_cast<int>(tokens.size()))
        throw SignatureMismatchError("kahler_chain supports heights 1 to 3");
    // decomposition of each current variable into (operator word, base name)
    std::vector<std::pair<std::string, std::string>> words;
    std::vector<std::string> taken = r.vars();
    for (const auto& v : r.vars()) words.emplace_back("", v);

    std::vector<KahlerTangent> chain;
    FPRing cur = r;
    for (int k = 0; k < height; ++k) {
        std::vector<std::pair<std::string, std::string>> next_words = words;
        std::vector<std::string> dnames;
        for (const auto& [w, b] : words) {
            std::string word = tokens[k] + w;
            std::string n = fresh_name(taken, word + "_" + b);
            dnames.push_back(n);
            taken.push_back(n);
            next_words.emplace_back(word, b);
        }
        chain.push_back(kahler_ext(cur, dnames));
        cur = chain.back().ring;
        words = std::move(next_words);
    }
    return chain;
}

KahlerSquare kahler_square(const FPRing& r) {
    auto chain = kahler_chain(r, 2);
    return KahlerSquare{r, chain[1].ring, chain[0], chain[1]};
}

Poly total_differential(const Poly& p, const FPRing& base) {
    KahlerTangent t = kahler_tangent(base);
    return diff_in(p.map_vars(t.ring.vars()), t);
}

Poly second_differential(const Poly& p, const FPRing& base) {
    auto chain = kahler_chain(base, 2);
    Poly dp = diff_in(p.map_vars(chain[0].ring.vars()), chain[0]);
    return diff_in(dp.map_vars(chain[1].ring.vars()), chain[1]);
}

RingMorphism kahler_proj(const KahlerTangent& t) {
    return RingMorphism::renaming(t.base, t.ring);
}

RingMorphism kahler_zero(const KahlerTangent& t) {
    std::vector<Poly> images;
    for (const auto& v : t.base.vars()) images.push_back(t.base.var(v));
    for (size_t i = 0; i < t.dvars.size(); ++i) images.push_back(t.base.zero_poly());
    return RingMorphism(t.ring, t.base, std::move(images));
}

RingMorphism kahler_neg(const KahlerTangent& t) {
    std::vector<Poly> images;
    for (const auto& v : t.base.vars()) images.push_back(t.ring.var(v));
    for (const auto& d : t.dvars) images.push_back(-t.ring.var(d));
    return RingMorphism(t.ring, t.ring, std::move(images));
}

RingMorphism kahler_lift(const KahlerTangent& t1, const KahlerTangent& t2) {
    if (t2.base != t1.ring)
        throw SignatureMismatchError("kahler_lift: second extension must extend the first");
    size_t n = t1.base.vars().size();
    std::vector<Poly> images;
    for (const auto& v : t1.base.vars()) images.push_back(t1.ring.var(v));
    for (size_t i = 0; i < n; ++i) images.push_back(t1.ring.zero_poly());
    // t2.dvars follow t2.base.vars() = t1.base.vars() + t1.dvars
    for (size_t i = 0; i < n; ++i) images.push_back(t1.ring.zero_poly());
    for (size_t i = 0; i < n; ++i) images.push_back(t1.ring.var(t1.dvars[i]));
    return RingMorphism(t2.ring, t1.ring, std::move(images));
}

RingMorphism kahler_flip(const KahlerTangent& t1, const KahlerTangent& t2) {
    if (t2.base != t1.ring)
        throw SignatureMismatchError("kahler_flip: second extension must extend the first");
    std::map<std::string, std::string> renames;
    for (size_t i = 0; i < t1.base.vars().size(); ++i) {
        renames[t1.dvars[i]] = t2.dvars[i];
        renames[t2.dvars[i]] = t1.dvars[i];
    }
    return RingMorphism::renaming(t2.ring, t2.ring, renames);
}

RingMorphism kahler_sum(const KahlerTangent& t, const TensorResult& w2) {
    std::vector<Poly> images;
    for (const auto& v : t.base.vars()) images.push_back(w2.inj1.image_of(v));
    for (const auto& d : t.dvars)
        images.push_back(w2.ring.normal_form(w2.inj1.image_of(d) + w2.inj2.image_of(d)));
    return RingMorphism(t.ring, w2.ring, std::move(images));
}

RingMorphism kahler_apply_T(const RingMorphism& f, const KahlerTangent& tdom,
                            const KahlerTangent& tcod) {
    if (tdom.base != f.domain() || tcod.base != f.codomain())
        throw SignatureMismatchError("kahler_apply_T: extensions do not match the morphism");
    std::vector<Poly> images;
    for (const auto& im : f.images()) images.push_back(im.map_vars(tcod.ring.vars()));
    for (const auto& im : f.images()) {
        Poly d = diff_in(im.map_vars(tcod.ring.vars()), tcod);
        images.push_back(tcod.ring.normal_form(d));
    }
    return RingMorphism(tdom.ring, tcod.ring, std::move(images));
}

RingMorphism pushout_copair(const TensorResult& w, const FPRing& factor_src,
                            const RingMorphism& f, const RingMorphism& g) {
    if (f.codomain() != g.codomain())
        throw SignatureMismatchError("copairing legs must share a codomain");
    std::map<std::string, Poly> m;
    for (const auto& v : factor_src.vars())
        set_leg_image(m, f.codomain(), plain_var_name(w.inj1.image_of(v)), f.image_of(v));
    for (const auto& v : factor_src.vars())
        set_leg_image(m, f.codomain(), plain_var_name(w.inj2.image_of(v)), g.image_of(v));
    return RingMorphism::by_names(w.ring, f.codomain(), m);
}

RingMorphism pushout_copair_T(const KahlerTangent& tw, const TensorResult& w,
                              const KahlerTangent& tfac, const RingMorphism& f,
                              const RingMorphism& g) {
    if (f.codomain() != g.codomain())
        throw SignatureMismatchError("copairing legs must share a codomain");
    std::map<std::string, Poly> m;
    auto leg = [&](const RingMorphism& inj, const RingMorphism& h) {
        for (const auto& v : tfac.base.vars()) {
            std::string n = plain_var_name(inj.image_of(v));
            set_leg_image(m, h.codomain(), n, h.image_of(v));
            set_leg_image(m, h.codomain(), tw.d_of(n), h.image_of(tfac.d_of(v)));
        }
    };
    leg(w.inj1, f);
    leg(w.inj2, g);
    return RingMorphism::by_names(tw.ring, f.codomain(), m);
}

KahlerStructure co_structure(const FPRing& r) {
    KahlerSquare sq = kahler_square(r);
    const KahlerTangent& t = sq.t1;
    RingMorphism p = kahler_proj(t);
    TensorResult w2 = tensor_over(r, t.ring, t.ring, p, p);
    return KahlerStructure{r,
                           t,
                           sq,
                           w2,
                           p,
                           kahler_sum(t, w2),
                           kahler_zero(t),
                           kahler_neg(t),
                           kahler_lift(sq.t1, sq.t2),
                           kahler_flip(sq.t1, sq.t2)};
}

// Every tangent-axiom diagram, with composites reversed into the ring
// direction and fibre-product tuples replaced by pushout copairings.
// Diagram ids match the dual-numbers checker so the two sides report
// symmetrically.
AxiomReport check_costructure_axioms(const KahlerStructure& s) {
    const FPRing& a = s.a;
    auto chain = kahler_chain(a, 3);
    const KahlerTangent& t1 = chain[0];
    const KahlerTangent& t2e = chain[1];
    const KahlerTangent& t3e = chain[2];
    const TensorResult& w2 = s.w2;

    const RingMorphism& p = s.proj;
    const RingMorphism& sum = s.sum;
    const RingMorphism& zero = s.zero;
    const RingMorphism& neg = s.neg;
    const RingMorphism& lift = s.lift;
    const RingMorphism& flip = s.flip;

    RingMorphism id_a = RingMorphism::identity(a);
    RingMorphism id_t = RingMorphism::identity(t1.ring);
    RingMorphism id_t2 = RingMorphism::identity(t2e.ring);

    KahlerTangent tw2 = kahler_ext_auto(w2.ring);
    RingMorphism p_t = kahler_proj(t2e);
    TensorResult w2t = tensor_over(t1.ring, t2e.ring, t2e.ring, p_t, p_t);
    TensorResult w3 = tensor_over(a, w2.ring, t1.ring, compose(w2.inj1, p), p);
    RingMorphism j1 = compose(w3.inj1, w2.inj1);
    RingMorphism j2 = compose(w3.inj1, w2.inj2);
    const RingMorphism& j3 = w3.inj2;

    RingMorphism tp = kahler_apply_T(p, t1, t2e);
    RingMorphism tz = kahler_apply_T(zero, t2e, t1);
    RingMorphism tn = kahler_apply_T(neg, t2e, t2e);
    RingMorphism ts = kahler_apply_T(sum, t2e, tw2);
    RingMorphism tl = kahler_apply_T(lift, t3e, t2e);
    RingMorphism tc = kahler_apply_T(flip, t3e, t3e);
    RingMorphism ti1 = kahler_apply_T(w2.inj1, t2e, tw2);
    RingMorphism ti2 = kahler_apply_T(w2.inj2, t2e, tw2);

    RingMorphism z_t = kahler_zero(t2e);
    RingMorphism n_t = kahler_neg(t2e);
    RingMorphism s_t = kahler_sum(t2e, w2t);
    RingMorphism l_t = kahler_lift(t2e, t3e);
    RingMorphism c_t = kahler_flip(t2e, t3e);

    auto cp = [&](const RingMorphism& f, const RingMorphism& g) {
        return pushout_copair(w2, t1.ring, f, g);
    };
    auto cp_t = [&](const RingMorphism& f, const RingMorphism& g) {
        return pushout_copair_T(tw2, w2, t2e, f, g);
    };
    auto cp_w2t = [&](const RingMorphism& f, const RingMorphism& g) {
        return pushout_copair(w2t, t2e.ring, f, g);
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

    record("T1.sum-proj.1", [&] { return MP{compose(sum, p), compose(w2.inj1, p)}; });
    record("T1.sum-proj.2", [&] { return MP{compose(sum, p), compose(w2.inj2, p)}; });
    record("T1.zero-proj", [&] { return MP{compose(zero, p), id_a}; });
    record("T1.sum-assoc", [&] {
        return MP{compose(cp(compose(cp(j1, j2), sum), j3), sum),
                  compose(cp(j1, compose(cp(j2, j3), sum)), sum)};
    });
    record("T1.sum-unit.left",
           [&] { return MP{compose(cp(compose(p, zero), id_t), sum), id_t}; });
    record("T1.sum-unit.right",
           [&] { return MP{compose(cp(id_t, compose(p, zero)), sum), id_t}; });
    record("T1.sum-comm", [&] { return MP{compose(cp(w2.inj2, w2.inj1), sum), sum}; });

    record("T2.lift-proj", [&] { return MP{compose(lift, tp), compose(p, zero)}; });
    record("T2.lift-sum", [&] {
        return MP{compose(cp_t(compose(w2.inj1, lift), compose(w2.inj2, lift)), ts),
                  compose(sum, lift)};
    });
    record("T2.lift-zero", [&] { return MP{compose(zero, lift), compose(zero, tz)}; });

    record("T3.flip-proj", [&] { return MP{compose(flip, p_t), tp}; });
    record("T3.flip-sum", [&] {
        return MP{compose(cp_w2t(compose(ti1, flip), compose(ti2, flip)), s_t),
                  compose(ts, flip)};
    });
    record("T3.flip-zero", [&] { return MP{compose(tz, flip), z_t}; });

    record("T4.involution", [&] { return MP{compose(flip, flip), id_t2}; });
    record("T4.yang-baxter", [&] {
        return MP{compose(c_t, compose(tc, c_t)), compose(tc, compose(c_t, tc))};
    });

    record("T5.lift-lift", [&] { return MP{compose(lift, l_t), compose(lift, tl)}; });
    record("T5.flip-lift", [&] { return MP{compose(lift, flip), lift}; });
    record("T5.flip-lift-swap", [&] {
        return MP{compose(l_t, compose(tc, c_t)), compose(flip, tl)};
    });

    record("T6.square", [&] {
        RingMorphism nu_s =
            compose(cp_t(compose(w2.inj1, lift), compose(w2.inj2, z_t)), ts);
        return MP{compose(nu_s, tp), compose(w2.inj1, compose(p, zero))};
    });

    record("TN.neg-proj", [&] { return MP{compose(neg, p), p}; });
    record("TN.neg-left", [&] { return MP{compose(cp(neg, id_t), sum), compose(p, zero)}; });
    record("TN.neg-right", [&] { return MP{compose(cp(id_t, neg), sum), compose(p, zero)}; });
    record("TN.lift-neg", [&] { return MP{compose(neg, lift), compose(lift, tn)}; });
    record("TN.flip-neg", [&] { return MP{compose(tn, flip), compose(flip, n_t)}; });

    return rep;
}

AxiomReport check_costructure_axioms(const FPRing& r) {
    return check_costructure_axioms(co_structure(r));
}

TangentSpace tangent_space_at(const FPRing& r, const std::vector<Rational>& coords) {
    if (coords.size() != r.vars().size())
        throw InvalidPointError("coordinate count does not match variable count");
    FPRing ambient = FPRing::free(r.vars());
    std::vector<std::string> taken = r.vars();
    std::vector<std::string> dnames;
    for (const auto& v : r.vars()) {
        std::string n = fresh_name(taken, "d_" + v);
        dnames.push_back(n);
        taken.push_back(n);
    }
    Point free_pt(ambient, coords);
    std::vector<Poly> rels;
    for (const auto& g : r.generators()) {
        Poly lin = Poly::zero(dnames);
        for (size_t i = 0; i < r.vars().size(); ++i) {
            Rational c = evaluate(g.derivative(i).map_vars(ambient.vars()), free_pt);
            if (c != 0) lin = lin + Poly::variable(dnames, dnames[i]).scale(c);
        }
        if (!lin.is_zero()) rels.push_back(lin);
    }
    return TangentSpace{r, coords, FPRing(dnames, rels)};
}

TangentSpace tangent_space_at(const FPRing& r, const Point& pt) {
    if (pt.ring() != r) throw SignatureMismatchError("point lies on a different ring");
    return tangent_space_at(r, pt.coords());
}

RingMorphism sharp(const RingMorphism& f, const KahlerTangent& tr, const DualTower& tcod) {
    if (f.domain() != tr.base || f.codomain() != tcod.ring)
        throw SignatureMismatchError("sharp: expected f: R -> dual numbers of R'");
    const std::string& eps = tcod.top();
    const FPRing& rp = tcod.base;
    std::vector<Poly> values, dvalues;
    for (const auto& v : tr.base.vars()) {
        Poly im = tcod.ring.normal_form(f.image_of(v));
        values.push_back(rp.normal_form(im.drop_terms_in(eps).map_vars(rp.vars())));
        dvalues.push_back(rp.normal_form(im.coefficient_of_linear(eps).map_vars(rp.vars())));
    }
    values.insert(values.end(), dvalues.begin(), dvalues.end());
    return RingMorphism(tr.ring, rp, std::move(values));
}

RingMorphism flat(const RingMorphism& g, const KahlerTangent& tr, const DualTower& tcod) {
    if (g.domain() != tr.ring || g.codomain() != tcod.base)
        throw SignatureMismatchError("flat: expected g: T(R) -> R'");
    std::vector<Poly> images;
    for (const auto& v : tr.base.vars()) {
        Poly a = g.image_of(v).map_vars(tcod.ring.vars());
        Poly b = g.image_of(tr.d_of(v)).map_vars(tcod.ring.vars());
        images.push_back(tcod.ring.normal_form(a + b * tcod.ring.var(tcod.top())));
    }
    return RingMorphism(tr.base, tcod.ring, std::move(images));
}

}  // namespace tancat
