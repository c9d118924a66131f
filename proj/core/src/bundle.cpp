#include "tancat/bundle.hpp"

namespace tancat {

namespace {

std::string plain_var(const Poly& p) {
    const auto& vars = p.vars();
    if (p.terms().size() == 1) {
        const auto& [e, c] = *p.terms().begin();
        if (c == 1 && total_degree(e) == 1) {
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] == 1) return vars[i];
        }
    }
    throw NotSplitFormError("expected a literal variable, got " + p.to_string());
}

// Split presentation data: the base <-> ring-variable correspondence
// induced by incl and the linear relation rows over the base.
struct Split {
    std::map<std::string, std::string> to_base;  // ring variable -> base variable
    std::vector<ModElem> rows;
};

Poly into_total(const Poly& base_poly, const RingMorphism& incl) {
    return base_poly.substitute(incl.images());
}

Poly project_to_base(const Poly& total_poly, const Split& sp, const FPRing& base,
                     const FPRing& total) {
    std::vector<Poly> images;
    for (const auto& v : total.vars()) {
        auto it = sp.to_base.find(v);
        images.push_back(it == sp.to_base.end() ? base.zero_poly() : base.var(it->second));
    }
    return base.normal_form(total_poly.substitute(images));
}

Split classify_rows(BundleSide side, const FPRing& base, const FPRing& total,
                    const std::vector<std::string>& ring_vars,
                    const std::vector<std::string>& module_vars, const RingMorphism& incl) {
    if (incl.domain() != base || incl.codomain() != total)
        throw SignatureMismatchError("split classification: inclusion must map base to total");
    if (ring_vars.size() + module_vars.size() != total.vars().size())
        throw NotSplitFormError("variable partition does not cover the total ring");
    std::map<std::string, int> kind;  // 0 = ring var, 1 = module var
    for (const auto& v : ring_vars) kind[v] = 0;
    for (const auto& v : module_vars) {
        if (kind.count(v)) throw NotSplitFormError("variable in both partition blocks: " + v);
        kind[v] = 1;
    }
    for (const auto& v : total.vars())
        if (!kind.count(v)) throw NotSplitFormError("unpartitioned total variable: " + v);

    Split sp;
    for (size_t i = 0; i < base.vars().size(); ++i) {
        std::string name = plain_var(incl.images()[i]);
        if (!kind.count(name) || kind[name] != 0)
            throw NotSplitFormError("base maps onto non-ring variable " + name);
        if (sp.to_base.count(name))
            throw NotSplitFormError("base variables collide on " + name);
        sp.to_base[name] = base.vars()[i];
    }
    if (sp.to_base.size() != ring_vars.size())
        throw NotSplitFormError("base does not cover the ring-variable block");

    std::vector<size_t> midx;
    for (size_t i = 0; i < total.vars().size(); ++i)
        if (kind[total.vars()[i]] == 1) midx.push_back(i);

    for (const auto& g : total.generators()) {
        if (g.is_zero()) continue;
        bool any0 = false, any1 = false, anyhi = false;
        for (const auto& [e, c] : g.terms()) {
            int d = 0;
            for (size_t i : midx) d += e[i];
            (d == 0 ? any0 : d == 1 ? any1 : anyhi) = true;
        }
        if (any0 && !any1 && !anyhi) {
            if (!base.is_zero_in_ring(project_to_base(g, sp, base, total)))
                throw NotSplitFormError("ring-variable relation outside the base ideal: " +
                                        g.to_string());
        } else if (any1 && !any0 && !anyhi) {
            ModElem row;
            for (const auto& m : module_vars)
                row.push_back(project_to_base(g.coefficient_of_linear(m), sp, base, total));
            sp.rows.push_back(std::move(row));
        } else if (anyhi && !any0 && !any1) {
            // pure higher-degree consequence; covered by the checks below
        } else {
            throw NotSplitFormError("mixed-degree relation: " + g.to_string());
        }
    }

    if (side == BundleSide::RING) {
        for (size_t i = 0; i < module_vars.size(); ++i)
            for (size_t j = i; j < module_vars.size(); ++j)
                if (!total.is_zero_in_ring(total.var(module_vars[i]) *
                                           total.var(module_vars[j])))
                    throw NotSplitFormError("module variables are not square-zero: " +
                                            module_vars[i] + "*" + module_vars[j]);
    }

    // The read-off data must regenerate the total ideal exactly.
    std::vector<Poly> rels;
    for (const auto& bg : base.generators()) rels.push_back(into_total(bg, incl));
    for (const auto& row : sp.rows) {
        Poly p = total.zero_poly();
        for (size_t k = 0; k < row.size(); ++k)
            p = p + into_total(row[k], incl) * total.var(module_vars[k]);
        rels.push_back(p);
    }
    if (side == BundleSide::RING) {
        for (size_t i = 0; i < module_vars.size(); ++i)
            for (size_t j = i; j < module_vars.size(); ++j)
                rels.push_back(total.var(module_vars[i]) * total.var(module_vars[j]));
    }
    if (!ideal_equal(total, FPRing(total.vars(), rels)))
        throw NotSplitFormError("partition data does not regenerate the total ideal");
    return sp;
}

// Width-n object on the RING side: n - 1 fresh copies of the module
// variables, each satisfying the relation rows, with mutual
// annihilation across all copies.
struct WidthRing {
    FPRing ring;
    std::vector<std::vector<std::string>> copies;  // copies[0] = module_vars
};

WidthRing make_width_ring(const FPRing& base, const FPRing& total,
                          const std::vector<std::string>& module_vars,
                          const RingMorphism& incl, const std::vector<ModElem>& rows, int n) {
    std::vector<std::string> vars = total.vars();
    std::vector<std::vector<std::string>> copies{module_vars};
    for (int j = 1; j < n; ++j) {
        std::vector<std::string> copy;
        for (const auto& m : module_vars) {
            std::string nm = fresh_name(vars, m);
            vars.push_back(nm);
            copy.push_back(nm);
        }
        copies.push_back(std::move(copy));
    }
    std::vector<Poly> rels;
    for (const auto& bg : base.generators())
        rels.push_back(into_total(bg, incl).map_vars(vars));
    for (const auto& copy : copies)
        for (const auto& row : rows) {
            Poly p = Poly::zero(vars);
            for (size_t k = 0; k < row.size(); ++k)
                p = p + into_total(row[k], incl).map_vars(vars) * Poly::variable(vars, copy[k]);
            rels.push_back(p);
        }
    std::vector<std::string> all;
    for (const auto& copy : copies) all.insert(all.end(), copy.begin(), copy.end());
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i; j < all.size(); ++j)
            rels.push_back(Poly::variable(vars, all[i]) * Poly::variable(vars, all[j]));
    return WidthRing{FPRing(std::move(vars), std::move(rels)), std::move(copies)};
}

// Projection width-n -> total keeping copy j, and the copy embeddings.
RingMorphism width_pi(const WidthRing& w, const FPRing& total,
                      const std::vector<std::string>& module_vars, size_t j) {
    std::map<std::string, Poly> images;
    for (const auto& v : total.vars()) images.emplace(v, total.var(v));
    for (size_t c = 0; c < w.copies.size(); ++c)
        for (size_t k = 0; k < module_vars.size(); ++k)
            images[w.copies[c][k]] = c == j ? total.var(module_vars[k]) : total.zero_poly();
    return RingMorphism::by_names(w.ring, total, images);
}

RingMorphism width_emb(const WidthRing& w, const FPRing& total,
                       const std::vector<std::string>& module_vars, size_t j) {
    std::map<std::string, std::string> renames;
    for (size_t k = 0; k < module_vars.size(); ++k) renames[module_vars[k]] = w.copies[j][k];
    return RingMorphism::renaming(total, w.ring, renames);
}

using MP = std::pair<RingMorphism, RingMorphism>;

template <typename Build>
void record_diagram(AxiomReport& rep, const std::string& id, Build&& build) {
    try {
        auto [lhs, rhs] = build();
        rep.record(id, lhs, rhs);
    } catch (const std::exception& e) {
        rep.checks.push_back({id, false, std::string("construction failed: ") + e.what()});
    }
}

// ---- RING-side diagram machinery -----------------------------------

struct RingScene {
    const DiffBundle& b;
    DualTower tE, t2E, tA, tE2;
    RingMorphism pi1, pi2;

    explicit RingScene(const DiffBundle& bb)
        : b(bb),
          tE(dual_numbers(bb.total())),
          t2E(dual_numbers(tE.ring)),
          tA(dual_numbers(bb.base())),
          tE2(dual_numbers(bb.width2().ring)),
          pi1(bb.width2_pi(0)),
          pi2(bb.width2_pi(1)) {}

    // Tuple into E2 of two legs with the given common base composite.
    RingMorphism pair2(const RingMorphism& f, const RingMorphism& g,
                       const RingMorphism& shared) const {
        return fiber_tuple({f, g}, {b.width2().inj1, b.width2().inj2}, shared,
                           compose(b.width2().inj1, b.z()));
    }
    // Tuple into T(E2) of two legs E? -> T(E) over T(q).
    RingMorphism pairT2(const RingMorphism& u, const RingMorphism& v,
                        const RingMorphism& sharedTA) const {
        RingMorphism e1 = apply_T(b.width2().inj1, tE, tE2);
        RingMorphism e2 = apply_T(b.width2().inj2, tE, tE2);
        RingMorphism eS = apply_T(compose(b.width2().inj1, b.z()), tA, tE2);
        return fiber_tuple({u, v}, {e1, e2}, sharedTA, eS);
    }

    RingMorphism mu_map() const {
        RingMorphism lp1 = compose(b.lambda(), pi1);
        RingMorphism leg2 = compose(dual_zero(tE), pi2);
        RingMorphism shared = compose(apply_T(b.q(), tE, tA), lp1);
        return compose(apply_T(b.sigma(), tE2, tE), pairT2(lp1, leg2, shared));
    }
};

AxiomReport check_ring(const DiffBundle& b) {
    RingScene s(b);
    const FPRing& A = b.base();
    const FPRing& E = b.total();
    const RingMorphism &q = b.q(), &sig = b.sigma(), &z = b.z(), &lam = b.lambda(),
                       &iot = b.iota();
    RingMorphism id_A = RingMorphism::identity(A);
    RingMorphism id_E = RingMorphism::identity(E);
    RingMorphism zero_A = dual_zero(s.tA);
    RingMorphism zero_E = dual_zero(s.tE);
    RingMorphism proj_E = dual_proj(s.tE);
    RingMorphism Tq = apply_T(q, s.tE, s.tA);
    RingMorphism Tz = apply_T(z, s.tA, s.tE);
    RingMorphism Tlam = apply_T(lam, s.tE, s.t2E);
    RingMorphism lift = dual_lift(s.tE, s.t2E);
    DualWidth wd2 = dual_width(E, 2);
    RingMorphism sum2 = dual_sum(wd2, s.tE);
    auto pairW = [&](const RingMorphism& u, const RingMorphism& v,
                     const RingMorphism& sharedE) {
        return fiber_tuple({u, v}, {eps_embed(s.tE, wd2, 0), eps_embed(s.tE, wd2, 1)},
                           sharedE, width_inclusion(wd2));
    };
    RingMorphism lp1 = compose(lam, s.pi1), lp2 = compose(lam, s.pi2);

    AxiomReport rep;
    record_diagram(rep, "DB1.proj-sum.1", [&] { return MP{compose(q, sig), compose(q, s.pi1)}; });
    record_diagram(rep, "DB1.proj-sum.2", [&] { return MP{compose(q, sig), compose(q, s.pi2)}; });
    record_diagram(rep, "DB1.proj-zero", [&] { return MP{compose(q, z), id_A}; });
    record_diagram(rep, "DB1.sum-assoc", [&] {
        Split sp = classify_rows(BundleSide::RING, A, E, b.ring_vars(), b.module_vars(), z);
        WidthRing w3 = make_width_ring(A, E, b.module_vars(), z, sp.rows, 3);
        RingMorphism p1 = width_pi(w3, E, b.module_vars(), 0);
        RingMorphism p2 = width_pi(w3, E, b.module_vars(), 1);
        RingMorphism p3 = width_pi(w3, E, b.module_vars(), 2);
        RingMorphism in12 = s.pair2(p1, p2, compose(q, p1));
        RingMorphism in23 = s.pair2(p2, p3, compose(q, p2));
        return MP{compose(sig, s.pair2(compose(sig, in12), p3, compose(q, p3))),
                  compose(sig, s.pair2(p1, compose(sig, in23), compose(q, p1)))};
    });
    record_diagram(rep, "DB1.sum-unit.left",
                   [&] { return MP{compose(sig, s.pair2(compose(z, q), id_E, q)), id_E}; });
    record_diagram(rep, "DB1.sum-unit.right",
                   [&] { return MP{compose(sig, s.pair2(id_E, compose(z, q), q)), id_E}; });
    record_diagram(rep, "DB1.sum-comm", [&] {
        return MP{compose(sig, s.pair2(s.pi2, s.pi1, compose(q, s.pi1))), sig};
    });

    record_diagram(rep, "DB2.lift-proj",
                   [&] { return MP{compose(Tq, lam), compose(zero_A, q)}; });
    record_diagram(rep, "DB2.lift-sum", [&] {
        RingMorphism t = s.pairT2(lp1, lp2, compose(Tq, lp1));
        return MP{compose(apply_T(sig, s.tE2, s.tE), t), compose(lam, sig)};
    });
    record_diagram(rep, "DB2.lift-zero",
                   [&] { return MP{compose(lam, z), compose(Tz, zero_A)}; });

    record_diagram(rep, "DB3.lift-proj2",
                   [&] { return MP{compose(proj_E, lam), compose(z, q)}; });
    record_diagram(rep, "DB3.lift-sum2", [&] {
        RingMorphism t = pairW(lp1, lp2, compose(proj_E, lp1));
        return MP{compose(sum2, t), compose(lam, sig)};
    });
    record_diagram(rep, "DB3.lift-zero2",
                   [&] { return MP{compose(zero_E, z), compose(lam, z)}; });

    record_diagram(rep, "DB4.lift-lift",
                   [&] { return MP{compose(Tlam, lam), compose(lift, lam)}; });

    record_diagram(rep, "DB5.mu-square.1", [&] {
        return MP{compose(Tq, s.mu_map()), compose(zero_A, compose(q, s.pi1))};
    });
    record_diagram(rep, "DB5.mu-square.2", [&] {
        return MP{compose(Tq, s.mu_map()), compose(zero_A, compose(q, s.pi2))};
    });

    record_diagram(rep, "DN.proj-neg", [&] { return MP{compose(q, iot), q}; });
    record_diagram(rep, "DN.neg-left", [&] {
        return MP{compose(sig, s.pair2(iot, id_E, q)), compose(z, q)};
    });
    record_diagram(rep, "DN.neg-right", [&] {
        return MP{compose(sig, s.pair2(id_E, iot, q)), compose(z, q)};
    });
    return rep;
}

// ---- AFFINE-side diagram machinery ---------------------------------

struct AffineScene {
    const DiffBundle& b;
    std::vector<KahlerTangent> chain;  // T(E), T^2(E)
    KahlerTangent tA, tE2;

    explicit AffineScene(const DiffBundle& bb)
        : b(bb),
          chain(kahler_chain(bb.total(), 2)),
          tA(kahler_tangent(bb.base())),
          tE2(kahler_ext_auto(bb.width2().ring)) {}

    const KahlerTangent& t1() const { return chain[0]; }
    const KahlerTangent& t2() const { return chain[1]; }

    RingMorphism cp(const RingMorphism& f, const RingMorphism& g) const {
        return pushout_copair(b.width2(), b.total(), f, g);
    }
    RingMorphism cpT(const RingMorphism& f, const RingMorphism& g) const {
        return pushout_copair_T(tE2, b.width2(), t1(), f, g);
    }

    RingMorphism mu_map() const {
        RingMorphism leg1 = compose(b.width2().inj1, b.lambda());
        RingMorphism leg2 = compose(b.width2().inj2, kahler_zero(t1()));
        return compose(cpT(leg1, leg2), kahler_apply_T(b.sigma(), t1(), tE2));
    }
};

AxiomReport check_affine(const DiffBundle& b) {
    AffineScene s(b);
    const FPRing& A = b.base();
    const FPRing& E = b.total();
    const RingMorphism &q = b.q(), &sig = b.sigma(), &z = b.z(), &lam = b.lambda(),
                       &iot = b.iota();
    const RingMorphism &i1 = b.width2().inj1, &i2 = b.width2().inj2;
    RingMorphism id_A = RingMorphism::identity(A);
    RingMorphism id_E = RingMorphism::identity(E);
    RingMorphism zero_A = kahler_zero(s.tA);
    RingMorphism zero_E = kahler_zero(s.t1());
    RingMorphism proj_E = kahler_proj(s.t1());
    RingMorphism Tq = kahler_apply_T(q, s.tA, s.t1());
    RingMorphism Tz = kahler_apply_T(z, s.t1(), s.tA);
    RingMorphism Tlam = kahler_apply_T(lam, s.t2(), s.t1());
    RingMorphism lift = kahler_lift(s.t1(), s.t2());
    RingMorphism li1 = compose(i1, lam), li2 = compose(i2, lam);

    AxiomReport rep;
    record_diagram(rep, "DB1.proj-sum.1", [&] { return MP{compose(sig, q), compose(i1, q)}; });
    record_diagram(rep, "DB1.proj-sum.2", [&] { return MP{compose(sig, q), compose(i2, q)}; });
    record_diagram(rep, "DB1.proj-zero", [&] { return MP{compose(z, q), id_A}; });
    record_diagram(rep, "DB1.sum-assoc", [&] {
        TensorResult w3 = tensor_over(A, b.width2().ring, E, compose(i1, q), q);
        RingMorphism j1 = compose(w3.inj1, i1);
        RingMorphism j2 = compose(w3.inj1, i2);
        const RingMorphism& j3 = w3.inj2;
        return MP{compose(s.cp(compose(s.cp(j1, j2), sig), j3), sig),
                  compose(s.cp(j1, compose(s.cp(j2, j3), sig)), sig)};
    });
    record_diagram(rep, "DB1.sum-unit.left",
                   [&] { return MP{compose(s.cp(compose(q, z), id_E), sig), id_E}; });
    record_diagram(rep, "DB1.sum-unit.right",
                   [&] { return MP{compose(s.cp(id_E, compose(q, z)), sig), id_E}; });
    record_diagram(rep, "DB1.sum-comm",
                   [&] { return MP{compose(s.cp(i2, i1), sig), sig}; });

    record_diagram(rep, "DB2.lift-proj",
                   [&] { return MP{compose(lam, Tq), compose(q, zero_A)}; });
    record_diagram(rep, "DB2.lift-sum", [&] {
        return MP{compose(s.cpT(li1, li2), kahler_apply_T(sig, s.t1(), s.tE2)),
                  compose(sig, lam)};
    });
    record_diagram(rep, "DB2.lift-zero",
                   [&] { return MP{compose(z, lam), compose(zero_A, Tz)}; });

    record_diagram(rep, "DB3.lift-proj2",
                   [&] { return MP{compose(lam, proj_E), compose(q, z)}; });
    record_diagram(rep, "DB3.lift-sum2", [&] {
        TensorResult w2t = tensor_over(E, s.t1().ring, s.t1().ring, proj_E, proj_E);
        RingMorphism t = pushout_copair(w2t, s.t1().ring, li1, li2);
        return MP{compose(t, kahler_sum(s.t1(), w2t)), compose(sig, lam)};
    });
    record_diagram(rep, "DB3.lift-zero2",
                   [&] { return MP{compose(z, zero_E), compose(z, lam)}; });

    record_diagram(rep, "DB4.lift-lift",
                   [&] { return MP{compose(lam, Tlam), compose(lam, lift)}; });

    record_diagram(rep, "DB5.mu-square.1", [&] {
        return MP{compose(s.mu_map(), Tq), compose(i1, compose(q, zero_A))};
    });
    record_diagram(rep, "DB5.mu-square.2", [&] {
        return MP{compose(s.mu_map(), Tq), compose(i2, compose(q, zero_A))};
    });

    record_diagram(rep, "DN.proj-neg", [&] { return MP{compose(iot, q), q}; });
    record_diagram(rep, "DN.neg-left",
                   [&] { return MP{compose(s.cp(iot, id_E), sig), compose(q, z)}; });
    record_diagram(rep, "DN.neg-right",
                   [&] { return MP{compose(s.cp(id_E, iot), sig), compose(q, z)}; });
    return rep;
}

// Coefficients of a module-linear total-ring element as a row over the
// base; throws if the element has any non-linear residue.
ModElem module_linear_row(const Poly& p, const Split& sp, const FPRing& base,
                          const FPRing& total, const std::vector<std::string>& module_vars) {
    ModElem row;
    Poly residue = p;
    for (const auto& m : module_vars) {
        Poly c = p.coefficient_of_linear(m);
        row.push_back(project_to_base(c, sp, base, total));
        residue = residue - c * total.var(m);
    }
    if (!total.is_zero_in_ring(residue))
        throw NotSplitFormError("element is not module-linear: " + p.to_string());
    return row;
}

std::string failure_summary(const AxiomReport& rep) {
    std::string msg;
    for (const auto& c : rep.checks) {
        if (c.pass) continue;
        if (!msg.empty()) msg += ", ";
        msg += c.id;
    }
    for (const auto& c : rep.checks)
        if (!c.pass) return msg + " (" + c.id + ": " + c.witness + ")";
    return msg;
}

}  // namespace

// ---- width-2 object and the bundle record --------------------------

TensorResult bundle_width2(BundleSide side, const FPRing& base, const FPRing& total,
                           const std::vector<std::string>& ring_vars,
                           const std::vector<std::string>& module_vars,
                           const RingMorphism& incl) {
    if (side == BundleSide::AFFINE) return tensor_over(base, total, total, incl, incl);
    Split sp = classify_rows(side, base, total, ring_vars, module_vars, incl);
    WidthRing w = make_width_ring(base, total, module_vars, incl, sp.rows, 2);
    RingMorphism e1 = width_emb(w, total, module_vars, 0);
    RingMorphism e2 = width_emb(w, total, module_vars, 1);
    return TensorResult{w.ring, std::move(e1), std::move(e2)};
}

DiffBundle::DiffBundle(BundleSide side, FPRing base, FPRing total,
                       std::vector<std::string> ring_vars, std::vector<std::string> module_vars,
                       RingMorphism q, RingMorphism sigma, RingMorphism z, RingMorphism lambda,
                       RingMorphism iota, TensorResult w2)
    : side_(side),
      base_(std::move(base)),
      total_(std::move(total)),
      ring_vars_(std::move(ring_vars)),
      module_vars_(std::move(module_vars)),
      q_(std::move(q)),
      sigma_(std::move(sigma)),
      z_(std::move(z)),
      lambda_(std::move(lambda)),
      iota_(std::move(iota)),
      w2_(std::move(w2)) {}

DiffBundle DiffBundle::unchecked(BundleSide side, FPRing base, FPRing total,
                                 std::vector<std::string> ring_vars,
                                 std::vector<std::string> module_vars, RingMorphism q,
                                 RingMorphism sigma, RingMorphism z, RingMorphism lambda,
                                 RingMorphism iota) {
    const bool ring_side = side == BundleSide::RING;
    const FPRing& A = base;
    const FPRing& E = total;
    const RingMorphism& down = ring_side ? q : z;      // E -> A
    const RingMorphism& up = ring_side ? z : q;        // A -> E
    if (down.domain() != E || down.codomain() != A || up.domain() != A || up.codomain() != E)
        throw SignatureMismatchError("bundle projection/zero signatures do not match");
    if (iota.domain() != E || iota.codomain() != E)
        throw SignatureMismatchError("negative must be an endomorphism of the total ring");
    if (ring_side) {
        DualTower tE = dual_numbers(E);
        if (lambda.domain() != E || lambda.codomain() != tE.ring)
            throw SignatureMismatchError("lambda must map the total ring into its dual numbers");
    } else {
        KahlerTangent tE = kahler_tangent(E);
        if (lambda.domain() != tE.ring || lambda.codomain() != E)
            throw SignatureMismatchError(
                "lambda must map the Kahler tangent ring onto the total ring");
    }
    TensorResult w2 = bundle_width2(side, A, E, ring_vars, module_vars, up);
    if (ring_side) {
        if (sigma.domain() != w2.ring || sigma.codomain() != E)
            throw SignatureMismatchError("sigma must map the width-2 object onto the total ring");
    } else {
        if (sigma.domain() != E || sigma.codomain() != w2.ring)
            throw SignatureMismatchError("sigma must map the total ring into the width-2 object");
    }
    return DiffBundle(side, std::move(base), std::move(total), std::move(ring_vars),
                      std::move(module_vars), std::move(q), std::move(sigma), std::move(z),
                      std::move(lambda), std::move(iota), std::move(w2));
}

DiffBundle DiffBundle::make(BundleSide side, FPRing base, FPRing total,
                            std::vector<std::string> ring_vars,
                            std::vector<std::string> module_vars, RingMorphism q,
                            RingMorphism sigma, RingMorphism z, RingMorphism lambda,
                            RingMorphism iota) {
    DiffBundle b = unchecked(side, std::move(base), std::move(total), std::move(ring_vars),
                             std::move(module_vars), std::move(q), std::move(sigma),
                             std::move(z), std::move(lambda), std::move(iota));
    AxiomReport rep = check_diff_bundle(b);
    if (!rep.all_pass())
        throw BundleAxiomError("differential bundle axioms fail: " + failure_summary(rep));
    return b;
}

RingMorphism DiffBundle::width2_pi(size_t j) const {
    if (side_ != BundleSide::RING)
        throw SignatureMismatchError("width-2 projections exist on the RING side only");
    if (j > 1) throw SignatureMismatchError("width-2 projection index out of range");
    std::map<std::string, Poly> images;
    for (const auto& v : total_.vars()) images.emplace(v, total_.var(v));
    for (size_t k = 0; k < module_vars_.size(); ++k) {
        const std::string& m = module_vars_[k];
        images[m] = j == 0 ? total_.var(m) : total_.zero_poly();
        images[plain_var(w2_.inj2.image_of(m))] = j == 1 ? total_.var(m) : total_.zero_poly();
    }
    return RingMorphism::by_names(w2_.ring, total_, images);
}

const RingMorphism& DiffBundle::incl() const {
    return side_ == BundleSide::RING ? z_ : q_;
}

AxiomReport check_diff_bundle(const DiffBundle& b) {
    return b.side() == BundleSide::RING ? check_ring(b) : check_affine(b);
}

RingMorphism mu(const DiffBundle& b) {
    AxiomReport rep;
    RingMorphism m = [&] {
        try {
            return b.side() == BundleSide::RING ? RingScene(b).mu_map()
                                                : AffineScene(b).mu_map();
        } catch (const WellDefinednessError& e) {
            throw BundleAxiomError(std::string("mu: comparison cone is inconsistent: ") +
                                   e.what());
        }
    }();
    if (b.side() == BundleSide::RING) {
        RingScene s(b);
        RingMorphism Tq = apply_T(b.q(), s.tE, s.tA);
        rep.record("DB5.mu-square.1", compose(Tq, m),
                   compose(dual_zero(s.tA), compose(b.q(), s.pi1)));
        rep.record("DB5.mu-square.2", compose(Tq, m),
                   compose(dual_zero(s.tA), compose(b.q(), s.pi2)));
    } else {
        AffineScene s(b);
        RingMorphism Tq = kahler_apply_T(b.q(), s.tA, s.t1());
        RingMorphism zq = compose(b.q(), kahler_zero(s.tA));
        rep.record("DB5.mu-square.1", compose(m, Tq), compose(b.width2().inj1, zq));
        rep.record("DB5.mu-square.2", compose(m, Tq), compose(b.width2().inj2, zq));
    }
    if (!rep.all_pass())
        throw BundleAxiomError("mu: the [DB.5] square does not commute: " +
                               failure_summary(rep));
    return m;
}

// ---- split form and the module <-> bundle constructors -------------

SplitForm split_form(const DiffBundle& b) {
    Split sp = classify_rows(b.side(), b.base(), b.total(), b.ring_vars(), b.module_vars(),
                             b.incl());
    const RingMorphism& retr = b.side() == BundleSide::RING ? b.q() : b.z();
    for (const auto& m : b.module_vars())
        if (!b.base().is_zero_in_ring(retr.apply(b.total().var(m))))
            throw NotSplitFormError("retraction does not kill module variable " + m);
    if (b.side() == BundleSide::AFFINE) {
        // The witness generators are D_lambda of the module variables,
        // so the derivation must return each module variable itself.
        KahlerTangent tE = kahler_tangent(b.total());
        for (const auto& m : b.module_vars()) {
            Poly d = b.lambda().image_of(tE.d_of(m));
            if (!b.total().is_zero_in_ring(d - b.total().var(m)))
                throw NotSplitFormError("D_lambda does not fix module variable " + m);
        }
    }
    FPModule witness(b.base(), b.module_vars(), sp.rows);
    return SplitForm{b, std::move(witness)};
}

DiffBundle mod_to_bundle_ring(const FPModule& m) {
    ModuleRingExtension ext = square_zero_extension(m);
    const FPRing& A = m.base();
    const FPRing& E = ext.ring;
    RingMorphism z = RingMorphism::renaming(A, E);
    std::vector<Poly> qim, iim;
    for (const auto& v : A.vars()) qim.push_back(A.var(v));
    for (size_t k = 0; k < ext.uvars.size(); ++k) qim.push_back(A.zero_poly());
    RingMorphism q(E, A, std::move(qim));
    for (const auto& v : A.vars()) iim.push_back(E.var(v));
    for (const auto& u : ext.uvars) iim.push_back(-E.var(u));
    RingMorphism iota(E, E, std::move(iim));
    DualTower tE = dual_numbers(E);
    std::vector<Poly> lim;
    for (const auto& v : A.vars()) lim.push_back(tE.ring.var(v));
    for (const auto& u : ext.uvars)
        lim.push_back(tE.ring.normal_form(tE.ring.var(u) * tE.ring.var(tE.top())));
    RingMorphism lambda(E, tE.ring, std::move(lim));
    TensorResult w2 = bundle_width2(BundleSide::RING, A, E, A.vars(), ext.uvars, z);
    std::map<std::string, Poly> sim;
    for (const auto& v : A.vars()) sim.emplace(v, E.var(v));
    for (const auto& u : ext.uvars) {
        sim.emplace(u, E.var(u));
        sim.emplace(plain_var(w2.inj2.image_of(u)), E.var(u));
    }
    RingMorphism sigma = RingMorphism::by_names(w2.ring, E, sim);
    return DiffBundle::make(BundleSide::RING, A, E, A.vars(), ext.uvars, std::move(q),
                            std::move(sigma), std::move(z), std::move(lambda),
                            std::move(iota));
}

DiffBundle mod_to_bundle_affine(const FPModule& m) {
    ModuleRingExtension ext = symmetric_algebra(m);
    const FPRing& A = m.base();
    const FPRing& E = ext.ring;
    RingMorphism q = RingMorphism::renaming(A, E);
    std::vector<Poly> zim, iim;
    for (const auto& v : A.vars()) zim.push_back(A.var(v));
    for (size_t k = 0; k < ext.uvars.size(); ++k) zim.push_back(A.zero_poly());
    RingMorphism z(E, A, std::move(zim));
    for (const auto& v : A.vars()) iim.push_back(E.var(v));
    for (const auto& u : ext.uvars) iim.push_back(-E.var(u));
    RingMorphism iota(E, E, std::move(iim));
    KahlerTangent tE = kahler_tangent(E);
    std::map<std::string, bool> is_u;
    for (const auto& u : ext.uvars) is_u[u] = true;
    std::vector<Poly> lim;
    for (const auto& v : E.vars()) lim.push_back(is_u.count(v) ? E.zero_poly() : E.var(v));
    for (const auto& v : E.vars())
        lim.push_back(is_u.count(v) ? E.var(v) : E.zero_poly());
    RingMorphism lambda(tE.ring, E, std::move(lim));
    TensorResult w2 = bundle_width2(BundleSide::AFFINE, A, E, A.vars(), ext.uvars, q);
    std::vector<Poly> sim;
    for (const auto& v : A.vars()) sim.push_back(w2.inj1.image_of(v));
    for (const auto& u : ext.uvars)
        sim.push_back(w2.ring.normal_form(w2.inj1.image_of(u) + w2.inj2.image_of(u)));
    RingMorphism sigma(E, w2.ring, std::move(sim));
    return DiffBundle::make(BundleSide::AFFINE, A, E, A.vars(), ext.uvars, std::move(q),
                            std::move(sigma), std::move(z), std::move(lambda),
                            std::move(iota));
}

FPModule bundle_to_mod_ring(const DiffBundle& b) {
    if (b.side() != BundleSide::RING)
        throw SignatureMismatchError("bundle_to_mod_ring expects a RING-side bundle");
    return split_form(b).witness;
}

FPModule bundle_to_mod_affine(const DiffBundle& b) {
    if (b.side() != BundleSide::AFFINE)
        throw SignatureMismatchError("bundle_to_mod_affine expects an AFFINE-side bundle");
    return split_form(b).witness;
}

// ---- Rosicky derivation of sigma and iota --------------------------

DerivedSum derive_sum_and_negative_via_rosicky(const DiffBundle& b) {
    const FPRing& A = b.base();
    const FPRing& E = b.total();
    const RingMorphism &q = b.q(), &z = b.z(), &lam = b.lambda();
    AxiomReport pre;
    if (b.side() == BundleSide::RING) {
        DualTower tE = dual_numbers(E);
        DualTower t2E = dual_numbers(tE.ring);
        pre.record("PD.section", compose(q, z), RingMorphism::identity(A));
        pre.record("PD.lift-proj", compose(dual_proj(tE), lam), compose(z, q));
        pre.record("PD.lift-zero", compose(lam, z), compose(dual_zero(tE), z));
        pre.record("PD.lift-lift", compose(apply_T(lam, tE, t2E), lam),
                   compose(dual_lift(tE, t2E), lam));
        if (!pre.all_pass())
            throw BundleAxiomError("pre-differential bundle equations fail: " +
                                   failure_summary(pre));

        RingScene s(b);
        DualWidth wd2 = dual_width(E, 2);
        RingMorphism lp1 = compose(lam, s.pi1), lp2 = compose(lam, s.pi2);
        RingMorphism tup = fiber_tuple({lp1, lp2},
                                       {eps_embed(tE, wd2, 0), eps_embed(tE, wd2, 1)},
                                       compose(dual_proj(tE), lp1), width_inclusion(wd2));
        RingMorphism f_sig = compose(dual_sum(wd2, tE), tup);
        RingMorphism g_sig = compose(q, s.pi1);
        // Mediator into the Rosicky pullback: strip the top nilpotent.
        auto mediate = [&](const RingMorphism& f, const RingMorphism& g) {
            std::vector<Poly> images;
            const FPRing& dom = f.domain();
            for (size_t i = 0; i < dom.vars().size(); ++i) {
                Poly fv = tE.ring.normal_form(f.images()[i]);
                Poly d = fv.coefficient_of_linear(tE.top()).map_vars(E.vars());
                images.push_back(E.normal_form(z.apply(g.images()[i]) + d));
            }
            RingMorphism h(dom, E, std::move(images));
            if (!morphisms_equal(compose(lam, h), f) || !morphisms_equal(compose(q, h), g))
                throw BundleAxiomError("Rosicky mediator does not factor the cone");
            return h;
        };
        RingMorphism sig = mediate(f_sig, g_sig);
        RingMorphism iot = mediate(compose(dual_neg(tE), lam), q);
        return DerivedSum{std::move(sig), std::move(iot)};
    }

    AffineScene s(b);
    const KahlerTangent& t1 = s.t1();
    pre.record("PD.section", compose(z, q), RingMorphism::identity(A));
    pre.record("PD.lift-proj", compose(lam, kahler_proj(t1)), compose(q, z));
    pre.record("PD.lift-zero", compose(z, lam), compose(z, kahler_zero(t1)));
    pre.record("PD.lift-lift", compose(lam, kahler_apply_T(lam, s.t2(), t1)),
               compose(lam, kahler_lift(t1, s.t2())));
    if (!pre.all_pass())
        throw BundleAxiomError("pre-differential bundle equations fail: " +
                               failure_summary(pre));

    std::map<std::string, std::string> to_base;
    for (size_t i = 0; i < A.vars().size(); ++i)
        to_base[plain_var(q.images()[i])] = A.vars()[i];
    std::map<std::string, bool> is_module;
    for (const auto& m : b.module_vars()) is_module[m] = true;
    // Copairing out of the Rosicky pushout: module generators through
    // f at their differentials, base generators through g.
    auto mediate = [&](const RingMorphism& f, const RingMorphism& g) {
        const FPRing& cod = f.codomain();
        std::vector<Poly> images;
        for (const auto& v : E.vars()) {
            if (is_module.count(v)) {
                images.push_back(f.image_of(t1.d_of(v)));
            } else {
                auto it = to_base.find(v);
                if (it == to_base.end())
                    throw NotSplitFormError("total variable outside the partition: " + v);
                images.push_back(g.image_of(it->second));
            }
        }
        RingMorphism h(E, cod, std::move(images));
        if (!morphisms_equal(compose(h, lam), f) || !morphisms_equal(compose(h, q), g))
            throw BundleAxiomError("Rosicky mediator does not factor the cocone");
        return h;
    };
    TensorResult w2t = tensor_over(E, t1.ring, t1.ring, kahler_proj(t1), kahler_proj(t1));
    RingMorphism li1 = compose(b.width2().inj1, lam), li2 = compose(b.width2().inj2, lam);
    RingMorphism f_sig =
        compose(pushout_copair(w2t, t1.ring, li1, li2), kahler_sum(t1, w2t));
    RingMorphism g_sig = compose(b.width2().inj1, q);
    RingMorphism sig = mediate(f_sig, g_sig);
    RingMorphism iot = mediate(compose(lam, kahler_neg(t1)), q);
    return DerivedSum{std::move(sig), std::move(iot)};
}

// ---- bundle morphisms ----------------------------------------------

namespace {

void check_morphism_signatures(const RingMorphism& f, const RingMorphism& g,
                               const DiffBundle& src, const DiffBundle& tgt) {
    if (src.side() != tgt.side())
        throw SignatureMismatchError("bundle morphism endpoints lie on different sides");
    const bool ring_side = src.side() == BundleSide::RING;
    const DiffBundle& fd = ring_side ? src : tgt;
    const DiffBundle& fc = ring_side ? tgt : src;
    if (f.domain() != fd.total() || f.codomain() != fc.total() || g.domain() != fd.base() ||
        g.codomain() != fc.base())
        throw SignatureMismatchError("bundle morphism components do not match the endpoints");
}

AxiomReport two_squares(const RingMorphism& f, const RingMorphism& g, const DiffBundle& src,
                        const DiffBundle& tgt) {
    check_morphism_signatures(f, g, src, tgt);
    AxiomReport rep;
    if (src.side() == BundleSide::RING) {
        record_diagram(rep, "BM.proj",
                       [&] { return MP{compose(tgt.q(), f), compose(g, src.q())}; });
        record_diagram(rep, "BM.lift", [&] {
            DualTower ts = dual_numbers(src.total()), tt = dual_numbers(tgt.total());
            return MP{compose(apply_T(f, ts, tt), src.lambda()), compose(tgt.lambda(), f)};
        });
    } else {
        record_diagram(rep, "BM.proj",
                       [&] { return MP{compose(f, tgt.q()), compose(src.q(), g)}; });
        record_diagram(rep, "BM.lift", [&] {
            KahlerTangent ts = kahler_tangent(src.total()), tt = kahler_tangent(tgt.total());
            return MP{compose(src.lambda(), kahler_apply_T(f, tt, ts)),
                      compose(f, tgt.lambda())};
        });
    }
    return rep;
}

}  // namespace

AxiomReport check_bundle_morphism(const RingMorphism& f, const RingMorphism& g,
                                  const DiffBundle& src, const DiffBundle& tgt) {
    AxiomReport rep = two_squares(f, g, src, tgt);
    if (src.side() == BundleSide::RING) {
        record_diagram(rep, "BM.sum", [&] {
            RingMorphism p1 = src.width2_pi(0), p2 = src.width2_pi(1);
            RingMorphism t = fiber_tuple(
                {compose(f, p1), compose(f, p2)}, {tgt.width2().inj1, tgt.width2().inj2},
                compose(g, compose(src.q(), p1)), compose(tgt.width2().inj1, tgt.z()));
            return MP{compose(tgt.sigma(), t), compose(f, src.sigma())};
        });
        record_diagram(rep, "BM.zero",
                       [&] { return MP{compose(f, src.z()), compose(tgt.z(), g)}; });
        record_diagram(rep, "BM.neg",
                       [&] { return MP{compose(f, src.iota()), compose(tgt.iota(), f)}; });
    } else {
        record_diagram(rep, "BM.sum", [&] {
            RingMorphism cpf = pushout_copair(tgt.width2(), tgt.total(),
                                              compose(src.width2().inj1, f),
                                              compose(src.width2().inj2, f));
            return MP{compose(cpf, tgt.sigma()), compose(src.sigma(), f)};
        });
        record_diagram(rep, "BM.zero",
                       [&] { return MP{compose(g, tgt.z()), compose(src.z(), f)}; });
        record_diagram(rep, "BM.neg",
                       [&] { return MP{compose(f, tgt.iota()), compose(src.iota(), f)}; });
    }
    return rep;
}

BundleMorphism bundle_morphism(DiffBundle source, DiffBundle target, RingMorphism f,
                               RingMorphism g) {
    AxiomReport rep = two_squares(f, g, source, target);
    if (!rep.all_pass())
        throw BundleAxiomError("bundle morphism squares fail: " + failure_summary(rep));
    return BundleMorphism{std::move(source), std::move(target), std::move(f), std::move(g)};
}

BundleMorphism identity_bundle_morphism(const DiffBundle& b) {
    return BundleMorphism{b, b, RingMorphism::identity(b.total()),
                          RingMorphism::identity(b.base())};
}

BundleMorphism compose(const BundleMorphism& g, const BundleMorphism& f) {
    if (f.target.side() != g.source.side() || f.target.total() != g.source.total() ||
        f.target.base() != g.source.base())
        throw SignatureMismatchError("bundle morphisms do not compose");
    const bool ring_side = f.source.side() == BundleSide::RING;
    RingMorphism fc = ring_side ? compose(g.f, f.f) : compose(f.f, g.f);
    RingMorphism gc = ring_side ? compose(g.g, f.g) : compose(f.g, g.g);
    return BundleMorphism{f.source, g.target, std::move(fc), std::move(gc)};
}

bool bundle_morphisms_equal(const BundleMorphism& a, const BundleMorphism& b) {
    return a.source.side() == b.source.side() && a.source.total() == b.source.total() &&
           a.target.total() == b.target.total() && a.source.base() == b.source.base() &&
           a.target.base() == b.target.base() && morphisms_equal(a.f, b.f) &&
           morphisms_equal(a.g, b.g);
}

// ---- the natural isomorphisms --------------------------------------

std::pair<ModuleMorphism, ModuleMorphism> alpha_iso(const FPModule& m) {
    DiffBundle b = mod_to_bundle_ring(m);
    FPModule ker = bundle_to_mod_ring(b);
    std::vector<ModElem> fwd, bwd;
    for (size_t k = 0; k < m.gens().size(); ++k) {
        fwd.push_back(ker.gen_elem(ker.gens()[k]));
        bwd.push_back(m.gen_elem(m.gens()[k]));
    }
    ModuleMorphism a(m, ker, std::move(fwd));
    ModuleMorphism ainv(ker, m, std::move(bwd));
    return {std::move(a), std::move(ainv)};
}

std::pair<BundleMorphism, BundleMorphism> beta_iso(const DiffBundle& b) {
    if (b.side() != BundleSide::RING)
        throw SignatureMismatchError("beta_iso expects a RING-side bundle");
    SplitForm sf = split_form(b);
    Split sp = classify_rows(b.side(), b.base(), b.total(), b.ring_vars(), b.module_vars(),
                             b.incl());
    DiffBundle b2 = mod_to_bundle_ring(sf.witness);
    const FPRing& E = b.total();
    const FPRing& Ep = b2.total();
    DualTower tE = dual_numbers(E);
    // beta(x) = q(x) + D_lambda(x) eps.
    std::vector<Poly> fwd;
    for (const auto& v : E.vars()) {
        Poly d = tE.ring.normal_form(b.lambda().image_of(v))
                     .coefficient_of_linear(tE.top())
                     .map_vars(E.vars());
        ModElem row = module_linear_row(d, sp, b.base(), E, b.module_vars());
        Poly img = b.q().image_of(v).map_vars(Ep.vars());
        for (size_t k = 0; k < row.size(); ++k)
            img = img + row[k].map_vars(Ep.vars()) * Ep.var(b2.module_vars()[k]);
        fwd.push_back(Ep.normal_form(img));
    }
    RingMorphism beta(E, Ep, std::move(fwd));
    // beta^{-1}(a + x eps) = z(a) + x.
    std::vector<Poly> bwd;
    for (const auto& v : b.base().vars()) bwd.push_back(b.z().image_of(v));
    for (const auto& m : b.module_vars()) bwd.push_back(E.var(m));
    RingMorphism beta_inv(Ep, E, std::move(bwd));
    if (!morphisms_equal(compose(beta_inv, beta), RingMorphism::identity(E)) ||
        !morphisms_equal(compose(beta, beta_inv), RingMorphism::identity(Ep)))
        throw BundleAxiomError("beta components are not mutually inverse");
    RingMorphism id_A = RingMorphism::identity(b.base());
    BundleMorphism f = bundle_morphism(b, b2, std::move(beta), id_A);
    BundleMorphism g = bundle_morphism(std::move(b2), b, std::move(beta_inv), id_A);
    return {std::move(f), std::move(g)};
}

std::pair<BundleMorphism, BundleMorphism> psi_iso(const DiffBundle& b) {
    if (b.side() != BundleSide::AFFINE)
        throw SignatureMismatchError("psi_iso expects an AFFINE-side bundle");
    SplitForm sf = split_form(b);
    DiffBundle b2 = mod_to_bundle_affine(sf.witness);
    const FPRing& E = b.total();
    const FPRing& Ep = b2.total();
    KahlerTangent tE = kahler_tangent(E);
    // psi: Sym(im D_lambda) -> E: base through q, generators D_lambda(m)
    // to their values in E.
    std::vector<Poly> psim;
    for (const auto& v : b.base().vars()) psim.push_back(b.q().image_of(v));
    for (const auto& m : b.module_vars())
        psim.push_back(E.normal_form(b.lambda().image_of(tE.d_of(m))));
    RingMorphism psi(Ep, E, std::move(psim));
    // psi^{-1} through delta: ring variables back to the base block,
    // module variables through delta(d m) = D_lambda(m) (split form
    // pins D_lambda(m) = m, so this is the matching generator).
    std::map<std::string, std::string> to_base;
    for (size_t i = 0; i < b.base().vars().size(); ++i)
        to_base[plain_var(b.q().images()[i])] = b.base().vars()[i];
    std::map<std::string, Poly> invm;
    for (const auto& [rv, bv] : to_base) invm.emplace(rv, Poly::variable(Ep.vars(), bv));
    for (size_t k = 0; k < b.module_vars().size(); ++k)
        invm.emplace(b.module_vars()[k], Ep.var(b2.module_vars()[k]));
    RingMorphism psi_inv = RingMorphism::by_names(E, Ep, invm);
    if (!morphisms_equal(compose(psi_inv, psi), RingMorphism::identity(Ep)) ||
        !morphisms_equal(compose(psi, psi_inv), RingMorphism::identity(E)))
        throw BundleAxiomError("psi components are not mutually inverse");
    // X-direction: psi is the component of the morphism b -> b2.
    RingMorphism id_A = RingMorphism::identity(b.base());
    BundleMorphism f = bundle_morphism(b, b2, std::move(psi), id_A);
    BundleMorphism g = bundle_morphism(std::move(b2), b, std::move(psi_inv), id_A);
    return {std::move(f), std::move(g)};
}

// ---- the equivalence functors on morphisms -------------------------

BundleMorphism mod_bundle_functor_ring(const ModuleMorphism& f, const DiffBundle& bdom,
                                       const DiffBundle& bcod) {
    if (bdom.side() != BundleSide::RING || bcod.side() != BundleSide::RING)
        throw SignatureMismatchError("RING-side functor expects RING-side bundles");
    if (bdom.module_vars().size() != f.domain().gens().size() ||
        bcod.module_vars().size() != f.codomain().gens().size() ||
        bdom.base() != f.domain().base() || bcod.base() != f.codomain().base())
        throw SignatureMismatchError("bundles do not present the morphism's modules");
    const FPRing& E = bdom.total();
    const FPRing& Ep = bcod.total();
    std::vector<Poly> images;
    for (const auto& v : f.domain().base().vars())
        images.push_back(f.base_map().image_of(v).map_vars(Ep.vars()));
    for (size_t k = 0; k < f.matrix().size(); ++k) {
        Poly img = Poly::zero(Ep.vars());
        for (size_t j = 0; j < f.matrix()[k].size(); ++j)
            img = img + f.matrix()[k][j].map_vars(Ep.vars()) * Ep.var(bcod.module_vars()[j]);
        images.push_back(Ep.normal_form(img));
    }
    return bundle_morphism(bdom, bcod, RingMorphism(E, Ep, std::move(images)),
                           f.base_map());
}

BundleMorphism mod_bundle_functor_ring(const ModuleMorphism& f) {
    return mod_bundle_functor_ring(f, mod_to_bundle_ring(f.domain()),
                                   mod_to_bundle_ring(f.codomain()));
}

BundleMorphism mod_bundle_functor_affine(const ModuleMorphism& f, const DiffBundle& bdom,
                                         const DiffBundle& bcod) {
    if (bdom.side() != BundleSide::AFFINE || bcod.side() != BundleSide::AFFINE)
        throw SignatureMismatchError("AFFINE-side functor expects AFFINE-side bundles");
    if (!morphisms_equal(f.base_map(), RingMorphism::identity(f.domain().base())))
        throw SignatureMismatchError("AFFINE-side functor is defined over a fixed base");
    if (bdom.module_vars().size() != f.domain().gens().size() ||
        bcod.module_vars().size() != f.codomain().gens().size() ||
        bdom.base() != f.domain().base() || bcod.base() != f.codomain().base())
        throw SignatureMismatchError("bundles do not present the morphism's modules");
    const FPRing& E = bdom.total();
    const FPRing& Ep = bcod.total();
    std::vector<Poly> images;
    for (const auto& v : f.domain().base().vars())
        images.push_back(Poly::variable(Ep.vars(), v));
    for (size_t k = 0; k < f.matrix().size(); ++k) {
        Poly img = Poly::zero(Ep.vars());
        for (size_t j = 0; j < f.matrix()[k].size(); ++j)
            img = img + f.matrix()[k][j].map_vars(Ep.vars()) * Ep.var(bcod.module_vars()[j]);
        images.push_back(Ep.normal_form(img));
    }
    // Contravariant: the ring component Sym(M) -> Sym(M') realizes the
    // bundle morphism from the codomain's bundle to the domain's.
    return bundle_morphism(bcod, bdom, RingMorphism(E, Ep, std::move(images)),
                           RingMorphism::identity(f.domain().base()));
}

BundleMorphism mod_bundle_functor_affine(const ModuleMorphism& f) {
    return mod_bundle_functor_affine(f, mod_to_bundle_affine(f.domain()),
                                     mod_to_bundle_affine(f.codomain()));
}

ModuleMorphism bundle_mod_functor_ring(const BundleMorphism& bm) {
    if (bm.source.side() != BundleSide::RING)
        throw SignatureMismatchError("bundle_mod_functor_ring expects RING-side bundles");
    SplitForm ss = split_form(bm.source);
    SplitForm st = split_form(bm.target);
    Split spt = classify_rows(bm.target.side(), bm.target.base(), bm.target.total(),
                              bm.target.ring_vars(), bm.target.module_vars(),
                              bm.target.incl());
    std::vector<ModElem> matrix;
    for (const auto& m : bm.source.module_vars()) {
        Poly img = bm.target.total().normal_form(bm.f.image_of(m));
        matrix.push_back(module_linear_row(img, spt, bm.target.base(), bm.target.total(),
                                           bm.target.module_vars()));
    }
    return ModuleMorphism(ss.witness, st.witness, bm.g, std::move(matrix));
}

ModuleMorphism bundle_mod_functor_affine(const BundleMorphism& bm) {
    if (bm.source.side() != BundleSide::AFFINE)
        throw SignatureMismatchError("bundle_mod_functor_affine expects AFFINE-side bundles");
    SplitForm ss = split_form(bm.source);
    SplitForm st = split_form(bm.target);
    Split sps = classify_rows(bm.source.side(), bm.source.base(), bm.source.total(),
                              bm.source.ring_vars(), bm.source.module_vars(),
                              bm.source.incl());
    const FPRing& Es = bm.source.total();
    KahlerTangent tEs = kahler_tangent(Es);
    std::vector<ModElem> matrix;
    for (const auto& m : bm.target.module_vars()) {
        // D_lambda(f(m)) = lambda(d(f(m))) in the source total ring.
        Poly fm = bm.f.image_of(m);
        Poly d = total_differential(fm, Es).map_vars(tEs.ring.vars());
        Poly val = Es.normal_form(bm.source.lambda().apply(d));
        matrix.push_back(module_linear_row(val, sps, bm.source.base(), Es,
                                           bm.source.module_vars()));
    }
    return ModuleMorphism(st.witness, ss.witness, bm.g, std::move(matrix));
}

}  // namespace tancat
