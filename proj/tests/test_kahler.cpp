#include "tancat/kahler.hpp"

#include "doctest.h"
#include "oracles.hpp"

using namespace tancat;

TEST_CASE("total differential examples") {
    FPRing r = FPRing::free({"x", "y"});
    KahlerTangent t = kahler_tangent(r);
    CHECK(total_differential(r.parse("x^2 - x*y^2"), r) ==
          t.ring.parse("2*x*d_x - y^2*d_x - 2*x*y*d_y"));
    CHECK(total_differential(r.parse("1"), r).is_zero());
    CHECK(total_differential(r.parse("x*y"), r) == t.ring.parse("x*d_y + y*d_x"));
}

TEST_CASE("total differential is linear and Leibniz") {
    FPRing r = FPRing::free({"x", "y", "z"});
    KahlerTangent t = kahler_tangent(r);
    std::mt19937 rng(20260826);
    for (int i = 0; i < 200; ++i) {
        Poly p = oracle::random_poly(rng, r.vars(), 3, 3);
        Poly q = oracle::random_poly(rng, r.vars(), 3, 3);
        CHECK(total_differential(p + q, r) ==
              total_differential(p, r) + total_differential(q, r));
        CHECK(total_differential(p.scale(Rational(5, 3)), r) ==
              total_differential(p, r).scale(Rational(5, 3)));
        Poly pe = p.map_vars(t.ring.vars()), qe = q.map_vars(t.ring.vars());
        CHECK(total_differential(p * q, r) ==
              pe * total_differential(q, r) + qe * total_differential(p, r));
    }
}

namespace {

// Rule-based oracle for the second differential of a product of
// variables: d'd(ab) = d(b)d'(a) + a d'd(b) + d(a)d'(b) + b d'd(a),
// expanded recursively, with d and d' expanded by their own product
// rules.  Everything lives over the level-2 variable list.
struct SecondDiffOracle {
    FPRing base;
    std::vector<KahlerTangent> chain;
    std::vector<std::string> vars2;

    explicit SecondDiffOracle(FPRing b)
        : base(std::move(b)), chain(kahler_chain(base, 2)), vars2(chain[1].ring.vars()) {}

    Poly var(const std::string& n) const { return Poly::variable(vars2, n); }
    Poly word(const std::vector<std::string>& w, size_t from) const {
        Poly out = Poly::constant(vars2, 1);
        for (size_t i = from; i < w.size(); ++i) out = out * var(w[i]);
        return out;
    }
    Poly d1(const std::vector<std::string>& w, size_t from) const {
        if (from + 1 == w.size()) return var(chain[0].d_of(w[from]));
        return var(w[from]) * d1(w, from + 1) + word(w, from + 1) * d1({w[from]}, 0);
    }
    Poly d2(const std::vector<std::string>& w, size_t from) const {
        if (from + 1 == w.size()) return var(chain[1].d_of(w[from]));
        return var(w[from]) * d2(w, from + 1) + word(w, from + 1) * d2({w[from]}, 0);
    }
    Poly d2d1(const std::vector<std::string>& w, size_t from) const {
        if (from + 1 == w.size()) return var(chain[1].d_of(chain[0].d_of(w[from])));
        std::vector<std::string> a{w[from]};
        return d1(w, from + 1) * d2(a, 0) + var(w[from]) * d2d1(w, from + 1) +
               d1(a, 0) * d2(w, from + 1) + word(w, from + 1) * d2d1(a, 0);
    }
};

}  // namespace

TEST_CASE("second differential examples and product-rule oracle") {
    FPRing r = FPRing::free({"x", "y", "z"});
    auto chain = kahler_chain(r, 2);
    const FPRing& t2 = chain[1].ring;

    CHECK(second_differential(r.parse("x^2"), r) ==
          t2.parse("2*d_x*dp_x + 2*x*dpd_x"));
    CHECK(second_differential(r.parse("x + y"), r) == t2.parse("dpd_x + dpd_y"));
    CHECK(second_differential(r.parse("7/2"), r).is_zero());

    SecondDiffOracle orc(r);
    std::mt19937 rng(31415);
    std::uniform_int_distribution<int> len(1, 5), pick(0, 2);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::string> w;
        Poly prod = Poly::constant(r.vars(), 1);
        int n = len(rng);
        for (int k = 0; k < n; ++k) {
            w.push_back(r.vars()[pick(rng)]);
            prod = prod * r.var(w.back());
        }
        CHECK(second_differential(prod, r) == orc.d2d1(w, 0));
    }
}

TEST_CASE("tangent bundle presentations") {
    FPRing free4 = FPRing::free({"x1", "x2", "x3", "x4"});
    KahlerTangent t4 = kahler_tangent(free4);
    CHECK(t4.ring.vars().size() == 8);
    CHECK(t4.ring.groebner().empty());

    CHECK(kahler_tangent(FPRing::rationals()).ring == FPRing::rationals());

    FPRing rxy = FPRing::presented({"x", "y"}, {"x*y"});
    CHECK(kahler_tangent(rxy).ring ==
          FPRing::presented({"x", "y", "d_x", "d_y"}, {"x*y", "x*d_y + y*d_x"}));

    FPRing cusp = FPRing::presented({"x", "y"}, {"x^2 - x*y^2"});
    FPRing expect = FPRing::presented({"x", "y", "d_x", "d_y"},
                                      {"x^2 - x*y^2", "2*x*d_x - y^2*d_x - 2*x*y*d_y"});
    CHECK(ideal_equal(kahler_tangent(cusp).ring, expect));
}

TEST_CASE("iterated extension naming") {
    FPRing r = FPRing::free({"x"});
    auto chain = kahler_chain(r, 3);
    CHECK(chain[1].ring.vars() == std::vector<std::string>{"x", "d_x", "dp_x", "dpd_x"});
    CHECK(chain[2].ring.vars() ==
          std::vector<std::string>{"x", "d_x", "dp_x", "dpd_x", "dq_x", "dqd_x", "dqdp_x",
                                   "dqdpd_x"});
    CHECK(kahler_square(r).ring == chain[1].ring);
}

TEST_CASE("kahler functor is functorial") {
    FPRing a = FPRing::free({"x", "y"}), b = FPRing::free({"u", "v"}),
           c = FPRing::free({"w"});
    KahlerTangent ta = kahler_tangent(a), tb = kahler_tangent(b), tc = kahler_tangent(c);
    CHECK(morphisms_equal(kahler_apply_T(RingMorphism::identity(a), ta, ta),
                          RingMorphism::identity(ta.ring)));
    std::mt19937 rng(2024);
    for (int i = 0; i < 25; ++i) {
        RingMorphism f(a, b,
                       {oracle::random_poly(rng, b.vars(), 2, 3),
                        oracle::random_poly(rng, b.vars(), 2, 3)});
        RingMorphism g(b, c,
                       {oracle::random_poly(rng, c.vars(), 2, 3),
                        oracle::random_poly(rng, c.vars(), 2, 3)});
        CHECK(morphisms_equal(kahler_apply_T(compose(g, f), ta, tc),
                              compose(kahler_apply_T(g, tb, tc), kahler_apply_T(f, ta, tb))));
    }
}

TEST_CASE("co-structure generator images") {
    FPRing r = FPRing::free({"x"});
    KahlerStructure s = co_structure(r);

    CHECK(s.zero.image_of("x") == r.parse("x"));
    CHECK(s.zero.image_of("d_x").is_zero());

    CHECK(s.lift.image_of("x") == s.t.ring.parse("x"));
    CHECK(s.lift.image_of("d_x").is_zero());
    CHECK(s.lift.image_of("dp_x").is_zero());
    CHECK(s.lift.image_of("dpd_x") == s.t.ring.parse("d_x"));

    CHECK(s.sum.image_of("d_x") == s.w2.ring.parse("d_x + d_x__2"));
    CHECK(s.flip.image_of("d_x") == s.sq.ring.parse("dp_x"));
    CHECK(s.neg.image_of("d_x") == s.t.ring.parse("-d_x"));
}

TEST_CASE("co-structure axioms hold on the corpus") {
    std::vector<FPRing> corpus{
        FPRing::rationals(),
        FPRing::free({"x"}),
        FPRing::presented({"x"}, {"x^2"}),
        FPRing::presented({"x", "y"}, {"x*y"}),
        FPRing::presented({"x", "y", "z"}, {"x^2 + y^2 + z^2 - 1"}),
    };
    for (const auto& r : corpus) {
        AxiomReport rep = check_costructure_axioms(r);
        INFO("ring ", r.to_string());
        for (const auto& c : rep.checks) {
            INFO(c.id, " witness: ", c.witness);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("corrupted flip fails exactly at lift/flip and Yang-Baxter") {
    FPRing r = FPRing::free({"x"});
    KahlerStructure s = co_structure(r);
    // corruption: d'dx |-> -d'dx
    s.flip = RingMorphism::by_names(s.sq.ring, s.sq.ring,
                                    {{"x", s.sq.ring.parse("x")},
                                     {"d_x", s.sq.ring.parse("dp_x")},
                                     {"dp_x", s.sq.ring.parse("d_x")},
                                     {"dpd_x", s.sq.ring.parse("-dpd_x")}});
    AxiomReport rep = check_costructure_axioms(s);

    const AxiomCheck* inv = rep.find("T4.involution");
    REQUIRE(inv != nullptr);
    CHECK(inv->pass);
    const AxiomCheck* fl = rep.find("T5.flip-lift");
    REQUIRE(fl != nullptr);
    CHECK(!fl->pass);
    CHECK(fl->witness.substr(0, 6) == "dpd_x:");

    // hand-composing on the eight T^3 generators shows the corruption
    // also breaks Yang-Baxter (dqdp_x vs -dqdp_x on dpd_x) and nothing else
    std::vector<std::string> expected{"T4.yang-baxter", "T5.flip-lift"};
    CHECK(rep.failing_ids() == expected);
}

TEST_CASE("tangent spaces at rational points") {
    FPRing rxy = FPRing::presented({"x", "y"}, {"x*y"});
    // the source computes this display by formal evaluation even though
    // (1,1) does not satisfy xy = 0; the coordinate overload allows it
    TangentSpace at11 = tangent_space_at(rxy, std::vector<Rational>{1, 1});
    CHECK(at11.ring == FPRing::presented({"d_x", "d_y"}, {"d_x + d_y"}));

    TangentSpace at00 = tangent_space_at(rxy, Point(rxy, {0, 0}));
    CHECK(at00.ring == FPRing::free({"d_x", "d_y"}));

    FPRing free3 = FPRing::free({"x", "y", "z"});
    TangentSpace fr = tangent_space_at(free3, Point(free3, {Rational(1, 2), 3, -7}));
    CHECK(fr.ring == FPRing::free({"d_x", "d_y", "d_z"}));

    CHECK_THROWS_AS(Point(rxy, {1, 2}), InvalidPointError);

    // relations are always homogeneous linear in the d-variables
    FPRing sph = FPRing::presented({"x", "y", "z"}, {"x^2 + y^2 + z^2 - 1"});
    TangentSpace ts = tangent_space_at(sph, Point(sph, {1, 0, 0}));
    for (const auto& g : ts.ring.generators()) CHECK(g.degree() == 1);
    CHECK(ts.ring == FPRing::presented({"d_x", "d_y", "d_z"}, {"d_x"}));
}

TEST_CASE("sharp and flat transpose") {
    FPRing r = FPRing::presented({"x", "y"}, {"x*y"});
    KahlerTangent tr = kahler_tangent(r);
    FPRing rp = FPRing::free({"u"});
    DualTower tow = dual_numbers(rp);

    // the co-structure zero transposes to the zero vector field
    DualTower towr = dual_numbers(r);
    CHECK(morphisms_equal(flat(kahler_zero(tr), tr, towr), dual_zero(towr)));

    std::mt19937 rng(99);
    for (int i = 0; i < 50; ++i) {
        // g: T(R) -> Q[u] killing the y-column keeps both relations at 0
        RingMorphism g(tr.ring, rp,
                       {oracle::random_poly(rng, rp.vars(), 2, 2), rp.zero_poly(),
                        oracle::random_poly(rng, rp.vars(), 2, 2), rp.zero_poly()});
        RingMorphism f = flat(g, tr, tow);
        CHECK(morphisms_equal(sharp(f, tr, tow), g));
        CHECK(morphisms_equal(flat(sharp(f, tr, tow), tr, tow), f));
    }

    // naturality in R': post-composing with Tbar(h) matches h after sharp
    FPRing rq = FPRing::free({"v"});
    DualTower tow2 = dual_numbers(rq);
    for (int i = 0; i < 25; ++i) {
        RingMorphism g(tr.ring, rp,
                       {oracle::random_poly(rng, rp.vars(), 2, 2), rp.zero_poly(),
                        oracle::random_poly(rng, rp.vars(), 2, 2), rp.zero_poly()});
        RingMorphism f = flat(g, tr, tow);
        RingMorphism h(rp, rq, {oracle::random_poly(rng, rq.vars(), 2, 2)});
        RingMorphism th = apply_T(h, tow, tow2);
        CHECK(morphisms_equal(sharp(compose(th, f), tr, tow2), compose(h, sharp(f, tr, tow))));
    }
}
