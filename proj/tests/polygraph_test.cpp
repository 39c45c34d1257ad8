#include <catch2/catch_amalgamated.hpp>

#include "omc/lifting.hpp"
#include "omc/polygraph.hpp"
#include "omc/standard.hpp"

using namespace omc;

namespace {

PolyPtr loop_poly() {
    PolyBuilder b("loop", 1);
    b.add_gen(0, "x");
    b.add_gen(1, "e", lit0("x"), lit0("x"));
    return b.build();
}

PolyPtr interchange_poly() {
    PolyBuilder b("I2", 2);
    b.add_gen(0, "a");
    b.add_gen(0, "b");
    b.add_gen(0, "c");
    b.add_gen(1, "f", lit0("a"), lit0("b"));
    b.add_gen(1, "f'", lit0("a"), lit0("b"));
    b.add_gen(1, "g", lit0("b"), lit0("c"));
    b.add_gen(1, "g'", lit0("b"), lit0("c"));
    b.add_gen(2, "al", lit1("a", {"f"}), lit1("a", {"f'"}));
    b.add_gen(2, "be", lit1("b", {"g"}), lit1("b", {"g'"}));
    return b.build();
}

}  // namespace

TEST_CASE("free words compose by concatenation") {
    auto L = loop_poly();
    FreeCatView V(L);
    FreeCell e = V.gen_cell(1, "e");
    auto ee = V.comp(e, e, 0);
    REQUIRE(ee.has_value());
    auto eee = V.comp(*ee, e, 0);
    REQUIRE(eee.has_value());
    CHECK(V.display(*eee) == "e*e*e");
    CHECK(V.equal(*V.comp(*ee, e, 0), *V.comp(e, *ee, 0)));
    CHECK_FALSE(V.equal(*ee, *eee));

    // materialization must refuse: the loop generates infinitely many words
    CHECK_THROWS_AS(materialize(L), budget_error);
}

TEST_CASE("parallel generators give exactly two non-identity arrows") {
    PolyBuilder b("pair", 1);
    b.add_gen(0, "a");
    b.add_gen(0, "b");
    b.add_gen(1, "f", lit0("a"), lit0("b"));
    b.add_gen(1, "g", lit0("a"), lit0("b"));
    auto T = materialize(b.build());
    REQUIRE(validate_category(*T.cat).ok());
    CHECK(T.cat->size(1) == 4);
    int nonunit = 0;
    for (auto v : T.cat->cells_at(1))
        if (!T.cat->is_unit(v)) ++nonunit;
    CHECK(nonunit == 2);
}

TEST_CASE("interchange equality of whisker sequences") {
    auto P = interchange_poly();
    FreeCatView V(P);
    int f = *P->find_gen(1, "f"), fp = *P->find_gen(1, "f'");
    int g = *P->find_gen(1, "g"), gp = *P->find_gen(1, "g'");
    int al = *P->find_gen(2, "al"), be = *P->find_gen(2, "be");

    FreeCell A{2, 0, {f, g}, {Whisker{{}, al, {g}}, Whisker{{fp}, be, {}}}};
    FreeCell B{2, 0, {f, g}, {Whisker{{f}, be, {}}, Whisker{{}, al, {gp}}}};
    REQUIRE(V.valid(A));
    REQUIRE(V.valid(B));
    CHECK_FALSE(A == B);   // distinct representations
    CHECK(V.equal(A, B));  // one interchange swap apart
    CHECK(fc_canonical_key(*P, A) == fc_canonical_key(*P, B));

    // horizontal composition produces the left-first representation
    auto H = V.comp(V.gen_cell(2, "al"), V.gen_cell(2, "be"), 0);
    REQUIRE(H.has_value());
    CHECK(*H == A);

    // equality is reflexive and symmetric, and respects vertical pasting
    CHECK(V.equal(A, A));
    CHECK(V.equal(B, A));
    auto A2 = V.comp(A, V.unit(V.tgt(A)), 1);
    auto B2 = V.comp(B, V.unit(V.tgt(B)), 1);
    REQUIRE(A2.has_value());
    CHECK(V.equal(*A2, *B2));
    auto UA = V.comp(V.unit(V.src(A)), A, 1);
    REQUIRE(UA.has_value());
    CHECK(*UA == A);

    // a materialized table identifies the two representations
    auto T = materialize(P);
    REQUIRE(validate_category(*T.cat).ok());
    REQUIRE(T.find(A).has_value());
    CHECK(*T.find(A) == *T.find(B));
}

TEST_CASE("globe presentations materialize to the globe tables") {
    for (int n = 0; n <= 3; ++n) {
        auto T = materialize(globe_polygraph(n));
        REQUIRE(validate_category(*T.cat).ok());
        INFO("globe " << n);
        CHECK(find_iso(T.cat, globe(n)).has_value());
    }
    for (int n = 0; n <= 4; ++n) {
        auto T = materialize(boundary_globe_polygraph(n));
        REQUIRE(validate_category(*T.cat).ok());
        INFO("boundary globe " << n);
        CHECK(find_iso(T.cat, boundary_globe(n)).has_value());
    }
}

TEST_CASE("boundary pushout square") {
    // bd O(n+1) is the pushout of the boundary inclusion along itself
    for (int n = 0; n <= 3; ++n) {
        auto i = globe_inclusion_poly(n);
        auto PO = pushout_polygraph(i, i, "glued");
        CHECK(validate_poly_morphism(PO.j1).ok());
        CHECK(validate_poly_morphism(PO.j2).ok());
        auto T = materialize(PO.poly);
        INFO("dimension " << n);
        CHECK(find_iso(T.cat, boundary_globe(n + 1)).has_value());
    }
    // table-level cocone of the same square
    for (int n = 0; n <= 3; ++n) {
        auto [cm, cp] = boundary_cocone(n);
        CHECK(validate_functor(cm).ok());
        CHECK(validate_functor(cp).ok());
        auto i = globe_inclusion(n);
        CHECK(validate_functor(i).ok());
        CHECK(compose(cm, i).same_map(compose(cp, i)));
    }
}

TEST_CASE("pushout along the identity returns the other leg") {
    auto i1 = globe_inclusion_poly(1);
    auto PO = pushout_polygraph(i1, poly_identity(i1.dom));
    auto T = materialize(PO.poly);
    CHECK(find_iso(T.cat, globe(1)).has_value());
}

TEST_CASE("gluing interval endpoints yields the loop") {
    PolyBuilder pt("pt", 0);
    pt.add_gen(0, "pt");
    auto P = pt.build();
    auto i1 = globe_inclusion_poly(1);
    PolyMorphism collapse{i1.dom, P, {{0, 0}}, "collapse"};
    REQUIRE(validate_poly_morphism(collapse).ok());
    auto PO = pushout_polygraph(i1, collapse);
    CHECK(PO.poly->gen_count(0) == 1);
    CHECK(PO.poly->gen_count(1) == 1);
    CHECK_THROWS_AS(materialize(PO.poly), budget_error);  // free monoid on one letter
}

TEST_CASE("pushout universal property against a small category") {
    auto i1 = globe_inclusion_poly(1);
    auto PO = pushout_polygraph(i1, i1);
    auto TS = materialize(i1.cod);
    auto TP = materialize(PO.poly);
    auto Qj1 = functor_of_morphism(PO.j1, TS, TP);
    auto Qj2 = functor_of_morphism(PO.j2, TS, TP);
    REQUIRE(validate_functor(Qj1).ok());
    REQUIRE(validate_functor(Qj2).ok());

    // two parallel non-identity arrows downstairs
    CatBuilder cb("two_arrows", 1);
    cb.add_cell(0, "x");
    cb.add_cell(0, "y");
    cb.add_cell(1, "f", "x", "y");
    cb.add_cell(1, "g", "x", "y");
    cb.complete_units();
    auto C = cb.build();

    auto pick = [&](const char* arrow) {
        std::vector<std::vector<VCell>> m(2);
        for (auto v : TS.cat->cells_at(0))
            m[0].push_back(C->vcell(*C->find(0, TS.cat->id_of(v.base) == "e0-" ? "x" : "y")));
        for (auto v : TS.cat->cells_at(1)) {
            const auto& id = TS.cat->id_of(v.base);
            if (id == "o")
                m[1].push_back(C->vcell(*C->find(1, arrow)));
            else if (id == "1(e0-)")
                m[1].push_back(C->unit(C->vcell(*C->find(0, "x"))));
            else
                m[1].push_back(C->unit(C->vcell(*C->find(0, "y"))));
        }
        return OmegaFunctor(TS.cat, C, m, std::string("pick_") + arrow);
    };
    auto F1 = pick("f"), F2 = pick("g");
    REQUIRE(validate_functor(F1).ok());
    REQUIRE(validate_functor(F2).ok());

    int mediators = 0;
    for (auto& H : enumerate_functors(TP.cat, C))
        if (compose(H, Qj1).same_map(F1) && compose(H, Qj2).same_map(F2)) ++mediators;
    CHECK(mediators == 1);
}

TEST_CASE("cell classifiers") {
    auto II = interval_iso();
    VCell a = II->vcell(*II->find(0, "a"));
    VCell b = II->vcell(*II->find(0, "b"));
    VCell u = II->vcell(*II->find(1, "u"));

    auto pab = pair_functor(II, a, b);
    CHECK(validate_functor(pab).ok());
    auto B1 = pab.dom();
    CHECK(pab.apply(B1->vcell(*B1->find(0, "e0-"))) == a);
    CHECK(pab.apply(B1->vcell(*B1->find(0, "e0+"))) == b);

    auto su = sng(II, u);
    CHECK(validate_functor(su).ok());
    CHECK(su.apply(su.dom()->vcell(*su.dom()->find(1, "o"))) == u);

    auto puu = pair_functor(II, u, u);
    CHECK(validate_functor(puu).ok());

    // both components of a degenerate pair agree with the single classifier
    auto paa = pair_functor(II, a, a);
    CHECK(paa.apply(paa.dom()->vcell(*paa.dom()->find(0, "e0-"))) ==
          paa.apply(paa.dom()->vcell(*paa.dom()->find(0, "e0+"))));

    CHECK_THROWS_AS(pair_functor(II, a, u), precondition_error);
}

TEST_CASE("lifting search on globe squares") {
    auto II = interval_iso();
    auto W = walking_arrow();
    auto T = terminal();

    // identity left leg: the lift is the bottom
    auto idw = identity_functor(W);
    LiftingProblem P0(idw, bang(W, T), idw, bang(W, T));
    auto l0 = find_lift(P0);
    REQUIRE(l0.has_value());
    CHECK(l0->same_map(idw));

    // boundary inclusion against the collapse of the isomorphism interval
    auto i1 = globe_inclusion(1);
    VCell a = II->vcell(*II->find(0, "a"));
    VCell b = II->vcell(*II->find(0, "b"));
    LiftingProblem P1(i1, bang(II, T), pair_functor(II, a, b),
                      bang(i1.cod(), T));
    auto l1 = find_lift(P1);
    REQUIRE(l1.has_value());
    CHECK(l1->apply(l1->dom()->vcell(*l1->dom()->find(1, "o"))) ==
          II->vcell(*II->find(1, "u")));

    // same square against the walking arrow, reversed: exhaustive failure
    VCell wa = W->vcell(*W->find(0, "a"));
    VCell wb = W->vcell(*W->find(0, "b"));
    LiftingProblem P2(i1, bang(W, T), pair_functor(W, wb, wa), bang(i1.cod(), T));
    CHECK_FALSE(find_lift(P2).has_value());
}

TEST_CASE("retract diagram verification") {
    auto W = walking_arrow();
    auto T = terminal();
    auto f = bang(W, T);
    auto rep = retract_check(f, f, identity_functor(W), identity_functor(W),
                             identity_functor(T), identity_functor(T));
    CHECK(rep.ok());

    // broken diagram: swap a section for a non-commuting functor
    std::vector<std::vector<VCell>> m(1);
    m[0] = {W->vcell(*W->find(0, "a"))};
    OmegaFunctor pick_a(T, W, m, "pick_a");
    auto bad = retract_check(pick_a, pick_a, identity_functor(T), identity_functor(T),
                             bang(W, T), pick_a);
    CHECK(bad.refuted());
}
