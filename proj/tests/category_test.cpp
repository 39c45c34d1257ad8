#include <catch2/catch_amalgamated.hpp>

#include "omc/category.hpp"
#include "omc/functor.hpp"
#include "omc/json_io.hpp"
#include "omc/standard.hpp"

using namespace omc;

TEST_CASE("standard fixtures validate") {
    for (auto C : {terminal(), discrete(2), walking_arrow(), interval_iso(), globe(3),
                   boundary_globe(3)}) {
        auto rep = validate_category(*C);
        INFO(rep.summary());
        CHECK(rep.ok());
    }
}

TEST_CASE("globe cell counts") {
    // One generator per dimension plus unit chains:
    // counts g(k) = 2 + g(k-1) below the top, 1 + g(n-1) at the top.
    std::vector<std::vector<std::size_t>> expect = {
        {1}, {2, 3}, {2, 4, 5}, {2, 4, 6, 7}, {2, 4, 6, 8, 9}};
    for (int n = 0; n <= 4; ++n) {
        auto G = globe(n);
        REQUIRE(G->stored_cap() == n);
        for (int k = 0; k <= n; ++k) CHECK(G->size(k) == expect[n][k]);
    }
    std::vector<std::vector<std::size_t>> bexpect = {{}, {2}, {2, 4}, {2, 4, 6}, {2, 4, 6, 8}};
    for (int n = 1; n <= 4; ++n) {
        auto B = boundary_globe(n);
        REQUIRE(B->stored_cap() == n - 1);
        for (int k = 0; k < n; ++k) CHECK(B->size(k) == bexpect[n][k]);
    }
    CHECK(boundary_globe(0)->stored_cap() == -1);
}

TEST_CASE("padded cells realize implicit units") {
    auto C = interval_iso();
    VCell a = C->vcell(*C->find(0, "a"));
    VCell u = C->vcell(*C->find(1, "u"));
    VCell v = C->vcell(*C->find(1, "v"));
    VCell ua = C->vcell(*C->find(1, "1(a)"));

    CHECK(C->unit(a) == ua);
    CHECK(C->is_unit(ua));
    CHECK(C->unit_base(ua) == a);
    CHECK_FALSE(C->is_unit(u));

    // Above the stored range everything is an iterated unit.
    VCell u2 = C->pad(u, 3);
    CHECK(u2.base == u.base);
    CHECK(C->src(u2) == C->pad(u, 2));
    CHECK(C->tgt(u2) == C->pad(u, 2));
    CHECK(C->bsrc(u2, 0) == a);

    // resolve pushes through stored unit chains.
    VCell r = C->resolve(CellRef{2, "a"});
    CHECK(r.base == ua.base);
    CHECK(r.dim == 2);
    CHECK(C->display(r) == "1^1(1(a))");
}

TEST_CASE("padded composition") {
    auto C = interval_iso();
    VCell a = C->vcell(*C->find(0, "a"));
    VCell b = C->vcell(*C->find(0, "b"));
    VCell u = C->vcell(*C->find(1, "u"));
    VCell v = C->vcell(*C->find(1, "v"));

    CHECK(C->comp(u, v, 0) == C->unit(a));
    CHECK(C->comp(v, u, 0) == C->unit(b));
    CHECK(C->comp(C->unit(a), u, 0) == u);
    CHECK(C->comp(u, C->unit(b), 0) == u);

    // Mixed-dimension whiskering pads the lower cell.
    CHECK(C->comp(C->pad(a, 1), u, 0) == u);
    CHECK(C->comp(C->pad(u, 2), C->pad(v, 2), 0) == C->pad(C->unit(a), 2));
    CHECK(C->comp(C->pad(u, 2), C->pad(u, 2), 1) == C->pad(u, 2));
    CHECK_FALSE(C->try_comp(u, u, 0).has_value());
    CHECK_FALSE(C->try_comp(C->pad(u, 2), C->pad(v, 2), 1).has_value());

    CHECK(C->cells_between(1, a, b).size() == 1);
    CHECK(C->cells_between(2, u, u) == std::vector<VCell>{C->pad(u, 2)});
    CHECK(C->cells_between(2, u, v).empty());
}

TEST_CASE("validator refuses broken tables") {
    SECTION("associativity violation") {
        // Three composable loops with a deliberately wrong triple composite.
        CatBuilder b("assoc_broken", 1);
        b.add_cell(0, "x");
        b.add_cell(1, "e", "x", "x");
        b.add_cell(1, "f", "x", "x");
        // e o e = f, e o f = e, f o e = e, f o f = f  (not associative:
        // (e o e) o e = f o e = e, but e o (e o e) = e o f = e; tweak one)
        b.add_comp(1, 0, "e", "e", "f");
        b.add_comp(1, 0, "e", "f", "e");
        b.add_comp(1, 0, "f", "e", "f"); // breaks associativity
        b.add_comp(1, 0, "f", "f", "f");
        b.complete_units();
        auto rep = validate_category(*b.build());
        CHECK(rep.refuted());
        bool found = false;
        for (const auto& v : rep.violations()) found |= v.law == "associativity";
        CHECK(found);
    }
    SECTION("missing composite") {
        CatBuilder b("incomplete", 1);
        b.add_cell(0, "x");
        b.add_cell(0, "y");
        b.add_cell(1, "f", "x", "y");
        b.add_cell(1, "g", "y", "x");
        b.complete_units(); // f o g and g o f stay undefined
        auto rep = validate_category(*b.build());
        CHECK(rep.refuted());
    }
    SECTION("globularity violation") {
        CatBuilder b("glob_broken", 2);
        b.add_cell(0, "x");
        b.add_cell(0, "y");
        b.add_cell(1, "f", "x", "y");
        b.add_cell(1, "h", "y", "x");
        b.add_cell(2, "A", "f", "h"); // src/tgt not parallel
        b.complete_units();
        auto rep = validate_category(*b.build());
        CHECK(rep.refuted());
    }
    SECTION("schema errors throw") {
        CatBuilder b("bad", 1);
        b.add_cell(0, "x");
        CHECK_THROWS_AS(b.add_cell(0, "x"), schema_error);
        b.add_cell(1, "f", "x", "nowhere"); // boundary resolution happens at build
        CHECK_THROWS_AS(b.build(), schema_error);
        CHECK_THROWS_AS(b.add_cell(2, "too-high", "x", "x"), schema_error);
        CatBuilder b2("gap", 3);
        b2.add_cell(0, "x");
        b2.add_cell(2, "A", "x", "x"); // dim 1 empty below dim 2
        CHECK_THROWS_AS(b2.build(), schema_error);
    }
}

TEST_CASE("functors validate and compose") {
    auto II = interval_iso();
    auto T = terminal();
    auto W = walking_arrow();

    auto to_pt = bang(II, T);
    CHECK(validate_functor(to_pt).ok());

    auto idw = identity_functor(W);
    CHECK(validate_functor(idw).ok());

    // a |-> a into the walking arrow.
    std::vector<std::vector<VCell>> m(1);
    m[0] = {W->vcell(*W->find(0, "a"))};
    OmegaFunctor pick_a(T, W, m, "pick_a");
    CHECK(validate_functor(pick_a).ok());
    CHECK(compose(bang(W, T), pick_a).same_map(identity_functor(T)));

    // Non-functorial map: send u to 1(a) but keep boundaries apart.
    std::vector<std::vector<VCell>> bad(2);
    bad[0] = {W->vcell(*W->find(0, "a")), W->vcell(*W->find(0, "b"))};
    bad[1] = {W->vcell(*W->find(1, "1(a)")), W->vcell(*W->find(1, "1(b)")),
              W->vcell(*W->find(1, "1(a)"))};
    OmegaFunctor broken(W, W, bad, "broken");
    CHECK(validate_functor(broken).refuted());
}

TEST_CASE("products and coproducts") {
    auto II = interval_iso();
    auto W = walking_arrow();

    auto P = product(II, W);
    auto rep = validate_category(*P.cat);
    INFO(rep.summary());
    CHECK(rep.ok());
    CHECK(P.cat->size(0) == 4);
    CHECK(P.cat->size(1) == 12);
    CHECK(validate_functor(product_proj(P, II, true)).ok());
    CHECK(validate_functor(product_proj(P, W, false)).ok());

    auto T = terminal();
    auto S = coproduct(II, T);
    auto rep2 = validate_category(*S.cat);
    INFO(rep2.summary());
    CHECK(rep2.ok());
    CHECK(S.cat->size(0) == 3);
    CHECK(S.cat->size(1) == 5); // u, v, 1(a), 1(b), 1(pt)
    CHECK(validate_functor(coproduct_inj(S, II, 0)).ok());
    CHECK(validate_functor(coproduct_inj(S, T, 1)).ok());
    auto cp = coproduct_copair(S, bang(II, T), identity_functor(T));
    CHECK(validate_functor(cp).ok());
}

TEST_CASE("category json round trip") {
    auto II = interval_iso();
    Json j = category_to_json(*II);
    auto C2 = category_from_json(j);
    CHECK(validate_category(*C2).ok());
    CHECK(category_to_json(*C2).dump() == j.dump());
    CHECK(C2->size(0) == 2);
    CHECK(C2->size(1) == 4);
    VCell u = C2->vcell(*C2->find(1, "u"));
    VCell v = C2->vcell(*C2->find(1, "v"));
    CHECK(C2->comp(u, v, 0) == C2->unit(C2->vcell(*C2->find(0, "a"))));

    Json bad = j;
    bad["comps"][0]["result"] = "zzz";
    CHECK_THROWS_AS(category_from_json(bad), schema_error);
}

TEST_CASE("functor json round trip") {
    auto II = interval_iso();
    auto f = bang(II, terminal());
    Json j = functor_to_json(f);
    auto g = functor_from_json(j);
    CHECK(validate_functor(g).ok());
    CHECK(functor_to_json(g).dump() == j.dump());
}
