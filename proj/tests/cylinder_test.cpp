#include <catch2/catch_amalgamated.hpp>

#include "omc/cylinder.hpp"
#include "omc/gamma.hpp"
#include "omc/lifting.hpp"
#include "omc/standard.hpp"

using namespace omc;

namespace {

VCell at(const CatPtr& C, int dim, const std::string& id) { return C->vcell(*C->find(dim, id)); }

// Functor sending every cell to the cell with the same id.
OmegaFunctor by_ids(const CatPtr& D, const CatPtr& E, const std::string& name) {
    std::vector<std::vector<VCell>> m(D->stored_cap() + 1);
    for (int k = 0; k <= D->stored_cap(); ++k)
        for (auto x : D->cells_at(k)) m[k].push_back(E->vcell(*E->find(k, D->id_of(x.base))));
    return OmegaFunctor(D, E, std::move(m), name);
}

CatPtr two_arrows() {
    CatBuilder b("two_arrows", 1);
    b.add_cell(0, "a");
    b.add_cell(0, "b");
    b.add_cell(1, "f", "a", "b");
    b.add_cell(1, "g", "a", "b");
    b.complete_units();
    return b.build();
}

} // namespace

TEST_CASE("cylinder categories validate and match hand counts") {
    struct Row {
        CatPtr base;
        std::vector<std::size_t> sizes;
    };
    for (const auto& row : {Row{interval_iso(), {4, 16}},
                            Row{walking_arrow(), {2, 3}},
                            Row{globe(2), {2, 4, 5}},
                            Row{discrete(3), {3}},
                            Row{iso_square(), {3, 27, 291}}}) {
        auto G = gamma_category(row.base);
        INFO(G.cat->name());
        REQUIRE(G.cat->stored_cap() == static_cast<int>(row.sizes.size()) - 1);
        for (int k = 0; k <= G.cat->stored_cap(); ++k) CHECK(G.cat->size(k) == row.sizes[k]);
        auto rep = validate_category(*G.cat);
        INFO(rep.summary());
        CHECK(rep.ok());

        EqvDecider dec(row.base);
        for (int k = 0; k <= G.cat->stored_cap(); ++k)
            for (const auto& U : G.cyls[k]) {
                auto cr = cyl_check(dec, U);
                INFO(cr.summary());
                REQUIRE(cr.ok());
            }
    }
}

TEST_CASE("cylinder category over a cylinder-free base is the base") {
    for (auto C : {walking_arrow(), globe(2), discrete(3)}) {
        auto G = gamma_category(C);
        auto iso = find_iso(G.cat, C);
        INFO(C->name());
        CHECK(iso.has_value());
    }
}

TEST_CASE("top and bottom are trivial fibrations, the trivial section splits them") {
    for (auto C : {interval_iso(), walking_arrow(), globe(2), iso_square()}) {
        auto G = gamma_category(C);
        auto top = top_functor(G);
        auto bot = bot_functor(G);
        auto triv = triv_functor(G);
        INFO(C->name());
        CHECK(validate_functor(top).ok());
        CHECK(validate_functor(bot).ok());
        CHECK(validate_functor(triv).ok());
        CHECK(compose(top, triv).same_map(identity_functor(C)));
        CHECK(compose(bot, triv).same_map(identity_functor(C)));

        auto tf = is_trivial_fibration(top);
        INFO(tf.summary());
        CHECK(tf.ok());
        auto bf = is_trivial_fibration(bot);
        INFO(bf.summary());
        CHECK(bf.ok());
        auto tw = is_weak_equivalence(triv);
        INFO(tw.summary());
        CHECK(tw.ok());
    }
}

TEST_CASE("induced functor on cylinders is natural") {
    auto W = walking_arrow();
    auto I = interval_iso();
    auto f = by_ids(W, I, "incl");
    REQUIRE(validate_functor(f).ok());

    auto GW = gamma_category(W);
    auto GI = gamma_category(I);
    auto Gf = gamma_functor(GW, GI, f);
    CHECK(validate_functor(Gf).ok());

    CHECK(compose(top_functor(GI), Gf).same_map(compose(f, top_functor(GW))));
    CHECK(compose(bot_functor(GI), Gf).same_map(compose(f, bot_functor(GW))));
    CHECK(compose(Gf, triv_functor(GW)).same_map(compose(triv_functor(GI), f)));

    auto Gid = gamma_functor(GI, GI, identity_functor(I));
    CHECK(Gid.same_map(identity_functor(GI.cat)));
}

TEST_CASE("concatenation is associative and unital") {
    auto C = iso_square();
    auto G = gamma_category(C);
    for (int k = 0; k <= G.cat->stored_cap(); ++k)
        for (const auto& U : G.cyls[k]) {
            CHECK(cyl_concat(*C, U, triv_cylinder(*C, U.bot)) == U);
            CHECK(cyl_concat(*C, triv_cylinder(*C, U.top), U) == U);
        }
    // All consecutive triples of 1-cylinders.
    std::size_t triples = 0;
    for (const auto& U : G.cyls[1])
        for (const auto& V : G.cyls[1]) {
            if (!cyl_consecutive(U, V)) continue;
            for (const auto& W : G.cyls[1]) {
                if (!cyl_consecutive(V, W)) continue;
                ++triples;
                CHECK(cyl_concat(*C, cyl_concat(*C, U, V), W) ==
                      cyl_concat(*C, U, cyl_concat(*C, V, W)));
            }
        }
    CHECK(triples > 0);
}

TEST_CASE("multiplication agrees with both whiskering decompositions") {
    auto Cp = iso_square();
    const auto& C = *Cp;
    VCell f = at(Cp, 1, "f"), g = at(Cp, 1, "g");
    VCell h = at(Cp, 1, "h"), k = at(Cp, 1, "k");
    auto U = cyl0(C, at(Cp, 2, "m(f,g)"));
    auto V = cyl0(C, at(Cp, 2, "m(h,k)"));

    auto M = cyl_mult(C, U, V);
    CHECK(M == cyl0(C, at(Cp, 2, "m(fh,gk)")));
    CHECK(cyl_concat(C, act_right(C, U, h), act_left(C, g, V)) == M);
    CHECK(cyl_concat(C, act_left(C, f, V), act_right(C, U, k)) == M);

    EqvDecider dec(Cp);
    CHECK(cyl_valid(dec, M));
}

TEST_CASE("degenerate cylinders are reversible cells") {
    auto Cp = iso_square();
    const auto& C = *Cp;
    EqvDecider dec(Cp);

    VCell m = at(Cp, 2, "m(f,g)");
    auto D = degenerate_of(C, m);
    CHECK(D.n == 1);
    CHECK(cyl_valid(dec, D));
    CHECK(cyl_degenerate(C, D));
    CHECK(cyl_pal(D) == m);

    VCell f = at(Cp, 1, "f");
    CHECK(degenerate_of(C, C.unit(f)) == triv_cylinder(C, f));
    CHECK(degenerate_of(C, C.unit(C.unit(f)), 1) == triv_cylinder(C, C.unit(f), 1));

    // Non-degenerate: a cylinder with a non-unit boundary connector.
    auto Ip = interval_iso();
    EqvDecider di(Ip);
    VCell u = at(Ip, 1, "u");
    auto cyls = cylinders_between(di, u, at(Ip, 1, "v"));
    REQUIRE(cyls.size() == 1);
    CHECK_FALSE(cyl_degenerate(*Ip, cyls[0]));
}

TEST_CASE("cylinders one past the stored range are units") {
    for (auto C : {interval_iso(), walking_arrow(), globe(2)}) {
        EqvDecider dec(C);
        const int m = C->stored_cap() + 1;
        std::size_t count = 0;
        for (auto x : C->cells_at(m))
            for (auto y : C->cells_at(m))
                for (const auto& W : cylinders_between(dec, x, y)) {
                    ++count;
                    CHECK(W == cyl_unit(*C, cyl_source(*C, W), m));
                }
        // Exactly the units of the top-dimensional cylinders.
        auto G = gamma_category(C);
        INFO(C->name());
        CHECK(count == G.cat->size(C->stored_cap()));
    }
}

TEST_CASE("transport along cylinders") {
    auto Ip = interval_iso();
    const auto& I = *Ip;
    EqvDecider dec(Ip);
    VCell u = at(Ip, 1, "u"), v = at(Ip, 1, "v");
    VCell ub = at(Ip, 1, "1(b)");

    auto U = cyl0(I, u);
    auto V = cyl0(I, ub);
    auto td = transport_topdown(dec, U, V, u);
    CHECK(td.cell == ub);
    CHECK(cyl_valid(dec, td.filler));
    CHECK(cyl_source(I, td.filler) == U);
    CHECK(cyl_target(I, td.filler) == V);
    // Weak uniqueness: the transported cell is the only candidate here.
    CHECK(I.cells_between(1, U.bot, V.bot) == std::vector<VCell>{ub});

    auto bu = transport_bottomup(dec, U, V, ub);
    CHECK(bu.cell == u);
    CHECK(cyl_valid(dec, bu.filler));

    // Depth-one instance with a genuine weak division step.
    auto Sp = iso_square();
    const auto& S = *Sp;
    EqvDecider ds(Sp);
    VCell f = at(Sp, 1, "f"), g = at(Sp, 1, "g");
    auto cu = cylinders_between(ds, f, g);
    auto cv = cylinders_between(ds, g, f);
    REQUIRE(cu.size() == 1);
    REQUIRE(cv.size() == 1);
    REQUIRE(cyl_parallel(S, cu[0], cv[0]));
    auto t2 = transport_topdown(ds, cu[0], cv[0], at(Sp, 2, "m(f,g)"));
    CHECK(t2.cell == at(Sp, 2, "m(g,f)"));
    CHECK(cyl_valid(ds, t2.filler));
    CHECK(cyl_source(S, t2.filler) == cu[0]);
    CHECK(cyl_target(S, t2.filler) == cv[0]);
}

TEST_CASE("fill between cylinders fails honestly") {
    auto Cp = two_arrows();
    const auto& C = *Cp;
    EqvDecider dec(Cp);
    VCell a = at(Cp, 0, "a"), b = at(Cp, 0, "b");
    VCell f = at(Cp, 1, "f"), g = at(Cp, 1, "g");

    // f and g are not connected by any reversible 2-cell.
    auto U = triv_cylinder(C, a);
    auto V = triv_cylinder(C, b);
    CHECK_FALSE(fill_between(dec, U, V, f, g).has_value());
    CHECK(fill_between(dec, U, V, f, f).has_value());

    // Transport along trivial cylinders is the identity.
    auto t = transport_topdown(dec, U, V, f);
    CHECK(t.cell == f);

    CHECK_THROWS_AS(fill_between(dec, U, V, f, at(Cp, 1, "1(a)")), precondition_error);
}

TEST_CASE("cylinder enumeration respects budgets") {
    Budget tight = Budget::current();
    tight.cylinders = 10;
    CHECK_THROWS_AS(gamma_category(iso_square(), tight), budget_error);

    Budget narrow = Budget::current();
    narrow.cells_per_dim = 5;
    CHECK_THROWS_AS(gamma_category(iso_square(), narrow), budget_error);
}
