#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "omc/immersion.hpp"
#include "omc/standard.hpp"

using namespace omc;

namespace {

VCell at(const CatPtr& C, int dim, const std::string& id) { return C->vcell(*C->find(dim, id)); }

OmegaFunctor by_ids(const CatPtr& D, const CatPtr& E,
                    std::vector<std::vector<std::string>> ids, const char* name) {
    std::vector<std::vector<VCell>> m(ids.size());
    for (int k = 0; k < static_cast<int>(ids.size()); ++k)
        for (auto& s : ids[k]) m[k].push_back(E->vcell(*E->find(k, s)));
    return OmegaFunctor(D, E, std::move(m), name);
}

// The constant functor onto an object.
OmegaFunctor pick(const CatPtr& D, const CatPtr& E, const std::string& obj, const char* name) {
    VCell a = at(E, 0, obj);
    std::vector<std::vector<VCell>> m(D->stored_cap() + 1);
    for (int k = 0; k <= D->stored_cap(); ++k) m[k].assign(D->size(k), E->pad(a, k));
    return OmegaFunctor(D, E, std::move(m), name);
}

bool has_law(const CheckReport& rep, const std::string& law) {
    for (const auto& v : rep.violations())
        if (v.law == law) return true;
    return false;
}

bool detail_mentions(const CheckReport& rep, const std::string& law, const std::string& text) {
    for (const auto& v : rep.violations())
        if (v.law == law && v.detail.find(text) != std::string::npos) return true;
    return false;
}

// Two parallel 1-cells joined by a strictly invertible 2-cell.
CatPtr invertible_two_cell() {
    CatBuilder b("pp", 2);
    b.add_cell(0, "a");
    b.add_cell(0, "b");
    b.add_cell(1, "f", "a", "b");
    b.add_cell(1, "g", "a", "b");
    b.add_cell(2, "i", "f", "g");
    b.add_cell(2, "j", "g", "f");
    b.complete_units();
    b.add_comp(2, 1, "i", "j", "1(f)");
    b.add_comp(2, 1, "j", "i", "1(g)");
    return b.build();
}

PolyPtr arrow_poly() {
    PolyBuilder b("arrow", 1);
    b.add_gen(0, "a", {}, {});
    b.add_gen(0, "b", {}, {});
    b.add_gen(1, "u", lit0("a"), lit0("b"));
    return b.build();
}

} // namespace

TEST_CASE("certified immersions carry retraction, contraction and naturality laws") {
    auto II = interval_iso();
    auto T = terminal();

    auto cid = is_immersion(identity_functor(II));
    REQUIRE(cid.has_value());
    CHECK(cid->checks.ok());
    CHECK(cid->checks.checked() == 5);
    CHECK(immersion_implies_weq(identity_functor(II), *cid).ok());

    OmegaFunctor f = pick(T, II, "a", "pick(a)");
    auto cert = is_immersion(f);
    REQUIRE(cert.has_value());
    CHECK(cert->checks.ok());
    CHECK(cert->checks.checked() == 5);
    // the retraction of a point inclusion is the unique collapse
    CHECK(cert->g.same_map(bang(II, T)));

    CheckReport weq = immersion_implies_weq(f, *cert);
    CHECK(weq.ok());
    CHECK(weq.checked() == 13);
}

TEST_CASE("a strictly invertible 2-cell certifies the classifier of one leg") {
    auto PP = invertible_two_cell();
    REQUIRE(validate_category(*PP).ok());

    OmegaFunctor cls = sng(PP, at(PP, 1, "f"), "cls(f)");
    auto cert = is_immersion(cls);
    REQUIRE(cert.has_value());
    CHECK(cert->checks.ok());
    // the retraction folds the parallel leg back onto the classified one
    CHECK(PP->display(cert->g.apply(at(PP, 1, "g"))) == "f");

    CheckReport weq = immersion_implies_weq(cls, *cert);
    CHECK(weq.ok());
    CHECK(weq.checked() == 33);
}

TEST_CASE("maps without a retraction or a contraction are refused exhaustively") {
    auto T = terminal();
    auto W = walking_arrow();
    auto II = interval_iso();

    CHECK_FALSE(is_immersion(pick(T, W, "a", "pick(a)")).has_value());
    CHECK_FALSE(is_immersion(by_ids(W, II, {{"a", "b"}, {"1(a)", "1(b)", "u"}}, "arrows"))
                    .has_value());
    // no reversible 1-cells anywhere: every point inclusion is refused
    CHECK_FALSE(is_immersion(pick(T, iso_square(), "a", "pick(a)")).has_value());
    // a disjoint summand cannot be contracted onto the other one
    auto P = coproduct(II, T);
    CHECK_FALSE(is_immersion(coproduct_inj(P, II, 0)).has_value());
}

TEST_CASE("extensions along an immersion restrict back to the given map") {
    auto T = terminal();
    auto II = interval_iso();
    auto W = walking_arrow();

    OmegaFunctor f = pick(T, II, "a", "pick(a)");
    auto cert = is_immersion(f);
    REQUIRE(cert.has_value());

    OmegaFunctor u = pick(T, W, "a", "pick(a)");
    OmegaFunctor v = extend_along_immersion(*cert, u);
    CHECK(compose(v, f).same_map(u));
}

TEST_CASE("table pushouts of a certified immersion are certified and universal") {
    auto T = terminal();
    auto II = interval_iso();
    OmegaFunctor f = pick(T, II, "a", "pick(a)");
    auto TT = coproduct(T, T);
    OmegaFunctor a = coproduct_inj(TT, T, 0);

    CheckReport rep = pushout_immersion_suite(f, a);
    CHECK(rep.ok());
    CHECK(rep.checked() == 86);

    CatPushout P = cat_pushout(f, a, "po");
    REQUIRE(P.cat->stored_cap() == 1);
    CHECK(P.cat->size(0) == 3);
    CHECK(P.cat->size(1) == 5);
    CHECK(validate_category(*P.cat).ok());
    CHECK(compose(P.jy, f).same_map(compose(P.jz, a)));

    // mediating functor out of the cocone, fixed by its legs
    OmegaFunctor u = identity_functor(II);
    OmegaFunctor v = coproduct_copair(TT, pick(T, II, "a", "pa"), pick(T, II, "b", "pb"));
    OmegaFunctor out = pushout_copair(P, u, v);
    CHECK(validate_functor(out).ok());
    CHECK(compose(out, P.jy).same_map(u));
    CHECK(compose(out, P.jz).same_map(v));

    // legs that disagree on a merged cell are rejected, not averaged
    OmegaFunctor w = coproduct_copair(TT, pick(T, II, "b", "pb"), pick(T, II, "b", "pb"));
    CHECK_THROWS_AS(pushout_copair(P, u, w), precondition_error);
}

TEST_CASE("a pushout that forces a free composite is reported inconclusive") {
    auto T = terminal();
    OmegaFunctor f = pick(T, interval_iso(), "a", "pick(a)");
    OmegaFunctor a = pick(T, walking_arrow(), "a", "pick(a)");

    CheckReport rep = pushout_immersion_suite(f, a);
    CHECK(rep.only_inconclusive());
    CHECK(detail_mentions(rep, "inconclusive:pushout-closure", "free composite"));
}

TEST_CASE("presented pushouts run end to end or flag the obstruction") {
    PolyPtr arrow = arrow_poly();
    PolyMorphism idA = poly_identity(arrow);

    CheckReport rep = pushout_immersion_suite(idA, idA);
    CHECK(rep.ok());
    CHECK(rep.checked() == 35);

    // the input must itself be certified before its pushout is trusted
    PolyBuilder pb("pt", 1);
    pb.add_gen(0, "a", {}, {});
    PolyPtr pt = pb.build();
    PolyMorphism m{pt, arrow, {{0}}, "m"};
    CheckReport bad = pushout_immersion_suite(m, poly_identity(pt));
    CHECK(bad.refuted());
    CHECK(has_law(bad, "pushout-input"));

    // collapsing the endpoints produces a loop whose free category is infinite
    PolyBuilder lb("loop", 1);
    lb.add_gen(0, "x", {}, {});
    lb.add_gen(1, "e", lit0("x"), lit0("x"));
    PolyPtr loop = lb.build();
    PolyMorphism collapse{arrow, loop, {{0, 0}, {0}}, "collapse"};
    REQUIRE(validate_poly_morphism(collapse).ok());

    Budget tight;
    tight.cells_per_dim = 300;
    CheckReport inc = pushout_immersion_suite(idA, collapse, tight);
    CHECK(inc.only_inconclusive());
    CHECK(detail_mentions(inc, "inconclusive:pushout-materialize", "free category"));
}

TEST_CASE("trivial fibrations coincide with globe-filling lifts on an exhaustive family") {
    std::vector<CatPtr> cats{terminal(), discrete(2), walking_arrow(), interval_iso()};
    int total = 0;
    for (auto& A : cats)
        for (auto& B : cats)
            for (const auto& f : enumerate_functors(A, B)) {
                CheckReport rep = lifting_tfib_check(f);
                INFO(rep.summary());
                CHECK(rep.ok());
                ++total;
            }
    CHECK(total == 39);

    auto II = interval_iso();
    CHECK(lifting_tfib_check(identity_functor(II)).checked() == 10);
    CHECK(lifting_tfib_check(bang(II, terminal())).checked() == 9);
    CHECK(lifting_tfib_check(pick(terminal(), II, "a", "pick(a)")).checked() == 2);
}
