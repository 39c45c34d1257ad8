#pragma once

// Gluing factorization of a functor f : X -> Y.
//
// The glued category has as n-cells the pairs (x, U) of an n-cell x of X
// and an n-cylinder U of Y whose top is the image of x; all structure is
// componentwise. The section x |-> (x, trivial cylinder) followed by the
// bottom evaluation (x, U) |-> bot U recovers f. The projection to X is a
// trivial fibration (it is a pullback of the top projection of the
// cylinder category), the section is a weak equivalence, and f itself is
// a weak equivalence exactly when the bottom evaluation is a trivial
// fibration — decided here by running both checks.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "omc/base.hpp"
#include "omc/category.hpp"
#include "omc/cylinder.hpp"
#include "omc/equivalence.hpp"
#include "omc/functor.hpp"
#include "omc/gamma.hpp"
#include "omc/standard.hpp"

namespace omc {

// Pairs (x, U) with top U = f x, all structure componentwise.
struct GluedCat {
    OmegaFunctor f;  // X -> Y
    GammaCat gamma;  // cylinder category of Y
    CatPtr cat;
    // Pair decomposition per stored dim and index: (cell of X, cell of gamma.cat).
    std::vector<std::vector<std::pair<VCell, VCell>>> parts;
};

inline GluedCat glue(const OmegaFunctor& f, const Budget& budget = Budget::current()) {
    GammaCat G = gamma_category(f.cod(), budget);
    const auto& X = *f.dom();
    const auto& GY = *G.cat;
    OmegaFunctor top = top_functor(G);
    const int stop = std::max(X.stored_cap(), GY.stored_cap());
    const int cap = std::max({X.cap(), GY.cap(), 0});
    CatBuilder bld("glue(" + f.name() + ")", cap);
    auto id_of = [&](VCell x, VCell c) { return Product::pair_id(X, GY, x, c); };
    auto matched = [&](VCell x, VCell c) { return top.apply(c) == f.apply(x); };
    for (int k = 0; k <= stop; ++k)
        for (auto x : X.cells_at(k))
            for (auto c : GY.cells_at(k)) {
                if (!matched(x, c)) continue;
                if (k == 0)
                    bld.add_cell(0, id_of(x, c));
                else
                    bld.add_cell(k, id_of(x, c), id_of(X.src(x), GY.src(c)),
                                 id_of(X.tgt(x), GY.tgt(c)));
                if (k < stop) bld.set_unit(k, id_of(x, c), id_of(X.unit(x), GY.unit(c)));
            }
    for (int k = 1; k <= stop; ++k)
        for (int p = 0; p < k; ++p)
            for (auto x : X.cells_at(k))
                for (auto x2 : X.cells_at(k)) {
                    auto rx = X.try_comp(x, x2, p);
                    if (!rx) continue;
                    for (auto c : GY.cells_at(k)) {
                        if (!matched(x, c)) continue;
                        for (auto c2 : GY.cells_at(k)) {
                            if (!matched(x2, c2)) continue;
                            auto rc = GY.try_comp(c, c2, p);
                            if (!rc) continue;
                            bld.add_comp(k, p, id_of(x, c), id_of(x2, c2), id_of(*rx, *rc));
                        }
                    }
                }
    GluedCat out{f, std::move(G), bld.build(), {}};
    out.parts.resize(stop + 1);
    for (int k = 0; k <= stop; ++k) {
        out.parts[k].resize(out.cat->size(k));
        for (auto x : X.cells_at(k))
            for (auto c : GY.cells_at(k)) {
                if (!matched(x, c)) continue;
                auto cell = out.cat->find(k, id_of(x, c));
                out.parts[k][cell->idx] = {x, c};
            }
    }
    return out;
}

// First projection (x, U) -> x; a pullback of the top projection, hence a
// trivial fibration.
inline OmegaFunctor glue_top(const GluedCat& G) {
    std::vector<std::vector<VCell>> m(G.cat->stored_cap() + 1);
    for (int k = 0; k <= G.cat->stored_cap(); ++k)
        for (const auto& [x, c] : G.parts[k]) m[k].push_back(G.f.dom()->pad(x, k));
    return OmegaFunctor(G.cat, G.f.dom(), std::move(m), "glue_top(" + G.f.name() + ")");
}

// Second projection (x, U) -> U into the cylinder category.
inline OmegaFunctor glue_cyls(const GluedCat& G) {
    std::vector<std::vector<VCell>> m(G.cat->stored_cap() + 1);
    for (int k = 0; k <= G.cat->stored_cap(); ++k)
        for (const auto& [x, c] : G.parts[k]) m[k].push_back(G.gamma.cat->pad(c, k));
    return OmegaFunctor(G.cat, G.gamma.cat, std::move(m), "glue_cyls(" + G.f.name() + ")");
}

// Canonical section x -> (x, trivial cylinder on f x); a weak equivalence.
inline OmegaFunctor glue_section(const GluedCat& G) {
    const auto& X = *G.f.dom();
    const auto& Y = *G.f.cod();
    std::vector<std::vector<VCell>> m(X.stored_cap() + 1);
    for (int k = 0; k <= X.stored_cap(); ++k)
        for (auto x : X.cells_at(k)) {
            VCell c = G.gamma.cell_of(triv_cylinder(Y, G.f.apply(x)));
            auto cell = G.cat->find(k, Product::pair_id(X, *G.gamma.cat, x, c));
            if (!cell) throw precondition_error("glue section: missing pair cell");
            m[k].push_back(G.cat->vcell(*cell));
        }
    return OmegaFunctor(G.f.dom(), G.cat, std::move(m), "glue_section(" + G.f.name() + ")");
}

// Bottom evaluation (x, U) -> bot U; glue_bottom . glue_section = f.
inline OmegaFunctor glue_bottom(const GluedCat& G) {
    OmegaFunctor bf = bot_functor(G.gamma);
    std::vector<std::vector<VCell>> m(G.cat->stored_cap() + 1);
    for (int k = 0; k <= G.cat->stored_cap(); ++k)
        for (const auto& [x, c] : G.parts[k]) m[k].push_back(bf.apply(G.gamma.cat->pad(c, k)));
    return OmegaFunctor(G.cat, G.f.cod(), std::move(m), "glue_bottom(" + G.f.name() + ")");
}

// Both structural projections of the cylinder category are trivial
// fibrations and the trivial-cylinder section is a weak equivalence.
inline CheckReport check_top_bot_fibrations(const CatPtr& C,
                                            const Budget& budget = Budget::current()) {
    GammaCat G = gamma_category(C, budget);
    CheckReport rep("cylinder projections on " + C->name());
    rep.merge(is_trivial_fibration(top_functor(G)));
    rep.merge(is_trivial_fibration(bot_functor(G)));
    rep.merge(is_weak_equivalence(triv_functor(G)));
    return rep;
}

// Verdict pair for the characterization: f is a weak equivalence iff the
// bottom evaluation of its gluing is a trivial fibration.
struct WeqCharacterization {
    CheckReport weq;        // is_weak_equivalence(f)
    CheckReport bottom_fib; // is_trivial_fibration(glue_bottom)
    CheckReport agreement;  // the two verdicts coincide
};

inline WeqCharacterization characterize_weq(const OmegaFunctor& f,
                                            const Budget& budget = Budget::current()) {
    GluedCat G = glue(f, budget);
    WeqCharacterization out{is_weak_equivalence(f), is_trivial_fibration(glue_bottom(G)),
                            CheckReport("weq characterization of " + f.name())};
    out.agreement.note_checked();
    if (out.weq.ok() != out.bottom_fib.ok())
        out.agreement.fail("weq-iff-bottom-tfib",
                           f.name() + ": weak equivalence " + (out.weq.ok() ? "yes" : "no") +
                               ", bottom trivial fibration " + (out.bottom_fib.ok() ? "yes" : "no"));
    return out;
}

// Factors an equivalence of parallel n-cells x ~ x' through the gluing of
// the classifier of x: a probe from the boundary (n+1)-globe whose two top
// cells become equivalent, a trivial-fibration leg collapsing them, and an
// evaluation leg hitting x and x'.
struct EquivFactorization {
    GluedCat glu;          // gluing of the classifier of x
    OmegaFunctor probe;    // boundary (n+1)-globe -> glu.cat
    OmegaFunctor collapse; // glu.cat -> n-globe, a trivial fibration
    OmegaFunctor eval;     // glu.cat -> C
    CheckReport report;
};

inline EquivFactorization equiv_factorization(const CatPtr& C, VCell x, VCell x2,
                                              VCell connecting,
                                              const Budget& budget = Budget::current()) {
    const auto& Cc = *C;
    if (!Cc.parallel(x, x2))
        throw precondition_error("equiv factorization: cells not parallel");
    if (connecting.dim != x.dim + 1 || Cc.src(connecting) != x || Cc.tgt(connecting) != x2)
        throw precondition_error("equiv factorization: witness boundary mismatch");
    EqvDecider dec(C);
    if (!dec.reversible(connecting))
        throw precondition_error("equiv factorization: witness not reversible");

    const int n = x.dim;
    OmegaFunctor cls = sng(C, x, "cell(" + Cc.display(x) + ")");
    GluedCat G = glue(cls, budget);
    OmegaFunctor sec = glue_section(G);
    CatPtr Gn = cls.dom();
    CatPtr B = boundary_globe(n + 1);

    VCell witness_pair;
    {
        Cylinder U = degenerate_of(Cc, connecting);
        VCell c = G.gamma.cell_of(U);
        VCell o = Gn->vcell(*Gn->find(n, "o"));
        auto cell = G.cat->find(n, Product::pair_id(*Gn, *G.gamma.cat, o, c));
        if (!cell) throw precondition_error("equiv factorization: witness pair missing");
        witness_pair = G.cat->vcell(*cell);
    }

    std::vector<std::vector<VCell>> m(B->stored_cap() + 1);
    for (int k = 0; k <= B->stored_cap(); ++k)
        for (auto c : B->cells_at(k)) {
            VCell w = c;
            while (B->is_unit(w) && w.base.dim == w.dim) w = B->unit_base(w);
            std::string id = B->id_of(w.base);
            VCell img;
            if (id == globe_id(n, true))
                img = G.cat->pad(witness_pair, k);
            else {
                int d = w.base.dim;
                std::string gid = d == n ? std::string("o") : id;
                img = G.cat->pad(sec.apply(Gn->vcell(*Gn->find(d, gid))), k);
            }
            m[k].push_back(img);
        }
    OmegaFunctor probe(B, G.cat, std::move(m), "probe(" + Cc.display(connecting) + ")");
    OmegaFunctor collapse = glue_top(G);
    OmegaFunctor eval = glue_bottom(G);

    CheckReport rep("equivalence factorization in " + Cc.name());
    rep.merge(validate_functor(probe));
    rep.note_checked();
    if (!compose(collapse, probe).same_map(globe_collapse(n)))
        rep.fail("factor-collapse", "collapse . probe is not the globe collapse");
    rep.note_checked();
    if (!compose(eval, probe).same_map(pair_functor(C, x, x2)))
        rep.fail("factor-eval", "eval . probe does not classify the pair");
    rep.merge(is_trivial_fibration(collapse));
    // Closing the loop: the two top probe images are equivalent over the
    // collapse, and evaluation carries that equivalence back to x ~ x'.
    {
        EqvDecider dg(G.cat);
        VCell minus = probe.apply(B->vcell(*B->find(n, globe_id(n, false))));
        VCell plus = probe.apply(B->vcell(*B->find(n, globe_id(n, true))));
        rep.note_checked();
        if (!dg.equivalent(minus, plus))
            rep.fail("factor-lift-eqv", "probe images of the top pair are not equivalent");
        rep.note_checked();
        if (!dec.equivalent(x, x2))
            rep.fail("factor-eqv", "pair is not equivalent in the base");
    }
    return EquivFactorization{std::move(G), std::move(probe), std::move(collapse),
                              std::move(eval), std::move(rep)};
}

} // namespace omc
