#pragma once
// Finite-stage factorization by generator attachment.  A functor f from a
// presented free category is split as (relative cell complex) then
// (projection): each stage enumerates the boundary-inclusion squares into the
// current projection in a fixed order (dimension, then top functor, then
// bottom cell) and attaches one generator per square that has no filler yet.
// When no unfilled square remains the projection is a trivial fibration; the
// squares still open at the end are returned instead of being guessed away.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "omc/immersion.hpp"
#include "omc/polygraph.hpp"

namespace omc {

// One boundary-inclusion square without a filler: the top functor lands in
// the middle object, the bottom is the principal cell of the codomain.
struct SoaSquare {
    int n = 0;
    OmegaFunctor top;
    VCell bottom;
};

struct SoaStage {
    PolyPtr poly;                       // input presentation plus attached generators
    FreeTable mid;                      // materialized middle object
    OmegaFunctor lam;                   // relative cell complex: dom(f) -> mid
    OmegaFunctor rho;                   // projection: mid -> cod(f), rho o lam = f
    std::vector<std::string> attached;  // generator ids in attachment order
    std::vector<SoaSquare> unfilled;    // squares of the final projection still open
};

namespace detail {

// A generator boundary as an attachment literal (dimensions 0 and 1 only:
// attachments are capped at dimension 2).
inline FreeLit poly_lit(const Polygraph& P, const FreeCell& c) {
    if (c.dim == 0) return lit0(P.gen(0, c.obj).id);
    std::vector<std::string> w;
    for (int g : c.word) w.push_back(P.gen(1, g).id);
    return lit1(P.gen(0, c.obj).id, std::move(w));
}

// Literal for a (possibly padded) stored cell of a materialized table.
inline FreeLit boundary_lit(const FreeTable& T, VCell v) {
    if (v.dim == 0) return poly_lit(*T.poly, T.cells[0][v.base.idx]);
    if (v.base.dim == 0)  // padded unit over an object
        return lit1(T.poly->gen(0, T.cells[0][v.base.idx].obj).id, {});
    return poly_lit(*T.poly, T.cells[1][v.base.idx]);
}

// The syntactic cell of a single generator.
inline FreeCell gen_cell(const Polygraph& P, int k, int i) {
    if (k == 0) return FreeCell{0, i, {}, {}};
    if (k == 1) return FreeCell{1, P.gen1_src(i), {i}, {}};
    const FreeCell& s = P.gen(2, i).src;
    return FreeCell{2, s.obj, s.word, {Whisker{{}, i, {}}}};
}

}  // namespace detail

// Runs up to `stages` attachment rounds against boundary inclusions of
// dimensions 0..d.  Requires f to start at the materialized table of its
// presentation; throws on budget exhaustion (square enumeration or the free
// category of an enriched presentation outgrowing its bound).
inline SoaStage soa_stage(const FreeTable& XT, const OmegaFunctor& f, int d, int stages,
                          const Budget& budget = Budget::current()) {
    if (f.dom() != XT.cat)
        throw precondition_error("factorization: functor does not start at the presented table");
    if (d < 0 || d > 2)
        throw precondition_error("factorization: attachment dimensions are capped at 2");
    if (XT.poly->top_dim() > 2)
        throw precondition_error("factorization: presentations are capped at dimension 2");

    CatPtr Y = f.cod();
    PolyPtr P = XT.poly;
    FreeTable T = XT;
    OmegaFunctor lam = identity_functor(XT.cat);
    OmegaFunctor rho = f;
    std::vector<std::string> attached;

    auto collect = [&]() {
        std::vector<SoaSquare> out;
        for (int n = 0; n <= d; ++n) {
            auto inc = globe_inclusion(n);
            detail::for_each_globe_square(rho, n, budget,
                                          [&](const OmegaFunctor& top, VCell y) {
                                              LiftingProblem square(inc, rho, top, sng(Y, y));
                                              if (!find_lift(square, budget))
                                                  out.push_back(SoaSquare{n, top, y});
                                              return true;
                                          });
        }
        return out;
    };

    for (int stage = 1; stage <= stages; ++stage) {
        std::vector<SoaSquare> todo = collect();
        if (todo.empty()) break;

        int cap = P->cap();
        for (const auto& sq : todo) cap = std::max(cap, sq.n);
        PolyBuilder b(P->name(), cap);
        std::set<std::string> used[3];
        for (int k = 0; k <= P->top_dim(); ++k)
            for (int i = 0; i < P->gen_count(k); ++i) {
                const PolyGen& g = P->gen(k, i);
                if (k == 0)
                    b.add_gen(0, g.id);
                else
                    b.add_gen(k, g.id, detail::poly_lit(*P, g.src), detail::poly_lit(*P, g.tgt));
                used[k].insert(g.id);
            }

        // one generator per open square; its projection value is the bottom
        std::map<std::pair<int, std::string>, VCell> fresh;
        int serial = 0;
        for (const auto& sq : todo) {
            std::string id = "q" + std::to_string(stage) + "_" + std::to_string(serial++);
            while (used[sq.n].count(id)) id += "'";
            used[sq.n].insert(id);
            if (sq.n == 0) {
                b.add_gen(0, id);
            } else {
                auto B = boundary_globe(sq.n);
                VCell s = sq.top.apply(B->vcell(*B->find(sq.n - 1, globe_id(sq.n - 1, false))));
                VCell t = sq.top.apply(B->vcell(*B->find(sq.n - 1, globe_id(sq.n - 1, true))));
                b.add_gen(sq.n, id, detail::boundary_lit(T, s), detail::boundary_lit(T, t));
            }
            fresh.emplace(std::pair{sq.n, id}, sq.bottom);
            attached.push_back(id);
        }

        PolyPtr P2 = b.build();
        FreeTable T2 = materialize(P2, budget);

        // generator images of the new projection: kept for old generators,
        // the square's bottom cell for fresh ones
        std::vector<std::vector<VCell>> gi(P2->top_dim() + 1);
        for (int k = 0; k <= P2->top_dim(); ++k) {
            gi[k].resize(P2->gen_count(k));
            for (int i = 0; i < P2->gen_count(k); ++i) {
                const std::string& id = P2->gen(k, i).id;
                auto hit = fresh.find({k, id});
                if (hit != fresh.end()) {
                    gi[k][i] = hit->second;
                    continue;
                }
                auto c = T.find(detail::gen_cell(*P, k, *P->find_gen(k, id)), budget);
                gi[k][i] = rho.apply(T.cat->vcell(*c));
            }
        }
        const auto& M = *T2.cat;
        std::vector<std::vector<VCell>> rmap(M.stored_cap() + 1);
        for (int k = 0; k <= M.stored_cap(); ++k) {
            rmap[k].resize(M.size(k));
            for (int i = 0; i < static_cast<int>(M.size(k)); ++i) {
                if (k <= 2) {
                    rmap[k][i] = eval_in(*Y, *P2, gi, T2.cells[k][i]);
                } else {  // above the presentation the table holds unit chains only
                    VCell ub = M.unit_base(VCell{Cell{k, i}, k});
                    rmap[k][i] = Y->unit(rmap[k - 1][ub.base.idx]);
                }
            }
        }
        OmegaFunctor rho2(T2.cat, Y, std::move(rmap), f.name());

        std::vector<std::vector<int>> incmap(XT.poly->top_dim() + 1);
        for (int k = 0; k <= XT.poly->top_dim(); ++k)
            for (int i = 0; i < XT.poly->gen_count(k); ++i)
                incmap[k].push_back(*P2->find_gen(k, XT.poly->gen(k, i).id));
        PolyMorphism inc{XT.poly, P2, std::move(incmap), "cell-complex"};
        OmegaFunctor lam2 = functor_of_morphism(inc, XT, T2, budget);

        if (!compose(rho2, lam2).same_map(f))
            throw std::logic_error("factorization: legs stopped composing to the input");
        P = P2;
        T = std::move(T2);
        rho = std::move(rho2);
        lam = std::move(lam2);
    }

    std::vector<SoaSquare> unfilled = collect();
    return SoaStage{P,         std::move(T),        std::move(lam),
                    std::move(rho), std::move(attached), std::move(unfilled)};
}

// Everything is fibrant: a functor u out of the domain of a certified
// immersion extends along it, so any square of the immersion against the
// collapse to the point lifts — the extension is one lift, and the bounded
// search must find one as well.
inline CheckReport fibrancy_check(const ImmersionCertificate& cert, const OmegaFunctor& u,
                                  const Budget& budget = Budget::current()) {
    if (u.dom() != cert.f.dom())
        throw precondition_error("fibrancy: map must start at the immersion's domain");
    CheckReport rep("fibrancy");
    OmegaFunctor v = extend_along_immersion(cert, u);
    rep.note_checked();
    if (!compose(v, cert.f).same_map(u))
        rep.fail("fibrant-extension", "extension of '" + u.name() + "' does not restrict back");
    auto pt = terminal();
    rep.note_checked();
    LiftingProblem square(cert.f, bang(u.cod(), pt), u, bang(cert.f.cod(), pt));
    if (!find_lift(square, budget))
        rep.fail("fibrant-lift", "no lift against the collapse of '" + u.cod()->name() + "'");
    return rep;
}

// Relative cell complexes that are weak equivalences must be certified as
// immersions.  Vacuously passing when the complex is not a weak equivalence;
// an undecided hypothesis stays inconclusive.
inline CheckReport soa_cof_weq_check(const SoaStage& st,
                                     const Budget& budget = Budget::current()) {
    CheckReport rep("cell-complex-weq");
    CheckReport w = is_weak_equivalence(st.lam);
    rep.note_checked();
    if (w.only_inconclusive()) {
        rep.inconclusive("cof-weq", "weak-equivalence hypothesis undecided");
        return rep;
    }
    if (w.refuted()) return rep;
    auto cert = is_immersion(st.lam, budget);
    if (!cert) {
        rep.fail("cof-weq", "'" + st.lam.name() +
                                "' is a cell-complex weak equivalence but was not certified");
        return rep;
    }
    rep.merge(cert->checks);
    return rep;
}

}  // namespace omc
