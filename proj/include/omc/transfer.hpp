#pragma once
// Cap transfer: inclusion raises a table's declared cap without touching
// stored cells (higher cells are implicit units), truncation forgets cells
// above a dimension, and collapse quotients dimension n by the congruence the
// (n+1)-cells generate (boundary identification closed under composition
// compatibility, to a fixpoint).  Collapse-then-include is an idempotent
// monad; its unit sends each cell to its class, and the structure map into
// the cylinder category is the factoring of the cylinder image of the unit
// through the quotient.  A table whose declared cap is below n is treated as
// implicitly included, so n never has to match the cap exactly.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "omc/category.hpp"
#include "omc/functor.hpp"
#include "omc/gamma.hpp"
#include "omc/report.hpp"

namespace omc {

namespace detail {

// Rebuild a table verbatim up to dimension `top`, under a new cap.
inline CatBuilder rebuild_below(const FiniteOmegaCat& C, int top, int cap,
                                const std::string& name) {
    CatBuilder b(name, cap);
    for (int k = 0; k <= top; ++k)
        for (auto c : C.cells_at(k)) {
            const std::string& id = C.id_of(c.base);
            if (k == 0)
                b.add_cell(0, id);
            else
                b.add_cell(k, id, C.id_of(C.src(c).base), C.id_of(C.tgt(c).base));
            if (k < top) b.set_unit(k, id, C.id_of(C.unit(c).base));
        }
    for (int k = 1; k <= top; ++k)
        for (int p = 0; p < k; ++p)
            for (const auto& [ab, r] : C.comp_entries(k, p))
                b.add_comp(k, p, C.id_of(ab.first), C.id_of(ab.second), C.id_of(r));
    return b;
}

// Representative index per stored n-cell: the least index in its class under
// the congruence the (n+1)-cells generate.  Ids are sorted per dimension, so
// the least index is also the lexicographically least id.
inline std::vector<int> collapse_partition(const FiniteOmegaCat& C, int n) {
    std::vector<int> parent(C.size(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    auto unite = [&](int i, int j) {
        i = find(i);
        j = find(j);
        if (i == j) return false;
        parent[std::max(i, j)] = std::min(i, j);
        return true;
    };

    if (n + 1 <= C.stored_cap())
        for (auto a : C.cells_at(n + 1)) unite(C.src(a).base.idx, C.tgt(a).base.idx);

    // merged operands force merged composites, until nothing moves
    bool changed = true;
    while (changed) {
        changed = false;
        for (int p = 0; p < n; ++p) {
            std::map<std::pair<int, int>, int> seen;
            for (const auto& [ab, r] : C.comp_entries(n, p)) {
                auto key = std::pair{find(ab.first.idx), find(ab.second.idx)};
                auto [it, fresh] = seen.emplace(key, r.idx);
                if (!fresh && unite(it->second, r.idx)) changed = true;
            }
        }
    }
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = find(static_cast<int>(i));
    return parent;
}

}  // namespace detail

// Inclusion: the same stored cells under a (weakly) larger cap.
inline CatPtr include_cat(const CatPtr& C, int cap, const std::string& name = {}) {
    if (cap < C->stored_cap())
        throw precondition_error("inclusion cannot drop stored cells");
    return detail::rebuild_below(*C, C->stored_cap(), cap, name.empty() ? C->name() : name)
        .build();
}

// Truncation: forget every stored cell above n; the result's cap is n.
inline CatPtr truncate_cat(const CatPtr& C, int n, const std::string& name = {}) {
    if (n < 0) throw precondition_error("truncation dimension must be >= 0");
    const int top = std::min(n, C->stored_cap());
    return detail::rebuild_below(*C, top, n, name.empty() ? C->name() : name).build();
}

// Collapse: quotient the n-cells by the congruence the (n+1)-cells generate
// and cap the result at n.  Class ids are the least member's id.
inline CatPtr collapse_cat(const CatPtr& Cp, int n, const std::string& name = {}) {
    const auto& C = *Cp;
    if (n < 0) throw precondition_error("collapse dimension must be >= 0");
    const std::string nm = name.empty() ? C.name() : name;
    if (n > C.stored_cap()) return detail::rebuild_below(C, C.stored_cap(), n, nm).build();

    std::vector<int> part = detail::collapse_partition(C, n);
    auto rep = [&](Cell c) -> const std::string& { return C.id_of(Cell{n, part[c.idx]}); };

    CatBuilder b = detail::rebuild_below(C, n - 1, n, nm);
    for (auto c : C.cells_at(n)) {
        if (part[c.base.idx] != c.base.idx) continue;
        if (n == 0)
            b.add_cell(0, C.id_of(c.base));
        else
            b.add_cell(n, C.id_of(c.base), C.id_of(C.src(c).base), C.id_of(C.tgt(c).base));
    }
    if (n > 0)
        for (auto x : C.cells_at(n - 1)) b.set_unit(n - 1, C.id_of(x.base), rep(C.unit(x).base));
    for (int p = 0; p < n; ++p)
        for (const auto& [ab, r] : C.comp_entries(n, p))
            b.add_comp(n, p, rep(ab.first), rep(ab.second), rep(r));
    return b.build();
}

// Exact stored equality: same name, caps, cells, boundaries, units and
// composition tables.
inline bool table_equal(const FiniteOmegaCat& A, const FiniteOmegaCat& B) {
    if (A.name() != B.name() || A.cap() != B.cap() || A.stored_cap() != B.stored_cap())
        return false;
    for (int k = 0; k <= A.stored_cap(); ++k) {
        if (A.size(k) != B.size(k)) return false;
        for (auto c : A.cells_at(k)) {
            auto d = B.find(k, A.id_of(c.base));
            if (!d) return false;
            VCell bd = B.vcell(*d);
            if (k > 0 && (A.id_of(A.src(c).base) != B.id_of(B.src(bd).base) ||
                          A.id_of(A.tgt(c).base) != B.id_of(B.tgt(bd).base)))
                return false;
            if (k < A.stored_cap() && A.display(A.unit(c)) != B.display(B.unit(bd)))
                return false;
        }
        for (int p = 0; p < k; ++p) {
            auto key = [](const FiniteOmegaCat& C, const std::pair<std::pair<Cell, Cell>, Cell>& e) {
                return std::tuple{C.id_of(e.first.first), C.id_of(e.first.second), C.id_of(e.second)};
            };
            std::vector<std::tuple<std::string, std::string, std::string>> ea, eb;
            for (const auto& e : A.comp_entries(k, p)) ea.push_back(key(A, e));
            for (const auto& e : B.comp_entries(k, p)) eb.push_back(key(B, e));
            std::sort(ea.begin(), ea.end());
            std::sort(eb.begin(), eb.end());
            if (ea != eb) return false;
        }
    }
    return true;
}

// Identity transport between tables that store the same cells under the same
// ids (used to compare a table with its rebuilt double).
inline OmegaFunctor transport_by_id(const CatPtr& A, const CatPtr& B,
                                    const std::string& name = "transport") {
    std::vector<std::vector<VCell>> m(A->stored_cap() + 1);
    for (int k = 0; k <= A->stored_cap(); ++k)
        for (auto c : A->cells_at(k)) {
            auto d = B->find(k, A->id_of(c.base));
            if (!d)
                throw precondition_error("transport: cell '" + A->id_of(c.base) +
                                         "' is missing from " + B->name());
            m[k].push_back(B->vcell(*d));
        }
    return OmegaFunctor(A, B, std::move(m), name);
}

// The idempotent monad at level n: the collapse re-included under the
// original cap, with its unit and the class id of every stored n-cell.
struct CollapseMonad {
    int n = 0;
    CatPtr X;                      // the input
    CatPtr nX;                     // the collapse, capped at n
    CatPtr GX;                     // the collapse re-included
    OmegaFunctor eta;              // X -> GX, cell to class
    std::vector<std::string> cls;  // class id per stored n-cell of X
};

inline CollapseMonad collapse_monad(const CatPtr& X, int n) {
    CatPtr nX = collapse_cat(X, n);
    CatPtr GX = include_cat(nX, std::max(X->cap(), n));

    std::vector<std::string> cls;
    if (n <= X->stored_cap()) {
        std::vector<int> part = detail::collapse_partition(*X, n);
        cls.reserve(part.size());
        for (int r : part) cls.push_back(X->id_of(Cell{n, r}));
    }

    std::vector<std::vector<VCell>> m(X->stored_cap() + 1);
    for (int k = 0; k <= X->stored_cap(); ++k)
        for (auto c : X->cells_at(k)) {
            if (k < n) {
                m[k].push_back(GX->vcell(*GX->find(k, X->id_of(c.base))));
            } else if (k == n) {
                m[k].push_back(GX->vcell(*GX->find(n, cls[c.base.idx])));
            } else {
                VCell s = X->bsrc(c, n);
                VCell im = s.base.dim == n
                               ? GX->vcell(*GX->find(n, cls[s.base.idx]))
                               : GX->vcell(*GX->find(s.base.dim, X->id_of(s.base)));
                m[k].push_back(GX->pad(im, k));
            }
        }
    OmegaFunctor eta(X, GX, std::move(m), "eta(" + X->name() + ")");
    return CollapseMonad{n, X, nX, GX, std::move(eta), std::move(cls)};
}

// The collapsed image of a map: classes go to classes of images.
inline OmegaFunctor monad_map(const CollapseMonad& A, const CollapseMonad& B,
                              const OmegaFunctor& f) {
    if (A.n != B.n) throw precondition_error("collapsed map: levels differ");
    if (f.dom() != A.X || f.cod() != B.X)
        throw precondition_error("collapsed map: the map does not join the two inputs");
    std::vector<std::vector<VCell>> m(A.GX->stored_cap() + 1);
    for (int k = 0; k <= A.GX->stored_cap(); ++k)
        for (auto c : A.GX->cells_at(k)) {
            VCell x = A.X->vcell(*A.X->find(k, A.GX->id_of(c.base)));
            m[k].push_back(B.eta.apply(f.apply(x)));
        }
    return OmegaFunctor(A.GX, B.GX, std::move(m), "G(" + f.name() + ")");
}

// The structure map lambda : G Gamma X -> Gamma G X, obtained by factoring
// the cylinderwise image of the unit through the quotient of cylinders, with
// the compatibility laws that make the collapse respect the interval.
struct LambdaStructure {
    CollapseMonad monad;        // on X
    GammaCat gamma_x;           // cylinders over X
    GammaCat gamma_gx;          // cylinders over GX
    CollapseMonad gamma_monad;  // on the cylinder table
    OmegaFunctor gamma_eta;     // Gamma(eta) : Gamma X -> Gamma G X
    OmegaFunctor lambda;        // G Gamma X -> Gamma G X
    CheckReport checks;
};

inline LambdaStructure lambda_structure(const CatPtr& X, int n,
                                        const Budget& budget = Budget::current()) {
    CollapseMonad m = collapse_monad(X, n);
    GammaCat gx = gamma_category(X, budget);
    GammaCat ggx = gamma_category(m.GX, budget);
    OmegaFunctor geta = gamma_functor(gx, ggx, m.eta);
    CollapseMonad gm = collapse_monad(gx.cat, n);

    std::vector<std::vector<VCell>> lm(gm.GX->stored_cap() + 1);
    for (int k = 0; k <= gm.GX->stored_cap(); ++k)
        for (auto c : gm.GX->cells_at(k)) {
            VCell u = gx.cat->vcell(*gx.cat->find(k, gm.GX->id_of(c.base)));
            lm[k].push_back(geta.apply(u));
        }
    OmegaFunctor lambda(gm.GX, ggx.cat, std::move(lm), "lambda(" + X->name() + ")");

    CheckReport rep("lambda(" + X->name() + ", " + std::to_string(n) + ")");
    // factoring = well-definedness: the cylinder image of the unit is
    // constant on collapse classes
    if (compose(lambda, gm.eta).same_map(geta))
        rep.note_checked();
    else
        rep.fail("lambda-factors", "cylinder image of the unit is not constant on classes");
    CheckReport lv = validate_functor(lambda);
    if (lv.ok())
        rep.note_checked(lv.checked());
    else
        rep.fail("lambda-functor", "the factored map breaks a table law");
    // the collapse commutes with the interval's two end projections
    if (compose(top_functor(ggx), lambda).same_map(monad_map(gm, m, top_functor(gx))))
        rep.note_checked();
    else
        rep.fail("lambda-top", "collapsed top projection differs from top after lambda");
    if (compose(bot_functor(ggx), lambda).same_map(monad_map(gm, m, bot_functor(gx))))
        rep.note_checked();
    else
        rep.fail("lambda-bot", "collapsed bottom projection differs from bottom after lambda");

    return LambdaStructure{std::move(m),    std::move(gx),   std::move(ggx), std::move(gm),
                           std::move(geta), std::move(lambda), std::move(rep)};
}

// The exact identities of the transfer triple on one input: truncation and
// collapse both retract the inclusion, the monad is idempotent with an
// identity unit on its image, and the unit is a functor.
inline CheckReport transfer_identities(const CatPtr& X, int n) {
    CheckReport rep("transfer(" + X->name() + ", " + std::to_string(n) + ")");
    CatPtr T = truncate_cat(X, n);
    CatPtr IT = include_cat(T, n + 2);
    if (table_equal(*collapse_cat(IT, n), *T))
        rep.note_checked();
    else
        rep.fail("si-identity", "collapse after inclusion changed the table");
    if (table_equal(*truncate_cat(IT, n), *T))
        rep.note_checked();
    else
        rep.fail("ti-identity", "truncation after inclusion changed the table");

    CollapseMonad m = collapse_monad(X, n);
    CheckReport ev = validate_functor(m.eta);
    if (ev.ok())
        rep.note_checked(ev.checked());
    else
        rep.fail("monad-unit", "the unit breaks a table law");

    CollapseMonad m2 = collapse_monad(m.GX, n);
    if (table_equal(*m2.GX, *m.GX))
        rep.note_checked();
    else
        rep.fail("monad-idempotent", "the double collapse changed the table");
    if (m2.eta.same_map(transport_by_id(m.GX, m2.GX)))
        rep.note_checked();
    else
        rep.fail("monad-unit-on-image", "the unit of the collapsed table is not the identity");
    if (monad_map(m, m2, m.eta).same_map(transport_by_id(m.GX, m2.GX, "G(eta)")))
        rep.note_checked();
    else
        rep.fail("monad-collapsed-unit", "the collapsed unit is not the identity");
    return rep;
}

// A certified retraction/contraction pair survives the collapse.
inline CheckReport monad_preserves_immersion(const OmegaFunctor& f, int n,
                                             const Budget& budget = Budget::current());

// Classical equivalence of 1-truncated tables, by direct search: every
// object of the codomain is isomorphic to an image, and each arrow set maps
// bijectively.
inline CheckReport classical_equivalence(const OmegaFunctor& f) {
    const auto& A = *f.dom();
    const auto& B = *f.cod();
    if (A.stored_cap() > 1 || B.stored_cap() > 1)
        throw precondition_error("classical equivalence needs 1-truncated tables");
    CheckReport rep("classical(" + f.name() + ")");

    auto hom = [](const FiniteOmegaCat& C, VCell a, VCell b) {
        std::vector<VCell> out;
        if (C.stored_cap() >= 1)
            out = C.cells_between(1, a, b);
        else if (a == b)
            out.push_back(C.unit(a));
        return out;
    };
    auto is_iso = [&](const FiniteOmegaCat& C, VCell u, VCell a, VCell b) {
        auto uv = C.try_comp(u, /*v*/ u, 0);  // placeholder, replaced below
        (void)uv;
        return false;
    };
    (void)is_iso;
    auto isomorphic = [&](const FiniteOmegaCat& C, VCell a, VCell b) {
        for (auto u : hom(C, a, b))
            for (auto v : hom(C, b, a)) {
                auto uv = C.try_comp(u, v, 0);
                auto vu = C.try_comp(v, u, 0);
                if (uv && vu && *uv == C.unit(a) && *vu == C.unit(b)) return true;
            }
        return false;
    };

    for (auto y : B.cells_at(0)) {
        bool hit = false;
        for (auto x : A.cells_at(0))
            if (isomorphic(B, f.apply(x), y)) {
                hit = true;
                break;
            }
        if (hit)
            rep.note_checked();
        else
            rep.fail("classical-essentially-surjective",
                     "no object maps isomorphically onto " + B.display(y));
    }

    for (auto a : A.cells_at(0))
        for (auto b : A.cells_at(0)) {
            std::vector<VCell> dom_hom = hom(A, a, b);
            std::vector<VCell> cod_hom = hom(B, f.apply(a), f.apply(b));
            std::vector<VCell> image;
            for (auto u : dom_hom) image.push_back(f.apply(u));
            std::sort(image.begin(), image.end());
            bool inj = std::adjacent_find(image.begin(), image.end()) == image.end();
            std::sort(cod_hom.begin(), cod_hom.end());
            if (inj && image == cod_hom)
                rep.note_checked();
            else
                rep.fail("classical-fully-faithful",
                         "arrows " + A.display(a) + " -> " + A.display(b) +
                             " do not map bijectively");
        }
    return rep;
}

}  // namespace omc

#include "omc/immersion.hpp"

namespace omc {

inline CheckReport monad_preserves_immersion(const OmegaFunctor& f, int n,
                                             const Budget& budget) {
    CollapseMonad a = collapse_monad(f.dom(), n);
    CollapseMonad b = collapse_monad(f.cod(), n);
    OmegaFunctor gf = monad_map(a, b, f);
    CheckReport rep("collapsed-immersion(" + f.name() + ")");
    auto cert = is_immersion(gf, budget);
    if (cert) {
        rep.note_checked();
        rep.merge(cert->checks);
    } else {
        rep.fail("collapsed-immersion", "the collapsed map has no retraction/contraction pair");
    }
    return rep;
}

}  // namespace omc
