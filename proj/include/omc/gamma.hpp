#pragma once

// The category of reversible cylinders over a finite base, with the top,
// bottom and trivial-cylinder functors, and the induced functor on cylinders.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "omc/base.hpp"
#include "omc/category.hpp"
#include "omc/cylinder.hpp"
#include "omc/equivalence.hpp"
#include "omc/functor.hpp"

namespace omc {

struct GammaCat {
    CatPtr base;
    CatPtr cat;
    std::vector<std::vector<Cylinder>> cyls;  // [dim][idx], aligned with cat

    const Cylinder& of(Cell c) const { return cyls[c.dim][c.idx]; }

    // The table cell carrying a cylinder (pads above the stored range).
    VCell cell_of(const Cylinder& U) const {
        if (U.depth != 0) throw precondition_error("cylinder category: depth must be 0");
        if (U.n > cat->stored_cap()) {
            Cylinder B = cyl_bsrc(*base, U, cat->stored_cap());
            if (!(U == cyl_unit(*base, B, U.n)))
                throw precondition_error("cylinder category: cell above the stored range");
            return cat->pad(cell_of(B), U.n);
        }
        auto c = cat->find(U.n, cyl_key(*base, U));
        if (!c) throw precondition_error("cylinder category: unknown cylinder " +
                                         cyl_key(*base, U));
        return cat->vcell(*c);
    }
};

// Materializes all cylinders over the base, dimension by dimension.
inline GammaCat gamma_category(CatPtr X, const Budget& budget = Budget::current()) {
    EqvDecider dec(X);
    const auto& C = *X;
    const int cap = std::max(X->stored_cap(), 0);
    GammaCat G;
    G.base = X;
    G.cyls.assign(cap + 1, {});

    std::vector<std::map<std::string, Cylinder>> found(cap + 1);
    std::size_t total = 0;
    for (int n = 0; n <= cap; ++n) {
        for (auto x : C.cells_at(n))
            for (auto y : C.cells_at(n)) {
                auto cyls = cylinders_between(dec, x, y, 0, budget);
                total += cyls.size();
                if (total > budget.cylinders)
                    throw budget_error("cylinder category exceeded the cylinder budget");
                for (auto& U : cyls) found[n].emplace(cyl_key(C, U), U);
            }
        if (found[n].size() > budget.cells_per_dim)
            throw budget_error("cylinder category exceeded the width budget");
    }

    CatBuilder b("gamma(" + X->name() + ")", cap);
    for (int n = 0; n <= cap; ++n)
        for (const auto& [key, U] : found[n]) {
            if (n == 0)
                b.add_cell(0, key);
            else
                b.add_cell(n, key, cyl_key(C, cyl_source(C, U)), cyl_key(C, cyl_target(C, U)));
        }
    for (int n = 0; n < cap; ++n)
        for (const auto& [key, U] : found[n]) b.set_unit(n, key, cyl_key(C, cyl_unit(C, U, n + 1)));
    for (int n = 1; n <= cap; ++n)
        for (int p = 0; p < n; ++p)
            for (const auto& [ku, U] : found[n])
                for (const auto& [kv, V] : found[n]) {
                    if (!cyl_composable(C, U, V, p)) continue;
                    b.add_comp(n, p, ku, kv, cyl_key(C, cyl_comp(C, U, V, p)));
                }
    G.cat = b.build();

    for (int n = 0; n <= cap; ++n) {
        G.cyls[n].reserve(found[n].size());
        for (auto& [key, U] : found[n]) G.cyls[n].push_back(std::move(U));
    }
    return G;
}

// top : Gamma(X) -> X
inline OmegaFunctor top_functor(const GammaCat& G) {
    std::vector<std::vector<VCell>> map(G.cat->stored_cap() + 1);
    for (int k = 0; k <= G.cat->stored_cap(); ++k)
        for (const auto& U : G.cyls[k]) map[k].push_back(U.top);
    return OmegaFunctor(G.cat, G.base, map, "top");
}

// bot : Gamma(X) -> X
inline OmegaFunctor bot_functor(const GammaCat& G) {
    std::vector<std::vector<VCell>> map(G.cat->stored_cap() + 1);
    for (int k = 0; k <= G.cat->stored_cap(); ++k)
        for (const auto& U : G.cyls[k]) map[k].push_back(U.bot);
    return OmegaFunctor(G.cat, G.base, map, "bot");
}

// triv : X -> Gamma(X)
inline OmegaFunctor triv_functor(const GammaCat& G) {
    const auto& C = *G.base;
    std::vector<std::vector<VCell>> map(C.stored_cap() + 1);
    for (int k = 0; k <= C.stored_cap(); ++k)
        for (auto x : C.cells_at(k)) map[k].push_back(G.cell_of(triv_cylinder(C, x)));
    return OmegaFunctor(G.base, G.cat, map, "triv");
}

// Gamma(f) : Gamma(X) -> Gamma(Y), componentwise image of cylinders.
inline OmegaFunctor gamma_functor(const GammaCat& GX, const GammaCat& GY, const OmegaFunctor& f) {
    if (f.dom() != GX.base || f.cod() != GY.base)
        throw precondition_error("cylinder functor: base categories do not match");
    std::vector<std::vector<VCell>> map(GX.cat->stored_cap() + 1);
    for (int k = 0; k <= GX.cat->stored_cap(); ++k)
        for (const auto& U : GX.cyls[k]) map[k].push_back(GY.cell_of(apply_cyl(f, U)));
    return OmegaFunctor(GX.cat, GY.cat, map, "gamma(" + f.name() + ")");
}

} // namespace omc
