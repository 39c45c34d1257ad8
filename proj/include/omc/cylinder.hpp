#pragma once

// Reversible cylinders in flattened form, and their calculus.
//
// An n-cylinder between n-cells of the hom-iterate at `depth` (a k-cell of
// that hom is a (k+depth)-cell of the ambient category with fixed boundaries
// below `depth`).  A 0-cylinder is a reversible (depth+1)-cell
// pal : top -> bot.  For n > 0 the data are reversible (depth+1)-cells
// `flat` (between the depth-sources) and `sharp` (between the depth-targets)
// and a shift (n-1)-cylinder one hom level down, with the exact equations
//   shift.top == top o_depth sharp     shift.bot == flat o_depth bot.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omc/base.hpp"
#include "omc/category.hpp"
#include "omc/equivalence.hpp"
#include "omc/functor.hpp"
#include "omc/report.hpp"

namespace omc {

struct Cylinder {
    int n = 0;                        // cylinder dimension
    int depth = 0;                    // hom-iterate level
    VCell top, bot;                   // (n + depth)-cells
    VCell pal;                        // n == 0: the reversible connector
    VCell flat, sharp;                // n > 0: boundary connectors
    std::shared_ptr<Cylinder> shift;  // n > 0: the cylinder one level down

    friend bool operator==(const Cylinder& a, const Cylinder& b) {
        if (a.n != b.n || a.depth != b.depth || a.top != b.top || a.bot != b.bot) return false;
        if (a.n == 0) return a.pal == b.pal;
        return a.flat == b.flat && a.sharp == b.sharp && *a.shift == *b.shift;
    }
};

// 0-cylinder from its connector; top and bottom are the connector's ends.
inline Cylinder cyl0(const FiniteOmegaCat& C, VCell pal) {
    if (pal.dim < 1) throw precondition_error("cylinder: connector must have dimension >= 1");
    Cylinder U;
    U.n = 0;
    U.depth = pal.dim - 1;
    U.top = C.src(pal);
    U.bot = C.tgt(pal);
    U.pal = pal;
    return U;
}

// The trivial cylinder on a cell: all connectors are units.
inline Cylinder triv_cylinder(const FiniteOmegaCat& C, VCell x, int depth = 0) {
    if (x.dim < depth) throw precondition_error("trivial cylinder: depth exceeds the dimension");
    Cylinder U;
    U.n = x.dim - depth;
    U.depth = depth;
    U.top = x;
    U.bot = x;
    if (U.n == 0) {
        U.pal = C.unit(x);
        return U;
    }
    U.flat = C.unit(C.bsrc(x, depth));
    U.sharp = C.unit(C.btgt(x, depth));
    U.shift = std::make_shared<Cylinder>(triv_cylinder(C, x, depth + 1));
    return U;
}

// Applies fn to every cell component; shape is preserved.
template <class Fn>
inline Cylinder cyl_map(const Cylinder& U, Fn&& fn) {
    Cylinder R = U;
    R.top = fn(U.top);
    R.bot = fn(U.bot);
    if (U.n == 0) {
        R.pal = fn(U.pal);
        return R;
    }
    R.flat = fn(U.flat);
    R.sharp = fn(U.sharp);
    R.shift = std::make_shared<Cylinder>(cyl_map(*U.shift, fn));
    return R;
}

// Image of a cylinder under a functor (componentwise).
inline Cylinder apply_cyl(const OmegaFunctor& f, const Cylinder& U) {
    return cyl_map(U, [&](VCell v) { return f.apply(v); });
}

namespace detail {
// Componentwise composition at a fixed level, through every shift; the shift
// equations survive by interchange of p with the deeper levels.
inline Cylinder cyl_zip(const FiniteOmegaCat& C, const Cylinder& U, const Cylinder& V, int p) {
    Cylinder R = U;
    R.top = C.comp(U.top, V.top, p);
    R.bot = C.comp(U.bot, V.bot, p);
    if (U.n == 0) {
        R.pal = C.comp(U.pal, V.pal, p);
        return R;
    }
    R.flat = C.comp(U.flat, V.flat, p);
    R.sharp = C.comp(U.sharp, V.sharp, p);
    R.shift = std::make_shared<Cylinder>(cyl_zip(C, *U.shift, *V.shift, p));
    return R;
}
} // namespace detail

// Multiplication: composition of the underlying homs extended to cylinders,
// a componentwise zip one level below the cylinders' hom.
inline Cylinder cyl_mult(const FiniteOmegaCat& C, const Cylinder& U, const Cylinder& V) {
    if (U.n != V.n || U.depth != V.depth || U.depth < 1)
        throw precondition_error("cylinder multiplication: shape mismatch");
    return detail::cyl_zip(C, U, V, U.depth - 1);
}

// Left action u * V of a cell on a cylinder one hom level down: by the
// whiskering functor when u is a 1-cell of the hom, by multiplication with
// the trivial cylinder on u otherwise.
inline Cylinder act_left(const FiniteOmegaCat& C, VCell u, const Cylinder& V) {
    if (V.depth < 1) throw precondition_error("action: cylinder must live in a hom");
    const int p = V.depth - 1;
    if (u.dim == p + 1)
        return cyl_map(V, [&](VCell c) { return C.comp(C.pad(u, c.dim), c, p); });
    if (u.dim == V.n + V.depth) return cyl_mult(C, triv_cylinder(C, u, V.depth), V);
    throw precondition_error("action: cell dimension does not fit the cylinder");
}

inline Cylinder act_right(const FiniteOmegaCat& C, const Cylinder& U, VCell v) {
    if (U.depth < 1) throw precondition_error("action: cylinder must live in a hom");
    const int p = U.depth - 1;
    if (v.dim == p + 1)
        return cyl_map(U, [&](VCell c) { return C.comp(c, C.pad(v, c.dim), p); });
    if (v.dim == U.n + U.depth) return cyl_mult(C, U, triv_cylinder(C, v, U.depth));
    throw precondition_error("action: cell dimension does not fit the cylinder");
}

inline bool cyl_consecutive(const Cylinder& U, const Cylinder& V) {
    return U.n == V.n && U.depth == V.depth && U.bot == V.top;
}

// Concatenation U <> V : top(U) ~> bot(V), stacking along the bottom/top.
inline Cylinder cyl_concat(const FiniteOmegaCat& C, const Cylinder& U, const Cylinder& V) {
    if (!cyl_consecutive(U, V)) throw precondition_error("concatenation: cylinders not consecutive");
    const int d = U.depth;
    Cylinder R = U;
    R.bot = V.bot;
    if (U.n == 0) {
        R.pal = C.comp(U.pal, V.pal, d);
        return R;
    }
    R.flat = C.comp(U.flat, V.flat, d);
    R.sharp = C.comp(U.sharp, V.sharp, d);
    R.shift = std::make_shared<Cylinder>(
        cyl_concat(C, act_right(C, *U.shift, V.sharp), act_left(C, U.flat, *V.shift)));
    return R;
}

// Source and target cylinders; cylinders form a globular set.
inline Cylinder cyl_source(const FiniteOmegaCat& C, const Cylinder& W) {
    if (W.n < 1) throw precondition_error("cylinder source: dimension 0");
    if (W.n == 1) return cyl0(C, W.flat);
    Cylinder R;
    R.n = W.n - 1;
    R.depth = W.depth;
    R.top = C.src(W.top);
    R.bot = C.src(W.bot);
    R.flat = W.flat;
    R.sharp = W.sharp;
    R.shift = std::make_shared<Cylinder>(cyl_source(C, *W.shift));
    return R;
}

inline Cylinder cyl_target(const FiniteOmegaCat& C, const Cylinder& W) {
    if (W.n < 1) throw precondition_error("cylinder target: dimension 0");
    if (W.n == 1) return cyl0(C, W.sharp);
    Cylinder R;
    R.n = W.n - 1;
    R.depth = W.depth;
    R.top = C.tgt(W.top);
    R.bot = C.tgt(W.bot);
    R.flat = W.flat;
    R.sharp = W.sharp;
    R.shift = std::make_shared<Cylinder>(cyl_target(C, *W.shift));
    return R;
}

inline Cylinder cyl_bsrc(const FiniteOmegaCat& C, Cylinder U, int p) {
    if (p < 0 || p > U.n) throw precondition_error("cylinder boundary: dimension out of range");
    while (U.n > p) U = cyl_source(C, U);
    return U;
}

inline Cylinder cyl_btgt(const FiniteOmegaCat& C, Cylinder U, int p) {
    if (p < 0 || p > U.n) throw precondition_error("cylinder boundary: dimension out of range");
    while (U.n > p) U = cyl_target(C, U);
    return U;
}

inline bool cyl_parallel(const FiniteOmegaCat& C, const Cylinder& U, const Cylinder& V) {
    if (U.n != V.n || U.depth != V.depth) return false;
    if (U.n == 0) return true;
    return cyl_source(C, U) == cyl_source(C, V) && cyl_target(C, U) == cyl_target(C, V);
}

// The m-dimensional unit cylinder on U, m > dim U.
inline Cylinder cyl_unit(const FiniteOmegaCat& C, const Cylinder& U, int m) {
    if (m <= U.n) throw precondition_error("cylinder unit: dimension must exceed the cylinder's");
    Cylinder R;
    R.n = m;
    R.depth = U.depth;
    R.top = C.pad(U.top, m + U.depth);
    R.bot = C.pad(U.bot, m + U.depth);
    if (U.n == 0) {
        R.flat = U.pal;
        R.sharp = U.pal;
        R.shift =
            std::make_shared<Cylinder>(triv_cylinder(C, C.pad(U.pal, m + U.depth), U.depth + 1));
        return R;
    }
    R.flat = U.flat;
    R.sharp = U.sharp;
    R.shift = std::make_shared<Cylinder>(cyl_unit(C, *U.shift, m - 1));
    return R;
}

inline bool cyl_composable(const FiniteOmegaCat& C, const Cylinder& U, const Cylinder& V, int p) {
    if (U.n != V.n || U.depth != V.depth || p < 0 || p >= U.n) return false;
    return cyl_btgt(C, U, p) == cyl_bsrc(C, V, p);
}

// Composition of m-cylinders along a p-boundary, p < m.
inline Cylinder cyl_comp(const FiniteOmegaCat& C, const Cylinder& U, const Cylinder& V, int p) {
    if (!cyl_composable(C, U, V, p))
        throw precondition_error("cylinder composition: not composable");
    const int d = U.depth;
    Cylinder R;
    R.n = U.n;
    R.depth = d;
    R.top = C.comp(U.top, V.top, p + d);
    R.bot = C.comp(U.bot, V.bot, p + d);
    if (p == 0) {
        R.flat = U.flat;
        R.sharp = V.sharp;
        R.shift = std::make_shared<Cylinder>(
            cyl_concat(C, act_left(C, U.top, *V.shift), act_right(C, *U.shift, V.bot)));
    } else {
        R.flat = U.flat;
        R.sharp = U.sharp;
        R.shift = std::make_shared<Cylinder>(cyl_comp(C, *U.shift, *V.shift, p - 1));
    }
    return R;
}

// Injective serialization: top, bottom, and the connector chain determine the
// cylinder (the intermediate tops and bottoms are composites of these).
inline std::string cyl_key(const FiniteOmegaCat& C, const Cylinder& U) {
    std::string s = "<" + C.display(U.top) + ">" + C.display(U.bot) + ">";
    const Cylinder* p = &U;
    while (p->n > 0) {
        s += "[" + C.display(p->flat) + "|" + C.display(p->sharp) + "]";
        p = p->shift.get();
    }
    s += "[" + C.display(p->pal) + "]";
    return s;
}

namespace detail {
inline void cyl_check_rec(EqvDecider& dec, const Cylinder& U, CheckReport& rep) {
    const auto& C = *dec.cat();
    auto where = [&] { return cyl_key(C, U); };
    rep.note_checked();
    if (U.n < 0 || U.depth < 0 || U.top.dim != U.n + U.depth || U.bot.dim != U.n + U.depth) {
        rep.fail("cylinder-shape", where());
        return;
    }
    if (U.depth > 0 && (C.bsrc(U.top, U.depth - 1) != C.bsrc(U.bot, U.depth - 1) ||
                        C.btgt(U.top, U.depth - 1) != C.btgt(U.bot, U.depth - 1))) {
        rep.fail("cylinder-hom", where());
        return;
    }
    if (U.n == 0) {
        if (U.pal.dim != U.depth + 1 || C.src(U.pal) != U.top || C.tgt(U.pal) != U.bot)
            rep.fail("cylinder-connector", where());
        else if (!dec.reversible(U.pal))
            rep.fail("cylinder-reversible", where());
        return;
    }
    if (U.flat.dim != U.depth + 1 || U.sharp.dim != U.depth + 1 ||
        C.src(U.flat) != C.bsrc(U.top, U.depth) || C.tgt(U.flat) != C.bsrc(U.bot, U.depth) ||
        C.src(U.sharp) != C.btgt(U.top, U.depth) || C.tgt(U.sharp) != C.btgt(U.bot, U.depth)) {
        rep.fail("cylinder-connector", where());
        return;
    }
    if (!dec.reversible(U.flat) || !dec.reversible(U.sharp)) {
        rep.fail("cylinder-reversible", where());
        return;
    }
    if (!U.shift || U.shift->n != U.n - 1 || U.shift->depth != U.depth + 1) {
        rep.fail("cylinder-shift", where());
        return;
    }
    auto st = C.try_comp(U.top, C.pad(U.sharp, U.top.dim), U.depth);
    auto sb = C.try_comp(C.pad(U.flat, U.bot.dim), U.bot, U.depth);
    if (!st || !sb || U.shift->top != *st || U.shift->bot != *sb) {
        rep.fail("cylinder-shift", where());
        return;
    }
    cyl_check_rec(dec, *U.shift, rep);
}
} // namespace detail

inline CheckReport cyl_check(EqvDecider& dec, const Cylinder& U) {
    CheckReport rep("cylinder " + cyl_key(*dec.cat(), U));
    detail::cyl_check_rec(dec, U, rep);
    return rep;
}

inline bool cyl_valid(EqvDecider& dec, const Cylinder& U) { return cyl_check(dec, U).ok(); }

// A cylinder between parallel cells is degenerate when its source and target
// are trivial; degenerate n-cylinders are exactly reversible (n+1)-cells.
inline bool cyl_degenerate(const FiniteOmegaCat& C, const Cylinder& U) {
    if (U.n == 0) return true;
    if (!C.parallel(U.top, U.bot)) return false;
    return cyl_source(C, U) == triv_cylinder(C, C.src(U.top), U.depth) &&
           cyl_target(C, U) == triv_cylinder(C, C.tgt(U.top), U.depth);
}

// The connector of a degenerate cylinder (the innermost 0-level cell).
inline VCell cyl_pal(const Cylinder& U) {
    const Cylinder* p = &U;
    while (p->n > 0) p = p->shift.get();
    return p->pal;
}

// The degenerate cylinder src(u) ~> tgt(u) carried by a cell u; it is a
// valid cylinder exactly when u is reversible.
inline Cylinder degenerate_of(const FiniteOmegaCat& C, VCell u, int depth = 0) {
    if (u.dim <= depth) throw precondition_error("degenerate cylinder: depth exceeds dimension");
    Cylinder U;
    U.n = u.dim - 1 - depth;
    U.depth = depth;
    U.top = C.src(u);
    U.bot = C.tgt(u);
    if (U.n == 0) {
        U.pal = u;
        return U;
    }
    U.flat = C.unit(C.bsrc(U.top, depth));
    U.sharp = C.unit(C.btgt(U.top, depth));
    U.shift = std::make_shared<Cylinder>(degenerate_of(C, u, depth + 1));
    return U;
}

// Builds the (n+1)-cylinder U -> V with the prescribed top and bottom cells,
// when one exists: the missing connectors are searched one hom level at a
// time.  Preconditions: U and V parallel, ztop : top(U) -> top(V) and
// zbot : bot(U) -> bot(V).  Returns nullopt when the cells are not related
// by the cylinders (their twisted composites are not equivalent).
inline std::optional<Cylinder> fill_between(EqvDecider& dec, const Cylinder& U, const Cylinder& V,
                                            VCell ztop, VCell zbot) {
    const auto& C = *dec.cat();
    if (!cyl_parallel(C, U, V)) throw precondition_error("fill: cylinders not parallel");
    const int d = U.depth;
    if (ztop.dim != U.n + d + 1 || zbot.dim != ztop.dim || C.src(ztop) != U.top ||
        C.tgt(ztop) != V.top || C.src(zbot) != U.bot || C.tgt(zbot) != V.bot)
        throw precondition_error("fill: cell boundaries do not match the cylinders");
    Cylinder W;
    W.n = U.n + 1;
    W.depth = d;
    W.top = ztop;
    W.bot = zbot;
    if (U.n == 0) {
        auto a = C.try_comp(ztop, C.pad(V.pal, ztop.dim), d);
        auto b = C.try_comp(C.pad(U.pal, zbot.dim), zbot, d);
        if (!a || !b) return std::nullopt;
        auto c = dec.connecting_cell(*a, *b);
        if (!c) return std::nullopt;
        W.flat = U.pal;
        W.sharp = V.pal;
        W.shift = std::make_shared<Cylinder>(cyl0(C, *c));
        return W;
    }
    auto wt = C.try_comp(ztop, C.pad(U.sharp, ztop.dim), d);
    auto wb = C.try_comp(C.pad(U.flat, zbot.dim), zbot, d);
    if (!wt || !wb) return std::nullopt;
    auto sh = fill_between(dec, *U.shift, *V.shift, *wt, *wb);
    if (!sh) return std::nullopt;
    W.flat = U.flat;
    W.sharp = U.sharp;
    W.shift = std::make_shared<Cylinder>(std::move(*sh));
    return W;
}

struct Transport {
    VCell cell;       // the transported cell along the other face
    Cylinder filler;  // cylinder U -> V connecting the given cell with it
};

// Topdown transport: z : top(U) -> top(V) induces a weakly unique
// z' : bot(U) -> bot(V) with a cylinder U -> V over (z, z').
inline Transport transport_topdown(EqvDecider& dec, const Cylinder& U, const Cylinder& V,
                                   VCell z) {
    const auto& C = *dec.cat();
    if (!cyl_parallel(C, U, V)) throw precondition_error("transport: cylinders not parallel");
    const int d = U.depth;
    if (z.dim != U.n + d + 1 || C.src(z) != U.top || C.tgt(z) != V.top)
        throw precondition_error("transport: cell does not run between the tops");
    VCell zp;
    if (U.n == 0) {
        auto ub = dec.weak_inverse(U.pal);
        if (!ub) throw precondition_error("transport: connector is not reversible");
        zp = C.comp(*ub, C.comp(z, V.pal, d), d);
    } else {
        VCell w = C.comp(z, C.pad(U.sharp, z.dim), d);
        Transport rec = transport_topdown(dec, *U.shift, *V.shift, w);
        auto div = left_divide(dec, U.flat, d, rec.cell, U.bot, V.bot);
        if (!div) throw precondition_error("transport: weak division failed");
        zp = *div;
    }
    auto W = fill_between(dec, U, V, z, zp);
    if (!W) throw precondition_error("transport: no filler for the transported cell");
    return {zp, *W};
}

// Bottomup transport: z : bot(U) -> bot(V) induces z' : top(U) -> top(V).
inline Transport transport_bottomup(EqvDecider& dec, const Cylinder& U, const Cylinder& V,
                                    VCell z) {
    const auto& C = *dec.cat();
    if (!cyl_parallel(C, U, V)) throw precondition_error("transport: cylinders not parallel");
    const int d = U.depth;
    if (z.dim != U.n + d + 1 || C.src(z) != U.bot || C.tgt(z) != V.bot)
        throw precondition_error("transport: cell does not run between the bottoms");
    VCell zp;
    if (U.n == 0) {
        auto vb = dec.weak_inverse(V.pal);
        if (!vb) throw precondition_error("transport: connector is not reversible");
        zp = C.comp(U.pal, C.comp(z, *vb, d), d);
    } else {
        VCell w = C.comp(C.pad(U.flat, z.dim), z, d);
        Transport rec = transport_bottomup(dec, *U.shift, *V.shift, w);
        auto div = right_divide(dec, U.sharp, d, rec.cell, U.top, V.top);
        if (!div) throw precondition_error("transport: weak division failed");
        zp = *div;
    }
    auto W = fill_between(dec, U, V, zp, z);
    if (!W) throw precondition_error("transport: no filler for the transported cell");
    return {zp, *W};
}

namespace detail {
inline void cylinders_between_rec(EqvDecider& dec, VCell x, VCell y, int depth,
                                  const Budget& budget, std::size_t& count,
                                  std::vector<Cylinder>& out) {
    const auto& C = *dec.cat();
    if (y.dim != x.dim || x.dim < depth)
        throw precondition_error("cylinder enumeration: cells do not fit the depth");
    const int n = x.dim - depth;
    auto spend = [&] {
        if (++count > budget.cylinders)
            throw budget_error("cylinder enumeration exceeded the budget");
    };
    if (n == 0) {
        for (auto pal : C.cells_between(depth + 1, x, y)) {
            if (!dec.reversible(pal)) continue;
            spend();
            out.push_back(cyl0(C, pal));
        }
        return;
    }
    for (auto flat : C.cells_between(depth + 1, C.bsrc(x, depth), C.bsrc(y, depth))) {
        if (!dec.reversible(flat)) continue;
        for (auto sharp : C.cells_between(depth + 1, C.btgt(x, depth), C.btgt(y, depth))) {
            if (!dec.reversible(sharp)) continue;
            VCell st = C.comp(x, C.pad(sharp, x.dim), depth);
            VCell sb = C.comp(C.pad(flat, y.dim), y, depth);
            std::vector<Cylinder> shifts;
            cylinders_between_rec(dec, st, sb, depth + 1, budget, count, shifts);
            for (auto& sh : shifts) {
                spend();
                Cylinder U;
                U.n = n;
                U.depth = depth;
                U.top = x;
                U.bot = y;
                U.flat = flat;
                U.sharp = sharp;
                U.shift = std::make_shared<Cylinder>(std::move(sh));
                out.push_back(std::move(U));
            }
        }
    }
}
} // namespace detail

// All cylinders x ~> y at the given depth, in deterministic order.
inline std::vector<Cylinder> cylinders_between(EqvDecider& dec, VCell x, VCell y, int depth = 0,
                                               const Budget& budget = Budget::current()) {
    std::size_t count = 0;
    std::vector<Cylinder> out;
    detail::cylinders_between_rec(dec, x, y, depth, budget, count, out);
    return out;
}

} // namespace omc
