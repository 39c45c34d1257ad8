#pragma once
// Immersions: functors f : X -> Y equipped with a retraction g : Y -> X and a
// contraction h : Y -> Gamma(Y) pulling Y onto the image of f, trivial on that
// image.  Such a pair is exactly a section k of the bottom leg of glue(f)
// extending the canonical one, so detection is a single exhaustive lifting
// search and nullopt certifies non-existence.  Certified immersions are weak
// equivalences and are closed under pushout; the suite checks both routes
// (presented pushouts and the bounded table closure) with the retraction and
// contraction of the pushed-out functor built by the universal property.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "omc/base.hpp"
#include "omc/category.hpp"
#include "omc/cylinder.hpp"
#include "omc/equivalence.hpp"
#include "omc/functor.hpp"
#include "omc/gamma.hpp"
#include "omc/gluing.hpp"
#include "omc/lifting.hpp"
#include "omc/polygraph.hpp"
#include "omc/report.hpp"
#include "omc/standard.hpp"

namespace omc {

struct ImmersionCertificate {
    OmegaFunctor f;   // the certified functor itself
    GluedCat glu;     // gluing of the certified functor
    OmegaFunctor k;   // section of the bottom leg; k o f = the canonical section
    OmegaFunctor g;   // retraction: top leg after k
    OmegaFunctor h;   // contraction into Gamma(cod): cylinder leg after k
    CheckReport checks;
};

// Searches for k : Y -> Glu(f) with k o f = section and bottom o k = id, then
// reads off g and h.  The defining equations are re-verified directly, plus
// naturality of the contraction against the cylinder functor (skipped when
// the cylinder category of the domain is out of budget).
inline std::optional<ImmersionCertificate> is_immersion(const OmegaFunctor& f,
                                                        const Budget& budget = Budget::current()) {
    GluedCat G = glue(f, budget);
    LiftingProblem square(f, glue_bottom(G), glue_section(G), identity_functor(f.cod()));
    auto k = find_lift(square, budget);
    if (!k) return std::nullopt;
    OmegaFunctor g = compose(glue_top(G), *k);
    OmegaFunctor h = compose(glue_cyls(G), *k);

    CheckReport rep;
    auto eq = [&](const char* law, const OmegaFunctor& a, const OmegaFunctor& b) {
        rep.note_checked();
        if (!a.same_map(b)) rep.fail(law, a.name() + " != " + b.name());
    };
    eq("imm-retraction", compose(g, f), identity_functor(f.dom()));
    eq("imm-top", compose(top_functor(G.gamma), h), compose(f, g));
    eq("imm-bottom", compose(bot_functor(G.gamma), h), identity_functor(f.cod()));
    eq("imm-trivial-on-image", compose(h, f), compose(triv_functor(G.gamma), f));
    try {
        GammaCat GX = gamma_category(f.dom(), budget);
        eq("imm-naturality", compose(h, f),
           compose(gamma_functor(GX, G.gamma, f), triv_functor(GX)));
    } catch (const budget_error& e) {
        rep.inconclusive("imm-naturality", e.what());
    }
    return ImmersionCertificate{f, std::move(G), std::move(*k), std::move(g), std::move(h),
                                std::move(rep)};
}

// A certified immersion is a weak equivalence.  Beyond the decision
// procedure's verdict, the contraction exhibits the connecting data cellwise:
// h(v) is a cylinder from f(g(v)) to v, and whenever it is degenerate (always
// in dimension 0) its connector is a reversible cell f(g(v)) -> v.
inline CheckReport immersion_implies_weq(const OmegaFunctor& f,
                                         const ImmersionCertificate& cert) {
    CheckReport rep = is_weak_equivalence(f);
    const auto& Y = *f.cod();
    EqvDecider dec(f.cod());
    for (int k = 0; k <= Y.stored_cap(); ++k)
        for (auto v : Y.cells_at(k)) {
            VCell hv = cert.h.apply(v);
            Cylinder H = cert.glu.gamma.of(hv.base);
            while (H.n < hv.dim) H = cyl_unit(Y, H, H.n + 1);
            rep.note_checked();
            if (H.top != f.apply(cert.g.apply(v)) || H.bot != v) {
                rep.fail("weq-connector", "contraction cylinder at '" + Y.display(v) +
                                              "' does not join the retracted image to it");
                continue;
            }
            if (!cyl_degenerate(Y, H)) continue;
            rep.note_checked();
            if (!dec.reversible(cyl_pal(H)))
                rep.fail("weq-connector",
                         "connector at '" + Y.display(v) + "' is not reversible");
        }
    return rep;
}

// Any functor out of the domain of a certified immersion extends along it:
// v = u o g satisfies v o f = u.
inline OmegaFunctor extend_along_immersion(const ImmersionCertificate& cert,
                                           const OmegaFunctor& u) {
    return compose(u, cert.g);
}

namespace detail {

// Every boundary-inclusion square at dimension n into f, in a fixed order:
// tops by functor enumeration, bottoms by cell index.  A square is the top
// functor plus the principal bottom cell (the rest of the bottom is forced).
// fn returning false stops the sweep; the return value says whether it ran
// to completion.
template <class Fn>
bool for_each_globe_square(const OmegaFunctor& f, int n, const Budget& budget, Fn&& fn) {
    auto B = boundary_globe(n);
    const auto& Y = *f.cod();
    for (const auto& top : enumerate_functors(B, f.dom(), 100000, budget)) {
        std::vector<VCell> bottoms;
        if (n == 0) {
            for (auto y : Y.cells_at(0)) bottoms.push_back(y);
        } else {
            VCell s = f.apply(top.apply(B->vcell(*B->find(n - 1, globe_id(n - 1, false)))));
            VCell t = f.apply(top.apply(B->vcell(*B->find(n - 1, globe_id(n - 1, true)))));
            bottoms = Y.cells_between(n, s, t);
        }
        for (auto y : bottoms)
            if (!fn(top, y)) return false;
    }
    return true;
}

}  // namespace detail

// Cross-validation of trivial fibrations against raw lifting: f is one
// exactly when every boundary-inclusion square into f admits a lift.  Every
// square is enumerated (dimensions 0 .. max cap + 1), so this is exhaustive
// on small instances.
inline CheckReport lifting_tfib_check(const OmegaFunctor& f,
                                      const Budget& budget = Budget::current()) {
    CheckReport rep;
    bool all_lift = true;
    const int stop = std::max(f.dom()->stored_cap(), f.cod()->stored_cap()) + 1;
    for (int n = 0; n <= stop && all_lift; ++n) {
        auto inc = globe_inclusion(n);
        all_lift = detail::for_each_globe_square(
            f, n, budget, [&](const OmegaFunctor& top, VCell y) {
                rep.note_checked();
                LiftingProblem square(inc, f, top, sng(f.cod(), y));
                return find_lift(square, budget).has_value();
            });
    }
    if (all_lift != is_trivial_fibration(f).ok())
        rep.fail("tfib-lifting", "lifting verdict disagrees with the fibration check for '" +
                                     f.name() + "'");
    return rep;
}

// --- table pushouts -----------------------------------------------------------

// Pushout of finite tables along a span Y <-f- X -a-> Z: stored cells of Y
// and Z are merged by the classes generated by f(x) ~ a(x).  Supported when
// the span images are stored cells and no free composite arises (every
// composable pair of the glued table already has a composite); otherwise a
// precondition failure is thrown.
struct CatPushout {
    CatPtr cat;
    OmegaFunctor jy, jz;                                   // cocone legs Y -> P, Z -> P
    std::vector<std::vector<std::pair<int, VCell>>> origin;  // (side 0=Y/1=Z, its cell)
};

inline CatPushout cat_pushout(const OmegaFunctor& f, const OmegaFunctor& a,
                              const std::string& name = "pushout") {
    if (f.dom() != a.dom()) throw precondition_error("pushout: functors must share a domain");
    const auto& X = *f.dom();
    const auto& Y = *f.cod();
    const auto& Z = *a.cod();
    const int top = std::max(Y.stored_cap(), Z.stored_cap());
    const int cap = std::max(Y.cap(), Z.cap());

    // union-find per dimension over stored cells of Y then Z
    std::vector<std::vector<int>> parent(top + 1);
    std::vector<int> ny(top + 1, 0);
    for (int k = 0; k <= top; ++k) {
        ny[k] = k <= Y.stored_cap() ? static_cast<int>(Y.size(k)) : 0;
        int nz = k <= Z.stored_cap() ? static_cast<int>(Z.size(k)) : 0;
        parent[k].resize(ny[k] + nz);
        for (int i = 0; i < static_cast<int>(parent[k].size()); ++i) parent[k][i] = i;
    }
    auto find = [&](int k, int i) {
        while (parent[k][i] != i) i = parent[k][i] = parent[k][parent[k][i]];
        return i;
    };
    // Seed with the span at every dimension up to the top: above the apex's
    // stored range the padded cells still identify the stored unit chains of
    // both sides.  Pairs where either image has no stored incarnation carry
    // no table-level content; the cocone square is verified at the end.
    for (int k = 0; k <= top; ++k)
        for (auto x : X.cells_at(k)) {
            VCell fy = f.apply(x), az = a.apply(x);
            if (fy.base.dim == k && az.base.dim == k)
                parent[k][find(k, fy.base.idx)] = find(k, ny[k] + az.base.idx);
        }

    auto side_of = [&](int k, int i) { return i < ny[k] ? 0 : 1; };
    auto cell_at = [&](int k, int i) {
        return side_of(k, i) == 0 ? Y.vcell(Cell{k, i}) : Z.vcell(Cell{k, i - ny[k]});
    };
    auto cat_of = [&](int s) -> const FiniteOmegaCat& { return s == 0 ? Y : Z; };

    // deterministic class order: by least member (side Y first)
    std::vector<std::map<int, std::string>> id_of(top + 1);  // root -> glued id
    std::vector<std::vector<std::pair<int, int>>> order(top + 1);
    std::set<std::string> used;
    for (int k = 0; k <= top; ++k) {
        std::map<int, int> least;
        for (int i = 0; i < static_cast<int>(parent[k].size()); ++i) {
            int r = find(k, i);
            if (!least.count(r)) least[r] = i;  // first hit is least: ascending scan
        }
        for (auto& [r, m] : least) order[k].push_back({m, r});
        std::sort(order[k].begin(), order[k].end());
        for (auto& [m, r] : order[k]) {
            const auto& C = cat_of(side_of(k, m));
            std::string id = C.display(cell_at(k, m));
            while (used.count(std::to_string(k) + "#" + id)) id += "'";
            used.insert(std::to_string(k) + "#" + id);
            id_of[k][r] = id;
        }
    }

    auto glued = [&](int k, int s, VCell c) {  // id of the class of a stored side cell
        return id_of[k].at(find(k, s == 0 ? c.base.idx : ny[k] + c.base.idx));
    };

    CatBuilder bld(name, cap);
    for (int k = 0; k <= top; ++k)
        for (auto& [m, r] : order[k]) {
            int s = side_of(k, m);
            const auto& C = cat_of(s);
            VCell c = cell_at(k, m);
            if (k == 0)
                bld.add_cell(0, id_of[k].at(r));
            else
                bld.add_cell(k, id_of[k].at(r), glued(k - 1, s, C.src(c)),
                             glued(k - 1, s, C.tgt(c)));
            // all members must induce the same boundary (forced by the span)
            for (int i = 0; k > 0 && i < static_cast<int>(parent[k].size()); ++i) {
                if (find(k, i) != r) continue;
                int si = side_of(k, i);
                VCell ci = cell_at(k, i);
                if (glued(k - 1, si, cat_of(si).src(ci)) != glued(k - 1, s, C.src(c)) ||
                    glued(k - 1, si, cat_of(si).tgt(ci)) != glued(k - 1, s, C.tgt(c)))
                    throw std::logic_error("pushout boundaries disagree");
            }
        }

    // units and composites carried from both sides; agreement asserted
    std::vector<std::map<std::string, std::string>> unit_set(top + 1);
    std::map<std::string, std::string> comp_set;
    auto carry = [&](const FiniteOmegaCat& C, int s) {
        for (int k = 0; k < C.stored_cap(); ++k)
            for (auto c : C.cells_at(k)) {
                std::string base = glued(k, s, c), u = glued(k + 1, s, C.unit(c));
                auto it = unit_set[k].find(base);
                if (it == unit_set[k].end()) {
                    unit_set[k][base] = u;
                    bld.set_unit(k, base, u);
                } else if (it->second != u) {
                    throw std::logic_error("pushout units disagree");
                }
            }
        for (int k = 1; k <= C.stored_cap(); ++k)
            for (int p = 0; p < k; ++p)
                for (const auto& [uv, w] : C.comp_entries(k, p)) {
                    std::string lhs = std::to_string(k) + "|" + std::to_string(p) + "|" +
                                      glued(k, s, C.vcell(uv.first)) + "|" +
                                      glued(k, s, C.vcell(uv.second));
                    std::string rhs = glued(k, s, C.vcell(w));
                    auto it = comp_set.find(lhs);
                    if (it == comp_set.end()) {
                        comp_set[lhs] = rhs;
                        bld.add_comp(k, p, glued(k, s, C.vcell(uv.first)),
                                     glued(k, s, C.vcell(uv.second)), rhs);
                    } else if (it->second != rhs) {
                        throw std::logic_error("pushout composites disagree");
                    }
                }
    };
    carry(Y, 0);
    carry(Z, 1);
    bld.complete_units();

    CatPtr cat = bld.build();
    const auto& P = *cat;

    for (int k = 1; k <= P.stored_cap(); ++k)
        for (int p = 0; p < k; ++p)
            for (auto u : P.cells_at(k))
                for (auto v : P.cells_at(k))
                    if (P.composable(u, v, p) && !P.try_comp(u, v, p))
                        throw precondition_error("pushout closure: free composite of '" +
                                                 P.display(u) + "' and '" + P.display(v) +
                                                 "' required");

    std::vector<std::vector<std::pair<int, VCell>>> origin(P.stored_cap() + 1);
    for (int k = 0; k <= P.stored_cap(); ++k) {
        origin[k].assign(P.size(k), {-1, VCell{}});
        if (k <= top)
            for (auto& [m, r] : order[k])
                if (auto c = P.find(k, id_of[k].at(r)))
                    origin[k][c->idx] = {side_of(k, m), cell_at(k, m)};
        // cells introduced by unit completion: walk unit bases
        for (int i = 0; i < static_cast<int>(P.size(k)); ++i)
            if (origin[k][i].first < 0) {
                VCell w{Cell{k, i}, k};
                while (P.is_unit(w) && w.base.dim == w.dim &&
                       origin[w.dim][w.base.idx].first < 0)
                    w = P.unit_base(w);
                auto [s, c] = origin[w.base.dim][w.base.idx];
                origin[k][i] = {s, cat_of(s).pad(c, k)};
            }
    }

    auto leg = [&](const FiniteOmegaCat& C, int s, const char* nm) {
        std::vector<std::vector<VCell>> m(C.stored_cap() + 1);
        for (int k = 0; k <= C.stored_cap(); ++k)
            for (auto c : C.cells_at(k))
                m[k].push_back(P.vcell(*P.find(k, glued(k, s, c))));
        return OmegaFunctor(s == 0 ? f.cod() : a.cod(), cat, std::move(m), nm);
    };
    CatPushout out{cat, leg(Y, 0, "inl"), leg(Z, 1, "inr"), std::move(origin)};
    if (!compose(out.jy, f).same_map(compose(out.jz, a)))
        throw precondition_error("pushout closure: span not representable in tables");
    return out;
}

// Mediating functor out of a table pushout: agrees with u on the Y side and
// with v on the Z side.  Requires u o f = v o a, which makes the choice of
// member immaterial; disagreement on any merged class is reported by throwing.
inline OmegaFunctor pushout_copair(const CatPushout& P, const OmegaFunctor& u,
                                   const OmegaFunctor& v) {
    if (u.cod() != v.cod()) throw precondition_error("pushout copair: codomains differ");
    if (u.dom() != P.jy.dom() || v.dom() != P.jz.dom())
        throw precondition_error("pushout copair: legs do not match the cocone");
    const auto& C = *P.cat;
    std::vector<std::vector<VCell>> m(C.stored_cap() + 1);
    for (int k = 0; k <= C.stored_cap(); ++k)
        for (int i = 0; i < static_cast<int>(C.size(k)); ++i) {
            auto [s, c] = P.origin[k][i];
            m[k].push_back((s == 0 ? u : v).apply(c));
        }
    OmegaFunctor out(P.cat, u.cod(), std::move(m), "[" + u.name() + "," + v.name() + "]");
    for (int k = 0; k <= C.stored_cap(); ++k) {
        for (auto y : P.jy.dom()->cells_at(k))
            if (out.apply(P.jy.apply(y)) != u.apply(y))
                throw precondition_error("pushout copair: legs disagree on a merged cell");
        for (auto z : P.jz.dom()->cells_at(k))
            if (out.apply(P.jz.apply(z)) != v.apply(z))
                throw precondition_error("pushout copair: legs disagree on a merged cell");
    }
    return out;
}

// --- pushout closure of immersions ---------------------------------------------

namespace detail {
// Shared tail: given an immersion certificate for f and the pushout square
// (jy, jz) of f along a, builds the retraction and contraction of jz by the
// universal property and cross-checks with an independent search.
inline void pushout_immersion_checks(CheckReport& rep, const OmegaFunctor& f,
                                     const ImmersionCertificate& cert, const OmegaFunctor& a,
                                     const CatPushout& P, const Budget& budget) {
    auto eq = [&](const char* law, const OmegaFunctor& lhs, const OmegaFunctor& rhs) {
        rep.note_checked();
        if (!lhs.same_map(rhs)) rep.fail(law, lhs.name() + " != " + rhs.name());
    };
    eq("pushout-square", compose(P.jy, f), compose(P.jz, a));

    // retraction: P -> Z restricting to a o g on Y and the identity on Z
    OmegaFunctor gp = pushout_copair(P, compose(a, cert.g), identity_functor(a.cod()));
    eq("pushout-retraction", compose(gp, P.jz), identity_functor(a.cod()));

    // contraction: P -> Gamma(P) glued from Gamma(jy) o h and Triv o jz
    try {
        GammaCat GP = gamma_category(P.cat, budget);
        OmegaFunctor hp =
            pushout_copair(P, compose(gamma_functor(cert.glu.gamma, GP, P.jy), cert.h),
                           compose(triv_functor(GP), P.jz));
        rep.merge(validate_functor(hp));
        eq("pushout-contraction-top", compose(top_functor(GP), hp), compose(P.jz, gp));
        eq("pushout-contraction-bottom", compose(bot_functor(GP), hp),
           identity_functor(P.cat));
        eq("pushout-contraction-trivial", compose(hp, P.jz),
           compose(triv_functor(GP), P.jz));
    } catch (const budget_error& e) {
        rep.inconclusive("pushout-contraction", e.what());
    }

    auto cert2 = is_immersion(P.jz, budget);
    if (!cert2) {
        rep.fail("pushout-immersion", "no certificate found for '" + P.jz.name() + "'");
        return;
    }
    rep.merge(cert2->checks);
    rep.merge(immersion_implies_weq(P.jz, *cert2));
}
}  // namespace detail

// Immersions are closed under pushout along arbitrary functors; table route.
inline CheckReport pushout_immersion_suite(const OmegaFunctor& f, const OmegaFunctor& a,
                                           const Budget& budget = Budget::current()) {
    CheckReport rep;
    auto cert = is_immersion(f, budget);
    if (!cert) {
        rep.fail("pushout-input", "'" + f.name() + "' is not an immersion");
        return rep;
    }
    rep.merge(cert->checks);
    try {
        CatPushout P = cat_pushout(f, a, "po(" + f.cod()->name() + ")");
        rep.merge(validate_category(*P.cat));
        detail::pushout_immersion_checks(rep, f, *cert, a, P, budget);
    } catch (const budget_error& e) {
        rep.inconclusive("pushout-closure", e.what());
    } catch (const precondition_error& e) {
        rep.inconclusive("pushout-closure", e.what());
    }
    return rep;
}

// Presented route: pushes Q(m) out along Q(a) via the polygraph pushout, then
// runs the same checks on the materialized square.  Pushouts whose free
// category is not finitely tabulable are reported as inconclusive.
inline CheckReport pushout_immersion_suite(const PolyMorphism& m, const PolyMorphism& a,
                                           const Budget& budget = Budget::current()) {
    CheckReport rep;
    rep.merge(validate_poly_morphism(m));
    rep.merge(validate_poly_morphism(a));
    if (rep.refuted()) return rep;
    try {
        FreeTable ST = materialize(m.dom, budget);
        FreeTable S1T = materialize(m.cod, budget);
        FreeTable S2T = materialize(a.cod, budget);
        OmegaFunctor f = functor_of_morphism(m, ST, S1T, budget);
        auto cert = is_immersion(f, budget);
        if (!cert) {
            rep.fail("pushout-input", "'" + f.name() + "' is not an immersion");
            return rep;
        }
        rep.merge(cert->checks);

        PolyPushout po = pushout_polygraph(m, a);
        FreeTable PT = materialize(po.poly, budget);
        OmegaFunctor fp = functor_of_morphism(po.j2, S2T, PT, budget);
        OmegaFunctor j1 = functor_of_morphism(po.j1, S1T, PT, budget);
        OmegaFunctor af = functor_of_morphism(a, ST, S2T, budget);
        rep.note_checked();
        if (!compose(j1, f).same_map(compose(fp, af)))
            rep.fail("pushout-square", "presented pushout square does not commute");

        auto cert2 = is_immersion(fp, budget);
        if (!cert2) {
            rep.fail("pushout-immersion", "no certificate found for '" + fp.name() + "'");
            return rep;
        }
        rep.merge(cert2->checks);
        rep.merge(immersion_implies_weq(fp, *cert2));
    } catch (const budget_error& e) {
        rep.inconclusive("pushout-materialize", e.what());
    } catch (const precondition_error& e) {
        rep.inconclusive("pushout-materialize", e.what());
    }
    return rep;
}

}  // namespace omc
