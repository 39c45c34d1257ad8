#pragma once

// Strict functors between finite tables, plus products and coproducts.
//
// A functor stores one image per stored cell of its domain; images are
// padded cells, so maps into lower-capped codomains (or through collapses)
// need no special casing. Cells above the stored range map to iterated
// units of their base image automatically.

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "omc/category.hpp"

namespace omc {

class OmegaFunctor {
public:
    OmegaFunctor(CatPtr dom, CatPtr cod, std::vector<std::vector<VCell>> map,
                 std::string name = {})
        : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)),
          name_(std::move(name)) {
        if (static_cast<int>(map_.size()) != dom_->stored_cap() + 1)
            throw schema_error("functor map must cover every stored dimension");
        for (int k = 0; k <= dom_->stored_cap(); ++k) {
            if (map_[k].size() != dom_->size(k))
                throw schema_error("functor map incomplete at dim " + std::to_string(k));
            for (const auto& v : map_[k])
                if (v.dim != k)
                    throw schema_error("functor image dimension mismatch at dim " +
                                       std::to_string(k));
        }
    }

    const CatPtr& dom() const { return dom_; }
    const CatPtr& cod() const { return cod_; }
    const std::string& name() const { return name_; }
    void rename(std::string n) { name_ = std::move(n); }

    VCell apply(VCell v) const {
        if (v.base.dim > dom_->stored_cap())
            throw precondition_error("functor applied to foreign cell");
        return cod_->pad(map_[v.base.dim][v.base.idx], v.dim);
    }
    VCell operator()(VCell v) const { return apply(v); }

    // Structural equality; meaningful when both sides share dom/cod tables.
    bool same_map(const OmegaFunctor& o) const {
        return dom_ == o.dom_ && cod_ == o.cod_ && map_ == o.map_;
    }

    const std::vector<std::vector<VCell>>& map() const { return map_; }

private:
    CatPtr dom_, cod_;
    std::vector<std::vector<VCell>> map_;
    std::string name_;
};

inline OmegaFunctor identity_functor(const CatPtr& C) {
    std::vector<std::vector<VCell>> m(C->stored_cap() + 1);
    for (int k = 0; k <= C->stored_cap(); ++k) {
        auto cells = C->cells_at(k);
        m[k].assign(cells.begin(), cells.end());
    }
    return OmegaFunctor(C, C, std::move(m), "id");
}

inline OmegaFunctor compose(const OmegaFunctor& g, const OmegaFunctor& f) {
    if (f.cod() != g.dom())
        throw precondition_error("compose: functor boundaries do not match");
    std::vector<std::vector<VCell>> m(f.dom()->stored_cap() + 1);
    for (int k = 0; k <= f.dom()->stored_cap(); ++k)
        for (const auto& v : f.map()[k]) m[k].push_back(g.apply(v));
    return OmegaFunctor(f.dom(), g.cod(),
                        std::move(m), g.name() + "." + f.name());
}

// The unique functor to the terminal category.
inline OmegaFunctor bang(const CatPtr& C, const CatPtr& term) {
    VCell pt = term->vcell(*term->find(0, "pt"));
    std::vector<std::vector<VCell>> m(C->stored_cap() + 1);
    for (int k = 0; k <= C->stored_cap(); ++k)
        m[k].assign(C->size(k), term->pad(pt, k));
    return OmegaFunctor(C, term, std::move(m), "!");
}

// Functoriality laws over the whole domain table.
inline CheckReport validate_functor(const OmegaFunctor& f) {
    CheckReport rep("validate functor " + f.name());
    const auto& D = *f.dom();
    const auto& C = *f.cod();
    for (int k = 1; k <= D.stored_cap(); ++k)
        for (auto u : D.cells_at(k)) {
            rep.note_checked();
            if (f.apply(D.src(u)) != C.src(f.apply(u)) ||
                f.apply(D.tgt(u)) != C.tgt(f.apply(u)))
                rep.fail("functor-boundary", D.display(u));
        }
    for (int k = 0; k < D.stored_cap(); ++k)
        for (auto x : D.cells_at(k)) {
            rep.note_checked();
            if (f.apply(D.unit(x)) != C.unit(f.apply(x)))
                rep.fail("functor-unit", D.display(x));
        }
    for (int k = 1; k <= D.stored_cap(); ++k)
        for (int p = 0; p < k; ++p)
            for (const auto& [ab, c] : D.comp_entries(k, p)) {
                rep.note_checked();
                auto img = C.try_comp(f.apply(D.vcell(ab.first)), f.apply(D.vcell(ab.second)), p);
                if (!img || *img != f.apply(D.vcell(c)))
                    rep.fail("functor-comp", D.display(D.vcell(ab.first)) + " o_" +
                                                 std::to_string(p) + " " +
                                                 D.display(D.vcell(ab.second)));
            }
    return rep;
}

// Binary product: cells are dimensionwise pairs (padded on the shorter
// side), all structure componentwise.
struct Product {
    CatPtr cat;
    // Pair decomposition per stored dim and index.
    std::vector<std::vector<std::pair<VCell, VCell>>> parts;

    static std::string pair_id(const FiniteOmegaCat& A, const FiniteOmegaCat& B, VCell a,
                               VCell b) {
        return "(" + A.display(a) + "|" + B.display(b) + ")";
    }
};

inline Product product(const CatPtr& A, const CatPtr& B) {
    int top = std::max(A->stored_cap(), B->stored_cap());
    int cap = std::max(A->cap(), B->cap());
    CatBuilder bld("(" + A->name() + "x" + B->name() + ")", std::max(cap, 0));
    auto id_of = [&](VCell a, VCell b) { return Product::pair_id(*A, *B, a, b); };
    for (int k = 0; k <= top; ++k)
        for (auto a : A->cells_at(k))
            for (auto b : B->cells_at(k)) {
                if (k == 0)
                    bld.add_cell(0, id_of(a, b));
                else
                    bld.add_cell(k, id_of(a, b), id_of(A->src(a), B->src(b)),
                                 id_of(A->tgt(a), B->tgt(b)));
                if (k < top) bld.set_unit(k, id_of(a, b), id_of(A->unit(a), B->unit(b)));
            }
    for (int k = 1; k <= top; ++k)
        for (int p = 0; p < k; ++p)
            for (auto a : A->cells_at(k))
                for (auto a2 : A->cells_at(k)) {
                    auto ra = A->try_comp(a, a2, p);
                    if (!ra) continue;
                    for (auto b : B->cells_at(k))
                        for (auto b2 : B->cells_at(k)) {
                            auto rb = B->try_comp(b, b2, p);
                            if (!rb) continue;
                            bld.add_comp(k, p, id_of(a, b), id_of(a2, b2), id_of(*ra, *rb));
                        }
                }
    Product out;
    out.cat = bld.build();
    out.parts.resize(top + 1);
    for (int k = 0; k <= top; ++k) {
        out.parts[k].resize(out.cat->size(k));
        for (auto a : A->cells_at(k))
            for (auto b : B->cells_at(k)) {
                auto c = out.cat->find(k, id_of(a, b));
                out.parts[k][c->idx] = {a, b};
            }
    }
    return out;
}

inline OmegaFunctor product_proj(const Product& P, const CatPtr& A, bool first) {
    std::vector<std::vector<VCell>> m(P.cat->stored_cap() + 1);
    for (int k = 0; k <= P.cat->stored_cap(); ++k)
        for (const auto& [a, b] : P.parts[k]) {
            VCell v = first ? a : b;
            m[k].push_back(A->pad(v, k));
        }
    return OmegaFunctor(P.cat, A, std::move(m), first ? "proj1" : "proj2");
}

struct Coproduct {
    CatPtr cat;
    // Membership per stored dim and index: 0 = left, 1 = right.
    std::vector<std::vector<int>> side;
    std::vector<std::vector<VCell>> origin;
};

inline std::string copr_id(int side, const std::string& id) {
    return (side == 0 ? "l(" : "r(") + id + ")";
}

// Disjoint union; the lower side gets stored unit chains up to the shared top.
inline Coproduct coproduct(const CatPtr& A, const CatPtr& B) {
    int cap = std::max(A->cap(), B->cap());
    CatBuilder bld("(" + A->name() + "+" + B->name() + ")", cap);
    auto add_side = [&](const FiniteOmegaCat& C, int s) {
        for (int k = 0; k <= C.stored_cap(); ++k)
            for (auto c : C.cells_at(k)) {
                if (k == 0)
                    bld.add_cell(0, copr_id(s, C.display(c)));
                else
                    bld.add_cell(k, copr_id(s, C.display(c)), copr_id(s, C.display(C.src(c))),
                                 copr_id(s, C.display(C.tgt(c))));
                if (k < C.stored_cap())
                    bld.set_unit(k, copr_id(s, C.display(c)), copr_id(s, C.display(C.unit(c))));
            }
        for (int k = 1; k <= C.stored_cap(); ++k)
            for (int p = 0; p < k; ++p)
                for (const auto& [ab, c] : C.comp_entries(k, p))
                    bld.add_comp(k, p, copr_id(s, C.display(C.vcell(ab.first))),
                                 copr_id(s, C.display(C.vcell(ab.second))),
                                 copr_id(s, C.display(C.vcell(c))));
    };
    add_side(*A, 0);
    add_side(*B, 1);
    bld.complete_units();
    Coproduct out;
    out.cat = bld.build();
    int top = out.cat->stored_cap();
    out.side.resize(top + 1);
    out.origin.resize(top + 1);
    for (int k = 0; k <= top; ++k) {
        out.side[k].assign(out.cat->size(k), -1);
        out.origin[k].resize(out.cat->size(k));
        auto tag = [&](const FiniteOmegaCat& C, int s) {
            for (auto c : C.cells_at(k)) {
                if (auto f = out.cat->find(k, copr_id(s, C.display(c)))) {
                    out.side[k][f->idx] = s;
                    out.origin[k][f->idx] = c;
                }
            }
        };
        tag(*A, 0);
        tag(*B, 1);
        // Cells introduced by unit completion: walk unit bases.
        for (int i = 0; i < static_cast<int>(out.cat->size(k)); ++i)
            if (out.side[k][i] < 0) {
                VCell v{Cell{k, i}, k};
                VCell w = v;
                while (out.cat->is_unit(w) && w.base.dim == w.dim && out.side[w.dim][w.base.idx] < 0)
                    w = out.cat->unit_base(w);
                out.side[k][i] = out.side[w.base.dim][w.base.idx];
                const auto& C = out.side[k][i] == 0 ? *A : *B;
                out.origin[k][i] = C.pad(out.origin[w.base.dim][w.base.idx], k);
            }
    }
    return out;
}

inline OmegaFunctor coproduct_inj(const Coproduct& P, const CatPtr& side_cat, int s) {
    std::vector<std::vector<VCell>> m(side_cat->stored_cap() + 1);
    for (int k = 0; k <= side_cat->stored_cap(); ++k)
        for (auto c : side_cat->cells_at(k)) {
            auto f = P.cat->find(k, copr_id(s, side_cat->display(c)));
            if (!f) throw precondition_error("coproduct injection: missing image");
            m[k].push_back(P.cat->vcell(*f));
        }
    return OmegaFunctor(side_cat, P.cat, std::move(m), s == 0 ? "inl" : "inr");
}

// Copairing [f, g] out of a coproduct.
inline OmegaFunctor coproduct_copair(const Coproduct& P, const OmegaFunctor& f,
                                     const OmegaFunctor& g) {
    if (f.cod() != g.cod()) throw precondition_error("copair: codomains differ");
    std::vector<std::vector<VCell>> m(P.cat->stored_cap() + 1);
    for (int k = 0; k <= P.cat->stored_cap(); ++k)
        for (int i = 0; i < static_cast<int>(P.cat->size(k)); ++i) {
            const OmegaFunctor& h = P.side[k][i] == 0 ? f : g;
            m[k].push_back(h.apply(P.origin[k][i]));
        }
    return OmegaFunctor(P.cat, f.cod(), std::move(m), "[" + f.name() + "," + g.name() + "]");
}

} // namespace omc
