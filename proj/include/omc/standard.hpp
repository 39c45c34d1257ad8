#pragma once

// Small standard categories used as fixtures and building blocks:
// terminal, discrete sets, the walking arrow, the walking isomorphism,
// globes and their boundaries.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "omc/category.hpp"
#include "omc/functor.hpp"

namespace omc {

inline CatPtr terminal() {
    CatBuilder b("terminal", 0);
    b.add_cell(0, "pt");
    return b.build();
}

inline CatPtr discrete(int n, const std::string& prefix = "x") {
    CatBuilder b("discrete" + std::to_string(n), 0);
    for (int i = 0; i < n; ++i) b.add_cell(0, prefix + std::to_string(i));
    return b.build();
}

// Free arrow a -> b; no inverse.
inline CatPtr walking_arrow() {
    CatBuilder b("walking_arrow", 1);
    b.add_cell(0, "a");
    b.add_cell(0, "b");
    b.add_cell(1, "u", "a", "b");
    b.complete_units();
    return b.build();
}

// Strict isomorphism a ~ b: u and v compose to units on the nose.
inline CatPtr interval_iso() {
    CatBuilder b("interval_iso", 1);
    b.add_cell(0, "a");
    b.add_cell(0, "b");
    b.add_cell(1, "u", "a", "b");
    b.add_cell(1, "v", "b", "a");
    b.add_cell(1, "1(a)", "a", "a");
    b.add_cell(1, "1(b)", "b", "b");
    b.set_unit(0, "a", "1(a)");
    b.set_unit(0, "b", "1(b)");
    b.add_comp(1, 0, "u", "v", "1(a)");
    b.add_comp(1, 0, "v", "u", "1(b)");
    b.complete_units();
    return b.build();
}

// Two composable strict-iso homs: objects a, b, c; hom(a,b), hom(b,c) and
// hom(a,c) are indiscrete groupoids on {f,g}, {h,k} and their composites.
// The 2-cell x => y is named m(x,y); horizontal composition is forced.
inline CatPtr iso_square() {
    CatBuilder b("iso_square", 2);
    for (const char* o : {"a", "b", "c"}) b.add_cell(0, o);
    const std::vector<std::string> ab{"f", "g"}, bc{"h", "k"};
    std::vector<std::string> ac;
    for (const auto& x : ab)
        for (const auto& s : bc) ac.push_back(x + s);
    for (const auto& x : ab) b.add_cell(1, x, "a", "b");
    for (const auto& s : bc) b.add_cell(1, s, "b", "c");
    for (const auto& u : ac) b.add_cell(1, u, "a", "c");
    auto m = [](const std::string& x, const std::string& y) {
        return x == y ? "1(" + x + ")" : "m(" + x + "," + y + ")";
    };
    auto hom = [&](const std::vector<std::string>& os) {
        for (const auto& x : os)
            for (const auto& y : os)
                if (x != y) b.add_cell(2, m(x, y), x, y);
        for (const auto& x : os)
            for (const auto& y : os)
                for (const auto& z : os) b.add_comp(2, 1, m(x, y), m(y, z), m(x, z));
    };
    hom(ab);
    hom(bc);
    hom(ac);
    for (const auto& x : ab)
        for (const auto& s : bc) b.add_comp(1, 0, x, s, x + s);
    for (const auto& x : ab)
        for (const auto& y : ab)
            for (const auto& s : bc)
                for (const auto& t : bc) b.add_comp(2, 0, m(x, y), m(s, t), m(x + s, y + t));
    b.complete_units();
    return b.build();
}

inline std::string globe_id(int k, bool plus) { return "e" + std::to_string(k) + (plus ? "+" : "-"); }

// The n-globe: two non-identity cells per dimension below n, one at n.
// Memoized so functors over the same globe share one instance.
inline CatPtr globe(int n) {
    static std::map<int, CatPtr> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    CatBuilder b("globe" + std::to_string(n), n);
    if (n == 0) {
        b.add_cell(0, "o");
        return cache[n] = b.build();
    }
    b.add_cell(0, globe_id(0, false));
    b.add_cell(0, globe_id(0, true));
    for (int k = 1; k < n; ++k) {
        b.add_cell(k, globe_id(k, false), globe_id(k - 1, false), globe_id(k - 1, true));
        b.add_cell(k, globe_id(k, true), globe_id(k - 1, false), globe_id(k - 1, true));
    }
    b.add_cell(n, "o", globe_id(n - 1, false), globe_id(n - 1, true));
    b.complete_units();
    return cache[n] = b.build();
}

// The boundary of the n-globe: the n-globe without its top cell.
// For n = 0 this is the empty category.  Memoized like globe().
inline CatPtr boundary_globe(int n) {
    static std::map<int, CatPtr> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    int cap = n > 0 ? n - 1 : 0;
    CatBuilder b("boundary_globe" + std::to_string(n), cap);
    if (n == 0) return cache[n] = b.build();
    b.add_cell(0, globe_id(0, false));
    b.add_cell(0, globe_id(0, true));
    for (int k = 1; k < n; ++k) {
        b.add_cell(k, globe_id(k, false), globe_id(k - 1, false), globe_id(k - 1, true));
        b.add_cell(k, globe_id(k, true), globe_id(k - 1, false), globe_id(k - 1, true));
    }
    b.complete_units();
    return cache[n] = b.build();
}

// Functor picking out one cell: the globe classifies cells by Yoneda.
inline OmegaFunctor sng(CatPtr C, VCell x, const std::string& name = "sng") {
    const int n = x.dim;
    auto G = globe(n);
    std::vector<std::vector<VCell>> map(G->stored_cap() + 1);
    for (int k = 0; k <= G->stored_cap(); ++k) {
        map[k].resize(G->size(k));
        for (int i = 0; i < static_cast<int>(G->size(k)); ++i) {
            VCell v{Cell{k, i}, k};
            if (G->is_unit(v)) {
                map[k][i] = C->unit(map[k - 1][G->unit_base(v).base.idx]);
            } else if (k == n) {
                map[k][i] = x;
            } else {
                const std::string id = G->id_of(Cell{k, i});
                map[k][i] = (id == globe_id(k, false)) ? C->bsrc(x, k) : C->btgt(x, k);
            }
        }
    }
    return OmegaFunctor(G, C, map, name);
}

// Functor from the boundary globe classifying a parallel pair.
inline OmegaFunctor pair_functor(CatPtr C, VCell x, VCell xp,
                                 const std::string& name = "pair") {
    if (x.dim != xp.dim || !C->parallel(x, xp))
        throw precondition_error("pair_functor: cells must be parallel");
    const int n = x.dim;
    auto G = boundary_globe(n + 1);
    std::vector<std::vector<VCell>> map(G->stored_cap() + 1);
    for (int k = 0; k <= G->stored_cap(); ++k) {
        map[k].resize(G->size(k));
        for (int i = 0; i < static_cast<int>(G->size(k)); ++i) {
            VCell v{Cell{k, i}, k};
            if (G->is_unit(v)) {
                map[k][i] = C->unit(map[k - 1][G->unit_base(v).base.idx]);
            } else if (k == n) {
                const std::string id = G->id_of(Cell{k, i});
                map[k][i] = (id == globe_id(k, false)) ? x : xp;
            } else {
                const std::string id = G->id_of(Cell{k, i});
                map[k][i] = (id == globe_id(k, false)) ? C->bsrc(x, k) : C->btgt(x, k);
            }
        }
    }
    return OmegaFunctor(G, C, map, name);
}

// The inclusion of the boundary into the globe.
inline OmegaFunctor globe_inclusion(int n) {
    auto B = boundary_globe(n);
    auto G = globe(n);
    std::vector<std::vector<VCell>> map(B->stored_cap() + 1);
    for (int k = 0; k <= B->stored_cap(); ++k) {
        map[k].resize(B->size(k));
        for (int i = 0; i < static_cast<int>(B->size(k)); ++i)
            map[k][i] = G->vcell(*G->find(k, B->id_of(Cell{k, i})));
    }
    return OmegaFunctor(B, G, map, "i_" + std::to_string(n));
}

// Collapses both top cells of the boundary (n+1)-globe onto the top cell
// of the n-globe.
inline OmegaFunctor globe_collapse(int n) {
    auto G = globe(n);
    auto f = pair_functor(G, G->vcell(*G->find(n, "o")), G->vcell(*G->find(n, "o")),
                          "collapse" + std::to_string(n));
    return f;
}

// The two maps O(n) -> bd O(n+1) hitting the negative and positive copies:
// the cocone of the boundary pushout square.
inline std::pair<OmegaFunctor, OmegaFunctor> boundary_cocone(int n) {
    auto G = globe(n);
    auto B = boundary_globe(n + 1);
    auto mk = [&](bool plus) {
        std::vector<std::vector<VCell>> map(G->stored_cap() + 1);
        for (int k = 0; k <= G->stored_cap(); ++k) {
            map[k].resize(G->size(k));
            for (int i = 0; i < static_cast<int>(G->size(k)); ++i) {
                std::string id = G->id_of(Cell{k, i});
                if (k == n && id == "o") id = globe_id(n, plus);
                map[k][i] = B->vcell(*B->find(k, id));  // unit names coincide
            }
        }
        return OmegaFunctor(G, B, map, plus ? "cone+" : "cone-");
    };
    return {mk(false), mk(true)};
}

} // namespace omc
