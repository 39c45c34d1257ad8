#pragma once
// Generator presentations (polygraphs) and their free categories up to
// dimension 2: syntactic cells, interchange-exact 2-cell equality, globe
// presentations, generator-level morphisms and pushouts, and budgeted
// materialization into composition tables. Generators above dimension 2 are
// carried for bookkeeping; their free composites are not enumerated.

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omc/base.hpp"
#include "omc/category.hpp"
#include "omc/functor.hpp"
#include "omc/report.hpp"
#include "omc/standard.hpp"

namespace omc {

// --- syntactic cells -------------------------------------------------------

struct Whisker {
    std::vector<int> left;  // 1-generator indices
    int gen = -1;           // 2-generator index
    std::vector<int> right;
    auto operator<=>(const Whisker&) const = default;
};

// Cell of the free category on a polygraph. dim 0: a generator. dim 1: a
// word of composable 1-generators starting at `obj` (empty word = unit).
// dim 2: a vertical chain of whiskered 2-generators over the source 1-cell
// (obj, word); the empty chain is the unit on that 1-cell. operator== is
// syntactic; 2-cells are semantically equal when interchange-related.
struct FreeCell {
    int dim = -1;
    int obj = -1;
    std::vector<int> word;
    std::vector<Whisker> whisk;
    auto operator<=>(const FreeCell&) const = default;
};

// Attachment literal: the same shape with string names, resolved at build.
struct WhiskerLit {
    std::vector<std::string> left;
    std::string gen;
    std::vector<std::string> right;
};
struct FreeLit {
    int dim = -1;
    std::string obj;
    std::vector<std::string> word;
    std::vector<WhiskerLit> whisk;
};

inline FreeLit lit0(std::string g) { return FreeLit{0, std::move(g), {}, {}}; }
inline FreeLit lit1(std::string obj, std::vector<std::string> word) {
    return FreeLit{1, std::move(obj), std::move(word), {}};
}
inline FreeLit lit2(std::string obj, std::vector<std::string> srcword,
                    std::vector<WhiskerLit> whisk) {
    return FreeLit{2, std::move(obj), std::move(srcword), std::move(whisk)};
}

struct PolyGen {
    std::string id;
    FreeCell src, tgt;  // (k-1)-cells of the free category below; unused at dim 0
};

class Polygraph;
using PolyPtr = std::shared_ptr<const Polygraph>;
struct PolyMorphism;
struct PolyPushout;
PolyPushout pushout_polygraph(const PolyMorphism&, const PolyMorphism&, const std::string&);

class Polygraph {
  public:
    const std::string& name() const { return name_; }
    int cap() const { return cap_; }
    // Highest dimension carrying a generator; -1 when empty.
    int top_dim() const { return static_cast<int>(gens_.size()) - 1; }
    int gen_count(int dim) const {
        if (dim < 0 || dim > top_dim()) return 0;
        return static_cast<int>(gens_[dim].size());
    }
    const PolyGen& gen(int dim, int idx) const { return gens_[dim][idx]; }
    std::optional<int> find_gen(int dim, const std::string& id) const {
        if (dim < 0 || dim > top_dim()) return std::nullopt;
        auto it = index_[dim].find(id);
        if (it == index_[dim].end()) return std::nullopt;
        return it->second;
    }

    std::string word_str(int obj, const std::vector<int>& word) const {
        if (word.empty()) return "1(" + gens_[0][obj].id + ")";
        std::string s;
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (i) s += "*";
            s += gens_[1][word[i]].id;
        }
        return s;
    }

    std::string display(const FreeCell& c) const {
        if (c.dim == 0) return gens_[0][c.obj].id;
        if (c.dim == 1) return word_str(c.obj, c.word);
        if (c.whisk.empty()) return "1(" + word_str(c.obj, c.word) + ")";
        std::string s;
        for (std::size_t i = 0; i < c.whisk.size(); ++i) {
            if (i) s += ".";
            const auto& w = c.whisk[i];
            s += "[" + (w.left.empty() ? "-" : word_str(word_start(w.left), w.left)) + "/" +
                 gens_[2][w.gen].id + "/" +
                 (w.right.empty() ? "-" : word_str(word_start(w.right), w.right)) + "]";
        }
        return s;
    }

    // Source/target objects of 1-generator words.
    int gen1_src(int g) const { return gens_[1][g].src.obj; }
    int gen1_tgt(int g) const { return gens_[1][g].tgt.obj; }
    int word_start(const std::vector<int>& w) const { return w.empty() ? -1 : gen1_src(w[0]); }
    int word_end(int obj, const std::vector<int>& w) const {
        return w.empty() ? obj : gen1_tgt(w.back());
    }

  private:
    friend class PolyBuilder;
    friend PolyPushout pushout_polygraph(const PolyMorphism&, const PolyMorphism&,
                                         const std::string&);
    std::string name_;
    int cap_ = 0;
    std::vector<std::vector<PolyGen>> gens_;
    std::vector<std::map<std::string, int>> index_;
};

// --- free-cell operations ----------------------------------------------------

inline bool fc_valid(const Polygraph& S, const FreeCell& c);

namespace detail {
// Source and target words of one whisker entry.
inline std::vector<int> whisker_word(const Polygraph& S, const Whisker& w, bool src) {
    const FreeCell& mid = src ? S.gen(2, w.gen).src : S.gen(2, w.gen).tgt;
    std::vector<int> out = w.left;
    out.insert(out.end(), mid.word.begin(), mid.word.end());
    out.insert(out.end(), w.right.begin(), w.right.end());
    return out;
}
}  // namespace detail

inline FreeCell fc_src(const Polygraph& S, const FreeCell& c) {
    if (c.dim == 1) return FreeCell{0, c.obj, {}, {}};
    if (c.dim == 2) return FreeCell{1, c.obj, c.word, {}};
    throw precondition_error("fc_src: dimension out of range");
}

inline FreeCell fc_tgt(const Polygraph& S, const FreeCell& c) {
    if (c.dim == 1) return FreeCell{0, S.word_end(c.obj, c.word), {}, {}};
    if (c.dim == 2) {
        if (c.whisk.empty()) return FreeCell{1, c.obj, c.word, {}};
        return FreeCell{1, c.obj, detail::whisker_word(S, c.whisk.back(), false), {}};
    }
    throw precondition_error("fc_tgt: dimension out of range");
}

inline FreeCell fc_unit(const Polygraph& S, const FreeCell& c) {
    if (c.dim == 0) return FreeCell{1, c.obj, {}, {}};
    if (c.dim == 1) return FreeCell{2, c.obj, c.word, {}};
    throw precondition_error("fc_unit: dimension out of range");
}

inline FreeCell fc_pad(const Polygraph& S, FreeCell c, int m) {
    while (c.dim < m) c = fc_unit(S, c);
    return c;
}

inline bool fc_valid(const Polygraph& S, const FreeCell& c) {
    if (c.dim == 0) return c.obj >= 0 && c.obj < S.gen_count(0);
    if (c.dim == 1) {
        if (c.obj < 0 || c.obj >= S.gen_count(0)) return false;
        int at = c.obj;
        for (int g : c.word) {
            if (g < 0 || g >= S.gen_count(1) || S.gen1_src(g) != at) return false;
            at = S.gen1_tgt(g);
        }
        return true;
    }
    if (c.dim == 2) {
        if (!fc_valid(S, FreeCell{1, c.obj, c.word, {}})) return false;
        std::vector<int> at = c.word;
        for (const auto& w : c.whisk) {
            if (w.gen < 0 || w.gen >= S.gen_count(2)) return false;
            if (detail::whisker_word(S, w, true) != at) return false;
            if (!w.left.empty() &&
                !fc_valid(S, FreeCell{1, S.word_start(w.left), w.left, {}}))
                return false;
            if (!w.right.empty() &&
                !fc_valid(S, FreeCell{1, S.word_start(w.right), w.right, {}}))
                return false;
            at = detail::whisker_word(S, w, false);
        }
        return true;
    }
    return false;
}

namespace detail {
// Adjacent interchange swap of entries i, i+1 when they act on disjoint
// segments of the word; returns the swapped pair or nothing.
inline std::optional<std::pair<Whisker, Whisker>> swap_whiskers(const Polygraph& S,
                                                                const Whisker& e1,
                                                                const Whisker& e2) {
    const auto& sa = S.gen(2, e1.gen).src.word;
    const auto& ta = S.gen(2, e1.gen).tgt.word;
    const auto& sb = S.gen(2, e2.gen).src.word;
    const auto& tb = S.gen(2, e2.gen).tgt.word;
    auto cat = [](std::vector<int> a, const std::vector<int>& b, const std::vector<int>& c) {
        a.insert(a.end(), b.begin(), b.end());
        a.insert(a.end(), c.begin(), c.end());
        return a;
    };
    if (e2.left.size() >= e1.left.size() + ta.size()) {
        // e2 acts strictly to the right of e1's image.
        std::vector<int> mid(e2.left.begin() + e1.left.size() + ta.size(), e2.left.end());
        Whisker b2{cat(e1.left, sa, mid), e2.gen, e2.right};
        Whisker b1{e1.left, e1.gen, cat(mid, tb, e2.right)};
        return std::pair{b2, b1};
    }
    if (e2.left.size() + sb.size() <= e1.left.size()) {
        // e2 acts strictly to the left.
        std::vector<int> mid(e1.left.begin() + e2.left.size() + sb.size(), e1.left.end());
        Whisker b2{e2.left, e2.gen, cat(mid, sa, e1.right)};
        Whisker b1{cat(e2.left, tb, mid), e1.gen, e1.right};
        return std::pair{b2, b1};
    }
    return std::nullopt;
}

inline std::string encode_seq(const Polygraph& S, const FreeCell& c) { return S.display(c); }

// Breadth-first closure of a 2-cell under adjacent interchange swaps.
// Visits every representation of the cell; exact because the class is finite
// (fixed generator multiset, bounded whisker widths).
template <class Visit>
inline void interchange_class(const Polygraph& S, const FreeCell& c, const Budget& budget,
                              Visit visit) {
    std::set<std::string> seen;
    std::deque<FreeCell> queue;
    queue.push_back(c);
    seen.insert(encode_seq(S, c));
    while (!queue.empty()) {
        FreeCell cur = queue.front();
        queue.pop_front();
        if (visit(cur)) return;
        for (std::size_t i = 0; i + 1 < cur.whisk.size(); ++i) {
            auto sw = swap_whiskers(S, cur.whisk[i], cur.whisk[i + 1]);
            if (!sw) continue;
            FreeCell nxt = cur;
            nxt.whisk[i] = sw->first;
            nxt.whisk[i + 1] = sw->second;
            if (seen.insert(encode_seq(S, nxt)).second) {
                if (seen.size() > budget.bfs_nodes)
                    throw budget_error("interchange search exceeded the node budget");
                queue.push_back(nxt);
            }
        }
    }
}
}  // namespace detail

inline bool fc_equal(const Polygraph& S, const FreeCell& a, const FreeCell& b,
                     const Budget& budget = Budget::current()) {
    if (a.dim != b.dim) return false;
    if (a.dim <= 1 || (a.whisk.empty() && b.whisk.empty())) return a == b;
    if (a.whisk.size() != b.whisk.size()) return false;
    if (a.obj != b.obj || a.word != b.word) return false;
    std::vector<int> ga, gb;
    for (const auto& w : a.whisk) ga.push_back(w.gen);
    for (const auto& w : b.whisk) gb.push_back(w.gen);
    std::sort(ga.begin(), ga.end());
    std::sort(gb.begin(), gb.end());
    if (ga != gb) return false;
    bool found = false;
    detail::interchange_class(S, a, budget, [&](const FreeCell& c) {
        if (c == b) found = true;
        return found;
    });
    return found;
}

// Lexicographically least representation: a canonical key for table building.
inline std::string fc_canonical_key(const Polygraph& S, const FreeCell& c,
                                    const Budget& budget = Budget::current()) {
    if (c.dim <= 1 || c.whisk.empty()) return S.display(c);
    std::string best;
    detail::interchange_class(S, c, budget, [&](const FreeCell& r) {
        std::string k = detail::encode_seq(S, r);
        if (best.empty() || k < best) best = k;
        return false;
    });
    return best;
}

inline std::optional<FreeCell> fc_comp(const Polygraph& S, FreeCell a, FreeCell b, int p) {
    if (p < 0) return std::nullopt;
    int m = std::max({a.dim, b.dim, p + 1});
    if (m > 2) throw precondition_error("free-cell composition supports dimension <= 2");
    a = fc_pad(S, a, m);
    b = fc_pad(S, b, m);
    if (m == 1) {
        if (S.word_end(a.obj, a.word) != b.obj) return std::nullopt;
        FreeCell out{1, a.obj, a.word, {}};
        out.word.insert(out.word.end(), b.word.begin(), b.word.end());
        return out;
    }
    if (p == 1) {  // vertical: chain the whisker sequences
        FreeCell ta = fc_tgt(S, a);
        if (!(ta == fc_src(S, b))) return std::nullopt;
        FreeCell out = a;
        out.whisk.insert(out.whisk.end(), b.whisk.begin(), b.whisk.end());
        if (out.whisk.empty()) out.word = a.word;
        return out;
    }
    // horizontal: (a * src b) then (tgt a * b)
    FreeCell sa = fc_src(S, a), tb0 = fc_tgt(S, a);
    FreeCell sb = fc_src(S, b);
    if (S.word_end(sa.obj, sa.word) != sb.obj) return std::nullopt;
    FreeCell out{2, sa.obj, sa.word, {}};
    out.word.insert(out.word.end(), sb.word.begin(), sb.word.end());
    for (auto w : a.whisk) {
        w.right.insert(w.right.end(), sb.word.begin(), sb.word.end());
        out.whisk.push_back(std::move(w));
    }
    for (auto w : b.whisk) {
        std::vector<int> left = tb0.word;
        left.insert(left.end(), w.left.begin(), w.left.end());
        w.left = std::move(left);
        out.whisk.push_back(std::move(w));
    }
    return out;
}

// Lazy view of the free category on a polygraph of dimension <= 2. Cells are
// FreeCells; all operations are syntactic.
class FreeCatView {
  public:
    explicit FreeCatView(PolyPtr S) : S_(std::move(S)) {
        if (S_->top_dim() > 2)
            throw precondition_error(
                "free-cell operations are unsupported above dimension 2");
    }
    const Polygraph& poly() const { return *S_; }

    FreeCell gen_cell(int dim, const std::string& id) const {
        auto i = S_->find_gen(dim, id);
        if (!i) throw precondition_error("unknown generator '" + id + "'");
        if (dim == 0) return FreeCell{0, *i, {}, {}};
        if (dim == 1) return FreeCell{1, S_->gen1_src(*i), {*i}, {}};
        const auto& g = S_->gen(2, *i);
        return FreeCell{2, g.src.obj, g.src.word, {Whisker{{}, *i, {}}}};
    }

    bool valid(const FreeCell& c) const { return fc_valid(*S_, c); }
    bool equal(const FreeCell& a, const FreeCell& b) const { return fc_equal(*S_, a, b); }
    FreeCell src(const FreeCell& c) const { return fc_src(*S_, c); }
    FreeCell tgt(const FreeCell& c) const { return fc_tgt(*S_, c); }
    FreeCell unit(const FreeCell& c) const { return fc_unit(*S_, c); }
    std::optional<FreeCell> comp(const FreeCell& a, const FreeCell& b, int p) const {
        return fc_comp(*S_, a, b, p);
    }
    std::string display(const FreeCell& c) const { return S_->display(c); }

  private:
    PolyPtr S_;
};

inline FreeCatView free_category(PolyPtr S) { return FreeCatView(std::move(S)); }

// --- builder -----------------------------------------------------------------

class PolyBuilder {
  public:
    explicit PolyBuilder(std::string name, int cap) : name_(std::move(name)), cap_(cap) {
        if (cap < 0) throw schema_error("negative cap");
    }

    void add_gen(int dim, const std::string& id, FreeLit src = {}, FreeLit tgt = {}) {
        if (dim < 0 || dim > cap_) throw schema_error("generator dimension out of range");
        if (static_cast<int>(raw_.size()) <= dim) raw_.resize(dim + 1);
        for (const auto& g : raw_[dim])
            if (g.id == id) throw schema_error("duplicate generator '" + id + "'");
        raw_[dim].push_back(RawGen{id, std::move(src), std::move(tgt)});
    }

    PolyPtr build() const {
        auto P = std::make_shared<Polygraph>();
        P->name_ = name_;
        P->cap_ = cap_;
        int top = static_cast<int>(raw_.size()) - 1;
        while (top >= 0 && raw_[top].empty()) --top;
        for (int k = 0; k <= top; ++k)
            if (raw_[k].empty())
                throw schema_error("generator dimensions must be contiguous");
        P->gens_.resize(top + 1);
        P->index_.resize(top + 1);
        for (int k = 0; k <= top; ++k) {
            std::vector<std::string> ids;
            for (const auto& g : raw_[k]) ids.push_back(g.id);
            std::sort(ids.begin(), ids.end());
            for (int i = 0; i < static_cast<int>(ids.size()); ++i) {
                P->gens_[k].push_back(PolyGen{ids[i], {}, {}});
                P->index_[k][ids[i]] = i;
            }
            for (const auto& g : raw_[k]) {
                if (k == 0) continue;
                int i = P->index_[k].at(g.id);
                P->gens_[k][i].src = resolve(*P, g.src, k - 1);
                P->gens_[k][i].tgt = resolve(*P, g.tgt, k - 1);
                const FreeCell &s = P->gens_[k][i].src, &t = P->gens_[k][i].tgt;
                if (!fc_valid(*P, s) || !fc_valid(*P, t))
                    throw schema_error("generator '" + g.id + "' has an invalid boundary");
                if (k >= 2 && !(fc_src(*P, s) == fc_src(*P, t) && fc_tgt(*P, s) == fc_tgt(*P, t)))
                    throw schema_error("generator '" + g.id + "' has non-parallel boundaries");
            }
        }
        return P;
    }

  private:
    struct RawGen {
        std::string id;
        FreeLit src, tgt;
    };

    FreeCell resolve(const Polygraph& P, const FreeLit& lit, int want) const {
        if (lit.dim != want)
            throw schema_error("attachment dimension mismatch (got " + std::to_string(lit.dim) +
                               ", want " + std::to_string(want) + ")");
        auto obj = [&](const std::string& id) {
            auto i = P.find_gen(0, id);
            if (!i) throw schema_error("unknown 0-generator '" + id + "'");
            return *i;
        };
        auto word = [&](const std::vector<std::string>& ws) {
            std::vector<int> out;
            for (const auto& id : ws) {
                auto i = P.find_gen(1, id);
                if (!i) throw schema_error("unknown 1-generator '" + id + "'");
                out.push_back(*i);
            }
            return out;
        };
        if (want > 2) throw schema_error("attachments above dimension 2 are unsupported");
        if (want == 0) return FreeCell{0, obj(lit.obj), {}, {}};
        if (want == 1) return FreeCell{1, obj(lit.obj), word(lit.word), {}};
        FreeCell c{2, obj(lit.obj), word(lit.word), {}};
        for (const auto& w : lit.whisk) {
            auto g = P.find_gen(2, w.gen);
            if (!g) throw schema_error("unknown 2-generator '" + w.gen + "'");
            c.whisk.push_back(Whisker{word(w.left), *g, word(w.right)});
        }
        return c;
    }

    std::string name_;
    int cap_;
    std::vector<std::vector<RawGen>> raw_;
};

// --- globe presentations -------------------------------------------------------

namespace detail {
// Attachment of a k-generator of a globe presentation: the two (k-1)-globe
// sides as free cells.
inline std::pair<FreeLit, FreeLit> globe_attach(int k) {
    if (k == 1) return {lit0(globe_id(0, false)), lit0(globe_id(0, true))};
    if (k == 2)
        return {lit1(globe_id(0, false), {globe_id(1, false)}),
                lit1(globe_id(0, false), {globe_id(1, true)})};
    if (k == 3)
        return {lit2(globe_id(0, false), {globe_id(1, false)},
                     {WhiskerLit{{}, globe_id(2, false), {}}}),
                lit2(globe_id(0, false), {globe_id(1, false)},
                     {WhiskerLit{{}, globe_id(2, true), {}}})};
    throw precondition_error("globe presentations are supported up to dimension 3");
}
}  // namespace detail

inline PolyPtr globe_polygraph(int n) {
    PolyBuilder b("globe_poly(" + std::to_string(n) + ")", n);
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            b.add_gen(0, globe_id(0, false));
            b.add_gen(0, globe_id(0, true));
        } else {
            auto [s, t] = detail::globe_attach(k);
            b.add_gen(k, globe_id(k, false), s, t);
            b.add_gen(k, globe_id(k, true), s, t);
        }
    }
    if (n == 0) {
        b.add_gen(0, "o");
    } else {
        auto [s, t] = detail::globe_attach(n);
        b.add_gen(n, "o", s, t);
    }
    return b.build();
}

inline PolyPtr boundary_globe_polygraph(int n) {
    PolyBuilder b("bglobe_poly(" + std::to_string(n) + ")", std::max(n - 1, 0));
    if (n == 0) return b.build();  // empty
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            b.add_gen(0, globe_id(0, false));
            b.add_gen(0, globe_id(0, true));
            continue;
        }
        auto [s, t] = detail::globe_attach(k);
        b.add_gen(k, globe_id(k, false), s, t);
        b.add_gen(k, globe_id(k, true), s, t);
    }
    return b.build();
}

// Presentation-level boundary inclusion (generator map by shared id).
PolyMorphism globe_inclusion_poly(int n);

// --- enumeration and materialization --------------------------------------------

namespace detail {
// All composable words by length, each as (obj, word); includes empty words.
inline std::vector<FreeCell> enumerate_words(const Polygraph& S, const Budget& budget) {
    std::vector<FreeCell> out;
    std::vector<FreeCell> level;
    for (int x = 0; x < S.gen_count(0); ++x) level.push_back(FreeCell{1, x, {}, {}});
    while (!level.empty()) {
        for (auto& c : level) out.push_back(c);
        if (out.size() > budget.cells_per_dim)
            throw budget_error("free category is infinite or over the cell budget at dimension 1");
        std::vector<FreeCell> next;
        for (const auto& c : level) {
            int end = S.word_end(c.obj, c.word);
            for (int g = 0; g < S.gen_count(1); ++g) {
                if (S.gen1_src(g) != end) continue;
                FreeCell n = c;
                n.word.push_back(g);
                next.push_back(std::move(n));
            }
        }
        level = std::move(next);
    }
    return out;
}

// All 2-cell interchange classes by whisker count, canonical representative
// first in lexicographic order.
inline std::vector<std::pair<std::string, FreeCell>> enumerate_2cells(
    const Polygraph& S, const std::vector<FreeCell>& words, const Budget& budget) {
    std::vector<std::pair<std::string, FreeCell>> out;
    std::set<std::string> seen;
    auto add = [&](const FreeCell& c) {
        std::string key = fc_canonical_key(S, c, budget);
        if (!seen.insert(key).second) return false;
        out.push_back({key, c});
        if (out.size() > budget.cells_per_dim)
            throw budget_error("free category is infinite or over the cell budget at dimension 2");
        return true;
    };
    for (const auto& w : words) add(FreeCell{2, w.obj, w.word, {}});
    // single whiskers
    std::vector<FreeCell> level;
    for (int g = 0; g < S.gen_count(2); ++g) {
        const auto& sg = S.gen(2, g).src;
        for (const auto& L : words) {
            if (S.word_end(L.obj, L.word) != sg.obj) continue;
            for (const auto& R : words) {
                if (R.obj != S.word_end(sg.obj, sg.word)) continue;
                FreeCell c{2, L.obj, {}, {Whisker{L.word, g, R.word}}};
                c.word = L.word;
                c.word.insert(c.word.end(), sg.word.begin(), sg.word.end());
                c.word.insert(c.word.end(), R.word.begin(), R.word.end());
                if (add(c)) level.push_back(c);
            }
        }
    }
    std::vector<FreeCell> atoms = level;
    while (!level.empty()) {
        std::vector<FreeCell> next;
        for (const auto& c : level) {
            FreeCell t = fc_tgt(S, c);
            for (const auto& a : atoms) {
                if (!(fc_src(S, a) == t)) continue;
                FreeCell n = c;
                n.whisk.insert(n.whisk.end(), a.whisk.begin(), a.whisk.end());
                if (add(n)) next.push_back(std::move(n));
            }
        }
        level = std::move(next);
    }
    return out;
}
}  // namespace detail

// Materialized free category: the table plus the syntactic cell behind every
// stored index (dimensions 0..2; higher cells are generators and units).
struct FreeTable {
    PolyPtr poly;
    CatPtr cat;
    std::vector<std::vector<FreeCell>> cells;       // per dim (<= 2), by index
    std::vector<std::map<std::string, int>> index;  // canonical key -> index

    std::optional<Cell> find(const FreeCell& c, const Budget& budget = Budget::current()) const {
        if (c.dim < 0 || c.dim >= static_cast<int>(index.size())) return std::nullopt;
        auto it = index[c.dim].find(fc_canonical_key(*poly, c, budget));
        if (it == index[c.dim].end()) return std::nullopt;
        return Cell{c.dim, it->second};
    }
};

// Free category on S as a finite table. Throws when the closure is infinite
// or over budget, and when generators above dimension 2 would have to
// compose (their word problem is out of scope).
inline FreeTable materialize(PolyPtr S, const Budget& budget = Budget::current()) {
    FreeTable T;
    T.poly = S;
    const int top = S->top_dim();
    CatBuilder b(S->name(), std::max(S->cap(), std::max(top, 0)));
    if (top < 0) {
        T.cat = b.build();
        return T;
    }

    for (int x = 0; x < S->gen_count(0); ++x) b.add_cell(0, S->gen(0, x).id);

    std::vector<FreeCell> words;
    if (top >= 1) {
        words = detail::enumerate_words(*S, budget);
        for (const auto& w : words)
            b.add_cell(1, S->display(w), S->gen(0, w.obj).id,
                       S->gen(0, S->word_end(w.obj, w.word)).id);
        for (int x = 0; x < S->gen_count(0); ++x)
            b.set_unit(0, S->gen(0, x).id, "1(" + S->gen(0, x).id + ")");
        for (const auto& u : words)
            for (const auto& v : words) {
                auto c = fc_comp(*S, u, v, 0);
                if (c) b.add_comp(1, 0, S->display(u), S->display(v), S->display(*c));
            }
    }

    std::vector<std::pair<std::string, FreeCell>> twos;
    if (top >= 2) {
        twos = detail::enumerate_2cells(*S, words, budget);
        std::map<std::string, std::string> id_of_key;  // canonical key -> display id
        for (const auto& [key, c] : twos) {
            std::string id = c.whisk.empty() ? S->display(c) : key;
            id_of_key[key] = id;
            b.add_cell(2, id, S->display(fc_src(*S, c)), S->display(fc_tgt(*S, c)));
        }
        for (const auto& w : words) b.set_unit(1, S->display(w), "1(" + S->display(w) + ")");
        auto key_id = [&](const FreeCell& c) {
            return id_of_key.at(fc_canonical_key(*S, c, budget));
        };
        for (const auto& [ka, a] : twos)
            for (const auto& [kb, bb] : twos)
                for (int p : {0, 1}) {
                    auto c = fc_comp(*S, a, bb, p);
                    if (c) b.add_comp(2, p, id_of_key.at(ka), id_of_key.at(kb), key_id(*c));
                }
    }

    // Dimension-3 generators are carried verbatim; their composites must all
    // be dictated by unit laws, otherwise the free category is not tabulable.
    if (top > 3) throw precondition_error("materialization is unsupported above dimension 3");
    for (int i = 0; top >= 3 && i < S->gen_count(3); ++i) {
        const auto& g = S->gen(3, i);
        auto name2 = [&](const FreeCell& c) {
            return c.whisk.empty() ? S->display(c) : fc_canonical_key(*S, c, budget);
        };
        b.add_cell(3, g.id, name2(g.src), name2(g.tgt));
    }

    b.complete_units();
    auto C = b.build();

    for (int k = 3; k <= C->stored_cap(); ++k)
        for (auto u : C->cells_at(k))
            for (auto v : C->cells_at(k))
                for (int p = 0; p < k; ++p)
                    if (C->composable(u, v, p) && !C->try_comp(u, v, p))
                        throw precondition_error(
                            "free composites above dimension 2 are unsupported (generators '" +
                            C->display(u) + "', '" + C->display(v) + "' compose)");

    T.cat = C;
    T.cells.resize(std::min(top, 2) + 1);
    T.index.resize(T.cells.size());
    if (top >= 0) {
        T.cells[0].resize(C->size(0));
        for (int x = 0; x < S->gen_count(0); ++x) {
            Cell c = *C->find(0, S->gen(0, x).id);
            T.cells[0][c.idx] = FreeCell{0, x, {}, {}};
            T.index[0][S->gen(0, x).id] = c.idx;
        }
    }
    if (top >= 1) {
        T.cells[1].resize(C->size(1));
        for (const auto& w : words) {
            Cell c = *C->find(1, S->display(w));
            T.cells[1][c.idx] = w;
            T.index[1][S->display(w)] = c.idx;
        }
    }
    if (top >= 2) {
        T.cells[2].resize(C->size(2));
        for (const auto& [key, w] : twos) {
            std::string id = w.whisk.empty() ? S->display(w) : key;
            Cell c = *C->find(2, id);
            T.cells[2][c.idx] = w;
            T.index[2][key] = c.idx;
        }
    }
    return T;
}

// --- morphisms and pushouts -----------------------------------------------------

// Generator-to-generator morphism of polygraphs.
struct PolyMorphism {
    PolyPtr dom, cod;
    std::vector<std::vector<int>> map;  // per dim: dom gen index -> cod gen index
    std::string name;
};

inline FreeCell pm_apply(const PolyMorphism& m, FreeCell c) {
    auto m1 = [&](std::vector<int>& w) {
        for (int& g : w) g = m.map[1][g];
    };
    if (c.dim == 0) {
        c.obj = m.map[0][c.obj];
        return c;
    }
    c.obj = m.map[0][c.obj];
    m1(c.word);
    for (auto& w : c.whisk) {
        m1(w.left);
        m1(w.right);
        w.gen = m.map[2][w.gen];
    }
    return c;
}

inline PolyMorphism poly_identity(PolyPtr S) {
    PolyMorphism m{S, S, {}, "id"};
    m.map.resize(S->top_dim() + 1);
    for (int k = 0; k <= S->top_dim(); ++k)
        for (int i = 0; i < S->gen_count(k); ++i) m.map[k].push_back(i);
    return m;
}

inline CheckReport validate_poly_morphism(const PolyMorphism& m) {
    CheckReport rep;
    if (static_cast<int>(m.map.size()) < m.dom->top_dim() + 1) {
        rep.fail("coverage", "generator map does not cover every dimension");
        return rep;
    }
    for (int k = 0; k <= m.dom->top_dim(); ++k)
        for (int i = 0; i < m.dom->gen_count(k); ++i) {
            if (i >= static_cast<int>(m.map[k].size()) || m.map[k][i] < 0 ||
                m.map[k][i] >= m.cod->gen_count(k)) {
                rep.fail("coverage", "generator '" + m.dom->gen(k, i).id + "' has no image");
                continue;
            }
            rep.note_checked();
            if (k == 0) continue;
            const auto& g = m.dom->gen(k, i);
            const auto& h = m.cod->gen(k, m.map[k][i]);
            if (!fc_equal(*m.cod, pm_apply(m, g.src), h.src) ||
                !fc_equal(*m.cod, pm_apply(m, g.tgt), h.tgt))
                rep.fail("attachment", "boundaries of '" + g.id + "' do not commute");
        }
    return rep;
}

inline PolyMorphism compose_poly(const PolyMorphism& g, const PolyMorphism& f) {
    if (g.dom != f.cod) throw precondition_error("morphism composition: domain mismatch");
    PolyMorphism out{f.dom, g.cod, {}, g.name + "." + f.name};
    out.map.resize(f.dom->top_dim() + 1);
    for (int k = 0; k <= f.dom->top_dim(); ++k)
        for (int i : f.map[k]) out.map[k].push_back(g.map[k][i]);
    return out;
}

inline PolyMorphism globe_inclusion_poly(int n) {
    PolyMorphism m{boundary_globe_polygraph(n), globe_polygraph(n), {},
                   "i_" + std::to_string(n)};
    m.map.resize(m.dom->top_dim() + 1);
    for (int k = 0; k <= m.dom->top_dim(); ++k)
        for (int i = 0; i < m.dom->gen_count(k); ++i)
            m.map[k].push_back(*m.cod->find_gen(k, m.dom->gen(k, i).id));
    return m;
}

struct PolyPushout {
    PolyPtr poly;
    PolyMorphism j1, j2;  // cocone: S1 -> P, S2 -> P
};

// Dimensionwise pushout of generator sets along m1: S -> S1, m2: S -> S2,
// with attachments induced through the cocone (their agreement is forced by
// the commuting squares and asserted).
inline PolyPushout pushout_polygraph(const PolyMorphism& m1, const PolyMorphism& m2,
                                     const std::string& name = "pushout") {
    if (m1.dom != m2.dom) throw precondition_error("pushout: morphisms must share a domain");
    if (!validate_poly_morphism(m1).ok() || !validate_poly_morphism(m2).ok())
        throw precondition_error("pushout: invalid input morphism");
    const Polygraph &S = *m1.dom, &S1 = *m1.cod, &S2 = *m2.cod;
    const int top = std::max(S1.top_dim(), S2.top_dim());

    auto P = std::make_shared<Polygraph>();
    P->name_ = name;
    P->cap_ = std::max(m1.cod->cap(), m2.cod->cap());
    P->gens_.resize(top + 1);
    P->index_.resize(top + 1);
    PolyMorphism j1{m1.cod, P, {}, "inl"}, j2{m2.cod, P, {}, "inr"};
    j1.map.assign(S1.top_dim() + 1, {});
    j2.map.assign(S2.top_dim() + 1, {});

    for (int k = 0; k <= top; ++k) {
        const int n1 = S1.gen_count(k), n2 = S2.gen_count(k);
        // union-find over the disjoint union, seeded by the span
        std::vector<int> parent(n1 + n2);
        for (int i = 0; i < n1 + n2; ++i) parent[i] = i;
        auto find = [&](int a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        if (k <= S.top_dim())
            for (int i = 0; i < S.gen_count(k); ++i)
                parent[find(m1.map[k][i])] = find(n1 + m2.map[k][i]);

        // deterministic class order: by least member (side 1 first)
        std::map<int, std::vector<int>> classes;
        for (int i = 0; i < n1 + n2; ++i) classes[find(i)].push_back(i);
        if (k <= S1.top_dim()) j1.map[k].assign(n1, -1);
        if (k <= S2.top_dim()) j2.map[k].assign(n2, -1);
        std::vector<std::pair<int, int>> order;  // (least member, root)
        for (auto& [root, members] : classes)
            order.push_back({*std::min_element(members.begin(), members.end()), root});
        std::sort(order.begin(), order.end());

        for (auto& [least, root] : order) {
            const auto& members = classes.at(root);
            auto raw_id = [&](int m) {
                return m < n1 ? S1.gen(k, m).id : S2.gen(k, m - n1).id;
            };
            std::string id = raw_id(least);
            while (P->index_[k].count(id)) id += "'";
            int idx = static_cast<int>(P->gens_[k].size());
            // attachment: image of the least member's boundary under the cocone
            FreeCell src, tgt;
            if (k > 0) {
                if (least < n1) {
                    src = pm_apply(j1, S1.gen(k, least).src);
                    tgt = pm_apply(j1, S1.gen(k, least).tgt);
                } else {
                    src = pm_apply(j2, S2.gen(k, least - n1).src);
                    tgt = pm_apply(j2, S2.gen(k, least - n1).tgt);
                }
            }
            P->gens_[k].push_back(PolyGen{id, src, tgt});
            P->index_[k][id] = idx;
            for (int m : members) {
                if (m < n1)
                    j1.map[k][m] = idx;
                else
                    j2.map[k][m - n1] = idx;
            }
        }
        // agreement of every member's induced attachment (forced; asserted)
        if (k > 0)
            for (auto& [root, members] : classes)
                for (int m : members) {
                    FreeCell s = m < n1 ? pm_apply(j1, S1.gen(k, m).src)
                                        : pm_apply(j2, S2.gen(k, m - n1).src);
                    FreeCell t = m < n1 ? pm_apply(j1, S1.gen(k, m).tgt)
                                        : pm_apply(j2, S2.gen(k, m - n1).tgt);
                    int idx = m < n1 ? j1.map[k][m] : j2.map[k][m - n1];
                    if (!fc_equal(*P, s, P->gens_[k][idx].src) ||
                        !fc_equal(*P, t, P->gens_[k][idx].tgt))
                        throw std::logic_error("pushout attachments disagree");
                }
    }
    PolyPushout out;
    out.poly = P;
    out.j1 = std::move(j1);
    out.j2 = std::move(j2);
    return out;
}

// --- functors from presentations ---------------------------------------------

// Value of a syntactic cell under chosen generator images.
inline VCell eval_in(const FiniteOmegaCat& C, const Polygraph& S,
                     const std::vector<std::vector<VCell>>& gen_img, const FreeCell& c) {
    if (c.dim == 0) return gen_img[0][c.obj];
    if (c.dim == 1) {
        VCell at = C.unit(gen_img[0][c.obj]);
        for (int g : c.word) at = C.comp(at, gen_img[1][g], 0);
        return at;
    }
    auto word_val = [&](int obj, const std::vector<int>& w) {
        VCell at = C.unit(gen_img[0][obj]);
        for (int g : w) at = C.comp(at, gen_img[1][g], 0);
        return at;
    };
    VCell acc = C.unit(word_val(c.obj, c.word));
    for (const auto& w : c.whisk) {
        VCell v = gen_img[2][w.gen];
        if (!w.left.empty())
            v = C.comp(C.unit(word_val(S.word_start(w.left), w.left)), v, 0);
        if (!w.right.empty())
            v = C.comp(v, C.unit(word_val(S.word_start(w.right), w.right)), 0);
        acc = C.comp(acc, v, 1);
    }
    return acc;
}

// The functor between materialized free categories induced by a morphism.
inline OmegaFunctor functor_of_morphism(const PolyMorphism& m, const FreeTable& domT,
                                        const FreeTable& codT,
                                        const Budget& budget = Budget::current()) {
    const auto& D = *domT.cat;
    std::vector<std::vector<VCell>> map(D.stored_cap() + 1);
    for (int k = 0; k <= D.stored_cap(); ++k) {
        map[k].resize(D.size(k));
        for (int i = 0; i < static_cast<int>(D.size(k)); ++i) {
            if (k <= 2) {
                auto img = codT.find(pm_apply(m, domT.cells[k][i]), budget);
                if (!img) throw precondition_error("morphism image not materialized");
                map[k][i] = codT.cat->vcell(*img);
            } else {
                VCell v{Cell{k, i}, k};
                if (D.is_unit(v)) {
                    map[k][i] = codT.cat->unit(map[k - 1][D.unit_base(v).base.idx]);
                } else {
                    // non-unit high cells are generators, materialized under their id
                    auto gi = m.dom->find_gen(k, D.id_of(Cell{k, i}));
                    if (!gi) throw precondition_error("unmapped high-dimensional cell");
                    auto g = codT.cat->find(k, m.cod->gen(k, m.map[k][*gi]).id);
                    if (!g) throw precondition_error("morphism image not materialized");
                    map[k][i] = codT.cat->vcell(*g);
                }
            }
        }
    }
    return OmegaFunctor(domT.cat, codT.cat, map, m.name);
}

}  // namespace omc
