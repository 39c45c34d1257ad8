#pragma once
// Lifting problems and exhaustive backtracking search for solutions: lifts
// in commuting squares, full functor enumeration, isomorphism search, and
// retract-diagram verification. Exhaustion certifies non-existence; budget
// overruns throw instead of reporting absence.

#include <functional>
#include <optional>
#include <vector>

#include "omc/base.hpp"
#include "omc/functor.hpp"
#include "omc/report.hpp"

namespace omc {

namespace detail {

// Backtracking search for structure-preserving assignments of B's stored
// cells to X's cells. `seed` pins images, `admit` filters candidates against
// the partial assignment. Deterministic: cells ascend by (dim, index),
// candidates come in index order.
class MapSearch {
  public:
    using Assignment = std::vector<std::vector<VCell>>;
    using Admit = std::function<bool(int k, int i, VCell v, const Assignment&)>;

    MapSearch(CatPtr B, CatPtr X, const Budget& budget)
        : B_(std::move(B)), X_(std::move(X)), budget_(budget) {
        const auto& B0 = *B_;
        seed_.resize(B0.stored_cap() + 1);
        trigger_.resize(B0.stored_cap() + 1);
        for (int k = 0; k <= B0.stored_cap(); ++k) {
            seed_[k].resize(B0.size(k));
            trigger_[k].resize(B0.size(k));
            for (int p = 0; p < k; ++p)
                for (const auto& [ab, res] : B0.comp_entries(k, p)) {
                    int hi = std::max({ab.first.idx, ab.second.idx, res.idx});
                    trigger_[k][hi].push_back({p, ab.first.idx, ab.second.idx, res.idx});
                }
        }
    }

    // Pins h(b) = v for a stored cell b; conflicting pins make the search
    // empty rather than throwing.
    void pin(Cell b, VCell v) {
        auto& s = seed_[b.dim][b.idx];
        if (s && !(*s == v))
            conflict_ = true;
        else
            s = v;
    }

    void set_admit(Admit a) { admit_ = std::move(a); }

    // All (or up to max_solutions) complete assignments.
    std::vector<Assignment> run(std::size_t max_solutions) {
        solutions_.clear();
        if (conflict_) return {};
        max_ = max_solutions;
        nodes_ = 0;
        cur_.assign(B_->stored_cap() + 1, {});
        for (int k = 0; k <= B_->stored_cap(); ++k) cur_[k].resize(B_->size(k));
        extend(0, 0);
        return std::move(solutions_);
    }

  private:
    bool full(int k) const { return k > B_->stored_cap(); }

    void extend(int k, int i) {
        if (solutions_.size() >= max_) return;
        if (full(k)) {
            solutions_.push_back(cur_);
            return;
        }
        if (i >= static_cast<int>(B_->size(k))) {
            extend(k + 1, 0);
            return;
        }
        if (++nodes_ > budget_.search_nodes)
            throw budget_error("lift search exceeded the node budget");

        const VCell b{Cell{k, i}, k};
        std::vector<VCell> candidates;
        std::optional<VCell> forced;
        if (B_->is_unit(b)) {
            VCell base = B_->unit_base(b);
            forced = X_->unit(cur_[k - 1][base.base.idx]);
        }
        if (seed_[k][i]) {
            if (forced && !(*forced == *seed_[k][i])) return;
            forced = seed_[k][i];
        }
        if (forced) {
            candidates.push_back(*forced);
        } else if (k == 0) {
            candidates = X_->cells_at(0);
        } else {
            candidates = X_->cells_between(k, cur_[k - 1][B_->src(b).base.idx],
                                           cur_[k - 1][B_->tgt(b).base.idx]);
        }

        for (VCell v : candidates) {
            if (v.dim != k) continue;
            if (k > 0 && forced) {
                // pinned values still have to be globular over the partial map
                if (!(X_->src(v) == cur_[k - 1][B_->src(b).base.idx]) ||
                    !(X_->tgt(v) == cur_[k - 1][B_->tgt(b).base.idx]))
                    continue;
            }
            if (admit_ && !admit_(k, i, v, cur_)) continue;
            cur_[k][i] = v;
            if (!violates_comp(k, i)) extend(k, i + 1);
            if (solutions_.size() >= max_) return;
        }
    }

    bool violates_comp(int k, int i) const {
        for (const auto& [p, l, r, res] : trigger_[k][i]) {
            auto c = X_->try_comp(cur_[k][l], cur_[k][r], p);
            if (!c || !(*c == cur_[k][res])) return true;
        }
        return false;
    }

    CatPtr B_, X_;
    Budget budget_;
    std::vector<std::vector<std::optional<VCell>>> seed_;
    std::vector<std::vector<std::vector<std::array<int, 4>>>> trigger_;
    Admit admit_;
    bool conflict_ = false;
    std::size_t max_ = 1, nodes_ = 0;
    Assignment cur_;
    std::vector<Assignment> solutions_;
};

}  // namespace detail

// Commuting square: i on the left, f on the right.
struct LiftingProblem {
    OmegaFunctor i;       // A -> B
    OmegaFunctor f;       // X -> Y
    OmegaFunctor top;     // A -> X
    OmegaFunctor bottom;  // B -> Y

    LiftingProblem(OmegaFunctor i_, OmegaFunctor f_, OmegaFunctor top_, OmegaFunctor bottom_)
        : i(std::move(i_)), f(std::move(f_)), top(std::move(top_)), bottom(std::move(bottom_)) {
        if (i.dom() != top.dom() || i.cod() != bottom.dom() || f.dom() != top.cod() ||
            f.cod() != bottom.cod())
            throw precondition_error("lifting square: boundary categories do not match");
        if (!compose(f, top).same_map(compose(bottom, i)))
            throw precondition_error("lifting square does not commute");
    }
};

// A lift h : B -> X with h o i = top and f o h = bottom, when one exists.
// The search is exhaustive, so nullopt certifies non-existence; exceeding
// the node budget throws instead.
inline std::optional<OmegaFunctor> find_lift(const LiftingProblem& P,
                                             const Budget& budget = Budget::current()) {
    detail::MapSearch s(P.i.cod(), P.f.dom(), budget);
    const auto& A = *P.i.dom();
    for (int k = 0; k <= A.stored_cap(); ++k)
        for (int a = 0; a < static_cast<int>(A.size(k)); ++a) {
            VCell av{Cell{k, a}, k};
            VCell b = P.i.apply(av);
            VCell t = P.top.apply(av);
            // pads determine their stored base: h(base) is the base of t
            if (t.base.dim > b.base.dim) return std::nullopt;  // no cell can pad to t
            s.pin(b.base, P.f.dom()->pad(P.f.dom()->vcell(t.base), b.base.dim));
        }
    s.set_admit([&](int k, int i, VCell v, const detail::MapSearch::Assignment&) {
        return P.f.apply(v) == P.bottom.apply(VCell{Cell{k, i}, k});
    });
    auto sols = s.run(1);
    if (sols.empty()) return std::nullopt;
    return OmegaFunctor(P.i.cod(), P.f.dom(), sols.front(), "lift");
}

// Every functor A -> X, in deterministic order. max_functors guards blowup.
inline std::vector<OmegaFunctor> enumerate_functors(CatPtr A, CatPtr X,
                                                    std::size_t max_functors = 100000,
                                                    const Budget& budget = Budget::current()) {
    detail::MapSearch s(A, X, budget);
    std::vector<OmegaFunctor> out;
    for (auto& sol : s.run(max_functors)) out.emplace_back(A, X, sol, "enum");
    return out;
}

// An isomorphism A -> X when one exists: a dimensionwise bijection on stored
// cells that preserves all structure.
inline std::optional<OmegaFunctor> find_iso(CatPtr A, CatPtr X,
                                            const Budget& budget = Budget::current()) {
    if (A->stored_cap() != X->stored_cap()) return std::nullopt;
    for (int k = 0; k <= A->stored_cap(); ++k)
        if (A->size(k) != X->size(k)) return std::nullopt;
    detail::MapSearch s(A, X, budget);
    s.set_admit([&](int k, int i, VCell v, const detail::MapSearch::Assignment& cur) {
        if (v.base.dim != k) return false;  // image must be a stored cell
        for (int j = 0; j < i; ++j)
            if (cur[k][j] == v) return false;
        return true;
    });
    auto sols = s.run(1);
    if (sols.empty()) return std::nullopt;
    return OmegaFunctor(A, X, sols.front(), "iso");
}

// Retract diagram for f along g: sections s (X -> Z), s' (Y -> W) and
// retractions r, r' with r o s = id, r' o s' = id, g o s = s' o f,
// f o r = r' o g.
inline CheckReport retract_check(const OmegaFunctor& f, const OmegaFunctor& g,
                                 const OmegaFunctor& s, const OmegaFunctor& r,
                                 const OmegaFunctor& sp, const OmegaFunctor& rp) {
    CheckReport rep;
    auto eq = [&](const char* law, const OmegaFunctor& a, const OmegaFunctor& b) {
        rep.note_checked();
        if (!a.same_map(b)) rep.fail(law, a.name() + " != " + b.name());
    };
    try {
        eq("retract: r o s = id", compose(r, s), identity_functor(f.dom()));
        eq("retract: r' o s' = id", compose(rp, sp), identity_functor(f.cod()));
        eq("retract: g o s = s' o f", compose(g, s), compose(sp, f));
        eq("retract: f o r = r' o g", compose(f, r), compose(rp, g));
    } catch (const precondition_error& e) {
        rep.fail("retract: diagram shape", e.what());
    }
    return rep;
}

}  // namespace omc
