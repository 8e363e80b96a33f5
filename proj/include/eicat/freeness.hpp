#pragma once

// Freeness analysis for finite EI categories: unfactorizable morphisms,
// decompositions into unfactorizables, the unique-factorization property,
// the pairwise mediation criterion equivalent to it, and the combinatorial
// kernels behind the module constructions: the set of through-objects of a
// morphism and the automorphism-orbit sums attached to them.
//
// Everything here enumerates the composition table exhaustively; the
// categories this library targets are small enough that no caching is
// needed.

#include "eicat/category.hpp"
#include "eicat/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eicat {

class NotFreeError : public FieldError {
  public:
    using FieldError::FieldError;
};

inline void require_ei(const FiniteCategory& c, const char* where) {
    for (std::size_t f = 0; f < c.morphism_count(); ++f)
        if (c.source(f) == c.target(f) && !c.is_iso(f))
            throw FieldError(std::string(where) + ": category is not EI");
}

// A two-step factorization first: x -> w, second: w -> y of a morphism.
struct Factorization {
    std::size_t first;
    std::size_t second;
    std::size_t through;
};

// All pairs (first, second) with second o first = alpha. When
// proper_second is set, only factorizations whose second leg is a
// non-isomorphism are returned.
inline std::vector<Factorization> factorizations(const FiniteCategory& c, std::size_t alpha,
                                                 bool proper_second = false) {
    std::vector<Factorization> out;
    for (std::size_t first = 0; first < c.morphism_count(); ++first) {
        if (c.source(first) != c.source(alpha)) continue;
        for (std::size_t second = 0; second < c.morphism_count(); ++second) {
            if (c.source(second) != c.target(first) || c.target(second) != c.target(alpha)) continue;
            if (proper_second && c.is_iso(second)) continue;
            if (c.compose(second, first) == alpha) out.push_back({first, second, c.target(first)});
        }
    }
    return out;
}

// A non-isomorphism is unfactorizable when it cannot be written as a
// composition of two non-isomorphisms.
inline bool is_unfactorizable(const FiniteCategory& c, std::size_t alpha) {
    if (c.is_iso(alpha)) return false;
    for (const auto& f : factorizations(c, alpha, /*proper_second=*/true))
        if (!c.is_iso(f.first)) return false;
    return true;
}

// Decomposition of a non-isomorphism into unfactorizables. At each step the
// first unfactorizable leading leg in input morphism order is taken, then
// the first completing morphism; in an EI category the completion of a
// non-unfactorizable morphism is again a non-isomorphism, so this
// terminates with a strictly shorter remainder.
inline std::vector<std::size_t> unfactorizable_decomposition(const FiniteCategory& c,
                                                             std::size_t alpha) {
    require_ei(c, "unfactorizable_decomposition");
    if (c.is_iso(alpha))
        throw FieldError("unfactorizable_decomposition: " + c.morphism_name(alpha) +
                         " is an isomorphism");
    std::vector<std::size_t> chain;
    std::size_t cur = alpha;
    while (true) {
        if (is_unfactorizable(c, cur)) {
            chain.push_back(cur);
            return chain;
        }
        bool advanced = false;
        for (std::size_t leg = 0; leg < c.morphism_count() && !advanced; ++leg) {
            if (c.source(leg) != c.source(cur) || !is_unfactorizable(c, leg)) continue;
            for (std::size_t rest = 0; rest < c.morphism_count(); ++rest) {
                if (c.source(rest) != c.target(leg) || c.target(rest) != c.target(cur)) continue;
                if (c.compose(rest, leg) != cur) continue;
                chain.push_back(leg);
                cur = rest;
                advanced = true;
                break;
            }
        }
        if (!advanced)
            throw FieldError("unfactorizable_decomposition: no unfactorizable leading leg (not EI?)");
    }
}

struct FreenessWitness {
    std::size_t alpha;
    Factorization left, right;  // unmediated pair of factorizations
};

struct FreenessResult {
    bool free = true;
    std::optional<FreenessWitness> witness;
};

// Pairwise mediation criterion: the category is free iff any two proper
// two-step factorizations of a non-isomorphism are linked by a morphism
// between the through-objects compatible with both legs.
inline FreenessResult check_freeness(const FiniteCategory& c) {
    require_ei(c, "check_freeness");
    for (std::size_t alpha = 0; alpha < c.morphism_count(); ++alpha) {
        if (c.is_iso(alpha)) continue;
        const auto facs = factorizations(c, alpha, /*proper_second=*/true);
        for (std::size_t i = 0; i < facs.size(); ++i)
            for (std::size_t j = i + 1; j < facs.size(); ++j) {
                const auto& a = facs[i];
                const auto& b = facs[j];
                bool mediated = false;
                for (std::size_t gamma : c.hom(a.through, b.through))
                    if (c.compose(b.second, gamma) == a.second &&
                        c.compose(gamma, a.first) == b.first)
                        mediated = true;
                for (std::size_t delta : c.hom(b.through, a.through))
                    if (c.compose(a.second, delta) == b.second &&
                        c.compose(delta, b.first) == a.first)
                        mediated = true;
                if (!mediated) return {false, FreenessWitness{alpha, a, b}};
            }
    }
    return {true, std::nullopt};
}

namespace detail {

inline void all_decompositions(const FiniteCategory& c, std::size_t cur,
                               std::vector<std::size_t>& prefix,
                               std::vector<std::vector<std::size_t>>& out) {
    if (is_unfactorizable(c, cur)) {
        prefix.push_back(cur);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (std::size_t leg = 0; leg < c.morphism_count(); ++leg) {
        if (c.source(leg) != c.source(cur) || !is_unfactorizable(c, leg)) continue;
        for (std::size_t rest = 0; rest < c.morphism_count(); ++rest) {
            if (c.source(rest) != c.target(leg) || c.target(rest) != c.target(cur)) continue;
            if (c.compose(rest, leg) != cur) continue;
            prefix.push_back(leg);
            all_decompositions(c, rest, prefix, out);
            prefix.pop_back();
        }
    }
}

// Searches for automorphisms h_1..h_{n-1} matching two equal-length
// decompositions link by link: b_1 = h_1 o a_1, b_i o h_{i-1} = h_i o a_i,
// and finally b_n o h_{n-1} = a_n.
inline bool decompositions_conjugate(const FiniteCategory& c, const std::vector<std::size_t>& a,
                                     const std::vector<std::size_t>& b) {
    const std::size_t n = a.size();
    if (b.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (c.source(a[i]) != c.source(b[i]) || c.target(a[i]) != c.target(b[i])) return false;
    if (n == 1) return a[0] == b[0];

    std::vector<std::size_t> hs;
    auto search = [&](auto&& self, std::size_t i, std::size_t prev_h) -> bool {
        // invariant: b_1..b_i matched, prev_h = h_i
        if (i == n - 1) return c.compose(b[n - 1], prev_h) == a[n - 1];
        for (std::size_t h : c.aut(c.target(a[i]))) {
            const bool match = i == 0 ? c.compose(h, a[0]) == b[0]
                                      : c.compose(b[i], prev_h) == c.compose(h, a[i]);
            if (match && self(self, i + 1, h)) return true;
        }
        return false;
    };
    return search(search, 0, /*unused*/ 0);
}

} // namespace detail

// Unique factorization property, checked from the definition: every pair of
// decompositions of every non-isomorphism into unfactorizables passes
// through the same objects and is conjugate by object automorphisms. This
// is the independent oracle for check_freeness.
inline bool check_ufp(const FiniteCategory& c) {
    require_ei(c, "check_ufp");
    for (std::size_t alpha = 0; alpha < c.morphism_count(); ++alpha) {
        if (c.is_iso(alpha)) continue;
        std::vector<std::vector<std::size_t>> decs;
        std::vector<std::size_t> prefix;
        detail::all_decompositions(c, alpha, prefix, decs);
        for (std::size_t i = 0; i < decs.size(); ++i)
            for (std::size_t j = i + 1; j < decs.size(); ++j)
                if (!detail::decompositions_conjugate(c, decs[i], decs[j])) return false;
    }
    return true;
}

// Objects w admitting a factorization of alpha through w whose second leg
// is a non-isomorphism. Empty exactly for isomorphisms.
inline std::vector<std::size_t> through_objects(const FiniteCategory& c, std::size_t alpha) {
    std::vector<bool> seen(c.object_count(), false);
    for (const auto& f : factorizations(c, alpha, /*proper_second=*/true)) seen[f.through] = true;
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < c.object_count(); ++w)
        if (seen[w]) out.push_back(w);
    return out;
}

// A formal k-linear combination of the morphisms in Hom(source, target),
// stored as coefficients parallel to the hom-set in input order.
template <class F>
struct FormalSum {
    std::size_t source_object = 0;
    std::size_t target_object = 0;
    Vec<F> coeffs;

    bool operator==(const FormalSum&) const = default;
};

template <class F>
FormalSum<F> zero_sum(const FiniteCategory& c, const F& k, std::size_t src, std::size_t tgt) {
    return {src, tgt, Vec<F>(c.hom(src, tgt).size(), k.zero())};
}

// Pushes a formal sum in Hom(w, y) forward along beta: y -> z to a formal
// sum in Hom(w, z).
template <class F>
FormalSum<F> postcompose(const FiniteCategory& c, const F& k, std::size_t beta,
                         const FormalSum<F>& s) {
    FormalSum<F> out = zero_sum(c, k, s.source_object, c.target(beta));
    const auto& from = c.hom(s.source_object, s.target_object);
    const auto& to = c.hom(s.source_object, c.target(beta));
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (k.is_zero(s.coeffs[i])) continue;
        const std::size_t composed = c.compose(beta, from[i]);
        for (std::size_t j = 0; j < to.size(); ++j)
            if (to[j] == composed) out.coeffs[j] = k.add(out.coeffs[j], s.coeffs[i]);
    }
    return out;
}

// The orbit sum attached to a through-object w of alpha: the second leg of
// a factorization through w composed with the full automorphism group sum
// of w. Well-definedness (independence of the chosen second leg) is
// verified over all admissible legs instead of being assumed; two legs with
// different sums witness that the category is not free.
template <class F>
FormalSum<F> through_sum(const FiniteCategory& c, const F& k, std::size_t alpha, std::size_t w) {
    std::vector<std::size_t> legs;
    for (const auto& f : factorizations(c, alpha, /*proper_second=*/true))
        if (f.through == w && std::find(legs.begin(), legs.end(), f.second) == legs.end())
            legs.push_back(f.second);
    if (legs.empty())
        throw FieldError("through_sum: " + c.object_name(w) + " is not a through-object of " +
                         c.morphism_name(alpha));

    const std::size_t y = c.target(alpha);
    const auto& hom = c.hom(w, y);
    auto sum_for = [&](std::size_t leg) {
        FormalSum<F> s = zero_sum(c, k, w, y);
        for (std::size_t g : c.aut(w)) {
            const std::size_t composed = c.compose(leg, g);
            for (std::size_t j = 0; j < hom.size(); ++j)
                if (hom[j] == composed) s.coeffs[j] = k.add(s.coeffs[j], k.one());
        }
        return s;
    };
    FormalSum<F> first = sum_for(legs[0]);
    for (std::size_t i = 1; i < legs.size(); ++i)
        if (!(sum_for(legs[i]) == first))
            throw NotFreeError("through_sum: second legs " + c.morphism_name(legs[0]) + " and " +
                               c.morphism_name(legs[i]) + " of " + c.morphism_name(alpha) +
                               " through " + c.object_name(w) +
                               " give different sums (category is not free)");
    return first;
}

struct CompositionLawReport {
    bool ok = true;
    std::string detail;  // first counterexample when not ok
};

// Exhaustive check of the two composition laws feeding functoriality of the
// augmented arrow module: through-objects of a composite split as a
// disjoint union, and the orbit sums restrict/push forward accordingly.
template <class F>
CompositionLawReport verify_composition_laws(const FiniteCategory& c, const F& k) {
    auto fr = check_freeness(c);
    if (!fr.free)
        throw NotFreeError("verify_composition_laws: category is not free");
    CompositionLawReport rep;
    auto fail = [&](std::string d) {
        if (rep.ok) {
            rep.ok = false;
            rep.detail = std::move(d);
        }
    };
    for (std::size_t beta = 0; beta < c.morphism_count() && rep.ok; ++beta)
        for (std::size_t alpha = 0; alpha < c.morphism_count() && rep.ok; ++alpha) {
            if (c.target(alpha) != c.source(beta)) continue;
            const std::size_t comp = c.compose(beta, alpha);
            const auto va = through_objects(c, alpha);
            const auto vb = through_objects(c, beta);
            const auto vc = through_objects(c, comp);

            std::vector<std::size_t> merged;
            for (std::size_t w : vb) merged.push_back(w);
            for (std::size_t w : va) merged.push_back(w);
            std::sort(merged.begin(), merged.end());
            for (std::size_t i = 0; i + 1 < merged.size(); ++i)
                if (merged[i] == merged[i + 1])
                    fail("through-object sets of " + c.morphism_name(beta) + " and " +
                         c.morphism_name(alpha) + " are not disjoint");
            if (merged != vc)
                fail("through-objects of " + c.morphism_name(comp) + " differ from the union for (" +
                     c.morphism_name(beta) + ", " + c.morphism_name(alpha) + ")");
            if (!rep.ok) break;

            for (std::size_t w : vb)
                if (!(through_sum(c, k, comp, w) == through_sum(c, k, beta, w)))
                    fail("orbit sum at " + c.object_name(w) + " changed under precomposition for (" +
                         c.morphism_name(beta) + ", " + c.morphism_name(alpha) + ")");
            for (std::size_t w : va)
                if (!(through_sum(c, k, comp, w) ==
                      postcompose(c, k, beta, through_sum(c, k, alpha, w))))
                    fail("orbit sum at " + c.object_name(w) +
                         " does not push forward along " + c.morphism_name(beta));
        }
    return rep;
}

} // namespace eicat
