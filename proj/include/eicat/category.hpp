#pragma once

// Finite categories given by explicit composition tables, with the axioms
// checked up front. A validated FiniteCategory is immutable; everything
// downstream (freeness analysis, category algebras, module theory) reads
// from it concurrently without locks.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eicat/field.hpp"

namespace eicat {

struct RawMorphism {
    std::string name;
    std::string source;
    std::string target;
};

struct CompEntry {
    std::string g;   // outer morphism
    std::string f;   // inner morphism
    std::string gf;  // g after f
};

// Unvalidated description: objects, morphisms, identity assignment and the
// composition table. The table must be exhaustive over composable pairs.
struct RawCategory {
    std::vector<std::string> objects;
    std::vector<RawMorphism> morphisms;
    std::vector<std::pair<std::string, std::string>> identities;  // (object, morphism)
    std::vector<CompEntry> compositions;
};

struct ValidationIssue {
    std::string axiom;    // e.g. "missing-identity", "incomplete-table"
    std::string witness;  // offending morphisms, human readable
};

struct CategoryValidation;

class FiniteCategory {
  public:
    static CategoryValidation validate(const RawCategory& raw);

    std::size_t object_count() const { return objects_.size(); }
    std::size_t morphism_count() const { return mor_names_.size(); }

    const std::string& object_name(std::size_t x) const { return objects_[x]; }
    const std::string& morphism_name(std::size_t m) const { return mor_names_[m]; }
    const std::vector<std::string>& object_names() const { return objects_; }

    std::optional<std::size_t> object_index(const std::string& name) const {
        for (std::size_t i = 0; i < objects_.size(); ++i)
            if (objects_[i] == name) return i;
        return std::nullopt;
    }
    std::optional<std::size_t> morphism_index(const std::string& name) const {
        for (std::size_t i = 0; i < mor_names_.size(); ++i)
            if (mor_names_[i] == name) return i;
        return std::nullopt;
    }

    std::size_t source(std::size_t m) const { return src_[m]; }
    std::size_t target(std::size_t m) const { return tgt_[m]; }
    std::size_t identity(std::size_t x) const { return identity_[x]; }
    bool is_identity(std::size_t m) const { return identity_[src_[m]] == m && src_[m] == tgt_[m]; }

    bool composable(std::size_t g, std::size_t f) const { return tgt_[f] == src_[g]; }

    // g∘f; only defined for composable pairs.
    std::size_t compose(std::size_t g, std::size_t f) const {
        if (!composable(g, f)) throw FieldError("compose: morphisms not composable");
        return comp_[g * mor_names_.size() + f];
    }

    const std::vector<std::size_t>& hom(std::size_t x, std::size_t y) const {
        return hom_[x * objects_.size() + y];
    }
    const std::vector<std::size_t>& aut(std::size_t x) const { return hom(x, x); }

    bool is_iso(std::size_t m) const { return inverse_[m].has_value(); }
    std::optional<std::size_t> inverse(std::size_t m) const { return inverse_[m]; }

  private:
    FiniteCategory() = default;
    void build_caches();

    std::vector<std::string> objects_;
    std::vector<std::string> mor_names_;
    std::vector<std::size_t> src_, tgt_;
    std::vector<std::size_t> identity_;                 // per object
    std::vector<std::size_t> comp_;                     // comp_[g*m + f], composable only
    std::vector<std::vector<std::size_t>> hom_;         // hom_[x*n + y], input order
    std::vector<std::optional<std::size_t>> inverse_;   // per morphism
};

struct CategoryValidation {
    std::optional<FiniteCategory> category;
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

inline void FiniteCategory::build_caches() {
    const std::size_t n = objects_.size(), m = mor_names_.size();
    hom_.assign(n * n, {});
    for (std::size_t f = 0; f < m; ++f) hom_[src_[f] * n + tgt_[f]].push_back(f);
    inverse_.assign(m, std::nullopt);
    for (std::size_t f = 0; f < m; ++f) {
        for (std::size_t g : hom_[tgt_[f] * n + src_[f]]) {
            if (compose(g, f) == identity_[src_[f]] && compose(f, g) == identity_[tgt_[f]]) {
                inverse_[f] = g;
                break;
            }
        }
    }
}

inline CategoryValidation FiniteCategory::validate(const RawCategory& raw) {
    CategoryValidation out;
    auto fail = [&](std::string axiom, std::string witness) {
        out.issues.push_back({std::move(axiom), std::move(witness)});
    };

    FiniteCategory c;
    c.objects_ = raw.objects;
    for (std::size_t i = 0; i < raw.objects.size(); ++i)
        for (std::size_t j = i + 1; j < raw.objects.size(); ++j)
            if (raw.objects[i] == raw.objects[j]) fail("duplicate-object", raw.objects[i]);

    for (const auto& rm : raw.morphisms) {
        auto s = c.object_index(rm.source), t = c.object_index(rm.target);
        if (!s || !t) {
            fail("unknown-object", rm.name + ": " + rm.source + " -> " + rm.target);
            continue;
        }
        if (c.morphism_index(rm.name)) {
            fail("duplicate-morphism", rm.name);
            continue;
        }
        c.mor_names_.push_back(rm.name);
        c.src_.push_back(*s);
        c.tgt_.push_back(*t);
    }
    if (!out.issues.empty()) return out;
    const std::size_t n = c.objects_.size(), m = c.mor_names_.size();

    c.identity_.assign(n, m);
    for (const auto& [obj, mor] : raw.identities) {
        auto x = c.object_index(obj);
        auto f = c.morphism_index(mor);
        if (!x || !f) {
            fail("unknown-name", obj + " / " + mor);
            continue;
        }
        if (c.src_[*f] != *x || c.tgt_[*f] != *x) {
            fail("endpoint-mismatch", "identity " + mor + " is not an endomorphism of " + obj);
            continue;
        }
        if (c.identity_[*x] != m) {
            fail("duplicate-identity", obj);
            continue;
        }
        c.identity_[*x] = *f;
    }
    for (std::size_t x = 0; x < n; ++x)
        if (c.identity_[x] == m) fail("missing-identity", c.objects_[x]);
    if (!out.issues.empty()) return out;

    // composition table
    std::vector<std::optional<std::size_t>> table(m * m);
    for (const auto& e : raw.compositions) {
        auto g = c.morphism_index(e.g), f = c.morphism_index(e.f), gf = c.morphism_index(e.gf);
        if (!g || !f || !gf) {
            fail("unknown-name", e.g + " o " + e.f + " = " + e.gf);
            continue;
        }
        if (c.tgt_[*f] != c.src_[*g]) {
            fail("endpoint-mismatch", "(" + e.g + ", " + e.f + ") is not a composable pair");
            continue;
        }
        if (table[*g * m + *f] && *table[*g * m + *f] != *gf) {
            fail("conflicting-entry", "(" + e.g + ", " + e.f + ")");
            continue;
        }
        if (c.src_[*gf] != c.src_[*f] || c.tgt_[*gf] != c.tgt_[*g]) {
            fail("endpoint-mismatch",
                 e.g + " o " + e.f + " = " + e.gf + " has wrong endpoints");
            continue;
        }
        table[*g * m + *f] = *gf;
    }
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t f = 0; f < m; ++f)
            if (c.tgt_[f] == c.src_[g] && !table[g * m + f])
                fail("incomplete-table", "(" + c.mor_names_[g] + ", " + c.mor_names_[f] + ")");
    if (!out.issues.empty()) return out;

    c.comp_.assign(m * m, m);
    for (std::size_t i = 0; i < m * m; ++i)
        if (table[i]) c.comp_[i] = *table[i];

    for (std::size_t f = 0; f < m; ++f) {
        if (c.comp_[c.identity_[c.tgt_[f]] * m + f] != f)
            fail("identity-law", "(" + c.mor_names_[c.identity_[c.tgt_[f]]] + ", " + c.mor_names_[f] + ")");
        if (c.comp_[f * m + c.identity_[c.src_[f]]] != f)
            fail("identity-law", "(" + c.mor_names_[f] + ", " + c.mor_names_[c.identity_[c.src_[f]]] + ")");
    }
    for (std::size_t h = 0; h < m; ++h)
        for (std::size_t g = 0; g < m; ++g) {
            if (c.src_[h] != c.tgt_[g]) continue;
            for (std::size_t f = 0; f < m; ++f) {
                if (c.src_[g] != c.tgt_[f]) continue;
                const std::size_t left = c.comp_[h * m + c.comp_[g * m + f]];
                const std::size_t right = c.comp_[c.comp_[h * m + g] * m + f];
                if (left != right)
                    fail("associativity", "(" + c.mor_names_[h] + ", " + c.mor_names_[g] + ", " +
                                              c.mor_names_[f] + ")");
            }
        }
    if (!out.issues.empty()) return out;

    c.build_caches();
    out.category = std::move(c);
    return out;
}

// Adds the compositions forced by the identity axioms for every pair where
// one factor is an identity. Lets builders and file input state only the
// essential entries.
inline RawCategory with_identity_compositions(RawCategory raw) {
    auto has_entry = [&](const std::string& g, const std::string& f) {
        for (const auto& e : raw.compositions)
            if (e.g == g && e.f == f) return true;
        return false;
    };
    std::vector<std::string> id_of_object(raw.objects.size());
    auto obj_idx = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < raw.objects.size(); ++i)
            if (raw.objects[i] == name) return i;
        return std::nullopt;
    };
    for (const auto& [obj, mor] : raw.identities)
        if (auto i = obj_idx(obj)) id_of_object[*i] = mor;
    for (const auto& rm : raw.morphisms) {
        auto s = obj_idx(rm.source), t = obj_idx(rm.target);
        if (!s || !t || id_of_object[*s].empty() || id_of_object[*t].empty()) continue;
        if (!has_entry(rm.name, id_of_object[*s]))
            raw.compositions.push_back({rm.name, id_of_object[*s], rm.name});
        if (!has_entry(id_of_object[*t], rm.name) &&
            !(rm.source == rm.target && rm.name == id_of_object[*s]))
            raw.compositions.push_back({id_of_object[*t], rm.name, rm.name});
    }
    return raw;
}

// Same objects, arrows reversed: comp_op(g, f) = comp(f, g). The opposite
// of a valid category is valid, and EI/skeletal transfer verbatim.
inline FiniteCategory opposite(const FiniteCategory& c) {
    RawCategory raw;
    raw.objects = c.object_names();
    for (std::size_t f = 0; f < c.morphism_count(); ++f)
        raw.morphisms.push_back(
            {c.morphism_name(f), c.object_name(c.target(f)), c.object_name(c.source(f))});
    for (std::size_t x = 0; x < c.object_count(); ++x)
        raw.identities.emplace_back(c.object_name(x), c.morphism_name(c.identity(x)));
    for (std::size_t g = 0; g < c.morphism_count(); ++g)
        for (std::size_t f = 0; f < c.morphism_count(); ++f)
            if (c.target(g) == c.source(f))
                raw.compositions.push_back({c.morphism_name(g), c.morphism_name(f),
                                            c.morphism_name(c.compose(f, g))});
    auto v = FiniteCategory::validate(raw);
    if (!v.ok()) throw FieldError("opposite category failed validation (internal error)");
    return *std::move(v.category);
}

struct CategoryProperties {
    bool is_ei = false;
    bool is_skeletal = false;
    bool is_connected = false;
};

inline CategoryProperties category_properties(const FiniteCategory& c) {
    CategoryProperties p;
    p.is_ei = true;
    for (std::size_t f = 0; f < c.morphism_count(); ++f)
        if (c.source(f) == c.target(f) && !c.is_iso(f)) p.is_ei = false;
    p.is_skeletal = true;
    for (std::size_t f = 0; f < c.morphism_count(); ++f)
        if (c.source(f) != c.target(f) && c.is_iso(f)) p.is_skeletal = false;

    const std::size_t n = c.object_count();
    std::vector<std::size_t> comp_id(n);
    for (std::size_t i = 0; i < n; ++i) comp_id[i] = i;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (c.hom(x, y).empty()) continue;
            const std::size_t a = comp_id[x], b = comp_id[y];
            if (a != b)
                for (auto& id : comp_id)
                    if (id == b) id = a;
        }
    p.is_connected = true;
    for (std::size_t i = 0; i < n; ++i)
        if (comp_id[i] != comp_id[0]) p.is_connected = false;
    return p;
}

struct AutGroup {
    std::size_t object;
    std::vector<std::size_t> elements;
};

inline AutGroup aut_group(const FiniteCategory& c, std::size_t x) {
    return {x, c.aut(x)};
}

// Finite poset on named elements; leq is the full relation.
struct Poset {
    std::vector<std::string> elements;
    std::vector<std::vector<bool>> leq;

    bool le(std::size_t a, std::size_t b) const { return leq[a][b]; }
    std::size_t size() const { return elements.size(); }

    std::vector<std::size_t> minimal_elements() const {
        std::vector<std::size_t> mins;
        for (std::size_t a = 0; a < size(); ++a) {
            bool minimal = true;
            for (std::size_t b = 0; b < size(); ++b)
                if (b != a && leq[b][a]) minimal = false;
            if (minimal) mins.push_back(a);
        }
        return mins;
    }

    std::optional<std::size_t> smallest_element() const {
        for (std::size_t z = 0; z < size(); ++z) {
            bool below_all = true;
            for (std::size_t x = 0; x < size(); ++x)
                if (!leq[z][x]) below_all = false;
            if (below_all) return z;
        }
        return std::nullopt;
    }

    bool is_connected() const {
        if (size() == 0) return true;
        std::vector<std::size_t> comp_id(size());
        for (std::size_t i = 0; i < size(); ++i) comp_id[i] = i;
        for (std::size_t a = 0; a < size(); ++a)
            for (std::size_t b = 0; b < size(); ++b) {
                if (!leq[a][b]) continue;
                const std::size_t u = comp_id[a], v = comp_id[b];
                if (u != v)
                    for (auto& id : comp_id)
                        if (id == v) id = u;
            }
        for (std::size_t i = 0; i < size(); ++i)
            if (comp_id[i] != comp_id[0]) return false;
        return true;
    }
};

// x <= y iff Hom(x, y) is nonempty. Reflexive and transitive by the
// category axioms; antisymmetric exactly when the category is skeletal EI.
inline Poset object_poset(const FiniteCategory& c) {
    Poset p;
    p.elements = c.object_names();
    p.leq.assign(c.object_count(), std::vector<bool>(c.object_count(), false));
    for (std::size_t x = 0; x < c.object_count(); ++x)
        for (std::size_t y = 0; y < c.object_count(); ++y)
            p.leq[x][y] = !c.hom(x, y).empty();
    return p;
}

// Object ordering x_1..x_n with Hom(x_i, x_j) empty whenever i < j.
// Stable: among the objects still unplaced, the first one (input order)
// with nothing above it gets the next slot. Fails when the hom relation
// has a cycle through distinct objects.
inline std::vector<std::size_t> object_order(const FiniteCategory& c) {
    const std::size_t n = c.object_count();
    std::vector<bool> placed(n, false);
    std::vector<std::size_t> order;
    for (std::size_t step = 0; step < n; ++step) {
        std::optional<std::size_t> pick;
        for (std::size_t x = 0; x < n && !pick; ++x) {
            if (placed[x]) continue;
            bool maximal = true;
            for (std::size_t y = 0; y < n; ++y)
                if (y != x && !placed[y] && !c.hom(x, y).empty()) maximal = false;
            if (maximal) pick = x;
        }
        if (!pick)
            throw FieldError("object_order: cycle in the object poset (category is not skeletal EI)");
        placed[*pick] = true;
        order.push_back(*pick);
    }
    return order;
}

// Object z with Hom(z, x) nonempty for every x, when one exists.
inline std::optional<std::size_t> smallest_object(const FiniteCategory& c) {
    for (std::size_t z = 0; z < c.object_count(); ++z) {
        bool hits_all = true;
        for (std::size_t x = 0; x < c.object_count(); ++x)
            if (c.hom(z, x).empty()) hits_all = false;
        if (hits_all) return z;
    }
    return std::nullopt;
}

struct HomActionReport {
    std::size_t orbit_count = 0;
    bool is_free = true;
};

// Action of Aut(x) on Hom(x, y) by precomposition g: a -> a o g.
inline HomActionReport hom_action_report(const FiniteCategory& c, std::size_t x, std::size_t y) {
    const auto& hom = c.hom(x, y);
    const auto& auts = c.aut(x);
    HomActionReport r;
    if (hom.empty()) return r;  // zero orbits, vacuously free

    std::vector<std::size_t> orbit_of(hom.size(), hom.size());
    auto pos = [&](std::size_t m) {
        return static_cast<std::size_t>(std::find(hom.begin(), hom.end(), m) - hom.begin());
    };
    for (std::size_t i = 0; i < hom.size(); ++i) {
        if (orbit_of[i] != hom.size()) continue;
        const std::size_t orbit = r.orbit_count++;
        std::vector<std::size_t> frontier{i};
        orbit_of[i] = orbit;
        while (!frontier.empty()) {
            const std::size_t j = frontier.back();
            frontier.pop_back();
            for (std::size_t g : auts) {
                const std::size_t k = pos(c.compose(hom[j], g));
                if (orbit_of[k] == hom.size()) {
                    orbit_of[k] = orbit;
                    frontier.push_back(k);
                }
            }
        }
    }
    for (std::size_t m : hom)
        for (std::size_t g : auts)
            if (c.compose(m, g) == m && g != c.identity(x)) r.is_free = false;
    return r;
}

struct MinimalPair {
    std::size_t a, b, c;  // distinct minimal a, b with common upper bound c
};

// For a connected poset without a smallest element this always finds a
// pair; returns nothing when a smallest element exists.
inline std::optional<MinimalPair> minimal_pair_with_upper_bound(const Poset& p) {
    if (p.smallest_element()) return std::nullopt;
    const auto mins = p.minimal_elements();
    for (std::size_t i = 0; i < mins.size(); ++i)
        for (std::size_t j = i + 1; j < mins.size(); ++j)
            for (std::size_t c = 0; c < p.size(); ++c)
                if (p.le(mins[i], c) && p.le(mins[j], c)) return MinimalPair{mins[i], mins[j], c};
    return std::nullopt;
}

} // namespace eicat
