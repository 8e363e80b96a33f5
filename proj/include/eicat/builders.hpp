#pragma once

// Constructors for test categories: finite posets (viewed as EI categories
// with trivial automorphism groups), finite groups (one-object categories),
// and the named fixtures used throughout the test suites.

#include "eicat/category.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace eicat {

// One morphism x -> y per related pair x <= y. The cover list is closed
// reflexively and transitively; a cycle through distinct elements is an
// error since the result would not be a poset.
inline FiniteCategory from_poset(const std::vector<std::string>& elements,
                                 const std::vector<std::pair<std::string, std::string>>& covers) {
    const std::size_t n = elements.size();
    auto idx = [&](const std::string& e) -> std::size_t {
        for (std::size_t i = 0; i < n; ++i)
            if (elements[i] == e) return i;
        throw FieldError("from_poset: unknown element " + e);
    };
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
    for (const auto& [a, b] : covers) le[idx(a)][idx(b)] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (le[a][b] && le[b][c] && !le[a][c]) le[a][c] = changed = true;
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && le[a][b] && le[b][a])
                throw FieldError("from_poset: relation is not antisymmetric (" + elements[a] +
                                 " ~ " + elements[b] + ")");

    RawCategory raw;
    raw.objects = elements;
    std::map<std::pair<std::size_t, std::size_t>, std::string> name_of;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (!le[a][b]) continue;
            std::string nm = a == b ? "id_" + elements[a] : "le_" + elements[a] + "_" + elements[b];
            name_of[{a, b}] = nm;
            raw.morphisms.push_back({nm, elements[a], elements[b]});
            if (a == b) raw.identities.emplace_back(elements[a], nm);
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (le[a][b] && le[b][c])
                    raw.compositions.push_back({name_of[{b, c}], name_of[{a, b}], name_of[{a, c}]});

    auto v = FiniteCategory::validate(raw);
    if (!v.ok()) throw FieldError("from_poset: " + v.issues.front().axiom);
    return *std::move(v.category);
}

// One-object category from a multiplication table: table[i][j] is the index
// of elements[i] * elements[j], which becomes composition. The table is
// checked to be a group before building.
inline FiniteCategory from_group(const std::vector<std::string>& elements,
                                 const std::vector<std::vector<std::size_t>>& table,
                                 const std::string& object_name = "x1") {
    const std::size_t n = elements.size();
    if (n == 0) throw FieldError("from_group: empty table");
    if (table.size() != n) throw FieldError("from_group: table shape mismatch");
    for (const auto& row : table) {
        if (row.size() != n) throw FieldError("from_group: table shape mismatch");
        for (std::size_t v : row)
            if (v >= n) throw FieldError("from_group: entry out of range");
    }
    std::size_t unit = n;
    for (std::size_t e = 0; e < n; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n; ++x)
            if (table[e][x] != x || table[x][e] != x) ok = false;
        if (ok) unit = e;
    }
    if (unit == n) throw FieldError("from_group: no identity element");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw FieldError("from_group: table is not associative");
    for (std::size_t a = 0; a < n; ++a) {
        bool has_inverse = false;
        for (std::size_t b = 0; b < n; ++b)
            if (table[a][b] == unit && table[b][a] == unit) has_inverse = true;
        if (!has_inverse) throw FieldError("from_group: element " + elements[a] + " has no inverse");
    }

    RawCategory raw;
    raw.objects = {object_name};
    for (const auto& e : elements) raw.morphisms.push_back({e, object_name, object_name});
    raw.identities.emplace_back(object_name, elements[unit]);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            raw.compositions.push_back({elements[a], elements[b], elements[table[a][b]]});
    auto v = FiniteCategory::validate(raw);
    if (!v.ok()) throw FieldError("from_group: " + v.issues.front().axiom);
    return *std::move(v.category);
}

// Named fixtures. Each is skeletal EI; "diamond" is the only non-free one
// and "collapse" the only one whose Aut action on a hom-set is not free.
inline FiniteCategory fixture(const std::string& name) {
    RawCategory raw;
    auto finish = [&raw]() {
        auto v = FiniteCategory::validate(with_identity_compositions(raw));
        if (!v.ok())
            throw FieldError("fixture failed validation: " + v.issues.front().axiom + " " +
                             v.issues.front().witness);
        return *std::move(v.category);
    };

    if (name == "arrow") {
        raw.objects = {"x1", "x2"};
        raw.morphisms = {{"id_x1", "x1", "x1"}, {"id_x2", "x2", "x2"}, {"alpha", "x2", "x1"}};
        raw.identities = {{"x1", "id_x1"}, {"x2", "id_x2"}};
        return finish();
    }
    if (name == "g2") {
        return from_group({"id_x1", "g"}, {{0, 1}, {1, 0}});
    }
    if (name == "z2orb") {
        raw.objects = {"x1", "x2"};
        raw.morphisms = {{"id_x1", "x1", "x1"},
                         {"id_x2", "x2", "x2"},
                         {"g", "x2", "x2"},
                         {"alpha", "x2", "x1"},
                         {"beta", "x2", "x1"}};
        raw.identities = {{"x1", "id_x1"}, {"x2", "id_x2"}};
        raw.compositions = {{"g", "g", "id_x2"}, {"alpha", "g", "beta"}, {"beta", "g", "alpha"}};
        return finish();
    }
    if (name == "kron") {
        raw.objects = {"x1", "x2"};
        raw.morphisms = {{"id_x1", "x1", "x1"},
                         {"id_x2", "x2", "x2"},
                         {"alpha", "x2", "x1"},
                         {"beta", "x2", "x1"}};
        raw.identities = {{"x1", "id_x1"}, {"x2", "id_x2"}};
        return finish();
    }
    if (name == "diamond") {
        raw.objects = {"v", "y", "z", "w"};
        raw.morphisms = {{"id_v", "v", "v"}, {"id_y", "y", "y"}, {"id_z", "z", "z"},
                         {"id_w", "w", "w"}, {"a", "y", "v"},   {"b", "z", "v"},
                         {"c", "w", "y"},   {"d", "w", "z"},   {"m", "w", "v"}};
        raw.identities = {{"v", "id_v"}, {"y", "id_y"}, {"z", "id_z"}, {"w", "id_w"}};
        raw.compositions = {{"a", "c", "m"}, {"b", "d", "m"}};
        return finish();
    }
    if (name == "collapse") {
        raw.objects = {"x1", "x2"};
        raw.morphisms = {{"id_x1", "x1", "x1"},
                         {"id_x2", "x2", "x2"},
                         {"g", "x2", "x2"},
                         {"alpha", "x2", "x1"}};
        raw.identities = {{"x1", "id_x1"}, {"x2", "id_x2"}};
        raw.compositions = {{"g", "g", "id_x2"}, {"alpha", "g", "alpha"}};
        return finish();
    }
    throw FieldError("unknown fixture: " + name);
}

inline const std::array<std::string, 6>& fixture_names() {
    static const std::array<std::string, 6> names = {"arrow", "g2", "z2orb",
                                                     "kron",  "diamond", "collapse"};
    return names;
}

} // namespace eicat
