#pragma once

// The category algebra: free k-module on the morphisms, product equal to
// composition when defined and zero otherwise, unit the sum of identities.
// The opposite algebra is the category algebra of the opposite category,
// so right modules reuse the same machinery as left ones.

#include "eicat/category.hpp"
#include "eicat/field.hpp"

#include <memory>
#include <optional>
#include <random>

namespace eicat {

template <class F>
struct Algebra {
    std::shared_ptr<const FiniteCategory> category;
    F field;

    const FiniteCategory& cat() const { return *category; }
    std::size_t dim() const { return category->morphism_count(); }

    // Product of basis elements: composition or zero (nullopt).
    std::optional<std::size_t> product(std::size_t a, std::size_t b) const {
        if (!category->composable(a, b)) return std::nullopt;
        return category->compose(a, b);
    }

    bool same_as(const Algebra& other) const {
        return field == other.field &&
               (category == other.category ||
                (category->morphism_count() == other.category->morphism_count() &&
                 category->object_names() == other.category->object_names()));
    }
};

// Builds the algebra and re-checks the unit law exactly and associativity
// on a seeded sample of triples (all triples when the category is small).
template <class F>
Algebra<F> build_algebra(const FiniteCategory& c, F field) {
    Algebra<F> a{std::make_shared<FiniteCategory>(c), field};
    const std::size_t m = c.morphism_count();
    for (std::size_t b = 0; b < m; ++b) {
        if (a.product(c.identity(c.target(b)), b) != std::optional(b) ||
            a.product(b, c.identity(c.source(b))) != std::optional(b))
            throw FieldError("build_algebra: unit law failed (internal error)");
        for (std::size_t x = 0; x < c.object_count(); ++x) {
            const bool defined = a.product(c.identity(x), b).has_value();
            if (defined != (x == c.target(b)))
                throw FieldError("build_algebra: unit law failed (internal error)");
        }
    }
    auto assoc = [&](std::size_t x, std::size_t y, std::size_t z) {
        auto yz = a.product(y, z);
        auto xy = a.product(x, y);
        auto left = yz ? a.product(x, *yz) : std::nullopt;
        auto right = xy ? a.product(*xy, z) : std::nullopt;
        return left == right;
    };
    if (m <= 16) {
        for (std::size_t x = 0; x < m; ++x)
            for (std::size_t y = 0; y < m; ++y)
                for (std::size_t z = 0; z < m; ++z)
                    if (!assoc(x, y, z))
                        throw FieldError("build_algebra: associativity failed (internal error)");
    } else {
        std::mt19937 rng(0xE1CA7);
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        for (int i = 0; i < 4096; ++i)
            if (!assoc(pick(rng), pick(rng), pick(rng)))
                throw FieldError("build_algebra: associativity failed (internal error)");
    }
    return a;
}

template <class F>
Algebra<F> opposite_algebra(const Algebra<F>& a) {
    return Algebra<F>{std::make_shared<FiniteCategory>(opposite(a.cat())), a.field};
}

} // namespace eicat
