#include <catch2/catch_amalgamated.hpp>

#include "eicat/algebra.hpp"
#include "eicat/builders.hpp"
#include "eicat/canonical_modules.hpp"
#include "eicat/duality.hpp"
#include "eicat/module.hpp"

using namespace eicat;

namespace {

std::size_t mor(const FiniteCategory& c, const std::string& name) {
    return *c.morphism_index(name);
}

} // namespace

TEST_CASE("build_algebra: products are composition or zero") {
    RationalField q;
    auto arrow = fixture("arrow");
    auto a = build_algebra(arrow, q);
    CHECK(a.dim() == 3);
    const std::size_t alpha = mor(arrow, "alpha");
    const std::size_t id1 = mor(arrow, "id_x1"), id2 = mor(arrow, "id_x2");
    CHECK(a.product(alpha, id2) == std::optional(alpha));
    CHECK(a.product(id2, alpha) == std::nullopt);  // not composable: zero
    CHECK(a.product(id1, alpha) == std::optional(alpha));

    PrimeField f2(2);
    auto g2 = fixture("g2");
    auto ag = build_algebra(g2, f2);
    CHECK(ag.dim() == 2);
    const std::size_t g = mor(g2, "g");
    CHECK(ag.product(g, g) == std::optional(mor(g2, "id_x1")));
}

TEST_CASE("module_from_functor: constant functor and a violation") {
    RationalField q;
    auto alg = build_algebra(fixture("arrow"), q);
    auto triv = trivial_module(alg);
    CHECK(triv.total_dim() == 2);

    std::vector<Matrix<RationalField>> act(3, Matrix<RationalField>::identity(q, 1));
    act[*alg.cat().morphism_index("id_x2")](0, 0) = q.from_int(3);
    CHECK_THROWS_AS(module_from_functor(alg, {1, 1}, act), FieldError);
}

TEST_CASE("column projectives have the documented dimensions") {
    RationalField q;
    auto arrow = build_algebra(fixture("arrow"), q);
    auto c1 = column_projective(arrow, 1);
    auto c2 = column_projective(arrow, 2);
    CHECK(c1.dims == std::vector<std::size_t>{1, 0});
    CHECK(c2.dims == std::vector<std::size_t>{1, 1});
    CHECK(c2.total_dim() == 2);
    CHECK_THROWS_AS(column_projective(arrow, 3), FieldError);

    auto z2 = build_algebra(fixture("z2orb"), q);
    auto zc2 = column_projective(z2, 2);
    CHECK(zc2.dims == std::vector<std::size_t>{2, 2});
    CHECK(zc2.total_dim() == 4);
}

TEST_CASE("hom_space dimensions") {
    RationalField q;
    auto arrow = build_algebra(fixture("arrow"), q);
    auto c1 = column_projective(arrow, 1);
    auto c2 = column_projective(arrow, 2);
    auto triv = trivial_module(arrow);

    CHECK(hom_space(c1, triv).size() == 1);
    CHECK(hom_space(triv, triv).size() == 1);
    CHECK(hom_space(c1, c2).size() == 1);  // = |Hom(x2, x1)|

    for (const auto& name : {"arrow", "z2orb", "kron", "diamond", "g2", "collapse"}) {
        auto alg = build_algebra(fixture(name), q);
        CHECK(hom_space(trivial_module(alg), trivial_module(alg)).size() == 1);
    }
}

TEST_CASE("hom_space members are natural") {
    PrimeField f3(3);
    auto alg = build_algebra(fixture("z2orb"), f3);
    auto e = augmented_arrow_module(alg).module;
    auto a = regular_module(alg);
    for (const auto& h : hom_space(e, a)) CHECK(h.is_natural());
}

TEST_CASE("representable hom dimension equals the piece at the representing object") {
    // linear Yoneda: dim Hom(C_t, M) = dim M(x_t)
    RationalField q;
    for (const auto& name : {"arrow", "z2orb", "kron", "diamond"}) {
        auto cat = fixture(name);
        auto alg = build_algebra(cat, q);
        const auto order = object_order(cat);
        std::vector<Module<RationalField>> probes = {trivial_module(alg), regular_module(alg),
                                                     arrow_module(alg)};
        for (std::size_t t = 1; t <= order.size(); ++t) {
            auto col = column_projective(alg, t);
            for (const auto& m : probes)
                CHECK(hom_space(col, m).size() == m.dims[order[t - 1]]);
        }
    }
}

TEST_CASE("kernel, image, quotient are consistent") {
    RationalField q;
    auto alg = build_algebra(fixture("z2orb"), q);
    auto seq = augmentation_sequence(alg);

    auto ker = kernel_module(seq.projection);
    CHECK(ker.module.dims == seq.sub.dims);
    CHECK(ker.inclusion.is_injective());
    CHECK(ker.inclusion.is_natural());

    auto img = image_module(seq.inclusion);
    CHECK(img.module.dims == seq.sub.dims);

    auto quo = quotient_module(seq.total, seq.inclusion);
    CHECK(quo.module.dims == std::vector<std::size_t>{1, 1});
    for (const auto& m : quo.module.act) CHECK(m == Matrix<RationalField>::identity(q, 1));
    CHECK(quo.projection.is_surjective());
    CHECK(quo.projection.is_natural());
}

TEST_CASE("regular module decomposes into the columns") {
    PrimeField f2(2);
    for (const auto& name : {"arrow", "z2orb", "kron", "diamond", "g2"}) {
        auto cat = fixture(name);
        auto alg = build_algebra(cat, f2);
        auto reg = regular_module(alg);
        std::vector<Module<PrimeField>> cols;
        for (std::size_t t = 1; t <= object_order(cat).size(); ++t)
            cols.push_back(column_projective(alg, t));
        auto sum = direct_sum(cols).module;
        CHECK(reg.total_dim() == sum.total_dim());
        auto iso = find_isomorphism(reg, sum);
        INFO(name);
        REQUIRE(iso.has_value());
        CHECK(iso->is_bijective());
        CHECK(iso->is_natural());
    }
}

TEST_CASE("algebra dual of a column: arrow") {
    RationalField q;
    auto alg = build_algebra(fixture("arrow"), q);
    auto c1 = column_projective(alg, 1);
    auto d = dual_module(c1);
    CHECK(d.total_dim() == 2);  // row of the algebra at x1: {id_x1, alpha}

    auto e = augmented_arrow_module(alg).module;
    CHECK(dual_module(e).total_dim() == 3);

    auto z = zero_module(alg);
    CHECK(dual_module(z).total_dim() == 0);
}

TEST_CASE("evaluation map") {
    RationalField q;
    SECTION("regular module and columns are reflexive") {
        for (const auto& name : {"arrow", "z2orb", "kron", "g2"}) {
            auto alg = build_algebra(fixture(name), q);
            CHECK(evaluation_map(regular_module(alg)).bijective);
            for (std::size_t t = 1; t <= object_order(alg.cat()).size(); ++t)
                CHECK(evaluation_map(column_projective(alg, t)).bijective);
        }
    }
    SECTION("trivial module on kron has zero dual") {
        auto alg = build_algebra(fixture("kron"), q);
        auto triv = trivial_module(alg);
        CHECK(dual_module(triv).total_dim() == 0);
        auto ev = evaluation_map(triv);
        CHECK_FALSE(ev.injective);
        CHECK_FALSE(ev.bijective);
    }
}

TEST_CASE("vector dual") {
    PrimeField f3(3);
    auto alg = build_algebra(fixture("z2orb"), f3);
    auto triv = trivial_module(alg);
    auto d = vector_dual(triv);
    CHECK(d.dims == std::vector<std::size_t>{1, 1});

    auto reg = regular_module(alg);
    CHECK(vector_dual(reg).total_dim() == reg.total_dim());

    auto dd = vector_dual(vector_dual(reg));
    CHECK(dd.dims == reg.dims);
    CHECK(dd.act == reg.act);
}

TEST_CASE("find_section basics") {
    RationalField q;
    auto alg = build_algebra(fixture("arrow"), q);
    auto triv = trivial_module(alg);
    auto id = identity_hom(triv);
    auto s = find_section(id);
    REQUIRE(s.section.has_value());
    CHECK(compose_homs(id, *s.section).comps == identity_hom(triv).comps);
    CHECK(s.solution_space_dim == 0);

    auto reg = regular_module(alg);
    CHECK_THROWS_AS(find_section(zero_hom(reg, triv)), FieldError);  // not surjective
}

TEST_CASE("greedy generators and cover on the trivial module over kron") {
    RationalField q;
    auto alg = build_algebra(fixture("kron"), q);
    auto triv = trivial_module(alg);
    auto gens = greedy_generators(triv);
    CHECK(gens.size() == 2);
    auto cover = projective_cover_greedy(triv);
    CHECK(cover.cover.total_dim() == 4);  // C_1 + C_2
    CHECK(cover.onto.is_surjective());
    CHECK(cover.onto.is_natural());
}

TEST_CASE("find_isomorphism: trivial module vs top column on arrow") {
    RationalField q;
    auto alg = build_algebra(fixture("arrow"), q);
    auto triv = trivial_module(alg);
    auto c2 = column_projective(alg, 2);
    auto iso = find_isomorphism(triv, c2);
    REQUIRE(iso.has_value());
    CHECK(iso->is_bijective());

    auto c1 = column_projective(alg, 1);
    CHECK_FALSE(find_isomorphism(triv, c1).has_value());  // dims differ
    CHECK_FALSE(find_isomorphism(c1, c2).has_value());
}

TEST_CASE("direct sum bookkeeping") {
    PrimeField f2(2);
    auto alg = build_algebra(fixture("z2orb"), f2);
    auto c1 = column_projective(alg, 1);
    auto c2 = column_projective(alg, 2);
    auto ds = direct_sum<PrimeField>({c1, c2});
    CHECK(ds.module.total_dim() == c1.total_dim() + c2.total_dim());
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(ds.injections[i].is_injective());
        CHECK(ds.injections[i].is_natural());
        CHECK(ds.projections[i].is_surjective());
        auto round = compose_homs(ds.projections[i], ds.injections[i]);
        CHECK(round.comps == identity_hom(i == 0 ? c1 : c2).comps);
    }
}

TEST_CASE("opposite algebra modules: the dual lives over the opposite category") {
    RationalField q;
    auto alg = build_algebra(fixture("arrow"), q);
    auto dd = dual_data(regular_module(alg));
    CHECK(dd.dual.total_dim() == alg.dim());
    CHECK(dd.op_alg.cat().source(*alg.cat().morphism_index("alpha")) ==
          alg.cat().target(*alg.cat().morphism_index("alpha")));
    CHECK_FALSE(functoriality_violation(dd.dual).has_value());
}

TEST_CASE("total matrices scatter the per-object blocks faithfully") {
    PrimeField f2(2);
    auto alg = build_algebra(fixture("z2orb"), f2);
    auto e = augmented_arrow_module(alg).module;
    const FiniteCategory& c = alg.cat();
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        auto total = e.total_matrix(f);
        const std::size_t ro = e.offset(c.target(f)), co = e.offset(c.source(f));
        for (std::size_t i = 0; i < e.act[f].rows(); ++i)
            for (std::size_t j = 0; j < e.act[f].cols(); ++j)
                CHECK(total(ro + i, co + j) == e.act[f](i, j));
        // multiplicativity in total form, including non-composable products
        for (std::size_t g = 0; g < c.morphism_count(); ++g) {
            auto prod = e.total_matrix(g) * total;
            if (c.composable(g, f))
                CHECK(prod == e.total_matrix(c.compose(g, f)));
            else
                CHECK(prod.is_zero());
        }
    }
}
