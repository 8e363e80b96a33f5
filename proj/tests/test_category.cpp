#include <catch2/catch_amalgamated.hpp>

#include "eicat/builders.hpp"
#include "eicat/category.hpp"
#include "test_util.hpp"

#include <random>

using namespace eicat;

namespace {

RawCategory arrow_raw() {
    RawCategory raw;
    raw.objects = {"x1", "x2"};
    raw.morphisms = {{"id_x1", "x1", "x1"}, {"id_x2", "x2", "x2"}, {"alpha", "x2", "x1"}};
    raw.identities = {{"x1", "id_x1"}, {"x2", "id_x2"}};
    raw.compositions = {{"id_x1", "id_x1", "id_x1"},
                        {"id_x2", "id_x2", "id_x2"},
                        {"alpha", "id_x2", "alpha"},
                        {"id_x1", "alpha", "alpha"}};
    return raw;
}

bool has_issue(const CategoryValidation& v, const std::string& axiom, const std::string& frag) {
    for (const auto& i : v.issues)
        if (i.axiom == axiom && i.witness.find(frag) != std::string::npos) return true;
    return false;
}

} // namespace

TEST_CASE("validate: arrow data is a category") {
    auto v = FiniteCategory::validate(arrow_raw());
    REQUIRE(v.ok());
    CHECK(v.category->object_count() == 2);
    CHECK(v.category->morphism_count() == 3);
}

TEST_CASE("validate: missing composition entry is reported with its pair") {
    auto raw = arrow_raw();
    raw.compositions.erase(raw.compositions.begin() + 2);  // drop alpha o id_x2
    auto v = FiniteCategory::validate(raw);
    REQUIRE_FALSE(v.ok());
    CHECK(has_issue(v, "incomplete-table", "(alpha, id_x2)"));
}

TEST_CASE("validate: missing identity") {
    auto raw = arrow_raw();
    raw.identities.pop_back();
    auto v = FiniteCategory::validate(raw);
    REQUIRE_FALSE(v.ok());
    CHECK(has_issue(v, "missing-identity", "x2"));
}

TEST_CASE("validate: non-composable entry is an endpoint mismatch") {
    auto raw = arrow_raw();
    raw.compositions.push_back({"alpha", "alpha", "alpha"});
    auto v = FiniteCategory::validate(raw);
    REQUIRE_FALSE(v.ok());
    CHECK(has_issue(v, "endpoint-mismatch", "(alpha, alpha)"));
}

TEST_CASE("validate: broken associativity carries the triple") {
    // one object, morphisms id,u,v with a deliberately inconsistent table
    RawCategory raw;
    raw.objects = {"x"};
    raw.morphisms = {{"id", "x", "x"}, {"u", "x", "x"}, {"v", "x", "x"}};
    raw.identities = {{"x", "id"}};
    raw.compositions = {{"u", "u", "v"}, {"u", "v", "id"}, {"v", "u", "id"}, {"v", "v", "v"}};
    raw = with_identity_compositions(raw);
    raw.compositions.push_back({"id", "id", "id"});
    auto v = FiniteCategory::validate(raw);
    REQUIRE_FALSE(v.ok());
    CHECK(has_issue(v, "associativity", "("));
}

TEST_CASE("composition endpoints are always consistent") {
    for (const auto& name : fixture_names()) {
        auto c = fixture(name);
        for (std::size_t g = 0; g < c.morphism_count(); ++g)
            for (std::size_t f = 0; f < c.morphism_count(); ++f) {
                if (!c.composable(g, f)) continue;
                const std::size_t gf = c.compose(g, f);
                CHECK(c.source(gf) == c.source(f));
                CHECK(c.target(gf) == c.target(g));
            }
    }
}

TEST_CASE("category_properties on fixtures") {
    auto p = category_properties(fixture("diamond"));
    CHECK(p.is_ei);
    CHECK(p.is_skeletal);
    CHECK(p.is_connected);
    for (const auto& name : fixture_names()) {
        auto q = category_properties(fixture(name));
        CHECK(q.is_ei);
        CHECK(q.is_skeletal);
        CHECK(q.is_connected);
    }
}

TEST_CASE("EI fails for a non-invertible idempotent") {
    RawCategory raw;
    raw.objects = {"x"};
    raw.morphisms = {{"id", "x", "x"}, {"e", "x", "x"}};
    raw.identities = {{"x", "id"}};
    raw.compositions = {{"e", "e", "e"}};
    auto v = FiniteCategory::validate(with_identity_compositions(raw));
    REQUIRE(v.ok());
    CHECK_FALSE(category_properties(*v.category).is_ei);
}

TEST_CASE("skeletal fails for isomorphic distinct objects") {
    RawCategory raw;
    raw.objects = {"x", "y"};
    raw.morphisms = {{"id_x", "x", "x"}, {"id_y", "y", "y"}, {"f", "x", "y"}, {"finv", "y", "x"}};
    raw.identities = {{"x", "id_x"}, {"y", "id_y"}};
    raw.compositions = {{"finv", "f", "id_x"}, {"f", "finv", "id_y"}};
    auto v = FiniteCategory::validate(with_identity_compositions(raw));
    REQUIRE(v.ok());
    auto p = category_properties(*v.category);
    CHECK(p.is_ei);
    CHECK_FALSE(p.is_skeletal);
}

TEST_CASE("disjoint union is not connected") {
    RawCategory raw;
    raw.objects = {"x1", "x2", "y1"};
    raw.morphisms = {{"id_x1", "x1", "x1"},
                     {"id_x2", "x2", "x2"},
                     {"alpha", "x2", "x1"},
                     {"id_y1", "y1", "y1"},
                     {"g", "y1", "y1"}};
    raw.identities = {{"x1", "id_x1"}, {"x2", "id_x2"}, {"y1", "id_y1"}};
    raw.compositions = {{"g", "g", "id_y1"}};
    auto v = FiniteCategory::validate(with_identity_compositions(raw));
    REQUIRE(v.ok());
    CHECK_FALSE(category_properties(*v.category).is_connected);
}

TEST_CASE("object_order on fixtures") {
    auto check_order = [](const FiniteCategory& c, const std::vector<std::string>& expected) {
        auto ord = object_order(c);
        REQUIRE(ord.size() == expected.size());
        for (std::size_t i = 0; i < ord.size(); ++i) CHECK(c.object_name(ord[i]) == expected[i]);
        // the defining property, brute force
        for (std::size_t i = 0; i < ord.size(); ++i)
            for (std::size_t j = i + 1; j < ord.size(); ++j)
                CHECK(c.hom(ord[i], ord[j]).empty());
    };
    check_order(fixture("arrow"), {"x1", "x2"});
    check_order(fixture("diamond"), {"v", "y", "z", "w"});
    check_order(fixture("g2"), {"x1"});
}

TEST_CASE("object_order rejects a non-skeletal cycle") {
    RawCategory raw;
    raw.objects = {"x", "y"};
    raw.morphisms = {{"id_x", "x", "x"}, {"id_y", "y", "y"}, {"f", "x", "y"}, {"finv", "y", "x"}};
    raw.identities = {{"x", "id_x"}, {"y", "id_y"}};
    raw.compositions = {{"finv", "f", "id_x"}, {"f", "finv", "id_y"}};
    auto v = FiniteCategory::validate(with_identity_compositions(raw));
    CHECK_THROWS_AS(object_order(*v.category), FieldError);
}

TEST_CASE("smallest_object") {
    auto kron = fixture("kron");
    auto z = smallest_object(kron);
    REQUIRE(z.has_value());
    CHECK(kron.object_name(*z) == "x2");

    auto diamond = fixture("diamond");
    auto w = smallest_object(diamond);
    REQUIRE(w.has_value());
    CHECK(diamond.object_name(*w) == "w");

    auto vee = from_poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
    CHECK_FALSE(smallest_object(vee).has_value());
}

TEST_CASE("hom_action_report") {
    auto z2orb = fixture("z2orb");
    auto r = hom_action_report(z2orb, *z2orb.object_index("x2"), *z2orb.object_index("x1"));
    CHECK(r.orbit_count == 1);
    CHECK(r.is_free);

    auto kron = fixture("kron");
    auto rk = hom_action_report(kron, *kron.object_index("x2"), *kron.object_index("x1"));
    CHECK(rk.orbit_count == 2);
    CHECK(rk.is_free);

    auto g2 = fixture("g2");
    auto rg = hom_action_report(g2, 0, 0);
    CHECK(rg.orbit_count == 1);
    CHECK(rg.is_free);

    auto collapse = fixture("collapse");
    auto rc = hom_action_report(collapse, *collapse.object_index("x2"),
                                *collapse.object_index("x1"));
    CHECK(rc.orbit_count == 1);
    CHECK_FALSE(rc.is_free);

    // empty hom-set: zero orbits, vacuously free
    auto ra = hom_action_report(fixture("arrow"), 0, 1);
    CHECK(ra.orbit_count == 0);
    CHECK(ra.is_free);
}

TEST_CASE("automorphism sets are groups on EI fixtures") {
    for (const auto& name : fixture_names()) {
        auto c = fixture(name);
        for (std::size_t x = 0; x < c.object_count(); ++x) {
            const auto& auts = c.aut(x);
            CHECK(std::find(auts.begin(), auts.end(), c.identity(x)) != auts.end());
            for (std::size_t g : auts) {
                REQUIRE(c.is_iso(g));
                const std::size_t ginv = *c.inverse(g);
                CHECK(std::find(auts.begin(), auts.end(), ginv) != auts.end());
                for (std::size_t h : auts) {
                    const std::size_t gh = c.compose(g, h);
                    CHECK(std::find(auts.begin(), auts.end(), gh) != auts.end());
                }
            }
        }
    }
}

TEST_CASE("minimal_pair_with_upper_bound") {
    SECTION("V poset") {
        auto vee = object_poset(from_poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}));
        auto pair = minimal_pair_with_upper_bound(vee);
        REQUIRE(pair.has_value());
        CHECK(vee.elements[pair->a] == "a");
        CHECK(vee.elements[pair->b] == "b");
        CHECK(vee.elements[pair->c] == "c");
    }
    SECTION("chain has a smallest element") {
        auto chain = object_poset(from_poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
        CHECK_FALSE(minimal_pair_with_upper_bound(chain).has_value());
    }
    SECTION("diamond poset has a smallest element") {
        auto p = object_poset(fixture("diamond"));
        CHECK_FALSE(minimal_pair_with_upper_bound(p).has_value());
    }
}

TEST_CASE("connected posets without smallest element always yield a pair") {
    std::mt19937 rng(424242);
    int tested = 0;
    while (tested < 100) {
        auto c = testing::random_poset_category(rng, 6);
        auto p = object_poset(c);
        if (!p.is_connected() || p.smallest_element()) continue;
        ++tested;
        auto pair = minimal_pair_with_upper_bound(p);
        REQUIRE(pair.has_value());
        CHECK(pair->a != pair->b);
        CHECK(p.le(pair->a, pair->c));
        CHECK(p.le(pair->b, pair->c));
        for (std::size_t x = 0; x < p.size(); ++x) {
            if (x == pair->a) continue;
            CHECK_FALSE(p.le(x, pair->a));  // a minimal
        }
    }
}

TEST_CASE("opposite category round trip") {
    for (const auto& name : fixture_names()) {
        auto c = fixture(name);
        auto op = opposite(c);
        CHECK(op.morphism_count() == c.morphism_count());
        for (std::size_t f = 0; f < c.morphism_count(); ++f) {
            CHECK(op.source(f) == c.target(f));
            CHECK(op.target(f) == c.source(f));
        }
        auto opop = opposite(op);
        for (std::size_t g = 0; g < c.morphism_count(); ++g)
            for (std::size_t f = 0; f < c.morphism_count(); ++f)
                if (c.composable(g, f)) CHECK(opop.compose(g, f) == c.compose(g, f));
    }
}

TEST_CASE("from_group rejects non groups") {
    CHECK_THROWS_AS(from_group({"e", "a"}, {{0, 1}, {1, 1}}), FieldError);  // no inverse for a
    CHECK_THROWS_AS(from_group({}, {}), FieldError);
}

TEST_CASE("from_group: S3 is a one-object EI category") {
    // elements: e, r, r2, s, sr, sr2 with r^3 = e, s^2 = e, srs = r^2
    auto mul = [](int a, int b) {
        auto rot = [](int x) { return x % 3; };
        auto ref = [](int x) { return x / 3; };
        int fr = ref(a) ^ ref(b);
        int rr = ref(b) ? rot(3 + rot(b) - rot(a)) : rot(rot(a) + rot(b));
        return fr * 3 + rr;
    };
    std::vector<std::string> names = {"e", "r", "r2", "s", "sr", "sr2"};
    std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) table[a][b] = static_cast<std::size_t>(mul(a, b));
    auto c = from_group(names, table);
    CHECK(c.morphism_count() == 6);
    CHECK(category_properties(c).is_ei);
}

TEST_CASE("from_poset matches fixtures") {
    auto two_chain = from_poset({"x1", "x2"}, {{"x2", "x1"}});
    CHECK(two_chain.morphism_count() == 3);
    auto p = category_properties(two_chain);
    CHECK((p.is_ei && p.is_skeletal && p.is_connected));

    auto antichain = from_poset({"a", "b"}, {});
    CHECK_FALSE(category_properties(antichain).is_connected);

    CHECK_THROWS_AS(from_poset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), FieldError);
}

TEST_CASE("fixture sizes") {
    CHECK(fixture("arrow").morphism_count() == 3);
    CHECK(fixture("g2").morphism_count() == 2);
    CHECK(fixture("z2orb").morphism_count() == 5);
    CHECK(fixture("kron").morphism_count() == 4);
    CHECK(fixture("diamond").morphism_count() == 9);
    CHECK(fixture("collapse").morphism_count() == 4);
    CHECK_THROWS_AS(fixture("nonsense"), FieldError);
}

TEST_CASE("from_group: trivial group is the terminal category") {
    auto c = from_group({"e"}, {{0}});
    CHECK(c.object_count() == 1);
    CHECK(c.morphism_count() == 1);
    CHECK(c.is_identity(0));
    auto p = category_properties(c);
    CHECK((p.is_ei && p.is_skeletal && p.is_connected));
}
