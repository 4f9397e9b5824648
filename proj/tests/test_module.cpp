#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "kmod/builtins.hpp"
#include "kmod/congruence.hpp"
#include "kmod/constructions.hpp"
#include "kmod/hom.hpp"
#include "kmod/matrix.hpp"
#include "support.hpp"

using namespace kmod;

namespace {

// D acting on itself with a·1 forced to 1.
KleeneModule corrupted_module() {
    const auto d = support::dual_numbers();
    auto t = support::left_tables(regular_module(d, Side::left));
    t.act[2 * 4 + 1] = 1;
    return support::left_module("corrupted", d, t);
}

oracle::Module free_left_tables(std::size_t rank) {
    return support::left_tables(free_module(bool2(), rank, Side::left).module);
}

} // namespace

TEST_CASE("bool2 as a bimodule over itself") {
    const auto m = regular_module(bool2());
    CHECK(m.side() == Side::bi);
    CHECK(check_module_axioms(m).passed());
}

TEST_CASE("a corrupted action fails the quasi-identity at the corrupted pair") {
    const auto m = corrupted_module();
    const auto report = check_module_axioms(m);
    CHECK_FALSE(report.passed());
    const auto* law = report.find("left quasi-identity am <= m => a*m <= m");
    REQUIRE(law != nullptr);
    CHECK_FALSE(law->holds);
    CHECK(law->counterexample == "a=2, m=#1");
    // Confirm by enumeration: (2, 1) is the only pair violating it.
    const auto k = support::tables(support::dual_numbers());
    const auto t = support::left_tables(m);
    std::vector<std::pair<Elem, Elem>> bad;
    for (Elem a = 0; a < 4; ++a) {
        for (Elem x = 0; x < 4; ++x) {
            if (t.leq(t.apply(a, x), x) && !t.leq(t.apply(k.star[a], x), x)) {
                bad.emplace_back(a, x);
            }
        }
    }
    CHECK(bad == std::vector<std::pair<Elem, Elem>>{{2, 1}});
}

TEST_CASE("malformed module tables are a validation error") {
    KleeneModule::Parts parts;
    parts.name = "bad";
    parts.size = 2;
    parts.add = {0, 1, 1};
    parts.left = ScalarAction{bool2(), {0, 0, 0, 1}};
    CHECK_THROWS_AS(KleeneModule::make(parts), ValidationError);
    parts.add = {0, 1, 1, 1};
    parts.left = ScalarAction{bool2(), {0, 0, 0, 5}};
    CHECK_THROWS_AS(KleeneModule::make(parts), ValidationError);
}

TEST_CASE("algebras as bimodules over subalgebras") {
    const auto rel = relation_algebra(2);
    const std::vector<Elem> diagonal = {0, 1, 8, 9};
    const auto over_diagonal = algebra_as_bimodule(rel, diagonal, Side::left);
    CHECK(over_diagonal.size() == 16);
    CHECK(over_diagonal.left_algebra().size() == 4);
    CHECK(check_module_axioms(over_diagonal).passed());

    std::vector<Elem> everything(16);
    std::iota(everything.begin(), everything.end(), 0);
    const auto full = algebra_as_bimodule(rel, everything);
    CHECK(check_module_axioms(full).passed());
    CHECK(identical_modules(full.without_bases(), regular_module(rel).without_bases()));

    // K over {0, 1}: a bimodule over the two-element algebra.
    const std::vector<Elem> units = {0, 9};
    const auto over_two = algebra_as_bimodule(rel, units);
    CHECK(algebra_iso_search(over_two.left_algebra(), bool2()).has_value());
    CHECK(check_module_axioms(over_two).passed());

    const std::vector<Elem> open = {0, 9, 2};
    CHECK_THROWS_AS(algebra_as_bimodule(rel, open), SubalgebraError);
}

TEST_CASE("ideals") {
    const auto rel = relation_algebra(2);
    const std::vector<Elem> zero = {0};
    CHECK(submodule_generated(rel, zero, Side::left).size() == 1);
    const std::vector<Elem> one = {rel.one()};
    CHECK(submodule_generated(rel, one, Side::left).size() == 16);

    SUBCASE("left ideal of a relation with an empty row matches a fixpoint oracle") {
        // {(0,0),(0,1)}: row 1 is empty.
        const Elem g = 0b0011;
        const auto ideal = submodule_generated(rel, std::vector<Elem>{g}, Side::left);
        std::set<Elem> closure = {0, g};
        bool grew = true;
        while (grew) {
            grew = false;
            const auto snapshot = closure;
            for (const Elem x : snapshot) {
                for (const Elem y : snapshot) {
                    grew |= closure.insert(x | y).second;
                }
                for (Elem a = 0; a < 16; ++a) {
                    grew |= closure.insert(oracle::rel_compose(a, x, 2)).second;
                }
            }
        }
        CHECK(ideal.size() == closure.size());
        CHECK(ideal.size() < 16);
        CHECK(check_module_axioms(ideal).passed());
    }

    SUBCASE("random ideals never violate the quasi-identity") {
        std::mt19937 rng(3);
        std::uniform_int_distribution<Elem> pick(0, 15);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<Elem> gens = {pick(rng), pick(rng)};
            for (const Side side : {Side::left, Side::right, Side::bi}) {
                const auto report = check_module_axioms(submodule_generated(rel, gens, side));
                CHECK(report.passed());
            }
        }
    }
}

TEST_CASE("free modules") {
    const auto k = bool2();
    CHECK(free_module(k, 0, Side::left).module.size() == 1);
    const auto f = free_module(k, 2, Side::left);
    CHECK(f.module.size() == 4);
    REQUIRE(f.basis.size() == 2);
    CHECK(f.basis[0] != f.basis[1]);
    REQUIRE(f.module.left_basis() != nullptr);
    CHECK(check_module_axioms(f.module).passed());
    CHECK(free_module(relation_algebra(2), 2, Side::bi).module.size() == 256);
    Limits tight;
    tight.max_carrier = 100;
    CHECK_THROWS_AS(free_module(relation_algebra(2), 2, Side::left, tight), SizeGuardError);

    SUBCASE("each function on the basis extends to exactly one homomorphism") {
        const auto source = support::left_tables(f.module);
        const auto target = support::left_tables(regular_module(k, Side::left));
        const auto ka = support::tables(k);
        for (Elem v0 = 0; v0 < 2; ++v0) {
            for (Elem v1 = 0; v1 < 2; ++v1) {
                std::size_t extensions = 0;
                oracle::for_each_map(source.n, target.n, [&](const oracle::Table& h) {
                    extensions += oracle::is_hom(ka, source, target, h) && h[f.basis[0]] == v0 && h[f.basis[1]] == v1;
                });
                CHECK(extensions == 1);
            }
        }
    }
}

TEST_CASE("hom modules") {
    const auto k = bool2();
    const auto f2 = free_module(k, 2, Side::left).module;
    const auto reg = regular_module(k, Side::left);

    SUBCASE("End contains the identity and the zero map") {
        const auto end = end_module(f2);
        std::vector<Elem> identity(f2.size());
        std::iota(identity.begin(), identity.end(), 0);
        CHECK(end.index_of(identity).has_value());
        CHECK(end.index_of(std::vector<Elem>(f2.size(), f2.zero())).has_value());
        CHECK(check_module_axioms(end.module).passed());
    }

    SUBCASE("hom counts match brute force") {
        const auto ka = support::tables(k);
        const auto hom = hom_module(f2, reg, Respect::left);
        CHECK(hom.maps.size() == 4);
        CHECK(oracle::count_homs(ka, support::left_tables(f2), support::left_tables(reg)) == 4);
        CHECK(check_module_axioms(hom.module).passed());
    }

    SUBCASE("operations are pointwise") {
        const auto hom = hom_module(f2, f2, Respect::left);
        const auto& m = hom.module;
        for (Elem p = 0; p < m.size(); ++p) {
            for (Elem q = 0; q < m.size(); ++q) {
                for (Elem x = 0; x < f2.size(); ++x) {
                    CHECK(hom.map(m.add(p, q))[x] == f2.add(hom.map(p)[x], hom.map(q)[x]));
                }
            }
            if (m.has_left()) {
                for (Elem a = 0; a < m.left_algebra().size(); ++a) {
                    for (Elem x = 0; x < f2.size(); ++x) {
                        CHECK(hom.map(m.act_left(a, p))[x] == f2.act_left(a, hom.map(p)[x]));
                    }
                }
            }
        }
    }

    SUBCASE("enumeration bound") {
        Limits tight;
        tight.hom_bound = 8;
        const auto f3 = free_module(relation_algebra(2), 1, Side::left).module;
        CHECK_THROWS_AS(enumerate_homs(f3, f3, Respect::left, tight), SizeGuardError);
    }
}

TEST_CASE("duals") {
    const auto k = bool2();

    SUBCASE("dual of the regular left module is the regular right module") {
        const auto dual = dual_module(regular_module(k, Side::left));
        CHECK(dual.module.has_right());
        CHECK_FALSE(dual.module.has_left());
        CHECK(module_iso_search(dual.module, regular_module(k, Side::right)).has_value());
    }

    SUBCASE("dual of free left rank 2 is free right rank 2 with the dual basis") {
        const auto f = free_module(k, 2, Side::left);
        const auto dual = dual_module(f.module);
        CHECK(dual.module.size() == 4);
        CHECK(dual.module.has_right());
        const auto* basis = dual.module.right_basis();
        REQUIRE(basis != nullptr);
        REQUIRE(basis->rank() == 2);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                CHECK(dual.map(basis->elements[i])[f.basis[j]] == (i == j ? k.one() : k.zero()));
            }
        }
        CHECK(module_iso_search(dual.module, free_module(k, 2, Side::right).module).has_value());
    }

    SUBCASE("dual of free rank n has |K|^n elements") {
        const auto rel = relation_algebra(2);
        for (std::size_t n = 1; n <= 2; ++n) {
            const auto dual = dual_module(free_module(rel, n, Side::left).module);
            std::size_t expected = 1;
            for (std::size_t i = 0; i < n; ++i) {
                expected *= 16;
            }
            CHECK(dual.module.size() == expected);
        }
    }

    SUBCASE("dual of the one-element module") {
        const auto trivial = trivial_module_like(regular_module(k, Side::left));
        CHECK(dual_module(trivial).module.size() == 1);
    }

    SUBCASE("double dual of free modules") {
        for (std::size_t n = 1; n <= 2; ++n) {
            const auto f = free_module(k, n, Side::left).module;
            const auto dd = dual_module(dual_module(f).module).module;
            CHECK(module_iso_search(dd, f).has_value());
        }
    }

    SUBCASE("dual of a bimodule swaps sides") {
        const auto rel = relation_algebra(2);
        const std::vector<Elem> diagonal = {0, 1, 8, 9};
        const auto over_diag = algebra_as_bimodule(rel, std::vector<Elem>(diagonal), Side::bi);
        const auto dual = dual_module(over_diag, Respect::left);
        CHECK(dual.module.has_left());
        CHECK(dual.module.has_right());
        CHECK(check_module_axioms(dual.module).passed());
    }
}

TEST_CASE("isomorphism search") {
    const auto k = bool2();
    const auto f1 = free_module(k, 1, Side::left).module;
    const auto f2 = free_module(k, 2, Side::left).module;
    const auto iso = module_iso_search(f2, f2);
    REQUIRE(iso.has_value());
    CHECK(module_iso_search(f1, regular_module(k, Side::left)).has_value());
    CHECK_FALSE(module_iso_search(f1, f2).has_value());
    CHECK_THROWS_AS(module_iso_search(f1, regular_module(k, Side::right)), AlgebraMismatchError);
}

TEST_CASE("isomorphism search agrees with a bijection scan on small carriers") {
    for (const auto& k : {bool2(), support::chain3(), support::dual_numbers()}) {
        const auto ka = support::tables(k);
        for (std::uint32_t n = 1; n <= 4; ++n) {
            const auto modules = support::all_left_modules(k, n, 60);
            CAPTURE(k.name());
            CAPTURE(n);
            for (std::size_t i = 0; i < modules.size(); ++i) {
                for (std::size_t j = i; j < modules.size(); ++j) {
                    const bool expected =
                        oracle::isomorphic(ka, support::left_tables(modules[i]), support::left_tables(modules[j]));
                    CHECK(module_iso_search(modules[i], modules[j]).has_value() == expected);
                }
            }
        }
    }
}

TEST_CASE("quotients") {
    const auto k = bool2();
    const auto reg = regular_module(k);
    const auto same = quotient_module(reg, {});
    CHECK(module_iso_search(same.module, reg).has_value());

    const std::vector<ElemPair> all = {{0, 1}};
    CHECK(quotient_module(reg, all).module.size() == 1);

    const auto f = free_module(k, 2, Side::left);
    const std::vector<ElemPair> glue = {{f.basis[0], f.basis[1]}};
    const auto q = quotient_module(f.module, glue);
    CHECK(q.module.size() == 2);
    CHECK(module_iso_search(q.module, free_module(k, 1, Side::left).module).has_value());
    CHECK(check_module_axioms(q.module).passed());
    CHECK(q.congruence.trace.repairs == 0);
}

TEST_CASE("every constructed module satisfies the axioms") {
    const auto k = bool2();
    const auto rel = relation_algebra(2);
    const auto m2 = matrix_algebra(k, 2);
    std::vector<KleeneModule> built = {
        regular_module(rel),
        regular_module(m2, Side::left),
        free_module(k, 3, Side::bi).module,
        free_module(rel, 1, Side::right).module,
        column_module(k, m2, 2),
        row_module(k, m2, 2),
        dual_module(column_module(k, m2, 2), Respect::right).module,
        hom_module(free_module(k, 2, Side::bi).module, regular_module(k), Respect::right).module,
        submodule_generated(rel, std::vector<Elem>{6}, Side::bi),
        quotient_module(regular_module(rel, Side::left), std::vector<ElemPair>{{1, 2}}).module,
    };
    for (const auto& m : built) {
        CAPTURE(m.name());
        CHECK(check_module_axioms(m).passed());
        if (m.has_left()) {
            CHECK(oracle::is_kleene_module(support::tables(m.left_algebra()), support::left_tables(m)));
        }
    }
}
