#include <doctest.h>

#include <set>

#include "kmod/builtins.hpp"
#include "kmod/constructions.hpp"
#include "kmod/hom.hpp"
#include "kmod/matrix.hpp"
#include "kmod/morita.hpp"
#include "support.hpp"

using namespace kmod;

namespace {

const KleeneAlgebra& m2() {
    static const auto m = matrix_algebra(bool2(), 2);
    return m;
}

Elem unit_matrix(int n, int i, int j) { return MatrixElement::unit(bool2(), n, i, j).index(MatrixCodec(bool2(), n)); }

// Additive closure of {x e y}, by plain set iteration.
bool full_by_brute_force(const KleeneAlgebra& k, Elem e) {
    std::set<Elem> span = {k.zero()};
    for (Elem x = 0; x < k.size(); ++x) {
        for (Elem y = 0; y < k.size(); ++y) {
            span.insert(k.mul(k.mul(x, e), y));
        }
    }
    bool grew = true;
    while (grew) {
        grew = false;
        const auto snapshot = span;
        for (const Elem a : snapshot) {
            for (const Elem b : snapshot) {
                grew |= span.insert(k.add(a, b)).second;
            }
        }
    }
    return span.size() == k.size();
}

std::vector<KleeneAlgebra> catalog() {
    return {bool2(), relation_algebra(1), relation_algebra(2), m2(), support::chain3(), support::dual_numbers()};
}

} // namespace

TEST_CASE("full idempotents of M2(bool2)") {
    const auto& m = m2();
    const auto all = idempotents(m);
    std::vector<Elem> expected_idempotents;
    for (Elem x = 0; x < m.size(); ++x) {
        if (m.mul(x, x) == x) {
            expected_idempotents.push_back(x);
        }
    }
    CHECK(all == expected_idempotents);

    const auto full = full_idempotents(m);
    for (const Elem e : all) {
        CAPTURE(m.label(e));
        const bool is_full = std::find(full.begin(), full.end(), e) != full.end();
        CHECK(is_full == full_by_brute_force(m, e));
        CHECK(is_full_idempotent(m, e) == is_full);
    }
    const auto contains = [&](Elem e) { return std::find(full.begin(), full.end(), e) != full.end(); };
    CHECK(contains(m.one()));
    CHECK(contains(unit_matrix(2, 0, 0)));
    CHECK_FALSE(contains(m.zero()));
    CHECK_THROWS_AS(is_full_idempotent(m, unit_matrix(2, 0, 1)), PreconditionError);
}

TEST_CASE("fullness is upward closed among idempotents of matrix algebras") {
    for (const auto& k : {bool2(), relation_algebra(2), m2(), matrix_algebra(bool2(), 3)}) {
        const auto all = idempotents(k);
        std::vector<bool> full;
        for (const Elem e : all) {
            full.push_back(is_full_idempotent(k, e));
        }
        for (std::size_t i = 0; i < all.size(); ++i) {
            for (std::size_t j = 0; j < all.size(); ++j) {
                if (k.leq(all[i], all[j]) && full[i]) {
                    CHECK(full[j]);
                }
            }
        }
    }
}

TEST_CASE("fullness is not upward closed in every algebra") {
    const auto c = support::chain3();
    CHECK(c.leq(c.one(), 2));
    CHECK(c.mul(2, 2) == 2);
    CHECK(is_full_idempotent(c, c.one()));
    CHECK_FALSE(is_full_idempotent(c, 2));
}

TEST_CASE("0 is never full and 1 always is") {
    for (const auto& k : catalog()) {
        CHECK(is_full_idempotent(k, k.one()));
        if (k.size() > 1) {
            CHECK_FALSE(is_full_idempotent(k, k.zero()));
        }
    }
}

TEST_CASE("corners") {
    for (const auto& k : catalog()) {
        CAPTURE(k.name());
        const auto whole = corner_algebra(k, k.one());
        CHECK(whole.algebra.size() == k.size());
        CHECK(algebra_iso_search(whole.algebra, k).has_value());
        CHECK(corner_algebra(k, k.zero()).algebra.size() == 1);
    }
    const auto e11 = corner_algebra(m2(), unit_matrix(2, 0, 0));
    CHECK(e11.algebra.size() == 2);
    CHECK(check_kleene_axioms(e11.algebra).passed());
    CHECK(algebra_iso_search(e11.algebra, bool2()).has_value());
}

TEST_CASE("corner star x -> e x* e passes on every idempotent of small matrix algebras") {
    for (const auto& k : {m2(), matrix_algebra(bool2(), 3)}) {
        for (const Elem e : idempotents(k)) {
            CAPTURE(k.label(e));
            CHECK_NOTHROW(corner_algebra(k, e));
        }
    }
}

TEST_CASE("homomorphism modules") {
    for (const auto& k : catalog()) {
        const auto e = homomorphism_module(identity_homomorphism(k));
        CHECK(check_module_axioms(e.module).passed());
        CHECK(module_iso_search(e.module, regular_module(k)).has_value());
    }

    const auto rel = relation_algebra(2);
    const auto diagonal = homomorphism_module(AlgebraHomomorphism{bool2(), rel, {rel.zero(), rel.one()}});
    CHECK(diagonal.module.size() == 16);
    CHECK(check_module_axioms(diagonal.module).passed());

    const auto scalar = homomorphism_module(scalar_embedding(bool2(), m2(), 2));
    CHECK(scalar.module.size() == 16);
    CHECK(check_module_axioms(scalar.module).passed());
    CHECK(scalar.module.left_algebra().same_as(bool2()));
    CHECK(scalar.module.right_algebra().same_as(m2()));
}

TEST_CASE("E_{g∘f} ≅ E_f ⊗ E_g") {
    const auto k = bool2();
    const auto id = identity_homomorphism(k);
    const auto embed = scalar_embedding(k, m2(), 2);
    CHECK(check_composition_law(id, id).passed());
    CHECK(check_composition_law(id, embed).passed());
    CHECK(check_composition_law(embed, identity_homomorphism(m2())).passed());
    const auto rel = relation_algebra(2);
    CHECK(check_composition_law(AlgebraHomomorphism{k, rel, {rel.zero(), rel.one()}}, identity_homomorphism(rel))
              .passed());
}

TEST_CASE("matrix Morita witnesses") {
    const auto k = bool2();
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        const auto w = matrix_morita_witness(k, n);
        CHECK(w.report.passed());
        CHECK(verify_witness(w).passed());
        std::size_t expected = 1;
        for (int i = 0; i < n * n; ++i) {
            expected *= 2;
        }
        CHECK(w.sk_ks.module.size() == expected);
        CHECK(w.ks_sk.module.size() == 2);
        // The four maps compose to identities elementwise.
        for (Elem x = 0; x < w.sk_ks.module.size(); ++x) {
            CHECK(w.u_inverse[w.u[x]] == x);
        }
        for (Elem x = 0; x < w.other.size(); ++x) {
            CHECK(w.u[w.u_inverse[x]] == x);
        }
        for (Elem x = 0; x < w.ks_sk.module.size(); ++x) {
            CHECK(w.v_inverse[w.v[x]] == x);
        }
        for (Elem x = 0; x < w.base.size(); ++x) {
            CHECK(w.v[w.v_inverse[x]] == x);
        }
    }
}

TEST_CASE("the n = 3 chain is reproduced with the displayed matrices") {
    const auto w = matrix_morita_witness(bool2(), 3);
    for (const auto* law : {"e_i°·ē_i = e_i°", "ē_i·e_i = Σe_j", "1̄·Σe_j = Σe_j", "e_i°·1̄ = Σe_j°",
                            "e_i°⊗e_i = (Σe_j°)⊗(Σe_j) step by step", "e_i°⊗e_i = e_1°⊗e_1"}) {
        const auto* result = w.report.find(law);
        REQUIRE_MESSAGE(result != nullptr, law);
        CHECK(result->holds);
    }
    const std::vector<std::string> displayed = {
        "    (1 0 0) ⊗ (1 0 0)ᵗ",
        "  = (1 0 0)·[[1,0,0],[1,1,1],[1,1,1]] ⊗ (1 0 0)ᵗ",
        "  = (1 0 0) ⊗ [[1,0,0],[1,1,1],[1,1,1]]·(1 0 0)ᵗ",
        "  = (1 0 0) ⊗ (1 1 1)ᵗ",
        "  = (1 0 0) ⊗ [[1,1,1],[1,1,1],[1,1,1]]·(1 1 1)ᵗ",
        "  = (1 0 0)·[[1,1,1],[1,1,1],[1,1,1]] ⊗ (1 1 1)ᵗ",
        "  = (1 1 1) ⊗ (1 1 1)ᵗ",
    };
    const auto& notes = w.report.notes();
    const auto start = std::find(notes.begin(), notes.end(), "chain for i=1:");
    REQUIRE(start != notes.end());
    REQUIRE(std::distance(start, notes.end()) > 7);
    std::set<std::string> classes;
    for (std::size_t s = 0; s < displayed.size(); ++s) {
        const std::string& line = *(start + 1 + static_cast<std::ptrdiff_t>(s));
        CHECK(line.rfind(displayed[s], 0) == 0);
        classes.insert(line.substr(line.find("[class")));
    }
    CHECK(classes.size() == 1);
}

TEST_CASE("lifting along every full idempotent of M2(bool2)") {
    const auto k = bool2();
    for (const Elem e : full_idempotents(m2())) {
        CAPTURE(m2().label(e));
        const auto w = lift_semiring_morita(k, 2, e);
        CHECK(w.report.passed());
        CHECK(verify_witness(w).passed());
        CHECK(w.ks_sk.module.size() == 2);
        CHECK(algebra_iso_search(w.other, corner_algebra(m2(), e).algebra).has_value());
    }
    const auto at_e11 = lift_semiring_morita(k, 2, unit_matrix(2, 0, 0));
    CHECK(at_e11.other.size() == 2);
    CHECK(algebra_iso_search(at_e11.other, k).has_value());
    CHECK(module_iso_search(at_e11.sk_ks.module, regular_module(at_e11.other)).has_value());

    const auto at_one = lift_semiring_morita(k, 2, m2().one());
    CHECK(at_one.sk_ks.module.size() == 16);

    CHECK_THROWS_AS(lift_semiring_morita(k, 2, m2().zero()), PreconditionError);
}

TEST_CASE("lifting along E11 + E22 in M3(bool2)") {
    const auto m3 = matrix_algebra(bool2(), 3);
    const Elem e = m3.add(unit_matrix(3, 0, 0), unit_matrix(3, 1, 1));
    CHECK(is_full_idempotent(m3, e));
    const auto w = lift_semiring_morita(bool2(), 3, e);
    CHECK(w.report.passed());
    CHECK(verify_witness(w).passed());
    CHECK(w.other.size() == 16);
    CHECK(algebra_iso_search(w.other, m2()).has_value());
}

TEST_CASE("module categories are equivalent through the n = 2 witness") {
    const auto k = bool2();
    const auto w = matrix_morita_witness(k, 2);
    const std::vector<KleeneModule> over_k = {regular_module(k, Side::left), free_module(k, 2, Side::left).module};
    const std::vector<KleeneModule> over_m = {regular_module(w.other, Side::left)};
    const auto report = check_category_equivalence(w, over_k, over_m);
    CHECK(report.passed());
    CHECK(report.laws().size() == 3);
}
