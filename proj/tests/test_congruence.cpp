#include <doctest.h>

#include <random>

#include "kmod/builtins.hpp"
#include "kmod/congruence.hpp"
#include "kmod/constructions.hpp"
#include "support.hpp"

using namespace kmod;

namespace {

// Partition as class ids in first-occurrence order, for comparison.
oracle::Table normalize(const std::vector<Elem>& representative) {
    oracle::Table out(representative.size());
    std::vector<Elem> seen;
    for (std::size_t x = 0; x < representative.size(); ++x) {
        const auto it = std::find(seen.begin(), seen.end(), representative[x]);
        if (it == seen.end()) {
            out[x] = static_cast<std::uint32_t>(seen.size());
            seen.push_back(representative[x]);
        } else {
            out[x] = static_cast<std::uint32_t>(it - seen.begin());
        }
    }
    return out;
}

std::vector<std::vector<ElemPair>> pair_sets(Elem n, std::mt19937& rng) {
    std::vector<std::vector<ElemPair>> sets = {{}};
    for (Elem x = 0; x < n; ++x) {
        for (Elem y = x + 1; y < n; ++y) {
            sets.push_back({{x, y}});
        }
    }
    std::uniform_int_distribution<Elem> pick(0, n - 1);
    for (int i = 0; i < 4; ++i) {
        sets.push_back({{pick(rng), pick(rng)}, {pick(rng), pick(rng)}});
    }
    return sets;
}

} // namespace

TEST_CASE("empty generators give the identity partition") {
    const auto m = free_module(bool2(), 2, Side::left).module;
    const auto c = congruence_closure(m, {});
    CHECK(c.congruence.class_count() == m.size());
    for (Elem x = 0; x < m.size(); ++x) {
        CHECK(c.congruence.partition[x] == x);
    }
}

TEST_CASE("identifying the top of bool2 with zero collapses everything") {
    const auto reg = regular_module(bool2());
    const std::vector<ElemPair> pairs = {{1, 0}};
    const auto c = congruence_closure(reg, pairs);
    CHECK(c.congruence.class_count() == 1);
    const auto expected = oracle::least_congruence(support::tables(bool2()), support::left_tables(reg), {{1, 0}});
    REQUIRE(expected.has_value());
    CHECK(normalize(c.congruence.partition) == *expected);
}

TEST_CASE("closure equals the least law-abiding congruence on every module with at most 4 elements") {
    std::mt19937 rng(2024);
    std::size_t modules_checked = 0;
    for (const auto& k : {bool2(), support::chain3(), support::dual_numbers()}) {
        const auto ka = support::tables(k);
        for (std::uint32_t n = 1; n <= 4; ++n) {
            for (const auto& m : support::all_left_modules(k, n)) {
                ++modules_checked;
                const auto mt = support::left_tables(m);
                for (const auto& pairs : pair_sets(n, rng)) {
                    const auto got = congruence_closure(m, pairs);
                    const auto expected = oracle::least_congruence(ka, mt, pairs);
                    CAPTURE(m.name());
                    REQUIRE(expected.has_value());
                    CHECK(normalize(got.congruence.partition) == *expected);
                    CHECK(is_congruence(m, got.congruence.partition));
                    CHECK(got.trace.repairs == 0);
                }
            }
        }
    }
    CHECK(modules_checked > 50);
}

TEST_CASE("closure is idempotent") {
    std::mt19937 rng(5);
    const auto m = regular_module(relation_algebra(2), Side::left);
    std::uniform_int_distribution<Elem> pick(0, m.size() - 1);
    for (int trial = 0; trial < 30; ++trial) {
        const std::vector<ElemPair> pairs = {{pick(rng), pick(rng)}};
        const auto once = congruence_closure(m, pairs);
        std::vector<ElemPair> again;
        for (Elem x = 0; x < m.size(); ++x) {
            again.emplace_back(x, once.congruence.partition[x]);
        }
        const auto twice = congruence_closure(m, again);
        CHECK(twice.congruence.partition == once.congruence.partition);
    }
}

TEST_CASE("quotients of random bimodules stay Kleene modules without repair") {
    std::mt19937 rng(17);
    const auto m = free_module(relation_algebra(2), 1, Side::bi).module;
    std::uniform_int_distribution<Elem> pick(0, m.size() - 1);
    for (int trial = 0; trial < 25; ++trial) {
        const std::vector<ElemPair> pairs = {{pick(rng), pick(rng)}};
        const auto q = quotient_module(m, pairs);
        CHECK(q.congruence.trace.repairs == 0);
        CHECK(check_module_axioms(q.module).passed());
        for (Elem x = 0; x < m.size(); ++x) {
            for (Elem y = 0; y < m.size(); ++y) {
                CHECK(q.projection[m.add(x, y)] == q.module.add(q.projection[x], q.projection[y]));
            }
        }
    }
}
