// Acceptance runner: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "kmod/adjunction.hpp"
#include "kmod/builtins.hpp"
#include "kmod/cli.hpp"
#include "kmod/congruence.hpp"
#include "kmod/constructions.hpp"
#include "kmod/hom.hpp"
#include "kmod/matrix.hpp"
#include "kmod/morita.hpp"
#include "kmod/structure_file.hpp"
#include "kmod/tensor.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace kmod;

namespace {

// Collects failed checks for one criterion.
class Checks {
  public:
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            failures_.push_back(what);
        }
    }
    [[nodiscard]] bool ok() const { return failures_.empty(); }
    [[nodiscard]] std::string summary() const {
        std::string out;
        for (std::size_t i = 0; i < failures_.size() && i < 3; ++i) {
            out += (i ? "; " : "") + failures_[i];
        }
        if (failures_.size() > 3) {
            out += "; ... (" + std::to_string(failures_.size()) + " failures)";
        }
        return out;
    }

  private:
    std::vector<std::string> failures_;
};

std::string data(const std::string& file) { return std::string(KMOD_DATA_DIR) + "/" + file; }

const KleeneAlgebra& m2() {
    static const auto m = matrix_algebra(bool2(), 2);
    return m;
}

Elem unit_matrix(int n, int i, int j) { return MatrixElement::unit(bool2(), n, i, j).index(MatrixCodec(bool2(), n)); }

std::string counterexample(const Report& r, const std::string& law) {
    const auto* result = r.find(law);
    return result ? result->counterexample : "<law missing>";
}

void axiom_suite(Checks& c) {
    for (const auto& k : {bool2(), relation_algebra(1), relation_algebra(2), m2()}) {
        const auto r = check_kleene_axioms(k);
        c.expect(r.passed(), k.name() + " axioms");
        c.expect(oracle::is_kleene_algebra(support::tables(k)), k.name() + " oracle");
        const auto expected = std::uint64_t{k.size()} * k.size() * k.size();
        for (const auto* law : {"star induction b + a·x <= x => a*·b <= x", "star induction b + x·a <= x => b·a* <= x"}) {
            const auto* result = r.find(law);
            c.expect(result && result->cases == expected, k.name() + " all triples of " + law);
        }
    }
    const auto bad = load_structure_file(data("bool2_bad_star.ks"));
    const auto r = check_kleene_axioms(bad.algebras.begin()->second);
    c.expect(!r.passed(), "corrupted star rejected");
    c.expect(counterexample(r, "star unrolling 1 + a·a* <= a*") == "a=0", "corrupted star counterexample a=0");
}

void module_suite(Checks& c) {
    for (const auto& k : {bool2(), relation_algebra(1), relation_algebra(2), m2()}) {
        const std::vector<Elem> units = {k.zero(), k.one()};
        std::vector<Elem> everything(k.size());
        for (Elem x = 0; x < k.size(); ++x) {
            everything[x] = x;
        }
        const auto reg = regular_module(k);
        const auto f1 = free_module(k, 1, Side::bi).module;
        const auto f2 = free_module(k, 2, Side::left).module;
        const std::vector<ElemPair> glue = {{k.zero(), k.size() - 1}};
        const std::vector<KleeneModule> built = {
            algebra_as_bimodule(k, everything),
            algebra_as_bimodule(k, units),
            submodule_generated(k, std::vector<Elem>{k.size() - 1}, Side::left),
            submodule_generated(k, std::vector<Elem>{k.one()}, Side::right),
            f1,
            f2,
            hom_module(f1, reg, Respect::right).module,
            hom_module(f2, reg, Respect::left).module,
            dual_module(f1, Respect::right).module,
            dual_module(f2).module,
            quotient_module(reg, glue).module,
            quotient_module(f2, std::vector<ElemPair>{{1, 2}}).module,
            homomorphism_module(identity_homomorphism(k)).module,
            homomorphism_module(AlgebraHomomorphism{bool2(), k, {k.zero(), k.one()}}).module,
            tensor_product(reg, reg).module,
            tensor_product(f1, dual_module(f1, Respect::right).module).module,
        };
        for (const auto& m : built) {
            c.expect(check_module_axioms(m).passed(), k.name() + ": " + m.name());
            if (m.has_left()) {
                c.expect(oracle::is_kleene_module(support::tables(m.left_algebra()), support::left_tables(m)),
                         k.name() + ": oracle on " + m.name());
            }
        }
    }
    const auto fixture = load_structure_file(data("dual_numbers.ks"));
    const auto r = check_module_axioms(fixture.modules.at("D_corrupt"));
    c.expect(!r.passed(), "corrupted action rejected");
    c.expect(counterexample(r, "left quasi-identity am <= m => a*m <= m") == "a=2, m=#1",
             "corrupted action names a=2, m=#1, got '" + counterexample(r, "left quasi-identity am <= m => a*m <= m") + "'");
}

void freeness(Checks& c) {
    const auto k = bool2();
    for (std::size_t rank = 1; rank <= 2; ++rank) {
        const auto source = free_module(k, rank, Side::left).module;
        for (const auto& target : {regular_module(k, Side::left), free_module(k, 2, Side::left).module}) {
            std::size_t expected = 1;
            for (std::size_t i = 0; i < rank; ++i) {
                expected *= target.size();
            }
            const auto homs = enumerate_homs(source, target, Respect::left);
            const auto brute = oracle::count_homs(support::tables(k), support::left_tables(source),
                                                  support::left_tables(target));
            c.expect(homs.size() == expected, "|Hom(K^" + std::to_string(rank) + ", " + target.name() + ")|");
            c.expect(brute == expected, "brute-force count for rank " + std::to_string(rank));
        }
    }
}

void tensor_correctness(Checks& c) {
    const auto k = bool2();
    const auto f1 = free_module(k, 1, Side::bi).module;
    const auto f2 = free_module(k, 2, Side::bi).module;
    const auto d1 = dual_module(f1, Respect::right).module;
    const auto d2 = dual_module(f2, Respect::right).module;
    const std::vector<std::pair<KleeneModule, KleeneModule>> cases = {{f1, f1}, {f2, d2}};
    for (const auto& [m, n] : cases) {
        const auto fast = tensor_product(m, n, TensorPath::fast);
        const auto slow = tensor_product(m, n, TensorPath::exhaustive);
        const auto map = induced_map(slow, fast.module, [&](Elem x, Elem y) { return fast.pure_tensor(x, y); });
        c.expect(map && is_isomorphism(slow.module, fast.module, *map), m.name() + "⊗" + n.name() + " certificate");
    }
    c.expect(tensor_product(f2, d2).module.size() == 16, "K^2⊗K^2° has 16 elements");

    const auto reg = regular_module(k);
    AdjunctionOptions all_pairs;
    all_pairs.max_pairs = 1u << 20;
    for (const auto& [m, n, p] : std::vector<std::tuple<KleeneModule, KleeneModule, KleeneModule>>{
             {reg, reg, reg}, {f2, reg, reg}, {reg, f2, f2}, {f1, d1, f2}}) {
        const auto r = check_adjunction(m, n, p, std::nullopt, std::nullopt, all_pairs);
        c.expect(r.passed(), "adjunction " + m.name() + ", " + n.name() + ", " + p.name());
        for (const auto& note : r.notes()) {
            c.expect(note.find("sampled") == std::string::npos, "adjunction pairs were sampled");
        }
    }
    c.expect(check_monoid_laws(reg, reg, reg).passed(), "monoid laws on the regular bimodule");
    c.expect(check_monoid_laws(f2, d2, f2).passed(), "monoid laws on K^2, K^2°, K^2");
    c.expect(check_monoid_laws(regular_module(k), f2, reg).passed(), "identity law on K^2");
}

void matrix_morita(Checks& c) {
    const auto k = bool2();
    for (int n = 1; n <= 3; ++n) {
        const auto w = matrix_morita_witness(k, n);
        const std::string tag = "n=" + std::to_string(n);
        c.expect(w.report.passed(), tag + " witness report");
        c.expect(verify_witness(w).passed(), tag + " verify");
        for (Elem x = 0; x < w.sk_ks.module.size(); ++x) {
            c.expect(w.u_inverse[w.u[x]] == x, tag + " ψ∘φ");
        }
        for (Elem x = 0; x < w.other.size(); ++x) {
            c.expect(w.u[w.u_inverse[x]] == x, tag + " φ∘ψ");
        }
        for (Elem x = 0; x < w.ks_sk.module.size(); ++x) {
            c.expect(w.v_inverse[w.v[x]] == x, tag + " β∘α");
        }
        for (Elem x = 0; x < w.base.size(); ++x) {
            c.expect(w.v[w.v_inverse[x]] == x, tag + " α∘β");
        }
        if (n == 2) {
            c.expect(w.sk_ks.module.size() == 16, "K^2⊗K^2° has 16 elements");
        }
        if (n == 3) {
            for (const auto* law : {"e_i°·ē_i = e_i°", "ē_i·e_i = Σe_j", "1̄·Σe_j = Σe_j", "e_i°·1̄ = Σe_j°",
                                    "e_i°⊗e_i = (Σe_j°)⊗(Σe_j) step by step"}) {
                const auto* result = w.report.find(law);
                c.expect(result && result->holds, law);
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
            const bool room = start != notes.end() && std::distance(start, notes.end()) > 7;
            c.expect(room, "chain present");
            for (std::size_t s = 0; room && s < displayed.size(); ++s) {
                c.expect((start + 1 + static_cast<std::ptrdiff_t>(s))->rfind(displayed[s], 0) == 0,
                         "chain step " + std::to_string(s));
            }
        }
    }
}

void full_idempotents_and_lift(Checks& c) {
    const auto& m = m2();
    const auto full = full_idempotents(m);
    auto is_listed = [&](Elem e) { return std::find(full.begin(), full.end(), e) != full.end(); };
    c.expect(is_listed(m.one()), "1 is full");
    c.expect(is_listed(unit_matrix(2, 0, 0)), "E11 is full");
    c.expect(!is_listed(m.zero()), "0 is not full");
    for (const Elem e : full) {
        const auto w = lift_semiring_morita(bool2(), 2, e);
        c.expect(w.report.passed() && verify_witness(w).passed(), "lift at " + m.label(e));
    }
    const auto corner = corner_algebra(m, unit_matrix(2, 0, 0));
    c.expect(algebra_iso_search(corner.algebra, bool2()).has_value(), "corner at E11 ≅ bool2");
}

void composition_law(Checks& c) {
    const auto k = bool2();
    const auto id = identity_homomorphism(k);
    const auto embed = scalar_embedding(k, m2(), 2);
    c.expect(check_composition_law(id, id).passed(), "id, id");
    c.expect(check_composition_law(id, embed).passed(), "id, scalar embedding");
    c.expect(check_composition_law(embed, identity_homomorphism(m2())).passed(), "scalar embedding, id");
}

oracle::Table normalize(const std::vector<Elem>& representative) {
    oracle::Table out(representative.size());
    std::vector<Elem> seen;
    for (std::size_t x = 0; x < representative.size(); ++x) {
        const auto it = std::find(seen.begin(), seen.end(), representative[x]);
        out[x] = static_cast<std::uint32_t>(it - seen.begin());
        if (it == seen.end()) {
            seen.push_back(representative[x]);
        }
    }
    return out;
}

void congruence_minimality(Checks& c) {
    std::size_t modules = 0;
    for (const auto& k : {bool2(), support::chain3(), support::dual_numbers()}) {
        const auto ka = support::tables(k);
        for (std::uint32_t n = 1; n <= 4; ++n) {
            for (const auto& m : support::all_left_modules(k, n)) {
                ++modules;
                const auto mt = support::left_tables(m);
                std::vector<std::vector<ElemPair>> sets = {{}};
                for (Elem x = 0; x < n; ++x) {
                    for (Elem y = x + 1; y < n; ++y) {
                        sets.push_back({{x, y}});
                        for (Elem z = y; z < n; ++z) {
                            sets.push_back({{x, y}, {y, z}});
                        }
                    }
                }
                for (const auto& pairs : sets) {
                    const auto got = congruence_closure(m, pairs);
                    const auto expected = oracle::least_congruence(ka, mt, pairs);
                    c.expect(expected && normalize(got.congruence.partition) == *expected,
                             "closure on " + m.name() + " over " + k.name());
                }
            }
        }
    }
    c.expect(modules > 50, "module enumeration");
}

void category_equivalence(Checks& c) {
    const auto k = bool2();
    const auto w = matrix_morita_witness(k, 2);
    const std::vector<KleeneModule> over_k = {regular_module(k, Side::left), free_module(k, 2, Side::left).module};
    const std::vector<KleeneModule> over_m = {regular_module(w.other, Side::left)};
    const auto r = check_category_equivalence(w, over_k, over_m);
    c.expect(r.passed(), "round trips");
    c.expect(r.laws().size() == 3, "three sample modules checked");
}

void cli_determinism(Checks& c) {
    const auto dir = std::filesystem::temp_directory_path() / "kmod_acceptance";
    std::filesystem::create_directories(dir);
    const std::vector<std::vector<std::string>> commands = {
        {"ka", "check", data("bool2.ks")},
        {"ka", "check", data("bool2_bad_star.ks")},
        {"ka", "star", "rel(2)"},
        {"module", "check", data("dual_numbers.ks") + ":D_corrupt"},
        {"module", "free", "bool2", "2", "--side", "bi"},
        {"module", "dual", "free(bool2,2)"},
        {"module", "hom", "free(bool2,2,bi)", "bool2"},
        {"module", "quotient", "free(bool2,2)", "--pair", "1,2"},
        {"module", "iso", "free(bool2,1)", "regular(bool2,left)"},
        {"tensor", "free(bool2,2,bi)", "dual(free(bool2,2,bi),right)"},
        {"tensor", "adjunction", "bool2", "free(bool2,2,bi)", "free(bool2,2,bi)", "--max-pairs", "20"},
        {"tensor", "laws", "bool2", "bool2", "bool2"},
        {"morita", "matrix", "bool2", "3"},
        {"morita", "lift", "bool2", "2", "--idempotent", "E11"},
        {"morita", "full-idempotents", "M2(bool2)"},
        {"morita", "corner", "bool2", "2", "--idempotent", "E11", "--compare", "bool2"},
        {"morita", "hom-module", "unit(rel(2))"},
        {"morita", "compose-law", "id(bool2)", "scalar(bool2,2)"},
    };
    int index = 0;
    for (auto args : commands) {
        const auto path = (dir / ("c" + std::to_string(index++) + ".ks")).string();
        std::filesystem::remove(path);
        args.insert(args.end(), {"--seed", "11", "--emit", path});
        std::ostringstream out1, out2, err;
        const int first = run_command(args, out1, err);
        const int second = run_command(args, out2, err);
        const std::string name = args[0] + " " + args[1];
        c.expect(first != exit_error, name + " ran");
        c.expect(first == second && out1.str() == out2.str(), name + " byte-identical");
        if (std::filesystem::exists(path)) {
            std::ostringstream vout;
            const int verified = run_command({"verify", path}, vout, err);
            c.expect(verified == first, name + " emitted file re-verifies");
        }
    }
    std::ostringstream out, err;
    const auto witness = (dir / "witness.ks").string();
    run_command({"morita", "matrix", "bool2", "2", "--emit", witness}, out, err);
    c.expect(run_command({"verify", witness}, out, err) == exit_pass, "matrix witness file verifies");
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Checks&)>>> criteria = {
        {"axiom suite", axiom_suite},
        {"module quasi-identity", module_suite},
        {"freeness", freeness},
        {"tensor correctness", tensor_correctness},
        {"matrix Morita", matrix_morita},
        {"full idempotents and lift", full_idempotents_and_lift},
        {"homomorphism-module law", composition_law},
        {"congruence minimality", congruence_minimality},
        {"category equivalence", category_equivalence},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Checks checks;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(checks);
        } catch (const std::exception& e) {
            checks.expect(false, std::string("exception: ") + e.what());
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        std::cout << (checks.ok() ? "[PASS]" : "[FAIL]") << " criterion " << i + 1 << " " << criteria[i].first << " ("
                  << ms << " ms)";
        if (!checks.ok()) {
            ++failed;
            std::cout << ": " << checks.summary();
        }
        std::cout << '\n';
    }
    return failed == 0 ? 0 : 1;
}
