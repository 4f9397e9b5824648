#include "kmod/adjunction.hpp"

#include "kmod/constructions.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace kmod {

namespace {

std::string show(const std::vector<Elem>& table) {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << (i ? "," : "") << table[i];
    }
    out << ']';
    return out.str();
}

std::vector<Elem> compose(const std::vector<Elem>& first, const std::vector<Elem>& second) {
    std::vector<Elem> out(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        out[i] = second[first[i]];
    }
    return out;
}

// (α, β) index pairs: all of them, or a seeded sample without repetition.
std::vector<std::pair<std::size_t, std::size_t>> choose_pairs(std::size_t alphas, std::size_t betas,
                                                              const AdjunctionOptions& options) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::size_t total = alphas * betas;
    if (total <= options.max_pairs) {
        for (std::size_t i = 0; i < alphas; ++i) {
            for (std::size_t j = 0; j < betas; ++j) {
                pairs.emplace_back(i, j);
            }
        }
        return pairs;
    }
    std::mt19937_64 rng(options.seed);
    std::vector<std::size_t> picks(total);
    for (std::size_t i = 0; i < total; ++i) {
        picks[i] = i;
    }
    std::shuffle(picks.begin(), picks.end(), rng);
    picks.resize(options.max_pairs);
    std::sort(picks.begin(), picks.end());
    for (std::size_t k : picks) {
        pairs.emplace_back(k / betas, k % betas);
    }
    return pairs;
}

} // namespace

bool is_isomorphism(const KleeneModule& source, const KleeneModule& target, const std::vector<Elem>& map) {
    if (map.size() != source.size() || !is_bijection(map, target.size())) {
        return false;
    }
    const Respect respect = source.has_left() && source.has_right() ? Respect::both
                            : source.has_left()                     ? Respect::left
                                                                    : Respect::right;
    return check_module_homomorphism({source, target, map}, respect).passed();
}

Adjunction::Adjunction(const KleeneModule& m, const KleeneModule& n, const KleeneModule& p, const Limits& limits)
    : m_(m), n_(n), p_(p), tensor_(tensor_product(m, n, TensorPath::automatic, limits)),
      inner_(hom_module(n, p, Respect::right, limits)) {
    tensor_homs_ = enumerate_homs(tensor_.module, p_, Respect::both, limits);
    curried_homs_ = enumerate_homs(m_, inner_.module, Respect::both, limits);
}

std::vector<Elem> Adjunction::curry(const std::vector<Elem>& phi) const {
    std::vector<Elem> out(m_.size());
    std::vector<Elem> slice(n_.size());
    for (Elem x = 0; x < m_.size(); ++x) {
        for (Elem y = 0; y < n_.size(); ++y) {
            slice[y] = phi[tensor_.pure_tensor(x, y)];
        }
        const auto idx = inner_.index_of(slice);
        if (!idx) {
            throw PreconditionError("curried slice at m=" + m_.label(x) + " is not a homomorphism");
        }
        out[x] = *idx;
    }
    return out;
}

std::optional<std::vector<Elem>> Adjunction::uncurry(const std::vector<Elem>& psi) const {
    return induced_map(tensor_, p_, [&](Elem x, Elem y) { return inner_.map(psi[x])[y]; });
}

Report check_adjunction(const KleeneModule& m, const KleeneModule& n, const KleeneModule& p,
                        const std::optional<KleeneModule>& m_prime, const std::optional<KleeneModule>& p_prime,
                        const AdjunctionOptions& options, const Limits& limits) {
    Report report("adjunction Hom(" + m.name() + "⊗" + n.name() + ", " + p.name() + ")");
    const Adjunction adj(m, n, p, limits);
    const auto& homs = adj.tensor_homs();
    const auto& curried = adj.curried_homs();
    report.note("tensor: " + std::to_string(adj.tensor().module.size()) + " elements (" +
                to_string(adj.tensor().path) + ")");
    report.note("|Hom(M⊗N, P)| = " + std::to_string(homs.size()) + ", |Hom(M, Hom(N, P))| = " +
                std::to_string(curried.size()));

    auto& sizes = report.law("hom sets have equal size");
    sizes.record(homs.size() == curried.size(), [&] {
        return std::to_string(homs.size()) + " vs " + std::to_string(curried.size());
    });

    std::vector<std::vector<Elem>> curry_of;
    curry_of.reserve(homs.size());
    auto& lands = report.law("curry(φ) is a bimodule homomorphism");
    auto& inverse1 = report.law("uncurry(curry(φ)) = φ");
    for (const auto& phi : homs) {
        auto c = adj.curry(phi);
        lands.record(std::binary_search(curried.begin(), curried.end(), c), [&] { return "φ=" + show(phi); });
        const auto back = adj.uncurry(c);
        inverse1.record(back && *back == phi, [&] { return "φ=" + show(phi); });
        curry_of.push_back(std::move(c));
    }
    auto& inverse2 = report.law("curry(uncurry(ψ)) = ψ");
    for (const auto& psi : curried) {
        const auto back = adj.uncurry(psi);
        const bool ok = back && std::binary_search(homs.begin(), homs.end(), *back) && adj.curry(*back) == psi;
        inverse2.record(ok, [&] { return "ψ=" + show(psi); });
    }

    // Naturality in the first variable: curry(φ∘(α⊗id)) = curry(φ)∘α.
    const KleeneModule mp = m_prime.value_or(m);
    const KleeneModule pp = p_prime.value_or(p);
    const auto alphas = enumerate_homs(mp, m, Respect::both, limits);
    const auto betas = enumerate_homs(p, pp, Respect::both, limits);
    const Adjunction adj_m(mp, n, p, limits);
    const Adjunction adj_p(m, n, pp, limits);
    std::vector<Elem> id_n(n.size());
    for (Elem y = 0; y < n.size(); ++y) {
        id_n[y] = y;
    }
    const auto pairs = choose_pairs(alphas.size(), betas.size(), options);
    report.note("naturality pairs: " + std::to_string(pairs.size()) + " of " +
                std::to_string(alphas.size() * betas.size()) + (pairs.size() < alphas.size() * betas.size()
                                                                     ? " (sampled, seed " + std::to_string(options.seed) + ")"
                                                                     : ""));
    std::vector<std::optional<std::vector<Elem>>> alpha_tensor(alphas.size());
    auto& square1 = report.law("naturality in M: curry(φ∘(α⊗1)) = curry(φ)∘α");
    auto& square2 = report.law("naturality in P: curry(β∘φ) = β_*∘curry(φ)");
    auto& welldef = report.law("α⊗1 is well defined");
    for (const auto& [ai, bi] : pairs) {
        const auto& alpha = alphas[ai];
        const auto& beta = betas[bi];
        if (!alpha_tensor[ai]) {
            alpha_tensor[ai] = tensor_morphism(adj_m.tensor(), adj.tensor(), alpha, id_n);
            welldef.record(alpha_tensor[ai].has_value(), [&] { return "α=" + show(alpha); });
            if (!alpha_tensor[ai]) {
                alpha_tensor[ai] = std::vector<Elem>{};
            }
        }
        const auto& alpha_x = *alpha_tensor[ai];
        for (std::size_t f = 0; f < homs.size(); ++f) {
            const auto& phi = homs[f];
            if (!alpha_x.empty()) {
                const auto lhs = adj_m.curry(compose(alpha_x, phi));
                const auto rhs = compose(alpha, curry_of[f]);
                square1.record(lhs == rhs, [&] { return "α=" + show(alpha) + ", φ=" + show(phi); });
            }
            // β_* acts on Hom(N, P) by post-composition; compare in Hom(N, P').
            const auto lhs = adj_p.curry(compose(phi, beta));
            bool ok = true;
            for (Elem x = 0; x < m.size() && ok; ++x) {
                const auto pushed = compose(adj.inner().map(curry_of[f][x]), beta);
                ok = adj_p.inner().map(lhs[x]) == pushed;
            }
            square2.record(ok, [&] { return "β=" + show(beta) + ", φ=" + show(phi); });
        }
    }
    return report;
}

Report check_monoid_laws(const KleeneModule& m, const KleeneModule& n, const KleeneModule& p, const Limits& limits) {
    Report report("monoid laws for " + m.name() + ", " + n.name() + ", " + p.name());

    const auto mn = tensor_product(m, n, TensorPath::automatic, limits);
    const auto np = tensor_product(n, p, TensorPath::automatic, limits);
    const auto left = tensor_product(mn.module, p, TensorPath::automatic, limits);
    const auto right = tensor_product(m, np.module, TensorPath::automatic, limits);
    report.note("(M⊗N)⊗P: " + std::to_string(left.module.size()) + " elements, M⊗(N⊗P): " +
                std::to_string(right.module.size()) + " elements");

    // For each p, (m,n) ↦ m⊗(n⊗p) induces M⊗N → M⊗(N⊗P); then fold over p.
    auto& assoc = report.law("associator (m⊗n)⊗p ↦ m⊗(n⊗p) is an isomorphism");
    std::vector<std::vector<Elem>> slices;
    bool defined = true;
    for (Elem z = 0; z < p.size() && defined; ++z) {
        auto slice = induced_map(mn, right.module,
                                 [&](Elem x, Elem y) { return right.pure_tensor(x, np.pure_tensor(y, z)); });
        defined = slice.has_value();
        if (slice) {
            slices.push_back(std::move(*slice));
        }
    }
    std::optional<std::vector<Elem>> associator;
    if (defined) {
        associator = induced_map(left, right.module, [&](Elem t, Elem z) { return slices[z][t]; });
    }
    assoc.record(associator && is_isomorphism(left.module, right.module, *associator),
                 [&] { return associator ? std::string("not a bimodule isomorphism") : std::string("not well defined"); });
    auto& assoc_iso = report.law("associativity certified by iso search");
    assoc_iso.record(module_iso_search(left.module, right.module).has_value(), [] { return "no isomorphism"; });

    auto unit_law = [&](const KleeneModule& mod, bool on_left) {
        const KleeneAlgebra& k = on_left ? mod.left_algebra() : mod.right_algebra();
        const auto reg = regular_module(k);
        const auto t = on_left ? tensor_product(reg, mod, TensorPath::automatic, limits)
                               : tensor_product(mod, reg, TensorPath::automatic, limits);
        std::vector<Elem> unit(mod.size());
        for (Elem x = 0; x < mod.size(); ++x) {
            unit[x] = on_left ? t.pure_tensor(k.one(), x) : t.pure_tensor(x, k.one());
        }
        const std::string name = on_left ? "m ↦ 1⊗m" : "m ↦ m⊗1";
        auto& law = report.law(name + " is an isomorphism onto " + (on_left ? k.name() + "⊗" + mod.name()
                                                                             : mod.name() + "⊗" + k.name()));
        law.record(is_isomorphism(mod, t.module, unit), [] { return "not a bimodule isomorphism"; });
        auto& inverse = report.law(name + " has inverse " + (on_left ? "a⊗m ↦ am" : "m⊗b ↦ mb"));
        const auto back = induced_map(t, mod, [&](Elem x, Elem y) {
            return on_left ? mod.act_left(x, y) : mod.act_right(x, y);
        });
        bool ok = back.has_value();
        for (Elem x = 0; ok && x < mod.size(); ++x) {
            ok = (*back)[unit[x]] == x;
        }
        inverse.record(ok, [] { return "composite is not the identity"; });
    };
    unit_law(m, true);
    unit_law(m, false);
    return report;
}

} // namespace kmod
