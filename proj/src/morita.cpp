#include "kmod/morita.hpp"

#include "kmod/adjunction.hpp"
#include "kmod/constructions.hpp"
#include "kmod/matrix.hpp"

#include <algorithm>
#include <deque>

namespace kmod {

namespace {

void require_idempotent(const KleeneAlgebra& algebra, Elem e) {
    if (e >= algebra.size()) {
        throw ValidationError("element " + std::to_string(e) + " is outside '" + algebra.name() + "'");
    }
    if (algebra.mul(e, e) != e) {
        throw PreconditionError(algebra.label(e) + " is not idempotent in '" + algebra.name() + "'");
    }
}

void require_enumerable(const KleeneAlgebra& algebra) {
    if (algebra.size() > kModuleTableLimit) {
        throw SizeGuardError("'" + algebra.name() + "' is too large to scan");
    }
}

std::vector<Elem> inverse_or_empty(const std::vector<Elem>& map, Elem size) {
    return is_bijection(map, size) ? inverse_map(map) : std::vector<Elem>{};
}

} // namespace

std::string row_string(const KleeneAlgebra& k, const std::vector<Elem>& coords) {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        s += (i ? " " : "") + k.label(coords[i]);
    }
    return s + ")";
}

std::string column_string(const KleeneAlgebra& k, const std::vector<Elem>& coords) {
    return row_string(k, coords) + "ᵗ";
}

bool is_full_idempotent(const KleeneAlgebra& algebra, Elem e) {
    require_idempotent(algebra, e);
    require_enumerable(algebra);
    std::vector<bool> in(algebra.size(), false);
    std::vector<Elem> members;
    std::deque<Elem> queue;
    auto admit = [&](Elem x) {
        if (!in[x]) {
            in[x] = true;
            members.push_back(x);
            queue.push_back(x);
        }
    };
    admit(algebra.zero());
    for (Elem x = 0; x < algebra.size(); ++x) {
        const Elem xe = algebra.mul(x, e);
        for (Elem y = 0; y < algebra.size(); ++y) {
            admit(algebra.mul(xe, y));
        }
    }
    while (!queue.empty()) {
        const Elem x = queue.front();
        queue.pop_front();
        const std::size_t count = members.size();
        for (std::size_t i = 0; i < count; ++i) {
            admit(algebra.add(x, members[i]));
        }
    }
    return members.size() == algebra.size();
}

std::vector<Elem> idempotents(const KleeneAlgebra& algebra) {
    require_enumerable(algebra);
    std::vector<Elem> out;
    for (Elem x = 0; x < algebra.size(); ++x) {
        if (algebra.mul(x, x) == x) {
            out.push_back(x);
        }
    }
    return out;
}

std::vector<Elem> full_idempotents(const KleeneAlgebra& algebra) {
    std::vector<Elem> out;
    for (Elem e : idempotents(algebra)) {
        if (is_full_idempotent(algebra, e)) {
            out.push_back(e);
        }
    }
    return out;
}

CornerAlgebra corner_algebra(const KleeneAlgebra& parent, Elem e) {
    require_idempotent(parent, e);
    require_enumerable(parent);
    std::vector<Elem> members;
    for (Elem x = 0; x < parent.size(); ++x) {
        members.push_back(parent.mul(parent.mul(e, x), e));
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    constexpr Elem kNone = static_cast<Elem>(-1);
    std::vector<Elem> position(parent.size(), kNone);
    for (std::size_t i = 0; i < members.size(); ++i) {
        position[members[i]] = static_cast<Elem>(i);
    }
    const auto n = static_cast<Elem>(members.size());
    auto at = [&](Elem x) {
        if (position[x] == kNone) {
            throw CornerStarError("corner at " + parent.label(e) + " is not closed");
        }
        return position[x];
    };
    std::vector<Elem> add(std::size_t{n} * n), mul(std::size_t{n} * n), star(n);
    for (Elem i = 0; i < n; ++i) {
        for (Elem j = 0; j < n; ++j) {
            add[i * n + j] = at(parent.add(members[i], members[j]));
            mul[i * n + j] = at(parent.mul(members[i], members[j]));
        }
        star[i] = at(parent.mul(parent.mul(e, parent.star(members[i])), e));
    }
    auto algebra = KleeneAlgebra::from_tables(parent.name() + "[" + parent.label(e) + "]", n, at(parent.zero()), at(e),
                                              std::move(add), std::move(mul), std::move(star),
                                              [parent, members](Elem x) { return parent.label(members[x]); });
    const auto report = check_kleene_axioms(algebra);
    if (const auto* failure = report.first_failure()) {
        throw CornerStarError("corner at " + parent.label(e) + " violates '" + failure->law + "' at " +
                              failure->counterexample);
    }
    return {std::move(algebra), std::move(members), e};
}

HomomorphismModule homomorphism_module(const AlgebraHomomorphism& h) {
    h.validate();
    const auto check = check_algebra_homomorphism(h);
    if (!check.passed()) {
        throw PreconditionError("not an algebra homomorphism: " + check.first_failure()->law);
    }
    const auto& a = h.source;
    const auto& b = h.target;
    if (b.size() > kModuleTableLimit) {
        throw SizeGuardError("'" + b.name() + "' is too large for a homomorphism module");
    }
    auto regular = regular_module(b).parts();
    std::vector<Elem> left(std::size_t{a.size()} * b.size());
    for (Elem x = 0; x < a.size(); ++x) {
        for (Elem y = 0; y < b.size(); ++y) {
            left[x * b.size() + y] = b.mul(h(x), y);
        }
    }
    regular.name = "E(" + a.name() + "->" + b.name() + ")";
    regular.left = ScalarAction{a, std::move(left)};
    regular.left_basis.reset();
    if (is_bijection(h.map, b.size())) {
        const auto inverse = inverse_map(h.map);
        regular.left_basis = FreeBasis{{b.one()}, inverse};
    }
    return {KleeneModule::make(std::move(regular)), h};
}

Report check_composition_law(const AlgebraHomomorphism& f, const AlgebraHomomorphism& g, const Limits& limits) {
    if (!f.target.same_as(g.source)) {
        throw AlgebraMismatchError("homomorphisms are not composable");
    }
    const auto gf = compose(f, g);
    const auto ef = homomorphism_module(f);
    const auto eg = homomorphism_module(g);
    const auto egf = homomorphism_module(gf);
    Report report("composition law E(g∘f) ≅ E(f)⊗E(g) for f: " + f.source.name() + "->" + f.target.name() +
                  ", g: " + g.source.name() + "->" + g.target.name());
    report.absorb(check_module_axioms(ef.module), "E(f): ");
    report.absorb(check_module_axioms(eg.module), "E(g): ");
    report.absorb(check_module_axioms(egf.module), "E(g∘f): ");

    const auto t = tensor_product(ef.module, eg.module, TensorPath::automatic, limits);
    report.absorb(check_module_axioms(t.module), "E(f)⊗E(g): ");
    report.note("E(f)⊗E(g): " + std::to_string(t.module.size()) + " elements (" + to_string(t.path) + ")");
    const auto& c = g.target;
    const auto& b = f.target;

    std::vector<Elem> phi(c.size());
    for (Elem z = 0; z < c.size(); ++z) {
        phi[z] = t.pure_tensor(b.one(), z);
    }
    auto& phi_hom = report.law("φ(c) = 1⊗c is a bimodule homomorphism");
    phi_hom.record(check_module_homomorphism({egf.module, t.module, phi}, Respect::both).passed(),
                   [] { return "φ fails an operation"; });

    const auto psi = induced_map(t, egf.module, [&](Elem x, Elem z) { return c.mul(g(x), z); });
    auto& psi_def = report.law("ψ(b⊗c) = g(b)·c is well defined");
    psi_def.record(psi.has_value(), [] { return "values on pure tensors do not extend"; });
    if (psi) {
        auto& psi_hom = report.law("ψ is a bimodule homomorphism");
        psi_hom.record(check_module_homomorphism({t.module, egf.module, *psi}, Respect::both).passed(),
                       [] { return "ψ fails an operation"; });
        auto& left_inv = report.law("ψ∘φ = id");
        for (Elem z = 0; z < c.size(); ++z) {
            left_inv.record((*psi)[phi[z]] == z, [&] { return "c=" + c.label(z); });
        }
        auto& right_inv = report.law("φ∘ψ = id");
        for (Elem x = 0; x < t.module.size(); ++x) {
            right_inv.record(phi[(*psi)[x]] == x, [&] { return "x=" + t.module.label(x); });
        }
    }
    auto& cert = report.law("iso search certificate");
    cert.record(module_iso_search(egf.module, t.module).has_value(), [] { return "no isomorphism found"; });
    return report;
}

MoritaWitness matrix_morita_witness(const KleeneAlgebra& k, int n, const Limits& limits) {
    const auto m = matrix_algebra(k, n, limits);
    if (!m.is_materialized()) {
        throw SizeGuardError("'" + m.name() + "' is too large for a Morita witness");
    }
    const MatrixCodec codec(k, n);
    const auto sk = column_module(k, m, n);
    const auto dual = dual_module(sk, Respect::right, limits);
    const auto ks = dual.module.renamed(k.name() + "^" + std::to_string(n) + "°");
    const auto& e = sk.right_basis()->elements;
    const auto& e_dual = ks.left_basis()->elements;
    const auto rank = static_cast<std::size_t>(n);
    auto column = [&](Elem v) {
        std::vector<Elem> c(rank);
        for (std::size_t i = 0; i < rank; ++i) {
            c[i] = sk.right_basis()->coord(v, i);
        }
        return c;
    };
    auto row = [&](Elem f) {
        std::vector<Elem> r(rank);
        for (std::size_t i = 0; i < rank; ++i) {
            r[i] = ks.left_basis()->coord(f, i);
        }
        return r;
    };

    Report report("Morita witness " + k.name() + " ~ " + m.name());
    report.absorb(check_kleene_axioms(m), m.name() + ": ");
    report.absorb(check_module_axioms(sk), "K^n: ");
    report.absorb(check_module_axioms(ks), "K^n°: ");

    auto sk_ks = tensor_product(sk, ks, TensorPath::automatic, limits);
    auto ks_sk = tensor_product(ks, sk, TensorPath::automatic, limits);
    report.note("K^n⊗K^n°: " + std::to_string(sk_ks.module.size()) + " elements (" + to_string(sk_ks.path) + ")");
    report.note("K^n°⊗K^n: " + std::to_string(ks_sk.module.size()) + " elements (" + to_string(ks_sk.path) + ")");
    report.absorb(check_module_axioms(sk_ks.module), "K^n⊗K^n°: ");
    report.absorb(check_module_axioms(ks_sk.module), "K^n°⊗K^n: ");
    auto& size_law = report.law("|K^n⊗K^n°| = |M|");
    size_law.record(sk_ks.module.size() == m.size(), [&] {
        return std::to_string(sk_ks.module.size()) + " vs " + std::to_string(m.size());
    });

    const auto s_reg = regular_module(m);
    const auto k_reg = regular_module(k);

    // φ(v⊗f) = v·f as an outer product; ψ(A) = Σ e_i·A_ij ⊗ e_j°.
    auto outer = [&](Elem v, Elem f) {
        const auto c = column(v);
        const auto r = row(f);
        std::vector<Elem> entries(rank * rank);
        for (std::size_t i = 0; i < rank; ++i) {
            for (std::size_t j = 0; j < rank; ++j) {
                entries[i * rank + j] = k.mul(c[i], r[j]);
            }
        }
        return codec.encode(entries);
    };
    const auto phi = induced_map(sk_ks, s_reg, outer);
    std::vector<Elem> psi(m.size());
    for (Elem a = 0; a < m.size(); ++a) {
        const auto entries = codec.decode(a);
        Elem sum = sk_ks.module.zero();
        for (std::size_t i = 0; i < rank; ++i) {
            for (std::size_t j = 0; j < rank; ++j) {
                sum = sk_ks.module.add(sum, sk_ks.pure_tensor(sk.act_right(e[i], entries[i * rank + j]), e_dual[j]));
            }
        }
        psi[a] = sum;
    }
    auto& phi_def = report.law("φ(e_i⊗e_j°) = E_ij is well defined");
    phi_def.record(phi.has_value(), [] { return "outer product does not extend"; });
    auto& units = report.law("φ(e_i⊗e_j°) = E_ij and ψ(E_ij) = e_i⊗e_j°");
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Elem eij = MatrixElement::unit(k, n, i, j).index(codec);
            const Elem pure = sk_ks.pure_tensor(e[i], e_dual[j]);
            units.record(phi && (*phi)[pure] == eij && psi[eij] == pure,
                         [&] { return "i=" + std::to_string(i + 1) + ", j=" + std::to_string(j + 1); });
        }
    }
    auto& phi_iso = report.law("φ is a bimodule isomorphism K^n⊗K^n° -> M");
    phi_iso.record(phi && is_isomorphism(sk_ks.module, s_reg, *phi), [] { return "φ fails"; });
    auto& psi_hom = report.law("ψ is a bimodule homomorphism M -> K^n⊗K^n°");
    psi_hom.record(check_module_homomorphism({s_reg, sk_ks.module, psi}, Respect::both).passed(),
                   [] { return "ψ fails"; });
    auto& phi_psi = report.law("ψ∘φ = id and φ∘ψ = id");
    if (phi) {
        for (Elem x = 0; x < sk_ks.module.size(); ++x) {
            phi_psi.record(psi[(*phi)[x]] == x, [&] { return "x=" + sk_ks.module.label(x); });
        }
        for (Elem a = 0; a < m.size(); ++a) {
            phi_psi.record((*phi)[psi[a]] == a, [&] { return "A=" + m.label(a); });
        }
    } else {
        phi_psi.fail("φ undefined");
    }

    // α(f⊗v) = f(v); β(a) = a·(e_1°⊗e_1).
    const auto alpha = induced_map(ks_sk, k_reg, [&](Elem f, Elem v) { return dual.map(f)[v]; });
    const Elem base_pure = ks_sk.pure_tensor(e_dual[0], e[0]);
    std::vector<Elem> beta(k.size());
    for (Elem a = 0; a < k.size(); ++a) {
        beta[a] = ks_sk.module.act_left(a, base_pure);
    }
    auto& alpha_def = report.law("α(e_i°⊗e_j) = δ_ij is well defined");
    alpha_def.record(alpha.has_value(), [] { return "evaluation does not extend"; });
    auto& delta = report.law("α(e_i°⊗e_j) = δ_ij");
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Elem expected = i == j ? k.one() : k.zero();
            delta.record(alpha && (*alpha)[ks_sk.pure_tensor(e_dual[i], e[j])] == expected,
                         [&] { return "i=" + std::to_string(i + 1) + ", j=" + std::to_string(j + 1); });
        }
    }
    auto& alpha_iso = report.law("α is a bimodule isomorphism K^n°⊗K^n -> K");
    alpha_iso.record(alpha && is_isomorphism(ks_sk.module, k_reg, *alpha), [] { return "α fails"; });
    auto& beta_hom = report.law("β is a bimodule homomorphism K -> K^n°⊗K^n");
    beta_hom.record(check_module_homomorphism({k_reg, ks_sk.module, beta}, Respect::both).passed(),
                    [] { return "β fails"; });
    auto& alpha_beta = report.law("α∘β = id and β∘α = id");
    if (alpha) {
        for (Elem a = 0; a < k.size(); ++a) {
            alpha_beta.record((*alpha)[beta[a]] == a, [&] { return "a=" + k.label(a); });
        }
        for (Elem x = 0; x < ks_sk.module.size(); ++x) {
            alpha_beta.record(beta[(*alpha)[x]] == x, [&] { return "x=" + ks_sk.module.label(x); });
        }
    } else {
        alpha_beta.fail("α undefined");
    }

    // The four matrix identities and the chain e_i°⊗e_i = (Σe_j°)⊗(Σe_j).
    const auto ones = MatrixElement::all_ones(k, n);
    const Elem ones_idx = ones.index(codec);
    Elem sum_e = sk.zero();
    Elem sum_e_dual = ks.zero();
    for (std::size_t i = 0; i < rank; ++i) {
        sum_e = sk.add(sum_e, e[i]);
        sum_e_dual = ks.add(sum_e_dual, e_dual[i]);
    }
    const Elem top = ks_sk.pure_tensor(sum_e_dual, sum_e);
    auto& b1 = report.law("e_i°·ē_i = e_i°");
    auto& b2 = report.law("ē_i·e_i = Σe_j");
    auto& b3 = report.law("1̄·Σe_j = Σe_j");
    auto& b4 = report.law("e_i°·1̄ = Σe_j°");
    auto& chain = report.law("e_i°⊗e_i = (Σe_j°)⊗(Σe_j) step by step");
    auto& same = report.law("e_i°⊗e_i = e_1°⊗e_1");
    b3.record(sk.act_left(ones_idx, sum_e) == sum_e, [] { return "1̄·Σe_j"; });
    const auto vec = [&](Elem v) { return column_string(k, column(v)); };
    const auto cov = [&](Elem f) { return row_string(k, row(f)); };
    for (int i = 0; i < n; ++i) {
        auto bar = ones.entries();
        for (int c = 0; c < n; ++c) {
            bar[static_cast<std::size_t>(i * n + c)] = c == i ? k.one() : k.zero();
        }
        const MatrixElement bar_e(k, n, bar);
        const Elem bar_idx = bar_e.index(codec);
        const Elem ei = e[static_cast<std::size_t>(i)];
        const Elem fi = e_dual[static_cast<std::size_t>(i)];
        const auto tag = [&] { return "i=" + std::to_string(i + 1); };
        b1.record(ks.act_right(fi, bar_idx) == fi, tag);
        b2.record(sk.act_left(bar_idx, ei) == sum_e, tag);
        b4.record(ks.act_right(fi, ones_idx) == sum_e_dual, tag);

        const Elem steps[] = {
            ks_sk.pure_tensor(fi, ei),
            ks_sk.pure_tensor(ks.act_right(fi, bar_idx), ei),
            ks_sk.pure_tensor(fi, sk.act_left(bar_idx, ei)),
            ks_sk.pure_tensor(fi, sum_e),
            ks_sk.pure_tensor(fi, sk.act_left(ones_idx, sum_e)),
            ks_sk.pure_tensor(ks.act_right(fi, ones_idx), sum_e),
            top,
        };
        const std::string lines[] = {
            cov(fi) + " ⊗ " + vec(ei),
            cov(fi) + "·" + bar_e.to_string() + " ⊗ " + vec(ei),
            cov(fi) + " ⊗ " + bar_e.to_string() + "·" + vec(ei),
            cov(fi) + " ⊗ " + vec(sum_e),
            cov(fi) + " ⊗ " + ones.to_string() + "·" + vec(sum_e),
            cov(fi) + "·" + ones.to_string() + " ⊗ " + vec(sum_e),
            cov(sum_e_dual) + " ⊗ " + vec(sum_e),
        };
        report.note("chain for " + tag() + ":");
        for (std::size_t s = 0; s < std::size(steps); ++s) {
            report.note(std::string(s == 0 ? "    " : "  = ") + lines[s] + "    [class " + std::to_string(steps[s]) +
                        "]");
            chain.record(steps[s] == steps[0], [&] { return tag() + ", step " + std::to_string(s); });
        }
        same.record(steps[0] == base_pure, tag);
    }

    auto& cert_u = report.law("iso search certificate K^n⊗K^n° ≅ M");
    cert_u.record(module_iso_search(sk_ks.module, s_reg).has_value(), [] { return "none found"; });
    auto& cert_v = report.law("iso search certificate K^n°⊗K^n ≅ K");
    cert_v.record(module_iso_search(ks_sk.module, k_reg).has_value(), [] { return "none found"; });

    auto u = phi.value_or(std::vector<Elem>{});
    auto v = alpha.value_or(std::vector<Elem>{});
    return MoritaWitness{k,
                         m,
                         sk,
                         ks,
                         std::move(sk_ks),
                         std::move(ks_sk),
                         u,
                         psi,
                         v,
                         beta,
                         std::move(report)};
}

MoritaWitness lift_semiring_morita(const KleeneAlgebra& k, int n, Elem e, const Limits& limits) {
    const auto m = matrix_algebra(k, n, limits);
    if (!m.is_materialized()) {
        throw SizeGuardError("'" + m.name() + "' is too large for a Morita witness");
    }
    if (e >= m.size() || m.mul(e, e) != e || !is_full_idempotent(m, e)) {
        throw PreconditionError((e < m.size() ? m.label(e) : std::to_string(e)) + " is not a full idempotent of '" +
                                m.name() + "'");
    }
    const MatrixCodec codec(k, n);
    const auto corner = corner_algebra(m, e);
    const auto& s = corner.algebra;
    std::vector<Elem> corner_index(m.size(), static_cast<Elem>(-1));
    for (Elem x = 0; x < s.size(); ++x) {
        corner_index[corner.embedding[x]] = x;
    }

    const auto col = column_module(k, m, n);
    const auto dual = dual_module(col, Respect::right, limits);
    std::vector<Elem> ev, fe;
    for (Elem v = 0; v < col.size(); ++v) {
        ev.push_back(col.act_left(e, v));
    }
    for (Elem f = 0; f < dual.module.size(); ++f) {
        fe.push_back(dual.module.act_right(f, e));
    }
    const std::string tag = m.label(e);
    auto sk_sub = submodule(restrict_scalars(col, Side::left, s, corner.embedding), ev, "e" + k.name() + "^n");
    auto ks_sub = submodule(restrict_scalars(dual.module, Side::right, s, corner.embedding), fe,
                            k.name() + "^n°e");
    const auto& sk = sk_sub.module;
    const auto& ks = ks_sub.module;

    Report report("lifted Morita witness " + k.name() + " ~ " + s.name() + " (e = " + tag + ")");
    report.note("corner eMe: " + std::to_string(s.size()) + " elements; eK^n: " + std::to_string(sk.size()) +
                " elements; K^n°e: " + std::to_string(ks.size()) + " elements");
    report.absorb(check_kleene_axioms(s), "eMe: ");
    report.absorb(check_module_axioms(sk), "eK^n: ");
    report.absorb(check_module_axioms(ks), "K^n°e: ");

    auto sk_ks = tensor_product(sk, ks, TensorPath::automatic, limits);
    auto ks_sk = tensor_product(ks, sk, TensorPath::automatic, limits);
    report.note("eK^n⊗K^n°e: " + std::to_string(sk_ks.module.size()) + " elements; K^n°e⊗eK^n: " +
                std::to_string(ks_sk.module.size()) + " elements");
    report.absorb(check_module_axioms(sk_ks.module), "eK^n⊗K^n°e: ");
    report.absorb(check_module_axioms(ks_sk.module), "K^n°e⊗eK^n: ");

    const auto rank = static_cast<std::size_t>(n);
    const auto s_reg = regular_module(s);
    const auto k_reg = regular_module(k);
    const auto u = induced_map(sk_ks, s_reg, [&](Elem v, Elem f) {
        const Elem pv = sk_sub.embedding[v];
        const Elem pf = ks_sub.embedding[f];
        std::vector<Elem> entries(rank * rank);
        for (std::size_t i = 0; i < rank; ++i) {
            for (std::size_t j = 0; j < rank; ++j) {
                entries[i * rank + j] = k.mul(col.right_basis()->coord(pv, i), dual.module.left_basis()->coord(pf, j));
            }
        }
        return corner_index[codec.encode(entries)];
    });
    const auto v = induced_map(ks_sk, k_reg, [&](Elem f, Elem w) {
        return dual.map(ks_sub.embedding[f])[sk_sub.embedding[w]];
    });
    auto& u_def = report.law("u(v⊗f) = v·f is well defined");
    u_def.record(u.has_value(), [] { return "outer product does not extend"; });
    auto& u_iso = report.law("u is a bimodule isomorphism eK^n⊗K^n°e -> eMe");
    u_iso.record(u && is_isomorphism(sk_ks.module, s_reg, *u), [] { return "u is not an isomorphism"; });
    auto& v_def = report.law("v(f⊗w) = f(w) is well defined");
    v_def.record(v.has_value(), [] { return "evaluation does not extend"; });
    auto& v_iso = report.law("v is a bimodule isomorphism K^n°e⊗eK^n -> K");
    v_iso.record(v && is_isomorphism(ks_sk.module, k_reg, *v), [] { return "v is not an isomorphism"; });
    auto& cert_u = report.law("iso search certificate eK^n⊗K^n°e ≅ eMe");
    cert_u.record(module_iso_search(sk_ks.module, s_reg).has_value(), [] { return "none found"; });
    auto& cert_v = report.law("iso search certificate K^n°e⊗eK^n ≅ K");
    cert_v.record(module_iso_search(ks_sk.module, k_reg).has_value(), [] { return "none found"; });

    auto u_map = u.value_or(std::vector<Elem>{});
    auto v_map = v.value_or(std::vector<Elem>{});
    auto u_inv = inverse_or_empty(u_map, s.size());
    auto v_inv = inverse_or_empty(v_map, k.size());
    return MoritaWitness{k,
                         s,
                         sk,
                         ks,
                         std::move(sk_ks),
                         std::move(ks_sk),
                         std::move(u_map),
                         std::move(u_inv),
                         std::move(v_map),
                         std::move(v_inv),
                         std::move(report)};
}

Report verify_witness(const MoritaWitness& w, const Limits& limits) {
    Report report("verify Morita witness " + w.base.name() + " ~ " + w.other.name());
    report.absorb(check_kleene_axioms(w.base), w.base.name() + ": ");
    report.absorb(check_kleene_axioms(w.other), w.other.name() + ": ");
    report.absorb(check_module_axioms(w.sk), "sk: ");
    report.absorb(check_module_axioms(w.ks), "ks: ");
    auto& sides = report.law("sk is an (S,K)-bimodule and ks a (K,S)-bimodule");
    const bool sides_ok = w.sk.has_left() && w.sk.has_right() && w.ks.has_left() && w.ks.has_right() &&
                          w.sk.left_algebra().same_as(w.other) && w.sk.right_algebra().same_as(w.base) &&
                          w.ks.left_algebra().same_as(w.base) && w.ks.right_algebra().same_as(w.other);
    sides.record(sides_ok, [] { return "bimodule sides do not match the algebras"; });
    if (!sides_ok) {
        return report;
    }

    auto check_tensor = [&](const std::string& name, const TensorProduct& recorded, const KleeneModule& left,
                            const KleeneModule& right, const KleeneAlgebra& unit, const std::vector<Elem>& to_unit,
                            const std::vector<Elem>& from_unit) {
        auto& factors = report.law(name + ": recorded factors are the witness bimodules");
        const bool shapes = identical_modules(recorded.left_factor, left) &&
                            identical_modules(recorded.right_factor, right) &&
                            recorded.pure.size() == std::size_t{left.size()} * right.size();
        factors.record(shapes, [] { return "factor tables differ"; });
        if (!shapes) {
            return;
        }
        report.absorb(check_module_axioms(recorded.module), name + ": ");
        const auto fresh = tensor_product(left, right, TensorPath::automatic, limits);
        const auto comparison =
            induced_map(fresh, recorded.module, [&](Elem x, Elem y) { return recorded.pure_tensor(x, y); });
        auto& agrees = report.law(name + ": recorded tensor matches the recomputed one");
        agrees.record(comparison && is_isomorphism(fresh.module, recorded.module, *comparison),
                      [] { return "pure tensors do not induce an isomorphism"; });
        const auto reg = regular_module(unit);
        auto& iso = report.law(name + ": map to the regular bimodule is an isomorphism");
        iso.record(to_unit.size() == recorded.module.size() && is_isomorphism(recorded.module, reg, to_unit),
                   [] { return "not a bimodule isomorphism"; });
        auto& inverse = report.law(name + ": recorded inverse composes to identities");
        bool ok = from_unit.size() == unit.size() && to_unit.size() == recorded.module.size();
        for (Elem x = 0; ok && x < recorded.module.size(); ++x) {
            ok = to_unit[x] < unit.size() && from_unit[to_unit[x]] == x;
        }
        for (Elem a = 0; ok && a < unit.size(); ++a) {
            ok = from_unit[a] < recorded.module.size() && to_unit[from_unit[a]] == a;
        }
        inverse.record(ok, [] { return "maps are not mutually inverse"; });
        auto& cert = report.law(name + ": iso search certificate");
        cert.record(module_iso_search(recorded.module, reg).has_value(), [] { return "none found"; });
    };
    check_tensor("sk⊗ks", w.sk_ks, w.sk, w.ks, w.other, w.u, w.u_inverse);
    check_tensor("ks⊗sk", w.ks_sk, w.ks, w.sk, w.base, w.v, w.v_inverse);
    return report;
}

Report check_category_equivalence(const MoritaWitness& w, const std::vector<KleeneModule>& over_base,
                                  const std::vector<KleeneModule>& over_other, const Limits& limits) {
    Report report("module categories of " + w.base.name() + " and " + w.other.name());
    auto round_trip = [&](const KleeneModule& start, const KleeneModule& first, const KleeneModule& second,
                          const std::string& pattern) {
        auto& law = report.law(pattern + " for " + start.name());
        const auto inner = tensor_product(first, start, TensorPath::automatic, limits);
        const auto outer = tensor_product(second, inner.module, TensorPath::automatic, limits);
        report.note(start.name() + ": " + std::to_string(start.size()) + " -> " + std::to_string(inner.module.size()) +
                    " -> " + std::to_string(outer.module.size()) + " elements");
        law.record(module_iso_search(outer.module, start).has_value(), [] { return "no isomorphism"; });
    };
    for (const auto& p : over_base) {
        if (!p.has_left() || !p.left_algebra().same_as(w.base)) {
            throw AlgebraMismatchError("'" + p.name() + "' is not a left module over '" + w.base.name() + "'");
        }
        round_trip(p, w.sk, w.ks, "ks⊗(sk⊗P) ≅ P");
    }
    for (const auto& q : over_other) {
        if (!q.has_left() || !q.left_algebra().same_as(w.other)) {
            throw AlgebraMismatchError("'" + q.name() + "' is not a left module over '" + w.other.name() + "'");
        }
        round_trip(q, w.ks, w.sk, "sk⊗(ks⊗Q) ≅ Q");
    }
    return report;
}

} // namespace kmod
