#pragma once

#include "kmod/algebra.hpp"
#include "kmod/hom.hpp"
#include "kmod/report.hpp"
#include "kmod/tensor.hpp"

#include <string>
#include <vector>

namespace kmod {

/// Whether the additive closure of {x·e·y} is the whole algebra. Throws
/// PreconditionError unless e·e = e.
bool is_full_idempotent(const KleeneAlgebra& algebra, Elem e);

std::vector<Elem> idempotents(const KleeneAlgebra& algebra);
std::vector<Elem> full_idempotents(const KleeneAlgebra& algebra);

/// eMe with unit e and star x ↦ e·x*·e. Throws CornerStarError naming the
/// first Kleene law that fails.
struct CornerAlgebra {
    KleeneAlgebra algebra;
    std::vector<Elem> embedding; // corner index -> parent index
    Elem idempotent = 0;
};

CornerAlgebra corner_algebra(const KleeneAlgebra& parent, Elem e);

/// E_h: carrier B, a·b = h(a)·b, right action by multiplication in B.
struct HomomorphismModule {
    KleeneModule module;
    AlgebraHomomorphism h;
};

HomomorphismModule homomorphism_module(const AlgebraHomomorphism& h);

/// E_{g∘f} ≅ E_f ⊗ E_g through c ↦ 1⊗c and b⊗c ↦ g(b)·c.
Report check_composition_law(const AlgebraHomomorphism& f, const AlgebraHomomorphism& g,
                             const Limits& limits = {});

/// Two algebras with bimodules sk (over (S, K)) and ks (over (K, S)) and
/// explicit mutually inverse isomorphisms
///   u: sk⊗ks → S,  u_inverse: S → sk⊗ks,
///   v: ks⊗sk → K,  v_inverse: K → ks⊗sk.
struct MoritaWitness {
    KleeneAlgebra base;  // K
    KleeneAlgebra other; // S
    KleeneModule sk;
    KleeneModule ks;
    TensorProduct sk_ks;
    TensorProduct ks_sk;
    std::vector<Elem> u, u_inverse;
    std::vector<Elem> v, v_inverse;
    Report report;
};

/// K and M_n(K) through the column bimodule K^n and its dual. The report
/// holds the φ/ψ and α/β checks, the four matrix identities and, for each i,
/// the chain from e_i°⊗e_i to (Σe_i°)⊗(Σe_i).
MoritaWitness matrix_morita_witness(const KleeneAlgebra& k, int n, const Limits& limits = {});

/// K and S = eMe through eK^n and K^n°e, for a full idempotent e of M_n(K).
/// Throws PreconditionError if e is not a full idempotent. Failed
/// verifications stay in the report.
MoritaWitness lift_semiring_morita(const KleeneAlgebra& k, int n, Elem e, const Limits& limits = {});

/// Re-derives both tensors from sk and ks and checks that the recorded
/// tensors, u and v are consistent with them.
Report verify_witness(const MoritaWitness& w, const Limits& limits = {});

/// For each left K-module P: ks⊗(sk⊗P) ≅ P; for each left S-module Q:
/// sk⊗(ks⊗Q) ≅ Q.
Report check_category_equivalence(const MoritaWitness& w, const std::vector<KleeneModule>& over_base,
                                  const std::vector<KleeneModule>& over_other, const Limits& limits = {});

/// Display form of a vector in K^n with the given coordinates.
std::string row_string(const KleeneAlgebra& k, const std::vector<Elem>& coords);
std::string column_string(const KleeneAlgebra& k, const std::vector<Elem>& coords);

} // namespace kmod
