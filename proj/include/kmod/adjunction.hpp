#pragma once

#include "kmod/hom.hpp"
#include "kmod/report.hpp"
#include "kmod/tensor.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kmod {

/// Hom(M⊗N, P) against Hom(M, Hom(N, P)) for an (A,B)-bimodule M, a
/// (B,C)-bimodule N and an (A,C)-bimodule P. Outer hom sets respect both
/// actions; the inner Hom(N, P) respects the right C-action, which makes it
/// an (A,B)-bimodule.
class Adjunction {
  public:
    Adjunction(const KleeneModule& m, const KleeneModule& n, const KleeneModule& p, const Limits& limits = {});

    [[nodiscard]] const TensorProduct& tensor() const { return tensor_; }
    [[nodiscard]] const HomModule& inner() const { return inner_; }
    /// Hom_{A,C}(M⊗N, P), sorted.
    [[nodiscard]] const std::vector<std::vector<Elem>>& tensor_homs() const { return tensor_homs_; }
    /// Hom_{A,B}(M, Hom(N, P)), sorted; entries index inner().
    [[nodiscard]] const std::vector<std::vector<Elem>>& curried_homs() const { return curried_homs_; }

    /// m ↦ (n ↦ φ(m⊗n)). Throws PreconditionError if a slice is not in Hom(N, P).
    [[nodiscard]] std::vector<Elem> curry(const std::vector<Elem>& phi) const;
    /// m⊗n ↦ ψ(m)(n), or nullopt if that does not extend to the tensor.
    [[nodiscard]] std::optional<std::vector<Elem>> uncurry(const std::vector<Elem>& psi) const;

  private:
    KleeneModule m_, n_, p_;
    TensorProduct tensor_;
    HomModule inner_;
    std::vector<std::vector<Elem>> tensor_homs_;
    std::vector<std::vector<Elem>> curried_homs_;
};

struct AdjunctionOptions {
    std::size_t max_pairs = 4096; // (α, β) pairs beyond this are sampled
    std::uint64_t seed = 0;
};

/// Bijection of curry/uncurry plus both naturality squares, for every
/// α: M'→M and β: P→P' (sampled past max_pairs). M' and P' default to M, P.
Report check_adjunction(const KleeneModule& m, const KleeneModule& n, const KleeneModule& p,
                        const std::optional<KleeneModule>& m_prime = std::nullopt,
                        const std::optional<KleeneModule>& p_prime = std::nullopt, const AdjunctionOptions& options = {},
                        const Limits& limits = {});

/// Associativity through the canonical map (m⊗n)⊗p ↦ m⊗(n⊗p), and the unit
/// laws through m ↦ 1⊗m and m ↦ m⊗1, each also certified by iso search.
/// M is an (A,B)-, N a (B,C)- and P a (C,D)-bimodule.
Report check_monoid_laws(const KleeneModule& m, const KleeneModule& n, const KleeneModule& p,
                         const Limits& limits = {});

/// Whether `map` is a bijective homomorphism respecting every action.
bool is_isomorphism(const KleeneModule& source, const KleeneModule& target, const std::vector<Elem>& map);

} // namespace kmod
