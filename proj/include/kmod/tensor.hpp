#pragma once

#include "kmod/congruence.hpp"
#include "kmod/module.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kmod {

enum class TensorPath { automatic, exhaustive, fast };

std::string to_string(TensorPath path);

/// M ⊗_B N for a right B-module M and a left B-module N. The result keeps
/// M's left action and N's right action; at least one must exist.
struct TensorProduct {
    KleeneModule module;
    KleeneModule left_factor;
    KleeneModule right_factor;
    std::vector<Elem> pure; // |M|×|N|: class of (m, n)
    TensorPath path = TensorPath::exhaustive;
    std::vector<std::string> trace;

    [[nodiscard]] Elem pure_tensor(Elem m, Elem n) const { return pure[std::size_t{m} * right_factor.size() + n]; }
};

/// `automatic` takes the fast path when M has a right basis and N a left
/// basis, and the exhaustive path otherwise.
TensorProduct tensor_product(const KleeneModule& m, const KleeneModule& n, TensorPath path = TensorPath::automatic,
                             const Limits& limits = {});

/// The free semilattice on M×N with the induced outer actions, materialized.
/// Element bit (m·|N| + n) marks the label (m, n). Only for tiny carriers.
struct FreePairModule {
    KleeneModule module;
    std::vector<ElemPair> relations; // bilinear, balanced and zero relations
    Elem width = 0;

    [[nodiscard]] Elem label(Elem m, Elem n) const { return Elem{1} << (m * width + n); }
};

FreePairModule free_pair_module(const KleeneModule& m, const KleeneModule& n);

/// Map out of T determined by its values on pure tensors, or nullopt if
/// those values do not extend additively.
std::optional<std::vector<Elem>> induced_map(const TensorProduct& t, const KleeneModule& target,
                                             const std::function<Elem(Elem, Elem)>& on_pure);

/// α ⊗ β between tensor products, checked well defined.
std::optional<std::vector<Elem>> tensor_morphism(const TensorProduct& from, const TensorProduct& to,
                                                 const std::vector<Elem>& alpha, const std::vector<Elem>& beta);

} // namespace kmod
