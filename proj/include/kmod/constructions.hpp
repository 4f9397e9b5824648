#pragma once

#include "kmod/module.hpp"

#include <span>
#include <string>
#include <vector>

namespace kmod {

/// K acting on itself by multiplication: the regular (K, K)-bimodule, or
/// one side of it. Free of rank one on each present side with basis {1}.
KleeneModule regular_module(const KleeneAlgebra& k, Side side = Side::bi);

/// K as a module over the subalgebra on `subset` (all of K gives the
/// regular module). Throws SubalgebraError if the subset is not closed.
KleeneModule algebra_as_bimodule(const KleeneAlgebra& k, std::span<const Elem> subset, Side side = Side::bi);

/// Least subset of K containing `gens` and 0, closed under + and
/// multiplication by K on the chosen side(s): the ideal generated by gens.
KleeneModule submodule_generated(const KleeneAlgebra& k, std::span<const Elem> gens, Side side);

struct FreeModule {
    KleeneModule module;
    std::vector<Elem> basis; // characteristic function of each label
};

/// K^B: functions from `rank` labels to K with pointwise operations. Element
/// index is the mixed-radix number whose digit j is the value at label j.
FreeModule free_module(const KleeneAlgebra& k, std::size_t rank, Side side, const Limits& limits = {});

/// K^n as an (M_n(K), K)-bimodule of column vectors; `matrices` must be
/// matrix_algebra(k, n). Free on the right with basis e_1..e_n.
KleeneModule column_module(const KleeneAlgebra& k, const KleeneAlgebra& matrices, int n);

/// K^n as a (K, M_n(K))-bimodule of row vectors. Free on the left.
KleeneModule row_module(const KleeneAlgebra& k, const KleeneAlgebra& matrices, int n);

/// The one-element module with the actions of `like`.
KleeneModule trivial_module_like(const KleeneModule& like);

struct Submodule {
    KleeneModule module;
    std::vector<Elem> embedding; // submodule index -> parent index
};

/// The subset with inherited operations. Throws PreconditionError unless it
/// contains zero and is closed under + and every action.
Submodule submodule(const KleeneModule& parent, std::span<const Elem> subset, std::string name = {});

/// Replaces the algebra acting on `side` by `scalars`, acting through
/// `embedding` (scalars index -> old algebra index).
KleeneModule restrict_scalars(const KleeneModule& m, Side side, const KleeneAlgebra& scalars,
                              std::span<const Elem> embedding);

} // namespace kmod
