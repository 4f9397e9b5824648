#pragma once

#include "kmod/module.hpp"

#include <map>
#include <optional>
#include <vector>

namespace kmod {

/// A small set whose closure under +, zero and the respected actions is the
/// whole module. Chosen greedily from the bottom of the order.
std::vector<Elem> module_generators(const KleeneModule& m, Respect respect);

/// Every homomorphism M -> N respecting `respect`, as sorted map tables.
/// Candidate count is |N|^|generators|; above limits.hom_bound the call
/// throws SizeGuardError.
std::vector<std::vector<Elem>> enumerate_homs(const KleeneModule& source, const KleeneModule& target,
                                              Respect respect, const Limits& limits = {});

/// The homomorphisms as a module under pointwise operations.
///
/// With respect = right (homs commuting with the right actions) the result is
/// a left module over N's left algebra, (a·h)(m) = a·h(m), and a right module
/// over M's left algebra, (h·b)(m) = h(b·m). respect = left is the mirror.
/// When neither side is available, a one-sided hom set gets the pointwise
/// action of the common algebra, which is validated.
struct HomModule {
    KleeneModule module;
    std::vector<std::vector<Elem>> maps;
    Respect respect = Respect::left;

    [[nodiscard]] std::optional<Elem> index_of(const std::vector<Elem>& table) const;
    [[nodiscard]] const std::vector<Elem>& map(Elem h) const { return maps[h]; }

    std::map<std::vector<Elem>, Elem> lookup;
};

HomModule hom_module(const KleeneModule& source, const KleeneModule& target, Respect respect,
                     const Limits& limits = {});

/// Hom into the regular bimodule of the algebra acting on the respected side.
/// Defaults to the module's own side (left for bimodules). A free source gets
/// the dual basis, with coordinates f(e_i).
HomModule dual_module(const KleeneModule& m, std::optional<Respect> respect = std::nullopt,
                      const Limits& limits = {});

/// Endomorphisms, respecting every action present.
HomModule end_module(const KleeneModule& m, const Limits& limits = {});

/// An isomorphism M -> N respecting every action, or nullopt. Throws
/// AlgebraMismatchError if the modules are not over the same algebras.
std::optional<ModuleHomomorphism> module_iso_search(const KleeneModule& m, const KleeneModule& n);

} // namespace kmod
