#pragma once

#include "kmod/algebra.hpp"

#include <string_view>

namespace kmod {

/// The two-element Kleene algebra {0, 1}.
KleeneAlgebra bool2();

/// Binary relations on {0..n-1}: union, relational composition,
/// reflexive-transitive closure. Relation r is the bitmask with bit i·n+j
/// set iff (i, j) ∈ r, so rel(n) shares its indexing with M_n(bool2).
KleeneAlgebra relation_algebra(int n, const Limits& limits = {});

/// Parses "bool2", "rel(n)" / "relN", or "M<n>(<spec>)".
KleeneAlgebra construct_builtin(std::string_view spec, const Limits& limits = {});

} // namespace kmod
