#pragma once

#include "kmod/module.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kmod {

using ElemPair = std::pair<Elem, Elem>;

/// A partition of a module carrier, stored as the least member of each class.
struct ModuleCongruence {
    KleeneModule module;
    std::vector<Elem> partition;

    [[nodiscard]] bool related(Elem x, Elem y) const { return partition[x] == partition[y]; }
    [[nodiscard]] std::size_t class_count() const;
};

struct ClosureTrace {
    std::size_t merges = 0;
    std::size_t repairs = 0; // quasi-identity repairs; expected to stay zero on Kleene modules
    std::vector<std::string> log;
};

struct GeneratedCongruence {
    ModuleCongruence congruence;
    std::vector<ElemPair> generators;
    ClosureTrace trace;
};

/// Least congruence containing `pairs` whose quotient satisfies the star
/// quasi-identities. Union-find with a pending queue, then repair rounds.
GeneratedCongruence congruence_closure(const KleeneModule& m, std::span<const ElemPair> pairs);

/// Whether `partition` (class representatives) is compatible with +, and
/// every action of m.
bool is_congruence(const KleeneModule& m, std::span<const Elem> partition);

struct QuotientModule {
    KleeneModule module;
    GeneratedCongruence congruence;
    std::vector<Elem> projection; // element of m -> quotient element
};

/// The quotient by a partition; classes are numbered by least member.
QuotientModule quotient_by(const KleeneModule& m, GeneratedCongruence congruence);

QuotientModule quotient_module(const KleeneModule& m, std::span<const ElemPair> pairs);

} // namespace kmod
