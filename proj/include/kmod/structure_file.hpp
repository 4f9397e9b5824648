#pragma once

#include "kmod/algebra.hpp"
#include "kmod/module.hpp"
#include "kmod/morita.hpp"
#include "kmod/tensor.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace kmod {

struct NamedIdempotent {
    KleeneAlgebra algebra;
    Elem index = 0;
};

/// Everything declared in one structure file, by name. `order` lists
/// (kind, name) in declaration order.
struct Catalog {
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::string, KleeneAlgebra> algebras;
    std::map<std::string, KleeneModule> modules;
    std::map<std::string, AlgebraHomomorphism> algebra_homs;
    std::map<std::string, ModuleHomomorphism> module_homs;
    std::map<std::string, NamedIdempotent> idempotents;
    std::map<std::string, TensorProduct> tensors;
    std::map<std::string, MoritaWitness> witnesses;

    [[nodiscard]] bool has(const std::string& name) const;
};

/// Parses the section format
///
///   kleene_algebra <name> { elements: k ; zero: i ; one: j ; add: [[..]] ; mul: [[..]] ; star: [..] }
///   kleene_algebra <name> { builtin: "M2(bool2)" }
///   module <name> { over_left: A ; over_right: B ; size: m ; zero: i ; add: [[..]] ;
///                   left_action: [[..]] ; right_action: [[..]] ; left_basis: [..] ; right_basis: [..] }
///   hom <name> { from: X ; to: Y ; map: [..] }
///   idempotent <name> { in: A ; index: i }
///   tensor <name> { left: M ; right: N ; module: T ; pure: [[..]] ; path: exhaustive }
///   witness <name> { base: K ; other: S ; sk: P ; ks: Q ; sk_ks: T1 ; ks_sk: T2 ;
///                    u: [..] ; u_inverse: [..] ; v: [..] ; v_inverse: [..] }
///
/// '#' starts a comment. Only shapes and references are checked; laws are
/// left to the commands. Throws ParseError with the line and section.
Catalog parse_structure_file(std::string_view text, const Limits& limits = {});

Catalog load_structure_file(const std::string& path, const Limits& limits = {});

/// Accumulates sections, emitting each referenced structure once and before
/// its first use.
class StructureWriter {
  public:
    std::string algebra(const KleeneAlgebra& algebra);
    std::string module(const KleeneModule& module);
    std::string algebra_hom(const AlgebraHomomorphism& h, const std::string& name = {});
    std::string module_hom(const ModuleHomomorphism& h, const std::string& name = {});
    std::string idempotent(const KleeneAlgebra& algebra, Elem e, const std::string& name = {});
    std::string tensor(const TensorProduct& t);
    std::string witness(const MoritaWitness& w, const std::string& name = {});

    [[nodiscard]] std::string str() const { return out_; }

  private:
    std::string fresh(const std::string& hint);

    std::string out_;
    std::vector<std::string> used_;
    std::vector<std::pair<KleeneAlgebra, std::string>> algebras_;
    std::vector<std::pair<KleeneModule, std::string>> modules_;
    std::vector<std::pair<const void*, std::string>> tensors_;
};

/// Reduces a display name to an identifier.
std::string sanitize_name(std::string_view name);

} // namespace kmod
