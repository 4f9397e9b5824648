#pragma once

#include "kmod/common.hpp"
#include "kmod/report.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kmod {

/// A finite Kleene algebra over the carrier {0, ..., size-1}.
///
/// Small algebras are held as operation tables. Structural algebras (relation
/// and matrix algebras past kTableLimit) compute their operations on demand
/// behind the same interface. Copies share the underlying data.
class KleeneAlgebra {
  public:
    using BinaryOp = std::function<Elem(Elem, Elem)>;
    using UnaryOp = std::function<Elem(Elem)>;
    using Labeler = std::function<std::string(Elem)>;

    /// Builds an algebra from explicit row-major tables. Throws ValidationError
    /// when a table has the wrong length or holds an out-of-range index.
    static KleeneAlgebra from_tables(std::string name, Elem size, Elem zero, Elem one,
                                     std::vector<Elem> add, std::vector<Elem> mul,
                                     std::vector<Elem> star, Labeler labeler = {});

    struct Structure {
        std::string name;
        std::string key; // non-empty identifies the structure (e.g. "rel(2)")
        Elem size = 0;
        Elem zero = 0;
        Elem one = 0;
        BinaryOp add;
        BinaryOp mul;
        UnaryOp star;
        Labeler labeler;
    };

    /// Wraps computed operations; tables are materialized when size <= kTableLimit.
    static KleeneAlgebra structural(Structure structure);

    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] const std::string& key() const;
    [[nodiscard]] Elem size() const;
    [[nodiscard]] Elem zero() const;
    [[nodiscard]] Elem one() const;

    [[nodiscard]] Elem add(Elem a, Elem b) const {
        return data_->tabular ? data_->add[std::size_t{a} * data_->size + b] : data_->add_fn(a, b);
    }
    [[nodiscard]] Elem mul(Elem a, Elem b) const {
        return data_->tabular ? data_->mul[std::size_t{a} * data_->size + b] : data_->mul_fn(a, b);
    }
    [[nodiscard]] Elem star(Elem a) const { return data_->tabular ? data_->star[a] : data_->star_fn(a); }

    /// Natural order: a <= b iff a + b = b.
    [[nodiscard]] bool leq(Elem a, Elem b) const { return add(a, b) == b; }

    [[nodiscard]] bool is_materialized() const { return data_->tabular; }
    [[nodiscard]] std::string label(Elem a) const;

    /// True for the same instance, equal structure keys, or identical tables.
    [[nodiscard]] bool same_as(const KleeneAlgebra& other) const;
    [[nodiscard]] bool is_commutative() const;

    [[nodiscard]] KleeneAlgebra renamed(std::string name) const;

    /// Row-major tables; only valid when is_materialized().
    [[nodiscard]] std::span<const Elem> add_table() const { return data_->add; }
    [[nodiscard]] std::span<const Elem> mul_table() const { return data_->mul; }
    [[nodiscard]] std::span<const Elem> star_table() const { return data_->star; }

  private:
    struct Data {
        std::string name;
        std::string key;
        Elem size = 0;
        Elem zero = 0;
        Elem one = 0;
        bool tabular = false;
        std::vector<Elem> add, mul, star;
        BinaryOp add_fn, mul_fn;
        UnaryOp star_fn;
        Labeler labeler;
    };

    explicit KleeneAlgebra(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    std::shared_ptr<const Data> data_;
};

/// An element tied to the algebra instance it belongs to.
class Element {
  public:
    Element(KleeneAlgebra algebra, Elem index);

    [[nodiscard]] const KleeneAlgebra& algebra() const { return algebra_; }
    [[nodiscard]] Elem index() const { return index_; }

  private:
    KleeneAlgebra algebra_;
    Elem index_;
};

/// a <= b in the natural order. Throws AlgebraMismatchError across algebras.
bool natural_order(const Element& a, const Element& b);

/// Index equality; throws AlgebraMismatchError across algebras.
bool same_element(const Element& a, const Element& b);

/// Limit of s0 = 1, s(k+1) = s(k) + a s(k). Equals a* in any finite Kleene algebra.
Element star_saturate(const Element& a);
Elem star_saturate(const KleeneAlgebra& algebra, Elem a);

/// Checks semiring, unrolling and star-induction laws by full enumeration.
Report check_kleene_axioms(const KleeneAlgebra& algebra);

struct AlgebraHomomorphism {
    KleeneAlgebra source;
    KleeneAlgebra target;
    std::vector<Elem> map;

    /// Throws ValidationError on length or range problems.
    void validate() const;
    [[nodiscard]] Elem operator()(Elem a) const { return map[a]; }
};

Report check_algebra_homomorphism(const AlgebraHomomorphism& h);

AlgebraHomomorphism identity_homomorphism(const KleeneAlgebra& algebra);
AlgebraHomomorphism compose(const AlgebraHomomorphism& f, const AlgebraHomomorphism& g); // g after f

struct Subalgebra {
    KleeneAlgebra algebra;
    std::vector<Elem> embedding; // subalgebra index -> parent index
};

/// The subset as an algebra in its own right. Throws SubalgebraError unless
/// the subset contains 0 and 1 and is closed under +, ·, *.
Subalgebra subalgebra(const KleeneAlgebra& parent, std::span<const Elem> subset, std::string name = {});

/// Exhaustive isomorphism search; returns the map A -> B if one exists.
std::optional<std::vector<Elem>> algebra_iso_search(const KleeneAlgebra& a, const KleeneAlgebra& b);

} // namespace kmod
