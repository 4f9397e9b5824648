#pragma once

#include "kmod/algebra.hpp"
#include "kmod/report.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kmod {

/// Action table of a Kleene algebra on a module carrier.
/// Left actions are |K|×size (row a holds a·m); right actions are size×|L|.
struct ScalarAction {
    KleeneAlgebra algebra;
    std::vector<Elem> table;
};

/// A basis of a module that is free on one side, with the coordinates of
/// every element: m = Σ_j c_j·b_j (left) or m = Σ_j b_j·c_j (right).
struct FreeBasis {
    std::vector<Elem> elements;
    std::vector<Elem> coords; // size × rank, entries in the acting algebra

    [[nodiscard]] std::size_t rank() const { return elements.size(); }
    [[nodiscard]] Elem coord(Elem m, std::size_t j) const { return coords[m * rank() + j]; }
};

/// A finite Kleene module: an idempotent commutative monoid with a left
/// action, a right action, or both. All tables are materialized.
class KleeneModule {
  public:
    struct Parts {
        std::string name;
        Elem size = 0;
        Elem zero = 0;
        std::vector<Elem> add;
        std::optional<ScalarAction> left;
        std::optional<ScalarAction> right;
        std::optional<FreeBasis> left_basis;
        std::optional<FreeBasis> right_basis;
        std::vector<std::string> labels; // optional, one per element
    };

    /// Validates table shapes and index ranges (ValidationError) and the
    /// materialization cap (SizeGuardError). Does not check module laws.
    static KleeneModule make(Parts parts);

    [[nodiscard]] const std::string& name() const { return data_->name; }
    [[nodiscard]] Elem size() const { return data_->size; }
    [[nodiscard]] Elem zero() const { return data_->zero; }
    [[nodiscard]] Elem add(Elem x, Elem y) const { return data_->add[std::size_t{x} * data_->size + y]; }
    [[nodiscard]] bool leq(Elem x, Elem y) const { return add(x, y) == y; }

    [[nodiscard]] bool has_left() const { return data_->left.has_value(); }
    [[nodiscard]] bool has_right() const { return data_->right.has_value(); }
    [[nodiscard]] Side side() const;

    [[nodiscard]] const KleeneAlgebra& left_algebra() const;
    [[nodiscard]] const KleeneAlgebra& right_algebra() const;

    [[nodiscard]] Elem act_left(Elem a, Elem m) const { return data_->left->table[std::size_t{a} * data_->size + m]; }
    [[nodiscard]] Elem act_right(Elem m, Elem b) const {
        return data_->right->table[std::size_t{m} * data_->right->algebra.size() + b];
    }

    [[nodiscard]] const FreeBasis* left_basis() const { return data_->left_basis ? &*data_->left_basis : nullptr; }
    [[nodiscard]] const FreeBasis* right_basis() const {
        return data_->right_basis ? &*data_->right_basis : nullptr;
    }

    [[nodiscard]] std::string label(Elem m) const;
    [[nodiscard]] const Parts& parts() const { return *data_; }

    [[nodiscard]] KleeneModule renamed(std::string name) const;
    [[nodiscard]] KleeneModule without_bases() const;

  private:
    explicit KleeneModule(std::shared_ptr<const Parts> data) : data_(std::move(data)) {}

    std::shared_ptr<const Parts> data_;
};

/// Checks monoid, action, compatibility and the star quasi-identity laws.
Report check_module_axioms(const KleeneModule& module);

/// Which actions a homomorphism must commute with.
enum class Respect { left, right, both };

std::string to_string(Respect respect);

struct ModuleHomomorphism {
    KleeneModule source;
    KleeneModule target;
    std::vector<Elem> map;

    [[nodiscard]] Elem operator()(Elem m) const { return map[m]; }
};

/// Preservation of zero, add, and the respected actions.
Report check_module_homomorphism(const ModuleHomomorphism& h, Respect respect);

/// Actions present on both modules over the same algebras.
Respect shared_respect(const KleeneModule& a, const KleeneModule& b);

bool is_bijection(const std::vector<Elem>& map, Elem target_size);
std::vector<Elem> inverse_map(const std::vector<Elem>& bijection);

/// Table-level equality of two modules (same carrier indexing).
bool identical_modules(const KleeneModule& a, const KleeneModule& b);

} // namespace kmod
