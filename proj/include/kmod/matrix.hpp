#pragma once

#include "kmod/algebra.hpp"

#include <span>
#include <string>
#include <vector>

namespace kmod {

/// Mixed-radix encoding of n×n matrices over a base algebra: entry (r, c)
/// is digit r·n + c in base |K|. matrix_algebra() uses the same encoding.
class MatrixCodec {
  public:
    MatrixCodec(KleeneAlgebra base, int dim);

    [[nodiscard]] const KleeneAlgebra& base() const { return base_; }
    [[nodiscard]] int dim() const { return dim_; }
    /// |K|^(n²), saturated at SIZE_MAX on overflow.
    [[nodiscard]] std::size_t count() const { return count_; }

    [[nodiscard]] Elem encode(std::span<const Elem> entries) const;
    [[nodiscard]] std::vector<Elem> decode(Elem index) const;

  private:
    KleeneAlgebra base_;
    int dim_;
    std::size_t count_;
};

/// A square matrix over a finite Kleene algebra, independent of whether
/// the full matrix algebra is materialized.
class MatrixElement {
  public:
    MatrixElement(KleeneAlgebra base, int dim, std::vector<Elem> entries);

    static MatrixElement zero(const KleeneAlgebra& base, int dim);
    static MatrixElement identity(const KleeneAlgebra& base, int dim);
    /// E_ij: one at (i, j), zero elsewhere. Indices are 0-based.
    static MatrixElement unit(const KleeneAlgebra& base, int dim, int i, int j);
    static MatrixElement all_ones(const KleeneAlgebra& base, int dim);
    static MatrixElement from_index(const MatrixCodec& codec, Elem index);

    [[nodiscard]] const KleeneAlgebra& base() const { return base_; }
    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] Elem at(int r, int c) const { return entries_[static_cast<std::size_t>(r * dim_ + c)]; }
    [[nodiscard]] const std::vector<Elem>& entries() const { return entries_; }

    [[nodiscard]] MatrixElement operator+(const MatrixElement& other) const;
    [[nodiscard]] MatrixElement operator*(const MatrixElement& other) const;
    [[nodiscard]] bool operator==(const MatrixElement& other) const;

    [[nodiscard]] Elem index(const MatrixCodec& codec) const { return codec.encode(entries_); }
    [[nodiscard]] std::string to_string() const;

  private:
    KleeneAlgebra base_;
    int dim_;
    std::vector<Elem> entries_;
};

MatrixElement star_saturate(const MatrixElement& a);

/// The Kleene algebra of n×n matrices over `base`: entrywise +, matrix
/// product, star by saturation. Materialized up to kTableLimit elements,
/// structural (computed on demand) beyond. Throws SizeGuardError when
/// |K|^(n²) exceeds limits.max_carrier.
KleeneAlgebra matrix_algebra(const KleeneAlgebra& base, int n, const Limits& limits = {});

/// Scalar embedding K -> M_n(K), a ↦ diag(a, ..., a).
AlgebraHomomorphism scalar_embedding(const KleeneAlgebra& base, const KleeneAlgebra& matrices, int n);

} // namespace kmod
