#include "kmod/matrix.hpp"

#include <limits>
#include <sstream>

namespace kmod {

MatrixCodec::MatrixCodec(KleeneAlgebra base, int dim) : base_(std::move(base)), dim_(dim), count_(1) {
    if (dim_ < 1) {
        throw PreconditionError("matrix dimension must be positive");
    }
    const std::size_t cells = static_cast<std::size_t>(dim_) * dim_;
    for (std::size_t i = 0; i < cells; ++i) {
        if (count_ > std::numeric_limits<std::size_t>::max() / base_.size()) {
            count_ = std::numeric_limits<std::size_t>::max();
            return;
        }
        count_ *= base_.size();
    }
}

Elem MatrixCodec::encode(std::span<const Elem> entries) const {
    std::size_t index = 0;
    for (std::size_t p = entries.size(); p-- > 0;) {
        index = index * base_.size() + entries[p];
    }
    return static_cast<Elem>(index);
}

std::vector<Elem> MatrixCodec::decode(Elem index) const {
    std::vector<Elem> entries(static_cast<std::size_t>(dim_) * dim_);
    std::size_t rest = index;
    for (auto& e : entries) {
        e = static_cast<Elem>(rest % base_.size());
        rest /= base_.size();
    }
    return entries;
}

MatrixElement::MatrixElement(KleeneAlgebra base, int dim, std::vector<Elem> entries)
    : base_(std::move(base)), dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != static_cast<std::size_t>(dim_) * dim_) {
        throw ValidationError("matrix needs " + std::to_string(dim_ * dim_) + " entries");
    }
    for (Elem e : entries_) {
        if (e >= base_.size()) {
            throw ValidationError("matrix entry out of range for '" + base_.name() + "'");
        }
    }
}

MatrixElement MatrixElement::zero(const KleeneAlgebra& base, int dim) {
    return {base, dim, std::vector<Elem>(static_cast<std::size_t>(dim) * dim, base.zero())};
}

MatrixElement MatrixElement::identity(const KleeneAlgebra& base, int dim) {
    auto m = zero(base, dim);
    for (int i = 0; i < dim; ++i) {
        m.entries_[static_cast<std::size_t>(i * dim + i)] = base.one();
    }
    return m;
}

MatrixElement MatrixElement::unit(const KleeneAlgebra& base, int dim, int i, int j) {
    auto m = zero(base, dim);
    m.entries_[static_cast<std::size_t>(i * dim + j)] = base.one();
    return m;
}

MatrixElement MatrixElement::all_ones(const KleeneAlgebra& base, int dim) {
    return {base, dim, std::vector<Elem>(static_cast<std::size_t>(dim) * dim, base.one())};
}

MatrixElement MatrixElement::from_index(const MatrixCodec& codec, Elem index) {
    return {codec.base(), codec.dim(), codec.decode(index)};
}

MatrixElement MatrixElement::operator+(const MatrixElement& other) const {
    auto out = *this;
    for (std::size_t p = 0; p < entries_.size(); ++p) {
        out.entries_[p] = base_.add(entries_[p], other.entries_[p]);
    }
    return out;
}

MatrixElement MatrixElement::operator*(const MatrixElement& other) const {
    auto out = zero(base_, dim_);
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) {
            Elem sum = base_.zero();
            for (int k = 0; k < dim_; ++k) {
                sum = base_.add(sum, base_.mul(at(r, k), other.at(k, c)));
            }
            out.entries_[static_cast<std::size_t>(r * dim_ + c)] = sum;
        }
    }
    return out;
}

bool MatrixElement::operator==(const MatrixElement& other) const {
    return dim_ == other.dim_ && entries_ == other.entries_;
}

std::string MatrixElement::to_string() const {
    std::ostringstream out;
    out << '[';
    for (int r = 0; r < dim_; ++r) {
        out << (r ? ",[" : "[");
        for (int c = 0; c < dim_; ++c) {
            out << (c ? "," : "") << base_.label(at(r, c));
        }
        out << ']';
    }
    out << ']';
    return out.str();
}

MatrixElement star_saturate(const MatrixElement& a) {
    auto s = MatrixElement::identity(a.base(), a.dim());
    for (;;) {
        auto next = s + a * s;
        if (next == s) {
            return s;
        }
        s = std::move(next);
    }
}

KleeneAlgebra matrix_algebra(const KleeneAlgebra& base, int n, const Limits& limits) {
    MatrixCodec codec(base, n);
    if (codec.count() > limits.max_carrier) {
        throw SizeGuardError("M" + std::to_string(n) + "(" + base.name() + ") would have more than " +
                             std::to_string(limits.max_carrier) + " elements");
    }
    KleeneAlgebra::Structure s;
    s.name = "M" + std::to_string(n) + "(" + base.name() + ")";
    if (!base.key().empty()) {
        s.key = "M" + std::to_string(n) + "(" + base.key() + ")";
    }
    s.size = static_cast<Elem>(codec.count());
    s.zero = MatrixElement::zero(base, n).index(codec);
    s.one = MatrixElement::identity(base, n).index(codec);
    s.add = [codec](Elem a, Elem b) {
        return (MatrixElement::from_index(codec, a) + MatrixElement::from_index(codec, b)).index(codec);
    };
    s.mul = [codec](Elem a, Elem b) {
        return (MatrixElement::from_index(codec, a) * MatrixElement::from_index(codec, b)).index(codec);
    };
    s.star = [codec](Elem a) { return star_saturate(MatrixElement::from_index(codec, a)).index(codec); };
    s.labeler = [codec](Elem a) { return MatrixElement::from_index(codec, a).to_string(); };
    return KleeneAlgebra::structural(std::move(s));
}

AlgebraHomomorphism scalar_embedding(const KleeneAlgebra& base, const KleeneAlgebra& matrices, int n) {
    MatrixCodec codec(base, n);
    if (codec.count() != matrices.size()) {
        throw AlgebraMismatchError("'" + matrices.name() + "' is not M" + std::to_string(n) + "(" + base.name() + ")");
    }
    std::vector<Elem> map(base.size());
    for (Elem a = 0; a < base.size(); ++a) {
        auto m = MatrixElement::zero(base, n);
        std::vector<Elem> entries = m.entries();
        for (int i = 0; i < n; ++i) {
            entries[static_cast<std::size_t>(i * n + i)] = a;
        }
        map[a] = codec.encode(entries);
    }
    return {base, matrices, std::move(map)};
}

} // namespace kmod
