#include "kmod/constructions.hpp"

#include "kmod/matrix.hpp"

#include <algorithm>
#include <deque>

namespace kmod {

namespace {

std::vector<std::string> algebra_labels(const KleeneAlgebra& k) {
    std::vector<std::string> labels(k.size());
    for (Elem a = 0; a < k.size(); ++a) {
        labels[a] = k.label(a);
    }
    return labels;
}

} // namespace

KleeneModule regular_module(const KleeneAlgebra& k, Side side) {
    if (k.size() > kModuleTableLimit) {
        throw SizeGuardError("regular module of '" + k.name() + "' is too large to materialize");
    }
    const Elem n = k.size();
    KleeneModule::Parts parts;
    parts.name = k.name() + (side == Side::bi ? "_reg" : side == Side::left ? "_regL" : "_regR");
    parts.size = n;
    parts.zero = k.zero();
    parts.add.resize(std::size_t{n} * n);
    std::vector<Elem> mul(std::size_t{n} * n);
    for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
            parts.add[a * n + b] = k.add(a, b);
            mul[a * n + b] = k.mul(a, b);
        }
    }
    FreeBasis basis{{k.one()}, {}};
    basis.coords.resize(n);
    for (Elem a = 0; a < n; ++a) {
        basis.coords[a] = a;
    }
    if (side != Side::right) {
        parts.left = ScalarAction{k, mul};
        parts.left_basis = basis;
    }
    if (side != Side::left) {
        parts.right = ScalarAction{k, mul};
        parts.right_basis = basis;
    }
    parts.labels = algebra_labels(k);
    return KleeneModule::make(std::move(parts));
}

KleeneModule algebra_as_bimodule(const KleeneAlgebra& k, std::span<const Elem> subset, Side side) {
    std::vector<Elem> members(subset.begin(), subset.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() == k.size()) {
        return regular_module(k, side);
    }
    const Subalgebra sub = subalgebra(k, members);
    auto regular = regular_module(k, side);
    KleeneModule result = regular;
    if (side != Side::right) {
        result = restrict_scalars(result, Side::left, sub.algebra, sub.embedding);
    }
    if (side != Side::left) {
        result = restrict_scalars(result, Side::right, sub.algebra, sub.embedding);
    }
    return result.renamed(k.name() + "_over_" + sub.algebra.name());
}

KleeneModule submodule_generated(const KleeneAlgebra& k, std::span<const Elem> gens, Side side) {
    if (gens.empty()) {
        throw PreconditionError("submodule_generated needs at least one generator");
    }
    std::vector<bool> in(k.size(), false);
    std::vector<Elem> members;
    std::deque<Elem> queue;
    auto admit = [&](Elem x) {
        if (!in[x]) {
            in[x] = true;
            members.push_back(x);
            queue.push_back(x);
        }
    };
    admit(k.zero());
    for (Elem g : gens) {
        if (g >= k.size()) {
            throw ValidationError("generator out of range");
        }
        admit(g);
    }
    while (!queue.empty()) {
        const Elem x = queue.front();
        queue.pop_front();
        for (Elem a = 0; a < k.size(); ++a) {
            if (side != Side::right) {
                admit(k.mul(a, x));
            }
            if (side != Side::left) {
                admit(k.mul(x, a));
            }
        }
        const std::size_t count = members.size();
        for (std::size_t i = 0; i < count; ++i) {
            admit(k.add(x, members[i]));
        }
    }
    std::sort(members.begin(), members.end());
    auto sub = submodule(regular_module(k, side).without_bases(), members, k.name() + "_ideal");
    return sub.module;
}

FreeModule free_module(const KleeneAlgebra& k, std::size_t rank, Side side, const Limits& limits) {
    std::size_t count = 1;
    for (std::size_t j = 0; j < rank; ++j) {
        count *= k.size();
        if (count > limits.max_carrier || count > kModuleTableLimit) {
            throw SizeGuardError("free module " + k.name() + "^" + std::to_string(rank) + " exceeds the carrier bound");
        }
    }
    const auto n = static_cast<Elem>(count);
    const Elem base = k.size();
    auto digits = [&](Elem x) {
        std::vector<Elem> d(rank);
        for (auto& v : d) {
            v = x % base;
            x /= base;
        }
        return d;
    };
    auto encode = [&](const std::vector<Elem>& d) {
        Elem x = 0;
        for (std::size_t j = rank; j-- > 0;) {
            x = x * base + d[j];
        }
        return x;
    };
    std::vector<std::vector<Elem>> decoded(n);
    for (Elem x = 0; x < n; ++x) {
        decoded[x] = digits(x);
    }

    KleeneModule::Parts parts;
    parts.name = k.name() + "^" + std::to_string(rank) + (side == Side::left ? "L" : side == Side::right ? "R" : "");
    parts.size = n;
    parts.zero = encode(std::vector<Elem>(rank, k.zero()));
    parts.add.resize(std::size_t{n} * n);
    for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y) {
            std::vector<Elem> d(rank);
            for (std::size_t j = 0; j < rank; ++j) {
                d[j] = k.add(decoded[x][j], decoded[y][j]);
            }
            parts.add[x * n + y] = encode(d);
        }
    }
    std::vector<Elem> basis(rank);
    for (std::size_t j = 0; j < rank; ++j) {
        std::vector<Elem> d(rank, k.zero());
        d[j] = k.one();
        basis[j] = encode(d);
    }
    FreeBasis free_basis{basis, {}};
    free_basis.coords.reserve(std::size_t{n} * rank);
    for (Elem x = 0; x < n; ++x) {
        free_basis.coords.insert(free_basis.coords.end(), decoded[x].begin(), decoded[x].end());
    }
    if (side != Side::right) {
        std::vector<Elem> table(std::size_t{base} * n);
        for (Elem a = 0; a < base; ++a) {
            for (Elem x = 0; x < n; ++x) {
                std::vector<Elem> d(rank);
                for (std::size_t j = 0; j < rank; ++j) {
                    d[j] = k.mul(a, decoded[x][j]);
                }
                table[a * n + x] = encode(d);
            }
        }
        parts.left = ScalarAction{k, std::move(table)};
        parts.left_basis = free_basis;
    }
    if (side != Side::left) {
        std::vector<Elem> table(std::size_t{n} * base);
        for (Elem x = 0; x < n; ++x) {
            for (Elem b = 0; b < base; ++b) {
                std::vector<Elem> d(rank);
                for (std::size_t j = 0; j < rank; ++j) {
                    d[j] = k.mul(decoded[x][j], b);
                }
                table[x * base + b] = encode(d);
            }
        }
        parts.right = ScalarAction{k, std::move(table)};
        parts.right_basis = free_basis;
    }
    parts.labels.resize(n);
    for (Elem x = 0; x < n; ++x) {
        std::string s = "(";
        for (std::size_t j = 0; j < rank; ++j) {
            s += (j ? "," : "") + k.label(decoded[x][j]);
        }
        parts.labels[x] = s + ")";
    }
    return {KleeneModule::make(std::move(parts)), std::move(basis)};
}

namespace {

// Shared body of column_module / row_module. Vectors use the free-module
// encoding; `column` selects matrix·vector (left) or vector·matrix (right).
KleeneModule vector_module(const KleeneAlgebra& k, const KleeneAlgebra& matrices, int n, bool column) {
    MatrixCodec codec(k, n);
    if (codec.count() != matrices.size()) {
        throw AlgebraMismatchError("'" + matrices.name() + "' is not M" + std::to_string(n) + "(" + k.name() + ")");
    }
    auto free = free_module(k, static_cast<std::size_t>(n), column ? Side::right : Side::left);
    auto parts = free.module.parts();
    const Elem size = parts.size;
    const auto rank = static_cast<std::size_t>(n);
    const auto& basis = column ? *parts.right_basis : *parts.left_basis;
    auto encode = [&](const std::vector<Elem>& d) {
        Elem x = 0;
        for (std::size_t j = rank; j-- > 0;) {
            x = x * k.size() + d[j];
        }
        return x;
    };
    std::vector<Elem> table(std::size_t{matrices.size()} * size);
    for (Elem a = 0; a < matrices.size(); ++a) {
        const auto m = MatrixElement::from_index(codec, a);
        for (Elem x = 0; x < size; ++x) {
            std::vector<Elem> out(rank, k.zero());
            for (std::size_t r = 0; r < rank; ++r) {
                for (std::size_t c = 0; c < rank; ++c) {
                    if (column) {
                        out[r] = k.add(out[r], k.mul(m.at(static_cast<int>(r), static_cast<int>(c)), basis.coord(x, c)));
                    } else {
                        out[c] = k.add(out[c], k.mul(basis.coord(x, r), m.at(static_cast<int>(r), static_cast<int>(c))));
                    }
                }
            }
            if (column) {
                table[std::size_t{a} * size + x] = encode(out);
            } else {
                table[std::size_t{x} * matrices.size() + a] = encode(out);
            }
        }
    }
    if (column) {
        parts.left = ScalarAction{matrices, std::move(table)};
        parts.name = k.name() + "^" + std::to_string(n) + "_col";
    } else {
        parts.right = ScalarAction{matrices, std::move(table)};
        parts.name = k.name() + "^" + std::to_string(n) + "_row";
    }
    return KleeneModule::make(std::move(parts));
}

} // namespace

KleeneModule column_module(const KleeneAlgebra& k, const KleeneAlgebra& matrices, int n) {
    return vector_module(k, matrices, n, true);
}

KleeneModule row_module(const KleeneAlgebra& k, const KleeneAlgebra& matrices, int n) {
    return vector_module(k, matrices, n, false);
}

KleeneModule trivial_module_like(const KleeneModule& like) {
    KleeneModule::Parts parts;
    parts.name = "trivial";
    parts.size = 1;
    parts.zero = 0;
    parts.add = {0};
    if (like.has_left()) {
        parts.left = ScalarAction{like.left_algebra(), std::vector<Elem>(like.left_algebra().size(), 0)};
    }
    if (like.has_right()) {
        parts.right = ScalarAction{like.right_algebra(), std::vector<Elem>(like.right_algebra().size(), 0)};
    }
    parts.labels = {"0"};
    return KleeneModule::make(std::move(parts));
}

Submodule submodule(const KleeneModule& parent, std::span<const Elem> subset, std::string name) {
    std::vector<Elem> members(subset.begin(), subset.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    constexpr Elem kNone = static_cast<Elem>(-1);
    std::vector<Elem> position(parent.size(), kNone);
    for (std::size_t i = 0; i < members.size(); ++i) {
        position[members[i]] = static_cast<Elem>(i);
    }
    auto lookup = [&](Elem x, const char* what) {
        if (position[x] == kNone) {
            throw PreconditionError("subset of '" + parent.name() + "' is not closed under " + what);
        }
        return position[x];
    };
    const auto n = static_cast<Elem>(members.size());
    KleeneModule::Parts parts;
    parts.name = name.empty() ? parent.name() + "_sub" : std::move(name);
    parts.size = n;
    parts.zero = lookup(parent.zero(), "zero");
    parts.add.resize(std::size_t{n} * n);
    for (Elem i = 0; i < n; ++i) {
        for (Elem j = 0; j < n; ++j) {
            parts.add[i * n + j] = lookup(parent.add(members[i], members[j]), "add");
        }
    }
    if (parent.has_left()) {
        const auto& k = parent.left_algebra();
        std::vector<Elem> table(std::size_t{k.size()} * n);
        for (Elem a = 0; a < k.size(); ++a) {
            for (Elem i = 0; i < n; ++i) {
                table[a * n + i] = lookup(parent.act_left(a, members[i]), "the left action");
            }
        }
        parts.left = ScalarAction{k, std::move(table)};
    }
    if (parent.has_right()) {
        const auto& k = parent.right_algebra();
        std::vector<Elem> table(std::size_t{n} * k.size());
        for (Elem i = 0; i < n; ++i) {
            for (Elem b = 0; b < k.size(); ++b) {
                table[i * k.size() + b] = lookup(parent.act_right(members[i], b), "the right action");
            }
        }
        parts.right = ScalarAction{k, std::move(table)};
    }
    parts.labels.reserve(n);
    for (Elem x : members) {
        parts.labels.push_back(parent.label(x));
    }
    return {KleeneModule::make(std::move(parts)), std::move(members)};
}

KleeneModule restrict_scalars(const KleeneModule& m, Side side, const KleeneAlgebra& scalars,
                              std::span<const Elem> embedding) {
    if (embedding.size() != scalars.size()) {
        throw ValidationError("scalar embedding has wrong length");
    }
    auto parts = m.parts();
    const Elem n = m.size();
    if (side == Side::left || side == Side::bi) {
        std::vector<Elem> table(std::size_t{scalars.size()} * n);
        for (Elem a = 0; a < scalars.size(); ++a) {
            for (Elem x = 0; x < n; ++x) {
                table[a * n + x] = m.act_left(embedding[a], x);
            }
        }
        parts.left = ScalarAction{scalars, std::move(table)};
        parts.left_basis.reset();
    }
    if (side == Side::right || side == Side::bi) {
        std::vector<Elem> table(std::size_t{n} * scalars.size());
        for (Elem x = 0; x < n; ++x) {
            for (Elem b = 0; b < scalars.size(); ++b) {
                table[x * scalars.size() + b] = m.act_right(x, embedding[b]);
            }
        }
        parts.right = ScalarAction{scalars, std::move(table)};
        parts.right_basis.reset();
    }
    return KleeneModule::make(std::move(parts));
}

} // namespace kmod
