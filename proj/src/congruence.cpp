#include "kmod/congruence.hpp"

#include <deque>
#include <numeric>
#include <set>

namespace kmod {

std::size_t ModuleCongruence::class_count() const {
    std::size_t count = 0;
    for (Elem x = 0; x < partition.size(); ++x) {
        count += partition[x] == x;
    }
    return count;
}

namespace {

class UnionFind {
  public:
    explicit UnionFind(Elem n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Elem{0}); }

    Elem find(Elem x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Keeps the smaller root so representatives are least members.
    bool unite(Elem x, Elem y) {
        x = find(x);
        y = find(y);
        if (x == y) {
            return false;
        }
        if (y < x) {
            std::swap(x, y);
        }
        parent_[y] = x;
        return true;
    }

  private:
    std::vector<Elem> parent_;
};

} // namespace

GeneratedCongruence congruence_closure(const KleeneModule& m, std::span<const ElemPair> pairs) {
    GeneratedCongruence result{{m, {}}, {pairs.begin(), pairs.end()}, {}};
    for (const auto& [x, y] : pairs) {
        if (x >= m.size() || y >= m.size()) {
            throw ValidationError("congruence generator out of range");
        }
    }
    UnionFind uf(m.size());
    std::deque<ElemPair> pending(pairs.begin(), pairs.end());

    auto drain = [&] {
        while (!pending.empty()) {
            const auto [x, y] = pending.front();
            pending.pop_front();
            if (!uf.unite(x, y)) {
                continue;
            }
            ++result.trace.merges;
            for (Elem z = 0; z < m.size(); ++z) {
                pending.emplace_back(m.add(x, z), m.add(y, z));
            }
            if (m.has_left()) {
                for (Elem a = 0; a < m.left_algebra().size(); ++a) {
                    pending.emplace_back(m.act_left(a, x), m.act_left(a, y));
                }
            }
            if (m.has_right()) {
                for (Elem b = 0; b < m.right_algebra().size(); ++b) {
                    pending.emplace_back(m.act_right(x, b), m.act_right(y, b));
                }
            }
        }
    };

    // In the quotient, [u] <= [v] iff [u + v] = [v].
    auto violations = [&] {
        std::vector<ElemPair> found;
        auto leq = [&](Elem u, Elem v) { return uf.find(m.add(u, v)) == uf.find(v); };
        for (Elem x = 0; x < m.size(); ++x) {
            if (uf.find(x) != x) {
                continue;
            }
            if (m.has_left()) {
                const auto& k = m.left_algebra();
                for (Elem a = 0; a < k.size(); ++a) {
                    const Elem starred = m.act_left(k.star(a), x);
                    if (leq(m.act_left(a, x), x) && !leq(starred, x)) {
                        found.emplace_back(m.add(starred, x), x);
                        result.trace.log.push_back("left repair at a=" + k.label(a) + ", m=" + m.label(x));
                    }
                }
            }
            if (m.has_right()) {
                const auto& k = m.right_algebra();
                for (Elem b = 0; b < k.size(); ++b) {
                    const Elem starred = m.act_right(x, k.star(b));
                    if (leq(m.act_right(x, b), x) && !leq(starred, x)) {
                        found.emplace_back(m.add(starred, x), x);
                        result.trace.log.push_back("right repair at b=" + k.label(b) + ", m=" + m.label(x));
                    }
                }
            }
        }
        return found;
    };

    drain();
    while (true) {
        auto repairs = violations();
        if (repairs.empty()) {
            break;
        }
        result.trace.repairs += repairs.size();
        pending.insert(pending.end(), repairs.begin(), repairs.end());
        drain();
    }
    auto& partition = result.congruence.partition;
    partition.resize(m.size());
    for (Elem x = 0; x < m.size(); ++x) {
        partition[x] = uf.find(x);
    }
    return result;
}

bool is_congruence(const KleeneModule& m, std::span<const Elem> partition) {
    for (Elem x = 0; x < m.size(); ++x) {
        const Elem y = partition[x];
        if (partition[y] != y) {
            return false;
        }
        if (x == y) {
            continue;
        }
        for (Elem z = 0; z < m.size(); ++z) {
            if (partition[m.add(x, z)] != partition[m.add(y, z)]) {
                return false;
            }
        }
        if (m.has_left()) {
            for (Elem a = 0; a < m.left_algebra().size(); ++a) {
                if (partition[m.act_left(a, x)] != partition[m.act_left(a, y)]) {
                    return false;
                }
            }
        }
        if (m.has_right()) {
            for (Elem b = 0; b < m.right_algebra().size(); ++b) {
                if (partition[m.act_right(x, b)] != partition[m.act_right(y, b)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

QuotientModule quotient_by(const KleeneModule& m, GeneratedCongruence congruence) {
    const auto& partition = congruence.congruence.partition;
    std::vector<Elem> reps;
    std::vector<Elem> projection(m.size());
    std::vector<Elem> class_of(m.size(), static_cast<Elem>(-1));
    for (Elem x = 0; x < m.size(); ++x) {
        const Elem r = partition[x];
        if (class_of[r] == static_cast<Elem>(-1)) {
            class_of[r] = static_cast<Elem>(reps.size());
            reps.push_back(r);
        }
        projection[x] = class_of[r];
    }
    const auto n = static_cast<Elem>(reps.size());
    KleeneModule::Parts parts;
    parts.name = m.name() + "/~";
    parts.size = n;
    parts.zero = projection[m.zero()];
    parts.add.resize(std::size_t{n} * n);
    for (Elem i = 0; i < n; ++i) {
        for (Elem j = 0; j < n; ++j) {
            parts.add[i * n + j] = projection[m.add(reps[i], reps[j])];
        }
    }
    if (m.has_left()) {
        const auto& k = m.left_algebra();
        std::vector<Elem> table(std::size_t{k.size()} * n);
        for (Elem a = 0; a < k.size(); ++a) {
            for (Elem i = 0; i < n; ++i) {
                table[a * n + i] = projection[m.act_left(a, reps[i])];
            }
        }
        parts.left = ScalarAction{k, std::move(table)};
    }
    if (m.has_right()) {
        const auto& k = m.right_algebra();
        std::vector<Elem> table(std::size_t{n} * k.size());
        for (Elem i = 0; i < n; ++i) {
            for (Elem b = 0; b < k.size(); ++b) {
                table[i * k.size() + b] = projection[m.act_right(reps[i], b)];
            }
        }
        parts.right = ScalarAction{k, std::move(table)};
    }
    for (Elem r : reps) {
        parts.labels.push_back("[" + m.label(r) + "]");
    }
    return {KleeneModule::make(std::move(parts)), std::move(congruence), std::move(projection)};
}

QuotientModule quotient_module(const KleeneModule& m, std::span<const ElemPair> pairs) {
    return quotient_by(m, congruence_closure(m, pairs));
}

} // namespace kmod
