#pragma once

// Finite join-semilattice helpers used by the isomorphism searches.

#include "kmod/common.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

namespace kmod::detail {

inline constexpr Elem kUnset = static_cast<Elem>(-1);

/// Additive structure of a finite carrier plus what the search derives from it.
struct Semilattice {
    Elem size = 0;
    Elem zero = 0;
    std::function<Elem(Elem, Elem)> join;

    std::vector<Elem> irreducibles;            // nonzero x not a join of strictly smaller elements
    std::vector<std::vector<Elem>> below;      // irreducibles <= x, by position in `irreducibles`
    std::vector<std::uint32_t> downset, upset; // sizes of principal ideal / filter

    void analyse() {
        downset.assign(size, 0);
        upset.assign(size, 0);
        std::vector<Elem> strict_join(size, zero);
        for (Elem x = 0; x < size; ++x) {
            for (Elem y = 0; y < size; ++y) {
                if (join(y, x) == x) {
                    ++downset[x];
                    ++upset[y];
                    if (y != x) {
                        strict_join[x] = join(strict_join[x], y);
                    }
                }
            }
        }
        irreducibles.clear();
        for (Elem x = 0; x < size; ++x) {
            if (x != zero && strict_join[x] != x) {
                irreducibles.push_back(x);
            }
        }
        std::stable_sort(irreducibles.begin(), irreducibles.end(),
                         [&](Elem a, Elem b) { return downset[a] < downset[b]; });
        below.assign(size, {});
        for (Elem x = 0; x < size; ++x) {
            for (std::size_t k = 0; k < irreducibles.size(); ++k) {
                if (join(irreducibles[k], x) == x) {
                    below[x].push_back(static_cast<Elem>(k));
                }
            }
        }
    }
};

/// Backtracking search for order isomorphisms between two analysed
/// semilattices, mapping zero to zero and irreducibles to irreducibles.
///
/// `compatible(j, j')` prunes single assignments by invariants. `partial`
/// sees the current assignment after each step and may reject it. `accept`
/// gets the full extension and decides whether it is the wanted map.
class IsoSearch {
  public:
    IsoSearch(const Semilattice& a, const Semilattice& b) : a_(a), b_(b) {}

    std::function<bool(Elem, Elem)> compatible;
    std::function<bool(const IsoSearch&)> partial;
    std::function<bool(const std::vector<Elem>&)> accept;

    /// Value of x under the current partial assignment, if every irreducible
    /// below x has been assigned.
    [[nodiscard]] std::optional<Elem> determined(Elem x) const {
        Elem value = b_.zero;
        for (Elem k : a_.below[x]) {
            if (assigned_[k] == kUnset) {
                return std::nullopt;
            }
            value = b_.join(value, assigned_[k]);
        }
        return value;
    }

    [[nodiscard]] Elem last_assigned() const { return a_.irreducibles[depth_ - 1]; }

    std::optional<std::vector<Elem>> run() {
        if (a_.size != b_.size || a_.irreducibles.size() != b_.irreducibles.size()) {
            return std::nullopt;
        }
        assigned_.assign(a_.irreducibles.size(), kUnset);
        used_.assign(b_.size, false);
        depth_ = 0;
        if (step()) {
            return result_;
        }
        return std::nullopt;
    }

  private:
    bool step() {
        if (depth_ == a_.irreducibles.size()) {
            return finish();
        }
        const Elem j = a_.irreducibles[depth_];
        for (Elem candidate : b_.irreducibles) {
            if (used_[candidate] || a_.downset[j] != b_.downset[candidate] ||
                a_.upset[j] != b_.upset[candidate]) {
                continue;
            }
            if (compatible && !compatible(j, candidate)) {
                continue;
            }
            if (!order_consistent(candidate)) {
                continue;
            }
            assigned_[depth_] = candidate;
            used_[candidate] = true;
            ++depth_;
            const bool ok = (!partial || partial(*this)) && step();
            --depth_;
            used_[candidate] = false;
            assigned_[depth_] = kUnset;
            if (ok) {
                return true;
            }
        }
        return false;
    }

    bool order_consistent(Elem candidate) const {
        const Elem j = a_.irreducibles[depth_];
        for (std::size_t k = 0; k < depth_; ++k) {
            const Elem i = a_.irreducibles[k];
            const Elem fi = assigned_[k];
            const bool a_le = a_.join(i, j) == j;
            const bool b_le = b_.join(fi, candidate) == candidate;
            const bool a_ge = a_.join(i, j) == i;
            const bool b_ge = b_.join(fi, candidate) == fi;
            if (a_le != b_le || a_ge != b_ge) {
                return false;
            }
        }
        return true;
    }

    bool finish() {
        std::vector<Elem> map(a_.size, kUnset);
        std::vector<bool> hit(b_.size, false);
        for (Elem x = 0; x < a_.size; ++x) {
            const Elem value = *determined(x);
            if (hit[value]) {
                return false;
            }
            hit[value] = true;
            map[x] = value;
        }
        if (accept && !accept(map)) {
            return false;
        }
        result_ = std::move(map);
        return true;
    }

    const Semilattice& a_;
    const Semilattice& b_;
    std::vector<Elem> assigned_;
    std::vector<bool> used_;
    std::size_t depth_ = 0;
    std::vector<Elem> result_;
};

} // namespace kmod::detail
