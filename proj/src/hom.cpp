#include "kmod/hom.hpp"

#include "kmod/constructions.hpp"
#include "lattice.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace kmod {

namespace {

using detail::kUnset;

bool respects_left(Respect r) { return r != Respect::right; }
bool respects_right(Respect r) { return r != Respect::left; }

void require_compatible(const KleeneModule& source, const KleeneModule& target, Respect respect) {
    if (respects_left(respect)) {
        if (!source.has_left() || !target.has_left()) {
            throw PreconditionError("left-linear maps need left actions on both modules");
        }
        if (!source.left_algebra().same_as(target.left_algebra())) {
            throw AlgebraMismatchError("left algebras differ: '" + source.left_algebra().name() + "' vs '" +
                                       target.left_algebra().name() + "'");
        }
    }
    if (respects_right(respect)) {
        if (!source.has_right() || !target.has_right()) {
            throw PreconditionError("right-linear maps need right actions on both modules");
        }
        if (!source.right_algebra().same_as(target.right_algebra())) {
            throw AlgebraMismatchError("right algebras differ: '" + source.right_algebra().name() + "' vs '" +
                                       target.right_algebra().name() + "'");
        }
    }
}

// Extends an assignment on generators along the closure, checking every
// operation on every reached element. Returns false on any conflict.
class Extender {
  public:
    Extender(const KleeneModule& source, const KleeneModule& target, Respect respect)
        : m_(source), n_(target), respect_(respect), value_(source.size(), kUnset) {}

    bool run(const std::vector<Elem>& gens, const std::vector<Elem>& images) {
        std::fill(value_.begin(), value_.end(), kUnset);
        reached_.clear();
        queue_.clear();
        if (!set(m_.zero(), n_.zero())) {
            return false;
        }
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (!set(gens[i], images[i])) {
                return false;
            }
        }
        while (!queue_.empty()) {
            const Elem x = queue_.front();
            queue_.pop_front();
            const Elem fx = value_[x];
            if (respects_left(respect_)) {
                const auto& k = m_.left_algebra();
                for (Elem a = 0; a < k.size(); ++a) {
                    if (!set(m_.act_left(a, x), n_.act_left(a, fx))) {
                        return false;
                    }
                }
            }
            if (respects_right(respect_)) {
                const auto& k = m_.right_algebra();
                for (Elem b = 0; b < k.size(); ++b) {
                    if (!set(m_.act_right(x, b), n_.act_right(fx, b))) {
                        return false;
                    }
                }
            }
            // Pair x with everything reached so far; later arrivals pair with x
            // when they are processed.
            const std::size_t count = reached_.size();
            for (std::size_t i = 0; i < count; ++i) {
                const Elem y = reached_[i];
                if (!set(m_.add(x, y), n_.add(fx, value_[y]))) {
                    return false;
                }
            }
        }
        return reached_.size() == m_.size();
    }

    [[nodiscard]] const std::vector<Elem>& values() const { return value_; }

  private:
    bool set(Elem x, Elem v) {
        if (value_[x] == kUnset) {
            value_[x] = v;
            reached_.push_back(x);
            queue_.push_back(x);
            return true;
        }
        return value_[x] == v;
    }

    const KleeneModule& m_;
    const KleeneModule& n_;
    Respect respect_;
    std::vector<Elem> value_;
    std::vector<Elem> reached_;
    std::deque<Elem> queue_;
};

} // namespace

std::vector<Elem> module_generators(const KleeneModule& m, Respect respect) {
    std::vector<std::uint32_t> below(m.size(), 0);
    for (Elem x = 0; x < m.size(); ++x) {
        for (Elem y = 0; y < m.size(); ++y) {
            below[x] += m.leq(y, x) ? 1 : 0;
        }
    }
    std::vector<Elem> order(m.size());
    std::iota(order.begin(), order.end(), Elem{0});
    std::stable_sort(order.begin(), order.end(), [&](Elem a, Elem b) { return below[a] < below[b]; });

    const bool left = respects_left(respect) && m.has_left();
    const bool right = respects_right(respect) && m.has_right();
    std::vector<bool> in(m.size(), false);
    std::vector<Elem> span;
    std::deque<Elem> queue;
    auto admit = [&](Elem x) {
        if (!in[x]) {
            in[x] = true;
            span.push_back(x);
            queue.push_back(x);
        }
    };
    auto close = [&] {
        while (!queue.empty()) {
            const Elem x = queue.front();
            queue.pop_front();
            if (left) {
                for (Elem a = 0; a < m.left_algebra().size(); ++a) {
                    admit(m.act_left(a, x));
                }
            }
            if (right) {
                for (Elem b = 0; b < m.right_algebra().size(); ++b) {
                    admit(m.act_right(x, b));
                }
            }
            const std::size_t count = span.size();
            for (std::size_t i = 0; i < count; ++i) {
                admit(m.add(x, span[i]));
            }
        }
    };
    admit(m.zero());
    close();
    std::vector<Elem> gens;
    for (Elem x : order) {
        if (!in[x]) {
            gens.push_back(x);
            admit(x);
            close();
        }
    }
    return gens;
}

std::vector<std::vector<Elem>> enumerate_homs(const KleeneModule& source, const KleeneModule& target,
                                              Respect respect, const Limits& limits) {
    require_compatible(source, target, respect);
    const auto gens = module_generators(source, respect);
    std::uint64_t candidates = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        candidates *= target.size();
        if (candidates > limits.hom_bound) {
            throw SizeGuardError("hom enumeration " + source.name() + " -> " + target.name() + " needs more than " +
                                 std::to_string(limits.hom_bound) + " candidate maps");
        }
    }
    std::vector<std::vector<Elem>> homs;
    std::vector<Elem> images(gens.size(), 0);
    Extender extend(source, target, respect);
    while (true) {
        if (extend.run(gens, images)) {
            homs.push_back(extend.values());
        }
        std::size_t i = 0;
        while (i < images.size() && ++images[i] == target.size()) {
            images[i] = 0;
            ++i;
        }
        if (i == images.size()) {
            break;
        }
    }
    std::sort(homs.begin(), homs.end());
    return homs;
}

std::optional<Elem> HomModule::index_of(const std::vector<Elem>& table) const {
    const auto it = lookup.find(table);
    if (it == lookup.end()) {
        return std::nullopt;
    }
    return it->second;
}

HomModule hom_module(const KleeneModule& source, const KleeneModule& target, Respect respect,
                     const Limits& limits) {
    if (respect == Respect::both) {
        throw PreconditionError("maps respecting both actions form a hom set without scalar actions");
    }
    struct Builder {
        std::vector<std::vector<Elem>> maps;
        std::map<std::vector<Elem>, Elem> lookup;
        [[nodiscard]] std::optional<Elem> index_of(const std::vector<Elem>& table) const {
            const auto it = lookup.find(table);
            return it == lookup.end() ? std::nullopt : std::optional<Elem>(it->second);
        }
    } result;
    result.maps = enumerate_homs(source, target, respect, limits);
    if (result.maps.size() > kModuleTableLimit) {
        throw SizeGuardError("hom module " + source.name() + " -> " + target.name() + " has " +
                             std::to_string(result.maps.size()) + " elements");
    }
    const auto count = static_cast<Elem>(result.maps.size());
    for (Elem i = 0; i < count; ++i) {
        result.lookup.emplace(result.maps[i], i);
    }
    const Elem width = source.size();
    auto find = [&](const std::vector<Elem>& table, const char* what) {
        const auto idx = result.index_of(table);
        if (!idx) {
            throw PreconditionError(std::string("pointwise ") + what + " of homomorphisms " + source.name() + " -> " +
                                    target.name() + " is not a homomorphism");
        }
        return *idx;
    };

    KleeneModule::Parts parts;
    parts.name = "Hom(" + source.name() + "," + target.name() + ")";
    parts.size = count;
    parts.zero = find(std::vector<Elem>(width, target.zero()), "zero");
    parts.add.resize(std::size_t{count} * count);
    std::vector<Elem> scratch(width);
    for (Elem f = 0; f < count; ++f) {
        for (Elem g = f; g < count; ++g) {
            for (Elem m = 0; m < width; ++m) {
                scratch[m] = target.add(result.maps[f][m], result.maps[g][m]);
            }
            const Elem sum = find(scratch, "sum");
            parts.add[f * count + g] = sum;
            parts.add[g * count + f] = sum;
        }
    }

    // Left action candidates: post-compose with N's left action (respect right)
    // or pre-compose with M's right action (respect left).
    auto build_left = [&](const KleeneAlgebra& k, auto&& apply) {
        std::vector<Elem> table(std::size_t{k.size()} * count);
        for (Elem a = 0; a < k.size(); ++a) {
            for (Elem f = 0; f < count; ++f) {
                for (Elem m = 0; m < width; ++m) {
                    scratch[m] = apply(a, f, m);
                }
                table[a * count + f] = find(scratch, "left action");
            }
        }
        return ScalarAction{k, std::move(table)};
    };
    auto build_right = [&](const KleeneAlgebra& k, auto&& apply) {
        std::vector<Elem> table(std::size_t{count} * k.size());
        for (Elem f = 0; f < count; ++f) {
            for (Elem b = 0; b < k.size(); ++b) {
                for (Elem m = 0; m < width; ++m) {
                    scratch[m] = apply(f, b, m);
                }
                table[f * k.size() + b] = find(scratch, "right action");
            }
        }
        return ScalarAction{k, std::move(table)};
    };
    const auto& maps = result.maps;
    if (respect == Respect::right) {
        if (target.has_left()) {
            parts.left = build_left(target.left_algebra(),
                                    [&](Elem a, Elem f, Elem m) { return target.act_left(a, maps[f][m]); });
        }
        if (source.has_left()) {
            parts.right = build_right(source.left_algebra(),
                                      [&](Elem f, Elem b, Elem m) { return maps[f][source.act_left(b, m)]; });
        }
        if (!parts.left && !parts.right) {
            parts.right = build_right(target.right_algebra(),
                                      [&](Elem f, Elem b, Elem m) { return target.act_right(maps[f][m], b); });
        }
    } else {
        if (target.has_right()) {
            parts.right = build_right(target.right_algebra(),
                                      [&](Elem f, Elem c, Elem m) { return target.act_right(maps[f][m], c); });
        }
        if (source.has_right()) {
            parts.left = build_left(source.right_algebra(),
                                    [&](Elem b, Elem f, Elem m) { return maps[f][source.act_right(m, b)]; });
        }
        if (!parts.left && !parts.right) {
            parts.left = build_left(target.left_algebra(),
                                    [&](Elem a, Elem f, Elem m) { return target.act_left(a, maps[f][m]); });
        }
    }
    parts.labels.resize(count);
    for (Elem f = 0; f < count; ++f) {
        std::string s = "[";
        for (Elem m = 0; m < width; ++m) {
            s += (m ? "," : "") + target.label(maps[f][m]);
        }
        parts.labels[f] = s + "]";
    }
    return HomModule{KleeneModule::make(std::move(parts)), std::move(result.maps), respect, std::move(result.lookup)};
}

HomModule dual_module(const KleeneModule& m, std::optional<Respect> respect, const Limits& limits) {
    const Respect r = respect.value_or(m.has_left() ? Respect::left : Respect::right);
    if (r == Respect::both) {
        throw PreconditionError("a dual respects exactly one side");
    }
    const bool left = r == Respect::left;
    if (left ? !m.has_left() : !m.has_right()) {
        throw PreconditionError("module '" + m.name() + "' has no " + (left ? "left" : "right") + " action");
    }
    const KleeneAlgebra& k = left ? m.left_algebra() : m.right_algebra();
    auto result = hom_module(m, regular_module(k, Side::bi), r, limits);

    auto parts = result.module.parts();
    parts.name = m.name() + "°";
    parts.left_basis.reset();
    parts.right_basis.reset();
    if (const FreeBasis* basis = left ? m.left_basis() : m.right_basis()) {
        // The dual of a free module is free on the other side with the dual basis.
        FreeBasis dual;
        for (std::size_t i = 0; i < basis->rank(); ++i) {
            std::vector<Elem> delta(m.size());
            for (Elem x = 0; x < m.size(); ++x) {
                delta[x] = basis->coord(x, i);
            }
            const auto idx = result.index_of(delta);
            if (!idx) {
                throw Error("dual basis functional missing from the enumerated dual");
            }
            dual.elements.push_back(*idx);
        }
        for (const auto& f : result.maps) {
            for (Elem e : basis->elements) {
                dual.coords.push_back(f[e]);
            }
        }
        if (left) {
            parts.right_basis = std::move(dual);
        } else {
            parts.left_basis = std::move(dual);
        }
    }
    result.module = KleeneModule::make(std::move(parts));
    return result;
}

HomModule end_module(const KleeneModule& m, const Limits& limits) {
    if (m.has_left() && m.has_right()) {
        // Bimodule endomorphisms: a hom set only; use the left-linear module.
        return hom_module(m, m, Respect::left, limits);
    }
    return hom_module(m, m, m.has_left() ? Respect::left : Respect::right, limits);
}

std::optional<ModuleHomomorphism> module_iso_search(const KleeneModule& m, const KleeneModule& n) {
    if (m.has_left() != n.has_left() || m.has_right() != n.has_right()) {
        throw AlgebraMismatchError("modules '" + m.name() + "' and '" + n.name() + "' act on different sides");
    }
    if (m.has_left() && !m.left_algebra().same_as(n.left_algebra())) {
        throw AlgebraMismatchError("left algebras differ");
    }
    if (m.has_right() && !m.right_algebra().same_as(n.right_algebra())) {
        throw AlgebraMismatchError("right algebras differ");
    }
    if (m.size() != n.size()) {
        return std::nullopt;
    }
    detail::Semilattice la{m.size(), m.zero(), [&](Elem x, Elem y) { return m.add(x, y); }};
    detail::Semilattice lb{n.size(), n.zero(), [&](Elem x, Elem y) { return n.add(x, y); }};
    la.analyse();
    lb.analyse();

    // Per element: how many scalars fix it and how many kill it, per side.
    auto profile = [](const KleeneModule& mod) {
        std::vector<std::vector<std::uint32_t>> out(mod.size());
        for (Elem x = 0; x < mod.size(); ++x) {
            std::uint32_t lf = 0, lz = 0, rf = 0, rz = 0;
            if (mod.has_left()) {
                for (Elem a = 0; a < mod.left_algebra().size(); ++a) {
                    const Elem y = mod.act_left(a, x);
                    lf += y == x;
                    lz += y == mod.zero();
                }
            }
            if (mod.has_right()) {
                for (Elem b = 0; b < mod.right_algebra().size(); ++b) {
                    const Elem y = mod.act_right(x, b);
                    rf += y == x;
                    rz += y == mod.zero();
                }
            }
            out[x] = {lf, lz, rf, rz};
        }
        return out;
    };
    const auto pm = profile(m);
    const auto pn = profile(n);

    detail::IsoSearch search(la, lb);
    search.compatible = [&](Elem x, Elem y) { return pm[x] == pn[y]; };
    search.partial = [&](const detail::IsoSearch& s) {
        const Elem j = s.last_assigned();
        const Elem fj = *s.determined(j);
        if (m.has_left()) {
            for (Elem a = 0; a < m.left_algebra().size(); ++a) {
                const auto v = s.determined(m.act_left(a, j));
                if (v && *v != n.act_left(a, fj)) {
                    return false;
                }
            }
        }
        if (m.has_right()) {
            for (Elem b = 0; b < m.right_algebra().size(); ++b) {
                const auto v = s.determined(m.act_right(j, b));
                if (v && *v != n.act_right(fj, b)) {
                    return false;
                }
            }
        }
        return true;
    };
    search.accept = [&](const std::vector<Elem>& map) {
        for (Elem x = 0; x < m.size(); ++x) {
            for (Elem y = x + 1; y < m.size(); ++y) {
                if (map[m.add(x, y)] != n.add(map[x], map[y])) {
                    return false;
                }
            }
            if (m.has_left()) {
                for (Elem a = 0; a < m.left_algebra().size(); ++a) {
                    if (map[m.act_left(a, x)] != n.act_left(a, map[x])) {
                        return false;
                    }
                }
            }
            if (m.has_right()) {
                for (Elem b = 0; b < m.right_algebra().size(); ++b) {
                    if (map[m.act_right(x, b)] != n.act_right(map[x], b)) {
                        return false;
                    }
                }
            }
        }
        return true;
    };
    auto found = search.run();
    if (!found) {
        return std::nullopt;
    }
    return ModuleHomomorphism{m, n, std::move(*found)};
}

} // namespace kmod
