#include "kmod/module.hpp"

namespace kmod {

std::string to_string(Respect respect) {
    switch (respect) {
    case Respect::left:
        return "left";
    case Respect::right:
        return "right";
    case Respect::both:
        return "both";
    }
    return "?";
}

namespace {

void check_table(const std::vector<Elem>& table, std::size_t expected, Elem bound, const std::string& what,
                 const std::string& name) {
    if (table.size() != expected) {
        throw ValidationError("module '" + name + "': " + what + " table has " + std::to_string(table.size()) +
                              " entries, expected " + std::to_string(expected));
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] >= bound) {
            throw ValidationError("module '" + name + "': " + what + " entry " + std::to_string(i) +
                                  " out of range (" + std::to_string(table[i]) + ")");
        }
    }
}

void check_basis(const FreeBasis& basis, Elem size, const KleeneAlgebra& algebra, const std::string& name) {
    for (Elem b : basis.elements) {
        if (b >= size) {
            throw ValidationError("module '" + name + "': basis element out of range");
        }
    }
    check_table(basis.coords, std::size_t{size} * basis.rank(), algebra.size(), "basis coordinate", name);
}

} // namespace

KleeneModule KleeneModule::make(Parts parts) {
    const auto& name = parts.name;
    if (parts.size == 0) {
        throw ValidationError("module '" + name + "': carrier must be nonempty");
    }
    if (parts.size > kModuleTableLimit) {
        throw SizeGuardError("module '" + name + "' has " + std::to_string(parts.size) +
                             " elements; materialized modules are capped at " + std::to_string(kModuleTableLimit));
    }
    if (parts.zero >= parts.size) {
        throw ValidationError("module '" + name + "': zero index out of range");
    }
    if (!parts.left && !parts.right) {
        throw ValidationError("module '" + name + "': needs a left or a right action");
    }
    check_table(parts.add, std::size_t{parts.size} * parts.size, parts.size, "add", name);
    if (parts.left) {
        check_table(parts.left->table, std::size_t{parts.left->algebra.size()} * parts.size, parts.size,
                    "left_action", name);
    }
    if (parts.right) {
        check_table(parts.right->table, std::size_t{parts.size} * parts.right->algebra.size(), parts.size,
                    "right_action", name);
    }
    if (parts.left_basis) {
        if (!parts.left) {
            throw ValidationError("module '" + name + "': left basis without left action");
        }
        check_basis(*parts.left_basis, parts.size, parts.left->algebra, name);
    }
    if (parts.right_basis) {
        if (!parts.right) {
            throw ValidationError("module '" + name + "': right basis without right action");
        }
        check_basis(*parts.right_basis, parts.size, parts.right->algebra, name);
    }
    if (!parts.labels.empty() && parts.labels.size() != parts.size) {
        throw ValidationError("module '" + name + "': label count mismatch");
    }
    return KleeneModule(std::make_shared<const Parts>(std::move(parts)));
}

Side KleeneModule::side() const {
    if (has_left() && has_right()) {
        return Side::bi;
    }
    return has_left() ? Side::left : Side::right;
}

const KleeneAlgebra& KleeneModule::left_algebra() const {
    if (!data_->left) {
        throw PreconditionError("module '" + name() + "' has no left action");
    }
    return data_->left->algebra;
}

const KleeneAlgebra& KleeneModule::right_algebra() const {
    if (!data_->right) {
        throw PreconditionError("module '" + name() + "' has no right action");
    }
    return data_->right->algebra;
}

std::string KleeneModule::label(Elem m) const {
    if (!data_->labels.empty()) {
        return data_->labels[m];
    }
    return "#" + std::to_string(m);
}

KleeneModule KleeneModule::renamed(std::string name) const {
    auto parts = *data_;
    parts.name = std::move(name);
    return KleeneModule(std::make_shared<const Parts>(std::move(parts)));
}

KleeneModule KleeneModule::without_bases() const {
    auto parts = *data_;
    parts.left_basis.reset();
    parts.right_basis.reset();
    return KleeneModule(std::make_shared<const Parts>(std::move(parts)));
}

Report check_module_axioms(const KleeneModule& m) {
    Report report("module " + m.name() + " (" + to_string(m.side()) + ", " + std::to_string(m.size()) +
                  " elements)");
    const Elem n = m.size();
    const Elem zero = m.zero();
    auto L = [&](Elem x) { return m.label(x); };
    const Elem* add = m.parts().add.data();
    auto sum = [add, n](Elem x, Elem y) { return add[std::size_t{x} * n + y]; };
    auto leq = [&](Elem x, Elem y) { return sum(x, y) == y; };

    auto& assoc = report.law("add associative");
    auto& comm = report.law("add commutative");
    auto& idem = report.law("add idempotent");
    auto& unit = report.law("zero is additive identity");
    for (Elem x = 0; x < n; ++x) {
        idem.record(sum(x, x) == x, [&] { return "m=" + L(x); });
        unit.record(sum(x, zero) == x && sum(zero, x) == x, [&] { return "m=" + L(x); });
        const Elem* add_x = add + std::size_t{x} * n;
        for (Elem y = 0; y < n; ++y) {
            comm.record(add_x[y] == sum(y, x), [&] { return "m=" + L(x) + ", m'=" + L(y); });
            const Elem* add_xy = add + std::size_t{add_x[y]} * n;
            const Elem* add_y = add + std::size_t{y} * n;
            for (Elem z = 0; z < n; ++z) {
                if (add_xy[z] != add_x[add_y[z]]) {
                    assoc.refute([&] { return "m=" + L(x) + ", m'=" + L(y) + ", m''=" + L(z); });
                }
            }
        }
    }
    assoc.tally(std::uint64_t{n} * n * n);

    if (m.has_left()) {
        const auto& k = m.left_algebra();
        const Elem ks = k.size();
        const Elem* act = m.parts().left->table.data(); // act[a·n + x] = a·x
        auto K = [&](Elem a) { return k.label(a); };
        auto& scalar_sum = report.law("left (a+a')m = am + a'm");
        auto& module_sum = report.law("left a(m+m') = am + am'");
        auto& compat = report.law("left (a·a')m = a(a'm)");
        auto& one = report.law("left 1m = m");
        auto& zero_scalar = report.law("left 0m = 0");
        auto& zero_module = report.law("left a0 = 0");
        auto& quasi = report.law("left quasi-identity am <= m => a*m <= m");
        for (Elem x = 0; x < n; ++x) {
            one.record(m.act_left(k.one(), x) == x, [&] { return "m=" + L(x); });
            zero_scalar.record(m.act_left(k.zero(), x) == zero, [&] { return "m=" + L(x); });
        }
        for (Elem a = 0; a < ks; ++a) {
            zero_module.record(m.act_left(a, zero) == zero, [&] { return "a=" + K(a); });
            const Elem s = k.star(a);
            const Elem* act_a = act + std::size_t{a} * n;
            for (Elem x = 0; x < n; ++x) {
                const Elem ax = act_a[x];
                quasi.record(!leq(ax, x) || leq(m.act_left(s, x), x), [&] { return "a=" + K(a) + ", m=" + L(x); });
            }
            for (Elem b = 0; b < ks; ++b) {
                const Elem* act_b = act + std::size_t{b} * n;
                const Elem* act_sum = act + std::size_t{k.add(a, b)} * n;
                const Elem* act_prod = act + std::size_t{k.mul(a, b)} * n;
                for (Elem x = 0; x < n; ++x) {
                    if (act_sum[x] != sum(act_a[x], act_b[x])) {
                        scalar_sum.refute([&] { return "a=" + K(a) + ", a'=" + K(b) + ", m=" + L(x); });
                    }
                    if (act_prod[x] != act_a[act_b[x]]) {
                        compat.refute([&] { return "a=" + K(a) + ", a'=" + K(b) + ", m=" + L(x); });
                    }
                }
            }
            for (Elem x = 0; x < n; ++x) {
                const Elem* add_x = add + std::size_t{x} * n;
                const Elem* add_ax = add + std::size_t{act_a[x]} * n;
                for (Elem y = 0; y < n; ++y) {
                    if (act_a[add_x[y]] != add_ax[act_a[y]]) {
                        module_sum.refute([&] { return "a=" + K(a) + ", m=" + L(x) + ", m'=" + L(y); });
                    }
                }
            }
        }
        scalar_sum.tally(std::uint64_t{ks} * ks * n);
        compat.tally(std::uint64_t{ks} * ks * n);
        module_sum.tally(std::uint64_t{ks} * n * n);
    }

    if (m.has_right()) {
        const auto& k = m.right_algebra();
        const Elem ks = k.size();
        const Elem* act = m.parts().right->table.data(); // act[x·|K| + b] = x·b
        auto at = [act, ks](Elem x, Elem b) { return act[std::size_t{x} * ks + b]; };
        auto K = [&](Elem a) { return k.label(a); };
        auto& scalar_sum = report.law("right m(b+b') = mb + mb'");
        auto& module_sum = report.law("right (m+m')b = mb + m'b");
        auto& compat = report.law("right m(b·b') = (mb)b'");
        auto& one = report.law("right m1 = m");
        auto& zero_scalar = report.law("right m0 = 0");
        auto& zero_module = report.law("right 0b = 0");
        auto& quasi = report.law("right quasi-identity mb <= m => mb* <= m");
        for (Elem x = 0; x < n; ++x) {
            one.record(at(x, k.one()) == x, [&] { return "m=" + L(x); });
            zero_scalar.record(at(x, k.zero()) == zero, [&] { return "m=" + L(x); });
        }
        for (Elem b = 0; b < ks; ++b) {
            zero_module.record(at(zero, b) == zero, [&] { return "b=" + K(b); });
            const Elem s = k.star(b);
            for (Elem x = 0; x < n; ++x) {
                const Elem xb = at(x, b);
                quasi.record(!leq(xb, x) || leq(at(x, s), x), [&] { return "b=" + K(b) + ", m=" + L(x); });
            }
            std::vector<Elem> bc_sum(ks), bc_prod(ks);
            for (Elem c = 0; c < ks; ++c) {
                bc_sum[c] = k.add(b, c);
                bc_prod[c] = k.mul(b, c);
            }
            for (Elem x = 0; x < n; ++x) {
                const Elem* act_x = act + std::size_t{x} * ks;
                const Elem* act_xb = act + std::size_t{act_x[b]} * ks;
                const Elem* add_xb = add + std::size_t{act_x[b]} * n;
                for (Elem c = 0; c < ks; ++c) {
                    if (act_x[bc_sum[c]] != add_xb[act_x[c]]) {
                        scalar_sum.refute([&] { return "b=" + K(b) + ", b'=" + K(c) + ", m=" + L(x); });
                    }
                    if (act_x[bc_prod[c]] != act_xb[c]) {
                        compat.refute([&] { return "b=" + K(b) + ", b'=" + K(c) + ", m=" + L(x); });
                    }
                }
            }
            for (Elem x = 0; x < n; ++x) {
                const Elem* add_x = add + std::size_t{x} * n;
                const Elem* add_xb = add + std::size_t{at(x, b)} * n;
                for (Elem y = 0; y < n; ++y) {
                    if (at(add_x[y], b) != add_xb[at(y, b)]) {
                        module_sum.refute([&] { return "b=" + K(b) + ", m=" + L(x) + ", m'=" + L(y); });
                    }
                }
            }
        }
        scalar_sum.tally(std::uint64_t{ks} * ks * n);
        compat.tally(std::uint64_t{ks} * ks * n);
        module_sum.tally(std::uint64_t{ks} * n * n);
    }

    if (m.has_left() && m.has_right()) {
        const auto& a_alg = m.left_algebra();
        const auto& b_alg = m.right_algebra();
        const Elem bs = b_alg.size();
        const Elem* left = m.parts().left->table.data();
        const Elem* right = m.parts().right->table.data();
        auto& bimod = report.law("bimodule (am)b = a(mb)");
        for (Elem a = 0; a < a_alg.size(); ++a) {
            const Elem* left_a = left + std::size_t{a} * n;
            for (Elem x = 0; x < n; ++x) {
                const Elem* right_ax = right + std::size_t{left_a[x]} * bs;
                const Elem* right_x = right + std::size_t{x} * bs;
                for (Elem b = 0; b < bs; ++b) {
                    if (right_ax[b] != left_a[right_x[b]]) {
                        bimod.refute([&] { return "a=" + a_alg.label(a) + ", m=" + L(x) + ", b=" + b_alg.label(b); });
                    }
                }
            }
        }
        bimod.tally(std::uint64_t{a_alg.size()} * n * bs);
    }
    return report;
}

Respect shared_respect(const KleeneModule& a, const KleeneModule& b) {
    const bool left = a.has_left() && b.has_left() && a.left_algebra().same_as(b.left_algebra());
    const bool right = a.has_right() && b.has_right() && a.right_algebra().same_as(b.right_algebra());
    if (left && right) {
        return Respect::both;
    }
    if (left) {
        return Respect::left;
    }
    if (right) {
        return Respect::right;
    }
    throw AlgebraMismatchError("modules '" + a.name() + "' and '" + b.name() + "' share no scalar action");
}

Report check_module_homomorphism(const ModuleHomomorphism& h, Respect respect) {
    const auto& s = h.source;
    const auto& t = h.target;
    if (h.map.size() != s.size()) {
        throw ValidationError("homomorphism table has wrong length for '" + s.name() + "'");
    }
    for (Elem v : h.map) {
        if (v >= t.size()) {
            throw ValidationError("homomorphism value out of range for '" + t.name() + "'");
        }
    }
    Report report("module homomorphism " + s.name() + " -> " + t.name() + " (" + to_string(respect) + ")");
    report.law("preserves zero").record(h(s.zero()) == t.zero(), [&] { return "f(0)=" + t.label(h(s.zero())); });
    auto& add = report.law("preserves add");
    for (Elem x = 0; x < s.size(); ++x) {
        for (Elem y = 0; y < s.size(); ++y) {
            add.record(h(s.add(x, y)) == t.add(h(x), h(y)), [&] { return "m=" + s.label(x) + ", m'=" + s.label(y); });
        }
    }
    if (respect != Respect::right) {
        if (!s.has_left() || !t.has_left() || !s.left_algebra().same_as(t.left_algebra())) {
            throw AlgebraMismatchError("left actions of '" + s.name() + "' and '" + t.name() + "' differ");
        }
        const auto& k = s.left_algebra();
        auto& law = report.law("preserves left action");
        for (Elem a = 0; a < k.size(); ++a) {
            for (Elem x = 0; x < s.size(); ++x) {
                law.record(h(s.act_left(a, x)) == t.act_left(a, h(x)), [&] { return "a=" + k.label(a) + ", m=" + s.label(x); });
            }
        }
    }
    if (respect != Respect::left) {
        if (!s.has_right() || !t.has_right() || !s.right_algebra().same_as(t.right_algebra())) {
            throw AlgebraMismatchError("right actions of '" + s.name() + "' and '" + t.name() + "' differ");
        }
        const auto& k = s.right_algebra();
        auto& law = report.law("preserves right action");
        for (Elem b = 0; b < k.size(); ++b) {
            for (Elem x = 0; x < s.size(); ++x) {
                law.record(h(s.act_right(x, b)) == t.act_right(h(x), b), [&] { return "b=" + k.label(b) + ", m=" + s.label(x); });
            }
        }
    }
    return report;
}

bool is_bijection(const std::vector<Elem>& map, Elem target_size) {
    if (map.size() != target_size) {
        return false;
    }
    std::vector<bool> hit(target_size, false);
    for (Elem v : map) {
        if (v >= target_size || hit[v]) {
            return false;
        }
        hit[v] = true;
    }
    return true;
}

std::vector<Elem> inverse_map(const std::vector<Elem>& bijection) {
    std::vector<Elem> inverse(bijection.size());
    for (Elem x = 0; x < bijection.size(); ++x) {
        inverse[bijection[x]] = x;
    }
    return inverse;
}

bool identical_modules(const KleeneModule& a, const KleeneModule& b) {
    const auto& pa = a.parts();
    const auto& pb = b.parts();
    if (pa.size != pb.size || pa.zero != pb.zero || pa.add != pb.add) {
        return false;
    }
    if (pa.left.has_value() != pb.left.has_value() || pa.right.has_value() != pb.right.has_value()) {
        return false;
    }
    if (pa.left && (!pa.left->algebra.same_as(pb.left->algebra) || pa.left->table != pb.left->table)) {
        return false;
    }
    if (pa.right && (!pa.right->algebra.same_as(pb.right->algebra) || pa.right->table != pb.right->table)) {
        return false;
    }
    return true;
}

} // namespace kmod
