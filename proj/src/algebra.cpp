#include "kmod/algebra.hpp"

#include "lattice.hpp"

#include <algorithm>
#include <sstream>

namespace kmod {

namespace {

void check_range(const std::vector<Elem>& table, std::size_t expected, Elem size, const std::string& what,
                 const std::string& name) {
    if (table.size() != expected) {
        throw ValidationError("algebra '" + name + "': " + what + " table has " + std::to_string(table.size()) +
                              " entries, expected " + std::to_string(expected));
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] >= size) {
            throw ValidationError("algebra '" + name + "': " + what + " entry " + std::to_string(i) +
                                  " is out of range (" + std::to_string(table[i]) + ")");
        }
    }
}

} // namespace

KleeneAlgebra KleeneAlgebra::from_tables(std::string name, Elem size, Elem zero, Elem one, std::vector<Elem> add,
                                         std::vector<Elem> mul, std::vector<Elem> star, Labeler labeler) {
    if (size == 0) {
        throw ValidationError("algebra '" + name + "': carrier must be nonempty");
    }
    if (zero >= size || one >= size) {
        throw ValidationError("algebra '" + name + "': zero/one index out of range");
    }
    const std::size_t square = std::size_t{size} * size;
    check_range(add, square, size, "add", name);
    check_range(mul, square, size, "mul", name);
    check_range(star, size, size, "star", name);

    auto data = std::make_shared<Data>();
    data->name = std::move(name);
    data->size = size;
    data->zero = zero;
    data->one = one;
    data->tabular = true;
    data->add = std::move(add);
    data->mul = std::move(mul);
    data->star = std::move(star);
    data->labeler = std::move(labeler);
    return KleeneAlgebra(std::move(data));
}

KleeneAlgebra KleeneAlgebra::structural(Structure s) {
    auto data = std::make_shared<Data>();
    data->name = std::move(s.name);
    data->key = std::move(s.key);
    data->size = s.size;
    data->zero = s.zero;
    data->one = s.one;
    data->labeler = std::move(s.labeler);
    if (s.size <= kTableLimit) {
        const std::size_t n = s.size;
        data->add.resize(n * n);
        data->mul.resize(n * n);
        data->star.resize(n);
        for (Elem a = 0; a < s.size; ++a) {
            data->star[a] = s.star(a);
            for (Elem b = 0; b < s.size; ++b) {
                data->add[a * n + b] = s.add(a, b);
                data->mul[a * n + b] = s.mul(a, b);
            }
        }
        data->tabular = true;
    } else {
        data->add_fn = std::move(s.add);
        data->mul_fn = std::move(s.mul);
        data->star_fn = std::move(s.star);
    }
    return KleeneAlgebra(std::move(data));
}

const std::string& KleeneAlgebra::name() const { return data_->name; }
const std::string& KleeneAlgebra::key() const { return data_->key; }
Elem KleeneAlgebra::size() const { return data_->size; }
Elem KleeneAlgebra::zero() const { return data_->zero; }
Elem KleeneAlgebra::one() const { return data_->one; }

std::string KleeneAlgebra::label(Elem a) const {
    if (data_->labeler) {
        return data_->labeler(a);
    }
    return std::to_string(a);
}

bool KleeneAlgebra::same_as(const KleeneAlgebra& other) const {
    if (data_ == other.data_) {
        return true;
    }
    if (size() != other.size()) {
        return false;
    }
    if (!key().empty() && !other.key().empty()) {
        return key() == other.key();
    }
    if (is_materialized() && other.is_materialized()) {
        return zero() == other.zero() && one() == other.one() && data_->add == other.data_->add &&
               data_->mul == other.data_->mul && data_->star == other.data_->star;
    }
    return false;
}

bool KleeneAlgebra::is_commutative() const {
    for (Elem a = 0; a < size(); ++a) {
        for (Elem b = a + 1; b < size(); ++b) {
            if (mul(a, b) != mul(b, a)) {
                return false;
            }
        }
    }
    return true;
}

KleeneAlgebra KleeneAlgebra::renamed(std::string name) const {
    auto data = std::make_shared<Data>(*data_);
    data->name = std::move(name);
    return KleeneAlgebra(std::move(data));
}

Element::Element(KleeneAlgebra algebra, Elem index) : algebra_(std::move(algebra)), index_(index) {
    if (index_ >= algebra_.size()) {
        throw ValidationError("element index " + std::to_string(index_) + " out of range for '" +
                              algebra_.name() + "'");
    }
}

namespace {

void require_same(const Element& a, const Element& b) {
    if (!a.algebra().same_as(b.algebra())) {
        throw AlgebraMismatchError("elements of '" + a.algebra().name() + "' and '" + b.algebra().name() +
                                   "' are not comparable");
    }
}

} // namespace

bool natural_order(const Element& a, const Element& b) {
    require_same(a, b);
    return a.algebra().leq(a.index(), b.index());
}

bool same_element(const Element& a, const Element& b) {
    require_same(a, b);
    return a.index() == b.index();
}

Elem star_saturate(const KleeneAlgebra& algebra, Elem a) {
    Elem s = algebra.one();
    for (;;) {
        const Elem next = algebra.add(s, algebra.mul(a, s));
        if (next == s) {
            return s;
        }
        s = next;
    }
}

Element star_saturate(const Element& a) {
    return Element(a.algebra(), star_saturate(a.algebra(), a.index()));
}

Report check_kleene_axioms(const KleeneAlgebra& k) {
    if (k.size() > kTableLimit) {
        throw SizeGuardError("axiom check of '" + k.name() + "' (" + std::to_string(k.size()) +
                             " elements) exceeds the enumeration limit of " + std::to_string(kTableLimit));
    }
    Report report("kleene algebra " + k.name() + " (" + std::to_string(k.size()) + " elements)");
    const Elem n = k.size();
    const Elem zero = k.zero();
    const Elem one = k.one();
    auto L = [&](Elem x) { return k.label(x); };

    auto& add_assoc = report.law("add associative");
    auto& add_comm = report.law("add commutative");
    auto& add_idem = report.law("add idempotent");
    auto& add_zero = report.law("zero is additive identity");
    auto& mul_assoc = report.law("mul associative");
    auto& mul_one = report.law("one is multiplicative identity");
    auto& annihil = report.law("zero annihilates");
    auto& dist_left = report.law("left distributivity a(b+c) = ab+ac");
    auto& dist_right = report.law("right distributivity (a+b)c = ac+bc");
    auto& unroll_left = report.law("star unrolling 1 + a·a* <= a*");
    auto& unroll_right = report.law("star unrolling 1 + a*·a <= a*");
    auto& induct_left = report.law("star induction b + a·x <= x => a*·b <= x");
    auto& induct_right = report.law("star induction b + x·a <= x => b·a* <= x");

    const Elem* add = k.add_table().data();
    const Elem* mul = k.mul_table().data();
    const Elem* star = k.star_table().data();
    auto leq = [add, n](Elem x, Elem y) { return add[std::size_t{x} * n + y] == y; };
    auto row = [n](const Elem* table, Elem x) { return table + std::size_t{x} * n; };

    for (Elem a = 0; a < n; ++a) {
        add_idem.record(k.add(a, a) == a, [&] { return "a=" + L(a); });
        add_zero.record(k.add(a, zero) == a && k.add(zero, a) == a, [&] { return "a=" + L(a); });
        mul_one.record(k.mul(a, one) == a && k.mul(one, a) == a, [&] { return "a=" + L(a); });
        annihil.record(k.mul(a, zero) == zero && k.mul(zero, a) == zero, [&] { return "a=" + L(a); });
        const Elem s = star[a];
        unroll_left.record(k.leq(k.add(one, k.mul(a, s)), s), [&] { return "a=" + L(a); });
        unroll_right.record(k.leq(k.add(one, k.mul(s, a)), s), [&] { return "a=" + L(a); });
        const Elem* add_a = row(add, a);
        const Elem* mul_a = row(mul, a);
        for (Elem b = 0; b < n; ++b) {
            add_comm.record(add_a[b] == k.add(b, a), [&] { return "a=" + L(a) + ", b=" + L(b); });
            const Elem* add_b = row(add, b);
            const Elem* mul_b = row(mul, b);
            const Elem* add_ab = row(add, add_a[b]);
            const Elem* mul_ab = row(mul, mul_a[b]);
            const Elem* mul_sum = row(mul, add_a[b]);
            const Elem* add_mab = row(add, mul_a[b]);
            for (Elem c = 0; c < n; ++c) {
                if (add_ab[c] != add_a[add_b[c]]) {
                    add_assoc.refute([&] { return "a=" + L(a) + ", b=" + L(b) + ", c=" + L(c); });
                }
                if (mul_ab[c] != mul_a[mul_b[c]]) {
                    mul_assoc.refute([&] { return "a=" + L(a) + ", b=" + L(b) + ", c=" + L(c); });
                }
                if (mul_a[add_b[c]] != add_mab[mul_a[c]]) {
                    dist_left.refute([&] { return "a=" + L(a) + ", b=" + L(b) + ", c=" + L(c); });
                }
                if (mul_sum[c] != row(add, mul_a[c])[mul_b[c]]) {
                    dist_right.refute([&] { return "a=" + L(a) + ", b=" + L(b) + ", c=" + L(c); });
                }
            }
        }
    }
    const std::uint64_t triples = std::uint64_t{n} * n * n;
    add_assoc.tally(triples);
    mul_assoc.tally(triples);
    dist_left.tally(triples);
    dist_right.tally(triples);

    // Induction: the hypothesis b + a·x <= x splits into a·x <= x and b <= x,
    // so only b in the downset of x can matter. Every triple is still counted.
    std::vector<std::vector<Elem>> downset(n);
    for (Elem x = 0; x < n; ++x) {
        for (Elem b = 0; b < n; ++b) {
            if (leq(b, x)) {
                downset[x].push_back(b);
            }
        }
    }
    for (Elem a = 0; a < n; ++a) {
        const Elem s = star[a];
        const Elem* mul_s = row(mul, s);
        for (Elem x = 0; x < n; ++x) {
            if (leq(mul[std::size_t{a} * n + x], x)) {
                for (Elem b : downset[x]) {
                    if (!leq(mul_s[b], x)) {
                        induct_left.refute([&] { return "a=" + L(a) + ", b=" + L(b) + ", x=" + L(x); });
                    }
                }
            }
            if (leq(mul[std::size_t{x} * n + a], x)) {
                for (Elem b : downset[x]) {
                    if (!leq(mul[std::size_t{b} * n + s], x)) {
                        induct_right.refute([&] { return "a=" + L(a) + ", b=" + L(b) + ", x=" + L(x); });
                    }
                }
            }
        }
    }
    induct_left.tally(triples);
    induct_right.tally(triples);
    return report;
}

void AlgebraHomomorphism::validate() const {
    if (map.size() != source.size()) {
        throw ValidationError("homomorphism map has " + std::to_string(map.size()) + " entries, source '" +
                              source.name() + "' has " + std::to_string(source.size()));
    }
    for (Elem v : map) {
        if (v >= target.size()) {
            throw ValidationError("homomorphism value " + std::to_string(v) + " out of range for '" +
                                  target.name() + "'");
        }
    }
}

Report check_algebra_homomorphism(const AlgebraHomomorphism& h) {
    h.validate();
    Report report("homomorphism " + h.source.name() + " -> " + h.target.name());
    const auto& a = h.source;
    const auto& b = h.target;
    report.law("preserves zero").record(h(a.zero()) == b.zero(), [&] {
        return "h(0)=" + b.label(h(a.zero()));
    });
    report.law("preserves one").record(h(a.one()) == b.one(), [&] {
        return "h(1)=" + b.label(h(a.one()));
    });
    auto& add = report.law("preserves add");
    auto& mul = report.law("preserves mul");
    auto& star = report.law("preserves star");
    for (Elem x = 0; x < a.size(); ++x) {
        star.record(h(a.star(x)) == b.star(h(x)), [&] { return "x=" + a.label(x); });
        for (Elem y = 0; y < a.size(); ++y) {
            add.record(h(a.add(x, y)) == b.add(h(x), h(y)), [&] { return "x=" + a.label(x) + ", y=" + a.label(y); });
            mul.record(h(a.mul(x, y)) == b.mul(h(x), h(y)), [&] { return "x=" + a.label(x) + ", y=" + a.label(y); });
        }
    }
    return report;
}

AlgebraHomomorphism identity_homomorphism(const KleeneAlgebra& algebra) {
    std::vector<Elem> map(algebra.size());
    for (Elem x = 0; x < algebra.size(); ++x) {
        map[x] = x;
    }
    return {algebra, algebra, std::move(map)};
}

AlgebraHomomorphism compose(const AlgebraHomomorphism& f, const AlgebraHomomorphism& g) {
    if (!f.target.same_as(g.source)) {
        throw AlgebraMismatchError("cannot compose: '" + f.target.name() + "' is not '" + g.source.name() + "'");
    }
    std::vector<Elem> map(f.source.size());
    for (Elem x = 0; x < f.source.size(); ++x) {
        map[x] = g(f(x));
    }
    return {f.source, g.target, std::move(map)};
}

Subalgebra subalgebra(const KleeneAlgebra& parent, std::span<const Elem> subset, std::string name) {
    std::vector<Elem> members(subset.begin(), subset.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    std::vector<Elem> position(parent.size(), detail::kUnset);
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i] >= parent.size()) {
            throw SubalgebraError("element " + std::to_string(members[i]) + " is outside '" + parent.name() + "'");
        }
        position[members[i]] = static_cast<Elem>(i);
    }
    auto lookup = [&](Elem x, const char* what) {
        if (position[x] == detail::kUnset) {
            throw SubalgebraError(std::string("subset of '") + parent.name() + "' is not closed: " + what +
                                  " gives " + parent.label(x));
        }
        return position[x];
    };
    const Elem zero = lookup(parent.zero(), "zero");
    const Elem one = lookup(parent.one(), "one");
    const auto n = static_cast<Elem>(members.size());
    std::vector<Elem> add(std::size_t{n} * n), mul(std::size_t{n} * n), star(n);
    for (Elem i = 0; i < n; ++i) {
        star[i] = lookup(parent.star(members[i]), "star");
        for (Elem j = 0; j < n; ++j) {
            add[i * n + j] = lookup(parent.add(members[i], members[j]), "add");
            mul[i * n + j] = lookup(parent.mul(members[i], members[j]), "mul");
        }
    }
    if (name.empty()) {
        name = parent.name() + "_sub";
    }
    auto labels = members;
    KleeneAlgebra alg = KleeneAlgebra::from_tables(std::move(name), n, zero, one, std::move(add), std::move(mul),
                                                   std::move(star), [parent, labels](Elem x) {
                                                       return parent.label(labels[x]);
                                                   });
    return {std::move(alg), std::move(members)};
}

std::optional<std::vector<Elem>> algebra_iso_search(const KleeneAlgebra& a, const KleeneAlgebra& b) {
    if (a.size() != b.size()) {
        return std::nullopt;
    }
    detail::Semilattice la{a.size(), a.zero(), [&](Elem x, Elem y) { return a.add(x, y); }};
    detail::Semilattice lb{b.size(), b.zero(), [&](Elem x, Elem y) { return b.add(x, y); }};
    la.analyse();
    lb.analyse();
    detail::IsoSearch search(la, lb);
    search.compatible = [&](Elem x, Elem y) {
        return (a.mul(x, x) == x) == (b.mul(y, y) == y);
    };
    search.partial = [&](const detail::IsoSearch& s) {
        const Elem j = s.last_assigned();
        const Elem fj = *s.determined(j);
        auto sq = s.determined(a.mul(j, j));
        return !sq || *sq == b.mul(fj, fj);
    };
    search.accept = [&](const std::vector<Elem>& f) {
        if (f[a.one()] != b.one()) {
            return false;
        }
        for (Elem x = 0; x < a.size(); ++x) {
            if (f[a.star(x)] != b.star(f[x])) {
                return false;
            }
            for (Elem y = 0; y < a.size(); ++y) {
                if (f[a.mul(x, y)] != b.mul(f[x], f[y]) || f[a.add(x, y)] != b.add(f[x], f[y])) {
                    return false;
                }
            }
        }
        return true;
    };
    return search.run();
}

} // namespace kmod
