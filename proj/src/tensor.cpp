#include "kmod/tensor.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace kmod {

std::string to_string(TensorPath path) {
    switch (path) {
    case TensorPath::automatic:
        return "automatic";
    case TensorPath::exhaustive:
        return "exhaustive";
    case TensorPath::fast:
        return "free-fastpath";
    }
    return "?";
}

namespace {

constexpr std::size_t kLabelLimit = 1u << 16;
constexpr std::size_t kClauseLimit = 1u << 25;
constexpr Elem kNoLabel = static_cast<Elem>(-1);

void check_factors(const KleeneModule& m, const KleeneModule& n) {
    if (!m.has_right() || !n.has_left()) {
        throw PreconditionError("tensor needs a right module on the left and a left module on the right");
    }
    if (!m.right_algebra().same_as(n.left_algebra())) {
        throw AlgebraMismatchError("middle algebras differ: '" + m.right_algebra().name() + "' vs '" +
                                   n.left_algebra().name() + "'");
    }
    if (!m.has_left() && !n.has_right()) {
        throw PreconditionError("tensor of one-sided modules carries no scalar action");
    }
}

// Horn clauses with at most two body atoms over the label set M×N. A set is
// closed when it contains the head of every clause whose body it contains;
// closed sets are exactly the tops of the classes of the generated
// semilattice congruence.
class HornSystem {
  public:
    explicit HornSystem(std::size_t labels) : labels_(labels), watch_(labels), words_((labels + 63) / 64) {}

    void fact(Elem head) { facts_.push_back(head); }

    void clause(Elem b1, Elem b2, Elem head) {
        if (head == b1 || head == b2) {
            return;
        }
        const auto id = static_cast<Elem>(clauses_.size());
        clauses_.push_back({b1, b2, head});
        watch_[b1].push_back(id);
        if (b2 != kNoLabel && b2 != b1) {
            watch_[b2].push_back(id);
        }
        if (clauses_.size() > kClauseLimit) {
            throw SizeGuardError("tensor relation system exceeds the clause bound");
        }
    }

    void equivalent(Elem single, Elem x, Elem y) {
        clause(single, kNoLabel, x);
        clause(single, kNoLabel, y);
        clause(x, y, single);
    }

    using Set = std::vector<std::uint64_t>;

    [[nodiscard]] static bool has(const Set& s, Elem l) { return (s[l >> 6] >> (l & 63)) & 1u; }

    [[nodiscard]] Set empty_closure() const {
        Set s(words_, 0);
        extend(s, facts_);
        return s;
    }

    void extend(Set& s, const std::vector<Elem>& additions) const {
        std::vector<Elem> stack;
        for (Elem l : additions) {
            if (!has(s, l)) {
                put(s, l);
                stack.push_back(l);
            }
        }
        while (!stack.empty()) {
            const Elem p = stack.back();
            stack.pop_back();
            for (Elem id : watch_[p]) {
                const auto& c = clauses_[id];
                if (has(s, c.head) || !has(s, c.b1) || (c.b2 != kNoLabel && !has(s, c.b2))) {
                    continue;
                }
                put(s, c.head);
                stack.push_back(c.head);
            }
        }
    }

    [[nodiscard]] std::size_t clause_count() const { return clauses_.size(); }
    [[nodiscard]] std::size_t fact_count() const { return facts_.size(); }

  private:
    struct Clause {
        Elem b1, b2, head;
    };

    static void put(Set& s, Elem l) { s[l >> 6] |= std::uint64_t{1} << (l & 63); }

    std::size_t labels_;
    std::vector<std::vector<Elem>> watch_;
    std::vector<Clause> clauses_;
    std::vector<Elem> facts_;
    std::size_t words_;
};

// Relations defining the tensor, as callbacks over label pairs. Shared by the
// Horn system and the materialized free pair module.
template <typename Single, typename Equivalent, typename Zero>
void emit_relations(const KleeneModule& m, const KleeneModule& n, Single&& single, Equivalent&& equivalent,
                    Zero&& zero) {
    const Elem w = n.size();
    auto label = [w](Elem x, Elem y) { return x * w + y; };
    for (Elem y = 0; y < n.size(); ++y) {
        for (Elem x = 0; x < m.size(); ++x) {
            for (Elem x2 = x; x2 < m.size(); ++x2) {
                equivalent(label(m.add(x, x2), y), label(x, y), label(x2, y));
            }
        }
    }
    for (Elem x = 0; x < m.size(); ++x) {
        for (Elem y = 0; y < n.size(); ++y) {
            for (Elem y2 = y; y2 < n.size(); ++y2) {
                equivalent(label(x, n.add(y, y2)), label(x, y), label(x, y2));
            }
        }
    }
    const auto& b = m.right_algebra();
    for (Elem x = 0; x < m.size(); ++x) {
        for (Elem s = 0; s < b.size(); ++s) {
            for (Elem y = 0; y < n.size(); ++y) {
                single(label(m.act_right(x, s), y), label(x, n.act_left(s, y)));
            }
        }
    }
    for (Elem y = 0; y < n.size(); ++y) {
        zero(label(m.zero(), y));
    }
    for (Elem x = 0; x < m.size(); ++x) {
        zero(label(x, n.zero()));
    }
}

std::string pure_label(const KleeneModule& m, const KleeneModule& n, Elem x, Elem y) {
    return m.label(x) + "⊗" + n.label(y);
}

TensorProduct exhaustive_tensor(const KleeneModule& m, const KleeneModule& n) {
    const std::size_t labels = std::size_t{m.size()} * n.size();
    if (labels > kLabelLimit) {
        throw SizeGuardError("tensor label set " + std::to_string(labels) + " exceeds the bound");
    }
    const Elem w = n.size();
    HornSystem horn(labels);
    emit_relations(
        m, n,
        [&](Elem u, Elem v) {
            horn.clause(u, kNoLabel, v);
            horn.clause(v, kNoLabel, u);
        },
        [&](Elem s, Elem x, Elem y) { horn.equivalent(s, x, y); }, [&](Elem z) { horn.fact(z); });

    std::vector<HornSystem::Set> closed;
    std::map<HornSystem::Set, Elem> index;
    std::vector<std::vector<Elem>> gens;
    std::vector<Elem> join; // closed.size() × labels
    closed.push_back(horn.empty_closure());
    index.emplace(closed[0], 0);
    gens.emplace_back();
    for (std::size_t i = 0; i < closed.size(); ++i) {
        join.resize((i + 1) * labels);
        for (Elem l = 0; l < labels; ++l) {
            if (HornSystem::has(closed[i], l)) {
                join[i * labels + l] = static_cast<Elem>(i);
                continue;
            }
            auto next = closed[i];
            horn.extend(next, {l});
            auto [it, inserted] = index.emplace(std::move(next), static_cast<Elem>(closed.size()));
            if (inserted) {
                if (closed.size() >= kModuleTableLimit) {
                    throw SizeGuardError("tensor " + m.name() + " ⊗ " + n.name() + " exceeds the module size bound");
                }
                closed.push_back(it->first);
                auto g = gens[i];
                g.push_back(l);
                gens.push_back(std::move(g));
            }
            join[i * labels + l] = it->second;
        }
    }
    const auto size = static_cast<Elem>(closed.size());
    auto fold = [&](Elem start, const std::vector<Elem>& ls, auto&& translate) {
        Elem x = start;
        for (Elem l : ls) {
            x = join[std::size_t{x} * labels + translate(l)];
        }
        return x;
    };
    auto same = [](Elem l) { return l; };

    KleeneModule::Parts parts;
    parts.name = m.name() + "⊗" + n.name();
    parts.size = size;
    parts.zero = 0;
    parts.add.resize(std::size_t{size} * size);
    for (Elem x = 0; x < size; ++x) {
        for (Elem y = 0; y < size; ++y) {
            parts.add[x * size + y] = fold(x, gens[y], same);
        }
    }
    if (m.has_left()) {
        const auto& k = m.left_algebra();
        std::vector<Elem> table(std::size_t{k.size()} * size);
        for (Elem a = 0; a < k.size(); ++a) {
            auto translate = [&](Elem l) { return m.act_left(a, l / w) * w + l % w; };
            for (Elem x = 0; x < size; ++x) {
                table[a * size + x] = fold(0, gens[x], translate);
            }
        }
        parts.left = ScalarAction{k, std::move(table)};
    }
    if (n.has_right()) {
        const auto& k = n.right_algebra();
        std::vector<Elem> table(std::size_t{size} * k.size());
        for (Elem c = 0; c < k.size(); ++c) {
            auto translate = [&](Elem l) { return (l / w) * w + n.act_right(l % w, c); };
            for (Elem x = 0; x < size; ++x) {
                table[x * k.size() + c] = fold(0, gens[x], translate);
            }
        }
        parts.right = ScalarAction{k, std::move(table)};
    }
    parts.labels.resize(size);
    for (Elem x = 0; x < size; ++x) {
        std::string s;
        for (Elem l : gens[x]) {
            s += (s.empty() ? "" : " + ") + pure_label(m, n, l / w, l % w);
        }
        parts.labels[x] = s.empty() ? "0" : s;
    }
    TensorProduct t{KleeneModule::make(std::move(parts)), m, n, {}, TensorPath::exhaustive, {}};
    t.pure.resize(labels);
    for (Elem l = 0; l < labels; ++l) {
        t.pure[l] = join[l];
    }
    std::ostringstream line;
    line << "exhaustive: " << labels << " labels, " << horn.clause_count() << " clauses, " << horn.fact_count()
         << " facts, " << size << " classes";
    t.trace.push_back(line.str());
    return t;
}

TensorProduct fast_tensor(const KleeneModule& m, const KleeneModule& n) {
    const FreeBasis* eb = m.right_basis();
    const FreeBasis* fb = n.left_basis();
    if (!eb || !fb) {
        throw PreconditionError("fast tensor path needs a right basis on '" + m.name() + "' and a left basis on '" +
                                n.name() + "'");
    }
    const auto& b = m.right_algebra();
    const std::size_t p = eb->rank();
    const std::size_t q = fb->rank();
    std::size_t count = 1;
    for (std::size_t i = 0; i < p * q; ++i) {
        count *= b.size();
        if (count > kModuleTableLimit) {
            throw SizeGuardError("tensor " + m.name() + " ⊗ " + n.name() + " exceeds the module size bound");
        }
    }
    const auto size = static_cast<Elem>(count);
    const Elem base = b.size();
    using Grid = std::vector<Elem>; // p×q coefficients, row-major
    auto decode = [&](Elem x) {
        Grid g(p * q);
        for (auto& v : g) {
            v = x % base;
            x /= base;
        }
        return g;
    };
    auto encode = [&](const Grid& g) {
        Elem x = 0;
        for (std::size_t i = g.size(); i-- > 0;) {
            x = x * base + g[i];
        }
        return x;
    };
    std::vector<Grid> grids(size);
    for (Elem x = 0; x < size; ++x) {
        grids[x] = decode(x);
    }

    KleeneModule::Parts parts;
    parts.name = m.name() + "⊗" + n.name();
    parts.size = size;
    parts.zero = encode(Grid(p * q, b.zero()));
    parts.add.resize(std::size_t{size} * size);
    for (Elem x = 0; x < size; ++x) {
        for (Elem y = 0; y < size; ++y) {
            Grid g(p * q);
            for (std::size_t k = 0; k < g.size(); ++k) {
                g[k] = b.add(grids[x][k], grids[y][k]);
            }
            parts.add[x * size + y] = encode(g);
        }
    }
    if (m.has_left()) {
        // a·e_i = Σ_k e_k·c_k(a·e_i)
        const auto& k = m.left_algebra();
        std::vector<Elem> table(std::size_t{k.size()} * size);
        for (Elem a = 0; a < k.size(); ++a) {
            for (Elem x = 0; x < size; ++x) {
                Grid g(p * q, b.zero());
                for (std::size_t r = 0; r < p; ++r) {
                    for (std::size_t i = 0; i < p; ++i) {
                        const Elem coeff = eb->coord(m.act_left(a, eb->elements[i]), r);
                        for (std::size_t j = 0; j < q; ++j) {
                            g[r * q + j] = b.add(g[r * q + j], b.mul(coeff, grids[x][i * q + j]));
                        }
                    }
                }
                table[a * size + x] = encode(g);
            }
        }
        parts.left = ScalarAction{k, std::move(table)};
    }
    if (n.has_right()) {
        // f_j·c = Σ_k d_k(f_j·c)·f_k
        const auto& k = n.right_algebra();
        std::vector<Elem> table(std::size_t{size} * k.size());
        for (Elem x = 0; x < size; ++x) {
            for (Elem c = 0; c < k.size(); ++c) {
                Grid g(p * q, b.zero());
                for (std::size_t col = 0; col < q; ++col) {
                    for (std::size_t j = 0; j < q; ++j) {
                        const Elem coeff = fb->coord(n.act_right(fb->elements[j], c), col);
                        for (std::size_t i = 0; i < p; ++i) {
                            g[i * q + col] = b.add(g[i * q + col], b.mul(grids[x][i * q + j], coeff));
                        }
                    }
                }
                table[x * k.size() + c] = encode(g);
            }
        }
        parts.right = ScalarAction{k, std::move(table)};
    }
    parts.labels.resize(size);
    for (Elem x = 0; x < size; ++x) {
        std::string s = "[";
        for (std::size_t i = 0; i < p; ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < q; ++j) {
                s += (j ? "," : "") + b.label(grids[x][i * q + j]);
            }
            s += "]";
        }
        parts.labels[x] = s + "]";
    }
    TensorProduct t{KleeneModule::make(std::move(parts)), m, n, {}, TensorPath::fast, {}};
    t.pure.resize(std::size_t{m.size()} * n.size());
    for (Elem x = 0; x < m.size(); ++x) {
        for (Elem y = 0; y < n.size(); ++y) {
            Grid g(p * q);
            for (std::size_t i = 0; i < p; ++i) {
                for (std::size_t j = 0; j < q; ++j) {
                    g[i * q + j] = b.mul(eb->coord(x, i), fb->coord(y, j));
                }
            }
            t.pure[std::size_t{x} * n.size() + y] = encode(g);
        }
    }
    std::ostringstream line;
    line << "free-fastpath: basis " << p << "x" << q << " over " << b.name() << ", " << size << " elements";
    t.trace.push_back(line.str());
    return t;
}

} // namespace

TensorProduct tensor_product(const KleeneModule& m, const KleeneModule& n, TensorPath path, const Limits& limits) {
    check_factors(m, n);
    if (path == TensorPath::automatic) {
        path = m.right_basis() && n.left_basis() ? TensorPath::fast : TensorPath::exhaustive;
    }
    if (std::size_t{m.size()} * n.size() > limits.max_carrier && path == TensorPath::exhaustive) {
        throw SizeGuardError("tensor label set exceeds the carrier bound");
    }
    TensorProduct t = path == TensorPath::fast ? fast_tensor(m, n) : exhaustive_tensor(m, n);

    // The operation congruence is the least one; enforce the star
    // quasi-identities on top of it if the quotient violates them.
    auto repair = congruence_closure(t.module, {});
    if (repair.trace.repairs > 0) {
        t.trace.push_back("quasi-identity repairs: " + std::to_string(repair.trace.repairs));
        t.trace.insert(t.trace.end(), repair.trace.log.begin(), repair.trace.log.end());
        auto q = quotient_by(t.module, std::move(repair));
        for (auto& v : t.pure) {
            v = q.projection[v];
        }
        t.module = q.module.renamed(t.module.name());
    } else {
        t.trace.push_back("quasi-identity repairs: 0");
    }
    return t;
}

FreePairModule free_pair_module(const KleeneModule& m, const KleeneModule& n) {
    check_factors(m, n);
    const std::size_t labels = std::size_t{m.size()} * n.size();
    if (labels > 12) {
        throw SizeGuardError("free pair module over " + std::to_string(labels) + " labels is too large to materialize");
    }
    const Elem w = n.size();
    const auto size = static_cast<Elem>(1u << labels);
    auto translate = [&](Elem set, auto&& f) {
        Elem out = 0;
        for (Elem l = 0; l < labels; ++l) {
            if ((set >> l) & 1u) {
                out |= Elem{1} << f(l);
            }
        }
        return out;
    };
    KleeneModule::Parts parts;
    parts.name = "Xi(" + m.name() + "," + n.name() + ")";
    parts.size = size;
    parts.zero = 0;
    parts.add.resize(std::size_t{size} * size);
    for (Elem x = 0; x < size; ++x) {
        for (Elem y = 0; y < size; ++y) {
            parts.add[x * size + y] = x | y;
        }
    }
    if (m.has_left()) {
        const auto& k = m.left_algebra();
        std::vector<Elem> table(std::size_t{k.size()} * size);
        for (Elem a = 0; a < k.size(); ++a) {
            for (Elem x = 0; x < size; ++x) {
                table[a * size + x] = translate(x, [&](Elem l) { return m.act_left(a, l / w) * w + l % w; });
            }
        }
        parts.left = ScalarAction{k, std::move(table)};
    }
    if (n.has_right()) {
        const auto& k = n.right_algebra();
        std::vector<Elem> table(std::size_t{size} * k.size());
        for (Elem x = 0; x < size; ++x) {
            for (Elem c = 0; c < k.size(); ++c) {
                table[x * k.size() + c] = translate(x, [&](Elem l) { return (l / w) * w + n.act_right(l % w, c); });
            }
        }
        parts.right = ScalarAction{k, std::move(table)};
    }
    FreePairModule result{KleeneModule::make(std::move(parts)), {}, w};
    auto bit = [](Elem l) { return Elem{1} << l; };
    emit_relations(
        m, n, [&](Elem u, Elem v) { result.relations.emplace_back(bit(u), bit(v)); },
        [&](Elem s, Elem x, Elem y) { result.relations.emplace_back(bit(s), bit(x) | bit(y)); },
        [&](Elem z) { result.relations.emplace_back(bit(z), 0); });
    return result;
}

std::optional<std::vector<Elem>> induced_map(const TensorProduct& t, const KleeneModule& target,
                                             const std::function<Elem(Elem, Elem)>& on_pure) {
    constexpr Elem kUnset = static_cast<Elem>(-1);
    const auto& mod = t.module;
    std::vector<Elem> value(mod.size(), kUnset);
    std::vector<Elem> reached;
    std::deque<Elem> queue;
    auto set = [&](Elem x, Elem v) {
        if (value[x] == kUnset) {
            value[x] = v;
            reached.push_back(x);
            queue.push_back(x);
            return true;
        }
        return value[x] == v;
    };
    if (!set(mod.zero(), target.zero())) {
        return std::nullopt;
    }
    for (Elem x = 0; x < t.left_factor.size(); ++x) {
        for (Elem y = 0; y < t.right_factor.size(); ++y) {
            const Elem v = on_pure(x, y);
            if (v >= target.size() || !set(t.pure_tensor(x, y), v)) {
                return std::nullopt;
            }
        }
    }
    while (!queue.empty()) {
        const Elem x = queue.front();
        queue.pop_front();
        const std::size_t count = reached.size();
        for (std::size_t i = 0; i < count; ++i) {
            const Elem y = reached[i];
            if (!set(mod.add(x, y), target.add(value[x], value[y]))) {
                return std::nullopt;
            }
        }
    }
    if (reached.size() != mod.size()) {
        return std::nullopt;
    }
    return value;
}

std::optional<std::vector<Elem>> tensor_morphism(const TensorProduct& from, const TensorProduct& to,
                                                 const std::vector<Elem>& alpha, const std::vector<Elem>& beta) {
    if (alpha.size() != from.left_factor.size() || beta.size() != from.right_factor.size()) {
        throw ValidationError("tensor morphism components have wrong length");
    }
    return induced_map(from, to.module, [&](Elem x, Elem y) { return to.pure_tensor(alpha[x], beta[y]); });
}

} // namespace kmod
