#pragma once

// Brute-force reference computations. Nothing here calls into the library's
// algorithms; inputs are plain tables.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

using Table = std::vector<std::uint32_t>;

// ---- relations on {0..n-1}, bit i*n+j ----

inline bool rel_has(std::uint32_t r, int n, int i, int j) { return (r >> (i * n + j)) & 1u; }

inline std::uint32_t rel_compose(std::uint32_t r, std::uint32_t s, int n) {
    std::uint32_t out = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (rel_has(r, n, i, j) && rel_has(s, n, j, k)) {
                    out |= 1u << (i * n + k);
                }
            }
        }
    }
    return out;
}

// Reflexive-transitive closure, Warshall style.
inline std::uint32_t warshall_star(std::uint32_t r, int n) {
    bool m[8][8];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m[i][j] = rel_has(r, n, i, j) || i == j;
        }
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                m[i][j] = m[i][j] || (m[i][k] && m[k][j]);
            }
        }
    }
    std::uint32_t out = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (m[i][j]) {
                out |= 1u << (i * n + j);
            }
        }
    }
    return out;
}

// ---- 2x2 boolean matrices, Conway's block formula for the star ----

struct B2 {
    bool a, b, c, d; // [[a, b], [c, d]]
};

inline B2 block_star(B2 m) {
    // Over bool2 every scalar star is 1, so d* = 1 and f = (a + b d* c)* = 1.
    const bool f = true;
    const bool ds = true;
    const bool top_right = f && m.b && ds;
    const bool bottom_left = ds && m.c && f;
    const bool bottom_right = ds || (ds && m.c && f && m.b && ds);
    return {f, top_right, bottom_left, bottom_right};
}

// ---- finite structures given by tables ----

struct Algebra {
    std::uint32_t n = 0, zero = 0, one = 0;
    Table add, mul, star;
    std::uint32_t plus(std::uint32_t x, std::uint32_t y) const { return add[x * n + y]; }
    std::uint32_t times(std::uint32_t x, std::uint32_t y) const { return mul[x * n + y]; }
    bool leq(std::uint32_t x, std::uint32_t y) const { return plus(x, y) == y; }
};

// Straight transcription of the Kleene algebra laws.
inline bool is_kleene_algebra(const Algebra& k) {
    const auto n = k.n;
    for (std::uint32_t a = 0; a < n; ++a) {
        if (k.plus(a, a) != a || k.plus(a, k.zero) != a || k.times(a, k.one) != a || k.times(k.one, a) != a ||
            k.times(a, k.zero) != k.zero || k.times(k.zero, a) != k.zero) {
            return false;
        }
        const auto s = k.star[a];
        if (!k.leq(k.plus(k.one, k.times(a, s)), s) || !k.leq(k.plus(k.one, k.times(s, a)), s)) {
            return false;
        }
        for (std::uint32_t b = 0; b < n; ++b) {
            if (k.plus(a, b) != k.plus(b, a)) {
                return false;
            }
            for (std::uint32_t c = 0; c < n; ++c) {
                if (k.plus(k.plus(a, b), c) != k.plus(a, k.plus(b, c)) ||
                    k.times(k.times(a, b), c) != k.times(a, k.times(b, c)) ||
                    k.times(a, k.plus(b, c)) != k.plus(k.times(a, b), k.times(a, c)) ||
                    k.times(k.plus(a, b), c) != k.plus(k.times(a, c), k.times(b, c))) {
                    return false;
                }
                // b + a c <= c implies a* b <= c, and the mirror.
                if (k.leq(k.plus(b, k.times(a, c)), c) && !k.leq(k.times(s, b), c)) {
                    return false;
                }
                if (k.leq(k.plus(b, k.times(c, a)), c) && !k.leq(k.times(b, s), c)) {
                    return false;
                }
            }
        }
    }
    return true;
}

// A left module over `k` (right actions are not needed by the oracles).
struct Module {
    std::uint32_t n = 0, zero = 0;
    Table add;
    Table act; // |K| x n
    std::uint32_t plus(std::uint32_t x, std::uint32_t y) const { return add[x * n + y]; }
    std::uint32_t apply(std::uint32_t a, std::uint32_t m) const { return act[a * n + m]; }
    bool leq(std::uint32_t x, std::uint32_t y) const { return plus(x, y) == y; }
};

inline bool is_kleene_module(const Algebra& k, const Module& m) {
    for (std::uint32_t x = 0; x < m.n; ++x) {
        if (m.plus(x, x) != x || m.plus(x, m.zero) != x) {
            return false;
        }
        for (std::uint32_t y = 0; y < m.n; ++y) {
            if (m.plus(x, y) != m.plus(y, x)) {
                return false;
            }
            for (std::uint32_t z = 0; z < m.n; ++z) {
                if (m.plus(m.plus(x, y), z) != m.plus(x, m.plus(y, z))) {
                    return false;
                }
            }
        }
    }
    for (std::uint32_t a = 0; a < k.n; ++a) {
        if (m.apply(a, m.zero) != m.zero) {
            return false;
        }
        for (std::uint32_t x = 0; x < m.n; ++x) {
            if (m.apply(k.one, x) != x || m.apply(k.zero, x) != m.zero) {
                return false;
            }
            if (m.leq(m.apply(a, x), x) && !m.leq(m.apply(k.star[a], x), x)) {
                return false;
            }
            for (std::uint32_t y = 0; y < m.n; ++y) {
                if (m.apply(a, m.plus(x, y)) != m.plus(m.apply(a, x), m.apply(a, y))) {
                    return false;
                }
            }
            for (std::uint32_t b = 0; b < k.n; ++b) {
                if (m.apply(k.plus(a, b), x) != m.plus(m.apply(a, x), m.apply(b, x)) ||
                    m.apply(k.times(a, b), x) != m.apply(a, m.apply(b, x))) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool is_hom(const Algebra& k, const Module& s, const Module& t, const Table& f) {
    if (f[s.zero] != t.zero) {
        return false;
    }
    for (std::uint32_t x = 0; x < s.n; ++x) {
        for (std::uint32_t y = 0; y < s.n; ++y) {
            if (f[s.plus(x, y)] != t.plus(f[x], f[y])) {
                return false;
            }
        }
        for (std::uint32_t a = 0; a < k.n; ++a) {
            if (f[s.apply(a, x)] != t.apply(a, f[x])) {
                return false;
            }
        }
    }
    return true;
}

// Every function s -> t, in lexicographic order.
inline void for_each_map(std::uint32_t from, std::uint32_t to, const std::function<void(const Table&)>& visit) {
    Table f(from, 0);
    while (true) {
        visit(f);
        std::uint32_t i = 0;
        while (i < from && ++f[i] == to) {
            f[i++] = 0;
        }
        if (i == from) {
            return;
        }
    }
}

inline std::size_t count_homs(const Algebra& k, const Module& s, const Module& t) {
    std::size_t count = 0;
    for_each_map(s.n, t.n, [&](const Table& f) { count += is_hom(k, s, t, f); });
    return count;
}

// Isomorphism by scanning every bijection.
inline bool isomorphic(const Algebra& k, const Module& s, const Module& t) {
    if (s.n != t.n) {
        return false;
    }
    Table f(s.n);
    std::iota(f.begin(), f.end(), 0u);
    do {
        if (is_hom(k, s, t, f)) {
            return true;
        }
    } while (std::next_permutation(f.begin(), f.end()));
    return false;
}

// ---- partitions and least congruences ----

// Set partitions of {0..n-1} as restricted growth strings.
inline std::vector<Table> all_partitions(std::uint32_t n) {
    std::vector<Table> out;
    Table rgs(n, 0);
    std::function<void(std::uint32_t, std::uint32_t)> go = [&](std::uint32_t i, std::uint32_t blocks) {
        if (i == n) {
            out.push_back(rgs);
            return;
        }
        for (std::uint32_t b = 0; b <= blocks && (i > 0 || b == 0); ++b) {
            rgs[i] = b;
            go(i + 1, std::max(blocks, b + 1));
        }
    };
    if (n == 0) {
        out.push_back({});
    } else {
        go(0, 0);
    }
    return out;
}

// Quotient tables when `blocks` is compatible with the operations.
inline std::optional<Module> quotient(const Algebra& k, const Module& m, const Table& blocks) {
    const std::uint32_t count = *std::max_element(blocks.begin(), blocks.end()) + 1;
    Module q;
    q.n = count;
    q.zero = blocks[m.zero];
    q.add.assign(std::size_t{count} * count, UINT32_MAX);
    q.act.assign(std::size_t{k.n} * count, UINT32_MAX);
    auto put = [](std::uint32_t& slot, std::uint32_t v) {
        if (slot != UINT32_MAX && slot != v) {
            return false;
        }
        slot = v;
        return true;
    };
    for (std::uint32_t x = 0; x < m.n; ++x) {
        for (std::uint32_t y = 0; y < m.n; ++y) {
            if (!put(q.add[blocks[x] * count + blocks[y]], blocks[m.plus(x, y)])) {
                return std::nullopt;
            }
        }
        for (std::uint32_t a = 0; a < k.n; ++a) {
            if (!put(q.act[a * count + blocks[x]], blocks[m.apply(a, x)])) {
                return std::nullopt;
            }
        }
    }
    return q;
}

inline bool refines(const Table& fine, const Table& coarse) {
    for (std::size_t x = 0; x < fine.size(); ++x) {
        for (std::size_t y = 0; y < fine.size(); ++y) {
            if (fine[x] == fine[y] && coarse[x] != coarse[y]) {
                return false;
            }
        }
    }
    return true;
}

// The finest partition containing `pairs` that is a congruence with a
// Kleene-module quotient; nullopt if those partitions have no least element.
inline std::optional<Table> least_congruence(const Algebra& k, const Module& m,
                                             const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
    std::vector<Table> valid;
    for (const auto& p : all_partitions(m.n)) {
        bool contains = true;
        for (const auto& [x, y] : pairs) {
            contains = contains && p[x] == p[y];
        }
        if (!contains) {
            continue;
        }
        const auto q = quotient(k, m, p);
        if (q && is_kleene_module(k, *q)) {
            valid.push_back(p);
        }
    }
    for (const auto& p : valid) {
        if (std::all_of(valid.begin(), valid.end(), [&](const Table& other) { return refines(p, other); })) {
            return p;
        }
    }
    return std::nullopt;
}

// ---- semilattices with zero 0 on {0..n-1} ----

// Every join table on n elements in which 0 is the least element.
inline std::vector<Table> all_semilattices(std::uint32_t n) {
    std::vector<Table> out;
    const std::uint32_t free_bits = (n - 1) * (n - 1);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free_bits); ++bits) {
        // le[x][y] for nonzero x != y given by bits; reflexive; 0 below all.
        auto le = [&](std::uint32_t x, std::uint32_t y) {
            if (x == y || x == 0) {
                return true;
            }
            if (y == 0) {
                return false;
            }
            return ((bits >> ((x - 1) * (n - 1) + (y - 1))) & 1u) != 0;
        };
        bool ok = true;
        for (std::uint32_t x = 1; x < n && ok; ++x) {
            if (((bits >> ((x - 1) * (n - 1) + (x - 1))) & 1u) != 0) {
                ok = false; // diagonal bits unused; keep one encoding per order
            }
        }
        for (std::uint32_t x = 0; x < n && ok; ++x) {
            for (std::uint32_t y = 0; y < n && ok; ++y) {
                if (x != y && le(x, y) && le(y, x)) {
                    ok = false;
                }
                for (std::uint32_t z = 0; z < n && ok; ++z) {
                    if (le(x, y) && le(y, z) && !le(x, z)) {
                        ok = false;
                    }
                }
            }
        }
        if (!ok) {
            continue;
        }
        Table join(std::size_t{n} * n);
        for (std::uint32_t x = 0; x < n && ok; ++x) {
            for (std::uint32_t y = 0; y < n && ok; ++y) {
                std::optional<std::uint32_t> least;
                for (std::uint32_t z = 0; z < n; ++z) {
                    if (le(x, z) && le(y, z) && (!least || le(z, *least))) {
                        least = z;
                    }
                }
                for (std::uint32_t z = 0; z < n && least; ++z) {
                    if (le(x, z) && le(y, z) && !le(*least, z)) {
                        least.reset();
                    }
                }
                if (!least) {
                    ok = false;
                } else {
                    join[x * n + y] = *least;
                }
            }
        }
        if (ok) {
            out.push_back(join);
        }
    }
    return out;
}

} // namespace oracle
