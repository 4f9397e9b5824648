#pragma once

// Conversions from library structures to the oracle's plain tables, plus a
// few fixtures shared by several suites.

#include "oracles.hpp"

#include "kmod/algebra.hpp"
#include "kmod/module.hpp"

namespace support {

inline oracle::Algebra tables(const kmod::KleeneAlgebra& k) {
    oracle::Algebra a;
    a.n = k.size();
    a.zero = k.zero();
    a.one = k.one();
    for (kmod::Elem x = 0; x < k.size(); ++x) {
        a.star.push_back(k.star(x));
        for (kmod::Elem y = 0; y < k.size(); ++y) {
            a.add.push_back(k.add(x, y));
            a.mul.push_back(k.mul(x, y));
        }
    }
    return a;
}

inline oracle::Module left_tables(const kmod::KleeneModule& m) {
    oracle::Module out;
    out.n = m.size();
    out.zero = m.zero();
    for (kmod::Elem x = 0; x < m.size(); ++x) {
        for (kmod::Elem y = 0; y < m.size(); ++y) {
            out.add.push_back(m.add(x, y));
        }
    }
    for (kmod::Elem a = 0; a < m.left_algebra().size(); ++a) {
        for (kmod::Elem x = 0; x < m.size(); ++x) {
            out.act.push_back(m.act_left(a, x));
        }
    }
    return out;
}

inline kmod::KleeneAlgebra from_tables(const std::string& name, const oracle::Algebra& a) {
    return kmod::KleeneAlgebra::from_tables(name, a.n, a.zero, a.one, a.add, a.mul, a.star);
}

inline kmod::KleeneModule left_module(const std::string& name, const kmod::KleeneAlgebra& k, const oracle::Module& m) {
    kmod::KleeneModule::Parts parts;
    parts.name = name;
    parts.size = m.n;
    parts.zero = m.zero;
    parts.add = m.add;
    parts.left = kmod::ScalarAction{k, m.act};
    return kmod::KleeneModule::make(std::move(parts));
}

// 0 < 1 < t with t·t = t and t* = t.
inline kmod::KleeneAlgebra chain3() {
    oracle::Algebra a;
    a.n = 3;
    a.zero = 0;
    a.one = 1;
    a.add = {0, 1, 2, 1, 1, 2, 2, 2, 2};
    a.mul = {0, 0, 0, 0, 1, 2, 0, 2, 2};
    a.star = {1, 1, 2};
    return from_tables("chain3", a);
}

// {0, 1, a, 1+a} with a·a = 0.
inline kmod::KleeneAlgebra dual_numbers() {
    oracle::Algebra a;
    a.n = 4;
    a.zero = 0;
    a.one = 1;
    a.add = {0, 1, 2, 3, 1, 1, 3, 3, 2, 3, 2, 3, 3, 3, 3, 3};
    a.mul = {0, 0, 0, 0, 0, 1, 2, 3, 0, 2, 0, 2, 0, 3, 2, 3};
    a.star = {1, 1, 3, 3};
    return from_tables("D", a);
}

// Every left Kleene module over k whose carrier has `n` elements and zero 0,
// found by enumerating join tables and action rows of non-unit scalars.
inline std::vector<kmod::KleeneModule> all_left_modules(const kmod::KleeneAlgebra& k, std::uint32_t n,
                                                        std::size_t cap = 5000) {
    const auto ka = tables(k);
    std::vector<kmod::KleeneModule> out;
    for (const auto& join : oracle::all_semilattices(n)) {
        std::vector<kmod::Elem> free_scalars;
        for (kmod::Elem a = 0; a < k.size(); ++a) {
            if (a != k.zero() && a != k.one()) {
                free_scalars.push_back(a);
            }
        }
        const std::size_t cells = free_scalars.size() * n;
        oracle::for_each_map(static_cast<std::uint32_t>(cells), n, [&](const oracle::Table& rows) {
            if (out.size() >= cap) {
                return;
            }
            oracle::Module m;
            m.n = n;
            m.zero = 0;
            m.add = join;
            m.act.assign(std::size_t{k.size()} * n, 0);
            for (std::uint32_t x = 0; x < n; ++x) {
                m.act[k.one() * n + x] = x;
            }
            for (std::size_t i = 0; i < free_scalars.size(); ++i) {
                for (std::uint32_t x = 0; x < n; ++x) {
                    m.act[free_scalars[i] * n + x] = rows[i * n + x];
                }
            }
            if (oracle::is_kleene_module(ka, m)) {
                out.push_back(left_module(k.name() + "-module#" + std::to_string(out.size()), k, m));
            }
        });
    }
    return out;
}

} // namespace support
