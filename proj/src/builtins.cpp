#include "kmod/builtins.hpp"

#include "kmod/matrix.hpp"

#include <cctype>
#include <charconv>
#include <string>

namespace kmod {

KleeneAlgebra bool2() {
    KleeneAlgebra::Structure s;
    s.name = "bool2";
    s.key = "bool2";
    s.size = 2;
    s.zero = 0;
    s.one = 1;
    s.add = [](Elem a, Elem b) { return a | b; };
    s.mul = [](Elem a, Elem b) { return a & b; };
    s.star = [](Elem) { return Elem{1}; };
    s.labeler = [](Elem a) { return std::to_string(a); };
    return KleeneAlgebra::structural(std::move(s));
}

namespace {

Elem compose_relations(Elem r, Elem s, int n) {
    Elem out = 0;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            if ((r >> (i * n + k)) & 1U) {
                // row k of s shifted into row i
                const Elem row = (s >> (k * n)) & ((Elem{1} << n) - 1);
                out |= row << (i * n);
            }
        }
    }
    return out;
}

Elem reflexive_transitive_closure(Elem r, int n) {
    for (int i = 0; i < n; ++i) {
        r |= Elem{1} << (i * n + i);
    }
    for (int k = 0; k < n; ++k) {
        const Elem row_k = (r >> (k * n)) & ((Elem{1} << n) - 1);
        for (int i = 0; i < n; ++i) {
            if ((r >> (i * n + k)) & 1U) {
                r |= row_k << (i * n);
            }
        }
    }
    return r;
}

std::string relation_label(Elem r, int n) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if ((r >> (i * n + j)) & 1U) {
                out += first ? "" : ",";
                out += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
                first = false;
            }
        }
    }
    return out + "}";
}

} // namespace

KleeneAlgebra relation_algebra(int n, const Limits& limits) {
    if (n < 1) {
        throw PreconditionError("rel(n) needs n >= 1");
    }
    if (n * n >= 31 || (std::size_t{1} << (n * n)) > limits.max_carrier) {
        throw SizeGuardError("rel(" + std::to_string(n) + ") has 2^" + std::to_string(n * n) +
                             " elements, above the carrier bound " + std::to_string(limits.max_carrier));
    }
    KleeneAlgebra::Structure s;
    s.name = "rel(" + std::to_string(n) + ")";
    s.key = s.name;
    s.size = Elem{1} << (n * n);
    s.zero = 0;
    Elem diagonal = 0;
    for (int i = 0; i < n; ++i) {
        diagonal |= Elem{1} << (i * n + i);
    }
    s.one = diagonal;
    s.add = [](Elem a, Elem b) { return a | b; };
    s.mul = [n](Elem a, Elem b) { return compose_relations(a, b, n); };
    s.star = [n](Elem a) { return reflexive_transitive_closure(a, n); };
    s.labeler = [n](Elem a) { return relation_label(a, n); };
    return KleeneAlgebra::structural(std::move(s));
}

namespace {

int parse_positive(std::string_view text, std::string_view whole) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1) {
        throw PreconditionError("bad builtin algebra spec '" + std::string(whole) + "'");
    }
    return value;
}

} // namespace

KleeneAlgebra construct_builtin(std::string_view spec, const Limits& limits) {
    if (spec == "bool2") {
        return bool2();
    }
    if (spec.starts_with("rel(") && spec.ends_with(")")) {
        return relation_algebra(parse_positive(spec.substr(4, spec.size() - 5), spec), limits);
    }
    if (spec.starts_with("rel") && spec.size() > 3 && std::isdigit(static_cast<unsigned char>(spec[3]))) {
        return relation_algebra(parse_positive(spec.substr(3), spec), limits);
    }
    if (spec.starts_with("M") && spec.ends_with(")")) {
        const auto open = spec.find('(');
        if (open != std::string_view::npos && open > 1) {
            const int n = parse_positive(spec.substr(1, open - 1), spec);
            const auto inner = spec.substr(open + 1, spec.size() - open - 2);
            return matrix_algebra(construct_builtin(inner, limits), n, limits);
        }
    }
    throw PreconditionError("unknown builtin algebra '" + std::string(spec) + "' (expected bool2, rel(n), M<n>(<spec>))");
}

} // namespace kmod
