#include "kmod/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "kmod/adjunction.hpp"
#include "kmod/builtins.hpp"
#include "kmod/congruence.hpp"
#include "kmod/constructions.hpp"
#include "kmod/hom.hpp"
#include "kmod/matrix.hpp"
#include "kmod/morita.hpp"
#include "kmod/structure_file.hpp"
#include "kmod/tensor.hpp"

namespace kmod {
namespace {

struct UsageError : Error {
    using Error::Error;
};

struct Options {
    Limits limits;
    std::uint64_t seed = 0;
    std::size_t max_pairs = 4096;
    std::string emit;
    std::string side;
    std::string respect;
    std::string path;
    std::string idempotent;
    std::string compare;
    std::vector<std::string> pairs;
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

// "head(a, b(c, d), [e, f])" -> head plus top-level arguments.
struct Term {
    std::string head;
    std::vector<std::string> args;
    bool call = false;
};

Term parse_term(const std::string& text) {
    Term t;
    const auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')') {
        t.head = trim(text);
        return t;
    }
    t.head = trim(text.substr(0, open));
    t.call = true;
    int depth = 0;
    std::string current;
    for (std::size_t i = open + 1; i + 1 < text.size(); ++i) {
        const char c = text[i];
        if (c == '(' || c == '[') {
            ++depth;
        } else if (c == ')' || c == ']') {
            --depth;
        }
        if (c == ',' && depth == 0) {
            t.args.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!trim(current).empty() || !t.args.empty()) {
        t.args.push_back(trim(current));
    }
    return t;
}

std::uint64_t parse_number(const std::string& text, const std::string& what) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError(what + " must be a non-negative integer, got '" + text + "'");
    }
    try {
        return std::stoull(text);
    } catch (const std::exception&) {
        throw UsageError(what + " is out of range: '" + text + "'");
    }
}

int parse_dimension(const std::string& text) {
    const auto n = parse_number(text, "dimension");
    if (n == 0 || n > 16) {
        throw UsageError("dimension must be between 1 and 16");
    }
    return static_cast<int>(n);
}

Side parse_side(const std::string& text) {
    if (text == "left") {
        return Side::left;
    }
    if (text == "right") {
        return Side::right;
    }
    if (text == "bi" || text == "both") {
        return Side::bi;
    }
    throw UsageError("side must be left, right or bi, got '" + text + "'");
}

Respect parse_respect(const std::string& text) {
    if (text == "left") {
        return Respect::left;
    }
    if (text == "right") {
        return Respect::right;
    }
    if (text == "both") {
        return Respect::both;
    }
    throw UsageError("respect must be left, right or both, got '" + text + "'");
}

Elem parse_element(const KleeneAlgebra& k, const std::string& text) {
    if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
        const auto x = parse_number(text, "element");
        if (x >= k.size()) {
            throw UsageError("element " + text + " is out of range for " + k.name());
        }
        return static_cast<Elem>(x);
    }
    if (k.size() <= kTableLimit) {
        for (Elem x = 0; x < k.size(); ++x) {
            if (k.label(x) == text) {
                return x;
            }
        }
    }
    throw UsageError("no element '" + text + "' in " + k.name());
}

// Idempotent expressions for M_n(K): "E11", "E11+E22", "I", "0", a JSON
// matrix literal, an element index, or an element label.
Elem parse_matrix_element(const KleeneAlgebra& base, int n, const KleeneAlgebra& matrices, const std::string& text) {
    const MatrixCodec codec(base, n);
    if (!text.empty() && text.front() == '[') {
        nlohmann::json grid;
        try {
            grid = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("bad matrix literal '" + text + "': " + e.what());
        }
        std::vector<Elem> entries;
        if (!grid.is_array() || grid.size() != static_cast<std::size_t>(n)) {
            throw UsageError("matrix literal must have " + std::to_string(n) + " rows");
        }
        for (const auto& row : grid) {
            if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
                throw UsageError("matrix literal rows must have " + std::to_string(n) + " entries");
            }
            for (const auto& v : row) {
                if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= base.size()) {
                    throw UsageError("matrix entries must be element indices of " + base.name());
                }
                entries.push_back(v.get<Elem>());
            }
        }
        return codec.encode(entries);
    }
    auto sum = MatrixElement::zero(base, n);
    bool symbolic = true;
    std::stringstream terms(text);
    std::string term;
    while (std::getline(terms, term, '+')) {
        term = trim(term);
        if (term == "I" || term == "1") {
            sum = sum + MatrixElement::identity(base, n);
        } else if (term == "0") {
        } else if (term.size() == 3 && term[0] == 'E' && std::isdigit(static_cast<unsigned char>(term[1])) &&
                   std::isdigit(static_cast<unsigned char>(term[2]))) {
            const int i = term[1] - '0';
            const int j = term[2] - '0';
            if (i < 1 || j < 1 || i > n || j > n) {
                throw UsageError("unit matrix " + term + " is out of range for dimension " + std::to_string(n));
            }
            sum = sum + MatrixElement::unit(base, n, i - 1, j - 1);
        } else {
            symbolic = false;
            break;
        }
    }
    if (symbolic && !text.empty()) {
        return sum.index(codec);
    }
    return parse_element(matrices, text);
}

class Resolver {
  public:
    explicit Resolver(const Options& options) : options_(options) {}

    KleeneAlgebra algebra(const std::string& ref) {
        if (auto named = from_file(ref)) {
            return pick(named->first->algebras, named->second, "kleene_algebra", ref);
        }
        return construct_builtin(ref, options_.limits);
    }

    KleeneModule module(const std::string& ref) {
        if (auto named = from_file(ref)) {
            return pick(named->first->modules, named->second, "module", ref);
        }
        const Term t = parse_term(ref);
        const auto& a = t.args;
        if (t.call && t.head == "regular" && (a.size() == 1 || a.size() == 2)) {
            return regular_module(algebra(a[0]), a.size() == 2 ? parse_side(a[1]) : Side::bi);
        }
        if (t.call && t.head == "free" && (a.size() == 2 || a.size() == 3)) {
            return free_module(algebra(a[0]), parse_number(a[1], "rank"), a.size() == 3 ? parse_side(a[2]) : Side::left,
                               options_.limits)
                .module;
        }
        if (t.call && (t.head == "col" || t.head == "row") && a.size() == 2) {
            const auto k = algebra(a[0]);
            const int n = parse_dimension(a[1]);
            const auto m = matrix_algebra(k, n, options_.limits);
            return t.head == "col" ? column_module(k, m, n) : row_module(k, m, n);
        }
        if (t.call && t.head == "dual" && (a.size() == 1 || a.size() == 2)) {
            std::optional<Respect> respect;
            if (a.size() == 2) {
                respect = parse_respect(a[1]);
            }
            return dual_module(module(a[0]), respect, options_.limits).module;
        }
        if (t.call && t.head == "trivial" && a.size() == 1) {
            return trivial_module_like(module(a[0]));
        }
        if (t.call && t.head == "ideal" && a.size() >= 3) {
            const auto k = algebra(a[0]);
            std::vector<Elem> gens;
            for (std::size_t i = 2; i < a.size(); ++i) {
                gens.push_back(parse_element(k, a[i]));
            }
            return submodule_generated(k, gens, parse_side(a[1]));
        }
        if (t.call && (t.head == "regular" || t.head == "free" || t.head == "col" || t.head == "row" ||
                       t.head == "dual" || t.head == "trivial" || t.head == "ideal")) {
            throw UsageError("wrong number of arguments in '" + ref + "'");
        }
        return regular_module(algebra(ref), Side::bi);
    }

    AlgebraHomomorphism algebra_hom(const std::string& ref) {
        if (auto named = from_file(ref)) {
            return pick(named->first->algebra_homs, named->second, "algebra hom", ref);
        }
        const Term t = parse_term(ref);
        if (t.call && t.head == "id" && t.args.size() == 1) {
            return identity_homomorphism(algebra(t.args[0]));
        }
        if (t.call && t.head == "scalar" && t.args.size() == 2) {
            const auto k = algebra(t.args[0]);
            const int n = parse_dimension(t.args[1]);
            return scalar_embedding(k, matrix_algebra(k, n, options_.limits), n);
        }
        if (t.call && t.head == "unit" && t.args.size() == 1) {
            const auto target = algebra(t.args[0]);
            return AlgebraHomomorphism{bool2(), target, {target.zero(), target.one()}};
        }
        throw UsageError("unknown homomorphism '" + ref + "' (use id(A), scalar(A,n), unit(A) or file:name)");
    }

    const Catalog& catalog(const std::string& path) {
        auto it = files_.find(path);
        if (it == files_.end()) {
            it = files_.emplace(path, load_structure_file(path, options_.limits)).first;
        }
        return it->second;
    }

  private:
    // "file" or "file:name" when the file exists.
    std::optional<std::pair<const Catalog*, std::string>> from_file(const std::string& ref) {
        namespace fs = std::filesystem;
        std::error_code ec;
        if (fs::is_regular_file(ref, ec)) {
            return std::make_pair(&catalog(ref), std::string{});
        }
        const auto colon = ref.rfind(':');
        if (colon != std::string::npos && fs::is_regular_file(ref.substr(0, colon), ec)) {
            return std::make_pair(&catalog(ref.substr(0, colon)), ref.substr(colon + 1));
        }
        if (ref.find(".ks") != std::string::npos) {
            throw Error("cannot open structure file for '" + ref + "'");
        }
        return std::nullopt;
    }

    template <typename Map>
    static typename Map::mapped_type pick(const Map& map, const std::string& name, const char* kind,
                                          const std::string& ref) {
        if (name.empty()) {
            if (map.size() != 1) {
                throw UsageError("'" + ref + "' declares " + std::to_string(map.size()) + " " + kind +
                                 " sections; name one as file:name");
            }
            return map.begin()->second;
        }
        const auto it = map.find(name);
        if (it == map.end()) {
            throw UsageError("'" + ref + "' has no " + kind + " named '" + name + "'");
        }
        return it->second;
    }

    const Options& options_;
    std::map<std::string, Catalog> files_;
};

struct Context {
    const Options& options;
    Resolver& resolve;
    StructureWriter& writer;
    bool wrote = false;
};

using Args = std::vector<std::string>;
using Handler = std::function<Report(Context&, const Args&)>;

struct Command {
    std::string name;
    std::string usage;
    std::size_t min_args;
    std::size_t max_args;
    Handler run;
};

void note_elements(Report& report, const KleeneModule& m) {
    std::ostringstream line;
    line << m.name() << ": " << m.size() << " elements, " << to_string(m.side());
    if (m.has_left()) {
        line << ", left over " << m.left_algebra().name();
    }
    if (m.has_right()) {
        line << ", right over " << m.right_algebra().name();
    }
    report.note(line.str());
}

void note_basis(Report& report, const KleeneModule& m) {
    for (const auto* basis : {m.left_basis(), m.right_basis()}) {
        if (!basis) {
            continue;
        }
        std::string line = (basis == m.left_basis() ? "left basis:" : "right basis:");
        for (const Elem b : basis->elements) {
            line += " " + m.label(b);
        }
        report.note(line);
    }
}

Report ka_check(Context& cx, const Args& a) {
    const auto k = cx.resolve.algebra(a[0]);
    auto report = check_kleene_axioms(k);
    report.note(k.name() + ": " + std::to_string(k.size()) + " elements");
    cx.writer.algebra(k);
    cx.wrote = true;
    return report;
}

Report ka_star(Context& cx, const Args& a) {
    const auto k = cx.resolve.algebra(a[0]);
    Report report("star of " + k.name());
    std::vector<Elem> elements;
    if (a.size() == 2) {
        elements.push_back(parse_element(k, a[1]));
    } else {
        for (Elem x = 0; x < k.size(); ++x) {
            elements.push_back(x);
        }
    }
    auto& law = report.law("stored star equals the saturation of 1 + a·x");
    constexpr std::size_t kShown = 64;
    for (const Elem x : elements) {
        const Elem stored = k.star(x);
        const Elem saturated = star_saturate(k, x);
        if (elements.size() <= kShown) {
            report.note(k.label(x) + "* = " + k.label(stored));
        }
        law.record(stored == saturated, [&] {
            return "a=" + k.label(x) + ": stored " + k.label(stored) + ", saturated " + k.label(saturated);
        });
    }
    if (elements.size() > kShown) {
        report.note(std::to_string(elements.size()) + " elements checked");
    }
    return report;
}

Report module_check(Context& cx, const Args& a) {
    const auto m = cx.resolve.module(a[0]);
    auto report = check_module_axioms(m);
    note_elements(report, m);
    cx.writer.module(m);
    cx.wrote = true;
    return report;
}

Report module_free(Context& cx, const Args& a) {
    const auto k = cx.resolve.algebra(a[0]);
    const auto side = cx.options.side.empty() ? Side::left : parse_side(cx.options.side);
    const auto free = free_module(k, parse_number(a[1], "rank"), side, cx.options.limits);
    auto report = check_module_axioms(free.module);
    note_elements(report, free.module);
    note_basis(report, free.module);
    cx.writer.module(free.module);
    cx.wrote = true;
    return report;
}

Report module_dual(Context& cx, const Args& a) {
    const auto m = cx.resolve.module(a[0]);
    std::optional<Respect> respect;
    if (!cx.options.respect.empty()) {
        respect = parse_respect(cx.options.respect);
    }
    const auto dual = dual_module(m, respect, cx.options.limits);
    auto report = check_module_axioms(dual.module);
    note_elements(report, m);
    note_elements(report, dual.module);
    note_basis(report, dual.module);
    cx.writer.module(dual.module);
    cx.wrote = true;
    return report;
}

Report module_hom(Context& cx, const Args& a) {
    const auto m = cx.resolve.module(a[0]);
    const auto n = cx.resolve.module(a[1]);
    Respect respect;
    if (!cx.options.respect.empty()) {
        respect = parse_respect(cx.options.respect);
    } else if (m.has_left() && m.has_right() && n.has_left() && n.has_right()) {
        respect = Respect::right;
    } else {
        respect = shared_respect(m, n);
    }
    const auto hom = hom_module(m, n, respect, cx.options.limits);
    auto report = check_module_axioms(hom.module);
    report.note("homomorphisms respecting " + to_string(respect) + ": " + std::to_string(hom.maps.size()));
    note_elements(report, hom.module);
    cx.writer.module(hom.module);
    cx.wrote = true;
    return report;
}

Report module_quotient(Context& cx, const Args& a) {
    const auto m = cx.resolve.module(a[0]);
    std::vector<ElemPair> pairs;
    for (const auto& text : cx.options.pairs) {
        const auto comma = text.find(',');
        if (comma == std::string::npos) {
            throw UsageError("--pair takes x,y, got '" + text + "'");
        }
        const auto x = parse_number(trim(text.substr(0, comma)), "pair element");
        const auto y = parse_number(trim(text.substr(comma + 1)), "pair element");
        if (x >= m.size() || y >= m.size()) {
            throw UsageError("pair " + text + " is out of range for " + m.name());
        }
        pairs.emplace_back(static_cast<Elem>(x), static_cast<Elem>(y));
    }
    const auto q = quotient_module(m, pairs);
    auto report = check_module_axioms(q.module);
    note_elements(report, q.module);
    const auto& trace = q.congruence.trace;
    report.note("classes: " + std::to_string(q.congruence.congruence.class_count()) + ", merges: " +
                std::to_string(trace.merges) + ", quasi-identity repairs: " + std::to_string(trace.repairs));
    std::string projection = "projection:";
    for (const Elem x : q.projection) {
        projection += " " + std::to_string(x);
    }
    report.note(projection);
    cx.writer.module(q.module);
    cx.wrote = true;
    return report;
}

Report module_iso(Context& cx, const Args& a) {
    const auto m = cx.resolve.module(a[0]);
    const auto n = cx.resolve.module(a[1]);
    Report report("isomorphism " + m.name() + " -> " + n.name());
    note_elements(report, m);
    note_elements(report, n);
    const auto iso = module_iso_search(m, n);
    report.law("isomorphism exists").record(iso.has_value(), [] { return "exhaustive search found none"; });
    if (iso) {
        std::string line = "map:";
        for (const Elem x : iso->map) {
            line += " " + std::to_string(x);
        }
        report.note(line);
    }
    return report;
}

TensorPath parse_path(const std::string& text) {
    if (text.empty() || text == "auto" || text == "automatic") {
        return TensorPath::automatic;
    }
    if (text == "exhaustive") {
        return TensorPath::exhaustive;
    }
    if (text == "fast") {
        return TensorPath::fast;
    }
    throw UsageError("path must be auto, exhaustive or fast, got '" + text + "'");
}

Report tensor(Context& cx, const Args& a) {
    const auto m = cx.resolve.module(a[0]);
    const auto n = cx.resolve.module(a[1]);
    const auto t = tensor_product(m, n, parse_path(cx.options.path), cx.options.limits);
    Report report("tensor " + m.name() + " ⊗ " + n.name());
    note_elements(report, t.module);
    report.note("path: " + to_string(t.path));
    for (const auto& line : t.trace) {
        report.note(line);
    }
    report.absorb(check_module_axioms(t.module), "tensor: ");
    const auto& mid = m.right_algebra();
    const auto& T = t.module;
    auto& left_additive = report.law("(m+m')⊗n = m⊗n + m'⊗n");
    auto& right_additive = report.law("m⊗(n+n') = m⊗n + m⊗n'");
    auto& balanced = report.law("mb⊗n = m⊗bn");
    for (Elem x = 0; x < m.size(); ++x) {
        for (Elem y = 0; y < n.size(); ++y) {
            for (Elem z = 0; z < m.size(); ++z) {
                left_additive.record(t.pure_tensor(m.add(x, z), y) == T.add(t.pure_tensor(x, y), t.pure_tensor(z, y)),
                                     [&] { return "m=" + m.label(x) + ", m'=" + m.label(z) + ", n=" + n.label(y); });
            }
            for (Elem z = 0; z < n.size(); ++z) {
                right_additive.record(t.pure_tensor(x, n.add(y, z)) == T.add(t.pure_tensor(x, y), t.pure_tensor(x, z)),
                                      [&] { return "m=" + m.label(x) + ", n=" + n.label(y) + ", n'=" + n.label(z); });
            }
            for (Elem b = 0; b < mid.size(); ++b) {
                balanced.record(t.pure_tensor(m.act_right(x, b), y) == t.pure_tensor(x, n.act_left(b, y)),
                                [&] { return "m=" + m.label(x) + ", b=" + mid.label(b) + ", n=" + n.label(y); });
            }
        }
    }
    if (T.has_left()) {
        auto& outer = report.law("a(m⊗n) = am⊗n");
        for (Elem s = 0; s < T.left_algebra().size(); ++s) {
            for (Elem x = 0; x < m.size(); ++x) {
                for (Elem y = 0; y < n.size(); ++y) {
                    outer.record(T.act_left(s, t.pure_tensor(x, y)) == t.pure_tensor(m.act_left(s, x), y),
                                 [&] { return "a=" + T.left_algebra().label(s) + ", m=" + m.label(x) + ", n=" + n.label(y); });
                }
            }
        }
    }
    if (T.has_right()) {
        auto& outer = report.law("(m⊗n)c = m⊗nc");
        for (Elem c = 0; c < T.right_algebra().size(); ++c) {
            for (Elem x = 0; x < m.size(); ++x) {
                for (Elem y = 0; y < n.size(); ++y) {
                    outer.record(T.act_right(t.pure_tensor(x, y), c) == t.pure_tensor(x, n.act_right(y, c)),
                                 [&] { return "c=" + T.right_algebra().label(c) + ", m=" + m.label(x) + ", n=" + n.label(y); });
                }
            }
        }
    }
    cx.writer.tensor(t);
    cx.wrote = true;
    return report;
}

Report tensor_adjunction(Context& cx, const Args& a) {
    const auto m = cx.resolve.module(a[0]);
    const auto n = cx.resolve.module(a[1]);
    const auto p = cx.resolve.module(a[2]);
    std::optional<KleeneModule> m_prime, p_prime;
    if (a.size() > 3) {
        m_prime = cx.resolve.module(a[3]);
    }
    if (a.size() > 4) {
        p_prime = cx.resolve.module(a[4]);
    }
    AdjunctionOptions options;
    options.seed = cx.options.seed;
    options.max_pairs = cx.options.max_pairs;
    return check_adjunction(m, n, p, m_prime, p_prime, options, cx.options.limits);
}

Report tensor_laws(Context& cx, const Args& a) {
    return check_monoid_laws(cx.resolve.module(a[0]), cx.resolve.module(a[1]), cx.resolve.module(a[2]),
                             cx.options.limits);
}

Report finish_witness(Context& cx, const MoritaWitness& w) {
    Report report = w.report;
    report.absorb(verify_witness(w, cx.options.limits), "verify: ");
    cx.writer.witness(w);
    cx.wrote = true;
    return report;
}

Report morita_matrix(Context& cx, const Args& a) {
    const auto k = cx.resolve.algebra(a[0]);
    return finish_witness(cx, matrix_morita_witness(k, parse_dimension(a[1]), cx.options.limits));
}

Report morita_full_idempotents(Context& cx, const Args& a) {
    const auto k = cx.resolve.algebra(a[0]);
    Report report("full idempotents of " + k.name());
    const auto all = idempotents(k);
    std::vector<bool> full(all.size());
    std::size_t count = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        full[i] = is_full_idempotent(k, all[i]);
        count += full[i];
        report.note(k.label(all[i]) + (full[i] ? "  full" : "  not full"));
    }
    report.note(std::to_string(all.size()) + " idempotents, " + std::to_string(count) + " full");
    auto& monotone = report.law("fullness is upward closed among idempotents");
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = 0; j < all.size(); ++j) {
            if (k.leq(all[i], all[j])) {
                monotone.record(!full[i] || full[j],
                                [&] { return "e=" + k.label(all[i]) + " full, f=" + k.label(all[j]) + " not"; });
            }
        }
    }
    report.law("1 is full").record(is_full_idempotent(k, k.one()), [] { return "closure of {x·1·y} is proper"; });
    if (k.size() > 1) {
        report.law("0 is not full").record(!is_full_idempotent(k, k.zero()), [] { return "0 generates everything"; });
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (full[i]) {
            cx.writer.idempotent(k, all[i], "full_" + std::to_string(all[i]));
            cx.wrote = true;
        }
    }
    return report;
}

struct ChosenIdempotent {
    KleeneAlgebra base;
    KleeneAlgebra algebra;
    int n = 0;
    Elem e = 0;
};

ChosenIdempotent choose_idempotent(Context& cx, const Args& a) {
    if (cx.options.idempotent.empty()) {
        throw UsageError("--idempotent is required");
    }
    const auto k = cx.resolve.algebra(a[0]);
    if (a.size() == 2) {
        const int n = parse_dimension(a[1]);
        const auto m = matrix_algebra(k, n, cx.options.limits);
        return {k, m, n, parse_matrix_element(k, n, m, cx.options.idempotent)};
    }
    return {k, k, 0, parse_element(k, cx.options.idempotent)};
}

Report morita_corner(Context& cx, const Args& a) {
    const auto chosen = choose_idempotent(cx, a);
    const auto& m = chosen.algebra;
    Report report("corner of " + m.name() + " at " + m.label(chosen.e));
    if (m.mul(chosen.e, chosen.e) != chosen.e) {
        throw PreconditionError(m.label(chosen.e) + " is not idempotent");
    }
    report.note(std::string("idempotent is ") + (is_full_idempotent(m, chosen.e) ? "full" : "not full"));
    std::optional<CornerAlgebra> corner;
    try {
        corner = corner_algebra(m, chosen.e);
    } catch (const CornerStarError& e) {
        report.law("corner with star e·x*·e is a Kleene algebra").fail(e.what());
        return report;
    }
    report.note("corner: " + std::to_string(corner->algebra.size()) + " elements");
    std::string members = "members:";
    for (const Elem x : corner->embedding) {
        members += " " + m.label(x);
    }
    report.note(members);
    report.absorb(check_kleene_axioms(corner->algebra), "corner: ");
    if (!cx.options.compare.empty()) {
        const auto other = cx.resolve.algebra(cx.options.compare);
        const auto iso = algebra_iso_search(corner->algebra, other);
        report.law("corner ≅ " + other.name()).record(iso.has_value(), [] { return "exhaustive search found none"; });
    }
    cx.writer.algebra(corner->algebra);
    cx.writer.idempotent(m, chosen.e, "e");
    cx.wrote = true;
    return report;
}

Report morita_lift(Context& cx, const Args& a) {
    const auto chosen = choose_idempotent(cx, a);
    if (chosen.n == 0) {
        throw UsageError("morita lift needs <algebra> <n>");
    }
    return finish_witness(cx, lift_semiring_morita(chosen.base, chosen.n, chosen.e, cx.options.limits));
}

Report morita_hom_module(Context& cx, const Args& a) {
    const auto h = cx.resolve.algebra_hom(a[0]);
    h.validate();
    Report report("homomorphism module of " + h.source.name() + " -> " + h.target.name());
    const auto hom_report = check_algebra_homomorphism(h);
    report.absorb(hom_report, "h: ");
    if (!hom_report.passed()) {
        return report;
    }
    const auto e = homomorphism_module(h);
    note_elements(report, e.module);
    report.absorb(check_module_axioms(e.module), "E_h: ");
    cx.writer.algebra_hom(h, "h");
    cx.writer.module(e.module);
    cx.wrote = true;
    return report;
}

Report morita_compose_law(Context& cx, const Args& a) {
    return check_composition_law(cx.resolve.algebra_hom(a[0]), cx.resolve.algebra_hom(a[1]), cx.options.limits);
}

Report verify(Context& cx, const Args& a) {
    const Catalog& c = cx.resolve.catalog(a[0]);
    Report report("verify " + a[0]);
    std::set<const void*> covered;
    std::set<std::string> covered_algebras;
    for (const auto& [kind, name] : c.order) {
        if (kind != "witness") {
            continue;
        }
        const auto& w = c.witnesses.at(name);
        report.absorb(verify_witness(w, cx.options.limits), name + ": ");
        for (const auto* m : {&w.sk, &w.ks, &w.sk_ks.module, &w.ks_sk.module}) {
            covered.insert(&m->parts());
        }
        covered_algebras.insert(w.base.name());
        covered_algebras.insert(w.other.name());
    }
    for (const auto& [kind, name] : c.order) {
        if (kind == "kleene_algebra" && !covered_algebras.count(name)) {
            report.absorb(check_kleene_axioms(c.algebras.at(name)), name + ": ");
        } else if (kind == "module" && !covered.count(&c.modules.at(name).parts())) {
            report.absorb(check_module_axioms(c.modules.at(name)), name + ": ");
        } else if (kind == "hom") {
            if (const auto it = c.algebra_homs.find(name); it != c.algebra_homs.end()) {
                report.absorb(check_algebra_homomorphism(it->second), name + ": ");
            } else {
                const auto& h = c.module_homs.at(name);
                report.absorb(check_module_homomorphism(h, shared_respect(h.source, h.target)), name + ": ");
            }
        } else if (kind == "idempotent") {
            const auto& [algebra, e] = c.idempotents.at(name);
            report.law(name + ": e·e = e").record(algebra.mul(e, e) == e, [&] { return "e=" + algebra.label(e); });
            report.note(name + ": " + algebra.label(e) + (is_full_idempotent(algebra, e) ? " full" : " not full"));
        } else if (kind == "tensor" && !covered.count(&c.tensors.at(name).module.parts())) {
            const auto& t = c.tensors.at(name);
            const auto fresh = tensor_product(t.left_factor, t.right_factor, TensorPath::automatic, cx.options.limits);
            const auto map = induced_map(fresh, t.module, [&](Elem x, Elem y) { return t.pure_tensor(x, y); });
            report.law(name + ": recorded tensor matches the recomputed one")
                .record(map && is_isomorphism(fresh.module, t.module, *map),
                        [] { return "pure tensors do not induce an isomorphism"; });
        }
    }
    return report;
}

const std::vector<Command>& commands() {
    static const std::vector<Command> table = {
        {"ka check", "ka check <algebra>", 1, 1, ka_check},
        {"ka star", "ka star <algebra> [element]", 1, 2, ka_star},
        {"module check", "module check <module>", 1, 1, module_check},
        {"module free", "module free <algebra> <rank> [--side left|right|bi]", 2, 2, module_free},
        {"module dual", "module dual <module> [--respect left|right]", 1, 1, module_dual},
        {"module hom", "module hom <module> <module> [--respect left|right]", 2, 2, module_hom},
        {"module quotient", "module quotient <module> --pair x,y ...", 1, 1, module_quotient},
        {"module iso", "module iso <module> <module>", 2, 2, module_iso},
        {"tensor adjunction", "tensor adjunction <M> <N> <P> [M'] [P'] [--seed N]", 3, 5, tensor_adjunction},
        {"tensor laws", "tensor laws <M> <N> <P>", 3, 3, tensor_laws},
        {"tensor", "tensor <M> <N> [--path auto|exhaustive|fast]", 2, 2, tensor},
        {"morita matrix", "morita matrix <algebra> <n>", 2, 2, morita_matrix},
        {"morita full-idempotents", "morita full-idempotents <algebra>", 1, 1, morita_full_idempotents},
        {"morita corner", "morita corner <algebra> [n] --idempotent X [--compare <algebra>]", 1, 2, morita_corner},
        {"morita lift", "morita lift <algebra> <n> --idempotent X", 2, 2, morita_lift},
        {"morita hom-module", "morita hom-module <hom>", 1, 1, morita_hom_module},
        {"morita compose-law", "morita compose-law <f> <g>", 2, 2, morita_compose_law},
        {"verify", "verify <structure-file>", 1, 1, verify},
    };
    return table;
}

std::string command_list() {
    std::string text = "Commands:\n";
    for (const auto& c : commands()) {
        text += "  " + c.usage + "\n";
    }
    text += "\nAlgebras: bool2, rel(n), M<n>(<algebra>), file.ks or file.ks:name\n"
            "Modules: <algebra> (regular bimodule), regular(A[,side]), free(A,k[,side]), col(A,n), row(A,n),\n"
            "         dual(M[,respect]), ideal(A,side,g...), trivial(M), file.ks:name\n"
            "Homomorphisms: id(A), scalar(A,n), unit(A), file.ks:name\n";
    return text;
}

std::string echo(const std::vector<std::string>& args) {
    std::string line = "kmod";
    for (const auto& a : args) {
        line += ' ';
        if (a.empty() || a.find_first_of(" \t\"'") != std::string::npos) {
            line += '\'' + a + '\'';
        } else {
            line += a;
        }
    }
    return line;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    Options options;
    std::vector<std::string> words;

    CLI::App app{"Finite Kleene algebras, Kleene modules, tensor products and Morita witnesses.", "kmod"};
    app.footer(command_list());
    app.add_option("words", words, "command and arguments");
    app.add_option("--max-carrier", options.limits.max_carrier, "largest carrier to build")->capture_default_str();
    app.add_option("--hom-bound", options.limits.hom_bound, "largest hom candidate count")->capture_default_str();
    app.add_option("--seed", options.seed, "seed for sampled checks")->capture_default_str();
    app.add_option("--max-pairs", options.max_pairs, "(α, β) pairs before sampling")->capture_default_str();
    app.add_option("--emit", options.emit, "write the resulting structures to this file");
    app.add_option("--side", options.side, "left, right or bi");
    app.add_option("--respect", options.respect, "left, right or both");
    app.add_option("--path", options.path, "tensor path: auto, exhaustive or fast");
    app.add_option("--idempotent", options.idempotent, "E11, E11+E22, I, 0, [[..]], an index or a label");
    app.add_option("--compare", options.compare, "algebra to compare a corner against");
    app.add_option("--pair", options.pairs, "identify x,y (repeatable)")->allow_extra_args(false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << "kmod: " << e.what() << "\n";
        return exit_error;
    }

    const Command* command = nullptr;
    std::size_t consumed = 0;
    for (const auto& c : commands()) {
        std::stringstream name(c.name);
        std::string part;
        std::size_t i = 0;
        bool match = true;
        while (name >> part) {
            if (i >= words.size() || words[i] != part) {
                match = false;
                break;
            }
            ++i;
        }
        if (match) {
            command = &c;
            consumed = i;
            break;
        }
    }
    if (!command) {
        err << "kmod: unknown command" << (words.empty() ? "" : " '" + words[0] + "'") << "\n\n" << command_list();
        return exit_error;
    }
    const Args rest(words.begin() + static_cast<std::ptrdiff_t>(consumed), words.end());
    if (rest.size() < command->min_args || rest.size() > command->max_args) {
        err << "kmod: usage: kmod " << command->usage << "\n";
        return exit_error;
    }

    out << "command: " << echo(args) << "\n";
    int code = exit_error;
    try {
        Resolver resolver(options);
        StructureWriter writer;
        Context cx{options, resolver, writer};
        const Report report = command->run(cx, rest);
        out << report.render();
        code = report.passed() ? exit_pass : exit_fail;
        if (!options.emit.empty()) {
            if (!cx.wrote) {
                out << "emit: nothing to write for this command\n";
            } else {
                std::ofstream file(options.emit);
                file << writer.str();
                if (!file) {
                    throw Error("cannot write '" + options.emit + "'");
                }
                out << "emitted: " << options.emit << "\n";
            }
        }
        out << "verdict: " << (code == exit_pass ? "pass" : "fail") << "\n";
    } catch (const Error& e) {
        out << "error: " << e.what() << "\n";
        out << "verdict: error\n";
        err << "kmod: " << e.what() << "\n";
        code = exit_error;
    }
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
    err << "elapsed: " << static_cast<long long>(elapsed.count()) << " ms\n";
    return code;
}

} // namespace kmod
