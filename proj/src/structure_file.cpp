#include "kmod/structure_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "kmod/builtins.hpp"

namespace kmod {

bool Catalog::has(const std::string& name) const {
    return algebras.count(name) || modules.count(name) || algebra_homs.count(name) || module_homs.count(name) ||
           idempotents.count(name) || tensors.count(name) || witnesses.count(name);
}

namespace {

struct Token {
    enum Kind { ident, number, string, lbrace, rbrace, lbracket, rbracket, colon, semi, comma, end } kind;
    std::string text;
    int line;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    int line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') {
                ++i;
            }
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                ++j;
            }
            tokens.push_back({Token::number, std::string(text.substr(i, j - i)), line});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
                ++j;
            }
            tokens.push_back({Token::ident, std::string(text.substr(i, j - i)), line});
            i = j;
        } else if (c == '"') {
            const std::size_t j = text.find('"', i + 1);
            if (j == std::string_view::npos || text.substr(i, j - i).find('\n') != std::string_view::npos) {
                throw ParseError("unterminated string", line, "");
            }
            tokens.push_back({Token::string, std::string(text.substr(i + 1, j - i - 1)), line});
            i = j + 1;
        } else {
            Token::Kind kind;
            switch (c) {
            case '{':
                kind = Token::lbrace;
                break;
            case '}':
                kind = Token::rbrace;
                break;
            case '[':
                kind = Token::lbracket;
                break;
            case ']':
                kind = Token::rbracket;
                break;
            case ':':
                kind = Token::colon;
                break;
            case ';':
                kind = Token::semi;
                break;
            case ',':
                kind = Token::comma;
                break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, "");
            }
            tokens.push_back({kind, std::string(1, c), line});
            ++i;
        }
    }
    tokens.push_back({Token::end, "", line});
    return tokens;
}

struct Value {
    enum Kind { number, word, list } kind = number;
    std::uint64_t num = 0;
    std::string text;
    std::vector<Value> items;
    int line = 0;
};

struct Section {
    std::string keyword;
    std::string name;
    int line = 0;
    std::vector<std::pair<std::string, Value>> fields;
};

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    std::vector<Section> sections() {
        std::vector<Section> out;
        while (peek().kind != Token::end) {
            Section s;
            const Token& kw = expect(Token::ident, "a section keyword", "");
            s.keyword = kw.text;
            s.line = kw.line;
            s.name = expect(Token::ident, "a section name", s.keyword).text;
            expect(Token::lbrace, "'{'", s.name);
            while (peek().kind != Token::rbrace) {
                const Token& key = expect(Token::ident, "a field name", s.name);
                expect(Token::colon, "':'", s.name);
                s.fields.emplace_back(key.text, value(s.name));
                if (peek().kind == Token::semi) {
                    next();
                } else if (peek().kind != Token::rbrace) {
                    throw ParseError("expected ';' or '}'", peek().line, s.name);
                }
            }
            next();
            out.push_back(std::move(s));
        }
        return out;
    }

  private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    const Token& expect(Token::Kind kind, const char* what, const std::string& section) {
        if (peek().kind != kind) {
            throw ParseError(std::string("expected ") + what + ", found '" + peek().text + "'", peek().line, section);
        }
        return next();
    }

    Value value(const std::string& section) {
        const Token& t = next();
        Value v;
        v.line = t.line;
        switch (t.kind) {
        case Token::number:
            v.kind = Value::number;
            try {
                v.num = std::stoull(t.text);
            } catch (const std::exception&) {
                throw ParseError("number out of range", t.line, section);
            }
            return v;
        case Token::ident:
        case Token::string:
            v.kind = Value::word;
            v.text = t.text;
            return v;
        case Token::lbracket:
            v.kind = Value::list;
            while (peek().kind != Token::rbracket) {
                v.items.push_back(value(section));
                if (peek().kind == Token::comma) {
                    next();
                } else if (peek().kind != Token::rbracket) {
                    throw ParseError("expected ',' or ']'", peek().line, section);
                }
            }
            next();
            return v;
        default:
            throw ParseError("expected a value, found '" + t.text + "'", t.line, section);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// Field access with shape checks for one section.
class Fields {
  public:
    Fields(const Section& s, std::set<std::string> allowed) : s_(s) {
        for (const auto& [key, value] : s.fields) {
            if (!allowed.count(key)) {
                throw ParseError("unknown field '" + key + "'", value.line, s.name);
            }
            if (!seen_.insert(key).second) {
                throw ParseError("duplicate field '" + key + "'", value.line, s.name);
            }
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return seen_.count(key) > 0; }

    const Value& get(const std::string& key) const {
        for (const auto& [k, v] : s_.fields) {
            if (k == key) {
                return v;
            }
        }
        throw ParseError("missing field '" + key + "'", s_.line, s_.name);
    }

    [[noreturn]] void fail(const Value& v, const std::string& what) const { throw ParseError(what, v.line, s_.name); }

    Elem number(const std::string& key) const {
        const Value& v = get(key);
        if (v.kind != Value::number || v.num > 0xffffffffu) {
            fail(v, "field '" + key + "' must be a number");
        }
        return static_cast<Elem>(v.num);
    }

    Elem index(const std::string& key, Elem bound) const {
        const Elem x = number(key);
        if (x >= bound) {
            fail(get(key), "field '" + key + "' = " + std::to_string(x) + " is out of range (size " +
                               std::to_string(bound) + ")");
        }
        return x;
    }

    std::string word(const std::string& key) const {
        const Value& v = get(key);
        if (v.kind != Value::word) {
            fail(v, "field '" + key + "' must be a name");
        }
        return v.text;
    }

    std::vector<Elem> vector(const std::string& key, std::size_t length, Elem bound) const {
        const Value& v = get(key);
        if (v.kind != Value::list) {
            fail(v, "field '" + key + "' must be a list");
        }
        if (v.items.size() != length) {
            fail(v, "field '" + key + "' has " + std::to_string(v.items.size()) + " entries, expected " +
                        std::to_string(length));
        }
        return entries(key, v, bound);
    }

    std::vector<Elem> free_vector(const std::string& key, Elem bound) const {
        const Value& v = get(key);
        if (v.kind != Value::list) {
            fail(v, "field '" + key + "' must be a list");
        }
        return entries(key, v, bound);
    }

    std::vector<Elem> matrix(const std::string& key, std::size_t rows, std::size_t cols, Elem bound) const {
        const Value& v = get(key);
        if (v.kind != Value::list) {
            fail(v, "field '" + key + "' must be a table");
        }
        if (v.items.size() != rows) {
            fail(v, "table '" + key + "' has " + std::to_string(v.items.size()) + " rows, expected " +
                        std::to_string(rows));
        }
        std::vector<Elem> out;
        out.reserve(rows * cols);
        for (std::size_t r = 0; r < rows; ++r) {
            const Value& row = v.items[r];
            if (row.kind != Value::list || row.items.size() != cols) {
                fail(row, "table '" + key + "' row " + std::to_string(r) + " has width " +
                              std::to_string(row.kind == Value::list ? row.items.size() : 0) + ", expected " +
                              std::to_string(cols));
            }
            const auto values = entries(key, row, bound);
            out.insert(out.end(), values.begin(), values.end());
        }
        return out;
    }

  private:
    std::vector<Elem> entries(const std::string& key, const Value& list, Elem bound) const {
        std::vector<Elem> out;
        for (const Value& item : list.items) {
            if (item.kind != Value::number) {
                fail(item, "table '" + key + "' holds a non-number");
            }
            if (item.num >= bound) {
                fail(item, "table '" + key + "' entry " + std::to_string(item.num) + " is out of range (size " +
                               std::to_string(bound) + ")");
            }
            out.push_back(static_cast<Elem>(item.num));
        }
        return out;
    }

    const Section& s_;
    std::set<std::string> seen_;
};

// Coordinates of every element in a claimed basis, found by enumerating all
// coefficient tuples; nullopt unless each element has exactly one.
std::optional<FreeBasis> basis_coordinates(const KleeneModule& m, const std::vector<Elem>& basis, bool left) {
    const KleeneAlgebra& k = left ? m.left_algebra() : m.right_algebra();
    const std::size_t rank = basis.size();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < rank; ++i) {
        combos *= k.size();
        if (combos > (std::size_t{1} << 22)) {
            return std::nullopt;
        }
    }
    constexpr Elem kUnset = static_cast<Elem>(-1);
    FreeBasis out{basis, std::vector<Elem>(std::size_t{m.size()} * rank, kUnset)};
    std::vector<Elem> coeff(rank, 0);
    std::vector<bool> hit(m.size(), false);
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rest = c;
        Elem x = m.zero();
        for (std::size_t i = 0; i < rank; ++i) {
            coeff[i] = static_cast<Elem>(rest % k.size());
            rest /= k.size();
            x = m.add(x, left ? m.act_left(coeff[i], basis[i]) : m.act_right(basis[i], coeff[i]));
        }
        if (hit[x]) {
            return std::nullopt;
        }
        hit[x] = true;
        std::copy(coeff.begin(), coeff.end(), out.coords.begin() + static_cast<std::ptrdiff_t>(x * rank));
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
        return std::nullopt;
    }
    return out;
}

template <typename Map>
const typename Map::mapped_type& lookup(const Map& map, const Fields& f, const std::string& key, const char* kind) {
    const std::string name = f.word(key);
    const auto it = map.find(name);
    if (it == map.end()) {
        f.fail(f.get(key), "dangling reference '" + name + "': no " + kind + " declared with that name");
    }
    return it->second;
}

KleeneAlgebra parse_algebra(const Section& s, const Limits& limits) {
    if (std::any_of(s.fields.begin(), s.fields.end(), [](const auto& f) { return f.first == "builtin"; })) {
        Fields f(s, {"builtin"});
        try {
            return construct_builtin(f.word("builtin"), limits).renamed(s.name);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            f.fail(f.get("builtin"), e.what());
        }
    }
    Fields f(s, {"elements", "zero", "one", "add", "mul", "star"});
    const Elem k = f.number("elements");
    if (k == 0) {
        f.fail(f.get("elements"), "an algebra needs at least one element");
    }
    if (k > kTableLimit) {
        f.fail(f.get("elements"), "table algebras are limited to " + std::to_string(kTableLimit) + " elements");
    }
    return KleeneAlgebra::from_tables(s.name, k, f.index("zero", k), f.index("one", k), f.matrix("add", k, k, k),
                                      f.matrix("mul", k, k, k), f.vector("star", k, k));
}

KleeneModule parse_module(const Section& s, const Catalog& c) {
    Fields f(s, {"over_left", "over_right", "size", "zero", "add", "left_action", "right_action", "left_basis",
                 "right_basis"});
    KleeneModule::Parts parts;
    parts.name = s.name;
    const Elem m = f.number("size");
    if (m == 0) {
        f.fail(f.get("size"), "a module needs at least one element");
    }
    if (m > kModuleTableLimit) {
        f.fail(f.get("size"), "modules are limited to " + std::to_string(kModuleTableLimit) + " elements");
    }
    parts.size = m;
    parts.zero = f.index("zero", m);
    parts.add = f.matrix("add", m, m, m);
    if (f.has("over_left")) {
        const auto& k = lookup(c.algebras, f, "over_left", "kleene_algebra");
        parts.left = ScalarAction{k, f.matrix("left_action", k.size(), m, m)};
    } else if (f.has("left_action")) {
        f.fail(f.get("left_action"), "left_action given without over_left");
    }
    if (f.has("over_right")) {
        const auto& k = lookup(c.algebras, f, "over_right", "kleene_algebra");
        parts.right = ScalarAction{k, f.matrix("right_action", m, k.size(), m)};
    } else if (f.has("right_action")) {
        f.fail(f.get("right_action"), "right_action given without over_right");
    }
    if (!parts.left && !parts.right) {
        throw ParseError("a module needs over_left or over_right", s.line, s.name);
    }
    auto module = KleeneModule::make(parts);
    for (const bool left : {true, false}) {
        const std::string key = left ? "left_basis" : "right_basis";
        if (!f.has(key)) {
            continue;
        }
        if (left ? !parts.left : !parts.right) {
            f.fail(f.get(key), key + " needs the matching action");
        }
        auto basis = basis_coordinates(module, f.free_vector(key, m), left);
        if (!basis) {
            f.fail(f.get(key), key + " is not a free basis");
        }
        (left ? parts.left_basis : parts.right_basis) = std::move(*basis);
    }
    return KleeneModule::make(std::move(parts));
}

} // namespace

Catalog parse_structure_file(std::string_view text, const Limits& limits) {
    Catalog c;
    for (const Section& s : Parser(tokenize(text)).sections()) {
        if (c.has(s.name)) {
            throw ParseError("name '" + s.name + "' is already declared", s.line, s.name);
        }
        try {
            if (s.keyword == "kleene_algebra") {
                c.algebras.emplace(s.name, parse_algebra(s, limits));
            } else if (s.keyword == "module") {
                c.modules.emplace(s.name, parse_module(s, c));
            } else if (s.keyword == "hom") {
                Fields f(s, {"from", "to", "map"});
                const std::string from = f.word("from");
                const std::string to = f.word("to");
                if (c.algebras.count(from) && c.algebras.count(to)) {
                    const auto& a = c.algebras.at(from);
                    const auto& b = c.algebras.at(to);
                    c.algebra_homs.emplace(s.name, AlgebraHomomorphism{a, b, f.vector("map", a.size(), b.size())});
                } else if (c.modules.count(from) && c.modules.count(to)) {
                    const auto& a = c.modules.at(from);
                    const auto& b = c.modules.at(to);
                    c.module_homs.emplace(s.name, ModuleHomomorphism{a, b, f.vector("map", a.size(), b.size())});
                } else {
                    const bool from_known = c.algebras.count(from) || c.modules.count(from);
                    f.fail(f.get(from_known ? "to" : "from"),
                           "dangling reference '" + (from_known ? to : from) + "': no matching algebra or module");
                }
            } else if (s.keyword == "idempotent") {
                Fields f(s, {"in", "index"});
                const auto& a = lookup(c.algebras, f, "in", "kleene_algebra");
                c.idempotents.emplace(s.name, NamedIdempotent{a, f.index("index", a.size())});
            } else if (s.keyword == "tensor") {
                Fields f(s, {"left", "right", "module", "pure", "path"});
                const auto& l = lookup(c.modules, f, "left", "module");
                const auto& r = lookup(c.modules, f, "right", "module");
                const auto& t = lookup(c.modules, f, "module", "module");
                TensorPath path = TensorPath::exhaustive;
                if (f.has("path")) {
                    const auto p = f.word("path");
                    if (p == "fast" || p == "free_fastpath") {
                        path = TensorPath::fast;
                    } else if (p != "exhaustive") {
                        f.fail(f.get("path"), "path must be exhaustive or fast");
                    }
                }
                c.tensors.emplace(s.name, TensorProduct{t, l, r, f.matrix("pure", l.size(), r.size(), t.size()), path, {}});
            } else if (s.keyword == "witness") {
                Fields f(s, {"base", "other", "sk", "ks", "sk_ks", "ks_sk", "u", "u_inverse", "v", "v_inverse"});
                const auto& k = lookup(c.algebras, f, "base", "kleene_algebra");
                const auto& o = lookup(c.algebras, f, "other", "kleene_algebra");
                const auto& sk = lookup(c.modules, f, "sk", "module");
                const auto& ks = lookup(c.modules, f, "ks", "module");
                const auto& t1 = lookup(c.tensors, f, "sk_ks", "tensor");
                const auto& t2 = lookup(c.tensors, f, "ks_sk", "tensor");
                c.witnesses.emplace(s.name, MoritaWitness{k, o, sk, ks, t1, t2,
                                                          f.vector("u", t1.module.size(), o.size()),
                                                          f.vector("u_inverse", o.size(), t1.module.size()),
                                                          f.vector("v", t2.module.size(), k.size()),
                                                          f.vector("v_inverse", k.size(), t2.module.size()),
                                                          Report("parsed witness " + s.name)});
            } else {
                throw ParseError("unknown keyword '" + s.keyword + "'", s.line, s.name);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), s.line, s.name);
        }
        c.order.emplace_back(s.keyword, s.name);
    }
    return c;
}

Catalog load_structure_file(const std::string& path, const Limits& limits) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_structure_file(text.str(), limits);
}

std::string sanitize_name(std::string_view name) {
    std::string out;
    for (const char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            out += c;
        } else if (!out.empty() && out.back() != '_') {
            out += '_';
        }
    }
    while (!out.empty() && out.back() == '_') {
        out.pop_back();
    }
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) {
        out = "s_" + out;
    }
    return out;
}

namespace {

void write_vector(std::ostream& out, const std::vector<Elem>& v) {
    out << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        out << (i ? "," : "") << v[i];
    }
    out << ']';
}

template <typename At>
void write_table(std::ostream& out, std::size_t rows, std::size_t cols, At&& at) {
    out << '[';
    for (std::size_t r = 0; r < rows; ++r) {
        out << (r ? ",\n    [" : "[");
        for (std::size_t c = 0; c < cols; ++c) {
            out << (c ? "," : "") << at(r, c);
        }
        out << ']';
    }
    out << ']';
}

} // namespace

std::string StructureWriter::fresh(const std::string& hint) {
    std::string base = sanitize_name(hint);
    std::string name = base;
    for (int i = 2; std::find(used_.begin(), used_.end(), name) != used_.end(); ++i) {
        name = base + "_" + std::to_string(i);
    }
    used_.push_back(name);
    return name;
}

std::string StructureWriter::algebra(const KleeneAlgebra& a) {
    for (const auto& [known, name] : algebras_) {
        if (known.same_as(a) && known.name() == a.name()) {
            return name;
        }
    }
    const std::string name = fresh(a.name());
    algebras_.emplace_back(a, name);
    std::ostringstream out;
    out << "kleene_algebra " << name << " {\n";
    if (!a.key().empty()) {
        out << "  builtin: \"" << a.key() << "\"\n";
    } else {
        const Elem n = a.size();
        out << "  elements: " << n << " ;\n  zero: " << a.zero() << " ;\n  one: " << a.one() << " ;\n  add: ";
        write_table(out, n, n, [&](std::size_t r, std::size_t c) { return a.add(Elem(r), Elem(c)); });
        out << " ;\n  mul: ";
        write_table(out, n, n, [&](std::size_t r, std::size_t c) { return a.mul(Elem(r), Elem(c)); });
        out << " ;\n  star: ";
        std::vector<Elem> star(n);
        for (Elem x = 0; x < n; ++x) {
            star[x] = a.star(x);
        }
        write_vector(out, star);
        out << "\n";
    }
    out << "}\n\n";
    out_ += out.str();
    return name;
}

std::string StructureWriter::module(const KleeneModule& m) {
    for (const auto& [known, name] : modules_) {
        if (&known.parts() == &m.parts()) {
            return name;
        }
    }
    std::string left_name, right_name;
    if (m.has_left()) {
        left_name = algebra(m.left_algebra());
    }
    if (m.has_right()) {
        right_name = algebra(m.right_algebra());
    }
    const std::string name = fresh(m.name());
    modules_.emplace_back(m, name);
    const Elem n = m.size();
    std::ostringstream out;
    out << "module " << name << " {\n";
    if (m.has_left()) {
        out << "  over_left: " << left_name << " ;\n";
    }
    if (m.has_right()) {
        out << "  over_right: " << right_name << " ;\n";
    }
    out << "  size: " << n << " ;\n  zero: " << m.zero() << " ;\n  add: ";
    write_table(out, n, n, [&](std::size_t r, std::size_t c) { return m.add(Elem(r), Elem(c)); });
    if (m.has_left()) {
        out << " ;\n  left_action: ";
        write_table(out, m.left_algebra().size(), n,
                    [&](std::size_t r, std::size_t c) { return m.act_left(Elem(r), Elem(c)); });
    }
    if (m.has_right()) {
        out << " ;\n  right_action: ";
        write_table(out, n, m.right_algebra().size(),
                    [&](std::size_t r, std::size_t c) { return m.act_right(Elem(r), Elem(c)); });
    }
    if (const auto* b = m.left_basis()) {
        out << " ;\n  left_basis: ";
        write_vector(out, b->elements);
    }
    if (const auto* b = m.right_basis()) {
        out << " ;\n  right_basis: ";
        write_vector(out, b->elements);
    }
    out << "\n}\n\n";
    out_ += out.str();
    return name;
}

std::string StructureWriter::algebra_hom(const AlgebraHomomorphism& h, const std::string& hint) {
    const std::string from = algebra(h.source);
    const std::string to = algebra(h.target);
    const std::string name = fresh(hint.empty() ? "h_" + from + "_" + to : hint);
    std::ostringstream out;
    out << "hom " << name << " {\n  from: " << from << " ;\n  to: " << to << " ;\n  map: ";
    write_vector(out, h.map);
    out << "\n}\n\n";
    out_ += out.str();
    return name;
}

std::string StructureWriter::module_hom(const ModuleHomomorphism& h, const std::string& hint) {
    const std::string from = module(h.source);
    const std::string to = module(h.target);
    const std::string name = fresh(hint.empty() ? "f_" + from + "_" + to : hint);
    std::ostringstream out;
    out << "hom " << name << " {\n  from: " << from << " ;\n  to: " << to << " ;\n  map: ";
    write_vector(out, h.map);
    out << "\n}\n\n";
    out_ += out.str();
    return name;
}

std::string StructureWriter::idempotent(const KleeneAlgebra& a, Elem e, const std::string& hint) {
    const std::string in = algebra(a);
    const std::string name = fresh(hint.empty() ? "e_" + in : hint);
    out_ += "idempotent " + name + " {\n  in: " + in + " ;\n  index: " + std::to_string(e) + "\n}\n\n";
    return name;
}

std::string StructureWriter::tensor(const TensorProduct& t) {
    for (const auto& [known, name] : tensors_) {
        if (known == &t) {
            return name;
        }
    }
    const std::string left = module(t.left_factor);
    const std::string right = module(t.right_factor);
    const std::string mod = module(t.module);
    const std::string name = fresh("t_" + left + "_" + right);
    tensors_.emplace_back(&t, name);
    std::ostringstream out;
    out << "tensor " << name << " {\n  left: " << left << " ;\n  right: " << right << " ;\n  module: " << mod
        << " ;\n  path: " << (t.path == TensorPath::fast ? "fast" : "exhaustive") << " ;\n  pure: ";
    write_table(out, t.left_factor.size(), t.right_factor.size(),
                [&](std::size_t r, std::size_t c) { return t.pure_tensor(Elem(r), Elem(c)); });
    out << "\n}\n\n";
    out_ += out.str();
    return name;
}

std::string StructureWriter::witness(const MoritaWitness& w, const std::string& hint) {
    const std::string base = algebra(w.base);
    const std::string other = algebra(w.other);
    const std::string sk = module(w.sk);
    const std::string ks = module(w.ks);
    const std::string t1 = tensor(w.sk_ks);
    const std::string t2 = tensor(w.ks_sk);
    const std::string name = fresh(hint.empty() ? "witness" : hint);
    std::ostringstream out;
    out << "witness " << name << " {\n  base: " << base << " ;\n  other: " << other << " ;\n  sk: " << sk
        << " ;\n  ks: " << ks << " ;\n  sk_ks: " << t1 << " ;\n  ks_sk: " << t2 << " ;\n  u: ";
    write_vector(out, w.u);
    out << " ;\n  u_inverse: ";
    write_vector(out, w.u_inverse);
    out << " ;\n  v: ";
    write_vector(out, w.v);
    out << " ;\n  v_inverse: ";
    write_vector(out, w.v_inverse);
    out << "\n}\n\n";
    out_ += out.str();
    return name;
}

} // namespace kmod
