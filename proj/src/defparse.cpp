#include "qcas/defparse.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace qcas {

namespace {

struct Tok {
    enum Kind { Ident, Int, LParen, RParen, Comma, Colon, Star, Eq, Plus, Minus, Slash, End };
    Kind kind = End;
    std::string text;
    int line = 0, col = 0;
};

const char* kind_name(Tok::Kind k) {
    switch (k) {
        case Tok::Ident: return "identifier";
        case Tok::Int: return "integer";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Colon: return "':'";
        case Tok::Star: return "'*'";
        case Tok::Eq: return "'='";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Slash: return "'/'";
        case Tok::End: return "end of input";
    }
    return "?";
}

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
    throw QcasError("parse", "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                 ": " + msg);
}

std::vector<Tok> lex(const std::string& text) {
    std::vector<Tok> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok::Kind k, std::string s) {
        out.push_back({k, std::move(s), line, col});
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++col;
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum((unsigned char)text[j]) || text[j] == '_'))
                ++j;
            push(Tok::Ident, text.substr(i, j - i));
            col += (int)(j - i);
            i = j;
            continue;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t j = i;
            while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
            push(Tok::Int, text.substr(i, j - i));
            col += (int)(j - i);
            i = j;
            continue;
        }
        Tok::Kind k;
        switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case ',': k = Tok::Comma; break;
            case ':': k = Tok::Colon; break;
            case '*': k = Tok::Star; break;
            case '=': k = Tok::Eq; break;
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '/': k = Tok::Slash; break;
            default:
                fail_at(line, col, std::string("unexpected character '") + c + "'");
        }
        push(k, std::string(1, c));
        ++col;
        ++i;
    }
    Tok end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

const std::set<std::string> kKeywords = {"algebra",  "dimension", "basis",    "product",
                                         "integral", "cone",      "canonical"};

struct Parser {
    std::vector<Tok> toks;
    size_t pos = 0;

    const Tok& peek() const { return toks[pos]; }
    Tok take() { return toks[pos++]; }

    [[noreturn]] void fail(const std::string& expected) {
        const Tok& t = peek();
        std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        fail_at(t.line, t.col, "expected " + expected + ", got " + got);
    }

    Tok expect(Tok::Kind k) {
        if (peek().kind != k) fail(kind_name(k));
        return take();
    }

    Tok expect_keyword(const std::string& kw) {
        if (peek().kind != Tok::Ident || peek().text != kw) fail("'" + kw + "'");
        return take();
    }

    // a basis label: identifier or bare integer, but never a keyword
    bool at_label() const {
        const Tok& t = peek();
        if (t.kind == Tok::Int) return true;
        return t.kind == Tok::Ident && !kKeywords.count(t.text);
    }

    Tok take_label() {
        if (!at_label()) fail("a basis label");
        return take();
    }

    long long parse_int() {
        bool neg = false;
        if (peek().kind == Tok::Minus) {
            take();
            neg = true;
        }
        Tok t = expect(Tok::Int);
        long long v = 0;
        try {
            v = std::stoll(t.text);
        } catch (...) {
            fail_at(t.line, t.col, "integer out of range");
        }
        return neg ? -v : v;
    }

    Rat parse_rat() {
        long long num = parse_int();
        if (peek().kind == Tok::Slash) {
            take();
            Tok t = expect(Tok::Int);
            long long den = 0;
            try {
                den = std::stoll(t.text);
            } catch (...) {
                fail_at(t.line, t.col, "integer out of range");
            }
            if (den == 0) fail_at(t.line, t.col, "zero denominator");
            Rat r(to_rat(num) / to_rat(den));
            return r;
        }
        return to_rat(num);
    }

    IVec parse_vector() {
        expect(Tok::LParen);
        IVec v;
        v.push_back(parse_int());
        while (peek().kind == Tok::Comma) {
            take();
            v.push_back(parse_int());
        }
        expect(Tok::RParen);
        return v;
    }

    bool at_rat_start() const {
        return peek().kind == Tok::Int ||
               (peek().kind == Tok::Minus && toks[pos + 1].kind == Tok::Int);
    }

    // keywords are Ident tokens but never labels
    bool label_at(size_t idx) const {
        const Tok& t = toks[idx];
        if (t.kind == Tok::Int) return true;
        return t.kind == Tok::Ident && !kKeywords.count(t.text);
    }

    // one term of a linear combination: optional coefficient, then a label;
    // a bare integer is a coefficient when a label or '/' follows
    std::pair<Rat, Tok> parse_term() {
        if (peek().kind == Tok::Minus ||
            (peek().kind == Tok::Int &&
             (toks[pos + 1].kind == Tok::Slash || label_at(pos + 1)))) {
            if (!at_rat_start()) fail("a term");
            Rat c = parse_rat();
            Tok lbl = take_label();
            return {c, lbl};
        }
        Tok lbl = take_label();
        return {Rat(1), lbl};
    }
};

int resolve(const GradedAlgebra& alg, const Tok& lbl) {
    int idx = alg.find(lbl.text);
    if (idx < 0) fail_at(lbl.line, lbl.col, "unknown basis label '" + lbl.text + "'");
    return idx;
}

}  // namespace

DefinitionFile parse_definition(const std::string& text) {
    Parser p{lex(text)};
    DefinitionFile out;
    GradedAlgebra& alg = out.bundle.alg;

    p.expect_keyword("algebra");
    if (!p.at_label()) p.fail("an algebra name");
    alg.name = p.take().text;
    p.expect_keyword("dimension");
    long long n = p.parse_int();
    if (n < 1) fail_at(p.toks[p.pos - 1].line, p.toks[p.pos - 1].col, "dimension must be >= 1");
    alg.n = (int)n;

    struct PendingProduct {
        Tok a, b;
        std::vector<std::pair<Tok, Rat>> terms;
    };
    std::vector<PendingProduct> products;
    std::vector<std::pair<Tok, Rat>> integrals;
    std::vector<IVec> rays, ineqs;
    std::optional<IVec> canonical;
    int canonical_line = 0;

    while (p.peek().kind != Tok::End) {
        if (p.peek().kind != Tok::Ident) p.fail("an item keyword");
        Tok kw = p.take();
        if (kw.text == "basis") {
            if (!p.at_label()) p.fail("a basis label");
            while (p.at_label() && p.toks[p.pos + 1].kind == Tok::Colon) {
                Tok lbl = p.take();
                p.expect(Tok::Colon);
                long long codim = p.parse_int();
                if (alg.find(lbl.text) >= 0)
                    fail_at(lbl.line, lbl.col, "duplicate basis label '" + lbl.text + "'");
                alg.basis.push_back({lbl.text, (int)codim});
            }
        } else if (kw.text == "product") {
            PendingProduct pp;
            pp.a = p.take_label();
            p.expect(Tok::Star);
            pp.b = p.take_label();
            p.expect(Tok::Eq);
            if (p.peek().kind == Tok::Int && p.peek().text == "0" &&
                !(p.label_at(p.pos + 1) || p.toks[p.pos + 1].kind == Tok::Slash)) {
                p.take();
            } else {
                auto [c, lbl] = p.parse_term();
                pp.terms.push_back({lbl, c});
                while (p.peek().kind == Tok::Plus || p.peek().kind == Tok::Minus) {
                    int sgn = p.take().kind == Tok::Plus ? 1 : -1;
                    auto [c2, lbl2] = p.parse_term();
                    pp.terms.push_back({lbl2, Rat(sgn) * c2});
                }
            }
            products.push_back(std::move(pp));
        } else if (kw.text == "integral") {
            Tok lbl = p.take_label();
            p.expect(Tok::Eq);
            Rat v = p.parse_rat();
            integrals.push_back({lbl, v});
        } else if (kw.text == "cone") {
            if (p.peek().kind != Tok::Ident ||
                (p.peek().text != "ray" && p.peek().text != "ineq"))
                p.fail("'ray' or 'ineq'");
            Tok kind = p.take();
            IVec v = p.parse_vector();
            (kind.text == "ray" ? rays : ineqs).push_back(std::move(v));
        } else if (kw.text == "canonical") {
            if (canonical) fail_at(kw.line, kw.col, "duplicate canonical item");
            canonical = p.parse_vector();
            canonical_line = kw.line;
        } else {
            fail_at(kw.line, kw.col, "expected one of basis, product, integral, cone, canonical; got '" +
                                         kw.text + "'");
        }
    }

    if (alg.basis.empty()) throw QcasError("parse", "definition lists no basis");

    // resolve products now that every label is known
    for (auto& pp : products) {
        int a = resolve(alg, pp.a);
        int b = resolve(alg, pp.b);
        if (a == 0 || b == 0)
            fail_at(pp.a.line, pp.a.col, "products with the identity are implicit; do not list them");
        if (alg.codim(a) + alg.codim(b) > alg.n)
            fail_at(pp.a.line, pp.a.col, "product exceeds the socle codimension and is implicitly zero");
        auto key = std::make_pair(std::min(a, b), std::max(a, b));
        if (alg.products.count(key))
            fail_at(pp.a.line, pp.a.col, "product '" + pp.a.text + " * " + pp.b.text +
                                             "' is listed twice (symmetric closure is automatic)");
        SparseVec value;
        for (auto& [lt, cv] : pp.terms) {
            int idx = resolve(alg, lt);
            if (idx == 0)
                fail_at(lt.line, lt.col, "the identity cannot appear in a product expansion");
            auto [it, fresh] = value.emplace(idx, cv);
            if (!fresh) it->second += cv;
            if (it->second == 0) value.erase(it);
        }
        alg.products[key] = std::move(value);
    }
    // completeness: everything within the socle bound must have been listed
    for (int a = 1; a < alg.size(); ++a)
        for (int b = a; b < alg.size(); ++b)
            if (alg.codim(a) + alg.codim(b) <= alg.n && !alg.products.count({a, b}))
                throw QcasError("parse", "missing product '" + alg.label(a) + " * " + alg.label(b) +
                                             "' (codimension sum within the socle bound)");

    for (auto& [lbl, v] : integrals) {
        int idx = resolve(alg, lbl);
        if (alg.integrals.count(idx))
            fail_at(lbl.line, lbl.col, "duplicate integral for '" + lbl.text + "'");
        alg.integrals[idx] = v;
    }

    if (!rays.empty() && !ineqs.empty())
        throw QcasError("parse", "cone mixes ray and ineq items; use one presentation");
    if (rays.empty() && ineqs.empty()) throw QcasError("parse", "definition lists no cone");
    const auto& rows = rays.empty() ? ineqs : rays;
    int dim = (int)rows.front().size();
    for (const auto& r : rows)
        if ((int)r.size() != dim) throw QcasError("parse", "cone vectors have mixed lengths");
    out.bundle.cone = rays.empty() ? cone_from_ineqs(dim, ineqs) : cone_from_rays(dim, rays);

    if (canonical) {
        if ((int)canonical->size() != dim)
            fail_at(canonical_line, 1, "canonical vector length does not match the cone");
        CanonicalClass K;
        for (long long x : *canonical) K.coords.push_back(to_rat(x));
        out.bundle.K = std::move(K);
    }
    return out;
}

namespace {

std::string lincomb_to_string(const GradedAlgebra& alg, const SparseVec& v) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : v) {
        Rat mag = c;
        if (first) {
            if (c < 0) {
                os << "-" << rat_to_string(-c) << " " << alg.label(idx);
                first = false;
                continue;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            mag = c < 0 ? Rat(-c) : c;
        }
        if (mag != 1) os << rat_to_string(mag) << " ";
        os << alg.label(idx);
        first = false;
    }
    return os.str();
}

std::string vector_to_string(const IVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

}  // namespace

std::string print_definition(const Bundle& b, const std::vector<std::string>& comments) {
    std::ostringstream os;
    for (const auto& c : comments) os << "# " << c << "\n";
    os << "algebra " << b.alg.name << " dimension " << b.alg.n << "\n";
    os << "basis";
    for (const auto& e : b.alg.basis) os << " " << e.label << ":" << e.codim;
    os << "\n";
    for (const auto& [key, val] : b.alg.products)
        os << "product " << b.alg.label(key.first) << " * " << b.alg.label(key.second) << " = "
           << lincomb_to_string(b.alg, val) << "\n";
    for (const auto& [idx, v] : b.alg.integrals)
        os << "integral " << b.alg.label(idx) << " = " << rat_to_string(v) << "\n";
    if (b.cone.from_rays)
        for (const auto& r : b.cone.rays) os << "cone ray " << vector_to_string(r) << "\n";
    else
        for (const auto& r : b.cone.ineqs) os << "cone ineq " << vector_to_string(r) << "\n";
    if (b.K) {
        os << "canonical (";
        for (size_t i = 0; i < b.K->coords.size(); ++i) {
            const Rat& c = b.K->coords[i];
            if (c.get_den() != 1)
                throw validation_error("canonical class has a non-integer coordinate");
            os << (i ? "," : "") << c.get_num().get_str();
        }
        os << ")\n";
    }
    return os.str();
}

}  // namespace qcas
