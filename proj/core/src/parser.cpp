#include "cforge/parser.hpp"

#include <cctype>
#include <set>

namespace cforge {

AlgebraPtr SourceModel::algebra(const std::string& name) const {
    auto it = algebra_index.find(name);
    if (it == algebra_index.end()) throw Error("unknown algebra '" + name + "'");
    return algebras[it->second];
}

const MapDef& SourceModel::map(const std::string& name) const {
    auto it = map_index.find(name);
    if (it == map_index.end()) throw Error("unknown map '" + name + "'");
    return maps[it->second];
}

bool SourceModel::operator==(const SourceModel& o) const {
    if (algebras.size() != o.algebras.size() || maps.size() != o.maps.size()) return false;
    for (std::size_t i = 0; i < algebras.size(); ++i) {
        if (algebras[i]->name() != o.algebras[i]->name()) return false;
        if (!(*algebras[i] == *o.algebras[i])) return false;
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const MapDef &a = maps[i], &b = o.maps[i];
        if (a.name != b.name || a.source_alg != b.source_alg || a.target_alg != b.target_alg ||
            a.parity != b.parity || !(a.images == b.images))
            return false;
    }
    return true;
}

namespace {

struct Token {
    enum Type { Ident, Int, Sym, End };
    Type type = End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_space();
        tok_ = Token{Token::End, "", line_, col_};
        if (pos_ >= src_.size()) return;
        char c = src_[pos_];
        if (std::isalpha(uint8_t(c)) || c == '_') {
            std::string text;
            while (pos_ < src_.size() &&
                   (std::isalnum(uint8_t(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '#'))
                text += take();
            tok_ = Token{Token::Ident, std::move(text), tok_.line, tok_.col};
            return;
        }
        if (std::isdigit(uint8_t(c))) {
            std::string text;
            while (pos_ < src_.size() && std::isdigit(uint8_t(src_[pos_]))) text += take();
            tok_ = Token{Token::Int, std::move(text), tok_.line, tok_.col};
            return;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            take();
            take();
            tok_ = Token{Token::Sym, "->", tok_.line, tok_.col};
            return;
        }
        if (c == '|' && pos_ + 2 < src_.size() && src_[pos_ + 1] == '-' && src_[pos_ + 2] == '>') {
            take();
            take();
            take();
            tok_ = Token{Token::Sym, "|->", tok_.line, tok_.col};
            return;
        }
        static const std::string singles = "{}[](),;=+-*^/:";
        if (singles.find(c) != std::string::npos) {
            tok_ = Token{Token::Sym, std::string(1, take()), tok_.line, tok_.col};
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    void skip_space() {
        for (;;) {
            while (pos_ < src_.size() && std::isspace(uint8_t(src_[pos_]))) take();
            if (pos_ + 1 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') take();
                continue;
            }
            break;
        }
    }

    char take() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

bool is_keyword(const std::string& s) {
    return s == "algebra" || s == "generator" || s == "bracket" || s == "map" || s == "parity" ||
           s == "even" || s == "odd";
}

// Scalar polynomial or generator-supported element.
struct Value {
    bool is_elem = false;
    Poly p;
    Element e;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    SourceModel parse() {
        SourceModel model;
        for (;;) {
            const Token& t = lex_.peek();
            if (t.type == Token::End) break;
            if (t.type == Token::Ident && t.text == "algebra") {
                parse_algebra(model);
            } else if (t.type == Token::Ident && t.text == "map") {
                parse_map(model);
            } else {
                throw ParseError("expected 'algebra' or 'map', got '" + t.text + "'", t.line,
                                 t.col);
            }
        }
        return model;
    }

private:
    [[noreturn]] void fail(const std::string& msg, const Token& at) {
        throw ParseError(msg, at.line, at.col);
    }

    Token expect_sym(const std::string& s) {
        Token t = lex_.next();
        if (t.type != Token::Sym || t.text != s)
            fail("expected '" + s + "', got '" + (t.type == Token::End ? "<eof>" : t.text) + "'",
                 t);
        return t;
    }

    Token expect_ident() {
        Token t = lex_.next();
        if (t.type != Token::Ident)
            fail("expected identifier, got '" + (t.type == Token::End ? "<eof>" : t.text) + "'",
                 t);
        return t;
    }

    Token expect_keyword(const std::string& kw) {
        Token t = lex_.next();
        if (t.type != Token::Ident || t.text != kw) fail("expected '" + kw + "'", t);
        return t;
    }

    Parity expect_parity() {
        Token t = expect_ident();
        auto p = parity_of_name(t.text);
        if (!p) fail("expected 'even' or 'odd'", t);
        return *p;
    }

    bool peek_sym(const std::string& s) {
        const Token& t = lex_.peek();
        return t.type == Token::Sym && t.text == s;
    }

    void parse_algebra(SourceModel& model) {
        Token kw = lex_.next(); // 'algebra'
        Token name = expect_ident();
        if (is_keyword(name.text)) fail("'" + name.text + "' is reserved", name);
        if (model.algebra_index.count(name.text))
            fail("algebra '" + name.text + "' already defined", name);
        expect_sym("{");
        std::vector<Generator> gens;
        struct RawBracket {
            std::string gi, gj;
            Value value;
            Token pos;
        };
        std::vector<RawBracket> raw;
        std::set<std::string> gen_names;
        while (!peek_sym("}")) {
            Token t = lex_.next();
            if (t.type != Token::Ident) fail("expected 'generator' or 'bracket'", t);
            if (t.text == "generator") {
                Token g = expect_ident();
                if (is_keyword(g.text)) fail("'" + g.text + "' is reserved", g);
                if (indet_of_name(g.text))
                    fail("generator '" + g.text + "' collides with an indeterminate", g);
                if (!gen_names.insert(g.text).second)
                    fail("duplicate generator '" + g.text + "'", g);
                Parity p = expect_parity();
                expect_sym(";");
                gens.push_back({g.text, p});
            } else if (t.text == "bracket") {
                expect_sym("[");
                Token g1 = expect_ident();
                expect_sym(",");
                Token g2 = expect_ident();
                expect_sym("]");
                expect_sym("=");
                // Generators must be declared before they are used; the
                // value is padded to the final rank once the block closes.
                std::optional<Signature> sig_view;
                if (!gens.empty()) sig_view.emplace(gens);
                Value v = parse_expr(sig_view ? &*sig_view : nullptr, {Indet::d, Indet::l});
                expect_sym(";");
                if (!gen_names.count(g1.text)) fail("unknown generator '" + g1.text + "'", g1);
                if (!gen_names.count(g2.text)) fail("unknown generator '" + g2.text + "'", g2);
                raw.push_back({g1.text, g2.text, std::move(v), t});
            } else {
                fail("expected 'generator' or 'bracket', got '" + t.text + "'", t);
            }
        }
        expect_sym("}");
        if (gens.empty()) fail("algebra '" + name.text + "' has no generators", name);
        auto sig = std::make_shared<Signature>(gens);
        std::vector<BracketSpec> specs;
        for (auto& rb : raw) {
            std::size_t i = *sig->index_of(rb.gi), j = *sig->index_of(rb.gj);
            Element value = rb.value.is_elem ? rb.value.e : zero_element(sig->rank());
            if (!rb.value.is_elem && !rb.value.p.is_zero())
                fail("bracket value must be a combination of generators", rb.pos);
            value.coords.resize(sig->rank()); // generators declared after this bracket
            specs.push_back({i, j, std::move(value)});
        }
        try {
            model.algebras.push_back(
                std::make_shared<Algebra>(Algebra::build(name.text, sig, specs)));
        } catch (const AlgebraError& err) {
            fail(err.what(), kw);
        }
        model.algebra_index[name.text] = model.algebras.size() - 1;
    }

    void parse_map(SourceModel& model) {
        lex_.next(); // 'map'
        Token name = expect_ident();
        if (model.map_index.count(name.text)) fail("map '" + name.text + "' already defined", name);
        expect_sym(":");
        Token src = expect_ident();
        expect_sym("->");
        Token tgt = expect_ident();
        if (!model.algebra_index.count(src.text)) fail("unknown algebra '" + src.text + "'", src);
        if (!model.algebra_index.count(tgt.text)) fail("unknown algebra '" + tgt.text + "'", tgt);
        AlgebraPtr source = model.algebras[model.algebra_index[src.text]];
        AlgebraPtr target = model.algebras[model.algebra_index[tgt.text]];
        expect_sym("{");
        std::vector<Element> images(source->rank(), zero_element(target->rank()));
        std::vector<bool> given(source->rank(), false);
        while (!peek_sym("}")) {
            Token g = expect_ident();
            auto gi = source->sig().index_of(g.text);
            if (!gi) fail("unknown generator '" + g.text + "'", g);
            if (given[*gi]) fail("duplicate image for '" + g.text + "'", g);
            expect_sym("|->");
            Value v = parse_expr(&target->sig(), {Indet::d, Indet::x});
            expect_sym(";");
            if (!v.is_elem && !v.p.is_zero())
                fail("map image must be a combination of generators", g);
            images[*gi] = v.is_elem ? v.e : zero_element(target->rank());
            given[*gi] = true;
        }
        expect_sym("}");
        Token ptok = expect_keyword("parity");
        Parity parity = expect_parity();
        expect_sym(";");
        // Validate parity support with a position-bearing diagnostic.
        for (std::size_t i = 0; i < images.size(); ++i) {
            Parity want = parity + source->sig().parity(i);
            for (std::size_t k = 0; k < target->rank(); ++k)
                if (!images[i].coords[k].is_zero() && target->sig().parity(k) != want)
                    fail("image of '" + source->sig().gen(i).name + "' violates declared parity",
                         ptok);
        }
        MapDef def{name.text, src.text, tgt.text, parity, std::move(images), false};
        for (const auto& img : def.images)
            if (contains(img, Indet::x)) def.uses_x = true;
        model.maps.push_back(std::move(def));
        model.map_index[name.text] = model.maps.size() - 1;
    }

    // expr := term (('+'|'-') term)*
    Value parse_expr(const Signature* sig, std::set<Indet> allowed) {
        Value v = parse_term(sig, allowed);
        for (;;) {
            if (peek_sym("+")) {
                Token op = lex_.next();
                Value rhs = parse_term(sig, allowed);
                v = combine_add(v, rhs, false, op, sig);
            } else if (peek_sym("-")) {
                Token op = lex_.next();
                Value rhs = parse_term(sig, allowed);
                v = combine_add(v, rhs, true, op, sig);
            } else {
                break;
            }
        }
        return v;
    }

    // term := factor (('*' factor) | factor)*   -- juxtaposition multiplies
    Value parse_term(const Signature* sig, const std::set<Indet>& allowed) {
        Value v = parse_factor(sig, allowed);
        for (;;) {
            if (peek_sym("*")) {
                Token op = lex_.next();
                Value rhs = parse_factor(sig, allowed);
                v = combine_mul(v, rhs, op, sig);
            } else if (peek_sym("/")) {
                Token op = lex_.next();
                Value rhs = parse_factor(sig, allowed);
                v = combine_div(v, rhs, op);
            } else {
                const Token& t = lex_.peek();
                bool starts_atom = t.type == Token::Int || (t.type == Token::Sym && t.text == "(") ||
                                   (t.type == Token::Ident && !is_keyword(t.text));
                if (!starts_atom) break;
                Value rhs = parse_factor(sig, allowed);
                v = combine_mul(v, rhs, t, sig);
            }
        }
        return v;
    }

    Value parse_factor(const Signature* sig, const std::set<Indet>& allowed) {
        if (peek_sym("-")) {
            Token op = lex_.next();
            Value v = parse_factor(sig, allowed);
            if (v.is_elem)
                v.e = -v.e;
            else
                v.p = -v.p;
            return v;
        }
        if (peek_sym("+")) {
            lex_.next();
            return parse_factor(sig, allowed);
        }
        Value v = parse_primary(sig, allowed);
        if (peek_sym("^")) {
            Token op = lex_.next();
            Token e = lex_.next();
            if (e.type != Token::Int) fail("expected integer exponent", e);
            if (v.is_elem) fail("cannot raise a generator term to a power", op);
            unsigned long exp = 0;
            try {
                exp = std::stoul(e.text);
            } catch (const std::exception&) {
                fail("exponent out of range", e);
            }
            if (exp > 64) fail("exponent out of range", e);
            v.p = v.p.pow(unsigned(exp));
        }
        return v;
    }

    Value parse_primary(const Signature* sig, const std::set<Indet>& allowed) {
        Token t = lex_.next();
        if (t.type == Token::Int) {
            Value v;
            v.p = Poly::constant(Rational::parse(t.text));
            return v;
        }
        if (t.type == Token::Sym && t.text == "(") {
            Value v = parse_expr(sig, allowed);
            expect_sym(")");
            return v;
        }
        if (t.type == Token::Ident) {
            if (auto iv = indet_of_name(t.text)) {
                if (!allowed.count(*iv))
                    fail("indeterminate '" + t.text + "' is not allowed here", t);
                Value v;
                v.p = pvar(*iv);
                return v;
            }
            if (sig) {
                if (auto gi = sig->index_of(t.text)) {
                    Value v;
                    v.is_elem = true;
                    v.e = zero_element(sig->rank());
                    v.e.coords[*gi] = Poly::constant(1);
                    return v;
                }
            }
            fail("unknown symbol '" + t.text + "'", t);
        }
        fail("expected a number, indeterminate, generator or '('", t);
    }

    Value combine_add(Value a, const Value& b, bool negate, const Token& at, const Signature*) {
        if (a.is_elem != b.is_elem)
            fail("cannot add a scalar and a generator term", at);
        if (a.is_elem) {
            a.e = negate ? a.e - b.e : a.e + b.e;
        } else {
            a.p = negate ? a.p - b.p : a.p + b.p;
        }
        return a;
    }

    Value combine_mul(Value a, const Value& b, const Token& at, const Signature*) {
        if (a.is_elem && b.is_elem) fail("cannot multiply two generator terms", at);
        if (a.is_elem) {
            a.e = scale(a.e, b.p);
            return a;
        }
        if (b.is_elem) {
            Value v;
            v.is_elem = true;
            v.e = scale(b.e, a.p);
            return v;
        }
        a.p *= b.p;
        return a;
    }

    Value combine_div(Value a, const Value& b, const Token& at) {
        if (b.is_elem || !b.p.is_constant() || b.p.is_zero())
            fail("division requires a nonzero rational divisor", at);
        Rational inv = Rational(1) / b.p.constant_value();
        if (a.is_elem)
            a.e = scale(a.e, inv);
        else
            a.p = a.p.scaled(inv);
        return a;
    }

    Lexer lex_;
};

} // namespace

SourceModel parse_source(std::string_view text) { return Parser(text).parse(); }

ModuleHom to_module_hom(const SourceModel& model, const MapDef& def) {
    if (def.uses_x)
        throw Error("map '" + def.name + "' uses x; it is not a plain module homomorphism");
    return make_module_hom(model.algebra(def.source_alg), model.algebra(def.target_alg),
                           def.parity, def.images);
}

ConformalMap to_conformal_map(const SourceModel& model, const MapDef& def) {
    if (def.source_alg != def.target_alg)
        throw Error("conformal map '" + def.name + "' must be an endomap of one algebra");
    AlgebraPtr alg = model.algebra(def.source_alg);
    return make_conformal_map(alg->sig_ptr(), def.parity, Indet::x, def.images);
}

std::string print_algebra(const Algebra& a) {
    std::string out = "algebra " + a.name() + " {\n";
    for (std::size_t i = 0; i < a.rank(); ++i)
        out += "  generator " + a.sig().gen(i).name + " " +
               std::string(parity_name(a.sig().parity(i))) + ";\n";
    for (std::size_t i = 0; i < a.rank(); ++i) {
        for (std::size_t j = i; j < a.rank(); ++j) {
            const Element& e = a.gen_bracket(i, j);
            if (e.is_zero()) continue;
            out += "  bracket [" + a.sig().gen(i).name + ", " + a.sig().gen(j).name +
                   "] = " + element_str(a.sig(), e) + ";\n";
        }
    }
    out += "}\n";
    return out;
}

std::string print_model(const SourceModel& model) {
    std::string out;
    for (const auto& alg : model.algebras) out += print_algebra(*alg);
    for (const auto& def : model.maps) {
        AlgebraPtr target = model.algebra(def.target_alg);
        AlgebraPtr source = model.algebra(def.source_alg);
        out += "map " + def.name + " : " + def.source_alg + " -> " + def.target_alg + " {\n";
        for (std::size_t i = 0; i < def.images.size(); ++i) {
            if (def.images[i].is_zero()) continue;
            out += "  " + source->sig().gen(i).name + " |-> " +
                   element_str(target->sig(), def.images[i]) + ";\n";
        }
        out += "} parity " + std::string(parity_name(def.parity)) + ";\n";
    }
    return out;
}

} // namespace cforge
