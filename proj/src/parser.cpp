#include "vir/parser.hpp"

#include <cctype>
#include <sstream>

#include "json.hpp"

namespace vir {

namespace {

struct Token {
    enum class Type { Int, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Type type;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= s_.size()) {
            tok_ = {Token::Type::End, "", start};
            return;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            tok_ = {Token::Type::Int, s_.substr(start, i_ - start), start};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            tok_ = {Token::Type::Name, s_.substr(start, i_ - start), start};
            return;
        }
        ++i_;
        switch (c) {
            case '+': tok_ = {Token::Type::Plus, "+", start}; return;
            case '-': tok_ = {Token::Type::Minus, "-", start}; return;
            case '*': tok_ = {Token::Type::Star, "*", start}; return;
            case '/': tok_ = {Token::Type::Slash, "/", start}; return;
            case '^': tok_ = {Token::Type::Caret, "^", start}; return;
            case '(': tok_ = {Token::Type::LParen, "(", start}; return;
            case ')': tok_ = {Token::Type::RParen, ")", start}; return;
            default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }

    const std::string& s_;
    std::size_t i_ = 0;
    Token tok_{Token::Type::End, "", 0};
};

using AstPtr = std::unique_ptr<ExprAst>;

bool is_parameter(const std::string& n) { return scalar_ring()->has(n); }

class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) {}

    AstPtr parse_expr() {
        auto node = std::make_unique<ExprAst>();
        node->kind = ExprAst::Kind::Sum;
        int sign = 1;
        if (lex_.peek().type == Token::Type::Minus) {
            lex_.next();
            sign = -1;
        } else if (lex_.peek().type == Token::Type::Plus) {
            lex_.next();
        }
        node->children.push_back(parse_term());
        node->signs.push_back(sign);
        while (lex_.peek().type == Token::Type::Plus || lex_.peek().type == Token::Type::Minus) {
            sign = lex_.next().type == Token::Type::Plus ? 1 : -1;
            node->children.push_back(parse_term());
            node->signs.push_back(sign);
        }
        if (node->children.size() == 1 && node->signs[0] == 1) return std::move(node->children[0]);
        return node;
    }

    AstPtr parse_all() {
        auto node = parse_expr();
        if (lex_.peek().type != Token::Type::End)
            throw ParseError("unexpected trailing input", lex_.peek().pos);
        return node;
    }

private:
    bool starts_atom(const Token& t) const {
        return t.type == Token::Type::Int || t.type == Token::Type::Name ||
               t.type == Token::Type::LParen;
    }

    AstPtr parse_term() {
        auto node = std::make_unique<ExprAst>();
        node->kind = ExprAst::Kind::Product;
        node->children.push_back(parse_factor());
        while (true) {
            const Token& t = lex_.peek();
            if (t.type == Token::Type::Star) {
                lex_.next();
                node->children.push_back(parse_factor());
            } else if (t.type == Token::Type::Slash) {
                lex_.next();
                auto q = std::make_unique<ExprAst>();
                q->kind = ExprAst::Kind::Quotient;
                auto merged = node->children.size() == 1 ? std::move(node->children[0])
                                                         : std::move(node);
                q->children.push_back(std::move(merged));
                q->children.push_back(parse_factor());
                node = std::make_unique<ExprAst>();
                node->kind = ExprAst::Kind::Product;
                node->children.push_back(std::move(q));
            } else if (starts_atom(t)) {
                node->children.push_back(parse_factor()); // juxtaposition
            } else {
                break;
            }
        }
        if (node->children.size() == 1) return std::move(node->children[0]);
        return node;
    }

    AstPtr parse_factor() {
        auto atom = parse_atom();
        if (lex_.peek().type == Token::Type::Caret) {
            lex_.next();
            Token e = lex_.next();
            if (e.type != Token::Type::Int)
                throw ParseError("exponent must be a non-negative integer literal", e.pos);
            auto node = std::make_unique<ExprAst>();
            node->kind = ExprAst::Kind::Power;
            node->exponent = static_cast<std::uint32_t>(std::stoul(e.text));
            node->children.push_back(std::move(atom));
            return node;
        }
        return atom;
    }

    AstPtr parse_atom() {
        Token t = lex_.next();
        auto node = std::make_unique<ExprAst>();
        switch (t.type) {
            case Token::Type::Int:
                node->kind = ExprAst::Kind::Number;
                node->number = Rational::from_string(t.text);
                return node;
            case Token::Type::Name:
                if (t.text == "l") {
                    if (lex_.peek().type != Token::Type::LParen)
                        throw ParseError("expected '(' after l", lex_.peek().pos);
                    lex_.next();
                    long sign = 1;
                    if (lex_.peek().type == Token::Type::Minus) {
                        lex_.next();
                        sign = -1;
                    }
                    Token idx = lex_.next();
                    if (idx.type != Token::Type::Int)
                        throw ParseError("expected integer mode index", idx.pos);
                    if (lex_.next().type != Token::Type::RParen)
                        throw ParseError("expected ')' after mode index", idx.pos);
                    node->kind = ExprAst::Kind::Gen;
                    if (idx.text.size() > 7 || std::stol(idx.text) > kMaxMode)
                        throw ParseError("mode index out of range", idx.pos);
                    node->mode = sign * std::stol(idx.text);
                    return node;
                }
                if (t.text == "c") {
                    node->kind = ExprAst::Kind::Central;
                    return node;
                }
                if (t.text == "v") {
                    node->kind = ExprAst::Kind::Vgen;
                    return node;
                }
                if (is_parameter(t.text)) {
                    node->kind = ExprAst::Kind::Param;
                    node->param = t.text;
                    return node;
                }
                throw ParseError("unknown name '" + t.text + "'", t.pos);
            case Token::Type::LParen: {
                auto inner = parse_expr();
                Token close = lex_.next();
                if (close.type != Token::Type::RParen)
                    throw ParseError("expected ')'", close.pos);
                return inner;
            }
            case Token::Type::Minus: {
                node->kind = ExprAst::Kind::Negate;
                node->children.push_back(parse_factor());
                return node;
            }
            default:
                throw ParseError("expected a value", t.pos);
        }
    }

    Lexer lex_;
};

bool contains_v(const ExprAst& n) {
    if (n.kind == ExprAst::Kind::Vgen) return true;
    for (const auto& ch : n.children)
        if (contains_v(*ch)) return true;
    return false;
}

// v may appear at most once, only rightmost in products, never in powers,
// negations are fine, never in a divisor
void validate_v(const ExprAst& n) {
    for (const auto& ch : n.children) validate_v(*ch);
    switch (n.kind) {
        case ExprAst::Kind::Product:
            for (std::size_t i = 0; i + 1 < n.children.size(); ++i)
                if (contains_v(*n.children[i]))
                    throw ParseError("v must be the rightmost factor of a product", 0);
            break;
        case ExprAst::Kind::Power:
            if (contains_v(*n.children[0]))
                throw ParseError("v cannot be raised to a power", 0);
            break;
        case ExprAst::Kind::Quotient:
            if (contains_v(*n.children[1]))
                throw ParseError("v cannot appear in a divisor", 0);
            break;
        default:
            break;
    }
}

} // namespace

std::unique_ptr<ExprAst> parse(const std::string& text) {
    Parser p(text);
    auto ast = p.parse_all();
    validate_v(*ast);
    return ast;
}

namespace {

Value scalar_value(RatFunc s) {
    Value v;
    v.kind = Value::Kind::Scalar;
    v.scalar = std::move(s);
    return v;
}

Value operator_value(UeaElt<RatFunc> u) {
    Value v;
    v.kind = Value::Kind::Operator;
    v.op = std::move(u);
    return v;
}

Value module_value(ModElt<RatFunc> m) {
    Value v;
    v.kind = Value::Kind::Module;
    v.mod = std::move(m);
    return v;
}

UeaElt<RatFunc> as_operator(const Value& v) {
    if (v.kind == Value::Kind::Scalar) return UeaElt<RatFunc>::word(PbwWord{}, v.scalar);
    if (v.kind == Value::Kind::Operator) return v.op;
    throw DomainError("expected an operator, found a module element");
}

Value mul_values(const Value& a, const Value& b) {
    if (a.kind == Value::Kind::Module)
        throw DomainError("v must be the rightmost factor of a product");
    if (b.kind == Value::Kind::Scalar) {
        if (a.kind == Value::Kind::Scalar) return scalar_value(a.scalar * b.scalar);
        return operator_value(b.scalar * a.op);
    }
    if (b.kind == Value::Kind::Operator) {
        if (a.kind == Value::Kind::Scalar) return operator_value(a.scalar * b.op);
        return operator_value(uea_mul(a.op, b.op));
    }
    // b is a module element
    if (a.kind == Value::Kind::Scalar) return module_value(a.scalar * b.mod);
    return module_value(act(a.op, b.mod, symbolic_params()));
}

Value negate_value(Value v) {
    switch (v.kind) {
        case Value::Kind::Scalar: v.scalar = -v.scalar; break;
        case Value::Kind::Operator: v.op = -v.op; break;
        case Value::Kind::Module: v.mod = -v.mod; break;
    }
    return v;
}

Value add_values(const Value& a, const Value& b, int sign) {
    auto with_sign = [&](const Value& v) -> Value { return sign > 0 ? v : negate_value(v); };
    if (a.kind == Value::Kind::Module || b.kind == Value::Kind::Module) {
        if (a.kind != b.kind)
            throw DomainError("cannot add a module element to a non-module value");
        Value r = a;
        r.mod += with_sign(b).mod;
        return r;
    }
    if (a.kind == Value::Kind::Scalar && b.kind == Value::Kind::Scalar) {
        Value r = a;
        r.scalar += with_sign(b).scalar;
        return r;
    }
    return operator_value(as_operator(a) + as_operator(with_sign(b)));
}

} // namespace

Value eval(const ExprAst& ast) {
    switch (ast.kind) {
        case ExprAst::Kind::Number:
            return scalar_value(RatFunc(ast.number));
        case ExprAst::Kind::Param:
            return scalar_value(RatFunc::variable(ast.param));
        case ExprAst::Kind::Gen:
            return operator_value(UeaElt<RatFunc>::generator(ast.mode));
        case ExprAst::Kind::Central:
            return operator_value(UeaElt<RatFunc>::central());
        case ExprAst::Kind::Vgen:
            return module_value(ModElt<RatFunc>::generator(Space::Ind));
        case ExprAst::Kind::Negate:
            return negate_value(eval(*ast.children[0]));
        case ExprAst::Kind::Power: {
            Value base = eval(*ast.children[0]);
            if (base.kind == Value::Kind::Scalar)
                return scalar_value(base.scalar.pow(ast.exponent));
            if (base.kind == Value::Kind::Operator) {
                UeaElt<RatFunc> acc = UeaElt<RatFunc>::one();
                for (std::uint32_t i = 0; i < ast.exponent; ++i) acc = uea_mul(acc, base.op);
                return operator_value(std::move(acc));
            }
            throw DomainError("v cannot be raised to a power");
        }
        case ExprAst::Kind::Quotient: {
            Value num = eval(*ast.children[0]);
            Value den = eval(*ast.children[1]);
            if (den.kind != Value::Kind::Scalar)
                throw DomainError("divisor must be a scalar");
            RatFunc inv = den.scalar.inverse();
            return mul_values(scalar_value(inv), num);
        }
        case ExprAst::Kind::Product: {
            Value acc = eval(*ast.children[0]);
            for (std::size_t i = 1; i < ast.children.size(); ++i)
                acc = mul_values(acc, eval(*ast.children[i]));
            return acc;
        }
        case ExprAst::Kind::Sum: {
            Value acc = eval(*ast.children[0]);
            if (ast.signs[0] < 0) acc = negate_value(std::move(acc));
            for (std::size_t i = 1; i < ast.children.size(); ++i)
                acc = add_values(acc, eval(*ast.children[i]), ast.signs[i]);
            return acc;
        }
    }
    throw DomainError("unhandled expression node");
}

Value eval_string(const std::string& text) { return eval(*parse(text)); }

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

// sign: -1/+1 with text = |coeff| when extractable; 0 with full text otherwise
struct CoeffText {
    int sign;
    std::string text;
    bool needs_parens;
};

CoeffText coeff_text(const Rational& c) {
    return {c.sign() < 0 ? -1 : 1, c.abs().to_string(), false};
}

CoeffText coeff_text(const RatFunc& c) {
    if (c.num().term_count() == 1) {
        int s = c.leading_sign();
        RatFunc a = s < 0 ? -c : c;
        return {s, a.to_string(), false};
    }
    // multi-term numerator: keep the sign inside; to_string already
    // parenthesizes when a denominator is present
    return {0, c.to_string(), c.is_polynomial()};
}

bool coeff_is_unit_one(const Rational& c) { return c.is_one(); }
bool coeff_is_unit_one(const RatFunc& c) { return c.is_one(); }

template <class K>
std::string join_terms(std::vector<std::pair<K, std::string>> parts) {
    std::ostringstream os;
    bool first = true;
    for (auto& [coeff, word] : parts) {
        CoeffText ct = coeff_text(coeff);
        bool negative = ct.sign < 0;
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        std::string cs = ct.needs_parens ? "(" + ct.text + ")" : ct.text;
        if (word.empty()) {
            os << cs;
        } else if (ct.sign > 0 && coeff_is_unit_one(coeff)) {
            os << word; // coefficient +1 is omitted; -1 stays explicit
        } else {
            os << cs << "*" << word;
        }
    }
    return os.str();
}

std::string word_text(const std::vector<long>& factors, std::uint32_t cpow,
                      bool with_v = false) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < factors.size();) {
        std::size_t run = i;
        while (run < factors.size() && factors[run] == factors[i]) ++run;
        if (!first) os << "*";
        os << "l(" << factors[i] << ")";
        if (run - i > 1) os << "^" << (run - i);
        first = false;
        i = run;
    }
    if (cpow > 0) {
        if (!first) os << "*";
        os << "c";
        if (cpow > 1) os << "^" << cpow;
        first = false;
    }
    if (with_v) {
        if (!first) os << "*";
        os << "v";
    }
    return os.str();
}

std::vector<long> key_factors(const BasisKey& key) {
    std::vector<long> f;
    const auto& e = key.i.entries();
    for (std::size_t s = e.size(); s-- > 0;)
        for (std::uint32_t r = 0; r < e[s]; ++r) f.push_back(-(long)(s + 1));
    for (std::uint32_t r = 0; r < key.j; ++r) f.push_back(0);
    for (std::uint32_t r = 0; r < key.k; ++r) f.push_back(1);
    return f;
}

// print order: longer words first, then lexicographic on factors, then cpow
bool word_print_less(const PbwWord& a, const PbwWord& b) {
    if (a.factors.size() != b.factors.size()) return a.factors.size() > b.factors.size();
    if (a.factors != b.factors) return a.factors < b.factors;
    return a.cpow < b.cpow;
}

// print order: higher weight+degrees first, then the basis-key order reversed
bool key_print_less(const BasisKey& a, const BasisKey& b) {
    auto ta = a.i.weight() + a.j + a.k;
    auto tb = b.i.weight() + b.j + b.k;
    if (ta != tb) return ta > tb;
    if (!(a == b)) return b < a;
    return false;
}

template <class K>
std::string render_uea_impl(const UeaElt<K>& x) {
    if (x.is_zero_elt()) return "0";
    std::vector<std::pair<PbwWord, K>> terms(x.terms().begin(), x.terms().end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return word_print_less(a.first, b.first); });
    std::vector<std::pair<K, std::string>> parts;
    parts.reserve(terms.size());
    for (auto& [w, c] : terms) parts.emplace_back(c, word_text(w.factors, w.cpow));
    return join_terms(std::move(parts));
}

template <class K>
std::string render_mod_impl(const ModElt<K>& x) {
    if (x.is_zero_elt()) return "0";
    std::vector<std::pair<BasisKey, K>> terms(x.terms().begin(), x.terms().end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return key_print_less(a.first, b.first); });
    std::vector<std::pair<K, std::string>> parts;
    parts.reserve(terms.size());
    for (auto& [key, c] : terms)
        parts.emplace_back(c, word_text(key_factors(key), 0, true));
    return join_terms(std::move(parts));
}

template <class K>
std::string render_lie_impl(const LieElt<K>& x) {
    if (x.is_zero_elt()) return "0";
    std::vector<std::pair<K, std::string>> parts;
    for (auto it = x.modes().rbegin(); it != x.modes().rend(); ++it)
        parts.emplace_back(it->second, "l(" + std::to_string(it->first) + ")");
    if (!is_zero(x.central())) parts.emplace_back(x.central(), "c");
    return join_terms(std::move(parts));
}

std::string coeff_string(const Rational& c) { return c.to_string(); }
std::string coeff_string(const RatFunc& c) { return c.to_string(); }

template <class K>
std::string render_mod_json_impl(const ModElt<K>& x) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    std::vector<std::pair<BasisKey, K>> sorted(x.terms().begin(), x.terms().end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return key_print_less(a.first, b.first); });
    for (const auto& [key, c] : sorted) {
        nlohmann::ordered_json t;
        t["i"] = key.i.entries();
        t["j"] = key.j;
        t["k"] = key.k;
        t["coeff"] = coeff_string(c);
        terms.push_back(std::move(t));
    }
    nlohmann::ordered_json out;
    out["terms"] = std::move(terms);
    return out.dump();
}

template <class K>
std::string render_uea_json_impl(const UeaElt<K>& x) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    std::vector<std::pair<PbwWord, K>> sorted(x.terms().begin(), x.terms().end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return word_print_less(a.first, b.first); });
    for (const auto& [w, c] : sorted) {
        nlohmann::ordered_json t;
        t["word"] = w.factors;
        t["c"] = w.cpow;
        t["coeff"] = coeff_string(c);
        terms.push_back(std::move(t));
    }
    nlohmann::ordered_json out;
    out["terms"] = std::move(terms);
    return out.dump();
}

template <class K>
std::string render_lie_json_impl(const LieElt<K>& x) {
    nlohmann::ordered_json modes = nlohmann::ordered_json::array();
    for (auto it = x.modes().rbegin(); it != x.modes().rend(); ++it) {
        nlohmann::ordered_json t;
        t["i"] = it->first;
        t["coeff"] = coeff_string(it->second);
        modes.push_back(std::move(t));
    }
    nlohmann::ordered_json out;
    out["modes"] = std::move(modes);
    out["c"] = coeff_string(x.central());
    return out.dump();
}

} // namespace

std::string render(const RatFunc& s) { return s.to_string(); }
std::string render(const Rational& s) { return s.to_string(); }
std::string render(const LieElt<RatFunc>& x) { return render_lie_impl(x); }
std::string render(const LieElt<Rational>& x) { return render_lie_impl(x); }
std::string render(const UeaElt<RatFunc>& x) { return render_uea_impl(x); }
std::string render(const UeaElt<Rational>& x) { return render_uea_impl(x); }
std::string render(const ModElt<RatFunc>& x) { return render_mod_impl(x); }
std::string render(const ModElt<Rational>& x) { return render_mod_impl(x); }

std::string render_json(const ModElt<RatFunc>& x) { return render_mod_json_impl(x); }
std::string render_json(const ModElt<Rational>& x) { return render_mod_json_impl(x); }
std::string render_json(const UeaElt<RatFunc>& x) { return render_uea_json_impl(x); }
std::string render_json(const UeaElt<Rational>& x) { return render_uea_json_impl(x); }
std::string render_json(const LieElt<RatFunc>& x) { return render_lie_json_impl(x); }
std::string render_json(const LieElt<Rational>& x) { return render_lie_json_impl(x); }

} // namespace vir
