#ifndef VIR_PARSER_HPP
#define VIR_PARSER_HPP

#include <memory>
#include <string>
#include <vector>

#include "vir/rep.hpp"

namespace vir {

/// Parse tree for the element expression language:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/')? factor)*
///   factor := atom ('^' uint)?
///   atom   := uint | 'p/q' | parameter | 'l' '(' int ')' | 'c' | 'v' | '(' expr ')'
struct ExprAst {
    enum class Kind { Number, Param, Gen, Central, Vgen, Sum, Product, Quotient, Power, Negate };

    Kind kind;
    Rational number;                             // Number
    std::string param;                           // Param
    long mode = 0;                               // Gen
    std::uint32_t exponent = 0;                  // Power
    std::vector<std::unique_ptr<ExprAst>> children;
    std::vector<int> signs;                      // Sum: +1/-1 per child
};

std::unique_ptr<ExprAst> parse(const std::string& text);

/// Evaluated expression: a scalar, an operator in U(V), or a module element
/// (module elements are built in Ind and coerced by the consumer).
struct Value {
    enum class Kind { Scalar, Operator, Module };
    Kind kind = Kind::Scalar;
    RatFunc scalar;
    UeaElt<RatFunc> op;
    ModElt<RatFunc> mod{Space::Ind};
};

Value eval(const ExprAst& ast);
Value eval_string(const std::string& text);

// Canonical, re-parseable text forms.
std::string render(const RatFunc& s);
std::string render(const Rational& s);
std::string render(const LieElt<RatFunc>& x);
std::string render(const LieElt<Rational>& x);
std::string render(const UeaElt<RatFunc>& x);
std::string render(const UeaElt<Rational>& x);
std::string render(const ModElt<RatFunc>& x);
std::string render(const ModElt<Rational>& x);

// JSON forms; scalars are exact strings, never floating point.
std::string render_json(const ModElt<RatFunc>& x);
std::string render_json(const ModElt<Rational>& x);
std::string render_json(const UeaElt<RatFunc>& x);
std::string render_json(const UeaElt<Rational>& x);
std::string render_json(const LieElt<RatFunc>& x);
std::string render_json(const LieElt<Rational>& x);

} // namespace vir

#endif
