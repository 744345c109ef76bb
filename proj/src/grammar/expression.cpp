#include "amex/expression.hpp"

#include <cmath>
#include <cstdlib>

namespace amex {

namespace {

struct Cursor {
    const std::vector<std::string>& symbols;
    std::size_t pos = 0;
    double x0, x1;
    bool domain_error = false;

    double next() {
        if (pos >= symbols.size()) throw MalformedExpression("prefix expression ends early");
        const std::string& sym = symbols[pos++];
        double v;
        if (sym == "+") {
            double a = next();
            double b = next();
            v = a + b;
        } else if (sym == "-") {
            double a = next();
            double b = next();
            v = a - b;
        } else if (sym == "*") {
            double a = next();
            double b = next();
            v = a * b;
        } else if (sym == "^") {
            double exponent = next();
            double base = next();
            v = std::pow(base, exponent);
        } else if (sym == "sin") {
            v = std::sin(next());
        } else if (sym == "cos") {
            v = std::cos(next());
        } else if (sym == "log") {
            v = std::log(next());
        } else if (sym == "x0") {
            v = x0;
        } else if (sym == "x1") {
            v = x1;
        } else {
            char* end = nullptr;
            v = std::strtod(sym.c_str(), &end);
            if (end == sym.c_str() || *end != '\0')
                throw MalformedExpression("unknown symbol '" + sym + "'");
        }
        if (!std::isfinite(v)) domain_error = true;
        return v;
    }
};

}  // namespace

std::optional<double> evaluate_prefix(const std::vector<std::string>& symbols, double x0,
                                      double x1) {
    if (symbols.empty()) throw MalformedExpression("empty expression");
    Cursor cur{symbols, 0, x0, x1, false};
    double v = cur.next();
    if (cur.pos != symbols.size())
        throw MalformedExpression("trailing symbols after a complete expression");
    if (cur.domain_error) return std::nullopt;
    return v;
}

}  // namespace amex
