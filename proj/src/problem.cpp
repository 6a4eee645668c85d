#include "bvp/problem.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

namespace bvp {

void Problem::validate() const {
    if (order < 1) throw ProblemError("order must be a positive integer");
    if (!(a < b)) throw ProblemError("interval endpoints must satisfy a < b");
    if (static_cast<int>(coeffs.size()) != order)
        throw ProblemError("expected " + std::to_string(order) + " coefficient expressions");
    for (const Expr& c : coeffs)
        if (c.is_null()) throw ProblemError("missing coefficient expression");
    if (rhs.is_null()) throw ProblemError("missing rhs");
    if (static_cast<int>(bcs.size()) != order)
        throw ProblemError("expected m=" + std::to_string(order) + " boundary conditions, found " +
                           std::to_string(bcs.size()));
    std::set<std::pair<int, Endpoint>> seen;
    for (const BoundaryCondition& bc : bcs) {
        if (bc.deriv_order < 0 || bc.deriv_order >= order)
            throw ProblemError("boundary condition derivative order " +
                               std::to_string(bc.deriv_order) + " out of range [0, " +
                               std::to_string(order - 1) + "]");
        if (!seen.insert({bc.deriv_order, bc.endpoint}).second)
            throw ProblemError("duplicate boundary condition for derivative order " +
                               std::to_string(bc.deriv_order));
    }
    if (default_degree && *default_degree < order)
        throw ProblemError("n must be >= order");
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ProblemError("line " + std::to_string(line) + ": " + msg);
}

double parse_real(const std::string& s, int line, const char* what) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || trim(std::string_view(end)) != "")
        fail(line, std::string("malformed ") + what + " '" + s + "'");
    return v;
}

int parse_int(const std::string& s, int line, const char* what) {
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || trim(std::string_view(end)) != "")
        fail(line, std::string("malformed ") + what + " '" + s + "'");
    return static_cast<int>(v);
}

double parse_const_expr(const std::string& s, int line, const char* what) {
    Expr e;
    try {
        e = parse_expr(s);
    } catch (const ParseError& err) {
        fail(line, std::string(what) + ": " + err.what());
    }
    if (e.depends_on_t()) fail(line, std::string(what) + " must not depend on t");
    return e.eval(0.0);
}

// "bc: D2 y(0) = -1", "bc: y'(1) = -e", "bc: y(0.5) = 0" (after the "bc:" tag).
struct RawBc {
    int deriv_order;
    double endpoint_value;
    double value;
};

RawBc parse_bc_line(const std::string& body, int line) {
    std::size_t eq = body.rfind('=');
    if (eq == std::string::npos) fail(line, "bc line missing '='");
    std::string lhs = trim(body.substr(0, eq));
    std::string rhs = trim(body.substr(eq + 1));
    if (rhs.empty()) fail(line, "bc line missing value");

    int k = -1;
    std::size_t pos = 0;
    if (lhs.size() >= 2 && (lhs[0] == 'D' || lhs[0] == 'd') &&
        std::isdigit(static_cast<unsigned char>(lhs[1]))) {
        std::size_t i = 1;
        while (i < lhs.size() && std::isdigit(static_cast<unsigned char>(lhs[i]))) ++i;
        k = std::stoi(lhs.substr(1, i - 1));
        pos = i;
        while (pos < lhs.size() && std::isspace(static_cast<unsigned char>(lhs[pos]))) ++pos;
        if (pos >= lhs.size() || lhs[pos] != 'y') fail(line, "bc: expected 'y' after D<k>");
        ++pos;
    } else if (!lhs.empty() && lhs[0] == 'y') {
        pos = 1;
        k = 0;
        while (pos < lhs.size() && lhs[pos] == '\'') {
            ++k;
            ++pos;
        }
    } else {
        fail(line, "bc: expected y, y', y'' or D<k> y");
    }
    while (pos < lhs.size() && std::isspace(static_cast<unsigned char>(lhs[pos]))) ++pos;
    if (pos >= lhs.size() || lhs[pos] != '(') fail(line, "bc: expected '(' after function");
    std::size_t close = lhs.find(')', pos);
    if (close == std::string::npos) fail(line, "bc: missing ')'");
    std::string ep = trim(lhs.substr(pos + 1, close - pos - 1));
    if (trim(lhs.substr(close + 1)) != "") fail(line, "bc: trailing text after ')'");

    RawBc bc;
    bc.deriv_order = k;
    bc.endpoint_value = parse_real(ep, line, "bc endpoint");
    bc.value = parse_const_expr(rhs, line, "bc value");
    return bc;
}

}  // namespace

Problem parse_problem(std::string_view src) {
    Problem p;
    bool has_order = false, has_interval = false;
    std::vector<std::pair<int, Expr>> coeff_lines;
    std::vector<std::pair<RawBc, int>> raw_bcs;  // with line numbers

    std::istringstream stream{std::string(src)};
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        if (std::size_t hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string text = trim(raw);
        if (text.empty()) continue;

        if (text.rfind("bc:", 0) == 0) {
            raw_bcs.emplace_back(parse_bc_line(trim(text.substr(3)), line), line);
            continue;
        }
        std::size_t eq = text.find('=');
        if (eq == std::string::npos) fail(line, "expected '<key> = <value>'");
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (value.empty()) fail(line, "missing value for '" + key + "'");

        auto parse_value_expr = [&](const char* what) {
            try {
                return parse_expr(value);
            } catch (const ParseError& err) {
                fail(line, std::string(what) + ": " + err.what());
            }
        };

        if (key == "order") {
            p.order = parse_int(value, line, "order");
            if (p.order < 1) fail(line, "order must be positive");
            has_order = true;
        } else if (key == "interval") {
            if (value.front() != '[' || value.back() != ']') fail(line, "interval must be [a, b]");
            std::string inner = value.substr(1, value.size() - 2);
            std::size_t comma = inner.find(',');
            if (comma == std::string::npos) fail(line, "interval must be [a, b]");
            p.a = parse_real(trim(inner.substr(0, comma)), line, "interval bound");
            p.b = parse_real(trim(inner.substr(comma + 1)), line, "interval bound");
            if (!(p.a < p.b)) fail(line, "interval bounds must satisfy a < b");
            has_interval = true;
        } else if (key.rfind("coeff", 0) == 0) {
            int idx = parse_int(trim(key.substr(5)), line, "coeff index");
            coeff_lines.emplace_back(idx, parse_value_expr("coeff"));
        } else if (key == "rhs") {
            p.rhs = parse_value_expr("rhs");
        } else if (key == "exact") {
            p.exact = parse_value_expr("exact");
        } else if (key == "n") {
            p.default_degree = parse_int(value, line, "n");
        } else if (key == "label") {
            p.label = value;
        } else {
            fail(line, "unknown directive '" + key + "'");
        }
    }

    if (!has_order) throw ProblemError("missing 'order' directive");
    if (!has_interval) throw ProblemError("missing 'interval' directive");
    if (p.rhs.is_null()) throw ProblemError("missing 'rhs' directive");

    p.coeffs.assign(static_cast<std::size_t>(p.order), Expr::number(0.0));
    for (auto& [idx, expr] : coeff_lines) {
        if (idx < 1 || idx > p.order)
            throw ProblemError("coeff index " + std::to_string(idx) + " out of range [1, " +
                               std::to_string(p.order) + "]");
        p.coeffs[static_cast<std::size_t>(idx - 1)] = std::move(expr);
    }

    for (const auto& [bc, bc_line] : raw_bcs) {
        Endpoint ep;
        if (bc.endpoint_value == p.a) ep = Endpoint::Left;
        else if (bc.endpoint_value == p.b) ep = Endpoint::Right;
        else fail(bc_line, "bc endpoint " + std::to_string(bc.endpoint_value) +
                               " is not an interval bound");
        p.bcs.push_back({bc.deriv_order, ep, bc.value});
    }

    p.validate();
    return p;
}

}  // namespace bvp
