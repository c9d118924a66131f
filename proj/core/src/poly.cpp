#include "tancat/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tancat {

Poly::Poly(std::vector<std::string> vars, TermMap terms)
    : vars_(std::move(vars)), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.size() != vars_.size())
            throw VarMismatchError("monomial length does not match variable count");
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

Poly Poly::zero(std::vector<std::string> vars) { return Poly(std::move(vars), {}); }

Poly Poly::constant(std::vector<std::string> vars, const Rational& c) {
    TermMap t;
    if (c != 0) t[Exponents(vars.size(), 0)] = c;
    return Poly(std::move(vars), std::move(t));
}

Poly Poly::variable(const std::vector<std::string>& vars, const std::string& name) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end())
        throw VarMismatchError("unknown variable: " + name);
    Exponents e(vars.size(), 0);
    e[static_cast<size_t>(it - vars.begin())] = 1;
    TermMap t;
    t[std::move(e)] = 1;
    return Poly(vars, std::move(t));
}

Poly Poly::monomial(std::vector<std::string> vars, Exponents e, const Rational& c) {
    TermMap t;
    if (c != 0) t[std::move(e)] = c;
    return Poly(std::move(vars), std::move(t));
}

bool Poly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::runtime_error("not a constant polynomial");
    return terms_.begin()->second;
}

int Poly::degree() const {
    if (terms_.empty()) return -1;
    return total_degree(terms_.rbegin()->first);
}

const Exponents& Poly::leading_monomial() const {
    if (terms_.empty()) throw std::runtime_error("zero polynomial has no leading monomial");
    return terms_.rbegin()->first;
}

const Rational& Poly::leading_coeff() const {
    if (terms_.empty()) throw std::runtime_error("zero polynomial has no leading coefficient");
    return terms_.rbegin()->second;
}

void Poly::check_same_vars(const Poly& o) const {
    if (vars_ != o.vars_) throw VarMismatchError("polynomials over different variable lists");
}

Poly Poly::operator+(const Poly& o) const {
    check_same_vars(o);
    TermMap t = terms_;
    for (const auto& [m, c] : o.terms_) {
        auto [it, inserted] = t.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) t.erase(it);
        }
    }
    return Poly(vars_, std::move(t));
}

Poly Poly::operator-() const {
    TermMap t = terms_;
    for (auto& [m, c] : t) c = -c;
    return Poly(vars_, std::move(t));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    check_same_vars(o);
    TermMap t;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            Exponents m(m1.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = m1[i] + m2[i];
            Rational c = c1 * c2;
            auto [it, inserted] = t.emplace(std::move(m), c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0) t.erase(it);
            }
        }
    }
    return Poly(vars_, std::move(t));
}

Poly Poly::scale(const Rational& c) const {
    if (c == 0) return zero(vars_);
    TermMap t = terms_;
    for (auto& [m, v] : t) v *= c;
    return Poly(vars_, std::move(t));
}

Poly Poly::pow(int n) const {
    if (n < 0) throw std::runtime_error("negative exponent");
    Poly r = constant(vars_, 1);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

Poly Poly::derivative(size_t i) const {
    TermMap t;
    for (const auto& [m, c] : terms_) {
        if (m[i] == 0) continue;
        Exponents e = m;
        Rational k = e[i];
        e[i] -= 1;
        t[std::move(e)] = c * k;
    }
    return Poly(vars_, std::move(t));
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
    if (images.size() != vars_.size())
        throw VarMismatchError("substitution image count does not match variable count");
    std::vector<std::string> tvars =
        images.empty() ? std::vector<std::string>{} : images[0].vars();
    for (const auto& im : images)
        if (im.vars() != tvars) throw VarMismatchError("substitution images over different variable lists");
    Poly result = Poly::zero(tvars);
    for (const auto& [m, c] : terms_) {
        Poly term = Poly::constant(tvars, c);
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) term = term * images[i].pow(m[i]);
        result = result + term;
    }
    return result;
}

size_t Poly::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw VarMismatchError("unknown variable: " + name);
    return static_cast<size_t>(it - vars_.begin());
}

Poly Poly::map_vars(const std::vector<std::string>& new_vars) const {
    std::vector<int> pos(vars_.size(), -1);
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
        if (it != new_vars.end()) pos[i] = static_cast<int>(it - new_vars.begin());
    }
    TermMap t;
    for (const auto& [m, c] : terms_) {
        Exponents e(new_vars.size(), 0);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (pos[i] < 0)
                throw VarMismatchError("variable " + vars_[i] + " not present in target list");
            e[static_cast<size_t>(pos[i])] = m[i];
        }
        t[std::move(e)] = c;
    }
    return Poly(new_vars, std::move(t));
}

int Poly::exponent_of(const Exponents& e, const std::string& name) const {
    return e[var_index(name)];
}

Poly Poly::coefficient_of_linear(const std::string& name) const {
    size_t i = var_index(name);
    TermMap t;
    for (const auto& [m, c] : terms_) {
        if (m[i] != 1) continue;
        Exponents e = m;
        e[i] = 0;
        t[std::move(e)] = c;
    }
    return Poly(vars_, std::move(t));
}

Poly Poly::drop_terms_in(const std::string& name) const {
    size_t i = var_index(name);
    TermMap t;
    for (const auto& [m, c] : terms_)
        if (m[i] == 0) t[m] = c;
    return Poly(vars_, std::move(t));
}

std::string format_rational(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // descending monomial order
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            if (a < 0) { os << " - "; a = -a; }
            else os << " + ";
        }
        bool has_vars = total_degree(m) > 0;
        if (a != 1 || !has_vars) {
            os << format_rational(a);
            if (has_vars) os << "*";
        }
        bool firstv = true;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!firstv) os << "*";
            firstv = false;
            os << vars_[i];
            if (m[i] > 1) os << "^" << m[i];
        }
        first = false;
    }
    return os.str();
}

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    explicit Lexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::runtime_error("parse error at position " + std::to_string(pos) + ": " + what);
    }
};

Poly parse_expr(Lexer& lx, const std::vector<std::string>& vars);

Poly parse_base(Lexer& lx, const std::vector<std::string>& vars) {
    char c = lx.peek();
    if (c == '(') {
        ++lx.pos;
        Poly p = parse_expr(lx, vars);
        if (lx.peek() != ')') lx.fail("expected ')'");
        ++lx.pos;
        return p;
    }
    if (c == '-') {
        ++lx.pos;
        // unary minus binds tighter than '+': negate the next factor
        Poly p = parse_base(lx, vars);
        if (lx.peek() == '^') {
            ++lx.pos;
            std::string num;
            while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
                num += lx.s[lx.pos++];
            if (num.empty()) lx.fail("expected exponent");
            p = p.pow(std::stoi(num));
        }
        return -p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
            num += lx.s[lx.pos++];
        // a/b rational literal: no spaces around '/'
        if (lx.pos + 1 < lx.s.size() && lx.s[lx.pos] == '/' &&
            std::isdigit(static_cast<unsigned char>(lx.s[lx.pos + 1]))) {
            ++lx.pos;
            std::string den;
            while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
                den += lx.s[lx.pos++];
            return Poly::constant(vars, Rational(boost::multiprecision::cpp_int(num),
                                                 boost::multiprecision::cpp_int(den)));
        }
        return Poly::constant(vars, Rational(boost::multiprecision::cpp_int(num)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (lx.pos < lx.s.size() &&
               (std::isalnum(static_cast<unsigned char>(lx.s[lx.pos])) || lx.s[lx.pos] == '_'))
            id += lx.s[lx.pos++];
        try {
            return Poly::variable(vars, id);
        } catch (const VarMismatchError&) {
            lx.fail("unknown variable '" + id + "'");
        }
    }
    lx.fail("unexpected character");
}

Poly parse_factor(Lexer& lx, const std::vector<std::string>& vars) {
    Poly p = parse_base(lx, vars);
    if (lx.peek() == '^') {
        ++lx.pos;
        lx.skip_ws();
        std::string num;
        while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
            num += lx.s[lx.pos++];
        if (num.empty()) lx.fail("expected exponent");
        p = p.pow(std::stoi(num));
    }
    return p;
}

Poly parse_term(Lexer& lx, const std::vector<std::string>& vars) {
    Poly p = parse_factor(lx, vars);
    while (lx.peek() == '*') {
        ++lx.pos;
        p = p * parse_factor(lx, vars);
    }
    return p;
}

Poly parse_expr(Lexer& lx, const std::vector<std::string>& vars) {
    Poly p = parse_term(lx, vars);
    while (true) {
        char c = lx.peek();
        if (c == '+') {
            ++lx.pos;
            p = p + parse_term(lx, vars);
        } else if (c == '-') {
            // binary minus: leave the '-' for the term parser as a unary
            // prefix would double-negate, so consume and subtract
            ++lx.pos;
            p = p - parse_term(lx, vars);
        } else {
            break;
        }
    }
    return p;
}

}  // namespace

Poly Poly::parse(const std::string& text, const std::vector<std::string>& vars) {
    Lexer lx(text);
    Poly p = parse_expr(lx, vars);
    lx.skip_ws();
    if (lx.pos != text.size()) lx.fail("trailing input");
    return p;
}

}  // namespace tancat
