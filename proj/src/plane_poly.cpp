#include "ellk3/plane_poly.hpp"

#include <cctype>
#include <stdexcept>

namespace ellk3 {

MPoly MPoly::constant(const mpq_class& c) {
    MPoly p;
    if (c != 0) p.terms_[{}] = c;
    return p;
}

MPoly MPoly::variable(int var_id, int nvars) {
    MPoly p;
    p.nvars_ = nvars;
    Key k(nvars, 0);
    k[var_id] = 1;
    p.terms_[k] = 1;
    return p;
}

void MPoly::add_term(Key k, const mpq_class& c) {
    if (static_cast<int>(k.size()) < nvars_) k.resize(nvars_, 0);
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        if (c != 0) terms_[k] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

namespace {
MPoly::Key align(const MPoly::Key& k, int n) {
    MPoly::Key r = k;
    r.resize(n, 0);
    return r;
}
}  // namespace

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r;
    r.nvars_ = std::max(nvars_, o.nvars_);
    for (const auto& [k, c] : terms_) r.add_term(align(k, r.nvars_), c);
    for (const auto& [k, c] : o.terms_) r.add_term(align(k, r.nvars_), c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r;
    r.nvars_ = std::max(nvars_, o.nvars_);
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_) {
            Key k = align(k1, r.nvars_);
            Key kk = align(k2, r.nvars_);
            for (std::size_t i = 0; i < k.size(); ++i) k[i] += kk[i];
            r.add_term(k, c1 * c2);
        }
    return r;
}

MPoly MPoly::pow(int e) const {
    MPoly r = MPoly::constant(1);
    r.nvars_ = nvars_;
    MPoly b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

MPoly MPoly::substitute(int var_id, const MPoly& value) const {
    MPoly r;
    r.nvars_ = std::max(nvars_, value.nvars());
    for (const auto& [k, c] : terms_) {
        Key base = align(k, r.nvars_);
        int e = var_id < static_cast<int>(base.size()) ? base[var_id] : 0;
        base[var_id] = 0;
        MPoly term;
        term.set_nvars(r.nvars_);
        term.add_term(base, c);
        if (e > 0) term = term * value.pow(e);
        r = r + term;
    }
    return r;
}

int MPoly::degree_in(int var_id) const {
    int d = 0;
    for (const auto& [k, c] : terms_)
        if (var_id < static_cast<int>(k.size())) d = std::max(d, k[var_id]);
    return d;
}

std::vector<RatPoly> MPoly::collect(int outer, int inner) const {
    int dout = degree_in(outer);
    std::vector<std::vector<mpq_class>> coeffs(dout + 1);
    for (const auto& [k, c] : terms_) {
        int eo = outer < static_cast<int>(k.size()) ? k[outer] : 0;
        int ei = inner < static_cast<int>(k.size()) ? k[inner] : 0;
        for (std::size_t i = 0; i < k.size(); ++i)
            if (static_cast<int>(i) != outer && static_cast<int>(i) != inner && k[i] != 0)
                throw std::invalid_argument("collect: unexpected live variable");
        auto& v = coeffs[eo];
        if (static_cast<int>(v.size()) <= ei) v.resize(ei + 1, mpq_class(0));
        v[ei] += c;
    }
    std::vector<RatPoly> out;
    for (auto& v : coeffs) out.push_back(RatPoly(std::move(v)));
    return out;
}

namespace {

struct Tokenizer {
    const std::string& s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip();
        return pos >= s.size();
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    char get() {
        skip();
        return s[pos++];
    }
};

struct Parser {
    Tokenizer tok;
    const PolyParser& ctx;

    MPoly parse_expr() {
        MPoly v = parse_term();
        while (!tok.done()) {
            char c = tok.peek();
            if (c == '+') {
                tok.get();
                v = v + parse_term();
            } else if (c == '-') {
                tok.get();
                v = v - parse_term();
            } else {
                break;
            }
        }
        return v;
    }

    MPoly parse_term() {
        MPoly v = parse_factor();
        while (!tok.done()) {
            char c = tok.peek();
            if (c == '*') {
                tok.get();
                v = v * parse_factor();
            } else if (c == '/') {
                tok.get();
                MPoly d = parse_factor();
                if (d.terms().size() != 1) throw std::invalid_argument("division only by constants");
                for (int e : d.terms().begin()->first)
                    if (e != 0) throw std::invalid_argument("division only by constants");
                mpq_class c0 = d.terms().begin()->second;
                v = v * MPoly::constant(mpq_class(1) / c0);
            } else {
                break;
            }
        }
        return v;
    }

    MPoly parse_factor() {
        MPoly base = parse_atom();
        if (!tok.done() && tok.peek() == '^') {
            tok.get();
            MPoly e = parse_atom();
            if (e.terms().size() > 1) throw std::invalid_argument("bad exponent");
            long ex = 0;
            if (!e.is_zero()) {
                mpq_class c = e.terms().begin()->second;
                if (c.get_den() != 1 || c < 0) throw std::invalid_argument("bad exponent");
                ex = c.get_num().get_si();
            }
            return base.pow(static_cast<int>(ex));
        }
        return base;
    }

    MPoly parse_atom() {
        char c = tok.peek();
        if (c == '(') {
            tok.get();
            MPoly v = parse_expr();
            if (tok.peek() != ')') throw std::invalid_argument("missing )");
            tok.get();
            return v;
        }
        if (c == '-') {
            tok.get();
            return -parse_atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (!tok.done() && std::isdigit(static_cast<unsigned char>(tok.peek()))) num += tok.get();
            return MPoly::constant(mpq_class(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (!tok.done()) {
                char p = tok.peek();
                if (std::isalnum(static_cast<unsigned char>(p)) || p == '_') name += tok.get();
                else break;
            }
            return MPoly::variable(ctx.var_id(name), static_cast<int>(ctx.variables.size()));
        }
        throw std::invalid_argument(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

int PolyParser::var_id(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown variable: " + name);
}

MPoly PolyParser::parse(const std::string& text) const {
    Parser p{Tokenizer{text}, *this};
    MPoly v = p.parse_expr();
    if (!p.tok.done()) throw std::invalid_argument("trailing input in expression");
    v.set_nvars(static_cast<int>(variables.size()));
    return v;
}

}  // namespace ellk3
