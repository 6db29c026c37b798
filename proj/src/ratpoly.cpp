#include "ellk3/ratpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace ellk3 {

void RatPoly::trim() {
    while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
}

RatPoly RatPoly::x() { return monomial(1); }

RatPoly RatPoly::monomial(int deg, mpq_class c) {
    if (c == 0) return {};
    std::vector<mpq_class> v(deg + 1, mpq_class(0));
    v[deg] = c;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-() const {
    std::vector<mpq_class> v = coef_;
    for (auto& c : v) c = -c;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<mpq_class> v(std::max(coef_.size(), o.coef_.size()), mpq_class(0));
    for (std::size_t i = 0; i < coef_.size(); ++i) v[i] += coef_[i];
    for (std::size_t i = 0; i < o.coef_.size(); ++i) v[i] += o.coef_[i];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + (-o); }

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<mpq_class> v(coef_.size() + o.coef_.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < coef_.size(); ++i) {
        if (coef_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coef_.size(); ++j) v[i + j] += coef_[i] * o.coef_[j];
    }
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const mpq_class& c) const {
    std::vector<mpq_class> v = coef_;
    for (auto& a : v) a *= c;
    return RatPoly(std::move(v));
}

RatPoly operator*(const mpq_class& c, const RatPoly& p) { return p * c; }

mpq_class RatPoly::eval(const mpq_class& t) const {
    mpq_class r = 0;
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) r = r * t + *it;
    return r;
}

RatPoly RatPoly::derivative() const {
    if (coef_.size() <= 1) return {};
    std::vector<mpq_class> v(coef_.size() - 1);
    for (std::size_t i = 1; i < coef_.size(); ++i) v[i - 1] = coef_[i] * mpq_class((long)i);
    return RatPoly(std::move(v));
}

RatPoly RatPoly::pow(int e) const {
    RatPoly r(mpq_class(1)), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

RatPoly RatPoly::shift_up(int k) const {
    if (is_zero()) return {};
    std::vector<mpq_class> v(coef_.size() + k, mpq_class(0));
    for (std::size_t i = 0; i < coef_.size(); ++i) v[i + k] = coef_[i];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::reverse(int bound) const {
    if (degree() > bound) throw std::invalid_argument("reverse: degree exceeds bound");
    std::vector<mpq_class> v(bound + 1, mpq_class(0));
    for (int i = 0; i <= degree(); ++i) v[bound - i] = coef_[i];
    return RatPoly(std::move(v));
}

int RatPoly::valuation() const {
    if (is_zero()) return -1;
    int v = 0;
    while (coef_[v] == 0) ++v;
    return v;
}

std::string RatPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        mpq_class c = coef_[i];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        mpq_class a = abs(c);
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("divmod: division by zero polynomial");
    RatPoly r = a;
    std::vector<mpq_class> q(std::max(0, a.degree() - b.degree() + 1), mpq_class(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int d = r.degree() - b.degree();
        mpq_class c = r.leading() / b.leading();
        q[d] = c;
        r = r - b.shift_up(d) * c;
    }
    return {RatPoly(std::move(q)), r};
}

bool divides(const RatPoly& d, const RatPoly& a) {
    if (a.is_zero()) return true;
    if (d.is_zero()) return false;
    return divmod(a, d).second.is_zero();
}

RatPoly exact_div(const RatPoly& a, const RatPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("exact_div: remainder nonzero");
    return q;
}

RatPoly monic(const RatPoly& p) {
    if (p.is_zero()) return p;
    return p * (mpq_class(1) / p.leading());
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    while (!y.is_zero()) {
        RatPoly r = divmod(x, y).second;
        x = y;
        y = r;
    }
    return monic(x);
}

std::vector<SquarefreeFactor> squarefree_decomposition(const RatPoly& p) {
    std::vector<SquarefreeFactor> out;
    if (p.degree() <= 0) return out;
    RatPoly f = monic(p);
    RatPoly fp = f.derivative();
    RatPoly a = gcd(f, fp);
    RatPoly b = exact_div(f, a);
    RatPoly c = exact_div(fp, a);
    RatPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        RatPoly g = gcd(b, d);
        if (g.degree() > 0) out.push_back({g, i});
        b = exact_div(b, g);
        c = exact_div(d, g);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

int multiplicity_of(const RatPoly& p, const RatPoly& g) {
    if (p.is_zero()) throw std::invalid_argument("multiplicity_of: zero polynomial");
    int m = 0;
    RatPoly r = p;
    while (divides(g, r)) {
        r = exact_div(r, g);
        ++m;
    }
    return m;
}

std::optional<mpq_class> rat_sqrt(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    mpz_class sn, sd;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    return mpq_class(sn, sd);
}

std::optional<RatPoly> poly_sqrt(const RatPoly& p) {
    if (p.is_zero()) return RatPoly();
    if (p.degree() % 2 != 0) return std::nullopt;
    auto lc = rat_sqrt(p.leading());
    if (!lc) return std::nullopt;
    int h = p.degree() / 2;
    std::vector<mpq_class> s(h + 1, mpq_class(0));
    s[h] = *lc;
    // solve coefficients from the top down
    for (int k = h - 1; k >= 0; --k) {
        // coefficient of x^(h+k) in s^2 must equal p's
        mpq_class acc = 0;
        for (int i = k + 1; i < h; ++i) {
            int j = h + k - i;
            if (j > i && j <= h) acc += s[i] * s[j] * 2;
            if (j == i) acc += s[i] * s[i];
        }
        s[k] = (p.coeff(h + k) - acc) / (2 * s[h]);
    }
    RatPoly cand{std::vector<mpq_class>(s)};
    if (cand * cand == p) return cand;
    return std::nullopt;
}

mpq_class parse_rat(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

std::string rat_str(const mpq_class& q) { return q.get_str(); }

}  // namespace ellk3
