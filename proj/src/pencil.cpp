#include "ellk3/pencil.hpp"

#include <algorithm>
#include <map>

namespace ellk3 {

RatFunc::RatFunc(RatPoly n, RatPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::invalid_argument("RatFunc: zero denominator");
    if (num.is_zero()) { den = RatPoly(mpq_class(1)); return; }
    RatPoly g = gcd(num, den);
    if (g.degree() > 0) {
        num = exact_div(num, g);
        den = exact_div(den, g);
    }
    mpq_class lc = den.leading();
    num = num * (mpq_class(1) / lc);
    den = den * (mpq_class(1) / lc);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num * o.den + o.num * den, den * o.den);
}
RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num * o.den - o.num * den, den * o.den);
}
RatFunc RatFunc::operator*(const RatFunc& o) const { return RatFunc(num * o.num, den * o.den); }
RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw std::invalid_argument("RatFunc: division by zero");
    return RatFunc(num * o.den, den * o.num);
}
RatFunc RatFunc::operator-() const { return RatFunc(-num, den); }

int fp_degree(const FieldPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (!p[i].is_zero()) return i;
    return -1;
}

FieldPoly fp_mul(const FieldPoly& a, const FieldPoly& b) {
    if (a.empty() || b.empty()) return {};
    FieldPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

FieldPoly fp_scale(const FieldPoly& a, const RatFunc& c) {
    FieldPoly r = a;
    for (auto& e : r) e = e * c;
    return r;
}

FieldPoly fp_monic(const FieldPoly& a) {
    int d = fp_degree(a);
    if (d < 0) return a;
    FieldPoly r(a.begin(), a.begin() + d + 1);
    RatFunc lc = r[d];
    for (auto& e : r) e = e / lc;
    return r;
}

RatFunc fp_eval(const FieldPoly& p, const RatFunc& x) {
    RatFunc r;
    for (int i = fp_degree(p); i >= 0; --i) r = r * x + p[i];
    return r;
}

namespace {

// is f a square in Q(t)?
std::optional<RatFunc> rf_sqrt(const RatFunc& f) {
    auto sn = poly_sqrt(f.num);
    auto sd = poly_sqrt(f.den);
    if (sn && sd) return RatFunc(*sn, *sd);
    return std::nullopt;
}

struct Factor {
    FieldPoly poly;  // monic in x
};

std::string fp_key(const FieldPoly& p) {
    std::string s;
    for (const auto& c : p) s += c.num.str() + "|" + c.den.str() + ";";
    return s;
}

}  // namespace

PencilModel pencil_fibration(const std::vector<MPoly>& components, const PolyParser& vars,
                             const std::vector<mpq_class>& base_point,
                             std::pair<int, int> root_pair) {
    if (base_point.size() != 3) throw std::invalid_argument("pencil_fibration: base point needs 3 coordinates");
    int vx = vars.var_id("x"), vy = vars.var_id("y"), vz = vars.var_id("z"), vt = vars.var_id("t");
    int nv = static_cast<int>(vars.variables.size());

    // move the base point to (0:0:1)
    std::vector<MPoly> comps = components;
    mpq_class p0 = base_point[0], p1 = base_point[1], p2 = base_point[2];
    if (p2 == 0) {
        // exchange z with a nonzero coordinate first (term-by-term swap)
        int other = (p1 != 0) ? vy : vx;
        for (auto& c : comps) {
            MPoly swapped;
            swapped.set_nvars(nv);
            for (const auto& [k, coef] : c.terms()) {
                MPoly::Key kk = k;
                kk.resize(nv, 0);
                std::swap(kk[other], kk[vz]);
                swapped.add_term(kk, coef);
            }
            c = swapped;
        }
        if (p1 != 0) std::swap(p1, p2);
        else std::swap(p0, p2);
    }
    // now p2 != 0; normalize and translate x -> x + (p0/p2) z, y -> y + (p1/p2) z
    {
        mpq_class ax = p0 / p2, ay = p1 / p2;
        MPoly X = MPoly::variable(vx, nv), Y = MPoly::variable(vy, nv), Z = MPoly::variable(vz, nv);
        if (ax != 0) {
            MPoly shift = X + MPoly::constant(ax) * Z;
            for (auto& c : comps) c = c.substitute(vx, shift);
        }
        if (ay != 0) {
            MPoly shift = Y + MPoly::constant(ay) * Z;
            for (auto& c : comps) c = c.substitute(vy, shift);
        }
    }

    // restrict to the pencil line y = t x in the chart z = 1
    PencilModel out;
    RatFunc twist_k{RatPoly(mpq_class(1))};
    std::map<std::string, std::pair<FieldPoly, int>> factor_counts;
    auto push_factor = [&](const FieldPoly& monic_f) {
        auto key = fp_key(monic_f);
        auto it = factor_counts.find(key);
        if (it == factor_counts.end()) factor_counts[key] = {monic_f, 1};
        else it->second.second += 1;
    };

    int nvmax = nv;
    MPoly tx = MPoly::variable(vt, nvmax) * MPoly::variable(vx, nvmax);
    for (const auto& comp : comps) {
        MPoly r = comp.substitute(vy, tx).substitute(vz, MPoly::constant(1));
        std::vector<RatPoly> coeffs = r.collect(vx, vt);
        FieldPoly f;
        for (auto& c : coeffs) f.push_back(RatFunc(c));
        int d = fp_degree(f);
        if (d < 0) throw std::invalid_argument("pencil_fibration: component restricts to zero");
        // strip base-point factors x^v
        int v = 0;
        while (v <= d && f[v].is_zero()) ++v;
        out.base_multiplicity += v;
        FieldPoly g(f.begin() + v, f.end());
        d = fp_degree(g);
        if (d == 0) { twist_k = twist_k * g[0]; continue; }
        twist_k = twist_k * g[d];
        g = fp_monic(g);
        if (d == 1) {
            push_factor(g);
        } else if (d == 2) {
            // split when the discriminant is a square in Q(t)
            RatFunc disc = g[1] * g[1] - RatFunc(RatPoly(mpq_class(4))) * g[0];
            auto s = rf_sqrt(disc);
            if (s) {
                RatFunc half{RatPoly(mpq_class(1, 2))};
                RatFunc r1 = (-g[1] + *s) * half, r2 = (-g[1] - *s) * half;
                push_factor(FieldPoly{-r1, RatFunc(RatPoly(mpq_class(1)))});
                push_factor(FieldPoly{-r2, RatFunc(RatPoly(mpq_class(1)))});
            } else {
                push_factor(g);
            }
        } else {
            push_factor(g);
        }
    }
    if (out.base_multiplicity < 2)
        throw std::invalid_argument("pencil_fibration: base point is not a singular point of the sextic");

    // odd-multiplicity part; squares fold into the twist
    std::vector<FieldPoly> odd;
    for (auto& [key, fc] : factor_counts) {
        if (fc.second % 2 == 1) odd.push_back(fc.first);
    }
    int total = 0;
    for (const auto& f : odd) total += fp_degree(f);
    if (total != 3 && total != 4)
        throw std::invalid_argument("pencil_fibration: reduced cover has degree " + std::to_string(total) +
                                    ", not an elliptic pencil");

    std::vector<RatFunc> roots;
    std::vector<FieldPoly> nonlinear;
    for (const auto& f : odd) {
        if (fp_degree(f) == 1) roots.push_back(-f[0]);
        else nonlinear.push_back(f);
    }
    std::sort(roots.begin(), roots.end(), [](const RatFunc& a, const RatFunc& b) {
        return a.num.str() + "/" + a.den.str() < b.num.str() + "/" + b.den.str();
    });
    out.rational_roots = static_cast<int>(roots.size());

    auto clear_model = [&](const RatFunc& a_raw, const RatFunc& b_raw) {
        // multiply by u^2 / u^4 with the minimal monic u clearing both
        std::map<std::string, std::pair<RatPoly, int>> need;
        for (const auto& f : squarefree_decomposition(a_raw.den)) {
            int m = multiplicity_of(a_raw.den, f.factor) /*= f.multiplicity*/;
            (void)m;
            int req = (f.multiplicity + 1) / 2;
            auto& slot = need[f.factor.str()];
            slot.first = f.factor;
            slot.second = std::max(slot.second, req);
        }
        for (const auto& f : squarefree_decomposition(b_raw.den)) {
            int req = (f.multiplicity + 3) / 4;
            auto& slot = need[f.factor.str()];
            slot.first = f.factor;
            slot.second = std::max(slot.second, req);
        }
        RatPoly u(mpq_class(1));
        for (auto& [k, fr] : need) u = u * fr.first.pow(fr.second);
        RatFunc a_cl = a_raw * RatFunc(u * u);
        RatFunc b_cl = b_raw * RatFunc(u.pow(4));
        if (a_cl.den.degree() != 0 || b_cl.den.degree() != 0)
            throw std::logic_error("pencil_fibration: clearing failed");
        TwoTorsionModel m;
        m.a = a_cl.num * (mpq_class(1) / a_cl.den.leading());
        m.b = b_cl.num * (mpq_class(1) / b_cl.den.leading());
        return minimalize(m);
    };

    if (total == 4 && roots.size() >= 2) {
        std::size_t i = root_pair.first, j = root_pair.second;
        if (i >= roots.size() || j >= roots.size() || i == j)
            throw std::invalid_argument("pencil_fibration: bad root pair");
        RatFunc e1 = roots[i], e2 = roots[j];
        // complementary quadratic P x^2 + Q x + R
        FieldPoly quad{RatFunc(RatPoly(mpq_class(1)))};
        for (std::size_t r = 0; r < roots.size(); ++r)
            if (r != i && r != j)
                quad = fp_mul(quad, FieldPoly{-roots[r], RatFunc(RatPoly(mpq_class(1)))});
        for (const auto& f : nonlinear) quad = fp_mul(quad, f);
        quad.resize(3);
        RatFunc P = quad[2], Q = quad[1], R = quad[0];
        RatFunc two{RatPoly(mpq_class(2))};
        RatFunc a_raw = twist_k * (two * P * e1 * e2 + Q * (e1 + e2) + two * R);
        RatFunc q1 = fp_eval(FieldPoly{R, Q, P}, e1);
        RatFunc q2 = fp_eval(FieldPoly{R, Q, P}, e2);
        RatFunc b_raw = twist_k * twist_k * q1 * q2;
        out.model = clear_model(a_raw, b_raw);
        out.has_two_torsion = true;
        out.short_form = minimalize(short_model(out.model));
        return out;
    }
    if (total == 3 && roots.size() >= 1) {
        RatFunc e1 = roots[0];
        FieldPoly quad{RatFunc(RatPoly(mpq_class(1)))};
        for (std::size_t r = 1; r < roots.size(); ++r)
            quad = fp_mul(quad, FieldPoly{-roots[r], RatFunc(RatPoly(mpq_class(1)))});
        for (const auto& f : nonlinear) quad = fp_mul(quad, f);
        quad.resize(3);
        RatFunc P = quad[2], Q = quad[1], R = quad[0];
        if (!(P == RatFunc(RatPoly(mpq_class(1)))))
            throw std::logic_error("pencil_fibration: cubic complement not monic");
        // shift the root to the origin: x(x^2 + (Q + 2 e1) x + (e1^2 + Q e1 + R))
        RatFunc two{RatPoly(mpq_class(2))};
        RatFunc a_raw = twist_k * (Q + two * e1);
        RatFunc b_raw = twist_k * twist_k * (e1 * e1 + Q * e1 + R);
        out.model = clear_model(a_raw, b_raw);
        out.has_two_torsion = true;
        out.short_form = minimalize(short_model(out.model));
        return out;
    }

    // no 2-torsion shape: go through a cubic model directly
    if (total == 4) {
        if (roots.empty())
            throw std::invalid_argument(
                "pencil_fibration: no rational branch along the pencil; try a different branch sextic");
        // w^2 = k (x - e) C(x); x = e + 1/v turns it into a cubic in v
        RatFunc e = roots[0];
        FieldPoly cubic{RatFunc(RatPoly(mpq_class(1)))};
        for (std::size_t r = 1; r < roots.size(); ++r)
            cubic = fp_mul(cubic, FieldPoly{-roots[r], RatFunc(RatPoly(mpq_class(1)))});
        for (const auto& f : nonlinear) cubic = fp_mul(cubic, f);
        cubic.resize(4);
        // coefficients of C(e + 1/v) v^3: c3 at v^3 is C(e), then derivatives
        RatFunc c0 = cubic[3];
        RatFunc c1 = cubic[2] + RatFunc(RatPoly(mpq_class(3))) * cubic[3] * e;
        RatFunc c2 = cubic[1] + RatFunc(RatPoly(mpq_class(2))) * cubic[2] * e +
                     RatFunc(RatPoly(mpq_class(3))) * cubic[3] * e * e;
        RatFunc c3 = fp_eval(cubic, e);
        // w^2 = k (c3 v^3 + c2 v^2 + c1 v + c0)
        // to y^2 = x^3 + p x^2 + q x + r over Q(t): scale by (k c3)^2
        RatFunc k = twist_k, K = k * c3;
        RatFunc p = k * c2, q = k * k * c3 * c1, r = k * k * k * c3 * c3 * c0;
        // depress: A = q - p^2/3, B = 2p^3/27 - pq/3 + r
        RatFunc third{RatPoly(mpq_class(1, 3))};
        RatFunc A = q - p * p * third;
        RatFunc B = p * p * p * RatFunc(RatPoly(mpq_class(2, 27))) - p * q * third + r;
        (void)K;
        // clear denominators: u^4 | A, u^6 | B
        std::map<std::string, std::pair<RatPoly, int>> need;
        for (const auto& f : squarefree_decomposition(A.den)) {
            int req = (f.multiplicity + 3) / 4;
            auto& slot = need[f.factor.str()];
            slot.first = f.factor;
            slot.second = std::max(slot.second, req);
        }
        for (const auto& f : squarefree_decomposition(B.den)) {
            int req = (f.multiplicity + 5) / 6;
            auto& slot = need[f.factor.str()];
            slot.first = f.factor;
            slot.second = std::max(slot.second, req);
        }
        RatPoly u(mpq_class(1));
        for (auto& [kk, fr] : need) u = u * fr.first.pow(fr.second);
        RatFunc A_cl = A * RatFunc(u.pow(4));
        RatFunc B_cl = B * RatFunc(u.pow(6));
        if (A_cl.den.degree() != 0 || B_cl.den.degree() != 0)
            throw std::logic_error("pencil_fibration: cubic clearing failed");
        out.short_form.A = A_cl.num * (mpq_class(1) / A_cl.den.leading());
        out.short_form.B = B_cl.num * (mpq_class(1) / B_cl.den.leading());
        out.short_form = minimalize(out.short_form);
        out.has_two_torsion = false;
        return out;
    }
    throw std::invalid_argument("pencil_fibration: unsupported branch shape");
}

}  // namespace ellk3
