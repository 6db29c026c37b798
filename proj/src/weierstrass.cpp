#include "ellk3/weierstrass.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ellk3 {

ShortModel short_model(const TwoTorsionModel& m) {
    // complete the cube in x^3 + a x^2 + b x
    RatPoly a2 = m.a * m.a;
    RatPoly A = m.b - a2 * mpq_class(1, 3);
    RatPoly B = m.a * a2 * mpq_class(2, 27) - m.a * m.b * mpq_class(1, 3);
    return {A, B};
}

RatPoly discriminant(const ShortModel& m) {
    return (m.A * m.A * m.A * mpq_class(4) + m.B * m.B * mpq_class(27)) * mpq_class(-16);
}

RatPoly discriminant(const TwoTorsionModel& m) {
    // 16 b^2 (a^2 - 4b)
    RatPoly d = m.a * m.a - m.b * mpq_class(4);
    return m.b * m.b * d * mpq_class(16);
}

namespace {

// candidate scaling factors C: squarefree factors of the relevant gcd
std::vector<RatPoly> scaling_candidates(const ShortModel& m) {
    RatPoly probe;
    if (!m.A.is_zero() && !m.B.is_zero()) probe = gcd(m.A, m.B);
    else if (!m.A.is_zero()) probe = m.A;
    else probe = m.B;
    std::vector<RatPoly> cands;
    for (const auto& f : squarefree_decomposition(probe)) cands.push_back(f.factor);
    return cands;
}

}  // namespace

ShortModel minimalize(const ShortModel& m0) {
    ShortModel m = m0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : scaling_candidates(m)) {
            if (c.degree() < 1) continue;
            RatPoly c4 = c.pow(4), c6 = c.pow(6);
            bool okA = m.A.is_zero() || divides(c4, m.A);
            bool okB = m.B.is_zero() || divides(c6, m.B);
            if (okA && okB) {
                if (!m.A.is_zero()) m.A = exact_div(m.A, c4);
                if (!m.B.is_zero()) m.B = exact_div(m.B, c6);
                changed = true;
                break;
            }
        }
    }
    return m;
}

TwoTorsionModel minimalize(const TwoTorsionModel& m0) {
    TwoTorsionModel m = m0;
    bool changed = true;
    while (changed) {
        changed = false;
        RatPoly probe;
        if (!m.a.is_zero() && !m.b.is_zero()) probe = gcd(m.a, m.b);
        else if (!m.a.is_zero()) probe = m.a;
        else probe = m.b;
        for (const auto& f : squarefree_decomposition(probe)) {
            const RatPoly& c = f.factor;
            if (c.degree() < 1) continue;
            RatPoly c2 = c * c, c4 = c2 * c2;
            bool oka = m.a.is_zero() || divides(c2, m.a);
            bool okb = m.b.is_zero() || divides(c4, m.b);
            if (oka && okb) {
                if (!m.a.is_zero()) m.a = exact_div(m.a, c2);
                if (!m.b.is_zero()) m.b = exact_div(m.b, c4);
                changed = true;
                break;
            }
        }
    }
    return m;
}

bool is_minimal(const ShortModel& m) {
    for (const auto& c : scaling_candidates(m)) {
        if (c.degree() < 1) continue;
        bool okA = m.A.is_zero() || divides(c.pow(4), m.A);
        bool okB = m.B.is_zero() || divides(c.pow(6), m.B);
        if (okA && okB) return false;
    }
    return true;
}

namespace {

FiberType type_from_orders(int va, int vb, int vd) {
    if (vd == 0) throw std::logic_error("type_from_orders: good reduction");
    if (va == 0) return FiberType::I(vd);
    if (vb == 1 && vd == 2) return FiberType::make(FiberKind::II);
    if (va == 1 && vd == 3) return FiberType::make(FiberKind::III);
    if (vb == 2 && vd == 4) return FiberType::make(FiberKind::IV);
    if (vd == 6 && va >= 2 && vb >= 3 && (va == 2 || vb == 3)) return FiberType::Istar(0);
    if (va == 2 && vb == 3 && vd > 6) return FiberType::Istar(vd - 6);
    if (vb == 4 && vd == 8) return FiberType::make(FiberKind::IVStar);
    if (va == 3 && vd == 9) return FiberType::make(FiberKind::IIIStar);
    if (vb == 5 && vd == 10) return FiberType::make(FiberKind::IIStar);
    throw std::domain_error("type_from_orders: no Kodaira type for (" + std::to_string(va) + "," +
                            std::to_string(vb) + "," + std::to_string(vd) + ")");
}

// common refinement: split g (squarefree) into pieces of constant
// multiplicity inside p
std::vector<std::pair<RatPoly, int>> split_by_multiplicity(const RatPoly& g, const RatPoly& p) {
    std::vector<std::pair<RatPoly, int>> out;
    if (p.is_zero()) {
        out.push_back({g, -1});  // -1 encodes infinite order
        return out;
    }
    RatPoly rest = g;
    RatPoly q = p;
    int level = 0;
    while (rest.degree() > 0) {
        RatPoly common = gcd(rest, q);
        RatPoly zero_part = exact_div(rest, common);  // multiplicity exactly `level`
        if (zero_part.degree() > 0) out.push_back({zero_part, level});
        rest = common;
        if (rest.degree() == 0) break;
        q = exact_div(q, rest.pow(1));
        // recompute: factors of `rest` have multiplicity > level in p; peel one
        ++level;
    }
    return out;
}

}  // namespace

std::vector<std::pair<FiberType, int>> FiberReport::multiset() const {
    std::map<FiberType, int> acc;
    for (const auto& p : places) acc[p.type] += p.root_count;
    std::vector<std::pair<FiberType, int>> out(acc.begin(), acc.end());
    // largest fibers first
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int ea = euler_number(a.first), eb = euler_number(b.first);
        if (ea != eb) return ea > eb;
        return fiber_name(a.first) < fiber_name(b.first);
    });
    return out;
}

std::string FiberReport::summary() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [f, k] : multiset()) {
        if (!first) os << " + ";
        first = false;
        if (k > 1) os << k;
        os << fiber_name(f);
    }
    return os.str();
}

FiberReport classify_fibers(const ShortModel& m0) {
    ShortModel m = m0;
    if (!is_minimal(m))
        throw std::invalid_argument("classify_fibers: model not minimal, minimalize first");
    RatPoly delta = discriminant(m);
    if (delta.is_zero()) throw std::invalid_argument("classify_fibers: discriminant vanishes identically");
    if (m.A.degree() > 8 || m.B.degree() > 12 || delta.degree() > 24)
        throw std::invalid_argument("classify_fibers: degrees exceed the K3 bidegree (8, 12)");

    FiberReport rep;
    auto add_place = [&](const RatPoly& factor, int va, int vb, int vd, bool infinity) {
        if (vd == 0) return;
        FiberPlace pl;
        pl.factor = infinity ? "infinity" : factor.str();
        pl.root_count = infinity ? 1 : factor.degree();
        pl.v_a = va;
        pl.v_b = vb;
        pl.v_delta = vd;
        pl.type = type_from_orders(va, vb, vd);
        rep.places.push_back(pl);
        rep.euler += euler_number(pl.type) * pl.root_count;
    };

    for (const auto& [g, vd] : squarefree_decomposition(delta)) {
        // refine g by the multiplicity in A, then in B
        for (const auto& [ga, va] : split_by_multiplicity(g, m.A)) {
            for (const auto& [gb, vb] : split_by_multiplicity(ga, m.B)) {
                int va_eff = va < 0 ? 1000 : va;
                int vb_eff = vb < 0 ? 1000 : vb;
                add_place(gb, va_eff, vb_eff, vd, false);
            }
        }
    }
    // the place at infinity, against homogeneous degrees (8, 12, 24)
    {
        RatPoly ra = m.A.reverse(8), rb = m.B.reverse(12), rd = delta.reverse(24);
        int va = m.A.is_zero() ? 1000 : ra.valuation();
        int vb = m.B.is_zero() ? 1000 : rb.valuation();
        int vd = rd.valuation();
        if (vd > 0) add_place(RatPoly(), va, vb, vd, true);
    }
    if (rep.euler != 24)
        throw std::logic_error("classify_fibers: Euler numbers sum to " + std::to_string(rep.euler) +
                               ", expected 24");
    return rep;
}

FiberReport classify_fibers(const TwoTorsionModel& m) {
    return classify_fibers(minimalize(short_model(minimalize(m))));
}

IsogenyResult two_isogeny(const TwoTorsionModel& m) {
    if (m.b.is_zero()) throw std::invalid_argument("two_isogeny: b = 0, torsion point degenerate");
    RatPoly disc2 = m.a * m.a - m.b * mpq_class(4);
    if (disc2.is_zero()) throw std::invalid_argument("two_isogeny: a^2 - 4b = 0, curve degenerate");
    IsogenyResult r;
    r.quotient.a = m.a * mpq_class(-2);
    r.quotient.b = disc2;
    return r;
}

bool isogeny_identity_holds(const TwoTorsionModel& m) {
    // work in Q(t)[x, y] modulo y^2 = x^3 + a x^2 + b x, clearing x powers:
    //   (Y x^2)^2 = y^2 (x^2 - b)^2
    //   (X x)     = x^2 + a x + b
    // the identity to verify is
    //   y^2 (x^2-b)^2 x  ==  (x^2+ax+b)^3 - 2a x (x^2+ax+b)^2 + (a^2-4b) x^2 (x^2+ax+b)
    // after substituting y^2.
    // Both sides are polynomials in Q(t)[x]; equality must be exact.
    // Representation: polynomials in x with RatPoly (in t) coefficients.
    using XPoly = std::vector<RatPoly>;
    auto mul = [](const XPoly& p, const XPoly& q) {
        XPoly r(p.size() + q.size() - 1);
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) r[i + j] = r[i + j] + p[i] * q[j];
        return r;
    };
    auto sub = [](XPoly p, const XPoly& q) {
        p.resize(std::max(p.size(), q.size()));
        for (std::size_t i = 0; i < q.size(); ++i) p[i] = p[i] - q[i];
        return p;
    };
    auto scale = [](XPoly p, const RatPoly& c) {
        for (auto& e : p) e = e * c;
        return p;
    };
    RatPoly one(mpq_class(1));
    XPoly y2 = {RatPoly(), m.b, m.a, one};              // x^3 + a x^2 + b x
    XPoly x2mb = {-m.b, RatPoly(), one};               // x^2 - b
    XPoly u = {m.b, m.a, one};                          // x^2 + a x + b
    XPoly x = {RatPoly(), one};
    // multiply Y^2 = X^3 - 2a X^2 + (a^2-4b) X through by x^4
    XPoly lhs = mul(y2, mul(x2mb, x2mb));
    XPoly u2 = mul(u, u);
    XPoly rhs = mul(mul(u2, u), x);
    rhs = sub(rhs, scale(mul(mul(x, x), u2), m.a * mpq_class(2)));
    RatPoly a2m4b = m.a * m.a - m.b * mpq_class(4);
    XPoly corr = scale(mul(mul(mul(x, x), x), u), a2m4b);
    rhs.resize(std::max(rhs.size(), corr.size()));
    for (std::size_t i = 0; i < corr.size(); ++i) rhs[i] = rhs[i] + corr[i];
    XPoly diff = sub(lhs, rhs);
    for (const auto& c : diff)
        if (!c.is_zero()) return false;
    return true;
}

bool has_four_torsion_over_two_torsion(const TwoTorsionModel& m) {
    auto c = poly_sqrt(m.b);
    if (!c) return false;
    for (int sgn : {1, -1}) {
        RatPoly cand = m.a + *c * mpq_class(2 * sgn);
        if (poly_sqrt(cand)) return true;
    }
    return false;
}

TwoTorsionModel from_roots(const RatPoly& r1, const RatPoly& r2) {
    TwoTorsionModel m;
    m.a = -(r1 + r2);
    m.b = r1 * r2;
    return m;
}

std::optional<std::pair<RatPoly, RatPoly>> split_two_torsion(const TwoTorsionModel& m) {
    // roots of x^2 + a x + b rational iff a^2 - 4b is a square
    RatPoly d = m.a * m.a - m.b * mpq_class(4);
    auto s = poly_sqrt(d);
    if (!s) return std::nullopt;
    RatPoly r1 = (-m.a + *s) * mpq_class(1, 2);
    RatPoly r2 = (-m.a - *s) * mpq_class(1, 2);
    return std::make_pair(r1, r2);
}

TwoTorsionModel translate_two_torsion(const TwoTorsionModel& m, const RatPoly& r) {
    // x -> x + r where (r, 0) is 2-torsion: r^2 + a r + b = 0 required
    RatPoly check = r * r + m.a * r + m.b;
    if (!check.is_zero()) throw std::invalid_argument("translate_two_torsion: point not on the curve");
    TwoTorsionModel out;
    out.a = m.a + r * mpq_class(3);
    out.b = r * r * mpq_class(3) + m.a * r * mpq_class(2) + m.b;
    return out;
}

std::vector<mpq_class> seeded_rationals(unsigned seed, std::size_t count) {
    // xorshift-style deterministic stream of small rationals
    std::vector<mpq_class> out;
    unsigned state = seed * 2654435761u + 1013904223u;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 17;
        state ^= state << 5;
        return state;
    };
    for (std::size_t i = 0; i < count; ++i) {
        long num = static_cast<long>(next() % 19) - 9;
        long den = static_cast<long>(next() % 3) + 1;
        if (num == 0) num = 2 + static_cast<long>(i);
        out.push_back(mpq_class(num, den));
    }
    return out;
}

}  // namespace ellk3
