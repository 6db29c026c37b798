#include "ellk3/kodaira.hpp"

#include <algorithm>
#include <map>

namespace ellk3 {

FiberType FiberType::make(FiberKind k, int n) {
    FiberType f{k, n};
    if (k == FiberKind::In && n < 1) throw std::invalid_argument("I_n needs n >= 1");
    if (k == FiberKind::InStar && n < 0) throw std::invalid_argument("I_n* needs n >= 0");
    if (k != FiberKind::In && k != FiberKind::InStar) f.n = 0;
    return f;
}

bool FiberType::operator<(const FiberType& o) const {
    if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
    return n < o.n;
}

FiberType parse_fiber(const std::string& s) {
    if (s == "II") return FiberType::make(FiberKind::II);
    if (s == "III") return FiberType::make(FiberKind::III);
    if (s == "IV") return FiberType::make(FiberKind::IV);
    if (s == "II*") return FiberType::make(FiberKind::IIStar);
    if (s == "III*") return FiberType::make(FiberKind::IIIStar);
    if (s == "IV*") return FiberType::make(FiberKind::IVStar);
    if (s.size() >= 2 && s[0] == 'I') {
        bool star = s.back() == '*';
        std::string num = s.substr(1, s.size() - 1 - (star ? 1 : 0));
        if (!num.empty() && num.find_first_not_of("0123456789") == std::string::npos) {
            int n = std::stoi(num);
            return star ? FiberType::Istar(n) : FiberType::I(n);
        }
    }
    throw std::invalid_argument("unknown fiber symbol: " + s);
}

std::string fiber_name(const FiberType& f) {
    switch (f.kind) {
        case FiberKind::In: return "I" + std::to_string(f.n);
        case FiberKind::InStar: return "I" + std::to_string(f.n) + "*";
        case FiberKind::II: return "II";
        case FiberKind::III: return "III";
        case FiberKind::IV: return "IV";
        case FiberKind::IVStar: return "IV*";
        case FiberKind::IIIStar: return "III*";
        case FiberKind::IIStar: return "II*";
    }
    return "?";
}

int components(const FiberType& f) {
    switch (f.kind) {
        case FiberKind::In: return f.n;
        case FiberKind::InStar: return f.n + 5;
        case FiberKind::II: return 1;
        case FiberKind::III: return 2;
        case FiberKind::IV: return 3;
        case FiberKind::IVStar: return 7;
        case FiberKind::IIIStar: return 8;
        case FiberKind::IIStar: return 9;
    }
    return 0;
}

int euler_number(const FiberType& f) {
    switch (f.kind) {
        case FiberKind::In: return f.n;
        case FiberKind::InStar: return f.n + 6;
        case FiberKind::II: return 2;
        case FiberKind::III: return 3;
        case FiberKind::IV: return 4;
        case FiberKind::IVStar: return 8;
        case FiberKind::IIIStar: return 9;
        case FiberKind::IIStar: return 10;
    }
    return 0;
}

mpz_class disc_order(const FiberType& f) {
    switch (f.kind) {
        case FiberKind::In: return f.n;
        case FiberKind::InStar: return 4;
        case FiberKind::II: return 1;
        case FiberKind::III: return 2;
        case FiberKind::IV: return 3;
        case FiberKind::IVStar: return 3;
        case FiberKind::IIIStar: return 2;
        case FiberKind::IIStar: return 1;
    }
    return 1;
}

bool is_reducible(const FiberType& f) { return components(f) > 1; }

std::pair<int, int> special_curve_count(const FiberType& f) {
    switch (f.kind) {
        case FiberKind::In:
            if (f.n % 2 != 0) throw std::invalid_argument("special_curve_count: odd I_n excluded");
            if (f.n == 2) return {0, 0};
            return {f.n / 2, f.n / 2};
        case FiberKind::InStar:
            if (f.n % 2 != 0) throw std::invalid_argument("special_curve_count: odd I_n* excluded");
            return {f.n / 2 + 1, f.n / 2 + 1};
        case FiberKind::III: return {0, 1};
        case FiberKind::IVStar: return {4, 4};
        case FiberKind::IIIStar: return {3, 3};
        case FiberKind::IIStar: return {4, 4};
        default: throw std::invalid_argument("special_curve_count: fiber type excluded");
    }
}

Lattice fiber_root_lattice(const FiberType& f) {
    if (!is_reducible(f)) throw std::invalid_argument("fiber_root_lattice: irreducible fiber");
    Lattice pos = [&] {
        switch (f.kind) {
            case FiberKind::In: return lattice_A(f.n - 1);
            case FiberKind::InStar: {
                // Theta_1 forks off Theta_2, chain Theta_2..Theta_{n+2},
                // far forks Theta_{n+3}, Theta_{n+4}
                int m = f.n + 4;
                ZMat g = zmat(m, m);
                auto link = [&](int a, int b) { g[a - 1][b - 1] = -1; g[b - 1][a - 1] = -1; };
                for (int i = 1; i <= m; ++i) g[i - 1][i - 1] = 2;
                link(1, 2);
                for (int i = 2; i + 1 <= f.n + 2; ++i) link(i, i + 1);
                link(f.n + 2, f.n + 3);
                link(f.n + 2, f.n + 4);
                return Lattice(g);
            }
            case FiberKind::III: return lattice_A(1);
            case FiberKind::IV: return lattice_A(2);
            case FiberKind::IVStar: {
                // chain Theta_1..Theta_4, Theta_5 on Theta_2, Theta_6 on Theta_5
                ZMat g = zmat(6, 6);
                auto link = [&](int a, int b) { g[a - 1][b - 1] = -1; g[b - 1][a - 1] = -1; };
                for (int i = 1; i <= 6; ++i) g[i - 1][i - 1] = 2;
                link(1, 2); link(2, 3); link(3, 4); link(2, 5); link(5, 6);
                return Lattice(g);
            }
            case FiberKind::IIIStar: {
                // chain Theta_1..Theta_6, Theta_7 on Theta_3
                ZMat g = zmat(7, 7);
                auto link = [&](int a, int b) { g[a - 1][b - 1] = -1; g[b - 1][a - 1] = -1; };
                for (int i = 1; i <= 7; ++i) g[i - 1][i - 1] = 2;
                link(1, 2); link(2, 3); link(3, 4); link(4, 5); link(5, 6); link(3, 7);
                return Lattice(g);
            }
            case FiberKind::IIStar: {
                // chain Theta_1..Theta_7, Theta_8 on Theta_5
                ZMat g = zmat(8, 8);
                auto link = [&](int a, int b) { g[a - 1][b - 1] = -1; g[b - 1][a - 1] = -1; };
                for (int i = 1; i <= 8; ++i) g[i - 1][i - 1] = 2;
                link(1, 2); link(2, 3); link(3, 4); link(4, 5); link(5, 6); link(6, 7); link(5, 8);
                return Lattice(g);
            }
            default: throw std::invalid_argument("fiber_root_lattice: unsupported fiber");
        }
    }();
    return twist(pos, -1);
}

GroupElement ComponentGroup::element_of(int theta) const {
    for (std::size_t i = 0; i < simple_components.size(); ++i)
        if (simple_components[i] == theta) return simple_elements[i];
    throw std::invalid_argument("component " + std::to_string(theta) + " is not simple");
}

std::optional<int> ComponentGroup::component_of(const GroupElement& e) const {
    for (std::size_t i = 0; i < simple_elements.size(); ++i)
        if (simple_elements[i] == e) return simple_components[i];
    return std::nullopt;
}

GroupElement ComponentGroup::add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r(invariant_factors.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        mpz_class s = a[i] + b[i];
        mpz_fdiv_r(r[i].get_mpz_t(), s.get_mpz_t(), invariant_factors[i].get_mpz_t());
    }
    return r;
}

GroupElement ComponentGroup::neg(const GroupElement& a) const {
    GroupElement r(invariant_factors.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        mpz_class s = -a[i];
        mpz_fdiv_r(r[i].get_mpz_t(), s.get_mpz_t(), invariant_factors[i].get_mpz_t());
    }
    return r;
}

int ComponentGroup::add_components(int t1, int t2) const {
    auto c = component_of(add(element_of(t1), element_of(t2)));
    if (!c) throw std::logic_error("component sum is not a simple component");
    return *c;
}

mpz_class ComponentGroup::element_order(const GroupElement& e) const {
    mpz_class o = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), e[i].get_mpz_t(), invariant_factors[i].get_mpz_t());
        mpz_class oi = invariant_factors[i] / g;
        mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), oi.get_mpz_t());
    }
    return o;
}

mpz_class ComponentGroup::order() const {
    mpz_class o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
}

ComponentGroup component_group(const FiberType& f) {
    ComponentGroup g;
    auto put = [&](int theta, std::initializer_list<long> e) {
        g.simple_components.push_back(theta);
        GroupElement v;
        for (long x : e) v.push_back(x);
        g.simple_elements.push_back(v);
    };
    switch (f.kind) {
        case FiberKind::In:
            if (f.n > 1) {
                g.invariant_factors = {f.n};
                for (int i = 0; i < f.n; ++i) put(i, {i});
            } else {
                put(0, {});
            }
            break;
        case FiberKind::InStar:
            if (f.n % 2 == 0) {
                g.invariant_factors = {2, 2};
                put(0, {0, 0});
                put(1, {1, 0});
                put(f.n + 3, {0, 1});
                put(f.n + 4, {1, 1});
            } else {
                g.invariant_factors = {4};
                put(0, {0});
                put(1, {2});
                put(f.n + 3, {1});
                put(f.n + 4, {3});
            }
            break;
        case FiberKind::II:
            put(0, {});
            break;
        case FiberKind::III:
            g.invariant_factors = {2};
            put(0, {0});
            put(1, {1});
            break;
        case FiberKind::IV:
            g.invariant_factors = {3};
            put(0, {0});
            put(1, {1});
            put(2, {2});
            break;
        case FiberKind::IVStar:
            g.invariant_factors = {3};
            put(0, {0});
            put(4, {1});
            put(6, {2});
            break;
        case FiberKind::IIIStar:
            g.invariant_factors = {2};
            put(0, {0});
            put(6, {1});
            break;
        case FiberKind::IIStar:
            put(0, {});
            break;
    }
    return g;
}

mpq_class height_contribution(const FiberType& f, int theta) {
    if (theta == 0) return 0;
    switch (f.kind) {
        case FiberKind::In:
            if (theta < 0 || theta >= f.n) throw std::invalid_argument("height_contribution: bad component");
            return mpq_class(mpz_class(theta) * mpz_class(f.n - theta), mpz_class(f.n));
        case FiberKind::InStar:
            if (theta == 1) return 1;
            if (theta == f.n + 3 || theta == f.n + 4) return mpq_class(4 + f.n, 4);
            throw std::invalid_argument("height_contribution: component not simple");
        case FiberKind::III:
            if (theta == 1) return mpq_class(1, 2);
            throw std::invalid_argument("height_contribution: component not simple");
        case FiberKind::IV:
            if (theta == 1 || theta == 2) return mpq_class(2, 3);
            throw std::invalid_argument("height_contribution: component not simple");
        case FiberKind::IVStar:
            if (theta == 4 || theta == 6) return mpq_class(4, 3);
            throw std::invalid_argument("height_contribution: component not simple");
        case FiberKind::IIIStar:
            if (theta == 6) return mpq_class(3, 2);
            throw std::invalid_argument("height_contribution: component not simple");
        default:
            throw std::invalid_argument("height_contribution: component not simple");
    }
}

std::vector<int> torsion_components(const FiberType& f, const mpz_class& k) {
    ComponentGroup g = component_group(f);
    std::vector<int> out;
    for (std::size_t i = 0; i < g.simple_components.size(); ++i) {
        mpz_class o = g.element_order(g.simple_elements[i]);
        if (k % o == 0) out.push_back(g.simple_components[i]);
    }
    return out;
}

std::vector<std::vector<std::pair<int, int>>> diagram_automorphisms(const FiberType& f) {
    std::vector<std::vector<std::pair<int, int>>> auts;
    auts.push_back({});  // identity
    switch (f.kind) {
        case FiberKind::In:
            if (f.n > 2) {
                std::vector<std::pair<int, int>> refl;
                for (int i = 1; i < f.n; ++i)
                    if (i != f.n - i) refl.push_back({i, f.n - i});
                auts.push_back(refl);
            }
            break;
        case FiberKind::InStar:
            if (f.n == 0) {
                // S3 on the three nonzero legs 1, 3, 4
                int legs[3] = {1, 3, 4};
                std::sort(std::begin(legs), std::end(legs));
                std::vector<int> perm = {0, 1, 2};
                while (std::next_permutation(perm.begin(), perm.end())) {
                    std::vector<std::pair<int, int>> a;
                    for (int i = 0; i < 3; ++i)
                        if (legs[perm[i]] != legs[i]) a.push_back({legs[i], legs[perm[i]]});
                    auts.push_back(a);
                }
            } else {
                auts.push_back({{f.n + 3, f.n + 4}, {f.n + 4, f.n + 3}});
            }
            break;
        case FiberKind::IV:
            auts.push_back({{1, 2}, {2, 1}});
            break;
        case FiberKind::IVStar:
            auts.push_back({{4, 6}, {6, 4}});
            break;
        default:
            break;
    }
    return auts;
}

}  // namespace ellk3
