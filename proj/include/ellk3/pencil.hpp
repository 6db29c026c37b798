#pragma once

#include <optional>

#include "ellk3/plane_poly.hpp"
#include "ellk3/weierstrass.hpp"

namespace ellk3 {

// element of Q(t), reduced with monic denominator
struct RatFunc {
    RatPoly num, den;

    RatFunc() : num(), den(mpq_class(1)) {}
    RatFunc(RatPoly n) : num(std::move(n)), den(mpq_class(1)) {}
    RatFunc(RatPoly n, RatPoly d);

    bool is_zero() const { return num.is_zero(); }
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

// dense polynomial in x over Q(t)
using FieldPoly = std::vector<RatFunc>;

int fp_degree(const FieldPoly& p);
FieldPoly fp_mul(const FieldPoly& a, const FieldPoly& b);
FieldPoly fp_scale(const FieldPoly& a, const RatFunc& c);
FieldPoly fp_monic(const FieldPoly& a);
RatFunc fp_eval(const FieldPoly& p, const RatFunc& x);

struct PencilModel {
    bool has_two_torsion = false;
    TwoTorsionModel model;       // valid when has_two_torsion
    ShortModel short_form;       // always valid (derived or direct)
    int base_multiplicity = 0;   // multiplicity of the base point on the sextic
    int rational_roots = 0;      // linear factors available after reduction
};

// elliptic fibration induced by the pencil of lines through a singular
// point of the branch sextic; components given as polynomials in x, y, z
// with all parameters already instantiated
PencilModel pencil_fibration(const std::vector<MPoly>& components, const PolyParser& vars,
                             const std::vector<mpq_class>& base_point,
                             std::pair<int, int> root_pair = {0, 1});

}  // namespace ellk3
