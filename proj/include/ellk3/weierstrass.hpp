#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellk3/kodaira.hpp"
#include "ellk3/ratpoly.hpp"

namespace ellk3 {

// y^2 = x (x^2 + a(t) x + b(t)), the shape carrying the 2-torsion
// section t -> (0, 0)
struct TwoTorsionModel {
    RatPoly a, b;
};

// y^2 = x^3 + A(t) x + B(t)
struct ShortModel {
    RatPoly A, B;
};

ShortModel short_model(const TwoTorsionModel& m);
RatPoly discriminant(const ShortModel& m);  // -16 (4A^3 + 27B^2)
RatPoly discriminant(const TwoTorsionModel& m);

ShortModel minimalize(const ShortModel& m);
TwoTorsionModel minimalize(const TwoTorsionModel& m);
bool is_minimal(const ShortModel& m);

// one singular place of the fibration
struct FiberPlace {
    std::string factor;  // squarefree factor of Delta, or "infinity"
    int root_count;      // factor degree (1 for infinity)
    int v_a = 0, v_b = 0, v_delta = 0;
    FiberType type;
};

struct FiberReport {
    std::vector<FiberPlace> places;
    int euler = 0;

    // fiber multiset with multiplicities from root counts
    std::vector<std::pair<FiberType, int>> multiset() const;
    std::string summary() const;  // e.g. "2I4* + I2 + 2I1"
};

// Kodaira types from vanishing orders of (A, B, Delta); model must be
// minimal with deg A <= 8, deg B <= 12 (K3 bidegree)
FiberReport classify_fibers(const ShortModel& m);
FiberReport classify_fibers(const TwoTorsionModel& m);

// quotient by translation by (0,0) and the induced point map
struct IsogenyResult {
    TwoTorsionModel quotient;  // y^2 = x (x^2 - 2a x + a^2 - 4b)
};
IsogenyResult two_isogeny(const TwoTorsionModel& m);

// checks the point-map identity
//   X = (x^2 + a x + b)/x,  Y = y (x^2 - b)/x^2
// lands on the quotient curve, exactly
bool isogeny_identity_holds(const TwoTorsionModel& m);

// whether (0,0) is divisible by 2 in the Mordell-Weil group over Q(t):
// requires b = c^2 and a + 2c or a - 2c a square
bool has_four_torsion_over_two_torsion(const TwoTorsionModel& m);

// y^2 = x (x - r1)(x - r2): translate a 2-torsion point to the origin
TwoTorsionModel from_roots(const RatPoly& r1, const RatPoly& r2);
// the other two 2-torsion x-coordinates, when x^2 + a x + b splits
std::optional<std::pair<RatPoly, RatPoly>> split_two_torsion(const TwoTorsionModel& m);
// move the 2-torsion point (r, 0) to the origin
TwoTorsionModel translate_two_torsion(const TwoTorsionModel& m, const RatPoly& r);

// deterministic small-rational parameter assignment
struct SpecializeResult {
    std::vector<mpq_class> values;
    unsigned seed;
};
std::vector<mpq_class> seeded_rationals(unsigned seed, std::size_t count);

}  // namespace ellk3
