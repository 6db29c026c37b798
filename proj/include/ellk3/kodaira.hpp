#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellk3/lattice.hpp"

namespace ellk3 {

enum class FiberKind { In, InStar, II, III, IV, IVStar, IIIStar, IIStar };

// Kodaira type of a singular fiber; n is the index for I_n / I_n*
struct FiberType {
    FiberKind kind = FiberKind::In;
    int n = 1;

    static FiberType I(int n) { return {FiberKind::In, n}; }
    static FiberType Istar(int n) { return {FiberKind::InStar, n}; }
    static FiberType make(FiberKind k, int n = 0);

    bool operator==(const FiberType&) const = default;
    bool operator<(const FiberType& o) const;
};

FiberType parse_fiber(const std::string& s);  // "I12", "I4*", "III*", "II"
std::string fiber_name(const FiberType& f);

int components(const FiberType& f);
int euler_number(const FiberType& f);
mpz_class disc_order(const FiberType& f);  // |d(F)|, 1 for irreducible fibers
bool is_reducible(const FiberType& f);

// number of special curves per the admissibility table; III reports the
// interval {0,1} via (lo,hi)
std::pair<int, int> special_curve_count(const FiberType& f);

// negative definite root lattice of a reducible fiber, components
// Theta_1..Theta_m in the catalog's indexing (Theta_0 omitted)
Lattice fiber_root_lattice(const FiberType& f);

// finite abelian group attached to the fiber with the simple-component
// correspondence
struct ComponentGroup {
    std::vector<mpz_class> invariant_factors;
    std::vector<int> simple_components;            // Theta indices carrying elements
    std::vector<GroupElement> simple_elements;     // matching group elements

    GroupElement element_of(int theta) const;      // throws if not simple
    std::optional<int> component_of(const GroupElement& e) const;
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    int add_components(int t1, int t2) const;
    mpz_class element_order(const GroupElement& e) const;
    mpz_class order() const;
};

ComponentGroup component_group(const FiberType& f);

// contribution of a section through Theta_i to the height pairing
mpq_class height_contribution(const FiberType& f, int theta);

// Theta indices a k-torsion section may pass through (component order | k)
std::vector<int> torsion_components(const FiberType& f, const mpz_class& k);

// fiber-diagram symmetries fixing Theta_0, as permutations of the simple
// components (each entry maps old Theta index -> new Theta index)
std::vector<std::vector<std::pair<int, int>>> diagram_automorphisms(const FiberType& f);

}  // namespace ellk3
