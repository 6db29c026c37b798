#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellk3/kodaira.hpp"

namespace ellk3 {

// fiber configuration of an elliptic K3: large reducible fibers plus
// counts of I2/III and of irreducible singular fibers
struct FiberConfiguration {
    std::vector<FiberType> reducible;  // fibers with 3+ components (or II*)
    int m1 = 0;                        // # I2
    int m2 = 0;                        // # III
    int n1 = 0;                        // # I1
    int n2 = 0;                        // # II
    int rho = 0;                       // Picard number of the surface

    std::vector<FiberType> all_reducible() const;
    int euler_total() const;
    bool euler_closed() const { return euler_total() == 24; }
};

int shioda_tate_rank(const FiberConfiguration& config);

// a candidate torsion section: one component index per reducible fiber,
// aligned with all_reducible()
struct TorsionAssignment {
    std::vector<int> components;
    int intersection_with_zero = 0;
};

mpq_class height(const TorsionAssignment& t, const FiberConfiguration& config);
// height over a base with arithmetic genus chi (chi = 2 for K3, 1 rational)
mpq_class height_chi(const TorsionAssignment& t, const FiberConfiguration& config, int chi);

// torsion group described by invariant factors, e.g. {2}, {2,2}, {4}
struct TorsionShape {
    std::vector<int> factors;
    std::size_t nonzero_count() const;
    // all nonzero elements in a fixed enumeration order
    std::vector<std::vector<int>> nonzero_elements() const;
};

// a full torsion family: component pattern for every nonzero group element
struct AssignmentFamily {
    TorsionShape shape;
    std::vector<std::vector<int>> patterns;  // row per nonzero element

    bool operator==(const AssignmentFamily&) const = default;
};

// canonical key under fiber permutation within a type, per-fiber diagram
// automorphisms, and group automorphisms; an optional marked row is kept
// distinguishable
std::string canonical_family_key(const AssignmentFamily& family, const FiberConfiguration& config,
                                 int marked_row = -1);

// all height-zero torsion families realizing the group, canonicalized
std::vector<AssignmentFamily> torsion_assignment_search(const FiberConfiguration& config,
                                                        const TorsionShape& shape);

// extended search: height target 2*chi; optionally pin the first
// generator's pattern, or pin the pattern of twice the first generator
std::vector<AssignmentFamily> torsion_search_ex(const FiberConfiguration& config,
                                                const TorsionShape& shape, int chi,
                                                const std::vector<int>* pinned_double = nullptr,
                                                const std::vector<int>* pinned_gen = nullptr);

// discriminant group of the Neron-Severi lattice: fiber root lattices
// glued along the torsion sections
GluedGroup ns_discriminant_group(const FiberConfiguration& config, const AssignmentFamily& family);
DiscriminantGroup trivial_lattice_discriminant(const FiberConfiguration& config);
GroupElement glue_element_of_pattern(const FiberConfiguration& config,
                                     const DiscriminantGroup& tr,
                                     const std::vector<int>& pattern);

}  // namespace ellk3
