#pragma once

#include <optional>
#include <string>

#include "ellk3/mat.hpp"

namespace ellk3 {

// an integer lattice given by its Gram matrix
struct Lattice {
    ZMat gram;
    bool even = true;

    Lattice() = default;
    Lattice(ZMat g, bool even_declared = true);

    std::size_t rank() const { return gram.size(); }
};

// named constructors (standard Dynkin Gram matrices, positive definite)
Lattice lattice_U();
Lattice lattice_U_scaled(const mpz_class& n);
Lattice lattice_rank1(const mpz_class& k);  // <k>
Lattice lattice_A(int n);
Lattice lattice_D(int n);
Lattice lattice_E(int n);  // n in {6,7,8}

Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice twist(const Lattice& l, const mpz_class& n);  // L(n); n = 0 rejected

mpz_class determinant(const Lattice& l);
std::pair<int, int> signature(const Lattice& l);

// element of a discriminant group, as residues against the invariant factors
using GroupElement = ZVec;

struct DiscriminantGroup {
    std::vector<mpz_class> invariant_factors;  // d_1 | d_2 | ... , each > 1
    QMat generator_lifts;                      // row i: lift of generator i in L (x) Q
    ZMat gram;                                 // ambient Gram, for form values
    ZMat u_rows;                               // SNF row transforms for the kept factors

    std::size_t length() const { return invariant_factors.size(); }
    mpz_class order() const;

    GroupElement zero() const { return GroupElement(length(), mpz_class(0)); }
    GroupElement reduce(const GroupElement& e) const;
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement scale(const mpz_class& k, const GroupElement& a) const;
    bool is_zero(const GroupElement& e) const;

    QVec lift(const GroupElement& e) const;

    // quadratic form value in [0,2), defined for even lattices
    mpq_class q_value(const GroupElement& e) const;
    // bilinear form value in [0,1)
    mpq_class b_value(const GroupElement& a, const GroupElement& b) const;

    // class of a dual vector (given in L (x) Q coordinates, must pair
    // integrally with L)
    GroupElement class_of_dual(const QVec& v) const;

    std::vector<GroupElement> all_elements(std::size_t cap = (1u << 24)) const;
};

DiscriminantGroup discriminant_group(const Lattice& l);

struct TwoElementaryInvariants {
    int r = 0;
    int a = 0;
    int delta = 0;
    bool operator==(const TwoElementaryInvariants&) const = default;
};

std::optional<TwoElementaryInvariants> two_elementary_invariants(const Lattice& l);

// discriminant data of the overlattice glued along an isotropic subgroup:
// H^perp / H with the induced form
struct GluedGroup {
    std::vector<mpz_class> invariant_factors;
    std::vector<GroupElement> generator_reps;  // representatives in the parent group
    DiscriminantGroup parent;

    mpz_class order() const;
    mpq_class q_value(const GroupElement& e) const;
    std::vector<GroupElement> all_elements(std::size_t cap = (1u << 24)) const;
    // 0 when every quadratic value is integral, else 1
    int delta() const;
    bool is_two_elementary() const;
};

GluedGroup glue_overlattice(const DiscriminantGroup& a, const std::vector<GroupElement>& glue);

std::string format_group(const std::vector<mpz_class>& invariant_factors);

}  // namespace ellk3
