#pragma once

#include <optional>

#include "ellk3/mw.hpp"

namespace ellk3 {

// row of the two-reducible-fiber classification (cover involution acting
// on the base)
struct CaseARow {
    int r = 0;
    std::vector<FiberType> fibers;
    int mw_rank = 0;
    int m_plus_2n = 0;  // budget for I1/II fibers
    bool exists = true; // after the curated non-existence list
    std::vector<int> torsion_factors;   // {} trivial, {2}, {3}, {4}, {5}
    std::vector<int> torsion_pattern;   // generator components, when torsion is nontrivial
    bool morrison_nikulin = false;
};

std::vector<CaseARow> enumerate_case_a(int r);

// quotient of a case-a fibration under the cover involution (base change)
struct RationalQuotient {
    std::vector<FiberType> fibers;
    int mw_rank = 0;
};
RationalQuotient base_change_quotient(const CaseARow& row);

// row of the finite-Mordell-Weil classification (hyperelliptic case),
// normalized to m2 = n2 = 0
struct CaseBRow {
    FiberConfiguration config;
    TorsionShape mw;
    AssignmentFamily family;  // empty patterns for trivial torsion
    int c_exponent = 0;
};

std::vector<CaseBRow> enumerate_case_b(int r);

// quotient data under translation by one torsion section
struct QuotientRecord {
    FiberConfiguration config;            // quotient fibration, rho preserved
    std::vector<int> source_pattern;      // the section quotiented by
    AssignmentFamily family;              // quotient Mordell-Weil torsion
    int tprime_row = 0;                   // dual-section row inside family
    std::vector<mpz_class> ns_factors;    // NS discriminant group
    bool morrison_nikulin = false;
    std::optional<TwoElementaryInvariants> two_elementary;
};

QuotientRecord quotient_by_two_torsion(const FiberConfiguration& config,
                                       const AssignmentFamily& family, std::size_t element_index);

// canonical identity of a quotient record for table comparison
std::string quotient_record_key(const QuotientRecord& rec);
std::string case_b_row_key(const CaseBRow& row);

// invariants of a double cover branched along a reducible sextic
struct SexticInvariants {
    int r = 0, a = 0, k = 0, g = 0;
    bool consistent = true;
    std::string note;
};
SexticInvariants sextic_invariants(int alpha, int gamma, int nu, const std::vector<int>& genera);

}  // namespace ellk3
