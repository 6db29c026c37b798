#include "ellk3/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ellk3 {

std::vector<CaseARow> enumerate_case_a(int r) {
    if (r < 11 || r > 20) throw std::invalid_argument("enumerate_case_a: r must be in 11..20");
    std::vector<CaseARow> rows;
    auto push = [&](std::vector<FiberType> fibers, int rank, int m2n) {
        CaseARow row;
        row.r = r;
        row.fibers = std::move(fibers);
        row.mw_rank = rank;
        row.m_plus_2n = m2n;
        rows.push_back(row);
    };
    // two fibers I_{2k1} + I_{2k2}, k1 + k2 = r - 10
    for (int k1 = 1; 2 * k1 <= r - 10; ++k1) {
        int k2 = r - 10 - k1;
        if (k1 > k2) break;
        push({FiberType::I(2 * k1), FiberType::I(2 * k2)}, 20 - r, 44 - 2 * r);
    }
    // IV* + I_{2k}, k = r - 14
    if (r >= 15) {
        int k = r - 14;
        push({FiberType::make(FiberKind::IVStar), FiberType::I(2 * k)}, 21 - r, 16 - 2 * k);
    }
    if (r == 18) push({FiberType::make(FiberKind::IVStar), FiberType::make(FiberKind::IVStar)}, 4, 8);

    // curated non-existence at r = 20 (the square test kills I14+I6 and
    // I12+I8; IV*+I12 is excluded as data)
    for (auto& row : rows) {
        if (r != 20) continue;
        auto name = [&](int i) { return fiber_name(row.fibers[i]); };
        std::string key = name(0) + "+" + name(1);
        if (key == "I6+I14" || key == "I8+I12" || key == "IV*+I12") row.exists = false;
    }

    // torsion and Morrison-Nikulin flags
    for (auto& row : rows) {
        FiberConfiguration cfg;
        cfg.reducible = row.fibers;
        cfg.rho = r;
        // 2-torsion: height filter upstairs plus the descent filter through
        // the base change
        auto two_up = torsion_search_ex(cfg, TorsionShape{{2}}, 2);
        bool two_ok = false;
        std::vector<int> two_pattern;
        if (!two_up.empty()) {
            RationalQuotient down = base_change_quotient(row);
            FiberConfiguration dcfg;
            for (const auto& f : down.fibers)
                if (is_reducible(f)) dcfg.reducible.push_back(f);
            dcfg.rho = 10;
            auto two_down = torsion_search_ex(dcfg, TorsionShape{{2}}, 1);
            if (!two_down.empty()) {
                two_ok = true;
                two_pattern = two_up.front().patterns.front();
            }
        }
        if (two_ok) {
            row.torsion_factors = {2};
            row.torsion_pattern = two_pattern;
        }
        if (r == 20 && row.exists && row.fibers[0].kind == FiberKind::In) {
            // rank zero: the full torsion order is pinned by the square test
            mpz_class dtr = disc_order(row.fibers[0]) * disc_order(row.fibers[1]);
            mpz_class mw2 = dtr / 4;  // d(NS) = 2^(22-r) = 4
            for (int k : {5, 4, 3}) {
                if (mw2 == k * k) {
                    auto fams = torsion_search_ex(cfg, TorsionShape{{k}}, 2);
                    if (fams.empty()) throw std::logic_error("enumerate_case_a: torsion not realizable");
                    row.torsion_factors = {k};
                    row.torsion_pattern = fams.front().patterns.front();
                }
            }
        }
        // a 2-torsion section through Theta_8 of an I16 fiber marks a
        // Morrison-Nikulin involution
        if (two_ok) {
            auto fibers = cfg.all_reducible();
            for (std::size_t i = 0; i < fibers.size(); ++i)
                if (fibers[i] == FiberType::I(16) && two_pattern[i] == 8) row.morrison_nikulin = true;
        }
    }
    return rows;
}

RationalQuotient base_change_quotient(const CaseARow& row) {
    if (row.m_plus_2n % 2 != 0)
        throw std::invalid_argument("base_change_quotient: odd irreducible-fiber budget");
    RationalQuotient q;
    for (const auto& f : row.fibers) {
        if (f.kind == FiberKind::In) {
            if (f.n % 2 != 0) throw std::invalid_argument("base_change_quotient: odd I_n fiber");
            q.fibers.push_back(FiberType::I(f.n / 2));
        } else if (f.kind == FiberKind::IVStar) {
            q.fibers.push_back(FiberType::make(FiberKind::IV));
        } else {
            throw std::invalid_argument("base_change_quotient: unsupported fiber");
        }
    }
    int s = 0;
    for (const auto& f : q.fibers) s += components(f) - 1;
    q.mw_rank = 10 - 2 - s;
    return q;
}

std::vector<CaseBRow> enumerate_case_b(int r) {
    if (r < 11 || r > 20) throw std::invalid_argument("enumerate_case_b: r must be in 11..20");
    std::vector<CaseBRow> rows;
    int s_budget = r - 11;
    if (s_budget < 0) return rows;
    int hmax = std::min(r - 11, r / 2 - 3);

    // candidate large fibers with their bookkeeping
    struct Big {
        FiberType f;
        int rminus1, s, euler, c_exp;
    };
    std::vector<Big> cands;
    cands.push_back({FiberType::make(FiberKind::IIStar), 8, 4, 10, 0});
    cands.push_back({FiberType::make(FiberKind::IIIStar), 7, 3, 9, 1});
    for (int h = 0; h <= hmax; ++h)
        cands.push_back({FiberType::Istar(2 * h), 2 * h + 4, h + 1, 2 * h + 6, 2});

    std::vector<std::size_t> pick;
    std::function<void(std::size_t, int, int, int, int)> rec = [&](std::size_t from, int rsum,
                                                                   int ssum, int esum, int cexp) {
        // close the configuration with m1 copies of I2
        int m1 = (r - 2) - rsum;
        if (m1 >= 0 && ssum <= s_budget) {
            int n1 = 24 - esum - 2 * m1;
            int c = cexp + m1;
            if (n1 >= 0 && (c == 22 - r || c == 24 - r || c == 26 - r)) {
                FiberConfiguration cfg;
                for (auto i : pick) cfg.reducible.push_back(cands[i].f);
                cfg.m1 = m1;
                cfg.n1 = n1;
                cfg.rho = r;
                TorsionShape shape;
                if (c == 24 - r) shape.factors = {2};
                else if (c == 26 - r) shape.factors = {2, 2};
                auto fams = torsion_search_ex(cfg, shape, 2);
                for (const auto& fam : fams) {
                    CaseBRow row;
                    row.config = cfg;
                    row.mw = shape;
                    row.family = fam;
                    row.c_exponent = c;
                    rows.push_back(row);
                }
            }
        }
        for (std::size_t i = from; i < cands.size(); ++i) {
            const Big& b = cands[i];
            if (rsum + b.rminus1 > r - 2) continue;
            if (ssum + b.s > s_budget) continue;
            if (esum + b.euler > 24) continue;
            pick.push_back(i);
            rec(i, rsum + b.rminus1, ssum + b.s, esum + b.euler, cexp + b.c_exp);
            pick.pop_back();
        }
    };
    rec(0, 0, 0, 0, 0);

    // canonical order: by fiber list, then torsion size, then family key
    std::sort(rows.begin(), rows.end(), [](const CaseBRow& a, const CaseBRow& b) {
        return case_b_row_key(a) < case_b_row_key(b);
    });
    return rows;
}

std::string case_b_row_key(const CaseBRow& row) {
    std::ostringstream os;
    std::vector<std::string> names;
    for (const auto& f : row.config.reducible) names.push_back(fiber_name(f));
    std::sort(names.begin(), names.end());
    for (const auto& n : names) os << n << "+";
    os << "m" << row.config.m1 << "n" << row.config.n1 << "|";
    for (int f : row.mw.factors) os << f << ",";
    os << "|" << (row.mw.factors.empty() ? std::string("-")
                                         : canonical_family_key(row.family, row.config));
    return os.str();
}

namespace {

// fiber image under the translation, with the component met by the dual
// section on the image fiber
struct FiberImage {
    FiberType type;
    int dual_component;
};

FiberImage quotient_fiber(const FiberType& f, int comp) {
    switch (f.kind) {
        case FiberKind::In:
            if (comp == 0) return {FiberType::I(2 * f.n), f.n};
            if (f.n % 2 == 0 && comp == f.n / 2) {
                if (f.n / 2 >= 2) return {FiberType::I(f.n / 2), 0};
                return {FiberType::I(1), 0};
            }
            break;
        case FiberKind::InStar:
            if (comp == 1) return {FiberType::Istar(2 * f.n), 2 * f.n + 3};
            if (comp == f.n + 3 || comp == f.n + 4) {
                if (f.n % 2 != 0) break;
                return {FiberType::Istar(f.n / 2), 1};
            }
            break;
        case FiberKind::IIIStar:
            if (comp == 6) return {FiberType::make(FiberKind::IIIStar), 6};
            break;
        case FiberKind::III:
            if (comp == 1) return {FiberType::make(FiberKind::III), 1};
            break;
        default:
            break;
    }
    throw std::invalid_argument("quotient_fiber: section through " + fiber_name(f) + " component " +
                                std::to_string(comp) + " is not a 2-torsion configuration");
}

bool four_torsion_rejected(const FiberConfiguration& cfg, const std::vector<int>& tprime) {
    // the two-I1*-two-I4 quotients carry no 4-torsion (checked on the
    // explicit equations); every other candidate in range is genuine
    auto fibers = cfg.all_reducible();
    std::multiset<std::string> names;
    for (const auto& f : fibers) names.insert(fiber_name(f));
    if (names != std::multiset<std::string>{"I1*", "I1*", "I4", "I4"}) return false;
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        if (fibers[i] == FiberType::Istar(1) && tprime[i] != 1) return false;
        if (fibers[i] == FiberType::I(4) && tprime[i] != 2) return false;
    }
    return true;
}

}  // namespace

QuotientRecord quotient_by_two_torsion(const FiberConfiguration& config,
                                       const AssignmentFamily& family, std::size_t element_index) {
    auto fibers = config.all_reducible();
    if (element_index >= family.patterns.size())
        throw std::invalid_argument("quotient_by_two_torsion: no such torsion element");
    const auto& pattern = family.patterns[element_index];
    // the chosen element must have order 2
    {
        auto elems = family.shape.nonzero_elements();
        const auto& e = elems[element_index];
        for (std::size_t gi = 0; gi < e.size(); ++gi) {
            int f = family.shape.factors[gi];
            if ((2 * e[gi]) % f != 0)
                throw std::invalid_argument("quotient_by_two_torsion: section is not 2-torsion");
        }
    }

    std::vector<FiberImage> big, small;
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        FiberImage img = quotient_fiber(fibers[i], pattern[i]);
        if (components(img.type) > 2) big.push_back(img);
        else if (img.type == FiberType::I(2)) small.push_back(img);
        else if (img.type == FiberType::I(1)) small.push_back(img);  // irreducible
        else big.push_back(img);
    }
    QuotientRecord rec;
    rec.source_pattern = pattern;
    rec.config.rho = config.rho;
    std::vector<int> tprime;
    for (const auto& img : big) {
        rec.config.reducible.push_back(img.type);
        tprime.push_back(img.dual_component);
    }
    int n1 = config.n1;  // source I1 fibers double into I2
    for (int i = 0; i < config.n1; ++i) small.push_back({FiberType::I(2), 1});
    (void)n1;
    int new_n1 = 0;
    for (const auto& img : small) {
        if (img.type == FiberType::I(1)) { ++new_n1; continue; }
        rec.config.m1 += 1;
        tprime.push_back(img.dual_component);
    }
    rec.config.n1 = new_n1;
    if (!rec.config.euler_closed())
        throw std::logic_error("quotient_by_two_torsion: Euler numbers do not close");

    // Mordell-Weil torsion of the quotient: the dual section extends to
    // the largest admissible family
    auto z2x2 = torsion_search_ex(rec.config, TorsionShape{{2, 2}}, 2, nullptr, &tprime);
    auto z4 = torsion_search_ex(rec.config, TorsionShape{{4}}, 2, &tprime, nullptr);
    if (!z4.empty() && four_torsion_rejected(rec.config, tprime)) z4.clear();
    if (!z2x2.empty() && !z4.empty())
        throw std::logic_error("quotient_by_two_torsion: ambiguous torsion extension");
    if (!z2x2.empty()) {
        if (z2x2.size() > 1) throw std::logic_error("quotient_by_two_torsion: torsion family not unique");
        rec.family = z2x2.front();
        // the pinned generator occupies the row of element (1, 0)
        rec.tprime_row = 0;
        auto elems = rec.family.shape.nonzero_elements();
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (elems[i] == std::vector<int>{1, 0}) rec.tprime_row = static_cast<int>(i);
    } else if (!z4.empty()) {
        if (z4.size() > 1) throw std::logic_error("quotient_by_two_torsion: torsion family not unique");
        rec.family = z4.front();
        auto elems = rec.family.shape.nonzero_elements();
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (elems[i] == std::vector<int>{2}) rec.tprime_row = static_cast<int>(i);
    } else {
        rec.family.shape.factors = {2};
        rec.family.patterns = {tprime};
        rec.tprime_row = 0;
    }

    GluedGroup glued = ns_discriminant_group(rec.config, rec.family);
    rec.ns_factors = glued.invariant_factors;

    int a22 = 22 - config.rho;
    rec.morrison_nikulin = static_cast<int>(rec.ns_factors.size()) == a22;
    for (const auto& d : rec.ns_factors)
        if (d != 4) rec.morrison_nikulin = false;

    if (glued.is_two_elementary()) {
        TwoElementaryInvariants inv;
        inv.r = config.rho;
        inv.a = static_cast<int>(rec.ns_factors.size());
        inv.delta = glued.delta();
        rec.two_elementary = inv;
    }
    return rec;
}

std::string quotient_record_key(const QuotientRecord& rec) {
    std::ostringstream os;
    std::vector<std::string> names;
    for (const auto& f : rec.config.reducible) names.push_back(fiber_name(f));
    std::sort(names.begin(), names.end());
    for (const auto& n : names) os << n << "+";
    os << "m" << rec.config.m1 << "n" << rec.config.n1 << "|";
    for (int f : rec.family.shape.factors) os << f << ",";
    os << "|" << canonical_family_key(rec.family, rec.config, rec.tprime_row);
    os << "|ns:";
    for (const auto& d : rec.ns_factors) os << d.get_str() << ",";
    return os.str();
}

SexticInvariants sextic_invariants(int alpha, int gamma, int nu, const std::vector<int>& genera) {
    SexticInvariants inv;
    int g1 = 0;
    bool all_rational = true;
    for (int g : genera) {
        if (g > 0) all_rational = false;
        g1 = std::max(g1, g);
    }
    if (!all_rational) {
        // the only non-rational configuration in range: two genus-one
        // components crossing in nine points
        if (genera.size() == 2 && genera[0] == 1 && genera[1] == 1 && alpha == 2 && gamma == 9 &&
            nu == 0) {
            inv.r = 10;
            inv.a = 10;
            inv.k = 0;
            inv.g = 1;
            inv.note = "two elliptic components";
            return inv;
        }
        inv.consistent = false;
        inv.note = "unsupported genus data";
        return inv;
    }
    inv.g = g1;
    inv.k = alpha + nu - 1;
    inv.r = 1 + gamma + 4 * nu;
    inv.a = 21 - gamma - 4 * nu - 2 * g1;
    if (gamma != alpha - 3 * nu + 9 - g1) {
        inv.consistent = false;
        inv.note = "component/singularity counts violate the double-point relation";
    }
    if ((22 - inv.r - inv.a) % 2 != 0 || inv.g != (22 - inv.r - inv.a) / 2) {
        inv.consistent = false;
        inv.note = "fixed-locus genus relation fails";
    }
    return inv;
}

}  // namespace ellk3
