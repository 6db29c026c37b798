#include "ellk3/mw.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ellk3 {

std::vector<FiberType> FiberConfiguration::all_reducible() const {
    std::vector<FiberType> out = reducible;
    for (int i = 0; i < m1; ++i) out.push_back(FiberType::I(2));
    for (int i = 0; i < m2; ++i) out.push_back(FiberType::make(FiberKind::III));
    return out;
}

int FiberConfiguration::euler_total() const {
    int e = 0;
    for (const auto& f : reducible) e += euler_number(f);
    return e + 2 * m1 + 3 * m2 + n1 + 2 * n2;
}

int shioda_tate_rank(const FiberConfiguration& config) {
    int s = 0;
    for (const auto& f : config.all_reducible()) s += components(f) - 1;
    int rank = config.rho - 2 - s;
    if (rank < 0) throw std::invalid_argument("shioda_tate_rank: inconsistent configuration");
    return rank;
}

mpq_class height_chi(const TorsionAssignment& t, const FiberConfiguration& config, int chi) {
    auto fibers = config.all_reducible();
    if (t.components.size() != fibers.size())
        throw std::invalid_argument("height: assignment does not match the configuration");
    mpq_class h = 2 * chi + 2 * t.intersection_with_zero;
    for (std::size_t i = 0; i < fibers.size(); ++i) h -= height_contribution(fibers[i], t.components[i]);
    return h;
}

mpq_class height(const TorsionAssignment& t, const FiberConfiguration& config) {
    return height_chi(t, config, 2);
}

std::size_t TorsionShape::nonzero_count() const {
    std::size_t n = 1;
    for (int f : factors) n *= f;
    return n - 1;
}

std::vector<std::vector<int>> TorsionShape::nonzero_elements() const {
    std::vector<std::vector<int>> all{{}};
    for (int f : factors) {
        std::vector<std::vector<int>> next;
        for (const auto& e : all)
            for (int k = 0; k < f; ++k) {
                auto c = e;
                c.push_back(k);
                next.push_back(c);
            }
        all = std::move(next);
    }
    std::vector<std::vector<int>> out;
    for (const auto& e : all) {
        bool zero = true;
        for (int x : e) zero &= (x == 0);
        if (!zero) out.push_back(e);
    }
    return out;
}

namespace {

// group automorphism images of the nonzero-element list, as row
// permutations
std::vector<std::vector<int>> group_row_permutations(const TorsionShape& shape) {
    auto elems = shape.nonzero_elements();
    std::size_t n = elems.size();
    auto index_of = [&](const std::vector<int>& e) {
        for (std::size_t i = 0; i < n; ++i)
            if (elems[i] == e) return static_cast<int>(i);
        return -1;
    };
    std::vector<std::vector<int>> perms;
    if (shape.factors == std::vector<int>{2}) {
        perms.push_back({0});
    } else if (shape.factors == std::vector<int>{2, 2}) {
        // GL_2(F_2) permutes the three nonzero elements arbitrarily
        std::vector<int> p = {0, 1, 2};
        do { perms.push_back(p); } while (std::next_permutation(p.begin(), p.end()));
    } else if (shape.factors == std::vector<int>{4}) {
        // x -> x and x -> 3x
        std::vector<int> ident, inv;
        for (std::size_t i = 0; i < n; ++i) ident.push_back(static_cast<int>(i));
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<int> e = elems[i];
            e[0] = (3 * e[0]) % 4;
            inv.push_back(index_of(e));
        }
        perms.push_back(ident);
        perms.push_back(inv);
    } else {
        std::vector<int> ident;
        for (std::size_t i = 0; i < n; ++i) ident.push_back(static_cast<int>(i));
        perms.push_back(ident);
    }
    return perms;
}

}  // namespace

std::string canonical_family_key(const AssignmentFamily& family, const FiberConfiguration& config,
                                 int marked_row) {
    auto fibers = config.all_reducible();
    std::size_t rows = family.patterns.size();
    auto perms = group_row_permutations(family.shape);
    std::string best;
    for (const auto& perm : perms) {
        if (marked_row >= 0 && perm[marked_row] != marked_row) {
            // the marked element must stay fixed under relabeling
            continue;
        }
        // per-fiber canonical column under diagram automorphisms
        std::vector<std::pair<std::string, std::string>> cols;
        for (std::size_t f = 0; f < fibers.size(); ++f) {
            std::string cbest;
            for (const auto& aut : diagram_automorphisms(fibers[f])) {
                std::string cand;
                for (std::size_t r = 0; r < rows; ++r) {
                    int comp = family.patterns[perm[r]][f];
                    for (const auto& [from, to] : aut)
                        if (comp == from) { comp = to; break; }
                    cand += std::to_string(comp) + ",";
                }
                if (cbest.empty() || cand < cbest) cbest = cand;
            }
            cols.push_back({fiber_name(fibers[f]), cbest});
        }
        std::stable_sort(cols.begin(), cols.end());
        std::string key;
        for (const auto& [t, c] : cols) key += t + ":" + c + ";";
        if (best.empty() || key < best) best = key;
    }
    if (best.empty()) throw std::logic_error("canonical_family_key: no admissible relabeling");
    return best;
}

std::vector<AssignmentFamily> torsion_assignment_search(const FiberConfiguration& config,
                                                        const TorsionShape& shape) {
    return torsion_search_ex(config, shape, 2);
}

std::vector<AssignmentFamily> torsion_search_ex(const FiberConfiguration& config,
                                                const TorsionShape& shape, int chi,
                                                const std::vector<int>* pinned_double,
                                                const std::vector<int>* pinned_gen) {
    auto fibers = config.all_reducible();
    std::size_t nf = fibers.size();
    std::vector<AssignmentFamily> out;
    if (shape.factors.empty()) {
        out.push_back({shape, {}});
        return out;
    }
    std::vector<ComponentGroup> groups;
    for (const auto& f : fibers) groups.push_back(component_group(f));
    std::size_t ngen = shape.factors.size();
    auto elems = shape.nonzero_elements();
    std::size_t ne = elems.size();
    mpq_class target = 2 * chi;

    // the marked row, when a pattern is pinned: the pinned element is the
    // first generator (pinned_gen) or twice the first generator
    int marked = -1;
    if (pinned_gen || pinned_double) {
        std::vector<int> want(ngen, 0);
        want[0] = pinned_gen ? 1 : 2;
        for (std::size_t i = 0; i < ne; ++i)
            if (elems[i] == want) marked = static_cast<int>(i);
    }

    struct Choice {
        std::vector<int> comps;
        std::vector<mpq_class> contrs;
    };
    std::vector<std::vector<Choice>> choices(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        const auto& g = groups[f];
        std::vector<std::vector<GroupElement>> gen_imgs(ngen);
        for (std::size_t gi = 0; gi < ngen; ++gi) {
            std::vector<GroupElement> imgs;
            for (std::size_t i = 0; i < g.simple_elements.size(); ++i) {
                const auto& e = g.simple_elements[i];
                if (mpz_class(shape.factors[gi]) % g.element_order(e) == 0) imgs.push_back(e);
            }
            std::sort(imgs.begin(), imgs.end());
            imgs.erase(std::unique(imgs.begin(), imgs.end()), imgs.end());
            if (pinned_gen && gi == 0) {
                GroupElement want = g.element_of((*pinned_gen)[f]);
                imgs.clear();
                imgs.push_back(want);
            }
            if (pinned_double && gi == 0) {
                GroupElement want = g.element_of((*pinned_double)[f]);
                std::vector<GroupElement> filtered;
                for (const auto& e : imgs)
                    if (g.add(e, e) == want) filtered.push_back(e);
                imgs = filtered;
            }
            gen_imgs[gi] = imgs;
        }
        std::vector<std::vector<GroupElement>> tuples{{}};
        for (const auto& opts : gen_imgs) {
            std::vector<std::vector<GroupElement>> next;
            for (const auto& t : tuples)
                for (const auto& o : opts) {
                    auto c = t;
                    c.push_back(o);
                    next.push_back(c);
                }
            tuples = std::move(next);
        }
        for (const auto& t : tuples) {
            Choice ch;
            bool ok = true;
            for (const auto& e : elems) {
                GroupElement img(g.invariant_factors.size(), mpz_class(0));
                for (std::size_t gi = 0; gi < ngen; ++gi)
                    for (int rep = 0; rep < e[gi]; ++rep) img = g.add(img, t[gi]);
                auto comp = g.component_of(img);
                if (!comp) { ok = false; break; }
                ch.comps.push_back(*comp);
                ch.contrs.push_back(height_contribution(fibers[f], *comp));
            }
            if (ok) choices[f].push_back(ch);
        }
        if (choices[f].empty()) return out;
    }

    std::vector<mpq_class> fiber_max(nf, mpq_class(0));
    for (std::size_t f = 0; f < nf; ++f)
        for (const auto& ch : choices[f])
            for (const auto& c : ch.contrs) fiber_max[f] = std::max(fiber_max[f], c);
    std::vector<mpq_class> maxrest(nf + 1, mpq_class(0));
    for (int f = static_cast<int>(nf) - 1; f >= 0; --f) maxrest[f] = maxrest[f + 1] + fiber_max[f];

    std::vector<std::vector<int>> current(ne, std::vector<int>(nf, 0));
    std::vector<mpq_class> sums(ne, mpq_class(0));
    std::set<std::string> seen;

    std::function<void(std::size_t)> dfs = [&](std::size_t f) {
        if (f == nf) {
            for (std::size_t e = 0; e < ne; ++e)
                if (sums[e] != target) return;
            std::set<std::vector<int>> pats;
            for (std::size_t e = 0; e < ne; ++e) {
                bool allzero = true;
                for (int c : current[e]) allzero &= (c == 0);
                if (allzero) return;
                pats.insert(current[e]);
            }
            if (pats.size() != ne) return;
            AssignmentFamily fam{shape, current};
            std::string key = canonical_family_key(fam, config, marked);
            if (seen.insert(key).second) out.push_back(fam);
            return;
        }
        for (const auto& ch : choices[f]) {
            bool feasible = true;
            for (std::size_t e = 0; e < ne; ++e) {
                mpq_class s = sums[e] + ch.contrs[e];
                if (s > target || s + maxrest[f + 1] < target) { feasible = false; break; }
            }
            if (!feasible) continue;
            for (std::size_t e = 0; e < ne; ++e) {
                sums[e] += ch.contrs[e];
                current[e][f] = ch.comps[e];
            }
            dfs(f + 1);
            for (std::size_t e = 0; e < ne; ++e) {
                sums[e] -= ch.contrs[e];
                current[e][f] = 0;
            }
        }
    };
    dfs(0);
    return out;
}

DiscriminantGroup trivial_lattice_discriminant(const FiberConfiguration& config) {
    auto fibers = config.all_reducible();
    Lattice tr;
    bool first = true;
    for (const auto& f : fibers) {
        Lattice rl = fiber_root_lattice(f);
        tr = first ? rl : direct_sum(tr, rl);
        first = false;
    }
    if (first) {
        // no reducible fibers: trivial lattice is unimodular
        return DiscriminantGroup{};
    }
    return discriminant_group(tr);
}

GroupElement glue_element_of_pattern(const FiberConfiguration& config, const DiscriminantGroup& tr,
                                     const std::vector<int>& pattern) {
    auto fibers = config.all_reducible();
    // build the dual vector blockwise, then take its class
    std::size_t total_rank = tr.gram.size();
    QVec v(total_rank, mpq_class(0));
    std::size_t offset = 0;
    for (std::size_t f = 0; f < fibers.size(); ++f) {
        Lattice rl = fiber_root_lattice(fibers[f]);
        std::size_t rk = rl.rank();
        if (pattern[f] != 0) {
            // dual basis vector of component Theta_{pattern[f]} (index from 1)
            QMat inv = inverse_q(rl.gram);
            for (std::size_t j = 0; j < rk; ++j) v[offset + j] = inv[pattern[f] - 1][j];
        }
        offset += rk;
    }
    return tr.class_of_dual(v);
}

GluedGroup ns_discriminant_group(const FiberConfiguration& config, const AssignmentFamily& family) {
    DiscriminantGroup tr = trivial_lattice_discriminant(config);
    std::vector<GroupElement> glue;
    for (const auto& pat : family.patterns) glue.push_back(glue_element_of_pattern(config, tr, pat));
    if (tr.length() == 0) {
        GluedGroup g;
        g.parent = tr;
        return g;
    }
    return glue_overlattice(tr, glue);
}

}  // namespace ellk3
