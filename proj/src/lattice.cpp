#include "ellk3/lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ellk3 {

Lattice::Lattice(ZMat g, bool even_declared) : gram(std::move(g)), even(even_declared) {
    if (!is_symmetric(gram)) throw std::invalid_argument("lattice: Gram matrix not symmetric");
    if (even)
        for (std::size_t i = 0; i < gram.size(); ++i)
            if (gram[i][i] % 2 != 0)
                throw std::invalid_argument("lattice: declared even but diagonal entry is odd");
}

Lattice lattice_U() { return lattice_U_scaled(1); }

Lattice lattice_U_scaled(const mpz_class& n) {
    ZMat g = zmat(2, 2);
    g[0][1] = n;
    g[1][0] = n;
    return Lattice(g);
}

Lattice lattice_rank1(const mpz_class& k) {
    ZMat g = zmat(1, 1);
    g[0][0] = k;
    return Lattice(g, k % 2 == 0);
}

Lattice lattice_A(int n) {
    if (n < 1) throw std::invalid_argument("lattice_A: rank must be >= 1");
    ZMat g = zmat(n, n);
    for (int i = 0; i < n; ++i) {
        g[i][i] = 2;
        if (i + 1 < n) { g[i][i + 1] = -1; g[i + 1][i] = -1; }
    }
    return Lattice(g);
}

Lattice lattice_D(int n) {
    if (n < 3) throw std::invalid_argument("lattice_D: rank must be >= 3");
    // chain 0-1-...-(n-2), extra node n-1 attached to n-3
    ZMat g = zmat(n, n);
    for (int i = 0; i < n; ++i) g[i][i] = 2;
    for (int i = 0; i + 2 < n; ++i) { g[i][i + 1] = -1; g[i + 1][i] = -1; }
    g[n - 3][n - 1] = -1;
    g[n - 1][n - 3] = -1;
    return Lattice(g);
}

Lattice lattice_E(int n) {
    if (n < 6 || n > 8) throw std::invalid_argument("lattice_E: rank must be 6, 7 or 8");
    // chain 0-...-(n-2), extra node n-1 attached to node 2
    ZMat g = zmat(n, n);
    for (int i = 0; i < n; ++i) g[i][i] = 2;
    for (int i = 0; i + 2 < n; ++i) { g[i][i + 1] = -1; g[i + 1][i] = -1; }
    g[2][n - 1] = -1;
    g[n - 1][2] = -1;
    return Lattice(g);
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    std::size_t n = a.rank(), m = b.rank();
    ZMat g = zmat(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i][j] = a.gram[i][j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g[n + i][n + j] = b.gram[i][j];
    return Lattice(g, a.even && b.even);
}

Lattice twist(const Lattice& l, const mpz_class& n) {
    if (n == 0) throw std::invalid_argument("twist: scale must be nonzero");
    ZMat g = l.gram;
    for (auto& row : g)
        for (auto& x : row) x *= n;
    bool even = l.even || n % 2 == 0;
    return Lattice(g, even);
}

mpz_class determinant(const Lattice& l) { return det_bareiss(l.gram); }

std::pair<int, int> signature(const Lattice& l) { return signature_exact(l.gram); }

mpz_class DiscriminantGroup::order() const {
    mpz_class o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
}

GroupElement DiscriminantGroup::reduce(const GroupElement& e) const {
    GroupElement r(length());
    for (std::size_t i = 0; i < length(); ++i) {
        mpz_class m;
        mpz_fdiv_r(m.get_mpz_t(), e[i].get_mpz_t(), invariant_factors[i].get_mpz_t());
        r[i] = m;
    }
    return r;
}

GroupElement DiscriminantGroup::add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r(length());
    for (std::size_t i = 0; i < length(); ++i) r[i] = a[i] + b[i];
    return reduce(r);
}

GroupElement DiscriminantGroup::neg(const GroupElement& a) const {
    GroupElement r(length());
    for (std::size_t i = 0; i < length(); ++i) r[i] = -a[i];
    return reduce(r);
}

GroupElement DiscriminantGroup::scale(const mpz_class& k, const GroupElement& a) const {
    GroupElement r(length());
    for (std::size_t i = 0; i < length(); ++i) r[i] = k * a[i];
    return reduce(r);
}

bool DiscriminantGroup::is_zero(const GroupElement& e) const {
    for (const auto& x : e)
        if (x != 0) return false;
    return true;
}

QVec DiscriminantGroup::lift(const GroupElement& e) const {
    QVec v(gram.size(), mpq_class(0));
    for (std::size_t i = 0; i < length(); ++i)
        for (std::size_t j = 0; j < gram.size(); ++j) v[j] += mpq_class(e[i]) * generator_lifts[i][j];
    return v;
}

namespace {

mpq_class mod_into(const mpq_class& x, int modulus) {
    // canonical representative in [0, modulus)
    mpq_class m(modulus);
    mpq_class q = x / m;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return x - mpq_class(fl) * m;
}

}  // namespace

mpq_class DiscriminantGroup::q_value(const GroupElement& e) const {
    QVec v = lift(e);
    return mod_into(qdot(v, gram, v), 2);
}

mpq_class DiscriminantGroup::b_value(const GroupElement& a, const GroupElement& b) const {
    QVec va = lift(a), vb = lift(b);
    return mod_into(qdot(va, gram, vb), 1);
}

GroupElement DiscriminantGroup::class_of_dual(const QVec& v) const {
    // dual coordinates c = G * v must be integral
    std::size_t n = gram.size();
    ZVec c(n);
    for (std::size_t i = 0; i < n; ++i) {
        mpq_class s = 0;
        for (std::size_t j = 0; j < n; ++j) s += mpq_class(gram[i][j]) * v[j];
        if (s.get_den() != 1) throw std::invalid_argument("class_of_dual: vector not in the dual lattice");
        c[i] = s.get_num();
    }
    // solve for the generator coordinates: e_i satisfies
    // lift(e) - v in L, i.e. the SNF machinery already encoded in lifts.
    // Use: class coordinates = U*c picked at the nontrivial factors.
    // u_rows was stored alongside the lifts.
    GroupElement e(length());
    for (std::size_t i = 0; i < length(); ++i) {
        mpq_class s = 0;
        for (std::size_t j = 0; j < n; ++j) s += mpq_class(u_rows[i][j]) * mpq_class(c[j]);
        mpz_class val = s.get_num();
        mpz_class m;
        mpz_fdiv_r(m.get_mpz_t(), val.get_mpz_t(), invariant_factors[i].get_mpz_t());
        e[i] = m;
    }
    return e;
}

std::vector<GroupElement> DiscriminantGroup::all_elements(std::size_t cap) const {
    mpz_class o = order();
    if (o > cap) throw std::domain_error("discriminant group too large to tabulate");
    std::vector<GroupElement> out;
    out.push_back(zero());
    for (std::size_t i = 0; i < length(); ++i) {
        std::vector<GroupElement> next;
        for (const auto& e : out)
            for (mpz_class k = 0; k < invariant_factors[i]; ++k) {
                GroupElement f = e;
                f[i] = k;
                next.push_back(f);
            }
        out = std::move(next);
    }
    return out;
}

DiscriminantGroup discriminant_group(const Lattice& l) {
    mpz_class det = determinant(l);
    if (det == 0) throw std::domain_error("discriminant_group: degenerate lattice");
    SmithForm s = smith_normal_form(l.gram);
    DiscriminantGroup g;
    g.gram = l.gram;
    std::size_t n = l.rank();
    for (std::size_t i = 0; i < n; ++i) {
        if (s.d[i][i] > 1) {
            g.invariant_factors.push_back(s.d[i][i]);
            QVec lift(n);
            for (std::size_t j = 0; j < n; ++j) lift[j] = mpq_class(s.v[j][i]) / mpq_class(s.d[i][i]);
            g.generator_lifts.push_back(lift);
            g.u_rows.push_back(s.u[i]);
        }
    }
    return g;
}

std::optional<TwoElementaryInvariants> two_elementary_invariants(const Lattice& l) {
    if (!l.even) throw std::invalid_argument("two_elementary_invariants: lattice must be even");
    DiscriminantGroup g = discriminant_group(l);
    for (const auto& d : g.invariant_factors)
        if (d != 2) return std::nullopt;
    TwoElementaryInvariants inv;
    inv.r = static_cast<int>(l.rank());
    inv.a = static_cast<int>(g.length());
    inv.delta = 0;
    for (const auto& e : g.all_elements())
        if (g.q_value(e).get_den() != 1) { inv.delta = 1; break; }
    return inv;
}

mpz_class GluedGroup::order() const {
    mpz_class o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
}

mpq_class GluedGroup::q_value(const GroupElement& e) const {
    GroupElement p = parent.zero();
    for (std::size_t i = 0; i < invariant_factors.size(); ++i)
        p = parent.add(p, parent.scale(e[i], generator_reps[i]));
    return parent.q_value(p);
}

std::vector<GroupElement> GluedGroup::all_elements(std::size_t cap) const {
    if (order() > cap) throw std::domain_error("glued group too large to tabulate");
    std::vector<GroupElement> out;
    out.push_back(GroupElement(invariant_factors.size(), mpz_class(0)));
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
        std::vector<GroupElement> next;
        for (const auto& e : out)
            for (mpz_class k = 0; k < invariant_factors[i]; ++k) {
                GroupElement f = e;
                f[i] = k;
                next.push_back(f);
            }
        out = std::move(next);
    }
    return out;
}

int GluedGroup::delta() const {
    for (const auto& e : all_elements())
        if (q_value(e).get_den() != 1) return 1;
    return 0;
}

bool GluedGroup::is_two_elementary() const {
    for (const auto& d : invariant_factors)
        if (d != 2) return false;
    return true;
}

GluedGroup glue_overlattice(const DiscriminantGroup& a, const std::vector<GroupElement>& glue) {
    std::size_t k = a.length();
    // close the glue set into the subgroup H and check isotropy
    std::map<GroupElement, bool> h;
    h[a.zero()] = true;
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<GroupElement> cur;
        for (const auto& [e, _] : h) cur.push_back(e);
        for (const auto& e : cur)
            for (const auto& g : glue) {
                GroupElement f = a.add(e, a.reduce(g));
                if (!h.count(f)) { h[f] = true; grew = true; }
            }
    }
    for (const auto& [e, _] : h) {
        mpq_class q = a.q_value(e);
        if (q != 0)
            throw std::invalid_argument("glue_overlattice: non-isotropic glue element (q = " +
                                        q.get_str() + ")");
        for (const auto& [f, __] : h)
            if (a.b_value(e, f) != 0)
                throw std::invalid_argument("glue_overlattice: glue subgroup not integral under b");
    }

    // H^perp as an integer sublattice of Z^k via congruences b(x, g) in Z
    std::vector<ZVec> congr;      // coefficient rows
    std::vector<mpz_class> mods;  // moduli
    for (const auto& g : glue) {
        mpz_class lcm = 1;
        QVec betas(k);
        for (std::size_t j = 0; j < k; ++j) {
            GroupElement ej = a.zero();
            ej[j] = 1;
            betas[j] = a.b_value(ej, a.reduce(g));
            mpz_class den = betas[j].get_den();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
        ZVec row(k);
        for (std::size_t j = 0; j < k; ++j) {
            mpq_class scaled = betas[j] * mpq_class(lcm);
            row[j] = scaled.get_num();
        }
        congr.push_back(row);
        mods.push_back(lcm);
    }
    // solutions of C x = diag(mods) y: kernel of [C | -diag(mods)]
    std::size_t gcount = congr.size();
    ZMat big = zmat(gcount, k + gcount);
    for (std::size_t i = 0; i < gcount; ++i) {
        for (std::size_t j = 0; j < k; ++j) big[i][j] = congr[i][j];
        big[i][k + i] = -mods[i];
    }
    std::vector<ZVec> ker = integer_kernel(big);
    // columns of perp_basis generate the preimage of H^perp in Z^k
    // (together with d_i e_i, which are always solutions)
    std::vector<ZVec> gens;
    for (const auto& v : ker) gens.push_back(ZVec(v.begin(), v.begin() + k));
    for (std::size_t i = 0; i < k; ++i) {
        ZVec e(k, mpz_class(0));
        e[i] = a.invariant_factors[i];
        gens.push_back(e);
    }
    // basis of the span (full rank k): use SNF on the matrix with gens as columns
    ZMat gm = zmat(k, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < k; ++i) gm[i][j] = gens[j][i];
    SmithForm s = smith_normal_form(gm);
    // basis columns: U^-1 * D restricted to rank; easier: B = U^-1 * diag(d)
    // since U * gm * V = D, span(gm) = span(U^-1 D)
    QMat uinv_q = inverse_q(s.u);
    ZMat basis = zmat(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            mpq_class x = uinv_q[i][j] * mpq_class(s.d[j][j]);
            if (x.get_den() != 1) throw std::logic_error("glue_overlattice: basis not integral");
            basis[i][j] = x.get_num();
        }
    // express H-lifts and d_i e_i in that basis, SNF of relations
    std::vector<ZVec> rel_sources;
    for (const auto& g : glue) rel_sources.push_back(a.reduce(g));
    QMat basis_inv = inverse_q(basis);
    std::vector<ZVec> rels;
    for (const auto& src : rel_sources) {
        QVec z(k);
        for (std::size_t i = 0; i < k; ++i) {
            mpq_class sum = 0;
            for (std::size_t j = 0; j < k; ++j) sum += basis_inv[i][j] * mpq_class(src[j]);
            z[i] = sum;
        }
        ZVec r(k);
        for (std::size_t i = 0; i < k; ++i) {
            if (z[i].get_den() != 1) throw std::logic_error("glue_overlattice: glue not in H^perp");
            r[i] = z[i].get_num();
        }
        rels.push_back(r);
    }
    for (std::size_t i = 0; i < k; ++i) {
        ZVec di(k, mpz_class(0));
        di[i] = a.invariant_factors[i];
        ZVec r(k);
        for (std::size_t rr = 0; rr < k; ++rr) {
            mpq_class sum = 0;
            for (std::size_t j = 0; j < k; ++j) sum += basis_inv[rr][j] * mpq_class(di[j]);
            if (sum.get_den() != 1) throw std::logic_error("glue_overlattice: relation not integral");
            r[rr] = sum.get_num();
        }
        rels.push_back(r);
    }
    ZMat relmat = zmat(k, rels.size());
    for (std::size_t j = 0; j < rels.size(); ++j)
        for (std::size_t i = 0; i < k; ++i) relmat[i][j] = rels[j][i];
    SmithForm q = smith_normal_form(relmat);
    QMat qu_inv = inverse_q(q.u);

    GluedGroup out;
    out.parent = a;
    for (std::size_t i = 0; i < k; ++i) {
        if (q.d[i][i] > 1) {
            out.invariant_factors.push_back(q.d[i][i]);
            // generator i corresponds to basis * (U^-1 e_i) in Z^k coords
            GroupElement rep(k);
            for (std::size_t r = 0; r < k; ++r) {
                mpq_class sum = 0;
                for (std::size_t j = 0; j < k; ++j) sum += mpq_class(basis[r][j]) * qu_inv[j][i];
                if (sum.get_den() != 1) throw std::logic_error("glue_overlattice: rep not integral");
                rep[r] = sum.get_num();
            }
            out.generator_reps.push_back(a.reduce(rep));
        }
    }
    // order sanity: |H^perp / H| * |H|^2 = |A|
    mpz_class hsize = h.size();
    if (out.order() * hsize * hsize != a.order())
        throw std::logic_error("glue_overlattice: order bookkeeping failed");
    return out;
}

std::string format_group(const std::vector<mpz_class>& invariant_factors) {
    if (invariant_factors.empty()) return "1";
    std::map<mpz_class, int> mult;
    for (const auto& d : invariant_factors) mult[d]++;
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, m] : mult) {
        if (!first) os << "x";
        first = false;
        os << "Z/" << d.get_str();
        if (m > 1) os << "^" << m;
    }
    return os.str();
}

}  // namespace ellk3
