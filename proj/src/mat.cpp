#include "ellk3/mat.hpp"

#include <algorithm>
#include <cstdlib>

namespace ellk3 {

ZMat zmat(std::size_t rows, std::size_t cols) {
    return ZMat(rows, ZVec(cols, mpz_class(0)));
}

ZMat zident(std::size_t n) {
    ZMat a = zmat(n, n);
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
    return a;
}

ZMat zmul(const ZMat& a, const ZMat& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    ZMat c = zmat(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

ZVec zmulv(const ZMat& a, const ZVec& v) {
    ZVec r(a.size(), mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

ZMat ztranspose(const ZMat& a) {
    if (a.empty()) return a;
    ZMat t = zmat(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

bool is_symmetric(const ZMat& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != a.size()) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (a[i][j] != a[j][i]) return false;
    }
    return true;
}

QMat qmat(std::size_t rows, std::size_t cols) {
    return QMat(rows, QVec(cols, mpq_class(0)));
}

QMat to_q(const ZMat& a) {
    QMat q = qmat(a.size(), a.empty() ? 0 : a[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) q[i][j] = a[i][j];
    return q;
}

QVec qmulv(const QMat& a, const QVec& v) {
    QVec r(a.size(), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

mpq_class qdot(const QVec& a, const ZMat& g, const QVec& b) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * mpq_class(g[i][j]) * b[j];
    }
    return s;
}

mpz_class det_bareiss(ZMat a) {
    std::size_t n = a.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : mpz_class(-a[n - 1][n - 1]);
}

QMat inverse_q(const ZMat& a) {
    std::size_t n = a.size();
    QMat m = to_q(a);
    QMat inv = qmat(n, n);
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("inverse_q: singular matrix");
        std::swap(m[c], m[p]);
        std::swap(inv[c], inv[p]);
        mpq_class piv = m[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            m[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            mpq_class f = m[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

std::pair<int, int> signature_exact(const ZMat& a) {
    if (!is_symmetric(a)) throw std::invalid_argument("signature_exact: matrix not symmetric");
    std::size_t n = a.size();
    QMat m = to_q(a);
    int pos = 0, neg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][p] == 0) ++p;
            if (p < n) {
                std::swap(m[k], m[p]);
                for (auto& row : m) std::swap(row[k], row[p]);
            } else {
                // all remaining diagonal entries vanish: pull in an
                // off-diagonal entry, 2*m[k][j] survives over Q
                std::size_t j = k + 1;
                while (j < n && m[k][j] == 0) ++j;
                if (j == n) {
                    bool zero_block = true;
                    for (std::size_t i = k; i < n && zero_block; ++i)
                        for (std::size_t l = k; l < n; ++l)
                            if (m[i][l] != 0) { zero_block = false; break; }
                    if (zero_block) throw std::domain_error("signature_exact: degenerate form");
                    // some later row has a nonzero entry; swap it up
                    std::size_t r = k + 1;
                    for (; r < n; ++r) {
                        bool nz = false;
                        for (std::size_t l = k; l < n; ++l)
                            if (m[r][l] != 0) { nz = true; break; }
                        if (nz) break;
                    }
                    std::swap(m[k], m[r]);
                    for (auto& row : m) std::swap(row[k], row[r]);
                    j = k + 1;
                    while (j < n && m[k][j] == 0) ++j;
                    if (j == n) throw std::domain_error("signature_exact: degenerate form");
                }
                for (std::size_t l = 0; l < n; ++l) m[k][l] += m[j][l];
                for (std::size_t i = 0; i < n; ++i) m[i][k] += m[i][j];
            }
        }
        if (m[k][k] == 0) throw std::domain_error("signature_exact: degenerate form");
        if (m[k][k] > 0) ++pos; else ++neg;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            mpq_class f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            for (std::size_t j = 0; j < n; ++j) m[j][i] = m[i][j];
        }
        for (std::size_t i = k + 1; i < n; ++i) { m[i][k] = 0; m[k][i] = 0; }
    }
    return {pos, neg};
}

namespace {

void row_op(ZMat& m, ZMat& u, std::size_t i, std::size_t j, const mpz_class& q) {
    // row_i -= q * row_j
    for (std::size_t c = 0; c < m[i].size(); ++c) m[i][c] -= q * m[j][c];
    for (std::size_t c = 0; c < u[i].size(); ++c) u[i][c] -= q * u[j][c];
}

void col_op(ZMat& m, ZMat& v, std::size_t i, std::size_t j, const mpz_class& q) {
    // col_i -= q * col_j
    for (auto& row : m) row[i] -= q * row[j];
    for (auto& row : v) row[i] -= q * row[j];
}

}  // namespace

SmithForm smith_normal_form(const ZMat& m0) {
    ZMat m = m0;
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    ZMat u = zident(rows), v = zident(cols);
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // locate a nonzero pivot of minimal absolute value
        std::size_t pi = t, pj = t;
        bool found = false;
        mpz_class best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m[i][j] != 0) {
                    mpz_class a = abs(m[i][j]);
                    if (!found || a < best) { best = a; pi = i; pj = j; found = true; }
                }
        if (!found) break;
        std::swap(m[t], m[pi]);
        std::swap(u[t], u[pi]);
        if (pj != t) {
            for (auto& row : m) std::swap(row[t], row[pj]);
            for (auto& row : v) std::swap(row[t], row[pj]);
        }
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (m[i][t] != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
                    row_op(m, u, i, t, q);
                    if (m[i][t] != 0) {
                        std::swap(m[t], m[i]);
                        std::swap(u[t], u[i]);
                        clean = false;
                    }
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (m[t][j] != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
                    col_op(m, v, j, t, q);
                    if (m[t][j] != 0) {
                        for (auto& row : m) std::swap(row[t], row[j]);
                        for (auto& row : v) std::swap(row[t], row[j]);
                        clean = false;
                    }
                }
        }
        ++t;
    }
    // enforce the divisibility chain
    std::size_t rank = t;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i + 1 < rank; ++i) {
            if (m[i][i] == 0 || m[i + 1][i + 1] % m[i][i] == 0) continue;
            // fold entry i+1 into position i via gcd
            for (auto& row : v) row[i] += row[i + 1];
            for (std::size_t r = 0; r < rows; ++r) m[r][i] += m[r][i + 1];
            // re-clear the 2x2 block
            mpz_class a = m[i][i], b = m[i + 1][i];
            while (b != 0) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
                row_op(m, u, i + 1, i, q);
                b = m[i + 1][i];
                if (b != 0) {
                    std::swap(m[i], m[i + 1]);
                    std::swap(u[i], u[i + 1]);
                    std::swap(a, b);
                    b = m[i + 1][i];
                }
            }
            mpz_class c = m[i][i + 1];
            if (c != 0) {
                mpz_class q = c / m[i][i];
                col_op(m, v, i + 1, i, q);
            }
            changed = true;
        }
    }
    for (std::size_t i = 0; i < rank; ++i)
        if (m[i][i] < 0) {
            for (auto& row : v) row[i] = -row[i];
            m[i][i] = -m[i][i];
        }
    return {m, u, v};
}

std::vector<ZVec> integer_kernel(const ZMat& m) {
    SmithForm s = smith_normal_form(m);
    std::size_t cols = m.empty() ? 0 : m[0].size();
    std::size_t rank = 0;
    for (std::size_t i = 0; i < std::min(m.size(), cols); ++i)
        if (s.d[i][i] != 0) ++rank;
    std::vector<ZVec> basis;
    for (std::size_t j = rank; j < cols; ++j) {
        ZVec col(cols);
        for (std::size_t i = 0; i < cols; ++i) col[i] = s.v[i][j];
        basis.push_back(col);
    }
    return basis;
}

}  // namespace ellk3
