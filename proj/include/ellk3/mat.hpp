#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellk3 {

using ZMat = std::vector<std::vector<mpz_class>>;
using QMat = std::vector<std::vector<mpq_class>>;
using ZVec = std::vector<mpz_class>;
using QVec = std::vector<mpq_class>;

ZMat zmat(std::size_t rows, std::size_t cols);
ZMat zident(std::size_t n);
ZMat zmul(const ZMat& a, const ZMat& b);
ZVec zmulv(const ZMat& a, const ZVec& v);
ZMat ztranspose(const ZMat& a);
bool is_symmetric(const ZMat& a);

QMat qmat(std::size_t rows, std::size_t cols);
QMat to_q(const ZMat& a);
QVec qmulv(const QMat& a, const QVec& v);
mpq_class qdot(const QVec& a, const ZMat& g, const QVec& b);

// exact determinant by fraction-free (Bareiss) elimination
mpz_class det_bareiss(ZMat a);

// exact inverse over the rationals; throws on a singular matrix
QMat inverse_q(const ZMat& a);

// signature of a symmetric matrix by exact symmetric elimination
// (Sylvester's law); throws std::domain_error if degenerate
std::pair<int, int> signature_exact(const ZMat& a);

// Smith normal form: u*m*v = d with d diagonal, d_i | d_{i+1},
// det(u) = +-1, det(v) = +-1
struct SmithForm {
    ZMat d, u, v;
};
SmithForm smith_normal_form(const ZMat& m);

// basis of the integer kernel of m (columns are kernel generators)
std::vector<ZVec> integer_kernel(const ZMat& m);

}  // namespace ellk3
