#pragma once

#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

namespace ellk3 {

// dense univariate polynomial over Q, low degree first, no trailing zeros
class RatPoly {
  public:
    RatPoly() = default;
    RatPoly(mpq_class c) { if (c != 0) coef_.push_back(c); }
    explicit RatPoly(std::vector<mpq_class> c) : coef_(std::move(c)) { trim(); }

    static RatPoly x();                       // the variable
    static RatPoly monomial(int deg, mpq_class c = 1);

    bool is_zero() const { return coef_.empty(); }
    int degree() const { return static_cast<int>(coef_.size()) - 1; }  // -1 for zero
    const std::vector<mpq_class>& coefficients() const { return coef_; }
    mpq_class coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(coef_.size())) ? coef_[i] : mpq_class(0);
    }
    mpq_class leading() const { return is_zero() ? mpq_class(0) : coef_.back(); }

    RatPoly operator-() const;
    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly operator*(const mpq_class& c) const;
    bool operator==(const RatPoly& o) const { return coef_ == o.coef_; }

    mpq_class eval(const mpq_class& t) const;
    RatPoly derivative() const;
    RatPoly pow(int e) const;
    RatPoly shift_up(int k) const;  // multiply by x^k
    // reverse against a fixed degree bound: x^bound * p(1/x)
    RatPoly reverse(int bound) const;

    int valuation() const;  // order of vanishing at 0; degree+1 convention not used, zero -> -1

    std::string str(const std::string& var = "t") const;

  private:
    void trim();
    std::vector<mpq_class> coef_;
};

RatPoly operator*(const mpq_class& c, const RatPoly& p);

// quotient and remainder; divisor must be nonzero
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
bool divides(const RatPoly& d, const RatPoly& a);
RatPoly exact_div(const RatPoly& a, const RatPoly& b);

RatPoly monic(const RatPoly& p);
RatPoly gcd(const RatPoly& a, const RatPoly& b);  // monic

// Yun decomposition: p = lc * prod_i f_i^i with f_i monic squarefree coprime
struct SquarefreeFactor {
    RatPoly factor;
    int multiplicity;
};
std::vector<SquarefreeFactor> squarefree_decomposition(const RatPoly& p);

// multiplicity of the squarefree g in p (largest k with g^k | p)
int multiplicity_of(const RatPoly& p, const RatPoly& g);

// exact square root over Q[x] if one exists
std::optional<RatPoly> poly_sqrt(const RatPoly& p);
std::optional<mpq_class> rat_sqrt(const mpq_class& q);

mpq_class parse_rat(const std::string& s);
std::string rat_str(const mpq_class& q);

}  // namespace ellk3
