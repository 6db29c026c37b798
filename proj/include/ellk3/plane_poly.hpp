#pragma once

#include <gmpxx.h>
#include <map>
#include <string>
#include <vector>

#include "ellk3/ratpoly.hpp"

namespace ellk3 {

// sparse multivariate polynomial over Q with named variables
class MPoly {
  public:
    using Key = std::vector<int>;  // exponent per variable, indexed by var id

    MPoly() = default;
    static MPoly constant(const mpq_class& c);
    static MPoly variable(int var_id, int nvars);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, mpq_class>& terms() const { return terms_; }
    int nvars() const { return nvars_; }

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;
    MPoly pow(int e) const;

    // substitute variable -> polynomial
    MPoly substitute(int var_id, const MPoly& value) const;
    // total degree in one variable
    int degree_in(int var_id) const;
    // collect as a dense polynomial in var `outer`, coefficients dense in
    // var `inner`; all other variables must be eliminated already
    std::vector<RatPoly> collect(int outer, int inner) const;

    void set_nvars(int n) { nvars_ = n; }
    void add_term(Key k, const mpq_class& c);

  private:
    int nvars_ = 0;
    std::map<Key, mpq_class> terms_;
};

// parse an expression with named variables: + - * / ^ ( ), rational
// literals; '/' only by constant subexpressions
struct PolyParser {
    std::vector<std::string> variables;

    MPoly parse(const std::string& text) const;
    int var_id(const std::string& name) const;
};

}  // namespace ellk3
