#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace properad {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational rational_of(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Polynomial in a formal parameter t truncated at t^order (so t^order = 0).
/// Coefficients are exact rationals. Used as the scalar ring of the
/// nilpotent extension in the twisting module; order 1 degenerates to Q.
class TPoly {
  public:
    TPoly() : order_(1), c_(1) {}
    explicit TPoly(int order) : order_(order), c_(order) {
        if (order < 1) throw std::invalid_argument("TPoly order must be >= 1");
    }
    TPoly(int order, const Rational& constant) : TPoly(order) { c_[0] = constant; }

    static TPoly monomial(int order, const Rational& coeff, int power) {
        TPoly p(order);
        if (power < 0) throw std::invalid_argument("negative t power");
        if (power < order) p.c_[power] = coeff;
        return p;
    }

    int order() const { return order_; }
    const Rational& coeff(int j) const { return c_.at(j); }
    Rational& coeff(int j) { return c_.at(j); }

    bool is_zero() const {
        for (const auto& q : c_)
            if (sgn(q) != 0) return false;
        return true;
    }

    /// Smallest j with c_j != 0, or order() if zero. The t-adic filtration level.
    int valuation() const {
        for (int j = 0; j < order_; ++j)
            if (sgn(c_[j]) != 0) return j;
        return order_;
    }

    TPoly& operator+=(const TPoly& o) {
        check(o);
        for (int j = 0; j < order_; ++j) c_[j] += o.c_[j];
        return *this;
    }
    TPoly& operator-=(const TPoly& o) {
        check(o);
        for (int j = 0; j < order_; ++j) c_[j] -= o.c_[j];
        return *this;
    }
    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
    TPoly operator-() const {
        TPoly r(order_);
        for (int j = 0; j < order_; ++j) r.c_[j] = -c_[j];
        return r;
    }

    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        a.check(b);
        TPoly r(a.order_);
        for (int i = 0; i < a.order_; ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (int j = 0; i + j < a.order_; ++j) {
                if (sgn(b.c_[j]) == 0) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }

    friend TPoly operator*(const TPoly& a, const Rational& s) {
        TPoly r(a.order_);
        for (int j = 0; j < a.order_; ++j) r.c_[j] = a.c_[j] * s;
        return r;
    }
    friend TPoly operator*(const Rational& s, const TPoly& a) { return a * s; }

    friend bool operator==(const TPoly& a, const TPoly& b) {
        a.check(b);
        for (int j = 0; j < a.order_; ++j)
            if (a.c_[j] != b.c_[j]) return false;
        return true;
    }
    friend bool operator!=(const TPoly& a, const TPoly& b) { return !(a == b); }

    std::string str() const;

  private:
    void check(const TPoly& o) const {
        if (order_ != o.order_) throw std::invalid_argument("TPoly order mismatch");
    }
    int order_;
    std::vector<Rational> c_;
};

inline bool is_zero(const TPoly& p) { return p.is_zero(); }

inline std::string TPoly::str() const {
    std::string out;
    for (int j = 0; j < order_; ++j) {
        if (sgn(c_[j]) == 0) continue;
        if (!out.empty()) out += " + ";
        out += c_[j].get_str();
        if (j > 0) out += "*t^" + std::to_string(j);
    }
    return out.empty() ? "0" : out;
}

/// Scalar ring glue used by the templated linear-algebra layer.
template <class K>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static Rational from_rational(const Rational& q, const Rational&) { return q; }
    static bool zero(const Rational& q) { return sgn(q) == 0; }
};

template <>
struct ScalarOps<TPoly> {
    static TPoly from_rational(const Rational& q, const TPoly& like) {
        return TPoly(like.order(), q);
    }
    static bool zero(const TPoly& p) { return p.is_zero(); }
};

}  // namespace properad
