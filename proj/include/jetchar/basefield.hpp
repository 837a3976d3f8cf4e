#ifndef JETCHAR_BASEFIELD_HPP
#define JETCHAR_BASEFIELD_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace jetchar {

// Bad user input (CLI maps these to exit code 2).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A structural invariant of the theory failed; this is either an engine bug
// or a truncation artifact and is never silently swallowed (exit code 1).
struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Rational = mpq_class;

Rational rat(long num, long den = 1);
std::string rat_str(const Rational& q);

// Dense univariate polynomial in t over Q. Coefficient i is the coefficient
// of t^i; the top stored coefficient is nonzero unless the polynomial is 0.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(const Rational& c);
    explicit UniPoly(long c);
    static UniPoly t();
    static UniPoly from_coeffs(std::vector<Rational> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;
    Rational coeff(int k) const;
    const Rational& leading() const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator-() const;
    UniPoly operator*(const UniPoly& o) const;
    bool operator==(const UniPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    // Euclidean division; the divisor must be nonzero.
    static void divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);

    UniPoly derivative() const;
    UniPoly monic() const;
    Rational eval(const Rational& t0) const;
    std::string to_string() const;

private:
    void normalize();
    std::vector<Rational> coeffs_;
};

UniPoly gcd(const UniPoly& a, const UniPoly& b);

// Element of K = Q(t): num/den with den monic and gcd(num, den) = 1.
class RatFunc {
public:
    RatFunc() : num_(), den_(UniPoly(1)) {}
    RatFunc(long c) : num_(UniPoly(c)), den_(UniPoly(1)) {}
    explicit RatFunc(const Rational& c) : num_(UniPoly(c)), den_(UniPoly(1)) {}
    explicit RatFunc(UniPoly num) : num_(std::move(num)), den_(UniPoly(1)) {}
    RatFunc(UniPoly num, UniPoly den);
    static RatFunc t();

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_negative() const;  // sign of the leading numerator coefficient

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc inverse() const;
    RatFunc pow(int e) const;

    // num-degree + den-degree; used as the pivot-size heuristic in elimination.
    int degree_metric() const;

    // Evaluation at t = t0; throws InputError at a pole of the denominator.
    Rational eval(const Rational& t0) const;

    std::string to_string() const;

private:
    void normalize();
    UniPoly num_, den_;
};

// The differential field (K, del): either Q(t) with del = d/dt (scaled by
// derivative_of_t) or constants-only with the zero derivation.
struct FieldConfig {
    enum class Mode { RationalFunctions, ConstantsOnly };
    Mode mode = Mode::RationalFunctions;
    RatFunc derivative_of_t = RatFunc(1);

    bool constants_only() const { return mode == Mode::ConstantsOnly; }
    RatFunc derive(const RatFunc& r) const;

    static FieldConfig rational();
    static FieldConfig constants();
};

}  // namespace jetchar

#endif
