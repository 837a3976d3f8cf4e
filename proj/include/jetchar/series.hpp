#ifndef JETCHAR_SERIES_HPP
#define JETCHAR_SERIES_HPP

#include <vector>

#include "jetchar/basefield.hpp"

namespace jetchar {

// Truncated power series in a local coordinate z with coefficients in K.
// prec = number of stored coefficients (degrees 0 .. prec-1).
class PowerSeries {
public:
    PowerSeries() = default;
    PowerSeries(int prec, RatFunc c0);
    static PowerSeries zero(int prec);
    static PowerSeries identity(int prec);  // z
    static PowerSeries from_coeffs(std::vector<RatFunc> c);

    int prec() const { return static_cast<int>(c_.size()); }
    RatFunc coeff(int k) const;
    void set_coeff(int k, const RatFunc& v);
    const std::vector<RatFunc>& coeffs() const { return c_; }
    bool is_zero() const;

    PowerSeries truncated(int prec) const;
    PowerSeries operator+(const PowerSeries& o) const;
    PowerSeries operator-(const PowerSeries& o) const;
    PowerSeries operator*(const PowerSeries& o) const;
    PowerSeries scaled(const RatFunc& f) const;

    PowerSeries inverse() const;            // requires unit constant term
    PowerSeries derive_z() const;           // d/dz, precision drops by one
    PowerSeries integrate_z() const;        // primitive with zero constant term
    PowerSeries derive_coeffs(const FieldConfig& field) const;  // coefficient-wise del
    PowerSeries compose(const PowerSeries& inner) const;  // inner(0) must be 0
    PowerSeries reversion() const;          // compositional inverse; c0=0, c1 unit

private:
    std::vector<RatFunc> c_;
};

// Laurent series z^shift * (power series).
struct Laurent {
    int shift = 0;
    PowerSeries body;

    RatFunc coeff(int k) const;  // coefficient of z^k
    Laurent operator*(const Laurent& o) const;
    Laurent inverse() const;
    Laurent derive_z() const;
    Laurent pow(int e) const;
    static Laurent from_series(PowerSeries s) { return Laurent{0, std::move(s)}; }
};

}  // namespace jetchar

#endif
