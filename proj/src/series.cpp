#include "jetchar/series.hpp"

#include <algorithm>

namespace jetchar {

PowerSeries::PowerSeries(int prec, RatFunc c0) : c_(prec, RatFunc()) {
    if (prec > 0) c_[0] = std::move(c0);
}

PowerSeries PowerSeries::zero(int prec) { return PowerSeries(prec, RatFunc()); }

PowerSeries PowerSeries::identity(int prec) {
    PowerSeries s(prec, RatFunc());
    if (prec > 1) s.c_[1] = RatFunc(1);
    return s;
}

PowerSeries PowerSeries::from_coeffs(std::vector<RatFunc> c) {
    PowerSeries s;
    s.c_ = std::move(c);
    return s;
}

RatFunc PowerSeries::coeff(int k) const {
    if (k < 0 || k >= prec()) return RatFunc();
    return c_[k];
}

void PowerSeries::set_coeff(int k, const RatFunc& v) {
    if (k >= 0 && k < prec()) c_[k] = v;
}

bool PowerSeries::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

PowerSeries PowerSeries::truncated(int prec) const {
    std::vector<RatFunc> c(prec, RatFunc());
    for (int i = 0; i < prec && i < this->prec(); ++i) c[i] = c_[i];
    return from_coeffs(std::move(c));
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
    int p = std::min(prec(), o.prec());
    std::vector<RatFunc> c(p);
    for (int i = 0; i < p; ++i) c[i] = c_[i] + o.c_[i];
    return from_coeffs(std::move(c));
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
    int p = std::min(prec(), o.prec());
    std::vector<RatFunc> c(p);
    for (int i = 0; i < p; ++i) c[i] = c_[i] - o.c_[i];
    return from_coeffs(std::move(c));
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
    int p = std::min(prec(), o.prec());
    std::vector<RatFunc> c(p, RatFunc());
    for (int i = 0; i < p; ++i) {
        if (c_[i].is_zero()) continue;
        for (int j = 0; i + j < p && j < o.prec(); ++j) {
            if (o.c_[j].is_zero()) continue;
            c[i + j] += c_[i] * o.c_[j];
        }
    }
    return from_coeffs(std::move(c));
}

PowerSeries PowerSeries::scaled(const RatFunc& f) const {
    std::vector<RatFunc> c(c_);
    for (auto& x : c) x *= f;
    return from_coeffs(std::move(c));
}

PowerSeries PowerSeries::inverse() const {
    if (prec() == 0 || c_[0].is_zero()) throw InputError("series inverse needs a unit constant term");
    std::vector<RatFunc> r(prec(), RatFunc());
    RatFunc inv0 = c_[0].inverse();
    r[0] = inv0;
    for (int n = 1; n < prec(); ++n) {
        RatFunc acc;
        for (int k = 1; k <= n; ++k) acc += c_[k] * r[n - k];
        r[n] = -(acc * inv0);
    }
    return from_coeffs(std::move(r));
}

PowerSeries PowerSeries::derive_z() const {
    if (prec() <= 1) return zero(0);
    std::vector<RatFunc> c(prec() - 1);
    for (int i = 1; i < prec(); ++i) c[i - 1] = c_[i] * RatFunc(i);
    return from_coeffs(std::move(c));
}

PowerSeries PowerSeries::integrate_z() const {
    std::vector<RatFunc> c(prec() + 1, RatFunc());
    for (int i = 0; i < prec(); ++i) c[i + 1] = c_[i] / RatFunc(i + 1);
    return from_coeffs(std::move(c));
}

PowerSeries PowerSeries::derive_coeffs(const FieldConfig& field) const {
    std::vector<RatFunc> c(c_);
    for (auto& x : c) x = field.derive(x);
    return from_coeffs(std::move(c));
}

PowerSeries PowerSeries::compose(const PowerSeries& inner) const {
    if (inner.prec() > 0 && !inner.coeff(0).is_zero())
        throw InputError("series composition needs inner constant term 0");
    int p = std::min(prec(), inner.prec());
    PowerSeries acc = zero(p);
    for (int k = prec() - 1; k >= 0; --k) {
        acc = acc * inner.truncated(p);
        acc.set_coeff(0, acc.coeff(0) + c_[k]);
    }
    return acc;
}

PowerSeries PowerSeries::reversion() const {
    if (prec() < 2 || !c_[0].is_zero() || c_[1].is_zero())
        throw InputError("series reversion needs c0 = 0 and unit c1");
    int p = prec();
    // Fixed-point iteration m <- (z - (f - c1 m)(m)) / c1 gains one degree per pass.
    PowerSeries m = identity(p).scaled(c_[1].inverse());
    for (int it = 0; it < p; ++it) {
        PowerSeries fm = compose(m);
        PowerSeries err = fm - identity(p);
        if (err.is_zero()) break;
        m = m - err.scaled(c_[1].inverse());
    }
    return m;
}

RatFunc Laurent::coeff(int k) const { return body.coeff(k - shift); }

Laurent Laurent::operator*(const Laurent& o) const {
    return Laurent{shift + o.shift, body * o.body};
}

Laurent Laurent::inverse() const {
    return Laurent{-shift, body.inverse()};
}

Laurent Laurent::derive_z() const {
    // d/dz (z^s * b(z)) = z^{s-1} * (s*b + z*b')
    PowerSeries zb = PowerSeries::identity(body.prec()) * body.derive_z().truncated(body.prec());
    PowerSeries num = body.scaled(RatFunc(shift)) + zb;
    return Laurent{shift - 1, num};
}

Laurent Laurent::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Laurent acc{0, PowerSeries(body.prec(), RatFunc(1))};
    for (int i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

}  // namespace jetchar
