#include "jetchar/basefield.hpp"

#include <sstream>
#include <utility>

namespace jetchar {

Rational rat(long num, long den) {
    if (den == 0) throw InputError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string rat_str(const Rational& q) { return q.get_str(); }

UniPoly::UniPoly(const Rational& c) {
    if (c != 0) coeffs_.push_back(c);
}

UniPoly::UniPoly(long c) {
    if (c != 0) coeffs_.push_back(Rational(c));
}

UniPoly UniPoly::t() {
    UniPoly p;
    p.coeffs_ = {Rational(0), Rational(1)};
    return p;
}

UniPoly UniPoly::from_coeffs(std::vector<Rational> coeffs) {
    UniPoly p;
    p.coeffs_ = std::move(coeffs);
    p.normalize();
    return p;
}

bool UniPoly::is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

Rational UniPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[k];
}

const Rational& UniPoly::leading() const {
    static const Rational zero(0);
    return coeffs_.empty() ? zero : coeffs_.back();
}

void UniPoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return from_coeffs(std::move(c));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator-() const {
    std::vector<Rational> c(coeffs_);
    for (auto& x : c) x = -x;
    return from_coeffs(std::move(c));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    return from_coeffs(std::move(c));
}

void UniPoly::divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
    if (b.is_zero()) throw InputError("polynomial division by zero");
    std::vector<Rational> rem(a.coeffs_);
    std::vector<Rational> quot;
    int db = b.degree();
    if (static_cast<int>(rem.size()) - 1 >= db)
        quot.assign(rem.size() - db, Rational(0));
    while (static_cast<int>(rem.size()) - 1 >= db && !rem.empty()) {
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        int dr = static_cast<int>(rem.size()) - 1;
        if (dr < db) break;
        Rational f = rem.back() / b.coeffs_.back();
        quot[dr - db] = f;
        for (int i = 0; i <= db; ++i) rem[dr - db + i] -= f * b.coeffs_[i];
        rem.pop_back();
    }
    q = from_coeffs(std::move(quot));
    r = from_coeffs(std::move(rem));
}

UniPoly UniPoly::derivative() const {
    if (coeffs_.size() <= 1) return UniPoly();
    std::vector<Rational> c(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    return from_coeffs(std::move(c));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return UniPoly();
    std::vector<Rational> c(coeffs_);
    Rational lead = c.back();
    for (auto& x : c) x /= lead;
    return from_coeffs(std::move(c));
}

Rational UniPoly::eval(const Rational& t0) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t0 + *it;
    return acc;
}

std::string UniPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Rational c = coeffs_[k];
        if (c == 0) continue;
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? "-" : "+");
        }
        if (k == 0) {
            out << a.get_str();
        } else {
            if (a != 1) out << a.get_str() << "*";
            out << "t";
            if (k > 1) out << "^" << k;
        }
    }
    return out.str();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly q, r;
        UniPoly::divmod(x, y, q, r);
        x = y;
        y = r.monic();  // monic remainders keep coefficient growth down
    }
    return x.monic();
}

RatFunc::RatFunc(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw InputError("rational function with zero denominator");
    normalize();
}

RatFunc RatFunc::t() { return RatFunc(UniPoly::t()); }

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = UniPoly(1);
        return;
    }
    UniPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
        UniPoly q, r;
        UniPoly::divmod(num_, g, q, r);
        num_ = q;
        UniPoly::divmod(den_, g, q, r);
        den_ = q;
    }
    Rational lead = den_.leading();
    if (lead != 1) {
        std::vector<Rational> nc(num_.coeffs()), dc(den_.coeffs());
        for (auto& x : nc) x /= lead;
        for (auto& x : dc) x /= lead;
        num_ = UniPoly::from_coeffs(std::move(nc));
        den_ = UniPoly::from_coeffs(std::move(dc));
    }
}

bool RatFunc::is_one() const { return num_.is_one() && den_.is_one(); }

bool RatFunc::is_negative() const { return !num_.is_zero() && num_.leading() < 0; }

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc();
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw InputError("division by zero in K");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw InputError("inverse of zero in K");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc acc(1), base = *this;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

int RatFunc::degree_metric() const {
    if (is_zero()) return 0;
    return num_.degree() + den_.degree();
}

Rational RatFunc::eval(const Rational& t0) const {
    Rational d = den_.eval(t0);
    if (d == 0) throw InputError("evaluation at a pole");
    return num_.eval(t0) / d;
}

std::string RatFunc::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatFunc FieldConfig::derive(const RatFunc& r) const {
    if (constants_only()) return RatFunc();
    // (n/d)' = (n'd - nd')/d^2, then scaled by dt/dt-image.
    RatFunc core(r.num().derivative() * r.den() - r.num() * r.den().derivative(),
                 r.den() * r.den());
    return core * derivative_of_t;
}

FieldConfig FieldConfig::rational() { return FieldConfig{}; }

FieldConfig FieldConfig::constants() {
    FieldConfig f;
    f.mode = Mode::ConstantsOnly;
    f.derivative_of_t = RatFunc();
    return f;
}

}  // namespace jetchar
