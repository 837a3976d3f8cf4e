#ifndef JETCHAR_DIFFRING_HPP
#define JETCHAR_DIFFRING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetchar/basefield.hpp"

namespace jetchar {

enum class Side : uint8_t { Single = 0, Left = 1, Right = 2 };

// A jet coordinate del^order(x_gen), optionally tagged with a tensor-square
// side. Packed into a uint32 so monomials sort on (side, gen, order).
struct JetVar {
    Side side = Side::Single;
    int gen = 0;
    int order = 0;
};

constexpr uint32_t pack_var(Side s, int gen, int order) {
    return (static_cast<uint32_t>(s) << 28) | (static_cast<uint32_t>(gen) << 14) |
           static_cast<uint32_t>(order);
}
inline uint32_t pack_var(const JetVar& v) { return pack_var(v.side, v.gen, v.order); }
inline JetVar unpack_var(uint32_t k) {
    return JetVar{static_cast<Side>(k >> 28), static_cast<int>((k >> 14) & 0x3fff),
                  static_cast<int>(k & 0x3fff)};
}

// Sparse exponent vector, kept sorted by packed variable key.
class Monomial {
public:
    Monomial() = default;
    static Monomial var(const JetVar& v, int exp = 1);

    int degree() const { return degree_; }
    bool is_constant() const { return factors_.empty(); }
    const std::vector<std::pair<uint32_t, int>>& factors() const { return factors_; }

    Monomial operator*(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return factors_ == o.factors_; }
    // Graded order: total degree first, then the packed factor sequence.
    bool operator<(const Monomial& o) const {
        if (degree_ != o.degree_) return degree_ < o.degree_;
        return factors_ < o.factors_;
    }

    bool contains_order_below(int k) const;  // any factor of order < k
    int max_order() const;

private:
    friend class DiffPoly;
    std::vector<std::pair<uint32_t, int>> factors_;
    int degree_ = 0;
};

constexpr int kNoTrunc = -1;

// Sparse polynomial over K in jet variables, optionally truncated by total
// degree (every jet variable counts with degree 1).
class DiffPoly {
public:
    DiffPoly() = default;
    explicit DiffPoly(int trunc) : trunc_(trunc) {}

    static DiffPoly constant(const RatFunc& c, int trunc = kNoTrunc);
    static DiffPoly var(const JetVar& v, int trunc = kNoTrunc);
    static DiffPoly term(const Monomial& m, const RatFunc& c, int trunc = kNoTrunc);

    bool is_zero() const { return terms_.empty(); }
    int trunc() const { return trunc_; }
    const std::map<Monomial, RatFunc>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }
    int max_order() const;
    int degree() const;

    void add_term(const Monomial& m, const RatFunc& c);

    DiffPoly operator+(const DiffPoly& o) const;
    DiffPoly operator-(const DiffPoly& o) const;
    DiffPoly operator-() const;
    DiffPoly operator*(const DiffPoly& o) const;
    DiffPoly scaled(const RatFunc& c) const;
    DiffPoly pow(int e) const;
    bool operator==(const DiffPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }

    RatFunc coeff(const Monomial& m) const;
    DiffPoly with_trunc(int trunc) const;  // re-truncate

    std::string to_string() const;

private:
    static int combined_trunc(int a, int b);
    std::map<Monomial, RatFunc> terms_;
    int trunc_ = kNoTrunc;
};

// Total derivation: acts on coefficients through the field derivation and
// sends del^i(x_j) to del^{i+1}(x_j) on every side. Graded of degree 0.
DiffPoly total_derive(const DiffPoly& p, const FieldConfig& field);
// Same, but throws EngineError when a produced order exceeds max_order.
DiffPoly total_derive_checked(const DiffPoly& p, const FieldConfig& field, int max_order);
DiffPoly total_derive_pow(const DiffPoly& p, const FieldConfig& field, int times);

// K-algebra substitution; every variable occurring in p must have an image.
DiffPoly substitute(const DiffPoly& p, const std::map<uint32_t, DiffPoly>& images,
                    int target_trunc);

// iota^*: kill every monomial containing a variable of order < k.
DiffPoly kill_below_order(const DiffPoly& p, int k);
// Convenience: restriction to N^n (order-0 variables set to zero).
inline DiffPoly restrict_to_n(const DiffPoly& p) { return kill_below_order(p, 1); }

// Coefficients of the total-degree-1 monomials.
std::map<uint32_t, RatFunc> linear_part(const DiffPoly& p);

// True iff every monomial contains at least one order-0 variable.
bool in_augmentation_ideal(const DiffPoly& p);

// Split p = f1 + f2 with f1 made of the monomials containing an order-0
// variable and f2 the rest (the constructive Lemma-deltaT split).
std::pair<DiffPoly, DiffPoly> augmentation_split(const DiffPoly& p);

// Evaluate at a K-point of the jet coordinates; missing variables are errors.
RatFunc eval_at(const DiffPoly& p, const std::map<uint32_t, RatFunc>& values);

// Formal partial derivative with respect to one jet variable.
DiffPoly partial_derivative(const DiffPoly& p, const JetVar& v);

// Retag a Single-side polynomial onto one tensor factor.
DiffPoly to_side(const DiffPoly& p, Side side);

// Shift every generator index by offset (used to embed product factors).
DiffPoly remap_generators(const DiffPoly& p, int offset);

std::string var_name(const JetVar& v);

}  // namespace jetchar

#endif
