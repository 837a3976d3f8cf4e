#ifndef JETCHAR_HASSE_HPP
#define JETCHAR_HASSE_HPP

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "jetchar/diffring.hpp"

namespace jetchar {

// Affine scheme V(relations) in Spec K[x_0..x_{g-1}]; relations are order-0.
struct AffineScheme {
    std::string name;
    std::vector<std::string> vars;
    std::vector<DiffPoly> relations;
    std::vector<std::map<int, RatFunc>> base_points;  // gen -> value, optional seeds
};

// Prolonged ideal (f, del f, ..., del^n f); gens[k][s] = del^s(relation k).
struct JetIdeal {
    int level = 0;
    std::vector<std::vector<DiffPoly>> gens;

    std::vector<DiffPoly> flat() const;
    size_t count() const;
};

// Element b_0 + b_1 eps + ... + b_n eps^n of D_n(K).
struct TruncatedElement {
    std::vector<RatFunc> coeffs;

    explicit TruncatedElement(int n = 0) : coeffs(n + 1, RatFunc()) {}
    int level() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const;

    TruncatedElement operator+(const TruncatedElement& o) const;
    TruncatedElement operator*(const TruncatedElement& o) const;
    TruncatedElement pow(int e) const;
    bool operator==(const TruncatedElement& o) const { return coeffs == o.coeffs; }
    // Drop the top coefficient (the projection T).
    TruncatedElement project() const;
};

JetIdeal prolong_ideal(const AffineScheme& scheme, int n, const FieldConfig& field);

// The Hasse-Schmidt map r -> r + (del r) eps + ... + (del^n r / n!) eps^n.
TruncatedElement exp_del(const RatFunc& r, int n, const FieldConfig& field);

// Evaluate an order-0 polynomial in D_n(K): coefficients act through exp_del.
TruncatedElement eval_truncated(const DiffPoly& f, const std::map<int, TruncatedElement>& point,
                                int n, const FieldConfig& field);

// Per-relation detail of the two membership routes for one jet.
struct OracleVerdict {
    bool prolonged_ok;
    bool truncated_ok;
};

// Returns the common verdict of the two routes; throws EngineError if they
// ever disagree (they decide the same membership by the jet correspondence).
bool jet_point_oracle(const AffineScheme& scheme, int n,
                      const std::map<uint32_t, RatFunc>& values, const FieldConfig& field,
                      OracleVerdict* detail = nullptr);

struct JetSample {
    std::map<uint32_t, RatFunc> values;
    std::string note;
};

// Triangular solve: extend a base point of the scheme to a valid n-jet, one
// level at a time, choosing unconstrained coordinates at random. Returns
// nullopt when the level system is inconsistent at this base point.
std::optional<JetSample> sample_valid_jet(const AffineScheme& scheme,
                                          const std::map<int, RatFunc>& base_point, int n,
                                          std::mt19937_64& rng, const FieldConfig& field);

// Perturb one pinned coordinate so that some prolonged generator fails.
JetSample perturb_jet(const AffineScheme& scheme, const JetSample& valid, int n,
                      std::mt19937_64& rng, const FieldConfig& field);

// The Legendre affine curve y^2 = x(x-1)(x-lambda) with its 2-torsion points.
AffineScheme legendre_scheme(const RatFunc& lambda);

}  // namespace jetchar

#endif
