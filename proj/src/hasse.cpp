#include "jetchar/hasse.hpp"

#include <algorithm>

#include "jetchar/linalg.hpp"

namespace jetchar {

std::vector<DiffPoly> JetIdeal::flat() const {
    std::vector<DiffPoly> out;
    for (const auto& rel : gens)
        for (const auto& g : rel) out.push_back(g);
    return out;
}

size_t JetIdeal::count() const {
    size_t n = 0;
    for (const auto& rel : gens) n += rel.size();
    return n;
}

bool TruncatedElement::is_zero() const {
    for (const auto& c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

TruncatedElement TruncatedElement::operator+(const TruncatedElement& o) const {
    TruncatedElement r(std::min(level(), o.level()));
    for (int i = 0; i <= r.level(); ++i) r.coeffs[i] = coeffs[i] + o.coeffs[i];
    return r;
}

TruncatedElement TruncatedElement::operator*(const TruncatedElement& o) const {
    TruncatedElement r(std::min(level(), o.level()));
    for (int i = 0; i <= r.level(); ++i)
        for (int j = 0; i + j <= r.level() && j <= o.level(); ++j)
            r.coeffs[i + j] += coeffs[i] * o.coeffs[j];
    return r;
}

TruncatedElement TruncatedElement::pow(int e) const {
    TruncatedElement r(level());
    r.coeffs[0] = RatFunc(1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

TruncatedElement TruncatedElement::project() const {
    TruncatedElement r(level() - 1);
    for (int i = 0; i <= r.level(); ++i) r.coeffs[i] = coeffs[i];
    return r;
}

JetIdeal prolong_ideal(const AffineScheme& scheme, int n, const FieldConfig& field) {
    if (n < 0) throw InputError("prolongation level must be nonnegative");
    JetIdeal ideal;
    ideal.level = n;
    for (const auto& f : scheme.relations) {
        if (f.max_order() != 0 && !f.is_zero())
            throw InputError("scheme relations must have order 0");
        std::vector<DiffPoly> tower;
        tower.push_back(f);
        for (int s = 1; s <= n; ++s) tower.push_back(total_derive(tower.back(), field));
        ideal.gens.push_back(std::move(tower));
    }
    return ideal;
}

TruncatedElement exp_del(const RatFunc& r, int n, const FieldConfig& field) {
    TruncatedElement e(n);
    RatFunc d = r;
    Rational fact(1);
    for (int i = 0; i <= n; ++i) {
        if (i > 0) {
            d = field.derive(d);
            fact *= i;
        }
        e.coeffs[i] = d * RatFunc(Rational(1) / fact);
    }
    return e;
}

TruncatedElement eval_truncated(const DiffPoly& f, const std::map<int, TruncatedElement>& point,
                                int n, const FieldConfig& field) {
    TruncatedElement acc(n);
    for (const auto& [m, c] : f.terms()) {
        TruncatedElement term = exp_del(c, n, field);
        for (const auto& [vk, e] : m.factors()) {
            JetVar v = unpack_var(vk);
            if (v.order != 0) throw InputError("eval_truncated expects an order-0 polynomial");
            auto it = point.find(v.gen);
            if (it == point.end()) throw InputError("eval_truncated: unassigned variable");
            term = term * it->second.pow(e);
        }
        acc = acc + term;
    }
    return acc;
}

bool jet_point_oracle(const AffineScheme& scheme, int n,
                      const std::map<uint32_t, RatFunc>& values, const FieldConfig& field,
                      OracleVerdict* detail) {
    JetIdeal ideal = prolong_ideal(scheme, n, field);
    bool prolonged_ok = true;
    for (const auto& g : ideal.flat())
        if (!eval_at(g, values).is_zero()) {
            prolonged_ok = false;
            break;
        }

    // Independent route: the Hasse-Schmidt dictionary b_i = value(del^i x)/i!.
    std::map<int, TruncatedElement> point;
    int gens = static_cast<int>(scheme.vars.size());
    for (int j = 0; j < gens; ++j) {
        TruncatedElement e(n);
        Rational fact(1);
        for (int i = 0; i <= n; ++i) {
            if (i > 0) fact *= i;
            auto it = values.find(pack_var(Side::Single, j, i));
            if (it == values.end()) throw InputError("jet oracle: missing jet coordinate");
            e.coeffs[i] = it->second * RatFunc(Rational(1) / fact);
        }
        point.emplace(j, e);
    }
    bool truncated_ok = true;
    for (const auto& f : scheme.relations)
        if (!eval_truncated(f, point, n, field).is_zero()) {
            truncated_ok = false;
            break;
        }

    if (detail) *detail = OracleVerdict{prolonged_ok, truncated_ok};
    if (prolonged_ok != truncated_ok)
        throw EngineError("jet oracle disagreement between prolonged-ideal and D_n(K) membership");
    return prolonged_ok;
}

namespace {

RatFunc random_small_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    return RatFunc(rat(num(rng), den(rng)));
}

}  // namespace

std::optional<JetSample> sample_valid_jet(const AffineScheme& scheme,
                                          const std::map<int, RatFunc>& base_point, int n,
                                          std::mt19937_64& rng, const FieldConfig& field) {
    JetIdeal ideal = prolong_ideal(scheme, n, field);
    int gens = static_cast<int>(scheme.vars.size());
    JetSample sample;
    for (int j = 0; j < gens; ++j) {
        auto it = base_point.find(j);
        if (it == base_point.end()) throw InputError("base point must assign every variable");
        sample.values[pack_var(Side::Single, j, 0)] = it->second;
    }
    for (const auto& rel : ideal.gens)
        if (!eval_at(rel[0], sample.values).is_zero()) return std::nullopt;

    for (int s = 1; s <= n; ++s) {
        // Level-s generators are affine-linear in the order-s coordinates.
        std::map<uint32_t, RatFunc> padded = sample.values;
        for (int j = 0; j < gens; ++j) padded[pack_var(Side::Single, j, s)] = RatFunc();
        KMat rows;
        KVec rhs;
        for (const auto& rel : ideal.gens) {
            const DiffPoly& g = rel[s];
            KVec row(gens, RatFunc());
            bool any = false;
            for (int j = 0; j < gens; ++j) {
                DiffPoly d = partial_derivative(g, JetVar{Side::Single, j, s});
                row[j] = eval_at(d, padded);
                if (!row[j].is_zero()) any = true;
            }
            RatFunc c0 = eval_at(g, padded);
            if (!any) {
                if (!c0.is_zero()) return std::nullopt;  // inconsistent at this point
                continue;
            }
            rows.push_back(row);
            rhs.push_back(-c0);
        }
        // Gaussian elimination with random values for the free coordinates.
        std::vector<int> pivot_of_row(rows.size(), -1);
        std::vector<bool> pinned(gens, false);
        for (size_t r = 0; r < rows.size(); ++r) {
            for (size_t p = 0; p < r; ++p) {
                if (pivot_of_row[p] < 0) continue;
                RatFunc f = rows[r][pivot_of_row[p]];
                if (f.is_zero()) continue;
                for (int c = 0; c < gens; ++c) rows[r][c] -= f * rows[p][c];
                rhs[r] -= f * rhs[p];
            }
            int piv = -1;
            for (int c = 0; c < gens; ++c)
                if (!rows[r][c].is_zero()) {
                    piv = c;
                    break;
                }
            if (piv < 0) {
                if (!rhs[r].is_zero()) return std::nullopt;
                continue;
            }
            RatFunc inv = rows[r][piv].inverse();
            for (int c = 0; c < gens; ++c) rows[r][c] *= inv;
            rhs[r] *= inv;
            pivot_of_row[r] = piv;
            pinned[piv] = true;
        }
        std::map<int, RatFunc> level_vals;
        for (int j = 0; j < gens; ++j)
            if (!pinned[j]) level_vals[j] = random_small_rational(rng);
        // Back-substitute in reverse pivot order.
        for (int r = static_cast<int>(rows.size()) - 1; r >= 0; --r) {
            if (pivot_of_row[r] < 0) continue;
            RatFunc val = rhs[r];
            for (int c = 0; c < gens; ++c) {
                if (c == pivot_of_row[r] || rows[r][c].is_zero()) continue;
                auto it = level_vals.find(c);
                if (it == level_vals.end())
                    throw EngineError("triangular solve: unresolved coordinate dependency");
                val -= rows[r][c] * it->second;
            }
            level_vals[pivot_of_row[r]] = val;
        }
        for (int j = 0; j < gens; ++j)
            sample.values[pack_var(Side::Single, j, s)] = level_vals.at(j);
        for (const auto& rel : ideal.gens)
            if (!eval_at(rel[s], sample.values).is_zero())
                throw EngineError("triangular solve produced an invalid jet");
    }
    return sample;
}

JetSample perturb_jet(const AffineScheme& scheme, const JetSample& valid, int n,
                      std::mt19937_64& rng, const FieldConfig& field) {
    JetIdeal ideal = prolong_ideal(scheme, n, field);
    std::uniform_int_distribution<int> pick_order(1, n);
    std::uniform_int_distribution<int> pick_gen(0, static_cast<int>(scheme.vars.size()) - 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
        JetSample out = valid;
        uint32_t key = pack_var(Side::Single, pick_gen(rng), pick_order(rng));
        RatFunc delta = random_small_rational(rng);
        if (delta.is_zero()) delta = RatFunc(1);
        out.values[key] = out.values[key] + delta;
        for (const auto& g : ideal.flat())
            if (!eval_at(g, out.values).is_zero()) {
                out.note = "perturbed " + var_name(unpack_var(key));
                return out;
            }
    }
    throw EngineError("failed to produce an invalid jet by perturbation");
}

AffineScheme legendre_scheme(const RatFunc& lambda) {
    AffineScheme s;
    s.name = "legendre";
    s.vars = {"x", "y"};
    JetVar x{Side::Single, 0, 0}, y{Side::Single, 1, 0};
    DiffPoly px = DiffPoly::var(x);
    DiffPoly py = DiffPoly::var(y);
    DiffPoly one = DiffPoly::constant(RatFunc(1));
    DiffPoly rel = py * py - px * (px - one) * (px - DiffPoly::constant(lambda));
    s.relations.push_back(rel);
    s.base_points = {{{0, RatFunc()}, {1, RatFunc()}},
                     {{0, RatFunc(1)}, {1, RatFunc()}},
                     {{0, lambda}, {1, RatFunc()}}};
    return s;
}

}  // namespace jetchar
