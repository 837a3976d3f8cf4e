#include "jetchar/characters.hpp"

#include <algorithm>
#include <map>

namespace jetchar {

namespace {

JetVar xv(int gen, int order) { return JetVar{Side::Single, gen, order}; }

// All monomials of degree in [1, D] over the jet variables del^i x_0, i <= n.
struct MonomialEnum {
    int n, D;
    std::vector<Monomial> out;
    void go(int order, int remaining, const Monomial& m) {
        if (order > n) {
            if (m.degree() >= 1) out.push_back(m);
            return;
        }
        go(order + 1, remaining, m);
        for (int e = 1; e <= remaining; ++e)
            go(order + 1, remaining - e, m * Monomial::var(JetVar{Side::Single, 0, order}, e));
    }
};

std::vector<Monomial> enumerate_monomials(int n, int D) {
    MonomialEnum rec{n, D, {}};
    rec.go(0, D, Monomial());
    std::sort(rec.out.begin(), rec.out.end());
    return rec.out;
}

// Coefficient vectors of polynomials over the union of their monomials.
std::pair<std::vector<KVec>, std::vector<Monomial>> coord_vectors(
    const std::vector<DiffPoly>& polys) {
    std::map<Monomial, int> index;
    for (const auto& p : polys)
        for (const auto& [m, c] : p.terms()) index.emplace(m, 0);
    int k = 0;
    std::vector<Monomial> monos;
    monos.reserve(index.size());
    for (auto& [m, i] : index) {
        i = k++;
        monos.push_back(m);
    }
    std::vector<KVec> vecs;
    vecs.reserve(polys.size());
    for (const auto& p : polys) {
        KVec v(k, RatFunc());
        for (const auto& [m, c] : p.terms()) v[index.at(m)] = c;
        vecs.push_back(std::move(v));
    }
    return {vecs, monos};
}

// Dense reduced-echelon accumulator with a fixed pivot direction.
class DenseEchelon {
public:
    DenseEchelon(int cols, bool descending) : cols_(cols), descending_(descending) {}

    // Reduces v in place; returns the pivot column if v extended the span.
    int insert(KVec& v) {
        reduce(v);
        int piv = find_pivot(v);
        if (piv < 0) return -1;
        RatFunc inv = v[piv].inverse();
        for (auto& c : v) c *= inv;
        for (auto& row : rows_) {
            RatFunc f = row[piv];
            if (f.is_zero()) continue;
            for (int c = 0; c < cols_; ++c) row[c] -= f * v[c];
        }
        rows_.push_back(v);
        pivots_.push_back(piv);
        return piv;
    }

    void reduce(KVec& v) const {
        for (size_t r = 0; r < rows_.size(); ++r) {
            RatFunc f = v[pivots_[r]];
            if (f.is_zero()) continue;
            for (int c = 0; c < cols_; ++c) v[c] -= f * rows_[r][c];
        }
    }

    const std::vector<KVec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

private:
    int find_pivot(const KVec& v) const {
        for (int i = 0; i < cols_; ++i) {
            int c = descending_ ? cols_ - 1 - i : i;
            if (!v[c].is_zero()) return c;
        }
        return -1;
    }
    int cols_;
    bool descending_;
    std::vector<KVec> rows_;
    std::vector<int> pivots_;
};

DiffPoly poly_from_vec(const KVec& v, const std::vector<Monomial>& monos, int trunc) {
    DiffPoly p(trunc);
    for (size_t c = 0; c < monos.size(); ++c)
        if (!v[c].is_zero()) p.add_term(monos[c], v[c]);
    return p;
}

// Formal character space of a one-dimensional leaf: the polynomial solutions
// of the additivity equation mod degree D+1.
std::vector<DiffPoly> solve_formal_leaf(const FormalGroupLaw& law, int n, int D,
                                        const FieldConfig& field) {
    std::vector<Monomial> ansatz = enumerate_monomials(n, D);
    JetComul jc = jet_comul(law, n, field);
    auto imgs = jc.image_map();

    std::map<Monomial, std::map<int, RatFunc>> equations;
    for (size_t k = 0; k < ansatz.size(); ++k) {
        DiffPoly mu = DiffPoly::term(ansatz[k], RatFunc(1), D);
        DiffPoly defect =
            substitute(mu, imgs, D) - to_side(mu, Side::Left) - to_side(mu, Side::Right);
        for (const auto& [m, c] : defect.terms()) equations[m][static_cast<int>(k)] = c;
    }
    SparseEchelon ech(static_cast<int>(ansatz.size()));
    for (auto& [m, row] : equations) ech.add_row(std::move(row));

    std::vector<DiffPoly> basis;
    for (const auto& alpha : ech.nullspace_basis()) {
        DiffPoly p(D);
        for (size_t k = 0; k < ansatz.size(); ++k)
            if (!alpha[k].is_zero()) p.add_term(ansatz[k], alpha[k]);
        basis.push_back(std::move(p));
    }
    if (static_cast<int>(basis.size()) != n + 1)
        throw EngineError("formal character space of " + law.name + " at order " +
                          std::to_string(n) + " has dimension " + std::to_string(basis.size()) +
                          ", expected " + std::to_string(n + 1) + " (truncation failure)");
    return basis;
}

// Admissible operator subspace of K^{n+1}: vectors (a_0..a_n) for which
// sum_s a_s (del_t^s omega) dz is the differential of a coordinate-ring
// function, decided on the model's Laurent window.
std::vector<KVec> admissible_operators(const GlobalityModel& model, int n,
                                       const FieldConfig& field) {
    if (n > model.max_operator_order)
        throw InputError("globality window was built for operator order <= " +
                         std::to_string(model.max_operator_order) +
                         "; rebuild the group with a larger max order");
    std::vector<PowerSeries> cand;
    cand.push_back(model.omega);
    for (int s = 1; s <= n; ++s) cand.push_back(cand.back().derive_coeffs(field));

    int ncols = n + 1 + static_cast<int>(model.dcolumns.size());
    SparseEchelon ech(ncols);
    for (int e = model.window_lo; e <= model.window_hi; ++e) {
        std::map<int, RatFunc> row;
        for (int s = 0; s <= n; ++s) {
            RatFunc c = e >= 0 ? cand[s].coeff(e) : RatFunc();
            if (!c.is_zero()) row.emplace(s, c);
        }
        for (size_t j = 0; j < model.dcolumns.size(); ++j) {
            RatFunc c = model.dcolumns[j].coeff(e);
            if (!c.is_zero()) row.emplace(n + 1 + static_cast<int>(j), c);
        }
        ech.add_row(std::move(row));
    }
    std::vector<KVec> W;
    for (const auto& v : ech.nullspace_basis()) {
        KVec a(v.begin(), v.begin() + (n + 1));
        bool nonzero = false;
        for (const auto& c : a) nonzero = nonzero || !c.is_zero();
        if (nonzero) W.push_back(std::move(a));
    }
    return W;
}

std::vector<DiffPoly> solve_leaf(const FormalGroupLaw& law, int n, int D,
                                 const FieldConfig& field) {
    std::vector<DiffPoly> formal = solve_formal_leaf(law, n, D, field);
    if (!law.globality) throw EngineError("leaf law without a globality model: " + law.name);

    std::vector<KVec> W = admissible_operators(*law.globality, n, field);
    std::vector<KVec> ann = nullspace(W, n + 1);

    KMat cond;
    for (const auto& f : ann) {
        KVec row;
        for (const auto& p : formal) {
            auto lp = linear_part(p);
            RatFunc acc;
            for (int i = 0; i <= n; ++i) {
                auto it = lp.find(pack_var(Side::Single, 0, i));
                if (it != lp.end()) acc += f[i] * it->second;
            }
            row.push_back(acc);
        }
        cond.push_back(std::move(row));
    }
    std::vector<DiffPoly> basis;
    for (const auto& combo : nullspace(cond, static_cast<int>(formal.size()))) {
        DiffPoly p(D);
        for (size_t j = 0; j < formal.size(); ++j)
            if (!combo[j].is_zero()) p = p + formal[j].scaled(combo[j]);
        basis.push_back(std::move(p));
    }
    return basis;
}

}  // namespace

DiffPoly additivity_defect(const FormalGroupLaw& law, int n, const DiffPoly& p,
                           const FieldConfig& field) {
    if (p.max_order() > n) throw InputError("polynomial order exceeds the jet level");
    JetComul jc = jet_comul(law, n, field);
    auto imgs = jc.image_map();
    return substitute(p, imgs, law.trunc) - to_side(p, Side::Left) - to_side(p, Side::Right);
}

std::vector<DiffPoly> echelon_polys(const std::vector<DiffPoly>& polys, bool descending) {
    auto [vecs, monos] = coord_vectors(polys);
    DenseEchelon ech(static_cast<int>(monos.size()), descending);
    for (auto& v : vecs) ech.insert(v);
    std::vector<size_t> order(ech.rows().size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return descending ? ech.pivots()[a] > ech.pivots()[b] : ech.pivots()[a] < ech.pivots()[b];
    });
    int trunc = polys.empty() ? kNoTrunc : polys.front().trunc();
    std::vector<DiffPoly> out;
    out.reserve(order.size());
    for (size_t idx : order) out.push_back(poly_from_vec(ech.rows()[idx], monos, trunc));
    return out;
}

int poly_span_rank(const std::vector<DiffPoly>& polys) {
    auto [vecs, monos] = coord_vectors(polys);
    (void)monos;
    return span_rank(vecs);
}

std::vector<DiffPoly> solve_characters(const FormalGroupLaw& law, int n, int D,
                                       const FieldConfig& field) {
    if (n < 0) throw InputError("character order must be nonnegative");
    std::vector<DiffPoly> basis;
    if (law.is_leaf()) {
        if (law.g != 1)
            throw InputError("character analysis needs a product of one-dimensional laws");
        basis = solve_leaf(law, n, D, field);
    } else {
        int offset = 0;
        for (const auto& factor : law.factors) {
            for (const auto& p : solve_characters(factor, n, D, field))
                basis.push_back(remap_generators(p, offset));
            offset += factor.g;
        }
    }
    basis = echelon_polys(basis);

    // Characters are separated by their linear parts (exact sequence (io)
    // plus unitriangular log coordinates); a violation means truncation junk.
    std::vector<DiffPoly> linparts;
    for (const auto& p : basis) {
        DiffPoly lp;
        for (const auto& [v, c] : linear_part(p)) lp.add_term(Monomial::var(unpack_var(v)), c);
        linparts.push_back(std::move(lp));
    }
    if (poly_span_rank(linparts) != static_cast<int>(basis.size()))
        throw EngineError("characters of " + law.name +
                          " are not separated by linear parts (truncation failure)");
    return basis;
}

Character make_character(int g, const DiffPoly& theta) {
    Character ch;
    ch.theta = theta;
    ch.order = theta.max_order();
    ch.leading.assign(g, RatFunc());
    auto lp = linear_part(theta);
    for (int j = 0; j < g; ++j) {
        auto it = lp.find(pack_var(Side::Single, j, ch.order));
        if (it != lp.end()) ch.leading[j] = it->second;
    }
    bool nonzero = false;
    for (const auto& c : ch.leading) nonzero = nonzero || !c.is_zero();
    if (!theta.is_zero() && !nonzero)
        throw EngineError("character with vanishing leading linear term (Prop. leadterm)");
    return ch;
}

Character del_action(const FormalGroupLaw& law, const Character& ch, const FieldConfig& field) {
    DiffPoly dtheta = total_derive(ch.theta, field);
    DiffPoly defect = additivity_defect(law, ch.order + 1, dtheta, field);
    if (!defect.is_zero()) throw EngineError("del of a character failed the additivity re-check");
    Character out = make_character(law.g, dtheta);
    if (out.order != ch.order + 1 || !(out.leading == ch.leading))
        throw EngineError("leading term not preserved under del (Lemma partlead)");
    return out;
}

std::vector<int> derive_h(const std::vector<int>& l, int g) {
    std::vector<int> h(l.size(), 0);
    if (l.size() >= 2) {
        h[1] = g - l[0] - l[1];
        for (size_t i = 2; i < l.size(); ++i) h[i] = h[i - 1] - l[i];
    }
    for (size_t i = 0; i < h.size(); ++i)
        if (h[i] < 0)
            throw EngineError("negative h_" + std::to_string(i) +
                              " (inconsistent dims: engine or truncation failure)");
    for (size_t i = 2; i < h.size(); ++i)
        if (h[i] > h[i - 1])
            throw EngineError("h increases at n = " + std::to_string(i) +
                              " (inconsistent dims: engine or truncation failure)");
    return h;
}

bool iota_leading_check(const Character& ch, int g) {
    DiffPoly top = kill_below_order(ch.theta, ch.order);
    DiffPoly expect(ch.theta.trunc());
    for (int j = 0; j < g; ++j)
        if (!ch.leading[j].is_zero()) expect.add_term(Monomial::var(xv(j, ch.order)), ch.leading[j]);
    return top == expect;
}

namespace {

// Canonical representatives of X_i modulo span(sub): candidates that extend
// the echelon of sub, each fully reduced against everything else.
std::vector<DiffPoly> quotient_basis(const std::vector<DiffPoly>& sub,
                                     const std::vector<DiffPoly>& candidates, bool descending,
                                     int trunc) {
    std::vector<DiffPoly> all = sub;
    for (const auto& c : candidates) all.push_back(c);
    auto [vecs, monos] = coord_vectors(all);
    DenseEchelon ech(static_cast<int>(monos.size()), descending);
    for (size_t i = 0; i < sub.size(); ++i) ech.insert(vecs[i]);
    std::vector<int> new_pivots;
    for (size_t i = sub.size(); i < vecs.size(); ++i) {
        int piv = ech.insert(vecs[i]);
        if (piv >= 0) new_pivots.push_back(piv);
    }
    std::sort(new_pivots.begin(), new_pivots.end());
    if (descending) std::reverse(new_pivots.begin(), new_pivots.end());
    std::vector<DiffPoly> out;
    for (int piv : new_pivots) {
        for (size_t r = 0; r < ech.rows().size(); ++r)
            if (ech.pivots()[r] == piv) {
                out.push_back(poly_from_vec(ech.rows()[r], monos, trunc));
                break;
            }
    }
    return out;
}

}  // namespace

CharacterSpace analyze_characters(const FormalGroupLaw& law, int max_order, int D,
                                  const FieldConfig& field, const AnalyzeOptions& opts) {
    CharacterSpace space;
    space.group = law.name;
    space.g = law.g;
    space.trunc = D;
    space.max_order = max_order;
    space.ext_dim = law.ext_dim;
    space.orders.resize(max_order + 1);

    for (int n = 0; n <= max_order; ++n) {
        space.orders[n].basis = solve_characters(law, n, D, field);
        space.orders[n].dimX = static_cast<int>(space.orders[n].basis.size());
    }

    std::vector<int> l(max_order + 1, 0);
    l[0] = space.orders[0].dimX;
    for (int n = 1; n <= max_order; ++n) {
        std::vector<DiffPoly> span = space.orders[n - 1].basis;
        for (const auto& p : space.orders[n - 1].basis) span.push_back(total_derive(p, field));
        l[n] = space.orders[n].dimX - poly_span_rank(span);
        if (l[n] < 0) throw EngineError("negative primitive dimension (engine failure)");
    }
    std::vector<int> h = derive_h(l, law.g);
    for (int n = 0; n <= max_order; ++n) {
        space.orders[n].l = l[n];
        space.orders[n].h = h[n];
    }

    space.m_l = -1;
    for (int n = 0; n <= max_order; ++n)
        if (space.orders[n].dimX > 0) {
            space.m_l = n;
            break;
        }
    space.m_u = -1;
    int lsum = 0;
    for (int n = 0; n <= max_order; ++n) {
        lsum += l[n];
        if (l[n] > 0) space.m_u = n;
    }
    if (lsum > law.g) throw EngineError("primitive dimensions exceed g (engine failure)");
    space.saturated = (lsum == law.g);
    if (space.saturated && space.m_l > space.m_u)
        throw EngineError("m_l > m_u (violates Prop. mlmu)");

    if (space.saturated) {
        int m = space.m_u;
        for (int i = 0; i <= max_order && static_cast<int>(space.primitive.size()) < law.g; ++i) {
            if (l[i] == 0) continue;
            std::vector<DiffPoly> sub;
            if (i >= 1) {
                sub = space.orders[i - 1].basis;
                for (const auto& p : space.orders[i - 1].basis)
                    sub.push_back(total_derive(p, field));
            }
            std::vector<DiffPoly> picks =
                quotient_basis(sub, space.orders[i].basis, opts.descending_pivots, D);
            if (static_cast<int>(picks.size()) != l[i])
                throw EngineError("primitive quotient dimension mismatch at order " +
                                  std::to_string(i));
            for (const auto& p : picks) {
                Character ch = make_character(law.g, p);
                if (ch.order != i)
                    throw EngineError("primitive representative has wrong strict order");
                space.primitive.push_back(ch);
            }
        }
        for (const auto& ch : space.primitive) {
            Character cur = ch;
            for (int s = ch.order; s < m; ++s) cur = del_action(law, cur, field);
            space.theta_tilde.push_back(cur);
        }
        space.leading_matrix.clear();
        for (const auto& ch : space.theta_tilde) space.leading_matrix.push_back(ch.leading);
        if (rank(space.leading_matrix) != law.g)
            throw EngineError("leading matrix A is singular (violates Lemma prim_mat)");
    }

    if (opts.check_stabilization && !law.exact) {
        space.stabilization_checked = true;
        FormalGroupLaw wider = rebuild_with_trunc(law, D + 2, field);
        AnalyzeOptions sub_opts = opts;
        sub_opts.check_stabilization = false;
        CharacterSpace at_wider = analyze_characters(wider, max_order, D + 2, field, sub_opts);
        for (int n = 0; n <= max_order; ++n)
            if (space.orders[n].dimX != at_wider.orders[n].dimX) space.stabilization_ok = false;
        for (int n = 0; n <= max_order && space.stabilization_ok; ++n) {
            std::vector<DiffPoly> a, b;
            for (const auto& p : space.orders[n].basis) {
                DiffPoly lp;
                for (const auto& [v, c] : linear_part(p))
                    lp.add_term(Monomial::var(unpack_var(v)), c);
                a.push_back(lp);
            }
            for (const auto& p : at_wider.orders[n].basis) {
                DiffPoly lp;
                for (const auto& [v, c] : linear_part(p))
                    lp.add_term(Monomial::var(unpack_var(v)), c);
                b.push_back(lp);
            }
            std::vector<DiffPoly> ea = echelon_polys(a), eb = echelon_polys(b);
            if (ea.size() != eb.size()) space.stabilization_ok = false;
            for (size_t i = 0; i < ea.size() && space.stabilization_ok; ++i)
                if (ea[i] != eb[i]) space.stabilization_ok = false;
        }
        if (!space.stabilization_ok)
            throw EngineError("character basis unstable between trunc " + std::to_string(D) +
                              " and " + std::to_string(D + 2));
    }
    return space;
}

}  // namespace jetchar
