#include "jetchar/groups.hpp"

#include <algorithm>
#include <sstream>

namespace jetchar {

namespace {

JetVar xv(int gen, int order = 0, Side side = Side::Single) { return JetVar{side, gen, order}; }

// Sum c_k * v^k of a power series as a truncated DiffPoly.
DiffPoly series_to_poly(const PowerSeries& s, const JetVar& v, int trunc) {
    DiffPoly out(trunc);
    int top = std::min(trunc, s.prec() - 1);
    if (!s.coeff(0).is_zero()) out.add_term(Monomial(), s.coeff(0));
    for (int k = 1; k <= top; ++k) {
        if (s.coeff(k).is_zero()) continue;
        out.add_term(Monomial::var(v, k), s.coeff(k));
    }
    return out;
}

// Compose sum d_k * S^k of a series against a polynomial without constant term.
DiffPoly series_of_poly(const PowerSeries& d, const DiffPoly& S, int trunc) {
    DiffPoly acc(trunc);
    DiffPoly spow = S.with_trunc(trunc);
    int top = std::min(trunc, d.prec() - 1);
    for (int k = 1; k <= top; ++k) {
        if (!d.coeff(k).is_zero()) acc = acc + spow.scaled(d.coeff(k));
        if (k < top) spow = spow * S;
    }
    return acc;
}

// P(z) = (dF/dY)(z, 0) of a one-dimensional coordinate of the law.
PowerSeries law_ydiff_series(const FormalGroupLaw& law, int gen) {
    const DiffPoly& F = law.comul[gen];
    DiffPoly dF = partial_derivative(F, xv(gen, 0, Side::Right));
    std::map<uint32_t, DiffPoly> right_zero;
    for (int j = 0; j < law.g; ++j) {
        right_zero[pack_var(Side::Right, j, 0)] = DiffPoly(F.trunc());
        right_zero[pack_var(Side::Left, j, 0)] = DiffPoly::var(xv(j, 0, Side::Left), F.trunc());
    }
    DiffPoly p = substitute(dF, right_zero, F.trunc());
    std::vector<RatFunc> coeffs(law.trunc + 1, RatFunc());
    for (const auto& [m, c] : p.terms()) {
        if (m.is_constant()) {
            coeffs[0] = c;
            continue;
        }
        if (m.factors().size() != 1 || unpack_var(m.factors()[0].first).gen != gen)
            throw InputError("law is not one-dimensional in generator " + std::to_string(gen));
        int k = m.factors()[0].second;
        if (k < static_cast<int>(coeffs.size())) coeffs[k] = c;
    }
    return PowerSeries::from_coeffs(std::move(coeffs));
}

GlobalityModel exact_globality(const PowerSeries& P, int max_op_order) {
    GlobalityModel m;
    m.max_operator_order = max_op_order;
    int degP = -1;
    for (int k = P.prec() - 1; k >= 0; --k)
        if (!P.coeff(k).is_zero()) {
            degP = k;
            break;
        }
    if (degP < 0) throw InputError("degenerate law: dF/dY(x,0) = 0");
    if (P.coeff(0).is_zero()) throw InputError("law has no identity at the origin");

    if (degP == 0) {
        // Coordinate ring K[z]: every polynomial differential has a primitive.
        m.window_lo = 0;
        m.window_hi = 16;
        int zprec = m.window_hi + 2;
        m.omega = PowerSeries(zprec, P.coeff(0).inverse());
        for (int k = 1; k <= m.window_hi + 1; ++k) {
            PowerSeries zk = PowerSeries::zero(zprec);
            zk.set_coeff(k, RatFunc(1));
            m.dcolumns.push_back(Laurent::from_series(zk.derive_z().truncated(zprec)));
        }
        return m;
    }

    // Coordinate ring K[z, 1/P]. Polynomial degrees stay far below the window
    // so a pole-at-P part cannot be faked by a polynomial tail.
    int Kc = 8, Jc = max_op_order + 2;
    m.window_lo = 0;
    m.window_hi = Kc + (Jc + 1) * degP + 4;
    int zprec = m.window_hi + 2;
    PowerSeries Pz = P.truncated(zprec);
    PowerSeries Pinv = Pz.inverse();
    m.omega = Pinv;
    for (int k = 1; k <= Kc; ++k) {
        PowerSeries zk = PowerSeries::zero(zprec);
        zk.set_coeff(k, RatFunc(1));
        m.dcolumns.push_back(Laurent::from_series(zk.derive_z().truncated(zprec)));
    }
    PowerSeries pj = Pinv;
    for (int j = 1; j <= Jc; ++j) {
        for (int a = 0; a < degP * j; ++a) {
            PowerSeries za = PowerSeries::zero(zprec);
            za.set_coeff(a, RatFunc(1));
            PowerSeries f = (za * pj).truncated(zprec);
            m.dcolumns.push_back(Laurent::from_series(f.derive_z().truncated(zprec)));
        }
        if (j < Jc) pj = (pj * Pinv).truncated(zprec);
    }
    return m;
}

struct LegendreSeries {
    PowerSeries s;      // w(z)/z^3, constant term 1
    PowerSeries omega;  // omega-hat/dz = 1 + z s'/(2s)
    Laurent xhat, yhat;
};

LegendreSeries legendre_series(const RatFunc& lambda, int zprec) {
    // y^2 = x^3 - (1+lambda) x^2 + lambda x; z = -x/y and w = -1/y satisfy
    // w = z^3 + a2 z^2 w + a4 z w^2 with a2 = -(1+lambda), a4 = lambda.
    RatFunc a2 = -(RatFunc(1) + lambda), a4 = lambda;
    std::vector<RatFunc> w(zprec + 3, RatFunc());
    w[3] = RatFunc(1);
    for (int k = 4; k < zprec + 3; ++k) {
        RatFunc acc = a2 * w[k - 2];
        RatFunc conv;
        for (int i = 3; i + 3 <= k - 1; ++i) conv += w[i] * w[k - 1 - i];
        w[k] = acc + a4 * conv;
    }
    LegendreSeries out;
    std::vector<RatFunc> sc(zprec, RatFunc());
    for (int k = 0; k < zprec; ++k) sc[k] = w[k + 3];
    out.s = PowerSeries::from_coeffs(std::move(sc));
    PowerSeries sinv = out.s.inverse();
    out.xhat = Laurent{-2, sinv};
    out.yhat = Laurent{-3, sinv.scaled(RatFunc(-1))};
    PowerSeries zs = (PowerSeries::identity(zprec) * out.s.derive_z().truncated(zprec))
                         .truncated(zprec);
    out.omega = PowerSeries(zprec, RatFunc(1)) + (zs * sinv).scaled(RatFunc(rat(1, 2)));
    return out;
}

}  // namespace

std::map<uint32_t, DiffPoly> JetComul::image_map() const {
    std::map<uint32_t, DiffPoly> out;
    for (int i = 0; i <= level; ++i)
        for (size_t j = 0; j < images[i].size(); ++j)
            out.emplace(pack_var(Side::Single, static_cast<int>(j), i), images[i][j]);
    return out;
}

FormalGroupLaw catalog_ga(int trunc) {
    FormalGroupLaw law;
    law.name = "ga";
    law.g = 1;
    law.trunc = trunc;
    law.exact = true;
    law.ext_dim = 0;
    law.comul = {DiffPoly::var(xv(0, 0, Side::Left), trunc) +
                 DiffPoly::var(xv(0, 0, Side::Right), trunc)};
    law.globality = exact_globality(PowerSeries(4, RatFunc(1)), 4);
    law.log_series = PowerSeries::identity(trunc + 2);
    return law;
}

FormalGroupLaw catalog_gm(int trunc) {
    FormalGroupLaw law;
    law.name = "gm";
    law.g = 1;
    law.trunc = trunc;
    law.exact = true;
    law.ext_dim = 0;
    DiffPoly l = DiffPoly::var(xv(0, 0, Side::Left), trunc);
    DiffPoly r = DiffPoly::var(xv(0, 0, Side::Right), trunc);
    law.comul = {l + r + l * r};
    PowerSeries P = PowerSeries::zero(4);
    P.set_coeff(0, RatFunc(1));
    P.set_coeff(1, RatFunc(1));
    law.globality = exact_globality(P, 4);
    // log(1+x) = x - x^2/2 + x^3/3 - ...
    std::vector<RatFunc> lc(trunc + 2, RatFunc());
    for (int k = 1; k < trunc + 2; ++k) lc[k] = RatFunc(rat(k % 2 ? 1 : -1, k));
    law.log_series = PowerSeries::from_coeffs(std::move(lc));
    return law;
}

FormalGroupLaw catalog_legendre(const RatFunc& lambda, int trunc, const FieldConfig& field,
                                int max_operator_order) {
    (void)field;
    {
        UniPoly n = lambda.num(), d = lambda.den();
        if (lambda.is_zero() || n == d) throw InputError("legendre lambda must avoid 0 and 1");
    }
    int S = std::max(2, max_operator_order);
    int amax = S + 2;
    int bneg = 2 * S - 1;
    int pole_max = 2 * amax + 3 * bneg + 1;
    int window_hi = pole_max + 3 * (bneg + 1) + 2;
    int zprec = window_hi + pole_max + 4;
    zprec = std::max(zprec, trunc + 4);

    LegendreSeries ser = legendre_series(lambda, zprec);

    FormalGroupLaw law;
    law.name = "legendre";
    law.g = 1;
    law.trunc = trunc;
    law.exact = false;
    law.ext_dim = 1;
    law.lambda = lambda;

    PowerSeries log = ser.omega.truncated(trunc + 1).integrate_z().truncated(trunc + 2);
    law.log_series = log;
    PowerSeries loginv = log.reversion();
    DiffPoly S2 = series_to_poly(log, xv(0, 0, Side::Left), trunc) +
                  series_to_poly(log, xv(0, 0, Side::Right), trunc);
    law.comul = {series_of_poly(loginv, S2, trunc)};

    GlobalityModel m;
    m.max_operator_order = S;
    m.omega = ser.omega;
    m.window_lo = -pole_max;
    m.window_hi = window_hi;
    // d-images of x^a y^b for b in {1, 0, -1, -3, ..., -(2S-1)}, the shape the
    // curve's Hermite reduction produces.
    Laurent yinv = ser.yhat.inverse();
    std::vector<Laurent> ypow;
    ypow.push_back(ser.yhat);
    ypow.push_back(Laurent{0, PowerSeries(zprec, RatFunc(1))});
    Laurent cur = yinv;
    Laurent yinv2 = yinv * yinv;
    for (int b = 1; b <= bneg; b += 2) {
        ypow.push_back(cur);
        cur = cur * yinv2;
    }
    for (const auto& yb : ypow) {
        Laurent xa = yb;
        for (int a = 0; a <= amax; ++a) {
            if (!(a == 0 && yb.shift == 0)) m.dcolumns.push_back(xa.derive_z());
            xa = xa * ser.xhat;
        }
    }
    law.globality = std::move(m);
    return law;
}

FormalGroupLaw catalog_product(std::vector<FormalGroupLaw> factors) {
    if (factors.empty()) throw InputError("empty product");
    if (factors.size() == 1) return std::move(factors[0]);
    FormalGroupLaw law;
    law.g = 0;
    law.trunc = factors[0].trunc;
    law.exact = true;
    int r = 0;
    bool have_r = true;
    std::ostringstream name;
    for (size_t f = 0; f < factors.size(); ++f) {
        const FormalGroupLaw& fac = factors[f];
        if (fac.trunc != law.trunc) throw InputError("product factors must share a truncation");
        if (f) name << "*";
        name << fac.name;
        for (const auto& F : fac.comul) law.comul.push_back(remap_generators(F, law.g));
        law.g += fac.g;
        law.exact = law.exact && fac.exact;
        if (fac.ext_dim)
            r += *fac.ext_dim;
        else
            have_r = false;
    }
    if (have_r) law.ext_dim = r;
    law.name = name.str();
    law.factors = std::move(factors);
    return law;
}

FormalGroupLaw catalog(const std::string& name, const RatFunc& lambda, int trunc,
                       const FieldConfig& field) {
    std::vector<FormalGroupLaw> parts;
    std::string token;
    std::istringstream in(name);
    while (std::getline(in, token, '*')) {
        token.erase(std::remove_if(token.begin(), token.end(),
                                   [](unsigned char c) { return std::isspace(c); }),
                    token.end());
        if (token == "ga")
            parts.push_back(catalog_ga(trunc));
        else if (token == "gm")
            parts.push_back(catalog_gm(trunc));
        else if (token == "legendre")
            parts.push_back(catalog_legendre(lambda, trunc, field, 4));
        else
            throw InputError("unknown catalog group '" + token + "'");
    }
    if (parts.empty()) throw InputError("empty group name");
    return catalog_product(std::move(parts));
}

std::vector<std::string> catalog_names() { return {"ga", "gm", "legendre"}; }

PowerSeries formal_log(const FormalGroupLaw& law, const FieldConfig& field) {
    if (law.g != 1) throw InputError("formal_log needs a one-dimensional law");
    (void)field;
    PowerSeries P = law_ydiff_series(law, 0);
    return P.truncated(law.trunc + 1).inverse().integrate_z().truncated(law.trunc + 2);
}

void validate_law(const FormalGroupLaw& law, const FieldConfig& field) {
    (void)field;
    int D = law.trunc;
    for (int i = 0; i < law.g; ++i) {
        const DiffPoly& F = law.comul[i];
        std::map<uint32_t, DiffPoly> right_zero, left_zero, swap;
        for (int j = 0; j < law.g; ++j) {
            right_zero[pack_var(Side::Left, j, 0)] = DiffPoly::var(xv(j, 0, Side::Left), D);
            right_zero[pack_var(Side::Right, j, 0)] = DiffPoly(D);
            left_zero[pack_var(Side::Left, j, 0)] = DiffPoly(D);
            left_zero[pack_var(Side::Right, j, 0)] = DiffPoly::var(xv(j, 0, Side::Right), D);
            swap[pack_var(Side::Left, j, 0)] = DiffPoly::var(xv(j, 0, Side::Right), D);
            swap[pack_var(Side::Right, j, 0)] = DiffPoly::var(xv(j, 0, Side::Left), D);
        }
        if (substitute(F, right_zero, D) != DiffPoly::var(xv(i, 0, Side::Left), D))
            throw InputError("law axiom failed: F(X,0) = X in coordinate " + std::to_string(i));
        if (substitute(F, left_zero, D) != DiffPoly::var(xv(i, 0, Side::Right), D))
            throw InputError("law axiom failed: F(0,Y) = Y in coordinate " + std::to_string(i));
        if (substitute(F, swap, D) != F)
            throw InputError("law axiom failed: commutativity in coordinate " + std::to_string(i));
    }

    // Associativity in a three-slot ring: X -> gens [0,g), Y -> [g,2g), Z -> [2g,3g).
    int Da = law.exact ? D : std::min(D, 6);
    std::vector<DiffPoly> FXY(law.g), FYZ(law.g);
    std::map<uint32_t, DiffPoly> subXY, subYZ;
    for (int j = 0; j < law.g; ++j) {
        subXY[pack_var(Side::Left, j, 0)] = DiffPoly::var(xv(j), Da);
        subXY[pack_var(Side::Right, j, 0)] = DiffPoly::var(xv(j + law.g), Da);
        subYZ[pack_var(Side::Left, j, 0)] = DiffPoly::var(xv(j + law.g), Da);
        subYZ[pack_var(Side::Right, j, 0)] = DiffPoly::var(xv(j + 2 * law.g), Da);
    }
    for (int i = 0; i < law.g; ++i) {
        FXY[i] = substitute(law.comul[i], subXY, Da);
        FYZ[i] = substitute(law.comul[i], subYZ, Da);
    }
    std::map<uint32_t, DiffPoly> lhs_map, rhs_map;
    for (int j = 0; j < law.g; ++j) {
        lhs_map[pack_var(Side::Left, j, 0)] = FXY[j];
        lhs_map[pack_var(Side::Right, j, 0)] = DiffPoly::var(xv(j + 2 * law.g), Da);
        rhs_map[pack_var(Side::Left, j, 0)] = DiffPoly::var(xv(j), Da);
        rhs_map[pack_var(Side::Right, j, 0)] = FYZ[j];
    }
    for (int i = 0; i < law.g; ++i) {
        DiffPoly lhs = substitute(law.comul[i], lhs_map, Da);
        DiffPoly rhs = substitute(law.comul[i], rhs_map, Da);
        if (lhs != rhs)
            throw InputError("law axiom failed: associativity in coordinate " + std::to_string(i));
    }
}

JetComul jet_comul(const FormalGroupLaw& law, int n, const FieldConfig& field) {
    if (n < 0) throw InputError("jet level must be nonnegative");
    JetComul jc;
    jc.level = n;
    jc.images.resize(n + 1);
    jc.images[0] = law.comul;
    for (int i = 1; i <= n; ++i) {
        jc.images[i].reserve(law.g);
        for (int j = 0; j < law.g; ++j)
            jc.images[i].push_back(total_derive_checked(jc.images[i - 1][j], field, n));
    }
    return jc;
}

std::vector<std::pair<const FormalGroupLaw*, int>> leaf_layout(const FormalGroupLaw& law) {
    std::vector<std::pair<const FormalGroupLaw*, int>> out;
    if (law.is_leaf()) {
        out.emplace_back(&law, 0);
        return out;
    }
    int offset = 0;
    for (const auto& f : law.factors) {
        for (auto [leaf, off] : leaf_layout(f)) out.emplace_back(leaf, off + offset);
        offset += f.g;
    }
    return out;
}

bool check_nn_additive(const FormalGroupLaw& law, int n, const FieldConfig& field) {
    if (n < 1) throw InputError("check_nn_additive needs n >= 1");
    JetComul jc = jet_comul(law, n, field);
    int D = law.trunc;

    std::map<uint32_t, DiffPoly> imgN;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < law.g; ++j)
            imgN[pack_var(Side::Single, j, i)] = restrict_to_n(jc.images[i][j]);

    // Level 1: the jet coordinates themselves are additive on N^n.
    for (int j = 0; j < law.g; ++j) {
        DiffPoly expect = DiffPoly::var(xv(j, 1, Side::Left), D) +
                          DiffPoly::var(xv(j, 1, Side::Right), D);
        if (imgN.at(pack_var(Side::Single, j, 1)) != expect) return false;
    }

    // Levels >= 2: the divided-log coordinates psi_i = iota^*(del^i l-hat)
    // are additive with unitriangular leading structure, exhibiting
    // N^n = G_a^{ng}.
    for (auto [leaf, off] : leaf_layout(law)) {
        if (!leaf->log_series) throw EngineError("leaf law without a stored logarithm");
        DiffPoly lhat = remap_generators(series_to_poly(*leaf->log_series, xv(0), D), off);
        DiffPoly cur = lhat;
        for (int i = 1; i <= n; ++i) {
            cur = total_derive(cur, field);
            DiffPoly psi = restrict_to_n(cur);
            auto lp = linear_part(psi);
            if (lp.size() != 1) return false;
            auto it = lp.find(pack_var(Side::Single, off, i));
            if (it == lp.end() || !(it->second == RatFunc(1))) return false;
            DiffPoly defect =
                substitute(psi, imgN, D) - to_side(psi, Side::Left) - to_side(psi, Side::Right);
            if (!defect.is_zero()) return false;
        }
    }
    return true;
}

FormalGroupLaw rebuild_with_trunc(const FormalGroupLaw& law, int trunc,
                                  const FieldConfig& field) {
    if (!law.is_leaf()) {
        std::vector<FormalGroupLaw> factors;
        factors.reserve(law.factors.size());
        for (const auto& f : law.factors) factors.push_back(rebuild_with_trunc(f, trunc, field));
        return catalog_product(std::move(factors));
    }
    int S = law.globality ? law.globality->max_operator_order : 4;
    if (law.lambda) return catalog_legendre(*law.lambda, trunc, field, S);
    if (!law.exact) throw EngineError("cannot rebuild inexact law " + law.name);
    // An exact comultiplication is an honest polynomial; retruncation keeps it.
    return make_exact_leaf(law.name, law.comul[0].with_trunc(trunc), trunc, law.ext_dim, field, S);
}

FormalGroupLaw make_exact_leaf(const std::string& name, DiffPoly comul, int trunc,
                               std::optional<int> ext_dim, const FieldConfig& field,
                               int max_operator_order) {
    FormalGroupLaw law;
    law.name = name;
    law.g = 1;
    law.trunc = trunc;
    law.exact = true;
    law.ext_dim = ext_dim;
    law.comul = {std::move(comul)};
    validate_law(law, field);
    PowerSeries P = law_ydiff_series(law, 0);
    law.globality = exact_globality(P, max_operator_order);
    law.log_series = formal_log(law, field);
    return law;
}

}  // namespace jetchar
