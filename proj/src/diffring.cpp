#include "jetchar/diffring.hpp"

#include <algorithm>
#include <sstream>

namespace jetchar {

Monomial Monomial::var(const JetVar& v, int exp) {
    Monomial m;
    if (exp > 0) {
        m.factors_.emplace_back(pack_var(v), exp);
        m.degree_ = exp;
    }
    return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial out;
    out.factors_.reserve(factors_.size() + o.factors_.size());
    size_t i = 0, j = 0;
    while (i < factors_.size() || j < o.factors_.size()) {
        if (j == o.factors_.size() || (i < factors_.size() && factors_[i].first < o.factors_[j].first)) {
            out.factors_.push_back(factors_[i++]);
        } else if (i == factors_.size() || o.factors_[j].first < factors_[i].first) {
            out.factors_.push_back(o.factors_[j++]);
        } else {
            out.factors_.emplace_back(factors_[i].first, factors_[i].second + o.factors_[j].second);
            ++i;
            ++j;
        }
    }
    out.degree_ = degree_ + o.degree_;
    return out;
}

bool Monomial::contains_order_below(int k) const {
    for (const auto& [v, e] : factors_)
        if (unpack_var(v).order < k) return true;
    return false;
}

int Monomial::max_order() const {
    int m = 0;
    for (const auto& [v, e] : factors_) m = std::max(m, unpack_var(v).order);
    return m;
}

int DiffPoly::combined_trunc(int a, int b) {
    if (a == kNoTrunc) return b;
    if (b == kNoTrunc) return a;
    return std::min(a, b);
}

DiffPoly DiffPoly::constant(const RatFunc& c, int trunc) {
    DiffPoly p(trunc);
    if (!c.is_zero()) p.terms_.emplace(Monomial(), c);
    return p;
}

DiffPoly DiffPoly::var(const JetVar& v, int trunc) {
    DiffPoly p(trunc);
    if (trunc == kNoTrunc || trunc >= 1) p.terms_.emplace(Monomial::var(v), RatFunc(1));
    return p;
}

DiffPoly DiffPoly::term(const Monomial& m, const RatFunc& c, int trunc) {
    DiffPoly p(trunc);
    if (!c.is_zero() && (trunc == kNoTrunc || m.degree() <= trunc)) p.terms_.emplace(m, c);
    return p;
}

int DiffPoly::max_order() const {
    int m = 0;
    for (const auto& [mono, c] : terms_) m = std::max(m, mono.max_order());
    return m;
}

int DiffPoly::degree() const {
    int d = 0;
    for (const auto& [mono, c] : terms_) d = std::max(d, mono.degree());
    return d;
}

void DiffPoly::add_term(const Monomial& m, const RatFunc& c) {
    if (c.is_zero()) return;
    if (trunc_ != kNoTrunc && m.degree() > trunc_) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
    DiffPoly out(combined_trunc(trunc_, o.trunc_));
    out.terms_ = terms_;
    if (out.trunc_ != trunc_) {
        for (auto it = out.terms_.begin(); it != out.terms_.end();)
            it = (it->first.degree() > out.trunc_ && out.trunc_ != kNoTrunc) ? out.terms_.erase(it)
                                                                             : std::next(it);
    }
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const { return *this + (-o); }

DiffPoly DiffPoly::operator-() const {
    DiffPoly out(trunc_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
    DiffPoly out(combined_trunc(trunc_, o.trunc_));
    for (const auto& [ma, ca] : terms_) {
        if (out.trunc_ != kNoTrunc && ma.degree() > out.trunc_) continue;
        for (const auto& [mb, cb] : o.terms_) {
            if (out.trunc_ != kNoTrunc && ma.degree() + mb.degree() > out.trunc_) continue;
            out.add_term(ma * mb, ca * cb);
        }
    }
    return out;
}

DiffPoly DiffPoly::scaled(const RatFunc& c) const {
    DiffPoly out(trunc_);
    if (c.is_zero()) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
}

DiffPoly DiffPoly::pow(int e) const {
    DiffPoly acc = DiffPoly::constant(RatFunc(1), trunc_);
    for (int i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

RatFunc DiffPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? RatFunc() : it->second;
}

DiffPoly DiffPoly::with_trunc(int trunc) const {
    DiffPoly out(trunc);
    for (const auto& [m, c] : terms_)
        if (trunc == kNoTrunc || m.degree() <= trunc) out.terms_.emplace(m, c);
    return out;
}

DiffPoly total_derive(const DiffPoly& p, const FieldConfig& field) {
    DiffPoly out(p.trunc());
    for (const auto& [m, c] : p.terms()) {
        RatFunc dc = field.derive(c);
        if (!dc.is_zero()) out.add_term(m, dc);
        const auto& fs = m.factors();
        for (size_t k = 0; k < fs.size(); ++k) {
            JetVar v = unpack_var(fs[k].first);
            int e = fs[k].second;
            Monomial shifted;
            for (size_t j = 0; j < fs.size(); ++j) {
                if (j == k) {
                    if (e > 1) shifted = shifted * Monomial::var(v, e - 1);
                    shifted = shifted * Monomial::var(JetVar{v.side, v.gen, v.order + 1});
                } else {
                    shifted = shifted * Monomial::var(unpack_var(fs[j].first), fs[j].second);
                }
            }
            out.add_term(shifted, c * RatFunc(e));
        }
    }
    return out;
}

DiffPoly total_derive_checked(const DiffPoly& p, const FieldConfig& field, int max_order) {
    if (p.max_order() + 1 > max_order)
        throw EngineError("total derivative overflows the jet order of the target context");
    return total_derive(p, field);
}

DiffPoly total_derive_pow(const DiffPoly& p, const FieldConfig& field, int times) {
    DiffPoly out = p;
    for (int i = 0; i < times; ++i) out = total_derive(out, field);
    return out;
}

DiffPoly substitute(const DiffPoly& p, const std::map<uint32_t, DiffPoly>& images,
                    int target_trunc) {
    DiffPoly out(target_trunc);
    for (const auto& [m, c] : p.terms()) {
        DiffPoly acc = DiffPoly::constant(c, target_trunc);
        for (const auto& [vk, e] : m.factors()) {
            auto it = images.find(vk);
            if (it == images.end())
                throw InputError("substitute: no image for variable " + var_name(unpack_var(vk)));
            acc = acc * it->second.with_trunc(target_trunc).pow(e);
            if (acc.is_zero()) break;
        }
        out = out + acc;
    }
    return out;
}

DiffPoly kill_below_order(const DiffPoly& p, int k) {
    DiffPoly out(p.trunc());
    for (const auto& [m, c] : p.terms())
        if (!m.contains_order_below(k)) out.add_term(m, c);
    return out;
}

std::map<uint32_t, RatFunc> linear_part(const DiffPoly& p) {
    std::map<uint32_t, RatFunc> out;
    for (const auto& [m, c] : p.terms())
        if (m.degree() == 1) out.emplace(m.factors()[0].first, c);
    return out;
}

bool in_augmentation_ideal(const DiffPoly& p) {
    for (const auto& [m, c] : p.terms())
        if (!m.contains_order_below(1)) return false;
    return true;
}

std::pair<DiffPoly, DiffPoly> augmentation_split(const DiffPoly& p) {
    DiffPoly f1(p.trunc()), f2(p.trunc());
    for (const auto& [m, c] : p.terms()) {
        if (m.contains_order_below(1))
            f1.add_term(m, c);
        else
            f2.add_term(m, c);
    }
    return {f1, f2};
}

RatFunc eval_at(const DiffPoly& p, const std::map<uint32_t, RatFunc>& values) {
    RatFunc acc;
    for (const auto& [m, c] : p.terms()) {
        RatFunc term = c;
        for (const auto& [vk, e] : m.factors()) {
            auto it = values.find(vk);
            if (it == values.end())
                throw InputError("eval_at: no value for " + var_name(unpack_var(vk)));
            term *= it->second.pow(e);
        }
        acc += term;
    }
    return acc;
}

DiffPoly partial_derivative(const DiffPoly& p, const JetVar& v) {
    uint32_t key = pack_var(v);
    DiffPoly out(p.trunc());
    for (const auto& [m, c] : p.terms()) {
        const auto& fs = m.factors();
        for (size_t k = 0; k < fs.size(); ++k) {
            if (fs[k].first != key) continue;
            int e = fs[k].second;
            Monomial rest;
            for (size_t j = 0; j < fs.size(); ++j) {
                if (j == k) {
                    if (e > 1) rest = rest * Monomial::var(v, e - 1);
                } else {
                    rest = rest * Monomial::var(unpack_var(fs[j].first), fs[j].second);
                }
            }
            out.add_term(rest, c * RatFunc(e));
        }
    }
    return out;
}

DiffPoly to_side(const DiffPoly& p, Side side) {
    DiffPoly out(p.trunc());
    for (const auto& [m, c] : p.terms()) {
        Monomial tagged;
        for (const auto& [vk, e] : m.factors()) {
            JetVar v = unpack_var(vk);
            tagged = tagged * Monomial::var(JetVar{side, v.gen, v.order}, e);
        }
        out.add_term(tagged, c);
    }
    return out;
}

DiffPoly remap_generators(const DiffPoly& p, int offset) {
    DiffPoly out(p.trunc());
    for (const auto& [m, c] : p.terms()) {
        Monomial shifted;
        for (const auto& [vk, e] : m.factors()) {
            JetVar v = unpack_var(vk);
            shifted = shifted * Monomial::var(JetVar{v.side, v.gen + offset, v.order}, e);
        }
        out.add_term(shifted, c);
    }
    return out;
}

std::string var_name(const JetVar& v) {
    std::string base = "x" + std::to_string(v.gen);
    if (v.order == 1)
        base += "'";
    else if (v.order == 2)
        base += "''";
    else if (v.order >= 3)
        base += "^(" + std::to_string(v.order) + ")";
    if (v.side == Side::Left) base += "{L}";
    if (v.side == Side::Right) base += "{R}";
    return base;
}

std::string DiffPoly::to_string() const {
    if (terms_.empty()) return "0";
    // Canonical rendering: ascending total degree (linear part first), and
    // within a degree descending variable key, so a character prints as
    // A_n.x^(n) + ... + A_0.x + tail.
    std::vector<const std::pair<const Monomial, RatFunc>*> sorted;
    sorted.reserve(terms_.size());
    for (const auto& t : terms_) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        if (a->first.degree() != b->first.degree()) return a->first.degree() < b->first.degree();
        return b->first.factors() < a->first.factors();
    });
    std::ostringstream out;
    bool first = true;
    for (const auto* tp : sorted) {
        const Monomial& m = tp->first;
        RatFunc c = tp->second;
        bool neg = c.is_negative();
        RatFunc a = neg ? -c : c;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        std::string cs = a.to_string();
        bool needs_parens = false;
        for (size_t i = 1; i < cs.size(); ++i)
            if (cs[i] == '+' || cs[i] == '-' || cs[i] == '*' || cs[i] == '/' || cs[i] == '^')
                needs_parens = true;
        if (m.is_constant()) {
            out << (needs_parens && cs.find('/') == std::string::npos ? "(" + cs + ")" : cs);
            continue;
        }
        bool wrote_coeff = false;
        if (!a.is_one()) {
            out << (needs_parens ? "(" + cs + ")" : cs);
            wrote_coeff = true;
        }
        bool first_factor = true;
        for (const auto& [vk, e] : m.factors()) {
            if (wrote_coeff || !first_factor) out << "*";
            out << var_name(unpack_var(vk));
            if (e > 1) out << "^" << e;
            first_factor = false;
            wrote_coeff = true;
        }
    }
    return out.str();
}

}  // namespace jetchar
