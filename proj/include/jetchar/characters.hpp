#ifndef JETCHAR_CHARACTERS_HPP
#define JETCHAR_CHARACTERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "jetchar/groups.hpp"
#include "jetchar/linalg.hpp"

namespace jetchar {

// A differential character Theta: J^nG -> G_a, stored in expanded coordinate
// form. `leading` is the row A_n of coefficients of del^order(x_j).
struct Character {
    int order = 0;
    DiffPoly theta;
    KVec leading;
};

struct OrderData {
    std::vector<DiffPoly> basis;  // echelon basis of X_n
    int dimX = 0;
    int l = 0;  // primitive dimension
    int h = 0;  // derived Ext-image increment
};

struct CharacterSpace {
    std::string group;
    int g = 0;
    int trunc = 0;
    int max_order = 0;
    std::optional<int> ext_dim;
    std::vector<OrderData> orders;  // 0 .. max_order
    int m_l = -1;
    int m_u = -1;
    bool saturated = false;  // sum l_i == g within max_order
    std::vector<Character> primitive;    // orders ascending
    std::vector<Character> theta_tilde;  // del^{m - o_i} of the primitives
    KMat leading_matrix;                 // A, g x g, invertible (Lemma prim_mat)
    bool stabilization_checked = false;
    bool stabilization_ok = true;

    const std::vector<DiffPoly>& basis_at(int n) const { return orders.at(n).basis; }
};

// substitute(m^*, p) - p(Left) - p(Right), truncated at the law's degree.
DiffPoly additivity_defect(const FormalGroupLaw& law, int n, const DiffPoly& p,
                           const FieldConfig& field);

// Echelon basis of X_n(G): the full-tail polynomial ansatz solved against the
// jet comultiplication, then cut to the group's honest characters by the
// per-leaf globality model (operators whose omega-combination is exact in
// the leaf's coordinate ring).
std::vector<DiffPoly> solve_characters(const FormalGroupLaw& law, int n, int D,
                                       const FieldConfig& field);

// Wrap a solved polynomial: derives strict order and the leading row, and
// checks Prop. leadterm consistency.
Character make_character(int g, const DiffPoly& theta);

// del acting on characters; the defect of the result is re-verified and the
// leading row is checked to be preserved (Lemma partlead).
Character del_action(const FormalGroupLaw& law, const Character& ch, const FieldConfig& field);

// h_0 = 0, h_1 = g - l_0 - l_1, h_n = h_{n-1} - l_n; throws EngineError on a
// negative or (for n >= 1) increasing sequence.
std::vector<int> derive_h(const std::vector<int>& l, int g);

// iota^* to H^n: restriction to top order equals the leading linear term.
bool iota_leading_check(const Character& ch, int g);

struct AnalyzeOptions {
    bool check_stabilization = true;  // only applies to inexact laws
    bool descending_pivots = false;   // alternate primitive-basis tie-breaking
};

CharacterSpace analyze_characters(const FormalGroupLaw& law, int max_order, int D,
                                  const FieldConfig& field, const AnalyzeOptions& opts = {});

// Canonical reduced echelon form of a span of polynomials; pivot order is
// ascending graded-lex on monomials (or descending when flagged).
std::vector<DiffPoly> echelon_polys(const std::vector<DiffPoly>& polys, bool descending = false);

// Rank of the span of the polynomials' coefficient vectors.
int poly_span_rank(const std::vector<DiffPoly>& polys);

}  // namespace jetchar

#endif
