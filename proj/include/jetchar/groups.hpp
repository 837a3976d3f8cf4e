#ifndef JETCHAR_GROUPS_HPP
#define JETCHAR_GROUPS_HPP

#include <optional>
#include <string>
#include <vector>

#include "jetchar/diffring.hpp"
#include "jetchar/series.hpp"

namespace jetchar {

// Data deciding which formal characters of a 1-dimensional leaf are honest
// characters of the group: the invariant differential's expansion at the
// identity together with d-images of a spanning set of coordinate-ring
// functions. An operator sum a_s del^s is admissible iff sum a_s (del_t^s
// omega) dz is the differential of a ring function, tested by exact linear
// algebra on a Laurent-coefficient window wide enough to separate rational
// functions of the bounded pole orders involved.
struct GlobalityModel {
    PowerSeries omega;             // omega-hat / dz
    std::vector<Laurent> dcolumns; // d(f)/dz for ring spanning functions f
    int window_lo = 0;
    int window_hi = 0;
    int max_operator_order = 0;
};

struct FormalGroupLaw {
    std::string name;
    int g = 1;
    int trunc = 8;
    bool exact = true;
    std::vector<DiffPoly> comul;           // F_i in Left/Right order-0 variables
    std::optional<int> ext_dim;            // declared r = dim Ext(G, G_a)
    std::vector<FormalGroupLaw> factors;   // product structure; empty for leaves
    std::optional<GlobalityModel> globality;   // present on 1-dim leaves
    std::optional<PowerSeries> log_series;     // formal logarithm of a leaf
    std::optional<RatFunc> lambda;             // Legendre parameter

    bool is_leaf() const { return factors.empty(); }
};

// Jet comultiplication: images[i][j] = m^*(del^i x_j) in the tensor ring.
struct JetComul {
    int level = 0;
    std::vector<std::vector<DiffPoly>> images;

    std::map<uint32_t, DiffPoly> image_map() const;
};

FormalGroupLaw catalog_ga(int trunc);
FormalGroupLaw catalog_gm(int trunc);
FormalGroupLaw catalog_legendre(const RatFunc& lambda, int trunc, const FieldConfig& field,
                                int max_operator_order = 4);
FormalGroupLaw catalog_product(std::vector<FormalGroupLaw> factors);
// Names: "ga", "gm", "legendre" and '*'-joined products such as "ga*gm".
FormalGroupLaw catalog(const std::string& name, const RatFunc& lambda, int trunc,
                       const FieldConfig& field);
std::vector<std::string> catalog_names();

// Law axioms (identity, commutativity, associativity) mod degree trunc+1.
// Associativity on inexact laws is checked at degree min(trunc, 6).
void validate_law(const FormalGroupLaw& law, const FieldConfig& field);

// Formal logarithm of a 1-dimensional law: l(x) = int dx / (dF/dY)(x, 0),
// normalized l(x) = x + O(x^2); l(F(X,Y)) = l(X) + l(Y) mod degree trunc+1.
PowerSeries formal_log(const FormalGroupLaw& law, const FieldConfig& field);

JetComul jet_comul(const FormalGroupLaw& law, int n, const FieldConfig& field);

// Prop. Nn, constructively: the divided-log coordinates restrict to additive
// coordinates of N^n with unitriangular leading structure. For i = 1 the jet
// coordinates themselves are additive on N^n and this is checked literally.
bool check_nn_additive(const FormalGroupLaw& law, int n, const FieldConfig& field);

// Leaf laws of a product in generator order, with their generator offsets.
std::vector<std::pair<const FormalGroupLaw*, int>> leaf_layout(const FormalGroupLaw& law);

// Exact 1-dim laws assembled from user input (spec files); builds the
// globality model from P(z) = (dF/dY)(z, 0) and the coordinate ring K[z, 1/P].
FormalGroupLaw make_exact_leaf(const std::string& name, DiffPoly comul, int trunc,
                               std::optional<int> ext_dim, const FieldConfig& field,
                               int max_operator_order = 4);

// The same group at a different truncation degree (used by the
// truncation-stabilization check).
FormalGroupLaw rebuild_with_trunc(const FormalGroupLaw& law, int trunc,
                                  const FieldConfig& field);

}  // namespace jetchar

#endif
