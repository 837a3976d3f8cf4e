#ifndef JETCHAR_LINALG_HPP
#define JETCHAR_LINALG_HPP

#include <map>
#include <vector>

#include "jetchar/basefield.hpp"

namespace jetchar {

using KVec = std::vector<RatFunc>;
using KMat = std::vector<KVec>;

// Incremental row-echelon accumulator over K = Q(t). Rows are kept sparse;
// each inserted row is cleared of denominators and divided by the gcd of its
// numerators, then reduced against existing pivots. The pivot of a surviving
// row is its entry of minimal degree metric (ties broken by column index),
// which keeps coefficient growth manageable on Q(t).
class SparseEchelon {
public:
    explicit SparseEchelon(int cols) : cols_(cols) {}

    // Returns true when the row survived reduction (i.e. raised the rank).
    bool add_row(std::map<int, RatFunc> row);

    int rank() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }

    // Echelon-normalized nullspace basis: each vector has first nonzero
    // entry 1; count = cols - rank.
    std::vector<KVec> nullspace_basis() const;

private:
    struct PivotRow {
        int pivot;
        std::map<int, RatFunc> entries;  // entries[pivot] == 1
    };
    static void scale_row(std::map<int, RatFunc>& row);

    int cols_;
    std::vector<PivotRow> rows_;
    std::map<int, int> row_of_pivot_;
};

int rank(const KMat& m);
std::vector<KVec> nullspace(const KMat& m, int cols);

// Rank of the space spanned by `vectors` (rows).
int span_rank(const std::vector<KVec>& vectors);

}  // namespace jetchar

#endif
