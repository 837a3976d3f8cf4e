#include "jetchar/linalg.hpp"

#include <algorithm>

namespace jetchar {

void SparseEchelon::scale_row(std::map<int, RatFunc>& row) {
    for (auto it = row.begin(); it != row.end();) {
        if (it->second.is_zero())
            it = row.erase(it);
        else
            ++it;
    }
    if (row.empty()) return;
    // Clear denominators, then divide by the gcd of the numerators.
    UniPoly lcm(1);
    for (const auto& [c, v] : row) {
        UniPoly g = gcd(lcm, v.den());
        UniPoly q, r;
        UniPoly::divmod(v.den(), g, q, r);
        lcm = lcm * q;
    }
    RatFunc f{lcm};
    UniPoly content;
    bool first = true;
    for (auto& [c, v] : row) {
        v *= f;
        content = first ? v.num() : gcd(content, v.num());
        first = false;
    }
    if (content.degree() > 0) {
        RatFunc inv = RatFunc(UniPoly(1), content);
        for (auto& [c, v] : row) v *= inv;
    }
}

bool SparseEchelon::add_row(std::map<int, RatFunc> row) {
    scale_row(row);
    while (!row.empty()) {
        // Reduce against the existing pivot of the lowest touched column.
        int hit = -1;
        for (const auto& [c, v] : row) {
            auto it = row_of_pivot_.find(c);
            if (it != row_of_pivot_.end()) {
                hit = it->second;
                break;
            }
        }
        if (hit < 0) break;
        const PivotRow& pr = rows_[hit];
        RatFunc f = row[pr.pivot];
        for (const auto& [c, v] : pr.entries) {
            auto it = row.find(c);
            if (it == row.end()) {
                row.emplace(c, -(f * v));
            } else {
                it->second -= f * v;
                if (it->second.is_zero()) row.erase(it);
            }
        }
        row.erase(pr.pivot);
        scale_row(row);
    }
    if (row.empty()) return false;

    int best = -1, best_metric = 0;
    for (const auto& [c, v] : row) {
        int metric = v.degree_metric();
        if (best < 0 || metric < best_metric) {
            best = c;
            best_metric = metric;
        }
    }
    RatFunc inv = row[best].inverse();
    for (auto& [c, v] : row) v *= inv;
    row_of_pivot_[best] = static_cast<int>(rows_.size());
    rows_.push_back(PivotRow{best, std::move(row)});
    return true;
}

std::vector<KVec> SparseEchelon::nullspace_basis() const {
    // Fully reduce: eliminate every pivot column from the other rows.
    std::vector<PivotRow> red = rows_;
    for (size_t i = 0; i < red.size(); ++i) {
        for (size_t j = 0; j < red.size(); ++j) {
            if (i == j) continue;
            auto it = red[j].entries.find(red[i].pivot);
            if (it == red[j].entries.end()) continue;
            RatFunc f = it->second;
            for (const auto& [c, v] : red[i].entries) {
                auto jt = red[j].entries.find(c);
                if (jt == red[j].entries.end()) {
                    red[j].entries.emplace(c, -(f * v));
                } else {
                    jt->second -= f * v;
                    if (jt->second.is_zero()) red[j].entries.erase(jt);
                }
            }
            red[j].entries.erase(red[i].pivot);
        }
    }
    std::map<int, const PivotRow*> by_pivot;
    for (const auto& r : red) by_pivot[r.pivot] = &r;

    std::vector<KVec> basis;
    for (int free_col = 0; free_col < cols_; ++free_col) {
        if (by_pivot.count(free_col)) continue;
        KVec v(cols_, RatFunc());
        v[free_col] = RatFunc(1);
        for (const auto& [p, rowp] : by_pivot) {
            auto it = rowp->entries.find(free_col);
            if (it != rowp->entries.end()) v[p] = -it->second;
        }
        // Echelon normalization: first nonzero entry 1.
        for (int c = 0; c < cols_; ++c) {
            if (!v[c].is_zero()) {
                RatFunc inv = v[c].inverse();
                for (auto& x : v) x *= inv;
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

int rank(const KMat& m) {
    int cols = 0;
    for (const auto& r : m) cols = std::max(cols, static_cast<int>(r.size()));
    SparseEchelon ech(cols);
    for (const auto& r : m) {
        std::map<int, RatFunc> row;
        for (int c = 0; c < static_cast<int>(r.size()); ++c)
            if (!r[c].is_zero()) row.emplace(c, r[c]);
        ech.add_row(std::move(row));
    }
    return ech.rank();
}

std::vector<KVec> nullspace(const KMat& m, int cols) {
    SparseEchelon ech(cols);
    for (const auto& r : m) {
        std::map<int, RatFunc> row;
        for (int c = 0; c < static_cast<int>(r.size()) && c < cols; ++c)
            if (!r[c].is_zero()) row.emplace(c, r[c]);
        ech.add_row(std::move(row));
    }
    return ech.nullspace_basis();
}

int span_rank(const std::vector<KVec>& vectors) { return rank(vectors); }

}  // namespace jetchar
