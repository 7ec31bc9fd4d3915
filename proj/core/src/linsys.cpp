#include "cforge/linsys.hpp"

#include <algorithm>

#include "cforge/errors.hpp"

namespace cforge {

DenseVec RowReducer::reduce(DenseVec row) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Rational& c = row[pivots_[k]];
        if (c.is_zero()) continue;
        Rational f = c; // pivot entries are 1
        for (std::size_t j = 0; j < width_; ++j)
            if (!rows_[k][j].is_zero()) row[j] -= f * rows_[k][j];
    }
    return row;
}

bool RowReducer::insert(DenseVec row) {
    if (row.size() != width_) throw Error("row width mismatch");
    row = reduce(std::move(row));
    std::size_t p = width_;
    for (std::size_t j = 0; j < width_; ++j) {
        if (!row[j].is_zero()) {
            p = j;
            break;
        }
    }
    if (p == width_) return false;
    Rational inv = Rational(1) / row[p];
    for (auto& c : row) c *= inv;
    // Clear the new pivot column from the existing rows.
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Rational& c = rows_[k][p];
        if (c.is_zero()) continue;
        Rational f = c;
        for (std::size_t j = 0; j < width_; ++j)
            if (!row[j].is_zero()) rows_[k][j] -= f * row[j];
    }
    // Keep rows ordered by pivot column.
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(row));
    pivots_.insert(pivots_.begin() + pos, p);
    return true;
}

bool RowReducer::in_span(DenseVec row) const {
    row = reduce(std::move(row));
    for (const auto& c : row)
        if (!c.is_zero()) return false;
    return true;
}

void LinSystem::add_row(SparseRow row) {
    for (const auto& [j, c] : row) {
        if (j >= unknowns_) throw Error("equation references unknown out of range");
        (void)c;
    }
    if (!row.empty()) rows_.push_back(std::move(row));
}

std::vector<DenseVec> LinSystem::solve_nullspace() const {
    RowReducer red(unknowns_);
    for (const auto& row : rows_) {
        DenseVec dense(unknowns_, Rational(0));
        for (const auto& [j, c] : row) dense[j] += c;
        red.insert(std::move(dense));
    }
    // Free-variable basis from the RREF.
    std::vector<bool> is_pivot(unknowns_, false);
    for (auto p : red.pivots()) is_pivot[p] = true;
    std::vector<DenseVec> basis;
    for (std::size_t f = 0; f < unknowns_; ++f) {
        if (is_pivot[f]) continue;
        DenseVec v(unknowns_, Rational(0));
        v[f] = Rational(1);
        for (std::size_t k = 0; k < red.rank(); ++k)
            v[red.pivots()[k]] = -red.rows()[k][f];
        basis.push_back(std::move(v));
    }
    return rref_canonicalize(basis, unknowns_);
}

bool LinSystem::satisfied_by(const DenseVec& v) const {
    if (v.size() != unknowns_) return false;
    for (const auto& row : rows_) {
        Rational acc(0);
        for (const auto& [j, c] : row) acc += c * v[j];
        if (!acc.is_zero()) return false;
    }
    return true;
}

std::vector<DenseVec> rref_canonicalize(const std::vector<DenseVec>& vectors, std::size_t width) {
    RowReducer red(width);
    for (const auto& v : vectors) red.insert(v);
    return red.rows();
}

std::size_t span_rank(const std::vector<DenseVec>& vectors, std::size_t width) {
    RowReducer red(width);
    for (const auto& v : vectors) red.insert(v);
    return red.rank();
}

bool span_equal(const std::vector<DenseVec>& a, const std::vector<DenseVec>& b, std::size_t width) {
    RowReducer ra(width);
    for (const auto& v : a) ra.insert(v);
    for (const auto& v : b)
        if (!ra.in_span(v)) return false;
    RowReducer rb(width);
    for (const auto& v : b) rb.insert(v);
    for (const auto& v : a)
        if (!rb.in_span(v)) return false;
    return true;
}

bool in_span(const std::vector<DenseVec>& basis, const DenseVec& v, std::size_t width) {
    RowReducer red(width);
    for (const auto& b : basis) red.insert(b);
    return red.in_span(v);
}

std::vector<DenseVec> span_intersect(const std::vector<DenseVec>& a,
                                     const std::vector<DenseVec>& b, std::size_t width) {
    if (a.empty() || b.empty()) return {};
    // Unknowns (alpha, beta) with sum_i alpha_i a_i = sum_j beta_j b_j.
    std::size_t na = a.size(), nb = b.size();
    LinSystem sys(na + nb);
    for (std::size_t c = 0; c < width; ++c) {
        SparseRow row;
        for (std::size_t i = 0; i < na; ++i)
            if (!a[i][c].is_zero()) row.push_back({i, a[i][c]});
        for (std::size_t j = 0; j < nb; ++j)
            if (!b[j][c].is_zero()) row.push_back({na + j, -b[j][c]});
        sys.add_row(std::move(row));
    }
    std::vector<DenseVec> members;
    for (const auto& sol : sys.solve_nullspace()) {
        DenseVec v(width, Rational(0));
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t c = 0; c < width; ++c) v[c] += sol[i] * a[i][c];
        members.push_back(std::move(v));
    }
    return rref_canonicalize(members, width);
}

} // namespace cforge
