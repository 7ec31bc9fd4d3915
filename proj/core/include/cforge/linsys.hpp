#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cforge/rational.hpp"

namespace cforge {

using DenseVec = std::vector<Rational>;
// Sorted by index, nonzero coefficients only.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

// Maintains the reduced row echelon form of everything inserted so far.
// Rows are kept fully reduced with pivots normalized to 1 and ordered by
// pivot column, so the row set is the canonical basis of the row span.
class RowReducer {
public:
    explicit RowReducer(std::size_t width) : width_(width) {}

    std::size_t width() const { return width_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<DenseVec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    // Returns true when the row was independent of the current span.
    bool insert(DenseVec row);

    bool in_span(DenseVec row) const;

private:
    DenseVec reduce(DenseVec row) const;

    std::size_t width_;
    std::vector<DenseVec> rows_;
    std::vector<std::size_t> pivots_; // pivot column of rows_[k], ascending
};

// Homogeneous linear system over named unknowns (identified by index).
class LinSystem {
public:
    explicit LinSystem(std::size_t unknowns) : unknowns_(unknowns) {}

    std::size_t unknowns() const { return unknowns_; }
    std::size_t rows() const { return rows_.size(); }

    void add_row(SparseRow row);

    // Canonical basis of the solution space: computed from the RREF of the
    // constraint matrix and re-canonicalized, so the output depends only on
    // the solution space and the unknown order.
    std::vector<DenseVec> solve_nullspace() const;

    bool satisfied_by(const DenseVec& v) const;

private:
    std::size_t unknowns_;
    std::vector<SparseRow> rows_;
};

// Unique RREF basis of the span of the given vectors.
std::vector<DenseVec> rref_canonicalize(const std::vector<DenseVec>& vectors, std::size_t width);

std::size_t span_rank(const std::vector<DenseVec>& vectors, std::size_t width);

bool span_equal(const std::vector<DenseVec>& a, const std::vector<DenseVec>& b, std::size_t width);

bool in_span(const std::vector<DenseVec>& basis, const DenseVec& v, std::size_t width);

// Canonical basis of span(a) ∩ span(b).
std::vector<DenseVec> span_intersect(const std::vector<DenseVec>& a,
                                     const std::vector<DenseVec>& b, std::size_t width);

} // namespace cforge
