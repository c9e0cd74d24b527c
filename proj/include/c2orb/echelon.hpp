#pragma once

#include <map>
#include <vector>

#include "c2orb/rational.hpp"

namespace c2orb {

/// Sparse vector as (column, value) pairs sorted by column, no zero entries.
using SparseRow = std::vector<std::pair<int, Rational>>;

SparseRow make_sparse(const std::map<int, Rational>& entries);

/// Incrementally maintained reduced row echelon form over Q. Every stored row
/// has a leading 1 and zeros in all other pivot columns.
class Echelon {
 public:
  explicit Echelon(int cols = 0) : cols_(cols) {}

  int cols() const { return cols_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::map<int, SparseRow>& rows() const { return rows_; }

  /// Adds v to the span; returns true when v was independent.
  bool insert(const SparseRow& v);
  /// v minus its projection onto the span along pivot columns (zero iff v is in the span).
  SparseRow reduce(const SparseRow& v) const;
  bool contains(const SparseRow& v) const { return reduce(v).empty(); }

 private:
  int cols_;
  std::map<int, SparseRow> rows_;
};

/// Rank of a dense matrix by fraction-free (Bareiss) elimination after clearing
/// denominators row by row.
int bareiss_rank(const std::vector<std::vector<Rational>>& m);

}  // namespace c2orb
