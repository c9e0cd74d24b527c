#include "c2orb/echelon.hpp"

#include <stdexcept>

namespace c2orb {

SparseRow make_sparse(const std::map<int, Rational>& entries) {
  SparseRow r;
  r.reserve(entries.size());
  for (const auto& [c, x] : entries)
    if (!x.is_zero()) r.emplace_back(c, x);
  return r;
}

SparseRow Echelon::reduce(const SparseRow& v) const {
  std::map<int, Rational> acc;
  for (const auto& [c, x] : v) {
    if (c < 0 || c >= cols_) throw std::out_of_range("column out of range");
    acc[c] += x;
  }
  // Rows are reduced, so one pass over the pivots hit by v suffices.
  for (const auto& [c, x] : v) {
    auto it = rows_.find(c);
    if (it == rows_.end()) continue;
    const Rational f = x;
    for (const auto& [rc, rx] : it->second) acc[rc] -= f * rx;
  }
  return make_sparse(acc);
}

bool Echelon::insert(const SparseRow& v) {
  SparseRow r = reduce(v);
  if (r.empty()) return false;
  const int pivot = r.front().first;
  const Rational inv = r.front().second.inverse();
  for (auto& [c, x] : r) x *= inv;
  // Clear the new pivot column from the existing rows.
  for (auto& [pc, row] : rows_) {
    Rational f;
    for (const auto& [c, x] : row)
      if (c == pivot) f = x;
    if (f.is_zero()) continue;
    std::map<int, Rational> acc;
    for (const auto& [c, x] : row) acc[c] += x;
    for (const auto& [c, x] : r) acc[c] -= f * x;
    row = make_sparse(acc);
  }
  rows_.emplace(pivot, std::move(r));
  return true;
}

int bareiss_rank(const std::vector<std::vector<Rational>>& m) {
  if (m.empty()) return 0;
  const std::size_t ncols = m.front().size();
  std::vector<std::vector<BigInt>> a;
  a.reserve(m.size());
  for (const auto& row : m) {
    if (row.size() != ncols) throw std::invalid_argument("ragged matrix");
    BigInt l = 1;
    for (const Rational& x : row) {
      const BigInt d = x.den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<BigInt> r;
    r.reserve(ncols);
    for (const Rational& x : row) r.push_back(x.num() * (l / x.den()));
    a.push_back(std::move(r));
  }
  const std::size_t nrows = a.size();
  BigInt prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
    std::size_t piv = rank;
    while (piv < nrows && a[piv][col] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < nrows; ++i) {
      for (std::size_t j = col + 1; j < ncols; ++j) {
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace c2orb
