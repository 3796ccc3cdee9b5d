#ifndef HURRY_SPARSE_SOLVE_HPP
#define HURRY_SPARSE_SOLVE_HPP

#include "hurry/field.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hurry {

// Square sparse system A x = b over a field F; rows keyed by column.
template <class F>
struct SparseSystem {
  explicit SparseSystem(int n)
      : rows(static_cast<size_t>(n)), rhs(static_cast<size_t>(n), FieldTraits<F>::from_rational(Rational(0))) {}

  int size() const { return static_cast<int>(rows.size()); }

  void add(int row, int col, const F& value) {
    if (FieldTraits<F>::is_zero(value)) return;
    auto& r = rows[static_cast<size_t>(row)];
    auto it = r.find(col);
    if (it == r.end()) {
      r.emplace(col, value);
      return;
    }
    it->second += value;
    if (FieldTraits<F>::is_zero(it->second)) r.erase(it);
  }

  std::vector<std::map<int, F>> rows;
  std::vector<F> rhs;
};

// Gaussian elimination with fill tracked in the row maps. The diagonal is
// used as pivot whenever it is nonzero; otherwise the best-scoring entry below
// it per FieldTraits::pivot_score. Throws std::domain_error if singular.
template <class F>
std::vector<F> solve(SparseSystem<F> sys) {
  using Traits = FieldTraits<F>;
  const int n = sys.size();
  auto& rows = sys.rows;
  auto& rhs = sys.rhs;

  for (int k = 0; k < n; ++k) {
    auto diag = rows[static_cast<size_t>(k)].find(k);
    if (diag == rows[static_cast<size_t>(k)].end()) {
      int best = -1;
      for (int r = k + 1; r < n; ++r) {
        auto it = rows[static_cast<size_t>(r)].find(k);
        if (it == rows[static_cast<size_t>(r)].end()) continue;
        if (best < 0 || Traits::pivot_score(it->second) > Traits::pivot_score(rows[static_cast<size_t>(best)].at(k)))
          best = r;
      }
      if (best < 0) throw std::domain_error("singular linear system at column " + std::to_string(k));
      std::swap(rows[static_cast<size_t>(k)], rows[static_cast<size_t>(best)]);
      std::swap(rhs[static_cast<size_t>(k)], rhs[static_cast<size_t>(best)]);
      diag = rows[static_cast<size_t>(k)].find(k);
    }
    const F pivot = diag->second;
    const auto& pivot_row = rows[static_cast<size_t>(k)];

    for (int r = k + 1; r < n; ++r) {
      auto& row = rows[static_cast<size_t>(r)];
      auto it = row.find(k);
      if (it == row.end()) continue;
      const F factor = it->second / pivot;
      row.erase(it);
      for (auto pv = pivot_row.upper_bound(k); pv != pivot_row.end(); ++pv) {
        auto [slot, inserted] = row.try_emplace(pv->first, Traits::from_rational(Rational(0)));
        slot->second -= factor * pv->second;
        if (Traits::is_zero(slot->second)) row.erase(slot);
      }
      rhs[static_cast<size_t>(r)] -= factor * rhs[static_cast<size_t>(k)];
    }
  }

  std::vector<F> x(static_cast<size_t>(n), Traits::from_rational(Rational(0)));
  for (int k = n - 1; k >= 0; --k) {
    const auto& row = rows[static_cast<size_t>(k)];
    F acc = rhs[static_cast<size_t>(k)];
    for (auto it = row.upper_bound(k); it != row.end(); ++it) acc -= it->second * x[static_cast<size_t>(it->first)];
    x[static_cast<size_t>(k)] = acc / row.at(k);
  }
  return x;
}

}  // namespace hurry

#endif  // HURRY_SPARSE_SOLVE_HPP
