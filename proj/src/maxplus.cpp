#include "tropifs/maxplus.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "tropifs/errors.hpp"
#include "tropifs/parallel.hpp"

namespace tropifs {

// Adding +0.0 turns -0.0 into 0.0 so that printed zeros are unsigned.
MaxPlus::MaxPlus(double v) : v_(v + 0.0) {
  if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
    throw ConfigError("max-plus value must be finite or -inf, got " + std::to_string(v));
  }
}

std::ostream& operator<<(std::ostream& os, MaxPlus a) {
  if (a.is_bottom()) return os << "-inf";
  return os << a.value();
}

MpMatrix::MpMatrix(std::size_t rows, std::size_t cols, MaxPlus fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

MpMatrix::MpMatrix(std::size_t rows, std::size_t cols, std::vector<MaxPlus> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("matrix entries: expected " + std::to_string(rows * cols) + ", got " +
                         std::to_string(data_.size()));
  }
}

MpMatrix MpMatrix::identity(std::size_t n) {
  MpMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = MaxPlus::one();
  return m;
}

MpMatrix mp_mat_mul(const MpMatrix& a, const MpMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mp_mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  const std::size_t n = a.rows(), inner = a.cols(), m = b.cols();
  // Work on raw doubles: -inf + finite = -inf and max(-inf, x) = x are exact,
  // and +inf never occurs, so the semiring rules are preserved.
  std::vector<double> out(n * m, -std::numeric_limits<double>::infinity());
  const auto& ae = a.entries();
  const auto& be = b.entries();
  parallel_for(0, n, [&](std::size_t i) {
    double* row = out.data() + i * m;
    for (std::size_t j = 0; j < inner; ++j) {
      const MaxPlus aij = ae[i * inner + j];
      if (aij.is_bottom()) continue;
      const double x = aij.value();
      const MaxPlus* brow = be.data() + j * m;
      for (std::size_t k = 0; k < m; ++k) {
        const double cand = x + brow[k].value();
        if (cand > row[k]) row[k] = cand;
      }
    }
  });
  std::vector<MaxPlus> entries;
  entries.reserve(out.size());
  for (double v : out) entries.emplace_back(v);
  return MpMatrix(n, m, std::move(entries));
}

MpMatrix mp_mat_add(const MpMatrix& a, const MpMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("mp_mat_add: shape mismatch");
  }
  std::vector<MaxPlus> e(a.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = oplus(a.entries()[i], b.entries()[i]);
  return MpMatrix(a.rows(), a.cols(), std::move(e));
}

namespace {

MpMatrix closure_by_squaring(const MpMatrix& a) {
  // After k rounds p covers every path length in [1, 2^k].
  MpMatrix p = a;
  for (std::size_t covered = 1; covered < a.rows(); covered *= 2) {
    p = mp_mat_add(p, mp_mat_mul(p, p));
  }
  return p;
}

MpMatrix closure_by_floyd_warshall(const MpMatrix& a) {
  const std::size_t n = a.rows();
  MpMatrix d = a;
  for (std::size_t k = 0; k < n; ++k) {
    // With no positive cycle the star of d(k,k) is the unit, so the
    // relaxation is the plain max-plus update.
    for (std::size_t i = 0; i < n; ++i) {
      const MaxPlus dik = d(i, k);
      if (dik.is_bottom()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const MaxPlus cand = odot(dik, d(k, j));
        if (cand > d(i, j)) d(i, j) = cand;
      }
    }
  }
  return d;
}

}  // namespace

MpMatrix kleene_plus(const MpMatrix& a, ClosureMethod method) {
  if (!a.square()) throw DimensionError("kleene_plus: matrix must be square");
  MpMatrix p = method == ClosureMethod::kSquaring ? closure_by_squaring(a)
                                                  : closure_by_floyd_warshall(a);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (p(i, i).is_finite() && p(i, i).value() > 0.0) {
      throw PositiveCycleError("kleene_plus: cycle through node " + std::to_string(i) +
                               " has positive weight " + std::to_string(p(i, i).value()));
    }
  }
  return p;
}

}  // namespace tropifs
