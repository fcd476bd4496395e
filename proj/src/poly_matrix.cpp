#include "wplab/poly_matrix.hpp"

#include "wplab/error.hpp"

namespace wplab {

PolyMatrix::PolyMatrix(int rows, int cols, int d) : rows_(rows), cols_(cols), dim_(d) {
  if (rows < 1 || cols < 1) throw InvalidArgument("polynomial matrix must be non-empty");
  entries_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Poly(d));
}

PolyMatrix PolyMatrix::column(std::vector<Poly> entries) {
  if (entries.empty()) throw InvalidArgument("polynomial matrix must be non-empty");
  PolyMatrix m(static_cast<int>(entries.size()), 1, entries.front().dim());
  for (std::size_t i = 0; i < entries.size(); ++i) m(static_cast<int>(i), 0) = std::move(entries[i]);
  for (const Poly& p : m.entries_) {
    if (p.dim() != m.dim_) throw InvalidArgument("polynomial matrix entries differ in dimension");
  }
  return m;
}

PolyMatrix PolyMatrix::row(std::vector<Poly> entries) { return column(std::move(entries)).transpose(); }

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, dim_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

std::size_t PolyMatrix::index(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw InvalidArgument("polynomial matrix index out of range");
  return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
}

PolyMatrix psi_T_phi(const PolyMatrix& psi, const PolyMatrix& phi) {
  if (psi.rows() != phi.rows()) throw InvalidArgument("psi_T_phi: Psi and Phi need the same number of rows");
  if (psi.dim() != phi.dim()) throw InvalidArgument("psi_T_phi: dimension mismatch");
  PolyMatrix out(psi.cols(), phi.cols(), psi.dim());
  for (int i = 0; i < psi.cols(); ++i) {
    for (int j = 0; j < phi.cols(); ++j) {
      Poly s(psi.dim());
      for (int k = 0; k < psi.rows(); ++k) s += phi(k, j) * psi(k, i);
      out(i, j) = std::move(s);
    }
  }
  return out;
}

}  // namespace wplab
