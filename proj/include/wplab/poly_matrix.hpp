#pragma once

#include <span>
#include <vector>

#include "wplab/poly.hpp"

namespace wplab {

// Rectangular matrix of polynomials sharing one space dimension. Row-major.
class PolyMatrix {
 public:
  PolyMatrix(int rows, int cols, int d);
  static PolyMatrix column(std::vector<Poly> entries);
  static PolyMatrix row(std::vector<Poly> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int dim() const { return dim_; }

  Poly& operator()(int r, int c) { return entries_[index(r, c)]; }
  const Poly& operator()(int r, int c) const { return entries_[index(r, c)]; }
  std::span<const Poly> entries() const { return entries_; }

  PolyMatrix transpose() const;
  bool operator==(const PolyMatrix& other) const = default;

 private:
  std::size_t index(int r, int c) const;

  int rows_;
  int cols_;
  int dim_;
  std::vector<Poly> entries_;
};

// (Psi^T Phi)_{ij} = sum_k phi_{kj} psi_{ki}; Psi and Phi must have equal row counts.
PolyMatrix psi_T_phi(const PolyMatrix& psi, const PolyMatrix& phi);

}  // namespace wplab
