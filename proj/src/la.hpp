/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

// Dense complex linear algebra over tensor-product index structure.
//
// Convention: tensor factors are listed left to right, and entry (i, j) of
// factor k strides by the product of the dimensions of all factors after k
// (row-major composite indexing). Every operation below sticks to this one
// convention; there is no implicit reordering anywhere else in the library.

namespace capbound::la {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kSupportTol = 1e-10;

struct SystemShape {
  std::vector<int> dims;

  SystemShape() = default;
  SystemShape(std::initializer_list<int> d) : dims(d) {}
  explicit SystemShape(std::vector<int> d) : dims(std::move(d)) {}

  int total() const;
  int factors() const { return static_cast<int>(dims.size()); }

  // Decompose a composite index into per-factor indices and back.
  void decompose(int index, std::vector<int>& parts) const;
  int compose(const std::vector<int>& parts) const;
};

bool is_hermitian(const CMat& m, double tol = kHermTol);
void require_hermitian(const CMat& m, const char* who, double tol = kHermTol);

CMat identity(int d);
CMat maximally_mixed(int d);

// Unnormalized maximally entangled operator sum_{ij} |ii><jj| on d*d, and its
// vector form sum_i |ii>.
CVec gamma_vec(int d);
CMat gamma_unnorm(int d);

CMat kron(const CMat& a, const CMat& b);

CMat partial_trace(const CMat& m, const SystemShape& shape,
                   const std::vector<int>& traced);
CMat partial_transpose(const CMat& m, const SystemShape& shape,
                       const std::vector<int>& transposed);

// perm[k] names the input factor that lands at output position k.
CMat permute_systems(const CMat& m, const SystemShape& shape,
                     const std::vector<int>& perm);

struct EigH {
  RVec values;   // ascending
  CMat vectors;  // unitary, columns are eigenvectors
};

EigH eig_hermitian(const CMat& m);

// U f(diag) U^dag with support projection: eigenvalues within
// support_tol * max|eig| of zero are mapped to f-value 0. Throws if f is not
// finite on a retained eigenvalue.
CMat mat_fn(const CMat& m, const std::function<double(double)>& f,
            double support_tol = kSupportTol);

double op_norm(const CMat& m);    // max |eigenvalue| of a Hermitian matrix
double trace_norm(const CMat& m); // sum |eigenvalue| of a Hermitian matrix

// Projector onto the support of a PSD matrix (eigenvalues above
// support_tol * max eig).
CMat support_projector(const CMat& m, double support_tol = kSupportTol);

// Isometry with columns spanning the support of a PSD matrix; rank r columns.
CMat support_isometry(const CMat& m, double support_tol = kSupportTol);

}  // namespace capbound::la
