/* Copyright 2026 The ptsl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>

#include <Eigen/Eigenvalues>

#include "ptsl/numerics.hpp"

namespace ptsl {

ComplexVector eig_complex(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("eigenvalues require a square matrix");
  if (!m.allFinite()) throw ValidationError("matrix has non-finite entries");
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalError("complex QR iteration did not converge");
  return solver.eigenvalues();
}

}  // namespace ptsl
