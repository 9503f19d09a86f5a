// Copyright 2026 The racsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RACSIM_QCORE_H
#define RACSIM_QCORE_H

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace racsim {

// Small fixed-dimension state algebra. Two-level systems (a path or a spin)
// and their path (x) spin composite. The tensor order is always path first,
// spin second.

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Ket2 = Eigen::Vector2cd;
using Ket4 = Eigen::Vector4cd;
using BlochVector = Eigen::Vector3d;

inline constexpr double kAlgebraTolerance = 1e-12;

// Measurement outcome bit. 0 is the +1 eigenvalue, 1 is the -1 eigenvalue.
using Bit = std::uint8_t;

inline int sign_of(Bit b) { return b ? -1 : 1; }

// Normalized vector in C^2 or C^4.
class PureState {
   public:
    explicit PureState(const Ket2 &amplitudes);
    explicit PureState(const Ket4 &amplitudes);

    int dim() const { return dim_; }
    const Eigen::VectorXcd &amplitudes() const { return amplitudes_; }
    Ket4 ket4() const;

   private:
    Eigen::VectorXcd amplitudes_;
    int dim_;
};

// Hermitian, unit-trace, positive 2x2 matrix.
class DensityOperator {
   public:
    explicit DensityOperator(const Mat2 &entries);
    const Mat2 &matrix() const { return entries_; }
    double purity() const;
    BlochVector bloch() const;

   private:
    Mat2 entries_;
};

// Rank-1 projector onto the outcome of a spin measurement along `direction`.
struct Projector {
    BlochVector direction;
    Bit outcome;
    Mat2 matrix;
};

const Mat2 &pauli_x();
const Mat2 &pauli_y();
const Mat2 &pauli_z();

bool is_unit(const BlochVector &v, double tol = kAlgebraTolerance);

// n . sigma. Throws std::invalid_argument unless |n| = 1.
Mat2 observable_from_bloch(const BlochVector &n);

// (I + (-1)^outcome n . sigma) / 2.
Projector projector(const BlochVector &n, Bit outcome);

Mat4 tensor(const Mat2 &path, const Mat2 &spin);

// <psi| PA (x) PB |psi>
double joint_probability(const PureState &state, const Projector &path, const Projector &spin);

// The four joint probabilities indexed [path_outcome * 2 + spin_outcome].
Eigen::Vector4d joint_distribution(const PureState &state, const BlochVector &path_dir, const BlochVector &spin_dir);

// Signed sum of the four joint probabilities, i.e. <(nA.sigma) (x) (nB.sigma)>.
double expectation_product(const PureState &state, const BlochVector &path_dir, const BlochVector &spin_dir);

// Qubit state with Bloch vector (-1)^outcome * direction.
DensityOperator prepared_state(const BlochVector &direction, Bit outcome);

// Tr(rho P) for a qubit.
double born(const DensityOperator &rho, const Projector &p);

// (|up_p down> - |down_p up>) / sqrt 2, amplitude order {uu, ud, du, dd}.
PureState singlet_state();

}  // namespace racsim

#endif
