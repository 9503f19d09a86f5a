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

#include "racsim/qcore.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

using namespace racsim;

namespace {

void require_normalized(const Eigen::VectorXcd &v) {
    double norm2 = v.squaredNorm();
    if (std::abs(norm2 - 1.0) > kAlgebraTolerance) {
        throw std::invalid_argument("state is not normalized: |psi|^2 = " + std::to_string(norm2));
    }
}

}  // namespace

PureState::PureState(const Ket2 &amplitudes) : amplitudes_(amplitudes), dim_(2) {
    require_normalized(amplitudes_);
}

PureState::PureState(const Ket4 &amplitudes) : amplitudes_(amplitudes), dim_(4) {
    require_normalized(amplitudes_);
}

Ket4 PureState::ket4() const {
    if (dim_ != 4) {
        throw std::invalid_argument("expected a path-spin state of dimension 4");
    }
    return amplitudes_;
}

DensityOperator::DensityOperator(const Mat2 &entries) : entries_(entries) {
    if ((entries_ - entries_.adjoint()).norm() > kAlgebraTolerance) {
        throw std::invalid_argument("density operator is not Hermitian");
    }
    if (std::abs(entries_.trace() - Complex(1.0)) > kAlgebraTolerance) {
        throw std::invalid_argument("density operator trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Mat2> eig(entries_);
    if (eig.eigenvalues().minCoeff() < -kAlgebraTolerance) {
        throw std::invalid_argument("density operator has a negative eigenvalue");
    }
}

double DensityOperator::purity() const {
    return (entries_ * entries_).trace().real();
}

BlochVector DensityOperator::bloch() const {
    return {(entries_ * pauli_x()).trace().real(), (entries_ * pauli_y()).trace().real(),
            (entries_ * pauli_z()).trace().real()};
}

const Mat2 &racsim::pauli_x() {
    static const Mat2 m = (Mat2() << 0, 1, 1, 0).finished();
    return m;
}

const Mat2 &racsim::pauli_y() {
    static const Mat2 m = (Mat2() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    return m;
}

const Mat2 &racsim::pauli_z() {
    static const Mat2 m = (Mat2() << 1, 0, 0, -1).finished();
    return m;
}

bool racsim::is_unit(const BlochVector &v, double tol) {
    return std::abs(v.norm() - 1.0) <= tol;
}

Mat2 racsim::observable_from_bloch(const BlochVector &n) {
    if (!is_unit(n)) {
        throw std::invalid_argument("measurement direction must be a unit vector, got norm " + std::to_string(n.norm()));
    }
    return n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
}

Projector racsim::projector(const BlochVector &n, Bit outcome) {
    Mat2 obs = observable_from_bloch(n);
    Mat2 p = 0.5 * (Mat2::Identity() + double(sign_of(outcome)) * obs);
    return Projector{n, outcome, p};
}

Mat4 racsim::tensor(const Mat2 &path, const Mat2 &spin) {
    return Eigen::kroneckerProduct(path, spin).eval();
}

double racsim::joint_probability(const PureState &state, const Projector &path, const Projector &spin) {
    Ket4 psi = state.ket4();
    return (psi.adjoint() * tensor(path.matrix, spin.matrix) * psi)(0, 0).real();
}

Eigen::Vector4d racsim::joint_distribution(const PureState &state, const BlochVector &path_dir,
                                           const BlochVector &spin_dir) {
    Eigen::Vector4d out;
    for (Bit a = 0; a < 2; a++) {
        Projector pa = projector(path_dir, a);
        for (Bit y = 0; y < 2; y++) {
            out[a * 2 + y] = joint_probability(state, pa, projector(spin_dir, y));
        }
    }
    return out;
}

double racsim::expectation_product(const PureState &state, const BlochVector &path_dir,
                                   const BlochVector &spin_dir) {
    Eigen::Vector4d p = joint_distribution(state, path_dir, spin_dir);
    return p[0] - p[1] - p[2] + p[3];
}

DensityOperator racsim::prepared_state(const BlochVector &direction, Bit outcome) {
    return DensityOperator(projector(direction, outcome).matrix);
}

double racsim::born(const DensityOperator &rho, const Projector &p) {
    return (rho.matrix() * p.matrix).trace().real();
}

PureState racsim::singlet_state() {
    const double h = 1.0 / std::sqrt(2.0);
    return PureState(Ket4(0, h, -h, 0));
}
