// Copyright 2026 The detsim Authors
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

#include "detsim/scattering.hpp"

#include <numbers>
#include <string>

namespace detsim {

double golden_rule_prob(std::complex<double> matrix_element, double density_of_states, double hbar) {
    if (density_of_states < 0.0) {
        throw NormalizationError("density of states must be nonnegative");
    }
    if (!(hbar > 0.0)) {
        throw CapError("hbar must be positive");
    }
    return 2.0 * std::numbers::pi / hbar * std::norm(matrix_element) * density_of_states;
}

ScatteringSolve lippmann_schwinger_solve(const Eigen::MatrixXcd& hamiltonian,
                                         const Eigen::MatrixXcd& coupling,
                                         const Eigen::VectorXcd& incident, double energy,
                                         double eta, double tol, std::size_t max_iter) {
    const Eigen::Index n = hamiltonian.rows();
    if (hamiltonian.cols() != n || coupling.rows() != n || coupling.cols() != n ||
        incident.size() != n || n < 1) {
        throw DimensionError("scattering solve needs square matrices and a matching vector");
    }
    if (static_cast<std::size_t>(n) > kMaxScatteringDimension) {
        throw CapError("scattering solve dimension exceeds the cap of " +
                       std::to_string(kMaxScatteringDimension));
    }
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
        throw NormalizationError("scattering Hamiltonian must be Hermitian");
    }
    if (!(eta > 0.0)) {
        throw CapError("eta must be positive");
    }
    if (!(tol > 0.0) || max_iter < 1) {
        throw CapError("tolerance must be positive and max_iter >= 1");
    }

    // G = (E - H + i*eta)^{-1}, factored once and applied as a solve.
    const Eigen::MatrixXcd resolvent_lhs =
        std::complex<double>(energy, eta) * Eigen::MatrixXcd::Identity(n, n) - hamiltonian;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> green(resolvent_lhs);

    const double growth_cap = 1e12 * std::max(1.0, incident.norm());
    Eigen::VectorXcd current = incident;
    for (std::size_t iteration = 1; iteration <= max_iter; ++iteration) {
        const Eigen::VectorXcd next = incident + green.solve(coupling * current);
        const double delta = (next - current).norm();
        current = next;
        if (delta < tol) {
            return ScatteringSolve{std::move(current), iteration};
        }
        if (current.norm() > growth_cap) {
            throw DivergenceError("scattering iteration diverged after " +
                                  std::to_string(iteration) + " iterations");
        }
    }
    throw DivergenceError("scattering iteration did not converge within " +
                          std::to_string(max_iter) + " iterations");
}

}  // namespace detsim
