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

// Desk-scale helpers for populating scattering tables: golden-rule
// transition weights and the iterative solution of the scattering-state
// fixed point psi = phi + (E - H + i*eta)^{-1} V psi.

#ifndef DETSIM_SCATTERING_HPP
#define DETSIM_SCATTERING_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "detsim/errors.hpp"

namespace detsim {

inline constexpr std::size_t kMaxScatteringDimension = 64;

/// Transition weight (2*pi/hbar) * |matrix_element|^2 * density_of_states.
/// The caller renormalizes a set of channel weights into a distribution.
double golden_rule_prob(std::complex<double> matrix_element, double density_of_states,
                        double hbar = 1.0);

struct ScatteringSolve {
    Eigen::VectorXcd state;
    std::size_t iterations;
};

/// Fixed-point iteration for the scattering state. Starts from the incident
/// state and stops when successive iterates differ by less than `tol` in
/// Euclidean norm; raises DivergenceError after `max_iter` iterations or on
/// unbounded growth.
ScatteringSolve lippmann_schwinger_solve(const Eigen::MatrixXcd& hamiltonian,
                                         const Eigen::MatrixXcd& coupling,
                                         const Eigen::VectorXcd& incident, double energy,
                                         double eta, double tol, std::size_t max_iter);

}  // namespace detsim

#endif
