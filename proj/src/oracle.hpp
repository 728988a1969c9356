#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "spin_model.hpp"

namespace erhoq {

// Dense brute-force reference for everything the stochastic pipeline
// estimates.  Capped at 12 sites (4096-dimensional matrices).
using DenseOperator = Eigen::MatrixXcd;

constexpr int kMaxOracleSites = 12;

// Throws DimensionTooLarge beyond kMaxOracleSites.
int oracle_dimension(int sites);

// Builds H = -j_z sum_<ij> sz_i sz_j - mu_x sum_i sx_i - mu_z sum_i sz_i as a
// sum of Kronecker-embedded Pauli matrices, independently of the sparse
// matrix-element routines it cross-checks.
DenseOperator dense_hamiltonian(const HamiltonianParams& p, const Lattice& lat);

// (1/N) sum_i sx_i.
DenseOperator observable_mx(int sites);

// Single-site Pauli embedded at `site` in an N-site identity chain.
DenseOperator pauli_x_at(int site, int sites);
DenseOperator pauli_z_at(int site, int sites);

double hermiticity_gap(const DenseOperator& m);

// exp(-beta * h) for Hermitian h via eigendecomposition.
DenseOperator thermal_state(const DenseOperator& h, double beta);

// exp(-i * h * t) for Hermitian h.
DenseOperator evolution_operator(const DenseOperator& h, double t);

// Dense counterpart of one trotter step: exp(-i Hx dt) * exp(-i Hz dt).
// Matches the gate sequence of trotter_step_block to machine precision
// because the diagonal gates commute among themselves, as do the RX gates.
DenseOperator trotter_step_operator(const HamiltonianParams& p, const Lattice& lat,
                                    double dt);

// Tr[obs U(t) rho U(t)^dag] / Tr[rho] with exact per-segment exponentials.
double exact_observable(const std::vector<Schedule::Segment>& segments,
                        const DenseOperator& rho, const DenseOperator& obs,
                        const Lattice& lat, double t);

// Same, with the first-order product formula in place of exp(-i H t);
// isolates trotter error from Monte Carlo and shot noise.  Requires the
// segment switch times and t to be whole multiples of dt.
double trotterized_observable(const std::vector<Schedule::Segment>& segments,
                              const DenseOperator& rho, const DenseOperator& obs,
                              const Lattice& lat, double t, double dt);

// Closed-form <m_x(t)> for one spin thermalized under h0 and evolved under
// h1: the thermal Bloch vector tanh(beta*w0) * (mu_x, 0, mu_z)/w0 precessing
// about (mu_x1, 0, mu_z1) at angular rate 2*w1.
double single_spin_mx(const HamiltonianParams& h0, const HamiltonianParams& h1,
                      double beta, double t);

// Evaluates series on a shared time grid, caching the work that is common
// across grid points.
class OracleSeries {
public:
    // mode: exact per-segment exponentials when dt <= 0, otherwise the dense
    // trotter product at step dt.
    OracleSeries(const Schedule& schedule, const Lattice& lat,
                 const DenseOperator& rho, const DenseOperator& obs, double dt = 0.0);

    double value_at(double t) const;

private:
    const Lattice lattice_;
    std::vector<Schedule::Segment> segments_;
    DenseOperator rho_;
    DenseOperator obs_;
    double dt_;
    double trace_ = 0.0;
};

}  // namespace erhoq
