#include "oracle.hpp"

#include <cmath>

#include "circuit.hpp"
#include "errors.hpp"
#include "text_format.hpp"

namespace erhoq {

namespace {
const std::complex<double> kI{0.0, 1.0};
}

int oracle_dimension(int sites) {
    if (sites < 1) throw InvalidArgument("site count must be >= 1");
    if (sites > kMaxOracleSites)
        throw DimensionTooLarge("dense oracle is capped at " +
                                format_int(kMaxOracleSites) + " sites, got " +
                                format_int(sites));
    return 1 << sites;
}

DenseOperator pauli_x_at(int site, int sites) {
    const int dim = oracle_dimension(sites);
    DenseOperator m = DenseOperator::Zero(dim, dim);
    const int mask = 1 << site;
    for (int n = 0; n < dim; ++n) m(n ^ mask, n) = 1.0;
    return m;
}

DenseOperator pauli_z_at(int site, int sites) {
    const int dim = oracle_dimension(sites);
    DenseOperator m = DenseOperator::Zero(dim, dim);
    const int mask = 1 << site;
    for (int n = 0; n < dim; ++n) m(n, n) = (n & mask) ? -1.0 : 1.0;
    return m;
}

DenseOperator dense_hamiltonian(const HamiltonianParams& p, const Lattice& lat) {
    const int dim = oracle_dimension(lat.sites);
    DenseOperator h = DenseOperator::Zero(dim, dim);
    for (const auto& [i, j] : lat.bonds) {
        // Z_i Z_j is the product of two diagonal Kronecker embeddings.
        const DenseOperator zi = pauli_z_at(i, lat.sites);
        const DenseOperator zj = pauli_z_at(j, lat.sites);
        for (int n = 0; n < dim; ++n) h(n, n) -= p.j_z * zi(n, n) * zj(n, n);
    }
    for (int i = 0; i < lat.sites; ++i) {
        if (p.mu_x != 0.0) h -= p.mu_x * pauli_x_at(i, lat.sites);
        h -= p.mu_z * pauli_z_at(i, lat.sites);
    }
    return h;
}

DenseOperator observable_mx(int sites) {
    const int dim = oracle_dimension(sites);
    DenseOperator m = DenseOperator::Zero(dim, dim);
    for (int i = 0; i < sites; ++i) m += pauli_x_at(i, sites);
    return m / static_cast<double>(sites);
}

double hermiticity_gap(const DenseOperator& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

void require_hermitian(const DenseOperator& h) {
    if (hermiticity_gap(h) > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))
        throw InvalidArgument("matrix is not Hermitian");
}

}  // namespace

DenseOperator thermal_state(const DenseOperator& h, double beta) {
    require_hermitian(h);
    Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h);
    const Eigen::VectorXd& evals = solver.eigenvalues();
    const DenseOperator& v = solver.eigenvectors();
    Eigen::VectorXcd weights(evals.size());
    for (Eigen::Index k = 0; k < evals.size(); ++k)
        weights(k) = std::exp(-beta * evals(k));
    return v * weights.asDiagonal() * v.adjoint();
}

DenseOperator evolution_operator(const DenseOperator& h, double t) {
    require_hermitian(h);
    Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h);
    const Eigen::VectorXd& evals = solver.eigenvalues();
    const DenseOperator& v = solver.eigenvectors();
    Eigen::VectorXcd phases(evals.size());
    for (Eigen::Index k = 0; k < evals.size(); ++k)
        phases(k) = std::exp(-kI * evals(k) * t);
    return v * phases.asDiagonal() * v.adjoint();
}

DenseOperator trotter_step_operator(const HamiltonianParams& p, const Lattice& lat,
                                    double dt) {
    const int dim = oracle_dimension(lat.sites);
    const TrotterSplit split = trotter_split(p);

    // exp(-i Hz dt): Hz is diagonal, so exponentiate its diagonal directly.
    Eigen::VectorXd hz = Eigen::VectorXd::Zero(dim);
    for (int n = 0; n < dim; ++n) {
        const SpinBasisState state(static_cast<std::uint32_t>(n), lat.sites);
        double bond_sum = 0.0;
        for (const auto& [i, j] : lat.bonds)
            bond_sum += static_cast<double>(state.spin(i) * state.spin(j));
        double field_sum = 0.0;
        for (int i = 0; i < lat.sites; ++i)
            field_sum += static_cast<double>(state.spin(i));
        hz(n) = split.zz_coeff * bond_sum + split.z_coeff * field_sum;
    }
    DenseOperator u = DenseOperator::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) u(n, n) = std::exp(-kI * hz(n) * dt);

    // exp(-i Hx dt) = product over sites of (cos(a) I - i sin(a) X_i),
    // a = x_coeff * dt; applied from the left.
    const double a = split.x_coeff * dt;
    if (a != 0.0) {
        const double c = std::cos(a);
        const std::complex<double> mis = -kI * std::sin(a);
        for (int site = 0; site < lat.sites; ++site) {
            const int mask = 1 << site;
            DenseOperator next(dim, dim);
            for (int n = 0; n < dim; ++n)
                next.row(n) = c * u.row(n) + mis * u.row(n ^ mask);
            u = std::move(next);
        }
    }
    return u;
}

namespace {

// Evolution operator across [0, t] for a piecewise-constant schedule.
DenseOperator schedule_unitary(const std::vector<Schedule::Segment>& segments,
                               const Lattice& lat, double t) {
    if (segments.empty())
        throw InvalidArgument("schedule needs at least one evolution segment");
    const int dim = oracle_dimension(lat.sites);
    DenseOperator u = DenseOperator::Identity(dim, dim);
    for (std::size_t k = 0; k < segments.size(); ++k) {
        const double start = segments[k].t_start;
        if (start >= t) break;
        const double end =
            (k + 1 < segments.size()) ? std::min(segments[k + 1].t_start, t) : t;
        if (end <= start) continue;
        const DenseOperator h = dense_hamiltonian(segments[k].params, lat);
        u = evolution_operator(h, end - start) * u;
    }
    return u;
}

DenseOperator schedule_trotter_unitary(const std::vector<Schedule::Segment>& segments,
                                       const Lattice& lat, double t, double dt) {
    const int dim = oracle_dimension(lat.sites);
    DenseOperator u = DenseOperator::Identity(dim, dim);
    for (std::size_t k = 0; k < segments.size(); ++k) {
        const double start = segments[k].t_start;
        if (start >= t) break;
        const double end =
            (k + 1 < segments.size()) ? std::min(segments[k + 1].t_start, t) : t;
        if (end <= start) continue;
        const int steps = trotter_step_count(end - start, dt);
        const DenseOperator block = trotter_step_operator(segments[k].params, lat, dt);
        for (int s = 0; s < steps; ++s) u = block * u;
    }
    return u;
}

double observable_on_evolved(const DenseOperator& u, const DenseOperator& rho,
                             const DenseOperator& obs) {
    const std::complex<double> trace = rho.trace();
    if (std::abs(trace) == 0.0)
        throw ZeroTrace("density matrix has zero trace");
    const DenseOperator evolved = u * rho * u.adjoint();
    return ((obs * evolved).trace() / trace).real();
}

}  // namespace

double exact_observable(const std::vector<Schedule::Segment>& segments,
                        const DenseOperator& rho, const DenseOperator& obs,
                        const Lattice& lat, double t) {
    return observable_on_evolved(schedule_unitary(segments, lat, t), rho, obs);
}

double trotterized_observable(const std::vector<Schedule::Segment>& segments,
                              const DenseOperator& rho, const DenseOperator& obs,
                              const Lattice& lat, double t, double dt) {
    return observable_on_evolved(schedule_trotter_unitary(segments, lat, t, dt), rho,
                                 obs);
}

double single_spin_mx(const HamiltonianParams& h0, const HamiltonianParams& h1,
                      double beta, double t) {
    // Thermal Bloch vector of exp(-beta h0), h0 = -mu_x sx - mu_z sz.
    const double w0 = std::hypot(h0.mu_x, h0.mu_z);
    double rx = 0.0, ry = 0.0, rz = 0.0;
    if (w0 > 0.0) {
        const double mag = std::tanh(beta * w0) / w0;
        rx = mag * h0.mu_x;
        rz = mag * h0.mu_z;
    }
    // h1 = (Omega/2) n.sigma with Omega n = -2 (mu_x, 0, mu_z); the Bloch
    // vector precesses about n by Omega t (right-hand rule).
    const double w1 = std::hypot(h1.mu_x, h1.mu_z);
    if (w1 == 0.0 || t == 0.0) return rx;
    const double nx = -h1.mu_x / w1;
    const double ny = 0.0;
    const double nz = -h1.mu_z / w1;
    const double angle = 2.0 * w1 * t;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double dot = nx * rx + ny * ry + nz * rz;
    const double cross_x = ny * rz - nz * ry;
    return rx * c + cross_x * s + nx * dot * (1.0 - c);
}

OracleSeries::OracleSeries(const Schedule& schedule, const Lattice& lat,
                           const DenseOperator& rho, const DenseOperator& obs,
                           double dt)
    : lattice_(lat), segments_(schedule.segments), rho_(rho), obs_(obs), dt_(dt) {
    schedule.validate();
    const std::complex<double> trace = rho_.trace();
    if (std::abs(trace) == 0.0) throw ZeroTrace("density matrix has zero trace");
    trace_ = trace.real();
}

double OracleSeries::value_at(double t) const {
    const DenseOperator u = dt_ > 0.0
                                ? schedule_trotter_unitary(segments_, lattice_, t, dt_)
                                : schedule_unitary(segments_, lattice_, t);
    const DenseOperator evolved = u * rho_ * u.adjoint();
    return ((obs_ * evolved).trace()).real() / trace_;
}

}  // namespace erhoq
