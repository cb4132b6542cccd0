#include "wcc/perturbation.hpp"

#include "wcc/error.hpp"
#include "wcc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wcc {

namespace {

constexpr double kTraceless = 1e-12;
constexpr double kZeroDiagonal = 1e-12;
constexpr double kConservation = 1e-10;

// ln(x/y)/(x-y), continued to 1/x on the diagonal
double log_weight(double x, double y) {
    if (std::abs(x - y) < kDegeneracyGap) {
        return 1.0 / x;
    }
    return std::log(x / y) / (x - y);
}

void require_full_rank(const RealVector& p) {
    if (p.minCoeff() <= 0.0) {
        throw Error(ErrorKind::InvalidArgument, "unperturbed state must have full rank");
    }
}

struct Gibbs {
    RealVector p;
    ComplexMatrix basis;
    ComplexMatrix rho;
};

Gibbs gibbs(const ComplexMatrix& h, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw Error(ErrorKind::InvalidArgument, "beta must satisfy 0 < beta < inf");
    }
    const Spectrum s = hermitian_eig(h);
    const double e0 = s.eigenvalues(0);
    RealVector p(s.eigenvalues.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        p(i) = std::exp(-beta * (s.eigenvalues(i) - e0));
    }
    p /= p.sum();
    ComplexMatrix rho = s.eigenvectors * p.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
    return Gibbs{p, s.eigenvectors, rho};
}

ComplexMatrix off_diagonal(ComplexMatrix m) {
    m.diagonal().setZero();
    return m;
}

// (1/2) sum_{i!=j} |s_ij|^2 w(p_i, p_j)
double coherence_sum(const RealVector& p, const ComplexMatrix& s) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        for (Eigen::Index j = 0; j < p.size(); ++j) {
            if (i != j) {
                acc += std::norm(s(i, j)) * log_weight(p(i), p(j));
            }
        }
    }
    return 0.5 * acc;
}

double series_coherence(const ComplexMatrix& m, const ComplexMatrix& h) {
    const Spectrum s = hermitian_eig(h);
    const ComplexMatrix r = s.eigenvectors.adjoint() * m * s.eigenvectors;
    RealVector p = r.diagonal().real();
    require_full_rank(p);
    return coherence_sum(p, off_diagonal(r));
}

} // namespace

PerturbedState::PerturbedState(DensityMatrix rho0_in, ComplexMatrix sigma_in, double epsilon_in)
    : rho0(std::move(rho0_in)), sigma(checked_hermitian(sigma_in, "sigma")), epsilon(epsilon_in) {
    if (sigma.rows() != static_cast<Eigen::Index>(rho0.dim())) {
        throw Error(ErrorKind::DimensionMismatch, "perturbation and state differ in dimension");
    }
    if (std::abs(sigma.trace()) > kTraceless) {
        throw Error(ErrorKind::InvalidArgument, "perturbation must be traceless");
    }
    if (!std::isfinite(epsilon)) {
        throw Error(ErrorKind::NonFinite, "epsilon is not finite");
    }
}

ComplexMatrix PerturbedState::sigma_in_eigenbasis() const {
    const ComplexMatrix& v = rho0.spectrum().eigenvectors;
    return v.adjoint() * sigma * v;
}

double entropy_series(const PerturbedState& ps) {
    const RealVector& p = ps.rho0.eigenvalues();
    require_full_rank(p);
    const Eigen::Index d = p.size();
    for (Eigen::Index i = 0; i + 1 < d; ++i) {
        if (p(i + 1) - p(i) < kDegeneracyGap) {
            throw Error(ErrorKind::Degenerate, "populations of rho0 are degenerate");
        }
    }
    const ComplexMatrix s = ps.sigma_in_eigenbasis();
    double first = 0.0;
    double second = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double sii = s(i, i).real();
        const double lp = std::log(p(i));
        first += sii * lp;
        second += sii * sii / (2.0 * p(i));
        for (Eigen::Index j = 0; j < d; ++j) {
            if (j != i) {
                second += std::norm(s(i, j)) / (p(i) - p(j)) * lp;
            }
        }
    }
    const double eps = ps.epsilon;
    return entropy_of_spectrum(p) - eps * first - eps * eps * second;
}

double coherence_series(const PerturbedState& ps) {
    const RealVector& p = ps.rho0.eigenvalues();
    require_full_rank(p);
    const ComplexMatrix s = ps.sigma_in_eigenbasis();
    const double scale = std::max(max_abs(s), 1.0);
    if (s.diagonal().cwiseAbs().maxCoeff() > kZeroDiagonal * scale) {
        throw Error(ErrorKind::InvalidArgument, "coherence_series needs a zero-diagonal perturbation");
    }
    return ps.epsilon * ps.epsilon * coherence_sum(p, s);
}

double relative_entropy_series(const DensityMatrix& rho0, const ComplexMatrix& sigma, const ComplexMatrix& mu,
                               double epsilon) {
    const PerturbedState base(rho0, sigma, epsilon);
    const PerturbedState other(rho0, mu, epsilon);
    const RealVector& p = rho0.eigenvalues();
    require_full_rank(p);
    const ComplexMatrix delta = other.sigma_in_eigenbasis() - base.sigma_in_eigenbasis();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        acc += std::norm(delta(i, i)) / p(i);
    }
    acc += 2.0 * coherence_sum(p, off_diagonal(delta));
    return 0.5 * epsilon * epsilon * acc;
}

AncillaPrediction ancilla_after_series(const DensityMatrix& rho_S, const AncillaSpec& spec, const ComplexMatrix& v) {
    const auto d_s = rho_S.dim();
    const auto d_a = spec.dim();
    if (static_cast<std::size_t>(v.rows()) != d_s * d_a || v.rows() != v.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "V must act on the joint system-ancilla space");
    }
    if (!(spec.tau > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "tau must be positive");
    }
    const ComplexMatrix vv = checked_hermitian(v, "V");
    const ComplexMatrix chi = checked_hermitian(spec.chi, "chi");
    const Gibbs g = gibbs(checked_hermitian(spec.H_A, "H_A"), spec.beta);

    AncillaPrediction out;
    out.G_A = partial_trace(vv * kron(rho_S.matrix(), identity(d_a)), d_s, d_a, Subsystem::Ancilla);
    const ComplexMatrix joint = kron(rho_S.matrix(), g.rho);
    out.D_A = -0.5 * partial_trace(double_commutator(vv, joint), d_s, d_a, Subsystem::Ancilla);

    const Complex i_unit{0.0, 1.0};
    const double rt = std::sqrt(spec.tau);
    out.rho_A = g.rho + rt * (spec.lambda * chi - i_unit * commutator(out.G_A, g.rho)) +
                spec.tau * (-i_unit * spec.lambda * commutator(out.G_A, chi) + out.D_A);
    return out;
}

double delta_coherence(const ComplexMatrix& before, const ComplexMatrix& after, const ComplexMatrix& h,
                       CoherenceMode mode) {
    if (mode == CoherenceMode::Exact) {
        return relative_entropy_of_coherence(DensityMatrix(after), h) -
               relative_entropy_of_coherence(DensityMatrix(before), h);
    }
    return series_coherence(after, h) - series_coherence(before, h);
}

double predicted_mutual_info(double beta, double dF, double dC) { return -beta * dF - dC; }

double predicted_rel_entropy(double beta, double W_C, double dC) { return beta * W_C + dC; }

AncillaSideWork coherent_work_ancilla_side(const AncillaSpec& spec, const DensityMatrix& rho_S,
                                           const ComplexMatrix& h_system, const ComplexMatrix& v) {
    const auto d_s = rho_S.dim();
    const auto d_a = spec.dim();
    const ComplexMatrix h_a = checked_hermitian(spec.H_A, "H_A");
    const ComplexMatrix h_s = checked_hermitian(h_system, "H_S");
    const ComplexMatrix vv = checked_hermitian(v, "V");
    if (static_cast<std::size_t>(h_s.rows()) != d_s || static_cast<std::size_t>(vv.rows()) != d_s * d_a) {
        throw Error(ErrorKind::DimensionMismatch, "coherent_work_ancilla_side: dimension mismatch");
    }
    const ComplexMatrix h0 = kron(h_s, identity(d_a)) + kron(identity(d_s), h_a);
    const double scale = std::max(max_abs(vv) * max_abs(h0), std::numeric_limits<double>::min());
    if (max_abs(commutator(vv, h0)) > kConservation * scale) {
        throw Error(ErrorKind::NotEnergyConserving, "[V, H_S + H_A] != 0");
    }
    const Gibbs g = gibbs(h_a, spec.beta);
    const ComplexMatrix g_a = partial_trace(vv * kron(rho_S.matrix(), identity(d_a)), d_s, d_a, Subsystem::Ancilla);
    const ComplexMatrix joint = kron(rho_S.matrix(), g.rho);
    const ComplexMatrix d_a_th = -0.5 * partial_trace(double_commutator(vv, joint), d_s, d_a, Subsystem::Ancilla);

    const Complex i_unit{0.0, 1.0};
    AncillaSideWork out;
    out.W_C = (-i_unit * spec.lambda * spec.tau * (commutator(g_a, h_a) * spec.chi).trace()).real();
    out.Q_inc = -spec.tau * expectation(h_a, d_a_th);
    return out;
}

double ergotropy_series(const AncillaSpec& spec) {
    const Gibbs g = gibbs(checked_hermitian(spec.H_A, "H_A"), spec.beta);
    for (Eigen::Index i = 0; i + 1 < g.p.size(); ++i) {
        if (std::abs(g.p(i + 1) - g.p(i)) < kDegeneracyGap) {
            throw Error(ErrorKind::Degenerate, "thermal populations are degenerate");
        }
    }
    const ComplexMatrix s = g.basis.adjoint() * checked_hermitian(spec.chi, "chi") * g.basis;
    const double eps = spec.lambda * std::sqrt(spec.tau);
    return eps * eps * coherence_sum(g.p, off_diagonal(s)) / spec.beta;
}

} // namespace wcc
