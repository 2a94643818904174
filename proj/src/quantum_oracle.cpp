#include "ringcav/quantum_oracle.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <unsupported/Eigen/KroneckerProduct>

namespace ringcav {

namespace {

MatrixXc mode_annihilator(int cutoff) {
    MatrixXc a = MatrixXc::Zero(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(Scalar(n));
    return a;
}

// Embeds a single-factor operator at `slot` of the tensor product
// mode(+) x mode(-) x atom_1 ... atom_N.
MatrixXc embed(const MatrixXc& op, int slot, const TruncatedHilbert& h) {
    const int fock = h.fock_cutoff + 1;
    MatrixXc out = MatrixXc::Identity(1, 1);
    for (int k = 0; k < 2 + h.n_atoms; ++k) {
        const int dim_k = (k < 2) ? fock : 2;
        const MatrixXc factor = (k == slot) ? op : MatrixXc::Identity(dim_k, dim_k);
        out = Eigen::kroneckerProduct(out, factor).eval();
    }
    return out;
}

// vec(A rho B) = (B^T kron A) vec(rho), column-major stacking.
void add_dissipator(MatrixXc& liouvillian, const MatrixXc& jump, Scalar rate) {
    const int d = static_cast<int>(jump.rows());
    const MatrixXc cdc = jump.adjoint() * jump;
    const MatrixXc id = MatrixXc::Identity(d, d);
    liouvillian.noalias() += rate * Eigen::kroneckerProduct(jump.conjugate(), jump);
    liouvillian.noalias() -= (rate / 2) * Eigen::kroneckerProduct(id, cdc);
    liouvillian.noalias() -= (rate / 2) * Eigen::kroneckerProduct(cdc.transpose(), id);
}

}  // namespace

HilbertOperators build_operators(const TruncatedHilbert& h) {
    h.validate();
    const MatrixXc a = mode_annihilator(h.fock_cutoff);
    MatrixXc sm(2, 2), sz(2, 2);
    sm << 0, 1, 0, 0;  // |g><e| with |g> = index 0
    sz << -1, 0, 0, 1;

    HilbertOperators ops;
    ops.a_plus = embed(a, 0, h);
    ops.a_minus = embed(a, 1, h);
    for (int i = 0; i < h.n_atoms; ++i) {
        ops.sigma_minus.push_back(embed(sm, 2 + i, h));
        ops.sigma_z.push_back(embed(sz, 2 + i, h));
    }
    return ops;
}

MatrixXc build_hamiltonian(const SystemParams& p, const AtomChain& chain,
                           const TruncatedHilbert& h) {
    p.validate();
    h.validate();
    if (chain.size() != h.n_atoms)
        throw std::invalid_argument("build_hamiltonian: chain/hilbert size mismatch");

    const HilbertOperators ops = build_operators(h);
    const int d = h.dimension();
    MatrixXc ham = MatrixXc::Zero(d, d);
    ham.noalias() -= p.delta * (ops.a_plus.adjoint() * ops.a_plus);
    ham.noalias() -= p.delta * (ops.a_minus.adjoint() * ops.a_minus);
    for (int i = 0; i < h.n_atoms; ++i) {
        const MatrixXc sp = ops.sigma_minus[i].adjoint();
        ham.noalias() -= p.delta_a() * (sp * ops.sigma_minus[i]);
        const Complex g_plus = p.g * std::exp(im * (two_pi * chain.positions[i]));
        const Complex g_minus = std::conj(g_plus);
        const MatrixXc coupling = g_minus * (sp * ops.a_minus) + g_plus * (sp * ops.a_plus);
        ham.noalias() += coupling + coupling.adjoint();
    }
    const Scalar drive = std::sqrt(p.kappa_in) * p.epsilon;
    ham.noalias() += drive * (ops.a_plus + ops.a_plus.adjoint());
    return ham;
}

MatrixXc build_liouvillian(const SystemParams& p, const AtomChain& chain,
                           const TruncatedHilbert& h) {
    const MatrixXc ham = build_hamiltonian(p, chain, h);
    const HilbertOperators ops = build_operators(h);
    const int d = h.dimension();
    const MatrixXc id = MatrixXc::Identity(d, d);

    MatrixXc liou = MatrixXc::Zero(d * d, d * d);
    liou.noalias() -= im * Eigen::kroneckerProduct(id, ham);
    liou.noalias() += im * Eigen::kroneckerProduct(ham.transpose(), id);
    add_dissipator(liou, ops.a_plus, p.kappa());
    add_dissipator(liou, ops.a_minus, p.kappa());
    for (int i = 0; i < h.n_atoms; ++i) add_dissipator(liou, ops.sigma_minus[i], p.gamma);
    return liou;
}

MatrixXc steady_state_dm(const MatrixXc& liouvillian) {
    const int d2 = static_cast<int>(liouvillian.rows());
    const int d = static_cast<int>(std::lround(std::sqrt(Scalar(d2))));
    if (d * d != d2) throw std::invalid_argument("steady_state_dm: not a superoperator");

    // Trace row replaces the first equation; the remaining rows pin the
    // null vector, the trace row fixes its normalization.
    VectorXc trace_row = VectorXc::Zero(d2);
    for (int i = 0; i < d; ++i) trace_row[i * d + i] = 1.0;

    MatrixXc m = liouvillian;
    m.row(0) = trace_row.transpose();
    VectorXc b = VectorXc::Zero(d2);
    b[0] = 1.0;
    VectorXc x = m.partialPivLu().solve(b);

    const Scalar scale = liouvillian.cwiseAbs().maxCoeff() * x.norm();
    if (!x.allFinite() || (liouvillian * x).norm() > 1e-8 * std::max(scale, Scalar(1))) {
        // Row replacement hit a bad pivot; fall back to the stacked
        // least-squares system [L; trace] x = [0; 1].
        MatrixXc stacked(d2 + 1, d2);
        stacked.topRows(d2) = liouvillian;
        stacked.row(d2) = trace_row.transpose();
        VectorXc rhs = VectorXc::Zero(d2 + 1);
        rhs[d2] = 1.0;
        x = stacked.colPivHouseholderQr().solve(rhs);
        if (!x.allFinite() || (liouvillian * x).norm() > 1e-6 * std::max(scale, Scalar(1)))
            throw std::runtime_error(
                "steady_state_dm: degenerate null space (no dissipation?)");
    }

    MatrixXc rho = Eigen::Map<const MatrixXc>(x.data(), d, d);
    rho = ((rho + rho.adjoint()) / 2).eval();
    rho /= rho.trace().real();
    return rho;
}

OracleExpectations expectations(const MatrixXc& dm, const TruncatedHilbert& h) {
    const HilbertOperators ops = build_operators(h);
    OracleExpectations e;
    e.a_plus = (ops.a_plus * dm).trace();
    e.a_minus = (ops.a_minus * dm).trace();
    e.photons_plus = (ops.a_plus.adjoint() * ops.a_plus * dm).trace().real();
    e.photons_minus = (ops.a_minus.adjoint() * ops.a_minus * dm).trace().real();
    e.sigma_minus.resize(h.n_atoms);
    e.sigma_z.resize(h.n_atoms);
    for (int i = 0; i < h.n_atoms; ++i) {
        e.sigma_minus[i] = (ops.sigma_minus[i] * dm).trace();
        e.sigma_z[i] = (ops.sigma_z[i] * dm).trace().real();
    }
    return e;
}

namespace {

OracleExpectations solve_at(const SystemParams& p, const AtomChain& chain,
                            TruncatedHilbert h) {
    return expectations(steady_state_dm(build_liouvillian(p, chain, h)), h);
}

void collect(const OracleExpectations& e, std::vector<Complex>& out) {
    out.push_back(e.a_plus);
    out.push_back(e.a_minus);
    out.push_back(e.photons_plus);
    out.push_back(e.photons_minus);
    for (Eigen::Index i = 0; i < e.sigma_minus.size(); ++i) out.push_back(e.sigma_minus[i]);
    for (Eigen::Index i = 0; i < e.sigma_z.size(); ++i) out.push_back(e.sigma_z[i]);
}

}  // namespace

OracleExpectations steady_state_expectations_converged(const SystemParams& p,
                                                       const AtomChain& chain,
                                                       const TruncatedHilbert& h,
                                                       Scalar rel_tol) {
    TruncatedHilbert refined = h;
    refined.fock_cutoff = h.fock_cutoff + 1;
    refined.validate();

    const OracleExpectations coarse = solve_at(p, chain, h);
    const OracleExpectations fine = solve_at(p, chain, refined);

    std::vector<Complex> xc, xf;
    collect(coarse, xc);
    collect(fine, xf);
    Scalar scale = 0;
    for (const Complex& v : xf) scale = std::max(scale, std::abs(v));
    const Scalar floor = 1e-10 * std::max(scale, Scalar(1e-300));
    for (std::size_t i = 0; i < xc.size(); ++i) {
        const Scalar denom = std::max({std::abs(xc[i]), std::abs(xf[i]), floor});
        if (std::abs(xc[i] - xf[i]) > rel_tol * denom)
            throw TruncationNotConverged(
                "oracle truncation not converged at fock_cutoff = " +
                std::to_string(h.fock_cutoff));
    }
    return fine;
}

}  // namespace ringcav
