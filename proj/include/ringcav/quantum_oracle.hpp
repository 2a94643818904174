#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ringcav/chain.hpp"
#include "ringcav/system_params.hpp"
#include "ringcav/types.hpp"

namespace ringcav {

/// Truncated Hilbert space for the exact master-equation solve: N two-level
/// atoms and two cavity modes each cut at fock_cutoff photons. The cap
/// bounds the superoperator side dimension()^2 (dense linear algebra only;
/// the oracle exists to validate, not to scale).
struct TruncatedHilbert {
    int n_atoms = 1;
    int fock_cutoff = 2;
    int liouvillian_cap = 4096;

    int dimension() const { return (1 << n_atoms) * (fock_cutoff + 1) * (fock_cutoff + 1); }

    void validate() const {
        if (n_atoms < 0 || n_atoms > 3)
            throw std::invalid_argument("TruncatedHilbert: n_atoms must be in [0, 3]");
        if (fock_cutoff < 1)
            throw std::invalid_argument("TruncatedHilbert: fock_cutoff must be >= 1");
        const long dim = dimension();
        if (dim * dim > liouvillian_cap)
            throw std::invalid_argument("TruncatedHilbert: superoperator side " +
                                        std::to_string(dim * dim) + " exceeds cap " +
                                        std::to_string(liouvillian_cap));
    }
};

/// Operators on the tensor space, ordered mode(+) x mode(-) x atom_1..N.
struct HilbertOperators {
    MatrixXc a_plus, a_minus;
    std::vector<MatrixXc> sigma_minus;
    std::vector<MatrixXc> sigma_z;
};
HilbertOperators build_operators(const TruncatedHilbert& h);

/// Hamiltonian in the frame rotating with the drive.
MatrixXc build_hamiltonian(const SystemParams& p, const AtomChain& chain,
                           const TruncatedHilbert& h);

/// Dense superoperator of the Lindblad master equation: the commutator with
/// the Hamiltonian, the cavity dissipator at rate kappa on each traveling
/// mode, and the atomic dissipator at rate gamma per atom.
MatrixXc build_liouvillian(const SystemParams& p, const AtomChain& chain,
                           const TruncatedHilbert& h);

/// Null-space density matrix: solves L vec(rho) = 0 under tr(rho) = 1.
/// The returned rho is Hermitian and unit trace; positivity holds up to
/// truncation error. Throws if the null space is degenerate.
MatrixXc steady_state_dm(const MatrixXc& liouvillian);

struct OracleExpectations {
    Complex a_plus{0.0, 0.0};
    Complex a_minus{0.0, 0.0};
    Scalar photons_plus = 0.0;   // <a+^dag a+>
    Scalar photons_minus = 0.0;  // <a-^dag a->
    VectorXc sigma_minus;
    VectorXd sigma_z;
};
OracleExpectations expectations(const MatrixXc& dm, const TruncatedHilbert& h);

struct TruncationNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Steady-state expectations with the truncation acceptance rule: the
/// result (computed at fock_cutoff + 1) is reported only if raising the
/// cutoff by one changes every expectation by less than rel_tol relative;
/// otherwise throws TruncationNotConverged.
OracleExpectations steady_state_expectations_converged(const SystemParams& p,
                                                       const AtomChain& chain,
                                                       const TruncatedHilbert& h,
                                                       Scalar rel_tol = 1e-6);

}  // namespace ringcav
