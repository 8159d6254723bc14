"""Bloch-sphere sweep: ground states and the expectation/infidelity matrices."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh

from .bloch import Atlas, infidelity_matrix
from .errors import DegenerateInputError, InvalidArgumentError, NumericalFailureError
from .operators import build_operator_set


@dataclass
class SweepRecord:
    """Expectation matrices E[N][i, j] = <psi_i^(N)| O_GKP^[N](u_j) |psi_i^(N)>."""

    atlas: Atlas
    cutoffs: list
    expectation: dict = field(default_factory=dict)  # N -> (M, M) array
    infidelity: np.ndarray = None
    ground_energies: dict = field(default_factory=dict)  # N -> (M,) array


def _sweep_cutoff(points, cutoff):
    """Ground states and expectation matrix for one cutoff.

    O_GKP(u_j) is linear in u_j, so each row of the expectation matrix only
    needs the four component expectations of the row's ground state.
    """
    ops = build_operator_set(cutoff)
    m = points.shape[0]
    base = ops.o1 + np.eye(cutoff)
    comps = np.stack([ops.ox, ops.oy, ops.oz])
    energies = np.empty(m)
    const_part = np.empty(m)
    pauli_part = np.empty((m, 3))
    for i, u in enumerate(points):
        op = base - (u[0] * ops.ox + u[1] * ops.oy + u[2] * ops.oz)
        op = 0.5 * (op + op.conj().T)
        try:
            evals, evecs = eigh(op, subset_by_index=(0, 0))
        except np.linalg.LinAlgError as exc:
            raise NumericalFailureError(
                "eigensolver failed during sweep", bloch=tuple(u), cutoff=cutoff
            ) from exc
        energies[i] = evals[0]
        psi = evecs[:, 0]
        const_part[i] = np.vdot(psi, base @ psi).real
        pauli_part[i] = [np.vdot(psi, comp @ psi).real for comp in comps]
    expectation = const_part[:, None] - pauli_part @ points.T
    return cutoff, expectation, energies


def run_sweep(atlas, cutoffs, workers=1):
    """Fill a SweepRecord over all (state, cutoff) combinations.

    Deterministic for fixed atlas and cutoffs; the worker count only
    distributes cutoffs over processes and never changes results.
    """
    cutoffs = [int(n) for n in cutoffs]
    if sorted(cutoffs) != cutoffs:
        raise InvalidArgumentError("cutoffs must be ascending")
    if len(set(cutoffs)) != len(cutoffs):
        raise InvalidArgumentError("cutoffs must be distinct")
    points = np.asarray(atlas.points, dtype=float)
    record = SweepRecord(
        atlas=atlas,
        cutoffs=cutoffs,
        infidelity=infidelity_matrix(points),
    )
    if workers > 1 and len(cutoffs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_sweep_cutoff, [points] * len(cutoffs), cutoffs)
            for cutoff, expectation, energies in results:
                record.expectation[cutoff] = expectation
                record.ground_energies[cutoff] = energies
    else:
        for cutoff in cutoffs:
            _, expectation, energies = _sweep_cutoff(points, cutoff)
            record.expectation[cutoff] = expectation
            record.ground_energies[cutoff] = energies
    return record


def normalize_matrix(matrix):
    """Affine min-max rescale of a matrix to [0, 1]."""
    matrix = np.asarray(matrix, dtype=float)
    lo, hi = matrix.min(), matrix.max()
    if hi == lo:
        raise DegenerateInputError("cannot normalize a constant matrix")
    return (matrix - lo) / (hi - lo)


def logical_subspace_identity_check(record, cutoff):
    """Max |E[N][i,j] - 2 * (1 - F_ij)| over all state/operator pairs."""
    if cutoff not in record.expectation:
        raise InvalidArgumentError(f"cutoff {cutoff} not present in record")
    return float(
        np.max(np.abs(record.expectation[cutoff] - 2.0 * record.infidelity))
    )


def diagonal_violations(matrix):
    """Count rows and columns whose minimum is off the diagonal."""
    rows = int(np.sum(np.argmin(matrix, axis=1) != np.arange(matrix.shape[0])))
    cols = int(np.sum(np.argmin(matrix, axis=0) != np.arange(matrix.shape[1])))
    return rows + cols
