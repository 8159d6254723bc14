"""Dense Fock-space linear algebra.

Convention: hbar = 1, [x, p] = i, so x = (a + a^dag)/sqrt(2),
p = i(a^dag - a)/sqrt(2) and the vacuum has Var(x) = Var(p) = 1/2.
Operators are plain complex numpy arrays; states are 1-D complex arrays.
"""

import numpy as np
from scipy.linalg import LinAlgError, eigh
from scipy.special import gammaln

from .errors import InvalidArgumentError, NumericalFailureError

HERMITICITY_TOL = 1e-12


def annihilation(cutoff):
    """Truncated annihilation operator a in the number basis."""
    return np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), k=1).astype(complex)


def hermitize(matrix):
    """Return (M + M^dag)/2, scrubbing round-off asymmetry."""
    return 0.5 * (matrix + matrix.conj().T)


def check_hermitian(matrix, tol=HERMITICITY_TOL):
    defect = np.max(np.abs(matrix - matrix.conj().T))
    if defect > tol:
        raise InvalidArgumentError(
            f"matrix is not Hermitian (max asymmetry {defect:.3e} > {tol:.1e})"
        )


def quadrature_matrix(coeff_x, coeff_p, cutoff):
    """Matrix of coeff_x * x + coeff_p * p truncated to `cutoff` levels."""
    if cutoff < 2:
        raise InvalidArgumentError(f"cutoff must be >= 2, got {cutoff}")
    if coeff_x == 0 and coeff_p == 0:
        raise InvalidArgumentError("quadrature coefficients must not both vanish")
    a = annihilation(cutoff)
    adag = a.conj().T
    x = (a + adag) / np.sqrt(2)
    p = 1j * (adag - a) / np.sqrt(2)
    return hermitize(coeff_x * x + coeff_p * p)


def _spectral_function(func, coeff_x, coeff_p, scale, cutoff, padding):
    """Apply `func` to scale*(coeff_x*x + coeff_p*p) spectrally, then truncate.

    The function is evaluated in dimension cutoff+padding and the top-left
    cutoff x cutoff block is returned; padding suppresses truncation error
    in the retained block.
    """
    if padding < 0:
        raise InvalidArgumentError(f"padding must be >= 0, got {padding}")
    dim = cutoff + padding
    quad = quadrature_matrix(coeff_x, coeff_p, dim)
    try:
        evals, evecs = eigh(quad)
    except LinAlgError as exc:
        raise NumericalFailureError(
            "eigendecomposition of quadrature matrix failed",
            dimension=dim,
            coeff_x=coeff_x,
            coeff_p=coeff_p,
        ) from exc
    full = (evecs * func(scale * evals)) @ evecs.conj().T
    return hermitize(full[:cutoff, :cutoff])


def cosine_of_quadrature(coeff_x, coeff_p, scale, cutoff, padding=None):
    """cos(scale * (coeff_x*x + coeff_p*p)) via padded spectral decomposition.

    Default padding equals the cutoff, which keeps the retained block within
    ~1e-8 of the exact truncation of the infinite-dimensional operator.
    """
    if padding is None:
        padding = cutoff
    return _spectral_function(np.cos, coeff_x, coeff_p, scale, cutoff, padding)


def sine_of_quadrature(coeff_x, coeff_p, scale, cutoff, padding=None):
    """sin(scale * (coeff_x*x + coeff_p*p)); companion to cosine_of_quadrature."""
    if padding is None:
        padding = cutoff
    return _spectral_function(np.sin, coeff_x, coeff_p, scale, cutoff, padding)


def exp_of_quadrature(coeff_x, coeff_p, scale, cutoff, padding=None):
    """exp(i * scale * (coeff_x*x + coeff_p*p)); unitary before truncation."""
    if padding is None:
        padding = cutoff
    if cutoff < 2:
        raise InvalidArgumentError(f"cutoff must be >= 2, got {cutoff}")
    if padding < 0:
        raise InvalidArgumentError(f"padding must be >= 0, got {padding}")
    dim = cutoff + padding
    quad = quadrature_matrix(coeff_x, coeff_p, dim)
    try:
        evals, evecs = eigh(quad)
    except LinAlgError as exc:
        raise NumericalFailureError(
            "eigendecomposition of quadrature matrix failed",
            dimension=dim,
            coeff_x=coeff_x,
            coeff_p=coeff_p,
        ) from exc
    full = (evecs * np.exp(1j * scale * evals)) @ evecs.conj().T
    return full[:cutoff, :cutoff]


def displacement_matrix(alpha, cutoff):
    """Exact Fock-basis matrix of the displacement operator D(alpha).

    Uses <m|D(alpha)|n> = sqrt(n!/m!) alpha^(m-n) e^(-|alpha|^2/2)
    L_n^(m-n)(|alpha|^2) for m >= n.  Each diagonal is generated by a
    three-term Laguerre recurrence carried out directly on the scaled
    (bounded-by-one) matrix elements, so there is no overflow even for
    cutoffs of several hundred.
    """
    if cutoff < 1:
        raise InvalidArgumentError(f"cutoff must be >= 1, got {cutoff}")
    alpha = complex(alpha)
    if alpha == 0:
        return np.eye(cutoff, dtype=complex)
    mod2 = abs(alpha) ** 2
    log_mod = np.log(abs(alpha))
    phase = alpha / abs(alpha)
    out = np.zeros((cutoff, cutoff), dtype=complex)
    for k in range(cutoff):
        nmax = cutoff - k
        # scaled[n] = sqrt(n!/(n+k)!) |alpha|^k e^(-|alpha|^2/2) L_n^(k)(|alpha|^2)
        scaled = np.empty(nmax)
        scaled[0] = np.exp(k * log_mod - 0.5 * mod2 - 0.5 * gammaln(k + 1))
        if nmax > 1:
            scaled[1] = (k + 1 - mod2) * scaled[0] / np.sqrt(k + 1)
        for n in range(1, nmax - 1):
            c_up = np.sqrt((n + 1) / (n + 1 + k))
            c_dn = np.sqrt((n + 1) * n / ((n + 1 + k) * (n + k)))
            scaled[n + 1] = (
                (2 * n + k + 1 - mod2) * c_up * scaled[n]
                - (n + k) * c_dn * scaled[n - 1]
            ) / (n + 1)
        rows = np.arange(nmax) + k
        cols = np.arange(nmax)
        out[rows, cols] = phase**k * scaled
        if k > 0:
            # upper triangle from D(alpha)^dag = D(-alpha)
            out[cols, rows] = (-phase.conjugate()) ** k * scaled
    return out


def ground_state(op):
    """Smallest eigenvalue and its normalized eigenvector.

    The eigenvector's global phase is fixed by making its largest-magnitude
    amplitude real and positive.
    """
    check_hermitian(op, tol=1e-10)
    try:
        evals, evecs = eigh(op)
    except LinAlgError as exc:
        raise NumericalFailureError(
            "eigensolver failed to converge", dimension=op.shape[0]
        ) from exc
    vec = evecs[:, 0]
    vec = vec / np.linalg.norm(vec)
    idx = int(np.argmax(np.abs(vec)))
    vec = vec * (vec[idx].conjugate() / abs(vec[idx]))
    return float(evals[0]), vec


def expectation(op, state):
    """Real expectation value <state|op|state>."""
    state = np.asarray(state)
    if op.shape[0] != state.shape[0]:
        raise InvalidArgumentError(
            f"cutoff mismatch: operator {op.shape[0]}, state {state.shape[0]}"
        )
    val = np.vdot(state, op @ state)
    if abs(val.imag) > 1e-10:
        raise NumericalFailureError(
            f"expectation has non-negligible imaginary part {val.imag:.3e}"
        )
    return float(val.real)


def normalize(state):
    """Normalize a Fock amplitude vector to unit norm."""
    state = np.asarray(state, dtype=complex)
    norm = np.linalg.norm(state)
    if norm == 0:
        raise InvalidArgumentError("cannot normalize the zero vector")
    return state / norm
