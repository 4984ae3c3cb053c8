"""Dense complex linear algebra on labelled tensor-product spaces.

Matrices are plain 2-D ``numpy`` arrays of ``complex128``. States carry their
tensor structure explicitly: ``dims`` lists the subsystem dimensions with the
leftmost factor as the most significant digit of the flattened index, so the
two-qubit basis is ordered ``|00>, |01>, |10>, |11>``.

The Pauli convention is ``sigma_z |0> = +|0>`` and ``sigma_z |1> = -|1>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable, Sequence

import numpy as np

HERMITIAN_ATOL = 1e-12
JACOBI_THRESHOLD = 1e-13
JACOBI_MAX_SWEEPS = 100
# above this size eig_hermitian(method="auto") hands off to LAPACK
JACOBI_AUTO_LIMIT = 512
DEGENERACY_RTOL = 1e-12

PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class ConvergenceError(ArithmeticError):
    """Raised when the eigensolver fails to reach its off-diagonal threshold."""

    def __init__(self, size: int, residual: float, sweeps: int):
        self.size = size
        self.residual = residual
        self.sweeps = sweeps
        super().__init__(
            f"Jacobi eigensolver did not converge for a {size}x{size} matrix "
            f"after {sweeps} sweeps (off-diagonal residual {residual:.3e})"
        )


class InvalidStateError(ValueError):
    """A density operator violates trace, Hermiticity or positivity."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class StateVector:
    """Normalised pure state over a tensor product of subsystems."""

    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != prod(dims):
            raise ValueError(f"{amps.size} amplitudes do not match dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def basis(cls, dims: Sequence[int], digits: Sequence[int]) -> "StateVector":
        """Computational basis state, e.g. ``basis((2, 2, 2), (0, 0, 1))``."""
        if len(digits) != len(dims):
            raise ValueError("one digit per subsystem is required")
        amps = np.zeros(prod(dims), dtype=complex)
        amps[np.ravel_multi_index(tuple(digits), tuple(dims))] = 1.0
        return cls(tuple(dims), amps)

    @classmethod
    def product(cls, *factors: np.ndarray) -> "StateVector":
        amps = np.ones(1, dtype=complex)
        for f in factors:
            amps = np.kron(amps, np.asarray(f, dtype=complex))
        return cls(tuple(len(f) for f in factors), amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def expectation(self, op: np.ndarray) -> float:
        psi = self.amplitudes
        return float(np.real(np.vdot(psi, op @ psi)))


@dataclass(frozen=True)
class DensityOperator:
    dims: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        mat = np.asarray(self.matrix, dtype=complex)
        n = prod(dims)
        if mat.shape != (n, n):
            raise ValueError(f"matrix shape {mat.shape} does not match dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", _frozen(mat))

    @classmethod
    def from_state(cls, state: StateVector) -> "DensityOperator":
        psi = state.amplitudes
        return cls(state.dims, np.outer(psi, psi.conj()))

    def validate(self, atol: float = 1e-10) -> None:
        """Raise :class:`InvalidStateError` unless this is a physical state."""
        rho = self.matrix
        if abs(np.trace(rho) - 1.0) > atol:
            raise InvalidStateError(f"trace {np.trace(rho).real:.3e} differs from 1")
        if not is_hermitian(rho, atol):
            raise InvalidStateError("density matrix is not Hermitian")
        low = np.linalg.eigvalsh(rho).min()
        if low < -atol:
            raise InvalidStateError(f"negative eigenvalue {low:.3e}")


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with orthonormal eigenvectors in the columns."""

    values: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(np.asarray(self.values, dtype=float)))
        object.__setattr__(self, "vectors", _frozen(np.asarray(self.vectors, dtype=complex)))

    def __iter__(self):
        return iter((self.values, self.vectors))

    def reconstruct(self) -> np.ndarray:
        v = self.vectors
        return (v * self.values) @ v.conj().T


def is_hermitian(h: np.ndarray, atol: float = HERMITIAN_ATOL) -> bool:
    h = np.asarray(h)
    return h.ndim == 2 and h.shape[0] == h.shape[1] and bool(
        np.all(np.abs(h - h.conj().T) <= atol)
    )


def kron(*mats: np.ndarray) -> np.ndarray:
    """Kronecker product, leftmost argument most significant."""
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def pauli(kind: str, site: int, n_sites: int) -> np.ndarray:
    """Single-site Pauli operator ``kind`` embedded at ``site`` of ``n_sites`` qubits."""
    kind = kind.lower()
    if kind not in PAULI:
        raise ValueError(f"unknown Pauli kind {kind!r}; expected one of i, x, y, z")
    if not 0 <= site < n_sites:
        raise ValueError(f"site {site} out of range for {n_sites} sites")
    factors = [PAULI["i"]] * n_sites
    factors[site] = PAULI[kind]
    return kron(*factors)


def pauli_string(ops: dict[int, str], n_sites: int) -> np.ndarray:
    """Tensor product with ``ops[site]`` on the listed sites and identity elsewhere."""
    factors = [PAULI["i"]] * n_sites
    for site, kind in ops.items():
        if not 0 <= site < n_sites:
            raise ValueError(f"site {site} out of range for {n_sites} sites")
        factors[site] = PAULI[kind.lower()]
    return kron(*factors)


# ---------------------------------------------------------------------------
# Eigensolver
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Tournament schedule: n-1 rounds of n/2 disjoint (p, q) pairs, p < q.

    Every unordered pair appears exactly once per sweep. Odd ``n`` is padded
    with a dummy index whose pairs are dropped.
    """
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.abs(off).max()) if a.size > 1 else 0.0


def _jacobi(h: np.ndarray, threshold: float, max_sweeps: int):
    """Cyclic complex Jacobi in round-robin order.

    Rotations within a round act on disjoint index pairs, so applying them
    together is identical to applying them one after another.
    """
    h = np.asarray(h)
    # real symmetric input stays in real arithmetic
    dtype = float if not np.any(np.imag(h)) else complex
    a = np.array(h.real if dtype is float else h, dtype=dtype)
    n = a.shape[0]
    vt = np.eye(n, dtype=dtype)
    if n == 1:
        return a.diagonal().real.copy(), vt
    scale = max(1.0, float(np.abs(a).max()))
    tol = threshold * scale
    rounds = _round_robin(n)
    for sweep in range(max_sweeps):
        if _off_norm(a) <= tol:
            break
        for p, q in rounds:
            apq = a[p, q]
            mag = np.abs(apq)
            active = mag > tol
            if not active.any():
                continue
            p, q, apq, mag = p[active], q[active], apq[active], mag[active]
            app = a[p, p].real
            aqq = a[q, q].real
            # e^{-i phi} with phi = arg(a_pq); exact for real entries
            phase = np.conj(apq) / mag
            zeta = (aqq - app) / (2.0 * mag)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1.0 + zeta**2))
            c = 1.0 / np.sqrt(1.0 + t**2)
            s = t * c
            # W = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] in the (p, q) plane
            w11, w12 = c, s
            w21, w22 = -s * phase, c * phase
            # W^H A W as two row passes: B = W^H A, then W^H B^H (A Hermitian)
            cw11, cw12, cw21, cw22 = (np.conj(w)[:, None] for w in (w11, w12, w21, w22))
            for _ in range(2):
                rp, rq = a[p, :], a[q, :]
                a[p, :] = cw11 * rp + cw21 * rq
                a[q, :] = cw12 * rp + cw22 * rq
                a = a.conj().T.copy()
            a[p, q] = 0.0
            a[q, p] = 0.0
            a[p, p] = a[p, p].real
            a[q, q] = a[q, q].real
            # V W kept as its transpose: rows of vt are columns of V
            vp, vq = vt[p, :], vt[q, :]
            vt[p, :] = w11[:, None] * vp + w21[:, None] * vq
            vt[q, :] = w12[:, None] * vp + w22[:, None] * vq
    else:
        residual = _off_norm(a)
        if residual > tol:
            raise ConvergenceError(n, residual, max_sweeps)
    return a.diagonal().real.copy(), vt.T.copy()


def _order_and_fix_phase(values: np.ndarray, vectors: np.ndarray):
    """Sort ascending, break near-ties by original column, fix vector phases."""
    n = values.size
    order = np.argsort(values, kind="stable")
    # within clusters of (numerically) equal eigenvalues keep the solver's column order
    out, i = [], 0
    while i < n:
        j = i + 1
        while j < n and abs(values[order[j]] - values[order[i]]) <= DEGENERACY_RTOL * max(
            1.0, abs(values[order[i]])
        ):
            j += 1
        out.extend(sorted(order[i:j]))
        i = j
    order = np.array(out, dtype=np.intp)
    vals = values[order]
    vecs = vectors[:, order].copy()
    mags = np.abs(vecs)
    for k in range(n):
        col = mags[:, k]
        # first component within rounding of the largest magnitude
        idx = int(np.flatnonzero(col >= col.max() - 1e-12)[0])
        z = vecs[idx, k]
        if z != 0:
            vecs[:, k] *= z.conj() / abs(z)
        vecs[idx, k] = abs(vecs[idx, k])
    return vals, vecs


def eig_hermitian(
    h: np.ndarray,
    method: str = "auto",
    threshold: float = JACOBI_THRESHOLD,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> EigenDecomposition:
    """Eigen-decomposition of a dense Hermitian matrix.

    ``method`` is ``"jacobi"``, ``"lapack"`` or ``"auto"`` (Jacobi up to
    ``JACOBI_AUTO_LIMIT``, LAPACK beyond). Both routes return ascending
    eigenvalues, break degenerate ties by the solver's column order and
    rotate each eigenvector so its largest component is real and
    non-negative, so identical inputs give bit-identical outputs.

    Raises:
        ValueError: ``h`` is not square Hermitian within ``HERMITIAN_ATOL``.
        ConvergenceError: Jacobi sweeps exhausted before convergence.
    """
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h):
        raise ValueError("matrix is not Hermitian within 1e-12")
    if method == "auto":
        method = "jacobi" if h.shape[0] <= JACOBI_AUTO_LIMIT else "lapack"
    if method == "jacobi":
        values, vectors = _jacobi(h, threshold, max_sweeps)
    elif method == "lapack":
        values, vectors = np.linalg.eigh(0.5 * (h + h.conj().T))
    else:
        raise ValueError(f"unknown eigensolver method {method!r}")
    vals, vecs = _order_and_fix_phase(values, vectors)
    return EigenDecomposition(vals, vecs)


# ---------------------------------------------------------------------------
# Partial trace
# ---------------------------------------------------------------------------


def _normalise_keep(keep: Iterable[int] | int, n_factors: int) -> tuple[int, ...]:
    if isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    keep = tuple(sorted(set(int(k) for k in keep)))
    if not keep or len(keep) == n_factors:
        raise ValueError("keep must be a nonempty proper subset of the tensor factors")
    if keep[0] < 0 or keep[-1] >= n_factors:
        raise ValueError(f"keep {keep} out of range for {n_factors} factors")
    return keep


def partial_trace(
    state: StateVector | DensityOperator, keep: Iterable[int] | int
) -> DensityOperator:
    """Reduced density operator on the factors listed in ``keep``.

    Kept factors retain their original relative order.
    """
    dims = state.dims
    keep = _normalise_keep(keep, len(dims))
    drop = tuple(i for i in range(len(dims)) if i not in keep)
    kdims = tuple(dims[i] for i in keep)
    dk = prod(kdims)
    if isinstance(state, StateVector):
        psi = state.amplitudes.reshape(dims).transpose(keep + drop).reshape(dk, -1)
        rho = psi @ psi.conj().T
    else:
        n = len(dims)
        r = state.matrix.reshape(dims + dims)
        perm = keep + tuple(n + i for i in keep) + drop + tuple(n + i for i in drop)
        dd = prod(dims[i] for i in drop)
        r = r.transpose(perm).reshape(dk, dk, dd, dd)
        rho = np.einsum("ijkk->ij", r)
    return DensityOperator(kdims, rho)


def trace_out(state: StateVector | DensityOperator, drop: Iterable[int] | int) -> DensityOperator:
    """Partial trace over the factors in ``drop``."""
    if isinstance(drop, (int, np.integer)):
        drop = (int(drop),)
    drop = set(int(d) for d in drop)
    return partial_trace(state, [i for i in range(len(state.dims)) if i not in drop])
