"""Entropy and purity of reduced states."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .core import DensityOperator, InvalidStateError, StateVector, partial_trace
from .spectra import dominant_bell

CLAMP = 1e-14
NEGATIVE_TOL = 1e-10


def _log(p: np.ndarray, base: str) -> np.ndarray:
    if base == "bits":
        return np.log2(p)
    if base == "nats":
        return np.log(p)
    raise ValueError(f"base must be 'bits' or 'nats', got {base!r}")


def von_neumann_entropy(rho: DensityOperator | np.ndarray, base: str = "bits") -> float:
    """``-Tr rho log rho``; eigenvalues below ``1e-14`` count as zero.

    A state left with a single nonzero eigenvalue is pure and gets exactly 0.

    Raises:
        InvalidStateError: an eigenvalue is below ``-1e-10``.
    """
    mat = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)
    p = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))
    if p.min() < -NEGATIVE_TOL:
        raise InvalidStateError(f"density matrix has negative eigenvalue {p.min():.3e}")
    p = p[p > CLAMP]
    if p.size <= 1:
        return 0.0
    s = float(-np.sum(p * _log(p, base)))
    return max(s, 0.0)


def purity(rho: DensityOperator | np.ndarray) -> float:
    mat = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)
    return float(np.real(np.einsum("ij,ji->", mat, mat)))


@dataclass(frozen=True)
class EntanglementReport:
    entropy: float
    purity: float
    base: str = "bits"
    bell_label: Optional[str] = None
    bell_fidelity: Optional[float] = None


def entanglement_report(
    state: StateVector, keep: Iterable[int] | int, base: str = "bits"
) -> EntanglementReport:
    """Entropy and purity of the reduced state on ``keep``.

    For a two-qubit state the closest Bell state and its fidelity are
    included as well.
    """
    rho = partial_trace(state, keep)
    label = fid = None
    if state.dims == (2, 2):
        label, fid = dominant_bell(state.amplitudes)
    return EntanglementReport(von_neumann_entropy(rho, base), purity(rho), base, label, fid)
