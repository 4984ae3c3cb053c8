"""Band sweeps over the ring angular momentum, Bloch vectors and Bell analysis."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import eig_hermitian
from .hamiltonians import (
    SystemSpec,
    build_fluxons,
    build_single_fluxon,
    build_two_fluxon,
    closed_form_single_energies,
    closed_form_two_fluxon_energies,
)

_S = 1 / np.sqrt(2)
BELL_STATES = {
    "phi+": np.array([_S, 0, 0, _S], dtype=complex),
    "phi-": np.array([_S, 0, 0, -_S], dtype=complex),
    "psi+": np.array([0, _S, _S, 0], dtype=complex),
    "psi-": np.array([0, _S, -_S, 0], dtype=complex),
}

# E1 = d(m-1) is carried by psi-, E2 = d(m) by phi-. The swapped pairing is
# a common alternative labelling, kept for output metadata.
BAND_BELL_LABELS = {"E1": "psi-", "E2": "phi-"}
QUOTED_BAND_BELL_LABELS = {"E1": "phi-", "E2": "psi-"}

SINGLE_LABELS = ("E_minus", "E_plus")
TWO_FLUXON_LABELS = ("E1", "E2", "E3", "E4")


@dataclass(frozen=True)
class BandTable:
    """Eigenvalues of a family of fluxon Hamiltonians indexed by ``m``.

    ``energies`` holds each row sorted ascending. ``numeric`` and ``closed``
    are arranged by ``band_labels`` so column ``j`` of both refers to the
    same analytic band at every ``m``; ``closed`` is ``None`` when no closed
    form exists for the system.
    """

    m_values: np.ndarray
    energies: np.ndarray
    band_labels: tuple[str, ...]
    numeric: np.ndarray
    closed: Optional[np.ndarray]


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    @property
    def length(self) -> float:
        return float(np.sqrt(self.x**2 + self.y**2 + self.z**2))


def _closed_forms(system: SystemSpec, m: int):
    if system.n_fluxons == 1:
        return SINGLE_LABELS, closed_form_single_energies(m, system.delta, system.dispersion)
    if system.n_fluxons == 2 and system.variant == "effective" and system.link_ms is None:
        return TWO_FLUXON_LABELS, closed_form_two_fluxon_energies(m, system.delta, system.dispersion)
    return None, None


def _match_labels(values: np.ndarray, closed: np.ndarray) -> np.ndarray:
    """Numeric eigenvalue assigned to each closed-form band by rank.

    Both lists are sorted, so the k-th smallest closed form is paired with
    the k-th smallest eigenvalue; equal closed forms get equal values.
    """
    out = np.empty(len(closed))
    out[np.argsort(closed, kind="stable")] = np.sort(values)
    return out


def band_sweep(system: SystemSpec, m_min: int, m_max: int) -> BandTable:
    if m_min > m_max:
        raise ValueError("m_min must not exceed m_max")
    ms = np.arange(m_min, m_max + 1)
    rows, numeric, closed = [], [], []
    labels = None
    for m in ms:
        values = eig_hermitian(build_fluxons(system, int(m))).values
        rows.append(values)
        labels_m, cf = _closed_forms(system, int(m))
        if cf is None:
            numeric.append(values)
        else:
            labels = labels_m
            cf = np.asarray(cf, dtype=float)
            closed.append(cf)
            numeric.append(_match_labels(values, cf))
    if labels is None:
        labels = tuple(f"band{k}" for k in range(len(rows[0])))
    return BandTable(
        m_values=ms,
        energies=np.array(rows),
        band_labels=labels,
        numeric=np.array(numeric),
        closed=np.array(closed) if closed else None,
    )


def fluxon_bloch_vector(vec) -> BlochVector:
    """Bloch vector of a fluxon state ``alpha |0> + beta |1>``."""
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    if vec.size != 2:
        raise ValueError("a fluxon state has two components")
    norm2 = float(np.vdot(vec, vec).real)
    if norm2 == 0:
        raise ValueError("zero vector has no Bloch representation")
    alpha, beta = vec
    cross = np.conj(alpha) * beta
    return BlochVector(
        x=float(2 * cross.real / norm2),
        y=float(2 * cross.imag / norm2),
        z=float((abs(alpha) ** 2 - abs(beta) ** 2) / norm2),
    )


def bloch_sweep(delta: float, m_min: int, m_max: int, dispersion: str = "quadratic") -> list[dict]:
    """Fluxon eigenstates of the single-fluxon model as Bloch vectors.

    One record per ``(m, band)`` with band ``"lower"`` or ``"upper"``.
    """
    records = []
    for m in range(m_min, m_max + 1):
        values, vectors = eig_hermitian(build_single_fluxon(m, delta, dispersion))
        for k, band in enumerate(("lower", "upper")):
            b = fluxon_bloch_vector(vectors[:, k])
            records.append({"m": m, "band": band, "x": b.x, "y": b.y, "z": b.z,
                            "energy": float(values[k])})
    return records


def bell_fidelity(vec, bell: str) -> float:
    """``|<bell|vec>|^2`` for a normalised two-qubit vector."""
    key = bell.replace("Φ", "phi").replace("Ψ", "psi").lower()
    if key not in BELL_STATES:
        raise ValueError(f"unknown Bell state {bell!r}")
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    return float(abs(np.vdot(BELL_STATES[key], vec)) ** 2)


def dominant_bell(vec) -> tuple[str, float]:
    fids = {k: bell_fidelity(vec, k) for k in BELL_STATES}
    best = max(fids, key=lambda k: (fids[k], -list(BELL_STATES).index(k)))
    return best, fids[best]


def two_fluxon_band_states(m: int, delta: float, dispersion: str = "quadratic") -> dict[str, tuple[float, np.ndarray]]:
    """Eigenpairs of :func:`build_two_fluxon` keyed by band label E1..E4.

    Each closed-form energy is paired with the nearest numeric eigenvalue,
    which is unambiguous whenever ``delta > 0``.
    """
    values, vectors = eig_hermitian(build_two_fluxon(m, delta, dispersion))
    closed = closed_form_two_fluxon_energies(m, delta, dispersion)
    out = {}
    taken: set[int] = set()
    for label, e in zip(TWO_FLUXON_LABELS, closed):
        order = np.argsort(np.abs(values - e), kind="stable")
        k = next(int(i) for i in order if int(i) not in taken)
        taken.add(k)
        out[label] = (float(values[k]), vectors[:, k].copy())
    return out
