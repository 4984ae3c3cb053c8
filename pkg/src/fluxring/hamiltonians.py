"""Hamiltonians of a quantum ring threaded by quantised toroidal fluxes.

Energies are in units of the ring energy ``a = hbar^2 / (2 m_e r^2)`` and
time in ``hbar / a``. A fluxon is a two-level system with basis ``|n=0>``,
``|n=1>``; the ring electron has integer angular momentum ``m``. The
Aharonov-Bohm coupling shifts the kinetic term ``m -> m - n``, so for a
fixed ``m`` each builder returns the effective fluxon Hamiltonian.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional, Sequence

import numpy as np

from .core import PAULI, is_hermitian, kron, pauli, pauli_string

MAX_CHAIN_SITES = 12
DECOMPOSE_ATOL = 1e-10

DISPERSIONS: dict[str, Callable[[float], float]] = {
    "quadratic": lambda k: k * k,
    "linear": abs,
}


class NonRepresentableOperator(ValueError):
    """The operator has Pauli terms beyond identity, single-site and zz pairs."""


def dispersion(kind: str, k: float) -> float:
    """Ring kinetic energy at shifted angular momentum ``k``.

    ``quadratic`` is the free 1D electron, ``linear`` a Dirac-like ring.
    """
    try:
        return DISPERSIONS[kind](k)
    except KeyError:
        raise ValueError(f"unknown dispersion {kind!r}; expected one of {sorted(DISPERSIONS)}") from None


@dataclass(frozen=True)
class DriveSegment:
    duration: float
    g1: float = 0.0
    g2: float = 0.0


@dataclass(frozen=True)
class DriveSchedule:
    """Piecewise-constant drive ``g1 sigma_x + g2 sigma_y`` on the ring electron."""

    segments: tuple[DriveSegment, ...]

    def __post_init__(self):
        segs = tuple(s if isinstance(s, DriveSegment) else DriveSegment(*s) for s in self.segments)
        for s in segs:
            if not s.duration > 0:
                raise ValueError(f"segment duration must be positive, got {s.duration}")
        object.__setattr__(self, "segments", segs)

    @property
    def total_time(self) -> float:
        return float(sum(s.duration for s in self.segments))


@dataclass(frozen=True)
class SystemSpec:
    """A ring with ``n_fluxons`` threaded fluxes at angular momentum ``m``.

    ``variant`` chooses the two-fluxon kinetic diagonal: ``"effective"`` is
    ``(m^2, (m-1)^2, (m-1)^2, m^2)``, whose spectrum has the closed forms in
    :func:`closed_form_two_fluxon_energies`; ``"kinetic"`` expands
    ``(m - s1 n1 - s2 n2)^2`` with the given ``orientations``.
    """

    m: int = 0
    delta: float = 1.0
    n_fluxons: int = 1
    orientations: Optional[tuple[int, ...]] = None
    dispersion: str = "quadratic"
    variant: str = "effective"
    drive: Optional[DriveSchedule] = None
    link_ms: Optional[tuple[int, ...]] = field(default=None)

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        if self.n_fluxons < 1:
            raise ValueError("n_fluxons must be at least 1")
        if self.orientations is None:
            default = (1, -1) if self.n_fluxons == 2 else (1,) * self.n_fluxons
            object.__setattr__(self, "orientations", default)
        orient = tuple(int(s) for s in self.orientations)
        if len(orient) != self.n_fluxons:
            raise ValueError("orientations length must equal n_fluxons")
        if any(s not in (1, -1) for s in orient):
            raise ValueError("orientations must be +1 or -1")
        object.__setattr__(self, "orientations", orient)
        if self.dispersion not in DISPERSIONS:
            raise ValueError(f"unknown dispersion {self.dispersion!r}")
        if self.variant not in ("effective", "kinetic"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.link_ms is not None:
            links = tuple(int(x) for x in self.link_ms)
            if len(links) != self.n_fluxons - 1:
                raise ValueError("link_ms length must be n_fluxons - 1")
            object.__setattr__(self, "link_ms", links)

    def links(self) -> tuple[int, ...]:
        return self.link_ms if self.link_ms is not None else (self.m,) * (self.n_fluxons - 1)

    def with_m(self, m: int) -> "SystemSpec":
        links = None if self.link_ms is None else tuple(m for _ in self.link_ms)
        return SystemSpec(m, self.delta, self.n_fluxons, self.orientations,
                          self.dispersion, self.variant, self.drive, links)


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def build_single_fluxon(m: int, delta: float, dispersion: str = "quadratic") -> np.ndarray:
    """Effective 2x2 fluxon Hamiltonian ``[[d(m), delta], [delta, d(m-1)]]``."""
    d = DISPERSIONS[dispersion]
    return np.array([[d(m), delta], [delta, d(m - 1)]], dtype=complex)


def closed_form_single_energies(m: int, delta: float, dispersion: str = "quadratic") -> tuple[float, float]:
    if dispersion == "quadratic":
        root = np.sqrt((1 - 2 * m) ** 2 + 4 * delta**2)
        base = 1 - 2 * m + 2 * m * m
    else:
        d0, d1 = dispersion_pair(m, dispersion)
        root = np.sqrt((d0 - d1) ** 2 + 4 * delta**2)
        base = d0 + d1
    return 0.5 * (base - root), 0.5 * (base + root)


def dispersion_pair(m: int, kind: str) -> tuple[float, float]:
    d = DISPERSIONS[kind]
    return float(d(m)), float(d(m - 1))


def build_driven(delta: float, g: float, dispersion: str = "quadratic") -> np.ndarray:
    """Ring states ``m in {0, 1}`` times one fluxon, with ring drive ``g sigma_x``.

    Basis ``|m n>`` ordered ``|00>, |01>, |10>, |11>``.
    """
    d = DISPERSIONS[dispersion]
    h = np.array(
        [
            [d(0), delta, g, 0],
            [delta, d(-1), 0, g],
            [g, 0, d(1), delta],
            [0, g, delta, d(0)],
        ],
        dtype=complex,
    )
    return h


def build_two_fluxon(m: int, delta: float, dispersion: str = "quadratic") -> np.ndarray:
    """Effective two-fluxon Hamiltonian over ``|n1 n2>``.

    The diagonal is ``(d(m), d(m-1), d(m-1), d(m))`` and ``delta`` couples
    every pair of states differing by a single fluxon flip.
    """
    e0, e1 = dispersion_pair(m, dispersion)
    return _two_fluxon_from_diagonal([e0, e1, e1, e0], delta)


def build_two_fluxon_physical(
    m: int, delta: float, s1: int = 1, s2: int = -1, dispersion: str = "quadratic"
) -> np.ndarray:
    """Two-fluxon Hamiltonian from the literal kinetic term ``d(m - s1 n1 - s2 n2)``."""
    if s1 not in (1, -1) or s2 not in (1, -1):
        raise ValueError("orientation signs must be +1 or -1")
    d = DISPERSIONS[dispersion]
    diag = [d(m - s1 * n1 - s2 * n2) for n1 in (0, 1) for n2 in (0, 1)]
    return _two_fluxon_from_diagonal(diag, delta)


def _two_fluxon_from_diagonal(diag: Sequence[float], delta: float) -> np.ndarray:
    h = np.diag(np.asarray(diag, dtype=complex))
    flips = delta * (pauli("x", 0, 2) + pauli("x", 1, 2))
    return h + flips


def closed_form_two_fluxon_energies(
    m: int, delta: float, dispersion: str = "quadratic"
) -> tuple[float, float, float, float]:
    """Band energies ``(E1, E2, E3, E4)`` of :func:`build_two_fluxon`.

    ``E1 = d(m-1)`` and ``E2 = d(m)`` belong to the antisymmetric states;
    ``E3 >= E4`` come from the symmetric sector.
    """
    if dispersion == "quadratic":
        e1, e2 = float((m - 1) ** 2), float(m * m)
        base = 1 - 2 * m + 2 * m * m
        root = np.sqrt((1 - 2 * m) ** 2 + 16 * delta**2)
    else:
        e2, e1 = dispersion_pair(m, dispersion)
        base = e1 + e2
        root = np.sqrt((e2 - e1) ** 2 + 16 * delta**2)
    return e1, e2, 0.5 * (base + root), 0.5 * (base - root)


def build_ising_two_qubit(delta: float, g1: float = 0.0, g2: float = 0.0) -> np.ndarray:
    """Two lowest ring states as a qubit coupled to one fluxon, basis ``|e> x |f>``.

    ``H = (1 - Z_e Z_f) + delta X_f + g1 X_e + g2 Y_e``.
    """
    eye = np.eye(4, dtype=complex)
    return (
        eye
        - pauli_string({0: "z", 1: "z"}, 2)
        + delta * pauli("x", 1, 2)
        + g1 * pauli("x", 0, 2)
        + g2 * pauli("y", 0, 2)
    )


def build_fluxons(system: SystemSpec, m: Optional[int] = None) -> np.ndarray:
    """Fluxon Hamiltonian of ``system`` at ring angular momentum ``m``."""
    m = system.m if m is None else m
    n = system.n_fluxons
    if n == 1:
        return build_single_fluxon(m, system.delta, system.dispersion)
    if n == 2 and system.link_ms is None:
        if system.variant == "kinetic":
            s1, s2 = system.orientations
            return build_two_fluxon_physical(m, system.delta, s1, s2, system.dispersion)
        return build_two_fluxon(m, system.delta, system.dispersion)
    links = system.links() if m == system.m else (m,) * (n - 1)
    return build_chain(n, links, system.delta, system.dispersion)


def build_ring_window(system: SystemSpec, g1: float = 0.0, g2: float = 0.0) -> np.ndarray:
    """Ring restricted to ``{m, m+1}`` tensored with the fluxons of ``system``.

    Basis ``|ring> x |n1> x ... x |nN>`` with ring index 0 meaning ``m``. The
    drive ``g1 sigma_x + g2 sigma_y`` acts on the ring factor only. With one
    fluxon, ``m = 0`` and ``g2 = 0`` this is :func:`build_driven`.
    """
    lo = build_fluxons(system, system.m)
    hi = build_fluxons(system, system.m + 1)
    dim = lo.shape[0]
    h = np.zeros((2 * dim, 2 * dim), dtype=complex)
    h[:dim, :dim] = lo
    h[dim:, dim:] = hi
    drive = g1 * PAULI["x"] + g2 * PAULI["y"]
    return h + kron(drive, np.eye(dim))


def ring_window_dims(system: SystemSpec) -> tuple[int, ...]:
    return (2,) + (2,) * system.n_fluxons


# ---------------------------------------------------------------------------
# Pauli decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PauliDecomposition:
    """``h0 I + sum_i fields[i] . sigma_i + sum_(i,j) J_ij Z_i Z_j``."""

    n_sites: int
    h0: float
    fields: tuple[tuple[float, float, float], ...]
    zz_couplings: dict[tuple[int, int], float]

    def reconstruct(self) -> np.ndarray:
        n = self.n_sites
        h = self.h0 * np.eye(2**n, dtype=complex)
        for i, (hx, hy, hz) in enumerate(self.fields):
            h = h + hx * pauli("x", i, n) + hy * pauli("y", i, n) + hz * pauli("z", i, n)
        for (i, j), J in self.zz_couplings.items():
            h = h + J * pauli_string({i: "z", j: "z"}, n)
        return h


def _projection(h: np.ndarray, ops: dict[int, str], n: int) -> float:
    """``Tr(P h) / 2^n`` without forming the Pauli string ``P``."""
    dim = 2**n
    b = np.arange(dim)
    xmask = 0
    phase = np.ones(dim, dtype=complex)
    for site, kind in ops.items():
        shift = n - 1 - site
        # bit of the ket that P acts on: c = b ^ xmask
        if kind in ("x", "y"):
            xmask |= 1 << shift
    c = b ^ xmask
    for site, kind in ops.items():
        bit = (c >> (n - 1 - site)) & 1
        sign = 1 - 2 * bit
        if kind == "z":
            phase = phase * sign
        elif kind == "y":
            phase = phase * 1j * sign
    # Tr(P h) = sum_b <b|P|c> h[c, b] with P|c> = phase(c) |b>
    return float(np.real(np.sum(phase * h[c, b]))) / dim


def pauli_decompose(h: np.ndarray, n_sites: int, atol: float = DECOMPOSE_ATOL) -> PauliDecomposition:
    """Trace-project ``h`` onto identity, single-site Paulis and zz pairs.

    Raises:
        NonRepresentableOperator: reconstruction misses ``h`` by more than ``atol``.
    """
    h = np.asarray(h, dtype=complex)
    if h.shape != (2**n_sites, 2**n_sites):
        raise ValueError(f"matrix shape {h.shape} is not 2^{n_sites} square")
    if not is_hermitian(h):
        raise ValueError("matrix is not Hermitian")
    h0 = _projection(h, {}, n_sites)
    fields = tuple(
        tuple(_projection(h, {i: k}, n_sites) for k in "xyz") for i in range(n_sites)
    )
    zz = {
        (i, j): _projection(h, {i: "z", j: "z"}, n_sites)
        for i, j in combinations(range(n_sites), 2)
    }
    zz = {k: v for k, v in zz.items() if v != 0.0}
    dec = PauliDecomposition(n_sites, h0, fields, zz)
    err = float(np.abs(dec.reconstruct() - h).max())
    if err > atol:
        raise NonRepresentableOperator(
            f"operator has terms outside identity/single-site/zz (residual {err:.3e})"
        )
    return dec


def nominal_single_fluxon_coefficients(m: int, delta: float) -> dict[str, float]:
    """Coefficients usually quoted for the single-fluxon model.

    They are a reference only: the quoted ``h0 = m^2 - m + 1`` does not
    reconstruct :func:`build_single_fluxon`, whose projection gives
    ``h0 = m^2 - m + 1/2``.
    """
    return {"h0": m * m - m + 1.0, "hx": float(delta), "hy": 0.0, "hz": m - 0.5}


def nominal_two_fluxon_coefficients(m: int, delta: float) -> dict[str, float]:
    """Coefficients usually quoted for the two-fluxon model (reference only).

    Trace projection of :func:`build_two_fluxon` gives ``h0 = m^2 - m + 1/2``,
    zero z fields and ``J = (2m - 1)/2`` instead.
    """
    return {"h0": float(m * m), "hx": float(delta), "gx": float(delta),
            "hz": m - 0.5, "gz": m - 0.5, "J": 2.0 * m - 1.0}


def build_chain(
    n_fluxons: int, link_ms: Sequence[int], delta: float, dispersion: str = "quadratic"
) -> np.ndarray:
    """Tunable transverse-field Ising chain of ``n_fluxons`` fluxons.

    Link ``i`` couples fluxons ``i`` and ``i+1`` through a ring with angular
    momentum ``link_ms[i]``. Each link contributes the trace-projected
    identity, z-field and zz terms of :func:`build_two_fluxon`; the x field of
    a site is the average over its links so every fluxon carries its
    ``delta sigma_x`` exactly once.
    """
    if n_fluxons > MAX_CHAIN_SITES:
        raise ValueError(f"chain of {n_fluxons} fluxons exceeds the {MAX_CHAIN_SITES}-site limit")
    if n_fluxons < 2:
        raise ValueError("a chain needs at least two fluxons")
    link_ms = list(link_ms)
    if len(link_ms) != n_fluxons - 1:
        raise ValueError("link_ms length must be n_fluxons - 1")
    dec = chain_decomposition(n_fluxons, link_ms, delta, dispersion)
    return dec.reconstruct()


def chain_decomposition(
    n_fluxons: int, link_ms: Sequence[int], delta: float, dispersion: str = "quadratic"
) -> PauliDecomposition:
    h0 = 0.0
    fx = np.zeros(n_fluxons)
    fyz = np.zeros((n_fluxons, 2))
    degree = np.zeros(n_fluxons)
    zz: dict[tuple[int, int], float] = {}
    for i, m in enumerate(link_ms):
        link = pauli_decompose(build_two_fluxon(m, delta, dispersion), 2)
        h0 += link.h0
        for k, site in enumerate((i, i + 1)):
            fx[site] += link.fields[k][0]
            fyz[site] += link.fields[k][1:]
            degree[site] += 1
        for (a, b), J in link.zz_couplings.items():
            key = (i + a, i + b)
            zz[key] = zz.get(key, 0.0) + J
    fx = fx / degree
    fields = tuple((float(fx[s]), float(fyz[s, 0]), float(fyz[s, 1])) for s in range(n_fluxons))
    return PauliDecomposition(n_fluxons, h0, fields, zz)
