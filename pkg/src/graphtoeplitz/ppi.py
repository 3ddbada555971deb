"""Power partial isometries, truncated shifts, and the Toeplitz representation
``(psi_V, pi_V)`` of the bimodule ``tau(1) c`` built from one.

Bounded sequences are modelled by eventually constant ones: a finite head
followed by a constant tail. ``pi_V`` sends ``tau^n(1)`` (``n`` zeros, then
ones) to ``V^n V^{*n}`` and ``psi_V(x) = V^* pi_V(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.linalg import block_diag

from .linalg import spectral_norm
from .report import VerificationReport


class NotPowerPartialIsometry(ValueError):
    pass


def truncated_shift(n: int) -> np.ndarray:
    """``J_n`` on ``C^n``: ``e_k -> e_{k+1}``, last basis vector to 0; ``J_1 = 0``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return np.eye(n, k=-1, dtype=complex)


def direct_sum(*blocks) -> np.ndarray:
    return np.asarray(block_diag(*blocks), dtype=complex)


def _adj(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def _square(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise ValueError("expected a square matrix")
    return v


def is_power_partial_isometry(v, kmax: int, tol: float = 1e-12) -> VerificationReport:
    """Check ``||W W^* W - W|| <= tol`` for ``W = V^n``, ``1 <= n <= kmax``.

    Stops early once a power vanishes, since all later powers are then 0.
    """
    v = _square(v)
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    report = VerificationReport(pass_verdict="power partial isometry", fail_verdict="not a power partial isometry")
    w = np.eye(v.shape[0], dtype=complex)
    for n in range(1, kmax + 1):
        w = w @ v
        report.at_most(f"V^{n} partial isometry", spectral_norm(w @ _adj(w) @ w - w), tol, f"n={n}")
        if not np.any(np.abs(w) > tol):
            break
    return report


@dataclass(frozen=True)
class TruncatedSequence:
    """``(head[0], ..., head[L-1], tail, tail, ...)``."""

    head: tuple[complex, ...]
    tail: complex = 0j

    def __post_init__(self) -> None:
        object.__setattr__(self, "head", tuple(complex(x) for x in self.head))
        object.__setattr__(self, "tail", complex(self.tail))

    @classmethod
    def constant(cls, value: complex) -> "TruncatedSequence":
        return cls((), value)

    @classmethod
    def shifted_unit(cls, n: int) -> "TruncatedSequence":
        """``tau^n(1)``: ``n`` zeros followed by ones."""
        return cls((0,) * n, 1)

    @classmethod
    def indicator(cls, n: int) -> "TruncatedSequence":
        return cls((0,) * n + (1,), 0)

    def __len__(self) -> int:
        return len(self.head)

    def __getitem__(self, n: int) -> complex:
        return self.head[n] if n < len(self.head) else self.tail

    def padded(self, length: int) -> tuple[complex, ...]:
        return tuple(self[n] for n in range(max(length, len(self.head))))

    def _zip(self, other: "TruncatedSequence", op) -> "TruncatedSequence":
        n = max(len(self), len(other))
        return TruncatedSequence(tuple(op(self[k], other[k]) for k in range(n)), op(self.tail, other.tail))

    def __mul__(self, other: "TruncatedSequence") -> "TruncatedSequence":
        return self._zip(other, lambda a, b: a * b)

    def __add__(self, other: "TruncatedSequence") -> "TruncatedSequence":
        return self._zip(other, lambda a, b: a + b)

    def conj(self) -> "TruncatedSequence":
        return TruncatedSequence(tuple(x.conjugate() for x in self.head), self.tail.conjugate())

    def shift(self) -> "TruncatedSequence":
        """Forward shift ``tau``: ``(a_0, a_1, ...) -> (0, a_0, a_1, ...)``."""
        return TruncatedSequence((0,) + self.head, self.tail)


def _range_projections(v: np.ndarray, count: int) -> list[np.ndarray]:
    """``[V^n V^{*n} for n = 0..count]``."""
    out = []
    w = np.eye(v.shape[0], dtype=complex)
    for _ in range(count + 1):
        out.append(w @ _adj(w))
        w = w @ v
    return out


def pi_V(v, a: TruncatedSequence, check: bool = True, tol: float = 1e-10) -> np.ndarray:
    """``sum_n a_n (V^n V^{*n} - V^{n+1} V^{*(n+1)}) + tail * V^L V^{*L}``."""
    v = _square(v)
    L = len(a)
    if check:
        rep = is_power_partial_isometry(v, max(L + 1, 1), tol)
        if not rep.passed:
            raise NotPowerPartialIsometry(f"V^n is not a partial isometry at {rep.failures()[0].locus}")
    proj = _range_projections(v, L)
    out = a.tail * proj[L]
    for n in range(L):
        out = out + a.head[n] * (proj[n] - proj[n + 1])
    return out


def psi_V(v, x: TruncatedSequence, check: bool = True, tol: float = 1e-10) -> np.ndarray:
    """``V^* pi_V(x)`` for ``x`` supported where ``tau(1)`` is 1."""
    if x[0] != 0:
        raise ValueError("x must vanish in coordinate 0 (x = tau(1) x)")
    v = _square(v)
    return _adj(v) @ pi_V(v, x, check, tol)


def _generating_sequences(depth: int) -> list[TruncatedSequence]:
    seqs = [TruncatedSequence.constant(1)]
    seqs += [TruncatedSequence.shifted_unit(n) for n in range(1, depth + 2)]
    seqs += [TruncatedSequence.indicator(n) for n in range(depth + 1)]
    seqs.append(TruncatedSequence(tuple(1j ** k * (k + 1) for k in range(depth + 1)), 0.5 - 0.5j))
    return seqs


def verify_ppi_rep(v, tol: float = 1e-12) -> VerificationReport:
    """Check that ``(psi_V, pi_V)`` is a Toeplitz representation.

    Relations are tested on indicator sequences, the shifted units
    ``tau^n(1)`` and one generic sequence, with module elements
    ``x = tau(1) a``. Also checks that the range and initial projections of
    the powers of ``V`` commute and that ``psi_V(tau(1))^* = V``.
    """
    v = _square(v)
    n = v.shape[0]
    pre = is_power_partial_isometry(v, n + 1, tol)
    if not pre.passed:
        raise NotPowerPartialIsometry("refusing to build (psi_V, pi_V): " + pre.failures()[0].name)

    seqs = _generating_sequences(n)
    unit = TruncatedSequence.shifted_unit(1)
    mods = [unit * a for a in seqs]
    pi = {a: pi_V(v, a, check=False) for a in seqs}

    def P(a):
        if a not in pi:
            pi[a] = pi_V(v, a, check=False)
        return pi[a]

    def psi(x):
        return _adj(v) @ P(x)

    report = VerificationReport(pass_verdict="Toeplitz representation", fail_verdict="relations fail")
    report.extend(pre)
    hom = max(spectral_norm(P(a * b) - P(a) @ P(b)) for a, b in product(seqs, repeat=2))
    report.at_most("pi_V multiplicative", hom, tol)
    star = max(spectral_norm(P(a.conj()) - _adj(P(a))) for a in seqs)
    report.at_most("pi_V *-preserving", star, tol)
    report.at_most("pi_V unital", spectral_norm(P(TruncatedSequence.constant(1)) - np.eye(n)), tol)

    rep1 = max(spectral_norm(psi(x * a) - psi(x) @ P(a)) for x, a in product(mods, seqs))
    report.at_most("psi(x a) = psi(x) pi(a)", rep1, tol)
    rep2 = max(spectral_norm(_adj(psi(x)) @ psi(y) - P(x.conj() * y)) for x, y in product(mods, repeat=2))
    report.at_most("psi(x)* psi(y) = pi(<x,y>)", rep2, tol)
    rep3 = max(spectral_norm(psi(a.shift() * x) - P(a) @ psi(x)) for a, x in product(seqs, mods))
    report.at_most("psi(a.x) = pi(a) psi(x)", rep3, tol)
    image = max(spectral_norm(P(a.shift()) - v @ P(a) @ _adj(v)) for a in seqs)
    report.at_most("pi(tau(a)) = V pi(a) V*", image, tol)

    ranges = _range_projections(v, n + 1)
    inits = _range_projections(_adj(v), n + 1)
    family = ranges + inits
    comm = max(spectral_norm(p @ q - q @ p) for p, q in product(family, repeat=2))
    report.at_most("range/initial projections commute", comm, tol)
    report.at_most("psi(tau(1))* = V", spectral_norm(_adj(psi(unit)) - v), tol)
    return report
