"""Truncated Fock representation of the graph bimodule as sparse matrices.

The Hilbert space is spanned by graph paths of length ``0..N`` (vertices at
level 0). The creation operator ``S_f`` sends a path ``mu`` with
``s(mu) == r(f)`` and ``|mu| < N`` to ``f mu`` and kills level ``N``; ``P_v``
projects onto the paths starting at ``v``. This is the compression of the
full Fock representation to the first ``N + 1`` levels: the relations
``S_f P_w = delta S_f``, ``P_w S_f = delta S_f`` and the range inequality
hold on the whole space, while ``S_f^* S_f = P_{r(f)}`` holds only on
levels ``<= N - 1``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .graph import DirectedGraph, GraphError
from .linalg import canonical, min_eigenvalue, spectral_norm, to_dense
from .report import VerificationReport
from .staralg import Monomial, StarPolynomial
from .words import INFINITY, GraphPath, enumerate_paths, le


@dataclass(frozen=True)
class FockBasis:
    """Paths of length ``0..depth`` in level order, with index lookup."""

    depth: int
    paths: tuple[GraphPath, ...]
    levels: np.ndarray = field(repr=False, compare=False)
    index: Mapping[GraphPath, int] = field(repr=False, compare=False)

    @classmethod
    def build(cls, g: DirectedGraph, depth: int) -> "FockBasis":
        grouped = enumerate_paths(g, depth)
        paths = tuple(p for level in grouped for p in level)
        levels = np.array([len(p) for p in paths], dtype=int)
        return cls(depth, paths, levels, {p: i for i, p in enumerate(paths)})

    def __len__(self) -> int:
        return len(self.paths)

    def level_sizes(self) -> list[int]:
        return [int(np.sum(self.levels == k)) for k in range(self.depth + 1)]


def _diag(mask: np.ndarray) -> sp.csr_matrix:
    return canonical(sp.diags(mask.astype(complex)))


@dataclass(frozen=True)
class TCKFamilyInput:
    """A user-supplied family ``{S_f, P_v}`` on a finite-dimensional space.

    ``rep2_domain`` optionally restricts the isometry relation
    ``S_e^* S_f = delta P_{r(f)}`` to a set of basis columns (truncated
    families satisfy it only below the top level). ``levels`` tags basis
    vectors so that failures can be localized.
    """

    graph: DirectedGraph
    dim: int
    S: Mapping[str, object]
    P: Mapping[str, object]
    rep2_domain: np.ndarray | None = None
    levels: np.ndarray | None = None

    def __post_init__(self) -> None:
        if set(self.S) != set(self.graph.edge_ids) or set(self.P) != set(self.graph.vertices):
            raise GraphError("family must provide one matrix per edge and per vertex")
        for name, m in list(self.S.items()) + list(self.P.items()):
            if tuple(m.shape) != (self.dim, self.dim):
                raise ValueError(f"matrix for {name!r} has shape {m.shape}, expected {(self.dim, self.dim)}")
        for extra in (self.rep2_domain, self.levels):
            if extra is not None and len(extra) != self.dim:
                raise ValueError("basis annotations must have one entry per basis vector")


@dataclass(frozen=True)
class TruncatedFockRep:
    graph: DirectedGraph
    depth: int
    basis: FockBasis
    S: Mapping[str, sp.csr_matrix]
    P: Mapping[str, sp.csr_matrix]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def identity(self) -> sp.csr_matrix:
        return canonical(sp.identity(self.dim, dtype=complex))

    def path_operator(self, mu: GraphPath) -> sp.csr_matrix:
        """``S_mu`` as the product of edge matrices (``P_v`` for a vertex path)."""
        if mu.is_vertex:
            return self.P[mu.start]
        out = self.S[mu.edges[0]]
        for f in mu.edges[1:]:
            out = out @ self.S[f]
        return canonical(out)

    def family(self) -> TCKFamilyInput:
        """The rep as a TCK family, with the isometry relation scoped to levels ``< N``."""
        return TCKFamilyInput(
            self.graph,
            self.dim,
            dict(self.S),
            dict(self.P),
            rep2_domain=self.basis.levels < self.depth,
            levels=self.basis.levels.copy(),
        )


def build_fock(g: DirectedGraph, depth: int) -> TruncatedFockRep:
    if g.omega:
        raise GraphError("the Fock module needs a graph without omega vertices")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    basis = FockBasis.build(g, depth)
    n = len(basis)
    S = {}
    for e in g.edges:
        rows, cols = [], []
        for j, mu in enumerate(basis.paths):
            if mu.start == e.dst and len(mu) < depth:
                rows.append(basis.index[GraphPath((e.id,) + mu.edges, e.src, mu.end)])
                cols.append(j)
        S[e.id] = canonical(sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n)))
    P = {v: _diag(np.array([p.start == v for p in basis.paths])) for v in g.vertices}
    return TruncatedFockRep(g, depth, basis, S, P)


def represent_monomial(rep: TruncatedFockRep, m: Monomial) -> sp.csr_matrix:
    left = rep.path_operator(m.mu)
    right = rep.path_operator(m.nu)
    return canonical(left @ rep.P[m.mu.end] @ right.conj().T)


def represent(rep: TruncatedFockRep, p: StarPolynomial) -> sp.csr_matrix:
    """Linear extension of ``s_f -> S_f``, ``p_v -> P_v``."""
    if p.graph != rep.graph:
        raise GraphError("polynomial and representation use different graphs")
    out = sp.csr_matrix((rep.dim, rep.dim), dtype=complex)
    for m, c in p.terms():
        out = out + complex(c) * represent_monomial(rep, m)
    return canonical(out)


def level_projection(rep: TruncatedFockRep, k: int) -> sp.csr_matrix:
    """Projection onto levels ``>= k``."""
    if not 0 <= k <= rep.depth + 1:
        raise ValueError(f"level {k} outside 0..{rep.depth + 1}")
    return _diag(rep.basis.levels >= k)


def word_projection(rep: TruncatedFockRep, s) -> sp.csr_matrix:
    """Projection onto the paths with prefix ``s``; ``INFINITY`` gives 0."""
    if s is INFINITY:
        return _diag(np.zeros(rep.dim, dtype=bool))
    s = tuple(s)
    if len(s) > rep.depth:
        raise ValueError(f"word longer than depth {rep.depth}")
    for f in s:
        rep.graph.edge(f)
    return _diag(np.array([le(s, p.edges) for p in rep.basis.paths]))


def q_projection(rep: TruncatedFockRep, F: Iterable[Sequence[str]], s: Sequence[str]) -> sp.csr_matrix:
    """``P_s * prod_{t in F, s < t} (1 - P_t)``."""
    F = {tuple(t) for t in F}
    s = tuple(s)
    if () not in F:
        raise ValueError("F must contain the empty word")
    if s not in F:
        raise ValueError("s must belong to F")
    out = word_projection(rep, s)
    for t in sorted(F):
        if t != s and le(s, t):
            out = out @ (rep.identity - word_projection(rep, t))
    return canonical(out)


def gauge_unitary(rep: TruncatedFockRep, z: complex) -> sp.csr_matrix:
    """Diagonal ``U_z`` with entry ``z**level``."""
    if abs(abs(z) - 1.0) > 1e-12:
        raise ValueError("gauge parameter must have modulus 1")
    return canonical(sp.diags(np.power(complex(z), rep.basis.levels)))


def root_of_unity(j: int, m: int) -> complex:
    return cmath.exp(2j * cmath.pi * j / m)


def _in_edge_span(p: StarPolynomial) -> bool:
    return all(len(m.mu) == 1 and m.nu.is_vertex for m, _ in p.terms())


def rho_theta(rep: TruncatedFockRep, x: StarPolynomial, y: StarPolynomial) -> sp.csr_matrix:
    """Image of the rank-one operator ``Theta_{x,y}``: ``psi(x) psi(y)^*``."""
    if not (_in_edge_span(x) and _in_edge_span(y)):
        raise ValueError("rho_theta needs linear combinations of edge generators")
    return canonical(represent(rep, x) @ represent(rep, y).conj().T)


def theta_apply(x: StarPolynomial, y: StarPolynomial, h: str) -> StarPolynomial:
    """``Theta_{x,y}(delta_h) = x . <y, delta_h>`` as an element of the edge span."""
    g = x.graph
    yh = y.coefficient(Monomial(GraphPath((h,), g.source(h), g.range(h)), GraphPath((), g.range(h), g.range(h))))
    kept = x.map_terms(lambda m: m.mu.end == g.range(h))
    return kept.scale(yh.conjugate())


# -- relation checks --------------------------------------------------------

def _violation(m) -> float:
    return spectral_norm(m)


def _locus(fam: TCKFamilyInput, bad_cols: np.ndarray) -> str:
    if not bad_cols.size:
        return ""
    if fam.levels is not None:
        lv = sorted({int(fam.levels[i]) for i in bad_cols})
        return "levels " + ",".join(map(str, lv))
    return "columns " + ",".join(map(str, bad_cols[:10].tolist()))


def verify_tck(fam: TCKFamilyInput, tol: float = 1e-10) -> VerificationReport:
    """Check the Toeplitz-Cuntz-Krieger relations for ``fam``.

    Findings: vertex projections self-adjoint, idempotent and mutually
    orthogonal; ``S_f P_w = delta S_f`` and ``P_w S_f = delta S_f``;
    ``S_e^* S_f = delta_{e,f} P_{r(f)}`` (on ``rep2_domain`` if given); and
    ``P_v - sum_{s(f)=v} S_f S_f^*`` positive semidefinite.
    """
    g = fam.graph
    S = {f: to_dense(m) for f, m in fam.S.items()}
    P = {v: to_dense(m) for v, m in fam.P.items()}
    report = VerificationReport(pass_verdict="TCK relations hold", fail_verdict="TCK relations fail")
    domain = np.ones(fam.dim, dtype=bool) if fam.rep2_domain is None else np.asarray(fam.rep2_domain, bool)

    report.at_most("P self-adjoint", max((_violation(p - p.conj().T) for p in P.values()), default=0.0), tol)
    report.at_most("P idempotent", max((_violation(p @ p - p) for p in P.values()), default=0.0), tol)
    orth = [
        _violation(P[v] @ P[w]) for v in g.vertices for w in g.vertices if v != w
    ]
    report.at_most("P mutually orthogonal", max(orth, default=0.0), tol)

    rep1, rep3 = 0.0, 0.0
    for e in g.edges:
        for w in g.vertices:
            want = S[e.id] if w == e.dst else 0
            rep1 = max(rep1, _violation(S[e.id] @ P[w] - want))
            want = S[e.id] if w == e.src else 0
            rep3 = max(rep3, _violation(P[w] @ S[e.id] - want))
    report.at_most("S_f P_w = delta_{w,r(f)} S_f", rep1, tol)
    report.at_most("P_w S_f = delta_{w,s(f)} S_f", rep3, tol)

    worst, bad = 0.0, set()
    for e in g.edges:
        for f in g.edges:
            diff = S[e.id].conj().T @ S[f.id]
            if e.id == f.id:
                diff = diff - P[f.dst]
            diff = diff[:, domain]
            worst = max(worst, _violation(diff))
            cols = np.flatnonzero(domain)[np.linalg.norm(diff, axis=0) > tol]
            bad.update(cols.tolist())
    scope = "" if fam.rep2_domain is None else f"on {int(domain.sum())}/{fam.dim} basis vectors"
    locus = _locus(fam, np.array(sorted(bad), dtype=int)) or scope
    report.at_most("S_e* S_f = delta_{e,f} P_r(f)", worst, tol, locus)

    worst_psd, where = 0.0, []
    for v in g.vertices:
        diff = P[v].copy()
        for e in g.edges_from(v):
            diff = diff - S[e.id] @ S[e.id].conj().T
        neg = max(0.0, -min_eigenvalue(diff))
        if neg > tol:
            where.append(v)
        worst_psd = max(worst_psd, neg)
    report.at_most("sum_{s(f)=v} S_f S_f* <= P_v", worst_psd, tol, ("vertices " + ",".join(where)) if where else "")
    return report


def family_from_matrices(
    g: DirectedGraph,
    S: Mapping[str, object],
    P: Mapping[str, object],
    **kwargs,
) -> TCKFamilyInput:
    dims = {m.shape[0] for m in list(S.values()) + list(P.values())}
    if len(dims) != 1:
        raise ValueError("family matrices have inconsistent dimensions")
    return TCKFamilyInput(g, dims.pop(), dict(S), dict(P), **kwargs)
