"""Quantitative verifiers: core norms, numeric expectations, faithfulness
verdicts, partition residuals and the finite-degree independence oracle.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .fock import (
    TCKFamilyInput,
    TruncatedFockRep,
    build_fock,
    gauge_unitary,
    q_projection,
    represent,
    represent_monomial,
    root_of_unity,
    verify_tck,
)
from .graph import DirectedGraph, GraphError
from .linalg import canonical, spectral_norm, to_dense
from .report import Finding, VerificationReport
from .staralg import StarPolynomial, all_monomials, free_expect, gauge_expect
from .words import enumerate_paths

__all__ = [
    "Finding",
    "VerificationReport",
    "RelationsFailed",
    "core_level_matrices",
    "core_norm",
    "cross_check_core_norm",
    "gauge_average",
    "expectation_contractivity",
    "faithfulness_verdict",
    "partition_residual",
    "independence_rank",
]

RELATION_TOL = 1e-10
RANK_TOL = 1e-8
NORM_TOL = 1e-8
DENSE_SVD_ENTRIES = 4_000_000


class RelationsFailed(ValueError):
    """The input family does not satisfy the TCK relations."""

    def __init__(self, report: VerificationReport):
        names = ", ".join(f.name for f in report.failures())
        super().__init__(f"family violates: {names}")
        self.report = report


def _check_core(g: DirectedGraph, r: StarPolynomial) -> None:
    if r.graph != g:
        raise GraphError("element lives over a different graph")
    if g.omega:
        raise GraphError("core norms need a graph without omega vertices")
    if not r.is_core():
        raise ValueError("element is not in the core (found a term with |mu| != |nu|)")


def core_level_matrices(g: DirectedGraph, r: StarPolynomial) -> list[np.ndarray]:
    """Matrix of ``sum_{n_j <= k} Theta_j (x) 1^{k - n_j}`` on level-``k`` paths, for ``k = 0..K``.

    The term ``c s_mu s_nu^*`` sends a level-``k`` path ``sigma = nu rho`` to
    ``c * mu rho`` and kills paths without prefix ``nu``.
    """
    _check_core(g, r)
    K = r.degree
    levels = enumerate_paths(g, K)
    out = []
    for k, paths in enumerate(levels):
        index = {p: i for i, p in enumerate(paths)}
        m = np.zeros((len(paths), len(paths)), dtype=complex)
        for term, c in r.terms():
            if len(term.nu) > k:
                continue
            for j, sigma in enumerate(paths):
                if term.nu.le(sigma):
                    target = term.mu.concat(term.nu.quotient(sigma))
                    m[index[target], j] += complex(c)
        out.append(m)
    return out


def core_norm(g: DirectedGraph, r: StarPolynomial) -> float:
    """Norm of a core element as the largest level-wise operator norm."""
    return max((spectral_norm(m) for m in core_level_matrices(g, r)), default=0.0)


def cross_check_core_norm(
    g: DirectedGraph, r: StarPolynomial, depth: int, tol: float = NORM_TOL
) -> VerificationReport:
    _check_core(g, r)
    if depth < r.degree + 1:
        raise ValueError(f"depth {depth} too small for degree {r.degree}; need >= {r.degree + 1}")
    formula = core_norm(g, r)
    fock_value = spectral_norm(represent(build_fock(g, depth), r))
    report = VerificationReport(pass_verdict="core norm formula agrees", fail_verdict="core norm mismatch")
    report.add("core_norm", formula, tol, True)
    report.add("fock_norm", fock_value, tol, True, f"depth {depth}")
    report.at_most("|core_norm - fock_norm|", abs(formula - fock_value), tol)
    return report


def gauge_average(rep: TruncatedFockRep, m, modes: int) -> sp.csr_matrix:
    """Average of ``U_z M U_z^*`` over the ``modes``-th roots of unity."""
    if modes <= 2 * rep.depth:
        raise ValueError(f"need more than {2 * rep.depth} modes at depth {rep.depth}")
    m = sp.csr_matrix(m, dtype=complex)
    acc = sp.csr_matrix(m.shape, dtype=complex)
    for j in range(modes):
        u = gauge_unitary(rep, root_of_unity(j, modes))
        acc = acc + u @ m @ u.conj().T
    out = acc / modes
    # Entries that cancel up to rounding are dropped so the support is exact.
    out = sp.csr_matrix(out)
    scale = float(np.abs(m.data).max()) if m.nnz else 0.0
    out.data[np.abs(out.data) <= 1e-13 * scale] = 0
    return canonical(out)


def expectation_contractivity(
    g: DirectedGraph, p: StarPolynomial, depth: int, tol: float = NORM_TOL
) -> VerificationReport:
    if depth < p.degree + 1:
        raise ValueError(f"depth {depth} too small for degree {p.degree}")
    rep = build_fock(g, depth)
    full = spectral_norm(represent(rep, p))
    gauge = spectral_norm(represent(rep, gauge_expect(p)))
    free = spectral_norm(represent(rep, free_expect(p)))
    report = VerificationReport(pass_verdict="expectations contractive", fail_verdict="expectation expands norm")
    report.at_most("||E(P)|| - ||P||", gauge - full, tol, f"||P||={full:.6g}")
    report.at_most("||E_free(P)|| - ||P||", free - full, tol, f"||P||={full:.6g}")
    return report


def faithfulness_verdict(fam: TCKFamilyInput, tol: float = RELATION_TOL) -> VerificationReport:
    """Apply the faithfulness criterion for TCK families.

    Every ``P_v`` must be nonzero, and for every finite emitter ``v`` the
    defect ``P_v - sum_{s(f)=v} S_f S_f^*`` must be nonzero.
    """
    relations = verify_tck(fam, tol)
    if not relations.passed:
        raise RelationsFailed(relations)
    g = fam.graph
    report = VerificationReport(pass_verdict="faithful", fail_verdict="criterion fails")
    for v in g.vertices:
        report.above(f"||P_{v}||", spectral_norm(fam.P[v]), tol, v)
    for v in g.vertices:
        if v in g.omega:
            continue
        d = to_dense(fam.P[v])
        for e in g.edges_from(v):
            s = to_dense(fam.S[e.id])
            d = d - s @ s.conj().T
        report.above(f"||P_{v} - sum S_f S_f*||", spectral_norm(d), tol, v)
    return report


def partition_residual(rep: TruncatedFockRep, F: Iterable[Sequence[str]]) -> float:
    """``|| sum_{s in F} Q_s^F - 1 ||``."""
    F = {tuple(t) for t in F}
    if () not in F:
        raise ValueError("F must contain the empty word")
    total = sp.csr_matrix((rep.dim, rep.dim), dtype=complex)
    for s in sorted(F):
        total = total + q_projection(rep, F, s)
    return spectral_norm(total - rep.identity)


def independence_rank(g: DirectedGraph, d: int, depth: int, tol: float = RANK_TOL) -> VerificationReport:
    """Linear independence of the images of all monomials with ``|mu|, |nu| <= d``.

    Singular values come from a dense SVD of the flattened images when that
    is cheap, and from their Gram matrix otherwise (the Gram route loses
    accuracy only for singular values near ``sqrt(eps) * ||images||``).
    """
    if depth < 2 * d + 1:
        raise ValueError(f"depth {depth} too small; need >= {2 * d + 1}")
    rep = build_fock(g, depth)
    monos = all_monomials(g, d)
    rows = [represent_monomial(rep, m).reshape(1, rep.dim * rep.dim) for m in monos]
    flat = sp.vstack(rows).tocsr()
    if flat.shape[0] * flat.shape[1] <= DENSE_SVD_ENTRIES:
        sing = np.linalg.svd(flat.toarray(), compute_uv=False)
    else:
        gram = (flat @ flat.conj().T).toarray()
        eig = np.linalg.eigvalsh((gram + gram.conj().T) / 2)
        sing = np.sqrt(np.clip(eig, 0.0, None))
    rank = int(np.sum(sing > tol))
    report = VerificationReport(pass_verdict="monomials independent", fail_verdict="monomials dependent")
    report.add("rank", rank, tol, rank == len(monos), f"{len(monos)} monomials, dim {rep.dim}")
    report.above("smallest singular value", float(sing.min()) if sing.size else 0.0, tol)
    return report
