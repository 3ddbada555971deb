"""Text exchange formats for matrices and exported Fock representations.

Sparse format::

    matrix <rows> <cols> <nnz>
    <row> <col> <re> <im>        # 0-based, sorted row-major

Dense format::

    dense <n>
    re,im re,im ...              # n lines of n entries
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .graph import DirectedGraph
from .linalg import canonical
from .words import parse_path


def _num(x: float) -> str:
    return repr(float(x))


def format_sparse(m) -> str:
    m = canonical(m).tocoo()
    order = np.lexsort((m.col, m.row))
    lines = [f"matrix {m.shape[0]} {m.shape[1]} {m.nnz}"]
    for k in order:
        v = complex(m.data[k])
        lines.append(f"{m.row[k]} {m.col[k]} {_num(v.real)} {_num(v.imag)}")
    return "\n".join(lines) + "\n"


def parse_sparse(text: str) -> sp.csr_matrix:
    lines = [ln for ln in (x.split("#", 1)[0].strip() for x in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "matrix":
        raise ValueError("expected header 'matrix <rows> <cols> <nnz>'")
    rows, cols, nnz = map(int, head[1:])
    if len(lines) - 1 != nnz:
        raise ValueError(f"header declares {nnz} entries, found {len(lines) - 1}")
    r, c, vals = [], [], []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 4:
            raise ValueError(f"malformed triplet {ln!r}")
        i, j = int(parts[0]), int(parts[1])
        if not (0 <= i < rows and 0 <= j < cols):
            raise ValueError(f"entry ({i},{j}) outside {rows}x{cols}")
        r.append(i)
        c.append(j)
        vals.append(complex(float(parts[2]), float(parts[3])))
    return canonical(sp.csr_matrix((vals, (r, c)), shape=(rows, cols), dtype=complex))


def format_dense(m) -> str:
    m = np.asarray(m.toarray() if sp.issparse(m) else m, dtype=complex)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("dense format stores square matrices")
    lines = [f"dense {n}"]
    for row in m:
        lines.append(" ".join(f"{_num(v.real)},{_num(v.imag)}" for v in row))
    return "\n".join(lines) + "\n"


def parse_dense(text: str) -> np.ndarray:
    lines = [ln for ln in (x.split("#", 1)[0].strip() for x in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dense":
        raise ValueError("expected header 'dense <n>'")
    n = int(head[1])
    if len(lines) - 1 != n:
        raise ValueError(f"expected {n} rows, found {len(lines) - 1}")
    out = np.zeros((n, n), dtype=complex)
    for i, ln in enumerate(lines[1:]):
        cells = ln.split()
        if len(cells) != n:
            raise ValueError(f"row {i} has {len(cells)} entries, expected {n}")
        for j, cell in enumerate(cells):
            re, im = cell.split(",")
            out[i, j] = complex(float(re), float(im))
    return out


def read_matrix(path: str | Path):
    """Read either format, dispatching on the header word."""
    text = Path(path).read_text(encoding="utf-8")
    first = next((ln.split()[0] for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")), "")
    if first == "dense":
        return parse_dense(text)
    return parse_sparse(text)


# -- representation export ----------------------------------------------------

def export_rep(rep, outdir: str | Path) -> list[Path]:
    """Write ``basis.txt`` plus ``S_<edge>.txt`` and ``P_<vertex>.txt``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    basis = [f"depth {rep.depth}"] + [f"{len(p)} {p.literal()}" for p in rep.basis.paths]
    written = [outdir / "basis.txt"]
    written[0].write_text("\n".join(basis) + "\n", encoding="utf-8")
    for f, m in rep.S.items():
        path = outdir / f"S_{f}.txt"
        path.write_text(format_sparse(m), encoding="utf-8")
        written.append(path)
    for v, m in rep.P.items():
        path = outdir / f"P_{v}.txt"
        path.write_text(format_sparse(m), encoding="utf-8")
        written.append(path)
    return written


def import_family(g: DirectedGraph, repdir: str | Path):
    """Load an exported directory as a TCK family (levels read from ``basis.txt``)."""
    from .fock import TCKFamilyInput

    repdir = Path(repdir)
    S = {f: read_matrix(repdir / f"S_{f}.txt") for f in g.edge_ids}
    P = {v: read_matrix(repdir / f"P_{v}.txt") for v in g.vertices}
    dim = next(iter(P.values())).shape[0] if P else 0
    levels = domain = None
    basis_file = repdir / "basis.txt"
    if basis_file.exists():
        lines = [ln.split() for ln in basis_file.read_text(encoding="utf-8").splitlines() if ln.strip()]
        depth = int(lines[0][1]) if lines and lines[0][0] == "depth" else None
        entries = [ln for ln in lines if ln[0] != "depth"]
        for lvl, lit in entries:
            if len(parse_path(g, lit)) != int(lvl):
                raise ValueError(f"basis entry {lit!r} does not have level {lvl}")
        levels = np.array([int(ln[0]) for ln in entries], dtype=int)
        if depth is not None:
            domain = levels < depth
    return TCKFamilyInput(g, dim, S, P, rep2_domain=domain, levels=levels)
