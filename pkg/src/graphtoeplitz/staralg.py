"""Exact *-algebra on the spanning monomials ``s_mu s_nu^*``.

Elements are finite linear combinations of monomials with Gaussian-rational
coefficients. Multiplication follows the prefix-cancellation rule

    (s_mu s_nu^*)(s_sigma s_tau^*) = s_{mu sigma'} s_tau^*   if sigma = nu sigma'
                                   = s_mu s_{tau nu'}^*      if nu = sigma nu'
                                   = 0                       otherwise

where a vertex path counts as a prefix of every path leaving that vertex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from .graph import DirectedGraph, GraphError
from .words import GraphPath, enumerate_paths, parse_path, vertex_path


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(Fraction(value))
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, float):
            return cls(Fraction(value))
        raise TypeError(f"cannot use {value!r} as a coefficient")

    @classmethod
    def parse(cls, re: str, im: str = "0") -> "GaussianRational":
        return cls(Fraction(re), Fraction(im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __eq__(self, other) -> bool:
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __str__(self) -> str:
        return f"{self.re} {self.im}"


ZERO = GaussianRational()
ONE = GaussianRational(Fraction(1))


@dataclass(frozen=True)
class Monomial:
    """``s_mu s_nu^*``; both paths must end at the same vertex."""

    mu: GraphPath
    nu: GraphPath

    def __post_init__(self) -> None:
        if self.mu.end != self.nu.end:
            raise ValueError(
                f"monomial s_{self.mu} s_{self.nu}^* vanishes: ranges {self.mu.end} != {self.nu.end}"
            )

    def sort_key(self):
        return (len(self.mu), len(self.nu), self.mu.edges, self.mu.start, self.nu.edges, self.nu.start)

    def adjoint(self) -> "Monomial":
        return Monomial(self.nu, self.mu)

    @property
    def degree(self) -> int:
        """Gauge degree ``|mu| - |nu|``."""
        return len(self.mu) - len(self.nu)

    def __str__(self) -> str:
        return f"s[{self.mu}] s[{self.nu}]*"


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial | None:
    """Product of two monomials: a single monomial, or ``None`` for zero."""
    nu, sigma = m1.nu, m2.mu
    if nu.le(sigma):
        return Monomial(m1.mu.concat(nu.quotient(sigma)), m2.nu)
    if sigma.le(nu):
        return Monomial(m1.mu, m2.nu.concat(sigma.quotient(nu)))
    return None


class StarPolynomial:
    """Finite combination of monomials over a fixed graph, kept in canonical form."""

    __slots__ = ("graph", "_terms")

    def __init__(self, graph: DirectedGraph, terms: Mapping[Monomial, object] | Iterable = ()):
        self.graph = graph
        acc: dict[Monomial, GaussianRational] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            c = GaussianRational.coerce(c)
            acc[m] = acc.get(m, ZERO) + c
        self._terms = {m: acc[m] for m in sorted(acc, key=Monomial.sort_key) if acc[m]}

    # -- construction ----------------------------------------------------
    @classmethod
    def zero(cls, graph: DirectedGraph) -> "StarPolynomial":
        return cls(graph)

    @classmethod
    def monomial(cls, graph: DirectedGraph, mu: GraphPath, nu: GraphPath, coeff=ONE) -> "StarPolynomial":
        return cls(graph, {Monomial(mu, nu): coeff})

    # -- access ----------------------------------------------------------
    def terms(self) -> Iterator[tuple[Monomial, GaussianRational]]:
        return iter(self._terms.items())

    def coefficient(self, m: Monomial) -> GaussianRational:
        return self._terms.get(m, ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Rational)) and other == 0:
            return not self._terms
        if not isinstance(other, StarPolynomial):
            return NotImplemented
        return self.graph == other.graph and self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "StarPolynomial(0)"
        body = " + ".join(f"({c.re}+{c.im}i) {m}" for m, c in self._terms.items())
        return f"StarPolynomial({body})"

    # -- algebra ---------------------------------------------------------
    def _check(self, other: "StarPolynomial") -> None:
        if self.graph != other.graph:
            raise GraphError("polynomials live over different graphs")

    def __add__(self, other: "StarPolynomial") -> "StarPolynomial":
        self._check(other)
        return StarPolynomial(self.graph, list(self.terms()) + list(other.terms()))

    def __neg__(self) -> "StarPolynomial":
        return self.scale(-1)

    def __sub__(self, other: "StarPolynomial") -> "StarPolynomial":
        return self + (-other)

    def scale(self, c) -> "StarPolynomial":
        c = GaussianRational.coerce(c)
        return StarPolynomial(self.graph, [(m, c * a) for m, a in self.terms()])

    def __mul__(self, other):
        if not isinstance(other, StarPolynomial):
            return self.scale(other)
        self._check(other)
        out = []
        for m1, a in self.terms():
            for m2, b in other.terms():
                m = mono_mul(m1, m2)
                if m is not None:
                    out.append((m, a * b))
        return StarPolynomial(self.graph, out)

    def __rmul__(self, c):
        return self.scale(c)

    def adjoint(self) -> "StarPolynomial":
        return StarPolynomial(self.graph, [(m.adjoint(), c.conjugate()) for m, c in self.terms()])

    def map_terms(self, keep) -> "StarPolynomial":
        return StarPolynomial(self.graph, [(m, c) for m, c in self.terms() if keep(m)])

    # -- gradings --------------------------------------------------------
    @property
    def degree(self) -> int:
        """Largest path length appearing in any term (0 for the zero polynomial)."""
        return max((max(len(m.mu), len(m.nu)) for m in self._terms), default=0)

    def is_core(self) -> bool:
        return all(m.degree == 0 for m in self._terms)


# Functional aliases matching the algebra operations.
def add(p: StarPolynomial, q: StarPolynomial) -> StarPolynomial:
    return p + q


def mul(p: StarPolynomial, q: StarPolynomial) -> StarPolynomial:
    return p * q


def scale(c, p: StarPolynomial) -> StarPolynomial:
    return p.scale(c)


def adjoint(p: StarPolynomial) -> StarPolynomial:
    return p.adjoint()


def degree(p: StarPolynomial) -> int:
    return p.degree


def is_core(p: StarPolynomial) -> bool:
    return p.is_core()


def gen_vertex(g: DirectedGraph, v: str) -> StarPolynomial:
    """The vertex projection ``p_v``."""
    p = vertex_path(g, v)
    return StarPolynomial.monomial(g, p, p)


def gen_edge(g: DirectedGraph, f: str) -> StarPolynomial:
    """The edge partial isometry ``s_f``, stored as ``s_f s_{r(f)}^*``."""
    e = g.edge(f)
    return StarPolynomial.monomial(g, GraphPath((f,), e.src, e.dst), vertex_path(g, e.dst))


def gauge_expect(p: StarPolynomial) -> StarPolynomial:
    """Keep the terms with ``|mu| == |nu|``."""
    return p.map_terms(lambda m: len(m.mu) == len(m.nu))


def free_expect(p: StarPolynomial) -> StarPolynomial:
    """Keep the terms with ``mu == nu``."""
    return p.map_terms(lambda m: m.mu == m.nu)


def defect(g: DirectedGraph, v: str) -> StarPolynomial:
    """``p_v - sum_{s(f)=v} s_f s_f^*`` for a finite emitter ``v``."""
    g.check_vertex(v)
    if v in g.omega:
        raise GraphError(f"vertex {v!r} emits infinitely many edges")
    q = gen_vertex(g, v)
    for e in g.edges_from(v):
        s = gen_edge(g, e.id)
        q = q - s * s.adjoint()
    return q


def all_monomials(g: DirectedGraph, d: int) -> list[Monomial]:
    """Every nonzero monomial with ``|mu|, |nu| <= d``, in canonical order."""
    paths = [p for level in enumerate_paths(g, d) for p in level]
    out = [Monomial(mu, nu) for mu in paths for nu in paths if mu.end == nu.end]
    return sorted(out, key=Monomial.sort_key)


def random_coefficient(rng: random.Random, bound: int = 3, denom: int = 4) -> GaussianRational:
    return GaussianRational(
        Fraction(rng.randint(-bound * denom, bound * denom), denom),
        Fraction(rng.randint(-bound * denom, bound * denom), denom),
    )


def random_polynomial(
    g: DirectedGraph, max_degree: int, rng: random.Random, n_terms: int = 4, core: bool = False
) -> StarPolynomial:
    """Seeded random polynomial; with ``core=True`` only ``|mu| == |nu|`` terms are drawn."""
    pool = all_monomials(g, max_degree)
    if core:
        pool = [m for m in pool if m.degree == 0]
    terms = [(rng.choice(pool), random_coefficient(rng)) for _ in range(n_terms)]
    return StarPolynomial(g, terms)


# -- polynomial file format ---------------------------------------------------

def parse_polynomial(g: DirectedGraph, text: str) -> StarPolynomial:
    """Read ``<re> <im> ; <mu> ; <nu>`` lines (rationals like ``-1/2`` allowed)."""
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [x.strip() for x in line.split(";")]
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected '<re> <im> ; <mu> ; <nu>'")
        coeff = parts[0].split()
        if len(coeff) != 2:
            raise ValueError(f"line {lineno}: coefficient must be '<re> <im>'")
        try:
            c = GaussianRational.parse(*coeff)
            mu = parse_path(g, parts[1])
            nu = parse_path(g, parts[2])
            terms.append((Monomial(mu, nu), c))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return StarPolynomial(g, terms)


def format_polynomial(p: StarPolynomial) -> str:
    lines = [f"{c.re} {c.im} ; {m.mu.literal()} ; {m.nu.literal()}" for m, c in p.terms()]
    return "\n".join(lines) + ("\n" if lines else "")
