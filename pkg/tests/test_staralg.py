import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphtoeplitz.graph import GraphError, parse_graph
from graphtoeplitz.staralg import (
    ONE,
    ZERO,
    GaussianRational,
    Monomial,
    StarPolynomial,
    adjoint,
    all_monomials,
    defect,
    format_polynomial,
    free_expect,
    gauge_expect,
    gen_edge,
    gen_vertex,
    mono_mul,
    parse_polynomial,
    random_polynomial,
)
from graphtoeplitz.words import parse_path

from conftest import CYCLE2, EDGE, LOOP, THETA


def mono(g, mu, nu):
    return Monomial(parse_path(g, mu), parse_path(g, nu))


def test_gaussian_rational_arithmetic():
    z = GaussianRational(Fraction(1, 2), Fraction(-1))
    assert z * z.conjugate() == GaussianRational(Fraction(5, 4))
    assert z + 1 == GaussianRational(Fraction(3, 2), -1)
    assert 1 - z == GaussianRational(Fraction(1, 2), 1)
    assert complex(z) == 0.5 - 1j
    assert GaussianRational.parse("-1/2", "3") == GaussianRational(Fraction(-1, 2), 3)
    assert not ZERO and ONE


def test_generator_relations(edge):
    pu, pv, sf = gen_vertex(edge, "u"), gen_vertex(edge, "v"), gen_edge(edge, "f")
    assert pu * pu == pu and pu.adjoint() == pu
    assert pu * pv == 0
    assert sf.adjoint() * sf == pv
    assert pu * sf == sf and sf * pv == sf
    assert sf * pu == 0 and pv * sf == 0


def test_cycle_relations(cycle2):
    sf, sg = gen_edge(cycle2, "f"), gen_edge(cycle2, "g")
    assert sf.adjoint() * sg == 0
    assert sf * sg == StarPolynomial.monomial(cycle2, parse_path(cycle2, "f,g"), parse_path(cycle2, "@u"))


def test_mono_mul_examples(loop):
    # (s_f s_f^*)(s_f s_f^*) = s_f s_f^*
    assert mono_mul(mono(loop, "f", "f"), mono(loop, "f", "f")) == mono(loop, "f", "f")
    # s_f^* s_{ff} = s_f
    assert mono_mul(mono(loop, "@v", "f"), mono(loop, "f,f", "@v")) == mono(loop, "f", "@v")
    # s_{ff}^* s_f = s_f^*
    assert mono_mul(mono(loop, "@v", "f,f"), mono(loop, "f", "@v")) == mono(loop, "@v", "f")
    assert mono_mul(mono(parse_graph(THETA), "@u", "a"), mono(parse_graph(THETA), "b", "@v")) is None


def test_monomial_range_mismatch(edge):
    with pytest.raises(ValueError):
        mono(edge, "f", "@u")


def test_defect_projection_identity(loop, edge):
    for g, v in ((loop, "v"), (edge, "u")):
        q = defect(g, v)
        assert q * q == q
        assert q.adjoint() == q
        assert q != 0
        for e in g.edges_from(v):
            assert q * gen_edge(g, e.id) == 0
    assert defect(edge, "v") == gen_vertex(edge, "v")
    with pytest.raises(GraphError):
        defect(parse_graph("vertex v omega\nedge f v v"), "v")


def test_loop_zero_divisor(loop):
    # (1 - s s^*) s = 0 with neither factor zero
    s = gen_edge(loop, "f")
    q = gen_vertex(loop, "v") - s * s.adjoint()
    assert q * s == 0 and q and s


def test_expectations(loop):
    s = gen_edge(loop, "f")
    p = s + s * s.adjoint() + s * s * s.adjoint() + gen_vertex(loop, "v")
    assert gauge_expect(p) == s * s.adjoint() + gen_vertex(loop, "v")
    assert free_expect(p) == gauge_expect(p)
    ff_f = StarPolynomial.monomial(loop, parse_path(loop, "f,f"), parse_path(loop, "f,f"))
    assert free_expect(ff_f) == ff_f


def test_free_expect_drops_off_diagonal(theta):
    m = StarPolynomial.monomial(theta, parse_path(theta, "a"), parse_path(theta, "c"))
    assert gauge_expect(m) == m
    assert free_expect(m) == 0


def test_degree_and_core(loop):
    s = gen_edge(loop, "f")
    assert (s * s).degree == 2
    assert (s * s.adjoint()).is_core()
    assert not s.is_core()
    assert StarPolynomial.zero(loop).degree == 0


def test_all_monomials_counts(loop, edge, cycle2):
    assert len(all_monomials(loop, 2)) == 9
    # pairs of paths of length <= 1 sharing a range: u:{u}, v:{v, f}
    assert len(all_monomials(edge, 1)) == 5
    assert len(all_monomials(cycle2, 2)) == 18


def small_monomials(g, d=1):
    return all_monomials(g, d)


@pytest.mark.parametrize("text", [LOOP, EDGE, CYCLE2, THETA])
def test_associativity_exhaustive(text):
    g = parse_graph(text)
    monos = small_monomials(g, 1)
    for a, b, c in product(monos, repeat=3):
        ab = mono_mul(a, b)
        bc = mono_mul(b, c)
        left = None if ab is None else mono_mul(ab, c)
        right = None if bc is None else mono_mul(a, bc)
        assert left == right, (a, b, c)


@pytest.mark.parametrize("text", [LOOP, EDGE, CYCLE2, THETA])
def test_involution_exhaustive(text):
    g = parse_graph(text)
    monos = small_monomials(g, 2)
    for a, b in product(monos, repeat=2):
        ab = mono_mul(a, b)
        ba = mono_mul(b.adjoint(), a.adjoint())
        assert (None if ab is None else ab.adjoint()) == ba


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from([LOOP, EDGE, CYCLE2, THETA]))
def test_polynomial_algebra_laws(seed, text):
    g = parse_graph(text)
    rng = random.Random(seed)
    p, q, r = (random_polynomial(g, 2, rng) for _ in range(3))
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert adjoint(p * q) == adjoint(q) * adjoint(p)
    assert adjoint(adjoint(p)) == p
    assert (p.scale(1j)).adjoint() == p.adjoint().scale(-1j)


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from([LOOP, CYCLE2, THETA]))
def test_expectations_are_idempotent_and_bimodular(seed, text):
    g = parse_graph(text)
    rng = random.Random(seed)
    p = random_polynomial(g, 2, rng)
    a = random_polynomial(g, 1, rng, core=True)
    e = gauge_expect(p)
    assert gauge_expect(e) == e
    assert free_expect(free_expect(p)) == free_expect(p)
    assert gauge_expect(a * p * a.adjoint()) == a * e * a.adjoint()


def test_polynomial_file_round_trip(theta):
    rng = random.Random(7)
    p = random_polynomial(theta, 2, rng, n_terms=6)
    text = format_polynomial(p)
    assert parse_polynomial(theta, text) == p
    assert format_polynomial(parse_polynomial(theta, text)) == text


def test_polynomial_parse_errors(edge):
    assert parse_polynomial(edge, "1 0 ; f ; @v\n# comment\n") == gen_edge(edge, "f")
    assert parse_polynomial(edge, "-1/2 1 ; @u ; @u") == gen_vertex(edge, "u").scale(GaussianRational(Fraction(-1, 2), 1))
    with pytest.raises(ValueError, match="line 2"):
        parse_polynomial(edge, "1 0 ; f ; @v\n1 0 ; f ; @u")
    with pytest.raises(ValueError, match="line 1"):
        parse_polynomial(edge, "1 ; f ; @v")
