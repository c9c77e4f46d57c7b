"""Groebner engine tests: bases, reduction, membership and dimension."""

import random

import pytest

from sgrank.errors import ComputationTimeout, InvalidInputError
from sgrank.groebner import (
    Ideal,
    buchberger,
    ideal_dimension,
    ideal_membership,
    is_reduced_groebner_basis,
    normal_form,
    s_polynomial,
)
from sgrank.polyring import GREVLEX, LEX, PolyRing, PrimeField, QQ, parse_polynomial

FP = PrimeField(2**31 - 1)


def P(text, nvars=None, **kw):
    return parse_polynomial(text, nvars=nvars, **kw)


# ---------------------------------------------------------------------------
# normal_form
# ---------------------------------------------------------------------------

def test_normal_form_divisible():
    r = PolyRing(2)
    assert normal_form(P("x0^2*x1", ring=r), [P("x0^2", ring=r)]).is_zero()


def test_normal_form_no_division():
    r = PolyRing(2)
    f = P("x0^2", ring=r)
    assert normal_form(f, [P("x1", ring=r)]) == f


def test_normal_form_hand_division():
    r = PolyRing(2)
    assert normal_form(P("x0*x1 + x1^2", ring=r), [P("x0 + x1", ring=r)]).is_zero()


def test_normal_form_remainder_property():
    # no term of the remainder is divisible by any leading term
    rng = random.Random(4)
    ring = PolyRing(3)
    for _ in range(100):
        f = _random_poly(rng, ring)
        gs = [g for g in (_random_poly(rng, ring) for _ in range(2)) if not g.is_zero()]
        if not gs:
            continue
        rem = normal_form(f, gs)
        leads = [g.leading_monomial() for g in gs]
        for m in rem.terms:
            for lm in leads:
                assert not all(a <= b for a, b in zip(lm, m))


def _random_poly(rng, ring, max_terms=4, max_deg=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = [0] * ring.nvars
        for _ in range(rng.randint(0, max_deg)):
            mono[rng.randrange(ring.nvars)] += 1
        terms[tuple(mono)] = rng.randint(-5, 5)
    return ring.from_dict(terms)


# ---------------------------------------------------------------------------
# buchberger
# ---------------------------------------------------------------------------

def test_monomial_ideal_is_its_own_basis():
    r = PolyRing(2)
    gb = buchberger([P("x0^2", ring=r), P("x0*x1", ring=r)])
    assert {str(g) for g in gb} == {"x0^2", "x0*x1"}


def test_one_spair_reduction():
    r = PolyRing(2)
    gb = buchberger([P("x0^2 + x1^2", ring=r), P("x0*x1", ring=r)])
    assert {str(g) for g in gb} == {"x0^2 + x1^2", "x0*x1", "x1^3"}
    assert is_reduced_groebner_basis(gb)


def test_jacobian_of_squared_line():
    r = PolyRing(2)
    f = P("x0^2*x1", ring=r)
    gb = buchberger([f.partial_derivative(0), f.partial_derivative(1)])
    assert {str(g) for g in gb} == {"x0^2", "x0*x1"}  # monic


def test_basis_deterministic():
    rng = random.Random(17)
    ring = PolyRing(3)
    for _ in range(20):
        gens = [g for g in (_random_poly(rng, ring) for _ in range(3)) if not g.is_zero()]
        if not gens:
            continue
        a = buchberger(gens)
        b = buchberger(list(reversed(gens)))
        assert list(a) == list(b)  # reduced basis is unique


def test_random_bases_are_reduced_and_contain_generators():
    rng = random.Random(23)
    for field in (QQ, FP):
        ring = PolyRing(3, field)
        for _ in range(15):
            gens = [g for g in (_random_poly(rng, ring) for _ in range(3)) if not g.is_zero()]
            if not gens:
                continue
            gb = buchberger(gens)
            if len(gb) <= 30:
                assert is_reduced_groebner_basis(gb)
            for g in gens:
                assert ideal_membership(g, gb)


def test_spolynomial_matches_definition():
    r = PolyRing(2)
    f = P("x0^2 + x1^2", ring=r)
    g = P("x0*x1", ring=r)
    s = s_polynomial(f, g)
    assert s == P("x1^3", ring=r)


def test_unit_ideal():
    r = PolyRing(2)
    gb = buchberger([P("x0", ring=r), P("x0 + 1", ring=r)])
    assert gb.is_unit_ideal
    assert ideal_dimension(gb) == -1


def test_zero_ideal_rejected():
    r = PolyRing(2)
    with pytest.raises(InvalidInputError):
        buchberger([r.zero()])
    with pytest.raises(InvalidInputError):
        Ideal([])


def test_ideal_drops_zero_generators():
    r = PolyRing(2)
    ideal = Ideal([r.zero(), P("x0", ring=r)])
    assert len(ideal) == 1


def test_membership_examples():
    r = PolyRing(2)
    gb = buchberger([P("x0", ring=r)])
    assert ideal_membership(P("x0^2", ring=r), gb)
    assert not ideal_membership(P("x1", ring=r), gb)


def test_membership_squared_linear_forms():
    # L^2 lies in (L^2, L*M) for independent linear forms L, M
    r = PolyRing(3)
    L = P("x0 + x1", ring=r)
    M = P("x2", ring=r)
    gb = buchberger([L * L, L * M])
    assert ideal_membership(L * L, gb)


def test_poll_cancellation():
    r = PolyRing(3)
    gens = [
        P("x0^2 + x1^2 + x2^2", ring=r),
        P("x0*x1 + x1*x2", ring=r),
        P("x0*x2 + x1^2", ring=r),
    ]

    def poll(stats):
        assert stats.pairs_done >= 1
        raise ComputationTimeout("stop", basis_size=stats.basis_size,
                                 pairs_done=stats.pairs_done, pairs_left=stats.pairs_left)

    with pytest.raises(ComputationTimeout):
        buchberger(gens, poll=poll, poll_every=1)


# ---------------------------------------------------------------------------
# ideal_dimension
# ---------------------------------------------------------------------------

def test_dimension_linear_ideal():
    r = PolyRing(3)
    gb = buchberger([P("x0", ring=r), P("x1", ring=r)])
    assert ideal_dimension(gb) == 1


def test_dimension_powers():
    # (x1^2, ..., xk^2) in n+1 variables has dimension n+1-k
    for nvars in range(2, 6):
        for k in range(1, nvars):
            r = PolyRing(nvars)
            gens = [P(f"x{i}^2", ring=r) for i in range(1, k + 1)]
            assert ideal_dimension(buchberger(gens)) == nvars - k


def test_dimension_case_split_example():
    r = PolyRing(4)
    gb = buchberger([P("x0*x2", ring=r), P("x0*x3 + x1*x2", ring=r)])
    assert ideal_dimension(gb) == 2


def _dimension_bruteforce(monos, nvars):
    """Independent oracle: try all 2^nvars variable subsets."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in monos]
    best = -1
    for mask in range(1 << nvars):
        subset = {i for i in range(nvars) if mask >> i & 1}
        if any(sup <= subset for sup in supports):
            continue
        best = max(best, len(subset))
    return best


def test_dimension_against_bruteforce():
    rng = random.Random(55)
    for _ in range(150):
        nvars = rng.randint(2, 6)
        ring = PolyRing(nvars)
        monos = []
        for _ in range(rng.randint(1, 6)):
            m = [0] * nvars
            for _ in range(rng.randint(1, 3)):
                m[rng.randrange(nvars)] += 1
            monos.append(tuple(m))
        monos = [m for m in monos if any(m)]
        if not monos:
            continue
        gb = buchberger([ring.from_dict({m: 1}) for m in monos])
        assert ideal_dimension(gb) == _dimension_bruteforce(monos, nvars)


def test_dimension_field_and_order_stability():
    rng = random.Random(71)
    ring_q = PolyRing(3, QQ, GREVLEX)
    for _ in range(25):
        gens = [g for g in (_random_poly(rng, ring_q) for _ in range(3)) if not g.is_zero()]
        if not gens:
            continue
        d_q = ideal_dimension(buchberger(gens))
        d_p = ideal_dimension(buchberger([g.convert_field(FP) for g in gens]))
        d_l = ideal_dimension(buchberger([g.convert_order(LEX) for g in gens]))
        assert d_q == d_p == d_l
