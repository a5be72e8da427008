import itertools

import pytest
from hypothesis import given, strategies as st

from wgshift.ring import (
    NotAUnit,
    ReduciblePolynomial,
    RingError,
    RingSpec,
    factor_poly,
    first_irreducible,
    make_ring,
    poly_divmod,
    ring_for,
)

SMALL_SPECS = [RingSpec.zmod(m) for m in (2, 3, 4, 5, 6, 8, 9, 12)] + [
    RingSpec.gf(2, 2), RingSpec.gf(2, 3), RingSpec.gf(3, 2), RingSpec.gf(5, 1), RingSpec.gf(2, 4)]


def test_cardinalities():
    assert ring_for(RingSpec.zmod(4)).cardinality == 4
    gf4 = ring_for(RingSpec.gf(2, 2, [1, 1, 1]))
    assert gf4.cardinality == 4
    assert gf4.units == (1, 2, 3)


def test_reducible_polynomial_is_named():
    with pytest.raises(ReduciblePolynomial, match=r"reducible: \(x\+1\)²"):
        make_ring(RingSpec.gf(2, 2, [1, 0, 1]))


@pytest.mark.parametrize("spec, msg", [
    (RingSpec("zmod", m=1), "m"),
    (RingSpec("gf", p=4, k=1, irreducible=(0, 1)), "prime"),
    (RingSpec("gf", p=2, k=2, irreducible=(1, 1, 0)), "monic"),
    (RingSpec("gf", p=2, k=2, irreducible=(1, 1)), "degree"),
])
def test_invalid_specs_rejected(spec, msg):
    with pytest.raises(RingError, match=msg):
        make_ring(spec)


def test_operation_examples():
    z4 = ring_for(RingSpec.zmod(4))
    assert z4.mul(2, 2) == 0
    gf4 = ring_for(RingSpec.gf(2, 2))
    x = 2  # coefficient vector (0, 1)
    assert gf4.mul(x, x) == 3  # x + 1
    assert gf4.format(3) == "x+1"
    assert z4.op("add", 3, 3) == 2
    assert z4.op("neg", 1) == 3
    with pytest.raises(RingError):
        z4.op("mul", 1)
    with pytest.raises(RingError):
        z4.mul(4, 1)


def test_units_and_inverses():
    z4 = ring_for(RingSpec.zmod(4))
    assert not z4.is_unit(2)
    assert z4.is_unit(3) and z4.inv(3) == 3
    with pytest.raises(NotAUnit):
        z4.inv(2)
    assert ring_for(RingSpec.zmod(5)).inv(3) == 2
    assert z4.unit_count() == 2
    assert ring_for(RingSpec.zmod(7)).unit_count() == 6
    assert ring_for(RingSpec.gf(3, 2)).unit_count() == 8


@pytest.mark.parametrize("spec", SMALL_SPECS, ids=str)
def test_ring_axioms_exhaustively(spec):
    r = ring_for(spec)
    els = list(r.elements())
    for a, b in itertools.product(els, repeat=2):
        assert r.add(a, b) == r.add(b, a)
        assert r.mul(a, b) == r.mul(b, a)
    for a, b, c in itertools.product(els, repeat=3):
        assert r.add(r.add(a, b), c) == r.add(a, r.add(b, c))
        assert r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c))
        assert r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c))
    for a in els:
        assert r.mul(1, a) == a and r.add(0, a) == a
        assert r.add(a, r.neg(a)) == 0
        assert r.is_unit(a) == any(r.mul(a, y) == 1 for y in els)
        if r.is_unit(a):
            assert r.mul(a, r.inv(a)) == 1
            assert r.pow(a, r.unit_count()) == 1
    if spec.kind == "gf":
        assert r.units == tuple(range(1, r.cardinality))


def test_negative_powers_use_inverse():
    r = ring_for(RingSpec.zmod(7))
    assert r.pow(3, -1) == r.inv(3)
    assert r.mul(r.pow(3, -4), r.pow(3, 4)) == 1


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 4))
def test_first_irreducible_has_no_factor(p, k):
    if p**k > 4096:
        return
    poly = first_irreducible(p, k)
    assert len(poly) == k + 1 and poly[-1] == 1
    assert factor_poly(poly, p) == [tuple(poly)]


@given(st.lists(st.integers(0, 2), min_size=1, max_size=6), st.lists(st.integers(0, 2), min_size=1, max_size=4))
def test_poly_divmod_reconstructs(num, den):
    den = den + [1]  # monic divisor
    q, rem = poly_divmod(num, den, 3)
    prod = [0] * (len(q) + len(den))
    for i, a in enumerate(q):
        for j, b in enumerate(den):
            prod[i + j] = (prod[i + j] + a * b) % 3
    total = [(prod[i] if i < len(prod) else 0) + (rem[i] if i < len(rem) else 0) for i in range(max(len(prod), len(num)))]
    total = [t % 3 for t in total]
    padded = list(num) + [0] * (len(total) - len(num))
    assert total == padded
    assert len(rem) < len(den) or all(c == 0 for c in rem)


def test_spec_round_trip():
    for spec in SMALL_SPECS:
        assert RingSpec.from_dict(spec.to_dict()) == spec
    assert RingSpec.gf(2, 2).to_dict() == {"kind": "gf", "p": 2, "k": 2, "irreducible": [1, 1, 1]}
    assert RingSpec.zmod(4).to_dict() == {"kind": "zmod", "m": 4}
    with pytest.raises(RingError):
        RingSpec.from_dict({"kind": "quaternion"})
