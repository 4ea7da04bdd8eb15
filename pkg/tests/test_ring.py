"""Group-ring arithmetic checked against a naive independent oracle."""
from __future__ import annotations

import random

import pytest

from pushcalc.errors import ParseError
from pushcalc.ring import (
    ModuleVec,
    RingElem,
    SphereLabel,
    augment,
    coefficient,
    format_ring,
    format_vec,
    parse_label,
    ring_add,
    ring_endo_apply,
    ring_from_json,
    ring_mul,
    ring_to_json,
    translate,
    translate_right,
    vec_endo_apply,
    vec_from_json,
    vec_to_json,
    vec_translate,
)
from pushcalc.words import IDENTITY, FreeEndo, FreeWord, parse_word


# --- independent oracle: repeated-scan reduction, dict convolution ---

def oracle_reduce(seq) -> tuple[int, ...]:
    s = list(seq)
    changed = True
    while changed:
        changed = False
        for i in range(len(s) - 1):
            if s[i] == -s[i + 1]:
                del s[i:i + 2]
                changed = True
                break
    return tuple(s)


def oracle_mul(a: RingElem, b: RingElem) -> dict[tuple[int, ...], int]:
    acc: dict[tuple[int, ...], int] = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            w = oracle_reduce(u.letters + v.letters)
            acc[w] = acc.get(w, 0) + cu * cv
    return {w: c for w, c in acc.items() if c}


def as_letter_dict(a: RingElem) -> dict[tuple[int, ...], int]:
    return {w.letters: c for w, c in a.terms.items()}


def rand_ring(rng: random.Random, g: int, max_terms: int, max_len: int) -> RingElem:
    alphabet = [s * i for i in range(1, g + 1) for s in (1, -1)]
    terms = []
    for _ in range(rng.randrange(max_terms + 1)):
        w = FreeWord(rng.choice(alphabet) for _ in range(rng.randrange(max_len + 1)))
        terms.append((w, rng.randrange(-4, 5)))
    return RingElem(terms)


def test_construction_prunes_zeros():
    a = RingElem([(parse_word("a1"), 2), (parse_word("a1"), -2), (IDENTITY, 3)])
    assert a == RingElem.from_int(3)
    assert not RingElem.from_int(0)
    assert RingElem.zero().is_zero
    assert RingElem.from_word(parse_word("a1"), 0).is_zero
    with pytest.raises(ValueError):
        RingElem([("a1", 1)])  # type: ignore[list-item]


def test_product_examples():
    one = RingElem.one()
    al = RingElem.from_word(parse_word("a1"))
    assert ring_mul(one + al, one - al) == one - RingElem.from_word(parse_word("a1^2"))
    a2 = RingElem.from_word(parse_word("a2"))
    assert ring_mul(al, a2) != ring_mul(a2, al)
    assert ring_mul(al, RingElem.from_word(parse_word("A1"))) == one


def test_translate_examples():
    alpha = parse_word("a1")
    one_plus = RingElem.one() + RingElem.from_word(alpha)
    assert translate(alpha, one_plus) == RingElem.from_word(alpha) + RingElem.from_word(
        parse_word("a1^2")
    )
    a2 = RingElem.from_word(parse_word("a2"))
    assert translate_right(RingElem.one() + a2, alpha) == RingElem.from_word(
        alpha
    ) + RingElem.from_word(parse_word("a2 a1"))


def test_translate_composition_laws():
    rng = random.Random(71)
    for _ in range(150):
        g = rng.randrange(1, 4)
        a = rand_ring(rng, g, 6, 6)
        alphabet = [s * i for i in range(1, g + 1) for s in (1, -1)]
        u = FreeWord(rng.choice(alphabet) for _ in range(rng.randrange(7)))
        v = FreeWord(rng.choice(alphabet) for _ in range(rng.randrange(7)))
        assert translate(u, translate(v, a)) == translate(u * v, a)
        assert translate_right(translate_right(a, u), v) == translate_right(a, u * v)
        assert translate(u, a) == ring_mul(RingElem.from_word(u), a)
        assert translate_right(a, u) == ring_mul(a, RingElem.from_word(u))


def test_ring_axioms_seeded():
    rng = random.Random(72)
    one = RingElem.one()
    for _ in range(120):
        g = rng.randrange(1, 4)
        a = rand_ring(rng, g, 6, 6)
        b = rand_ring(rng, g, 6, 6)
        c = rand_ring(rng, g, 6, 6)
        assert ring_mul(ring_mul(a, b), c) == ring_mul(a, ring_mul(b, c))
        assert ring_mul(a, ring_add(b, c)) == ring_add(ring_mul(a, b), ring_mul(a, c))
        assert ring_mul(ring_add(a, b), c) == ring_add(ring_mul(a, c), ring_mul(b, c))
        assert ring_mul(one, a) == a
        assert ring_mul(a, one) == a
        assert a + (-a) == RingElem.zero()
        assert a - b == a + (-b)
        assert 3 * a == a + a + a
        assert a * -1 == -a


def test_ring_mul_matches_oracle():
    rng = random.Random(73)
    for _ in range(300):
        g = rng.randrange(1, 4)
        a = rand_ring(rng, g, 6, 6)
        b = rand_ring(rng, g, 6, 6)
        assert as_letter_dict(ring_mul(a, b)) == oracle_mul(a, b)


def test_endo_apply_on_ring():
    collapse = FreeEndo([IDENTITY])
    a1 = RingElem.from_word(parse_word("a1"))
    inv = RingElem.from_word(parse_word("A1"))
    assert ring_endo_apply(collapse, a1 + inv) == RingElem.from_int(2)
    assert ring_endo_apply(collapse, a1 - RingElem.one()).is_zero

    rng = random.Random(74)
    for _ in range(100):
        g = rng.randrange(1, 4)
        alphabet = [s * i for i in range(1, g + 1) for s in (1, -1)]
        phi = FreeEndo(
            [FreeWord(rng.choice(alphabet) for _ in range(rng.randrange(4)))
             for _ in range(g)]
        )
        a = rand_ring(rng, g, 5, 5)
        b = rand_ring(rng, g, 5, 5)
        assert ring_endo_apply(phi, ring_mul(a, b)) == ring_mul(
            ring_endo_apply(phi, a), ring_endo_apply(phi, b)
        )
        assert ring_endo_apply(phi, a + b) == ring_endo_apply(phi, a) + ring_endo_apply(phi, b)


def test_augment_is_a_ring_homomorphism():
    conj = RingElem.one() - RingElem.from_word(parse_word("a1 a2 A1"))
    assert augment(conj) == 0

    rng = random.Random(75)
    for _ in range(150):
        g = rng.randrange(1, 4)
        a = rand_ring(rng, g, 6, 6)
        b = rand_ring(rng, g, 6, 6)
        assert augment(a + b) == augment(a) + augment(b)
        assert augment(ring_mul(a, b)) == augment(a) * augment(b)
    assert augment(RingElem.one()) == 1


def test_coefficient_lookup():
    one = RingElem.one()
    al = RingElem.from_word(parse_word("a1"))
    sq = ring_mul(one + al, one + al)
    assert coefficient(sq, parse_word("a1")) == 2
    assert coefficient(sq, IDENTITY) == 1
    assert coefficient(sq, parse_word("a1^2")) == 1
    assert coefficient(sq, parse_word("a2")) == 0


def test_ring_json_round_trip():
    one = RingElem.one()
    al = RingElem.from_word(parse_word("a1"))
    sq = ring_mul(one + al, one + al)
    js = ring_to_json(sq)
    assert js == [[1, "e"], [2, "a1"], [1, "a1^2"]]
    assert ring_from_json(js) == sq
    assert ring_to_json(RingElem.zero()) == []

    rng = random.Random(76)
    for _ in range(100):
        a = rand_ring(rng, rng.randrange(1, 4), 6, 6)
        assert ring_from_json(ring_to_json(a)) == a

    for bad in ("x", [[1]], [["1", "a1"]], [[True, "a1"]], [[1, 7]]):
        with pytest.raises(ParseError):
            ring_from_json(bad)


def test_format_ring():
    one = RingElem.one()
    al = RingElem.from_word(parse_word("a1"))
    assert format_ring(RingElem.zero()) == "0"
    assert format_ring(one + 2 * al) == "1 + 2 a1"
    assert format_ring(-one + al) == "-1 + a1"
    assert format_ring(one - RingElem.from_word(parse_word("a1 a2 A1"))) == "1 - a1 a2 A1"


def test_sphere_labels():
    p1, p2, t0, t1 = (
        SphereLabel("p", 1), SphereLabel("p", 2), SphereLabel("t", 0), SphereLabel("t", 1),
    )
    assert sorted([t1, p2, t0, p1]) == [p1, p2, t0, t1]
    assert str(p2) == "p2" and str(t0) == "t0"
    assert parse_label("p2") == p2
    assert parse_label("t0") == t0
    for bad in ("x1", "p0", "p", "t-1", "P1"):
        with pytest.raises(ParseError):
            parse_label(bad)
    with pytest.raises(ValueError):
        SphereLabel("q", 1)
    with pytest.raises(ValueError):
        SphereLabel("p", 0)


def test_module_vec_arithmetic():
    p1 = SphereLabel("p", 1)
    t1 = SphereLabel("t", 1)
    v = ModuleVec.unit(t1) + ModuleVec.unit(p1)
    assert v.get(p1) == RingElem.one()
    assert v.get(SphereLabel("p", 2)).is_zero
    assert v + ModuleVec([(p1, -RingElem.one())]) == ModuleVec.unit(t1)
    assert not ModuleVec.zero()

    al = parse_word("a1")
    moved = vec_translate(al, v)
    assert moved.get(t1) == RingElem.from_word(al)

    collapse = FreeEndo([IDENTITY])
    w = ModuleVec([(p1, RingElem.from_word(al) - RingElem.one())])
    assert not vec_endo_apply(collapse, w)


def test_format_vec():
    p1 = SphereLabel("p", 1)
    t1 = SphereLabel("t", 1)
    one = RingElem.one()
    al = RingElem.from_word(parse_word("a1"))
    v = ModuleVec([(t1, one), (p1, one)])
    assert format_vec(v) == "p1 + t1"
    assert format_vec(v, lead=t1) == "t1 + p1"
    assert format_vec(ModuleVec([(p1, al)])) == "a1·p1"
    assert format_vec(ModuleVec([(p1, one + al)])) == "(1 + a1)·p1"
    assert format_vec(ModuleVec([(t1, one), (p1, -al)]), lead=t1) == "t1 - a1·p1"
    assert format_vec(ModuleVec([(p1, 2 * al)])) == "2·a1·p1"
    assert format_vec(ModuleVec.zero()) == "0"


def test_module_vec_json_round_trip():
    p1 = SphereLabel("p", 1)
    t1 = SphereLabel("t", 1)
    v = ModuleVec([(t1, RingElem.one()), (p1, RingElem.from_word(parse_word("a1")))])
    js = vec_to_json(v)
    assert js == {"p1": [[1, "a1"]], "t1": [[1, "e"]]}
    assert vec_from_json(js) == v
    with pytest.raises(ParseError):
        vec_from_json([1, 2])
    with pytest.raises(ParseError):
        vec_from_json({"zz": []})
