from itertools import combinations, product as iproduct

import pytest

import latticevc as lv
from latticevc.builders import _subspace_elements
from latticevc.errors import (
    DimensionTooSmall,
    NotAMatroid,
    NotPrime,
    OutOfRange,
    TooLarge,
)
from latticevc.search import canonical_key

import importlib.resources as resources


def test_boolean_degenerate():
    b0 = lv.boolean(0)
    assert b0.n == 1 and b0.rank == (0,)


def test_boolean_counts():
    b3 = lv.boolean(3)
    assert b3.n == 8
    assert lv.count_by_rank(b3, 2) == 3


def test_boolean_top_mobius_sign():
    b4 = lv.boolean(4)
    assert lv.mobius_table(b4).mu(b4.bottom, b4.top) == 1


def test_boolean_guard():
    with pytest.raises(TooLarge):
        lv.boolean(21)


def test_chain():
    c2 = lv.chain(2)
    assert c2.n == 3 and c2.rank == (0, 1, 2)
    assert lv.chain(0).n == 1
    assert lv.is_rc(c2) is not None
    with pytest.raises(ValueError):
        lv.chain(-1)


# ---------------------------------------------------------------------------
# subspace lattices
# ---------------------------------------------------------------------------

def brute_subspaces(q, n):
    """All subspaces of F_q^n as frozensets of vectors, by closure testing."""
    vectors = list(iproduct(range(q), repeat=n))
    subs = set()
    for d in range(n + 1):
        for basis in combinations(vectors, d):
            span = set()
            for coeffs in iproduct(range(q), repeat=d):
                v = tuple(sum(c * row[j] for c, row in zip(coeffs, basis)) % q
                          for j in range(n))
                span.add(v)
            if len(span) == q ** d:
                subs.add(frozenset(span))
    return subs


def test_subspace_lattice_22():
    lat = lv.subspace_lattice(2, 2)
    assert lat.n == 5
    assert [lv.count_by_rank(lat, d) for d in range(3)] == [1, 3, 1]


def test_subspace_lattice_23():
    lat = lv.subspace_lattice(2, 3)
    assert lat.n == 16
    assert [lv.count_by_rank(lat, d) for d in range(4)] == [1, 7, 7, 1]
    assert lv.weisner_check(lat)


def test_subspace_enumeration_matches_brute_closure():
    for q, n in ((2, 2), (2, 3), (3, 2)):
        _, vecsets, _ = _subspace_elements(q, n)
        assert set(vecsets) == brute_subspaces(q, n)
        assert len(vecsets) == len(set(vecsets))


def test_subspace_meet_is_intersection():
    lat = lv.subspace_lattice(2, 2)
    _, vecsets, _ = _subspace_elements(2, 2)
    for x in range(lat.n):
        for y in range(lat.n):
            m = lat.meet[x][y]
            assert vecsets[m] == vecsets[x] & vecsets[y]


def test_subspace_type_canonical():
    full = lv.Subspace(2, 2, ((1, 0), (0, 1)))
    assert full.dim() == 2
    assert full.vectors() == frozenset({(0, 0), (0, 1), (1, 0), (1, 1)})
    assert full.name() == "10.01"
    zero = lv.Subspace(2, 2, ())
    assert zero.vectors() == frozenset({(0, 0)}) and zero.name() == "0"
    # echelon bases are canonical: distinct subspaces, distinct labels
    names, vecsets, _ = _subspace_elements(2, 3)
    assert len(set(names)) == len(names) == len(set(vecsets))


def test_subspace_errors():
    with pytest.raises(NotPrime):
        lv.subspace_lattice(4, 2)
    with pytest.raises(NotPrime):
        lv.subspace_lattice(1, 2)
    with pytest.raises(TooLarge):
        lv.subspace_lattice(2, 18)


def test_subspace_rank_counts_match_qbinom():
    for q, n in ((2, 2), (2, 3), (2, 4), (3, 2), (3, 3)):
        lat = lv.subspace_lattice(q, n)
        for d in range(n + 1):
            assert lv.count_by_rank(lat, d) == lv.qbinom(n, d, q), (q, n, d)


# ---------------------------------------------------------------------------
# matroids
# ---------------------------------------------------------------------------

def free_matroid(n):
    return lv.MatroidSpec.make(n, [s for d in range(n + 1)
                                   for s in combinations(range(n), d)])


def test_from_matroid_free_is_boolean():
    lat = lv.from_matroid(free_matroid(3))
    assert canonical_key(lat) == canonical_key(lv.boolean(3))


def test_from_matroid_uniform_2_3():
    spec = lv.MatroidSpec.make(3, [s for d in range(3)
                                   for s in combinations(range(3), d)])
    lat = lv.from_matroid(spec)
    assert lat.n == 5
    assert [lv.count_by_rank(lat, d) for d in range(3)] == [1, 3, 1]


def test_from_matroid_linear_f2_cubed():
    # ground set: the 7 nonzero vectors of F_2^3; independence = linear
    vectors = [v for v in iproduct(range(2), repeat=3) if any(v)]

    def rank_of(subset):
        rows = [list(vectors[i]) for i in subset]
        r = 0
        for col in range(3):
            piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            for i in range(len(rows)):
                if i != r and rows[i][col]:
                    rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[r])]
            r += 1
        return r

    independents = [s for d in range(4) for s in combinations(range(7), d)
                    if rank_of(s) == len(s)]
    lat = lv.from_matroid(lv.MatroidSpec.make(7, independents))
    assert canonical_key(lat) == canonical_key(lv.subspace_lattice(2, 3))


def test_from_matroid_weisner(corpus):
    for lat in (lv.from_matroid(free_matroid(3)), corpus["m3"],
                corpus["pg22"], corpus["pg23"], corpus["pg32"]):
        assert lv.weisner_check(lat)


def test_matroid_axioms_rejected():
    with pytest.raises(NotAMatroid):
        lv.from_matroid(lv.MatroidSpec.make(2, []))
    with pytest.raises(NotAMatroid):
        # not downward closed
        lv.from_matroid(lv.MatroidSpec(2, (frozenset(), frozenset({0, 1}))))
    with pytest.raises(NotAMatroid):
        # exchange fails: {0,1} independent but neither extends {2}
        lv.from_matroid(lv.MatroidSpec.make(
            3, [(), (0,), (1,), (2,), (0, 1)]))
    with pytest.raises(NotAMatroid):
        lv.from_matroid(lv.MatroidSpec.make(1, [(), (4,)]))


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------

def test_figures_validate_and_classify():
    f1, f2, f3 = lv.fig1(), lv.fig2(), lv.fig3b()
    assert (f1.n, f2.n, f3.n) == (9, 33, 11)
    assert lv.is_rc(f1) is None and lv.is_rc(f2) is None
    assert lv.is_rc(f3) is not None
    assert f1.rank is None
    assert [lv.count_by_rank(f2, d) for d in range(5)] == [1, 6, 15, 10, 1]
    assert [lv.count_by_rank(f3, d) for d in range(4)] == [1, 5, 4, 1]


def test_figure_files_match_builders():
    for name, build in (("fig1", lv.fig1), ("fig2", lv.fig2),
                        ("fig3b", lv.fig3b)):
        text = (resources.files("latticevc") / "data" / f"{name}.lat").read_text()
        lat = lv.parse_lattice_text(text)
        built = build()
        assert lat.names == built.names
        assert lat.covers == built.covers


def test_boolean_equals_free_matroid_and_b1_powers():
    for n in (1, 2, 3):
        bn = lv.boolean(n)
        assert canonical_key(bn) == canonical_key(lv.from_matroid(free_matroid(n)))
        power = lv.boolean(1)
        for _ in range(n - 1):
            power = lv.product(power, lv.boolean(1))
        assert canonical_key(bn) == canonical_key(power)


# ---------------------------------------------------------------------------
# q-binomials
# ---------------------------------------------------------------------------

def test_qbinom_edges():
    for n in range(6):
        assert lv.qbinom(n, 0, 2) == 1
        assert lv.qbinom(n, n, 3) == 1


def test_qbinom_values():
    assert lv.qbinom(3, 1, 2) == 7
    assert lv.qbinom(4, 2, 2) == 35
    assert lv.qbinom(2, 1, 3) == 4


def test_qbinom_errors():
    with pytest.raises(OutOfRange):
        lv.qbinom(2, 3, 2)
    with pytest.raises(OutOfRange):
        lv.qbinom(2, -1, 2)
    with pytest.raises(OutOfRange):
        lv.qbinom(2, 1, 1)


def test_qbinom_bounds():
    assert lv.qbinom_bounds_check(4, 2, 2)
    assert sum(lv.qbinom(4, e, 2) for e in range(3)) == 51
    assert 2 ** (2 * 2) <= 51 <= 2 * 4 ** 2 * 2 ** 8
    for d in range(4):
        assert lv.qbinom_bounds_check(3, d, 3)
    assert lv.qbinom_bounds_check(1, 0, 2)
    with pytest.raises(ValueError):
        lv.qbinom_bounds_check(0, 0, 2)


# ---------------------------------------------------------------------------
# the critical VC-1 family
# ---------------------------------------------------------------------------

def test_critical_family_2_3():
    lat, fam = lv.critical_family(2, 3)
    assert len(fam) == 6 == 2 ** 2 + 2
    assert lv.vc_dim(lat, fam) == 1
    assert lv.count_up_to(lat, 1) == 8 == 1 + (2 ** 3 - 1) // (2 - 1)


def test_critical_family_2_2():
    lat, fam = lv.critical_family(2, 2)
    assert len(fam) == 4 == lv.count_up_to(lat, 1)
    # the only absent element is the fixed hyperplane; adding it shatters top
    absent = frozenset(range(lat.n)) - fam
    assert len(absent) == 1
    assert lv.vc_dim(lat, fam | absent) == 2


def test_critical_family_3_2():
    lat, fam = lv.critical_family(3, 2)
    assert len(fam) == 5
    assert lv.vc_dim(lat, fam) == 1


def test_critical_family_guard():
    with pytest.raises(DimensionTooSmall):
        lv.critical_family(2, 1)
