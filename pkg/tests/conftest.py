"""Shared corpus lattices and independent oracles for the test suite.

The oracles here deliberately re-derive results by definition-level loops
(or by exhaustive enumeration) so that the library's optimized paths are
checked against something that cannot share their bugs.
"""

import random
from itertools import combinations, product as iproduct

import pytest

import latticevc as lv
from latticevc.search import canonical_key


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------

def _m3():
    # diamond with three atoms, as a geometric lattice of the uniform matroid
    spec = lv.MatroidSpec.make(3, [s for d in range(3)
                                   for s in combinations(range(3), d)])
    return lv.from_matroid(spec)


def build_corpus():
    return {
        "b1": lv.boolean(1),
        "b2": lv.boolean(2),
        "b3": lv.boolean(3),
        "b4": lv.boolean(4),
        "chain2": lv.chain(2),
        "chain3": lv.chain(3),
        "m3": _m3(),
        "fig1": lv.fig1(),
        "fig2": lv.fig2(),
        "fig3b": lv.fig3b(),
        "pg22": lv.subspace_lattice(2, 2),
        "pg23": lv.subspace_lattice(2, 3),
        "pg32": lv.subspace_lattice(3, 2),
        "prod_c2_b1": lv.product(lv.chain(2), lv.boolean(1)),
    }


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def rng():
    return random.Random(20240611)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def naive_shatters(lattice, family, y):
    """Definition-level quantifier loops, no bitmask tricks."""
    fam = list(family)
    for x in range(lattice.n):
        if not lattice.leq(x, y):
            continue
        if not any(lattice.meet[z][y] == x for z in fam):
            return False
    return True


def naive_shattered_set(lattice, family):
    return frozenset(y for y in range(lattice.n)
                     if naive_shatters(lattice, family, y))


def naive_violating_families(lattice):
    """All violating families by unpruned enumeration of every subset."""
    n = lattice.n
    out = []
    for code in range(1 << n):
        fam = frozenset(i for i in range(n) if (code >> i) & 1)
        if len(naive_shattered_set(lattice, fam)) < len(fam):
            out.append(fam)
    return sorted(out, key=lambda f: (len(f), sum(1 << i for i in f)))


def naive_mobius(lattice):
    """Memoized top-down recursion on the defining recurrence."""
    memo = {}

    def mu(x, y):
        if (x, y) in memo:
            return memo[(x, y)]
        if x == y:
            v = 1
        else:
            v = -sum(mu(x, z) for z in range(lattice.n)
                     if lattice.leq(x, z) and lattice.leq(z, y) and z != y)
        memo[(x, y)] = v
        return v

    return {(x, y): mu(x, y) for x in range(lattice.n)
            for y in range(lattice.n) if lattice.leq(x, y)}


def all_posets_leq(n):
    """Every labeled partial order on n elements, as tuples of up-masks.

    Enumerated by assigning each unordered pair one of three states
    (incomparable, i<j, j>i) and keeping the transitive ones; this path is
    independent of the package's extension-based generator.
    """
    pairs = list(combinations(range(n), 2))
    posets = []
    for states in iproduct(range(3), repeat=len(pairs)):
        up = [1 << i for i in range(n)]
        for (i, j), s in zip(pairs, states):
            if s == 1:
                up[i] |= 1 << j
            elif s == 2:
                up[j] |= 1 << i
        ok = True
        for x in range(n):
            closure = up[x]
            m = up[x] & ~(1 << x)
            while m:
                z = (m & -m).bit_length() - 1
                closure |= up[z]
                m &= m - 1
            if closure != up[x]:
                ok = False
                break
        if ok:
            posets.append(tuple(up))
    return posets


def poset_is_lattice(up):
    """Bottom, top, and all meets/joins exist (checked by direct scans)."""
    n = len(up)
    down = [0] * n
    for x in range(n):
        for y in range(n):
            if (up[x] >> y) & 1:
                down[y] |= 1 << x
    if sum(1 for x in range(n) if down[x] == 1 << x) != 1:
        return False
    if sum(1 for x in range(n) if up[x] == 1 << x) != 1:
        return False
    for masks in (down, up):
        for x in range(n):
            for y in range(x + 1, n):
                common = masks[x] & masks[y]
                best = [m for m in range(n) if (common >> m) & 1
                        and masks[m] == common]
                if not best:
                    return False
    return True


def poset_to_lattice(up):
    """Build a package Lattice from oracle up-masks (via cover pairs)."""
    n = len(up)
    covers = []
    for x in range(n):
        for y in range(n):
            if x != y and (up[x] >> y) & 1:
                if not any((up[x] >> z) & 1 and (up[z] >> y) & 1
                           for z in range(n) if z != x and z != y):
                    covers.append((x, y))
    return lv.from_covers(n, None, covers)


def oracle_lattice_count(n):
    """Lattices on n elements up to isomorphism, via the labeled oracle."""
    keys = set()
    for up in all_posets_leq(n):
        if poset_is_lattice(up):
            keys.add(canonical_key(poset_to_lattice(up)))
    return len(keys)


def random_family(lattice, rng):
    members = [i for i in range(lattice.n) if rng.random() < 0.5]
    return frozenset(members)
