"""Mobius function of a finite poset, inversion and sign checks.

All arithmetic is exact (Python integers); values on product lattices can
exceed machine width, which is why nothing here touches floats.
"""

from .core import _bits
from .errors import NotRanked


class MobiusTable:
    """mu(x, y) for every comparable pair x <= y of one lattice."""

    def __init__(self, lattice, values):
        self.lattice = lattice
        self._mu = values

    def mu(self, x, y):
        try:
            return self._mu[(x, y)]
        except KeyError:
            raise ValueError(
                f"mu undefined: {self.lattice.names[x]!r} is not below "
                f"{self.lattice.names[y]!r}") from None

    def pairs(self):
        """All (x, y, mu) triples in a fixed order."""
        for (x, y), v in sorted(self._mu.items()):
            yield x, y, v

    def __len__(self):
        return len(self._mu)


def mobius_table(lattice):
    """Full table via the defining recurrence along a linear extension."""
    up = lattice.up
    down = lattice.down
    values = {}
    for x in range(lattice.n):
        values[(x, x)] = 1
        for y in lattice.linext:
            if y == x or not lattice.leq(x, y):
                continue
            s = 0
            for z in _bits(up[x] & down[y] & ~(1 << y)):
                s += values[(x, z)]
            values[(x, y)] = -s
    return MobiusTable(lattice, values)


def vanishing_pairs(lattice, table=None):
    """Comparable pairs with mu = 0, sorted by index; empty iff nonvanishing."""
    if table is None:
        table = mobius_table(lattice)
    return [(x, y) for x, y, v in table.pairs() if v == 0]


def check_inversion(lattice, g, table=None):
    """Verify both Mobius inversion identities for the values ``g``.

    ``g`` is indexed by element; summation over up-sets defines f, and the
    mu-weighted sums must recover g exactly.  The dual (down-set) direction
    is checked too.  Returns True iff both recoveries are exact.
    """
    if table is None:
        table = mobius_table(lattice)
    n = lattice.n
    up = lattice.up
    down = lattice.down
    f_up = [sum(g[y] for y in _bits(up[x])) for x in range(n)]
    for x in range(n):
        rec = sum(table.mu(x, y) * f_up[y] for y in _bits(up[x]))
        if rec != g[x]:
            return False
    f_dn = [sum(g[x] for x in _bits(down[y])) for y in range(n)]
    for y in range(n):
        rec = sum(table.mu(x, y) * f_dn[x] for x in _bits(down[y]))
        if rec != g[y]:
            return False
    return True


def weisner_check(lattice, table=None):
    """Strict sign alternation: (-1)^(r(y)-r(x)) * mu(x, y) > 0 for all x <= y.

    Holds on every geometric lattice; in particular such lattices have
    nonvanishing Mobius function.
    """
    if lattice.rank is None:
        raise NotRanked("sign check needs a ranked lattice")
    if table is None:
        table = mobius_table(lattice)
    r = lattice.rank
    for x, y, v in table.pairs():
        if (-1) ** (r[y] - r[x]) * v <= 0:
            return False
    return True
