"""SSP verification, the RC decision, and family-level shattering bounds.

A lattice is SSP when every family F shatters at least |F| elements.  Three
routes are implemented: certificates (nonvanishing Mobius function, or RC
with mu vanishing only on the bottom-to-top pair), the constructive
counterexample on non-RC lattices, and exhaustive search over families with
sound subset pruning.
"""

import multiprocessing
from dataclasses import dataclass

from .core import _bits, product
from .errors import (
    BudgetExceeded,
    CheckFailed,
    FactorNotSSP,
    NotALattice,
    NotMaximalAntichain,
    NotOneMinimal,
    NotRC,
    PreconditionViolated,
)
from .mobius import mobius_table, vanishing_pairs
from .shattering import shattered_set, shatters

CERTIFIED = "CertifiedSSP"
VIOLATED = "Violated"
INCONCLUSIVE = "Inconclusive"

CERT_NONVANISHING = "NonvanishingMu"
CERT_RC_ONCE = "RcMuVanishingOnce"
CERT_BRUTE = "BruteForce"

DEFAULT_BUDGET = 1 << 22


# ---------------------------------------------------------------------------
# relative complementation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RcWitness:
    """A 3-element interval: z is the unique element strictly between x and y."""
    x: int
    z: int
    y: int


def is_rc(lattice):
    """None when relatively complemented, else the first 3-element interval.

    Uses the interval characterization: a finite lattice is RC iff no pair
    x < y has exactly one element strictly between.  Witnesses are scanned
    in (x, y) index order, so the result is deterministic.
    """
    up = lattice.up
    down = lattice.down
    for x in range(lattice.n):
        for y in _bits(up[x] & ~(1 << x)):
            between = up[x] & down[y] & ~(1 << x) & ~(1 << y)
            if between and between & (between - 1) == 0:
                return RcWitness(x, between.bit_length() - 1, y)
    return None


def non_rc_family(lattice, witness):
    """The violating family carved out of a 3-element interval.

    Everything below the interval's top, except the interval's bottom: the
    two upper interval elements are then not shattered, so the family
    shatters at most |F| - 1 elements.
    """
    return frozenset(_bits(lattice.down[witness.y])) - {witness.x}


# ---------------------------------------------------------------------------
# exhaustive search
#
# Families are traversed as a subset tree: the children of F extend it by a
# strictly larger element index.  Shattering data is maintained
# incrementally (adding a member only grows the realized meets at every y),
# and a subtree is skipped once |Str(F)| >= |F| + remaining-capacity, which
# certifies every superset in it.  The budget is pre-allocated to branches
# by worst-case subtree size so that results do not depend on the worker
# count.
# ---------------------------------------------------------------------------

def _scan_branch(lattice, first, quota, collect_all):
    """DFS over the families whose minimum member is `first`.

    `first is None` means the branch containing only the empty family.
    Returns (complete, witness, violations, covered): `witness` is the first
    violating family in DFS order (when not collecting), `violations` the
    full tuple of them (when collecting), `covered` the number of families
    examined or certified by pruning.
    """
    n = lattice.n
    meet = lattice.meet
    down = lattice.down
    add_bits = [[1 << meet[j][y] for y in range(n)] for j in range(n)]
    state = {"visited": 0, "covered": 0, "complete": True, "witness": None}
    violations = []

    def visit(members, size, str_cnt, unsat, next_i):
        if state["visited"] >= quota:
            state["complete"] = False
            return False
        state["visited"] += 1
        state["covered"] += 1
        if str_cnt < size:
            fam = frozenset(members)
            if collect_all:
                violations.append(fam)
            else:
                state["witness"] = fam
                return False
        rem = n - next_i
        if str_cnt >= size + rem:
            # every superset G in this subtree has |G| <= size + rem
            # <= |Str(F)| <= |Str(G)|, so nothing below can violate
            state["covered"] += (1 << rem) - 1
            return True
        for j in range(next_i, n):
            nb = add_bits[j]
            new_unsat = []
            ns = str_cnt
            for y, r in unsat:
                r2 = r | nb[y]
                if down[y] & ~r2 == 0:
                    ns += 1
                else:
                    new_unsat.append((y, r2))
            members.append(j)
            ok = visit(members, size + 1, ns, new_unsat, j + 1)
            members.pop()
            if not ok:
                return False
        return True

    if first is None:
        visit([], 0, 0, [(y, 0) for y in range(n)], n)
    else:
        nb = add_bits[first]
        unsat = []
        cnt = 0
        for y in range(n):
            r = nb[y]
            if down[y] & ~r == 0:
                cnt += 1
            else:
                unsat.append((y, r))
        visit([first], 1, cnt, unsat, first + 1)
    return state["complete"], state["witness"], tuple(violations), state["covered"]


def _branch_task(args):
    return _scan_branch(*args)


def _brute_force(lattice, budget, jobs, collect_all):
    """Run all branches under pre-allocated quotas and merge in branch order."""
    n = lattice.n
    firsts = [None] + list(range(n))
    sizes = [1] + [1 << (n - 1 - k) for k in range(n)]
    quotas = []
    rem = max(0, budget)
    for s in sizes:
        q = min(s, rem)
        quotas.append(q)
        rem -= q

    tasks = [(lattice, firsts[i], quotas[i], collect_all)
             for i in range(len(firsts)) if quotas[i] > 0]
    if jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=jobs) as pool:
            results = pool.map(_branch_task, tasks)
    else:
        results = [_branch_task(t) for t in tasks]

    total_covered = 0
    violations = []
    ti = 0
    for i in range(len(firsts)):
        if quotas[i] == 0:
            return INCONCLUSIVE, None, violations, total_covered
        complete, witness, viols, covered = results[ti]
        ti += 1
        total_covered += covered
        if not collect_all and witness is not None:
            return VIOLATED, witness, violations, total_covered
        if not complete:
            return INCONCLUSIVE, None, violations, total_covered
        violations.extend(viols)
    assert total_covered == 1 << n
    return CERTIFIED, None, violations, total_covered


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SspVerdict:
    outcome: str                    # CertifiedSSP / Violated / Inconclusive
    certificate_kind: str | None    # NonvanishingMu / RcMuVanishingOnce / BruteForce
    witness: frozenset | None       # violating family when outcome is Violated
    families_examined: int


def _certificate_verdict(lattice):
    table = mobius_table(lattice)
    vanishing = vanishing_pairs(lattice, table)
    if not vanishing:
        return SspVerdict(CERTIFIED, CERT_NONVANISHING, None, 0)
    if (lattice.top is not None
            and set(vanishing) <= {(lattice.bottom, lattice.top)}
            and is_rc(lattice) is None):
        return SspVerdict(CERTIFIED, CERT_RC_ONCE, None, 0)
    return SspVerdict(INCONCLUSIVE, None, None, 0)


def _verify_witness(lattice, fam):
    if len(shattered_set(lattice, fam)) >= len(fam):
        raise CheckFailed("claimed witness shatters at least |F| elements")


def is_ssp(lattice, strategy="auto", budget=DEFAULT_BUDGET, jobs=1):
    """Decide the SSP property.

    strategy "certificate" applies the Mobius-function certificates only;
    "brute" enumerates families exhaustively within the budget; "auto" tries
    the certificates, then the non-RC counterexample, then brute force.
    Resource exhaustion yields Inconclusive, never an exception.  Every
    Violated verdict is re-verified from the definition before returning.
    """
    if strategy not in ("auto", "brute", "certificate"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy in ("auto", "certificate"):
        verdict = _certificate_verdict(lattice)
        if strategy == "certificate" or verdict.outcome == CERTIFIED:
            return verdict
        witness = is_rc(lattice)
        if witness is not None:
            fam = non_rc_family(lattice, witness)
            _verify_witness(lattice, fam)
            return SspVerdict(VIOLATED, None, fam, 1)
    outcome, witness, _, covered = _brute_force(lattice, budget, jobs, False)
    if outcome == VIOLATED:
        _verify_witness(lattice, witness)
        return SspVerdict(VIOLATED, None, witness, covered)
    if outcome == CERTIFIED:
        return SspVerdict(CERTIFIED, CERT_BRUTE, None, covered)
    return SspVerdict(INCONCLUSIVE, None, None, covered)


def violating_families(lattice, budget=DEFAULT_BUDGET, jobs=1):
    """Every family with |Str(F)| < |F|, sorted by (size, subset code).

    Exhaustive; raises BudgetExceeded when 2^n would not fit the budget.
    """
    if (1 << lattice.n) > budget:
        raise BudgetExceeded(
            f"2^{lattice.n} families exceed the budget of {budget}")
    outcome, _, violations, _ = _brute_force(lattice, budget, jobs, True)
    assert outcome == CERTIFIED or violations
    return sorted(violations, key=lambda f: (len(f), sum(1 << i for i in f)))


# ---------------------------------------------------------------------------
# antichain bound
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AntichainReport:
    antichain: frozenset
    family_size: int
    below_antichain: frozenset   # everything strictly below some antichain member
    bound_size: int


def antichain_check(lattice, antichain, family):
    """Bound |F| by the strict down-set of a maximal antichain A.

    Requires a nonvanishing Mobius function and that F shatters no element
    of A; then |F| <= |F_A| where F_A = {x : x < a for some a in A}, and
    F_A itself shatters no element of A.  Both conclusions are recomputed
    and a failure raises CheckFailed.
    """
    aset = frozenset(antichain)
    if not aset:
        raise NotMaximalAntichain("empty antichain is not maximal")
    for x in aset:
        for y in aset:
            if x != y and lattice.leq(x, y):
                raise NotMaximalAntichain(
                    f"{lattice.names[x]!r} < {lattice.names[y]!r}")
    for z in range(lattice.n):
        if z in aset:
            continue
        if not any(lattice.leq(z, a) or lattice.leq(a, z) for a in aset):
            raise NotMaximalAntichain(
                f"{lattice.names[z]!r} is incomparable to the whole antichain")
    if vanishing_pairs(lattice):
        raise PreconditionViolated("Mobius function vanishes on this lattice")
    fam = frozenset(family)
    for a in aset:
        if shatters(lattice, fam, a):
            raise PreconditionViolated(
                f"family shatters antichain element {lattice.names[a]!r}")
    below = 0
    for a in aset:
        below |= lattice.down[a] & ~(1 << a)
    fa = frozenset(_bits(below))
    if len(fam) > len(fa):
        raise CheckFailed("|F| > |F_A| despite the preconditions")
    for a in aset:
        if shatters(lattice, fa, a):
            raise CheckFailed("F_A shatters an antichain element")
    return AntichainReport(aset, len(fam), fa, len(fa))


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def product_ssp_witness(l_factor, k_factor, family, l_verdict=None,
                        k_verdict=None, prod=None, budget=DEFAULT_BUDGET):
    """Shattered set of size >= |F| for a family on the product K x L.

    ``family`` indexes ``product(k_factor, l_factor)``: pair (k, l) has
    index k * l_factor.n + l.  Per the potential construction, slice the
    family along K, shatter the slices in L, regroup along L and shatter in
    K; the disjoint union J of the results is returned after verifying that
    |J| >= |F| and that the family shatters every element of J.

    Both factors must come with a CertifiedSSP verdict (computed here with
    strategy "auto" when not supplied); otherwise FactorNotSSP is raised.
    """
    if l_verdict is None:
        l_verdict = is_ssp(l_factor, "auto", budget)
    if k_verdict is None:
        k_verdict = is_ssp(k_factor, "auto", budget)
    if l_verdict.outcome != CERTIFIED:
        raise FactorNotSSP("first factor is not verified SSP")
    if k_verdict.outcome != CERTIFIED:
        raise FactorNotSSP("second factor is not verified SSP")
    nl = l_factor.n
    nk = k_factor.n
    fam = frozenset(family)
    # F_k: the L-slice of the family over k; I_k = Str_L(F_k)
    slices = [shattered_set(l_factor,
                            [l for l in range(nl) if k * nl + l in fam])
              for k in range(nk)]
    # G_l: the K-fibre of the shattered slices; J_l = Str_K(G_l)
    j = set()
    for l in range(nl):
        fibre = [k for k in range(nk) if l in slices[k]]
        for k in shattered_set(k_factor, fibre):
            j.add(k * nl + l)
    if len(j) < len(fam):
        raise CheckFailed("|J| < |F| despite SSP factors")
    if prod is None:
        prod = product(k_factor, l_factor)
    for idx in j:
        if not shatters(prod, fam, idx):
            raise CheckFailed("family fails to shatter an element of J")
    return frozenset(j)


# ---------------------------------------------------------------------------
# unique minimal non-shattered element
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OneMinimalReport:
    x: int                      # the unique minimal non-shattered element
    y: int                      # no family member meets x at y
    not_shattered: frozenset    # N = the up-set of x
    meets_at_y: frozenset       # D = {u : x ^ u = y}, disjoint from the family
    injection: tuple            # (a, complement-of-x-in-[y, a]) pairs over N
    family_size: int
    shattered_size: int


def one_minimal_check(lattice, family):
    """Constructive |F| <= |Str(F)| when L\\Str(F) has one minimal element.

    Works on RC lattices: for the unique minimal non-shattered x, pick the
    first y <= x (linext order) that no family member meets x at, and map
    each a >= x to the first complement of x in [y, a].  The map is checked
    to be an injection from N into D = {u : x ^ u = y}, which forces
    |F| <= |L| - |D| <= |L| - |N| = |Str(F)|.
    """
    if lattice.join is None:
        raise NotALattice("complement construction needs joins")
    rc_witness = is_rc(lattice)
    if rc_witness is not None:
        raise NotRC(
            f"3-element interval ({lattice.names[rc_witness.x]}, "
            f"{lattice.names[rc_witness.z]}, {lattice.names[rc_witness.y]})")
    fam = frozenset(family)
    sset = shattered_set(lattice, fam)
    nset = frozenset(range(lattice.n)) - sset
    minimals = [u for u in nset
                if all(v == u or not lattice.leq(v, u) for v in nset)]
    if len(minimals) != 1:
        raise NotOneMinimal(
            f"{len(minimals)} minimal non-shattered elements")
    x = minimals[0]
    assert nset == lattice.upset(x)  # non-shattered sets are up-closed

    realized = {lattice.meet[u][x] for u in fam}
    y = next(c for c in lattice.linext
             if lattice.leq(c, x) and c not in realized)
    dset = frozenset(u for u in range(lattice.n) if lattice.meet[x][u] == y)
    if dset & fam:
        raise CheckFailed("D intersects the family despite the choice of y")

    injection = []
    used = set()
    for a in sorted(nset):
        comp = next((c for c in lattice.linext
                     if lattice.leq(y, c) and lattice.leq(c, a)
                     and lattice.meet[c][x] == y and lattice.join[c][x] == a),
                    None)
        if comp is None:
            raise CheckFailed(
                f"no complement of x in [y, {lattice.names[a]!r}]")
        if comp in used or comp not in dset:
            raise CheckFailed("complement map is not an injection into D")
        used.add(comp)
        injection.append((a, comp))

    if len(fam) > lattice.n - len(dset) or len(fam) > len(sset):
        raise CheckFailed("size chain |F| <= |L|-|D| <= |Str(F)| broke")
    return OneMinimalReport(
        x=x, y=y, not_shattered=nset, meets_at_y=dset,
        injection=tuple(injection), family_size=len(fam),
        shattered_size=len(sset))
