"""Anchor decompositions around an induced five-cycle or seven-vertex anchor.

Every vertex outside an anchor is classified by its neighborhood pattern on
the anchor; in the target hereditary class the classification is total, and a
battery of adjacency properties between the classes holds. Index arithmetic
is modulo 5 for cycle anchors and modulo 6 for ring anchors throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import UnclassifiableVertex
from .graph import Graph, bits
from .patterns import Witness, enumerate_induced, find_induced, matches_pattern


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def first_internal_edge(g: Graph, mask: int) -> tuple[int, int] | None:
    for u in bits(mask):
        hit = g.rows[u] & mask & ~((1 << (u + 1)) - 1)
        if hit:
            return u, (hit & -hit).bit_length() - 1
    return None


def first_cross_edge(g: Graph, amask: int, bmask: int) -> tuple[int, int] | None:
    """First adjacent (a, b) pair across two disjoint masked sets."""
    for a in bits(amask):
        hit = g.rows[a] & bmask
        if hit:
            return a, (hit & -hit).bit_length() - 1
    return None


def first_missing_cross(g: Graph, amask: int, bmask: int) -> tuple[int, int] | None:
    """First nonadjacent (a, b) pair across two disjoint masked sets."""
    for a in bits(amask):
        missing = bmask & ~g.rows[a]
        if missing:
            return a, (missing & -missing).bit_length() - 1
    return None


# -- partitions ----------------------------------------------------------------


@dataclass(frozen=True)
class C5Partition:
    """Decomposition of a graph around a distinguished induced five-cycle."""

    cycle: tuple[int, ...]
    Z: frozenset[int]
    R: tuple[frozenset[int], ...]  # R[i]: cycle neighborhood {i-1, i+1}
    Y: tuple[frozenset[int], ...]  # Y[i]: cycle neighborhood {i-2, i, i+2}
    F: tuple[frozenset[int], ...]  # F[i]: all cycle vertices except i
    U: frozenset[int]              # complete to the cycle


@dataclass(frozen=True)
class H1Partition:
    """Decomposition around a seven-vertex anchor (ring complement plus hub).

    The hub vertex itself lands in W, which collects every vertex sharing its
    ring neighborhood.
    """

    anchor: tuple[int, ...]        # ring roles 0..5 then the hub
    Z: frozenset[int]
    D: tuple[frozenset[int], ...]  # D[i]: ring neighborhood {i, i+1}
    T: tuple[frozenset[int], ...]  # T[i]: {i-1, i, i+1}
    F: tuple[frozenset[int], ...]  # F[i]: {i-1, i, i+1, i+2}
    W: frozenset[int]              # ring neighborhood {0, 1, 3, 4}


def _build_c5_table() -> dict[int, tuple[str, int]]:
    full = (1 << 5) - 1
    table = {0: ("Z", 0)}
    for i in range(5):
        table[(1 << (i - 1) % 5) | (1 << (i + 1) % 5)] = ("R", i)
        table[(1 << (i - 2) % 5) | (1 << i) | (1 << (i + 2) % 5)] = ("Y", i)
        table[full ^ (1 << i)] = ("F", i)
    table[full] = ("U", 0)
    return table


def _build_h1_table() -> dict[int, tuple[str, int]]:
    table = {0: ("Z", 0)}
    for i in range(6):
        table[(1 << i) | (1 << (i + 1) % 6)] = ("D", i)
        table[(1 << (i - 1) % 6) | (1 << i) | (1 << (i + 1) % 6)] = ("T", i)
        table[
            (1 << (i - 1) % 6) | (1 << i) | (1 << (i + 1) % 6) | (1 << (i + 2) % 6)
        ] = ("F", i)
    table[0b011011] = ("W", 0)
    return table


_C5_TABLE = _build_c5_table()
_H1_TABLE = _build_h1_table()


def _classify(g: Graph, anchor: tuple[int, ...], table, buckets) -> None:
    k = len(anchor)
    anchor_mask = mask_of(anchor)
    for v in range(g.n):
        if (anchor_mask >> v) & 1:
            continue
        profile = 0
        row = g.rows[v]
        for r in range(k):
            if (row >> anchor[r]) & 1:
                profile |= 1 << r
        entry = table.get(profile)
        if entry is None:
            raise UnclassifiableVertex(v, [anchor[r] for r in bits(profile)])
        kind, idx = entry
        buckets[kind][idx].add(v)


def c5_partition(g: Graph, cycle: Witness | tuple[int, ...]) -> C5Partition:
    """Classify every vertex outside an induced five-cycle.

    Raises UnclassifiableVertex if some neighborhood matches no class, which
    certifies the graph is outside the class.
    """
    cyc = tuple(cycle.vertices if isinstance(cycle, Witness) else cycle)
    if not matches_pattern(g, Witness("C5", cyc)):
        raise ValueError(f"{cyc} is not an induced five-cycle in role order")
    buckets = {
        "Z": [set()],
        "R": [set() for _ in range(5)],
        "Y": [set() for _ in range(5)],
        "F": [set() for _ in range(5)],
        "U": [set()],
    }
    _classify(g, cyc[:5], _C5_TABLE, buckets)
    return C5Partition(
        cycle=cyc,
        Z=frozenset(buckets["Z"][0]),
        R=tuple(frozenset(s) for s in buckets["R"]),
        Y=tuple(frozenset(s) for s in buckets["Y"]),
        F=tuple(frozenset(s) for s in buckets["F"]),
        U=frozenset(buckets["U"][0]),
    )


def h1_partition(g: Graph, anchor: Witness | tuple[int, ...]) -> H1Partition:
    """Classify every vertex outside the six-vertex ring of the anchor."""
    anc = tuple(anchor.vertices if isinstance(anchor, Witness) else anchor)
    if not matches_pattern(g, Witness("H1", anc)):
        raise ValueError(f"{anc} is not an induced H1 in role order")
    buckets = {
        "Z": [set()],
        "D": [set() for _ in range(6)],
        "T": [set() for _ in range(6)],
        "F": [set() for _ in range(6)],
        "W": [set()],
    }
    _classify(g, anc[:6], _H1_TABLE, buckets)
    return H1Partition(
        anchor=anc,
        Z=frozenset(buckets["Z"][0]),
        D=tuple(frozenset(s) for s in buckets["D"]),
        T=tuple(frozenset(s) for s in buckets["T"]),
        F=tuple(frozenset(s) for s in buckets["F"]),
        W=frozenset(buckets["W"][0]),
    )


# -- anchor symmetries ---------------------------------------------------------
#
# Each permutation below is an automorphism of the relevant anchor pattern,
# recorded as a witness-position table: relabeled[i] = witness[perm[i]].

H1_AUTOMORPHISMS: tuple[tuple[int, ...], ...] = (
    (0, 1, 2, 3, 4, 5, 6),
    (3, 4, 5, 0, 1, 2, 6),  # half-turn of the ring (fixes the hub neighborhood)
    (1, 0, 5, 4, 3, 2, 6),  # reflection fixing the pairs {0,1} and {3,4}
    (4, 3, 2, 1, 0, 5, 6),  # their composition
)

H2_CYCLE_REFLECTION: tuple[int, ...] = (3, 2, 1, 0, 4)  # swaps roles 0/3 and 1/2


def permute(vertices: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(vertices[p] for p in perm)


def rotate_cycle(cycle: tuple[int, ...], shift: int) -> tuple[int, ...]:
    k = len(cycle)
    return tuple(cycle[(i + shift) % k] for i in range(k))


# -- extremal anchor selection ---------------------------------------------------

_H1_TF_PROFILES = tuple(
    [mask_of(((i - 1) % 6, i, (i + 1) % 6)) for i in range(6)]
    + [mask_of(((i - 1) % 6, i, (i + 1) % 6, (i + 2) % 6)) for i in range(6)]
)


def select_best_h1(g: Graph) -> tuple[Witness, H1Partition] | None:
    """Anchor maximizing |T|+|F|, ties by lexicographically smallest witness."""
    full = (1 << g.n) - 1
    best_key = None
    best = None
    for w in enumerate_induced(g, "H1"):
        ring_rows = [g.rows[v] for v in w.vertices[:6]]
        outside = full & ~mask_of(w.vertices)
        score = 0
        for profile in _H1_TF_PROFILES:
            m = outside
            for r in range(6):
                m &= ring_rows[r] if (profile >> r) & 1 else full & ~ring_rows[r]
            score += m.bit_count()
        key = (-score, w.vertices)
        if best_key is None or key < best_key:
            best_key, best = key, w
    if best is None:
        return None
    return best, h1_partition(g, best)


def apex_cycle(witness: Witness) -> tuple[int, ...]:
    """Reanchor an H2 witness so its apex misses exactly cycle role 4."""
    v = witness.vertices
    return (v[1], v[2], v[3], v[4], v[0])


def select_best_h2(g: Graph) -> tuple[Witness, C5Partition] | None:
    """Anchor lexicographically minimizing (|U|, |F[4]|), first witness on ties.

    The returned partition is anchored on the witness cycle rotated so that
    the apex sits in F[4].
    """
    full = (1 << g.n) - 1
    best_key = None
    best = None
    best_cycle = None
    for w in enumerate_induced(g, "H2"):
        cyc = apex_cycle(w)
        rows = [g.rows[c] for c in cyc]
        outside = full & ~mask_of(cyc)
        u_mask = outside
        for r in rows:
            u_mask &= r
        f5_mask = outside & rows[0] & rows[1] & rows[2] & rows[3] & (full & ~rows[4])
        key = (u_mask.bit_count(), f5_mask.bit_count())
        if best_key is None or key < best_key:
            best_key, best, best_cycle = key, w, cyc
    if best is None:
        return None
    return best, c5_partition(g, best_cycle)


# -- property reports ------------------------------------------------------------


@dataclass(frozen=True)
class PropertyCheck:
    prop: str
    holds: bool
    counterexample: tuple[int, ...] | None = None


@dataclass(frozen=True)
class PropertyReport:
    checks: tuple[PropertyCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> tuple[PropertyCheck, ...]:
        return tuple(c for c in self.checks if not c.holds)


class _Report:
    def __init__(self):
        self.checks: list[PropertyCheck] = []

    def add(self, prop: str, counterexample: tuple[int, ...] | None) -> None:
        self.checks.append(PropertyCheck(prop, counterexample is None, counterexample))

    def done(self) -> PropertyReport:
        return PropertyReport(tuple(self.checks))


def check_c5_properties(g: Graph, part: C5Partition) -> PropertyReport:
    """Evaluate the thirteen structural properties of a five-cycle partition."""
    rep = _Report()
    Z = mask_of(part.Z)
    U = mask_of(part.U)
    R = [mask_of(s) for s in part.R]
    Y = [mask_of(s) for s in part.Y]
    F = [mask_of(s) for s in part.F]

    def any5(fn):
        for i in range(5):
            bad = fn(i)
            if bad is not None:
                return bad
        return None

    rep.add("z_r_independent", any5(lambda i: first_internal_edge(g, Z | R[i])))
    rep.add(
        "u_y_f_independent",
        any5(lambda i: first_internal_edge(g, U | Y[i]) or first_internal_edge(g, U | F[i])),
    )
    rep.add("r_next_complete", any5(lambda i: first_missing_cross(g, R[i], R[(i + 1) % 5])))
    rep.add("y_next_complete", any5(lambda i: first_missing_cross(g, Y[i], Y[(i + 1) % 5])))
    rep.add("r_y_same_complete", any5(lambda i: first_missing_cross(g, R[i], Y[i])))

    def cross_exclusion(i):
        e1 = first_cross_edge(g, R[i], Y[(i + 1) % 5])
        e2 = first_cross_edge(g, R[(i + 1) % 5], Y[i])
        return e1 + e2 if e1 and e2 else None

    rep.add("r_y_cross_exclusion", any5(cross_exclusion))

    def y_far_choice(i):
        for y in bits(Y[i]):
            a = g.rows[y] & Y[(i - 2) % 5]
            b = g.rows[y] & Y[(i + 2) % 5]
            if a and b:
                return (y, (a & -a).bit_length() - 1, (b & -b).bit_length() - 1)
        return None

    rep.add("y_vertex_far_choice", any5(y_far_choice))
    rep.add(
        "f_y_adjacency",
        any5(
            lambda i: first_missing_cross(g, F[i], Y[(i - 2) % 5] | Y[(i + 2) % 5])
            or first_cross_edge(g, F[i], Y[(i - 1) % 5] | Y[i] | Y[(i + 1) % 5])
        ),
    )
    rep.add("f_r_complete", any5(lambda i: first_missing_cross(g, F[i], R[(i - 1) % 5] | R[(i + 1) % 5])))
    if U:
        rep.add("u_forces_y_far_anticomplete", any5(lambda i: first_cross_edge(g, Y[i], Y[(i + 2) % 5])))
    else:
        rep.add("u_forces_y_far_anticomplete", None)

    def f_far(i):
        a, b = part.F[i], part.F[(i + 2) % 5]
        return (min(a), min(b)) if a and b else None

    rep.add("f_far_exclusion", any5(f_far))
    if find_induced(g, "H1") is None:

        def f_forces(i):
            if not F[i]:
                return None
            return first_cross_edge(g, R[(i + 1) % 5], Y[(i + 2) % 5] | Y[i]) or first_cross_edge(
                g, R[(i - 1) % 5], Y[(i - 2) % 5] | Y[i]
            )

        rep.add("f_forces_r_y_anticomplete", any5(f_forces))
    else:
        rep.add("f_forces_r_y_anticomplete", None)

    def r_y_choice(i):
        for r in bits(R[i]):
            row = g.rows[r]
            up1, up2 = row & Y[(i + 1) % 5], row & Y[(i + 2) % 5]
            if up1 and up2:
                return (r, (up1 & -up1).bit_length() - 1, (up2 & -up2).bit_length() - 1)
            dn1, dn2 = row & Y[(i - 1) % 5], row & Y[(i - 2) % 5]
            if dn1 and dn2:
                return (r, (dn1 & -dn1).bit_length() - 1, (dn2 & -dn2).bit_length() - 1)
        return None

    rep.add("r_vertex_y_choice", any5(r_y_choice))
    return rep.done()


def check_h1_properties(g: Graph, part: H1Partition) -> PropertyReport:
    """Evaluate the ring-anchor adjacency properties and emptiness claims.

    The existence/emptiness claims presume the anchor came from
    select_best_h1 on a connected core with no comparable pair.
    """
    rep = _Report()
    Z = mask_of(part.Z)
    W = mask_of(part.W)
    D = [mask_of(s) for s in part.D]
    T = [mask_of(s) for s in part.T]
    F = [mask_of(s) for s in part.F]
    D_all = mask_of(set().union(*part.D))
    T_all = mask_of(set().union(*part.T))
    F_all = mask_of(set().union(*part.F))

    def any6(fn):
        for i in range(6):
            bad = fn(i)
            if bad is not None:
                return bad
        return None

    rep.add("w_z_anticomplete", first_cross_edge(g, W, Z))

    def w_d(i):
        if i in (0, 3):
            return first_cross_edge(g, W, D[i])
        return first_missing_cross(g, W, D[i])

    rep.add("w_d_adjacency", any6(w_d))

    def w_t(i):
        if i in (2, 5):
            return first_cross_edge(g, W, T[i])
        return first_missing_cross(g, W, T[i])

    rep.add("w_t_adjacency", any6(w_t))

    def w_f(i):
        if i in (0, 3):
            return first_missing_cross(g, W, F[i])
        return first_cross_edge(g, W, F[i])

    rep.add("w_f_adjacency", any6(w_f))
    rep.add("z_attachment", first_cross_edge(g, Z, D_all | T_all | (F_all & ~F[0] & ~F[3])))
    rep.add("z_empty", (min(part.Z),) if part.Z else None)
    rep.add(
        "d_d_adjacency",
        any6(
            lambda i: first_cross_edge(g, D[i], D[(i + 1) % 6])
            or first_missing_cross(g, D[i], D[(i + 2) % 6])
            or first_cross_edge(g, D[i], D[(i + 3) % 6])
        ),
    )
    rep.add(
        "f_f_adjacency",
        any6(
            lambda i: first_cross_edge(g, F[i], F[(i + 1) % 6])
            or first_missing_cross(g, F[i], F[(i + 2) % 6])
            or first_cross_edge(g, F[i], F[(i + 3) % 6])
        ),
    )
    rep.add(
        "t_adjacent_pairs_anticomplete",
        first_cross_edge(g, T[0], T[1]) or first_cross_edge(g, T[3], T[4]),
    )
    rep.add(
        "t_hub_sides_complete",
        first_missing_cross(g, T[2], T[0] | T[4]) or first_missing_cross(g, T[5], T[1] | T[3]),
    )
    rep.add(
        "t_opposite_complete",
        next((e for i in range(3) if (e := first_missing_cross(g, T[i], T[(i + 3) % 6]))), None),
    )

    def d_t(i):
        return first_cross_edge(
            g, D[i], T[(i - 1) % 6] | T[i] | T[(i + 1) % 6] | T[(i + 2) % 6]
        ) or first_missing_cross(g, D[i], T[(i + 3) % 6] | T[(i + 4) % 6])

    rep.add("d_t_adjacency", any6(d_t))

    def f_t(i):
        return first_cross_edge(g, F[i], T[i] | T[(i + 1) % 6]) or first_missing_cross(
            g, F[i], T[(i + 3) % 6] | T[(i + 4) % 6]
        )

    rep.add("f_t_adjacency", any6(f_t))
    rep.add(
        "f_t_extra_complete",
        first_missing_cross(g, F[1], T[0])
        or first_missing_cross(g, F[4], T[3])
        or first_missing_cross(g, F[2], T[4])
        or first_missing_cross(g, F[5], T[1]),
    )

    _DF = {
        0: ((5, 1), (3,)),
        3: ((2, 4), (0,)),
        1: ((0,), (4, 5)),
        2: ((3,), (4, 5)),
        5: ((0,), (1, 2)),
        4: ((3,), (1, 2)),
    }

    def d_f(i):
        anti, comp = _DF[i]
        for j in anti:
            e = first_cross_edge(g, D[i], F[j])
            if e:
                return e
        for j in comp:
            e = first_missing_cross(g, D[i], F[j])
            if e:
                return e
        return None

    rep.add("d_f_adjacency", any6(d_f))

    # Emptiness / exchange claims tied to the extremal anchor choice.
    rep.add(
        "claim_d_opposite_empty",
        (min(part.D[0]), min(part.D[3])) if part.D[0] and part.D[3] else None,
    )

    def nonneighbor_exchange():
        for a, b in ((0, 4), (4, 0), (1, 3), (3, 1)):
            for t in bits(T[a]):
                if part.T[b] and T[b] & ~g.rows[t] == 0:
                    return (t,)
        return None

    rep.add("claim_t_nonneighbor_exchange", nonneighbor_exchange())

    def neighbor_exists():
        for t in bits(T[5]):
            if g.rows[t] & (T[0] | T[4]) == 0:
                return (t,)
        for t in bits(T[2]):
            if g.rows[t] & (T[1] | T[3]) == 0:
                return (t,)
        return None

    rep.add("claim_t_neighbor_exists", neighbor_exists())

    def d_forces_t_complete():
        if D[4] | D[5]:
            e = first_missing_cross(g, T[1], T[3])
            if e:
                return e
        if D[1] | D[2]:
            e = first_missing_cross(g, T[0], T[4])
            if e:
                return e
        return None

    rep.add("claim_d_forces_t_complete", d_forces_t_complete())

    def f_run_empty():
        if part.F[5] and part.F[0] and part.F[1]:
            return (min(part.F[5]), min(part.F[0]), min(part.F[1]))
        if part.F[2] and part.F[3] and part.F[4]:
            return (min(part.F[2]), min(part.F[3]), min(part.F[4]))
        return None

    rep.add("claim_f_run_empty", f_run_empty())
    return rep.done()


def check_h2_properties(g: Graph, part: C5Partition, apex: int) -> PropertyReport:
    """Evaluate the apex-anchor properties; apex must sit in part.F[4].

    Properties tied to the apex split are evaluated only when U is empty, as
    they are stated in that regime.
    """
    rep = _Report()
    Z = mask_of(part.Z)
    U = mask_of(part.U)
    R = [mask_of(s) for s in part.R]
    Y = [mask_of(s) for s in part.Y]
    F5 = mask_of(part.F[4])

    def any5(fn):
        for i in range(5):
            bad = fn(i)
            if bad is not None:
                return bad
        return None

    rep.add("u_r_complete", any5(lambda i: first_missing_cross(g, U, R[i])))
    if U:
        rep.add("u_forces_r_far_anticomplete", any5(lambda i: first_cross_edge(g, R[i], R[(i + 2) % 5])))
        return rep.done()
    rep.add("u_forces_r_far_anticomplete", None)

    def f5_clean():
        for r in bits(R[1] | R[2]):
            hit = g.rows[r] & F5
            if hit and hit != F5:
                miss = F5 & ~g.rows[r]
                return (r, (miss & -miss).bit_length() - 1)
        return None

    rep.add("r_f5_all_or_nothing", f5_clean())
    rep.add("f5_singleton", None if part.F[4] == {apex} else tuple(sorted(part.F[4])))
    rep.add("y5_nonempty", None if part.Y[4] else (part.cycle[4],))

    frow = g.rows[apex]
    Rp = [R[i] & frow for i in range(5)]
    Rpp = [R[i] & ~frow for i in range(5)]
    rep.add(
        "r2pp_or_r3pp_empty",
        None
        if not Rpp[1] or not Rpp[2]
        else ((Rpp[1] & -Rpp[1]).bit_length() - 1, (Rpp[2] & -Rpp[2]).bit_length() - 1),
    )
    rep.add("rp5_rp_anticomplete", first_cross_edge(g, Rp[4], Rp[1] | Rp[2]))
    rep.add("rp5_y_anticomplete", first_cross_edge(g, Rp[4], Y[1] | Y[2]))
    rep.add(
        "rp_far_r_anticomplete",
        first_cross_edge(g, Rp[1], R[3]) or first_cross_edge(g, Rp[2], R[0]),
    )
    rep.add("rpp5_rpp_anticomplete", first_cross_edge(g, Rpp[4], Rpp[1] | Rpp[2]))
    rep.add("y5_rpp_anticomplete", first_cross_edge(g, Y[4], Rpp[1] | Rpp[2]))
    rep.add("rpp5_y_anticomplete", first_cross_edge(g, Rpp[4], Y[0] | Y[3]))
    rep.add(
        "rpp_near_y_anticomplete",
        first_cross_edge(g, Rpp[1], Y[0]) or first_cross_edge(g, Rpp[2], Y[3]),
    )
    rep.add(
        "rp_far_y_anticomplete",
        first_cross_edge(g, Rp[1], Y[2]) or first_cross_edge(g, Rp[2], Y[1]),
    )
    rep.add("y5_rp_complete", first_missing_cross(g, Y[4], Rp[1] | Rp[2]))

    def z_y_choice():
        for z in bits(Z):
            if g.rows[z] & Y[1] and g.rows[z] & Y[2]:
                return (z,)
        return None

    rep.add("z_y_choice", z_y_choice())

    def z_nonneighbor_y_complete():
        for z in bits(Z):
            reach = g.rows[z]
            for i in range(5):
                for y in bits(Y[i] & ~reach):
                    missing = reach & ~Y[i] & ~g.rows[y] & ~(1 << y)
                    if missing:
                        return (z, y, (missing & -missing).bit_length() - 1)
        return None

    rep.add("z_nonneighbor_y_complete", z_nonneighbor_y_complete())

    def z_forces_y_empty():
        for i in (1, 2):
            if not Y[i]:
                continue
            for z in bits(Z):
                if g.rows[z] & Y[i] == 0:
                    return (z, (Y[i] & -Y[i]).bit_length() - 1)
        return None

    rep.add("z_anticomplete_forces_y_empty", z_forces_y_empty())
    return rep.done()
