"""Ideal arithmetic and ideal-lattice enumeration for finite commutative rings.

An ideal is stored as an explicit member set over the ring's index carrier.
Every constructor validates closure, so an `Ideal` in hand is always a real
ideal of its ring.  Enumeration of the full lattice is gated by a dedicated
cap (`DEFAULT_LATTICE_CAP`) because it is the superlinear hot spot; the
radical and zero-divisor computations work elementwise and need no cap.
"""
from __future__ import annotations

from typing import TYPE_CHECKING, Iterable

import numpy as np

from .errors import CapExceededError, MixedRingError, NotAnIdealError

if TYPE_CHECKING:  # pragma: no cover
    from .rings import FiniteRing

DEFAULT_LATTICE_CAP = 256

# Abort lattice enumeration once this many ideals have been found; rings with
# large square-zero socles have subspace-lattice blowups even at small carrier
# sizes, and callers fall back to lattice-free routes.
DEFAULT_MAX_IDEALS = 128


class Ideal:
    """An ideal of a finite commutative ring, given by its member set.

    Membership is validated at construction: contains zero, closed under
    addition, negation, and multiplication by every ring element.
    """

    __slots__ = ("ring", "members", "indices", "mask", "_generators")

    def __init__(self, ring: FiniteRing, members: Iterable[int], *, _validated: bool = False):
        self.ring = ring
        idx = np.unique(np.asarray(sorted(set(int(m) for m in members)), dtype=np.int64))
        if idx.size == 0 or idx.min() < 0 or idx.max() >= ring.size:
            raise NotAnIdealError(f"members out of range for ring of size {ring.size}")
        self.indices = idx
        self.indices.flags.writeable = False
        self.members = frozenset(int(i) for i in idx)
        mask = np.zeros(ring.size, dtype=bool)
        mask[idx] = True
        mask.flags.writeable = False
        self.mask = mask
        self._generators: tuple[int, ...] | None = None
        if not _validated:
            self._validate()

    def _validate(self) -> None:
        ring, idx, mask = self.ring, self.indices, self.mask
        if ring.zero not in self.members:
            raise NotAnIdealError("ideal must contain zero")
        if not mask[ring.neg[idx]].all():
            raise NotAnIdealError("member set not closed under negation")
        if not mask[ring.add[np.ix_(idx, idx)]].all():
            raise NotAnIdealError("member set not closed under addition")
        if not mask[ring.mul[:, idx]].all():
            raise NotAnIdealError("member set not closed under ring multiplication")

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, index: int) -> bool:
        return index in self.members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring is other.ring and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.ring), self.members))

    def __le__(self, other: Ideal) -> bool:
        _check_same_ring(self, other)
        return self.members <= other.members

    def __repr__(self) -> str:
        return f"Ideal({self.ring.label}, {format_members(self.members)})"

    @property
    def is_proper(self) -> bool:
        return len(self.members) < self.ring.size

    @property
    def is_zero(self) -> bool:
        return self.members == {self.ring.zero}

    @property
    def is_whole(self) -> bool:
        return len(self.members) == self.ring.size

    def generators(self) -> tuple[int, ...]:
        """Canonical generating set: greedy over ascending member indices."""
        if self._generators is not None:
            return self._generators
        ring = self.ring
        span = {ring.zero}
        gens: list[int] = []
        for x in sorted(self.members):
            if x not in span:
                gens.append(x)
                span = ideal_generated(ring, gens).members
        self._generators = tuple(gens)
        return self._generators


def format_members(members: frozenset[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(members)) + "}"


def _check_same_ring(a: Ideal, b: Ideal) -> None:
    if a.ring is not b.ring:
        raise MixedRingError("ideals belong to different rings")


def _additive_closure(ring: FiniteRing, seed: np.ndarray) -> np.ndarray:
    """Close a set (already closed under negation and ring action) under +."""
    cur = np.unique(seed)
    while True:
        nxt = np.unique(ring.add[np.ix_(cur, cur)])
        if nxt.size == cur.size:
            return nxt
        cur = nxt


def ideal_generated(ring: FiniteRing, gens: Iterable[int]) -> Ideal:
    """Smallest ideal containing `gens`.

    Computed as the additive closure of the set of ring multiples of the
    generators; that set is already closed under the ring action.
    """
    glist = sorted(set(int(g) for g in gens))
    if not glist:
        return Ideal(ring, [ring.zero], _validated=True)
    seed = np.concatenate([ring.mul[:, glist].ravel(), [ring.zero]])
    return Ideal(ring, _additive_closure(ring, seed), _validated=True)


def principal_ideal(ring: FiniteRing, x: int) -> Ideal:
    """The ideal of multiples of x (no closure pass needed)."""
    return Ideal(ring, np.unique(ring.mul[:, x]), _validated=True)


def ideal_sum(left: Ideal, right: Ideal) -> Ideal:
    _check_same_ring(left, right)
    ring = left.ring
    sums = ring.add[np.ix_(left.indices, right.indices)]
    return Ideal(ring, np.unique(sums), _validated=True)


def ideal_product(left: Ideal, right: Ideal) -> Ideal:
    _check_same_ring(left, right)
    ring = left.ring
    prods = ring.mul[np.ix_(left.indices, right.indices)].ravel()
    return Ideal(ring, _additive_closure(ring, prods), _validated=True)


def ideal_intersect(left: Ideal, right: Ideal) -> Ideal:
    _check_same_ring(left, right)
    return Ideal(left.ring, left.members & right.members, _validated=True)


def ideal_power(ideal: Ideal, k: int) -> Ideal:
    """k-fold ideal product; the zeroth power is the whole ring."""
    if k < 0:
        raise ValueError("ideal power requires k >= 0")
    ring = ideal.ring
    acc = Ideal(ring, range(ring.size), _validated=True)
    for _ in range(k):
        acc = ideal_product(acc, ideal)
    return acc


def annihilator(ring: FiniteRing, elements: Iterable[int]) -> Ideal:
    """{x : x*s = 0 for every s in elements}; the whole ring when empty."""
    elist = sorted(set(int(e) for e in elements))
    if not elist:
        return Ideal(ring, range(ring.size), _validated=True)
    ok = (ring.mul[:, elist] == ring.zero).all(axis=1)
    return Ideal(ring, np.nonzero(ok)[0], _validated=True)


def all_ideals(
    ring: FiniteRing,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
    max_ideals: int = DEFAULT_MAX_IDEALS,
) -> list[Ideal]:
    """Every ideal of the ring, sorted by size then membership.

    Principal ideals are closed under pairwise sums to a fixpoint; every
    ideal of a finite ring is a finite sum of principal ideals, so the
    result is complete.  Gated by `lattice_cap` on the carrier and
    `max_ideals` on the lattice itself.
    """
    if ring.size > lattice_cap:
        raise CapExceededError(
            f"ideal lattice enumeration needs |ring| <= {lattice_cap}, got {ring.size}"
        )
    cached = getattr(ring, "_ideal_lattice", None)
    if cached is not None:
        return list(cached)
    overflow = getattr(ring, "_ideal_lattice_overflow", None)
    if overflow is not None and overflow > max_ideals:
        raise CapExceededError(
            f"{ring.label} has {overflow}+ ideals, enumeration cap is {max_ideals}"
        )

    # distinct principal ideals; joining the frontier with these suffices
    principals: list[np.ndarray] = []
    seen: set[bytes] = set()
    for x in range(ring.size):
        arr = np.unique(ring.mul[:, x])
        key = arr.tobytes()
        if key not in seen:
            seen.add(key)
            principals.append(arr)
    join_gens = [p for p in principals if p.size > 1]

    arrays = list(principals)
    masks = []
    for arr in arrays:
        m = np.zeros(ring.size, dtype=bool)
        m[arr] = True
        masks.append(m)

    i = 0
    while i < len(arrays):
        if len(arrays) > max_ideals:
            ring._ideal_lattice_overflow = len(arrays)
            raise CapExceededError(
                f"{ring.label} has {len(arrays)}+ ideals, enumeration cap is {max_ideals}"
            )
        base, base_mask = arrays[i], masks[i]
        for gen in join_gens:
            if base_mask[gen].all():
                continue
            s = np.unique(ring.add[np.ix_(base, gen)])
            key = s.tobytes()
            if key not in seen:
                seen.add(key)
                arrays.append(s)
                m = np.zeros(ring.size, dtype=bool)
                m[s] = True
                masks.append(m)
        i += 1

    ideals = [Ideal(ring, arr, _validated=True) for arr in arrays]
    ideals.sort(key=lambda ide: (len(ide.members), tuple(sorted(ide.members))))
    ring._ideal_lattice = tuple(ideals)
    return ideals


def maximal_ideals(ring: FiniteRing) -> list[Ideal]:
    """Maximal ideals, one per local factor of the ring.

    Computed directly from the primitive-idempotent decomposition (the
    maximal ideals of a finite commutative ring are the pullbacks of the
    non-units of its local factors), so no lattice cap applies.  Order
    follows the factor order (ascending idempotent index).
    """
    cached = getattr(ring, "_maximal_ideals", None)
    if cached is not None:
        return list(cached)
    out = []
    for factor, proj in ring.local_factors:
        nonunit = ~factor.units_mask[proj.map]
        out.append(Ideal(ring, np.nonzero(nonunit)[0], _validated=True))
    ring._maximal_ideals = tuple(out)
    return out


def jacobson_radical(ring: FiniteRing) -> Ideal:
    """Intersection of the maximal ideals (the whole ring if there are none)."""
    mask = np.ones(ring.size, dtype=bool)
    for m in maximal_ideals(ring):
        mask &= m.mask
    return Ideal(ring, np.nonzero(mask)[0], _validated=True)


def nilradical(ring: FiniteRing) -> Ideal:
    return Ideal(ring, np.nonzero(ring.nilpotent_mask)[0], _validated=True)


def zero_divisors(ring: FiniteRing) -> frozenset[int]:
    """{x : x*y = 0 for some y != 0}; includes 0 whenever the ring is nonzero."""
    return frozenset(int(i) for i in np.nonzero(ring.zero_divisor_mask)[0])


def regular_elements(ring: FiniteRing) -> frozenset[int]:
    return frozenset(int(i) for i in np.nonzero(~ring.zero_divisor_mask)[0])


def is_regular_ideal(ideal: Ideal) -> bool:
    """True when the ideal contains at least one non-zero-divisor."""
    return bool((~ideal.ring.zero_divisor_mask[ideal.indices]).any())


def lattice_tables(
    ring: FiniteRing,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
    max_ideals: int = DEFAULT_MAX_IDEALS,
) -> tuple[list[Ideal], np.ndarray, np.ndarray]:
    """(all ideals, meet table, join table) as index tables over the lattice.

    Joins and meets are located through the containment matrix: the join of
    two ideals is the smallest ideal containing both, the meet the largest
    contained in both; `all_ideals` returns the lattice sorted by size, so
    a first/last scan along that order finds them.
    """
    lattice = all_ideals(ring, lattice_cap, max_ideals)
    n = len(lattice)
    mask_mat = np.stack([ide.mask for ide in lattice]).astype(np.int32)
    # contains[i, j] iff ideal i is a subset of ideal j
    overlap_violation = mask_mat @ (1 - mask_mat).T
    contains = overlap_violation == 0

    both_above = contains[:, None, :] & contains[None, :, :]
    join = both_above.argmax(axis=2).astype(np.int32)
    below = contains.T
    both_below = below[:, None, :] & below[None, :, :]
    meet = (n - 1 - both_below[:, :, ::-1].argmax(axis=2)).astype(np.int32)
    return lattice, meet, join


def is_distributive_lattice(
    ring: FiniteRing,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
    max_ideals: int = DEFAULT_MAX_IDEALS,
) -> tuple[bool, tuple[Ideal, Ideal, Ideal] | None]:
    """Check I /\\ (J + K) == (I /\\ J) + (I /\\ K) over all ideal triples.

    Returns (True, None) or (False, witness_triple), the witness being the
    first failing triple in the canonical lattice order.
    """
    lattice, meet, join = lattice_tables(ring, lattice_cap, max_ideals)
    for i in range(len(lattice)):
        lhs = meet[i][join]
        rhs = join[np.ix_(meet[i], meet[i])]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            j, k = (int(v) for v in bad[0])
            return False, (lattice[i], lattice[j], lattice[k])
    return True, None
