"""The amalgamation of A with B along an ideal J with respect to f: A -> B.

The carrier is {(a, f(a)+j) : a in A, j in J}, a subring of A x B.  Tables
are built from the closed multiplication rule

    (a1, f(a1)+j1) * (a2, f(a2)+j2) = (a1*a2, f(a1*a2) + f(a1)j2 + f(a2)j1 + j1j2)

rather than by subset closure; the projections pA and pB onto the two
coordinates are constructed *and validated* as ring homomorphisms, and the
pair map x -> (pA(x), pB(x)) is checked injective, which together is exactly
the statement that the direct-formula tables agree with the subring of the
product.  `product_embedding_check` additionally materializes A x B and
compares tables under the embedding (used as a test oracle on small cases).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    CapExceededError,
    InternalCheckError,
    MixedRingError,
    NotLocalError,
)
from .ideals import Ideal, ideal_product, jacobson_radical, maximal_ideals, nilradical
from .properties import is_local, is_reduced
from .rings import DEFAULT_SIZE_CAP, FiniteRing, RingHom, hom_identity, product, quotient


@dataclass(frozen=True)
class HypothesisReport:
    """Side conditions of the transfer statements, computed for one instance."""

    a_local: bool
    maximal_ideal_a: Ideal | None
    j_proper: bool
    j_nonzero: bool
    j_in_rad_b: bool
    j_in_zb: bool
    f_injective: bool
    fa_meet_j_zero: bool
    j_meet_nilp_zero: bool
    j_squared_zero: bool
    a_reduced: bool
    fa_j_stable: bool | None  # f(a)J = f(a)^2 J for all a in m; None when A not local


class AmalgamationInstance:
    """Bundle (A, B, f, J) together with the constructed ring and its maps."""

    def __init__(
        self,
        base: FiniteRing,
        target: FiniteRing,
        f: RingHom,
        j: Ideal,
        ring: FiniteRing,
        to_base: RingHom,
        to_target: RingHom,
        zero_j: Ideal,
        label: str,
    ):
        self.base = base
        self.target = target
        self.f = f
        self.j = j
        self.ring = ring
        self.to_base = to_base
        self.to_target = to_target
        self.zero_j = zero_j
        self.label = label

    @cached_property
    def hypotheses(self) -> HypothesisReport:
        return hypothesis_report(self)

    def __repr__(self) -> str:
        return f"AmalgamationInstance({self.label}, |R|={self.ring.size})"


def amalgamate(
    base: FiniteRing,
    target: FiniteRing,
    f: RingHom,
    j: Ideal,
    size_cap: int = DEFAULT_SIZE_CAP,
    label: str | None = None,
) -> AmalgamationInstance:
    """Construct base |><|^f j from a validated hom and an ideal of the target."""
    if f.source is not base or f.target is not target:
        raise MixedRingError("amalgamate: hom endpoints do not match the given rings")
    if j.ring is not target:
        raise MixedRingError("amalgamate: ideal does not live in the target ring")
    nj = len(j)
    size = base.size * nj
    if size > size_cap:
        raise CapExceededError(f"amalgamation would have {size} elements, cap is {size_cap}")

    jlist = j.indices
    jpos = np.full(target.size, -1, dtype=np.int64)
    jpos[jlist] = np.arange(nj)

    idx = np.arange(size)
    ia, ip = idx // nj, idx % nj
    jb = jlist[ip]

    a1, a2 = ia[:, None], ia[None, :]
    b1, b2 = jb[:, None], jb[None, :]

    jsum = jpos[target.add[b1, b2]]
    fmap = f.map.astype(np.int64)
    cross = target.add[
        target.add[target.mul[fmap[a1], b2], target.mul[fmap[a2], b1]],
        target.mul[b1, b2],
    ]
    jprod = jpos[cross]
    if jsum.min() < 0 or jprod.min() < 0:
        raise InternalCheckError("ideal not closed under the amalgamation rule")

    add = (base.add[a1, a2].astype(np.int64) * nj + jsum).astype(np.int32)
    mul = (base.mul[a1, a2].astype(np.int64) * nj + jprod).astype(np.int32)
    neg = (base.neg[ia].astype(np.int64) * nj + jpos[target.neg[jb]]).astype(np.int32)
    zero = int(base.zero * nj + jpos[target.zero])
    one = int(base.one * nj + jpos[target.zero])

    second = target.add[fmap[ia], jb]
    names = [
        f"({base.element_names[a]},{target.element_names[s]})" for a, s in zip(ia, second)
    ]
    if label is None:
        gens = ",".join(str(g) for g in j.generators())
        hom_tag = f.label or "hom"
        label = f"amalg({base.label},{target.label},{hom_tag};{gens})"

    ring = FiniteRing(size, add, mul, neg, zero, one, label, names)
    to_base = RingHom(ring, base, ia, label="pA")
    to_target = RingHom(ring, target, second, label="pB")
    pairs = to_base.map.astype(np.int64) * target.size + to_target.map
    if np.unique(pairs).size != size:
        raise InternalCheckError("amalgamation does not embed into the product")
    zero_j = Ideal(ring, base.zero * nj + np.arange(nj))
    if to_base.kernel().members != zero_j.members:
        raise InternalCheckError("kernel of pA differs from {0} x J")
    return AmalgamationInstance(base, target, f, j, ring, to_base, to_target, zero_j, label)


def duplication(ring: FiniteRing, ideal: Ideal, size_cap: int = DEFAULT_SIZE_CAP) -> AmalgamationInstance:
    """Amalgamated duplication: base = target, f = identity, J = the ideal."""
    gens = ",".join(str(g) for g in ideal.generators())
    return amalgamate(
        ring, ring, hom_identity(ring), ideal, size_cap, label=f"dup({ring.label};{gens})"
    )


def f_image_plus_j(target: FiniteRing, f: RingHom, j: Ideal) -> tuple[FiniteRing, RingHom]:
    """The subring f(A) + J of the target, with its inclusion map."""
    if f.target is not target or j.ring is not target:
        raise MixedRingError("f_image_plus_j: mismatched rings")
    img = np.unique(f.map)
    carrier = np.unique(target.add[np.ix_(img, j.indices)])
    pos = np.full(target.size, -1, dtype=np.int64)
    pos[carrier] = np.arange(carrier.size)
    sadd = pos[target.add[np.ix_(carrier, carrier)]]
    smul = pos[target.mul[np.ix_(carrier, carrier)]]
    if sadd.min() < 0 or smul.min() < 0:
        raise InternalCheckError("f(A) + J is not closed in the target")
    sneg = pos[target.neg[carrier]]
    names = [target.element_names[c] for c in carrier]
    sub = FiniteRing(
        carrier.size,
        sadd.astype(np.int32),
        smul.astype(np.int32),
        sneg.astype(np.int32),
        int(pos[target.zero]),
        int(pos[target.one]),
        f"subring(fimage+J;{target.label})",
        names,
    )
    inclusion = RingHom(sub, target, carrier, label="incl")
    return sub, inclusion


def distinguished_ideals(inst: AmalgamationInstance) -> tuple[Ideal, Ideal]:
    """({0} x J, m |><| J) for local base, with the factor-ring cross-check.

    The quotient by {0} x J must be canonically isomorphic to the base via
    the map induced by pA (first-isomorphism check, no isomorphism search).
    """
    m = is_local(inst.base)
    if m is None:
        raise NotLocalError(f"base ring {inst.base.label} is not local")
    nj = len(inst.j)
    m_join_j = Ideal(inst.ring, (m.indices[:, None] * nj + np.arange(nj)[None, :]).ravel())

    quot, proj = quotient(inst.ring, inst.zero_j)
    induced = np.full(quot.size, -1, dtype=np.int64)
    induced[proj.map] = inst.to_base.map
    if not (induced[proj.map] == inst.to_base.map).all():
        raise InternalCheckError("pA does not factor through the quotient by {0} x J")
    iso = RingHom(quot, inst.base, induced, label=None)
    if np.unique(iso.map).size != inst.base.size or quot.size != inst.base.size:
        raise InternalCheckError("induced map to the base is not bijective")
    return inst.zero_j, m_join_j


def hypothesis_report(inst: AmalgamationInstance) -> HypothesisReport:
    base, target, f, j = inst.base, inst.target, inst.f, inst.j
    m = is_local(base)
    rad = jacobson_radical(target)
    nilp = nilradical(target)

    fa_j_stable: bool | None = None
    if m is not None:
        fa_j_stable = True
        for a in m.indices:
            fa = int(f.map[a])
            fa2 = int(target.mul[fa, fa])
            left = set(int(v) for v in target.mul[fa, j.indices])
            right = set(int(v) for v in target.mul[fa2, j.indices])
            if left != right:
                fa_j_stable = False
                break

    image = frozenset(int(v) for v in np.unique(f.map))
    return HypothesisReport(
        a_local=m is not None,
        maximal_ideal_a=m,
        j_proper=j.is_proper,
        j_nonzero=not j.is_zero,
        j_in_rad_b=j.members <= rad.members,
        j_in_zb=bool(target.zero_divisor_mask[j.indices].all()),
        f_injective=f.is_injective,
        fa_meet_j_zero=(image & j.members) == {target.zero},
        j_meet_nilp_zero=(j.members & nilp.members) == {target.zero},
        j_squared_zero=ideal_product(j, j).is_zero,
        a_reduced=is_reduced(base),
        fa_j_stable=fa_j_stable,
    )


def amalg_max_ideals(inst: AmalgamationInstance) -> list[Ideal]:
    """Maximal ideals of the amalgamation, cross-checked against the
    classification {m |><| J : m max in A} union {pullbacks of max Q in B
    not containing J}; a mismatch is a hard error."""
    ring = inst.ring
    nj = len(inst.j)
    direct = {frozenset(m.members) for m in maximal_ideals(ring)}

    expected: set[frozenset[int]] = set()
    for m in maximal_ideals(inst.base):
        expected.add(
            frozenset(
                int(v) for v in (m.indices[:, None] * nj + np.arange(nj)[None, :]).ravel()
            )
        )
    for q in maximal_ideals(inst.target):
        if not inst.j.members <= q.members:
            pulled = np.nonzero(q.mask[inst.to_target.map])[0]
            expected.add(frozenset(int(v) for v in pulled))

    if direct != expected:
        raise InternalCheckError(
            f"maximal ideals of {inst.label} do not match the amalgamation classification"
        )
    out = [Ideal(ring, members) for members in direct]
    out.sort(key=lambda ide: (len(ide.members), tuple(sorted(ide.members))))
    return out


def product_embedding_check(inst: AmalgamationInstance, size_cap: int = DEFAULT_SIZE_CAP) -> bool:
    """Materialize A x B and verify the instance tables under the embedding.

    Test oracle for the direct-formula construction; quadratic in |A|*|B|,
    so meant for small instances.
    """
    prod = product(inst.base, inst.target, size_cap)
    phi = inst.to_base.map.astype(np.int64) * inst.target.size + inst.to_target.map
    if np.unique(phi).size != inst.ring.size:
        return False
    if not (prod.add[np.ix_(phi, phi)] == phi[inst.ring.add]).all():
        return False
    if not (prod.mul[np.ix_(phi, phi)] == phi[inst.ring.mul]).all():
        return False
    expected = set()
    nj = len(inst.j)
    for a in range(inst.base.size):
        fa = int(inst.f.map[a])
        for jp in range(nj):
            expected.add(a * inst.target.size + int(inst.target.add[fa, inst.j.indices[jp]]))
    return expected == set(int(v) for v in phi)
