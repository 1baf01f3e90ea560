"""Root group coordinates and the unipotent group U+ = U1 U2 U3 U4.

U1 and U3 are copies of the additive group L' x L' x K, U2 and U4 of
L x L x K'.  The defining commutation relations (numbered (1)-(4) in
the README's relation table) say consecutive root groups commute,
[U1,U3] lands in U2, [U2,U4] lands in U3, and [U1,U4] spreads over
U2 U3.  Every element then has a unique normal form g1 g2 g3 g4, and
multiplication is collection: pull the right factor's components
leftward, emitting commutator corrections as they cross.

Commutator bookkeeping is pleasantly degenerate in characteristic 2:
each root group is elementary abelian, so every root element is its own
inverse, and the U2/U3-valued corrections for [g,h] and [h,g] coincide.

A debug switch reroutes the [U2,U4] correction into U2 instead of U3
(the untenable reading of relation (3)); under it no consistent
collection exists, so a one-level truncation is used and associativity
demonstrably fails.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldInstance, KElem, LElem, kprime_member, kscale


class InternalConsistencyError(AssertionError):
    """A structural invariant of the coordinate algebra failed."""


@dataclass(frozen=True)
class R1Coord:
    """Coordinates of U1/U3: (x, y, b) in L' x L' x K."""
    x: LElem
    y: LElem
    b: KElem

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero() and self.b.is_zero()

    def __add__(self, other: "R1Coord") -> "R1Coord":
        return R1Coord(self.x + other.x, self.y + other.y, self.b + other.b)

    def __str__(self) -> str:
        return f"({self.x}, {self.y}, {self.b})"


@dataclass(frozen=True)
class R2Coord:
    """Coordinates of U2/U4: (u, v, a) in L x L x K'."""
    u: LElem
    v: LElem
    a: KElem

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero() and self.a.is_zero()

    def __add__(self, other: "R2Coord") -> "R2Coord":
        return R2Coord(self.u + other.u, self.v + other.v, self.a + other.a)

    def __str__(self) -> str:
        return f"({self.u}, {self.v}, {self.a})"


@dataclass(frozen=True)
class UPlusElem:
    """Normal form g1 g2 g3 g4; equality is component-wise."""
    g1: R1Coord
    g2: R2Coord
    g3: R1Coord
    g4: R2Coord

    def is_identity(self) -> bool:
        return (self.g1.is_zero() and self.g2.is_zero()
                and self.g3.is_zero() and self.g4.is_zero())

    def __str__(self) -> str:
        return f"{self.g1}_1 {self.g2}_2 {self.g3}_3 {self.g4}_4"


class UPlus:
    """The unipotent group attached to a field instance."""

    def __init__(self, inst: FieldInstance, eq3_slot: int = 3,
                 checked: bool = True):
        if eq3_slot not in (2, 3):
            raise ValueError("eq3_slot must be 2 or 3")
        self.inst = inst
        self.eq3_slot = eq3_slot
        self.checked = checked
        zr1 = R1Coord(LElem.zero(), LElem.zero(), KElem.zero())
        zr2 = R2Coord(LElem.zero(), LElem.zero(), KElem.zero())
        self.r1_zero = zr1
        self.r2_zero = zr2
        self.identity = UPlusElem(zr1, zr2, zr1, zr2)

    # -- coordinate validation ------------------------------------------------

    def check_r1(self, c: R1Coord, where: str = "") -> R1Coord:
        if self.checked:
            if not (self.inst.lprime_member(c.x) and self.inst.lprime_member(c.y)):
                raise InternalConsistencyError(
                    f"U1/U3 coordinate outside L' {where}: {c}")
        return c

    def check_r2(self, c: R2Coord, where: str = "") -> R2Coord:
        if self.checked:
            if not kprime_member(c.a):
                raise InternalConsistencyError(
                    f"U2/U4 coordinate outside K' {where}: {c}")
        return c

    # -- pure elements ----------------------------------------------------------

    def pure1(self, c: R1Coord) -> UPlusElem:
        return UPlusElem(c, self.r2_zero, self.r1_zero, self.r2_zero)

    def pure2(self, c: R2Coord) -> UPlusElem:
        return UPlusElem(self.r1_zero, c, self.r1_zero, self.r2_zero)

    def pure3(self, c: R1Coord) -> UPlusElem:
        return UPlusElem(self.r1_zero, self.r2_zero, c, self.r2_zero)

    def pure4(self, c: R2Coord) -> UPlusElem:
        return UPlusElem(self.r1_zero, self.r2_zero, self.r1_zero, c)

    def r1(self, x: LElem, y: LElem, b: KElem) -> R1Coord:
        return self.check_r1(R1Coord(x, y, b))

    def r2(self, u: LElem, v: LElem, a: KElem) -> R2Coord:
        return self.check_r2(R2Coord(u, v, a))

    # -- the commutator maps -----------------------------------------------------

    def comm13(self, p: R1Coord, q: R1Coord) -> R2Coord:
        """[U1, U3] correction, a central U2 element (relation (2)).

        The K'-slot is alpha * (tr(x xbar') + beta^2 tr(y ybar')); the
        symmetric trace form keeps it inside K'.
        """
        inst = self.inst
        if (p.x.is_zero() and p.y.is_zero()) or (q.x.is_zero() and q.y.is_zero()):
            return self.r2_zero
        tx = inst.lmul(p.x, q.x.conj()).trace()
        ty = inst.lmul(p.y, q.y.conj()).trace()
        val = inst.alpha * (tx + inst.beta_sq * ty)
        out = R2Coord(LElem.zero(), LElem.zero(), val)
        if self.checked and not kprime_member(val):
            raise InternalConsistencyError(f"comm13 slot left K': {val}")
        return out

    def comm24(self, p: R2Coord, q: R2Coord) -> R1Coord:
        """[U2, U4] correction, placed in U3 (relation (3); see eq3_slot)."""
        inst = self.inst
        if (p.u.is_zero() and p.v.is_zero()) or (q.u.is_zero() and q.v.is_zero()):
            return self.r1_zero
        tu = inst.lmul(p.u, q.u.conj()).trace()
        tv = inst.lmul(p.v, q.v.conj()).trace()
        val = inst.beta_inv * (tu + inst.alpha * tv)
        return R1Coord(LElem.zero(), LElem.zero(), val)

    def comm14(self, p: R1Coord, q: R2Coord) -> tuple[R2Coord, R1Coord]:
        """[U1, U4] correction pair (U2 part, U3 part), relation (4)."""
        inst = self.inst
        if p.is_zero() or q.is_zero():
            return self.r2_zero, self.r1_zero
        x, y, b = p.x, p.y, p.b
        u, v, a = q.u, q.v, q.a
        xbar, ybar = x.conj(), y.conj()
        ubar, vbar = u.conj(), v.conj()
        mul = inst.lmul
        alpha, beta = inst.alpha, inst.beta
        usq = inst.lsquare(u)
        vsq = inst.lsquare(v)
        ubarsq = inst.lsquare(ubar)
        vbarsq = inst.lsquare(vbar)
        xy = mul(x, y)

        w_u = kscale(b, u) + kscale(alpha, mul(xbar, v) + kscale(beta, mul(y, vbar)))
        w_v = kscale(b, v) + mul(x, u) + kscale(beta, mul(y, ubar))
        norm_term = inst.lnorm(x) + inst.beta_sq * inst.lnorm(y)
        cross = (mul(usq, mul(x, ybar)) + mul(ubarsq, mul(xbar, y))
                 + kscale(alpha, mul(vbarsq, xy) + mul(vsq, xy.conj())))
        if self.checked and not cross.trace().is_zero():
            raise InternalConsistencyError("comm14 U2 cross term left K")
        w_a = b.square() * a + a * alpha * norm_term + alpha * cross.c0

        z_x = kscale(a, x) + mul(ubarsq, y) + kscale(alpha, mul(vsq, ybar))
        z_y = kscale(a, y) + kscale(inst.beta_sq_inv,
                                    mul(usq, x) + kscale(alpha, mul(vsq, xbar)))
        tr_uv = inst.lmul(u, ubar).c0  # u ubar, already in K
        n_u = inst.lnorm(u)
        n_v = inst.lnorm(v)
        mix = (kscale(inst.beta_inv, mul(x, mul(u, vbar)) + mul(xbar, mul(ubar, v)))
               + mul(y, mul(ubar, vbar)) + mul(ybar, mul(u, v)))
        if self.checked and not mix.trace().is_zero():
            raise InternalConsistencyError("comm14 U3 mix term left K")
        z_b = a * b + b * inst.beta_inv * (n_u + alpha * n_v) + alpha * mix.c0

        u2_part = R2Coord(w_u, w_v, w_a)
        u3_part = R1Coord(z_x, z_y, z_b)
        if self.checked:
            self.check_r2(u2_part, "(comm14 U2 part)")
            self.check_r1(u3_part, "(comm14 U3 part)")
        return u2_part, u3_part

    # -- group law -----------------------------------------------------------------

    def mul(self, g: UPlusElem, h: UPlusElem) -> UPlusElem:
        """Collected product: move h's components left past g's.

        Corrections: h1 past g3 emits comm13 into U2; h1 past g4 emits
        the comm14 pair; the U2 part of that pair crossing g4 emits a
        second-order comm24; h2 past g4 emits comm24.  Everything else
        commutes, and nilpotency class 3 stops the cascade.
        """
        q2 = self.comm13(h.g1, g.g3)
        p2, p3 = self.comm14(h.g1, g.g4)
        r3 = self.comm24(p2, g.g4)
        s3 = self.comm24(h.g2, g.g4)
        c1 = g.g1 + h.g1
        c4 = g.g4 + h.g4
        if self.eq3_slot == 3:
            c2 = g.g2 + q2 + p2 + h.g2
            c3 = g.g3 + r3 + p3 + s3 + h.g3
        else:
            # untenable reading: [U2,U4] corrections dumped into U2,
            # truncated after one level (no consistent collection exists)
            as_r2 = lambda c: R2Coord(c.x, c.y, c.b)
            c2 = g.g2 + q2 + p2 + h.g2 + as_r2(r3) + as_r2(s3)
            c3 = g.g3 + p3 + h.g3
        return UPlusElem(c1, c2, c3, c4)

    def inv(self, g: UPlusElem) -> UPlusElem:
        """g4 g3 g2 g1 collected; root elements are their own inverses."""
        acc = self.pure4(g.g4)
        acc = self.mul(acc, self.pure3(g.g3))
        acc = self.mul(acc, self.pure2(g.g2))
        acc = self.mul(acc, self.pure1(g.g1))
        return acc

    def commutator(self, g: UPlusElem, h: UPlusElem) -> UPlusElem:
        return self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))

    def conjugate(self, g: UPlusElem, by: UPlusElem) -> UPlusElem:
        return self.mul(self.mul(self.inv(by), g), by)

    # -- lower central structure ------------------------------------------------------

    def filtration_degree(self, g: UPlusElem) -> int:
        """Depth in the lower central series (whole group = 1, capped at 3).

        Degree >= 2 means g1 = g4 = 0; degree 3 additionally kills the
        L-slots of g2 and g3, leaving the Suzuki-Tits-like centre.
        """
        if g.is_identity():
            return 3
        if not (g.g1.is_zero() and g.g4.is_zero()):
            return 1
        central = (g.g2.u.is_zero() and g.g2.v.is_zero()
                   and g.g3.x.is_zero() and g.g3.y.is_zero())
        return 3 if central else 2

    # -- restrictions ----------------------------------------------------------------

    def suzuki_tits_member(self, g: UPlusElem) -> bool:
        """All L-slots vanish: the W(K, phi) subquadrangle's unipotents."""
        return (g.g1.x.is_zero() and g.g1.y.is_zero()
                and g.g2.u.is_zero() and g.g2.v.is_zero()
                and g.g3.x.is_zero() and g.g3.y.is_zero()
                and g.g4.u.is_zero() and g.g4.v.is_zero())
