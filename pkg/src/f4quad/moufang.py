"""The Moufang set on absolute flags, its blocks, and the derived net.

Points are the absolute flags of the polarity: the symbol infinity for
the base flag, and labels [(x,y,a),(u,v,b)] for the images of the zero
flag under the root group at infinity.  A generic element of that root
group is written down in closed form (the generator form, relation (9)
of the README's table): free U1 and U2 parts, derived U3 and U4 parts.

Two independent constructions of the derived parts are kept side by
side: the closed form transcribed verbatim, and a solver that computes
the unique fixed point of conjugation by the polarity over the given
free parts.  Comparing them localises any misprint in the closed form
to a named slot; products are always formed through the solver, which
closes by construction (the fixed subgroup is a subgroup).

Blocks are never materialised: a sphere or circle is a descriptor with
an exact membership predicate plus a seeded sampler.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import KElem, LElem, kprime_member, kscale, phi_k, theta_k
from .quadrangle import Flag, Quadrangle
from .rootgroups import InternalConsistencyError, R1Coord, R2Coord, UPlusElem
from .sampling import Rng, sample_k, sample_kprime, sample_l


class ClosureError(InternalConsistencyError):
    """A product left the closed generator form."""


class UnsupportedBlock(NotImplementedError):
    """Circle with a gnarl/through combination outside the known recipes."""


@dataclass(frozen=True)
class MoufangPoint:
    """Either infinity or the label [(x,y,a),(u,v,b)]."""
    r1: R1Coord | None
    r2: R2Coord | None

    @property
    def is_inf(self) -> bool:
        return self.r1 is None

    def __str__(self) -> str:
        if self.is_inf:
            return "inf"
        return f"[{self.r1},{self.r2}]"


class MoufangSet:
    """Label arithmetic, the generator form, and the block geometry."""

    def __init__(self, quad: Quadrangle, eq9_mode: str = "derived",
                 survey: bool = False):
        if eq9_mode not in ("verbatim", "derived"):
            raise ValueError("eq9_mode must be 'verbatim' or 'derived'")
        self.quad = quad
        self.group = quad.group
        self.inst = quad.inst
        self.eq9_mode = eq9_mode
        self.survey = survey
        self.closure_notes: list[str] = []
        g = self.group
        self.infinity = MoufangPoint(None, None)
        self.zero = MoufangPoint(g.r1_zero, g.r2_zero)

    # -- the generator form ------------------------------------------------------

    def embed_verbatim(self, r1: R1Coord, r2: R2Coord) -> UPlusElem:
        """The closed generator form exactly as printed in the relation table."""
        inst = self.inst
        g = self.group
        x, y, a = r1.x, r1.y, r1.b
        u, v, b = r2.u, r2.v, r2.a
        mul = inst.lmul
        phl, thl = inst.phi_l, inst.theta_l
        alpha, beta = inst.alpha, inst.beta
        xbar, ybar = x.conj(), y.conj()
        xth, yth = thl(x), thl(y)
        xbarth, ybarth = thl(xbar), thl(ybar)

        g3x = (kscale(inst.alpha_inv, phl(u)) + kscale(phi_k(a), x)
               + kscale(inst.beta_sq, mul(phl(xbar), y))
               + kscale(alpha * inst.beta_sq, mul(phl(y), ybar)))
        g3y = (kscale(inst.alpha_inv, phl(v)) + kscale(phi_k(a), y)
               + mul(phl(x), x) + kscale(alpha, mul(phl(y), xbar)))
        acc = LElem.from_k(theta_k(b) + a * phi_k(a))
        ab = alpha * beta
        acc = acc + kscale(ab, mul(xth, xbarth) + kscale(alpha, mul(yth, ybarth)))
        acc = acc + kscale(ab * beta,
                           mul(y, mul(xbarth, ybarth)) + mul(ybar, mul(xth, yth)))
        acc = acc + kscale(ab, mul(x, mul(xth, ybarth)) + mul(xbar, mul(xbarth, yth)))
        acc = acc + mul(u, xbarth) + mul(u.conj(), xth)
        acc = acc + kscale(alpha, mul(v, ybarth) + mul(v.conj(), yth))
        if not acc.trace().is_zero():
            raise InternalConsistencyError(
                "generator form U3 K-slot has a nonzero trace")
        g3 = R1Coord(g3x, g3y, acc.c0)
        g4 = self.quad.rho_r1(r1)
        return UPlusElem(r1, r2, g.check_r1(g3, "(generator U3 part)"), g4)

    def embed_derived(self, r1: R1Coord, r2: R2Coord) -> UPlusElem:
        """Unique polarity-centralising completion of the free parts.

        Solves rho_star(g) = g for g3, g4 given g1 = r1, g2 = r2; the
        fixed subgroup is exactly the root group at infinity.
        """
        inst = self.inst
        g = self.group
        quad = self.quad
        g4 = quad.rho_r1(r1)
        p2, p3 = g.comm14(r1, g4)
        r3 = g.comm24(p2, g4)
        su = r2.u + p2.u
        sv = r2.v + p2.v
        g3x = inst.phi_l(kscale(inst.beta_inv, su))
        g3y = inst.phi_l(kscale(inst.beta_inv, sv))
        c24 = g.comm24(R2Coord(su, sv, KElem.zero()), g4)
        g3b = theta_k(r2.a) + c24.b + p3.b + r3.b
        g3 = R1Coord(g3x, g3y, g3b)
        elt = UPlusElem(r1, r2, g.check_r1(g3, "(derived U3 part)"), g4)
        # the remaining fixed-point slot must close automatically
        resid = (r2.a + phi_k(g3b) + g.comm13(r1, quad.rho_r2(r2)).a + p2.a)
        if not resid.is_zero():
            raise InternalConsistencyError(
                f"derived generator form is not polarity-centralising: {resid}")
        return elt

    def embed(self, p: MoufangPoint) -> UPlusElem:
        if p.is_inf:
            raise ValueError("infinity has no generator element")
        if self.eq9_mode == "verbatim":
            return self.embed_verbatim(p.r1, p.r2)
        return self.embed_derived(p.r1, p.r2)

    def compare_embeddings(self, r1: R1Coord, r2: R2Coord) -> list[str]:
        """Slot-by-slot differences of the printed and the derived forms."""
        a = self.embed_verbatim(r1, r2)
        b = self.embed_derived(r1, r2)
        diffs = []
        if a.g3.x != b.g3.x:
            diffs.append(f"U3.x differs by {a.g3.x + b.g3.x}")
        if a.g3.y != b.g3.y:
            diffs.append(f"U3.y differs by {a.g3.y + b.g3.y}")
        if a.g3.b != b.g3.b:
            diffs.append(f"U3.K differs by {a.g3.b + b.g3.b}")
        if a.g4 != b.g4:
            diffs.append("U4 differs")
        return diffs

    # -- label arithmetic -----------------------------------------------------------

    def label_of_elem(self, g: UPlusElem, check: bool = True) -> MoufangPoint:
        """Free parts of a group element, verified to re-embed exactly."""
        label = MoufangPoint(g.g1, g.g2)
        if check:
            again = self.embed(label)
            if again != g:
                msg = (f"closure violation: U3/U4 parts of {label} do not match "
                       f"the generator form (U3 delta x={g.g3.x + again.g3.x}, "
                       f"y={g.g3.y + again.g3.y}, K={g.g3.b + again.g3.b})")
                if self.survey:
                    self.closure_notes.append(msg)
                else:
                    raise ClosureError(msg)
        return label

    def mul(self, p: MoufangPoint, q: MoufangPoint) -> MoufangPoint:
        """Group product in label coordinates."""
        prod = self.group.mul(self.embed(p), self.embed(q))
        return self.label_of_elem(prod)

    def inv(self, p: MoufangPoint) -> MoufangPoint:
        return self.label_of_elem(self.group.inv(self.embed(p)))

    def act(self, p: MoufangPoint, g: MoufangPoint) -> MoufangPoint:
        """Right action on the point set: infinity is fixed, labels translate."""
        if p.is_inf:
            return p
        return self.mul(p, g)

    def solve_translation(self, p: MoufangPoint, q: MoufangPoint) -> MoufangPoint:
        """The unique g with act(p, g) = q (regularity off infinity)."""
        return self.mul(self.inv(p), q)

    def commutator(self, p: MoufangPoint, q: MoufangPoint) -> MoufangPoint:
        return self.label_of_elem(
            self.group.commutator(self.embed(p), self.embed(q)))

    # -- flags ------------------------------------------------------------------------

    def flag_of_label(self, p: MoufangPoint) -> Flag:
        if p.is_inf:
            return self.quad.inf_flag
        return self.quad.act(self.quad.zero_flag, self.embed(p))

    def label_of_flag(self, f: Flag) -> MoufangPoint:
        """Inverse of the labeling: a-slot of the point, k'-slot of the line."""
        if f == self.quad.inf_flag:
            return self.infinity
        if f.point.kind != "P3" or f.line.kind != "L3":
            raise ValueError(f"not an absolute flag shape: {f}")
        return MoufangPoint(f.point.coords[0], f.line.coords[2])

    # -- blocks -----------------------------------------------------------------------

    def sphere_at_infinity(self, through: MoufangPoint) -> "Block":
        """Gnarl infinity: {inf} u {[through.r1, anything]}."""
        if through.is_inf:
            raise ValueError("through point must differ from the gnarl")
        r1 = through.r1

        def contains(p: MoufangPoint) -> bool:
            return p.is_inf or p.r1 == r1

        def sample(rng: Rng, n: int, max_degree: int):
            out = []
            for _ in range(n):
                r2 = self.sample_r2(rng, max_degree)
                out.append(MoufangPoint(r1, r2))
            return out

        return Block("sphere", self.infinity, through, contains, sample)

    def circle_at_infinity(self, through: MoufangPoint) -> "Block":
        """Gnarl infinity: {inf} u {[r1, (u, v, free)]}."""
        if through.is_inf:
            raise ValueError("through point must differ from the gnarl")
        r1, r2 = through.r1, through.r2

        def contains(p: MoufangPoint) -> bool:
            if p.is_inf:
                return True
            return p.r1 == r1 and p.r2.u == r2.u and p.r2.v == r2.v

        def sample(rng: Rng, n: int, max_degree: int):
            return [MoufangPoint(r1, R2Coord(r2.u, r2.v,
                                             sample_kprime(rng, max_degree)))
                    for _ in range(n)]

        return Block("circle", self.infinity, through, contains, sample)

    def sphere_general(self, gnarl: MoufangPoint, through: MoufangPoint) -> "Block":
        """Sphere by its geometric description: absolute flags whose point
        is collinear with the projection of the through point onto the
        gnarl flag's line."""
        if gnarl == through:
            raise ValueError("gnarl and through must differ")
        gnarl_flag = self.flag_of_label(gnarl)
        through_flag = self.flag_of_label(through)
        centre = self.quad.project(through_flag.point, gnarl_flag.line)
        quad = self.quad

        def contains(p: MoufangPoint) -> bool:
            pt = self.flag_of_label(p).point
            if pt == centre:
                return True
            return quad.collinear(pt, centre) is not None

        def sample(rng: Rng, n: int, max_degree: int):
            raise UnsupportedBlock(
                "general spheres enumerate through the coordinate tables")

        return Block("sphere", gnarl, through, contains, sample)

    def circle_general(self, gnarl: MoufangPoint, through: MoufangPoint) -> "Block":
        """Circle with finite gnarl through infinity (coordinate recipe)."""
        if gnarl.is_inf:
            return self.circle_at_infinity(through)
        if not through.is_inf:
            raise UnsupportedBlock(
                "circles with finite gnarl and finite through point have no "
                "general recipe without the opposite root groups")
        inst = self.inst
        x, y, a = gnarl.r1.x, gnarl.r1.y, gnarl.r1.b
        u, v, b = gnarl.r2.u, gnarl.r2.v, gnarl.r2.a
        gauge = a.square() + inst.alpha * (inst.lnorm(x)
                                           + inst.beta_sq * inst.lnorm(y))

        def point_at(k: KElem) -> MoufangPoint:
            if not kprime_member(k):
                raise ValueError("circle parameter must lie in K'")
            return MoufangPoint(R1Coord(x, y, a + k),
                                R2Coord(u, v, b + gauge * phi_k(k)))

        def contains(p: MoufangPoint) -> bool:
            if p.is_inf:
                return True
            if p.r1.x != x or p.r1.y != y or p.r2.u != u or p.r2.v != v:
                return False
            k = p.r1.b + a
            if not kprime_member(k):
                return False
            return p.r2.a == b + gauge * phi_k(k)

        def sample(rng: Rng, n: int, max_degree: int):
            return [point_at(sample_kprime(rng, max_degree)) for _ in range(n)]

        blk = Block("circle", gnarl, through, contains, sample)
        blk.point_at = point_at
        return blk

    # -- the two fully explicit circles --------------------------------------------------

    def special_circle_first(self) -> "Block":
        """The circle with gnarl [0,0] through [(0,0,1),(0,0,0)]; its points
        are parametrised over K and the through point is a parameter limit."""
        inst = self.inst
        zero1 = self.group.r1_zero
        gnarl = self.zero
        through = MoufangPoint(R1Coord(LElem.zero(), LElem.zero(), KElem.one()),
                               self.group.r2_zero)

        def point_at(xx: KElem):
            den = KElem.one() + xx + phi_k(xx)
            if den.is_zero():
                return None
            aa = xx / den
            bb = (KElem.one() + phi_k(xx) + xx.square()).inv()
            return MoufangPoint(R1Coord(LElem.zero(), LElem.zero(), aa),
                                R2Coord(LElem.zero(), LElem.zero(), bb))

        def contains(p: MoufangPoint) -> bool:
            if p.is_inf:
                return False
            if p == gnarl:
                return True
            if not (p.r1.x.is_zero() and p.r1.y.is_zero()
                    and p.r2.u.is_zero() and p.r2.v.is_zero()):
                return False
            aa, bb = p.r1.b, p.r2.a
            if bb.is_zero() or not kprime_member(bb):
                return False
            dd = theta_k(bb).inv()  # bb = phi(1/den)
            xx = aa * dd
            return dd == KElem.one() + xx + phi_k(xx)

        def sample(rng: Rng, n: int, max_degree: int):
            out = []
            while len(out) < n:
                pt = point_at(sample_k(rng, max_degree))
                if pt is not None:
                    out.append(pt)
            return out

        blk = Block("circle", gnarl, through, contains, sample)
        blk.point_at = point_at
        return blk

    def special_circle_second(self) -> "Block":
        """The circle through [(0,0,1),(0,0,0)] with gnarl [(0,0,0),(0,0,1)]."""
        gnarl = MoufangPoint(self.group.r1_zero,
                             R2Coord(LElem.zero(), LElem.zero(), KElem.one()))
        through = MoufangPoint(R1Coord(LElem.zero(), LElem.zero(), KElem.one()),
                               self.group.r2_zero)

        def point_at(xx: KElem):
            den = KElem.one() + xx + xx.square() * phi_k(xx)
            if den.is_zero():
                return None
            aa = den.inv()
            bb = phi_k(xx) / phi_k(den)
            return MoufangPoint(R1Coord(LElem.zero(), LElem.zero(), aa),
                                R2Coord(LElem.zero(), LElem.zero(), bb))

        def contains(p: MoufangPoint) -> bool:
            if p.is_inf:
                return False
            if p == self.zero:  # the listed base point of the display
                return True
            if not (p.r1.x.is_zero() and p.r1.y.is_zero()
                    and p.r2.u.is_zero() and p.r2.v.is_zero()):
                return False
            aa, bb = p.r1.b, p.r2.a
            if aa.is_zero() or not kprime_member(bb):
                return False
            xx = theta_k(bb) / aa  # bb = phi(x/den), aa = 1/den
            return (aa * (KElem.one() + xx + xx.square() * phi_k(xx))).is_one()

        def sample(rng: Rng, n: int, max_degree: int):
            out = []
            while len(out) < n:
                pt = point_at(sample_k(rng, max_degree))
                if pt is not None:
                    out.append(pt)
            return out

        blk = Block("circle", gnarl, through, contains, sample)
        blk.point_at = point_at
        return blk

    # -- the polarity-twisted translation experiment -------------------------------------

    def tau_prime(self, p: MoufangPoint) -> MoufangPoint:
        """[(x,y,a),(u,v,b)] -> [(x,y,a),(u + B x^th, v + x^th, b + a^2th)]."""
        if p.is_inf:
            raise ValueError("tau' is defined away from infinity")
        inst = self.inst
        xth = inst.theta_l(p.r1.x)
        r2 = R2Coord(p.r2.u + kscale(inst.beta, xth),
                     p.r2.v + xth,
                     p.r2.a + phi_k(p.r1.b))
        return MoufangPoint(p.r1, r2)

    def tau_prime_circle_experiment(self, rng: Rng, n: int,
                                    max_degree: int) -> "TauPrimeReport":
        """Map the first explicit circle through tau' and test each image
        point against the second explicit circle."""
        c1 = self.special_circle_first()
        c2 = self.special_circle_second()
        matched, unmatched = 0, 0
        examples = []
        pts = c1.sample(rng, n, max_degree)
        for pt in pts:
            img = self.tau_prime(pt)
            if c2.contains(img):
                matched += 1
            else:
                unmatched += 1
                if len(examples) < 3:
                    examples.append(f"{pt} -> {img}")
        return TauPrimeReport(len(pts), matched, unmatched, examples)

    # -- samplers ---------------------------------------------------------------------------

    def sample_r1(self, rng: Rng, max_degree: int) -> R1Coord:
        inst = self.inst
        return R1Coord(inst.phi_l(sample_l(rng, max_degree)),
                       inst.phi_l(sample_l(rng, max_degree)),
                       sample_k(rng, max_degree))

    def sample_r2(self, rng: Rng, max_degree: int) -> R2Coord:
        return R2Coord(sample_l(rng, max_degree),
                       sample_l(rng, max_degree),
                       sample_kprime(rng, max_degree))

    def sample_label(self, rng: Rng, max_degree: int) -> MoufangPoint:
        return MoufangPoint(self.sample_r1(rng, max_degree),
                            self.sample_r2(rng, max_degree))


class Block:
    """A sphere or circle: descriptor plus membership rule plus sampler."""

    def __init__(self, kind: str, gnarl: MoufangPoint, base: MoufangPoint,
                 contains, sample):
        self.kind = kind
        self.gnarl = gnarl
        self.base = base
        self.contains = contains
        self.sample = sample

    def descriptor(self) -> str:
        return f"{self.kind} gnarl={self.gnarl} base={self.base}"

    def __str__(self) -> str:
        return self.descriptor()


@dataclass
class TauPrimeReport:
    total: int
    matched: int
    unmatched: int
    examples: list[str]

    def __str__(self) -> str:
        return (f"tau' image vs second explicit circle: {self.matched} matched, "
                f"{self.unmatched} unmatched of {self.total}"
                + (f"; e.g. {self.examples[0]}" if self.examples else ""))


# ----------------------------------------------------------------------
# the derived geometry at infinity
# ----------------------------------------------------------------------

@dataclass
class NetCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class NetReport:
    checks: list[NetCheck]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def derived_net_report(ms: MoufangSet, rng: Rng, samples: int,
                       max_degree: int) -> NetReport:
    """Net axioms for the lines at infinity: vertical lines are disjoint,
    a vertical and a non-vertical line meet exactly once, and blocks with
    a common gnarl-first-part form parallel classes."""
    checks: list[NetCheck] = []
    g = ms.group

    # (i) two distinct vertical lines never intersect
    ok, det = True, ""
    for _ in range(samples):
        r1a = ms.sample_r1(rng, max_degree)
        r1b = ms.sample_r1(rng, max_degree)
        if r1a == r1b:
            continue
        va = ms.sphere_at_infinity(MoufangPoint(r1a, ms.sample_r2(rng, max_degree)))
        for pt in va.sample(rng, 3, max_degree):
            if not pt.is_inf and pt.r1 == r1b:
                ok, det = False, f"common point {pt}"
                break
        if not ok:
            break
    checks.append(NetCheck("vertical-lines-disjoint", ok, det))

    # (ii) vertical meets the base non-vertical block exactly at [(x,y,a),0]
    nonvert = ms.sphere_general(ms.zero, ms.infinity)
    ok, det = True, ""
    for _ in range(samples):
        r1 = ms.sample_r1(rng, max_degree)
        expected = MoufangPoint(r1, g.r2_zero)
        if not nonvert.contains(expected):
            ok, det = False, f"expected intersection missing: {expected}"
            break
        r2 = ms.sample_r2(rng, max_degree)
        if not r2.is_zero() and nonvert.contains(MoufangPoint(r1, r2)):
            ok, det = False, f"second intersection {MoufangPoint(r1, r2)}"
            break
    checks.append(NetCheck("vertical-meets-nonvertical-once", ok, det))

    # (iii) parallel classes: same first part, different second part, disjoint
    ok, det = True, ""
    for _ in range(samples):
        r2a = ms.sample_r2(rng, max_degree)
        r2b = ms.sample_r2(rng, max_degree)
        if r2a == r2b:
            continue
        blka = ms.sphere_general(MoufangPoint(g.r1_zero, r2a), ms.infinity)
        # members of the first-family block have the shape [(k,l,m), r2a]
        for _ in range(3):
            member = MoufangPoint(ms.sample_r1(rng, max_degree), r2a)
            if not blka.contains(member):
                ok, det = False, f"displayed member rejected: {member}"
                break
            blkb = ms.sphere_general(MoufangPoint(g.r1_zero, r2b), ms.infinity)
            if blkb.contains(member):
                ok, det = False, f"parallel blocks share {member}"
                break
        if not ok:
            break
    checks.append(NetCheck("parallel-class-disjoint", ok, det))
    return NetReport(checks)


# ----------------------------------------------------------------------
# reconstruction of the quadrangle from points and spheres
# ----------------------------------------------------------------------

class ReconstructedQuadrangle:
    """The two-sorted structure built from points and spheres of the
    block geometry: each input yields one point and one line, and the
    three incidence rules are evaluated against the stored gnarl data.
    Swapping the two sorts is the structure's polarity."""

    def __init__(self, ms: MoufangSet, points: list[MoufangPoint],
                 spheres: list["Block"]):
        self.ms = ms
        self.points = list(points)
        self.spheres = list(spheres)
        self._flags = {p: ms.flag_of_label(p) for p in self.points}
        self._centres = {}
        self._duals = {}
        for blk in self.spheres:
            centre = self._centre(blk)
            self._centres[id(blk)] = centre
            self._duals[id(blk)] = ms.quad.rho_point(centre)

    def _centre(self, blk: "Block"):
        quad = self.ms.quad
        gnarl_flag = self.ms.flag_of_label(blk.gnarl)
        base_flag = self.ms.flag_of_label(blk.base)
        return quad.project(base_flag.point, gnarl_flag.line)

    def incident(self, point_side, line_side) -> bool:
        """The three rules: labels match; the gnarl names the label; or
        the gnarls are mutually contained and distinct."""
        p_is_label = isinstance(point_side, MoufangPoint)
        l_is_label = isinstance(line_side, MoufangPoint)
        if p_is_label and l_is_label:
            return point_side == line_side
        if p_is_label:
            return line_side.gnarl == point_side
        if l_is_label:
            return point_side.gnarl == line_side
        a, b = point_side, line_side
        return (a.gnarl != b.gnarl and b.contains(a.gnarl)
                and a.contains(b.gnarl))

    def embed_point(self, point_side):
        """Image in the coordinate quadrangle: flag points for labels,
        projection centres for spheres."""
        if isinstance(point_side, MoufangPoint):
            flag = self._flags.get(point_side)
            return (flag or self.ms.flag_of_label(point_side)).point
        return self._centres[id(point_side)]

    def embed_line(self, line_side):
        if isinstance(line_side, MoufangPoint):
            flag = self._flags.get(line_side)
            return (flag or self.ms.flag_of_label(line_side)).line
        return self._duals[id(line_side)]


@dataclass
class ReconstructionReport:
    n_points: int
    n_spheres: int
    rule1_checked: int
    rule2_checked: int
    rule3_hits: int
    injective: bool
    polarity_consistent: bool
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures and self.injective and self.polarity_consistent


def reconstruct_quadrangle(ms: MoufangSet, rng: Rng, n_points: int,
                           n_spheres: int,
                           max_degree: int) -> ReconstructedQuadrangle:
    """Sample labels and spheres and build the two-sorted structure.

    The sphere sample mixes gnarls at infinity (some reusing a finite
    gnarl's first part, which manufactures genuine incidences of the
    mutual-containment rule) with finite gnarls through infinity, and
    is deduplicated by projection centre.
    """
    points = [ms.infinity] + [ms.sample_label(rng, max_degree)
                              for _ in range(n_points - 1)]
    points = list(dict.fromkeys(points))

    blocks: list[Block] = []
    finite_gnarls: list[MoufangPoint] = []
    seen_centres: set[str] = set()
    quad = ms.quad
    while len(blocks) < n_spheres:
        gnarl = ms.sample_label(rng, max_degree) if rng.chance(3, 4) else ms.infinity
        if gnarl.is_inf:
            if finite_gnarls and rng.chance(1, 2):
                r1 = finite_gnarls[rng.below(len(finite_gnarls))].r1
                through = MoufangPoint(r1, ms.sample_r2(rng, max_degree))
            else:
                through = ms.sample_label(rng, max_degree)
            blk = ms.sphere_at_infinity(through)
            centre = quad.project(ms.flag_of_label(through).point, quad.ln_inf)
        else:
            blk = ms.sphere_general(gnarl, ms.infinity)
            centre = quad.project(quad.pt_inf,
                                  ms.flag_of_label(gnarl).line)
        if str(centre) in seen_centres:
            continue
        seen_centres.add(str(centre))
        blocks.append(blk)
        if not gnarl.is_inf:
            finite_gnarls.append(gnarl)
    return ReconstructedQuadrangle(ms, points, blocks)


def reconstruct_report(ms: MoufangSet, rng: Rng, n_points: int,
                       n_spheres: int, max_degree: int) -> ReconstructionReport:
    """Build the reconstruction on a sample and embed it back.

    The embedding sends a label's point sort to its flag point and its
    line sort to the flag line; a sphere's point sort goes to the
    projection centre and its line sort to the polar image of that
    centre.  All three incidence rules must agree with the coordinate
    quadrangle's incidence through this map, and swapping the two sorts
    must agree with the polarity.
    """
    quad = ms.quad
    rq = reconstruct_quadrangle(ms, rng, n_points, n_spheres, max_degree)
    points, blocks = rq.points, rq.spheres
    failures: list[str] = []

    rule1 = 0
    for xp in points[:40]:
        for yp in points[:40]:
            rule1 += 1
            if rq.incident(xp, yp) != quad.incident(rq.embed_point(xp),
                                                    rq.embed_line(yp)):
                failures.append(f"rule1 mismatch at {xp} / {yp}")

    rule2 = 0
    for xp in points[:30]:
        for blk in blocks[:30]:
            rule2 += 2
            if rq.incident(xp, blk) != quad.incident(rq.embed_point(xp),
                                                     rq.embed_line(blk)):
                failures.append(f"rule2 (x_p I A_l) mismatch at {xp}, {blk}")
            if rq.incident(blk, xp) != quad.incident(rq.embed_point(blk),
                                                     rq.embed_line(xp)):
                failures.append(f"rule2 (A_p I x_l) mismatch at {xp}, {blk}")

    rule3 = 0
    limit = min(len(blocks), 25)
    for i in range(limit):
        for j in range(limit):
            want = rq.incident(blocks[i], blocks[j])
            got = quad.incident(rq.embed_point(blocks[i]),
                                rq.embed_line(blocks[j]))
            if want:
                rule3 += 1
            if want != got:
                failures.append(f"rule3 mismatch at spheres {i},{j}")
    if rule3 == 0:
        failures.append("sample too small to exercise the mutual-containment "
                        "incidence rule")

    centres = [rq.embed_point(b) for b in blocks]
    injective = (len(set(map(str, centres))) == len(centres)
                 and len(set(map(str, points))) == len(points))

    # interchanging the two sorts is the polarity: line images are the
    # polar duals of point images
    polarity_consistent = True
    for xp in points[:40]:
        if quad.rho_point(rq.embed_point(xp)) != rq.embed_line(xp):
            polarity_consistent = False
            failures.append(f"sort swap differs from the polarity at {xp}")
            break
    for blk in blocks[:10]:
        if quad.rho_point(rq.embed_point(blk)) != rq.embed_line(blk):
            polarity_consistent = False
            failures.append("sort swap differs from the polarity at a sphere")
            break

    return ReconstructionReport(len(points), len(blocks), rule1, rule2,
                                rule3, injective, polarity_consistent,
                                failures[:10])
