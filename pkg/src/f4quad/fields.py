"""The characteristic-2 field tower GF(2) < K' < K < L with its twist maps.

K is the rational function field GF(2)(s, t).  The square-root-of-
Frobenius endomorphism phi sends s -> t, t -> s^2, so phi(phi(f)) = f^2
and the image K' = phi(K) = GF(2)(s^2, t) is a proper subfield with
[K : K'] = 2 and basis {1, s}.  theta denotes the inverse of phi on K'.

L = K[e]/(e^2 + e + delta) is a separable quadratic extension; elements
are pairs c0 + c1*e.  Conjugation sends e -> e + 1.  An instance fixes
delta, the image phi(e), and the pair (beta, alpha = phi(beta)) that
parametrises the anisotropic forms.  L' is the subfield generated by
the squares of L together with K', equivalently the image phi(L).

KElem is a reduced fraction of Poly2 values and is canonical: over
GF(2) every nonzero leading coefficient is 1, so there is nothing to
normalise beyond the gcd.  A useful consequence used throughout: an
element of K lies in K' exactly when the canonical numerator and
denominator both have only even powers of s.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .polynomials import Poly2, poly_divexact, poly_gcd


class FieldError(ArithmeticError):
    """Division by zero or a domain violation in the tower."""


# ----------------------------------------------------------------------
# K = GF(2)(s, t)
# ----------------------------------------------------------------------

class KElem:
    """A canonical reduced fraction of GF(2)[s,t] polynomials."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly2, den: Poly2 | None = None):
        if den is None:
            den = Poly2.one()
        if den.is_zero():
            raise FieldError("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly2.zero(), Poly2.one()
        elif den.is_one():
            self.num, self.den = num, den
        elif den.is_monomial():
            # fast path: strip the common monomial factor
            (i, j), = den.terms()
            ci = min(i, num.val_s())
            cj = min(j, num.val_t())
            if ci or cj:
                num = Poly2({jj - cj: m >> ci for jj, m in num._rows.items()})
                den = Poly2.monomial(i - ci, j - cj)
            self.num, self.den = num, den
        else:
            g = poly_gcd(num, den)
            if g.is_one():
                self.num, self.den = num, den
            else:
                self.num = poly_divexact(num, g)
                self.den = poly_divexact(den, g)
        self._hash: int | None = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "KElem":
        return K_ZERO

    @classmethod
    def one(cls) -> "KElem":
        return K_ONE

    @classmethod
    def s(cls) -> "KElem":
        return K_S

    @classmethod
    def t(cls) -> "KElem":
        return K_T

    @classmethod
    def from_poly(cls, p: Poly2) -> "KElem":
        return cls(p)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # -- arithmetic ---------------------------------------------------------
    # addition and multiplication keep fractions reduced with the small
    # cross-gcds of Henrici's scheme instead of one large gcd per result

    def __add__(self, other: "KElem") -> "KElem":
        if not isinstance(other, KElem):
            return NotImplemented
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if n1.is_zero():
            return other
        if n2.is_zero():
            return self
        if d1 == d2:
            num = n1 + n2
            if d1.is_one() or num.is_zero():
                return _trusted_k(num, Poly2.one() if num.is_zero() else d1)
            g = poly_gcd(num, d1)
            if g.is_one():
                return _trusted_k(num, d1)
            return _trusted_k(poly_divexact(num, g), poly_divexact(d1, g))
        g = poly_gcd(d1, d2)
        if g.is_one():
            num = n1 * d2 + n2 * d1
            if num.is_zero():
                return K_ZERO
            return _trusted_k(num, d1 * d2)
        d2r = poly_divexact(d2, g)
        num = n1 * d2r + n2 * poly_divexact(d1, g)
        if num.is_zero():
            return K_ZERO
        h = poly_gcd(num, g)
        if h.is_one():
            return _trusted_k(num, d1 * d2r)
        return _trusted_k(poly_divexact(num, h),
                          poly_divexact(d1, h) * d2r)

    __sub__ = __add__

    def __mul__(self, other: "KElem") -> "KElem":
        if not isinstance(other, KElem):
            return NotImplemented
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if n1.is_zero() or n2.is_zero():
            return K_ZERO
        if not d2.is_one():
            g = poly_gcd(n1, d2)
            if not g.is_one():
                n1 = poly_divexact(n1, g)
                d2 = poly_divexact(d2, g)
        if not d1.is_one():
            g = poly_gcd(n2, d1)
            if not g.is_one():
                n2 = poly_divexact(n2, g)
                d1 = poly_divexact(d1, g)
        return _trusted_k(n1 * n2, d1 * d2)

    def inv(self) -> "KElem":
        if self.num.is_zero():
            raise FieldError("inversion of zero in K")
        return KElem(self.den, self.num)

    def __truediv__(self, other: "KElem") -> "KElem":
        if not isinstance(other, KElem):
            return NotImplemented
        return self * other.inv()

    def square(self) -> "KElem":
        return KElem(self.num.square(), self.den.square())

    def __pow__(self, n: int) -> "KElem":
        if n < 0:
            return self.inv() ** (-n)
        acc = K_ONE
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base.square() if n > 1 else base
            n >>= 1
        return acc

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, KElem)
                and self.num == other.num and self.den == other.den)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        ns = str(self.num)
        if self.num.num_terms() > 1:
            ns = f"({ns})"
        ds = str(self.den)
        if self.den.num_terms() > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"KElem({self})"


def _trusted_k(num: Poly2, den: Poly2) -> KElem:
    """Wrap an already-reduced fraction without re-normalising."""
    out = KElem.__new__(KElem)
    out.num = num
    out.den = den
    out._hash = None
    return out


K_ZERO = KElem(Poly2.zero())
K_ONE = KElem(Poly2.one())
K_S = KElem(Poly2.s())
K_T = KElem(Poly2.t())


# ----------------------------------------------------------------------
# the twist endomorphism on K and its inverse on K'
# ----------------------------------------------------------------------

def phi_k(f: KElem) -> KElem:
    """The twist endomorphism on K: s -> t, t -> s^2 (phi o phi = squaring)."""
    return KElem(f.num.subst_phi(), f.den.subst_phi())


def kprime_member(f: KElem) -> bool:
    """Membership in K' = GF(2)(s^2, t), decided on the canonical form."""
    return f.num.even_s_exponents() and f.den.even_s_exponents()


def theta_k(f: KElem) -> KElem:
    """Inverse of the twist on K': rewrite in s^2, t and substitute back."""
    if not kprime_member(f):
        raise FieldError(f"theta applied outside K': {f}")
    return KElem(f.num.subst_theta(), f.den.subst_theta())


def pow2theta_k(f: KElem) -> KElem:
    """x^(2*theta) = theta(x^2) = phi(x), valid on all of K."""
    return phi_k(f)


def kprime_decompose(f: KElem) -> tuple[KElem, KElem]:
    """Split f = g + s*h with g, h in GF(2)(s^2, t); f is in K' iff h = 0.

    Works by multiplying numerator and denominator with the denominator's
    odd/even conjugate: with p = p0 + s p1 over q = q0 + s q1,
    f = [(p0 q0 + s^2 p1 q1) + s (p0 q1 + p1 q0)] / (q0^2 + s^2 q1^2).
    """
    p0, p1 = _split_even_odd(f.num)
    q0, q1 = _split_even_odd(f.den)
    s2 = Poly2.monomial(2, 0)
    den = q0.square() + s2 * q1.square()
    g = KElem(p0 * q0 + s2 * (p1 * q1), den)
    h = KElem(p0 * q1 + p1 * q0, den)
    return g, h


def _split_even_odd(p: Poly2) -> tuple[Poly2, Poly2]:
    """p = even + s*odd with both parts in GF(2)[s^2, t]."""
    even_rows: dict[int, int] = {}
    odd_rows: dict[int, int] = {}
    for i, j in p.terms():
        if i % 2 == 0:
            even_rows[j] = even_rows.get(j, 0) ^ (1 << i)
        else:
            odd_rows[j] = odd_rows.get(j, 0) ^ (1 << (i - 1))
    return Poly2(even_rows), Poly2(odd_rows)


# ----------------------------------------------------------------------
# L = K[e]/(e^2 + e + delta)
# ----------------------------------------------------------------------

class LElem:
    """c0 + c1*e with c0, c1 in K.  Instance-independent ops only."""

    __slots__ = ("c0", "c1", "_hash")

    def __init__(self, c0: KElem, c1: KElem | None = None):
        self.c0 = c0
        self.c1 = c1 if c1 is not None else K_ZERO
        self._hash: int | None = None

    @classmethod
    def zero(cls) -> "LElem":
        return L_ZERO

    @classmethod
    def one(cls) -> "LElem":
        return L_ONE

    @classmethod
    def e(cls) -> "LElem":
        return L_E

    @classmethod
    def from_k(cls, c: KElem) -> "LElem":
        return cls(c, K_ZERO)

    def is_zero(self) -> bool:
        return self.c0.is_zero() and self.c1.is_zero()

    def is_in_k(self) -> bool:
        return self.c1.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: "LElem") -> "LElem":
        if not isinstance(other, LElem):
            return NotImplemented
        return LElem(self.c0 + other.c0, self.c1 + other.c1)

    __sub__ = __add__

    def conj(self) -> "LElem":
        """The involution fixing K: e -> e + 1."""
        return LElem(self.c0 + self.c1, self.c1)

    def trace(self) -> KElem:
        """z + conj(z), always in K."""
        return self.c1

    def __eq__(self, other) -> bool:
        return (isinstance(other, LElem)
                and self.c0 == other.c0 and self.c1 == other.c1)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.c0, self.c1))
        return self._hash

    def __str__(self) -> str:
        if self.c1.is_zero():
            return str(self.c0)
        es = "e" if self.c1.is_one() else f"({self.c1})*e"
        if self.c0.is_zero():
            return es
        return f"{self.c0} + {es}"

    def __repr__(self) -> str:
        return f"LElem({self})"


L_ZERO = LElem(K_ZERO, K_ZERO)
L_ONE = LElem(K_ONE, K_ZERO)
L_E = LElem(K_ZERO, K_ONE)


def kscale(k: KElem, z: LElem) -> LElem:
    """Multiply an L element by a K scalar."""
    return LElem(k * z.c0, k * z.c1)


# ----------------------------------------------------------------------
# validation report plumbing
# ----------------------------------------------------------------------

@dataclass
class ValidationCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[ValidationCheck] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(ValidationCheck(name, passed, detail))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            line = f"{status}  {c.name}"
            if c.detail:
                line += f"  [{c.detail}]"
            lines.append(line)
        return "\n".join(lines)


# ----------------------------------------------------------------------
# field instance: delta, phi(e), beta, alpha
# ----------------------------------------------------------------------

class FieldInstance:
    """Binds the free constants of the tower and provides L arithmetic.

    The ground endomorphism phi on K is fixed (s -> t, t -> s^2); the
    instance supplies delta (so L is defined), the image phi(e), and the
    form constants beta in K, alpha = phi(beta) in K'.
    """

    def __init__(self, delta: KElem, phi_e: LElem, beta: KElem, alpha: KElem):
        self.delta = delta
        self.phi_e = phi_e
        self.beta = beta
        self.alpha = alpha
        if beta.is_zero() or alpha.is_zero():
            raise FieldError("beta and alpha must be nonzero")
        if phi_e.c1.is_zero():
            raise FieldError("phi(e) must generate L over K")
        self.beta_inv = beta.inv()
        self.alpha_inv = alpha.inv()
        self.beta_sq = beta.square()
        self.beta_sq_inv = self.beta_sq.inv()

    # -- L arithmetic -------------------------------------------------------

    def lmul(self, z: LElem, w: LElem) -> LElem:
        """(a0 + a1 e)(b0 + b1 e) with e^2 reduced to e + delta."""
        a0, a1 = z.c0, z.c1
        b0, b1 = w.c0, w.c1
        if a1.is_zero():
            if a0.is_zero():
                return L_ZERO
            return LElem(a0 * b0, a0 * b1)
        if b1.is_zero():
            if b0.is_zero():
                return L_ZERO
            return LElem(b0 * a0, b0 * a1)
        a1b1 = a1 * b1
        return LElem(a0 * b0 + a1b1 * self.delta,
                     a0 * b1 + a1 * b0 + a1b1)

    def lnorm(self, z: LElem) -> KElem:
        """z * conj(z) = c0^2 + c0 c1 + delta c1^2, an element of K."""
        return z.c0.square() + z.c0 * z.c1 + self.delta * z.c1.square()

    def linv(self, z: LElem) -> LElem:
        if z.is_zero():
            raise FieldError("inversion of zero in L")
        n_inv = self.lnorm(z).inv()
        zbar = z.conj()
        return LElem(n_inv * zbar.c0, n_inv * zbar.c1)

    def ldiv(self, z: LElem, w: LElem) -> LElem:
        return self.lmul(z, self.linv(w))

    def lsquare(self, z: LElem) -> LElem:
        c0, c1 = z.c0, z.c1
        c1sq = c1.square()
        return LElem(c0.square() + self.delta * c1sq, c1sq)

    # -- the twist on L -------------------------------------------------------

    def phi_l(self, z: LElem) -> LElem:
        """phi(c0 + c1 e) = phi(c0) + phi(c1) * phi(e)."""
        f0 = phi_k(z.c0)
        f1 = phi_k(z.c1)
        return LElem(f0 + f1 * self.phi_e.c0, f1 * self.phi_e.c1)

    def pow2theta_l(self, z: LElem) -> LElem:
        """z^(2*theta) = phi(z) on all of L."""
        return self.phi_l(z)

    def lprime_member(self, z: LElem) -> bool:
        """Membership in L' = phi(L): both phi-preimage coordinates in K'."""
        p0, p1 = self.phi_e.c0, self.phi_e.c1
        d1 = z.c1 / p1
        if not kprime_member(d1):
            return False
        return kprime_member(z.c0 + d1 * p0)

    def theta_l(self, z: LElem) -> LElem:
        """Inverse of phi on L'."""
        p0, p1 = self.phi_e.c0, self.phi_e.c1
        d1 = z.c1 / p1
        c1 = theta_k(d1)  # raises FieldError outside K'
        c0 = theta_k(z.c0 + d1 * p0)
        return LElem(c0, c1)

    def ltrace_prime(self, z: LElem) -> KElem:
        """Trace of an L' element, landing in K'."""
        return z.trace()

    # -- instance validation ---------------------------------------------------

    def validate(self, seed: int = 0, samples: int = 20,
                 max_degree: int = 3) -> ValidationReport:
        """Machine checks of the defining conditions; anisotropy is probed,
        not proved."""
        from .sampling import Rng, sample_k, sample_l

        rep = ValidationReport()
        rng = Rng(seed)

        # (i) x^2 + x + delta has no root in K (roots reduce to the
        # polynomial case; a non-square denominator of delta kills all
        # candidates outright).
        root = self._find_artin_schreier_root(max_degree)
        rep.add("irreducible-artin-schreier",
                root is None,
                "" if root is None else f"root found: {root}")

        # (ii) phi(e) satisfies the image of e's minimal polynomial, making
        # phi a ring endomorphism of L, and phi o phi squares samples.
        pe = self.phi_e
        min_poly = self.lmul(pe, pe) + pe + LElem.from_k(phi_k(self.delta))
        rep.add("phiE-satisfies-image-minimal-polynomial", min_poly.is_zero(),
                "" if min_poly.is_zero() else f"residue: {min_poly}")
        tits_ok = True
        witness = ""
        for _ in range(samples):
            f = sample_k(rng, max_degree)
            if phi_k(phi_k(f)) != f.square():
                tits_ok, witness = False, f"K sample: {f}"
                break
            z = sample_l(rng, max_degree)
            if self.phi_l(self.phi_l(z)) != self.lsquare(z):
                tits_ok, witness = False, f"L sample: {z}"
                break
        rep.add("twist-squared-is-frobenius", tits_ok, witness)
        conj_ok = self.phi_e.c1.is_one()
        for _ in range(samples if not conj_ok else 4):
            z = sample_l(rng, max_degree)
            if self.phi_l(z.conj()) != self.phi_l(z).conj():
                conj_ok = False
                break
        else:
            conj_ok = True
        rep.add("twist-commutes-with-conjugation", conj_ok)

        # (iii) alpha = phi(beta) and alpha lies in K'.
        rep.add("alpha-is-twist-of-beta", phi_k(self.beta) == self.alpha,
                f"phi(beta)={phi_k(self.beta)}, alpha={self.alpha}")
        rep.add("alpha-in-kprime", kprime_member(self.alpha))

        # (iv) randomized anisotropy probing of both defining forms.
        cx1 = self._probe_form1(rng, samples, max_degree)
        rep.add("anisotropy-form1-probe", cx1 is None,
                "no nontrivial zero found (evidence, not proof)"
                if cx1 is None else f"counterexample: {cx1}")
        cx2 = self._probe_form2(rng, samples, max_degree)
        rep.add("anisotropy-form2-probe", cx2 is None,
                "no nontrivial zero found (evidence, not proof)"
                if cx2 is None else f"counterexample: {cx2}")

        # (v) a counterexample in one form maps through the twist to the other.
        if cx1 is not None:
            u, v, a = cx1
            x, y, b = self.phi_l(u), self.phi_l(v), theta_k(a)
            val = self.form2(x, y, b)
            rep.add("counterexample-transfers-1to2", val.is_zero(), str(val))
        if cx2 is not None:
            x, y, b = cx2
            u, v, a = self.theta_l(x), self.theta_l(y), phi_k(b)
            val = self.form1(u, v, a)
            rep.add("counterexample-transfers-2to1", val.is_zero(), str(val))
        return rep

    def form1(self, u: LElem, v: LElem, a: KElem) -> KElem:
        """u ubar + alpha v vbar + beta a  (u, v in L, a in K')."""
        return self.lnorm(u) + self.alpha * self.lnorm(v) + self.beta * a

    def form2(self, x: LElem, y: LElem, b: KElem) -> KElem:
        """x xbar + beta^2 y ybar + alpha b^2  (x, y in L', b in K)."""
        return self.lnorm(x) + self.beta_sq * self.lnorm(y) + self.alpha * b.square()

    def _probe_form1(self, rng, samples: int, max_degree: int):
        from .sampling import sample_k, sample_l
        for _ in range(samples):
            u = sample_l(rng, max_degree)
            v = sample_l(rng, max_degree)
            a = phi_k(sample_k(rng, max_degree))
            if u.is_zero() and v.is_zero() and a.is_zero():
                continue
            if self.form1(u, v, a).is_zero():
                return (u, v, a)
        return None

    def _probe_form2(self, rng, samples: int, max_degree: int):
        from .sampling import sample_k, sample_l
        for _ in range(samples):
            x = self.phi_l(sample_l(rng, max_degree))
            y = self.phi_l(sample_l(rng, max_degree))
            b = sample_k(rng, max_degree)
            if x.is_zero() and y.is_zero() and b.is_zero():
                continue
            if self.form2(x, y, b).is_zero():
                return (x, y, b)
        return None

    def _find_artin_schreier_root(self, max_degree: int):
        """Exhaustive search for a root of x^2 + x + delta up to the bound.

        A rational root p/q in lowest terms forces q | p^2, so q = 1 when
        delta is a polynomial; for fractional delta = n/d the denominator
        must satisfy q^2 = d, reducing to p^2 + p*q + n = 0.
        """
        n, d = self.delta.num, self.delta.den
        if d.is_one():
            q = Poly2.one()
        else:
            if not d.all_exponents_even():
                return None  # no square denominator, no root at all
            q = d.sqrt()
        monos = [(i, j) for i in range(max_degree + 1)
                 for j in range(max_degree + 1 - i)]
        for bits in range(1 << len(monos)):
            p = Poly2.from_terms(m for k, m in enumerate(monos) if bits >> k & 1)
            if p.square() + p * q + n == Poly2.zero():
                return KElem(p, q)
        return None

    def __repr__(self) -> str:
        return (f"FieldInstance(delta={self.delta}, phiE={self.phi_e}, "
                f"beta={self.beta}, alpha={self.alpha})")


def default_instance() -> FieldInstance:
    """delta = s + t, phi(e) = e + s, beta = s, alpha = t."""
    return FieldInstance(delta=K_S + K_T,
                         phi_e=LElem(K_S, K_ONE),
                         beta=K_S,
                         alpha=K_T)
