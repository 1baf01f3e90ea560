"""Instance files: four definitions over s, t, e with +, *, /, ^, parens.

    delta = s + t
    phiE  = e + s
    beta  = s
    alpha = t

Recursive descent with the usual precedence (^ binds tightest, then
* and /, then + and -); '-' is accepted as a synonym of '+' since the
coefficients live in GF(2).  Errors carry line and column.
"""

from __future__ import annotations

from .fields import FieldError, FieldInstance, KElem, LElem


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


_PUNCT = set("+-*/^()")


class _Tokenizer:
    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        self._scan()
        self.idx = 0

    def _scan(self):
        i, n = 0, len(self.text)
        while i < n:
            ch = self.text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in _PUNCT:
                self.tokens.append(("punct", ch, i + 1))
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and self.text[j].isdigit():
                    j += 1
                self.tokens.append(("int", self.text[i:j], i + 1))
                i = j
                continue
            if ch in ("s", "t", "e"):
                nxt = self.text[i + 1] if i + 1 < n else " "
                if nxt.isalnum() or nxt == "_":
                    raise ParseError(f"unknown name starting at {self.text[i:i+8]!r}",
                                     self.line, i + 1)
                self.tokens.append(("var", ch, i + 1))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", self.line, i + 1)
        self.tokens.append(("end", "", n + 1))

    def peek(self):
        return self.tokens[self.idx]

    def take(self):
        tok = self.tokens[self.idx]
        if tok[0] != "end":
            self.idx += 1
        return tok


class _Parser:
    """expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)* ;
    factor := atom ('^' int)* ; atom := var | int | '(' expr ')'."""

    def __init__(self, tz: _Tokenizer, inst_ops):
        self.tz = tz
        self.ops = inst_ops

    def parse(self) -> LElem:
        val = self.expr()
        kind, text, col = self.tz.peek()
        if kind != "end":
            raise ParseError(f"trailing input {text!r}", self.tz.line, col)
        return val

    def expr(self) -> LElem:
        val = self.term()
        while True:
            kind, text, _ = self.tz.peek()
            if kind == "punct" and text in "+-":
                self.tz.take()
                val = val + self.term()
            else:
                return val

    def term(self) -> LElem:
        val = self.factor()
        while True:
            kind, text, col = self.tz.peek()
            if kind == "punct" and text in "*/":
                self.tz.take()
                rhs = self.factor()
                if text == "*":
                    val = self.ops.lmul(val, rhs)
                else:
                    if rhs.is_zero():
                        raise ParseError("division by zero", self.tz.line, col)
                    val = self.ops.ldiv(val, rhs)
            else:
                return val

    def factor(self) -> LElem:
        val = self.atom()
        while True:
            kind, text, col = self.tz.peek()
            if kind == "punct" and text == "^":
                self.tz.take()
                kind2, text2, col2 = self.tz.take()
                if kind2 != "int":
                    raise ParseError("exponent must be a non-negative integer",
                                     self.tz.line, col2)
                n = int(text2)
                acc = LElem.one()
                for _ in range(n):
                    acc = self.ops.lmul(acc, val)
                val = acc
            else:
                return val

    def atom(self) -> LElem:
        kind, text, col = self.tz.take()
        if kind == "var":
            if text == "s":
                return LElem(KElem.s())
            if text == "t":
                return LElem(KElem.t())
            return LElem.e()
        if kind == "int":
            return LElem.one() if int(text) % 2 else LElem.zero()
        if kind == "punct" and text == "(":
            val = self.expr()
            kind2, text2, col2 = self.tz.take()
            if not (kind2 == "punct" and text2 == ")"):
                raise ParseError("expected ')'", self.tz.line, col2)
            return val
        if kind == "end":
            raise ParseError("unexpected end of expression", self.tz.line, col)
        raise ParseError(f"unexpected token {text!r}", self.tz.line, col)


class _BootstrapOps:
    """L arithmetic for parsing, bound to a provisional delta.

    delta is needed to multiply in L, but delta is itself being parsed;
    expressions for delta, beta, alpha must stay inside K (no 'e'), so
    multiplication never actually reduces e^2 while parsing them.  For
    phiE a second pass uses the already-parsed delta.
    """

    def __init__(self, delta: KElem | None):
        self.delta = delta

    def lmul(self, z: LElem, w: LElem) -> LElem:
        if z.c1.is_zero() or w.c1.is_zero():
            return LElem(z.c0 * w.c0 + KElem.zero(),
                         z.c0 * w.c1 + z.c1 * w.c0)
        if self.delta is None:
            raise FieldError("e*e used before delta is known")
        a1b1 = z.c1 * w.c1
        return LElem(z.c0 * w.c0 + a1b1 * self.delta,
                     z.c0 * w.c1 + z.c1 * w.c0 + a1b1)

    def ldiv(self, z: LElem, w: LElem) -> LElem:
        if not w.c1.is_zero():
            if self.delta is None:
                raise FieldError("division by an e-expression before delta is known")
            n = w.c0.square() + w.c0 * w.c1 + self.delta * w.c1.square()
            wbar = w.conj()
            inv = LElem(n.inv() * wbar.c0, n.inv() * wbar.c1)
            return self.lmul(z, inv)
        return LElem(z.c0 / w.c0, z.c1 / w.c0)


def parse_expression(text: str, line: int, delta: KElem | None) -> LElem:
    return _Parser(_Tokenizer(text, line), _BootstrapOps(delta)).parse()


def parse_instance_text(text: str) -> FieldInstance:
    """Parse the four definitions into a FieldInstance (not yet validated)."""
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ParseError("expected 'name = expression'", lineno,
                             len(line) - len(line.lstrip()) + 1)
        name, _, rhs = stripped.partition("=")
        name = name.strip()
        if name not in ("delta", "phiE", "beta", "alpha"):
            raise ParseError(f"unknown field {name!r}", lineno, 1)
        if name in raw:
            raise ParseError(f"duplicate field {name!r}", lineno, 1)
        raw[name] = (rhs, lineno)
    missing = {"delta", "phiE", "beta", "alpha"} - set(raw)
    if missing:
        raise ParseError(f"missing fields: {', '.join(sorted(missing))}", 0, 0)

    def as_k(name: str, delta: KElem | None) -> KElem:
        rhs, lineno = raw[name]
        val = parse_expression(rhs, lineno, delta)
        if not val.c1.is_zero():
            raise ParseError(f"{name} must not involve e", lineno, 1)
        return val.c0

    delta = as_k("delta", None)
    beta = as_k("beta", delta)
    alpha = as_k("alpha", delta)
    phi_e = parse_expression(*raw["phiE"], delta)
    return FieldInstance(delta=delta, phi_e=phi_e, beta=beta, alpha=alpha)


def parse_instance_file(path: str) -> FieldInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance_text(fh.read())


def load_instance(path: str, seed: int = 0, samples: int = 20,
                  max_degree: int = 3):
    """Parse and validate; returns the instance with its report attached."""
    inst = parse_instance_file(path)
    report = inst.validate(seed=seed, samples=samples, max_degree=max_degree)
    return inst, report
