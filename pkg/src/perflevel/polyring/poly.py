"""Multivariate polynomials over a prime field."""

from __future__ import annotations

import re
from itertools import combinations_with_replacement

from ..errors import MalformedInput
from ..linalg import MAX_PRIME

ORDERS = ("grevlex", "lex")


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def lex_key(exp):
    return exp


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_quo(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class PolynomialRing:
    """The ring GF(p)[vars] with a fixed monomial order."""

    def __init__(self, p, variables, order="grevlex"):
        if not isinstance(p, int) or not is_prime(p):
            raise MalformedInput(f"p = {p!r} is not prime")
        if p >= MAX_PRIME:
            raise MalformedInput(f"p = {p} exceeds the supported bound {MAX_PRIME}")
        if order not in ORDERS:
            raise MalformedInput(f"unknown monomial order {order!r}")
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise MalformedInput("variable names must be distinct")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise MalformedInput(f"bad variable name {v!r}")
        self.p = p
        self.variables = variables
        self.nvars = len(variables)
        self.order = order
        self._keyfn = grevlex_key if order == "grevlex" else lex_key
        self._keys = {}
        self._monos = {}

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.p == other.p
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.p, self.variables, self.order))

    def __repr__(self):
        return f"GF({self.p})[{', '.join(self.variables)}] ({self.order})"

    def key(self, exp):
        k = self._keys.get(exp)
        if k is None:
            k = self._keys[exp] = self._keyfn(exp)
        return k

    def with_order(self, order):
        if order == self.order:
            return self
        return PolynomialRing(self.p, self.variables, order)

    @property
    def zero_exp(self):
        return (0,) * self.nvars

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        return Polynomial(self, {self.zero_exp: c})

    def monomial(self, exp, c=1):
        return Polynomial(self, {tuple(exp): c})

    def gen(self, i):
        exp = [0] * self.nvars
        exp[i] = 1
        return self.monomial(tuple(exp))

    @property
    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def var(self, name):
        try:
            return self.gen(self.variables.index(name))
        except ValueError:
            raise MalformedInput(f"unknown variable {name!r}") from None

    def monomials(self, degree):
        """All exponent vectors of total ``degree``, largest first."""
        if degree in self._monos:
            return self._monos[degree]
        if degree < 0:
            out = []
        elif self.nvars == 0:
            out = [()] if degree == 0 else []
        else:
            out = []
            for combo in combinations_with_replacement(range(self.nvars), degree):
                exp = [0] * self.nvars
                for v in combo:
                    exp[v] += 1
                out.append(tuple(exp))
            out.sort(key=self.key, reverse=True)
        self._monos[degree] = out
        return out

    def __call__(self, value):
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise MalformedInput("polynomial belongs to a different ring")
            return value
        if isinstance(value, int):
            return self.constant(value)
        if isinstance(value, str):
            return parse_polynomial(self, value)
        raise TypeError(f"cannot convert {value!r} to a polynomial")

    def parse(self, text):
        return parse_polynomial(self, text)


class Polynomial:
    """Immutable polynomial: a map from exponent tuples to nonzero residues."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        p = ring.p
        clean = {}
        for exp, c in terms.items():
            c %= p
            if c:
                clean[exp] = c
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise MalformedInput("polynomials live in different rings")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial._raw(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial(self.ring, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def mul_term(self, exp, c):
        p = self.ring.p
        return Polynomial._raw(
            self.ring, {mono_mul(e, exp): (v * c) % p for e, v in self.terms.items()}
        ) if c % p else self.ring.zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self):
        return self.terms.get(self.ring.zero_exp, 0)

    def sorted_terms(self, order=None):
        key = self.ring.key if order is None else self.ring.with_order(order).key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead_term(self, order=None):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.key if order is None else self.ring.with_order(order).key
        exp = max(self.terms, key=key)
        return exp, self.terms[exp]

    def lead_monomial(self, order=None):
        return self.lead_term(order)[0]

    def subs(self, images):
        """Substitute ``images[i]`` (polynomials of one target ring) for variable i."""
        images = list(images)
        if len(images) != self.ring.nvars:
            raise MalformedInput("need one image per variable")
        target = images[0].ring if images else self.ring
        out = target.zero()
        cache = {}
        for exp, c in self.terms.items():
            term = target.constant(c)
            for i, e in enumerate(exp):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    term = term * cache[key]
            out = out + term
        return out

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_polynomial(f):
    if not f.terms:
        return "0"
    p = f.ring.p
    names = f.ring.variables
    parts = []
    for exp, c in f.sorted_terms():
        neg = c > p // 2
        mag = p - c if neg else c
        factors = []
        for name, e in zip(names, exp):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, ident, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", int(num), start))
        elif ident is not None:
            out.append(("id", ident, start))
        else:
            if sym not in "+-*^":
                raise MalformedInput(f"unexpected character {sym!r} at offset {start}")
            out.append((sym, sym, start))
        pos = m.end()
    return out


def parse_polynomial(ring, text):
    """Parse ``c*x1^a*x2^b + ...``; ``*`` joins factors and ``^`` marks powers."""
    tokens = _tokenize(text)
    if not tokens:
        raise MalformedInput("empty polynomial")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text))

    def factor():
        nonlocal pos
        kind, val, at = peek()
        if kind == "num":
            pos += 1
            return ring.constant(val)
        if kind == "id":
            pos += 1
            base = ring.var(val)
            if peek()[0] == "^":
                pos += 1
                k2, v2, at2 = peek()
                if k2 != "num":
                    raise MalformedInput(f"expected exponent at offset {at2}")
                pos += 1
                return base ** v2
            return base
        raise MalformedInput(f"expected a coefficient or variable at offset {at}")

    def term():
        nonlocal pos
        out = factor()
        while peek()[0] == "*":
            pos += 1
            out = out * factor()
        return out

    sign = 1
    if peek()[0] in ("+", "-"):
        sign = -1 if peek()[0] == "-" else 1
        pos += 1
    total = term() * sign
    while pos < len(tokens):
        kind, _, at = peek()
        if kind not in ("+", "-"):
            raise MalformedInput(f"expected '+' or '-' at offset {at}")
        pos += 1
        t = term()
        total = total + t if kind == "+" else total - t
    return total
