"""Sparse multivariate polynomials over Q(i).

A polynomial is a map from exponent tuples to nonzero :class:`Scalar`
coefficients, tied to a :class:`CoordinateSystem`. Values are treated as
immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .scalar import ONE, ZERO, I, Scalar, as_scalar, parse_rational

__all__ = [
    "CoordinateSystem",
    "CoordinateMismatch",
    "Polynomial",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "poly_partial",
    "homogeneous_parts",
    "vanishes_on_sigma",
    "vanishes_on_coords",
    "parse_polynomial",
    "format_polynomial",
    "monomial_key",
    "monomials_of_degree",
]

Monomial = tuple


class CoordinateMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CoordinateSystem:
    """Ordered coordinate names.

    Symplectic systems carry ``n`` pairs laid out as ``(x1, y1, ..., xn, yn)``;
    other systems (regular foliation charts, complex charts) just carry names.
    """

    names: tuple[str, ...]
    pairs: int | None = None

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate coordinate names: {self.names}")
        if self.pairs is not None and 2 * self.pairs != len(self.names):
            raise ValueError("a paired system needs exactly 2n coordinates")

    @classmethod
    def symplectic(cls, n: int) -> "CoordinateSystem":
        names: list[str] = []
        for i in range(1, n + 1):
            names += [f"x{i}", f"y{i}"]
        return cls(tuple(names), n)

    @classmethod
    def regular(cls, m: int) -> "CoordinateSystem":
        return cls(tuple(f"p{i}" for i in range(1, m + 1)))

    @property
    def n(self) -> int:
        if self.pairs is None:
            raise ValueError("coordinate system has no symplectic pairing")
        return self.pairs

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown coordinate {name!r}") from None

    def pair_indices(self, i: int) -> tuple[int, int]:
        """0-based positions of (x_i, y_i) for the 1-based pair index ``i``."""
        if not 1 <= i <= self.n:
            raise IndexError(f"pair index {i} out of range 1..{self.n}")
        return 2 * (i - 1), 2 * (i - 1) + 1


def monomial_key(m: Monomial):
    # graded lex; sorting with reverse=True lists x1^2, x1*y1, y1^2, ...
    return (sum(m), tuple(m))


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    """All exponent tuples of total degree ``d``, in descending graded-lex order."""
    out: list[Monomial] = []

    def rec(prefix: list[int], left: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for e in range(left, -1, -1):
            rec(prefix + [e], left - e, slots - 1)

    if nvars == 0:
        return [()] if d == 0 else []
    rec([], d, nvars)
    return out


def _check(p: "Polynomial", q: "Polynomial"):
    if p.coords != q.coords:
        raise CoordinateMismatch(f"{p.coords.names} vs {q.coords.names}")


class Polynomial:
    __slots__ = ("coords", "terms", "_hash")

    def __init__(self, coords: CoordinateSystem, terms: Mapping | None = None):
        self.coords = coords
        clean: dict = {}
        if terms:
            nv = coords.size
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != nv or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m} for {nv} coordinates")
                c = as_scalar(c)
                if c:
                    clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, coords, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p.coords = coords
        p.terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, coords: CoordinateSystem) -> "Polynomial":
        return cls._raw(coords, {})

    @classmethod
    def constant(cls, coords: CoordinateSystem, c) -> "Polynomial":
        c = as_scalar(c)
        if not c:
            return cls.zero(coords)
        return cls._raw(coords, {(0,) * coords.size: c})

    @classmethod
    def var(cls, coords: CoordinateSystem, name_or_index) -> "Polynomial":
        j = coords.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        m = [0] * coords.size
        m[j] = 1
        return cls._raw(coords, {tuple(m): ONE})

    @classmethod
    def monomial(cls, coords: CoordinateSystem, exps, c=1) -> "Polynomial":
        return cls(coords, {tuple(exps): c})

    @classmethod
    def parse(cls, coords: CoordinateSystem, text: str) -> "Polynomial":
        return parse_polynomial(coords, text)

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int | None:
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self.terms.values())

    def coefficient(self, exps) -> Scalar:
        return self.terms.get(tuple(exps), ZERO)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    # arithmetic

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.coords, other)
        _check(self, other)
        if len(self.terms) < len(other.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial._raw(self.coords, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.coords, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.coords, other)
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial.constant(self.coords, other) - self

    def scale(self, c) -> "Polynomial":
        c = as_scalar(c)
        if not c:
            return Polynomial.zero(self.coords)
        return Polynomial._raw(self.coords, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        _check(self, other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw(self.coords, {m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.coords, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def partial(self, j) -> "Polynomial":
        if isinstance(j, str):
            j = self.coords.index(j)
        out = {}
        for m, c in self.terms.items():
            e = m[j]
            if e:
                mm = list(m)
                mm[j] = e - 1
                out[tuple(mm)] = c * e
        return Polynomial._raw(self.coords, out)

    def conjugate(self) -> "Polynomial":
        """Conjugate the coefficients (not the variables)."""
        return Polynomial._raw(self.coords, {m: c.conjugate() for m, c in self.terms.items()})

    def truncate(self, max_degree: int) -> "Polynomial":
        return Polynomial._raw(
            self.coords, {m: c for m, c in self.terms.items() if sum(m) <= max_degree}
        )

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.coords, {m: c for m, c in self.terms.items() if sum(m) == d})

    def set_zero(self, indices: Iterable[int]) -> "Polynomial":
        """Substitute 0 for the listed coordinates."""
        idx = tuple(indices)
        return Polynomial._raw(
            self.coords, {m: c for m, c in self.terms.items() if all(m[j] == 0 for j in idx)}
        )

    def substitute(self, images: Sequence["Polynomial"], target: CoordinateSystem) -> "Polynomial":
        """Compose: replace coordinate ``j`` by ``images[j]`` (polynomials over ``target``)."""
        if len(images) != self.coords.size:
            raise ValueError("one image per coordinate is required")
        for q in images:
            if q.coords != target:
                raise CoordinateMismatch("substitution images must share the target system")
        cache: dict = {}

        def power(j, e):
            key = (j, e)
            if key not in cache:
                cache[key] = images[j] if e == 1 else power(j, e - 1) * images[j]
            return cache[key]

        acc: dict = {}
        one = (0,) * target.size
        for m, c in self.terms.items():
            term = {one: c}
            for j, e in enumerate(m):
                if e:
                    pj = power(j, e).terms
                    nxt: dict = {}
                    for m1, c1 in term.items():
                        for m2, c2 in pj.items():
                            mm = tuple(a + b for a, b in zip(m1, m2))
                            v = nxt.get(mm)
                            nxt[mm] = c1 * c2 if v is None else v + c1 * c2
                    term = nxt
            for mm, v in term.items():
                w = acc.get(mm)
                acc[mm] = v if w is None else w + v
        return Polynomial._raw(target, {m: c for m, c in acc.items() if c})

    def relabel(self, coords: CoordinateSystem) -> "Polynomial":
        """Same terms, read over another system of the same size."""
        if coords.size != self.coords.size:
            raise CoordinateMismatch("relabel needs equally many coordinates")
        return Polynomial._raw(coords, dict(self.terms))

    # comparison and display

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coords == other.coords and self.terms == other.terms
        if isinstance(other, (int, Scalar)):
            return self == Polynomial.constant(self.coords, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.coords, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_scale(p: Polynomial, c) -> Polynomial:
    return p.scale(c)


def poly_partial(p: Polynomial, coord) -> Polynomial:
    return p.partial(coord)


def homogeneous_parts(p: Polynomial) -> list[tuple[int, Polynomial]]:
    buckets: dict[int, dict] = {}
    for m, c in p.terms.items():
        buckets.setdefault(sum(m), {})[m] = c
    return [(d, Polynomial._raw(p.coords, buckets[d])) for d in sorted(buckets)]


def vanishes_on_coords(p: Polynomial, indices: Sequence[int]) -> bool:
    """True iff every term has positive total degree in the given coordinates."""
    return all(any(m[j] for j in indices) for m in p.terms)


def vanishes_on_sigma(p: Polynomial, i: int, basis=None) -> bool:
    """Does ``p`` vanish on the zero set of the i-th Williamson field?

    Without a basis, Sigma_i is ``{x_i = y_i = 0}``. With a basis, a field
    belonging to a focus-focus pair uses the common zero set of the pair.
    """
    if basis is not None:
        idx = basis.sigma_indices(i)
    else:
        idx = p.coords.pair_indices(i)
    return vanishes_on_coords(p, idx)


# text format ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_]*\d*)|(\^)|(\*)|(/)|(\()|(\))|(\+)|(-))")


class PolynomialSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    kinds = ("int", "name", "^", "*", "/", "(", ")", "+", "-")
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        for kind, val in zip(kinds, m.groups()):
            if val is not None:
                out.append((kind, val))
                break
        pos = m.end()
    return out


class _Parser:
    def __init__(self, coords: CoordinateSystem, text: str):
        self.coords = coords
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise PolynomialSyntaxError("unexpected end of input")
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise PolynomialSyntaxError(f"expected {kind!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            acc = acc + self.term().scale(sign)
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek() in ("int", "name", "(", "*"):
            if self.peek() == "*":
                self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        kind = self.peek()
        if kind == "int":
            num = self.take()[1]
            if self.peek() == "/":
                self.take()
                den = self.take("int")[1]
                val = parse_rational(f"{num}/{den}")
            else:
                val = parse_rational(num)
            base = Polynomial.constant(self.coords, Scalar(val))
        elif kind == "name":
            name = self.take()[1]
            if name in self.coords.names:
                base = Polynomial.var(self.coords, name)
            elif name == "I":
                base = Polynomial.constant(self.coords, I)
            else:
                raise PolynomialSyntaxError(f"unknown coordinate {name!r}")
        elif kind == "(":
            self.take()
            base = self.expr()
            self.take(")")
        elif kind == "-":
            self.take()
            return -self.factor()
        else:
            raise PolynomialSyntaxError(f"unexpected token {self.toks[self.i][1] if kind else 'end'!r}")
        if self.peek() == "^":
            self.take()
            base = base ** int(self.take("int")[1])
        return base

    def parse(self) -> Polynomial:
        if not self.toks:
            raise PolynomialSyntaxError("empty polynomial text")
        p = self.expr()
        if self.i != len(self.toks):
            raise PolynomialSyntaxError(f"trailing input at token {self.toks[self.i][1]!r}")
        return p


def parse_polynomial(coords: CoordinateSystem, text: str) -> Polynomial:
    return _Parser(coords, text).parse()


def _monomial_str(coords: CoordinateSystem, m) -> str:
    parts = []
    for name, e in zip(coords.names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return " ".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    chunks = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        mono = _monomial_str(p.coords, m)
        if c.im != 0:
            sign, body = "+", str(c)
        else:
            sign = "-" if c.re < 0 else "+"
            mag = Scalar._raw(abs(c.re), c.im)
            body = "" if (mag == ONE and mono) else str(mag)
        text = " ".join(s for s in (body, mono) if s)
        if k == 0:
            chunks.append(text if sign == "+" else f"-{text}")
        else:
            chunks.append(f"{sign} {text}")
    return " ".join(chunks)
