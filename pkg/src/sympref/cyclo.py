"""Exact arithmetic in cyclotomic fields.

A value is stored as a sparse rational combination of roots of unity
``E(n)^k`` over the Zumbroich basis of Q(zeta_n), with ``n`` minimal for the
value (never congruent to 2 mod 4).  Canonical forms are unique, so equality
is structural and hashing is sound.

The Zumbroich basis of Q(zeta_n) consists of the powers ``zeta_n^j`` whose
CRT component at each prime power ``p^v || n`` lies in a fixed window:
for odd ``p`` the component avoids the residues ``0..p^(v-1)-1`` and for
``p = 2`` (v >= 2) it lies in ``0..2^(v-1)-1``.  Rewriting into the basis
uses only the vanishing sums ``sum_i zeta_p^i = 0`` and ``zeta_4^2 = -1``
lifted to conductor ``n``, and membership of a value in a smaller cyclotomic
field can be read off the support, which is what makes minimal conductors
cheap to maintain.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

__all__ = [
    "Cyclotomic",
    "ParseError",
    "root_of_unity",
    "parse_literal",
    "format_literal",
    "zumbroich_exponents",
]

RationalLike = Union[int, Fraction]
Scalar = Union[int, Fraction, "Cyclotomic"]


class ParseError(ValueError):
    """Raised for malformed scalar literals; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            v = 0
            while n % d == 0:
                n //= d
                v += 1
            out.append((d, v))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


class _ConductorData:
    """Per-conductor tables driving basis membership and rewriting."""

    __slots__ = ("n", "primes")

    def __init__(self, n: int):
        self.n = n
        self.primes = []
        for p, v in _factorize(n):
            q = p**v
            cof = n // q
            inv = pow(cof, -1, q)
            # step moves the CRT component at p by p^(v-1) and nothing else
            step = (q // p) * cof % n
            self.primes.append((p, q, q // p, inv, step))

    def component(self, j: int, idx: int) -> int:
        p, q, _, inv, _ = self.primes[idx]
        return (j % q) * inv % q


_CONDUCTOR_CACHE: dict[int, _ConductorData] = {}


def _conductor_data(n: int) -> _ConductorData:
    data = _CONDUCTOR_CACHE.get(n)
    if data is None:
        data = _CONDUCTOR_CACHE[n] = _ConductorData(n)
    return data


def _to_basis(n: int, coeffs: dict[int, Fraction]) -> dict[int, Fraction]:
    """Rewrite a sparse exponent->coefficient map into the Zumbroich basis."""
    if n == 1:
        total = sum(coeffs.values(), Fraction(0))
        return {0: total} if total else {}
    data = _conductor_data(n)
    for idx, (p, q, qp, inv, step) in enumerate(data.primes):
        bad: list[int] = []
        if p == 2:
            for j in coeffs:
                if (j % q) * inv % q >= qp:
                    bad.append(j)
            if not bad:
                continue
            updates: dict[int, Fraction] = {}
            for j in bad:
                c = coeffs.pop(j)
                k = (j - qp * (n // q)) % n
                updates[k] = updates.get(k, Fraction(0)) - c
        else:
            for j in coeffs:
                if (j % q) * inv % q < qp:
                    bad.append(j)
            if not bad:
                continue
            updates = {}
            for j in bad:
                c = coeffs.pop(j)
                for i in range(1, p):
                    k = (j + i * step) % n
                    updates[k] = updates.get(k, Fraction(0)) - c
        for k, c in updates.items():
            c = coeffs.get(k, Fraction(0)) + c
            if c:
                coeffs[k] = c
            else:
                coeffs.pop(k, None)
    return coeffs


def _descend(n: int, coeffs: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    """One round of conductor reduction; input must be in basis form."""
    if not coeffs:
        return 1, {}
    g = n
    for j in coeffs:
        g = gcd(g, j)
        if g == 1:
            break
    if g > 1:
        return n // g, {j // g: c for j, c in coeffs.items()}
    data = _conductor_data(n)
    for p, q, qp, inv, _ in data.primes:
        if q != p:
            continue  # handled by the gcd rule once all components vanish
        # p odd, p || n: the value descends iff coefficients are constant
        # along each fiber of p-components 1..p-1 over a fixed rest class.
        cof = n // p
        fibers: dict[int, list[int]] = {}
        for j in coeffs:
            fibers.setdefault(j % cof, []).append(j)
        ok = all(
            len(js) == p - 1 and len({coeffs[j] for j in js}) == 1
            for js in fibers.values()
        )
        if not ok:
            continue
        reduced: dict[int, Fraction] = {}
        for r, js in fibers.items():
            # exponent congruent to r mod n/p and 0 mod p, then divided by p
            jj = r * p * pow(p, -1, cof) % n if cof > 1 else 0
            reduced[jj // p] = -coeffs[js[0]]
        return cof, reduced
    return n, coeffs


def _canonical(n: int, coeffs: dict[int, Fraction]) -> tuple[int, tuple[tuple[int, Fraction], ...]]:
    coeffs = {j % n: c for j, c in coeffs.items() if c}
    merged: dict[int, Fraction] = {}
    for j, c in coeffs.items():
        merged[j] = merged.get(j, Fraction(0)) + c
    coeffs = {j: c for j, c in merged.items() if c}
    while True:
        if not coeffs:
            return 1, ()
        g = n
        for j in coeffs:
            g = gcd(g, j)
            if g == 1:
                break
        if g > 1:
            n //= g
            coeffs = {j // g: c for j, c in coeffs.items()}
        if n % 4 == 2:
            m = n // 2
            half = (m + 1) // 2
            folded: dict[int, Fraction] = {}
            for j, c in coeffs.items():
                k = j * half % m
                if j % 2:
                    c = -c
                folded[k] = folded.get(k, Fraction(0)) + c
            n = m
            coeffs = {j: c for j, c in folded.items() if c}
            continue
        coeffs = _to_basis(n, coeffs)
        n2, coeffs2 = _descend(n, coeffs)
        if n2 == n:
            return n, tuple(sorted(coeffs.items()))
        n, coeffs = n2, coeffs2


class Cyclotomic:
    """An exact element of the union of all cyclotomic fields.

    Instances are immutable; ``conductor`` is minimal for the value and
    ``items`` is the sorted support over the Zumbroich basis of that
    conductor.  All arithmetic returns canonical values.
    """

    __slots__ = ("conductor", "items", "_hash")

    def __init__(self, conductor: int = 1, coeffs: dict[int, RationalLike] | None = None):
        if conductor < 1:
            raise ValueError(f"conductor must be positive, got {conductor}")
        mapped = {}
        if coeffs:
            mapped = {int(j): Fraction(c) for j, c in coeffs.items()}
        n, items = _canonical(conductor, mapped)
        object.__setattr__(self, "conductor", n)
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "_hash", _hash_value(n, items))

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(value: RationalLike) -> "Cyclotomic":
        return Cyclotomic(1, {0: Fraction(value)})

    @staticmethod
    def _raw(n: int, items: tuple[tuple[int, Fraction], ...]) -> "Cyclotomic":
        obj = object.__new__(Cyclotomic)
        object.__setattr__(obj, "conductor", n)
        object.__setattr__(obj, "items", items)
        object.__setattr__(obj, "_hash", _hash_value(n, items))
        return obj

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.items

    def is_rational(self) -> bool:
        return self.conductor == 1

    def rational_value(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError(f"{self!r} is not rational")
        return self.items[0][1] if self.items else Fraction(0)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(value: Scalar) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Fraction)):
            return Cyclotomic.from_rational(value)
        return NotImplemented  # type: ignore[return-value]

    def _lift(self, n: int) -> dict[int, Fraction]:
        scale = n // self.conductor
        return {j * scale: c for j, c in self.items}

    def __add__(self, other: Scalar) -> "Cyclotomic":
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = _lcm_conductor(self.conductor, other.conductor)
        coeffs = self._lift(n)
        for j, c in other._lift(n).items():
            coeffs[j] = coeffs.get(j, Fraction(0)) + c
        return Cyclotomic(n, coeffs)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic._raw(self.conductor, tuple((j, -c) for j, c in self.items))

    def __sub__(self, other: Scalar) -> "Cyclotomic":
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Cyclotomic":
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Scalar) -> "Cyclotomic":
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_rational():
            q = other.rational_value()
            if not q:
                return _ZERO
            return Cyclotomic._raw(self.conductor, tuple((j, c * q) for j, c in self.items))
        if self.is_rational():
            return other * self.rational_value()
        n = _lcm_conductor(self.conductor, other.conductor)
        a = self._lift(n)
        b = other._lift(n)
        coeffs: dict[int, Fraction] = {}
        for j1, c1 in a.items():
            for j2, c2 in b.items():
                k = (j1 + j2) % n
                coeffs[k] = coeffs.get(k, Fraction(0)) + c1 * c2
        return Cyclotomic(n, coeffs)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self.items:
            raise ZeroDivisionError("cyclotomic division by zero")
        if self.conductor == 1:
            return Cyclotomic.from_rational(1 / self.items[0][1])
        n = self.conductor
        basis = zumbroich_exponents(n)
        index = {j: i for i, j in enumerate(basis)}
        d = len(basis)
        # columns of the multiplication-by-self matrix over the basis; lifted
        # supports are rewritten into the level-n basis before indexing
        cols = []
        for b in basis:
            prod = self * Cyclotomic._raw(n, ((b, Fraction(1)),))
            col = [Fraction(0)] * d
            for j, c in _to_basis(n, prod._lift(n)).items():
                col[index[j]] = c
            cols.append(col)
        rhs = [Fraction(0)] * d
        for j, c in _to_basis(n, {0: Fraction(1)}).items():
            rhs[index[j]] = c
        sol = _solve_fraction_system(cols, rhs)
        return Cyclotomic(n, {basis[i]: sol[i] for i in range(d)})

    def __truediv__(self, other: Scalar) -> "Cyclotomic":
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_rational():
            q = other.rational_value()
            if not q:
                raise ZeroDivisionError("cyclotomic division by zero")
            return self * (1 / q)
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "Cyclotomic":
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "Cyclotomic":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = _ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, zeta_n -> zeta_n^(-1)."""
        n = self.conductor
        return Cyclotomic(n, {(-j) % n: c for j, c in self.items})

    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta_n -> zeta_n^k; k must be a unit mod the conductor."""
        n = self.conductor
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not invertible modulo conductor {n}")
        return Cyclotomic(n, {j * k % n: c for j, c in self.items})

    # -- comparisons / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.conductor == other.conductor and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.items)

    # -- views -------------------------------------------------------------

    def numeric(self) -> complex:
        """Floating point shadow sending E(n) to exp(2*pi*i/n)."""
        n = self.conductor
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * j / n) for j, c in self.items),
            start=0j,
        )

    def __repr__(self) -> str:
        return f"Cyclotomic({format_literal(self)!r})"

    def __str__(self) -> str:
        return format_literal(self)


def _lcm_conductor(a: int, b: int) -> int:
    n = a * b // gcd(a, b)
    # canonical conductors are odd or divisible by 4, and lcm preserves that
    return n


def _hash_value(n: int, items: tuple[tuple[int, Fraction], ...]) -> int:
    # rationals hash like their Fraction so x == q implies hash(x) == hash(q)
    if n == 1:
        return hash(items[0][1]) if items else hash(0)
    return hash((n, items))


def _solve_fraction_system(cols: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve sum_i x_i * cols[i] = rhs by Gaussian elimination over Q."""
    d = len(rhs)
    aug = [[cols[i][r] for i in range(d)] + [rhs[r]] for r in range(d)]
    piv_cols = []
    row = 0
    for col in range(d):
        sel = next((r for r in range(row, d) if aug[r][col]), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [v * inv for v in aug[row]]
        for r in range(d):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[row])]
        piv_cols.append(col)
        row += 1
        if row == d:
            break
    if row < d and any(aug[r][d] for r in range(row, d)):
        raise ArithmeticError("inconsistent linear system in cyclotomic inverse")
    sol = [Fraction(0)] * d
    for r, col in enumerate(piv_cols):
        sol[col] = aug[r][d]
    return sol


_ZERO = Cyclotomic(1, {})
_ONE = Cyclotomic(1, {0: 1})


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """The root of unity E(n)^k as a canonical value."""
    if n < 1:
        raise ValueError(f"order of a root of unity must be >= 1, got {n}")
    return Cyclotomic(n, {k % n: 1})


def zumbroich_exponents(n: int) -> list[int]:
    """Sorted exponents j such that E(n)^j lies in the Zumbroich basis."""
    if n % 4 == 2:
        raise ValueError(f"{n} is not a canonical conductor")
    if n == 1:
        return [0]
    data = _conductor_data(n)
    out = []
    for j in range(n):
        ok = True
        for idx, (p, q, qp, inv, _) in enumerate(data.primes):
            s = (j % q) * inv % q
            if (p == 2 and s >= qp) or (p != 2 and s < qp):
                ok = False
                break
        if ok:
            out.append(j)
    return out


# -- literals ----------------------------------------------------------------


def format_literal(value: Cyclotomic) -> str:
    """Render a canonical value in the E(n) grammar; parse_literal inverts it."""
    if not value.items:
        return "0"
    n = value.conductor
    parts = []
    for j, c in value.items:
        if n == 1:
            term = str(c)
        else:
            root = f"E({n})" if j == 1 else f"E({n})^{j}"
            if c == 1:
                term = root
            elif c == -1:
                term = f"-{root}"
            else:
                term = f"{c}*{root}"
        if parts and not term.startswith("-"):
            parts.append("+")
            parts.append(term)
        else:
            parts.append(term)
    return "".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> Cyclotomic:
        value = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("trailing input")
        return value

    def expr(self) -> Cyclotomic:
        value = self.term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                value = value + self.term()
            elif ch == "-":
                self.pos += 1
                value = value - self.term()
            else:
                return value

    def term(self) -> Cyclotomic:
        value = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                value = value * self.factor()
            elif ch == "/":
                self.pos += 1
                divisor = self.factor()
                if divisor.is_zero():
                    raise self.error("division by zero")
                value = value / divisor
            else:
                return value

    def factor(self) -> Cyclotomic:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.factor()
        if ch == "+":
            self.pos += 1
            return self.factor()
        value = self.atom()
        if self.peek() == "^":
            self.pos += 1
            sign = 1
            if self.peek() == "-":
                self.pos += 1
                sign = -1
            k = self.integer()
            value = value ** (sign * k)
        return value

    def atom(self) -> Cyclotomic:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        if ch == "E":
            self.pos += 1
            self.expect("(")
            n = self.integer()
            self.expect(")")
            if n < 1:
                raise self.error("E(n) requires n >= 1")
            return root_of_unity(n)
        if ch.isdigit():
            return Cyclotomic.from_rational(self.integer())
        raise self.error("expected a rational, E(n), or parenthesized expression")

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])


def parse_literal(text: str) -> Cyclotomic:
    """Parse the scalar grammar: rationals p/q, E(n), ^, *, +, -, parens."""
    return _Parser(text).parse()
