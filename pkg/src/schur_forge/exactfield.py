"""Exact scalars: the rationals, quadratic fields QQ(sqrt d) and prime fields F_p.

Rationals are plain :class:`fractions.Fraction` objects. Field *descriptors*
(``QQ``, :class:`QuadField`, :class:`PrimeField`) coerce Python numbers into
their elements and expose ``zero``, ``one`` and the Galois conjugation
``conj`` (the identity except on quadratic fields), which is all the linear
algebra layer needs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import FactorizationTooLarge, InvalidField, InvalidPrime

Rational = Fraction

DEFAULT_FACTOR_BOUND = 10**6


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions and strings like ``"-3/4"``."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE_ "):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot read {value!r} as a rational")


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# integer helpers

def is_prime(n: int) -> bool:
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


def factorize(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> dict[int, int]:
    """Prime factorization of ``|n|`` by trial division up to ``bound``.

    A cofactor left over after trial division is accepted as prime when it is
    below ``bound**2``; otherwise :class:`FactorizationTooLarge` is raised.
    """
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    factors: dict[int, int] = {}
    f = 2
    while f * f <= n and f <= bound:
        while n % f == 0:
            factors[f] = factors.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        if f * f <= n:
            raise FactorizationTooLarge(
                f"cofactor {n} has no factor below the trial-division bound {bound}")
        factors[n] = factors.get(n, 0) + 1
    return factors


def is_squarefree(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> bool:
    if n == 0:
        return False
    return all(e == 1 for e in factorize(n, bound).values())


def square_class(x, bound: int = DEFAULT_FACTOR_BOUND) -> tuple[int, Fraction]:
    """Write nonzero ``x`` as ``s * r**2`` with ``s`` a squarefree integer.

    Returns ``(s, r)`` with ``r`` a positive rational.
    """
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no square class")
    s, r = (-1 if x < 0 else 1), Fraction(1)
    for part, sign in ((x.numerator, 1), (x.denominator, -1)):
        for p, e in factorize(part, bound).items():
            if e % 2:
                s *= p
            # 1/p**e == p * (p**-((e+1)//2))**2 for odd e
            half = e // 2 if sign == 1 else (e + 1) // 2
            r *= Fraction(p) ** (half * sign)
    assert s * r * r == x
    return s, r


def squarefree_part(x, bound: int = DEFAULT_FACTOR_BOUND) -> int:
    return square_class(x, bound)[0]


def is_square_rational(x) -> bool:
    """True iff ``x`` is the square of a rational number."""
    x = Fraction(x)
    if x < 0:
        return False
    num, den = x.numerator, x.denominator
    return isqrt(num) ** 2 == num and isqrt(den) ** 2 == den


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a|p) by Euler's criterion."""
    if p <= 2 or not is_prime(p):
        raise InvalidPrime(f"{p} is not an odd prime")
    a = int(a) % p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


# ---------------------------------------------------------------------------
# the rational field

class RationalField:
    """Descriptor for QQ; elements are :class:`fractions.Fraction`."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, QuadElem):
            if x.b != 0:
                raise ValueError(f"{x} is not rational")
            return x.a
        if isinstance(x, PrimeFieldElem):
            raise TypeError("cannot coerce an F_p element into QQ")
        return parse_rational(x)

    def conj(self, x):
        return x

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


# ---------------------------------------------------------------------------
# quadratic fields

@dataclass(frozen=True)
class QuadField:
    """The field QQ(sqrt d) for a squarefree integer ``d`` other than 0 and 1."""

    d: int

    characteristic = 0

    def __post_init__(self):
        d = self.d
        if isinstance(d, bool) or not isinstance(d, int):
            raise InvalidField(f"d must be an integer, got {d!r}")
        if d in (0, 1):
            raise InvalidField(f"d = {d} does not define a quadratic field")
        if not is_squarefree(d):
            raise InvalidField(f"d = {d} is not squarefree")

    @property
    def zero(self) -> QuadElem:
        return QuadElem(Fraction(0), Fraction(0), self)

    @property
    def one(self) -> QuadElem:
        return QuadElem(Fraction(1), Fraction(0), self)

    @property
    def sqrt(self) -> QuadElem:
        return QuadElem(Fraction(0), Fraction(1), self)

    def __call__(self, a, b=0) -> QuadElem:
        if isinstance(a, QuadElem):
            if a.field != self:
                raise ValueError(f"{a} lives in {a.field}, not {self}")
            if b:
                raise ValueError("cannot combine a QuadElem with a radical part")
            return a
        if isinstance(a, PrimeFieldElem):
            raise TypeError("cannot coerce an F_p element into a quadratic field")
        return QuadElem(parse_rational(a), parse_rational(b), self)

    def conj(self, x: QuadElem) -> QuadElem:
        return quad_conjugate(self(x))

    def norm(self, x) -> Fraction:
        return quad_norm(self(x))

    def contains(self, x) -> bool:
        return isinstance(x, QuadElem) and x.field == self

    def __repr__(self):
        return f"QQ(sqrt({self.d}))"


class QuadElem:
    """``a + b*sqrt(d)`` with rational ``a``, ``b``. Immutable."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a, b, field: QuadField):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("QuadElem is immutable")

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other.field != self.field:
                raise ValueError(f"mixing {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadElem(other, 0, self.field)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.d
        return QuadElem(self.a * o.a + d * self.b * o.b,
                        self.a * o.b + self.b * o.a, self.field)

    __rmul__ = __mul__

    def inverse(self) -> QuadElem:
        n = self.a * self.a - self.field.d * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero in a quadratic field")
        return QuadElem(self.a / n, -self.b / n, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return other.field == self.field and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.field.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        if self.b == 0:
            return format_rational(self.a)
        rad = f"sqrt({self.field.d})"
        if self.a == 0:
            return f"{format_rational(self.b)}*{rad}"
        sign = "-" if self.b < 0 else "+"
        return f"{format_rational(self.a)} {sign} {format_rational(abs(self.b))}*{rad}"


def quad_conjugate(x: QuadElem) -> QuadElem:
    return QuadElem(x.a, -x.b, x.field)


def quad_norm(x: QuadElem) -> Fraction:
    return x.a * x.a - x.field.d * x.b * x.b


# ---------------------------------------------------------------------------
# prime fields

MAX_PRIME = 2**31


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int) or not is_prime(self.p):
            raise InvalidPrime(f"{self.p!r} is not a prime")
        if self.p >= MAX_PRIME:
            raise InvalidPrime(f"F_p is limited to p < 2**31, got {self.p}")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self) -> PrimeFieldElem:
        return PrimeFieldElem(0, self.p)

    @property
    def one(self) -> PrimeFieldElem:
        return PrimeFieldElem(1, self.p)

    def __call__(self, x) -> PrimeFieldElem:
        if isinstance(x, PrimeFieldElem):
            if x.p != self.p:
                raise ValueError(f"mixing F_{x.p} and F_{self.p}")
            return x
        if isinstance(x, QuadElem):
            raise TypeError("cannot coerce a quadratic-field element into F_p")
        q = parse_rational(x)
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"{q} has no image in F_{self.p}")
        return PrimeFieldElem(q.numerator * pow(q.denominator, -1, self.p), self.p)

    def conj(self, x):
        return x

    def contains(self, x) -> bool:
        return isinstance(x, PrimeFieldElem) and x.p == self.p

    def elements(self):
        return [PrimeFieldElem(v, self.p) for v in range(self.p)]

    def __repr__(self):
        return f"GF({self.p})"


class PrimeFieldElem:
    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _v(self, other):
        if isinstance(other, PrimeFieldElem):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        v = self._v(other)
        return NotImplemented if v is None else PrimeFieldElem(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._v(other)
        return NotImplemented if v is None else PrimeFieldElem(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._v(other)
        return NotImplemented if v is None else PrimeFieldElem(v - self.value, self.p)

    def __neg__(self):
        return PrimeFieldElem(-self.value, self.p)

    def __mul__(self, other):
        v = self._v(other)
        return NotImplemented if v is None else PrimeFieldElem(self.value * v, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return PrimeFieldElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        return self * PrimeFieldElem(v, self.p).inverse()

    def __rtruediv__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElem(v, self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return PrimeFieldElem(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        return (self.value - v) % self.p == 0

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


Field = RationalField | QuadField | PrimeField
