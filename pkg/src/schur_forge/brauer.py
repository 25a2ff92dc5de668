"""Quaternion Brauer classes over QQ and the geometric-origin decision.

A class ``(a, b)`` is described by its local Hilbert symbols; it vanishes iff
no place ramifies. :func:`geometric_origin_report` runs the whole pipeline on
a Galois-stable Schur representation over ``QQ(sqrt d)``: extract the
cocycle, read off its class ``(d, lambda)``, then either descend to QQ or
build the twisted representation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .azumaya import EmbeddedAlgebra
from .descent import (NORM_SEARCH_BOUND, Cocycle, TwistedRepresentation, descend_representation,
                      prepare_twist, solve_norm_equation, twist_representation)
from .errors import DegenerateDiscriminant, InvalidPrime, ZeroInput
from .exactfield import (DEFAULT_FACTOR_BOUND, factorize, is_prime, is_square_rational,
                         legendre_symbol, parse_rational, square_class)
from .matrep import MatrixRep

INF = "inf"


def _parse_place(place):
    if place in (INF, "infinity", "oo", float("inf")):
        return INF
    if isinstance(place, str):
        place = int(place)
    if isinstance(place, bool) or not isinstance(place, int) or not is_prime(place):
        raise InvalidPrime(f"{place!r} is neither a prime nor the infinite place")
    return place


def _split_valuation(x: Fraction, p: int) -> tuple[int, int]:
    """``(v, u)`` with ``x = p^v * (unit)`` and ``u`` an integer congruent to the
    unit part modulo 8 (for p = 2) or modulo p (odd p)."""
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    # num/den and num*den differ by the square den^2, invisible to the symbol
    return v, num * den


def hilbert_symbol(a, b, place) -> int:
    """Local Hilbert symbol ``(a, b)_v`` for nonzero rationals at a prime or ``"inf"``."""
    a, b = parse_rational(a), parse_rational(b)
    if a == 0 or b == 0:
        raise ZeroInput("Hilbert symbol needs nonzero arguments")
    place = _parse_place(place)
    if place == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = place
    alpha, u = _split_valuation(a, p)
    beta, v = _split_valuation(b, p)
    if p == 2:
        def eps(w):
            return ((w - 1) // 2) % 2

        def omega(w):
            return ((w * w - 1) // 8) % 2

        u, v = u % 8, v % 8
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * legendre_symbol(u, p) ** (beta % 2) * legendre_symbol(v, p) ** (alpha % 2)


def relevant_places(a, b, bound: int = DEFAULT_FACTOR_BOUND) -> list:
    """``inf``, 2 and every odd prime dividing a numerator or denominator of ``a`` or ``b``."""
    a, b = parse_rational(a), parse_rational(b)
    primes = {2}
    for x in (a.numerator, a.denominator, b.numerator, b.denominator):
        if abs(x) > 1:
            primes |= set(factorize(x, bound))
    return sorted(primes) + [INF]


def place_symbols(a, b, bound: int = DEFAULT_FACTOR_BOUND) -> list[tuple]:
    """All (place, symbol) pairs at the relevant places; checks Hilbert reciprocity."""
    out = [(v, hilbert_symbol(a, b, v)) for v in relevant_places(a, b, bound)]
    prod = 1
    for _, s in out:
        prod *= s
    if prod != 1:  # pragma: no cover - would mean a wrong symbol formula
        raise AssertionError(f"Hilbert reciprocity fails for ({a}, {b}): {out}")
    return out


def ramified_places(a, b, bound: int = DEFAULT_FACTOR_BOUND) -> list:
    """Places where ``(a, b)`` is ramified, primes ascending then ``"inf"``."""
    return [v for v, s in place_symbols(a, b, bound) if s == -1]


def is_split(a, b, bound: int = DEFAULT_FACTOR_BOUND) -> bool:
    return not ramified_places(a, b, bound)


@dataclass(frozen=True)
class QuaternionClass:
    """Square-class representatives ``(a, b)`` of a quaternion Brauer class."""

    a: int
    b: int

    @classmethod
    def from_rationals(cls, a, b, bound: int = DEFAULT_FACTOR_BOUND) -> QuaternionClass:
        a, b = parse_rational(a), parse_rational(b)
        if a == 0 or b == 0:
            raise ZeroInput("quaternion class needs nonzero parameters")
        return cls(square_class(a, bound)[0], square_class(b, bound)[0])

    @property
    def ramified(self) -> list:
        return ramified_places(self.a, self.b)

    @property
    def split(self) -> bool:
        return not self.ramified


@dataclass
class OriginReport:
    origin: bool
    lam: Fraction
    d: int
    quaternion_class: QuaternionClass
    cocycle: Cocycle
    ramified: list
    descended: MatrixRep | None = None
    norm_witness: object = None
    twisted: TwistedRepresentation | None = None

    @property
    def witness(self):
        return self.descended if self.origin else self.twisted

    @property
    def twisted_algebra(self) -> EmbeddedAlgebra | None:
        return None if self.twisted is None else self.twisted.fixed_algebra


def geometric_origin_report(rho: MatrixRep, seed: int = 0,
                            norm_bound: int = NORM_SEARCH_BOUND,
                            factor_bound: int = DEFAULT_FACTOR_BOUND) -> OriginReport:
    """Decide whether the isomorphism class of ``rho`` is defined over QQ.

    ``rho`` must be a Schur representation over ``L = QQ(sqrt d)`` with
    ``sigma(rho)`` isomorphic to ``rho``. The class of the cocycle is the
    quaternion class ``(d, lambda)``; when it splits the witness is a
    representation over QQ, otherwise the twisted representation in the
    fixed-point algebra.
    """
    cocycle, rho = prepare_twist(rho, seed)
    d = rho.field.d
    qclass = QuaternionClass.from_rationals(d, cocycle.lam, factor_bound)
    ramified = ramified_places(d, cocycle.lam, factor_bound)
    report = OriginReport(not ramified, cocycle.lam, d, qclass, cocycle, ramified)
    if report.origin:
        c = solve_norm_equation(cocycle.lam, rho.field, norm_bound)
        report.norm_witness = c
        report.descended = descend_representation(rho, cocycle, c, seed)
    else:
        report.twisted = twist_representation(rho, cocycle)
    return report


def quadratic_origin_demo(lam, mode: str = "real-sign") -> bool:
    """Does ``t^2 + lam t + 1`` split over the base (``R`` or ``QQ``)?

    The point ``u = lam`` of the double cover given by ``t^2 + u t + 1`` is of
    geometric origin iff the discriminant ``lam^2 - 4`` is positive (over
    the reals) or a rational square (over QQ).
    """
    lam = parse_rational(lam)
    disc = lam * lam - 4
    if disc == 0:
        raise DegenerateDiscriminant("discriminant vanishes; the point lies off the localized base")
    if mode == "real-sign":
        return disc > 0
    if mode == "rational-square":
        return is_square_rational(disc)
    raise ValueError(f"unknown mode {mode!r}")
