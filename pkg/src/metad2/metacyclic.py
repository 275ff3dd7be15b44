"""The metacyclic group G(p, p-1) and its integral group ring.

G(p, p-1) = <x, y | x^p = 1, y^(p-1) = 1, y x = x^m y> with m a primitive
root mod p.  Every element has a unique normal form x^a y^b, and ring
elements are integer vectors indexed by ``b*p + a`` (y-exponent major).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .exactlin import IntMatrix, hnf_basis


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def multiplicative_order(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ValueError(f"{a} is not a unit mod {p}")
    k, v = 1, a
    while v != 1:
        v = v * a % p
        k += 1
    return k


def smallest_primitive_root(p: int) -> int:
    for g in range(2, p):
        if multiplicative_order(g, p) == p - 1:
            return g
    raise ValueError(f"no primitive root mod {p}")


@dataclass(frozen=True)
class GroupParams:
    p: int
    m: int

    def __post_init__(self):
        if not (is_prime(self.p) and self.p % 2):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if not 2 <= self.m < self.p:
            raise ValueError(f"m must satisfy 2 <= m < p, got {self.m}")
        if multiplicative_order(self.m, self.p) != self.p - 1:
            raise ValueError(f"m={self.m} is not a primitive root mod {self.p}")

    @classmethod
    def for_prime(cls, p: int, m: int | None = None) -> GroupParams:
        if not (is_prime(p) and p % 2):
            raise ValueError(f"p must be an odd prime, got {p}")
        return cls(p, smallest_primitive_root(p) if m is None else m)

    @property
    def q(self) -> int:
        """Order of y."""
        return self.p - 1

    @property
    def order(self) -> int:
        return self.p * (self.p - 1)

    def index(self, a: int, b: int) -> int:
        return (b % self.q) * self.p + (a % self.p)

    def elements(self) -> list[GroupElem]:
        return [GroupElem(self, i % self.p, i // self.p) for i in range(self.order)]


@dataclass(frozen=True)
class GroupElem:
    params: GroupParams
    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.params.p)
        object.__setattr__(self, "b", self.b % self.params.q)

    @property
    def index(self) -> int:
        return self.b * self.params.p + self.a

    def __mul__(self, other: GroupElem) -> GroupElem:
        return group_mul(self, other)

    def inverse(self) -> GroupElem:
        # (x^a y^b)^-1 = y^-b x^-a = x^(-a m^-b) y^-b
        P = self.params
        minv = pow(P.m, -self.b, P.p)
        return GroupElem(P, -self.a * minv, -self.b)

    def __str__(self) -> str:
        return f"x^{self.a} y^{self.b}"


def group_mul(g: GroupElem, h: GroupElem) -> GroupElem:
    """Normal form of g*h, using y^b x^c = x^(c m^b) y^b."""
    if g.params != h.params:
        raise ValueError("group elements from different groups")
    P = g.params
    return GroupElem(P, g.a + h.a * pow(P.m, g.b, P.p), g.b + h.b)


@lru_cache(maxsize=None)
def _mul_table(params: GroupParams) -> tuple[tuple[int, ...], ...]:
    els = params.elements()
    return tuple(tuple(group_mul(g, h).index for h in els) for g in els)


class RingElem:
    """Element of Z[G(p, p-1)] as a coefficient vector."""

    __slots__ = ("params", "coeffs")

    def __init__(self, params: GroupParams, coeffs: Sequence[int] | None = None):
        n = params.order
        if coeffs is None:
            coeffs = (0,) * n
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != n:
            raise ValueError(f"expected {n} coefficients, got {len(coeffs)}")
        self.params = params
        self.coeffs = coeffs

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, params: GroupParams) -> RingElem:
        return cls(params)

    @classmethod
    def scalar(cls, params: GroupParams, c: int) -> RingElem:
        return cls.monomial(params, 0, 0, c)

    @classmethod
    def one(cls, params: GroupParams) -> RingElem:
        return cls.scalar(params, 1)

    @classmethod
    def monomial(cls, params: GroupParams, a: int, b: int, c: int = 1) -> RingElem:
        v = [0] * params.order
        v[params.index(a, b)] = c
        return cls(params, v)

    @classmethod
    def from_group(cls, g: GroupElem, c: int = 1) -> RingElem:
        return cls.monomial(g.params, g.a, g.b, c)

    @classmethod
    def from_terms(cls, params: GroupParams, terms: Iterable[tuple[int, int, int]]) -> RingElem:
        """Sum of ``c * x^a y^b`` over ``(a, b, c)`` triples."""
        v = [0] * params.order
        for a, b, c in terms:
            v[params.index(a, b)] += c
        return cls(params, v)

    @classmethod
    def x(cls, params: GroupParams) -> RingElem:
        return cls.monomial(params, 1, 0)

    @classmethod
    def y(cls, params: GroupParams) -> RingElem:
        return cls.monomial(params, 0, 1)

    # arithmetic ---------------------------------------------------------

    def _lift(self, other) -> RingElem:
        if isinstance(other, RingElem):
            if other.params != self.params:
                raise ValueError("ring elements from different groups")
            return other
        if isinstance(other, int):
            return RingElem.scalar(self.params, other)
        return NotImplemented

    def __add__(self, other) -> RingElem:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RingElem(self.params, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> RingElem:
        return RingElem(self.params, [-a for a in self.coeffs])

    def __sub__(self, other) -> RingElem:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RingElem(self.params, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other) -> RingElem:
        return (-self) + other

    def __mul__(self, other) -> RingElem:
        if isinstance(other, int):
            return RingElem(self.params, [other * a for a in self.coeffs])
        other = self._lift(other)
        if other is NotImplemented:
            return other
        table = _mul_table(self.params)
        out = [0] * self.params.order
        right = [(j, c) for j, c in enumerate(other.coeffs) if c]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            row = table[i]
            for j, c in right:
                out[row[j]] += a * c
        return RingElem(self.params, out)

    def __rmul__(self, other) -> RingElem:
        if isinstance(other, int):
            return self * other
        return self._lift(other) * self

    def __pow__(self, n: int) -> RingElem:
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = RingElem.one(self.params)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RingElem.scalar(self.params, other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.params == other.params and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.params, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def terms(self) -> list[tuple[int, int, int]]:
        p = self.params.p
        return [(i % p, i // p, c) for i, c in enumerate(self.coeffs) if c]

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for a, b, c in self.terms():
            mono = "".join(s for s in (f"x^{a}" if a else "", f"y^{b}" if b else "") if s) or "1"
            parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    # text format --------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.params.p} {self.params.m}"]
        lines.extend(f"{a} {b} {c}" for a, b, c in self.terms())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> RingElem:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty ring element text")
        try:
            p, m = (int(v) for v in lines[0].split())
        except ValueError:
            raise ValueError("line 1: header must be 'p m'") from None
        params = GroupParams(p, m)
        terms = []
        for k, line in enumerate(lines[1:], start=2):
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"line {k}: expected 'a b coeff'")
            a, b, c = (int(v) for v in parts)
            if not (0 <= a < p and 0 <= b < p - 1):
                raise ValueError(f"line {k}: exponent out of range")
            terms.append((a, b, c))
        return cls.from_terms(params, terms)


def ring_mul(u: RingElem, v: RingElem) -> RingElem:
    return u * v


def ring_add(u: RingElem, v: RingElem) -> RingElem:
    return u + v


def ring_neg(u: RingElem) -> RingElem:
    return -u


def ring_scale(u: RingElem, k: int) -> RingElem:
    return u * k


def augmentation(u: RingElem) -> int:
    return sum(u.coeffs)


def x_norm(params: GroupParams) -> RingElem:
    """1 + x + ... + x^(p-1)."""
    return RingElem.from_terms(params, [(a, 0, 1) for a in range(params.p)])


def y_norm(params: GroupParams) -> RingElem:
    """1 + y + ... + y^(p-2)."""
    return RingElem.from_terms(params, [(0, b, 1) for b in range(params.q)])


def poly_x(params: GroupParams, coeffs: Sequence[int]) -> RingElem:
    """sum_i coeffs[i] x^i."""
    return RingElem.from_terms(params, [(a, 0, c) for a, c in enumerate(coeffs)])


def left_mul_matrix(u: RingElem) -> IntMatrix:
    """Matrix of alpha -> u*alpha acting on row vectors.

    Row i holds the coefficients of u*g_i.  Since row vectors compose
    left to right, left_mul_matrix(u*v) == left_mul_matrix(v) @ left_mul_matrix(u).
    """
    P = u.params
    return IntMatrix([(u * RingElem.from_group(g)).coeffs for g in P.elements()], P.order)


def right_mul_matrix(u: RingElem) -> IntMatrix:
    """Matrix of alpha -> alpha*u acting on row vectors (row i = g_i*u).

    This is a homomorphism: right_mul_matrix(u*v) == right_mul_matrix(u) @ right_mul_matrix(v).
    """
    P = u.params
    return IntMatrix([(RingElem.from_group(g) * u).coeffs for g in P.elements()], P.order)


def elements_matrix(elems: Sequence[RingElem]) -> IntMatrix:
    return IntMatrix([e.coeffs for e in elems], elems[0].params.order)


def from_vector(params: GroupParams, v: Sequence[int]) -> RingElem:
    return RingElem(params, v)


def combine(elems: Sequence[RingElem], coeffs: Sequence[int]) -> RingElem:
    """sum_i coeffs[i] * elems[i]."""
    out = [0] * elems[0].params.order
    for e, c in zip(elems, coeffs):
        if c:
            for k, v in enumerate(e.coeffs):
                if v:
                    out[k] += c * v
    return RingElem(elems[0].params, out)


def ideal_span(gens: Sequence[RingElem]) -> IntMatrix:
    """HNF basis of the right ideal generated by ``gens``."""
    if not gens:
        raise ValueError("at least one generator is required")
    P = gens[0].params
    rows = []
    for g in gens:
        for h in P.elements():
            rows.append((g * RingElem.from_group(h)).coeffs)
    return hnf_basis(IntMatrix(rows, P.order))


def regular_action(params: GroupParams) -> tuple[IntMatrix, IntMatrix]:
    """Right multiplication by x and by y on Z[G], row convention."""
    return right_mul_matrix(RingElem.x(params)), right_mul_matrix(RingElem.y(params))


def ideal_lattice(gens: Sequence[RingElem]):
    """The right ideal sum(g * Lambda) as a Lattice with the regular right action."""
    from .modrep import Lattice

    P = gens[0].params
    ax, ay = regular_action(P)
    return Lattice(P, ideal_span(gens), ax, ay)


P7 = GroupParams(7, 3)


def build_pi(params: GroupParams = P7) -> RingElem:
    """The element whose right ideal is isomorphic to the first row module.

    (x-1) ((2+x^2+x^5) y + (-1+x^2+2x^3+2x^4+x^5) y^2 + y^3) (1-y^3), expanded.
    """
    if (params.p, params.m) != (7, 3):
        raise ValueError("this element is only defined for p=7, m=3")
    x, y = RingElem.x(params), RingElem.y(params)
    a = poly_x(params, [2, 0, 1, 0, 0, 1])
    b = poly_x(params, [-1, 0, 1, 2, 2, 1])
    return (x - 1) * (a * y + b * y ** 2 + y ** 3) * (1 - y ** 3)
