"""Exact scalar fields and coefficient superalgebras.

Three coefficient-algebra variants are provided, all exact and all carrying
the data every other module relies on: a parity split, an augmentation onto
the base field, and a nilpotency bound N with (ker eps)^(N+1) = 0.

* ``GrassmannAlgebra(field, rank)`` -- the exterior algebra on ``rank`` odd
  generators x{1}..x{rank}, stored sparsely as bitmask -> scalar.
* ``SuperNumbers(field)`` -- one odd generator with square zero; structurally
  a rank-1 Grassmann algebra, kept as its own variant because it is the
  prototypical augmented central extension (odd part squares to zero).
* ``DualExtension(inner)`` -- adjoins one *even* generator eps with
  eps^2 = 0 to an inner coefficient algebra; used for tangent-space probes.

Base fields are the rationals and prime fields F_p (p = 2 and 3 included as
first-class citizens).  No floating point appears anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import NotInvertible, StructuralError

# ---------------------------------------------------------------------------
# base fields


class Field:
    """A supported exact base field; instances act on raw values."""

    name: str

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise NotInvertible("division by zero in Q")
        return Fraction(1, 1) / a

    def from_int(self, n):
        return Fraction(n)

    def parse(self, text):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise StructuralError(f"bad rational literal {text!r}: {e}") from None

    def format(self, a):
        return str(a)

    @property
    def characteristic(self):
        return 0

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    """F_p for prime p; raw values are ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise StructuralError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise NotInvertible(f"division by zero in F{self.p}")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def parse(self, text):
        m = re.fullmatch(r"\s*(-?\d+)\s*(?:mod\s*(\d+)\s*)?", text)
        if not m:
            raise StructuralError(f"bad F{self.p} literal: {text!r}")
        if m.group(2) and int(m.group(2)) != self.p:
            raise StructuralError(f"literal {text!r} is not mod {self.p}")
        return int(m.group(1)) % self.p

    def format(self, a):
        return f"{a % self.p} mod {self.p}"

    @property
    def characteristic(self):
        return self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


QQ = RationalField()
GF2 = PrimeField(2)
GF3 = PrimeField(3)
GF5 = PrimeField(5)


def field_by_name(name: str) -> Field:
    """Resolve a CLI/fixture field tag: ``Q`` or ``F<p>``."""
    name = name.strip()
    if name == "Q":
        return QQ
    m = re.fullmatch(r"F(\d+)", name)
    if m:
        return PrimeField(int(m.group(1)))
    raise StructuralError(f"unknown field {name!r}")


class Scalar:
    """An exact element of a base field, tagged with its field."""

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw):
        self.field = field
        self.raw = raw

    @classmethod
    def of(cls, field: Field, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != field:
                raise StructuralError("ring tag mismatch")
            return value
        if isinstance(value, int):
            return cls(field, field.from_int(value))
        if isinstance(value, Fraction) and field == QQ:
            return cls(field, value)
        if isinstance(value, str):
            return cls(field, field.parse(value))
        raise StructuralError(f"cannot coerce {value!r} into {field}")

    def _check(self, other: "Scalar"):
        if not isinstance(other, Scalar) or other.field != self.field:
            raise StructuralError("ring tag mismatch")

    def __add__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.add(self.raw, other.raw))

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.add(self.raw, self.field.neg(other.raw)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.raw))

    def __mul__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.mul(self.raw, other.raw))

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.raw))

    def is_zero(self) -> bool:
        return self.raw == self.field.from_int(0)

    def is_one(self) -> bool:
        return self.raw == self.field.from_int(1)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.raw == self.field.from_int(other)
        return (
            isinstance(other, Scalar)
            and other.field == self.field
            and other.raw == self.raw
        )

    def __hash__(self):
        return hash((self.field, self.raw))

    def __repr__(self):
        return self.field.format(self.raw)


# ---------------------------------------------------------------------------
# coefficient algebras

_MAX_RANK = 16


def _merge_sign(mask_a: int, mask_b: int) -> int:
    """Parity sign (+1/-1) from merging two disjoint sorted generator sets.

    Counts pairs (i in a, j in b) with i > j; each is one transposition.
    """
    exp = 0
    b = mask_b
    while b:
        low = b & -b
        exp += (mask_a >> low.bit_length()).bit_count()
        b ^= low
    return -1 if exp & 1 else 1


class CoefficientAlgebra:
    """Common interface: parity split, augmentation, nilpotency bound."""

    field: Field
    nilpotency_bound: int
    variant: str

    # -- factories -----------------------------------------------------
    def zero(self):
        raise NotImplementedError

    def one(self):
        return self.from_scalar(Scalar.of(self.field, 1))

    def from_scalar(self, s):
        raise NotImplementedError

    def from_int(self, n: int):
        return self.from_scalar(Scalar.of(self.field, n))

    def scalar(self, value) -> Scalar:
        return Scalar.of(self.field, value)

    def odd_generators(self):
        """The odd generators of this algebra, as elements."""
        raise NotImplementedError

    # -- shared derived operations --------------------------------------
    def invert(self, x):
        """Inverse of x when its body is a unit: geometric series on the soul.

        x^-1 = body^-1 * sum_{s<=N} (-body^-1 * soul)^s, exact because
        soul lies in ker(eps) and (ker eps)^(N+1) = 0.
        """
        if x.algebra is not self and x.algebra != self:
            raise StructuralError("element not over this algebra")
        body = x.augment()
        if body.is_zero():
            raise NotInvertible("body is not a unit")
        binv = body.inv()
        soul = x - self.from_scalar(body)
        t = self.from_scalar(binv) * soul  # body^-1 * soul, nilpotent
        acc = self.one()
        pw = self.one()
        for _ in range(self.nilpotency_bound):
            pw = -(pw * t)
            if pw.is_zero():
                break
            acc = acc + pw
        return acc * self.from_scalar(binv)

    def __ne__(self, other):
        return not self.__eq__(other)


class GrassmannAlgebra(CoefficientAlgebra):
    """Lambda_n = k[x{1}..x{n}], sparse bitmask representation."""

    variant = "grassmann"

    def __init__(self, field: Field, rank: int):
        if not (0 <= rank <= _MAX_RANK):
            raise StructuralError(f"rank must be in 0..{_MAX_RANK}")
        self.field = field
        self.rank = rank
        self.nilpotency_bound = rank

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and other.field == self.field
            and other.rank == self.rank
        )

    def __hash__(self):
        return hash((self.variant, self.field, self.rank))

    def __repr__(self):
        return f"{self.variant}({self.field}, rank={self.rank})"

    def zero(self):
        return GrassmannElement(self, {})

    def from_scalar(self, s):
        s = Scalar.of(self.field, s)
        return GrassmannElement(self, {} if s.is_zero() else {0: s})

    def generator(self, i: int):
        """x{i} for 1 <= i <= rank."""
        if not (1 <= i <= self.rank):
            raise StructuralError(f"generator index {i} out of range")
        return GrassmannElement(self, {1 << (i - 1): self.scalar(1)})

    def odd_generators(self):
        return [self.generator(i) for i in range(1, self.rank + 1)]

    def monomial(self, indices, coeff=1):
        mask = 0
        for i in indices:
            if not (1 <= i <= self.rank):
                raise StructuralError(f"generator index {i} out of range")
            if mask & (1 << (i - 1)):
                return self.zero()  # repeated generator squares to zero
            mask |= 1 << (i - 1)
        c = Scalar.of(self.field, coeff)
        return GrassmannElement(self, {} if c.is_zero() else {mask: c})

    def basis_masks(self):
        return range(1 << self.rank)


class SuperNumbers(GrassmannAlgebra):
    """k[eta] with one odd eta: the simplest augmented central extension.

    The base ring of the extension is k itself; A_1^2 = {0} holds because
    eta^2 = 0.  Structurally identical to a rank-1 Grassmann algebra.
    """

    variant = "super_numbers"

    def __init__(self, field: Field):
        super().__init__(field, 1)

    def eta(self):
        return self.generator(1)

    def __repr__(self):
        return f"{self.variant}({self.field})"


class GrassmannElement:
    """Sparse exact multivector; no zero coefficients are ever stored."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GrassmannAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = terms  # mask -> nonzero Scalar; owned, never aliased out

    # -- ring structure -------------------------------------------------
    def _check(self, other):
        if not isinstance(other, GrassmannElement) or other.algebra != self.algebra:
            raise StructuralError("rank/ring mismatch")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s.is_zero():
                    del terms[m]
                else:
                    terms[m] = s
        return GrassmannElement(self.algebra, terms)

    def __neg__(self):
        return GrassmannElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Exterior product: shared generators kill a term, sign by merge parity."""
        if isinstance(other, Scalar):
            return self.scale(other)
        self._check(other)
        field = self.algebra.field
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                if m1 & m2:
                    continue
                m = m1 | m2
                raw = field.mul(c1.raw, c2.raw)
                if _merge_sign(m1, m2) < 0:
                    raw = field.neg(raw)
                prev = acc.get(m)
                raw = field.add(prev, raw) if prev is not None else raw
                if raw == field.from_int(0):
                    acc.pop(m, None)
                else:
                    acc[m] = raw
        return GrassmannElement(
            self.algebra, {m: Scalar(field, r) for m, r in acc.items()}
        )

    def scale(self, s):
        s = Scalar.of(self.algebra.field, s)
        if s.is_zero():
            return self.algebra.zero()
        return GrassmannElement(self.algebra, {m: c * s for m, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, GrassmannElement)
            and other.algebra == self.algebra
            and other.terms == self.terms
        )

    __hash__ = None

    def is_zero(self):
        return not self.terms

    # -- super structure -------------------------------------------------
    def even_part(self):
        return GrassmannElement(
            self.algebra,
            {m: c for m, c in self.terms.items() if m.bit_count() % 2 == 0},
        )

    def odd_part(self):
        return GrassmannElement(
            self.algebra,
            {m: c for m, c in self.terms.items() if m.bit_count() % 2 == 1},
        )

    def parity(self):
        """0 or 1 for nonzero homogeneous elements, None otherwise (0 for zero)."""
        ps = {m.bit_count() % 2 for m in self.terms}
        if not ps:
            return 0
        if len(ps) == 1:
            return ps.pop()
        return None

    def is_even(self):
        return self.parity() == 0

    def is_odd(self):
        return self.parity() == 1

    # -- augmentation and friends -----------------------------------------
    def augment(self) -> Scalar:
        """eps_A: kill every generator; the constant term."""
        c = self.terms.get(0)
        return c if c is not None else Scalar.of(self.algebra.field, 0)

    body = augment

    def soul(self):
        return self - self.algebra.from_scalar(self.augment())

    def reduce_bar(self) -> Scalar:
        """Image in A-bar = A/(A_1); identified with k for these variants."""
        return self.augment()

    def invert(self):
        return self.algebra.invert(self)

    def a1n_member(self, n: int) -> bool:
        """Membership in A_1^(n), the unital subalgebra generated by A_1^[n].

        Monomial criterion: a nonconstant monomial of degree d belongs iff
        d >= t*n and d = t*n (mod 2) for some t >= 1; constants always belong.
        """
        if n <= 0:
            raise StructuralError("n must be positive")
        for m in self.terms:
            d = m.bit_count()
            if d == 0:
                continue
            if not any(d >= t * n and (d - t * n) % 2 == 0 for t in range(1, d // n + 1)):
                return False
        return True

    # -- serialization ----------------------------------------------------
    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.algebra.field.format(self.terms[m].raw)
            if m == 0:
                parts.append(c)
            else:
                idx = ",".join(str(i + 1) for i in range(_MAX_RANK) if m >> i & 1)
                parts.append(f"{c} * x{{{idx}}}")
        return " + ".join(parts)

    def __repr__(self):
        return self.to_str()


class DualExtension(CoefficientAlgebra):
    """inner[eps] with eps even and eps^2 = 0; elements are pairs a + b*eps."""

    variant = "dual"

    def __init__(self, inner: CoefficientAlgebra):
        self.inner = inner
        self.field = inner.field
        self.nilpotency_bound = inner.nilpotency_bound + 1

    def __eq__(self, other):
        return type(other) is DualExtension and other.inner == self.inner

    def __hash__(self):
        return hash(("dual", self.inner))

    def __repr__(self):
        return f"dual({self.inner!r})"

    def zero(self):
        return DualElement(self, self.inner.zero(), self.inner.zero())

    def from_scalar(self, s):
        return DualElement(self, self.inner.from_scalar(s), self.inner.zero())

    def include(self, x):
        """Embed an inner element as a constant (no eps part)."""
        if x.algebra != self.inner:
            raise StructuralError("element not over the inner algebra")
        return DualElement(self, x, self.inner.zero())

    def eps(self):
        return DualElement(self, self.inner.zero(), self.inner.one())

    def times_eps(self, x):
        if x.algebra != self.inner:
            raise StructuralError("element not over the inner algebra")
        return DualElement(self, self.inner.zero(), x)

    def odd_generators(self):
        return [self.include(g) for g in self.inner.odd_generators()]


class DualElement:
    """a + b*eps over DualExtension(inner); eps is even and central."""

    __slots__ = ("algebra", "a", "b")

    def __init__(self, algebra: DualExtension, a, b):
        self.algebra = algebra
        self.a = a
        self.b = b

    def _check(self, other):
        if not isinstance(other, DualElement) or other.algebra != self.algebra:
            raise StructuralError("rank/ring mismatch")

    def __add__(self, other):
        self._check(other)
        return DualElement(self.algebra, self.a + other.a, self.b + other.b)

    def __neg__(self):
        return DualElement(self.algebra, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        self._check(other)
        return DualElement(
            self.algebra,
            self.a * other.a,
            self.a * other.b + self.b * other.a,  # eps^2 = 0
        )

    def scale(self, s):
        return DualElement(self.algebra, self.a.scale(s), self.b.scale(s))

    def __eq__(self, other):
        return (
            isinstance(other, DualElement)
            and other.algebra == self.algebra
            and other.a == self.a
            and other.b == self.b
        )

    __hash__ = None

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def even_part(self):
        return DualElement(self.algebra, self.a.even_part(), self.b.even_part())

    def odd_part(self):
        return DualElement(self.algebra, self.a.odd_part(), self.b.odd_part())

    def parity(self):
        ps = set()
        for comp in (self.a, self.b):
            p = comp.parity()
            if p is None:
                return None
            if not comp.is_zero():
                ps.add(p)
        if not ps:
            return 0
        if len(ps) == 1:
            return ps.pop()
        return None

    def is_even(self):
        return self.parity() == 0

    def is_odd(self):
        return self.parity() == 1

    def augment(self) -> Scalar:
        return self.a.augment()

    body = augment

    def soul(self):
        return self - self.algebra.from_scalar(self.augment())

    def reduce_bar(self):
        """Representative of the image in A-bar = A/(A_1): odd-generated
        monomials die, eps survives (A-bar is the dual numbers over k)."""
        return DualElement(
            self.algebra,
            self.algebra.inner.from_scalar(self.a.reduce_bar()),
            self.algebra.inner.from_scalar(self.b.reduce_bar()),
        )

    def eps_coefficient(self):
        """The inner element b in x = a + b*eps."""
        return self.b

    def constant_coefficient(self):
        return self.a

    def invert(self):
        return self.algebra.invert(self)

    def a1n_member(self, n: int) -> bool:
        if n <= 0:
            raise StructuralError("n must be positive")
        if not self.a.a1n_member(n):
            return False
        # eps itself is not a product of odd elements: the eps part must have
        # every monomial already a member, and no bare-constant eps term.
        if not self.b.a1n_member(n):
            return False
        return self.b.augment().is_zero()

    def to_str(self) -> str:
        parts = []
        if not self.a.is_zero():
            parts.append(self.a.to_str())
        if not self.b.is_zero():
            for chunk in self.b.to_str().split(" + "):
                parts.append(f"{chunk} * eps")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return self.to_str()


# ---------------------------------------------------------------------------
# parsing of the textual term-list format


_TERM_GEN = re.compile(r"x\{([0-9,\s]*)\}")


def parse_element(algebra: CoefficientAlgebra, text: str):
    """Parse ``c * x{i,j} [* eps]`` term lists back into an element."""
    text = text.strip()
    if text == "0":
        return algebra.zero()
    result = algebra.zero()
    for chunk in text.split("+"):
        factors = [f.strip() for f in chunk.strip().split("*")]
        coeff = None
        mask_indices = None
        has_eps = False
        for f in factors:
            if not f:
                raise StructuralError(f"empty factor in term {chunk!r}")
            if f == "eps":
                if has_eps:
                    raise StructuralError("repeated eps factor")
                has_eps = True
            elif _TERM_GEN.fullmatch(f):
                if mask_indices is not None:
                    raise StructuralError("repeated generator factor")
                inner = _TERM_GEN.fullmatch(f).group(1).strip()
                mask_indices = (
                    [int(t) for t in inner.split(",")] if inner else []
                )
            else:
                if coeff is not None:
                    raise StructuralError(f"two scalar factors in {chunk!r}")
                coeff = algebra.field.parse(f)
        if coeff is None:
            coeff = algebra.field.from_int(1)
        scalar = Scalar(algebra.field, coeff)
        if has_eps:
            if not isinstance(algebra, DualExtension):
                raise StructuralError("eps term over a non-dual algebra")
            base = algebra.inner.monomial(mask_indices or [], scalar)
            term = algebra.times_eps(base)
        elif isinstance(algebra, DualExtension):
            base = algebra.inner.monomial(mask_indices or [], scalar)
            term = algebra.include(base)
        else:
            term = algebra.monomial(mask_indices or [], scalar)
        result = result + term
    return result
