"""Supermatrices over a coefficient algebra and GL(p|q) group operations.

A matrix of block shape (p, q) lives in the superalgebra A (x) End(k^{p|q}).
THE SIGN CONVENTION: the product implements that superalgebra, i.e.

    (a (x) E)(b (x) F) = (-1)^{|E||b|} ab (x) EF,

entrywise (M.N)_{ik} = sum_j (-1)^{(|i|+|j|)|n_{jk}|} m_{ij} n_{jk} on
homogeneous coefficient parts.  For matrices whose entries all carry even
coefficients this is the naive row-column product; when odd coefficients at
odd positions meet, the twist is what makes the one-parameter subgroup
identities hold exactly.  See the test suite: those identities are the
arbiter of the convention.

Row/column parity: |i| = 0 for i < p, |i| = 1 otherwise.  A matrix is
*even-homogeneous* when entry (i,j) is homogeneous of parity |i|+|j| (the
membership pattern of GL(p|q)(A) points), *odd-homogeneous* when parities
are flipped.
"""

from __future__ import annotations

from .coeff import CoefficientAlgebra, DualExtension, Scalar
from .errors import MembershipViolation, NotInvertible, StructuralError


class SuperMatrix:
    __slots__ = ("shape", "algebra", "rows")

    def __init__(self, shape, algebra: CoefficientAlgebra, rows):
        p, q = shape
        n = p + q
        if len(rows) != n or any(len(r) != n for r in rows):
            raise StructuralError("entry grid does not match block shape")
        self.shape = (p, q)
        self.algebra = algebra
        self.rows = tuple(tuple(r) for r in rows)

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, shape, algebra):
        n = shape[0] + shape[1]
        z = algebra.zero()
        return cls(shape, algebra, [[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, shape, algebra):
        n = shape[0] + shape[1]
        z, o = algebra.zero(), algebra.one()
        return cls(shape, algebra, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, shape, algebra, i, j, coeff=None):
        """E_{ij} (0-based), optionally scaled by a coefficient element."""
        m = cls.zero(shape, algebra).mutable()
        m[i][j] = coeff if coeff is not None else algebra.one()
        return cls(shape, algebra, m)

    @classmethod
    def from_scalar_rows(cls, shape, algebra, scalar_rows):
        return cls(
            shape,
            algebra,
            [[algebra.from_scalar(Scalar.of(algebra.field, s)) for s in row] for row in scalar_rows],
        )

    def mutable(self):
        return [list(r) for r in self.rows]

    # -- basic structure ---------------------------------------------------
    @property
    def size(self):
        return self.shape[0] + self.shape[1]

    def pos_parity(self, i):
        return 0 if i < self.shape[0] else 1

    def _check(self, other):
        if (
            not isinstance(other, SuperMatrix)
            or other.shape != self.shape
            or other.algebra != self.algebra
        ):
            raise StructuralError("shape or coefficient algebra mismatch")

    def __add__(self, other):
        self._check(other)
        return SuperMatrix(
            self.shape,
            self.algebra,
            [
                [self.rows[i][j] + other.rows[i][j] for j in range(self.size)]
                for i in range(self.size)
            ],
        )

    def __neg__(self):
        return SuperMatrix(
            self.shape, self.algebra, [[-e for e in row] for row in self.rows]
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Multiply every entry by a coefficient element or scalar (even use only)."""
        if isinstance(c, Scalar):
            return SuperMatrix(
                self.shape, self.algebra, [[e.scale(c) for e in row] for row in self.rows]
            )
        return SuperMatrix(
            self.shape, self.algebra, [[c * e for e in row] for row in self.rows]
        )

    def __eq__(self, other):
        return (
            isinstance(other, SuperMatrix)
            and other.shape == self.shape
            and other.algebra == self.algebra
            and other.rows == self.rows
        )

    __hash__ = None

    def is_zero(self):
        return all(e.is_zero() for row in self.rows for e in row)

    # -- the twisted product ----------------------------------------------
    def __mul__(self, other):
        self._check(other)
        n = self.size
        p = self.shape[0]
        alg = self.algebra
        # pre-split the right factor's entries by coefficient parity
        even = [[other.rows[j][k].even_part() for k in range(n)] for j in range(n)]
        odd = [[other.rows[j][k].odd_part() for k in range(n)] for j in range(n)]
        out = []
        for i in range(n):
            pi = 0 if i < p else 1
            row = []
            for k in range(n):
                acc = alg.zero()
                for j in range(n):
                    m = self.rows[i][j]
                    if m.is_zero():
                        continue
                    e, o = even[j][k], odd[j][k]
                    if not e.is_zero():
                        acc = acc + m * e
                    if not o.is_zero():
                        t = m * o
                        if (pi + (0 if j < p else 1)) % 2 == 1:
                            t = -t
                        acc = acc + t
                row.append(acc)
            out.append(row)
        return SuperMatrix(self.shape, alg, out)

    # -- parity structure ---------------------------------------------------
    def even_component(self):
        """Part with entry parity |i|+|j| (the GL(p|q)(A) pattern)."""
        return SuperMatrix(
            self.shape,
            self.algebra,
            [
                [
                    self.rows[i][j].even_part()
                    if (self.pos_parity(i) + self.pos_parity(j)) % 2 == 0
                    else self.rows[i][j].odd_part()
                    for j in range(self.size)
                ]
                for i in range(self.size)
            ],
        )

    def odd_component(self):
        return self - self.even_component()

    def is_even_homogeneous(self):
        return self.odd_component().is_zero()

    def is_odd_homogeneous(self):
        return self.even_component().is_zero()

    def homogeneity(self):
        """0, 1 or None, mirroring the entry-parity pattern."""
        if self.is_even_homogeneous():
            return 0
        if self.is_odd_homogeneous():
            return 1
        return None

    # -- functorial coefficient maps -----------------------------------------
    def body_rows(self):
        """Entrywise augmentation: the matrix over k (off-diagonal blocks die
        for even-homogeneous input since odd elements augment to zero)."""
        return [[e.augment() for e in row] for row in self.rows]

    def body_lift(self):
        return SuperMatrix(
            self.shape,
            self.algebra,
            [[self.algebra.from_scalar(s) for s in row] for row in self.body_rows()],
        )

    def map_entries(self, fn, algebra=None):
        return SuperMatrix(
            self.shape, algebra or self.algebra, [[fn(e) for e in row] for row in self.rows]
        )

    def entries_in_a1n(self, n: int) -> bool:
        """Whether every entry lies in the subalgebra A_1^(n)."""
        return all(e.a1n_member(n) for row in self.rows for e in row)

    def diagonal_blocks_only(self):
        p = self.shape[0]
        return all(
            self.rows[i][j].is_zero()
            for i in range(self.size)
            for j in range(self.size)
            if (i < p) != (j < p)
        )

    def to_strings(self):
        return [[e.to_str() for e in row] for row in self.rows]

    def __repr__(self):
        return "[" + "; ".join(", ".join(r) for r in self.to_strings()) + "]"


# ---------------------------------------------------------------------------
# exact linear algebra over the base field


def k_solve_matrix(field, columns, n_unknowns):
    """Row-reduce the n x m system 'columns' (list of length-n k-vectors, raw
    values) and return a solver closure mapping any length-n vector of
    coefficient-algebra elements to its exact coordinates, or None when the
    residual is nonzero.  Requires the columns to be k-linearly independent.
    """
    m = n_unknowns
    n = len(columns[0]) if columns else 0
    if len(columns) != m:
        raise StructuralError("column count mismatch")
    # Gauss-Jordan over k on [C | I_n] transposed bookkeeping: we eliminate on
    # rows of C, tracking the row operations applied to the identity.
    rows = [[columns[j][i] for j in range(m)] for i in range(n)]
    ops = [[field.from_int(1) if r == c else field.from_int(0) for c in range(n)] for r in range(n)]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, n) if rows[i][col] != field.from_int(0)), None)
        if piv is None:
            raise StructuralError("columns are k-linearly dependent")
        rows[r], rows[piv] = rows[piv], rows[r]
        ops[r], ops[piv] = ops[piv], ops[r]
        inv = field.inv(rows[r][col])
        rows[r] = [field.mul(inv, v) for v in rows[r]]
        ops[r] = [field.mul(inv, v) for v in ops[r]]
        for i in range(n):
            if i != r and rows[i][col] != field.from_int(0):
                f = rows[i][col]
                rows[i] = [field.add(a, field.neg(field.mul(f, b))) for a, b in zip(rows[i], rows[r])]
                ops[i] = [field.add(a, field.neg(field.mul(f, b))) for a, b in zip(ops[i], ops[r])]
        pivots.append(col)
        r += 1

    def solve(vector, algebra):
        """vector: length-n list of algebra elements; returns coords or None."""
        coords = []
        for t in range(m):
            acc = algebra.zero()
            for i in range(n):
                c = ops[t][i]
                if c != field.from_int(0):
                    acc = acc + vector[i].scale(Scalar(field, c))
            coords.append(acc)
        # exact residual check against the original columns
        for i in range(n):
            acc = algebra.zero()
            for j in range(m):
                c = columns[j][i]
                if c != field.from_int(0):
                    acc = acc + coords[j].scale(Scalar(field, c))
            if not (acc - vector[i]).is_zero():
                return None
        return coords

    return solve


def k_matrix_inverse(field, rows):
    """Exact inverse of a square matrix of raw field values, or None."""
    n = len(rows)
    a = [list(r) for r in rows]
    inv = [[field.from_int(1) if i == j else field.from_int(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != field.from_int(0)), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = field.inv(a[col][col])
        a[col] = [field.mul(f, v) for v in a[col]]
        inv[col] = [field.mul(f, v) for v in inv[col]]
        for i in range(n):
            if i != col and a[i][col] != field.from_int(0):
                g = a[i][col]
                a[i] = [field.add(x, field.neg(field.mul(g, y))) for x, y in zip(a[i], a[col])]
                inv[i] = [field.add(x, field.neg(field.mul(g, y))) for x, y in zip(inv[i], inv[col])]
    return inv


# ---------------------------------------------------------------------------
# GL(p|q) operations


def is_invertible(m: SuperMatrix) -> bool:
    return k_matrix_inverse(m.algebra.field, [[s.raw for s in row] for row in m.body_rows()]) is not None


def smat_inv(m: SuperMatrix) -> SuperMatrix:
    """Body-lift + Neumann series; exact, terminates by the nilpotency bound."""
    field = m.algebra.field
    binv_raw = k_matrix_inverse(field, [[s.raw for s in row] for row in m.body_rows()])
    if binv_raw is None:
        raise NotInvertible("body matrix is singular over k")
    binv = SuperMatrix.from_scalar_rows(m.shape, m.algebra, [[Scalar(field, v) for v in row] for row in binv_raw])
    soul = m - m.body_lift()
    t = binv * soul
    acc = SuperMatrix.identity(m.shape, m.algebra)
    pw = SuperMatrix.identity(m.shape, m.algebra)
    for _ in range(m.algebra.nilpotency_bound):
        pw = -(pw * t)
        if pw.is_zero():
            break
        acc = acc + pw
    return acc * binv


def gl_split(m: SuperMatrix):
    """Unique factorization of a GL(p|q)(A) point as diag(a,d) . (I + odd).

    Returns (even_factor, odd_factor) with exact reassembly
    even_factor * odd_factor == m.
    """
    if not m.is_even_homogeneous():
        raise StructuralError("gl_split needs an even-homogeneous matrix")
    p = m.shape[0]
    rows = m.mutable()
    z = m.algebra.zero()
    for i in range(m.size):
        for j in range(m.size):
            if (i < p) != (j < p):
                rows[i][j] = z
    even_factor = SuperMatrix(m.shape, m.algebra, rows)
    odd_factor = smat_inv(even_factor) * m
    return even_factor, odd_factor


def is_odd_unipotent(m: SuperMatrix) -> bool:
    """Whether m = I + N with N supported on the off-diagonal blocks (odd
    coefficients at odd positions): the shape of gl_split's odd factor."""
    n = m.size
    p = m.shape[0]
    if not m.is_even_homogeneous():
        return False
    ident = SuperMatrix.identity(m.shape, m.algebra)
    return all(
        (m.rows[i][j] - ident.rows[i][j]).is_zero()
        for i in range(n)
        for j in range(n)
        if (i < p) == (j < p)
    )


def gl_bracket(m: SuperMatrix, n: SuperMatrix) -> SuperMatrix:
    """[A,B] := AB - (-1)^{|A||B|} BA on homogeneous supermatrices."""
    pm, pn = m.homogeneity(), n.homogeneity()
    if pm is None or pn is None:
        raise StructuralError("bracket needs homogeneous arguments")
    ba = n * m
    return m * n - (-ba if pm * pn else ba)


def gl_2op(m: SuperMatrix) -> SuperMatrix:
    """C^<2> := C C for odd-homogeneous C; the result is even-homogeneous."""
    if not m.is_odd_homogeneous():
        raise StructuralError("2-operation needs an odd-homogeneous matrix")
    return m * m


# ---------------------------------------------------------------------------
# group descriptors


class GroupDescriptor:
    """A computationally linear classical group: a membership predicate over
    any coefficient algebra, a tangent basis, and a test sampler.

    membership(identity) must hold; closure under product/inverse is checked
    by the test-suite on samples, never assumed.
    """

    def __init__(self, name, shape, member, sample, lie_basis, tangent_dim=None):
        self.name = name
        self.shape = shape
        self._member = member
        self._sample = sample
        self._lie_basis = lie_basis
        self.tangent_dim = tangent_dim

    def member(self, m: SuperMatrix) -> bool:
        if m.shape != self.shape:
            return False
        return self._member(m)

    def require_member(self, m: SuperMatrix, context=""):
        if not self.member(m):
            raise MembershipViolation(
                f"matrix is not a point of {self.name}" + (f" ({context})" if context else "")
            )

    def sample(self, algebra, rng) -> SuperMatrix:
        g = self._sample(self, algebra, rng)
        self.require_member(g, "sampler output")
        return g

    def lie_basis(self, field):
        """k-matrices spanning the declared tangent space at the identity."""
        return self._lie_basis(self, field)

    def __repr__(self):
        return f"GroupDescriptor({self.name}, shape={self.shape})"


def _rand_even_unit(algebra, rng):
    from .sampling import rand_even_unit

    return rand_even_unit(algebra, rng)


def _rand_even(algebra, rng):
    from .sampling import rand_element

    return rand_element(algebra, rng, parity=0)


def _rand_odd(algebra, rng):
    from .sampling import rand_element

    return rand_element(algebra, rng, parity=1)


def _sample_block_diag(desc, algebra, rng):
    p, q = desc.shape
    n = p + q
    field = algebra.field
    while True:
        rows = [[algebra.zero()] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if (i < p) == (j < p):
                    rows[i][j] = _rand_even(algebra, rng) if i != j else _rand_even_unit(algebra, rng)
        m = SuperMatrix(desc.shape, algebra, rows)
        if k_matrix_inverse(field, [[s.raw for s in row] for row in m.body_rows()]) is not None:
            return m


def _sample_full(desc, algebra, rng):
    p, q = desc.shape
    n = p + q
    base = _sample_block_diag(desc, algebra, rng).mutable()
    for i in range(n):
        for j in range(n):
            if (i < p) != (j < p):
                base[i][j] = _rand_odd(algebra, rng)
    return SuperMatrix(desc.shape, algebra, base)


def _sample_torus(desc, algebra, rng):
    n = desc.shape[0] + desc.shape[1]
    rows = [[algebra.zero()] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = _rand_even_unit(algebra, rng)
    return SuperMatrix(desc.shape, algebra, rows)


def _sample_scalar_torus(desc, algebra, rng):
    n = desc.shape[0] + desc.shape[1]
    u = _rand_even_unit(algebra, rng)
    rows = [[algebra.zero()] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = u
    return SuperMatrix(desc.shape, algebra, rows)


def _units(shape, field, positions):
    mats = []
    n = shape[0] + shape[1]
    for (i, j) in positions:
        rows = [[field.from_int(0)] * n for _ in range(n)]
        rows[i][j] = field.from_int(1)
        mats.append(rows)
    return mats


def gl_block_diag(p, q):
    """GL_p x GL_q: block-diagonal even-group descriptor (the even part of
    the general linear supergroup, as a classical group)."""
    shape = (p, q)

    def member(m):
        return m.is_even_homogeneous() and m.diagonal_blocks_only() and is_invertible(m)

    def lie_basis(desc, field):
        n = p + q
        return _units(shape, field, [(i, j) for i in range(n) for j in range(n) if (i < p) == (j < p)])

    return GroupDescriptor(f"GL{p}xGL{q}", shape, member, _sample_block_diag, lie_basis, tangent_dim=p * p + q * q)


def gl_full(p, q):
    """The point groups of the full supergroup GL(p|q): even-homogeneous
    invertible matrices (diagonal blocks even, off-diagonal odd)."""
    shape = (p, q)

    def member(m):
        return m.is_even_homogeneous() and is_invertible(m)

    def lie_basis(desc, field):
        n = p + q
        return _units(shape, field, [(i, j) for i in range(n) for j in range(n)])

    return GroupDescriptor(f"GL({p}|{q})", shape, member, _sample_full, lie_basis, tangent_dim=(p + q) ** 2)


def diagonal_torus(p, q):
    shape = (p, q)

    def member(m):
        n = p + q
        return (
            m.is_even_homogeneous()
            and all(m.rows[i][j].is_zero() for i in range(n) for j in range(n) if i != j)
            and is_invertible(m)
        )

    def lie_basis(desc, field):
        return _units(shape, field, [(i, i) for i in range(p + q)])

    return GroupDescriptor(f"T({p}|{q})", shape, member, _sample_torus, lie_basis, tangent_dim=p + q)


def scalar_torus(p, q):
    """Invertible scalar multiples of the identity; Lie algebra k.I."""
    shape = (p, q)

    def member(m):
        n = p + q
        if not m.is_even_homogeneous() or not is_invertible(m):
            return False
        if any(not m.rows[i][j].is_zero() for i in range(n) for j in range(n) if i != j):
            return False
        return all((m.rows[i][i] - m.rows[0][0]).is_zero() for i in range(n))

    def lie_basis(desc, field):
        n = p + q
        rows = [[field.from_int(1) if i == j else field.from_int(0) for j in range(n)] for i in range(n)]
        return [rows]

    return GroupDescriptor(f"Z({p}|{q})", shape, member, _sample_scalar_torus, lie_basis, tangent_dim=1)


BUILTIN_GROUPS = {
    "gl_block_diag": gl_block_diag,
    "gl_full": gl_full,
    "diagonal_torus": diagonal_torus,
    "scalar_torus": scalar_torus,
}


# ---------------------------------------------------------------------------
# tangent probes and A-point splittings


def constant_matrix(shape, algebra, scalar_rows):
    """Lift a matrix of raw k-values into a matrix over the algebra."""
    field = algebra.field
    return SuperMatrix(
        shape,
        algebra,
        [[algebra.from_scalar(Scalar(field, v)) for v in row] for row in scalar_rows],
    )


def dual_probe(candidate_rows, shape, algebra, odd_direction=None):
    """Build 1 + eps*Z (even Z) or 1 + eps*eta*Z (odd Z) over A[eps].

    Returns (dual_algebra, probe_matrix).  For odd candidates an odd element
    of A must be supplied; tangent vectors along odd directions carry odd
    coefficients (Lie(G)(A) = A_0 (x) g_0 + A_1 (x) g_1).
    """
    dual = DualExtension(algebra)
    n = shape[0] + shape[1]
    field = algebra.field
    rows = [
        [dual.from_scalar(Scalar.of(field, 1)) if i == j else dual.zero() for j in range(n)]
        for i in range(n)
    ]
    for i in range(n):
        for j in range(n):
            v = candidate_rows[i][j]
            if v == field.from_int(0):
                continue
            inner = algebra.from_scalar(Scalar(field, v))
            if odd_direction is not None:
                inner = odd_direction * inner
            rows[i][j] = rows[i][j] + dual.times_eps(inner)
    return dual, SuperMatrix(shape, dual, rows)


def lie_points(group: GroupDescriptor, algebra, candidates=None, odd_element=None):
    """Dual-number membership test for candidate tangent directions.

    candidates: list of (rows, parity) with rows a raw k-matrix; defaults to
    all matrix units.  Returns {index: bool}.  Odd candidates are probed with
    coefficient eps*eta where eta is an odd element of the algebra (required
    if any odd candidate is present).
    """
    field = algebra.field
    n = group.shape[0] + group.shape[1]
    p = group.shape[0]
    if candidates is None:
        candidates = []
        for i in range(n):
            for j in range(n):
                rows = [[field.from_int(0)] * n for _ in range(n)]
                rows[i][j] = field.from_int(1)
                candidates.append((rows, ((0 if i < p else 1) + (0 if j < p else 1)) % 2))
    if odd_element is None:
        gens = algebra.odd_generators()
        odd_element = gens[0] if gens else None
    results = {}
    for idx, (rows, parity) in enumerate(candidates):
        if parity == 1:
            if odd_element is None:
                raise StructuralError("odd probe needs an odd element in the algebra")
            _, probe = dual_probe(rows, group.shape, algebra, odd_direction=odd_element)
        else:
            _, probe = dual_probe(rows, group.shape, algebra)
        results[idx] = group.member(probe)
    return results


def matrix_bar(m: SuperMatrix) -> SuperMatrix:
    """G(pi_A): entrywise projection to A-bar, re-embedded via the section
    sigma_A (unit inclusion of k); only for algebras with A-bar = k."""
    return m.body_lift()


def semidirect_split(group: GroupDescriptor, g: SuperMatrix):
    """Factor g = g_bar . g_ker with G(pi)(g_ker) = 1.

    g_bar = G(sigma)(G(pi)(g)) is the section lift of the reduced point;
    g_ker = g_bar^{-1} g lies in the kernel of G(pi).
    """
    group.require_member(g, "semidirect_split input")
    g_bar = matrix_bar(g)
    group.require_member(g_bar, "reduced point")
    g_ker = smat_inv(g_bar) * g
    if not matrix_bar(g_ker) == SuperMatrix.identity(g.shape, g.algebra):
        raise MembershipViolation("kernel factor does not reduce to 1")
    return g_bar, g_ker
