"""Lie superalgebras with 2-operation, given by structure constants.

The axioms checked here are the characteristic-free ones: besides bilinear
antisymmetry and graded Jacobi, the odd part carries a quadratic 2-operation
Y -> Y^<2> into the even part whose polarization is the odd-odd bracket and
which satisfies [z^<2>, x] = [z, [z, x]].  Over fields of characteristic 2
and 3 this refines (and replaces) the usual 1/2 [z,z] square.

The module also hosts the exterior module wedge(g_1) with its straightening
action: the induced module from the trivial even representation, in the PBW
basis of ordered monomials.  All straightening happens over the base field
in one memoized kernel; coefficient algebras enter only through the A-linear
extension with the sign rule

    (eta (x) Y).(c (x) w) = (-1)^{|Y||c|} eta c (x) Y.w .
"""

from __future__ import annotations

import threading

from .coeff import GrassmannAlgebra, Scalar
from .errors import ClosureViolation, StructuralError
from .smat import SuperMatrix, constant_matrix, gl_2op, gl_bracket, k_solve_matrix


def _vzero(field, n):
    return tuple(field.from_int(0) for _ in range(n))


def _vadd(field, u, v):
    return tuple(field.add(a, b) for a, b in zip(u, v))


def _vscale(field, c, u):
    return tuple(field.mul(c, a) for a in u)


class CheckReport:
    """Outcome of an axiom/validation run: empty failure list means pass."""

    def __init__(self):
        self.failures = []
        self.notes = []

    def fail(self, msg):
        self.failures.append(msg)

    def note(self, msg):
        self.notes.append(msg)

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    def summary(self):
        status = "PASS" if self.ok else "FAIL"
        lines = [status]
        lines += [f"  FAIL {m}" for m in self.failures]
        lines += [f"  note {m}" for m in self.notes]
        return "\n".join(lines)


class LieSuperalgebraData:
    """Structure constants on a fixed homogeneous basis X_1..X_{d+},
    Y_1..Y_{d-}; indices are 0-based internally.

    bracket tables (tuples of raw field values):
      ee[a][b] : [X_a, X_b] in the even basis
      eo[a][i] : [X_a, Y_i] in the odd basis
      oo[i][j] : [Y_i, Y_j] in the even basis (symmetric by axiom (b))
      q2[i]    : Y_i^<2>    in the even basis

    Optional representation: shape (p,q) plus raw k-matrices rho_even[a],
    rho_odd[i]; rho is checked to be a homomorphism by check_axioms.
    """

    def __init__(self, field, d_plus, d_minus, ee, eo, oo, q2,
                 shape=None, rho_even=None, rho_odd=None):
        self.field = field
        self.d_plus = d_plus
        self.d_minus = d_minus
        self.ee = tuple(tuple(tuple(v) for v in row) for row in ee)
        self.eo = tuple(tuple(tuple(v) for v in row) for row in eo)
        self.oo = tuple(tuple(tuple(v) for v in row) for row in oo)
        self.q2 = tuple(tuple(v) for v in q2)
        self.shape = shape
        self.rho_even = (
            [tuple(tuple(r) for r in m) for m in rho_even] if rho_even is not None else None
        )
        self.rho_odd = (
            [tuple(tuple(r) for r in m) for m in rho_odd] if rho_odd is not None else None
        )
        self._validate_shapes()
        self._odd_memo = {}
        self._even_memo = {}
        self._memo_lock = threading.Lock()

    def _validate_shapes(self):
        dp, dm = self.d_plus, self.d_minus
        if len(self.ee) != dp or any(len(r) != dp for r in self.ee):
            raise StructuralError("even-even table shape")
        if any(len(v) != dp for r in self.ee for v in r):
            raise StructuralError("even-even values must be even vectors")
        if len(self.eo) != dp or any(len(r) != dm for r in self.eo):
            raise StructuralError("even-odd table shape")
        if any(len(v) != dm for r in self.eo for v in r):
            raise StructuralError("even-odd values must be odd vectors")
        if len(self.oo) != dm or any(len(r) != dm for r in self.oo):
            raise StructuralError("odd-odd table shape")
        if any(len(v) != dp for r in self.oo for v in r):
            raise StructuralError("odd-odd values must be even vectors")
        if len(self.q2) != dm or any(len(v) != dp for v in self.q2):
            raise StructuralError("2-operation table shape")
        if (self.rho_even is None) != (self.rho_odd is None):
            raise StructuralError("rho must supply both parities")
        if self.rho_even is not None and self.shape is None:
            raise StructuralError("rho needs a block shape")

    # -- brackets over k ----------------------------------------------------
    def bracket_ee(self, u, v):
        f = self.field
        out = _vzero(f, self.d_plus)
        for a, ua in enumerate(u):
            if ua == f.from_int(0):
                continue
            for b, vb in enumerate(v):
                if vb == f.from_int(0):
                    continue
                out = _vadd(f, out, _vscale(f, f.mul(ua, vb), self.ee[a][b]))
        return out

    def bracket_eo(self, u, w):
        f = self.field
        out = _vzero(f, self.d_minus)
        for a, ua in enumerate(u):
            if ua == f.from_int(0):
                continue
            for i, wi in enumerate(w):
                if wi == f.from_int(0):
                    continue
                out = _vadd(f, out, _vscale(f, f.mul(ua, wi), self.eo[a][i]))
        return out

    def bracket_oo(self, w, z):
        f = self.field
        out = _vzero(f, self.d_plus)
        for i, wi in enumerate(w):
            if wi == f.from_int(0):
                continue
            for j, zj in enumerate(z):
                if zj == f.from_int(0):
                    continue
                out = _vadd(f, out, _vscale(f, f.mul(wi, zj), self.oo[i][j]))
        return out

    def two_op(self, w):
        """(sum c_i Y_i)^<2> = sum c_i^2 Y_i^<2> + sum_{i<j} c_i c_j [Y_i,Y_j].

        This is axiom (d) enforced representationally: the operation is
        quadratic by construction, with polarization the odd-odd bracket.
        """
        f = self.field
        out = _vzero(f, self.d_plus)
        for i, wi in enumerate(w):
            if wi == f.from_int(0):
                continue
            out = _vadd(f, out, _vscale(f, f.mul(wi, wi), self.q2[i]))
            for j in range(i + 1, self.d_minus):
                if w[j] == f.from_int(0):
                    continue
                out = _vadd(f, out, _vscale(f, f.mul(wi, w[j]), self.oo[i][j]))
        return out

    # -- representation lifts ------------------------------------------------
    def rho_even_matrix(self, a, algebra) -> SuperMatrix:
        return constant_matrix(self.shape, algebra, self.rho_even[a])

    def rho_odd_matrix(self, i, algebra) -> SuperMatrix:
        return constant_matrix(self.shape, algebra, self.rho_odd[i])

    def rho_even_comb(self, coords, algebra) -> SuperMatrix:
        m = SuperMatrix.zero(self.shape, algebra)
        for a, c in enumerate(coords):
            if c != self.field.from_int(0):
                m = m + self.rho_even_matrix(a, algebra).scale(Scalar(self.field, c))
        return m

    def rho_odd_comb(self, coords, algebra) -> SuperMatrix:
        m = SuperMatrix.zero(self.shape, algebra)
        for i, c in enumerate(coords):
            if c != self.field.from_int(0):
                m = m + self.rho_odd_matrix(i, algebra).scale(Scalar(self.field, c))
        return m

    # -- straightening kernel over k ------------------------------------------
    # The induced module V = U(g) (x)_{U(g0)} k.b with basis
    # Ybar_S = Y_{i_1}..Y_{i_s}.b for ascending index sets S (bitmask).
    # Dictionaries map basis masks to raw field values; zero entries dropped.

    def _dict_add(self, acc, mask, raw):
        f = self.field
        prev = acc.get(mask)
        raw = f.add(prev, raw) if prev is not None else raw
        if raw == f.from_int(0):
            acc.pop(mask, None)
        else:
            acc[mask] = raw

    def odd_action(self, j, mask):
        """Y_j . Ybar_S, straightened into the PBW basis; memoized."""
        key = (j, mask)
        hit = self._odd_memo.get(key)
        if hit is not None:
            return hit
        f = self.field
        if mask == 0:
            res = {1 << j: f.from_int(1)}
        else:
            i0 = (mask & -mask).bit_length() - 1
            rest = mask & (mask - 1)
            if j < i0:
                res = {mask | (1 << j): f.from_int(1)}
            elif j == i0:
                # Y_j Y_j = Y_j^<2> inside U(g)
                res = self.even_action_vec(self.q2[j], rest)
            else:
                # Y_j Y_{i0} = -Y_{i0} Y_j + [Y_j, Y_{i0}]
                res = {}
                for m, c in self.even_action_vec(self.oo[j][i0], rest).items():
                    self._dict_add(res, m, c)
                inner = self.odd_action(j, rest)
                for m, c in inner.items():
                    for m2, c2 in self.odd_action(i0, m).items():
                        self._dict_add(res, m2, f.neg(f.mul(c, c2)))
        with self._memo_lock:
            self._odd_memo[key] = res
        return res

    def even_action_basis(self, a, mask):
        """X_a . Ybar_S: the derivation action, with X_a killing b."""
        key = (a, mask)
        hit = self._even_memo.get(key)
        if hit is not None:
            return hit
        f = self.field
        if mask == 0:
            res = {}
        else:
            i0 = (mask & -mask).bit_length() - 1
            rest = mask & (mask - 1)
            res = {}
            # [X_a, Y_{i0}] . Ybar_rest
            for m, wm in enumerate(self.eo[a][i0]):
                if wm == f.from_int(0):
                    continue
                for m2, c2 in self.odd_action(m, rest).items():
                    self._dict_add(res, m2, f.mul(wm, c2))
            # Y_{i0} . (X_a . Ybar_rest)
            for m, c in self.even_action_basis(a, rest).items():
                for m2, c2 in self.odd_action(i0, m).items():
                    self._dict_add(res, m2, f.mul(c, c2))
        with self._memo_lock:
            self._even_memo[key] = res
        return res

    def even_action_vec(self, coords, mask):
        f = self.field
        res = {}
        for a, c in enumerate(coords):
            if c == f.from_int(0):
                continue
            for m, c2 in self.even_action_basis(a, mask).items():
                self._dict_add(res, m, f.mul(c, c2))
        return res


# ---------------------------------------------------------------------------
# axiom verification


def _basis_elements(lie):
    f = lie.field
    out = []
    for a in range(lie.d_plus):
        v = [f.from_int(0)] * lie.d_plus
        v[a] = f.from_int(1)
        out.append((0, tuple(v), f"X{a + 1}"))
    for i in range(lie.d_minus):
        v = [f.from_int(0)] * lie.d_minus
        v[i] = f.from_int(1)
        out.append((1, tuple(v), f"Y{i + 1}"))
    return out


def _bracket(lie, x, y):
    """Graded bracket of homogeneous (parity, vector) pairs; result pair."""
    f = lie.field
    px, vx = x
    py, vy = y
    if px == 0 and py == 0:
        return (0, lie.bracket_ee(vx, vy))
    if px == 0 and py == 1:
        return (1, lie.bracket_eo(vx, vy))
    if px == 1 and py == 0:
        # [w, u] = -[u, w] for |w||u| = 0
        return (1, tuple(f.neg(c) for c in lie.bracket_eo(vy, vx)))
    return (0, lie.bracket_oo(vx, vy))


def _is_zero_vec(field, v):
    return all(c == field.from_int(0) for c in v)


def check_axioms(lie: LieSuperalgebraData) -> CheckReport:
    """Verify axioms (a)-(f); with rho present, also the homomorphism laws."""
    rep = CheckReport()
    f = lie.field
    basis = _basis_elements(lie)
    evens = [b for b in basis if b[0] == 0]
    odds = [b for b in basis if b[0] == 1]

    # (a) alternating even brackets; [z,[z,z]] = 0 for odd z incl. polarized
    for p, v, name in evens:
        if not _is_zero_vec(f, lie.bracket_ee(v, v)):
            rep.fail(f"(a) [{name},{name}] != 0")
    odd_probes = [(v, n) for _, v, n in odds]
    for i in range(len(odds)):
        for j in range(i + 1, len(odds)):
            v = _vadd(f, odds[i][1], odds[j][1])
            odd_probes.append((v, f"{odds[i][2]}+{odds[j][2]}"))
            for l in range(j + 1, len(odds)):
                odd_probes.append((_vadd(f, v, odds[l][1]),
                                   f"{odds[i][2]}+{odds[j][2]}+{odds[l][2]}"))
    for v, name in odd_probes:
        zz = lie.bracket_oo(v, v)
        res = lie.bracket_eo(zz, v)  # [[z,z], z] has parity odd; compare via (b)
        # [z,[z,z]] = -(-1)^{1*0}[[z,z],z] = -[[z,z],z]
        if not _is_zero_vec(f, res):
            rep.fail(f"(a) [{name},[{name},{name}]] != 0")

    # (b) graded antisymmetry on homogeneous basis pairs
    for x in basis:
        for y in basis:
            px, vx, nx = x
            py, vy, ny = y
            pb, b1 = _bracket(lie, (px, vx), (py, vy))
            pb2, b2 = _bracket(lie, (py, vy), (px, vx))
            sign = -1 if (px * py) % 2 else 1
            combined = _vadd(f, b1, b2) if sign > 0 else _vadd(
                f, b1, tuple(f.neg(c) for c in b2))
            if not _is_zero_vec(f, combined):
                rep.fail(f"(b) antisymmetry fails on ({nx},{ny})")

    # (c) graded Jacobi on homogeneous basis triples
    for x in basis:
        for y in basis:
            for z in basis:
                px, vx, nx = x
                py, vy, ny = y
                pz, vz, nz = z
                t1 = _bracket(lie, (px, vx), _bracket(lie, (py, vy), (pz, vz)))
                t2 = _bracket(lie, (py, vy), _bracket(lie, (pz, vz), (px, vx)))
                t3 = _bracket(lie, (pz, vz), _bracket(lie, (px, vx), (py, vy)))
                s1 = -1 if (px * pz) % 2 else 1
                s2 = -1 if (py * px) % 2 else 1
                s3 = -1 if (pz * py) % 2 else 1
                total = None
                for s, (pt, vt) in zip((s1, s2, s3), (t1, t2, t3)):
                    v = vt if s > 0 else tuple(f.neg(c) for c in vt)
                    total = v if total is None else _vadd(f, total, v)
                if not _is_zero_vec(f, total):
                    rep.fail(f"(c) Jacobi fails on ({nx},{ny},{nz})")

    # (d) is true of the encoding (two_op applies constants quadratically)
    rep.note("(d) quadraticity holds by construction of two_op")

    # (e) polarization: [z1,z2] = (z1+z2)^<2> - z1^<2> - z2^<2> on basis pairs
    for i in range(lie.d_minus):
        for j in range(lie.d_minus):
            if i == j:
                continue
            zi, zj = odds[i][1], odds[j][1]
            lhs = lie.bracket_oo(zi, zj)
            rhs = lie.two_op(_vadd(f, zi, zj))
            rhs = _vadd(f, rhs, tuple(f.neg(c) for c in lie.two_op(zi)))
            rhs = _vadd(f, rhs, tuple(f.neg(c) for c in lie.two_op(zj)))
            if not _is_zero_vec(f, _vadd(f, lhs, tuple(f.neg(c) for c in rhs))):
                rep.fail(f"(e) polarization fails on ({odds[i][2]},{odds[j][2]})")

    # (f) [z^<2>, x] = [z, [z, x]] for odd z (basis and pairwise-polarized)
    f_probes = [(v, n) for _, v, n in odds]
    for i in range(len(odds)):
        for j in range(i + 1, len(odds)):
            f_probes.append((_vadd(f, odds[i][1], odds[j][1]),
                             f"{odds[i][2]}+{odds[j][2]}"))
    for zv, zn in f_probes:
        z2 = lie.two_op(zv)
        for x in basis:
            px, vx, nx = x
            lhs = _bracket(lie, (0, z2), (px, vx))
            inner = _bracket(lie, (1, zv), (px, vx))
            rhs = _bracket(lie, (1, zv), inner)
            diff = _vadd(f, lhs[1], tuple(f.neg(c) for c in rhs[1]))
            if not _is_zero_vec(f, diff):
                rep.fail(f"(f) [z^<2>,x]=[z,[z,x]] fails on (z={zn}, x={nx})")

    if lie.rho_even is not None:
        _check_rho(lie, rep)
    return rep


def _check_rho(lie, rep):
    """rho respects brackets and the 2-operation, with correct parities."""
    f = lie.field
    k0 = GrassmannAlgebra(f, 0)
    re = [constant_matrix(lie.shape, k0, m) for m in lie.rho_even]
    ro = [constant_matrix(lie.shape, k0, m) for m in lie.rho_odd]
    for a, m in enumerate(re):
        if not m.is_even_homogeneous():
            rep.fail(f"rho(X{a + 1}) is not even-homogeneous")
    for i, m in enumerate(ro):
        if not m.is_odd_homogeneous():
            rep.fail(f"rho(Y{i + 1}) is not odd-homogeneous")
    if not rep.ok:
        return
    for a in range(lie.d_plus):
        for b in range(lie.d_plus):
            if gl_bracket(re[a], re[b]) != lie.rho_even_comb(lie.ee[a][b], k0):
                rep.fail(f"rho[X{a + 1},X{b + 1}] mismatch")
        for i in range(lie.d_minus):
            if gl_bracket(re[a], ro[i]) != lie.rho_odd_comb(lie.eo[a][i], k0):
                rep.fail(f"rho[X{a + 1},Y{i + 1}] mismatch")
    for i in range(lie.d_minus):
        for j in range(lie.d_minus):
            if gl_bracket(ro[i], ro[j]) != lie.rho_even_comb(lie.oo[i][j], k0):
                rep.fail(f"rho[Y{i + 1},Y{j + 1}] mismatch")
        if gl_2op(ro[i]) != lie.rho_even_comb(lie.q2[i], k0):
            rep.fail(f"rho(Y{i + 1}^<2>) mismatch")


# ---------------------------------------------------------------------------
# structure constants from matrices


def from_matrices(p, q, even_mats, odd_mats, field) -> LieSuperalgebraData:
    """Extract structure constants from homogeneous k-matrices.

    even_mats/odd_mats are raw k-matrix rows.  Brackets and odd squares are
    computed in the twisted matrix algebra and solved exactly against the
    span; a product that leaves the span raises ClosureViolation naming it.
    """
    shape = (p, q)
    k0 = GrassmannAlgebra(field, 0)
    evens = [constant_matrix(shape, k0, m) for m in even_mats]
    odds = [constant_matrix(shape, k0, m) for m in odd_mats]
    for m in evens:
        if not m.is_even_homogeneous():
            raise StructuralError("an even generator is not even-homogeneous")
    for m in odds:
        if not m.is_odd_homogeneous():
            raise StructuralError("an odd generator is not odd-homogeneous")

    def vec(m):
        return [e.augment() for row in m.rows for e in row]

    def vec_elems(m):
        return [e for row in m.rows for e in row]

    solve_even = k_solve_matrix(field, [[s.raw for s in vec(m)] for m in evens], len(evens)) if evens else None
    solve_odd = k_solve_matrix(field, [[s.raw for s in vec(m)] for m in odds], len(odds)) if odds else None

    def coords_even(m, what):
        if not evens:
            if m.is_zero():
                return ()
            raise ClosureViolation(f"{what} is nonzero with empty even span")
        sol = solve_even(vec_elems(m), k0)
        if sol is None:
            raise ClosureViolation(f"{what} left the even span")
        return tuple(e.augment().raw for e in sol)

    def coords_odd(m, what):
        if not odds:
            if m.is_zero():
                return ()
            raise ClosureViolation(f"{what} is nonzero with empty odd span")
        sol = solve_odd(vec_elems(m), k0)
        if sol is None:
            raise ClosureViolation(f"{what} left the odd span")
        return tuple(e.augment().raw for e in sol)

    dp, dm = len(evens), len(odds)
    ee = [[coords_even(gl_bracket(evens[a], evens[b]), f"[X{a + 1},X{b + 1}]")
           for b in range(dp)] for a in range(dp)]
    eo = [[coords_odd(gl_bracket(evens[a], odds[i]), f"[X{a + 1},Y{i + 1}]")
           for i in range(dm)] for a in range(dp)]
    oo = [[coords_even(gl_bracket(odds[i], odds[j]), f"[Y{i + 1},Y{j + 1}]")
           for j in range(dm)] for i in range(dm)]
    q2 = [coords_even(gl_2op(odds[i]), f"Y{i + 1}^<2>") for i in range(dm)]
    return LieSuperalgebraData(field, dp, dm, ee, eo, oo, q2,
                               shape=shape, rho_even=list(even_mats), rho_odd=list(odd_mats))


def gl_lie(p, q, field) -> LieSuperalgebraData:
    """gl(p|q) on the matrix-unit basis: evens E_ij (|i|=|j|) then odds."""
    n = p + q
    evens, odds = [], []
    for i in range(n):
        for j in range(n):
            rows = [[field.from_int(0)] * n for _ in range(n)]
            rows[i][j] = field.from_int(1)
            if (i < p) == (j < p):
                evens.append(rows)
            else:
                odds.append(rows)
    return from_matrices(p, q, evens, odds, field)


# ---------------------------------------------------------------------------
# the exterior module over a coefficient algebra


def _sign_twist(c):
    """even(c) - odd(c): the factor from moving one odd symbol past c."""
    return c.even_part() - c.odd_part()


class ExteriorVector:
    """Element of A (x) wedge(g_1) in the basis Ybar_S, S a bitmask."""

    __slots__ = ("lie", "algebra", "coeffs")

    def __init__(self, lie, algebra, coeffs=None):
        self.lie = lie
        self.algebra = algebra
        self.coeffs = {m: c for m, c in (coeffs or {}).items() if not c.is_zero()}

    @classmethod
    def vacuum(cls, lie, algebra):
        """b, the basis vector of the trivial inducing line."""
        return cls(lie, algebra, {0: algebra.one()})

    def coefficient(self, mask):
        return self.coeffs.get(mask, self.algebra.zero())

    def __add__(self, other):
        if other.lie is not self.lie or other.algebra != self.algebra:
            raise StructuralError("exterior vectors over different modules")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return ExteriorVector(self.lie, self.algebra, out)

    def __neg__(self):
        return ExteriorVector(self.lie, self.algebra, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ExteriorVector(self.lie, self.algebra, {m: c * e for m, e in self.coeffs.items()})

    def __eq__(self, other):
        return (
            isinstance(other, ExteriorVector)
            and other.lie is self.lie
            and other.algebra == self.algebra
            and other.coeffs == self.coeffs
        )

    __hash__ = None

    def is_zero(self):
        return not self.coeffs

    def parity_pattern_ok(self):
        """Coefficient parity must match |S| for points of (A (x) wedge(g_1))_0."""
        return all(c.parity() == m.bit_count() % 2 for m, c in self.coeffs.items())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs):
            mono = "b" if m == 0 else "Y" + ",".join(
                str(i + 1) for i in range(self.lie.d_minus) if m >> i & 1)
            parts.append(f"({self.coeffs[m]})*{mono}")
        return " + ".join(parts)


def straighten_action(lie, index, parity, v: ExteriorVector) -> ExteriorVector:
    """Action of the basis element Y_index (parity 1) or X_index (parity 0)
    on an exterior vector, extended A-linearly with the super sign rule."""
    alg = v.algebra
    field = lie.field
    out = {}
    for mask, c in v.coeffs.items():
        if parity == 1:
            kernel = lie.odd_action(index, mask)
            csig = _sign_twist(c)
        else:
            kernel = lie.even_action_basis(index, mask)
            csig = c
        for m2, raw in kernel.items():
            add = csig.scale(Scalar(field, raw))
            prev = out.get(m2)
            s = add if prev is None else prev + add
            if s.is_zero():
                out.pop(m2, None)
            else:
                out[m2] = s
    return ExteriorVector(lie, alg, out)


def apply_odd_generator(lie, i, eta, v: ExteriorVector) -> ExteriorVector:
    """(1 + eta Y_i) acting on v: identity plus eta times the Y_i action."""
    if not (eta.is_odd() or eta.is_zero()):
        raise StructuralError("odd generator coefficient must be odd")
    moved = straighten_action(lie, i, 1, v)
    return v + _scale_left(moved, eta)


def _scale_left(v: ExteriorVector, eta):
    """eta * v with eta already past the odd symbol (sign handled upstream)."""
    return ExteriorVector(v.lie, v.algebra, {m: eta * c for m, c in v.coeffs.items()})


def wedge_ad_action(lie, ad_matrix, v: ExteriorVector) -> ExteriorVector:
    """wedge-Ad for an even group element: each Ybar_i wedge-factor of
    Ybar_S is replaced by sum_j a[j][i] Ybar_j and the product expanded.

    ad_matrix[j][i] are even coefficient-algebra elements with
    Ad(g)(Y_i) = sum_j a[j][i] Y_j; the wedge expansion is exact.
    """
    alg = v.algebra
    out = {}
    for mask, c in v.coeffs.items():
        expanded = {0: alg.one()}
        i = 0
        rest = mask
        while rest:
            if rest & 1:
                nxt = {}
                for t, ct in expanded.items():
                    for j in range(lie.d_minus):
                        a = ad_matrix[j][i]
                        if a.is_zero() or (t >> j) & 1:
                            continue
                        sign = -1 if (t >> (j + 1)).bit_count() % 2 else 1
                        term = ct * a
                        if sign < 0:
                            term = -term
                        key = t | (1 << j)
                        prev = nxt.get(key)
                        s = term if prev is None else prev + term
                        if s.is_zero():
                            nxt.pop(key, None)
                        else:
                            nxt[key] = s
                expanded = nxt
                if not expanded:
                    break
            rest >>= 1
            i += 1
        for t, ct in expanded.items():
            add = c * ct
            prev = out.get(t)
            s = add if prev is None else prev + add
            if s.is_zero():
                out.pop(t, None)
            else:
                out[t] = s
    return ExteriorVector(lie, alg, out)


def word_action(word, v: ExteriorVector) -> ExteriorVector:
    """Left action of a group word on the exterior module.

    Even tokens act by wedge-Ad through the word's pair (duck-typed: the pair
    supplies ad_action_matrix); odd-generator tokens act as 1 + eta.Y_i.
    """
    pair = word.pair
    lie = pair.lie
    for tok in reversed(word.tokens):
        if tok.kind == "even":
            ad = pair.ad_action_matrix(tok.matrix)
            v = wedge_ad_action(lie, ad, v)
        else:
            moved = straighten_action(lie, tok.index, 1, v)
            v = v + _scale_left(moved, tok.eta)
    return v
