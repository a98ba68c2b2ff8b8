"""Words in the generators of the reconstructed supergroup, their canonical
normal forms, and the group structure on normal forms.

A word is a product of even points g+ (matrices over A_0) and odd
one-parameter factors (1 + eta.Y_i).  The canonical (LEFT) normal form is

    g  =  (prod_i^< (1 + eta_i Y_i)) . g+

with the product over the fixed odd-basis order.  Two independent routes
compute it:

* ``normal_form`` -- module extraction: act on the vacuum of the exterior
  module ``wedge(g_1)``; the single-index coefficients of the image *are* the
  etas (semi-faithfulness), and the even factor is recovered by matrix
  division in the representation.
* ``reorder_symbolic`` -- a rewriting engine using only the one-parameter
  relations: push even tokens right through Ad, remove inversions and
  repeats by the swap/merge relations, push the even corrections right.
  Terminates because the ideal generated by the word's odd coefficients is
  nilpotent; the pass guard trips only on a sign bug.

A third route for full-gl pairs, ``strip_matrix_factorization``, peels the
etas off the representing matrix by iterated refinement and closes the
oracle triangle.
"""

from __future__ import annotations

import random
import threading

from .coeff import DualExtension, Scalar
from .errors import MembershipViolation, NonTermination, SpanViolation, StructuralError
from .liesuper import (
    CheckReport,
    ExteriorVector,
    wedge_ad_action,
    word_action,
)
from .smat import SuperMatrix, dual_probe, gl_split, smat_inv

MAX_WORD_TOKENS = 10_000
_REWRITE_BUDGET = 1_000_000


class EvenTok:
    kind = "even"
    __slots__ = ("matrix",)

    def __init__(self, matrix: SuperMatrix):
        self.matrix = matrix

    def __repr__(self):
        return f"Even({self.matrix!r})"


class OddTok:
    kind = "odd"
    __slots__ = ("index", "eta")

    def __init__(self, index: int, eta):
        self.index = index
        self.eta = eta

    def __repr__(self):
        return f"Odd(Y{self.index + 1}, {self.eta!r})"


class GroupWord:
    """Validated token sequence over a pair and a coefficient algebra."""

    def __init__(self, pair, algebra, tokens):
        if len(tokens) > MAX_WORD_TOKENS:
            raise StructuralError("word exceeds the token bound")
        self.pair = pair
        self.algebra = algebra
        toks = []
        for t in tokens:
            if t.kind == "even":
                if t.matrix.algebra != algebra:
                    raise StructuralError("even token over the wrong algebra")
                pair.even_group.require_member(t.matrix, "word token")
                toks.append(t)
            else:
                if not (0 <= t.index < pair.d_minus):
                    raise StructuralError("odd generator index out of range")
                if t.eta.algebra != algebra:
                    raise StructuralError("odd token over the wrong algebra")
                if t.eta.is_zero():
                    continue  # (1 + 0.Y_i) = 1
                if not t.eta.is_odd():
                    raise StructuralError("odd token coefficient must be odd")
                toks.append(t)
        self.tokens = tuple(toks)

    def rho_matrix(self) -> SuperMatrix:
        """The word evaluated in the representation."""
        m = self.pair.identity_matrix(self.algebra)
        for t in self.tokens:
            m = m * (t.matrix if t.kind == "even" else
                     self.pair.odd_generator_matrix(t.index, t.eta))
        return m

    def inverse(self) -> "GroupWord":
        toks = []
        for t in reversed(self.tokens):
            if t.kind == "even":
                toks.append(EvenTok(smat_inv(t.matrix)))
            else:
                toks.append(OddTok(t.index, -t.eta))  # (1+eta Y)^-1 = (1-eta Y)
        return GroupWord(self.pair, self.algebra, toks)

    def __repr__(self):
        return " . ".join(repr(t) for t in self.tokens) or "1"


class NormalForm:
    """etas plus the even factor; LEFT orientation (odd product, then even)."""

    __slots__ = ("pair", "algebra", "etas", "g_plus")
    orientation = "LEFT"

    def __init__(self, pair, algebra, etas, g_plus: SuperMatrix):
        if len(etas) != pair.d_minus:
            raise StructuralError("eta tuple has wrong length")
        for e in etas:
            if not (e.is_zero() or e.is_odd()):
                raise StructuralError("etas must be odd or zero")
        pair.even_group.require_member(g_plus, "normal form even factor")
        self.pair = pair
        self.algebra = algebra
        self.etas = tuple(etas)
        self.g_plus = g_plus

    @classmethod
    def identity(cls, pair, algebra):
        return cls(pair, algebra, [algebra.zero()] * pair.d_minus,
                   pair.identity_matrix(algebra))

    def __eq__(self, other):
        return (
            isinstance(other, NormalForm)
            and other.pair is self.pair
            and other.algebra == self.algebra
            and other.etas == self.etas
            and other.g_plus == self.g_plus
        )

    __hash__ = None

    def is_identity(self):
        return all(e.is_zero() for e in self.etas) and \
            self.g_plus == self.pair.identity_matrix(self.algebra)

    def to_word(self) -> GroupWord:
        toks = [OddTok(i, e) for i, e in enumerate(self.etas) if not e.is_zero()]
        if self.g_plus != self.pair.identity_matrix(self.algebra):
            toks.append(EvenTok(self.g_plus))
        return GroupWord(self.pair, self.algebra, toks)

    def rho_matrix(self) -> SuperMatrix:
        m = self.pair.identity_matrix(self.algebra)
        for i, e in enumerate(self.etas):
            if not e.is_zero():
                m = m * self.pair.odd_generator_matrix(i, e)
        return m * self.g_plus

    def __repr__(self):
        return f"NormalForm(etas={list(self.etas)!r}, g_plus={self.g_plus!r})"


# ---------------------------------------------------------------------------
# route 1: module extraction


def normal_form(word: GroupWord) -> NormalForm:
    """Canonical factorization via the exterior module.

    (1) act on the vacuum; (2) read each eta off the single-index
    coefficient (exact by semi-faithfulness; the even factor fixes the
    vacuum); (3) divide out the odd product in the representation;
    (4) the quotient must be an even-group point.
    """
    pair, algebra = word.pair, word.algebra
    v = word_action(word, ExteriorVector.vacuum(pair.lie, algebra))
    etas = [v.coefficient(1 << i) for i in range(pair.d_minus)]
    m = pair.identity_matrix(algebra)
    for i, e in enumerate(etas):
        if not e.is_zero():
            m = m * pair.odd_generator_matrix(i, e)
    g_plus = smat_inv(m) * word.rho_matrix()
    if not g_plus.is_even_homogeneous() or not pair.even_group.member(g_plus):
        raise MembershipViolation(
            "extracted even factor is not an even-group point "
            "(invalid pair or Ad-unstable group)")
    return NormalForm(pair, algebra, etas, g_plus)


# ---------------------------------------------------------------------------
# route 2: symbolic rewriting


def _expand_conjugate(pair, ad_matrix, index, eta):
    """(1 + eta Ad(g)(Y_index)) as a list of odd tokens (they commute: all
    coefficients share the odd factor eta)."""
    out = []
    for j in range(pair.d_minus):
        a = ad_matrix[j][index]
        if a.is_zero():
            continue
        coeff = eta * a
        if not coeff.is_zero():
            out.append(OddTok(j, coeff))
    return out


def reorder_symbolic(word: GroupWord, stats=None) -> NormalForm:
    """Independent rewriting route to the same normal form.

    The engine keeps the invariant  word = (odd token list) . E  and fixes
    the leftmost violation at each step: even tokens are pushed right
    through Ad, adjacent out-of-order odd pairs are swapped by the
    commutation relation, repeated indices merged by the square relation;
    the even correction factors these emit are pushed right immediately,
    conjugating the tail.  Every coefficient these pushes create gains
    ideal-degree, so the process sweeps to a fixpoint; the pass guard
    (nilpotency bound + 1) trips only on a sign bug.
    """
    pair, algebra = word.pair, word.algebra
    guard = algebra.nilpotency_bound + 1
    rewrites = 0
    passes = 0
    trace = stats.get("trace") if stats is not None else None

    def note(msg):
        if trace is not None:
            trace.append(msg)

    # consume the word right-to-left into (odds, E)
    odds: list = []
    e_acc = pair.identity_matrix(algebra)
    for t in reversed(word.tokens):
        if t.kind == "odd":
            odds.insert(0, (t.index, t.eta))
        else:
            ad = pair.ad_action_matrix(t.matrix)
            new_odds = []
            for (i, eta) in odds:
                new_odds.extend((tok.index, tok.eta)
                                for tok in _expand_conjugate(pair, ad, i, eta))
            odds = new_odds
            e_acc = t.matrix * e_acc
            note(f"pushed even token right through {len(new_odds)} odd factor(s) [conjugation relation]")

    def emit_right(c_matrix, position):
        """Push an even correction from `position` through the tail into E."""
        nonlocal e_acc, odds
        ad = pair.ad_action_matrix(c_matrix)
        new_tail = []
        for (i, eta) in odds[position:]:
            new_tail.extend((tok.index, tok.eta)
                            for tok in _expand_conjugate(pair, ad, i, eta))
        odds[position:] = new_tail
        e_acc = c_matrix * e_acc

    while True:
        passes += 1
        if passes > guard:
            raise NonTermination(
                f"reordering exceeded {guard} passes: sign bug suspected")
        dirty = False
        s = 0
        while s < len(odds):
            rewrites += 1
            if rewrites > _REWRITE_BUDGET:
                raise NonTermination("rewrite budget exhausted: sign bug suspected")
            i, eta = odds[s]
            if eta.is_zero():
                del odds[s]
                dirty = True
                note(f"dropped (1 + 0.Y{i + 1})")
                s = max(0, s - 1)
                continue
            if s + 1 >= len(odds):
                break
            j, eta2 = odds[s + 1]
            if eta2.is_zero():
                del odds[s + 1]
                dirty = True
                continue
            if i < j:
                s += 1
                continue
            dirty = True
            if i == j:
                # (1+eta Y)(1+eta2 Y) = (1 + eta2 eta Y^<2>)(1 + (eta+eta2) Y)
                c = eta2 * eta
                merged = eta + eta2
                odds[s:s + 2] = [(i, merged)] if not merged.is_zero() else []
                note(f"merged repeated Y{i + 1} factors [square relation]")
                if not c.is_zero():
                    corr = pair.identity_matrix(algebra) + \
                        pair.lie.rho_even_comb(pair.lie.q2[i], algebra).scale(c)
                    emit_right(corr, s)
                    note(f"emitted square correction (1 + {c!r}.Y{i + 1}^<2>), pushed right [slide relation]")
            else:
                # (1+eta Y_i)(1+eta2 Y_j) =
                #   (1 + eta2 eta [Y_i,Y_j])(1+eta2 Y_j)(1+eta Y_i),   i > j
                c = eta2 * eta
                odds[s], odds[s + 1] = odds[s + 1], odds[s]
                note(f"swapped Y{i + 1} past Y{j + 1} [swap relation]")
                if not c.is_zero():
                    corr = pair.identity_matrix(algebra) + \
                        pair.lie.rho_even_comb(pair.lie.oo[i][j], algebra).scale(c)
                    emit_right(corr, s)
                    note(f"emitted bracket correction (1 + {c!r}.[Y{i + 1},Y{j + 1}]), pushed right [slide relation]")
            s = max(0, s - 1)
        if not dirty:
            break

    if stats is not None:
        stats["passes"] = passes
        stats["rewrites"] = rewrites
    etas = [algebra.zero()] * pair.d_minus
    for (i, eta) in odds:
        if not etas[i].is_zero():
            raise NonTermination("sorted word still has a repeated index")
        etas[i] = eta
    pair.even_group.require_member(e_acc, "reordered even factor")
    return NormalForm(pair, algebra, etas, e_acc)


# ---------------------------------------------------------------------------
# route 3: matrix stripping (full-gl pairs)


def strip_matrix_factorization(pair, m: SuperMatrix) -> NormalForm:
    """Factor a representing matrix directly, by iterated refinement.

    Requires the pair's odd basis to span all odd-homogeneous matrices
    (true for the gl(p|q) pairs), so the odd discrepancy of the current
    guess always lies in the span.  Each round divides out the guessed odd
    product; the leftover odd part has strictly higher ideal-degree, so the
    loop closes within the nilpotency bound.
    """
    algebra = m.algebra
    p_blk = pair.shape[0]
    size = pair.shape[0] + pair.shape[1]
    etas = [algebra.zero()] * pair.d_minus
    n = algebra.nilpotency_bound
    for _ in range(n + 2):
        p_guess = pair.identity_matrix(algebra)
        for i, e in enumerate(etas):
            if not e.is_zero():
                p_guess = p_guess * pair.odd_generator_matrix(i, e)
        r = smat_inv(p_guess) * m
        rows = r.mutable()
        z = algebra.zero()
        off = [[z] * size for _ in range(size)]
        for a in range(size):
            for b in range(size):
                if (a < p_blk) != (b < p_blk):
                    off[a][b] = rows[a][b]
                    rows[a][b] = z
        diag = SuperMatrix(pair.shape, algebra, rows)
        offm = SuperMatrix(pair.shape, algebra, off)
        if offm.is_zero():
            nf = NormalForm(pair, algebra, etas, r)
            if nf.rho_matrix() != m:
                raise NonTermination("stripping reassembly failed")
            return nf
        delta = offm * smat_inv(diag)
        coords = pair._odd_solver([e for row in delta.rows for e in row], algebra)
        if coords is None:
            raise SpanViolation("odd discrepancy left the pair's odd span")
        etas = [etas[i] + coords[i] for i in range(pair.d_minus)]
    raise NonTermination("matrix stripping did not close within the bound")


# ---------------------------------------------------------------------------
# group structure on normal forms


def gp_mul(nf1: NormalForm, nf2: NormalForm) -> NormalForm:
    if nf1.pair is not nf2.pair or nf1.algebra != nf2.algebra:
        raise StructuralError("normal forms over different groups")
    word = GroupWord(nf1.pair, nf1.algebra,
                     list(nf1.to_word().tokens) + list(nf2.to_word().tokens))
    return normal_form(word)


def gp_inv(nf: NormalForm) -> NormalForm:
    return normal_form(nf.to_word().inverse())


def gp_commutator(nf1: NormalForm, nf2: NormalForm) -> NormalForm:
    return gp_mul(gp_mul(nf1, nf2), gp_mul(gp_inv(nf1), gp_inv(nf2)))


def right_factorization(nf: NormalForm):
    """The companion RIGHT orientation: g = g_plus_r . prod^< (1 + eta_r Y),
    the odd product taken in *descending* basis order (inversion carries the
    ascending left form to the descending right form, so the two orientations
    transport into each other).  Returns (g_plus_r, etas_r); exactness is
    g == that product in the representation."""
    inv = normal_form(nf.to_word().inverse())
    g_plus_r = smat_inv(inv.g_plus)
    etas_r = tuple(-e for e in inv.etas)
    return g_plus_r, etas_r


def expand_right_factorization(pair, algebra, g_plus_r, etas_r) -> SuperMatrix:
    m = g_plus_r
    for i in reversed(range(pair.d_minus)):
        if not etas_r[i].is_zero():
            m = m * pair.odd_generator_matrix(i, etas_r[i])
    return m


# ---------------------------------------------------------------------------
# morphisms (the functor on arrows)


class PairMorphism:
    """(Omega_+, omega): a group map on even points plus a basis map on g.

    omega_even[b][a]: omega(X_a) = sum_b c X_b';   omega_odd[j][i] likewise.
    Omega_plus is a callable on even-group matrices, natural in the
    coefficient algebra.
    """

    def __init__(self, source, target, omega_even, omega_odd, omega_plus):
        self.source = source
        self.target = target
        self.omega_even = omega_even
        self.omega_odd = omega_odd
        self.omega_plus = omega_plus

    def check(self, samples=16, seed=0, algebra=None) -> CheckReport:
        """Sampled morphism conditions: Lie map, differential, equivariance."""
        from .coeff import GrassmannAlgebra

        rep = CheckReport()
        src, tgt = self.source, self.target
        f = src.field
        A = algebra or GrassmannAlgebra(f, 3)
        rng = random.Random(seed)

        def map_even(coords):
            out = [f.from_int(0)] * tgt.d_plus
            for a, c in enumerate(coords):
                for b in range(tgt.d_plus):
                    out[b] = f.add(out[b], f.mul(self.omega_even[b][a], c))
            return tuple(out)

        def map_odd(coords):
            out = [f.from_int(0)] * tgt.d_minus
            for i, c in enumerate(coords):
                for j in range(tgt.d_minus):
                    out[j] = f.add(out[j], f.mul(self.omega_odd[j][i], c))
            return tuple(out)

        # Lie superalgebra morphism on basis brackets and squares
        for a in range(src.d_plus):
            for b in range(src.d_plus):
                unit_a = [f.from_int(1) if t == a else f.from_int(0) for t in range(src.d_plus)]
                unit_b = [f.from_int(1) if t == b else f.from_int(0) for t in range(src.d_plus)]
                lhs = map_even(src.lie.bracket_ee(unit_a, unit_b))
                rhs = tgt.lie.bracket_ee(map_even(unit_a), map_even(unit_b))
                if lhs != rhs:
                    rep.fail(f"omega[X{a+1},X{b+1}] mismatch")
            for i in range(src.d_minus):
                unit_a = [f.from_int(1) if t == a else f.from_int(0) for t in range(src.d_plus)]
                unit_i = [f.from_int(1) if t == i else f.from_int(0) for t in range(src.d_minus)]
                lhs = map_odd(src.lie.bracket_eo(unit_a, unit_i))
                rhs = tgt.lie.bracket_eo(map_even(unit_a), map_odd(unit_i))
                if lhs != rhs:
                    rep.fail(f"omega[X{a+1},Y{i+1}] mismatch")
        for i in range(src.d_minus):
            unit_i = [f.from_int(1) if t == i else f.from_int(0) for t in range(src.d_minus)]
            if map_even(src.lie.two_op(unit_i)) != tgt.lie.two_op(map_odd(unit_i)):
                rep.fail(f"omega(Y{i+1}^<2>) mismatch")
            for j in range(src.d_minus):
                unit_j = [f.from_int(1) if t == j else f.from_int(0) for t in range(src.d_minus)]
                lhs = map_even(src.lie.bracket_oo(unit_i, unit_j))
                rhs = tgt.lie.bracket_oo(map_odd(unit_i), map_odd(unit_j))
                if lhs != rhs:
                    rep.fail(f"omega[Y{i+1},Y{j+1}] mismatch")

        # d(Omega_+) = omega on g_0: dual-number probes
        for a in range(src.d_plus):
            dual, probe = dual_probe(src.lie.rho_even[a], src.shape, A)
            tdual = DualExtension(A)
            unit_a = [f.from_int(1) if t == a else f.from_int(0) for t in range(src.d_plus)]
            expect = tgt.identity_matrix(tdual) + \
                tgt.lie.rho_even_comb(map_even(unit_a), tdual).scale(tdual.eps())
            if self.omega_plus(probe) != expect:
                rep.fail(f"d(Omega_+) != omega on X{a+1}")

        # equivariance on samples
        for s in range(samples):
            g = src.even_group.sample(A, rng)
            img = self.omega_plus(g)
            if not tgt.even_group.member(img):
                rep.fail(f"sample {s}: Omega_+(g) not a point of {tgt.even_group.name}")
                continue
            for i in range(src.d_minus):
                unit_i = [f.from_int(1) if t == i else f.from_int(0)
                          for t in range(src.d_minus)]
                src_coords = src.ad_coords(g, i)
                lhs = SuperMatrix.zero(tgt.shape, A)
                for j, c in enumerate(src_coords):
                    if not c.is_zero():
                        lhs = lhs + tgt.lie.rho_odd_comb(map_odd(
                            [f.from_int(1) if t == j else f.from_int(0)
                             for t in range(src.d_minus)]), A).scale(c)
                rhs = smat_inv(img) * tgt.lie.rho_odd_comb(map_odd(unit_i), A) * img
                if lhs != rhs:
                    rep.fail(f"sample {s}: Ad-equivariance fails on Y{i+1}")
        return rep


def psi_on_morphism(morphism: PairMorphism, nf: NormalForm) -> NormalForm:
    """Image normal form: map each factor and renormalize in the target.

    (1 + eta omega(Y_i)) expands into target one-parameter factors (they
    commute: common eta), and the even factor maps through Omega_+.
    """
    if nf.pair is not morphism.source:
        raise StructuralError("normal form is not over the morphism source")
    tgt = morphism.target
    f = tgt.field
    toks = []
    for i, eta in enumerate(nf.etas):
        if eta.is_zero():
            continue
        for j in range(tgt.d_minus):
            c = morphism.omega_odd[j][i]
            if c != f.from_int(0):
                coeff = eta.scale(Scalar(f, c))
                if not coeff.is_zero():
                    toks.append(OddTok(j, coeff))
    toks.append(EvenTok(morphism.omega_plus(nf.g_plus)))
    return normal_form(GroupWord(tgt, nf.algebra, toks))


# ---------------------------------------------------------------------------
# round trips


def roundtrip_phi_psi(pair, algebra, samples=32, seed=0) -> CheckReport:
    """Phi(Psi(P)) = P, executably: even points embed bijectively, and the
    one-parameter commutators recover the structure constants exactly."""
    rep = CheckReport()
    rng = random.Random(seed)
    from .sampling import rand_odd

    ident = pair.identity_matrix(algebra)

    # (i) even points: zero-eta normal forms biject with sampled points
    seen = []
    for s in range(samples):
        g = pair.even_group.sample(algebra, rng)
        nf = NormalForm(pair, algebra, [algebra.zero()] * pair.d_minus, g)
        back = normal_form(nf.to_word())
        if back != nf:
            rep.fail(f"even point {s} does not round-trip")
        seen.append((g, nf))
    for (g1, nf1) in seen[:8]:
        for (g2, nf2) in seen[:8]:
            if (g1 == g2) != (nf1 == nf2):
                rep.fail("even-point embedding is not injective")

    # (ii) odd-odd commutators recover the brackets (tang-group (g))
    for i in range(pair.d_minus):
        for j in range(pair.d_minus):
            eta, etap = rand_odd(algebra, rng), rand_odd(algebra, rng)
            nfi = normal_form(GroupWord(pair, algebra, [OddTok(i, eta)]))
            nfj = normal_form(GroupWord(pair, algebra, [OddTok(j, etap)]))
            comm = gp_commutator(nfi, nfj)
            expected_even = ident + pair.lie.rho_even_comb(
                pair.lie.oo[i][j], algebra).scale(etap * eta)
            expected = NormalForm(pair, algebra,
                                  [algebra.zero()] * pair.d_minus, expected_even)
            if comm != expected:
                rep.fail(f"commutator of one-parameter factors missed [Y{i+1},Y{j+1}]")
        # same-index product recovers the 2-operation (tang-group (e))
        eta, etap = rand_odd(algebra, rng), rand_odd(algebra, rng)
        w = GroupWord(pair, algebra, [OddTok(i, eta), OddTok(i, etap)])
        nf = normal_form(w)
        want_eta = eta + etap
        want_even = ident + pair.lie.rho_even_comb(pair.lie.q2[i], algebra).scale(etap * eta)
        ok = nf.g_plus == want_even and all(
            nf.etas[t] == (want_eta if t == i else algebra.zero())
            for t in range(pair.d_minus))
        if not ok:
            rep.fail(f"square relation missed Y{i+1}^<2>")

    # (iii) even-odd: dual-number probe recovers [X_a, Y_i]
    dual = DualExtension(algebra)
    f = pair.field
    for a in range(pair.d_plus):
        _, probe = dual_probe(pair.lie.rho_even[a], pair.shape, algebra)
        for i in range(pair.d_minus):
            eta = rand_odd(algebra, rng)
            eta_d = dual.include(eta)
            w = GroupWord(pair, dual, [EvenTok(probe), OddTok(i, eta_d)])
            nf = normal_form(w)
            if nf.g_plus != probe:
                rep.fail(f"even factor drifted in dual probe (X{a+1}, Y{i+1})")
                continue
            for j in range(pair.d_minus):
                c = pair.lie.eo[a][i][j]
                want = dual.include(eta) if j == i else dual.zero()
                if c != f.from_int(0):
                    want = want + dual.times_eps(eta.scale(Scalar(f, c)))
                if nf.etas[j] != want:
                    rep.fail(f"dual probe missed [X{a+1},Y{i+1}] at Y{j+1}")
    return rep


def roundtrip_psi_phi(pair, algebra, samples=32, seed=0) -> CheckReport:
    """Psi(Phi(GL)) = GL on points: every sampled point of the full linear
    supergroup is reached by a word and factors uniquely; the factorization
    is compatible with the global gl_split."""
    from .smat import gl_full, is_odd_unipotent

    rep = CheckReport()
    rng = random.Random(seed)
    full = gl_full(*pair.shape)
    for s in range(samples):
        m = full.sample(algebra, rng)
        try:
            nf = strip_matrix_factorization(pair, m)
        except (SpanViolation, NonTermination) as e:
            rep.fail(f"sample {s}: stripping failed: {e}")
            continue
        if nf.rho_matrix() != m:
            rep.fail(f"sample {s}: word does not re-evaluate to the point")
        if not pair.even_group.member(nf.g_plus):
            rep.fail(f"sample {s}: even factor is not an even-group point")
        ev, od = gl_split(m)
        if ev * od != m or not ev.diagonal_blocks_only() or not is_odd_unipotent(od):
            rep.fail(f"sample {s}: gl_split factorization broke")
    return rep


# ---------------------------------------------------------------------------
# induction of representations


class EvenModuleData:
    """A G+-module: dimension, matrices for even Lie basis elements, and a
    group action callable (matrix over A_0 -> module matrix over the same
    algebra).  d-compatibility (group action differentiates to the Lie
    action) is sampled by `check`."""

    def __init__(self, dim, lie_mats, group_action):
        self.dim = dim
        self.lie_mats = [tuple(tuple(r) for r in m) for m in lie_mats]
        self.group_action = group_action

    def check(self, pair, samples=8, seed=0, algebra=None) -> CheckReport:
        from .coeff import GrassmannAlgebra

        rep = CheckReport()
        f = pair.field
        A = algebra or GrassmannAlgebra(f, 3)
        rng = random.Random(seed)
        for a in range(pair.d_plus):
            dual, probe = dual_probe(pair.lie.rho_even[a], pair.shape, A)
            img = self.group_action(probe)
            n = self.dim
            for r in range(n):
                for c in range(n):
                    want = dual.from_scalar(Scalar.of(f, 1 if r == c else 0)) + \
                        dual.times_eps(A.from_scalar(Scalar(f, self.lie_mats[a][r][c])))
                    if img[r][c] != want:
                        rep.fail(f"module action does not differentiate on X{a+1}")
        for s in range(samples):
            g = pair.even_group.sample(A, rng)
            h = pair.even_group.sample(A, rng)
            gh = self.group_action(g * h)
            g_, h_ = self.group_action(g), self.group_action(h)
            prod = [[sum_mul(A, g_, h_, r, c, self.dim) for c in range(self.dim)]
                    for r in range(self.dim)]
            if gh != prod:
                rep.fail(f"sample {s}: module action is not multiplicative")
        return rep


def sum_mul(algebra, a, b, r, c, n):
    acc = algebra.zero()
    for t in range(n):
        acc = acc + a[r][t] * b[t][c]
    return acc


def trivial_module(pair) -> EvenModuleData:
    one = pair.field.from_int(1)

    def act(g):
        return [[g.algebra.one()]]

    return EvenModuleData(1, [[[pair.field.from_int(0)]] for _ in range(pair.d_plus)], act)


def defining_module(pair) -> EvenModuleData:
    """The restriction of the defining representation to the even group."""

    def act(g):
        return [list(row) for row in g.rows]

    return EvenModuleData(pair.shape[0] + pair.shape[1],
                          [m for m in pair.lie.rho_even], act)


class InducedModule:
    """Carrier wedge(g_1) (x) V0 with basis Ybar_S (x) e_t.

    Even tokens act by wedge-Ad (x) V0; odd generators act by straightening
    where even elements reaching the inducing line act through the V0
    matrices (x.(y (x) v) = ad(x)(y) (x) v + y (x) x.v).
    """

    def __init__(self, pair, v0: EvenModuleData):
        self.pair = pair
        self.v0 = v0
        self._odd_memo = {}
        self._even_memo = {}
        self._memo_lock = threading.Lock()

    @property
    def dim(self):
        return (1 << self.pair.d_minus) * self.v0.dim

    def _dict_add(self, acc, key, raw):
        f = self.pair.field
        prev = acc.get(key)
        raw = f.add(prev, raw) if prev is not None else raw
        if raw == f.from_int(0):
            acc.pop(key, None)
        else:
            acc[key] = raw

    def odd_act(self, j, mask, t):
        key = (j, mask, t)
        hit = self._odd_memo.get(key)
        if hit is not None:
            return hit
        f = self.pair.field
        lie = self.pair.lie
        if mask == 0:
            res = {(1 << j, t): f.from_int(1)}
        else:
            i0 = (mask & -mask).bit_length() - 1
            rest = mask & (mask - 1)
            if j < i0:
                res = {(mask | (1 << j), t): f.from_int(1)}
            elif j == i0:
                res = self.even_act_vec(lie.q2[j], rest, t)
            else:
                res = {}
                for k2, c in self.even_act_vec(lie.oo[j][i0], rest, t).items():
                    self._dict_add(res, k2, c)
                for (m1, t1), c in self.odd_act(j, rest, t).items():
                    for k2, c2 in self.odd_act(i0, m1, t1).items():
                        self._dict_add(res, k2, f.neg(f.mul(c, c2)))
        with self._memo_lock:
            self._odd_memo[key] = res
        return res

    def even_act_basis(self, a, mask, t):
        key = (a, mask, t)
        hit = self._even_memo.get(key)
        if hit is not None:
            return hit
        f = self.pair.field
        lie = self.pair.lie
        res = {}
        if mask == 0:
            for r in range(self.v0.dim):
                c = self.v0.lie_mats[a][r][t]
                if c != f.from_int(0):
                    self._dict_add(res, (0, r), c)
        else:
            i0 = (mask & -mask).bit_length() - 1
            rest = mask & (mask - 1)
            for m, wm in enumerate(lie.eo[a][i0]):
                if wm == f.from_int(0):
                    continue
                for k2, c2 in self.odd_act(m, rest, t).items():
                    self._dict_add(res, k2, f.mul(wm, c2))
            for (m1, t1), c in self.even_act_basis(a, rest, t).items():
                for k2, c2 in self.odd_act(i0, m1, t1).items():
                    self._dict_add(res, k2, f.mul(c, c2))
        with self._memo_lock:
            self._even_memo[key] = res
        return res

    def even_act_vec(self, coords, mask, t):
        f = self.pair.field
        res = {}
        for a, c in enumerate(coords):
            if c == f.from_int(0):
                continue
            for k2, c2 in self.even_act_basis(a, mask, t).items():
                self._dict_add(res, k2, f.mul(c, c2))
        return res

    # -- A-linear word action ------------------------------------------------
    def vacuum_with(self, t, algebra):
        return {(0, t): algebra.one()}

    def apply_word(self, word: GroupWord, vec):
        """vec: dict (mask, t) -> coefficient; returns the transformed dict."""
        pair = self.pair
        f = pair.field
        algebra = word.algebra
        for tok in reversed(word.tokens):
            out = {}
            if tok.kind == "even":
                ad = pair.ad_action_matrix(tok.matrix)
                v0m = self.v0.group_action(tok.matrix)
                lie = pair.lie
                for (mask, t), c in vec.items():
                    inner = ExteriorVector(lie, algebra, {mask: algebra.one()})
                    wedged = wedge_ad_action(lie, ad, inner)
                    for m2, cw in wedged.coeffs.items():
                        for r in range(self.v0.dim):
                            a0 = v0m[r][t]
                            if a0.is_zero():
                                continue
                            add = c * cw * a0
                            if add.is_zero():
                                continue
                            key = (m2, r)
                            prev = out.get(key)
                            s = add if prev is None else prev + add
                            if s.is_zero():
                                out.pop(key, None)
                            else:
                                out[key] = s
            else:
                out = dict(vec)
                for (mask, t), c in vec.items():
                    csig = c.even_part() - c.odd_part()
                    for (m2, r), raw in self.odd_act(tok.index, mask, t).items():
                        add = tok.eta * csig.scale(Scalar(f, raw))
                        if add.is_zero():
                            continue
                        key = (m2, r)
                        prev = out.get(key)
                        s = add if prev is None else prev + add
                        if s.is_zero():
                            out.pop(key, None)
                        else:
                            out[key] = s
            vec = out
        return vec

    def apply_normal_form(self, nf: NormalForm, vec):
        return self.apply_word(nf.to_word(), vec)
