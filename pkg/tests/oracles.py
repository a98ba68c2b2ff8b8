"""Independent brute-force oracles used to freeze expected values.

These deliberately share no code with the production kernels: the
straightening oracle rewrites words in the free algebra symbol by symbol,
the sign oracle counts transpositions on explicit index lists, and the
subalgebra oracle enumerates spanning monomials.
"""

from __future__ import annotations

import itertools


# -- exterior product sign, by explicit sorted-merge ---------------------------


def merge_sign_oracle(idx_a, idx_b):
    """Sign of x_{a1}..x_{am} . x_{b1}..x_{bn} -> sorted, or 0 if they clash."""
    if set(idx_a) & set(idx_b):
        return 0
    seq = list(idx_a) + list(idx_b)
    sign = 1
    # bubble sort counting swaps
    for i in range(len(seq)):
        for j in range(len(seq) - 1):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign


# -- membership in A_1^(n) by enumerating spanning monomials --------------------


def a1n_masks_oracle(rank, n):
    """All monomial bitmask members of A_1^(n) in Lambda_rank, enumerated:
    span products of n odd monomials, scale by even monomials, close under
    products."""
    odd_masks = [m for m in range(1, 1 << rank) if bin(m).count("1") % 2 == 1]
    even_masks = [m for m in range(1 << rank) if bin(m).count("1") % 2 == 0]

    def prod(ms):
        out = 0
        for m in ms:
            if out & m:
                return None
            out |= m
        return out

    base = set()
    for combo in itertools.product(odd_masks, repeat=n):
        p = prod(combo)
        if p is not None:
            base.add(p)
    # A_0-span
    spanned = set()
    for e in even_masks:
        for b in base:
            if not (e & b):
                spanned.add(e | b)
    # close under products, add the unit
    members = {0} | spanned
    changed = True
    while changed:
        changed = False
        for a in list(members):
            for b in list(members):
                if not (a & b) and (a | b) not in members:
                    members.add(a | b)
                    changed = True
    return members


# -- brute-force straightening in U(g) -----------------------------------------
#
# Words are tuples of symbols ('o', i) / ('e', a) acting on the vacuum.
# Rewrite rules are applied to explicit linear combinations until every
# word is an ascending odd monomial.


def straighten_oracle(lie, word):
    """Straighten a word of basis symbols applied to the vacuum.

    Returns {mask: coefficient} over the PBW basis of the exterior module.
    Rules: kill trailing evens; push evens right by [X,Y] commutation;
    swap descending odd pairs via the odd-odd bracket; collapse repeats
    via the 2-operation.
    """
    f = lie.field

    def _wadd(acc, word_, coeff):
        prev = acc.get(word_, f.from_int(0))
        v = f.add(prev, coeff)
        if v == f.from_int(0):
            acc.pop(word_, None)
        else:
            acc[word_] = v

    state = {tuple(word): f.from_int(1)}
    done = {}
    budget = 200_000
    while state:
        budget -= 1
        if budget < 0:
            raise RuntimeError("oracle rewrite budget exhausted")
        w, c = next(iter(state.items()))
        del state[w]
        # find rightmost even symbol
        epos = max((t for t, s in enumerate(w) if s[0] == "e"), default=None)
        if epos is not None:
            a = w[epos][1]
            if epos == len(w) - 1:
                continue  # X . vacuum = 0
            nxt = w[epos + 1]
            rest = w[:epos], w[epos + 2:]
            if nxt[0] == "o":
                i = nxt[1]
                # X_a Y_i = Y_i X_a + [X_a, Y_i]
                _wadd(state, rest[0] + (("o", i), ("e", a)) + rest[1], c)
                for m, cm in enumerate(lie.eo[a][i]):
                    if cm != f.from_int(0):
                        _wadd(state, rest[0] + (("o", m),) + rest[1], f.mul(c, cm))
            else:
                b = nxt[1]
                # X_a X_b = X_b X_a + [X_a, X_b]
                _wadd(state, rest[0] + (("e", b), ("e", a)) + rest[1], c)
                for m, cm in enumerate(lie.ee[a][b]):
                    if cm != f.from_int(0):
                        _wadd(state, rest[0] + (("e", m),) + rest[1], f.mul(c, cm))
            continue
        # pure odd word: find first descent or repeat
        pos = next((t for t in range(len(w) - 1) if w[t][1] >= w[t + 1][1]), None)
        if pos is None:
            mask = 0
            for s in w:
                mask |= 1 << s[1]
            _wadd(done, mask, c)
            continue
        i, j = w[pos][1], w[pos + 1][1]
        pre, post = w[:pos], w[pos + 2:]
        if i == j:
            # Y_i Y_i = Y_i^<2>
            for m, cm in enumerate(lie.q2[i]):
                if cm != f.from_int(0):
                    _wadd(state, pre + (("e", m),) + post, f.mul(c, cm))
        else:
            # Y_i Y_j = -Y_j Y_i + [Y_i, Y_j]
            _wadd(state, pre + (("o", j), ("o", i)) + post, f.neg(c))
            for m, cm in enumerate(lie.oo[i][j]):
                if cm != f.from_int(0):
                    _wadd(state, pre + (("e", m),) + post, f.mul(c, cm))
    return done


def odd_monomial_action_oracle(lie, gen_index, mask):
    """Y_gen acting on the PBW basis vector Ybar_mask, via the word oracle."""
    word = [("o", gen_index)]
    for i in range(lie.d_minus):
        if mask >> i & 1:
            word.append(("o", i))
    return straighten_oracle(lie, word)


def even_monomial_action_oracle(lie, basis_index, mask):
    word = [("e", basis_index)]
    for i in range(lie.d_minus):
        if mask >> i & 1:
            word.append(("o", i))
    return straighten_oracle(lie, word)
