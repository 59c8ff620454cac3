"""Truncated noncommutative power series and free Lie algebra bookkeeping.

NCSeries realizes Q[F_r]/I^(m+1) through the Magnus or exponential embedding
of the free group; the Hopf structure (coproduct with primitive letters,
grouplike/primitive tests, log/exp) follows the enveloping-algebra picture.
Hall bases are Lyndon words with standard bracketing, and the logarithmic and
polylogarithmic quotient dimensions come from bracket-span linear algebra.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np


class NCError(ValueError):
    pass


Word = tuple  # tuple of letters 0..r-1


class NCSeries:
    """Sparse truncated series: word -> nonzero rational; words of length <= m."""

    __slots__ = ("r", "m", "coeffs")

    def __init__(self, r: int, m: int, coeffs: Mapping[Word, object] | None = None):
        if r < 1 or m < 0:
            raise NCError("need r >= 1 letters and truncation m >= 0")
        self.r = r
        self.m = m
        clean: dict = {}
        if coeffs:
            for w, c in coeffs.items():
                w = tuple(w)
                if any(not (0 <= x < r) for x in w):
                    raise NCError("letter out of range in word %r" % (w,))
                if len(w) > m:
                    continue
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c != 0:
                    clean[w] = clean.get(w, Fraction(0)) + c
                    if clean[w] == 0:
                        del clean[w]
        self.coeffs = clean

    @classmethod
    def one(cls, r: int, m: int) -> "NCSeries":
        return cls(r, m, {(): Fraction(1)})

    @classmethod
    def letter(cls, i: int, r: int, m: int) -> "NCSeries":
        return cls(r, m, {(i,): Fraction(1)})

    def aug(self) -> Fraction:
        return self.coeffs.get((), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "NCSeries"):
        if self.r != other.r or self.m != other.m:
            raise NCError("truncation/alphabet mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCSeries(self.r, self.m, {(): other})
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, Fraction(0)) + c
            if out[w] == 0:
                del out[w]
        return NCSeries(self.r, self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return NCSeries(self.r, self.m, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCSeries(self.r, self.m, {(): other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return NCSeries(self.r, self.m, {w: v * c for w, v in self.coeffs.items()})
        self._check(other)
        out: dict = {}
        for wa, ca in self.coeffs.items():
            la = len(wa)
            for wb, cb in other.coeffs.items():
                if la + len(wb) > self.m:
                    continue
                w = wa + wb
                out[w] = out.get(w, Fraction(0)) + ca * cb
        return NCSeries(self.r, self.m, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCSeries(self.r, self.m, {(): other})
        if not isinstance(other, NCSeries):
            return NotImplemented
        return self.r == other.r and self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.r, self.m, frozenset(self.coeffs.items())))

    def degree_part(self, k: int) -> "NCSeries":
        return NCSeries(self.r, self.m, {w: c for w, c in self.coeffs.items() if len(w) == k})

    def inverse(self) -> "NCSeries":
        """Inverse of a series with invertible augmentation (geometric series)."""
        a = self.aug()
        if a == 0:
            raise NCError("augmentation zero: not invertible")
        y = NCSeries(self.r, self.m, {w: c for w, c in self.coeffs.items() if w != ()})
        inv_a = Fraction(1) / a
        out = NCSeries.one(self.r, self.m) * inv_a
        power = NCSeries.one(self.r, self.m)
        sign = Fraction(1)
        for k in range(1, self.m + 1):
            power = power * y
            sign = -sign
            out = out + power * (sign * inv_a ** (k + 1))
            if power.is_zero():
                break
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w in sorted(self.coeffs, key=lambda w: (len(w), w)):
            c = self.coeffs[w]
            name = "".join("X%d" % i for i in w) if w else "1"
            parts.append("%s*%s" % (c, name) if w else str(c))
        return " + ".join(parts)


def nc_add(x: NCSeries, y: NCSeries) -> NCSeries:
    return x + y


def nc_mul(x: NCSeries, y: NCSeries) -> NCSeries:
    return x * y


def nc_exp(x: NCSeries) -> NCSeries:
    if x.aug() != 0:
        raise NCError("exp needs augmentation 0")
    out = NCSeries.one(x.r, x.m)
    power = NCSeries.one(x.r, x.m)
    fact = 1
    for k in range(1, x.m + 1):
        power = power * x
        fact *= k
        out = out + power * Fraction(1, fact)
        if power.is_zero():
            break
    return out


def nc_log(x: NCSeries) -> NCSeries:
    if x.aug() != 1:
        raise NCError("log needs augmentation 1")
    y = x - 1
    out = NCSeries(x.r, x.m)
    power = NCSeries.one(x.r, x.m)
    for k in range(1, x.m + 1):
        power = power * y
        out = out + power * Fraction((-1) ** (k + 1), k)
        if power.is_zero():
            break
    return out


# -- free group embeddings -------------------------------------------------


def _check_group_word(word: Iterable[int], r: int) -> list:
    out = []
    for x in word:
        if x == 0 or abs(x) > r:
            raise NCError("group letters are +/-1..r, got %r" % (x,))
        out.append(int(x))
    return out


def magnus_embed(word: Iterable[int], r: int, m: int) -> NCSeries:
    """gamma_i -> 1 + X_i and gamma_i^{-1} -> sum (-X_i)^k; multiplicative."""
    out = NCSeries.one(r, m)
    for x in _check_group_word(word, r):
        i = abs(x) - 1
        if x > 0:
            f = NCSeries.one(r, m) + NCSeries.letter(i, r, m)
        else:
            f = NCSeries(r, m, {tuple([i] * k): Fraction((-1) ** k) for k in range(m + 1)})
        out = out * f
    return out


def exp_embed(word: Iterable[int], r: int, m: int) -> NCSeries:
    """gamma_i -> exp(X_i); multiplicative into grouplike elements."""
    out = NCSeries.one(r, m)
    for x in _check_group_word(word, r):
        i = abs(x) - 1
        f = nc_exp(NCSeries.letter(i, r, m) * Fraction(1 if x > 0 else -1))
        out = out * f
    return out


# -- Hopf structure ---------------------------------------------------------


def coproduct(x: NCSeries) -> dict:
    """Delta with every letter primitive; keys (u, v), total degree <= m."""
    out: dict = {}
    for w, c in x.coeffs.items():
        n = len(w)
        for mask in range(1 << n):
            left = tuple(w[i] for i in range(n) if mask >> i & 1)
            right = tuple(w[i] for i in range(n) if not mask >> i & 1)
            key = (left, right)
            out[key] = out.get(key, Fraction(0)) + c
            if out[key] == 0:
                del out[key]
    return out


def is_grouplike(x: NCSeries) -> bool:
    if x.aug() != 1:
        return False
    delta = coproduct(x)
    keys = set(delta)
    for u, cu in x.coeffs.items():
        for v, cv in x.coeffs.items():
            if len(u) + len(v) > x.m:
                continue
            keys.add((u, v))
    for u, v in keys:
        if len(u) + len(v) > x.m:
            continue
        lhs = delta.get((u, v), Fraction(0))
        rhs = x.coeffs.get(u, Fraction(0)) * x.coeffs.get(v, Fraction(0))
        if lhs != rhs:
            return False
    return True


def is_primitive(x: NCSeries) -> bool:
    if x.aug() != 0:
        return False
    delta = coproduct(x)
    expected: dict = {}
    for w, c in x.coeffs.items():
        expected[(w, ())] = expected.get((w, ()), Fraction(0)) + c
        expected[((), w)] = expected.get(((), w), Fraction(0)) + c
    for key in set(delta) | set(expected):
        if delta.get(key, Fraction(0)) != expected.get(key, Fraction(0)):
            return False
    return True


def torsor_compose(p: NCSeries, q: NCSeries) -> NCSeries:
    """Composition of path-torsor elements; both factors must be grouplike."""
    if not is_grouplike(p) or not is_grouplike(q):
        raise NCError("torsor composition needs grouplike factors")
    return p * q


# -- Lyndon/Hall bases -------------------------------------------------------


def lyndon_words(r: int, k: int) -> list:
    """All Lyndon words of length k over 0..r-1, lexicographically sorted."""
    if k < 1:
        raise NCError("degree must be >= 1")
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        ln = len(w)
        if ln == k:
            out.append(tuple(w))
        # Duval extension
        while len(w) < k:
            w.append(w[len(w) - ln])
        while w and w[-1] == r - 1:
            w.pop()
    return sorted(out)


def lyndon_bracketing(w: Word):
    """Standard bracketing: split at the longest proper Lyndon suffix."""
    if len(w) == 1:
        return w[0]
    for i in range(1, len(w)):
        v = w[i:]
        if _is_lyndon(v):
            return (lyndon_bracketing(w[:i]), lyndon_bracketing(v))
    raise NCError("%r is not a Lyndon word" % (w,))


def _is_lyndon(w: Word) -> bool:
    return all(w < w[i:] for i in range(1, len(w)))


def bracket_expansion(b) -> dict:
    """Expand a nested bracket into the free associative algebra (word -> int)."""
    if isinstance(b, int):
        return {(b,): 1}
    p = bracket_expansion(b[0])
    q = bracket_expansion(b[1])
    out: dict = {}
    for wp, cp in p.items():
        for wq, cq in q.items():
            out[wp + wq] = out.get(wp + wq, 0) + cp * cq
            out[wq + wp] = out.get(wq + wp, 0) - cp * cq
    return {w: c for w, c in out.items() if c}


def bracket(x: Mapping[Word, int], y: Mapping[Word, int]) -> dict:
    out: dict = {}
    for wp, cp in x.items():
        for wq, cq in y.items():
            out[wp + wq] = out.get(wp + wq, 0) + cp * cq
            out[wq + wp] = out.get(wq + wp, 0) - cp * cq
    return {w: c for w, c in out.items() if c}


def hall_basis(r: int, k: int) -> list:
    """Hall basis of degree k: (lyndon word, bracketing) pairs."""
    return [(w, lyndon_bracketing(w)) for w in lyndon_words(r, k)]


def _mobius(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def witt_dim(r: int, k: int) -> int:
    """(1/k) sum_{d | k} mu(d) r^(k/d)."""
    if k < 1:
        raise NCError("degree must be >= 1")
    total = sum(_mobius(d) * r ** (k // d) for d in range(1, k + 1) if k % d == 0)
    assert total % k == 0
    return total // k


def lcs_quotient_dims(r: int, k: int) -> int:
    """Graded dimension of the lower central series quotient of the free group."""
    return witt_dim(r, k)


def ideal_graded_dims(r: int, m: int) -> int:
    """dim I^m / I^(m+1) for the free group of rank r."""
    if m < 0:
        raise NCError("degree must be >= 0")
    return r ** m


# -- exact / modular rank ----------------------------------------------------


def rational_rank(rows: Sequence[Mapping]) -> int:
    """Exact rank of sparse rational row vectors (keys are arbitrary hashables)."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            lead = min(row)   # deterministic pivot choice
            if lead in pivots:
                factor = row[lead]
                prow = pivots[lead]
                for k, v in prow.items():
                    row[k] = row.get(k, Fraction(0)) - factor * v
                    if row[k] == 0:
                        del row[k]
            else:
                inv = Fraction(1) / row[lead]
                pivots[lead] = {k: v * inv for k, v in row.items()}
                rank += 1
                break
    return rank


_PRIMES = (2_147_483_647, 2_147_483_629)


def _rank_mod(mat: np.ndarray, p: int) -> int:
    a = mat % p
    rows, cols = a.shape
    rank = 0
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        piv = None
        for i in range(row, rows):
            if a[i, col]:
                piv = i
                break
        if piv is None:
            continue
        a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), p - 2, p)
        a[row] = a[row] * inv % p
        mask = a[row + 1:, col] != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + row + 1
            a[idx] = (a[idx] - a[idx, col][:, None] * a[row][None, :]) % p
        row += 1
        rank += 1
    return rank


def integer_rank(rows: Sequence[Mapping[Word, int]], word_len: int, r: int) -> int:
    """Rank over Q of integer word-vectors, via two-prime modular elimination."""
    if not rows:
        return 0
    ncols = r ** word_len
    mat = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for w, c in row.items():
            idx = 0
            for x in w:
                idx = idx * r + x
            mat[i, idx] = c
    ranks = {_rank_mod(mat.copy(), p) for p in _PRIMES}
    if len(ranks) != 1:
        # a prime divided a minor; fall back to exact arithmetic
        return rational_rank([{w: Fraction(c) for w, c in row.items()} for row in rows])
    return ranks.pop()


# -- polylogarithmic quotients -----------------------------------------------


def _derived_of_square_rank(r: int, k: int) -> int:
    """dim of the degree-k part of [L^2, L^2] inside the free Lie algebra."""
    if k < 4:
        return 0
    basis = {
        a: [bracket_expansion(lyndon_bracketing(w)) for w in lyndon_words(r, a)]
        for a in range(2, k - 1)
    }
    rows = []
    for a in range(2, k - 1):
        b = k - a
        if b < 2 or b < a:
            continue
        if a < b:
            pairs = itertools.product(basis[a], basis[b])
        else:
            pairs = itertools.combinations(basis[a], 2)
        for x, y in pairs:
            br = bracket(x, y)
            if br:
                rows.append(br)
    return integer_rank(rows, k, r)


def polylog_dims(g: int | None = None, n: int | None = None, k: int = 1,
                 r: int | None = None) -> tuple:
    """(dim Log_k, dim Pol_k) for Log = L^2/[L^2,L^2] and Pol = L/[L^2,L^2]."""
    if r is None:
        if g is None or n is None:
            raise NCError("give either r or the pair (g, n)")
        if n < 1:
            raise NCError("need n >= 1 marked points")
        r = 2 * g + n - 1
    if k < 1:
        raise NCError("degree must be >= 1")
    cut = _derived_of_square_rank(r, k)
    wd = witt_dim(r, k)
    log_k = (wd if k >= 2 else 0) - cut
    pol_k = wd - cut
    return (log_k, pol_k)


# -- weight grading ----------------------------------------------------------


def weighted_alphabet(g: int, n: int) -> list:
    """Letter weights: 2g genus-type letters of weight -1, n-1 of weight -2."""
    if g < 0 or n < 1:
        raise NCError("need g >= 0 and n >= 1")
    return [-1] * (2 * g) + [-2] * (n - 1)


def weight_graded_dims(g: int, n: int, m: int) -> dict:
    """Counts of degree-m words by total letter weight; total is r^m."""
    weights = weighted_alphabet(g, n)
    r = len(weights)
    if r == 0:
        raise NCError("empty alphabet: 2g+n-1 = 0")
    out: dict = {}
    # multinomial count over how many of each letter kind
    n1 = 2 * g
    for k1 in range(m + 1):
        k2 = m - k1
        cnt = _binomial(m, k1) * n1 ** k1 * (r - n1) ** k2
        if cnt:
            w = -k1 - 2 * k2
            out[w] = out.get(w, 0) + cnt
    assert sum(out.values()) == r ** m
    return out


def _binomial(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out
