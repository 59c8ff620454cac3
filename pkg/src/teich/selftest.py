"""Acceptance suite: twelve numbered criteria, each an independent callable.

Each criterion returns a CriterionResult; run_all prints one line per
criterion.  Oracles here are deliberately written from scratch (direct
summation, brute-force pairings, left-normed bracket spans) rather than
reusing the library routines they are checking.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import freenc, graphs, kz, qseries, schottky


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _result(number, name, passed, detail, t0):
    return CriterionResult(number, name, bool(passed), detail, time.time() - t0)


# -- shared corpus -----------------------------------------------------------


def _rose(g: int) -> graphs.StableGraph:
    edges = {"e%d" % i: ("v", "v") for i in range(g)}
    return graphs.StableGraph(vertices=frozenset({"v"}), edges=edges, tails={})


def _theta() -> graphs.StableGraph:
    return graphs.StableGraph(
        vertices=frozenset({"u", "w"}),
        edges={"e1": ("u", "w"), "e2": ("u", "w"), "e3": ("u", "w")},
        tails={},
    )


def _random_alphas(graph: graphs.StableGraph, rng: random.Random) -> dict:
    """Distinct rational alpha values per oriented edge, all finite."""
    out = {}
    used = set()
    for e in sorted(graph.edges):
        for s in (+1, -1):
            while True:
                a = Fraction(rng.randint(-40, 40), rng.randint(1, 8))
                if a not in used:
                    break
            used.add(a)
            out[(e, s)] = a
    return out


def _random_cyclically_reduced_word(graph: graphs.StableGraph, length: int,
                                    rng: random.Random) -> list:
    """Reduced loop at the single vertex of a rose, first letter != -last."""
    letters = [(e, s) for e in sorted(graph.edges) for s in (+1, -1)]
    while True:
        word = []
        for _ in range(length):
            choices = [h for h in letters if not word or h != (word[-1][0], -word[-1][1])]
            word.append(rng.choice(choices))
        if length == 1 or word[0] != (word[-1][0], -word[-1][1]):
            return word


# -- criterion 1 --------------------------------------------------------------


def criterion_1(quick: bool = False) -> CriterionResult:
    """Determinant of every generator representative equals its own q, exactly."""
    t0 = time.time()
    rng = random.Random(101)
    trials = 10 if quick else 50
    checked = 0
    for _ in range(trials):
        graph = rng.choice([_rose(2), _rose(3), _theta()])
        ctx = schottky.SchottkyContext(graph=graph, alpha=_random_alphas(graph, rng), N=6)
        for e in sorted(graph.edges):
            for s in (+1, -1):
                M = schottky.phi(ctx, (e, s))
                q = qseries.BElement(qseries.QSeries.gen(e, ctx.variables, 6))
                if not (M.det() - q).is_zero():
                    return _result(1, "schottky-determinant", False,
                                   "det(phi_%s%+d) != q" % (e, s), t0)
                checked += 1
    return _result(1, "schottky-determinant", True,
                   "%d generator determinants exact at N=6" % checked, t0)


# -- criterion 2 --------------------------------------------------------------


def criterion_2(quick: bool = False) -> CriterionResult:
    """Cross-ratio fixed-point relation holds exactly for random reduced words."""
    t0 = time.time()
    rng = random.Random(202)
    trials = 6 if quick else 20
    for i in range(trials):
        g = rng.choice([2, 3])
        graph = _rose(g)
        ctx = schottky.SchottkyContext(graph=graph, alpha=_random_alphas(graph, rng), N=6)
        word = _random_cyclically_reduced_word(graph, rng.randint(1, 4), rng)
        M = schottky.word_to_element(ctx, word)
        fp = schottky.fixed_point_data(ctx, M)
        if fp.multiplier.constant_term() != 0:
            return _result(2, "cross-ratio", False,
                           "multiplier constant term nonzero for word %r" % (word,), t0)
        if not schottky.verify_cross_ratio(M, fp):
            return _result(2, "cross-ratio", False,
                           "nonzero residual for word %r" % (word,), t0)
    return _result(2, "cross-ratio", True,
                   "%d words: residual exactly 0, multiplier in (q)" % trials, t0)


# -- criterion 3 --------------------------------------------------------------


def criterion_3(quick: bool = False) -> CriterionResult:
    """One-loop graph with alpha = (0, infinity) gives phi = [[q,0],[0,1]]."""
    t0 = time.time()
    graph = _rose(1)
    ctx = schottky.SchottkyContext(graph=graph, alpha={("e0", 1): Fraction(0)}, N=6)
    M = schottky.phi(ctx, ("e0", 1))
    q = qseries.QSeries.gen("e0", ("e0",), 6)
    want = [[qseries.BElement(q), qseries.BElement.constant(0, ("e0",), 6)],
            [qseries.BElement.constant(0, ("e0",), 6), qseries.BElement.constant(1, ("e0",), 6)]]
    ok = all((M.entries[i][j] - want[i][j]).is_zero() for i in range(2) for j in range(2))
    return _result(3, "tate-specialization", ok,
                   "phi == [[q,0],[0,1]]" if ok else "unexpected matrix %r" % (M,), t0)


# -- criterion 4 --------------------------------------------------------------


def criterion_4(quick: bool = False) -> CriterionResult:
    """(rho sigma)* = sigma* rho* and phi_{-h} phi_h scalar, exactly."""
    t0 = time.time()
    rng = random.Random(404)
    trials = 25 if quick else 100
    graph = _rose(3)
    ctx = schottky.SchottkyContext(graph=graph, alpha=_random_alphas(graph, rng), N=4)
    letters = [(e, s) for e in sorted(graph.edges) for s in (+1, -1)]
    for _ in range(trials):
        rho = _random_cyclically_reduced_word(graph, rng.randint(1, 3), rng)
        # extend rho by a composable sigma keeping the concatenation reduced
        sigma = []
        prev = rho[-1]
        for _ in range(rng.randint(1, 3)):
            h = rng.choice([x for x in letters if x != (prev[0], -prev[1])])
            sigma.append(h)
            prev = h
        lhs = schottky.word_to_element(ctx, rho + sigma)
        rhs = schottky.word_to_element(ctx, sigma) @ schottky.word_to_element(ctx, rho)
        if not all((a - b).is_zero() for ra, rb in zip(lhs.entries, rhs.entries)
                   for a, b in zip(ra, rb)):
            return _result(4, "anti-homomorphism", False, "product rule failed", t0)
        h = rng.choice(letters)
        P = schottky.phi(ctx, (h[0], -h[1])) @ schottky.phi(ctx, h)
        if not P.is_scalar():
            return _result(4, "anti-homomorphism", False,
                           "phi_{-h} phi_h not scalar for %r" % (h,), t0)
    return _result(4, "anti-homomorphism", True,
                   "%d composable pairs exact; inverses scalar" % trials, t0)


# -- criterion 5 --------------------------------------------------------------


def _oracle_trivalent_count(g: int, n: int) -> int:
    """Brute-force count of trivalent type-(g,n) graphs via half-edge pairings.

    Independent of graphs.enumerate_trivalent: builds every perfect matching
    on 3*nv slots (minus n tail slots), every tail placement, and counts
    isomorphism classes by explicit permutation search.
    """
    nv = 2 * g - 2 + n
    slots = [(v, i) for v in range(nv) for i in range(3)]
    reps: list = []

    def iso(c1, c2):
        edges1, tails1 = c1
        edges2, tails2 = c2
        if sorted(tails1.values()) != sorted(tails2.values()):
            pass
        for perm in itertools.permutations(range(nv)):
            if sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges1) == \
               sorted(tuple(sorted((a, b))) for a, b in edges2) and \
               all(tails2.get(k) == perm[v] for k, v in tails1.items()):
                return True
        return False

    def matchings(items):
        if not items:
            yield []
            return
        first = items[0]
        for j in range(1, len(items)):
            rest = items[1:j] + items[j + 1:]
            for m in matchings(rest):
                yield [(first, items[j])] + m

    for tail_slots in itertools.combinations(range(len(slots)), n):
        for perm_tails in itertools.permutations(range(n)):
            tails = {perm_tails[i] + 1: slots[s][0] for i, s in enumerate(tail_slots)}
            remaining = [slots[i] for i in range(len(slots)) if i not in tail_slots]
            for m in matchings(remaining):
                edges = [(a[0], b[0]) for a, b in m]
                # connectivity and first Betti number
                adj: dict = {v: set() for v in range(nv)}
                for a, b in edges:
                    adj[a].add(b)
                    adj[b].add(a)
                seen = {0}
                stack = [0]
                while stack:
                    v = stack.pop()
                    for w in adj[v]:
                        if w not in seen:
                            seen.add(w)
                            stack.append(w)
                if len(seen) != nv:
                    continue
                if len(edges) - nv + 1 != g:
                    continue
                cand = (edges, tails)
                if not any(iso(cand, rep) for rep in reps):
                    reps.append(cand)
    return len(reps)


def criterion_5(quick: bool = False) -> CriterionResult:
    """Vertex/edge/coordinate counts and enumeration versus a pairing oracle."""
    t0 = time.time()
    cap = 4 if quick else 6
    checked = 0
    for g in range(0, cap // 2 + 2):
        for n in range(0, cap + 3):
            k = 2 * g - 2 + n
            if k < 1 or k > cap or (g == 0 and n < 3):
                continue
            for item in graphs.enumerate_trivalent(g, n):
                gr = item.graph
                if len(gr.vertices) != k or len(gr.edges) != 3 * g - 3 + n:
                    return _result(5, "coordinate-counts", False,
                                   "bad counts at type (%d,%d)" % (g, n), t0)
                rig = graphs.find_rigidification(gr)
                e_tau, qs = graphs.coordinate_system(gr, rig)
                if len(e_tau) + len(qs) != 3 * g - 3 + n:
                    return _result(5, "coordinate-counts", False,
                                   "coordinate identity failed at (%d,%d)" % (g, n), t0)
                checked += 1
    # a non-trivalent graph exercises a nonempty E_tau
    rose2 = _rose(2)
    rig = graphs.find_rigidification(rose2)
    e_tau, qs = graphs.coordinate_system(rose2, rig)
    if len(e_tau) + len(qs) != 3 * rose2.genus() - 3:
        return _result(5, "coordinate-counts", False, "rose-2 coordinate identity failed", t0)
    for (g, n), want in (((0, 3), 1), ((0, 4), 3), ((1, 1), 1)):
        got = len(graphs.enumerate_trivalent(g, n))
        oracle = _oracle_trivalent_count(g, n)
        if got != want or oracle != want:
            return _result(5, "coordinate-counts", False,
                           "type (%d,%d): got %d, oracle %d, want %d" % (g, n, got, oracle, want), t0)
    return _result(5, "coordinate-counts", True,
                   "%d graphs (2g-2+n <= %d) + pairing-oracle counts" % (checked, cap), t0)


# -- criterion 6 --------------------------------------------------------------


def _zeta_direct(s: int, terms: int = 40) -> float:
    """Direct summation with an Euler-Maclaurin tail of order 4."""
    head = sum(n ** (-float(s)) for n in range(1, terms))
    N = float(terms)
    tail = N ** (1 - s) / (s - 1) + 0.5 * N ** (-s) + s / 12.0 * N ** (-s - 1) \
        - s * (s + 1) * (s + 2) / 720.0 * N ** (-s - 3)
    return head + tail


def _mzv21_direct(terms: int = 2000) -> float:
    """zeta(2,1) = sum_{m>n} 1/(m^2 n) via harmonic partial sums plus an
    Euler-Maclaurin tail: H_{m-1} = log m + gamma - 1/(2m) - 1/(12m^2) + ...
    """
    gamma = 0.57721566490153286061
    h = 0.0
    total = 0.0
    for m in range(2, terms + 1):
        h += 1.0 / (m - 1)
        total += h / m ** 2
    a = float(terms + 1)
    lg = math.log(a)
    # sum_{m >= a} (log m + gamma)/m^2
    g_a = (lg + gamma) / a ** 2
    gp_a = (1.0 - 2.0 * (lg + gamma)) / a ** 3
    total += (lg + 1.0 + gamma) / a + g_a / 2 - gp_a / 12
    # - (1/2) sum_{m >= a} m^-3  and  - (1/12) sum_{m >= a} m^-4
    total -= 0.5 * (1 / (2 * a ** 2) + 1 / (2 * a ** 3) + 1 / (4 * a ** 4))
    total -= (1.0 / 12) * (1 / (3 * a ** 3))
    return total


def _random_nilpotent(size: int, rng: random.Random) -> np.ndarray:
    a = np.zeros((size, size))
    for i in range(size):
        for j in range(i + 1, size):
            a[i, j] = rng.randint(-2, 2)
    return a


def criterion_6(quick: bool = False) -> CriterionResult:
    """Phi entry vs pi^2/6, mzv against direct sums, ODE vs series route."""
    t0 = time.time()
    A = np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]], float)
    B = np.array([[0, 0, 0], [0, 0, 1], [0, 0, 0]], float)
    cm = kz.ode_connection_matrix(kz.NilpotentPair(A, B))
    if abs(abs(cm.matrix[0, 2]) - math.pi ** 2 / 6) > 1e-6:
        return _result(6, "kz-engine", False, "Phi_13 missed pi^2/6", t0)
    if abs(kz.mzv(3) - _zeta_direct(3)) > 1e-9:
        return _result(6, "kz-engine", False, "mzv(3) vs direct sum", t0)
    if abs(kz.mzv(2, 1) - kz.mzv(3)) > 1e-9:
        return _result(6, "kz-engine", False, "mzv(2,1) != mzv(3)", t0)
    if abs(kz.mzv(2, 1) - _mzv21_direct()) > 1e-6:
        return _result(6, "kz-engine", False, "mzv(2,1) vs direct double sum", t0)
    rng = random.Random(606)
    U = kz.universal_associator(6)
    trials = 5 if quick else 20
    worst = 0.0
    for _ in range(trials):
        size = rng.choice([3, 4])
        pair = kz.NilpotentPair(_random_nilpotent(size, rng), _random_nilpotent(size, rng))
        m1 = kz.ode_connection_matrix(pair).matrix
        m2 = kz.specialize_associator(U, pair).matrix
        worst = max(worst, float(np.abs(m1 - m2).max()))
    if worst > 1e-5:
        return _result(6, "kz-engine", False,
                       "ODE vs series route deviation %.2e" % worst, t0)
    return _result(6, "kz-engine", True,
                   "Phi_13, mzv oracles, dual routes (worst %.1e over %d pairs)" % (worst, trials), t0)


# -- criterion 7 --------------------------------------------------------------


def criterion_7(quick: bool = False) -> CriterionResult:
    """Shuffle relations, inversion relation, vanishing single letters at W=6."""
    t0 = time.time()
    U = kz.universal_associator(6)
    if abs(U.coeff("a")) > 1e-8 or abs(U.coeff("b")) > 1e-8:
        return _result(7, "associator-relations", False, "single-letter coefficient too large", t0)
    words = kz._words_upto(6)
    worst_sh = 0.0
    for u in words:
        if not u:
            continue
        for v in words:
            if not v or len(u) + len(v) > 6 or u > v:
                continue
            lhs = U.coeff(u) * U.coeff(v)
            rhs = sum(U.coeff(w) for w in kz.shuffle_words(u, v))
            worst_sh = max(worst_sh, abs(lhs - rhs))
    if worst_sh > 1e-5:
        return _result(7, "associator-relations", False,
                       "shuffle deviation %.2e" % worst_sh, t0)
    inv = kz.associator_inverse_coeffs(U)
    swapped = {w.translate(str.maketrans("ab", "ba")): c for w, c in U.coeffs.items()}
    keys = set(inv) | set(swapped)
    worst_inv = max(abs(inv.get(w, 0.0) - swapped.get(w, 0.0)) for w in keys)
    if worst_inv > 1e-5:
        return _result(7, "associator-relations", False,
                       "inversion deviation %.2e" % worst_inv, t0)
    return _result(7, "associator-relations", True,
                   "shuffle %.1e, inversion %.1e at weight 6" % (worst_sh, worst_inv), t0)


# -- criterion 8 --------------------------------------------------------------


def criterion_8(quick: bool = False) -> CriterionResult:
    """Half-Dehn exponential is exact in the symbol pi*i; its square is the full twist."""
    t0 = time.time()
    N = [[0, 1], [0, 0]]
    hd = kz.half_dehn_monodromy(N)
    eye = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    want = {0: eye, 1: ((Fraction(0), Fraction(1)), (Fraction(0), Fraction(0)))}
    if dict(hd.pi_coeffs) != want:
        return _result(8, "half-dehn", False, "exp(pi i N) != I + pi i N", t0)
    # symbolic square vs exp(2 pi i Res) on a 3x3 residue of index 3
    R = [[0, 1, 1], [0, 0, 2], [0, 0, 0]]
    hd3 = kz.half_dehn_monodromy(R)
    c = dict(hd3.pi_coeffs)
    deg = max(c)
    square: dict = {}
    size = 3
    for k1, m1 in c.items():
        for k2, m2 in c.items():
            k = k1 + k2
            prod = tuple(tuple(sum(m1[i][t] * m2[t][j] for t in range(size))
                               for j in range(size)) for i in range(size))
            if k in square:
                square[k] = tuple(tuple(square[k][i][j] + prod[i][j] for j in range(size))
                                  for i in range(size))
            else:
                square[k] = prod
    square = {k: m for k, m in square.items()
              if any(x != 0 for row in m for x in row)}
    # exp(2 pi i R): coefficient of (pi i)^k is 2^k R^k / k!
    power = [[Fraction(1) if i == j else Fraction(0) for j in range(size)] for i in range(size)]
    fact = 1
    expect = {0: tuple(tuple(row) for row in power)}
    for k in range(1, 2 * deg + 1):
        power = [[sum(power[i][t] * Fraction(R[t][j]) for t in range(size))
                  for j in range(size)] for i in range(size)]
        fact *= k
        mat = tuple(tuple(2 ** k * x / fact for x in row) for row in power)
        if any(x != 0 for row in mat for x in row):
            expect[k] = mat
    ok = square == expect
    return _result(8, "half-dehn", ok,
                   "symbolic square equals full twist" if ok else "square mismatch", t0)


# -- criterion 9 --------------------------------------------------------------


def _left_normed_basis(r: int, k: int) -> list:
    """A basis of the degree-k free Lie component from left-normed brackets.

    Left-normed brackets [x_{i1},[... ,x_{ik}]] span L_k; reduce the spanning
    set to a basis by exact Gaussian elimination.  Independent of the Lyndon
    machinery.
    """
    if k == 1:
        return [{(i,): 1} for i in range(r)]
    span = []
    for word in itertools.product(range(r), repeat=k):
        expn = {(word[-1],): 1}
        for x in reversed(word[:-1]):
            new: dict = {}
            for w, c in expn.items():
                a = (x,) + w
                b = w + (x,)
                new[a] = new.get(a, 0) + c
                new[b] = new.get(b, 0) - c
            expn = {w: c for w, c in new.items() if c}
        if expn:
            span.append(expn)
    basis = []
    pivots: dict = {}
    for row in span:
        work = {w: Fraction(c) for w, c in row.items()}
        while work:
            lead = min(work)
            if lead in pivots:
                f = work[lead]
                for w, v in pivots[lead].items():
                    work[w] = work.get(w, Fraction(0)) - f * v
                    if work[w] == 0:
                        del work[w]
            else:
                inv = Fraction(1) / work[lead]
                pivots[lead] = {w: v * inv for w, v in work.items()}
                basis.append(row)
                break
    return basis


def _oracle_polylog(r: int, k: int) -> tuple:
    """Brute-force (Log_k, Pol_k) from left-normed bases and bracket spans."""
    wd = len(_left_normed_basis(r, k))
    cut = 0
    if k >= 4:
        rows = []
        for a in range(2, k - 1):
            b = k - a
            if b < a:
                continue
            ba = _left_normed_basis(r, a)
            bb = _left_normed_basis(r, b)
            pairs = itertools.combinations(ba, 2) if a == b else itertools.product(ba, bb)
            for x, y in pairs:
                br = freenc.bracket(x, y)
                if br:
                    rows.append(br)
        cut = freenc.integer_rank(rows, k, r)
    return ((wd if k >= 2 else 0) - cut, wd - cut)


def criterion_9(quick: bool = False) -> CriterionResult:
    """Witt/Hall/ideal dims, the Witt product identity, and Log/Pol oracles."""
    t0 = time.time()
    rmax = 3 if quick else 4
    for r in range(1, rmax + 1):
        for m in range(0, 7):
            if freenc.ideal_graded_dims(r, m) != r ** m:
                return _result(9, "free-algebra", False, "ideal dims", t0)
        for k in range(1, 9):
            if freenc.witt_dim(r, k) != len(freenc.lyndon_words(r, k)):
                return _result(9, "free-algebra", False,
                               "witt(%d,%d) vs Hall count" % (r, k), t0)
        # prod_k (1 - t^k)^{-witt(r,k)} = 1/(1-rt) as formal series to degree 8
        D = 8
        series = [Fraction(1)] + [Fraction(0)] * D
        for k in range(1, D + 1):
            wk = freenc.witt_dim(r, k)
            # multiply by (1-t^k)^{-wk} = sum_j C(wk+j-1, j) t^{kj}
            new = [Fraction(0)] * (D + 1)
            j = 0
            while k * j <= D:
                c = Fraction(freenc._binomial(wk + j - 1, j))
                for d in range(0, D + 1 - k * j):
                    new[d + k * j] += series[d] * c
                j += 1
            series = new
        if series != [Fraction(r) ** d for d in range(D + 1)]:
            return _result(9, "free-algebra", False,
                           "Witt generating-function identity failed at r=%d" % r, t0)
        kmax = 5 if quick else 6
        for k in range(1, kmax + 1):
            got = freenc.polylog_dims(r=r, k=k)
            oracle = _oracle_polylog(r, k)
            if got != oracle:
                return _result(9, "free-algebra", False,
                               "polylog (r=%d,k=%d): %r vs oracle %r" % (r, k, got, oracle), t0)
            if got[1] - got[0] != (r if k == 1 else 0):
                return _result(9, "free-algebra", False,
                               "exact-sequence identity at (r=%d,k=%d)" % (r, k), t0)
    return _result(9, "free-algebra", True,
                   "r <= %d: witt/Hall, r^m, Witt identity, Log/Pol oracle" % rmax, t0)


# -- criterion 10 -------------------------------------------------------------


def criterion_10(quick: bool = False) -> CriterionResult:
    """exp_embed images grouplike and their logs primitive, exactly, at m=5."""
    t0 = time.time()
    rng = random.Random(1010)
    trials = 15 if quick else 50
    for _ in range(trials):
        r = rng.choice([2, 3])
        word = [rng.choice([x for x in range(-r, r + 1) if x != 0])
                for _ in range(rng.randint(1, 6))]
        g = freenc.exp_embed(word, r, 5)
        if not freenc.is_grouplike(g):
            return _result(10, "hopf-checks", False, "exp_embed(%r) not grouplike" % (word,), t0)
        if not freenc.is_primitive(freenc.nc_log(g)):
            return _result(10, "hopf-checks", False, "log not primitive for %r" % (word,), t0)
    return _result(10, "hopf-checks", True, "%d random words exact at m=5" % trials, t0)


# -- criterion 11 -------------------------------------------------------------


def criterion_11(quick: bool = False) -> CriterionResult:
    """log 2 transport, homotopy invariance, and a non-homotopic negative control."""
    t0 = time.time()
    fp = kz.FormPath(segments=(kz.LineSegment(0.5, 1.0 + 0j),),
                     forms=(kz.FORM_DT_OVER_T,), margin=0.05)
    T = kz.nilpotent_transport(fp)
    if abs(T[0, 1] - math.log(2)) > 1e-8:
        return _result(11, "iterated-integrals", False, "log 2 transport missed", t0)
    rng = random.Random(1111)
    pairs = 4 if quick else 10
    forms = (kz.OneForm(((0.0, 1.0),)), kz.OneForm(((1.0, 1.0), (-1.0, -0.5))))
    worst = 0.0
    for _ in range(pairs):
        x0 = rng.uniform(1.5, 2.5)
        x1 = rng.uniform(1.5, 2.5)
        h = rng.uniform(1.0, 2.0)
        start, end = complex(x0, 0.3), complex(-x1, 0.3)
        direct = kz.FormPath((kz.LineSegment(start, end),), forms, margin=0.2)
        detour = kz.FormPath((kz.LineSegment(start, complex(x0, h)),
                              kz.LineSegment(complex(x0, h), complex(-x1, h)),
                              kz.LineSegment(complex(-x1, h), end)), forms, margin=0.2)
        worst = max(worst, kz.homotopy_invariance_check(direct, detour))
    if worst > 1e-6:
        return _result(11, "iterated-integrals", False,
                       "homotopic deviation %.2e" % worst, t0)
    # negative control: pass below the pole at 0 instead of above
    start, end = complex(2.0, 0.3), complex(-2.0, 0.3)
    above = kz.FormPath((kz.LineSegment(start, end),), forms, margin=0.2)
    below = kz.FormPath((kz.LineSegment(start, complex(2.0, -1.5)),
                         kz.LineSegment(complex(2.0, -1.5), complex(-2.0, -1.5)),
                         kz.LineSegment(complex(-2.0, -1.5), end)), forms, margin=0.2)
    dev = kz.homotopy_invariance_check(above, below)
    if dev <= 0.1:
        return _result(11, "iterated-integrals", False,
                       "negative control too small: %.2e" % dev, t0)
    return _result(11, "iterated-integrals", True,
                   "log2 ok; homotopic %.1e; control %.2f" % (worst, dev), t0)


# -- criterion 12 -------------------------------------------------------------


def criterion_12(quick: bool = False) -> CriterionResult:
    """Composability rejection and the fusing/unfusing round trip."""
    t0 = time.time()
    th = _theta()
    mv = graphs.make_fusing(th, "e1", 0)
    try:
        graphs.compose_word([mv, graphs.HalfDehn(edge="e2", graph=th)])
        return _result(12, "groupoid-evaluation", False, "bad word accepted", t0)
    except graphs.NotComposable as exc:
        if exc.index != 1:
            return _result(12, "groupoid-evaluation", False,
                           "rejection at wrong index %d" % exc.index, t0)
    graphs.compose_word([mv, graphs.HalfDehn(edge=mv.new_edge, graph=mv.target)])
    U = kz.universal_associator(6)
    A = np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]], float)
    B = np.array([[0, 0, 0], [0, 0, 1], [0, 0, 0]], float)
    word = graphs.GroupoidWord(
        moves=(graphs.Fusing(edge="e", new_edge="f", source=None, target=None),
               graphs.Fusing(edge="f", new_edge="e", source=None, target=None)),
        source=None, target=None)
    M = kz.evaluate_groupoid_word(word, {"e": A, "f": B}, U)
    dev = float(np.abs(M - np.eye(3)).max())
    ok = dev < 1e-5
    return _result(12, "groupoid-evaluation", ok,
                   "round trip deviation %.1e" % dev, t0)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
            criterion_11, criterion_12]


def run_all(quick: bool = False) -> list:
    return [c(quick=quick) for c in CRITERIA]


def format_table(results: list) -> str:
    lines = []
    for r in results:
        lines.append("criterion %2d  %-22s %s  (%.1fs) %s"
                     % (r.number, r.name, "PASS" if r.passed else "FAIL", r.seconds, r.detail))
    lines.append("%d/%d criteria passed" % (sum(r.passed for r in results), len(results)))
    return "\n".join(lines)
