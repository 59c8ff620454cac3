"""Monodromy engine: multiple zeta values, the connection matrix Phi(A, B)
of G'(t) = (A/t + B/(t-1)) G(t), half-Dehn-twist exponentials, Chen iterated
integrals along paths in the punctured plane, and groupoid-word evaluation.

Convention constants (fixed once, by the E12/E23 computation, and used
consistently everywhere):

* ``WORD_ORDER``: a word w = w1 w2 ... wm of associator letters specializes to
  the matrix product M(w1) @ M(w2) @ ... @ M(wm).
* ``PHI_AB_SIGN``: with this setup the coefficient of the word "ab" in
  Phi(a, b) is -zeta(2), i.e. the (1,3) entry of Phi(E12, E23) is -pi^2/6.
* Groupoid words evaluate to the left-to-right product of their per-move
  monodromy matrices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .graphs import Fusing, GroupoidWord, HalfDehn, Simple

WORD_ORDER = "left-to-right"
PHI_AB_SIGN = -1


class KZError(ValueError):
    pass


class NotNilpotent(KZError):
    pass


class UnsupportedMove(KZError):
    pass


class PoleProximity(KZError):
    pass


# =====================================================================
# multiple zeta values
# =====================================================================

_MZV_TERMS = 128
_MZV_CACHE: dict = {}


def mzv(*indices: int) -> float:
    """zeta(s1, ..., sk) = sum over n1 > n2 > ... > nk >= 1 of prod ni^{-si}.

    Admissible iff s1 >= 2 (the exponent on the largest summation index).
    Computed to ~1e-12 by splitting the iterated-integral representation at
    t = 1/2, where both halves become geometrically convergent series.
    """
    if len(indices) == 1 and isinstance(indices[0], (tuple, list)):
        indices = tuple(indices[0])
    s = tuple(int(x) for x in indices)
    if not s or any(x < 1 for x in s):
        raise KZError("indices must be positive integers")
    if s[0] < 2:
        raise KZError("composition %r is inadmissible (divergent): need s1 >= 2" % (s,))
    if s in _MZV_CACHE:
        return _MZV_CACHE[s]
    # time-increasing letter word: w1 0^{sk-1} ... down to ... 1 0^{s1-1}
    word: list = []
    for si in reversed(s):
        word.append(1)
        word.extend([0] * (si - 1))
    left = _half_integral_prefixes(word)
    right = _half_integral_prefixes([1 - x for x in reversed(word)])
    m = len(word)
    total = sum(left[j] * right[m - j] for j in range(m + 1))
    _MZV_CACHE[s] = total
    return total


def _half_integral_prefixes(letters: Sequence[int]) -> list:
    """[I(0 -> 1/2; letters[:j]) for j = 0..len].

    Letter 0 is dt/t, letter 1 is dt/(1-t); series coefficients around 0.
    """
    n = _MZV_TERMS
    c = np.zeros(n + 1)
    c[0] = 1.0
    half_powers = 0.5 ** np.arange(n + 1)
    out = [1.0]
    ks = np.arange(1, n + 1)
    for ell in letters:
        new = np.zeros(n + 1)
        if ell == 0:
            if c[0] != 0.0:
                raise KZError("divergent iterated integral (dt/t against a constant)")
            new[1:] = c[1:] / ks
        else:
            new[1:] = np.cumsum(c[:-1]) / ks
        c = new
        out.append(float(c @ half_powers))
    return out


def mzv_error_bound() -> float:
    """Conservative absolute error of the mzv backend."""
    return 1e-12


# =====================================================================
# nilpotency helpers
# =====================================================================


def _to_fraction_matrix(mat) -> list | None:
    try:
        rows = [[Fraction(x) for x in row] for row in mat]
    except (TypeError, ValueError):
        return None
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise KZError("matrix must be square")
    return rows


def _frac_matmul(a, b):
    size = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(size)) for j in range(size)]
            for i in range(size)]


def nilpotency_index(mat) -> int:
    """Least k with mat^k = 0; raises NotNilpotent otherwise (exact for rationals)."""
    rows = _to_fraction_matrix(mat)
    if rows is not None:
        size = len(rows)
        power = rows
        for k in range(1, size + 1):
            if all(x == 0 for row in power for x in row):
                return k
            power = _frac_matmul(power, rows)
        raise NotNilpotent("matrix is not nilpotent")
    a = np.asarray(mat, dtype=float)
    size = a.shape[0]
    scale = max(np.abs(a).max(), 1.0)
    power = a.copy()
    for k in range(1, size + 1):
        if np.abs(power).max() <= 1e-12 * scale ** k:
            return k
        power = power @ a
    if np.abs(power).max() <= 1e-12 * scale ** (size + 1):
        return size
    raise NotNilpotent("matrix is not nilpotent (within tolerance)")


@dataclass(frozen=True)
class NilpotentPair:
    """Rational nilpotent residue matrices (A, B) of equal size."""
    A: np.ndarray
    B: np.ndarray
    index_A: int = 0
    index_B: int = 0

    def __post_init__(self):
        a = np.asarray(self.A, dtype=float)
        b = np.asarray(self.B, dtype=float)
        if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise KZError("A, B must be square matrices of equal size")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "index_A", nilpotency_index(self.A))
        object.__setattr__(self, "index_B", nilpotency_index(self.B))

    @property
    def size(self) -> int:
        return self.A.shape[0]


def nilpotent_expm(mat: np.ndarray, factor: complex = 1.0) -> np.ndarray:
    """exp(factor * mat) for nilpotent mat: the finite exponential sum."""
    a = np.asarray(mat)
    size = a.shape[0]
    out = np.eye(size, dtype=np.result_type(a.dtype, type(factor), float))
    term = out.copy()
    for k in range(1, size + 1):
        term = term @ (a * (factor / k))
        out = out + term
        if not np.abs(term).max():
            break
    return out


# =====================================================================
# the connection matrix Phi(A, B)
# =====================================================================


@dataclass
class ConnectionMatrix:
    matrix: np.ndarray
    method: str                     # "ode" | "universal-series"
    error_estimate: float
    truncation_warning: bool = False


def _boundary_series(A: np.ndarray, B: np.ndarray, order: int) -> list:
    """U_k of the local solution G0 = U(t) t^A: (k - ad_A) U_k = -B sum_{i<k} U_i."""
    size = A.shape[0]
    us = [np.eye(size)]
    running = np.eye(size)
    for k in range(1, order + 1):
        rhs = -B @ running
        # (k - ad_A)^{-1} = (1/k) sum_j (ad_A / k)^j, finite for nilpotent A
        x = rhs / k
        term = rhs / k
        for _ in range(2 * size):
            term = (A @ term - term @ A) / k
            if not np.abs(term).max():
                break
            x = x + term
        us.append(x)
        running = running + x
    return us


def _eval_series(us: list, t: float) -> np.ndarray:
    out = np.zeros_like(us[0])
    for u in reversed(us):
        out = out * t + u
    return out


def _integrate(A: np.ndarray, B: np.ndarray, y0: np.ndarray, t0: float, t1: float,
               rtol: float) -> np.ndarray:
    shape = y0.shape

    def rhs(t, y):
        g = y.reshape(shape)
        return ((A @ g) / t + (B @ g) / (t - 1.0)).ravel()

    sol = solve_ivp(rhs, (t0, t1), y0.ravel(), method="DOP853",
                    rtol=rtol, atol=1e-14, dense_output=False)
    if not sol.success:
        raise KZError("ODE integration failed: %s" % sol.message)
    return sol.y[:, -1].reshape(shape)


def _phi_once(A: np.ndarray, B: np.ndarray, y0_cols: np.ndarray, eps: float,
              rtol: float, boundary_order: int) -> np.ndarray:
    """exp(-B log eps) V(eps)^{-1} G(1-eps) applied to initial columns y0_cols.

    The boundary series U, V realize the t^A / (1-t)^B normalizations to
    O(eps^(order+1)); boundary_order=0 recovers the bare exp(A log eps) seed.
    """
    log_eps = math.log(eps)
    us = _boundary_series(A, B, boundary_order)
    vs = _boundary_series(B, A, boundary_order)
    seed = _eval_series(us, eps) @ nilpotent_expm(A, log_eps) @ y0_cols
    g_end = _integrate(A, B, seed, eps, 1.0 - eps, rtol)
    v_inv = np.linalg.inv(_eval_series(vs, eps))
    return nilpotent_expm(B, -log_eps) @ v_inv @ g_end


def ode_connection_matrix(pair: NilpotentPair, eps: float = 1e-6,
                          rtol: float = 1e-10, boundary_order: int = 8) -> ConnectionMatrix:
    """Phi(A, B) = G1(t)^{-1} G0(t) for the normalized solutions at 0 and 1.

    Integrates from t=eps (seeded with the exact local normalization) to
    t=1-eps and corrects by the right-end normalization; a second run at
    eps/2 provides the recorded error estimate.
    """
    if not (0 < eps < 0.5):
        raise KZError("need 0 < eps < 1/2")
    eye = np.eye(pair.size)
    phi1 = _phi_once(pair.A, pair.B, eye, eps, rtol, boundary_order)
    phi2 = _phi_once(pair.A, pair.B, eye, eps / 2, rtol, boundary_order)
    est = float(np.abs(phi1 - phi2).max())
    return ConnectionMatrix(matrix=phi2, method="ode", error_estimate=est)


# =====================================================================
# the universal associator
# =====================================================================


def _words_upto(w: int) -> list:
    out = [""]
    for k in range(1, w + 1):
        out.extend("".join(t) for t in itertools.product("ab", repeat=k))
    return out


@dataclass
class UniversalAssociator:
    weight: int
    coeffs: Mapping[str, float]
    error_estimate: float

    def coeff(self, word: str) -> float:
        return self.coeffs.get(word, 0.0)


def universal_associator(weight: int = 6, eps: float = 1e-4, rtol: float = 1e-10,
                         boundary_order: int = 10) -> UniversalAssociator:
    """Phi in the free algebra truncated at the given weight.

    The letters act by left multiplication on the truncated free algebra
    (nilpotent operators); Phi applied to the empty word yields the
    coefficient series.
    """
    words = _words_upto(weight)
    index = {w: i for i, w in enumerate(words)}
    d = len(words)
    la = np.zeros((d, d))
    lb = np.zeros((d, d))
    for w, i in index.items():
        if len(w) < weight:
            la[index["a" + w], i] = 1.0
            lb[index["b" + w], i] = 1.0
    e0 = np.zeros((d, 1))
    e0[index[""], 0] = 1.0
    v1 = _phi_once(la, lb, e0, eps, rtol, boundary_order)
    v2 = _phi_once(la, lb, e0, eps / 2, rtol, boundary_order)
    est = float(np.abs(v1 - v2).max())
    coeffs = {w: float(v2[index[w], 0]) for w in words if abs(v2[index[w], 0]) > 1e-14}
    coeffs[""] = float(v2[index[""], 0])
    return UniversalAssociator(weight=weight, coeffs=coeffs, error_estimate=est)


def specialize_associator(U: UniversalAssociator, pair: NilpotentPair) -> ConnectionMatrix:
    """Substitute matrices for the letters: word w1..wm -> M(w1) @ ... @ M(wm)."""
    mats = {"a": pair.A, "b": pair.B}
    out = np.zeros((pair.size, pair.size))
    for word, c in U.coeffs.items():
        m = np.eye(pair.size)
        for ch in word:
            m = m @ mats[ch]
        out = out + c * m
    warn = pair.index_A + pair.index_B > U.weight
    return ConnectionMatrix(matrix=out, method="universal-series",
                            error_estimate=U.error_estimate * len(U.coeffs),
                            truncation_warning=warn)


def associator_inverse_coeffs(U: UniversalAssociator) -> dict:
    """Coefficients of the series inverse of Phi (geometric series on Phi - 1)."""
    one = {"": 1.0}
    y = {w: c for w, c in U.coeffs.items() if w}
    # (1+y)^{-1} = 1 - y + y^2 - ... terminates at the weight cap
    out = dict(one)
    power = dict(one)
    sign = 1.0
    for _ in range(U.weight):
        power = _word_series_mul(power, y, U.weight)
        sign = -sign
        if not power:
            break
        for w, c in power.items():
            out[w] = out.get(w, 0.0) + sign * c
    return out


def _word_series_mul(x: Mapping[str, float], y: Mapping[str, float], cap: int) -> dict:
    out: dict = {}
    for wa, ca in x.items():
        for wb, cb in y.items():
            if len(wa) + len(wb) > cap:
                continue
            w = wa + wb
            out[w] = out.get(w, 0.0) + ca * cb
    return out


def shuffle_words(u: str, v: str) -> list:
    """All shuffles of u and v (with multiplicity)."""
    if not u:
        return [v]
    if not v:
        return [u]
    return [u[0] + w for w in shuffle_words(u[1:], v)] + \
           [v[0] + w for w in shuffle_words(u, v[1:])]


# =====================================================================
# half-Dehn twists
# =====================================================================


@dataclass
class HalfDehnMonodromy:
    """exp(pi*i*Res): exact polynomial in the symbol pi*i, plus the numeric value."""
    pi_coeffs: Mapping[int, tuple]    # power of (pi*i) -> rational matrix
    numeric: np.ndarray


def half_dehn_monodromy(res) -> HalfDehnMonodromy:
    rows = _to_fraction_matrix(res)
    if rows is None:
        raise KZError("half-Dehn residues must be exact rational matrices")
    idx = nilpotency_index(rows)
    size = len(rows)
    coeffs = {0: tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(size))
                       for i in range(size))}
    power = [[Fraction(1) if i == j else Fraction(0) for j in range(size)] for i in range(size)]
    fact = 1
    for k in range(1, idx):
        power = _frac_matmul(power, rows)
        fact *= k
        coeffs[k] = tuple(tuple(x / fact for x in row) for row in power)
    numeric = sum(
        ((1j * math.pi) ** k) * np.array([[float(x) for x in row] for row in mat])
        for k, mat in coeffs.items()
    )
    return HalfDehnMonodromy(pi_coeffs=coeffs, numeric=np.asarray(numeric, dtype=complex))


# =====================================================================
# iterated integrals along explicit paths
# =====================================================================


@dataclass(frozen=True)
class LineSegment:
    start: complex
    end: complex

    def point(self, u: float) -> complex:
        return self.start + (self.end - self.start) * u

    def velocity(self, u: float) -> complex:
        return self.end - self.start


@dataclass(frozen=True)
class ArcSegment:
    center: complex
    radius: float
    angle0: float
    angle1: float

    def point(self, u: float) -> complex:
        th = self.angle0 + (self.angle1 - self.angle0) * u
        return self.center + self.radius * complex(math.cos(th), math.sin(th))

    def velocity(self, u: float) -> complex:
        th = self.angle0 + (self.angle1 - self.angle0) * u
        return self.radius * (self.angle1 - self.angle0) * complex(-math.sin(th), math.cos(th))


@dataclass(frozen=True)
class OneForm:
    """Rational 1-form with simple poles: sum of residue/(z - pole)."""
    poles: tuple    # ((pole, residue), ...)

    def __call__(self, z: complex) -> complex:
        return sum(res / (z - pole) for pole, res in self.poles)


FORM_DT_OVER_T = OneForm(((0.0, 1.0),))
FORM_DT_OVER_ONE_MINUS_T = OneForm(((1.0, -1.0),))


@dataclass(frozen=True)
class FormPath:
    segments: tuple
    forms: tuple
    margin: float = 1e-3

    def __post_init__(self):
        segs = tuple(self.segments)
        forms = tuple(self.forms)
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "forms", forms)
        if not segs:
            raise KZError("path needs at least one segment")
        for i in range(len(segs) - 1):
            if abs(segs[i].point(1.0) - segs[i + 1].point(0.0)) > 1e-12:
                raise KZError("segments %d and %d are not continuous end-to-start" % (i, i + 1))
        poles = {p for f in forms for p, _ in f.poles}
        samples = 257
        for seg in segs:
            for j in range(samples):
                z = seg.point(j / (samples - 1))
                for p in poles:
                    if abs(z - p) < self.margin:
                        raise PoleProximity(
                            "path point %s is within margin %g of pole %s" % (z, self.margin, p))


def nilpotent_transport(fp: FormPath, rtol: float = 1e-12) -> np.ndarray:
    """Parallel transport of the connection d - sum_i e_{i,i+1} w_i.

    The (i, j+1) entry is the Chen iterated integral of w_i ... w_j along the
    path; transport over a concatenation is the (reversed-order) product of
    the segment transports.
    """
    m = len(fp.forms)
    size = m + 1
    total = np.eye(size, dtype=complex)
    for seg in fp.segments:
        def rhs(u, y):
            f = y[:size * size].reshape(size, size) + 1j * y[size * size:].reshape(size, size)
            z = seg.point(u)
            dz = seg.velocity(u)
            omega = np.zeros((size, size), dtype=complex)
            for i, w in enumerate(fp.forms):
                omega[i, i + 1] = w(z) * dz
            df = omega @ f
            return np.concatenate([df.real.ravel(), df.imag.ravel()])

        y0 = np.concatenate([np.eye(size).ravel(), np.zeros(size * size)])
        sol = solve_ivp(rhs, (0.0, 1.0), y0, method="DOP853", rtol=rtol, atol=1e-14)
        if not sol.success:
            raise KZError("transport integration failed: %s" % sol.message)
        yend = sol.y[:, -1]
        f = yend[:size * size].reshape(size, size) + 1j * yend[size * size:].reshape(size, size)
        total = f @ total
    return total


def homotopy_invariance_check(fp1: FormPath, fp2: FormPath, rtol: float = 1e-12) -> float:
    """Max entry deviation of the two transports (same endpoints and forms)."""
    if len(fp1.forms) != len(fp2.forms):
        raise KZError("form lists must agree")
    t1 = nilpotent_transport(fp1, rtol=rtol)
    t2 = nilpotent_transport(fp2, rtol=rtol)
    return float(np.abs(t1 - t2).max())


# =====================================================================
# groupoid-word evaluation
# =====================================================================


def evaluate_groupoid_word(word: GroupoidWord, residues: Mapping[str, object],
                           U: UniversalAssociator) -> np.ndarray:
    """Left-to-right product of per-move monodromies.

    Half-Dehn moves contribute exp(pi*i*Res_e); fusing moves contribute
    Phi(Res_e, Res_e'); simple moves are unsupported here.
    """
    size = None
    mats: dict = {}
    for e, mat in residues.items():
        a = np.array([[float(Fraction(x)) for x in row] for row in mat]) \
            if not isinstance(mat, np.ndarray) else np.asarray(mat, dtype=float)
        nilpotency_index(a)
        if size is None:
            size = a.shape[0]
        elif a.shape[0] != size:
            raise KZError("residue matrices must share a common size")
        mats[e] = a
    if size is None:
        raise KZError("no residues supplied")
    out = np.eye(size, dtype=complex)
    for i, mv in enumerate(word.moves):
        if isinstance(mv, Simple):
            raise UnsupportedMove("simple move at index %d: elliptic monodromy not supplied" % i)
        if isinstance(mv, HalfDehn):
            if mv.edge not in mats:
                raise KZError("missing residue for edge %r" % mv.edge)
            factor = nilpotent_expm(mats[mv.edge], 1j * math.pi)
        elif isinstance(mv, Fusing):
            for e in (mv.edge, mv.new_edge):
                if e not in mats:
                    raise KZError("missing residue for edge %r" % e)
            pair = NilpotentPair(mats[mv.edge], mats[mv.new_edge])
            factor = specialize_associator(U, pair).matrix.astype(complex)
        else:
            raise UnsupportedMove("unknown move type %r at index %d" % (type(mv), i))
        out = out @ factor
    return out
