"""Truncated multivariate power series over exact rationals.

QSeries lives in Q[[q_e : e in vars]] truncated at a total degree N.
BElement adjoins a single monomial denominator, i.e. the localization
at the product of the variables, again at finite truncation.

All arithmetic is exact below the truncation order: a product of series
that are exact mod degree N+1 is again exact mod degree N+1, so identity
checks of the form "residual == 0" are meaningful in this ring.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping


class QSeriesError(ValueError):
    pass


class VariableMismatch(QSeriesError):
    """Operands live over different variable sets (no promotion requested)."""


class NotInvertible(QSeriesError):
    def __init__(self, message: str, kind: str):
        super().__init__(message)
        self.kind = kind


class PoleAtZero(QSeriesError):
    """Substituting q_e = 0 into an element with a q_e denominator."""


class NonSimpleRoot(QSeriesError):
    """The quadratic has a repeated root at q = 0 (degenerate/parabolic case)."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QSeries:
    """Sparse truncated power series: exponent vector -> nonzero rational."""

    __slots__ = ("vars", "N", "coeffs")

    def __init__(self, variables: Iterable[str], N: int, coeffs: Mapping[tuple, object] | None = None):
        vs = tuple(variables)
        if list(vs) != sorted(vs):
            raise QSeriesError("variables must be given in sorted order: %r" % (vs,))
        if len(set(vs)) != len(vs):
            raise QSeriesError("duplicate variables: %r" % (vs,))
        if N < 0:
            raise QSeriesError("truncation order must be nonnegative")
        self.vars = vs
        self.N = N
        clean = {}
        if coeffs:
            for exp, c in coeffs.items():
                exp = tuple(exp)
                if len(exp) != len(vs):
                    raise QSeriesError("exponent vector %r does not match variables %r" % (exp, vs))
                if any(k < 0 for k in exp):
                    raise QSeriesError("negative exponent in QSeries: %r" % (exp,))
                if sum(exp) > N:
                    continue
                c = _frac(c)
                if c != 0:
                    clean[exp] = clean.get(exp, Fraction(0)) + c
                    if clean[exp] == 0:
                        del clean[exp]
        self.coeffs = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c, variables: Iterable[str], N: int) -> "QSeries":
        vs = tuple(variables)
        return cls(vs, N, {tuple([0] * len(vs)): _frac(c)})

    @classmethod
    def gen(cls, name: str, variables: Iterable[str], N: int) -> "QSeries":
        vs = tuple(variables)
        if name not in vs:
            raise QSeriesError("unknown variable %r" % name)
        exp = tuple(1 if v == name else 0 for v in vs)
        return cls(vs, N, {exp: Fraction(1)})

    # -- basic queries ------------------------------------------------

    def constant_term(self) -> Fraction:
        return self.coeffs.get(tuple([0] * len(self.vars)), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def min_exponents(self) -> tuple:
        """Componentwise minimum of stored exponent vectors (the common monomial factor)."""
        if not self.coeffs:
            return tuple([0] * len(self.vars))
        mins = None
        for exp in self.coeffs:
            if mins is None:
                mins = list(exp)
            else:
                mins = [min(a, b) for a, b in zip(mins, exp)]
        return tuple(mins)

    def leading_term(self):
        """(exponent, coefficient) minimal under (total degree, lex)."""
        if not self.coeffs:
            raise QSeriesError("zero series has no leading term")
        key = min(self.coeffs, key=lambda e: (sum(e), e))
        return key, self.coeffs[key]

    # -- ring operations ----------------------------------------------

    def _check_compatible(self, other: "QSeries"):
        if self.vars != other.vars:
            raise VariableMismatch(
                "variable sets differ: %r vs %r (use with_vars to promote)" % (self.vars, other.vars)
            )
        if self.N != other.N:
            raise VariableMismatch("truncation orders differ: %d vs %d" % (self.N, other.N))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, self.vars, self.N)
        if isinstance(other, BElement):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.coeffs)
        for exp, c in other.coeffs.items():
            out[exp] = out.get(exp, Fraction(0)) + c
            if out[exp] == 0:
                del out[exp]
        return QSeries(self.vars, self.N, out)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.vars, self.N, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, BElement):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, self.vars, self.N)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if c == 0:
                return QSeries(self.vars, self.N, {})
            return QSeries(self.vars, self.N, {e: v * c for e, v in self.coeffs.items()})
        if isinstance(other, BElement):
            return NotImplemented
        self._check_compatible(other)
        N = self.N
        out: dict = {}
        # iterate the smaller factor outside
        a, b = (self.coeffs, other.coeffs) if len(self.coeffs) <= len(other.coeffs) else (other.coeffs, self.coeffs)
        bitems = [(sum(e), e, c) for e, c in b.items()]
        for ea, ca in a.items():
            da = sum(ea)
            for db, eb, cb in bitems:
                if da + db > N:
                    continue
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return QSeries(self.vars, self.N, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, self.vars, self.N)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.vars == other.vars and self.N == other.N and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.vars, self.N, frozenset(self.coeffs.items())))

    def with_vars(self, variables: Iterable[str]) -> "QSeries":
        """Explicit promotion into a larger variable set."""
        vs = tuple(sorted(variables))
        if not set(self.vars) <= set(vs):
            raise VariableMismatch("cannot drop variables %r" % (set(self.vars) - set(vs),))
        pos = {v: i for i, v in enumerate(vs)}
        out = {}
        for exp, c in self.coeffs.items():
            new = [0] * len(vs)
            for v, k in zip(self.vars, exp):
                new[pos[v]] = k
            out[tuple(new)] = c
        return QSeries(vs, self.N, out)

    def with_order(self, N: int) -> "QSeries":
        """Explicit re-truncation (raising N does not create information)."""
        return QSeries(self.vars, N, self.coeffs)

    def invert(self) -> "QSeries":
        """Inverse of a unit (nonzero constant term), exact mod degree N+1."""
        c0 = self.constant_term()
        if c0 == 0:
            if self.is_zero():
                raise NotInvertible("zero series is not invertible", kind="zero")
            raise NotInvertible(
                "constant term is zero and input is a plain QSeries; "
                "invert at the BElement level if the series is monomial*unit",
                kind="not-a-unit",
            )
        y = QSeries.constant(1 / c0, self.vars, self.N)
        two = QSeries.constant(2, self.vars, self.N)
        steps = max(1, math.ceil(math.log2(self.N + 1))) if self.N > 0 else 1
        for _ in range(steps):
            y = y * (two - self * y)
        return y

    def substitute(self, assignment: Mapping[str, object]) -> "QSeries":
        """Exact evaluation of a subset of variables at rationals (0 allowed)."""
        for v in assignment:
            if v not in self.vars:
                raise QSeriesError("substituting unknown variable %r" % v)
        vals = {v: _frac(x) for v, x in assignment.items()}
        keep = tuple(v for v in self.vars if v not in vals)
        pos_keep = [i for i, v in enumerate(self.vars) if v not in vals]
        pos_sub = [(i, vals[v]) for i, v in enumerate(self.vars) if v in vals]
        out: dict = {}
        for exp, c in self.coeffs.items():
            val = c
            for i, x in pos_sub:
                k = exp[i]
                if k:
                    if x == 0:
                        val = Fraction(0)
                        break
                    val *= x ** k
            if val == 0:
                continue
            key = tuple(exp[i] for i in pos_keep)
            out[key] = out.get(key, Fraction(0)) + val
            if out[key] == 0:
                del out[key]
        return QSeries(keep, self.N, out)

    def as_rational(self) -> Fraction:
        """The value of a variable-free series."""
        if self.vars:
            raise QSeriesError("series still depends on %r" % (self.vars,))
        return self.constant_term()

    # -- output ---------------------------------------------------------

    def __str__(self):
        return series_text(self)

    def __repr__(self):
        return "QSeries(%r, N=%d, %s)" % (self.vars, self.N, series_text(self))


def series_text(s: QSeries) -> str:
    """Canonical text form: monomials by (total degree, lex), coefficients p/q."""
    if not s.coeffs:
        return "0"
    parts = []
    for exp in sorted(s.coeffs, key=lambda e: (sum(e), e)):
        c = s.coeffs[exp]
        factors = []
        for v, k in zip(s.vars, exp):
            if k == 1:
                factors.append(v)
            elif k > 1:
                factors.append("%s^%d" % (v, k))
        mono = "*".join(factors)
        if mono:
            if c == 1:
                term = mono
            elif c == -1:
                term = "-" + mono
            else:
                term = "%s*%s" % (c, mono)
        else:
            term = str(c)
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


class BElement:
    """numerator / q^d with a single monomial denominator, kept reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num: QSeries, den: Iterable[int] | None = None):
        den = tuple(den) if den is not None else tuple([0] * len(num.vars))
        if len(den) != len(num.vars):
            raise QSeriesError("denominator exponent length mismatch")
        if any(d < 0 for d in den):
            raise QSeriesError("denominator exponents must be nonnegative")
        # reduce: cancel the common monomial factor of the numerator
        if any(den) and not num.is_zero():
            mins = num.min_exponents()
            cancel = tuple(min(m, d) for m, d in zip(mins, den))
            if any(cancel):
                num = QSeries(
                    num.vars,
                    num.N,
                    {tuple(e - c for e, c in zip(exp, cancel)): v for exp, v in num.coeffs.items()},
                )
                den = tuple(d - c for d, c in zip(den, cancel))
        if num.is_zero():
            den = tuple([0] * len(num.vars))
        self.num = num
        self.den = den

    @property
    def vars(self):
        return self.num.vars

    @property
    def N(self):
        return self.num.N

    @classmethod
    def from_qseries(cls, s: QSeries) -> "BElement":
        return cls(s)

    @classmethod
    def constant(cls, c, variables: Iterable[str], N: int) -> "BElement":
        return cls(QSeries.constant(c, variables, N))

    @classmethod
    def gen(cls, name: str, variables: Iterable[str], N: int) -> "BElement":
        return cls(QSeries.gen(name, variables, N))

    @classmethod
    def monomial_inverse(cls, name: str, variables: Iterable[str], N: int) -> "BElement":
        """1/q_name."""
        vs = tuple(variables)
        den = tuple(1 if v == name else 0 for v in vs)
        return cls(QSeries.constant(1, vs, N), den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not any(self.den)

    def as_qseries(self) -> QSeries:
        if any(self.den):
            raise QSeriesError("element has a genuine denominator %r" % (self.den,))
        return self.num

    @staticmethod
    def _coerce(x, like: "BElement") -> "BElement":
        if isinstance(x, BElement):
            return x
        if isinstance(x, QSeries):
            return BElement(x)
        if isinstance(x, (int, Fraction)):
            return BElement.constant(x, like.vars, like.N)
        raise TypeError("cannot coerce %r to BElement" % (x,))

    def __add__(self, other):
        other = BElement._coerce(other, self)
        if self.vars != other.vars or self.N != other.N:
            raise VariableMismatch("incompatible BElements")
        den = tuple(max(a, b) for a, b in zip(self.den, other.den))
        def lift(x):
            shift = tuple(d - xd for d, xd in zip(den, x.den))
            if not any(shift):
                return x.num
            return QSeries(
                x.vars, x.N,
                {tuple(e + s for e, s in zip(exp, shift)): c for exp, c in x.num.coeffs.items()},
            )
        return BElement(lift(self) + lift(other), den)

    __radd__ = __add__

    def __neg__(self):
        return BElement(-self.num, self.den)

    def __sub__(self, other):
        return self + (-BElement._coerce(other, self))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = BElement._coerce(other, self)
        if self.vars != other.vars or self.N != other.N:
            raise VariableMismatch("incompatible BElements")
        return BElement(self.num * other.num, tuple(a + b for a, b in zip(self.den, other.den)))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QSeries)):
            other = BElement._coerce(other, self)
        if not isinstance(other, BElement):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def invert(self) -> "BElement":
        """Inverse when the element is monomial * unit."""
        if self.num.is_zero():
            raise NotInvertible("zero is not invertible", kind="zero")
        mono = self.num.min_exponents()
        shifted = QSeries(
            self.vars, self.N,
            {tuple(e - m for e, m in zip(exp, mono)): c for exp, c in self.num.coeffs.items()},
        )
        if shifted.constant_term() == 0:
            raise NotInvertible(
                "numerator is not monomial*unit (e.g. a sum of distinct variables)",
                kind="not-monomial-unit",
            )
        unit_inv = shifted.invert()
        # 1 / (q^mono * u / q^den) = q^den * u^{-1} / q^mono
        num = QSeries(
            self.vars, self.N,
            {tuple(e + d for e, d in zip(exp, self.den)): c for exp, c in unit_inv.coeffs.items()},
        )
        return BElement(num, mono)

    def substitute(self, assignment: Mapping[str, object]) -> "BElement":
        vals = {v: _frac(x) for v, x in assignment.items()}
        scale = Fraction(1)
        for i, v in enumerate(self.vars):
            if v in vals and self.den[i] > 0:
                if vals[v] == 0:
                    raise PoleAtZero("substituting %s=0 but denominator has %s^%d" % (v, v, self.den[i]))
                scale *= vals[v] ** (-self.den[i])
        num = self.num.substitute(assignment)
        keep = tuple(v for v in self.vars if v not in vals)
        den = tuple(self.den[i] for i, v in enumerate(self.vars) if v not in vals)
        return BElement(num * scale if scale != 1 else num, den)

    def leading_invertible_part(self) -> "BElement":
        """monomial * leading coefficient / q^den; always invertible, used for pivot scaling."""
        exp, c = self.num.leading_term()
        return BElement(QSeries(self.vars, self.N, {exp: c}), self.den)

    def __str__(self):
        if not any(self.den):
            return series_text(self.num)
        factors = []
        for v, d in zip(self.vars, self.den):
            if d == 1:
                factors.append(v)
            elif d > 1:
                factors.append("%s^%d" % (v, d))
        return "(%s)/(%s)" % (series_text(self.num), "*".join(factors))

    __repr__ = __str__


def hensel_solve_quadratic(c2: QSeries, c1: QSeries, c0: QSeries, root0) -> QSeries:
    """Solve c2*r^2 + c1*r + c0 = 0 in the truncated ring by Newton lifting.

    root0 must be a simple root of the constant-term quadratic: the residual
    at root0 vanishes mod (q) and 2*c2*root0 + c1 is a unit.
    """
    c2._check_compatible(c1)
    c2._check_compatible(c0)
    r0 = _frac(root0)
    res0 = c2.constant_term() * r0 * r0 + c1.constant_term() * r0 + c0.constant_term()
    if res0 != 0:
        raise QSeriesError("root0=%s is not a root of the quadratic at q=0 (residual %s)" % (r0, res0))
    der0 = 2 * c2.constant_term() * r0 + c1.constant_term()
    if der0 == 0:
        raise NonSimpleRoot("repeated root at q=0: derivative vanishes at root0=%s" % r0)
    N = c2.N
    r = QSeries.constant(r0, c2.vars, N)
    steps = max(1, math.ceil(math.log2(N + 1))) if N > 0 else 1
    two = QSeries.constant(2, c2.vars, N)
    for _ in range(steps):
        f = c2 * r * r + c1 * r + c0
        fp = two * c2 * r + c1
        r = r - f * fp.invert()
    # the Newton iterate is exact mod degree N+1; assert the residual
    f = c2 * r * r + c1 * r + c0
    if not f.is_zero():
        raise QSeriesError("Newton lifting failed to reach an exact root at truncation")
    return r
