"""Barrier functions of P(x, z) = det(xI + sum z_i A_i) and the (1 + sqrt eps)^2 certificate."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import (
    HermitianMatrix,
    as_rational,
    is_pd_generic,
    is_psd,
    loewner_leq,
    matrix_sum,
    real_part,
    solve_trace,
)
from .errors import HypothesisViolated, InvariantBreach, NotAboveRoots, PreconditionFail
from .multilinear import mixed_char_poly
from .poly import DEFAULT_WIDTH, RootBracket, UniPoly, is_above_roots_1d, largest_root
from .quadratic import QuadraticFieldElement, qf_sign


@dataclass(frozen=True)
class EvaluationPoint:
    x: Fraction
    z: tuple

    def __init__(self, x, z: Sequence):
        object.__setattr__(self, "x", as_rational(x))
        object.__setattr__(self, "z", tuple(as_rational(v) for v in z))

    def shifted(self, j: int, delta) -> "EvaluationPoint":
        z = list(self.z)
        z[j] += as_rational(delta)
        return EvaluationPoint(self.x, z)


def _dim(matrices, dim):
    if dim is None:
        if not matrices:
            raise ValueError("dimension is required when no matrices are given")
        return matrices[0].dim
    return dim


def pencil_rows(matrices: Sequence[HermitianMatrix], x, z: Sequence, dim: Optional[int] = None):
    """Rows of x*I + sum z_i A_i; x and z may be rationals or quadratic-field elements."""
    d = _dim(matrices, dim)
    if len(z) != len(matrices):
        raise ValueError(f"point has {len(z)} z-coordinates for {len(matrices)} matrices")
    rows = [[x if j == k else 0 * x for k in range(d)] for j in range(d)]
    for zi, a in zip(z, matrices):
        if not zi:
            continue
        e = a.entries
        for j in range(d):
            for k in range(d):
                if e[j][k]:
                    rows[j][k] = rows[j][k] + zi * e[j][k]
    return rows


def is_above_roots_det(matrices, point: EvaluationPoint, dim: Optional[int] = None) -> bool:
    """Sufficient condition for (x, z) in Ab_P: x*I + sum z_i A_i is positive definite."""
    return is_pd_generic(pencil_rows(matrices, point.x, point.z, dim))


def barrier_value(matrices, point: EvaluationPoint, i: int, dim: Optional[int] = None) -> Fraction:
    """Phi^i = d/dz_i log P = Tr((xI + sum z_j A_j)^{-1} A_i), exactly."""
    rows = pencil_rows(matrices, point.x, point.z, dim)
    if not is_pd_generic(rows):
        raise NotAboveRoots(f"x*I + sum z_j A_j is not positive definite at {point}")
    return real_part(solve_trace(rows, matrices[i].entries))


# --- barrier-shift checker ------------------------------------------------------------

# Taylor coefficients of det(M0 + s*A_j + u*A_i) kept up to total degree 2:
# indices into a 5-vector are (1, s, u, su, s^2).
_MONO = ((0, 0), (1, 0), (0, 1), (1, 1), (2, 0))
_MUL = {}
for _p, (_a, _b) in enumerate(_MONO):
    for _q, (_c, _d) in enumerate(_MONO):
        _key = (_a + _c, _b + _d)
        if _key in _MONO:
            _MUL.setdefault(_p, []).append((_q, _MONO.index(_key)))


def _tmul(f, g):
    out = [Fraction(0)] * 5
    for p, fp in enumerate(f):
        if fp:
            for q, r in _MUL.get(p, ()):
                if g[q]:
                    out[r] += fp * g[q]
    return out


def _taylor_det(m0, aj, ai):
    d = len(m0)
    entry = [[(m0[r][c], aj[r][c], ai[r][c], 0, 0) for c in range(d)] for r in range(d)]
    dp = {0: [Fraction(1), 0, 0, 0, 0]}
    for r in range(d):
        nxt = {}
        for cols, val in dp.items():
            for c in range(d):
                if cols >> c & 1:
                    continue
                term = _tmul(val, entry[r][c])
                if bin(cols >> (c + 1)).count("1") & 1:
                    term = [-v for v in term]
                cur = nxt.get(cols | 1 << c)
                nxt[cols | 1 << c] = term if cur is None else [a + b for a, b in zip(cur, term)]
        dp = nxt
    return [real_part(v) if v else Fraction(0) for v in dp[(1 << d) - 1]]


def shifted_barrier_value(matrices, point: EvaluationPoint, i: int, j: int, delta, dim=None):
    """(Q(z'), Phi^i_Q(z')) for Q = (1 - d/dz_j) P and z' = z + delta*e_j."""
    d = _dim(matrices, dim)
    shifted = point.shifted(j, delta)
    m0 = pencil_rows(matrices, shifted.x, shifted.z, d)
    c1, cs, cu, csu, css = _taylor_det(m0, matrices[j].entries, matrices[i].entries)
    # D = c1 + cs s + cu u + csu s u + css s^2 ; Q = D - dD/ds
    q0 = c1 - cs
    dq_du = cu - csu
    if q0 <= 0:
        raise NotAboveRoots(f"(1 - d/dz_{j})P is not positive at the shifted point")
    return q0, dq_du / q0


def check_barrier_shift(matrices, point: EvaluationPoint, i: int, j: int, delta, dim=None) -> bool:
    """Phi^i of (1 - d/dz_j)P at z + delta e_j is at most Phi^i of P at z.

    Preconditions: z above the roots and delta >= 1/(1 - Phi^i(z)) > 0.
    """
    delta = as_rational(delta)
    phi = barrier_value(matrices, point, i, dim)
    if phi >= 1 or delta < 1 / (1 - phi):
        raise PreconditionFail(f"delta={delta} does not dominate 1/(1 - Phi)={'inf' if phi >= 1 else 1 / (1 - phi)}")
    try:
        _, phi_new = shifted_barrier_value(matrices, point, i, j, delta, dim)
    except NotAboveRoots:
        return False
    return phi_new <= phi


# --- threshold certificate -------------------------------------------------------------


@dataclass(frozen=True)
class BarrierCertificate:
    eps: Fraction
    x_threshold: QuadraticFieldElement  # (1 + sqrt eps)^2 = (1 + eps) + 2 sqrt eps
    t_shift: QuadraticFieldElement  # -1 - sqrt eps
    delta: QuadraticFieldElement  # 1 + sqrt eps
    phi_bound: QuadraticFieldElement  # eps / (x + t)
    phi_upper: Fraction
    phi_values: tuple
    mu: UniPoly
    root_bracket: RootBracket
    threshold_upper: Fraction
    x_above_roots: bool
    certified: bool

    @property
    def x_threshold_sq_form(self):
        """(a, b) with x = a + b*sqrt(eps), before perfect squares are folded."""
        return 1 + self.eps, Fraction(2)


def check_theorem2_hypotheses(matrices: Sequence[HermitianMatrix], eps, dim: Optional[int] = None) -> Fraction:
    eps = as_rational(eps)
    d = _dim(matrices, dim)
    if eps <= 0:
        raise HypothesisViolated("eps > 0", f"got eps = {eps}")
    for k, a in enumerate(matrices):
        if a.dim != d:
            raise ValueError(f"dimension mismatch at matrix {k}")
        if not is_psd(a):
            raise HypothesisViolated("A_i positive semidefinite", f"matrix {k} is not PSD")
        if a.trace() > eps:
            raise HypothesisViolated("Tr A_i <= eps", f"matrix {k} has trace {a.trace()} > {eps}")
    if not loewner_leq(matrix_sum(matrices, d), HermitianMatrix.identity(d)):
        raise HypothesisViolated("sum A_i <= I", "the sum of the matrices exceeds the identity")
    return eps


def certify_theorem2(
    matrices: Sequence[HermitianMatrix], eps, width=DEFAULT_WIDTH, dim: Optional[int] = None
) -> BarrierCertificate:
    """Run the barrier argument exactly in Q(sqrt eps) and bound the largest root of mu."""
    matrices = list(matrices)
    d = _dim(matrices, dim)
    eps = check_theorem2_hypotheses(matrices, eps, d)
    width = as_rational(width)

    x = QuadraticFieldElement(1 + eps, 2, eps)
    t = QuadraticFieldElement(-1, -1, eps)
    delta = -t
    m = len(matrices)

    start = pencil_rows(matrices, x, [t] * m, d)
    if not is_pd_generic(start, qf_sign):
        raise InvariantBreach("x*I + t*sum A_i is not positive definite under the hypotheses")

    phi_bound = eps / (x + t)
    phi_values = tuple(solve_trace(start, a.entries) for a in matrices)
    for k, v in enumerate(phi_values):
        if v > phi_bound:
            raise InvariantBreach(f"barrier value in direction {k} exceeds eps/(x+t)")
    if not phi_bound < 1:
        raise InvariantBreach("barrier bound is not below 1")
    if delta < 1 / (1 - phi_bound):
        raise InvariantBreach("delta does not dominate 1/(1 - Phi)")

    mu = mixed_char_poly(matrices, dim=d)
    bracket = largest_root(mu, width)
    threshold_upper = x.upper(DEFAULT_WIDTH)
    x_above = is_above_roots_1d(mu, x)
    certified = x_above and bracket.hi <= threshold_upper + DEFAULT_WIDTH
    return BarrierCertificate(
        eps=eps,
        x_threshold=x,
        t_shift=t,
        delta=delta,
        phi_bound=phi_bound,
        phi_upper=phi_bound.upper(DEFAULT_WIDTH),
        phi_values=phi_values,
        mu=mu,
        root_bracket=bracket,
        threshold_upper=threshold_upper,
        x_above_roots=x_above,
        certified=certified,
    )
