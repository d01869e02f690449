"""Exact Gaussian beta-ensemble moments and the Virasoro / W constraints.

For integer beta the weight prod_{i<j} (x_i - x_j)^{2 beta} is a polynomial,
so every normalized expectation <p_mu> = <p_mu V> / <V> reduces to Gaussian
monomial moments <x^{2m}> = (2m - 1)!!.  All numbers stay rational.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt

from .operators import NOOperator, apply, build_W0_beta, build_W0_from_L, linear_combination
from .partitions import canonical, enumerate_partitions
from .symfun import SymFun, as_fraction, format_fraction

MAX_N = 4
MAX_BETA = 3
MAX_TOTAL_DEGREE = 40


class CapExceeded(ValueError):
    pass


def _check(N, beta, weight=0):
    if isinstance(beta, Fraction) and beta.denominator == 1:
        beta = int(beta)
    if not isinstance(beta, int):
        raise ValueError(f"beta must be a positive integer, got {beta}")
    if beta < 1 or beta > MAX_BETA:
        raise CapExceeded(f"beta = {beta} outside 1..{MAX_BETA}")
    if N < 1 or N > MAX_N:
        raise CapExceeded(f"N = {N} outside 1..{MAX_N}")
    total = weight + beta * N * (N - 1)
    if total > MAX_TOTAL_DEGREE:
        raise CapExceeded(f"total monomial degree {total} exceeds {MAX_TOTAL_DEGREE}")
    return beta


# --- polynomial helpers (dict exponent-tuple -> int) ----------------------------

def _poly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


@lru_cache(maxsize=None)
def vandermonde_power(N, beta):
    poly = {(0,) * N: 1}
    for i in range(N):
        for j in range(i + 1, N):
            ei = tuple(int(k == i) for k in range(N))
            ej = tuple(int(k == j) for k in range(N))
            diff = {ei: 1, ej: -1}
            for _ in range(2 * beta):
                poly = _poly_mul(poly, diff)
    return poly


@lru_cache(maxsize=None)
def _power_sum_poly(mu, N):
    if not mu:
        return {(0,) * N: 1}
    k = mu[-1]
    pk = {tuple(k if i == j else 0 for j in range(N)): 1 for i in range(N)}
    return _poly_mul(_power_sum_poly(mu[:-1], N), pk)


def double_factorial_moment(m):
    """<x^m> for the standard Gaussian: (m-1)!! if m even, else 0."""
    if m % 2:
        return 0
    out = 1
    for i in range(m - 1, 0, -2):
        out *= i
    return out


@lru_cache(maxsize=None)
def _weighted(exponents, N, beta):
    """<x^exponents * V> with unnormalized Gaussian moments; exponents sorted."""
    total = 0
    for e, c in vandermonde_power(N, beta).items():
        term = c
        for a, b in zip(exponents, e):
            term *= double_factorial_moment(a + b)
            if not term:
                break
        total += term
    return total


def gaussian_moment(mu, N, beta):
    """Normalized expectation <p_mu> in the Gaussian beta-ensemble."""
    mu = canonical(mu)
    beta = _check(N, beta, sum(mu))
    if sum(mu) % 2:
        return Fraction(0)
    norm = _weighted((0,) * N, N, beta)
    total = 0
    for e, c in _power_sum_poly(mu, N).items():
        total += c * _weighted(tuple(sorted(e)), N, beta)
    return Fraction(total, norm)


@dataclass
class MomentTable:
    N: int
    beta: int
    max_weight: int
    moments: dict = field(default_factory=dict)

    def to_json(self):
        return {"N": self.N, "beta": self.beta, "max_weight": self.max_weight,
                "moments": [{"partition": list(mu), "value": format_fraction(v)}
                            for mu, v in sorted(self.moments.items(), key=lambda kv: (sum(kv[0]), [-x for x in kv[0]]))]}


def build_moment_table(N, beta, max_weight):
    table = MomentTable(N, _check(N, beta, max_weight), max_weight)
    for w in range(max_weight + 1):
        for mu in enumerate_partitions(w):
            table.moments[tuple(mu)] = gaussian_moment(mu, N, table.beta)
    return table


# --- truncated series in the times t_k -----------------------------------------

@dataclass
class TruncatedSeries:
    """Polynomial in t_1, t_2, ... keyed by multi-index partitions, exact up to ``weight``."""

    weight: int
    coeffs: SymFun

    def __getitem__(self, kappa):
        return self.coeffs[canonical(kappa)]

    def to_p_variables(self):
        """Rewrite with t_k = p_k / k."""
        out = {}
        for kappa, c in self.coeffs.terms.items():
            d = 1
            for k in kappa:
                d *= k
            out[kappa] = c / d
        return SymFun(out)


def _automorphisms(kappa):
    out = 1
    for k in set(kappa):
        out *= factorial(kappa.count(k))
    return out


def build_Z_series(N, beta, d):
    """Z(t)/Z(0) = <exp(sum t_k p_k(x))> through weight d."""
    table = build_moment_table(N, beta, d)
    return TruncatedSeries(d, SymFun({mu: v / _automorphisms(mu) for mu, v in table.moments.items()}))


def build_Ln_t(n, beta, N, shifted=False):
    """L_n as a differential operator in the times t_k (d/dt_0 acts as N)."""
    if n < -1:
        raise ValueError("L_n is defined for n >= -1")
    beta, N = as_fraction(beta), as_fraction(N)

    def schema(d):
        for k in range(1, d + 2):
            j = k + n
            if 1 <= j <= d:
                yield (Fraction(k), (k,), (j,))
            elif j == 0:
                yield (k * N, (k,), ())
        for a in range(1, n):
            b = n - a
            if a <= b:
                yield (beta * (1 if a == b else 2), (), (a, b))
        if n >= 1:
            yield ((1 - beta) * (n + 1) + 2 * beta * N, (), (n,))
        if n == 0:
            yield (beta * N * N + (1 - beta) * N, (), ())
        if shifted:
            yield (Fraction(-1), (), (n + 2,))

    return NOOperator(schema=schema, degree=None if shifted else -n, name=f"L{n}[t]")


def _exact_weight(op, series_weight):
    shifts = op.shifts_for(series_weight)
    lowest = min(shifts) if shifts else 0
    return min(series_weight, series_weight + lowest)


def apply_operator_to_series(op, series):
    """Apply ``op`` and keep only the coefficients that the truncation determines."""
    exact = _exact_weight(op, series.weight)
    image = apply(op, series.coeffs).truncate(exact)
    return TruncatedSeries(exact, image)


def apply_Ln_to_series(n, beta, N, series, shifted=True):
    return apply_operator_to_series(build_Ln_t(n, beta, N, shifted), series)


def _witnesses(series, limit=5):
    return [{"monomial": list(k), "coeff": format_fraction(c)} for k, c in series.coeffs.items()[:limit]]


def verify_virasoro(N, beta, d, n_range=range(-1, 5), shifted=True):
    """Every coefficient of L_n Z of weight <= d must vanish."""
    n_range = list(n_range)
    Z = build_Z_series(N, beta, d + max(n_range) + 2)
    checks = []
    for n in n_range:
        out = apply_Ln_to_series(n, beta, N, Z, shifted)
        checked = TruncatedSeries(min(d, out.weight), out.coeffs.truncate(d))
        entry = {"n": n, "checked_weight": checked.weight, "status": "pass" if not checked.coeffs else "fail"}
        if checked.coeffs:
            entry["witnesses"] = _witnesses(checked)
        checks.append(entry)
    return {"suite": "virasoro", "N": N, "beta": beta, "d": d, "shifted": shifted,
            "passed": all(c["status"] == "pass" for c in checks), "checks": checks}


# --- cubic W-constraint ----------------------------------------------------------

def gaussian_shift_operator():
    """1/2 sum_n n p_n (-d/dt_{n+2}) = -1/2 sum_n n (n+2) p_n d/dp_{n+2}."""
    def schema(d):
        for n in range(1, d - 1):
            yield (Fraction(-n * (n + 2), 2), (n,), (n + 2,))
    return NOOperator(schema=schema, degree=-2, name="shift")


def build_W0_beta_shifted(beta, N):
    """The explicit cubic operator with the Gaussian shift transported to p-variables."""
    return linear_combination([(1, build_W0_beta(beta, N)), (1, gaussian_shift_operator())],
                              name="W0beta+shift")


def rational_sqrt(q):
    q = as_fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a != q.numerator or b * b != q.denominator:
        raise ValueError(f"{q} is not the square of a rational")
    return Fraction(a, b)


def background_charge(beta):
    """Q_b = (b - 1/b) / 2 with b = sqrt(beta); beta must be a rational square."""
    b = rational_sqrt(beta)
    return (b - 1 / b) / 2


def central_charge(beta):
    return 1 - 12 * background_charge(beta) ** 2


def compare_operators(a, b, max_degree):
    """Terms (with |annihilate| <= max_degree) where the two operators differ."""
    ta, tb = a.table_for(max_degree), b.table_for(max_degree)
    diffs = []
    for key in sorted(set(ta) | set(tb)):
        ca, cb = ta.get(key, Fraction(0)), tb.get(key, Fraction(0))
        if ca != cb:
            diffs.append({"create": list(key[0]), "annihilate": list(key[1]),
                          "left": format_fraction(ca), "right": format_fraction(cb)})
    return diffs


def verify_W0_constraint(N, beta, d, qb_betas=(1, 4, 9)):
    """Checks around W0^(beta) Z = 0.

    * ``from_L_shifted``: 1/2 sum n p_n L_n (shifted) annihilates Z through weight d.
    * ``explicit``: the explicit cubic operator plus transported Gaussian shift on Z.
    * ``def_from_L``: explicit operator against 1/2 sum n p_n L_n, term by term.
    * ``background_charge``: (1 - beta)/2 = -sqrt(beta) Q_b on perfect squares.
    """
    Z = build_Z_series(N, beta, d + 2)
    Zp = TruncatedSeries(Z.weight, Z.to_p_variables())
    checks = []

    out = apply_operator_to_series(build_W0_from_L(beta, N, shifted=True), Zp)
    checked = out.coeffs.truncate(d)
    checks.append({"check": "from_L_shifted", "status": "pass" if not checked else "fail",
                   "witnesses": _witnesses(TruncatedSeries(d, checked))})

    out = apply_operator_to_series(build_W0_beta_shifted(beta, N), Zp)
    checked = out.coeffs.truncate(d)
    checks.append({"check": "explicit", "status": "pass" if not checked else "fail",
                   "witnesses": _witnesses(TruncatedSeries(d, checked))})

    diffs = compare_operators(build_W0_beta(beta, N), build_W0_from_L(beta, N), d)
    checks.append({"check": "def_from_L", "status": "pass" if not diffs else "fail",
                   "differing_terms": len(diffs), "witnesses": diffs[:5]})

    bad = [b for b in qb_betas if Fraction(1 - as_fraction(b), 2) != -rational_sqrt(b) * background_charge(b)]
    checks.append({"check": "background_charge", "status": "pass" if not bad else "fail",
                   "betas": [format_fraction(as_fraction(b)) for b in qb_betas]})

    return {"suite": "w0constraint", "N": N, "beta": beta, "d": d,
            "passed": all(c["status"] == "pass" for c in checks), "checks": checks}
