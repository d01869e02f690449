"""Torus-fixed-point data on Hilb^n(C^2) and the Fock transport of operators.

The fixed-point classes [lambda] are represented on the symmetric-function
side through the Fock isomorphism as rescaled Jack polynomials

    [lambda] = P_lambda^(a) / (c_lambda <P_lambda, P_lambda>_a),
    a = -eps1/eps2,  c_lambda = prod_s (a * arm(s) + leg(s) + 1),

and the localized pairing <[lambda], [mu]> = delta / e(T_lambda) is the
power-sum form <p_lambda, p_mu> = delta z_lambda prod_i w_{lambda_i} with
w_k = (-1)^(k+1) eps1 / eps2^(2k+1).  Creation operators act as
alpha_{-k} = (eps2^k / eps1) p_k and alpha_k = (-1)^(k-1) alpha_{-k}^dagger.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .jack import build_jack
from .operators import NOOperator, apply, build_W2, mult_p
from .partitions import arm_leg, boxes, enumerate_partitions, z_factor
from .symfun import SymFun, as_fraction, format_fraction

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EquivParams:
    eps1: Fraction
    eps2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps1", as_fraction(self.eps1))
        object.__setattr__(self, "eps2", as_fraction(self.eps2))
        if self.eps1 == 0 or self.eps2 == 0:
            raise ValueError("equivariant parameters must be nonzero")
        if self.self_dual:
            log.warning("eps1 + eps2 = 0: self-dual point (Q_b = 0)")

    @property
    def self_dual(self):
        return self.eps1 + self.eps2 == 0

    @property
    def jack_alpha(self):
        return -self.eps1 / self.eps2

    def weight(self, a, b):
        return a * self.eps1 + b * self.eps2


@dataclass(frozen=True)
class FixedPointData:
    partition: tuple
    tangent_weights: tuple
    taut_weights: tuple
    euler_tangent: Fraction

    def to_json(self):
        return {"partition": list(self.partition),
                "tangent_weights": [format_fraction(w) for w in self.tangent_weights],
                "taut_weights": [format_fraction(w) for w in self.taut_weights],
                "euler_tangent": format_fraction(self.euler_tangent)}


def tangent_weight_vectors(lam):
    """Integer pairs (a, b) meaning a*eps1 + b*eps2, two per box."""
    out = []
    for box in boxes(lam):
        arm, leg = arm_leg(lam, box)
        out.append((arm + 1, -leg))
        out.append((-arm, leg + 1))
    return out


def taut_weight_vectors(lam):
    """Box (row i, col j) carries (j-1)*eps1 + (i-1)*eps2."""
    return [(j - 1, i - 1) for i, j in boxes(lam)]


def tangent_weights(lam, params):
    return [params.weight(a, b) for a, b in tangent_weight_vectors(lam)]


def taut_weights(lam, params):
    return [params.weight(a, b) for a, b in taut_weight_vectors(lam)]


def euler_tangent(lam, params):
    out = Fraction(1)
    for w in tangent_weights(lam, params):
        out *= w
    return out


def fixed_point_data(lam, params):
    return FixedPointData(tuple(lam), tuple(tangent_weights(lam, params)),
                          tuple(taut_weights(lam, params)), euler_tangent(lam, params))


# --- the localized pairing and the fixed-point basis ------------------------------

def part_weight(k, params):
    return (-1) ** (k + 1) * params.eps1 / params.eps2 ** (2 * k + 1)


def geometric_inner(f, g, params):
    total = Fraction(0)
    for lam, c in f.terms.items():
        d = g.terms.get(lam)
        if d is not None:
            w = Fraction(z_factor(lam))
            for k in lam:
                w *= part_weight(k, params)
            total += c * d * w
    return total


def hook_factor(lam, alpha):
    out = Fraction(1)
    for box in boxes(lam):
        arm, leg = arm_leg(lam, box)
        out *= alpha * arm + leg + 1
    return out


def fixed_point_basis(n, params):
    """Dict lambda -> [lambda] in power-sum coordinates."""
    return dict(_fixed_point_basis(n, params))


@lru_cache(maxsize=256)
def _fixed_point_basis(n, params):
    alpha = params.jack_alpha
    jack = build_jack(n, alpha)
    norms = jack.norms()
    out = {}
    for lam, P in jack.vectors.items():
        c = hook_factor(lam, alpha)
        if c == 0:
            raise ZeroDivisionError(f"hook factor vanishes for {list(lam)} at alpha = {alpha}")
        out[lam] = P.scale(1 / (c * norms[lam]))
    return out


# --- matrices in a basis ---------------------------------------------------------

def basis_vectors(n, basis, alpha=None, params=None):
    """Ordered list of (lambda, vector) for one of the supported bases."""
    parts = [tuple(lam) for lam in enumerate_partitions(n)]
    if basis in ("p", "power_sum"):
        return [(lam, SymFun.p(*lam)) for lam in parts]
    if basis in ("v", "normalized_v"):
        return [(lam, SymFun.v(*lam)) for lam in parts]
    if basis == "jack":
        jack = build_jack(n, alpha)
        return [(lam, jack[lam]) for lam in parts]
    if basis in ("fixed_point", "fp"):
        fp = fixed_point_basis(n, params)
        return [(lam, fp[lam]) for lam in parts]
    raise ValueError(f"unknown basis {basis!r}")


def coordinates(vectors, fs, n):
    """Coordinates of each f in ``fs`` with respect to ``vectors`` (degree n)."""
    parts = [tuple(lam) for lam in enumerate_partitions(n)]
    B = [[v[mu] for mu in parts] for _, v in vectors]
    rows = [[f[mu] for mu in parts] for f in fs]
    return linalg.matmul(rows, linalg.inverse(B))


@lru_cache(maxsize=256)
def _basis_inverse(n, basis, alpha, params):
    parts = [tuple(lam) for lam in enumerate_partitions(n)]
    return linalg.inverse([[v[mu] for mu in parts] for _, v in basis_vectors(n, basis, alpha, params)])


def matrix_in_basis(op, n, basis="v", alpha=None, params=None):
    """Rows: source lambda |- n; columns: target mu |- n + deg(op).

    Returns (row_labels, col_labels, matrix).
    """
    shift = op.degree()
    if shift is None:
        raise ValueError("operator is not homogeneous")
    src = basis_vectors(n, basis, alpha, params)
    m = n + shift
    if m < 0:
        return [lam for lam, _ in src], [], [[] for _ in src]
    alpha = None if alpha is None else as_fraction(alpha)
    targets = [tuple(lam) for lam in enumerate_partitions(m)]
    images = [apply(op, v) for _, v in src]
    rows = [[f[mu] for mu in targets] for f in images]
    mat = linalg.matmul(rows, _basis_inverse(m, basis, alpha, params))
    return [lam for lam, _ in src], targets, mat


def fixed_point_transport(op, n, params):
    _, _, mat = matrix_in_basis(op, n, "fixed_point", params=params)
    return mat


# --- Heisenberg relations in the fixed-point basis -------------------------------

@lru_cache(maxsize=256)
def creation_matrix(k, n, params):
    """alpha_{-k}: degree n -> n + k in fixed-point coordinates (rows = source)."""
    op = mult_p(k).scale(params.eps2 ** k / params.eps1)
    _, _, mat = matrix_in_basis(op, n, "fixed_point", params=params)
    return mat


def annihilation_matrix(k, n, params):
    """alpha_k: degree n + k -> n, (-1)^(k-1) times the adjoint of alpha_{-k}."""
    A = creation_matrix(k, n, params)
    src = [tuple(l) for l in enumerate_partitions(n)]
    dst = [tuple(l) for l in enumerate_partitions(n + k)]
    e_src = [euler_tangent(l, params) for l in src]
    e_dst = [euler_tangent(l, params) for l in dst]
    sign = (-1) ** (k - 1)
    return [[sign * e_src[i] * A[i][j] / e_dst[j] for i in range(len(src))] for j in range(len(dst))]


def _mode(m, n, params):
    """Matrix of alpha_m from degree n (None if the target degree is negative)."""
    if m < 0:
        return creation_matrix(-m, n, params)
    if n - m < 0:
        return None
    return annihilation_matrix(m, n - m, params)


def heisenberg_bracket(m, k, n, params):
    """[alpha_m, alpha_k] on degree n as a matrix (rows = source)."""
    def product(first, second):
        # apply alpha_first, then alpha_second
        A = _mode(first, n, params)
        if A is None:
            return None
        B = _mode(second, n - first, params)
        if B is None:
            return None
        return linalg.matmul(A, B)

    size_in = len(enumerate_partitions(n))
    target = n - m - k
    size_out = len(enumerate_partitions(target)) if target >= 0 else 0
    zero = [[Fraction(0)] * size_out for _ in range(size_in)]
    ab = product(k, m) or zero
    ba = product(m, k) or zero
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


def verify_heisenberg(params, cap_n=6, modes=None):
    """[alpha_m, alpha_{-m}] = m/(eps1 eps2) and mismatched brackets vanish."""
    if cap_n > 6:
        raise ValueError("cap_n must be <= 6")
    unit = 1 / (params.eps1 * params.eps2)
    checks = []
    modes = modes or [(m, -m) for m in range(1, cap_n + 1)] + [(2, -1), (1, -2), (3, -1)]
    for m, k in modes:
        for n in range(0, cap_n + 1):
            target = n - m - k
            if target < 0 or max(n, target) > cap_n:
                continue
            br = heisenberg_bracket(m, k, n, params)
            expected = linalg.scalar_matrix(m * unit, len(br)) if m + k == 0 else \
                [[Fraction(0)] * (len(br[0]) if br else 0) for _ in br]
            checks.append({"modes": [m, k], "degree": n, "status": "pass" if br == expected else "fail"})
    return {"suite": "heisenberg", "eps1": format_fraction(params.eps1), "eps2": format_fraction(params.eps2),
            "cap_n": cap_n, "passed": all(c["status"] == "pass" for c in checks), "checks": checks}


def pairing_matches_euler(n, params):
    """<[lambda], [mu]> = delta / e(T_lambda) for all lambda, mu |- n."""
    fp = fixed_point_basis(n, params)
    for lam, a in fp.items():
        for mu, b in fp.items():
            expected = 1 / euler_tangent(lam, params) if lam == mu else 0
            if geometric_inner(a, b, params) != expected:
                return False
    return True


def e1_heisenberg():
    """sum_m a_{-(m+1)} a_m with a_{-k} = p_k, a_k = k d/dp_k."""
    def schema(d):
        for m in range(1, d + 1):
            yield (Fraction(m), (m + 1,), (m,))
    return NOOperator(schema=schema, degree=1, name="E1geo")


# --- rim-hook cut/join graph -----------------------------------------------------

def rimhook_graph(n):
    """Vertices: partitions of n.  Edges: nonzero off-diagonal entries of W_[2] in v."""
    if n > 10:
        raise ValueError("graph cap is n <= 10")
    rows, cols, mat = matrix_in_basis(build_W2(), n, "v")
    edges = []
    for i, lam in enumerate(rows):
        for j, mu in enumerate(cols):
            if i != j and mat[i][j] != 0:
                edges.append({"source": list(lam), "target": list(mu), "value": format_fraction(mat[i][j]),
                              "channel": "cut" if len(mu) > len(lam) else "join"})
    return {"n": n, "vertices": [list(lam) for lam in rows], "edges": edges}


def graph_to_dot(graph):
    def name(lam):
        return '"(' + ",".join(map(str, lam)) + ')"'
    lines = [f"digraph W2_n{graph['n']} {{"]
    for lam in graph["vertices"]:
        lines.append(f"  {name(lam)};")
    for e in graph["edges"]:
        lines.append(f"  {name(e['source'])} -> {name(e['target'])} [label=\"{e['value']} ({e['channel']})\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
