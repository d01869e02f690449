"""Jack polynomials P_lambda^(alpha) by Gram-Schmidt in dominance order."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .operators import apply, build_cut, build_D, build_join, linear_combination
from .partitions import content_sum, dominates, enumerate_partitions, n_statistic
from .symfun import as_fraction, format_fraction, hall_inner, monomial, symfun_to_json, to_monomial_basis


class JackSingularError(ArithmeticError):
    """Gram-Schmidt hit a zero-norm pivot at this alpha."""

    def __init__(self, alpha, pivot):
        super().__init__(f"alpha = {alpha} is singular: zero norm at pivot {list(pivot)}")
        self.alpha = alpha
        self.pivot = pivot


def dominance_order(n):
    """Partitions of n, smallest first; reverse lexicographic order reversed."""
    return list(reversed(enumerate_partitions(n)))


def alternative_dominance_order(n):
    """Another linear extension of dominance: by decreasing n(lambda), ties lexicographic."""
    return sorted(enumerate_partitions(n), key=lambda lam: (-n_statistic(lam), tuple(lam)))


@dataclass
class JackBasis:
    n: int
    alpha: Fraction
    vectors: dict = field(default_factory=dict)

    def __getitem__(self, lam):
        return self.vectors[tuple(lam)]

    def norms(self):
        return {lam: hall_inner(P, P, self.alpha) for lam, P in self.vectors.items()}

    def to_json(self):
        return {"n": self.n, "alpha": format_fraction(self.alpha),
                "vectors": [{"partition": list(lam), "p_coords": symfun_to_json(P)}
                            for lam, P in sorted(self.vectors.items(), reverse=True)]}


def build_jack(n, alpha, order=None):
    """Monic P_lambda^(alpha) for lambda |- n, orthogonalizing m_lambda along ``order``."""
    alpha = as_fraction(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    order = tuple(tuple(lam) for lam in (order or dominance_order(n)))
    basis = _build_jack(n, alpha, order)
    return JackBasis(n, alpha, dict(basis.vectors))


@lru_cache(maxsize=256)
def _build_jack(n, alpha, order):
    done = []
    vectors = {}
    for lam in order:
        v = monomial(lam)
        for mu, P, norm in done:
            v = v - P.scale(hall_inner(v, P, alpha) / norm)
        norm = hall_inner(v, v, alpha)
        if norm == 0:
            raise JackSingularError(alpha, lam)
        done.append((tuple(lam), v, norm))
        vectors[tuple(lam)] = v
    return JackBasis(n, alpha, vectors)


def is_monic_triangular(basis):
    for lam, P in basis.vectors.items():
        coords = to_monomial_basis(P)
        if coords.get(lam) != 1:
            return False
        if any(not dominates(lam, mu) for mu in coords):
            return False
    return True


def beta_deformed_operator(beta):
    """beta C + J + (1 - beta)/2 D, the N-independent part of W0^(beta)."""
    beta = as_fraction(beta)
    return linear_combination([(beta, build_cut()), (1, build_join()), ((1 - beta) / 2, build_D())],
                              name="W0beta(N=0)")


def eigenvalue(op, P):
    """Scalar e with op(P) = e P, or None if P is not an eigenvector."""
    image = apply(op, P)
    lam, c = next(iter(P.terms.items()))
    e = image[lam] / c
    return e if image == P.scale(e) else None


def verify_jack_diagonality(n, beta, alpha=None):
    """Diagonality of beta C + J + (1-beta)/2 D on P^(alpha); alpha defaults to 1/beta."""
    beta = as_fraction(beta)
    alpha = 1 / beta if alpha is None else as_fraction(alpha)
    op = beta_deformed_operator(beta)
    basis = build_jack(n, alpha)
    checks = []
    for lam in enumerate_partitions(n):
        e = eigenvalue(op, basis[lam])
        entry = {"partition": list(lam), "eigenvalue": None if e is None else format_fraction(e),
                 "status": "pass" if e is not None else "fail"}
        if beta == 1 and e is not None and e != content_sum(lam):
            entry["status"] = "fail"
            entry["content_sum"] = content_sum(lam)
        checks.append(entry)
    return {"suite": "jack", "n": n, "beta": format_fraction(beta), "alpha": format_fraction(alpha),
            "passed": all(c["status"] == "pass" for c in checks), "checks": checks}


def discover_alpha(n, beta):
    """Which of alpha = 1/beta, alpha = beta makes the operator diagonal at degree n."""
    beta = as_fraction(beta)
    found = []
    for label, alpha in (("1/beta", 1 / beta), ("beta", beta)):
        try:
            if verify_jack_diagonality(n, beta, alpha)["passed"]:
                found.append(label)
        except JackSingularError:
            pass
    return found
