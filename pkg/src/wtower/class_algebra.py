"""The center of C[S_n]: class sums, the characteristic map, ladders, JM lifting.

Permutations are tuples ``s`` of images of 0..n-1, composed right to left:
``(x * y)[i] = x[y[i]]``.  Group-algebra elements are dicts perm -> Fraction;
central elements are stored in the class-sum basis.
"""

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .operators import apply, build_E1, build_W2
from .partitions import Partition, canonical, class_size, enumerate_partitions, z_factor
from .symfun import SymFun, format_fraction, symfun_to_json

MAX_N = 8


class CapExceeded(ValueError):
    pass


def _check_cap(n, cap=MAX_N):
    if n > cap:
        raise CapExceeded(f"n = {n} exceeds the enumeration cap {cap}")


# --- permutations ----------------------------------------------------------------

def perm_mul(x, y):
    return tuple(x[i] for i in y)


def perm_inv(x):
    out = [0] * len(x)
    for i, xi in enumerate(x):
        out[xi] = i
    return tuple(out)


def transposition(i, j, n):
    """The transposition swapping the 1-based letters i and j in S_n."""
    s = list(range(n))
    s[i - 1], s[j - 1] = s[j - 1], s[i - 1]
    return tuple(s)


def cycle_type(s):
    seen = [False] * len(s)
    lengths = []
    for start in range(len(s)):
        if not seen[start]:
            length, i = 0, start
            while not seen[i]:
                seen[i] = True
                i = s[i]
                length += 1
            lengths.append(length)
    return canonical(lengths)


@lru_cache(maxsize=None)
def conjugacy_classes(n):
    """Dict cycle type -> tuple of permutations, for S_n."""
    _check_cap(n)
    classes = {}
    for s in permutations(range(n)):
        classes.setdefault(cycle_type(s), []).append(s)
    return {lam: tuple(v) for lam, v in classes.items()}


class PermGroupContext:
    """S_n with its conjugacy classes, built once and read-only afterwards."""

    def __init__(self, n):
        _check_cap(n)
        self.n = n
        self.classes = conjugacy_classes(n)

    @property
    def order(self):
        return sum(len(c) for c in self.classes.values())

    def elements(self):
        for lam in enumerate_partitions(self.n):
            yield from self.classes[tuple(lam)]

    def classify(self, s):
        return Partition(cycle_type(s))


# --- central elements -----------------------------------------------------------

class CentralElement:
    """sum_lambda c_lambda K_lambda in Z(C[S_n])."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=None):
        self.n = n
        clean = {}
        for lam, c in (coeffs or {}).items():
            lam = canonical(lam)
            if sum(lam) != n:
                raise ValueError(f"{list(lam)} is not a partition of {n}")
            c = Fraction(c)
            if c:
                clean[lam] = clean.get(lam, 0) + c
        self.coeffs = {k: v for k, v in clean.items() if v}

    @classmethod
    def class_sum(cls, lam):
        lam = canonical(lam)
        return cls(sum(lam), {lam: 1})

    @classmethod
    def transposition_sum(cls, n):
        if n < 2:
            return cls(n)
        return cls.class_sum((2,) + (1,) * (n - 2))

    def __eq__(self, other):
        return isinstance(other, CentralElement) and self.n == other.n and self.coeffs == other.coeffs

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("central elements of different S_n")
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, 0) + c
        return CentralElement(self.n, out)

    def scale(self, c):
        return CentralElement(self.n, {lam: x * c for lam, x in self.coeffs.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, CentralElement):
            return class_multiply(self, other)
        return self.scale(other)

    def __repr__(self):
        if not self.coeffs:
            return f"CentralElement(n={self.n}, 0)"
        body = " + ".join(f"{format_fraction(c)}*K{list(lam)}" for lam, c in sorted(self.coeffs.items(), reverse=True))
        return f"CentralElement(n={self.n}, {body})"

    def to_json(self):
        return {"n": self.n, "coeffs": [{"partition": list(lam), "coeff": format_fraction(c)}
                                        for lam, c in sorted(self.coeffs.items(), reverse=True)]}


@lru_cache(maxsize=None)
def structure_constants(lam, mu):
    """Dict nu -> c with K_lam K_mu = sum c K_nu, by enumeration."""
    n = sum(lam)
    classes = conjugacy_classes(n)
    out = {}
    for nu, members in classes.items():
        z = members[0]
        count = 0
        for x in classes[lam]:
            if cycle_type(perm_mul(perm_inv(x), z)) == mu:
                count += 1
        if count:
            out[nu] = count
    return out


def class_multiply(a, b):
    if a.n != b.n:
        raise ValueError(f"cannot multiply elements of S_{a.n} and S_{b.n}")
    _check_cap(a.n)
    out = {}
    for lam, ca in a.coeffs.items():
        for mu, cb in b.coeffs.items():
            for nu, c in structure_constants(lam, mu).items():
                out[nu] = out.get(nu, 0) + ca * cb * c
    return CentralElement(a.n, out)


def characteristic_map(z, normalized=True):
    """K_lam -> p_lam / z_lam (normalized) or K_lam -> p_lam."""
    return SymFun({lam: (c / z_factor(lam) if normalized else c) for lam, c in z.coeffs.items()})


def inverse_characteristic_map(f, n, normalized=True):
    out = {}
    for lam, c in f.terms.items():
        if sum(lam) != n:
            raise ValueError(f"term p{list(lam)} is not of degree {n}")
        out[lam] = c * z_factor(lam) if normalized else c
    return CentralElement(n, out)


# --- group-algebra level maps ---------------------------------------------------

def expand(z):
    """The group-algebra element of a central element."""
    classes = conjugacy_classes(z.n)
    out = {}
    for lam, c in z.coeffs.items():
        for s in classes[lam]:
            out[s] = out.get(s, 0) + c
    return out


def embed(x):
    """l_n: C[S_n] -> C[S_{n+1}], fixing the new letter n+1."""
    return {s + (len(s),): c for s, c in x.items()}


def central_projection(x, n):
    """pi(x) = (1/n!) sum_g g x g^{-1}, read off in class sums."""
    totals = {}
    for s, c in x.items():
        lam = cycle_type(s)
        totals[lam] = totals.get(lam, 0) + c
    return CentralElement(n, {lam: Fraction(t) / class_size(lam) for lam, t in totals.items()})


def jucys_murphy(m):
    """J_m = sum_{i<m} (i, m) in C[S_m]."""
    return {transposition(i, m, m): Fraction(1) for i in range(1, m)}


def group_multiply(x, y):
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            s = perm_mul(a, b)
            out[s] = out.get(s, 0) + ca * cb
    return {s: c for s, c in out.items() if c}


def raising_map(z, rescale=True):
    """r_n(z) = pi_{n+1}(l_n(z)), multiplied by (n+1) when ``rescale``."""
    _check_cap(z.n + 1)
    out = central_projection(embed(expand(z)), z.n + 1)
    return out.scale(z.n + 1) if rescale else out


def jm_lifting(z, rescale=True):
    """T_n(z) = pi_{n+1}(J_{n+1} l_n(z)), multiplied by (n+1) when ``rescale``."""
    _check_cap(z.n + 1)
    m = z.n + 1
    out = central_projection(group_multiply(jucys_murphy(m), embed(expand(z))), m)
    return out.scale(m) if rescale else out


def centered_ladder(z, w0_factor=1, rescale=True):
    """E(z) = w0^(n+1) r_n(z) - r_n(w0^(n) z) with w0 = w0_factor * K_[2]."""
    _check_cap(z.n + 1)
    w_next = CentralElement.transposition_sum(z.n + 1).scale(w0_factor)
    w_here = CentralElement.transposition_sum(z.n).scale(w0_factor)
    left = class_multiply(w_next, raising_map(z, rescale))
    right = raising_map(class_multiply(w_here, z) if z.n >= 2 else CentralElement(z.n), rescale)
    return left - right


# --- verification suites --------------------------------------------------------

def verify_cutjoin_intertwining(n, normalized=True):
    """Phi(K_[2] K_lam) against W_[2] Phi(K_lam) for every lam |- n."""
    _check_cap(n, 7)
    W = build_W2()
    K2 = CentralElement.transposition_sum(n)
    checks = []
    for lam in enumerate_partitions(n):
        z = CentralElement.class_sum(lam)
        lhs = characteristic_map(class_multiply(K2, z) if n >= 2 else CentralElement(n), normalized)
        rhs = apply(W, characteristic_map(z, normalized))
        entry = {"partition": list(lam), "status": "pass" if lhs == rhs else "fail"}
        if lhs != rhs:
            entry["lhs"] = symfun_to_json(lhs)
            entry["rhs"] = symfun_to_json(rhs)
        checks.append(entry)
    return {"suite": "cutjoin", "n": n, "normalized": normalized,
            "passed": all(c["status"] == "pass" for c in checks), "checks": checks}


def verify_ladder(n, normalized=True):
    """Phi_{n+1}(E z) = E_1 Phi_n(z) and E = T_n (JM lifting) on class sums of S_n."""
    E1 = build_E1()
    checks = []
    for lam in enumerate_partitions(n):
        z = CentralElement.class_sum(lam)
        ladder = centered_ladder(z)
        lifted = jm_lifting(z)
        lhs = characteristic_map(ladder, normalized)
        rhs = apply(E1, characteristic_map(z, normalized))
        ok = lhs == rhs and ladder == lifted
        entry = {"partition": list(lam), "status": "pass" if ok else "fail",
                 "intertwines": lhs == rhs, "ladder_equals_jm": ladder == lifted}
        if not ok:
            entry["lhs"] = symfun_to_json(lhs)
            entry["rhs"] = symfun_to_json(rhs)
        checks.append(entry)
    return {"suite": "ladder", "n": n, "normalized": normalized,
            "passed": all(c["status"] == "pass" for c in checks), "checks": checks}


def count_factorizations(mu, r, max_n=5, max_r=6):
    """Number of r-tuples of transpositions whose product has cycle type mu."""
    mu = canonical(mu)
    n = sum(mu)
    if n > max_n or r > max_r:
        raise CapExceeded(f"n = {n}, r = {r} exceed caps ({max_n}, {max_r})")
    if r < 0:
        raise ValueError("r must be non-negative")
    taus = [transposition(i, j, n) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    # distribution of ordered products, built one factor at a time
    dist = Counter({tuple(range(n)): 1})
    for _ in range(r):
        nxt = Counter()
        for s, c in dist.items():
            for t in taus:
                nxt[perm_mul(s, t)] += c
        dist = nxt
    return sum(c for s, c in dist.items() if cycle_type(s) == mu)


def count_factorizations_bruteforce(mu, r):
    """Direct enumeration of all r-tuples; only for small oracle checks."""
    mu = canonical(mu)
    n = sum(mu)
    taus = [transposition(i, j, n) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    total = 0
    for word in product(taus, repeat=r):
        s = tuple(range(n))
        for t in word:
            s = perm_mul(s, t)
        total += cycle_type(s) == mu
    return total


def factorization_tally_bruteforce(n, r):
    """Cycle-type tally of the products of all r-tuples of transpositions in S_n.

    Every word is visited individually (depth-first, sharing prefixes), so
    this is an independent oracle for ``count_factorizations``.
    """
    taus = [transposition(i, j, n) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    tally = Counter()

    def walk(s, depth):
        if depth == r:
            tally[cycle_type(s)] += 1
            return
        for t in taus:
            walk(perm_mul(s, t), depth + 1)

    walk(tuple(range(n)), 0)
    return tally


def verify_hurwitz(n, r):
    """[v_mu] W_[2]^r v_{1^n} * |C_mu| against transposition-factorization counts."""
    W = build_W2()
    f = SymFun.v(*([1] * n))
    checks = []
    for power in range(r + 1):
        for mu in enumerate_partitions(n):
            coeff = f[mu] * z_factor(tuple(mu))
            predicted = coeff * class_size(mu)
            counted = count_factorizations(mu, power)
            checks.append({"partition": list(mu), "r": power, "operator": format_fraction(predicted),
                           "count": counted, "status": "pass" if predicted == counted else "fail"})
        f = apply(W, f)
    return {"suite": "hurwitz", "n": n, "r": r,
            "passed": all(c["status"] == "pass" for c in checks), "checks": checks}


def verify_jm_lifting(n, normalized=True):
    """Phi_{n+1}(T_n z) = E_1 Phi_n(z) for the Jucys-Murphy lifting alone."""
    E1 = build_E1()
    checks = []
    for lam in enumerate_partitions(n):
        z = CentralElement.class_sum(lam)
        lhs = characteristic_map(jm_lifting(z), normalized)
        rhs = apply(E1, characteristic_map(z, normalized))
        entry = {"partition": list(lam), "status": "pass" if lhs == rhs else "fail"}
        if lhs != rhs:
            entry["lhs"] = symfun_to_json(lhs)
            entry["rhs"] = symfun_to_json(rhs)
        checks.append(entry)
    return {"suite": "jm", "n": n, "normalized": normalized,
            "passed": all(c["status"] == "pass" for c in checks), "checks": checks}
