"""Normally ordered differential operators on C[p_1, p_2, ...].

A term ``c * p_mu * d_nu`` stands for c p_{mu_1}...p_{mu_r} d/dp_{nu_1}...d/dp_{nu_s}
with every derivative to the right.  Infinite sums such as the cut-and-join
operator are *schemas*: a rule that, for an input degree d, lists the finitely
many terms that can act nontrivially on degree-d input (those with |nu| <= d).
Products and commutators are computed by Wick contraction inside an explicit
degree window and returned as finite operators valid on that window.
"""

import threading
from collections import Counter, namedtuple
from fractions import Fraction
from math import comb

from .partitions import canonical, enumerate_partitions
from .symfun import SymFun, as_fraction, format_fraction

NOTerm = namedtuple("NOTerm", "coeff create annihilate")


class WindowError(ValueError):
    """Raised when a degree window cannot support a requested product."""


def _falling(m, k):
    out = 1
    for i in range(k):
        out *= m - i
    return out


def _merge(target, key, c):
    s = target.get(key, 0) + c
    if s:
        target[key] = s
    else:
        target.pop(key, None)


class NOOperator:
    """A normally ordered operator, either finite or schema-generated.

    ``valid_up_to`` is None for operators that are exact on every degree; a
    finite operator produced by ``compose`` is only guaranteed on inputs of
    degree <= ``valid_up_to``.
    """

    def __init__(self, terms=None, schema=None, degree=None, valid_up_to=None, name=None):
        if (terms is None) == (schema is None) and terms is not None:
            raise ValueError("give either terms or schema, not both")
        self.name = name
        self.valid_up_to = valid_up_to
        self._schema = schema
        self._cache = {}
        self._lock = threading.Lock()
        if schema is None:
            table = {}
            for t in terms or ():
                key = (canonical(t[1]), canonical(t[2]))
                _merge(table, key, as_fraction(t[0]))
            self._table = table
        else:
            self._table = None
        self._degree = degree

    # -- term access ----------------------------------------------------------

    @property
    def is_schema(self):
        return self._schema is not None

    def table_for(self, d):
        """Dict (create, annihilate) -> coeff of terms with |annihilate| <= d."""
        if self._table is not None:
            return {k: c for k, c in self._table.items() if sum(k[1]) <= d}
        with self._lock:
            hit = self._cache.get(d)
            if hit is None:
                hit = {}
                for c, mu, nu in self._schema(d):
                    key = (canonical(mu), canonical(nu))
                    if sum(key[1]) <= d:
                        _merge(hit, key, as_fraction(c))
                self._cache[d] = hit
        return hit

    def terms_for(self, d):
        return [NOTerm(c, mu, nu) for (mu, nu), c in sorted(self.table_for(d).items())]

    def instantiate(self, d):
        """The finite operator agreeing with this one on inputs of degree <= d."""
        return NOOperator(terms=[(c, mu, nu) for (mu, nu), c in self.table_for(d).items()],
                          degree=self._degree, valid_up_to=d if self.valid_up_to is None
                          else min(d, self.valid_up_to), name=self.name)

    @property
    def terms(self):
        if self._table is None:
            raise TypeError("schema operator has no finite term list; use terms_for(d)")
        return [NOTerm(c, mu, nu) for (mu, nu), c in sorted(self._table.items())]

    def degree(self, probe=8):
        """Common degree shift |mu| - |nu| of all terms, or None if inhomogeneous."""
        if self._table is None and self._degree is not None:
            return self._degree
        shifts = {sum(mu) - sum(nu) for mu, nu in self.table_for(
            probe if self._table is None else 10**9)}
        if len(shifts) == 1:
            return shifts.pop()
        return 0 if not shifts else None

    def shifts_for(self, d):
        return {sum(mu) - sum(nu) for mu, nu in self.table_for(d)}

    def __repr__(self):
        label = self.name or ("schema" if self.is_schema else f"{len(self._table)} terms")
        return f"NOOperator({label})"

    # -- arithmetic -----------------------------------------------------------

    def __call__(self, f):
        return apply(self, f)

    def scale(self, c):
        return linear_combination([(c, self)], name=self.name)

    def __add__(self, other):
        return linear_combination([(1, self), (1, other)])

    def __sub__(self, other):
        return linear_combination([(1, self), (-1, other)])

    def __neg__(self):
        return self.scale(-1)


def linear_combination(pairs, name=None):
    """sum c_i * op_i; stays a schema when any component is a schema."""
    pairs = [(as_fraction(c), op) for c, op in pairs]
    degs = {op._degree for _, op in pairs}
    degree = degs.pop() if len(degs) == 1 else None
    bounds = [op.valid_up_to for _, op in pairs if op.valid_up_to is not None]
    valid = min(bounds) if bounds else None
    if all(not op.is_schema for _, op in pairs):
        table = {}
        for c, op in pairs:
            for key, x in op._table.items():
                _merge(table, key, c * x)
        return NOOperator(terms=[(x, mu, nu) for (mu, nu), x in table.items()],
                          degree=degree, valid_up_to=valid, name=name)

    def schema(d):
        table = {}
        for c, op in pairs:
            for key, x in op.table_for(d).items():
                _merge(table, key, c * x)
        return [(x, mu, nu) for (mu, nu), x in table.items()]

    return NOOperator(schema=schema, degree=degree, valid_up_to=valid, name=name)


# --- application ---------------------------------------------------------------

def _apply_homogeneous(table, f_terms):
    by_nu = {}
    for (mu, nu), c in table.items():
        by_nu.setdefault(nu, []).append((mu, c))
    out = {}
    for lam, x in f_terms:
        counts = Counter(lam)
        for nu, creators in by_nu.items():
            need = Counter(nu)
            factor = 1
            for k, r in need.items():
                factor *= _falling(counts.get(k, 0), r)
                if not factor:
                    break
            if not factor:
                continue
            rest = list(lam)
            for k in nu:
                rest.remove(k)
            for mu, c in creators:
                key = canonical(rest + list(mu)) if mu else tuple(rest)
                _merge(out, key, x * c * factor)
    return out


def apply(op, f):
    """Exact image of the symmetric function ``f``."""
    by_degree = {}
    for lam, c in f.terms.items():
        by_degree.setdefault(sum(lam), []).append((lam, c))
    out = {}
    for d, items in by_degree.items():
        if op.valid_up_to is not None and d > op.valid_up_to:
            raise WindowError(f"operator valid up to degree {op.valid_up_to}, input has degree {d}")
        for key, c in _apply_homogeneous(op.table_for(d), items).items():
            _merge(out, key, c)
    return SymFun._raw(out)


# --- composition ---------------------------------------------------------------

def _wick(ta, tb):
    """Normal-ordered expansion of (c_a p_mua d_nua) o (c_b p_mub d_nub)."""
    (ca, mua, nua), (cb, mub, nub) = ta, tb
    na, mb = Counter(nua), Counter(mub)
    common = [k for k in na if k in mb]
    choices = [()]
    for k in common:
        top = min(na[k], mb[k])
        choices = [prev + ((k, j),) for prev in choices for j in range(top + 1)]
    out = []
    for choice in choices:
        coeff = ca * cb
        rest_nua = list(nua)
        rest_mub = list(mub)
        for k, j in choice:
            coeff *= comb(na[k], j) * _falling(mb[k], j)
            for _ in range(j):
                rest_nua.remove(k)
                rest_mub.remove(k)
        out.append((coeff, canonical(list(mua) + rest_mub), canonical(rest_nua + list(nub))))
    return out


def compose(a, b, max_degree):
    """Finite normally ordered form of a o b, exact on inputs of degree <= max_degree."""
    if max_degree < 0:
        raise WindowError("degree window must be non-negative")
    if b.valid_up_to is not None and b.valid_up_to < max_degree:
        raise WindowError(f"right factor valid only up to degree {b.valid_up_to} < {max_degree}")
    tb = b.table_for(max_degree)
    top = max_degree + max((sum(mu) - sum(nu) for mu, nu in tb), default=0)
    if a.valid_up_to is not None and a.valid_up_to < top:
        raise WindowError(
            f"left factor valid only up to degree {a.valid_up_to}; intermediate degree reaches {top}")
    ta = a.table_for(max(top, 0))
    table = {}
    for (mua, nua), ca in ta.items():
        for (mub, nub), cb in tb.items():
            for c, mu, nu in _wick((ca, mua, nua), (cb, mub, nub)):
                if sum(nu) <= max_degree:
                    _merge(table, (mu, nu), c)
    da, db = a._degree, b._degree
    degree = da + db if da is not None and db is not None else None
    return NOOperator(terms=[(c, mu, nu) for (mu, nu), c in table.items()],
                      degree=degree, valid_up_to=max_degree)


def commutator(a, b, max_degree):
    """[a, b] = a o b - b o a, normally ordered on the window."""
    ab = compose(a, b, max_degree)
    ba = compose(b, a, max_degree)
    out = linear_combination([(1, ab), (-1, ba)])
    out.valid_up_to = max_degree
    return out


def agree_on_window(a, b, max_degree, min_degree=0):
    """First p_lambda with a(p_lambda) != b(p_lambda), or None if they agree."""
    for n in range(min_degree, max_degree + 1):
        for lam in enumerate_partitions(n):
            f = SymFun.p(*lam)
            if apply(a, f) != apply(b, f):
                return lam
    return None


# --- named builders ------------------------------------------------------------

def mult_p(k):
    """Multiplication by p_k."""
    return NOOperator(terms=[(1, (k,), ())], degree=k, name=f"p{k}")


def deriv_p(k):
    return NOOperator(terms=[(1, (), (k,))], degree=-k, name=f"d{k}")


def identity_op():
    return NOOperator(terms=[(1, (), ())], degree=0, name="1")


def build_cut():
    """C = 1/2 sum (a+b) p_a p_b d_{a+b}."""
    def schema(d):
        for s in range(2, d + 1):
            for a in range(1, s // 2 + 1):
                b = s - a
                yield (Fraction(a + b) if a != b else Fraction(a), (a, b), (s,))
    return NOOperator(schema=schema, degree=0, name="C")


def build_join():
    """J = 1/2 sum ab p_{a+b} d_a d_b."""
    def schema(d):
        for s in range(2, d + 1):
            for a in range(1, s // 2 + 1):
                b = s - a
                yield (Fraction(a * b) if a != b else Fraction(a * a, 2), (s,), (a, b))
    return NOOperator(schema=schema, degree=0, name="J")


def _diagonal(weight, name):
    def schema(d):
        for k in range(1, d + 1):
            w = weight(k)
            if w:
                yield (w, (k,), (k,))
    return NOOperator(schema=schema, degree=0, name=name)


def build_D():
    """D = sum (k-1) k p_k d_k."""
    return _diagonal(lambda k: Fraction((k - 1) * k), "D")


def build_E():
    """E = sum k p_k d_k, the grading operator."""
    return _diagonal(lambda k: Fraction(k), "E")


def build_W2():
    """The cut-and-join operator W_[2] = C + J."""
    return linear_combination([(1, build_cut()), (1, build_join())], name="W2")


def build_E1():
    """E_1 = sum m p_{m+1} d_m."""
    def schema(d):
        for m in range(1, d + 1):
            yield (Fraction(m), (m + 1,), (m,))
    return NOOperator(schema=schema, degree=1, name="E1")


def build_W0_beta(beta, N):
    """beta C + J + (1 - beta)/2 D + beta N E."""
    beta, N = as_fraction(beta), as_fraction(N)
    return linear_combination(
        [(beta, build_cut()), (1, build_join()), ((1 - beta) / 2, build_D()), (beta * N, build_E())],
        name="W0beta")


def build_W1_display():
    """sum (k+l-1) p_k p_l d_{k+l-1} + sum kl p_{k+l+1} d_k d_l, summed over ordered (k, l)."""
    def schema(d):
        for k in range(1, d + 1):
            for l in range(1, d + 2 - k):
                yield (Fraction(k + l - 1), (k, l), (k + l - 1,))
                if k + l <= d:
                    yield (Fraction(k * l), (k + l + 1,), (k, l))
    return NOOperator(schema=schema, degree=1, name="W1display")


def build_Ln_beta(n, beta, N, shifted=False):
    """Virasoro generator L_n in p-variables (t_k = p_k / k, d/dt_k = k d/dp_k).

    The zero mode d/dt_0 acts as N.  For n = 0 the a = b = 0 and k = 0 pieces
    combine into the constant beta N^2 + (1 - beta) N.  ``shifted`` appends
    the Gaussian term -d/dt_{n+2}.
    """
    if n < -1:
        raise ValueError("L_n is defined for n >= -1")
    beta, N = as_fraction(beta), as_fraction(N)

    def schema(d):
        for k in range(1, d + 2):
            j = k + n
            if j >= 1 and j <= d:
                yield (Fraction(j), (k,), (j,))
            elif j == 0:
                yield (N, (k,), ())
        for a in range(1, n):
            b = n - a
            if a <= b:
                yield ((beta * a * b) * (1 if a == b else 2), (), (a, b))
        if n >= 1:
            yield (((1 - beta) * (n + 1) + 2 * beta * N) * n, (), (n,))
        if n == 0:
            yield (beta * N * N + (1 - beta) * N, (), ())
        if shifted:
            yield (Fraction(-(n + 2)), (), (n + 2,))

    return NOOperator(schema=schema, degree=None if shifted else -n, name=f"L{n}")


def build_W0_from_L(beta, N, shifted=False):
    """1/2 sum_{n>=1} n p_n L_n, with p_n placed to the left (already normal)."""
    Ls = {}

    def schema(d):
        for n in range(1, d + 1):
            L = Ls.setdefault(n, build_Ln_beta(n, beta, N, shifted))
            for (mu, nu), c in L.table_for(d).items():
                yield (c * n / 2, mu + (n,), nu)

    return NOOperator(schema=schema, degree=None if shifted else 0, name="W0fromL")


def hierarchy(n, max_degree):
    """W^(1) = [W_[2], E_1]; W^(n) = ad_{W^(1)}^{n-1}(E_1), valid on degrees <= max_degree."""
    if n < 1:
        raise ValueError("hierarchy index must be >= 1")
    if max_degree < 0:
        raise WindowError("degree window must be non-negative")
    w1 = commutator(build_W2(), build_E1(), max_degree + n - 1)
    if n == 1:
        return _restrict(w1, max_degree)
    current = build_E1()
    for level in range(2, n + 1):
        current = commutator(w1, current, max_degree + n - level)
    return current


def _restrict(op, max_degree):
    out = op.instantiate(max_degree)
    out.valid_up_to = max_degree
    return out


# --- serialization ---------------------------------------------------------------

def operator_to_json(op, max_degree=None):
    if op.is_schema and max_degree is None:
        raise ValueError("schema operators need a degree bound to serialize")
    table = op.table_for(max_degree if max_degree is not None else 10**9)
    rows = sorted(table.items(), key=lambda kv: (sum(kv[0][1]), kv[0][1], sum(kv[0][0]), kv[0][0]))
    return [{"coeff": format_fraction(c), "create": list(mu), "annihilate": list(nu)}
            for (mu, nu), c in rows]


def operator_from_json(data, valid_up_to=None):
    return NOOperator(terms=[(Fraction(t["coeff"]), tuple(t["create"]), tuple(t["annihilate"]))
                             for t in data], valid_up_to=valid_up_to)


def verify_hierarchy(max_degree=10, levels=4, level_window=6):
    """[W_[2], p_1] = E_1, [W_[2], E_1] = the W^(1) display, and deg W^(n) = n."""
    checks = []
    W = build_W2()
    for label, lhs, rhs in (("[W2,p1]=E1", commutator(W, mult_p(1), max_degree + 1), build_E1()),
                            ("[W2,E1]=W1", commutator(W, build_E1(), max_degree + 1), build_W1_display())):
        witness = agree_on_window(lhs, rhs, max_degree)
        entry = {"check": label, "window": max_degree, "status": "pass" if witness is None else "fail"}
        if witness is not None:
            entry["witness"] = list(witness)
        checks.append(entry)
    for n in range(1, levels + 1):
        op = hierarchy(n, level_window)
        deg = op.degree()
        checks.append({"check": "degree", "level": n, "window": level_window, "terms": len(op.terms),
                       "degree": deg, "status": "pass" if deg == n else "fail"})
    return {"suite": "hierarchy", "max_degree": max_degree,
            "passed": all(c["status"] == "pass" for c in checks), "checks": checks}
