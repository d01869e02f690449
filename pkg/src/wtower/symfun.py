"""Symmetric functions as sparse exact combinations of power sums p_lambda."""

import re
from fractions import Fraction
from functools import lru_cache

from .partitions import Partition, canonical, enumerate_partitions, z_factor
from . import linalg


def as_fraction(x):
    """Exact rational from int, Fraction, or a ``"num/den"`` string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def format_fraction(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class SymFun:
    """Finite sum of c_lambda p_lambda with nonzero rational c_lambda.

    Keys are plain tuples in partition order.  Instances are treated as
    immutable; arithmetic returns new objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for lam, c in (terms or {}).items():
            c = as_fraction(c)
            if c != 0:
                key = tuple(lam)
                clean[key] = clean.get(key, Fraction(0)) + c
                if clean[key] == 0:
                    del clean[key]
        self.terms = clean

    @classmethod
    def p(cls, *parts, coeff=1):
        return cls({canonical(parts): coeff})

    @classmethod
    def v(cls, *parts, coeff=1):
        """The normalized basis vector p_lambda / z_lambda."""
        lam = canonical(parts)
        return cls({lam: Fraction(coeff) / z_factor(lam)})

    @classmethod
    def one(cls):
        return cls({(): 1})

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, SymFun) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, lam):
        return self.terms.get(tuple(lam), Fraction(0))

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))

    def __add__(self, other):
        out = dict(self.terms)
        for lam, c in other.terms.items():
            s = out.get(lam, 0) + c
            if s:
                out[lam] = s
            else:
                out.pop(lam, None)
        return SymFun._raw(out)

    def __neg__(self):
        return SymFun._raw({lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_fraction(c)
        if c == 0:
            return SymFun()
        return SymFun._raw({lam: c * x for lam, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SymFun):
            return self.scale(other)
        out = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = canonical(a + b)
                s = out.get(key, 0) + ca * cb
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return SymFun._raw(out)

    __rmul__ = scale

    def degrees(self):
        return sorted({sum(lam) for lam in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def homogeneous_part(self, n):
        return SymFun._raw({lam: c for lam, c in self.terms.items() if sum(lam) == n})

    def truncate(self, max_degree):
        return SymFun._raw({lam: c for lam, c in self.terms.items() if sum(lam) <= max_degree})

    def __repr__(self):
        return f"SymFun({format_symfun(self)!r})"

    def __str__(self):
        return format_symfun(self)


def hall_inner(f, g, alpha=1):
    """<p_lam, p_mu> = delta z_lam alpha^len(lam), extended bilinearly."""
    alpha = as_fraction(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    total = Fraction(0)
    small, big = (f, g) if len(f) <= len(g) else (g, f)
    for lam, c in small.terms.items():
        d = big.terms.get(lam)
        if d is not None:
            total += c * d * z_factor(lam) * alpha ** len(lam)
    return total


def normalized_basis_coords(f):
    """Coordinates in v_lambda = p_lambda / z_lambda."""
    return {lam: c * z_factor(lam) for lam, c in f.items()}


def from_normalized_coords(coords):
    return SymFun({lam: Fraction(c) / z_factor(tuple(lam)) for lam, c in coords.items()})


# --- monomial basis ----------------------------------------------------------

@lru_cache(maxsize=None)
def _count_fillings(parts, capacities):
    """Number of maps parts -> capacity slots with every slot filled exactly."""
    if not parts:
        return int(all(c == 0 for c in capacities))
    first, rest = parts[0], parts[1:]
    total = 0
    for i, cap in enumerate(capacities):
        if cap >= first:
            new = list(capacities)
            new[i] -= first
            total += _count_fillings(rest, tuple(sorted(new, reverse=True)))
    return total


def power_to_monomial(mu, lam):
    """Coefficient of m_lam in the expansion of p_mu."""
    if sum(mu) != sum(lam):
        return 0
    return _count_fillings(tuple(mu), tuple(lam))


@lru_cache(maxsize=None)
def _transition(n):
    parts = [tuple(p) for p in enumerate_partitions(n)]
    p_to_m = [[Fraction(power_to_monomial(mu, lam)) for lam in parts] for mu in parts]
    m_to_p = linalg.inverse(p_to_m)
    return parts, p_to_m, m_to_p


def to_monomial_basis(f):
    """Coordinates of a homogeneous ``f`` in the monomial basis m_lambda."""
    degs = f.degrees()
    if len(degs) > 1:
        raise ValueError(f"input is not homogeneous (degrees {degs})")
    if not degs:
        return {}
    parts, p_to_m, _ = _transition(degs[0])
    index = {lam: i for i, lam in enumerate(parts)}
    out = {}
    for mu, c in f.terms.items():
        row = p_to_m[index[mu]]
        for j, lam in enumerate(parts):
            if row[j]:
                out[lam] = out.get(lam, 0) + c * row[j]
    return {Partition(lam): c for lam, c in out.items() if c != 0}


def monomial(lam):
    """The monomial symmetric function m_lam in power-sum coordinates."""
    lam = tuple(lam)
    n = sum(lam)
    parts, _, m_to_p = _transition(n)
    row = m_to_p[parts.index(lam)]
    return SymFun({mu: row[j] for j, mu in enumerate(parts)})


def from_monomial_basis(coords):
    out = SymFun()
    for lam, c in coords.items():
        out = out + monomial(lam).scale(c)
    return out


# --- text and JSON forms -----------------------------------------------------

_TERM = re.compile(r"^(?:(?P<coeff>[0-9]+(?:/[0-9]+)?)\s*\*?\s*)?(?P<basis>[pv])\[(?P<parts>[0-9,\s]*)\]$")


def parse_symfun(text):
    """Parse expressions like ``"3/2*p[2,1] - p[4] + 2*v[1,1]"``.

    A bare rational is a multiple of p[] (the constant 1).
    """
    src = re.sub(r"\s+", "", text)
    if not src:
        raise ValueError("empty expression")
    pieces = re.findall(r"[+-]?[^+-]+", src)
    if "".join(pieces) != src:
        raise ValueError(f"malformed expression: {text!r}")
    out = SymFun()
    for piece in pieces:
        sign = -1 if piece.startswith("-") else 1
        body = piece.lstrip("+-")
        if re.fullmatch(r"[0-9]+(?:/[0-9]+)?", body):
            out = out + SymFun.one().scale(sign * Fraction(body))
            continue
        m = _TERM.match(body)
        if not m:
            raise ValueError(f"malformed term {piece!r} in {text!r}")
        coeff = Fraction(m.group("coeff") or 1) * sign
        parts = [int(x) for x in m.group("parts").split(",") if x]
        if any(x <= 0 for x in parts):
            raise ValueError(f"non-positive part in {piece!r}")
        term = SymFun.v(*parts) if m.group("basis") == "v" else SymFun.p(*parts)
        out = out + term.scale(coeff)
    return out


def format_symfun(f, basis="p"):
    if not f.terms:
        return "0"
    chunks = []
    for lam, c in f.items():
        if basis == "v":
            c = c * z_factor(lam)
        label = f"{basis}[{','.join(map(str, lam))}]"
        mag = abs(c)
        body = label if mag == 1 else f"{format_fraction(mag)}*{label}"
        sign = "-" if c < 0 else "+"
        chunks.append((sign, body))
    first_sign, first = chunks[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text


def symfun_to_json(f):
    return [{"partition": list(lam), "coeff": format_fraction(c)} for lam, c in f.items()]


def symfun_from_json(data):
    return SymFun({canonical(item["partition"]): Fraction(item["coeff"]) for item in data})
