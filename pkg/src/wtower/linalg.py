"""Small exact linear algebra over ``Fraction``.

Matrices are lists of row lists.  Sizes here never exceed p(10) = 42, so
plain Gauss-Jordan elimination is adequate.
"""

from fractions import Fraction


class SingularMatrixError(ArithmeticError):
    pass


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(cols)]
        for i in range(len(a))
    ]


def transpose(a):
    return [list(row) for row in zip(*a)] if a else []


def inverse(a):
    n = len(a)
    aug = [[Fraction(x) for x in row] + e for row, e in zip(a, identity(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError(f"singular matrix at column {col}")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def is_diagonal(a):
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(len(a[i])) if i != j)


def scalar_matrix(c, n):
    return [[Fraction(c) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
