"""Independent brute-force oracles used to cross-check the LP machinery.

Everything here is deliberately simplex-free: plain Gaussian elimination
over Fractions plus exhaustive vertex enumeration.  The gauge of the
symmetric hull conv(+-H) at g equals the support function of the polar
polytope {y : |<h, y>| <= 1}, so enumerating the polar's vertices and
maximizing <y, g> reproduces dual_norm by a completely different route.
"""

from fractions import Fraction
from itertools import combinations

from csw.vectors import SparseVector


def solve_square_system(rows, rhs):
    """Solve a square rational system exactly; None when singular."""
    n = len(rows)
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def matrix_rank(rows):
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = Fraction(1) / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [v - factor * w for v, w in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def polytope_vertices(constraint_rows, rhs, dim):
    """All vertices of {y : rows . y <= rhs} by exhaustive tight-set search."""
    vertices = []
    for combo in combinations(range(len(constraint_rows)), dim):
        rows = [constraint_rows[i] for i in combo]
        b = [rhs[i] for i in combo]
        point = solve_square_system(rows, b)
        if point is None:
            continue
        if all(sum(c * y for c, y in zip(row, point)) <= bound
               for row, bound in zip(constraint_rows, rhs)):
            if point not in vertices:
                vertices.append(point)
    return vertices


def gauge_oracle(g, H, dim):
    """dual_norm(g, H) recomputed as max <y, g> over the polar's vertices.

    H must span the dim-dimensional coordinate space (polar bounded).
    """
    rows, rhs = [], []
    for h in H:
        row = [h[p] for p in range(dim)]
        rows.append(row)
        rhs.append(Fraction(1))
        rows.append([-v for v in row])
        rhs.append(Fraction(1))
    best = Fraction(0)
    for vertex in polytope_vertices(rows, rhs, dim):
        value = sum(g[p] * vertex[p] for p in range(dim))
        if value > best:
            best = value
    return best


def random_fraction(rng, max_num=5, max_den=4, nonzero=False):
    while True:
        value = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        if value != 0 or not nonzero:
            return value


def random_norming_set(rng, dim, count=None):
    """Random rational vectors spanning the full dim-dimensional space."""
    count = count or rng.randint(dim, dim + 3)
    while True:
        H = []
        for _ in range(count):
            vec = SparseVector(
                (p, random_fraction(rng)) for p in range(dim))
            if not vec.is_zero():
                H.append(vec)
        if len(H) >= dim:
            rows = [[h[p] for p in range(dim)] for h in H]
            if matrix_rank(rows) == dim:
                return H


def random_span_member(rng, H, dim):
    g = SparseVector()
    for h in H:
        g = g + h.scale(random_fraction(rng, max_num=3, max_den=3))
    return g
