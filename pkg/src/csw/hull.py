"""Dual norms and symmetric convex hull membership, exactly.

For a finite norming set H the dual unit ball is conv(+-H).  The gauge of
that body at g,

    dual_norm(g, H) = min { sum |c_h| : g = sum c_h h },

is computed by an exact LP with the coefficients split into positive and
negative parts.  Membership in conv(+-H) is the test dual_norm <= 1.

`polar_support(g, H)` solves the dual program
max { <y, g> : |<y, h>| <= 1 for all h in H }; by LP duality its value equals
dual_norm(g, H) and the maximizer is a unit vector of the primal norm that
attains the gauge, which is what the basis-constant witness needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotInSpanError
from .simplex import EQ, GE, LE, LinearConstraint, simplex_solve
from .vectors import SparseVector, pair


def _positions(vectors):
    positions = set()
    for v in vectors:
        positions.update(v.support)
    return sorted(positions)


def dual_norm(g: SparseVector, H, with_certificate=True):
    """Minimal total coefficient mass expressing g over H.

    Returns (value, coefficients) where coefficients maps the index of each
    used functional to its (signed) coefficient.  Raises NotInSpanError when
    g is not a linear combination of H; the attached certificate is a vector
    y with <y, h> = 0 for every h in H but <y, g> > 0.
    """
    H = list(H)
    if g.is_zero():
        return Fraction(0), {}
    if not H:
        raise NotInSpanError("empty norming set cannot express a nonzero vector",
                             certificate=g)
    positions = _positions(H + [g])
    nvars = 2 * len(H)
    objective = [Fraction(1)] * nvars
    constraints = []
    for p in positions:
        row = []
        for h in H:
            val = h[p]
            row.append(val)
            row.append(-val)
        constraints.append(LinearConstraint(tuple(row), EQ, g[p]))
    sol = simplex_solve(objective, constraints, sense="min")
    if sol.status == "infeasible":
        farkas = sol.certificate["farkas"]
        witness = SparseVector(
            (p, y) for p, y in zip(positions, farkas) if y != 0
        )
        raise NotInSpanError("vector lies outside the span of the norming set",
                             certificate=witness)
    assert sol.status == "optimal"
    coeffs = {}
    if with_certificate:
        for i in range(len(H)):
            c = sol.primal[2 * i] - sol.primal[2 * i + 1]
            if c != 0:
                coeffs[i] = c
    return sol.objective, coeffs


@dataclass
class HullCertificate:
    member: bool
    mass: Fraction | None
    coefficients: dict | None
    outside_witness: SparseVector | None = None
    method: str = "lp"

    def __bool__(self):
        return self.member


def in_symmetric_hull(f: SparseVector, H, try_direct=True) -> HullCertificate:
    """Is f in conv(+-H)?  Always returns a checkable certificate.

    The direct path catches f proportional to a single member (the common
    case for coherent families); otherwise the gauge LP decides.
    """
    H = list(H)
    if f.is_zero():
        return HullCertificate(True, Fraction(0), {}, method="direct")
    if try_direct:
        support = f.support
        for i, h in enumerate(H):
            if h.support != support:
                continue
            lead = support[0]
            ratio = f[lead] / h[lead]
            if abs(ratio) <= 1 and f == h.scale(ratio):
                return HullCertificate(True, abs(ratio), {i: ratio}, method="direct")
    try:
        value, coeffs = dual_norm(f, H)
    except NotInSpanError as err:
        return HullCertificate(False, None, None,
                               outside_witness=err.certificate, method="lp")
    return HullCertificate(value <= 1, value, coeffs, method="lp")


def verify_decomposition(f: SparseVector, H, coefficients) -> bool:
    """Exact check that sum c_i H[i] == f and sum |c_i| <= 1."""
    total = SparseVector()
    mass = Fraction(0)
    for i, c in coefficients.items():
        total = total + H[i].scale(c)
        mass += abs(c)
    return total == f and mass <= 1


def polar_support(g: SparseVector, H, positions=None):
    """max <y, g> over the polar body {y : |<y,h>| <= 1 for all h in H}.

    Returns (value, y) with y a SparseVector on `positions` (defaults to the
    union of supports).  Requires g in span(H) so the program is bounded.
    """
    H = list(H)
    if positions is None:
        positions = _positions(H + [g])
    positions = list(positions)
    index = {p: j for j, p in enumerate(positions)}
    n = len(positions)
    objective = [g[p] for p in positions]
    constraints = []
    for h in H:
        row = [Fraction(0)] * n
        for p, v in h.items():
            row[index[p]] = v
        constraints.append(LinearConstraint(tuple(row), LE, Fraction(1)))
        constraints.append(LinearConstraint(tuple(row), GE, Fraction(-1)))
    sol = simplex_solve(objective, constraints, sense="max", free=range(n))
    if sol.status == "unbounded":
        raise NotInSpanError("polar program unbounded: vector outside span",
                             certificate=sol.certificate.get("ray"))
    assert sol.status == "optimal"
    y = SparseVector((p, v) for p, v in zip(positions, sol.primal) if v != 0)
    return sol.objective, y


def norming_max(x: SparseVector, H) -> Fraction:
    """max |<h, x>| over the finite norming set H."""
    best = Fraction(0)
    for h in H:
        v = abs(pair(h, x))
        if v > best:
            best = v
    return best
