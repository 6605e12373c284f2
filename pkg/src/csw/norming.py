"""Recursive norming families over a construction scheme.

Two family variants are built bottom-up along the scheme's decomposition
tree.  Writing F = F_0 u ... u F_{n-1} for the canonical pieces, R for the
root, and phi_i for the increasing bijection F_0 -> F_i:

Alternating variant ("eps"): each set F carries one functional h_a per
position a in F,

  a in R:          h_a = spread of h_a^{F_0} over all pieces
  a in F_0 - R:    h_a = h_a^{F_0} + eps * sum_{i>=2} (-1)^i   phi_i(h_a^{F_0}) off F_0
  d in F_1 - R:    h_d = phi_1(h_a^{F_0}) + eps * sum_{i>=2} (-1)^{i+1} phi_i(h_a^{F_0}) off F_0
                   (a the F_0-position with phi_1(a) = d)
  a in F_j - R,
  j >= 2:          h_a = copy of h_a^{F_j}

Singletons carry the unit functional.  The result is a biorthogonal-style
system: h_a(a) = 1, h_a vanishes below a, and |h_a(b)| <= eps off the
diagonal.

Scaled-cut variant ("k"): H_F is the closure of the unit vectors e_a (a in F)
together with the spreads of the first piece's family, under the operations

  g  ->  (1/K) * (g restricted below d)   for every d in F, and
  g  ->  (1/K) * g,

with the total scaling exponent capped at `scale_cap`.  Singleton families
are {K^-j e_a : j <= scale_cap}.  Cuts compose into single cuts, so every
functional is K^-j times a cut of a base shape and the closure is finite.

Norms: |x| = max |<f, x>| over f in H_F, where F is the minimal-rank scheme
set containing supp(x) ("local" mode; coherence makes the choice of F
irrelevant).  "all" mode maxes over every functional of every set instead;
the two genuinely differ and both are exposed.

Construction is single-threaded bottom-up (ranks depend on the rank below);
families are immutable afterwards and norm evaluation is pure, so built
values are safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import (
    EmptyFamilyError,
    HomeMismatchError,
    NotInSchemeError,
    ParameterOutOfRangeError,
    WrongSpaceKindError,
)
from .schemes import Scheme, SchemeSet, position_map, scheme_from_json, scheme_to_json
from .vectors import SparseVector, format_rational, pair, parse_rational

EPS_KIND = "eps"
K_KIND = "k"

RULE_UNIT = "unit"
RULE_ROOT_SPREAD = "root_spread"
RULE_FIRST_ALT = "first_alternating"
RULE_SECOND_ALT = "second_alternating"
RULE_COPY = "copy"
RULE_SPREAD = "spread"
RULE_SCALED_CUT = "scaled_cut"

EPS_FORM_OF_RULE = {
    RULE_ROOT_SPREAD: 1,
    RULE_FIRST_ALT: 2,
    RULE_SECOND_ALT: 3,
    RULE_COPY: 4,
}


@dataclass(frozen=True)
class Origin:
    rule: str
    rank: int
    alpha: int | None = None
    cut: int | None = None
    exponent: int = 0

    def to_json(self):
        out = {"rule": self.rule, "rank": self.rank}
        if self.alpha is not None:
            out["alpha"] = self.alpha
        if self.cut is not None:
            out["cut"] = self.cut
        if self.exponent:
            out["exponent"] = self.exponent
        return out

    @classmethod
    def from_json(cls, obj):
        return cls(rule=obj["rule"], rank=obj["rank"], alpha=obj.get("alpha"),
                   cut=obj.get("cut"), exponent=obj.get("exponent", 0))


@dataclass(frozen=True)
class Functional:
    vector: SparseVector
    home: SchemeSet
    origins: tuple

    @property
    def origin(self) -> Origin:
        return self.origins[0]

    @property
    def exponent(self) -> int:
        return min(o.exponent for o in self.origins)

    def label(self) -> str:
        o = self.origin
        bits = [o.rule]
        if o.alpha is not None:
            bits.append(f"a{o.alpha}")
        if o.cut is not None:
            bits.append(f"cut{o.cut}")
        if o.exponent:
            bits.append(f"exp{o.exponent}")
        return "/".join(bits)


@dataclass
class NormingFamily:
    scheme: Scheme
    space_kind: str
    parameter: Fraction
    families: dict  # SchemeSet -> list[Functional]
    scale_cap: int = 1

    @property
    def top_functionals(self):
        return self.families[self.scheme.top]

    def functionals_for(self, s: SchemeSet):
        try:
            return self.families[s]
        except KeyError:
            raise NotInSchemeError(f"no family attached to {s}") from None

    def all_functionals(self):
        for level in self.scheme.levels:
            for s in level:
                yield from self.families.get(s, ())


@dataclass(frozen=True)
class GlobalDual:
    alpha: int
    vector: SparseVector


def spread(scheme: Scheme, f: Functional, F: SchemeSet) -> Functional:
    """Extend a first-piece functional to all pieces of F via the increasing
    bijections; well-defined because each bijection fixes the root."""
    children = scheme.decomposition.get(F)
    if not children:
        raise NotInSchemeError(f"{F} has no decomposition to spread over")
    if f.home != children[0]:
        raise HomeMismatchError(
            f"functional lives on {f.home}, expected first piece {children[0]}")
    vec = _spread_vector(f.vector, children)
    origin = Origin(rule=RULE_SPREAD, rank=F.rank, alpha=f.origin.alpha,
                    exponent=f.exponent)
    return Functional(vector=vec, home=F, origins=(origin,))


def _spread_vector(vec: SparseVector, children) -> SparseVector:
    first = set(children[0].elements)
    total = dict(vec.items())
    for child in children[1:]:
        fwd = position_map(children[0], child).forward
        for p, v in vec.items():
            q = fwd[p]
            if q not in first:
                total[q] = v
    return SparseVector(total.items())


def build_eps_family(scheme: Scheme, eps) -> NormingFamily:
    """Bottom-up construction of the alternating families for every scheme set."""
    eps = parse_rational(eps)
    if not (0 < eps < 1):
        raise ParameterOutOfRangeError(f"eps must lie in (0, 1), got {eps}")
    families = {}
    by_alpha = {}
    for s in scheme.levels[0]:
        a = s.elements[0]
        f = Functional(SparseVector.unit(a), s, (Origin(RULE_UNIT, 0, alpha=a),))
        families[s] = [f]
        by_alpha[s] = {a: f}
    for k in range(1, scheme.depth + 1):
        for F in scheme.levels[k]:
            children = scheme.decomposition[F]
            first = children[0]
            lookup = by_alpha[first]
            root = set(F.root)
            maps = [position_map(first, c) for c in children]
            off_first = [set(c.elements) - set(first.elements) for c in children]
            fam, amap = [], {}
            for a in F.elements:
                if a in root:
                    base = lookup[a].vector
                    vec = _spread_vector(base, children)
                    origin = Origin(RULE_ROOT_SPREAD, k, alpha=a)
                elif a in first:
                    base = lookup[a].vector
                    vec = base
                    for i in range(2, len(children)):
                        sign = Fraction(1) if i % 2 == 0 else Fraction(-1)
                        part = maps[i].transport(base).restrict_to(off_first[i])
                        vec = vec + part.scale(sign * eps)
                    origin = Origin(RULE_FIRST_ALT, k, alpha=a)
                elif a in children[1]:
                    source = maps[1].inverse().apply(a)
                    base = lookup[source].vector
                    vec = maps[1].transport(base)
                    for i in range(2, len(children)):
                        sign = Fraction(-1) if i % 2 == 0 else Fraction(1)
                        part = maps[i].transport(base).restrict_to(off_first[i])
                        vec = vec + part.scale(sign * eps)
                    origin = Origin(RULE_SECOND_ALT, k, alpha=a)
                else:
                    home_child = next(c for c in children[2:] if a in c)
                    vec = by_alpha[home_child][a].vector
                    origin = Origin(RULE_COPY, k, alpha=a)
                f = Functional(vec, F, (origin,))
                fam.append(f)
                amap[a] = f
            families[F] = fam
            by_alpha[F] = amap
    return NormingFamily(scheme=scheme, space_kind=EPS_KIND, parameter=eps,
                         families=families, scale_cap=0)


def build_K_family(scheme: Scheme, K, scale_cap=1) -> NormingFamily:
    """Bottom-up construction of the scaled-cut families for every scheme set."""
    K = parse_rational(K)
    if K <= 1:
        raise ParameterOutOfRangeError(f"K must exceed 1, got {K}")
    if scale_cap < 1:
        raise ParameterOutOfRangeError(f"scale_cap must be >= 1, got {scale_cap}")
    inv = Fraction(1) / K
    families = {}
    for s in scheme.levels[0]:
        a = s.elements[0]
        fam = []
        for j in range(scale_cap + 1):
            vec = SparseVector.unit(a).scale(inv ** j)
            fam.append(Functional(vec, s, (Origin(RULE_UNIT, 0, alpha=a, exponent=j),)))
        families[s] = fam
    for k in range(1, scheme.depth + 1):
        for F in scheme.levels[k]:
            children = scheme.decomposition[F]
            first = children[0]
            pool = {}

            def register(vec, origin):
                """Track the functional; True when new or its exponent dropped."""
                known = pool.get(vec)
                if known is None:
                    pool[vec] = Functional(vec, F, (origin,))
                    return True
                if origin in known.origins:
                    return False
                improved = origin.exponent < known.exponent
                pool[vec] = replace(known, origins=known.origins + (origin,))
                return improved

            for a in F.elements:
                register(SparseVector.unit(a), Origin(RULE_UNIT, k, alpha=a))
            for f in families[first]:
                vec = _spread_vector(f.vector, children)
                register(vec, Origin(RULE_SPREAD, k, alpha=f.origin.alpha,
                                     exponent=f.exponent))
            cuts = list(F.elements) + [None]
            queue = [f.vector for f in pool.values()]
            while queue:
                source = pool[queue.pop()]
                e = source.exponent
                if e >= scale_cap:
                    continue
                for cut in cuts:
                    vec = source.vector if cut is None else source.vector.restrict_below(cut)
                    if vec.is_zero():
                        continue
                    vec = vec.scale(inv)
                    if register(vec, Origin(RULE_SCALED_CUT, k, cut=cut, exponent=e + 1)):
                        queue.append(vec)
            fam = sorted(pool.values(),
                         key=lambda f: (f.exponent, f.vector.support, tuple(f.vector.items())))
            families[F] = fam
    return NormingFamily(scheme=scheme, space_kind=K_KIND, parameter=K,
                         families=families, scale_cap=scale_cap)


def norm(x: SparseVector, family: NormingFamily, mode="local") -> Fraction:
    """max |<f, x>|, with f ranging over the minimal covering set's family
    ("local", the default) or over every functional ("all")."""
    if mode not in ("local", "all"):
        raise ValueError("mode must be 'local' or 'all'")
    if x.is_zero():
        return Fraction(0)
    if mode == "all":
        functionals = list(family.all_functionals())
    else:
        site = family.scheme.minimal_containing(x.support)
        functionals = family.functionals_for(site)
    if not functionals:
        raise EmptyFamilyError("no functionals available to evaluate the norm")
    return max(abs(pair(f.vector, x)) for f in functionals)


def global_dual(family: NormingFamily, alpha: int) -> GlobalDual:
    """The top set's functional at `alpha`: the maximal coherent extension."""
    if family.space_kind != EPS_KIND:
        raise WrongSpaceKindError("global duals exist only for the alternating variant")
    top = family.scheme.top
    if alpha not in top:
        raise NotInSchemeError(f"{alpha} is outside the universe")
    for f in family.functionals_for(top):
        if f.origin.alpha == alpha:
            return GlobalDual(alpha=alpha, vector=f.vector)
    raise EmptyFamilyError(f"no functional indexed by {alpha} at the top set")


# ---------------------------------------------------------------------------
# JSON serialization

def family_to_json(family: NormingFamily) -> dict:
    scheme = family.scheme
    payload = {}
    for k, level in enumerate(scheme.levels):
        for i, s in enumerate(level):
            fam = family.families.get(s)
            if fam is None:
                continue
            entries = []
            for f in fam:
                entry = {"vec": f.vector.to_json(), "origin": f.origin.to_json()}
                if len(f.origins) > 1:
                    entry["merged"] = [o.to_json() for o in f.origins[1:]]
                entries.append(entry)
            payload[f"{k}:{i}"] = entries
    return {
        "space": family.space_kind,
        "param": format_rational(family.parameter),
        "scale_cap": family.scale_cap,
        "scheme": scheme_to_json(scheme),
        "families": payload,
    }


def family_from_json(obj) -> NormingFamily:
    scheme = scheme_from_json(obj["scheme"])
    families = {}
    for key, entries in obj["families"].items():
        s = scheme.set_by_id(key)
        fam = []
        for entry in entries:
            origins = [Origin.from_json(entry["origin"])]
            origins += [Origin.from_json(o) for o in entry.get("merged", ())]
            fam.append(Functional(SparseVector.from_json(entry["vec"]), s,
                                  tuple(origins)))
        families[s] = fam
    return NormingFamily(
        scheme=scheme,
        space_kind=obj["space"],
        parameter=parse_rational(obj["param"]),
        families=families,
        scale_cap=int(obj.get("scale_cap", 0)),
    )


def family_dumps(family: NormingFamily) -> str:
    return json.dumps(family_to_json(family), sort_keys=True, indent=2)


def family_loads(text: str) -> NormingFamily:
    return family_from_json(json.loads(text))
