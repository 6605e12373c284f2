"""Quantitative verification: biorthogonality, coherence, basis constants,
separation bounds, and the two capture experiments.

Every verdict is an exact rational comparison; reports carry the values, the
relation tested, and witnesses (LP decompositions where a hull membership or
dual norm was involved).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    CaptureUnavailableError,
    ConfigInvalidError,
    NotBiorthogonalError,
    NotInSpanError,
    PatternOutOfRangeError,
    WrongSpaceKindError,
)
from .hull import dual_norm, in_symmetric_hull, norming_max, polar_support
from .norming import (
    EPS_FORM_OF_RULE,
    EPS_KIND,
    K_KIND,
    NormingFamily,
    _spread_vector,
    global_dual,
    norm,
)
from .schemes import Scheme, SchemeSet, find_capture, make_captured_family, position_map
from .vectors import SparseVector, format_rational, pair

_REL_CHECK = {
    "==": lambda a, b: a == b,
    "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
}


@dataclass
class Claim:
    name: str
    lhs: Fraction
    relation: str
    rhs: Fraction
    passed: bool
    witness: dict | None = None
    vacuous: bool = False

    @classmethod
    def compare(cls, name, lhs, relation, rhs, witness=None, vacuous=False):
        ok = _REL_CHECK[relation](lhs, rhs)
        return cls(name=name, lhs=lhs, relation=relation, rhs=rhs,
                   passed=ok or vacuous, witness=witness, vacuous=vacuous)

    def to_json(self):
        out = {
            "name": self.name,
            "lhs": format_rational(self.lhs),
            "relation": self.relation,
            "rhs": format_rational(self.rhs),
            "pass": self.passed,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.vacuous:
            out["vacuous"] = True
        return out


@dataclass
class ExperimentReport:
    claims: list = field(default_factory=list)
    pairings: dict = field(default_factory=dict)
    norms: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def claim(self, name) -> Claim:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self):
        return {
            "pass": self.passed,
            "claims": [c.to_json() for c in self.claims],
            "pairings": {k: format_rational(v) for k, v in sorted(self.pairings.items())},
            "norms": {k: format_rational(v) for k, v in sorted(self.norms.items())},
            "meta": self.meta,
        }

    def to_csv_rows(self):
        rows = [["claim", "lhs", "relation", "rhs", "pass", "vacuous"]]
        for c in self.claims:
            rows.append([c.name, format_rational(c.lhs), c.relation,
                         format_rational(c.rhs), str(c.passed).lower(),
                         str(c.vacuous).lower()])
        return rows


# ---------------------------------------------------------------------------
# Biorthogonality

def check_biorthogonality(family: NormingFamily) -> ExperimentReport:
    """Diagonal pairings 1, vanishing below the index, off-diagonal <= eps.

    Runs over the full universe using the top set's functionals and reports
    the attained off-diagonal maximum with its witness pair.
    """
    if family.space_kind != EPS_KIND:
        raise WrongSpaceKindError("biorthogonality sweep applies to the alternating variant")
    eps = family.parameter
    universe = range(family.scheme.universe_size)
    report = ExperimentReport(meta={"eps": format_rational(eps)})
    diag_bad = None
    vanish_bad = None
    off_max = Fraction(0)
    witness = None
    for a in universe:
        h = global_dual(family, a).vector
        if h[a] != 1 and diag_bad is None:
            diag_bad = {"alpha": a, "value": format_rational(h[a])}
        for b, v in h.items():
            if b < a and v != 0 and vanish_bad is None:
                vanish_bad = {"alpha": a, "beta": b, "value": format_rational(v)}
            if b != a and abs(v) > off_max:
                off_max = abs(v)
                witness = {"alpha": a, "beta": b, "value": format_rational(v)}
        report.pairings[f"h{a}"] = h[a]
    report.claims.append(Claim(
        name="diagonal_is_one", lhs=Fraction(1), relation="==", rhs=Fraction(1),
        passed=diag_bad is None, witness=diag_bad))
    report.claims.append(Claim(
        name="vanishes_below_index", lhs=Fraction(0), relation="==", rhs=Fraction(0),
        passed=vanish_bad is None, witness=vanish_bad))
    report.claims.append(Claim.compare(
        "offdiagonal_bounded", off_max, "<=", eps, witness=witness))
    report.claims.append(Claim.compare(
        "offdiagonal_attained", off_max, "==", eps, witness=witness))
    report.meta["offdiagonal_max"] = format_rational(off_max)
    return report


# ---------------------------------------------------------------------------
# Basis constant by LP duality

@dataclass
class BasisConstantResult:
    value: Fraction
    cut: int
    functional_label: str
    coefficients: dict
    attaining: SparseVector
    skipped: list
    report: ExperimentReport


def basis_constant(family: NormingFamily) -> BasisConstantResult:
    """max over cut points d and functionals g of dual_norm(g restricted
    below d): the operator norm of the worst prefix projection.

    The attaining vector comes from the polar program of the winning cut, so
    |attaining| = 1 and |attaining restricted below d| equals the constant.
    """
    top = family.scheme.top
    functionals = family.functionals_for(top)
    H = [f.vector for f in functionals]
    labels = [f.label() for f in functionals]
    best = Fraction(0)
    best_at = (0, "", {}, SparseVector())
    skipped = []
    seen = set()
    for cut in range(family.scheme.universe_size + 1):
        for g, label in zip(H, labels):
            cut_vec = g.restrict_below(cut)
            if cut_vec in seen:
                continue
            seen.add(cut_vec)
            try:
                value, coeffs = dual_norm(cut_vec, H)
            except NotInSpanError as err:  # report the skip, do not abort
                skipped.append({"cut": cut, "functional": label, "reason": str(err)})
                continue
            if value > best:
                best = value
                best_at = (cut, label, coeffs, cut_vec)
    cut, label, coeffs, best_vec = best_at
    if best > 0:
        _, attaining = polar_support(best_vec, H)
    else:
        attaining = SparseVector()
    report = ExperimentReport(meta={
        "constant": format_rational(best),
        "cut": cut,
        "functional": label,
        "skipped": skipped,
    })
    report.claims.append(Claim.compare("prefix_constant_at_least_one",
                                       best, ">=", Fraction(1)))
    report.norms["constant"] = best
    return BasisConstantResult(value=best, cut=cut, functional_label=label,
                               coefficients=coeffs, attaining=attaining,
                               skipped=skipped, report=report)


# ---------------------------------------------------------------------------
# Coherence sweep

def nested_pairs(scheme: Scheme):
    """All ordered pairs (E, F) of scheme sets with E a proper subset of F."""
    sets = list(scheme.sets())
    for F in sets:
        big = set(F.elements)
        for E in sets:
            if E is not F and len(E) < len(F) and set(E.elements) <= big:
                yield E, F


def coherence_report(family: NormingFamily, lp_every=0) -> ExperimentReport:
    """Exact restriction coherence and hull-membership coherence.

    Restriction coherence (alternating variant only): for E inside F and a
    in E, the F-functional at a restricted to E equals the E-functional at a.
    Hull coherence (both variants): every F-functional restricted to E lies
    in conv(+-H_E), certified by explicit coefficients that are re-verified
    by reconstruction.  `lp_every` > 0 additionally forces every n-th
    instance through the raw LP path as a cross-check.
    """
    scheme = family.scheme
    report = ExperimentReport(meta={"kind": family.space_kind})
    restriction_bad = None
    restriction_count = 0
    hull_bad = None
    hull_count = 0
    lp_checked = 0
    instance = 0
    for E, F in nested_pairs(scheme):
        elems = set(E.elements)
        fam_E = family.functionals_for(E)
        fam_F = family.functionals_for(F)
        if family.space_kind == EPS_KIND:
            by_alpha = {f.origin.alpha: f.vector for f in fam_E}
            for f in fam_F:
                a = f.origin.alpha
                if a in elems:
                    restriction_count += 1
                    if f.vector.restrict_to(elems) != by_alpha[a]:
                        restriction_bad = restriction_bad or {
                            "E": str(E), "F": str(F), "alpha": a}
        vectors_E = [g.vector for g in fam_E]
        for f in fam_F:
            restricted = f.vector.restrict_to(elems)
            cert = in_symmetric_hull(restricted, vectors_E)
            hull_count += 1
            instance += 1
            ok = cert.member and _reconstructs(restricted, vectors_E, cert.coefficients)
            if ok and lp_every and instance % lp_every == 0 and cert.method == "direct":
                lp_cert = in_symmetric_hull(restricted, vectors_E, try_direct=False)
                lp_checked += 1
                ok = lp_cert.member and _reconstructs(restricted, vectors_E,
                                                      lp_cert.coefficients)
            if not ok and hull_bad is None:
                hull_bad = {"E": str(E), "F": str(F), "functional": f.label()}
    if family.space_kind == EPS_KIND:
        report.claims.append(Claim(
            name="restriction_coherence", lhs=Fraction(restriction_count),
            relation="==", rhs=Fraction(restriction_count),
            passed=restriction_bad is None, witness=restriction_bad))
    report.claims.append(Claim(
        name="hull_coherence", lhs=Fraction(hull_count), relation="==",
        rhs=Fraction(hull_count), passed=hull_bad is None, witness=hull_bad))
    report.meta.update({
        "restriction_instances": restriction_count,
        "hull_instances": hull_count,
        "lp_cross_checked": lp_checked,
    })
    return report


def _unique_label(used, label):
    if label not in used:
        used[label] = 0
        return label
    used[label] += 1
    return f"{label}#{used[label]}"


def _reconstructs(target, vectors, coefficients):
    if coefficients is None:
        return False
    total = SparseVector()
    mass = Fraction(0)
    for i, c in coefficients.items():
        total = total + vectors[i].scale(c)
        mass += abs(c)
    return total == target and mass <= 1


# ---------------------------------------------------------------------------
# Norm well-definedness sweep

def random_rational_vector(rng, universe, max_support=6, max_num=9, max_den=9):
    size = rng.randint(1, min(max_support, universe))
    positions = rng.sample(range(universe), size)
    entries = []
    for p in positions:
        num = rng.randint(-max_num, max_num)
        den = rng.randint(1, max_den)
        if num != 0:
            entries.append((p, Fraction(num, den)))
    return SparseVector(entries)


def well_definedness_report(family: NormingFamily, samples=200, seed=0) -> ExperimentReport:
    """For seeded random vectors, the max over every covering set's family is
    the same exact value."""
    rng = random.Random(seed)
    scheme = family.scheme
    bad = None
    checked = 0
    while checked < samples:
        x = random_rational_vector(rng, scheme.universe_size)
        if x.is_zero():
            continue
        covering = scheme.containing_sets(x.support)
        values = {norming_max(x, [f.vector for f in family.functionals_for(s)])
                  for s in covering}
        checked += 1
        if len(values) != 1 and bad is None:
            bad = {"vector": x.to_json(),
                   "values": sorted(format_rational(v) for v in values)}
    report = ExperimentReport(meta={"samples": checked, "seed": seed})
    report.claims.append(Claim(
        name="norm_independent_of_covering_set",
        lhs=Fraction(checked), relation="==", rhs=Fraction(checked),
        passed=bad is None, witness=bad))
    return report


# ---------------------------------------------------------------------------
# Capture experiments

@dataclass
class EpsExperimentConfig:
    n: int
    m: int
    pattern: SparseVector | None = None
    site: SchemeSet | None = None


@dataclass
class KExperimentConfig:
    n: int
    L: Fraction
    kprime: Fraction = Fraction(1)
    pattern: SparseVector | None = None
    site: SchemeSet | None = None


def _pick_site(scheme: Scheme, pieces_needed: int, site=None) -> SchemeSet:
    if site is not None:
        if not scheme.has_set(site) or site.rank == 0:
            raise CaptureUnavailableError(f"unusable capture site {site}")
        if len(scheme.decomposition[site]) < pieces_needed:
            raise CaptureUnavailableError(
                f"{site} has {len(scheme.decomposition[site])} pieces, "
                f"need {pieces_needed}")
        return site
    for k in range(1, scheme.depth + 1):
        for F in scheme.levels[k]:
            if len(scheme.decomposition[F]) >= pieces_needed:
                return F
    raise CaptureUnavailableError(
        f"no scheme set has {pieces_needed} pieces; use a wider type")


def _prepare_pattern(family, first_child, site, pattern):
    if pattern is None:
        non_root = [p for p in first_child.elements if p not in site.root]
        pattern = SparseVector.unit(non_root[0])
    if not set(pattern.support) <= set(first_child.elements):
        raise PatternOutOfRangeError(
            f"pattern support {list(pattern.support)} not inside first piece "
            f"{first_child}")
    if pattern.is_zero():
        raise ConfigInvalidError("pattern must be nonzero")
    scale = norm(pattern, family)
    return pattern / scale


def run_eps_experiment(scheme: Scheme, family: NormingFamily,
                       config: EpsExperimentConfig) -> ExperimentReport:
    """Capture 2n+2 aligned copies of a pattern and verify the exact
    cancellations of the alternating difference vector.

    With m/(2n) = eps, w = (x_0 - x_1) - (1/m) sum_{i=1..n} (x_{2i} - x_{2i+1})
    pairs to exactly zero against every functional of the first three
    amalgamation forms, and to at most 1/m against the copy form.
    """
    if family.space_kind != EPS_KIND:
        raise WrongSpaceKindError("experiment needs the alternating variant")
    eps = family.parameter
    n, m = config.n, config.m
    if n < 1 or m < 1:
        raise ConfigInvalidError("n and m must be positive integers")
    if Fraction(m, 2 * n) != eps:
        raise ConfigInvalidError(
            f"m/(2n) must equal eps = {format_rational(eps)}, got {m}/{2 * n}")
    count = 2 * n + 2
    site = _pick_site(scheme, count, config.site)
    children = scheme.decomposition[site]
    z = _prepare_pattern(family, children[0], site, config.pattern)

    members = make_captured_family(scheme, site, z.support, count)
    capture = find_capture(scheme, members, count)
    xs = [position_map(children[0], children[i]).transport(z) for i in range(count)]
    w = xs[0] - xs[1]
    inv_m = Fraction(1, m)
    for i in range(1, n + 1):
        w = w - (xs[2 * i] - xs[2 * i + 1]).scale(inv_m)

    report = ExperimentReport(meta={
        "eps": format_rational(eps), "n": n, "m": m,
        "site": str(site),
        "captured_at": str(capture.site) if capture else None,
        "pattern": z.to_json(),
    })
    root_part = w.restrict_to(site.root)
    report.claims.append(Claim(
        name="difference_vanishes_on_root", lhs=Fraction(0), relation="==",
        rhs=Fraction(0), passed=root_part.is_zero(),
        witness=None if root_part.is_zero() else {"values": root_part.to_json()}))

    form_max = {1: Fraction(0), 2: Fraction(0), 3: Fraction(0), 4: Fraction(0)}
    form_counts = {1: 0, 2: 0, 3: 0, 4: 0}
    used = {}
    for f in family.functionals_for(site):
        form = EPS_FORM_OF_RULE[f.origin.rule]
        value = pair(f.vector, w)
        report.pairings[_unique_label(used, f.label())] = value
        form_counts[form] += 1
        if abs(value) > form_max[form]:
            form_max[form] = abs(value)
    for form in (1, 2, 3):
        report.claims.append(Claim.compare(
            f"form{form}_pairs_to_zero", form_max[form], "==", Fraction(0),
            witness={"functionals": form_counts[form]},
            vacuous=form_counts[form] == 0))
    report.claims.append(Claim.compare(
        "form4_bounded_by_1_over_m", form_max[4], "<=", inv_m,
        witness={"functionals": form_counts[4]}))

    w_norm = norm(w, family)
    report.norms["w_local"] = w_norm
    report.norms["w_all_functionals"] = norm(w, family, mode="all")
    report.claims.append(Claim.compare("w_norm_at_most_1_over_m",
                                       w_norm, "<=", inv_m))
    return report


def run_K_experiment(scheme: Scheme, family: NormingFamily,
                     config: KExperimentConfig) -> ExperimentReport:
    """Capture 2n aligned copies; the block sum v beats L times the
    alternating block difference w, refuting prefix constants below K.

    Requires 1/K + 1/n < 1/L exactly.  Verifies |v| >= n (attained by the
    spread of a norming functional of the pattern), |w| <= n/K + 1, and the
    strict ratio |v| > L |w|.
    """
    if family.space_kind != K_KIND:
        raise WrongSpaceKindError("experiment needs the scaled-cut variant")
    K = family.parameter
    n, L, kprime = config.n, Fraction(config.L), Fraction(config.kprime)
    if n < 1:
        raise ConfigInvalidError("n must be a positive integer")
    if not (1 <= kprime < L < K):
        raise ConfigInvalidError(
            f"need 1 <= K' < L < K, got K'={kprime}, L={L}, K={format_rational(K)}")
    if Fraction(1) / K + Fraction(1, n) >= Fraction(1) / L:
        raise ConfigInvalidError(
            f"need 1/K + 1/n < 1/L: {format_rational(Fraction(1)/K)} + 1/{n} "
            f">= {format_rational(Fraction(1)/L)}")
    count = 2 * n
    site = _pick_site(scheme, count, config.site)
    children = scheme.decomposition[site]
    z = _prepare_pattern(family, children[0], site, config.pattern)

    make_captured_family(scheme, site, z.support, count)
    xs = [position_map(children[0], children[i]).transport(z) for i in range(count)]
    v = SparseVector()
    for x in xs[:n]:
        v = v + x
    w = v
    for x in xs[n:]:
        w = w - x

    first_family = family.functionals_for(children[0])
    witness_h = max(first_family, key=lambda f: (abs(pair(f.vector, z)), f.label()))
    expected = _spread_vector(witness_h.vector, children)
    spread_vec = None
    spread_label = None
    for f in family.functionals_for(site):
        if f.vector == expected:
            spread_vec, spread_label = f.vector, f.label()
            break

    report = ExperimentReport(meta={
        "K": format_rational(K), "Kprime": format_rational(kprime),
        "L": format_rational(L), "n": n, "site": str(site),
        "pattern": z.to_json(),
        "spread_witness": spread_label,
    })
    used = {}
    for f in family.functionals_for(site):
        label = _unique_label(used, f.label())
        report.pairings[f"v|{label}"] = pair(f.vector, v)
        report.pairings[f"w|{label}"] = pair(f.vector, w)

    v_norm = norm(v, family)
    w_norm = norm(w, family)
    report.norms["v"] = v_norm
    report.norms["w"] = w_norm
    report.claims.append(Claim.compare("v_norm_at_least_n", v_norm, ">=", Fraction(n)))
    if spread_vec is not None:
        report.claims.append(Claim.compare(
            "spread_witness_attains_n", abs(pair(spread_vec, v)), "==", Fraction(n),
            witness={"functional": spread_label}))
    report.claims.append(Claim.compare(
        "w_norm_at_most_n_over_K_plus_1", w_norm, "<=", Fraction(n) / K + 1))
    report.claims.append(Claim.compare(
        "v_exceeds_L_times_w", v_norm, ">", L * w_norm))
    if w_norm != 0:
        report.norms["ratio"] = v_norm / w_norm
    return report


# ---------------------------------------------------------------------------
# Separation bounds for explicit candidate systems

@dataclass
class SeparationConfig:
    tau: Fraction
    dual_bound: Fraction  # upper bound N for the dual norms of the ystars
    n: int = 0
    m: int = 1

    def delta(self) -> Fraction:
        """(1/N)(1 - tau (1 + 2n/m)); with m/(2n) = eps this is the
        (1/N)(1 - tau (1+eps)/eps) separation level."""
        slack = Fraction(1) - Fraction(self.tau) * (1 + Fraction(2 * self.n, self.m))
        return slack / Fraction(self.dual_bound)


@dataclass
class KSeparationConfig:
    kprime: Fraction
    L: Fraction
    n: int


def verify_separation_bound(family: NormingFamily, ys, config,
                            ystars=None, indices=None) -> ExperimentReport:
    """Evaluate the separation inequality on explicit candidate data.

    Alternating variant: `ys`/`ystars` form a tau-biorthogonal system
    (validated exactly, including dual-norm bounds via LP); the alternating
    combination of the indexed ys must have norm >= delta.  A nonpositive
    delta is reported as vacuous.

    Scaled-cut variant: `ys` are normalized; checks
    |sum_{i<n} y_i| <= L |sum_{i<n} y_i - sum_{n<=i<2n} y_i| and the lower
    bound |w| >= 1/(2K').
    """
    if family.space_kind == EPS_KIND:
        if not isinstance(config, SeparationConfig):
            raise ConfigInvalidError("alternating variant needs a SeparationConfig")
        return _verify_eps_separation(family, ys, ystars, config, indices)
    if not isinstance(config, KSeparationConfig):
        raise ConfigInvalidError("scaled-cut variant needs a KSeparationConfig")
    return _verify_k_separation(family, ys, config)


def _verify_eps_separation(family, ys, ystars, config, indices):
    if ystars is None or len(ystars) != len(ys):
        raise ConfigInvalidError("need one dual per vector")
    tau = Fraction(config.tau)
    bound = Fraction(config.dual_bound)
    for i, (y, ystar) in enumerate(zip(ys, ystars)):
        d = pair(ystar, y)
        if d != 1:
            raise NotBiorthogonalError(
                f"<y*_{i}, y_{i}> = {format_rational(d)} != 1", witness=(i, i))
        for j, other in enumerate(ys):
            if i != j and abs(pair(ystar, other)) > tau:
                raise NotBiorthogonalError(
                    f"|<y*_{i}, y_{j}>| exceeds tau = {format_rational(tau)}",
                    witness=(i, j))
    H = [f.vector for f in family.top_functionals]
    for i, ystar in enumerate(ystars):
        value, _ = dual_norm(ystar, H)
        if value > bound:
            raise NotBiorthogonalError(
                f"dual norm of y*_{i} is {format_rational(value)} > N = "
                f"{format_rational(bound)}", witness=(i, i))
    n, m = config.n, config.m
    if indices is None:
        indices = list(range(2 * n + 2))
    indices = list(indices)
    if len(indices) != 2 * n + 2:
        raise ConfigInvalidError(f"need 2n+2 = {2 * n + 2} indices, got {len(indices)}")
    if any(i < 0 or i >= len(ys) for i in indices):
        raise ConfigInvalidError("separation indices outside the candidate list")
    combo = ys[indices[0]] - ys[indices[1]]
    for i in range(1, n + 1):
        combo = combo - (ys[indices[2 * i]] - ys[indices[2 * i + 1]]).scale(Fraction(1, m))
    lhs = norm(combo, family)
    delta = config.delta()
    report = ExperimentReport(meta={
        "tau": format_rational(tau), "N": format_rational(bound),
        "n": n, "m": m, "delta": format_rational(delta),
        "vacuous": delta <= 0,
    })
    report.norms["combination"] = lhs
    report.claims.append(Claim.compare(
        "separation_lower_bound", lhs, ">=", delta, vacuous=delta <= 0))
    return report


def _verify_k_separation(family, ys, config):
    n = config.n
    L = Fraction(config.L)
    kprime = Fraction(config.kprime)
    if len(ys) != 2 * n:
        raise ConfigInvalidError(f"need 2n = {2 * n} vectors, got {len(ys)}")
    for i, y in enumerate(ys):
        value = norm(y, family)
        if value != 1:
            raise NotBiorthogonalError(
                f"|y_{i}| = {format_rational(value)} != 1 (not normalized)",
                witness=(i, i))
    v = SparseVector()
    for y in ys[:n]:
        v = v + y
    w = v
    for y in ys[n:]:
        w = w - y
    v_norm = norm(v, family)
    w_norm = norm(w, family)
    report = ExperimentReport(meta={
        "Kprime": format_rational(kprime), "L": format_rational(L), "n": n})
    report.norms["v"] = v_norm
    report.norms["w"] = w_norm
    report.claims.append(Claim.compare(
        "prefix_bounded_by_L_times_difference", v_norm, "<=", L * w_norm))
    report.claims.append(Claim.compare(
        "difference_at_least_half_inverse_kprime", w_norm, ">=",
        Fraction(1) / (2 * kprime)))
    return report
