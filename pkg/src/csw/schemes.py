"""Finite-depth construction schemes over an integer universe.

A type is an arithmetic triple (m_k, n_k, r_k), k = 0..depth, with m_0 = 1
and m_k = n_k (m_{k-1} - r_k) + r_k.  A scheme of that type is a ranked
family of finite subsets of [0, m_depth): singletons at rank 0, the full
universe at rank `depth`, and every rank-k set decomposing into n_k rank-(k-1)
sets that form an increasing delta-system with root the first r_k elements.

The builder realizes the scheme deterministically by consecutive-block
splitting: a rank-k set keeps its first r_k elements as the root and cuts the
remainder into n_k consecutive blocks.  `check_axioms` re-verifies every
defining property by exhaustive enumeration, so corrupted or hand-altered
schemes are diagnosed rather than trusted.

Schemes are not mutated after building; every query here is pure, so scheme
values can be shared freely (the axiom checker tolerates hand-tampered input
precisely because it assumes nothing).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    ArityMismatchError,
    ConfigInvalidError,
    LengthMismatchError,
    NotDeltaError,
    NotInSchemeError,
    PatternOutOfRangeError,
    RankZeroError,
    TypeValidationError,
)


@dataclass(frozen=True)
class TypeSpec:
    m: tuple
    n: tuple  # n[k-1] is the width at rank k
    r: tuple  # r[k-1] is the root size at rank k

    @property
    def depth(self) -> int:
        return len(self.m) - 1

    @property
    def universe_size(self) -> int:
        return self.m[-1]

    def m_of(self, k):
        return self.m[k]

    def n_of(self, k):
        return self.n[k - 1]

    def r_of(self, k):
        return self.r[k - 1] if k > 0 else 0

    def to_json(self):
        return {"m": list(self.m), "n": list(self.n), "r": list(self.r)}

    @classmethod
    def from_json(cls, obj):
        return validate_type(obj["m"], obj["n"], obj["r"])


def type_violations(m, n, r):
    """Every violated type constraint as (k, name, message); empty iff valid."""
    violations = []
    m, n, r = list(m), list(n), list(r)
    if not m:
        return [(0, "arity", "m must have at least one entry")]
    depth = len(m) - 1
    if len(n) != depth or len(r) != depth:
        violations.append((0, "arity",
                           f"with depth {depth} expected {depth} entries in n and r, "
                           f"got {len(n)} and {len(r)}"))
        return violations
    if any(not isinstance(v, int) for v in m + n + r):
        violations.append((0, "integrality", "all entries must be integers"))
        return violations
    if m[0] != 1:
        violations.append((0, "m0", f"m_0 must be 1, got {m[0]}"))
    for k in range(1, depth + 1):
        nk, rk = n[k - 1], r[k - 1]
        if nk <= k:
            violations.append((k, "n_exceeds_rank", f"n_{k} > {k} required, got {nk}"))
        if rk < 0:
            violations.append((k, "root_nonnegative", f"r_{k} must be >= 0, got {rk}"))
        if rk >= m[k - 1]:
            violations.append((k, "root_bound",
                               f"r_{k} < m_{k-1} required, got {rk} >= {m[k - 1]}"))
        expected = nk * (m[k - 1] - rk) + rk
        if m[k] != expected:
            violations.append((k, "recursion",
                               f"m_{k} must equal n_{k} (m_{k-1} - r_{k}) + r_{k} "
                               f"= {expected}, got {m[k]}"))
    return violations


def validate_type(m, n, r) -> TypeSpec:
    """Return a TypeSpec or raise TypeValidationError listing every violation."""
    violations = type_violations(m, n, r)
    if violations:
        if any(name == "arity" for _, name, _ in violations):
            raise ArityMismatchError(violations)
        raise TypeValidationError(violations)
    return TypeSpec(tuple(m), tuple(n), tuple(r))


@dataclass(frozen=True)
class SchemeSet:
    rank: int
    elements: tuple
    root_size: int

    @property
    def root(self) -> tuple:
        return self.elements[: self.root_size]

    def __len__(self):
        return len(self.elements)

    def __contains__(self, item):
        return item in self.elements

    def __str__(self):
        body = ",".join(map(str, self.elements))
        return f"rank{self.rank}{{{body}}}"


@dataclass
class Scheme:
    type_spec: TypeSpec
    levels: list  # levels[k] = sorted list of SchemeSet of rank k
    decomposition: dict = field(default_factory=dict)  # SchemeSet -> tuple of children

    @property
    def depth(self) -> int:
        return self.type_spec.depth

    @property
    def universe_size(self) -> int:
        return self.type_spec.universe_size

    @property
    def top(self) -> SchemeSet:
        return self.levels[self.depth][0]

    def sets(self):
        for level in self.levels:
            yield from level

    def has_set(self, s: SchemeSet) -> bool:
        return 0 <= s.rank < len(self.levels) and s in self._index(s.rank)

    def _index(self, rank):
        return {t: i for i, t in enumerate(self.levels[rank])}

    def set_id(self, s: SchemeSet) -> str:
        return f"{s.rank}:{self._index(s.rank)[s]}"

    def set_by_id(self, key: str) -> SchemeSet:
        rank, idx = key.split(":")
        return self.levels[int(rank)][int(idx)]

    def minimal_containing(self, positions) -> SchemeSet:
        """Lexicographically first scheme set of minimal rank covering `positions`."""
        needed = set(positions)
        if not needed <= set(range(self.universe_size)):
            raise NotInSchemeError(f"positions {sorted(needed)} exceed the universe")
        for level in self.levels:
            for s in level:
                if needed <= set(s.elements):
                    return s
        raise NotInSchemeError("no scheme set covers the given positions")

    def containing_sets(self, positions):
        needed = set(positions)
        return [s for level in self.levels for s in level
                if needed <= set(s.elements)]


def build_scheme(type_spec: TypeSpec) -> Scheme:
    """Deterministic scheme over [0, m_depth) by consecutive-block splitting."""
    depth = type_spec.depth
    levels = [dict() for _ in range(depth + 1)]
    decomposition = {}
    top = SchemeSet(rank=depth,
                    elements=tuple(range(type_spec.universe_size)),
                    root_size=type_spec.r_of(depth))
    levels[depth][top.elements] = top
    stack = [top]
    while stack:
        parent = stack.pop()
        k = parent.rank
        if k == 0 or parent in decomposition:
            continue
        rk = type_spec.r_of(k)
        width = type_spec.m_of(k - 1) - rk
        root = parent.elements[:rk]
        rest = parent.elements[rk:]
        children = []
        child_root = type_spec.r_of(k - 1)
        for i in range(type_spec.n_of(k)):
            elems = root + rest[i * width: (i + 1) * width]
            known = levels[k - 1].get(elems)
            if known is None:
                known = SchemeSet(rank=k - 1, elements=elems, root_size=child_root)
                levels[k - 1][elems] = known
                stack.append(known)
            children.append(known)
        decomposition[parent] = tuple(children)
    sorted_levels = [sorted(level.values(), key=lambda s: s.elements)
                     for level in levels]
    return Scheme(type_spec=type_spec, levels=sorted_levels,
                  decomposition=decomposition)


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    counterexample: str | None = None


@dataclass
class AxiomReport:
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self):
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed,
                 "counterexample": c.counterexample}
                for c in self.checks
            ],
        }


def _is_initial_segment(prefix, whole):
    return tuple(whole[: len(prefix)]) == tuple(prefix)


def check_axioms(scheme: Scheme) -> AxiomReport:
    """Exhaustively verify every defining property; never aborts early.

    Each axiom records its first counterexample and the remaining axioms are
    still checked, so a corrupted scheme yields a full diagnosis.
    """
    ts = scheme.type_spec
    checks = []

    def add(name, counterexample):
        checks.append(AxiomCheck(name, counterexample is None, counterexample))

    bad = None
    for k, level in enumerate(scheme.levels):
        for s in level:
            if list(s.elements) != sorted(set(s.elements)) or (s.elements and s.elements[0] < 0):
                bad = f"{s} is not a strictly increasing nonnegative sequence"
                break
            if s.rank != k:
                bad = f"{s} stored at level {k}"
                break
        if bad:
            break
    add("well-formed", bad)

    bad = None
    for k, level in enumerate(scheme.levels):
        if k > len(ts.m) - 1:
            bad = f"level {k} beyond type depth"
            break
        for s in level:
            if len(s.elements) != ts.m_of(k):
                bad = f"{s} has size {len(s.elements)}, type demands m_{k} = {ts.m_of(k)}"
                break
        if bad:
            break
    add("set-sizes", bad)

    bad = None
    for k, level in enumerate(scheme.levels):
        want = ts.r_of(k)
        for s in level:
            if s.root_size != want or len(s.root) != min(want, len(s.elements)):
                bad = f"{s} has root size {s.root_size}, type demands r_{k} = {want}"
                break
        if bad:
            break
    add("root-sizes", bad)

    bad = None
    for level in scheme.levels:
        for i in range(len(level)):
            for j in range(i + 1, len(level)):
                e, f = level[i], level[j]
                common = sorted(set(e.elements) & set(f.elements))
                if not (_is_initial_segment(common, e.elements)
                        and _is_initial_segment(common, f.elements)):
                    bad = f"{e} and {f} intersect in {common}, not an initial segment of both"
                    break
            if bad:
                break
        if bad:
            break
    add("same-rank-initial-segments", bad)

    bad = None
    for k in range(1, len(scheme.levels)):
        for parent in scheme.levels[k]:
            children = scheme.decomposition.get(parent)
            if children is None:
                bad = f"{parent} has no decomposition"
                break
            if len(children) != ts.n_of(k):
                bad = f"{parent} decomposes into {len(children)} pieces, type demands n_{k} = {ts.n_of(k)}"
                break
            level_below = set(scheme.levels[k - 1])
            if any(c not in level_below for c in children):
                bad = f"{parent} has a child missing from level {k - 1}"
                break
            union = set()
            for c in children:
                union.update(c.elements)
            if union != set(parent.elements):
                bad = f"children of {parent} do not union to it"
                break
            root = parent.root
            ok = True
            for a in range(len(children)):
                for b in range(a + 1, len(children)):
                    inter = tuple(sorted(set(children[a].elements) & set(children[b].elements)))
                    if inter != root:
                        bad = (f"children {a},{b} of {parent} intersect in {inter}, "
                               f"root is {root}")
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
            prev_max = max(root) if root else -1
            for idx, c in enumerate(children):
                tail = [x for x in c.elements if x not in root]
                if not _is_initial_segment(root, c.elements):
                    bad = f"root {root} is not an initial segment of child {idx} of {parent}"
                    break
                if tail and tail[0] <= prev_max:
                    bad = f"child {idx} of {parent} does not lie above the previous piece"
                    break
                if tail:
                    prev_max = tail[-1]
            if bad:
                break
        if bad:
            break
    add("decomposition-delta-system", bad)

    bad = None
    universe = set(range(scheme.universe_size))
    if not scheme.levels or {s.elements for s in scheme.levels[0]} != {(x,) for x in universe}:
        bad = "rank 0 is not exactly the singletons of the universe"
    add("rank0-singletons", bad)

    bad = None
    tops = scheme.levels[-1] if scheme.levels else []
    if len(tops) != 1 or set(tops[0].elements) != universe:
        bad = "top level is not the single full-universe set"
    add("top-covers-all", bad)

    return AxiomReport(checks)


def canonical_decomposition(scheme: Scheme, F: SchemeSet):
    """Root and ordered children of F; rank-0 sets have no decomposition."""
    if not scheme.has_set(F):
        raise NotInSchemeError(f"{F} is not in the scheme")
    if F.rank == 0:
        raise RankZeroError(f"{F} has rank 0 and no decomposition")
    return F.root, scheme.decomposition[F]


@dataclass(frozen=True)
class PositionMap:
    source: tuple
    target: tuple

    def __post_init__(self):
        if len(self.source) != len(self.target):
            raise LengthMismatchError(
                f"cannot map {len(self.source)} positions onto {len(self.target)}")

    @property
    def forward(self) -> dict:
        return dict(zip(self.source, self.target))

    def apply(self, pos):
        try:
            return self.forward[pos]
        except KeyError:
            raise LengthMismatchError(f"{pos} not in map domain") from None

    def apply_set(self, positions) -> tuple:
        fwd = self.forward
        return tuple(sorted(fwd[p] for p in positions))

    def transport(self, vec):
        """Push a vector supported in the domain onto the codomain."""
        return vec.map_positions(self.forward)

    def inverse(self) -> "PositionMap":
        return PositionMap(self.target, self.source)


def position_map(source, target) -> PositionMap:
    """The unique increasing bijection between two equal-sized position sets."""
    src = tuple(source.elements) if isinstance(source, SchemeSet) else tuple(sorted(source))
    tgt = tuple(target.elements) if isinstance(target, SchemeSet) else tuple(sorted(target))
    return PositionMap(src, tgt)


@dataclass(frozen=True)
class DeltaSystem:
    members: tuple  # tuple of strictly increasing position tuples
    root: tuple

    def __len__(self):
        return len(self.members)


def is_delta_system(members) -> DeltaSystem:
    """Validate an increasing delta-system; returns it with its root.

    Members must share every pairwise intersection (the root), have equal
    sizes, and their non-root parts must appear in strictly increasing blocks.
    """
    normalized = [tuple(sorted(set(member))) for member in members]
    if not normalized:
        raise NotDeltaError(0, 0, "empty family")
    size = len(normalized[0])
    for i, elems in enumerate(normalized):
        if len(elems) != size:
            raise NotDeltaError(0, i, "members differ in size")
    if len(normalized) == 1:
        return DeltaSystem(tuple(normalized), ())
    root = tuple(sorted(set(normalized[0]) & set(normalized[1])))
    root_set = set(root)
    root_max = max(root) if root else -1
    tails = [[x for x in elems if x not in root_set] for elems in normalized]
    for i in range(len(normalized)):
        for j in range(i + 1, len(normalized)):
            inter = tuple(sorted(set(normalized[i]) & set(normalized[j])))
            if inter != root:
                raise NotDeltaError(i, j,
                                    f"pairwise intersections differ: {inter} vs {root}")
            for member in (i, j):
                if tails[member] and min(tails[member]) <= root_max:
                    raise NotDeltaError(i, j,
                                        f"root {root} does not lie below member {member}")
            if tails[i] and tails[j] and min(tails[j]) <= max(tails[i]):
                raise NotDeltaError(i, j, "non-root parts are not in increasing blocks")
    return DeltaSystem(tuple(normalized), root)


@dataclass(frozen=True)
class Capture:
    site: SchemeSet
    member_indices: tuple  # member_indices[i] sits inside child i


def find_capture(scheme: Scheme, system, t: int):
    """First scheme set whose leading children capture t members, or None.

    Search order is rank ascending, then lexicographic on the candidate set,
    then lexicographic on the member subsequence, so results are
    deterministic.  Absence of a capture is a legitimate outcome at finite
    depth.
    """
    from itertools import combinations

    if not isinstance(system, DeltaSystem):
        system = is_delta_system(system)
    members = system.members
    if t < 1 or t > len(members):
        raise ConfigInvalidError(f"need 1 <= t <= {len(members)}, got {t}")
    root = set(system.root)
    member_sets = [set(m) for m in members]
    for k in range(1, scheme.depth + 1):
        for F in scheme.levels[k]:
            children = scheme.decomposition.get(F)
            if children is None or t > len(children):
                continue
            if not root <= set(F.root):
                continue
            first = set(children[0].elements)
            maps = None
            for combo in combinations(range(len(members)), t):
                if not member_sets[combo[0]] <= first:
                    continue
                if maps is None:
                    maps = [position_map(children[0], c) for c in children]
                base = members[combo[0]]
                ok = True
                for i in range(1, t):
                    if maps[i].apply_set(base) != members[combo[i]]:
                        ok = False
                        break
                if ok:
                    return Capture(site=F, member_indices=combo)
    return None


def make_captured_family(scheme: Scheme, F: SchemeSet, pattern_positions, t: int) -> DeltaSystem:
    """Engineer a delta-system that F captures: transport a pattern from the
    first child through the first t increasing bijections."""
    if not scheme.has_set(F):
        raise NotInSchemeError(f"{F} is not in the scheme")
    if F.rank == 0:
        raise RankZeroError("capture sites need rank >= 1")
    children = scheme.decomposition[F]
    if t < 1 or t > len(children):
        raise ConfigInvalidError(f"need 1 <= t <= {len(children)} pieces, got {t}")
    base = tuple(sorted(set(pattern_positions)))
    if not base:
        raise PatternOutOfRangeError("pattern is empty")
    if not set(base) <= set(children[0].elements):
        raise PatternOutOfRangeError(
            f"pattern {list(base)} is not inside the first piece {children[0]}")
    members = [position_map(children[0], children[i]).apply_set(base)
               for i in range(t)]
    return is_delta_system(members)


# ---------------------------------------------------------------------------
# JSON serialization: canonical, integers only, arrays ascending.

def scheme_to_json(scheme: Scheme) -> dict:
    levels = [[list(s.elements) for s in level] for level in scheme.levels]
    decomposition = {}
    for k in range(1, len(scheme.levels)):
        index_below = {s: i for i, s in enumerate(scheme.levels[k - 1])}
        for i, parent in enumerate(scheme.levels[k]):
            children = scheme.decomposition.get(parent)
            if children is None:
                continue
            decomposition[f"{k}:{i}"] = [index_below[c] for c in children]
    return {
        "type": scheme.type_spec.to_json(),
        "levels": levels,
        "decomposition": decomposition,
    }


def scheme_from_json(obj) -> Scheme:
    """Rebuild a scheme from JSON without validating the axioms.

    Structural integrity only; run check_axioms to trust the result.
    """
    ts_obj = obj["type"]
    ts = TypeSpec(tuple(ts_obj["m"]), tuple(ts_obj["n"]), tuple(ts_obj["r"]))
    levels = []
    for k, level in enumerate(obj["levels"]):
        root = ts.r_of(k) if k <= ts.depth else 0
        levels.append([SchemeSet(rank=k, elements=tuple(elems), root_size=root)
                       for elems in level])
    decomposition = {}
    for key, child_indices in obj.get("decomposition", {}).items():
        rank, idx = (int(v) for v in key.split(":"))
        parent = levels[rank][idx]
        decomposition[parent] = tuple(levels[rank - 1][j] for j in child_indices)
    return Scheme(type_spec=ts, levels=levels, decomposition=decomposition)


def scheme_dumps(scheme: Scheme) -> str:
    return json.dumps(scheme_to_json(scheme), sort_keys=True, indent=2)


def scheme_loads(text: str) -> Scheme:
    return scheme_from_json(json.loads(text))
