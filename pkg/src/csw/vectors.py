"""Sparse rational vectors with exact arithmetic.

A vector is a finitely supported map from nonnegative integer positions to
nonzero `fractions.Fraction` values.  Zero entries are never stored, so two
vectors are equal iff their entry maps are equal.  All JSON rendering uses
"p/q" strings ("p" when the denominator is 1); no floating point appears
anywhere.
"""

from __future__ import annotations

from fractions import Fraction


def parse_rational(text) -> Fraction:
    """Parse "p/q" or "p" into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise ValueError(f"refusing float input {text!r}; pass an exact 'p/q' string")
    return Fraction(str(text).strip())


def format_rational(value) -> str:
    """Render a Fraction as "p/q", or "p" for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class SparseVector:
    """Immutable finitely supported rational vector."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries=()):
        data = {}
        items = entries.items() if isinstance(entries, dict) else entries
        for pos, val in items:
            pos = int(pos)
            if pos < 0:
                raise ValueError(f"negative position {pos}")
            val = val if isinstance(val, Fraction) else parse_rational(val)
            if val != 0:
                data[pos] = val
        self._entries = data
        self._hash = None

    @classmethod
    def unit(cls, pos) -> "SparseVector":
        return cls({pos: Fraction(1)})

    @classmethod
    def zero(cls) -> "SparseVector":
        return cls()

    def items(self):
        return sorted(self._entries.items())

    @property
    def support(self):
        return tuple(sorted(self._entries))

    def __getitem__(self, pos) -> Fraction:
        return self._entries.get(pos, Fraction(0))

    def __contains__(self, pos):
        return pos in self._entries

    def __len__(self):
        return len(self._entries)

    def __bool__(self):
        return bool(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __add__(self, other):
        data = dict(self._entries)
        for pos, val in other._entries.items():
            new = data.get(pos, 0) + val
            if new == 0:
                data.pop(pos, None)
            else:
                data[pos] = new
        out = SparseVector()
        out._entries = data
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(Fraction(-1))

    def scale(self, scalar) -> "SparseVector":
        scalar = scalar if isinstance(scalar, Fraction) else Fraction(scalar)
        if scalar == 0:
            return SparseVector()
        out = SparseVector()
        out._entries = {p: scalar * v for p, v in self._entries.items()}
        return out

    def __mul__(self, scalar):
        return self.scale(scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self.scale(Fraction(1) / Fraction(scalar))

    def restrict_to(self, positions) -> "SparseVector":
        """Keep only entries whose position lies in `positions`."""
        keep = set(positions)
        out = SparseVector()
        out._entries = {p: v for p, v in self._entries.items() if p in keep}
        return out

    def restrict_below(self, cut) -> "SparseVector":
        """Keep only entries at positions strictly below `cut`."""
        out = SparseVector()
        out._entries = {p: v for p, v in self._entries.items() if p < cut}
        return out

    def map_positions(self, mapping) -> "SparseVector":
        """Relocate entries through a position-to-position map.

        Every supported position must be in the map's domain; the map must be
        injective on the support.
        """
        data = {}
        for pos, val in self._entries.items():
            try:
                target = mapping[pos]
            except KeyError:
                raise KeyError(f"position {pos} outside transport domain") from None
            if target in data:
                raise ValueError(f"transport not injective at {target}")
            data[target] = val
        out = SparseVector()
        out._entries = data
        return out

    def to_json(self) -> dict:
        return {str(p): format_rational(v) for p, v in self.items()}

    @classmethod
    def from_json(cls, obj) -> "SparseVector":
        return cls({int(p): parse_rational(v) for p, v in obj.items()})

    def __repr__(self):
        body = ", ".join(f"{p}: {format_rational(v)}" for p, v in self.items())
        return f"SparseVector({{{body}}})"


def pair(f: SparseVector, x: SparseVector) -> Fraction:
    """Exact inner product over the intersection of supports."""
    if len(f) > len(x):
        f, x = x, f
    total = Fraction(0)
    for pos, val in f._entries.items():
        other = x._entries.get(pos)
        if other is not None:
            total += val * other
    return total


def parse_vector(text) -> SparseVector:
    """Parse "pos:val,pos:val" (values as "p/q") into a SparseVector."""
    text = (text or "").strip()
    if not text:
        return SparseVector()
    entries = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        pos, _, val = chunk.partition(":")
        if not _:
            raise ValueError(f"bad vector entry {chunk!r}; expected pos:val")
        entries.append((int(pos), parse_rational(val)))
    return SparseVector(entries)


def format_vector(vec: SparseVector) -> str:
    return ",".join(f"{p}:{format_rational(v)}" for p, v in vec.items())
