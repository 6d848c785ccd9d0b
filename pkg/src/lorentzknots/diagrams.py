"""Chord diagrams on an oriented circle and their graded combinatorial algebra.

A diagram is a fixed-point-free involution of 2n circle points, considered up
to rotation (the circle is oriented, so reflections are a separate map,
:func:`reverse_orientation`).  Canonical form is the lexicographically
minimal rotation of the Gauss word with chords labelled by first visit.

The module provides linear combinations, the connected-sum product on
representatives, the chord-subset coproduct, the four-term relation
generators, and exact quotient dimensions via Gaussian elimination over Q.
Well-definedness of the connected sum modulo the four-term relations is not
re-proved here; it is certified downstream by the weight maps, which kill
every four-term generator and are multiplicative.
"""

from __future__ import annotations

import string
from fractions import Fraction
from itertools import combinations

from .errors import ResourceGuardError
from .scalars import GaussianRational, GR_ONE

__all__ = [
    "ChordDiagram",
    "DiagramSum",
    "TensorDiagramSum",
    "UNIT_DIAGRAM",
    "THETA",
    "parse_diagram",
    "enumerate_diagrams",
    "connected_sum",
    "coproduct",
    "reverse_orientation",
    "four_t_generators",
    "quotient_dimension",
    "exact_rank",
]


def _gauss_word(pairing, offset=0):
    """First-visit chord labelling read from ``offset`` counterclockwise."""
    n2 = len(pairing)
    labels = {}
    word = []
    for k in range(n2):
        pos = (offset + k) % n2
        partner = pairing[pos]
        key = min(pos, partner), max(pos, partner)
        if key not in labels:
            labels[key] = len(labels)
        word.append(labels[key])
    return tuple(word)


def _pairing_from_word(word):
    seen = {}
    pairing = [0] * len(word)
    for pos, label in enumerate(word):
        if label in seen:
            pairing[pos] = seen[label]
            pairing[seen[label]] = pos
        else:
            seen[label] = pos
    return tuple(pairing)


class ChordDiagram:
    """A pairing of 2n circle points up to rotation, stored canonically."""

    __slots__ = ("n", "pairing", "word")

    def __init__(self, pairing):
        pairing = tuple(pairing)
        n2 = len(pairing)
        if n2 % 2:
            raise ValueError("a chord diagram needs an even number of endpoints")
        for k, p in enumerate(pairing):
            if p == k or not (0 <= p < n2) or pairing[p] != k:
                raise ValueError("pairing must be a fixed-point-free involution")
        word = min(_gauss_word(pairing, r) for r in range(n2)) if n2 else ()
        object.__setattr__(self, "n", n2 // 2)
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "pairing", _pairing_from_word(word))

    def __setattr__(self, name, value):
        raise AttributeError("ChordDiagram is immutable")

    def gauss_text(self) -> str:
        return "".join(string.ascii_uppercase[l] for l in self.word)

    def chords(self):
        """Endpoint pairs (a, b) with a < b, in first-visit order."""
        seen = []
        for pos, partner in enumerate(self.pairing):
            if pos < partner:
                seen.append((pos, partner))
        return seen

    def __eq__(self, other):
        if isinstance(other, ChordDiagram):
            return self.word == other.word
        return NotImplemented

    def __hash__(self):
        return hash(self.word)

    def __lt__(self, other):
        return (self.n, self.word) < (other.n, other.word)

    def __repr__(self):
        return f"ChordDiagram({self.gauss_text()!r})" if self.n else "ChordDiagram('')"


UNIT_DIAGRAM = ChordDiagram(())
THETA = ChordDiagram((1, 0))  # the unique one-chord diagram


def parse_diagram(text: str) -> ChordDiagram:
    """Build a diagram from a Gauss word such as ``"ABAB"``.

    Every letter must occur exactly twice; the empty word is the unit.
    """
    text = text.strip().upper()
    if not text:
        return UNIT_DIAGRAM
    positions = {}
    for pos, ch in enumerate(text):
        positions.setdefault(ch, []).append(pos)
    for ch, occ in positions.items():
        if len(occ) != 2:
            raise ValueError(f"letter {ch!r} occurs {len(occ)} times, expected 2")
    pairing = [0] * len(text)
    for a, b in positions.values():
        pairing[a], pairing[b] = b, a
    return ChordDiagram(pairing)


def _involutions(points):
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for i, partner in enumerate(rest):
        for sub in _involutions(rest[:i] + rest[i + 1 :]):
            yield ((first, partner),) + sub


def enumerate_diagrams(n: int):
    """All canonical n-chord diagrams, each exactly once (n <= 6)."""
    if n < 0:
        raise ValueError("chord count must be nonnegative")
    if n > 6:
        raise ResourceGuardError(f"enumerate_diagrams guards at n <= 6, got {n}")
    seen = set()
    out = []
    for pairs in _involutions(tuple(range(2 * n))):
        pairing = [0] * (2 * n)
        for a, b in pairs:
            pairing[a], pairing[b] = b, a
        d = ChordDiagram(pairing)
        if d not in seen:
            seen.add(d)
            out.append(d)
    return sorted(out)


# ---------------------------------------------------------------------------
# Linear combinations
# ---------------------------------------------------------------------------


class DiagramSum:
    """A finite Q(i)-linear combination of canonical chord diagrams."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        collected = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for d, c in items:
            c = GaussianRational.coerce(c)
            if not c:
                continue
            collected[d] = collected.get(d, 0) + c
        object.__setattr__(
            self, "terms", {d: c for d, c in collected.items() if c}
        )

    def __setattr__(self, name, value):
        raise AttributeError("DiagramSum is immutable")

    @staticmethod
    def of(diagram, coeff=1):
        return DiagramSum([(diagram, coeff)])

    def grade(self):
        """Uniform chord count of the support, or None if mixed/empty."""
        grades = {d.n for d in self.terms}
        return grades.pop() if len(grades) == 1 else None

    def __add__(self, other):
        return DiagramSum(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, scalar):
        return DiagramSum([(d, c * scalar) for d, c in self.terms.items()])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def is_zero(self):
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda t: t[0])

    def __eq__(self, other):
        if isinstance(other, DiagramSum):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        body = " + ".join(f"({c})*{d.gauss_text() or '1'}" for d, c in self.items())
        return f"DiagramSum[{body or '0'}]"

    def to_json(self):
        return [
            {"word": d.gauss_text(), "coeff": c.to_json()} for d, c in self.items()
        ]


class TensorDiagramSum:
    """Linear combination of ordered pairs of canonical diagrams."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        collected = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for pair, c in items:
            c = GaussianRational.coerce(c)
            if not c:
                continue
            collected[pair] = collected.get(pair, 0) + c
        object.__setattr__(
            self, "terms", {p: c for p, c in collected.items() if c}
        )

    def __setattr__(self, name, value):
        raise AttributeError("TensorDiagramSum is immutable")

    def __add__(self, other):
        return TensorDiagramSum(
            list(self.terms.items()) + list(other.terms.items())
        )

    def __mul__(self, scalar):
        return TensorDiagramSum(
            [(p, c * scalar) for p, c in self.terms.items()]
        )

    __rmul__ = __mul__

    def items(self):
        return sorted(self.terms.items(), key=lambda t: (t[0][0], t[0][1]))

    def __eq__(self, other):
        if isinstance(other, TensorDiagramSum):
            return self.terms == other.terms
        return NotImplemented

    def __repr__(self):
        body = " + ".join(
            f"({c})*{a.gauss_text() or '1'}(x){b.gauss_text() or '1'}"
            for (a, b), c in self.items()
        )
        return f"TensorDiagramSum[{body or '0'}]"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def connected_sum(d1, d2):
    """Cut both circles at canonical position 0 and concatenate.

    On representatives this depends on the cut points; it is well defined
    only modulo the four-term relations, which the weight-map tests certify.
    Accepts diagrams or DiagramSums (bilinear extension).
    """
    if isinstance(d1, DiagramSum) or isinstance(d2, DiagramSum):
        s1 = d1 if isinstance(d1, DiagramSum) else DiagramSum.of(d1)
        s2 = d2 if isinstance(d2, DiagramSum) else DiagramSum.of(d2)
        out = []
        for a, ca in s1.terms.items():
            for b, cb in s2.terms.items():
                out.append((connected_sum(a, b), ca * cb))
        return DiagramSum(out)
    off = 2 * d1.n
    pairing = list(d1.pairing) + [p + off for p in d2.pairing]
    return ChordDiagram(pairing)


def _restrict(diagram, chord_subset):
    """Sub-diagram on a set of chords (chords given as endpoint pairs)."""
    points = sorted(p for pair in chord_subset for p in pair)
    index = {p: i for i, p in enumerate(points)}
    pairing = [0] * len(points)
    for a, b in chord_subset:
        pairing[index[a]], pairing[index[b]] = index[b], index[a]
    return ChordDiagram(pairing)


def coproduct(d) -> TensorDiagramSum:
    """Sum over chord subsets S of (d restricted to S) tensor (complement)."""
    if isinstance(d, DiagramSum):
        out = TensorDiagramSum()
        for dd, c in d.terms.items():
            out = out + c * coproduct(dd)
        return out
    chords = d.chords()
    terms = []
    for k in range(len(chords) + 1):
        for subset in combinations(chords, k):
            rest = tuple(ch for ch in chords if ch not in subset)
            terms.append(((_restrict(d, subset), _restrict(d, rest)), GR_ONE))
    return TensorDiagramSum(terms)


def reverse_orientation(d: ChordDiagram) -> ChordDiagram:
    """The reflection map: reverse the circle order of endpoints."""
    n2 = 2 * d.n
    pairing = [0] * n2
    for k, p in enumerate(d.pairing):
        pairing[n2 - 1 - k] = n2 - 1 - p
    return ChordDiagram(pairing)


# ---------------------------------------------------------------------------
# Four-term relations
# ---------------------------------------------------------------------------


def _insert_chord(base: ChordDiagram, fixed_pos, moving_pos) -> ChordDiagram:
    """Add one chord at fractional positions, then resort to integers."""
    points = [(float(k), None) for k in range(2 * base.n)]
    points.append((fixed_pos, "new"))
    points.append((moving_pos, "new"))
    points.sort(key=lambda t: t[0])
    index = {pos: i for i, (pos, _) in enumerate(points)}
    pairing = [0] * len(points)
    for a, b in base.chords():
        pairing[index[float(a)]], pairing[index[float(b)]] = (
            index[float(b)],
            index[float(a)],
        )
    new_pts = [i for i, (_, tag) in enumerate(points) if tag == "new"]
    pairing[new_pts[0]], pairing[new_pts[1]] = new_pts[1], new_pts[0]
    return ChordDiagram(pairing)


def _normalize_sign(s: DiagramSum) -> DiagramSum:
    items = s.items()
    if items and (items[0][1].re < 0 or (not items[0][1].re and items[0][1].im < 0)):
        return -1 * s
    return s


def four_t_generators(n: int):
    """All four-term relation elements with n chords, duplicates removed.

    Each generator moves one endpoint of an active chord through the four
    slots adjacent to the two endpoints of another chord, with signs
    -,+,-,+; the remaining n-2 chords and the active chord's other endpoint
    sit in arbitrary positions.
    """
    if not 2 <= n <= 5:
        raise ResourceGuardError(f"four_t_generators guards at 2 <= n <= 5, got {n}")
    seen = set()
    out = []
    for base in enumerate_diagrams(n - 1):
        gaps = range(2 * base.n)
        for e1, e2 in base.chords():
            for gap in gaps:
                fixed = gap + 0.5
                gen = DiagramSum(
                    [
                        (_insert_chord(base, fixed, e1 - 0.25), -1),
                        (_insert_chord(base, fixed, e1 + 0.25), 1),
                        (_insert_chord(base, fixed, e2 - 0.25), -1),
                        (_insert_chord(base, fixed, e2 + 0.25), 1),
                    ]
                )
                gen = _normalize_sign(gen)
                key = tuple(gen.items())
                if gen.is_zero() or key in seen:
                    continue
                seen.add(key)
                out.append(gen)
    return out


# ---------------------------------------------------------------------------
# Exact rank / quotient dimension
# ---------------------------------------------------------------------------


def exact_rank(rows) -> int:
    """Rank over Q of sparse rows (dicts column -> Fraction-like)."""
    rows = [
        {c: Fraction(v) if not isinstance(v, Fraction) else v for c, v in row.items() if v}
        for row in rows
    ]
    rows = [r for r in rows if r]
    pivots = {}  # column -> reduced row
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col not in pivots:
                inv = 1 / row[col]
                pivots[col] = {c: v * inv for c, v in row.items()}
                rank += 1
                break
            factor = row[col]
            for c, v in pivots[col].items():
                newv = row.get(c, Fraction(0)) - factor * v
                if newv:
                    row[c] = newv
                else:
                    row.pop(c, None)
    return rank


def quotient_dimension(n: int) -> int:
    """dim of (n-chord diagrams) / (four-term relations), exactly."""
    if n > 4:
        raise ResourceGuardError(f"quotient_dimension guards at n <= 4, got {n}")
    basis = enumerate_diagrams(n)
    if n < 2:
        return len(basis)
    index = {d: i for i, d in enumerate(basis)}
    rows = []
    for gen in four_t_generators(n):
        rows.append({index[d]: c.re for d, c in gen.terms.items()})
    return len(basis) - exact_rank(rows)
