"""Dynkin quivers, their radical-square-zero algebras, and Auslander algebra presentations."""

from __future__ import annotations

from dataclasses import dataclass

from . import modules as rl
from .algebra import DEFAULT_PRIME, AlgebraError, Quiver, Relation, build_algebra, quotient_by_idempotent


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class DynkinSpec:
    series: str
    rank: int

    def __post_init__(self):
        s = self.series.upper() if isinstance(self.series, str) else self.series
        object.__setattr__(self, "series", s)
        if s == "A" and self.rank >= 1:
            return
        if s == "D" and self.rank >= 4:
            return
        if s == "E" and self.rank in (6, 7, 8):
            return
        raise SpecError(f"invalid rank {self.rank} for series {self.series!r}")

    @classmethod
    def parse(cls, text):
        text = text.strip()
        try:
            return cls(text[0], int(text[1:]))
        except (IndexError, ValueError):
            raise SpecError(f"cannot parse Dynkin type {text!r}") from None

    def __str__(self):
        return f"{self.series}{self.rank}"


def _spec(spec, rank=None):
    if isinstance(spec, DynkinSpec):
        return spec
    if rank is None:
        return DynkinSpec.parse(spec)
    return DynkinSpec(spec, rank)


def dynkin_quiver(spec, rank=None):
    s = _spec(spec, rank)
    m = s.rank
    if s.series == "A":
        arrows = [(f"a{k}", k, k + 1) for k in range(1, m)]
    elif s.series == "D":
        arrows = [("a1", 1, 3), ("a2", 2, 3)] + [(f"a{k}", k, k + 1) for k in range(3, m)]
    else:
        arrows = [("a1", 1, 2), ("a2", 2, 4), ("a3", 3, 4), ("a4", 4, 5), ("a5", 5, 6), ("a6", 6, 7), ("a7", 7, 8)]
        arrows = arrows[: m - 1]
    return Quiver(range(1, m + 1), arrows)


def rad_square_zero(quiver, p=DEFAULT_PRIME):
    rels = []
    for a in quiver.arrows:
        for b in quiver.arrows:
            if b.target == a.source:
                rels.append(Relation.monomial(a.name, b.name))
    return build_algebra(quiver, rels, p)


def _zero_pairs(pairs):
    return [Relation.monomial(f"a{i}", f"a{j}") for i, j in pairs]


def _commute(lhs, rhs):
    return Relation.commutativity([f"a{k}" for k in lhs], [f"a{k}" for k in rhs])


def auslander_quiver(spec, rank=None):
    """Bound quiver presenting the Auslander algebra of the radical-square-zero Dynkin algebra."""
    s = _spec(spec, rank)
    m = s.rank
    if s.series == "A":
        n = 2 * m - 1
        arrows = [(f"a{k}", k + 1, k) for k in range(1, n)]
        rels = _zero_pairs((2 * k - 1, 2 * k) for k in range(1, m))
        return Quiver(range(1, n + 1), arrows), rels
    if s.series == "D":
        arrows = [(f"a{k}", k + 1, k) for k in range(1, 2 * m - 5)]
        arrows += [
            (f"a{2 * m - 5}", 2 * m - 4, 2 * m - 5),
            (f"a{2 * m - 4}", 2 * m - 3, 2 * m - 5),
            (f"a{2 * m - 3}", 2 * m - 2, 2 * m - 4),
            (f"a{2 * m - 2}", 2 * m - 2, 2 * m - 3),
            (f"a{2 * m - 1}", 2 * m - 1, 2 * m - 2),
            (f"a{2 * m}", 2 * m, 2 * m - 2),
        ]
        rels = _zero_pairs((2 * k - 1, 2 * k) for k in range(1, m - 2))
        rels.append(_commute((2 * m - 5, 2 * m - 3), (2 * m - 4, 2 * m - 2)))
        rels += _zero_pairs([(2 * m - 3, 2 * m - 1), (2 * m - 2, 2 * m)])
        return Quiver(range(1, 2 * m + 1), arrows), rels
    n = 2 * m - 7
    arrows = [(f"a{k}", k + 1, k) for k in range(1, n)]
    arrows += [
        (f"a{n}", n + 1, n),
        (f"a{n + 1}", n + 2, n),
        (f"a{n + 2}", n + 3, n + 1),
        (f"a{n + 3}", n + 3, n + 2),
        (f"a{n + 4}", n + 4, n + 3),
        (f"a{n + 5}", n + 5, n + 3),
        (f"a{n + 6}", n + 6, n + 5),
        (f"a{n + 7}", n + 7, n + 6),
    ]
    rels = _zero_pairs((2 * k - 1, 2 * k) for k in range(1, (n - 1) // 2 + 1))
    rels.append(_commute((n, n + 2), (n + 1, n + 3)))
    rels += _zero_pairs([(n + 2, n + 4), (n + 3, n + 5), (n + 6, n + 7)])
    return Quiver(range(1, 2 * m + 1), arrows), rels


def auslander_presentation(spec, rank=None, p=DEFAULT_PRIME):
    quiver, rels = auslander_quiver(spec, rank)
    return build_algebra(quiver, rels, p)


def proj_inj_idempotent(A):
    """Vertices whose indecomposable projective is also injective."""
    return tuple(v for v in A.vertices if rl.is_injective(rl.projective(A, v)))


def reduced_algebra(spec, rank=None, p=DEFAULT_PRIME):
    G = auslander_presentation(spec, rank, p)
    return quotient_by_idempotent(G, proj_inj_idempotent(G))


def middle_sink_a3(p=DEFAULT_PRIME, vertices=(3, 4, 5)):
    """Path algebra of the quiver with one sink and two sources (two arrows into the sink)."""
    sink, s1, s2 = vertices
    return build_algebra(Quiver(vertices, [("a", s1, sink), ("b", s2, sink)]), (), p)


def hereditary_a2(p=DEFAULT_PRIME):
    return build_algebra(Quiver([1, 2], [("a", 1, 2)]), (), p)


def kronecker(p=DEFAULT_PRIME):
    return build_algebra(Quiver([1, 2], [("a", 1, 2), ("b", 1, 2)]), (), p)


def all_specs(max_a=6, max_d=8):
    out = [DynkinSpec("A", m) for m in range(1, max_a + 1)]
    out += [DynkinSpec("D", m) for m in range(4, max_d + 1)]
    out += [DynkinSpec("E", m) for m in (6, 7, 8)]
    return out


__all__ = [
    "AlgebraError",
    "DynkinSpec",
    "SpecError",
    "all_specs",
    "auslander_presentation",
    "auslander_quiver",
    "dynkin_quiver",
    "hereditary_a2",
    "kronecker",
    "middle_sink_a3",
    "proj_inj_idempotent",
    "rad_square_zero",
    "reduced_algebra",
]
