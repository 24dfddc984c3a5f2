"""Bound quiver algebras ``KQ/I`` over GF(p) with homogeneous relations.

Composition convention: a path is a tuple of arrow names written the way the
relations are written, and the right-most arrow acts first.  The product
``a1 a2`` of ``a1: 2 -> 1`` and ``a2: 3 -> 2`` is the path ``3 -> 2 -> 1``;
its source is the source of ``a2`` and its target the target of ``a1``.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg

DEFAULT_PRIME = 32003


class AlgebraError(ValueError):
    pass


class InhomogeneousRelation(AlgebraError):
    pass


class EndpointMismatch(AlgebraError):
    pass


class NotFiniteDimensional(AlgebraError):
    def __init__(self, cap):
        super().__init__(f"not finite-dimensional: paths of length {cap + 1} survive (length cap {cap})")
        self.cap = cap


def natural_key(name):
    """Sort key treating digit runs numerically, so ``a2 < a10``."""
    return tuple((0, int(tok), "") if tok.isdigit() else (1, 0, tok) for tok in re.findall(r"\d+|\D+", name))


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Quiver:
    """Finite quiver: ordered vertex ids and named arrows."""

    def __init__(self, vertices, arrows=()):
        self.vertices = tuple(int(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex id")
        for v in self.vertices:
            if v <= 0:
                raise AlgebraError(f"vertex ids must be positive integers, got {v}")
        arrs = []
        for a in arrows:
            arrs.append(a if isinstance(a, Arrow) else Arrow(str(a[0]), int(a[1]), int(a[2])))
        self.arrows = tuple(arrs)
        self._by_name = {}
        vset = set(self.vertices)
        for a in self.arrows:
            if a.name in self._by_name:
                raise AlgebraError(f"duplicate arrow id {a.name!r}")
            if a.source not in vset or a.target not in vset:
                raise AlgebraError(f"arrow {a.name!r} has an undeclared endpoint")
            self._by_name[a.name] = a
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}

    def arrow(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise AlgebraError(f"unknown arrow {name!r}") from None

    def endpoints(self, path):
        """(source, target) of a nonempty arrow sequence; raise if not composable."""
        if not path:
            raise AlgebraError("empty path has no endpoints")
        arrows = [self.arrow(n) for n in path]
        for left, right in zip(arrows, arrows[1:]):
            if right.target != left.source:
                raise EndpointMismatch(f"arrows {left.name} and {right.name} are not composable ({left.name}*{right.name})")
        return arrows[-1].source, arrows[0].target

    def opposite(self):
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def components(self):
        """Connected components of the underlying graph, ordered by smallest vertex id."""
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a in self.arrows:
            ra, rb = find(a.source), find(a.target)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values(), key=min)

    def __repr__(self):
        arrows = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver(vertices={list(self.vertices)}, arrows=[{arrows}])"


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths of equal length (set equal to zero)."""

    terms: tuple

    def __init__(self, terms):
        object.__setattr__(self, "terms", tuple((int(c), tuple(path)) for c, path in terms))

    @classmethod
    def monomial(cls, *arrows):
        return cls([(1, arrows)])

    @classmethod
    def commutativity(cls, lhs, rhs):
        return cls([(1, tuple(lhs)), (-1, tuple(rhs))])

    def reversed(self):
        return Relation([(c, path[::-1]) for c, path in self.terms])

    def __str__(self):
        parts = []
        for c, path in self.terms:
            word = "*".join(path)
            if c == 1:
                parts.append(f"+ {word}")
            elif c == -1:
                parts.append(f"- {word}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*{word}")
        text = " ".join(parts)
        return (text[2:] if text.startswith("+ ") else "-" + text[2:]) + " = 0"


class Path(NamedTuple):
    source: int
    target: int
    arrows: tuple

    def __len__(self):  # path length, not tuple length
        return len(self.arrows)

    def label(self):
        return "*".join(self.arrows) if self.arrows else f"e{self.source}"


def _path_key(path):
    return (len(path), tuple(natural_key(n) for n in path))


class Algebra:
    """Finite-dimensional ``KQ/I`` with a basis of paths.

    Use :func:`build_algebra` rather than the constructor.  Instances are
    immutable; the opposite algebra is built on first use and cached.
    """

    def __init__(self, quiver, relations, p, basis, normal_forms, top_degree):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.p = p
        self.basis = tuple(basis)
        self.top_degree = top_degree
        self._index = {b: i for i, b in enumerate(self.basis)}
        self._nf = normal_forms  # arrow tuple -> {basis index: coeff}
        self._idem = {}
        self._arrow_idx = {}
        self._between = {}
        self._pos = [0] * len(self.basis)
        for i, b in enumerate(self.basis):
            if not b.arrows:
                self._idem[b.source] = i
            elif len(b.arrows) == 1:
                self._arrow_idx[b.arrows[0]] = i
            blk = self._between.setdefault((b.source, b.target), [])
            self._pos[i] = len(blk)
            blk.append(i)
        self._between = {k: tuple(v) for k, v in self._between.items()}
        self._lock = threading.Lock()
        self._opposite = None
        self._proj_cache = {}

    # -- basic data -------------------------------------------------------
    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def n(self):
        return len(self.quiver.vertices)

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"<Algebra {len(self.vertices)} vertices, dim {self.dim}, p={self.p}>"

    def vertex_position(self, v):
        try:
            return self.quiver.vertex_index[v]
        except KeyError:
            raise AlgebraError(f"unknown vertex {v}") from None

    def index(self, path):
        return self._index[path]

    def idempotent(self, v):
        self.vertex_position(v)
        return self._idem[v]

    def arrow_index(self, name):
        self.quiver.arrow(name)
        return self._arrow_idx.get(name)

    def between(self, source, target):
        """Basis indices of paths from ``source`` to ``target`` (the slice e_t A e_s)."""
        return self._between.get((source, target), ())

    def block_position(self, idx):
        return self._pos[idx]

    def cartan(self):
        vs = self.vertices
        return np.array([[len(self.between(s, t)) for s in vs] for t in vs], dtype=np.int64)

    def is_semisimple(self):
        return self.dim == self.n

    # -- multiplication ---------------------------------------------------
    def normal_form(self, arrows):
        """Normal form of a (composable) arrow sequence as {basis index: coeff}."""
        arrows = tuple(arrows)
        if not arrows:
            raise AlgebraError("trivial paths need a vertex; use idempotent()")
        if len(arrows) >= self.top_degree:
            self.quiver.endpoints(arrows)
            return {}
        try:
            return dict(self._nf[arrows])
        except KeyError:
            self.quiver.endpoints(arrows)
            raise

    def mul(self, i, j):
        """Product ``b_i * b_j`` (``b_j`` acts first) as {basis index: coeff}."""
        bi, bj = self.basis[i], self.basis[j]
        if bi.source != bj.target:
            return {}
        if not bi.arrows:
            return {j: 1}
        if not bj.arrows:
            return {i: 1}
        return self.normal_form(bi.arrows + bj.arrows)

    def multiply(self, x, y):
        """Product of two elements given as coefficient vectors of length ``dim``."""
        p = self.p
        out = np.zeros(self.dim, dtype=np.int64)
        xs = np.flatnonzero(np.asarray(x) % p)
        ys = np.flatnonzero(np.asarray(y) % p)
        for i in xs:
            for j in ys:
                c = int(x[i]) * int(y[j]) % p
                for k, v in self.mul(int(i), int(j)).items():
                    out[k] = (out[k] + c * v) % p
        return out

    def one(self):
        out = np.zeros(self.dim, dtype=np.int64)
        for v in self.vertices:
            out[self._idem[v]] = 1
        return out

    # -- derived algebras -------------------------------------------------
    def opposite(self):
        """The opposite algebra on the reversed quiver, sharing basis indices."""
        with self._lock:
            if self._opposite is None:
                basis = [Path(b.target, b.source, b.arrows[::-1]) for b in self.basis]
                nf = {k[::-1]: v for k, v in self._nf.items()}
                op = Algebra(
                    self.quiver.opposite(),
                    [r.reversed() for r in self.relations],
                    self.p,
                    basis,
                    nf,
                    self.top_degree,
                )
                op._opposite = self
                self._opposite = op
            return self._opposite

    def relabel_name(self):
        return f"{self.n}v/dim{self.dim}"


def _check_prime(p):
    if not linalg.is_prime(p):
        raise AlgebraError(f"field characteristic must be prime, got {p}")
    if p > linalg.MAX_PRIME:
        raise AlgebraError(f"prime {p} exceeds supported bound {linalg.MAX_PRIME}")


def _normalize_relations(quiver, relations, p):
    out = []
    for rel in relations:
        if not isinstance(rel, Relation):
            rel = Relation(rel)
        if not rel.terms:
            continue
        ends = set()
        lengths = set()
        combined = {}
        for c, path in rel.terms:
            ends.add(quiver.endpoints(path))
            lengths.add(len(path))
            combined[tuple(path)] = (combined.get(tuple(path), 0) + c) % p
        if len(lengths) > 1:
            raise InhomogeneousRelation(f"inhomogeneous relation: {rel} mixes path lengths {sorted(lengths)}")
        if len(ends) > 1:
            raise EndpointMismatch(f"endpoint mismatch: paths of {rel} disagree on source/target")
        (length,) = lengths
        if length < 2:
            raise AlgebraError(f"relation {rel} has length < 2 and is not admissible")
        combined = {path: c for path, c in combined.items() if c}
        if combined:
            (src, tgt) = ends.pop()
            out.append((length, src, tgt, combined, rel))
    return out


def build_algebra(quiver, relations=(), p=DEFAULT_PRIME, length_cap=None):
    """Construct ``KQ/I`` with a degreewise basis of length-lex smallest surviving paths."""
    _check_prime(p)
    rels = _normalize_relations(quiver, relations, p)
    cap = 2 * len(quiver.vertices) if length_cap is None else int(length_cap)
    out_arrows = {}
    in_arrows = {}
    for a in quiver.arrows:
        out_arrows.setdefault(a.source, []).append(a)
        in_arrows.setdefault(a.target, []).append(a)

    survivors = [Path(v, v, ()) for v in quiver.vertices]
    nf_paths = {}  # arrow tuple -> {surviving arrow tuple: coeff}

    paths = {}
    for a in quiver.arrows:
        paths.setdefault((a.source, a.target), []).append((a.name,))
    for key in paths:
        for path in paths[key]:
            survivors.append(Path(key[0], key[1], path))
            nf_paths[path] = {path: 1}
    ideal = {}  # (src, tgt) -> list of dict rows spanning I_d in that slice
    top = 1 if not quiver.arrows else None
    d = 1
    while top is None:
        d += 1
        new_paths = {}
        for (s, t), plist in paths.items():
            for q in plist:
                for a in out_arrows.get(t, ()):
                    new_paths.setdefault((s, a.target), []).append((a.name,) + q)
        gens = {}
        for (s, t), rows in ideal.items():
            for row in rows:
                for a in out_arrows.get(t, ()):
                    gens.setdefault((s, a.target), []).append({(a.name,) + q: c for q, c in row.items()})
                for b in in_arrows.get(s, ()):
                    gens.setdefault((b.source, t), []).append({q + (b.name,): c for q, c in row.items()})
        for length, s, t, combined, _ in rels:
            if length == d:
                gens.setdefault((s, t), []).append(dict(combined))

        next_ideal = {}
        any_survivor = False
        for key in sorted(new_paths, key=lambda k: (quiver.vertex_index[k[0]], quiver.vertex_index[k[1]])):
            cols = sorted(new_paths[key], key=_path_key, reverse=True)
            col_of = {q: i for i, q in enumerate(cols)}
            rows = gens.get(key, [])
            if rows:
                mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
                for r, row in enumerate(rows):
                    for q, c in row.items():
                        mat[r, col_of[q]] = (mat[r, col_of[q]] + c) % p
                red, pivots = linalg.rref(mat, p)
            else:
                red, pivots = np.zeros((0, len(cols)), dtype=np.int64), []
            pivot_set = set(pivots)
            free = [i for i in range(len(cols)) if i not in pivot_set]
            for i in free:
                nf_paths[cols[i]] = {cols[i]: 1}
                survivors.append(Path(key[0], key[1], cols[i]))
            for r, c in enumerate(pivots):
                nf_paths[cols[c]] = {cols[f]: int(-red[r, f] % p) for f in free if red[r, f]}
            if pivots:
                next_ideal[key] = [{cols[i]: int(red[r, i]) for i in np.flatnonzero(red[r])} for r in range(len(pivots))]
            if free:
                any_survivor = True
        if not any_survivor:
            top = d
        elif d > cap:
            raise NotFiniteDimensional(cap)
        paths = new_paths
        ideal = next_ideal

    vi = quiver.vertex_index
    survivors.sort(key=lambda b: (vi[b.source], vi[b.target], _path_key(b.arrows)))
    index = {b.arrows if b.arrows else ("", b.source): i for i, b in enumerate(survivors)}
    nf = {}
    for path, combo in nf_paths.items():
        nf[path] = {index[q]: c for q, c in combo.items()}
    return Algebra(quiver, [r for *_, r in rels], p, survivors, nf, top)


def semisimple(n, p=DEFAULT_PRIME, vertices=None):
    verts = list(vertices) if vertices is not None else list(range(1, n + 1))
    return build_algebra(Quiver(verts), (), p)


def path_algebra(quiver, p=DEFAULT_PRIME):
    return build_algebra(quiver, (), p)


def blocks(algebra):
    """Indecomposable block algebras with their vertex embeddings (identity on ids)."""
    out = []
    for comp in algebra.quiver.components():
        cset = set(comp)
        verts = [v for v in algebra.vertices if v in cset]
        arrows = [a for a in algebra.quiver.arrows if a.source in cset]
        rels = [r for r in algebra.relations if algebra.quiver.endpoints(r.terms[0][1])[0] in cset]
        sub = build_algebra(Quiver(verts, arrows), rels, algebra.p, length_cap=max(algebra.top_degree, 2 * len(verts)))
        out.append((sub, {v: v for v in verts}))
    return out


def quotient_by_idempotent(algebra, vertices):
    """``A/(e)`` for ``e`` the sum of the vertex idempotents at ``vertices``.

    Paths through a vertex of ``e`` are killed; relations are projected by
    dropping their terms that touch ``e``.
    """
    killed = set(vertices)
    unknown = killed - set(algebra.vertices)
    if unknown:
        raise AlgebraError(f"unknown vertices {sorted(unknown)}")
    keep = [v for v in algebra.vertices if v not in killed]
    arrows = [a for a in algebra.quiver.arrows if a.source not in killed and a.target not in killed]
    names = {a.name for a in arrows}
    rels = []
    for r in algebra.relations:
        terms = [(c, path) for c, path in r.terms if all(n in names for n in path)]
        if terms:
            rels.append(Relation(terms))
    return build_algebra(Quiver(keep, arrows), rels, algebra.p, length_cap=max(algebra.top_degree, 2 * len(keep)))


def direct_sum(*algebras):
    """Direct product of algebras on disjoint vertex sets (relabelled by offsets)."""
    if not algebras:
        raise AlgebraError("direct_sum needs at least one algebra")
    p = algebras[0].p
    verts, arrows, rels = [], [], []
    offset = 0
    used = set()
    for k, alg in enumerate(algebras):
        if alg.p != p:
            raise AlgebraError("direct_sum of algebras over different fields")
        shift = {v: v + offset for v in alg.vertices}
        rename = {}
        for a in alg.quiver.arrows:
            name = a.name
            while name in used:
                name = f"{name}'"
            used.add(name)
            rename[a.name] = name
            arrows.append(Arrow(name, shift[a.source], shift[a.target]))
        verts.extend(shift[v] for v in alg.vertices)
        rels.extend(Relation([(c, tuple(rename[n] for n in path)) for c, path in r.terms]) for r in alg.relations)
        offset = max(verts, default=offset)
    cap = max(2 * len(verts), max(a.top_degree for a in algebras))
    return build_algebra(Quiver(verts, arrows), rels, p, length_cap=cap)


def bound_quiver_isomorphic(a, b):
    """Whether two algebras have isomorphic quivers with matching Cartan data.

    Brute force over vertex bijections; intended for desk-scale comparisons.
    """
    from itertools import permutations

    if a.n != b.n or a.dim != b.dim or len(a.quiver.arrows) != len(b.quiver.arrows):
        return False
    ca, cb = a.cartan(), b.cartan()

    def arrow_counts(alg):
        counts = {}
        for ar in alg.quiver.arrows:
            key = (alg.quiver.vertex_index[ar.source], alg.quiver.vertex_index[ar.target])
            counts[key] = counts.get(key, 0) + 1
        return counts

    qa, qb = arrow_counts(a), arrow_counts(b)
    for perm in permutations(range(b.n)):
        if any(qb.get((perm[s], perm[t]), 0) != c for (s, t), c in qa.items()):
            continue
        if all(ca[t, s] == cb[perm[t], perm[s]] for s in range(a.n) for t in range(a.n)):
            return True
    return False
