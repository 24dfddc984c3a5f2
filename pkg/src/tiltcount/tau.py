"""Support tau-tilting pairs, mutation, and exchange-quiver enumeration."""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import linalg
from . import modules as rl


class PairError(ValueError):
    """A pair violates one of the defining clauses; ``clause`` names which."""

    def __init__(self, clause, detail=""):
        super().__init__(f"{clause}: {detail}" if detail else clause)
        self.clause = clause


class MutationError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, budget):
        super().__init__(f"budget exceeded: more than {budget} nodes")
        self.budget = budget


class GuardRailError(ValueError):
    pass


DEFAULT_BUDGET = 10**6


class STTPair:
    """A pair (M, P): basic module summands plus the vertices of P.

    Summands are kept sorted by g-vector so that positions are canonical.
    """

    def __init__(self, algebra, summands, killed, gvecs=None):
        if gvecs is None:
            gvecs = [tuple(int(x) for x in rl.g_vector(s)) for s in summands]
        order = sorted(range(len(summands)), key=lambda k: gvecs[k])
        self.algebra = algebra
        self.summands = tuple(summands[k] for k in order)
        self.gvectors = tuple(gvecs[k] for k in order)
        self.killed = tuple(sorted(killed))
        self.key = (self.gvectors, self.killed)

    def __len__(self):
        return len(self.summands) + len(self.killed)

    def __repr__(self):
        return f"STTPair(g={list(self.gvectors)}, killed={list(self.killed)})"

    def module(self):
        if not self.summands:
            return rl.zero(self.algebra)
        return rl.direct_sum(*self.summands)

    def profiles(self):
        return tuple(sorted(s.dims for s in self.summands))

    def support(self):
        out = set()
        for s in self.summands:
            out.update(s.support())
        return out

    def position_of(self, obj):
        for k, s in enumerate(self.summands):
            if s is obj:
                return k
        return len(self.summands) + self.killed.index(obj)


def validate_pair(M, killed=(), complete=True):
    """Basic-ify ``M`` and check the (support tau-tilting) pair conditions."""
    A = M.algebra
    killed = tuple(sorted(set(killed)))
    for v in killed:
        A.vertex_position(v)
    summands = rl.basic_summands(M) if not M.is_zero() else []
    basic = rl.direct_sum(*summands) if summands else rl.zero(A)
    if not rl.is_tau_rigid(basic):
        raise PairError("not tau-rigid")
    overlap = [v for v in killed if basic.dim_at(v)]
    if overlap:
        raise PairError("support overlap", f"module is nonzero at killed vertices {overlap}")
    size = len(summands) + len(killed)
    if complete and size != A.n:
        raise PairError("wrong summand count", f"{len(summands)} + {len(killed)} != {A.n}")
    if not complete and size not in (A.n, A.n - 1):
        raise PairError("wrong summand count", f"{len(summands)} + {len(killed)} not in ({A.n - 1}, {A.n})")
    return STTPair(A, summands, killed)


def top_pair(A):
    return STTPair(A, [rl.projective(A, v) for v in A.vertices], ())


def bottom_key(A):
    return ((), tuple(sorted(A.vertices)))


def _flatten(f):
    parts = [fv.ravel() for fv in f]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def _radical_endos(U):
    """Spanning set of rad End(U) for indecomposable U with local endomorphism ring."""
    p = U.p
    n = U.total
    if p <= n:
        raise rl.FieldTooSmall(f"field too small: p={p} must exceed dim M={n}")
    inv_n = pow(n, p - 2, p)
    out = []
    for f in rl.hom(U, U).basis:
        tr = sum(int(np.trace(fv)) for fv in f) % p
        lam = tr * inv_n % p
        out.append(tuple((fv - lam * np.eye(fv.shape[0], dtype=np.int64)) % p for fv in f))
    return out


def minimal_left_approximation(X, Us):
    """Minimal left add(Us)-approximation of X, for pairwise non-isomorphic indecomposables Us.

    Returns ``(targets, maps)``: the summand indices of the approximating
    module and the corresponding components ``X -> Us[l]``.
    """
    p = X.p
    homs = [rl.hom(X, U).basis for U in Us]
    targets, maps = [], []
    for l, Ul in enumerate(Us):
        if not homs[l]:
            continue
        spans = []
        for m, Um in enumerate(Us):
            if not homs[m]:
                continue
            rads = _radical_endos(Ul) if m == l else rl.hom(Um, Ul).basis
            for g in rads:
                for h in homs[m]:
                    spans.append(_flatten(rl.compose(g, h, p)))
        current = np.vstack(spans) if spans else np.zeros((0, len(_flatten(homs[l][0]))), dtype=np.int64)
        rk = linalg.rank(current, p) if current.shape[0] else 0
        for h in homs[l]:
            trial = np.vstack([current, _flatten(h)])
            r2 = linalg.rank(trial, p)
            if r2 > rk:
                current, rk = trial, r2
                targets.append(l)
                maps.append(h)
    return targets, maps


def _left_mutation(pair, k):
    A = pair.algebra
    X = pair.summands[k]
    Us = [s for j, s in enumerate(pair.summands) if j != k]
    targets, maps = minimal_left_approximation(X, Us)
    if targets:
        B = rl.direct_sum(*[Us[l] for l in targets])
        f = tuple(np.vstack([m[v] for m in maps]) for v in range(A.n))
        Y, _ = rl.cokernel(f, B)
    else:
        Y = rl.zero(A)
    new = []
    if not Y.is_zero():
        for s, _ in rl.decompose(Y):
            if not any(rl.indecomposables_isomorphic(s, u) for u in Us):
                if not any(rl.indecomposables_isomorphic(s, t) for t in new):
                    new.append(s)
    if len(new) > 1:
        raise MutationError(f"non-unique completion: cokernel has {len(new)} new summands")
    if new:
        return STTPair(A, Us + new, pair.killed)
    covered = set(pair.killed)
    for u in Us:
        covered.update(u.support())
    free = [v for v in A.vertices if v not in covered]
    if len(free) != 1:
        raise MutationError(f"non-unique completion: {len(free)} candidate vertices for the projective part")
    return STTPair(A, Us, pair.killed + (free[0],))


def dagger(pair):
    """The duality (M, P) -> (Tr M_np + P*, M_pr*) onto pairs over the opposite algebra.

    Returns ``(image, position_map)`` where ``position_map[k]`` is the image
    position of position ``k`` of ``pair``.
    """
    A = pair.algebra
    op = A.opposite()
    items = []  # per original position: ("module", rep) or ("killed", vertex)
    for X in pair.summands:
        pres = rl.min_proj_presentation(X)
        if not pres.p1:
            (v,) = pres.p0
            items.append(("killed", v))
        else:
            items.append(("module", rl.transpose(X, pres)))
    for v in pair.killed:
        items.append(("module", rl.projective(op, v)))
    summands = [obj for kind, obj in items if kind == "module"]
    killed = [obj for kind, obj in items if kind == "killed"]
    image = STTPair(op, summands, killed)
    return image, [image.position_of(obj) for _, obj in items]


def is_left_position(pair, pos):
    if pos >= len(pair.summands):
        return False
    X = pair.summands[pos]
    rest = [s for j, s in enumerate(pair.summands) if j != pos]
    if not rest:
        return True
    return not rl.in_fac(X, rl.direct_sum(*rest))


def mutate(pair, pos):
    """The other completion of the almost complete pair obtained by removing position ``pos``."""
    if not isinstance(pos, (int, np.integer)) or pos < 0 or pos >= len(pair):
        raise MutationError(f"invalid position {pos!r} for a pair with {len(pair)} positions")
    pos = int(pos)
    if is_left_position(pair, pos):
        return _left_mutation(pair, pos)
    image, posmap = dagger(pair)
    if not is_left_position(image, posmap[pos]):
        raise MutationError("non-unique completion: position is neither a left nor a right mutation")
    mutated = _left_mutation(image, posmap[pos])
    return dagger(mutated)[0]


def left_mutations(pair):
    """All (position, result) pairs for left mutations of ``pair``."""
    return [(k, _left_mutation(pair, k)) for k in range(len(pair.summands)) if is_left_position(pair, k)]


class ExchangeQuiver:
    def __init__(self, algebra, nodes, edges, root, sink):
        self.algebra = algebra
        self.nodes = nodes  # key -> STTPair, sorted by key
        self.edges = edges  # sorted (source key, target key, position)
        self.root = root
        self.sink = sink

    def __len__(self):
        return len(self.nodes)

    def degrees(self):
        deg = {k: [0, 0] for k in self.nodes}
        for s, t, _ in self.edges:
            deg[s][1] += 1
            deg[t][0] += 1
        return deg


def exchange_quiver(A, node_budget=DEFAULT_BUDGET, threads=1):
    """Breadth-first search over left mutations from (A, 0)."""
    root = top_pair(A)
    nodes = {root.key: root}
    edges = []
    frontier = [root]
    pool = ThreadPoolExecutor(max_workers=threads) if threads and threads > 1 else None
    try:
        while frontier:
            if pool is not None:
                results = list(pool.map(left_mutations, frontier))
            else:
                results = [left_mutations(node) for node in frontier]
            nxt = []
            for node, children in zip(frontier, results):
                for pos, child in children:
                    edges.append((node.key, child.key, pos))
                    if child.key not in nodes:
                        nodes[child.key] = child
                        nxt.append(child)
                        if len(nodes) > node_budget:
                            raise BudgetExceeded(node_budget)
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    sink = bottom_key(A)
    if sink not in nodes:
        raise MutationError("enumeration finished without reaching the zero pair")
    ordered = {k: nodes[k] for k in sorted(nodes)}
    return ExchangeQuiver(A, ordered, sorted(edges), root.key, sink)


def _dims_iter(cap):
    return itertools.product(*[range(c + 1) for c in cap])


def brute_force_stt(A, dim_cap=None, alphabet=(0, 1), max_reps=2_000_000):
    """All support tau-tilting pairs from an exhaustive search over small representations.

    Every representation with dimension vector at most ``dim_cap`` and
    matrix entries drawn from ``alphabet`` is generated; the indecomposable
    tau-rigid ones (up to isomorphism) are combined into maximal pairs.
    """
    if A.n > 4:
        raise GuardRailError(f"brute force limited to 4 vertices, got {A.n}")
    if dim_cap is None:
        reg = rl.regular(A)
        dim_cap = tuple(min(d, 2) for d in reg.dims)
    elif isinstance(dim_cap, int):
        dim_cap = (dim_cap,) * A.n
    dim_cap = tuple(int(c) for c in dim_cap)
    if len(dim_cap) != A.n or any(c < 0 or c > 3 for c in dim_cap):
        raise GuardRailError("dim_cap must give a bound in 0..3 for every vertex")
    vd = A.vertices
    arrows = A.quiver.arrows
    total = 0
    for d in _dims_iter(dim_cap):
        dd = dict(zip(vd, d))
        total += len(alphabet) ** sum(dd[a.target] * dd[a.source] for a in arrows)
    if total > max_reps:
        raise GuardRailError(f"enumeration of {total} representations exceeds the limit {max_reps}")

    found = []  # indecomposable tau-rigid modules, one per isomorphism class
    for d in _dims_iter(dim_cap):
        if not any(d):
            continue
        dd = dict(zip(vd, d))
        shapes = [(a.name, (dd[a.target], dd[a.source])) for a in arrows]
        sizes = [r * c for _, (r, c) in shapes]
        for entries in itertools.product(alphabet, repeat=sum(sizes)):
            mats, pos = {}, 0
            for (name, shape), size in zip(shapes, sizes):
                mats[name] = np.array(entries[pos : pos + size], dtype=np.int64).reshape(shape)
                pos += size
            M = rl.Representation(A, d, mats, check=False)
            if not M.satisfies_relations() or not rl.is_tau_rigid(M):
                continue
            if len(rl.hom(M, M).basis) > 1 and len(rl.indecomposable_summands(M)) > 1:
                continue
            if any(X.dims == M.dims and rl.indecomposables_isomorphic(X, M) for X in found):
                continue
            found.append(M)

    n = len(found)
    compatible = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            ok = rl.is_tau_rigid(rl.direct_sum(found[i], found[j])) if i != j else True
            compatible[i][j] = compatible[j][i] = ok
    pairs = []

    def extend(chosen, start):
        support = set()
        for i in chosen:
            support.update(found[i].support())
        free = [v for v in vd if v not in support]
        need = A.n - len(chosen)
        if 0 <= need <= len(free):
            for killed in itertools.combinations(free, need):
                pairs.append(STTPair(A, [found[i] for i in chosen], killed))
        if len(chosen) == A.n:
            return
        for i in range(start, n):
            if all(compatible[i][j] for j in chosen):
                extend(chosen + [i], i + 1)

    extend([], 0)
    return pairs
