"""Independent reference computations used to cross-check the main routes.

Each oracle avoids the code path it checks: tau-rigidity is tested by
building ``tau M = D Tr M`` explicitly, Ext^1 by counting extension cocycles,
and homomorphism spaces by a column-major linear system assembled here.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import linalg
from . import modules as rl


def hom_dim(M, N):
    """dim Hom(M, N) from a column-major vectorisation of the intertwiner equations."""
    A = M.algebra
    p = A.p
    offs, pos = {}, 0
    for v in A.vertices:
        offs[v] = pos
        pos += M.dim_at(v) * N.dim_at(v)
    if pos == 0:
        return 0
    rows = []
    for a in A.quiver.arrows:
        i, j = a.source, a.target
        mi, nj = M.dim_at(i), N.dim_at(j)
        if not mi or not nj:
            continue
        # column-major: vec(X B) = (B^T kron I) vec X, vec(B X) = (I kron B) vec X
        block = np.zeros((mi * nj, pos), dtype=np.int64)
        if M.dim_at(j):
            block[:, offs[j] : offs[j] + M.dim_at(j) * nj] += np.kron(M.mats[a.name].T, np.eye(nj, dtype=np.int64))
        if N.dim_at(i):
            block[:, offs[i] : offs[i] + mi * N.dim_at(i)] -= np.kron(np.eye(mi, dtype=np.int64), N.mats[a.name])
        rows.append(block % p)
    if not rows:
        return pos
    return pos - linalg.rank(np.vstack(rows), p)


def _splits(path):
    """(left, right) subpaths around each position of ``path``."""
    return [(path[:i], path[i + 1 :]) for i in range(len(path))]


def ext1_cocycles(M, N):
    """dim Ext^1(M, N) as cocycles modulo coboundaries of block-triangular extensions."""
    A = M.algebra
    p = A.p
    arrows = A.quiver.arrows
    zoff, zpos = {}, 0
    for a in arrows:
        zoff[a.name] = zpos
        zpos += N.dim_at(a.target) * M.dim_at(a.source)
    if zpos == 0:
        return 0

    def mat_of(rep, path, vertex):
        if not path:
            return np.eye(rep.dim_at(vertex), dtype=np.int64)
        return rep.path_matrix(path)

    qa = A.quiver
    eqs = []
    for rel in A.relations:
        src, tgt = qa.endpoints(rel.terms[0][1])
        nt, ms = N.dim_at(tgt), M.dim_at(src)
        if not nt or not ms:
            continue
        block = np.zeros((nt * ms, zpos), dtype=np.int64)
        for c, path in rel.terms:
            for left, right in _splits(path):
                a = qa.arrow(path[len(left)])
                L = mat_of(N, left, a.target)  # N_tgt(a) -> N_tgt
                R = mat_of(M, right, a.source) if right else np.eye(ms, dtype=np.int64)  # M_src -> M_src(a)
                # vec_row(L Z R) = (L kron R^T) vec_row(Z)
                size = N.dim_at(a.target) * M.dim_at(a.source)
                if size:
                    block[:, zoff[a.name] : zoff[a.name] + size] += c * np.kron(L, R.T)
        eqs.append(block % p)
    if eqs:
        cocycle_dim = zpos - linalg.rank(np.vstack(eqs), p)
    else:
        cocycle_dim = zpos
    hoff, hpos = {}, 0
    for v in A.vertices:
        hoff[v] = hpos
        hpos += N.dim_at(v) * M.dim_at(v)
    if hpos == 0:
        return cocycle_dim
    delta = np.zeros((zpos, hpos), dtype=np.int64)
    for a in arrows:
        i, j = a.source, a.target
        rows = slice(zoff[a.name], zoff[a.name] + N.dim_at(j) * M.dim_at(i))
        if N.dim_at(j) * M.dim_at(i) == 0:
            continue
        # Z_a = N_a h_i - h_j M_a
        if N.dim_at(i):
            delta[rows, hoff[i] : hoff[i] + N.dim_at(i) * M.dim_at(i)] += np.kron(N.mats[a.name], np.eye(M.dim_at(i), dtype=np.int64))
        if M.dim_at(j):
            delta[rows, hoff[j] : hoff[j] + N.dim_at(j) * M.dim_at(j)] -= np.kron(np.eye(N.dim_at(j), dtype=np.int64), M.mats[a.name].T)
    return cocycle_dim - linalg.rank(delta % p, p)


def _presentation(M):
    """Minimal projective presentation built from the radical layers directly.

    Returns the P0 vertices and, per P1 generator, its vertex and its image
    in P0 as a dictionary {(P0 summand, basis index): coeff}.
    """
    A = M.algebra
    p = A.p
    # top generators: basis of M_v modulo images of incoming arrows, chosen from the back
    gens = []
    for v in A.vertices:
        cols = [M.mats[a.name] for a in A.quiver.arrows if a.target == v]
        m = M.dim_at(v)
        rad = np.hstack(cols) if cols else np.zeros((m, 0), dtype=np.int64)
        cur_rank = linalg.rank(rad, p) if rad.size else 0
        for k in reversed(range(m)):
            e = np.zeros((m, 1), dtype=np.int64)
            e[k, 0] = 1
            trial = np.hstack([rad, e]) if rad.size else e
            r = linalg.rank(trial, p)
            if r > cur_rank:
                rad, cur_rank = trial, r
                gens.append((v, e.ravel()))
    # d0 as one matrix per vertex, columns indexed by (generator, path)
    cols = {v: [] for v in A.vertices}
    labels = {v: [] for v in A.vertices}
    for g, (v, vec) in enumerate(gens):
        for q in _paths_from(A, v):
            b = A.basis[q]
            img = vec if not b.arrows else linalg.matmul(M.path_matrix(b.arrows), vec.reshape(-1, 1), p).ravel()
            cols[b.target].append(img)
            labels[b.target].append((g, q))
    # P0 as a representation to take the kernel and its top
    P0 = rl.projective_sum(A, tuple(v for v, _ in gens))
    vidx = {v: k for k, v in enumerate(A.vertices)}
    kernel_bases = []
    for v in A.vertices:
        if cols[v]:
            d0v = np.stack(cols[v], axis=1) % p
            kernel_bases.append(linalg.nullspace(d0v, p).T)
        else:
            kernel_bases.append(np.zeros((P0.dim_at(v), 0), dtype=np.int64))
    K = rl.restrict(P0, kernel_bases)
    relgens = []
    for v in A.vertices:
        cols_k = [K.mats[a.name] for a in A.quiver.arrows if a.target == v]
        m = K.dim_at(v)
        rad = np.hstack(cols_k) if cols_k else np.zeros((m, 0), dtype=np.int64)
        cur_rank = linalg.rank(rad, p) if rad.size else 0
        for k in reversed(range(m)):
            e = np.zeros((m, 1), dtype=np.int64)
            e[k, 0] = 1
            trial = np.hstack([rad, e]) if rad.size else e
            r = linalg.rank(trial, p)
            if r > cur_rank:
                rad, cur_rank = trial, r
                x = linalg.matmul(kernel_bases[vidx[v]], e, p).ravel()
                relgens.append((v, {labels[v][t]: int(c) for t, c in enumerate(x) if c}))
    return [v for v, _ in gens], relgens


def _paths_from(A, v):
    return [i for i, b in enumerate(A.basis) if b.source == v]


def transpose(M):
    """Tr M over the opposite algebra, assembled from the multiplication table."""
    A = M.algebra
    op = A.opposite()
    p = A.p
    p0, relgens = _presentation(M)
    # dual map P0* = (+) P^op(j_h) -> P1* = (+) P^op(k_g)
    target = rl.projective_sum(op, tuple(k for k, _ in relgens))
    # image of generator h: in summand g, the element sum_q coeff * q where x_g has (h, q) entries
    maps = []
    for v in op.vertices:
        # columns: basis of (+)_h P^op(j_h) at v, i.e. op-paths j_h -> v
        colblocks = []
        for h, j in enumerate(p0):
            for r in op.between(j, v):
                col = np.zeros(target.dim_at(v), dtype=np.int64)
                base = 0
                for g, (k, x) in enumerate(relgens):
                    # r * (image of generator h in summand g)
                    for (hh, q), c in x.items():
                        if hh != h:
                            continue
                        for t, cc in op.mul(r, q).items():
                            col[base + op.block_position(t)] += c * cc
                    base += len(op.between(k, v))
                colblocks.append(col % p)
        if colblocks:
            maps.append(np.stack(colblocks, axis=1))
        else:
            maps.append(np.zeros((target.dim_at(v), 0), dtype=np.int64))
    return rl.cokernel(tuple(maps), target)[0]


def tau(M):
    return rl.dual(transpose(M))


def is_tau_rigid(M):
    if M.is_zero():
        return True
    return hom_dim(M, tau(M)) == 0


def isomorphic_by_search(M, N, tries=24, seed=0):
    """Look for an invertible intertwiner among random combinations of a Hom basis."""
    if M.dims != N.dims:
        return False
    basis = rl.hom(M, N).basis
    if not basis:
        return M.is_zero()
    p = M.p
    rng = np.random.default_rng(seed)
    for f in basis:
        if rl.is_invertible(f, p):
            return True
    for _ in range(tries):
        coeffs = rng.integers(0, p, size=len(basis))
        f = tuple(sum(int(c) * b[k] for c, b in zip(coeffs, basis)) % p for k in range(M.algebra.n))
        if rl.is_invertible(f, p):
            return True
    return False


def monomial_path_count(quiver, zero_paths=(), avoid=()):
    """Number of paths (trivial ones included) avoiding ``avoid`` and containing no zero path.

    Valid as a dimension count only for monomial ideals.
    """
    avoid = set(avoid)
    zero = {tuple(z) for z in zero_paths}
    count = sum(1 for v in quiver.vertices if v not in avoid)
    frontier = [(a.name,) for a in quiver.arrows if a.source not in avoid and a.target not in avoid]
    while frontier:
        count += len(frontier)
        nxt = []
        for path in frontier:
            head = quiver.arrow(path[0])
            for a in quiver.arrows:
                if a.source == head.target and a.target not in avoid:
                    cand = (a.name,) + path
                    if any(cand[i : i + len(z)] == z for z in zero for i in range(len(cand) - len(z) + 1)):
                        continue
                    nxt.append(cand)
        frontier = nxt
    return count


def indecomposables_brute(A, dim_cap, alphabet=(0, 1)):
    """Isomorphism classes of indecomposable modules with dims bounded by ``dim_cap``."""
    found = []
    verts = A.vertices
    arrows = A.quiver.arrows
    for d in itertools.product(*[range(c + 1) for c in dim_cap]):
        if not any(d):
            continue
        dd = dict(zip(verts, d))
        shapes = [(a.name, (dd[a.target], dd[a.source])) for a in arrows]
        sizes = [r * c for _, (r, c) in shapes]
        for entries in itertools.product(alphabet, repeat=sum(sizes)):
            mats, pos = {}, 0
            for (name, shape), size in zip(shapes, sizes):
                mats[name] = np.array(entries[pos : pos + size], dtype=np.int64).reshape(shape)
                pos += size
            M = rl.Representation(A, d, mats, check=False)
            if not M.satisfies_relations():
                continue
            if rl.hom_dim(M, M) > 1 and len(rl.indecomposable_summands(M)) > 1:
                continue
            if any(X.dims == M.dims and rl.indecomposables_isomorphic(X, M) for X in found):
                continue
            found.append(M)
    return found


def all_representations(A, dim_cap, alphabet):
    """Every representation (relations enforced) with dims up to ``dim_cap`` and entries in ``alphabet``."""
    verts = A.vertices
    arrows = A.quiver.arrows
    for d in itertools.product(*[range(c + 1) for c in dim_cap]):
        dd = dict(zip(verts, d))
        shapes = [(a.name, (dd[a.target], dd[a.source])) for a in arrows]
        sizes = [r * c for _, (r, c) in shapes]
        for entries in itertools.product(alphabet, repeat=sum(sizes)):
            mats, pos = {}, 0
            for (name, shape), size in zip(shapes, sizes):
                mats[name] = np.array(entries[pos : pos + size], dtype=np.int64).reshape(shape)
                pos += size
            M = rl.Representation(A, d, mats, check=False)
            if M.satisfies_relations():
                yield M
