"""Representations of bound quiver algebras and the homological tools on them.

A representation assigns a vector space ``F^{d_v}`` to each vertex and to each
arrow ``a: i -> j`` a matrix of shape ``d_j x d_i``.  The action of a path
``a1 a2 ... ak`` is the matrix product ``M[a1] @ M[a2] @ ... @ M[ak]``, which
matches the composition convention of :mod:`tiltcount.algebra`.

Morphisms ``M -> N`` are tuples of matrices (one per vertex, shape
``dim N_v x dim M_v``) in the algebra's vertex order.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from . import linalg
from .algebra import AlgebraError


class RepresentationError(ValueError):
    pass


class FieldTooSmall(RepresentationError):
    pass


class DecompositionError(RepresentationError):
    pass


class Representation:
    def __init__(self, algebra, dims, mats=None, check=True):
        self.algebra = algebra
        verts = algebra.vertices
        if isinstance(dims, dict):
            unknown = set(dims) - set(verts)
            if unknown:
                raise RepresentationError(f"unknown vertices {sorted(unknown)}")
            d = tuple(int(dims.get(v, 0)) for v in verts)
        else:
            d = tuple(int(x) for x in dims)
            if len(d) != len(verts):
                raise RepresentationError(f"expected {len(verts)} dimensions, got {len(d)}")
        if any(x < 0 for x in d):
            raise RepresentationError("negative dimension")
        self.dims = d
        self._vdim = dict(zip(verts, d))
        mats = dict(mats or {})
        names = {a.name for a in algebra.quiver.arrows}
        extra = set(mats) - names
        if extra:
            raise RepresentationError(f"unknown arrows {sorted(extra)}")
        p = algebra.p
        self.mats = {}
        for a in algebra.quiver.arrows:
            shape = (self._vdim[a.target], self._vdim[a.source])
            m = mats.get(a.name)
            if m is None:
                self.mats[a.name] = np.zeros(shape, dtype=np.int64)
                continue
            m = np.asarray(m, dtype=np.int64)
            if m.size == 0 and shape[0] * shape[1] == 0:
                m = m.reshape(shape)
            if m.shape != shape:
                raise RepresentationError(f"arrow {a.name}: expected shape {shape}, got {m.shape}")
            self.mats[a.name] = m % p
        if check:
            self.check_relations()

    @property
    def p(self):
        return self.algebra.p

    @property
    def total(self):
        return sum(self.dims)

    def dim_at(self, v):
        return self._vdim[v]

    def dims_dict(self):
        return dict(self._vdim)

    def support(self):
        return tuple(v for v, d in zip(self.algebra.vertices, self.dims) if d)

    def is_zero(self):
        return self.total == 0

    def path_matrix(self, arrows):
        p = self.p
        if not arrows:
            raise RepresentationError("trivial path has no arrow matrices")
        out = self.mats[arrows[0]]
        for name in arrows[1:]:
            out = linalg.matmul(out, self.mats[name], p)
        return out

    def basis_action(self, idx):
        """Matrix by which basis element ``idx`` acts (source space -> target space)."""
        b = self.algebra.basis[idx]
        if not b.arrows:
            return np.eye(self._vdim[b.source], dtype=np.int64)
        return self.path_matrix(b.arrows)

    def check_relations(self):
        p = self.p
        for rel in self.algebra.relations:
            src, tgt = self.algebra.quiver.endpoints(rel.terms[0][1])
            total = np.zeros((self._vdim[tgt], self._vdim[src]), dtype=np.int64)
            for c, path in rel.terms:
                total = (total + c * self.path_matrix(path)) % p
            if np.any(total):
                raise RepresentationError(f"relation {rel} does not vanish")

    def satisfies_relations(self):
        try:
            self.check_relations()
        except RepresentationError:
            return False
        return True

    def __repr__(self):
        return f"Representation(dims={self.dims})"


# -- constructions ---------------------------------------------------------


def zero(algebra):
    return Representation(algebra, [0] * algebra.n, check=False)


def direct_sum(*reps):
    if not reps:
        raise RepresentationError("direct_sum of nothing; use zero(algebra)")
    alg = reps[0].algebra
    for r in reps[1:]:
        _same_algebra(reps[0], r)
    dims = [sum(r.dims[k] for r in reps) for k in range(alg.n)]
    mats = {}
    for a in alg.quiver.arrows:
        blocks = [r.mats[a.name] for r in reps]
        mats[a.name] = _block_diag(blocks)
    return Representation(alg, dims, mats, check=False)


def _block_diag(blocks):
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def projective(algebra, j):
    """P(j): spanned by the basis paths starting at ``j``; arrows act by left multiplication."""
    A = algebra
    A.vertex_position(j)
    dims = [len(A.between(j, k)) for k in A.vertices]
    mats = {}
    for a in A.quiver.arrows:
        m = np.zeros((len(A.between(j, a.target)), len(A.between(j, a.source))), dtype=np.int64)
        ai = A.arrow_index(a.name)
        for q in A.between(j, a.source):
            for r, c in A.mul(ai, q).items():
                m[A.block_position(r), A.block_position(q)] = c
        mats[a.name] = m
    return Representation(A, dims, mats, check=False)


def simple(algebra, i):
    algebra.vertex_position(i)
    return Representation(algebra, {i: 1}, check=False)


def dual(rep):
    """``D M``: the transpose representation over the opposite algebra."""
    op = rep.algebra.opposite()
    return Representation(op, rep.dims, {n: m.T.copy() for n, m in rep.mats.items()}, check=False)


def injective(algebra, i):
    return dual(projective(algebra.opposite(), i))


def regular(algebra):
    reps = [projective(algebra, v) for v in algebra.vertices]
    return direct_sum(*reps) if reps else zero(algebra)


def _same_algebra(m, n):
    if m.algebra is not n.algebra:
        raise AlgebraError("representations over different algebras")


# -- morphisms -------------------------------------------------------------


class HomBasis:
    """Basis of Hom(source, target); each element is a tuple of per-vertex matrices."""

    def __init__(self, source, target, basis):
        self.source = source
        self.target = target
        self.basis = basis

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, k):
        return self.basis[k]


def _hom_equations(M, N):
    A = M.algebra
    p = A.p
    offs = {}
    pos = 0
    for v in A.vertices:
        offs[v] = pos
        pos += N.dim_at(v) * M.dim_at(v)
    rows = []
    for a in A.quiver.arrows:
        i, j = a.source, a.target
        mi, nj = M.dim_at(i), N.dim_at(j)
        if mi == 0 or nj == 0:
            continue
        block = np.zeros((nj * mi, pos), dtype=np.int64)
        mj, ni = M.dim_at(j), N.dim_at(i)
        # phi_j M_a - N_a phi_i = 0, unknowns vectorised row-major
        if mj:
            block[:, offs[j] : offs[j] + nj * mj] += np.kron(np.eye(nj, dtype=np.int64), M.mats[a.name].T)
        if ni:
            block[:, offs[i] : offs[i] + ni * mi] -= np.kron(N.mats[a.name], np.eye(mi, dtype=np.int64))
        rows.append(block % p)
    eqs = np.vstack(rows) if rows else np.zeros((0, pos), dtype=np.int64)
    return eqs, offs, pos


def _unflatten(M, N, vec, offs):
    out = []
    for v in M.algebra.vertices:
        n, m = N.dim_at(v), M.dim_at(v)
        out.append(vec[offs[v] : offs[v] + n * m].reshape(n, m).copy())
    return tuple(out)


def hom(M, N):
    _same_algebra(M, N)
    eqs, offs, nunk = _hom_equations(M, N)
    if nunk == 0:
        return HomBasis(M, N, [])
    null = linalg.nullspace(eqs, M.p) if eqs.shape[0] else np.eye(nunk, dtype=np.int64)
    return HomBasis(M, N, [_unflatten(M, N, row, offs) for row in null])


def hom_dim(M, N):
    _same_algebra(M, N)
    eqs, _, nunk = _hom_equations(M, N)
    if nunk == 0:
        return 0
    return nunk - linalg.rank(eqs, M.p)


def compose(g, f, p):
    """``g o f`` for per-vertex morphism tuples."""
    return tuple(linalg.matmul(gv, fv, p) for gv, fv in zip(g, f))


def is_morphism(f, M, N):
    p = M.p
    A = M.algebra
    for a in A.quiver.arrows:
        i, j = A.vertex_position(a.source), A.vertex_position(a.target)
        lhs = linalg.matmul(f[j], M.mats[a.name], p)
        rhs = linalg.matmul(N.mats[a.name], f[i], p)
        if np.any((lhs - rhs) % p):
            return False
    return True


def is_invertible(f, p):
    return all(fv.shape[0] == fv.shape[1] and linalg.rank(fv, p) == fv.shape[0] for fv in f)


def is_nilpotent(f, p):
    return all(fv.shape[0] == 0 or not np.any(linalg.matpow(fv, fv.shape[0], p)) for fv in f)


def restrict(M, bases):
    """Subrepresentation on per-vertex column bases (assumed closed under the action)."""
    A = M.algebra
    p = A.p
    bmap = dict(zip(A.vertices, bases))
    mats = {}
    for a in A.quiver.arrows:
        src, tgt = bmap[a.source], bmap[a.target]
        if src.shape[1] == 0 or tgt.shape[1] == 0:
            mats[a.name] = np.zeros((tgt.shape[1], src.shape[1]), dtype=np.int64)
            continue
        left = linalg.left_inverse(tgt, p)
        mats[a.name] = linalg.matmul(left, linalg.matmul(M.mats[a.name], src, p), p)
    return Representation(A, [b.shape[1] for b in bases], mats, check=False)


def quotient(M, bases):
    """``M / U`` for a subrepresentation given by per-vertex column bases.

    Returns ``(Q, proj)`` with ``proj`` the per-vertex projection matrices.
    """
    A = M.algebra
    p = A.p
    projs, sections = [], []
    for v, b in zip(A.vertices, bases):
        m = M.dim_at(v)
        if b.shape[1] == 0:
            pi = np.eye(m, dtype=np.int64)
        else:
            pi = linalg.left_nullspace(b, p)
        projs.append(pi)
        sections.append(linalg.left_inverse(pi.T, p).T if pi.shape[0] else np.zeros((m, 0), dtype=np.int64))
    pmap = dict(zip(A.vertices, projs))
    smap = dict(zip(A.vertices, sections))
    mats = {}
    for a in A.quiver.arrows:
        mats[a.name] = linalg.matmul(pmap[a.target], linalg.matmul(M.mats[a.name], smap[a.source], p), p)
    return Representation(A, [pi.shape[0] for pi in projs], mats, check=False), tuple(projs)


def kernel(f, M):
    bases = [linalg.nullspace(fv, M.p).T if fv.shape[1] else np.zeros((0, 0), dtype=np.int64) for fv in f]
    bases = [b if b.shape[0] == M.dims[k] else np.zeros((M.dims[k], 0), dtype=np.int64) for k, b in enumerate(bases)]
    return restrict(M, bases), tuple(bases)


def image_bases(f, N):
    out = []
    for k, fv in enumerate(f):
        if fv.shape[1] == 0 or fv.shape[0] == 0:
            out.append(np.zeros((N.dims[k], 0), dtype=np.int64))
        else:
            out.append(linalg.column_basis(fv, N.p))
    return tuple(out)


def image(f, N):
    bases = image_bases(f, N)
    return restrict(N, bases), bases


def cokernel(f, N):
    return quotient(N, image_bases(f, N))


def sum_of_images(maps, N):
    """Per-vertex column bases of the sum of the images of the given morphisms into ``N``."""
    p = N.p
    out = []
    for k in range(N.algebra.n):
        cols = [f[k] for f in maps if f[k].shape[1]]
        if not cols or N.dims[k] == 0:
            out.append(np.zeros((N.dims[k], 0), dtype=np.int64))
        else:
            out.append(linalg.column_basis(np.hstack(cols), p))
    return tuple(out)


# -- radical, top, projective covers ----------------------------------------


def radical_bases(M):
    A = M.algebra
    out = []
    for v in A.vertices:
        cols = [M.mats[a.name] for a in A.quiver.arrows if a.target == v and M.mats[a.name].shape[1]]
        if not cols or M.dim_at(v) == 0:
            out.append(np.zeros((M.dim_at(v), 0), dtype=np.int64))
        else:
            out.append(linalg.column_basis(np.hstack(cols), M.p))
    return tuple(out)


def top_generators(M):
    """Elements of M whose classes form a basis of ``M / rad M``, as (vertex, vector) pairs."""
    gens = []
    for v, rad in zip(M.algebra.vertices, radical_bases(M)):
        comp = linalg.complement_units(rad, M.dim_at(v), M.p)
        for c in range(comp.shape[1]):
            gens.append((v, comp[:, c].copy()))
    return gens


def top_dims(M):
    return tuple(m - r.shape[1] for m, r in zip(M.dims, radical_bases(M)))


def yoneda_map(gens, N):
    """Morphism ``(+)_g P(v_g) -> N`` sending the generator of the g-th summand to ``n_g``."""
    A = N.algebra
    p = A.p
    out = []
    for k in A.vertices:
        cols = []
        for v, vec in gens:
            for q in A.between(v, k):
                cols.append(linalg.matmul(N.basis_action(q), np.asarray(vec, dtype=np.int64).reshape(-1, 1), p))
        if cols:
            out.append(np.hstack(cols) % p)
        else:
            out.append(np.zeros((N.dim_at(k), 0), dtype=np.int64))
    return tuple(out)


def projective_sum(algebra, vertices):
    if not vertices:
        return zero(algebra)
    return direct_sum(*[projective(algebra, v) for v in vertices])


def projective_cover(M):
    """``(P, vertices, d0)``: a projective cover ``d0: P -> M``."""
    gens = top_generators(M)
    verts = tuple(v for v, _ in gens)
    return projective_sum(M.algebra, verts), verts, yoneda_map(gens, M)


class Presentation:
    """Minimal projective presentation ``P1 -d1-> P0 -d0-> M -> 0``.

    ``p0`` and ``p1`` list the vertices of the indecomposable projective
    summands in order.  ``x[g]`` is the image under ``d1`` of the generator of
    the g-th summand of ``P1``, as a vector in ``(P0)_{p1[g]}``.
    """

    def __init__(self, module, p0, p1, d0, kernel_rep, kernel_bases, x):
        self.module = module
        self.p0 = p0
        self.p1 = p1
        self.d0 = d0
        self.kernel = kernel_rep
        self.kernel_bases = kernel_bases
        self.x = x

    def multiplicities(self, which):
        verts = self.p0 if which == 0 else self.p1
        c = Counter(verts)
        return np.array([c[v] for v in self.module.algebra.vertices], dtype=np.int64)

    @property
    def g_vector(self):
        return self.multiplicities(0) - self.multiplicities(1)

    def d1_blocks(self):
        """For each P1-generator, its coefficients split per P0-summand: list over g of list over h."""
        A = self.module.algebra
        out = []
        for k, vec in zip(self.p1, self.x):
            pieces, pos = [], 0
            for j in self.p0:
                size = len(A.between(j, k))
                pieces.append(vec[pos : pos + size])
                pos += size
            out.append(pieces)
        return out


def min_proj_presentation(M):
    A = M.algebra
    P0, p0, d0 = projective_cover(M)
    K, kb = kernel(d0, P0)
    kgens = top_generators(K)
    p1 = tuple(v for v, _ in kgens)
    vidx = {v: k for k, v in enumerate(A.vertices)}
    x = [linalg.matmul(kb[vidx[v]], vec.reshape(-1, 1), A.p).ravel() for v, vec in kgens]
    return Presentation(M, p0, p1, d0, K, kb, x)


def presentation_dual_map(pres, N):
    """Matrix of ``Hom(P0, N) -> Hom(P1, N)`` (precomposition with d1), via Hom(P(j), N) = N_j."""
    A = N.algebra
    p = A.p
    vd = N.dims_dict()
    row_sizes = [vd[k] for k in pres.p1]
    col_sizes = [vd[j] for j in pres.p0]
    mat = np.zeros((sum(row_sizes), sum(col_sizes)), dtype=np.int64)
    r = 0
    for g, (k, pieces) in enumerate(zip(pres.p1, pres.d1_blocks())):
        c = 0
        for h, j in enumerate(pres.p0):
            block = np.zeros((vd[k], vd[j]), dtype=np.int64)
            for coeff, q in zip(pieces[h], A.between(j, k)):
                if coeff:
                    block = (block + int(coeff) * N.basis_action(q)) % p
            mat[r : r + vd[k], c : c + vd[j]] = block
            c += vd[j]
        r += vd[k]
    return mat


def is_tau_rigid(M, pres=None):
    """Hom(M, tau M) = 0, tested as surjectivity of Hom(P0, M) -> Hom(P1, M)."""
    if M.is_zero():
        return True
    pres = pres or min_proj_presentation(M)
    target = sum(M.dim_at(k) for k in pres.p1)
    if target == 0:
        return True
    return linalg.rank(presentation_dual_map(pres, M), M.p) == target


def ext1(M, N, pres=None):
    _same_algebra(M, N)
    if M.is_zero() or N.is_zero():
        return 0
    pres = pres or min_proj_presentation(M)
    if not pres.p1:
        return 0
    d1star = presentation_dual_map(pres, N)
    rk = linalg.rank(d1star, N.p) if d1star.size else 0
    return hom_dim(pres.kernel, N) - rk


def is_injective(M):
    A = M.algebra
    return all(ext1(simple(A, v), M) == 0 for v in A.vertices)


def is_projective(M):
    return not min_proj_presentation(M).p1 if not M.is_zero() else True


def pd_le_1(M, pres=None):
    if M.is_zero():
        return True
    pres = pres or min_proj_presentation(M)
    P1 = projective_sum(M.algebra, pres.p1)
    return P1.total == pres.kernel.total


def is_faithful(M):
    A = M.algebra
    p = A.p
    for s in A.vertices:
        for t in A.vertices:
            idx = A.between(s, t)
            if not idx:
                continue
            if M.dim_at(s) == 0 or M.dim_at(t) == 0:
                return False
            rows = np.vstack([M.basis_action(q).ravel() for q in idx])
            if linalg.rank(rows, p) != len(idx):
                return False
    return True


def g_vector(M):
    if M.is_zero():
        return np.zeros(M.algebra.n, dtype=np.int64)
    return min_proj_presentation(M).g_vector


def pair_g_key(summands, killed):
    gs = sorted(tuple(int(x) for x in g_vector(s)) for s in summands)
    return (tuple(gs), tuple(sorted(killed)))


# -- decomposition -----------------------------------------------------------


def _fitting_split(M, f):
    p = M.p
    n = M.total
    powered = tuple(linalg.matpow(fv, n, p) for fv in f)
    _, kb = kernel(powered, M)
    ib = image_bases(powered, M)
    return restrict(M, kb), restrict(M, ib)


def _eval_poly(coeffs, f, p):
    """Evaluate a polynomial (highest degree first) at each vertex matrix of ``f``."""
    out = []
    for fv in f:
        n = fv.shape[0]
        acc = np.zeros((n, n), dtype=np.int64)
        for c in coeffs:
            acc = (linalg.matmul(acc, fv, p) + int(c) * np.eye(n, dtype=np.int64)) % p
        out.append(acc)
    return tuple(out)


def _split_by_charpoly(f, p):
    """An endomorphism built from ``f`` that is neither nilpotent nor invertible, if one exists."""
    import sympy

    x = sympy.symbols("x")
    total = sympy.Poly(1, x, modulus=p)
    for fv in f:
        if fv.shape[0]:
            total *= sympy.Poly(linalg.charpoly(fv, p), x, modulus=p)
    _, factors = total.factor_list()
    if len(factors) < 2:
        return None
    base, mult = factors[0]
    poly = base**mult
    coeffs = [int(c) % p for c in poly.all_coeffs()]
    return _eval_poly(coeffs, f, p)


def _check_field(M, end_dim):
    if M.p <= end_dim or M.p <= M.total:
        raise FieldTooSmall(f"field too small: p={M.p} must exceed dim End(M)={end_dim} and dim M={M.total}")


def _is_local(M, basis):
    p = M.p
    k = len(basis)
    gram = np.zeros((k, k), dtype=np.int64)
    for a in range(k):
        for b in range(a, k):
            t = 0
            for fa, fb in zip(basis[a], basis[b]):
                if fa.shape[0]:
                    t += int(np.trace(linalg.matmul(fa, fb, p)))
            gram[a, b] = gram[b, a] = t % p
    return linalg.rank(gram, p) == 1


def _find_splitter(M, basis):
    p = M.p
    for f in basis:
        if not is_nilpotent(f, p) and not is_invertible(f, p):
            return f
    candidates = list(basis)
    candidates += [tuple((a + b) % p for a, b in zip(fa, fb)) for i, fa in enumerate(basis) for fb in basis[i + 1 :]]
    rng = np.random.default_rng(0)
    for _ in range(8):
        coeffs = rng.integers(0, p, size=len(basis))
        candidates.append(tuple(sum(int(c) * f[k] for c, f in zip(coeffs, basis)) % p for k in range(M.algebra.n)))
    for f in candidates:
        if not is_nilpotent(f, p) and not is_invertible(f, p):
            return f
        g = _split_by_charpoly(f, p)
        if g is not None:
            return g
    return None


def _decompose(M, out):
    if M.is_zero():
        return
    basis = hom(M, M).basis
    _check_field(M, len(basis))
    if len(basis) == 1:
        out.append(M)
        return
    f = _find_splitter(M, basis)
    if f is None:
        if not _is_local(M, basis):
            raise DecompositionError(f"could not split module with dims {M.dims} although End(M) is not local")
        out.append(M)
        return
    a, b = _fitting_split(M, f)
    _decompose(a, out)
    _decompose(b, out)


def indecomposable_summands(M):
    """Indecomposable summands of ``M`` as a list (with repetition)."""
    out = []
    _decompose(M, out)
    for s in out:
        basis = hom(s, s).basis
        if len(basis) > 1 and not _is_local(s, basis):
            raise DecompositionError(f"summand with dims {s.dims} has non-local endomorphism ring")
    return out


def decompose(M):
    """Indecomposable summands grouped into isomorphism classes: list of (summand, multiplicity)."""
    classes = []
    for s in indecomposable_summands(M):
        for entry in classes:
            if indecomposables_isomorphic(entry[0], s):
                entry[1] += 1
                break
        else:
            classes.append([s, 1])
    return [(s, m) for s, m in classes]


def basic_summands(M):
    return [s for s, _ in decompose(M)]


def indecomposables_isomorphic(X, Y):
    _same_algebra(X, Y)
    if X.dims != Y.dims:
        return False
    if X.is_zero():
        return True
    p = X.p
    fs = hom(X, Y).basis
    if not fs:
        return False
    gs = hom(Y, X).basis
    for f in fs:
        for g in gs:
            if is_invertible(compose(g, f, p), p):
                return True
    return False


def is_isomorphic(M, N):
    _same_algebra(M, N)
    if M.dims != N.dims:
        return False
    left = indecomposable_summands(M)
    right = indecomposable_summands(N)
    if len(left) != len(right):
        return False
    unmatched = list(right)
    for s in left:
        for k, t in enumerate(unmatched):
            if indecomposables_isomorphic(s, t):
                del unmatched[k]
                break
        else:
            return False
    return True


def summand_count(M):
    """Number of pairwise non-isomorphic indecomposable summands."""
    return len(decompose(M))


def is_tilting(T):
    A = T.algebra
    classes = basic_summands(T)
    if len(classes) != A.n:
        return False
    if not all(pd_le_1(s) for s in classes):
        return False
    return ext1(T, T) == 0


def tilting_report(T):
    """Per-clause evaluation of the tilting conditions."""
    classes = basic_summands(T)
    return {
        "pd_le_1": all(pd_le_1(s) for s in classes),
        "ext1_vanishes": ext1(T, T) == 0,
        "summand_count": len(classes),
        "vertices": T.algebra.n,
    }


def in_fac(X, U):
    """Whether X is a quotient of a finite direct sum of copies of U."""
    if X.is_zero():
        return True
    if U.is_zero():
        return False
    bases = sum_of_images(hom(U, X).basis, X)
    return all(b.shape[1] == d for b, d in zip(bases, X.dims))


def transpose(M, pres=None):
    """Auslander-Reiten transpose ``Tr M``, a module over the opposite algebra."""
    A = M.algebra
    op = A.opposite()
    if M.is_zero():
        return zero(op)
    pres = pres or min_proj_presentation(M)
    target = projective_sum(op, pres.p1)
    vidx = {v: k for k, v in enumerate(A.vertices)}
    gens = []
    blocks = pres.d1_blocks()
    for h, j in enumerate(pres.p0):
        vec = np.concatenate([blocks[g][h] for g in range(len(pres.p1))]) if pres.p1 else np.zeros(0, dtype=np.int64)
        gens.append((j, vec))
    if not gens:
        return target
    f = yoneda_map(gens, target)
    assert all(fv.shape[0] == target.dims[vidx[v]] for v, fv in zip(A.vertices, f))
    return cokernel(f, target)[0]


def tau(M):
    """``tau M = D Tr M`` (used by the independent rigidity oracle and diagnostics)."""
    return dual(transpose(M))


def profile(M):
    """Dimension vector as a tuple (the human-readable fingerprint of a summand)."""
    return tuple(M.dims)
