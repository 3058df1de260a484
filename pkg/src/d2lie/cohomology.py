"""Weight-graded Chevalley-Eilenberg cochains with adjoint coefficients.

Cochains are alternating by construction: they are keyed on sets of
basis indices, the right notion in characteristic 2 where symmetric and
skew-symmetric maps coincide but alternating is strictly stronger.

The differential, with every sign trivial mod 2, is

    (d c)(x_0..x_n) = sum_i [x_i, c(.. x_i dropped ..)]
                    + sum_{i<j} c([x_i, x_j], .. x_i, x_j dropped ..)

It preserves weight, so second cohomology is computed one weight block
at a time; the ungraded computation is kept only as a small-rank test
oracle.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .algebra import LieAlgebra
from .gf2 import GF2Matrix, GF2Vector, PivotBasis, bit_indices
from .roots import Weight, wadd, wsub


class Cochain:
    """Sparse alternating multilinear map, keyed on index subsets.

    data maps sorted index tuples (the arguments) to packed value
    vectors.  Degrees 1..3 form the working complex; degree 4 exists
    only as the image of a degree-3 differential.
    """

    __slots__ = ("degree", "dim", "data")

    def __init__(self, degree: int, dim: int, data: dict | None = None):
        if not 1 <= degree <= 4:
            raise ValueError(f"unsupported cochain degree {degree}")
        clean = {}
        for key, v in (data or {}).items():
            key = tuple(sorted(key))
            if len(key) != degree or len(set(key)) != degree:
                raise ValueError(f"bad key {key} for degree {degree}")
            if not all(0 <= i < dim for i in key):
                raise ValueError(f"key {key} out of range")
            v &= (1 << dim) - 1
            if v:
                clean[key] = clean.get(key, 0) ^ v
        self.degree = degree
        self.dim = dim
        self.data = {k: v for k, v in clean.items() if v}

    @classmethod
    def zero(cls, degree: int, dim: int) -> Cochain:
        return cls(degree, dim, {})

    @classmethod
    def single(cls, degree: int, dim: int, key, value_bits: int) -> Cochain:
        return cls(degree, dim, {tuple(key): value_bits})

    def value(self, key) -> int:
        return self.data.get(tuple(sorted(key)), 0)

    def __add__(self, other: Cochain) -> Cochain:
        if (self.degree, self.dim) != (other.degree, other.dim):
            raise ValueError("cochain shape mismatch")
        data = dict(self.data)
        for k, v in other.data.items():
            data[k] = data.get(k, 0) ^ v
        return Cochain(self.degree, self.dim, data)

    def is_zero(self) -> bool:
        return not self.data

    def eval_basis(self, *indices: int) -> int:
        if len(indices) != self.degree:
            raise ValueError("arity mismatch")
        if len(set(indices)) != self.degree:
            return 0
        return self.data.get(tuple(sorted(indices)), 0)

    def eval_vec_basis(self, x: int, c: int) -> int:
        """Bilinear value on (packed vector, basis index c); degree 2 only."""
        if self.degree != 2:
            raise ValueError("eval_vec_basis needs a degree-2 cochain")
        data = self.data
        out = 0
        while x:
            low = x & -x
            m = low.bit_length() - 1
            x ^= low
            if m != c:
                out ^= data.get((m, c) if m < c else (c, m), 0)
        return out

    def eval_pair(self, x: int, y: int) -> int:
        """Fully bilinear value on two packed vectors; degree 2 only."""
        if self.degree != 2:
            raise ValueError("eval_pair needs a degree-2 cochain")
        out = 0
        for (i, j), v in self.data.items():
            if (((x >> i) & (y >> j)) ^ ((x >> j) & (y >> i))) & 1:
                out ^= v
        return out

    def items_sorted(self):
        return sorted(self.data.items())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and self.dim == other.dim
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.degree, self.dim, tuple(sorted(self.data.items()))))

    def __repr__(self) -> str:
        return f"Cochain(degree={self.degree}, support={len(self.data)})"


def basis_cochain_weight(L: LieAlgebra, key, value_index: int) -> Weight:
    """weight(value) minus the sum of the argument weights."""
    w = L.weights[value_index]
    for i in key:
        w = wsub(w, L.weights[i])
    return w


def cochain_weight(L: LieAlgebra, c: Cochain) -> Weight | None:
    """Weight of a homogeneous cochain; None when zero; error when mixed."""
    w = None
    for key, bits in c.data.items():
        for m in bit_indices(bits):
            cand = basis_cochain_weight(L, key, m)
            if w is None:
                w = cand
            elif w != cand:
                raise ValueError("cochain is not weight-homogeneous")
    return w


# -- differential ------------------------------------------------------


def _insert(key: tuple, a: int) -> tuple:
    n = len(key)
    if n == 1:
        i = key[0]
        return (a, i) if a < i else (i, a)
    if n == 2:
        i, j = key
        if a < i:
            return (a, i, j)
        if a < j:
            return (i, a, j)
        return (i, j, a)
    return tuple(sorted((*key, a)))


def _merge(rest: tuple, a: int, b: int) -> tuple:
    if a > b:
        a, b = b, a
    if not rest:
        return (a, b)
    if len(rest) == 1:
        c = rest[0]
        if c < a:
            return (c, a, b)
        if c < b:
            return (a, c, b)
        return (a, b, c)
    return tuple(sorted((*rest, a, b)))


def _diff_basis(L: LieAlgebra, key: tuple, k: int) -> dict[tuple, int]:
    """Differential of the basis cochain (key -> b_k), as a sparse dict."""
    out: dict[tuple, int] = {}
    table = L.brackets
    get = table.get
    dim = L.dim
    for a in range(dim):
        if a in key or a == k:
            continue
        v = get((a, k) if a < k else (k, a), 0)
        if v:
            t = _insert(key, a)
            out[t] = out.get(t, 0) ^ v
    kbit = 1 << k
    pws = L.pairs_with_support()
    for m in key:
        rest = tuple(x for x in key if x != m)
        for a, b in pws[m]:
            if a in rest or b in rest:
                continue
            t = _merge(rest, a, b)
            out[t] = out.get(t, 0) ^ kbit
    return {t: v for t, v in out.items() if v}


def differential(L: LieAlgebra, c: Cochain) -> Cochain:
    """Chevalley-Eilenberg differential; degrees 1..3 accepted.

    Degree 3 is admitted (image degree 4) solely so that cocycle
    preconditions on degree-3 inputs can be machine-checked.
    """
    if c.degree not in (1, 2, 3):
        raise ValueError(f"differential not supported in degree {c.degree}")
    acc: dict[tuple, int] = {}
    for key, bits in c.data.items():
        for k in bit_indices(bits):
            for t, v in _diff_basis(L, key, k).items():
                acc[t] = acc.get(t, 0) ^ v
    return Cochain(c.degree + 1, c.dim, acc)


# -- weight blocks -----------------------------------------------------


def _block_pairs(L: LieAlgebra, n: int, mu: Weight) -> list[tuple[tuple, int]]:
    """Ordered basis of the weight-mu degree-n cochains, as (key, value) pairs."""
    wt_idx = L.weight_index()
    weights = L.weights
    dim = L.dim
    out: list[tuple[tuple, int]] = []
    if n == 1:
        for i in range(dim):
            for k in wt_idx.get(wadd(mu, weights[i]), ()):
                out.append(((i,), k))
    elif n == 2:
        for i in range(dim):
            wi = wadd(mu, weights[i])
            for j in range(i + 1, dim):
                for k in wt_idx.get(wadd(wi, weights[j]), ()):
                    out.append(((i, j), k))
    elif n == 3:
        for i in range(dim):
            wi = wadd(mu, weights[i])
            for j in range(i + 1, dim):
                wij = wadd(wi, weights[j])
                for h in range(j + 1, dim):
                    for k in wt_idx.get(wadd(wij, weights[h]), ()):
                        out.append(((i, j, h), k))
    else:
        raise ValueError(f"no basis enumeration in degree {n}")
    return out


def cochain_basis(L: LieAlgebra, n: int, mu: Weight) -> list[Cochain]:
    """Basis cochains of weight mu in canonical (key, value) order."""
    return [
        Cochain.single(n, L.dim, key, 1 << k) for key, k in _block_pairs(L, n, mu)
    ]


def _diff_matrix(
    L: LieAlgebra,
    src: list[tuple[tuple, int]],
    dst: list[tuple[tuple, int]],
) -> GF2Matrix:
    """Matrix of the differential, rows over dst, columns over src."""
    dst_index = {pk: p for p, pk in enumerate(dst)}
    rows = [0] * len(dst)
    for col, (key, k) in enumerate(src):
        for t, v in _diff_basis(L, key, k).items():
            for m in bit_indices(v):
                try:
                    rows[dst_index[(t, m)]] |= 1 << col
                except KeyError as exc:  # pragma: no cover - d preserves weight
                    raise AssertionError(
                        "differential left the weight block"
                    ) from exc
    return GF2Matrix(len(dst), len(src), rows)


@dataclass(frozen=True)
class WeightBlock:
    """One weight's slice of the complex with its two differentials."""

    mu: Weight
    c1: tuple
    c2: tuple
    c3: tuple
    d1: GF2Matrix  # C1 -> C2, rows over c2
    d2: GF2Matrix  # C2 -> C3, rows over c3

    def h2_dim(self) -> int:
        return len(self.c2) - self.d2.rank() - self.d1.rank()

    def composite_is_zero(self) -> bool:
        product = self.d2 @ self.d1
        return all(r == 0 for r in product.rows)


def weight_block(L: LieAlgebra, mu: Weight) -> WeightBlock:
    c1 = _block_pairs(L, 1, mu)
    c2 = _block_pairs(L, 2, mu)
    c3 = _block_pairs(L, 3, mu)
    d1 = _diff_matrix(L, c1, c2)
    d2 = _diff_matrix(L, c2, c3)
    return WeightBlock(mu, tuple(c1), tuple(c2), tuple(c3), d1, d2)


# -- ranks without materializing the target basis ----------------------


def _lazy_image_rank(L: LieAlgebra, src: list[tuple[tuple, int]]) -> int:
    """Rank of the differential on src, indexing target coordinates lazily."""
    target_pos: dict[tuple, int] = {}
    basis = PivotBasis()
    for key, k in src:
        img = 0
        for t, v in _diff_basis(L, key, k).items():
            for m in bit_indices(v):
                tk = (t, m)
                pos = target_pos.get(tk)
                if pos is None:
                    pos = len(target_pos)
                    target_pos[tk] = pos
                img |= 1 << pos
        basis.add(img)
    return basis.rank


def _d1_rank_into(
    L: LieAlgebra, mu: Weight, c2_pos: dict[tuple, int]
) -> int:
    basis = PivotBasis()
    for key, k in _block_pairs(L, 1, mu):
        img = 0
        for t, v in _diff_basis(L, key, k).items():
            for m in bit_indices(v):
                img |= 1 << c2_pos[(t, m)]
        basis.add(img)
    return basis.rank


def cohomology_dim(L: LieAlgebra, mu: Weight, n: int = 2) -> int:
    """dim H^2 at weight mu (n is fixed at 2; the complex stops at C^3)."""
    if n != 2:
        raise ValueError("only second cohomology is computed")
    c2 = _block_pairs(L, 2, mu)
    if not c2:
        return 0
    rank2 = _lazy_image_rank(L, c2)
    c2_pos = {pk: p for p, pk in enumerate(c2)}
    rank1 = _d1_rank_into(L, mu, c2_pos)
    h2 = len(c2) - rank2 - rank1
    assert h2 >= 0
    return h2


# -- full weight survey ------------------------------------------------


def _c2_groups(L: LieAlgebra) -> dict[Weight, list[tuple[tuple, int]]]:
    """All degree-2 basis cochains grouped by weight."""
    weights = L.weights
    dim = L.dim
    args2: dict[Weight, list[tuple[int, int]]] = {}
    for i in range(dim):
        wi = weights[i]
        for j in range(i + 1, dim):
            args2.setdefault(wadd(wi, weights[j]), []).append((i, j))
    groups: dict[Weight, list[tuple[tuple, int]]] = {}
    for s, keys in args2.items():
        for k in range(dim):
            bucket = groups.setdefault(wsub(weights[k], s), [])
            for key in keys:
                bucket.append((key, k))
    return groups


def _survey_block(L: LieAlgebra, mu: Weight, c2: list[tuple[tuple, int]]) -> dict:
    rank2 = _lazy_image_rank(L, c2)
    c2_pos = {pk: p for p, pk in enumerate(c2)}
    rank1 = _d1_rank_into(L, mu, c2_pos)
    n2 = len(c2)
    h2 = n2 - rank2 - rank1
    assert h2 >= 0
    return {
        "weight": mu,
        "dim_c2": n2,
        "dim_z2": n2 - rank2,
        "dim_b2": rank1,
        "dim_h2": h2,
    }


def h2_survey_rows(L: LieAlgebra, jobs: int = 1) -> list[dict]:
    """Block statistics for every weight with nonzero H^2, in weight order."""
    groups = _c2_groups(L)
    mus = sorted(groups)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda m: _survey_block(L, m, groups[m]), mus))
    else:
        rows = [_survey_block(L, mu, groups[mu]) for mu in mus]
    return [r for r in rows if r["dim_h2"]]


def h2_weight_survey(L: LieAlgebra, jobs: int = 1) -> dict[Weight, int]:
    """Map weight -> dim H^2 over the weights where it is nonzero."""
    return {r["weight"]: r["dim_h2"] for r in h2_survey_rows(L, jobs=jobs)}


# -- cocycle / coboundary tests ----------------------------------------


def is_coboundary(L: LieAlgebra, c: Cochain) -> tuple[bool, Cochain | None]:
    """Whether c is a differential, plus one preimage when it is.

    Requires a weight-homogeneous cocycle of degree 2 or 3.
    """
    if c.degree not in (2, 3):
        raise ValueError("coboundary test supports degrees 2 and 3")
    if not differential(L, c).is_zero():
        raise ValueError("input is not a cocycle")
    if c.is_zero():
        return True, Cochain.zero(c.degree - 1, c.dim)
    mu = cochain_weight(L, c)
    src = _block_pairs(L, c.degree - 1, mu)
    dst = _block_pairs(L, c.degree, mu)
    dst_index = {pk: p for p, pk in enumerate(dst)}
    b = 0
    for key, v in c.data.items():
        for m in bit_indices(v):
            b |= 1 << dst_index[(key, m)]
    mat = _diff_matrix(L, src, dst)
    x = mat.solve(GF2Vector(len(dst), b))
    if x is None:
        return False, None
    pre: dict[tuple, int] = {}
    for col in bit_indices(x.bits):
        key, k = src[col]
        pre[key] = pre.get(key, 0) ^ (1 << k)
    return True, Cochain(c.degree - 1, c.dim, pre)


def representative(L: LieAlgebra, mu: Weight) -> Cochain:
    """A cocycle generating a complement of the coboundaries at weight mu.

    Deterministic: first kernel vector of the block's d2 (in canonical
    basis order) that is not a coboundary.
    """
    block = weight_block(L, mu)
    kernel = block.d2.nullspace()
    for r in range(kernel.nrows):
        v = kernel.rows[r]
        if block.d1.solve(GF2Vector(len(block.c2), v)) is None:
            data: dict[tuple, int] = {}
            for col in bit_indices(v):
                key, k = block.c2[col]
                data[key] = data.get(key, 0) ^ (1 << k)
            return Cochain(2, L.dim, data)
    raise ValueError(f"H^2 vanishes at weight {mu}")


# -- ungraded oracle ---------------------------------------------------


def ungraded_h2_dim(L: LieAlgebra) -> int:
    """dim H^2 computed on the whole complex, ignoring the grading.

    Quadratically larger than the graded path; intended as a test
    oracle for small algebras only.
    """
    dim = L.dim
    c2 = [((i, j), k) for i in range(dim) for j in range(i + 1, dim) for k in range(dim)]
    rank2 = _lazy_image_rank(L, c2)
    c2_pos = {pk: p for p, pk in enumerate(c2)}
    basis = PivotBasis()
    for i in range(dim):
        for k in range(dim):
            img = 0
            for t, v in _diff_basis(L, (i,), k).items():
                for m in bit_indices(v):
                    img |= 1 << c2_pos[(t, m)]
            basis.add(img)
    return len(c2) - rank2 - basis.rank
