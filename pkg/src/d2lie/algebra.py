"""Lie algebras over GF(2) with sparse structure-constant tables.

A LieAlgebra is a finite basis, a bracket table storing [b_i, b_j] for
i < j as packed coordinate vectors, and an integer weight label per
basis vector.  Instances are immutable after construction.

build_chevalley_D(l) reduces the Chevalley basis of type D_l mod 2.
All simply laced structure constants are ±1, so mod 2 the table needs
no sign convention: any consistent integral choice gives the same
algebra here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import GF2Matrix, GF2Vector, PivotBasis, bit_indices
from .roots import (
    RootSystem,
    Weight,
    build_root_system,
    express_in_simple_roots,
    is_zero_weight,
    wadd,
    wdot,
    wneg,
    wzero,
)

Label = tuple


class LieAlgebra:
    """Finite-dimensional algebra with a GF(2) bracket table.

    labels   -- one opaque tag per basis vector, e.g. ("CARTAN", 3)
    weights  -- one integer weight tuple per basis vector
    brackets -- {(i, j): packed vector} for i < j, nonzero entries only
    """

    def __init__(self, labels, weights, brackets):
        labels = tuple(labels)
        weights = tuple(tuple(w) for w in weights)
        if len(labels) != len(weights):
            raise ValueError("labels and weights must align")
        dim = len(labels)
        table = {}
        for (i, j), v in brackets.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bad bracket key ({i}, {j})")
            v &= (1 << dim) - 1
            if v:
                table[(i, j)] = v
        self.dim = dim
        self.labels = labels
        self.weights = weights
        self.brackets = table
        self._pairs_with_support = None
        self._weight_index = None
        self._adjacency = None

    # -- bracket evaluation -------------------------------------------

    def bracket_basis(self, i: int, j: int) -> int:
        if i == j:
            return 0
        if i > j:
            i, j = j, i
        return self.brackets.get((i, j), 0)

    def bracket_vec_basis(self, x: int, j: int) -> int:
        """[x, b_j] for a packed vector x."""
        table = self.brackets
        out = 0
        while x:
            low = x & -x
            i = low.bit_length() - 1
            x ^= low
            if i != j:
                out ^= table.get((i, j) if i < j else (j, i), 0)
        return out

    def bracket(self, x: int, y: int) -> int:
        """Bilinear bracket of two packed vectors."""
        out = 0
        while y:
            low = y & -y
            out ^= self.bracket_vec_basis(x, low.bit_length() - 1)
            y ^= low
        return out

    # -- cached indexes ------------------------------------------------

    def weight_index(self) -> dict[Weight, tuple[int, ...]]:
        """Weight -> indices of the basis vectors carrying it."""
        if self._weight_index is None:
            idx: dict[Weight, list[int]] = {}
            for i, w in enumerate(self.weights):
                idx.setdefault(w, []).append(i)
            self._weight_index = {w: tuple(v) for w, v in idx.items()}
        return self._weight_index

    def pairs_with_support(self) -> list[list[tuple[int, int]]]:
        """For each m, the bracket keys (i, j) whose value involves b_m."""
        if self._pairs_with_support is None:
            pws: list[list[tuple[int, int]]] = [[] for _ in range(self.dim)]
            for key, v in self.brackets.items():
                for m in bit_indices(v):
                    pws[m].append(key)
            self._pairs_with_support = pws
        return self._pairs_with_support

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim})"


@dataclass(frozen=True)
class Subspace:
    """Row space of a GF2Matrix inside GF(2)^ambient."""

    ambient: int
    basis: GF2Matrix

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def contains(self, bits: int) -> bool:
        pb = PivotBasis()
        for r in self.basis.rows:
            pb.add(r)
        return pb.contains(bits)

    def canonical(self) -> GF2Matrix:
        return self.basis.row_reduce()

    def same_space(self, other: Subspace) -> bool:
        return self.ambient == other.ambient and self.canonical() == other.canonical()


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    triple: tuple[int, int, int] | None = None
    defect: int = 0

    def __bool__(self) -> bool:
        return self.ok


# -- construction -----------------------------------------------------


def build_chevalley_D(l: int) -> LieAlgebra:
    """Type D_l over GF(2): Cartans H_1..H_l, then root vectors in lex order.

    Brackets mod 2:
      [H_i, H_j] = 0
      [H_i, E_a] = <a, alpha_i> E_a
      [E_a, E_-a] = H_a, the mod-2 simple-root coordinates of a
      [E_a, E_b] = E_(a+b) when a+b is a root, else 0
    Coefficients of 2 in H_a vanish; that is correct behaviour, not data
    loss.
    """
    system = build_root_system(l)
    roots = system.roots
    dim = l + len(roots)
    labels: list[Label] = [("CARTAN", i) for i in range(1, l + 1)]
    labels += [("ROOTVEC", r) for r in roots]
    weights: list[Weight] = [wzero(l)] * l + list(roots)
    idx_of_root = {r: l + k for k, r in enumerate(roots)}

    h_alpha: dict[Weight, int] = {}
    for r in roots:
        coeffs = express_in_simple_roots(r, system)
        assert coeffs is not None
        bits = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                bits |= 1 << i
        h_alpha[r] = bits

    brackets: dict[tuple[int, int], int] = {}
    for k, a in enumerate(roots):
        ia = l + k
        for i in range(l):
            if wdot(a, system.simple[i]) & 1:
                brackets[(i, ia)] = 1 << ia
        for b in roots[k + 1:]:
            ib = idx_of_root[b]
            s = wadd(a, b)
            if is_zero_weight(s):
                if h_alpha[a]:
                    brackets[(ia, ib)] = h_alpha[a]
            elif s in system.root_set:
                brackets[(ia, ib)] = 1 << idx_of_root[s]
    return LieAlgebra(labels, weights, brackets)


# -- structural queries -----------------------------------------------


def center(L: LieAlgebra) -> Subspace:
    """Nullspace of the stacked adjoint maps z -> [z, b_j]."""
    dim = L.dim
    # Row (j, m): coefficient of b_m in [b_i, b_j], as a function of i.
    row_map: dict[tuple[int, int], int] = {}
    for (i, j), v in L.brackets.items():
        for m in bit_indices(v):
            # [b_i, b_j] contributes to constraint rows of both arguments.
            row_map[(j, m)] = row_map.get((j, m), 0) | (1 << i)
            row_map[(i, m)] = row_map.get((i, m), 0) | (1 << j)
    rows = [row_map[k] for k in sorted(row_map)]
    mat = GF2Matrix(len(rows), dim, rows)
    return Subspace(dim, mat.nullspace())


def check_jacobi(L: LieAlgebra) -> JacobiReport:
    """Exhaustive Jacobi check over all basis triples."""
    dim = L.dim
    table = L.brackets
    bvb = L.bracket_vec_basis
    get = table.get
    for i in range(dim):
        for j in range(i + 1, dim):
            vij = get((i, j), 0)
            for k in range(j + 1, dim):
                d = 0
                if vij:
                    d ^= bvb(vij, k)
                vjk = get((j, k), 0)
                if vjk:
                    d ^= bvb(vjk, i)
                vik = get((i, k), 0)
                if vik:
                    d ^= bvb(vik, j)
                if d:
                    return JacobiReport(False, (i, j, k), d)
    return JacobiReport(True)


def check_weight_additivity(L: LieAlgebra) -> bool:
    """Every stored bracket entry lands in the weight-(mu+nu) subspace."""
    for (i, j), v in L.brackets.items():
        w = wadd(L.weights[i], L.weights[j])
        for m in bit_indices(v):
            if L.weights[m] != w:
                return False
    return True


def weight_decomposition(L: LieAlgebra) -> dict[Weight, Subspace]:
    """Partition of the basis by weight label."""
    out = {}
    for w, idxs in L.weight_index().items():
        rows = [1 << i for i in idxs]
        out[w] = Subspace(L.dim, GF2Matrix(len(rows), L.dim, rows))
    return out


# -- central quotients ------------------------------------------------


def quotient_with_projection(
    L: LieAlgebra, Z: Subspace
) -> tuple[LieAlgebra, GF2Matrix]:
    """Quotient by a central subspace plus the old-basis projection matrix.

    Coset representatives drop the highest-index generator of each
    central basis row; the choice is arbitrary but fixed, and every
    downstream quantity is representative-independent because Z is
    central.
    """
    dim = L.dim
    if Z.ambient != dim:
        raise ValueError("subspace ambient dimension mismatch")
    for z in Z.basis.rows:
        for j in range(dim):
            if L.bracket_vec_basis(z, j):
                raise ValueError("subspace is not central")
        for m in bit_indices(z):
            if not is_zero_weight(L.weights[m]):
                raise ValueError("central generators must be weight-0 combinations")

    # Echelonize the generators, pivoting on the highest set bit; keep the
    # rows fully reduced so each pivot appears in exactly one generator.
    reduced: list[int] = []
    for z in Z.basis.rows:
        progress = True
        while z and progress:
            progress = False
            for r in reduced:
                if (z >> (r.bit_length() - 1)) & 1:
                    z ^= r
                    progress = True
        if z:
            p = z.bit_length() - 1
            reduced = [r ^ z if (r >> p) & 1 else r for r in reduced]
            reduced.append(z)

    subst = {z.bit_length() - 1: z ^ (1 << (z.bit_length() - 1)) for z in reduced}
    dropped = set(subst)
    kept = [i for i in range(dim) if i not in dropped]
    new_pos = {old: new for new, old in enumerate(kept)}

    def project(bits: int) -> int:
        for d, rest in subst.items():
            if (bits >> d) & 1:
                bits ^= (1 << d) ^ rest
        out = 0
        while bits:
            low = bits & -bits
            out |= 1 << new_pos[low.bit_length() - 1]
            bits ^= low
        return out

    if not dropped:
        return LieAlgebra(L.labels, L.weights, dict(L.brackets)), GF2Matrix.identity(dim)

    labels = [("COSET", L.labels[i]) for i in kept]
    weights = [L.weights[i] for i in kept]
    brackets = {}
    for a in range(len(kept)):
        for b in range(a + 1, len(kept)):
            v = project(L.bracket_basis(kept[a], kept[b]))
            if v:
                brackets[(a, b)] = v
    proj = GF2Matrix(dim, len(kept), [project(1 << i) for i in range(dim)])
    return LieAlgebra(labels, weights, brackets), proj


def quotient_by_center(L: LieAlgebra, Z: Subspace) -> LieAlgebra:
    return quotient_with_projection(L, Z)[0]


# -- expected centre generators ---------------------------------------


def expected_center_generators(l: int) -> list[GF2Vector]:
    """H_l + H_(l-1), plus H_(l-1) + H_(l-3) + ... + H_3 + H_1 for even l."""
    dim = l * (2 * l - 1)
    gens = [GF2Vector.from_support(dim, [l - 2, l - 1])]
    if l % 2 == 0:
        gens.append(GF2Vector.from_support(dim, list(range(0, l - 1, 2))))
    return gens


# -- serialization ----------------------------------------------------


def format_label(label: Label) -> str:
    kind = label[0]
    if kind == "CARTAN":
        return f"H{label[1]}"
    if kind == "ROOTVEC":
        return "E(" + ",".join(str(c) for c in label[1]) + ")"
    if kind == "COSET":
        return "[" + format_label(label[1]) + "]"
    if kind == "MONO":
        a, b = label[1]
        return f"e{a}^e{b}"
    return str(label)


def algebra_to_json(L: LieAlgebra) -> dict:
    """JSON document: dim, labels, weights, sparse bracket triples."""
    return {
        "dim": L.dim,
        "labels": [format_label(x) for x in L.labels],
        "weights": [list(w) for w in L.weights],
        "brackets": [
            [i, j, sorted(bit_indices(v))]
            for (i, j), v in sorted(L.brackets.items())
        ],
    }


def chevalley_rank(L: LieAlgebra) -> int:
    """Recover l from a build_chevalley_D result (weight-vector length)."""
    if not L.weights:
        raise ValueError("empty algebra")
    return len(L.weights[0])


def chevalley_root_system(L: LieAlgebra) -> RootSystem:
    return build_root_system(chevalley_rank(L))


__all__ = [
    "LieAlgebra",
    "Subspace",
    "JacobiReport",
    "build_chevalley_D",
    "center",
    "check_jacobi",
    "check_weight_additivity",
    "weight_decomposition",
    "quotient_by_center",
    "quotient_with_projection",
    "expected_center_generators",
    "algebra_to_json",
    "format_label",
    "chevalley_rank",
    "chevalley_root_system",
]
