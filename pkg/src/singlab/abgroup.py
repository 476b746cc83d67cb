"""Finitely generated abelian groups presented by integer relation matrices.

A group is presented as Z^n / L where L is the row space of an integer
relation matrix.  Smith normal form gives the classification Z^r + sum of
Z/t_i, a canonical form for elements, and (when the free rank is one) a
normalized degree map.  These groups carry the multigradings used everywhere
else in the package: the weight group of a Fermat potential, box-minus
products, and their degree maps.

Conventions fixed here, used by every consumer:

* Smith normal form is U * M * V = S (transforms on both sides of the
  input), with U and V unimodular and S diagonal with a divisibility chain.
  Invariant factors equal to 1 are suppressed in reports; zero diagonal
  entries contribute to the free rank.
* Element canonical form: torsion residues reduced into [0, t_i), free
  coordinates left as unreduced integers.
* The degree map of a rank-one pointed group is the quotient by the torsion
  subgroup, normalized so the marked element has positive degree.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg

__all__ = [
    "IntMatrix",
    "SmithForm",
    "FGAbelianGroup",
    "GroupElement",
    "PointedAbelianGroup",
    "smith_normal_form",
    "group_from_relations",
    "reduce_element",
    "boxminus",
    "degree",
    "torsion_order",
    "weight_group",
    "pointed_Z",
]


class IntMatrix:
    """Immutable integer matrix, entries stored row-major.

    Arbitrary-precision throughout; no overflow policy is needed.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(int(x) for x in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        return cls(n, m, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[t] * other[t, j] for t in range(self.cols)))
        return IntMatrix(self.rows, other.cols, out)

    def kronecker(self, other: "IntMatrix") -> "IntMatrix":
        """Kronecker product, blocks ordered row-major."""
        ent = []
        for i1 in range(self.rows):
            for i2 in range(other.rows):
                for j1 in range(self.cols):
                    for j2 in range(other.cols):
                        ent.append(self[i1, j1] * other[i2, j2])
        return IntMatrix(self.rows * other.rows, self.cols * other.cols, ent)

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        d = linalg.det(self.to_rows())
        assert d.denominator == 1
        return int(d)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix.from_rows({self.to_rows()!r})"


@dataclass(frozen=True)
class SmithForm:
    """U * M * V = S with U, V unimodular and S diagonal, d_i | d_{i+1}."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    invariant_factors: tuple  # diagonal entries > 1
    rank: int                 # number of nonzero diagonal entries

    def diagonal(self):
        return [self.S[i, i] for i in range(min(self.S.rows, self.S.cols))]


def _snf_rows(M):
    """Diagonalize M by unimodular row/column operations, tracking them.

    Pivots on the smallest nonzero entry of the remaining block and insists
    the pivot divide that whole block, so the diagonal comes out with the
    divisibility chain and zeros at the end.  Deterministic for fixed input.
    """
    S = [row[:] for row in M]
    n = len(S)
    m = len(S[0]) if S else 0
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    V = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    t = 0
    while t < min(n, m):
        pivot = None
        best = None
        for i in range(t, n):
            for j in range(t, m):
                a = S[i][j]
                if a and (best is None or abs(a) < best):
                    best = abs(a)
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            S[t], S[pi] = S[pi], S[t]
            U[t], U[pi] = U[pi], U[t]
        if pj != t:
            for row in S:
                row[t], row[pj] = row[pj], row[t]
            for row in V:
                row[t], row[pj] = row[pj], row[t]
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        p = S[t][t]
        dirty = False
        for i in range(t + 1, n):
            if S[i][t]:
                q = S[i][t] // p
                S[i] = [a - q * b for a, b in zip(S[i], S[t])]
                U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                dirty = dirty or S[i][t] != 0
        for j in range(t + 1, m):
            if S[t][j]:
                q = S[t][j] // p
                for row in S:
                    row[j] -= q * row[t]
                for row in V:
                    row[j] -= q * row[t]
                dirty = dirty or S[t][j] != 0
        if dirty:
            continue
        offender = None
        for i in range(t + 1, n):
            for j in range(t + 1, m):
                if S[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            # fold the offending row into the pivot row; the next pass finds
            # a strictly smaller pivot, so this terminates
            S[t] = [a + b for a, b in zip(S[t], S[offender])]
            U[t] = [a + b for a, b in zip(U[t], U[offender])]
            continue
        t += 1
    return U, S, V


def smith_normal_form(M: IntMatrix) -> SmithForm:
    """Smith normal form U * M * V = S.

    Zero and non-square matrices are allowed; output is deterministic for a
    fixed input.
    """
    if M.rows == 0:
        return SmithForm(IntMatrix.identity(0), IntMatrix.zero(0, M.cols),
                         IntMatrix.identity(M.cols), (), 0)
    U_rows, S_rows, V_rows = _snf_rows(M.to_rows())
    U = IntMatrix.from_rows(U_rows)
    S = IntMatrix.from_rows(S_rows)
    V = IntMatrix.from_rows(V_rows)
    assert U.mul(M).mul(V) == S, "SNF transform check failed"
    diag = [S[i, i] for i in range(min(S.rows, S.cols))]
    rank = sum(1 for d in diag if d != 0)
    for i in range(rank - 1):
        assert diag[i + 1] % diag[i] == 0, "divisibility chain broken"
    factors = tuple(d for d in diag if d > 1)
    return SmithForm(U, S, V, factors, rank)


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^n modulo the row space of an integer relation matrix."""

    num_generators: int
    relations: IntMatrix
    normal_form: SmithForm
    free_rank: int
    invariant_factors: tuple

    def signature(self):
        """Presentation identity used for element compatibility checks."""
        return (self.num_generators, self.relations.rows, self.relations.entries)

    def torsion_order(self) -> int:
        return math.prod(self.invariant_factors) if self.invariant_factors else 1

    def zero(self) -> "GroupElement":
        return reduce_element(self, [0] * self.num_generators)

    def generator(self, i: int) -> "GroupElement":
        v = [0] * self.num_generators
        v[i] = 1
        return reduce_element(self, v)

    def element(self, coords) -> "GroupElement":
        return reduce_element(self, coords)

    def _v_inverse(self):
        V = self.normal_form.V.to_rows()
        Vinv = linalg.inverse([[Fraction(x) for x in row] for row in V])
        assert all(x.denominator == 1 for row in Vinv for x in row)
        return [[int(x) for x in row] for row in Vinv]

    def from_canonical(self, residues, free) -> "GroupElement":
        """Rebuild an element from canonical (torsion residues, free) data."""
        snf = self.normal_form
        n = self.num_generators
        diag = snf.diagonal()
        y = [0] * n
        it = iter(residues)
        for i in range(snf.rank):
            if diag[i] > 1:
                y[i] = next(it)
        for k, i in enumerate(range(snf.rank, n)):
            y[i] = free[k]
        Vinv = self._v_inverse()
        v = [sum(y[t] * Vinv[t][j] for t in range(n)) for j in range(n)]
        return reduce_element(self, v)

    def torsion_elements(self):
        """All torsion elements, enumerated through canonical residues."""
        zero_free = (0,) * self.free_rank
        out = []
        for residues in itertools.product(*[range(t) for t in self.invariant_factors]):
            out.append(self.from_canonical(residues, zero_free))
        return out

    def report(self):
        return {
            "generators": self.num_generators,
            "relations": self.relations.to_rows(),
            "free_rank": self.free_rank,
            "invariant_factors": list(self.invariant_factors),
        }


@dataclass(frozen=True, eq=False)
class GroupElement:
    """Element of an FGAbelianGroup with a unique canonical form.

    Two elements are equal iff their presentations and canonical forms
    agree; the canonical form is invariant under adding relation rows.
    """

    group: FGAbelianGroup = field(repr=False)
    coordinates: tuple
    canonical: tuple  # (torsion residues, free coordinates)
    _sig: tuple = field(repr=False)

    def __eq__(self, other):
        return (isinstance(other, GroupElement) and self._sig == other._sig
                and self.canonical == other.canonical)

    def __hash__(self):
        return hash((self._sig, self.canonical))

    def _check(self, other):
        if self._sig != other._sig:
            raise ValueError("elements of different groups")

    def __add__(self, other):
        self._check(other)
        return reduce_element(self.group,
                              [a + b for a, b in zip(self.coordinates, other.coordinates)])

    def __sub__(self, other):
        self._check(other)
        return reduce_element(self.group,
                              [a - b for a, b in zip(self.coordinates, other.coordinates)])

    def __neg__(self):
        return reduce_element(self.group, [-a for a in self.coordinates])

    def __mul__(self, k: int):
        return reduce_element(self.group, [k * a for a in self.coordinates])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        residues, free = self.canonical
        return not any(residues) and not any(free)

    def is_torsion(self) -> bool:
        return not any(self.canonical[1])


def group_from_relations(n: int, relations: IntMatrix) -> FGAbelianGroup:
    """The quotient of Z^n by the row space of `relations`."""
    if relations.rows > 0 and relations.cols != n:
        raise ValueError(f"relations have {relations.cols} columns, expected {n}")
    if relations.rows == 0:
        relations = IntMatrix.zero(0, n)
    snf = smith_normal_form(relations)
    return FGAbelianGroup(n, relations, snf, n - snf.rank, snf.invariant_factors)


def reduce_element(G: FGAbelianGroup, v) -> GroupElement:
    """Canonical form of the class of v in G."""
    v = [int(x) for x in v]
    if len(v) != G.num_generators:
        raise ValueError(f"vector of length {len(v)}, expected {G.num_generators}")
    snf = G.normal_form
    n = G.num_generators
    V = snf.V
    y = [sum(v[t] * V[t, j] for t in range(n)) for j in range(n)]
    diag = snf.diagonal()
    residues = tuple(y[i] % diag[i] for i in range(snf.rank) if diag[i] > 1)
    free = tuple(y[i] for i in range(snf.rank, n))
    return GroupElement(G, tuple(v), (residues, free), G.signature())


def torsion_order(G: FGAbelianGroup) -> int:
    """Product of the invariant factors.

    For the weight group of (d_0, ..., d_n) this equals
    d_0 ... d_n / lcm(d_0, ..., d_n).
    """
    return G.torsion_order()


@dataclass(frozen=True)
class PointedAbelianGroup:
    """A group with a distinguished non-torsion element and a degree map.

    When the free rank is one, `degree` is the normalized quotient by the
    torsion subgroup, oriented so the marked element has positive degree.
    `embeddings` records the component maps into a box-minus product (one
    column map per component).
    """

    group: FGAbelianGroup
    marked: GroupElement
    embeddings: tuple = ()

    def __post_init__(self):
        if self.marked.is_torsion():
            raise ValueError("marked element is torsion")

    def _degree_sign(self) -> int:
        if self.group.free_rank != 1:
            raise ValueError("degree map needs free rank 1")
        return 1 if self.marked.canonical[1][0] > 0 else -1

    def degree(self, e: GroupElement) -> int:
        """Degree of an element; zero exactly on torsion, surjective onto Z."""
        if e._sig != self.marked._sig:
            raise ValueError("element of a different group")
        return self._degree_sign() * e.canonical[1][0]

    def embed(self, component: int, coords) -> GroupElement:
        """Image of a component element under the recorded embedding."""
        M = self.embeddings[component]
        coords = list(coords)
        if len(coords) != M.cols:
            raise ValueError("coordinate length mismatch")
        v = [sum(M[i, j] * coords[j] for j in range(M.cols)) for i in range(M.rows)]
        return reduce_element(self.group, v)

    def elements_of_degree(self, k: int):
        """All elements of a given degree (a torsion coset)."""
        base = self.group.from_canonical(
            (0,) * len(self.group.invariant_factors),
            (self._degree_sign() * k,) * 1)
        return [base + t for t in self.group.torsion_elements()]

    def report(self):
        rep = self.group.report()
        rep["marked"] = list(self.marked.coordinates)
        if self.group.free_rank == 1:
            rep["generator_degrees"] = [
                self.degree(self.group.generator(i))
                for i in range(self.group.num_generators)
            ]
        return rep


def degree(A: PointedAbelianGroup, e: GroupElement) -> int:
    return A.degree(e)


def boxminus(A: PointedAbelianGroup, B: PointedAbelianGroup) -> PointedAbelianGroup:
    """A boxminus B: (A + B) / (marked_A, -marked_B), marked at the common image.

    The degree map of the result is the normalized one; on embedded
    elements it agrees with
    (deg(d') deg(a) + deg(d) deg(b)) / gcd(deg(d), deg(d')).
    """
    if A.marked.is_torsion() or B.marked.is_torsion():
        raise ValueError("marked element is torsion")
    nA, nB = A.group.num_generators, B.group.num_generators
    n = nA + nB
    rows = []
    for i in range(A.group.relations.rows):
        rows.append(list(A.group.relations.row(i)) + [0] * nB)
    for i in range(B.group.relations.rows):
        rows.append([0] * nA + list(B.group.relations.row(i)))
    rows.append(list(A.marked.coordinates) + [-c for c in B.marked.coordinates])
    G = group_from_relations(n, IntMatrix.from_rows(rows))
    marked = reduce_element(G, list(A.marked.coordinates) + [0] * nB)

    def inject(offset: int, small: int) -> IntMatrix:
        return IntMatrix(n, small,
                         [1 if i == offset + j else 0
                          for i in range(n) for j in range(small)])

    embA, embB = inject(0, nA), inject(nA, nB)
    embeddings = []
    for M in (A.embeddings or (IntMatrix.identity(nA),)):
        embeddings.append(embA.mul(M))
    for M in (B.embeddings or (IntMatrix.identity(nB),)):
        embeddings.append(embB.mul(M))
    return PointedAbelianGroup(G, marked, tuple(embeddings))


def pointed_Z(marked: int) -> PointedAbelianGroup:
    """(Z, marked), the building block of weight groups."""
    if marked == 0:
        raise ValueError("marked element is torsion")
    G = group_from_relations(1, IntMatrix.zero(0, 1))
    return PointedAbelianGroup(G, reduce_element(G, [marked]))


def weight_group(d) -> PointedAbelianGroup:
    """The group Z^{n+1} / (d_i e_i - d_j e_j) with marked element d_0 e_0.

    Free rank one; the generator e_i has degree lcm(d) / d_i and the torsion
    subgroup has order d_0 ... d_n / lcm(d).
    """
    d = list(d)
    if not d:
        raise ValueError("empty weight sequence")
    if any(x < 1 for x in d):
        raise ValueError("weights must be >= 1")
    n = len(d)
    rows = []
    for i in range(n - 1):
        r = [0] * n
        r[i] = d[i]
        r[i + 1] = -d[i + 1]
        rows.append(r)
    rel = IntMatrix.from_rows(rows) if rows else IntMatrix.zero(0, n)
    G = group_from_relations(n, rel)
    marked = [0] * n
    marked[0] = d[0]
    embeddings = tuple(
        IntMatrix(n, 1, [1 if i == j else 0 for i in range(n)]) for j in range(n)
    )
    return PointedAbelianGroup(G, reduce_element(G, marked), embeddings)
