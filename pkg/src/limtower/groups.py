"""Finitely generated abelian groups with exact integer arithmetic.

Groups are kept in canonical form: a free rank together with the chain of
invariant factors d_1 | d_2 | ... | d_k, each >= 2.  Elements are integer
coordinate vectors over the canonical generators (torsion generators first,
free generators last), with torsion coordinates reduced into [0, d_i).
Two canonical groups are isomorphic iff their dataclass fields are equal,
which is what keeps the higher layers cheap: every "are these isomorphic"
question bottoms out in tuple equality here.

All linear algebra is plain lists of Python ints.  Intermediate entries of
a Smith reduction can exceed any fixed word size, so nothing here is
delegated to floating point or fixed-width matrix libraries.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
from math import gcd

Matrix = list[list[int]]
Vector = tuple[int, ...]

DEFAULT_ENUM_CAP = 10**6


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _eye(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mat_mul(a: Matrix, b: Matrix, inner: int, cols: int) -> Matrix:
    return [
        [sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for row in a
    ]


def _transpose(m: Matrix, rows: int, cols: int) -> Matrix:
    return [[m[i][j] for i in range(rows)] for j in range(cols)]


# ---------------------------------------------------------------------------
# Smith normal form


def _smith_extended(mat: Matrix, m: int, n: int) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """Return (U, Uinv, D, V) with U*mat*V = D, U and V unimodular.

    D is diagonal with nonnegative entries forming a divisibility chain.
    Pivot selection always takes the entry of smallest nonzero absolute
    value in the trailing submatrix, which keeps intermediate growth down.
    """
    a = [row[:] for row in mat]
    u = _eye(m)
    uinv = _eye(m)
    v = _eye(n)

    def row_op(i: int, j: int, q: int) -> None:
        # row_i -= q * row_j ; keeps U*orig*V = current invariant
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]
        for r in uinv:
            r[j] += q * r[i]

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def row_negate(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    def col_op(j: int, i: int, q: int) -> None:
        # col_j -= q * col_i
        for r in a:
            r[j] -= q * r[i]
        for r in v:
            r[j] -= q * r[i]

    def col_swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    limit = min(m, n)
    while t < limit:
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])
        while True:
            if a[t][t] < 0:
                row_negate(t)
            restart = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        # remainder is a strictly smaller positive pivot
                        row_swap(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        col_swap(t, j)
                        restart = True
                        break
            if restart:
                continue
            # pivot must divide the whole trailing submatrix for the chain
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, bad, -1)  # fold the offending row into row t
        t += 1
    return u, uinv, a, v


def smith_normal_form(mat: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form with transforms: U*mat*V = D, |det U| = |det V| = 1.

    D is diagonal, entries nonnegative, each dividing the next.

    >>> U, D, V = smith_normal_form([[2, 0], [0, 3]])
    >>> D
    [[1, 0], [0, 6]]
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    if any(len(row) != n for row in mat):
        raise ValueError("ragged matrix")
    u, _, d, v = _smith_extended(mat, m, n)
    return u, d, v


def matrix_kernel_basis(mat: Matrix, n: int) -> list[list[int]]:
    """Basis of the integer kernel {x in Z^n : mat @ x = 0}, as vectors."""
    m = len(mat)
    _, _, d, v = _smith_extended(mat, m, n)
    rank = sum(1 for k in range(min(m, n)) if d[k][k])
    return [[v[i][k] for i in range(n)] for k in range(rank, n)]


def abs_det(mat: Matrix) -> int:
    """|det| of a square integer matrix (0 when singular)."""
    n = len(mat)
    _, _, d, _ = _smith_extended(mat, n, n)
    out = 1
    for k in range(n):
        out *= d[k][k]
    return out


# ---------------------------------------------------------------------------
# Hermite-style canonical bases for integer row lattices


def _pivot(row: list[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    return -1


def _insert_row(basis: list[list[int]], pivots: list[int], vec: list[int]) -> None:
    while True:
        j = _pivot(vec)
        if j < 0:
            return
        pos = bisect_left(pivots, j)
        if pos < len(pivots) and pivots[pos] == j:
            row = basis[pos]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                vec = [y - q * x for x, y in zip(row, vec)]
            else:
                g, x, y = xgcd(a, b)
                ag, bg = a // g, b // g
                new_row = [x * p + y * q2 for p, q2 in zip(row, vec)]
                new_vec = [ag * q2 - bg * p for p, q2 in zip(row, vec)]
                basis[pos] = new_row
                vec = new_vec
        else:
            if vec[j] < 0:
                vec = [-x for x in vec]
            basis.insert(pos, vec)
            pivots.insert(pos, j)
            return


def row_hermite_basis(rows: list[list[int]] | list[Vector], width: int) -> tuple[Vector, ...]:
    """Canonical echelon basis of the row span of `rows` inside Z^width.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    pivot columns strictly increase.  Two row sets span the same lattice
    iff their canonical bases are equal.
    """
    basis: list[list[int]] = []
    pivots: list[int] = []
    for row in rows:
        if len(row) != width:
            raise ValueError("row width mismatch")
        _insert_row(basis, pivots, list(row))
    for k in range(len(basis)):
        p = pivots[k]
        d = basis[k][p]
        for k2 in range(k):
            q = basis[k2][p] // d
            if q:
                basis[k2] = [x - q * y for x, y in zip(basis[k2], basis[k])]
    return tuple(tuple(r) for r in basis)


def lattice_solve(basis: tuple[Vector, ...], vec: Vector | list[int]) -> list[int] | None:
    """Coefficients x with sum x_k * basis_k = vec, or None if vec is outside."""
    v = list(vec)
    coeffs = [0] * len(basis)
    for k, row in enumerate(basis):
        p = _pivot(list(row))
        if v[p] == 0:
            continue
        if v[p] % row[p]:
            return None
        q = v[p] // row[p]
        v = [x - q * y for x, y in zip(v, row)]
        coeffs[k] = q
    if any(v):
        return None
    return coeffs


# ---------------------------------------------------------------------------
# Canonical groups


@dataclass(frozen=True)
class FgAbGroup:
    """Z^free_rank plus one Z/d_i per invariant factor, d_1 | d_2 | ... | d_k.

    >>> FgAbGroup(1, (6,))
    FgAbGroup(free_rank=1, invariant_factors=(6,))
    >>> str(fg_group(12, 18))
    'Z/6 + Z/36'
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = None
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
            if prev is not None and d % prev:
                raise ValueError("invariant factors must form a divisibility chain")
            prev = d

    @cached_property
    def orders(self) -> Vector:
        """Per-generator orders; 0 marks a free generator."""
        return self.invariant_factors + (0,) * self.free_rank

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    def reduce(self, vec) -> Vector:
        return tuple(x % o if o else x for x, o in zip(vec, self.orders))

    def zero(self) -> Vector:
        return (0,) * self.ngens

    def add(self, x, y) -> Vector:
        return tuple((a + b) % o if o else a + b for a, b, o in zip(x, y, self.orders))

    def neg(self, x) -> Vector:
        return tuple((-a) % o if o else -a for a, o in zip(x, self.orders))

    def sub(self, x, y) -> Vector:
        return self.add(x, self.neg(y))

    def scale(self, k: int, x) -> Vector:
        return tuple((k * a) % o if o else k * a for a, o in zip(x, self.orders))

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def element_order(self, vec) -> int | None:
        """Order of an element; None when infinite."""
        out = 1
        for x, o in zip(vec, self.orders):
            if o == 0:
                if x:
                    return None
                continue
            k = o // gcd(x % o, o) if x % o else 1
            out = out * k // gcd(out, k)
        return out

    def elements(self, cap: int = DEFAULT_ENUM_CAP):
        yield from enumerate_elements(self, cap)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


TRIVIAL_GROUP = FgAbGroup(0, ())


def enumerate_elements(group: FgAbGroup, cap: int = DEFAULT_ENUM_CAP):
    """Iterate every element of a finite group; raises past the cap."""
    if not group.is_finite():
        raise ValueError("cannot enumerate an infinite group")
    order = group.order()
    assert order is not None
    if order > cap:
        raise ValueError(f"group order {order} exceeds enumeration cap {cap}")
    ranges = [range(d) for d in group.invariant_factors]
    for combo in itertools.product(*ranges):
        yield tuple(combo)


# ---------------------------------------------------------------------------
# Maps


@dataclass(frozen=True)
class GroupMap:
    """Homomorphism given by an integer matrix, codomain gens x domain gens.

    Column j holds the image of domain generator j.  Torsion rows are
    stored reduced, so equal maps have equal matrices.  Construction
    checks well-definedness: a generator of order d must land on an
    element killed by d.
    """

    domain: FgAbGroup
    codomain: FgAbGroup
    matrix: tuple[Vector, ...]

    def __post_init__(self) -> None:
        dom, cod = self.domain, self.codomain
        if len(self.matrix) != cod.ngens or any(len(r) != dom.ngens for r in self.matrix):
            raise ValueError("matrix shape does not match domain/codomain")
        reduced = tuple(
            tuple(x % o if o else x for x in row)
            for row, o in zip(self.matrix, cod.orders)
        )
        object.__setattr__(self, "matrix", reduced)
        for j, d in enumerate(dom.orders):
            if d == 0:
                continue
            for i, o in enumerate(cod.orders):
                x = d * reduced[i][j]
                if (x % o) if o else x:
                    raise ValueError(
                        f"not a homomorphism: generator of order {d} maps to an element not killed by {d}"
                    )

    def apply(self, vec) -> Vector:
        n = self.domain.ngens
        return self.codomain.reduce(
            tuple(sum(row[j] * vec[j] for j in range(n)) for row in self.matrix)
        )

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self after other."""
        if other.codomain != self.domain:
            raise ValueError("composition type mismatch")
        inner = self.domain.ngens
        cols = other.domain.ngens
        mat = tuple(
            tuple(sum(row[k] * other.matrix[k][j] for k in range(inner)) for j in range(cols))
            for row in self.matrix
        )
        return GroupMap(other.domain, self.codomain, mat)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.matrix)

    def is_surjective(self) -> bool:
        return image(self).is_full()

    def is_injective(self) -> bool:
        return kernel(self).is_trivial()

    def __str__(self) -> str:
        return f"[{self.domain}] -> [{self.codomain}] via {[list(r) for r in self.matrix]}"


def identity_map(group: FgAbGroup) -> GroupMap:
    n = group.ngens
    return GroupMap(group, group, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))


def zero_map(domain: FgAbGroup, codomain: FgAbGroup) -> GroupMap:
    return GroupMap(domain, codomain, tuple((0,) * domain.ngens for _ in range(codomain.ngens)))


def multiplication_map(group: FgAbGroup, m: int) -> GroupMap:
    """x -> m*x as a GroupMap."""
    n = group.ngens
    return GroupMap(group, group, tuple(tuple(m if i == j else 0 for j in range(n)) for i in range(n)))


def multiplier_of(h: GroupMap) -> int | None:
    """The integer m with h = multiplication by m, or None.

    Only meaningful for endomorphisms.  A free generator pins m exactly;
    with pure torsion the smallest consistent nonnegative m is returned.
    """
    if h.domain != h.codomain:
        return None
    g = h.domain
    n = g.ngens
    if n == 0:
        return 1
    orders = g.orders
    m = None
    for j in range(len(g.invariant_factors), n):  # free coordinates pin m
        m = h.matrix[j][j]
        break
    if m is None:
        # largest invariant factor determines m modulo itself; smaller ones must agree
        m = h.matrix[len(g.invariant_factors) - 1][len(g.invariant_factors) - 1]
    cand = multiplication_map(g, m)
    return m if cand.matrix == h.matrix else None


# ---------------------------------------------------------------------------
# Presentations


@dataclass(frozen=True)
class Presentation:
    """Canonical form of Z^n modulo a relation row span, with transport.

    to_canonical (k x n) sends old coordinates to canonical ones;
    lift (n x k) sends a canonical generator to a representative.
    to_canonical @ lift is the identity modulo the relations.
    """

    group: FgAbGroup
    to_canonical: tuple[Vector, ...]
    lift: tuple[Vector, ...]

    def project(self, vec) -> Vector:
        n = len(self.lift)
        return self.group.reduce(
            tuple(sum(row[j] * vec[j] for j in range(n)) for row in self.to_canonical)
        )

    def lift_element(self, vec) -> Vector:
        k = self.group.ngens
        return tuple(sum(self.lift[i][j] * vec[j] for j in range(k)) for i in range(len(self.lift)))

    def projection_map(self, source: FgAbGroup) -> GroupMap:
        return GroupMap(source, self.group, self.to_canonical)


def group_from_presentation(num_generators: int, relations: list[list[int]] | list[Vector]) -> Presentation:
    """Canonicalize Z^num_generators modulo the row span of `relations`.

    >>> group_from_presentation(2, [[2, 0], [0, 3]]).group
    FgAbGroup(free_rank=0, invariant_factors=(6,))
    """
    n = num_generators
    rel = [list(r) for r in relations]
    for r in rel:
        if len(r) != n:
            raise ValueError("relation width mismatch")
    # columns of rel^T generate the subgroup being killed
    a = _transpose(rel, len(rel), n) if rel else [[] for _ in range(n)]
    u, uinv, d, _ = _smith_extended(a, n, len(rel))
    diag = [d[k][k] for k in range(min(n, len(rel)))]
    torsion: list[int] = []
    kept: list[int] = []
    free: list[int] = []
    for k in range(n):
        dk = diag[k] if k < len(diag) else 0
        if dk == 1:
            continue
        if dk == 0:
            free.append(k)
        else:
            torsion.append(k)
    kept = torsion + free
    group = FgAbGroup(len(free), tuple(diag[k] for k in torsion))
    to_canonical = tuple(tuple(u[k][j] for j in range(n)) for k in kept)
    lift = tuple(tuple(uinv[i][k] for k in kept) for i in range(n))
    return Presentation(group, to_canonical, lift)


def fg_group(*cyclic_orders: int) -> FgAbGroup:
    """Canonical form of a direct sum of cyclic groups; 0 means Z.

    >>> fg_group(2, 3)
    FgAbGroup(free_rank=0, invariant_factors=(6,))
    """
    n = len(cyclic_orders)
    rel = [
        [o if i == j else 0 for j in range(n)]
        for i, o in enumerate(cyclic_orders)
        if o
    ]
    return group_from_presentation(n, rel).group


# ---------------------------------------------------------------------------
# Subgroups


class Subgroup:
    """Subgroup of an ambient group, canonicalized as a preimage lattice.

    The lattice is spanned by the generators plus the ambient torsion
    relations; its Hermite basis is the identity of the subgroup, so
    equality is basis equality.  A canonical presentation of the subgroup
    as an abstract group (with inclusion and coordinate maps) is computed
    lazily and cached.
    """

    __slots__ = ("ambient", "generators", "basis", "__dict__")

    def __init__(self, ambient: FgAbGroup, generators) -> None:
        self.ambient = ambient
        self.generators = tuple(ambient.reduce(g) for g in generators)
        n = ambient.ngens
        rows = [list(g) for g in self.generators]
        for i, o in enumerate(ambient.orders):
            if o:
                rows.append([o if j == i else 0 for j in range(n)])
        self.basis = row_hermite_basis(rows, n)

    @classmethod
    def full(cls, ambient: FgAbGroup) -> "Subgroup":
        n = ambient.ngens
        return cls(ambient, [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)])

    @classmethod
    def zero(cls, ambient: FgAbGroup) -> "Subgroup":
        return cls(ambient, [])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def contains(self, vec) -> bool:
        return lattice_solve(self.basis, self.ambient.reduce(vec)) is not None

    def contains_subgroup(self, other: "Subgroup") -> bool:
        if other.ambient != self.ambient:
            raise ValueError("subgroups of different ambient groups")
        return all(self.contains(row) for row in other.basis)

    def is_full(self) -> bool:
        n = self.ambient.ngens
        return all(
            self.contains(tuple(1 if i == j else 0 for j in range(n))) for i in range(n)
        )

    def is_trivial(self) -> bool:
        return self.as_group().is_trivial()

    @cached_property
    def _form(self) -> tuple[Presentation, tuple[Vector, ...]]:
        # present lattice/torsion: generators = basis rows, relations =
        # ambient torsion rows written in basis coordinates
        n = self.ambient.ngens
        rels = []
        for i, o in enumerate(self.ambient.orders):
            if o:
                coeffs = lattice_solve(self.basis, tuple(o if j == i else 0 for j in range(n)))
                assert coeffs is not None  # torsion rows were folded into the lattice
                rels.append(coeffs)
        pres = group_from_presentation(len(self.basis), rels)
        return pres, self.basis

    def as_group(self) -> FgAbGroup:
        return self._form[0].group

    def order(self) -> int | None:
        return self.as_group().order()

    def include(self) -> GroupMap:
        """Inclusion of the canonical form into the ambient group."""
        pres, basis = self._form
        b = len(basis)
        n = self.ambient.ngens
        cols = []
        for k in range(pres.group.ngens):
            coeffs = pres.lift_element(tuple(1 if i == k else 0 for i in range(pres.group.ngens)))
            vec = [sum(coeffs[r] * basis[r][i] for r in range(b)) for i in range(n)]
            cols.append(self.ambient.reduce(vec))
        mat = tuple(tuple(col[i] for col in cols) for i in range(n))
        return GroupMap(pres.group, self.ambient, mat)

    def coords(self, vec) -> Vector:
        """Coordinates of an ambient element (must lie in the subgroup)."""
        pres, basis = self._form
        coeffs = lattice_solve(basis, self.ambient.reduce(vec))
        if coeffs is None:
            raise ValueError("element is not in the subgroup")
        return pres.project(tuple(coeffs))

    def element_list(self, cap: int = DEFAULT_ENUM_CAP) -> list[Vector]:
        """All elements, as ambient coordinate vectors."""
        inc = self.include()
        return [inc.apply(x) for x in self.as_group().elements(cap)]

    def __str__(self) -> str:
        return f"<{self.as_group()} inside {self.ambient}>"


def subgroup_equal(a: Subgroup, b: Subgroup) -> bool:
    """Mutual-membership equality of subgroups of one ambient group."""
    if a.ambient != b.ambient:
        raise ValueError("subgroups of different ambient groups")
    return a == b


def image(h: GroupMap) -> Subgroup:
    n = h.domain.ngens
    cols = [tuple(h.matrix[i][j] for i in range(h.codomain.ngens)) for j in range(n)]
    return Subgroup(h.codomain, cols)


def image_of_subgroup(h: GroupMap, sub: Subgroup) -> Subgroup:
    """h(sub) as a subgroup of the codomain."""
    if sub.ambient != h.domain:
        raise ValueError("subgroup does not live in the domain")
    return Subgroup(h.codomain, [h.apply(row) for row in sub.basis])


def kernel(h: GroupMap) -> Subgroup:
    """Kernel of h, as a subgroup of the domain."""
    m, n = h.codomain.ngens, h.domain.ngens
    mat = [list(row) for row in h.matrix]
    torsion_cols = [i for i, o in enumerate(h.codomain.orders) if o]
    for i in torsion_cols:
        col = [h.codomain.orders[i] if r == i else 0 for r in range(m)]
        for r in range(m):
            mat[r].append(col[r])
    basis = matrix_kernel_basis(mat, n + len(torsion_cols))
    gens = [tuple(vec[:n]) for vec in basis]
    return Subgroup(h.domain, gens)


@dataclass(frozen=True)
class QuotientData:
    """A quotient group with its projection and a chosen section."""

    group: FgAbGroup
    projection: GroupMap

    # representative in the source for each canonical generator
    lift: tuple[Vector, ...]

    def section(self, vec) -> Vector:
        """A source element mapping onto `vec` under the projection."""
        k = self.group.ngens
        src = self.projection.domain
        return src.reduce(
            tuple(sum(self.lift[i][j] * vec[j] for j in range(k)) for i in range(len(self.lift)))
        )


def quotient_by_subgroup(ambient: FgAbGroup, sub: Subgroup) -> QuotientData:
    """ambient / sub with transport maps."""
    if sub.ambient != ambient:
        raise ValueError("subgroup of a different group")
    pres = group_from_presentation(ambient.ngens, [list(r) for r in sub.basis])
    proj = GroupMap(ambient, pres.group, pres.to_canonical)
    return QuotientData(pres.group, proj, pres.lift)


def cokernel(h: GroupMap) -> QuotientData:
    """Cokernel of h: codomain / image(h), with the projection map."""
    return quotient_by_subgroup(h.codomain, image(h))


# ---------------------------------------------------------------------------
# Direct sums


@dataclass(frozen=True)
class DirectSum:
    group: FgAbGroup
    injections: tuple[GroupMap, ...]
    projections: tuple[GroupMap, ...]


def direct_sum(groups: list[FgAbGroup] | tuple[FgAbGroup, ...]) -> DirectSum:
    """Canonical form of a finite direct sum, with the block maps."""
    groups = tuple(groups)
    offsets = []
    total = 0
    for g in groups:
        offsets.append(total)
        total += g.ngens
    rel = []
    for g, off in zip(groups, offsets):
        for i, o in enumerate(g.orders):
            if o:
                rel.append([o if j == off + i else 0 for j in range(total)])
    pres = group_from_presentation(total, rel)
    big = pres.group
    injections = []
    projections = []
    for g, off in zip(groups, offsets):
        n = g.ngens
        inj_mat = tuple(
            tuple(pres.to_canonical[i][off + j] for j in range(n))
            for i in range(big.ngens)
        )
        injections.append(GroupMap(g, big, inj_mat))
        proj_mat = tuple(
            tuple(pres.lift[off + i][k] for k in range(big.ngens)) for i in range(n)
        )
        projections.append(GroupMap(big, g, proj_mat))
    return DirectSum(big, tuple(injections), tuple(projections))


# ---------------------------------------------------------------------------
# Hom-set enumeration (finite candidate sets only)


def annihilator_elements(group: FgAbGroup, d: int) -> list[Vector]:
    """All x with d*x = 0; requires d > 0 or a finite group."""
    if d == 0:
        return [tuple(x) for x in enumerate_elements(group)]
    per_coord = []
    for o in group.orders:
        if o == 0:
            per_coord.append([0])
        else:
            g = gcd(d, o)
            step = o // g
            per_coord.append([k * step for k in range(g)])
    return [tuple(c) for c in itertools.product(*per_coord)]


def enumerate_homs(domain: FgAbGroup, codomain: FgAbGroup):
    """Yield every homomorphism; needs finite candidate sets per generator."""
    candidate_sets = [annihilator_elements(codomain, d) for d in domain.orders]
    m = codomain.ngens
    for combo in itertools.product(*candidate_sets):
        mat = tuple(tuple(col[i] for col in combo) for i in range(m))
        yield GroupMap(domain, codomain, mat)
