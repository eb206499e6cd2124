"""Neron-Severi lattice of a generalized Kummer surface.

Everything is expressed in the rank-19 Q-basis (L, A1, B1, ..., A9, B9),
where L is the positive generator orthogonal to the nine A2 blocks of
(-2)-curves (A_j, B_j).  A divisor class is stored as 19 integer numerators
n with the class equal to (1/3) * sum(n_i * basis_i); a class has integral
curve coefficients exactly when n_1..n_18 are all divisible by 3.

The curve span is indexed in blocks: coordinate 0 is L, block j occupies
coordinates 2j-1 (A_j) and 2j (B_j), for j = 1..9.  The block ordering of
the fractional and dual generators below is a fixed convention that the
isometry search relies on, so it is part of the wire format.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg import (
    enumerate_norm_vectors,
    has_norm_vector,
    hnf,
    hnf_pivots,
    kernel_basis,
    snf,
    solve_hnf,
    vec_mat,
)

DIM = 19
N_BLOCKS = 9

CASE_TWO_MOD6 = "TWO_MOD6"
CASE_ZERO_MOD18 = "ZERO_MOD18"
CASE_SIX_MOD18 = "SIX_MOD18"
CASE_TWELVE_MOD18 = "TWELVE_MOD18"


class InvalidPolarization(ValueError):
    """The requested self-intersection L^2 is not 0 or 2 mod 6 (or < 2)."""


class NotInLattice(ValueError):
    """A divisor class is not integral on this Neron-Severi lattice."""


class NotRepresentable(ValueError):
    """A class has non-integral intersection with some curve A_j or B_j."""


@dataclass(frozen=True)
class DivisorClass:
    """A class (1/3)(n0*L + n1*A1 + n2*B1 + ... + n17*A9 + n18*B9)."""

    num: tuple

    def __post_init__(self):
        if len(self.num) != DIM:
            raise ValueError(f"divisor class needs {DIM} numerators")
        object.__setattr__(self, "num", tuple(int(x) for x in self.num))

    def __add__(self, other):
        return DivisorClass(tuple(a + b for a, b in zip(self.num, other.num)))

    def __sub__(self, other):
        return DivisorClass(tuple(a - b for a, b in zip(self.num, other.num)))

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.num))

    def __rmul__(self, k):
        return DivisorClass(tuple(k * a for a in self.num))

    __mul__ = __rmul__

    def to_json(self):
        return list(self.num)


def zero_class():
    return DivisorClass((0,) * DIM)


def L_class():
    return DivisorClass((3,) + (0,) * (DIM - 1))


def curve_a(j):
    """The curve A_j, j in 1..9."""
    num = [0] * DIM
    num[2 * j - 1] = 3
    return DivisorClass(tuple(num))


def curve_b(j):
    """The curve B_j, j in 1..9."""
    num = [0] * DIM
    num[2 * j] = 3
    return DivisorClass(tuple(num))


def _block_pattern(blocks):
    """Class (1/3) * sum_j c_j (A_j - B_j) for blocks = {j: c_j}."""
    num = [0] * DIM
    for j, c in blocks.items():
        num[2 * j - 1] = c
        num[2 * j] = -c
    return DivisorClass(tuple(num))


# One-third classes adjoined to the curve span to form the rank-18 sublattice
# generated by the nine A2 blocks; their block supports drive everything
# 3-divisible downstream.
_FRAC_BLOCKS = (
    {j: 1 for j in range(1, 10)},
    {2: 1, 3: 2, 6: 1, 7: 2, 8: 1, 9: 2},
    {4: 1, 5: 2, 6: 1, 7: 2, 8: 2, 9: 1},
)

# Representatives generating the discriminant group of that sublattice.
_DUAL_BLOCKS = (
    {5: 1, 7: 1, 8: 1},
    {4: 2, 6: 1, 7: 2, 8: 1},
    {3: 1, 5: 1, 6: 1},
)


def fractional_generator(i):
    """Generator t_i (i = 1..3) of the curve-block lattice over the curve span."""
    return _block_pattern(_FRAC_BLOCKS[i - 1])


def dual_generator(i):
    """Representative w_i (i = 1..3) of the curve-block discriminant group."""
    return _block_pattern(_DUAL_BLOCKS[i - 1])


def pairing_times_nine(L2, n, m):
    """9 * (intersection number), an integer for any two numerator vectors."""
    total = L2 * n[0] * m[0]
    for j in range(1, DIM, 2):
        a, b = n[j], n[j + 1]
        ap, bp = m[j], m[j + 1]
        total += -2 * a * ap + a * bp + b * ap - 2 * b * bp
    return total


def pairing_of(L2, c, d):
    """Exact intersection number of two divisor classes."""
    return Fraction(pairing_times_nine(L2, c.num, d.num), 9)


def uv_decompose(c):
    """Split a class as a*L - (1/3) sum_j (u_j*F_j + v_j*G_j).

    Here F_j = A_j + 2 B_j and G_j = 2 A_j + B_j; the integers satisfy
    u_j = c.B_j and v_j = c.A_j.  Raises NotRepresentable when some
    intersection with a curve is not an integer.
    """
    pairs = []
    for j in range(1, N_BLOCKS + 1):
        a, b = c.num[2 * j - 1], c.num[2 * j]
        qu, ru = divmod(a - 2 * b, 3)
        qv, rv = divmod(b - 2 * a, 3)
        if ru or rv:
            raise NotRepresentable(f"non-integral intersection on block {j}")
        pairs.append((qu, qv))
    return Fraction(c.num[0], 3), pairs


# ---------------------------------------------------------------------------
# the rank-18 curve-block lattice


@dataclass(frozen=True)
class K3Lattice:
    """The negative definite rank-18 lattice spanned by the nine A2 blocks
    together with the three one-third classes; discriminant 27."""

    basis: tuple   # 18 rows of 18 scaled curve coordinates (HNF)
    gram: tuple


def _curve_gram_entry(n, m):
    total = 0
    for j in range(0, 18, 2):
        a, b = n[j], n[j + 1]
        ap, bp = m[j], m[j + 1]
        total += -2 * a * ap + a * bp + b * ap - 2 * b * bp
    q, r = divmod(total, 9)
    if r:
        raise AssertionError("non-integral pairing on an integral basis")
    return q


def build_k3():
    """Integral basis and Gram matrix of the curve-block lattice."""
    gens = []
    for j in range(18):
        row = [0] * 18
        row[j] = 3
        gens.append(row)
    for blocks in _FRAC_BLOCKS:
        row = [0] * 18
        for j, c in blocks.items():
            row[2 * j - 2] = c
            row[2 * j - 1] = -c
        gens.append(row)
    h, _ = hnf(gens)
    basis = h[:18]
    if len(hnf_pivots(h)) != 18:
        raise AssertionError("curve-block lattice must have rank 18")
    gram = [[_curve_gram_entry(basis[i], basis[j]) for j in range(18)]
            for i in range(18)]
    factors, _, _ = snf(gram)
    det = 1
    for f in factors:
        det *= f
    if det != 27:
        raise AssertionError(f"curve-block lattice has discriminant {det}, not 27")
    return K3Lattice(tuple(tuple(r) for r in basis), tuple(tuple(r) for r in gram))


# ---------------------------------------------------------------------------
# root systems


@dataclass(frozen=True)
class RootComponent:
    label: str
    roots: tuple


@dataclass(frozen=True)
class RootSystem:
    roots: tuple       # all norm -2 classes, closed under negation
    components: tuple  # orthogonal irreducible pieces, ADE-labelled

    @property
    def component_labels(self):
        return tuple(c.label for c in self.components)


def _ade_label(rank, pair_count):
    if pair_count == rank * (rank + 1) // 2:
        return f"A{rank}"
    if rank >= 4 and pair_count == rank * (rank - 1):
        return f"D{rank}"
    for name, r, pairs in (("E6", 6, 36), ("E7", 7, 63), ("E8", 8, 120)):
        if rank == r and pair_count == pairs:
            return name
    raise AssertionError(f"no ADE type with rank {rank} and {pair_count} root pairs")


def _decompose_roots(L2, reps):
    """Partition +/- representatives into orthogonal irreducible components."""
    n = len(reps)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if pairing_times_nine(L2, reps[i].num, reps[j].num):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    components = []
    for members in groups.values():
        block = [list(reps[i].num) for i in members]
        h, _ = hnf(block)
        rank = len(hnf_pivots(h))
        label = _ade_label(rank, len(members))
        roots = []
        for i in members:
            roots.append(reps[i])
            roots.append(-reps[i])
        components.append(RootComponent(label, tuple(roots)))
    components.sort(key=lambda comp: comp.roots[0].num)
    return tuple(components)


# ---------------------------------------------------------------------------
# the full rank-19 lattice


def _mod3_echelon(rows):
    """Reduced echelon basis over GF(3) of the span of the given rows."""
    ech = []
    for row in rows:
        vec = [x % 3 for x in row]
        for piv, erow in ech:
            c = vec[piv]
            if c:
                vec = [(a - c * b) % 3 for a, b in zip(vec, erow)]
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is None:
            continue
        inv = 1 if vec[piv] == 1 else 2
        vec = [(inv * x) % 3 for x in vec]
        ech.append((piv, vec))
    ech.sort()
    return ech


def _mod3_reduce(ech, vec):
    vec = [x % 3 for x in vec]
    for piv, erow in ech:
        c = vec[piv]
        if c:
            vec = [(a - c * b) % 3 for a, b in zip(vec, erow)]
    return vec


def gluing_class(L2):
    """The index-3 gluing vector (L + v)/3 adjoined in the 0 mod 6 cases."""
    if L2 % 18 == 0:
        pattern = dict(_DUAL_BLOCKS[0])
    elif L2 % 18 == 6:
        pattern = dict(_DUAL_BLOCKS[1])
    elif L2 % 18 == 12:
        pattern = {}
        for j, c in _DUAL_BLOCKS[2].items():
            pattern[j] = pattern.get(j, 0) + c
        for j, c in _DUAL_BLOCKS[1].items():
            pattern[j] = pattern.get(j, 0) - c
    else:
        raise InvalidPolarization(f"L^2 = {L2} has no gluing vector")
    num = list(_block_pattern(pattern).num)
    num[0] = 1
    return DivisorClass(tuple(num))


class NSModel:
    """Immutable model of the rank-19 Neron-Severi lattice for a given L^2.

    For L^2 = 2 mod 6 the lattice is Z*L plus the curve-block lattice; for
    L^2 = 0 mod 6 an extra gluing class (L + v)/3 is adjoined, giving an
    index-3 overlattice.  All queries are pure, so instances can be shared
    freely across threads or processes.
    """

    def __init__(self, L2):
        if L2 < 2 or L2 % 6 not in (0, 2):
            raise InvalidPolarization(f"L^2 = {L2} must be >= 2 and 0 or 2 mod 6")
        self.L2 = L2
        if L2 % 6 == 2:
            self.case = CASE_TWO_MOD6
            self.gluing = None
        elif L2 % 18 == 0:
            self.case = CASE_ZERO_MOD18
            self.gluing = gluing_class(L2)
        elif L2 % 18 == 6:
            self.case = CASE_SIX_MOD18
            self.gluing = gluing_class(L2)
        else:
            self.case = CASE_TWELVE_MOD18
            self.gluing = gluing_class(L2)

        gens = [list(L_class().num)]
        for j in range(1, N_BLOCKS + 1):
            gens.append(list(curve_a(j).num))
            gens.append(list(curve_b(j).num))
        for i in (1, 2, 3):
            gens.append(list(fractional_generator(i).num))
        if self.gluing is not None:
            gens.append(list(self.gluing.num))

        h, _ = hnf(gens)
        if len(hnf_pivots(h)) != DIM:
            raise AssertionError("Neron-Severi basis must have rank 19")
        self.basis = tuple(tuple(r) for r in h[:DIM])

        gram = []
        for i in range(DIM):
            row = []
            for j in range(DIM):
                q, r = divmod(
                    pairing_times_nine(L2, self.basis[i], self.basis[j]), 9)
                if r:
                    raise AssertionError("basis pairing is not integral")
                row.append(q)
            gram.append(row)
        for i in range(DIM):
            if gram[i][i] % 2:
                raise AssertionError("lattice is not even")
        self.gram = tuple(tuple(r) for r in gram)

        factors, u, _ = snf([list(r) for r in self.gram])
        det = 1
        for f in factors:
            det *= f
        expected = 27 * L2 if self.case == CASE_TWO_MOD6 else 3 * L2
        if det != expected:
            raise AssertionError(f"discriminant {det} != {expected}")
        self.disc_factors = tuple(f for f in factors if f != 1)
        # Row i of u, divided by factors[i], lifts a generator of the cyclic
        # piece Z/factors[i] of the discriminant group (in basis coordinates).
        self.disc_transform_rows = tuple(
            (factors[i], tuple(u[i])) for i in range(DIM) if factors[i] != 1)

        self._mod3 = _mod3_echelon(self.basis)

    # -- membership -------------------------------------------------------

    def contains(self, c):
        """True iff the class lies in the lattice."""
        return not any(_mod3_reduce(self._mod3, c.num))

    def coords(self, c):
        """Integer coordinates of a class on the lattice basis, or None."""
        return solve_hnf(self.basis, list(range(DIM)), c.num)

    # -- pairing ----------------------------------------------------------

    def pairing(self, c, d):
        """Exact intersection number; an integer on lattice classes."""
        return Fraction(pairing_times_nine(self.L2, c.num, d.num), 9)

    def square(self, c):
        return self.pairing(c, c)

    # -- class from basis coordinates --------------------------------------

    def class_from_coords(self, y):
        return DivisorClass(tuple(vec_mat(y, self.basis)))

    # -- 3-divisible cosets -------------------------------------------------

    def three_divisible_classes(self):
        """The 27 cosets of the curve span inside L-perp, with supports.

        Returns a list of (coeffs, representative, support) where coeffs
        ranges over (Z/3)^3 applied to the three fractional generators and
        support is the tuple of blocks (1..9) the coset touches.
        """
        gens = [fractional_generator(i) for i in (1, 2, 3)]
        out = []
        seen = set()
        for a1 in range(3):
            for a2 in range(3):
                for a3 in range(3):
                    rep = a1 * gens[0] + a2 * gens[1] + a3 * gens[2]
                    residue = tuple(x % 3 for x in rep.num)
                    if residue in seen:
                        raise AssertionError("coset representatives collide")
                    seen.add(residue)
                    support = tuple(
                        j for j in range(1, N_BLOCKS + 1)
                        if residue[2 * j - 1] or residue[2 * j])
                    out.append(((a1, a2, a3), rep, support))
        return out

    # -- orthogonal complements and roots -----------------------------------

    def orthogonal_sublattice(self, d):
        """Basis (in lattice coordinates) and Gram matrix of d-perp."""
        delta = self.coords(d)
        if delta is None:
            raise NotInLattice("class is not in the lattice")
        w = vec_mat(delta, [list(r) for r in self.gram])
        rows = kernel_basis([[x] for x in w])
        gram = [list(r) for r in self.gram]
        images = [vec_mat(row, gram) for row in rows]
        sub_gram = [[sum(a * b for a, b in zip(row, img)) for img in images]
                    for row in rows]
        return rows, sub_gram

    def is_chamber_ample(self, d):
        """True iff d^2 > 0 and d-perp contains no class of square -2.

        Such a class sits in the interior of a Weyl chamber; this is the
        testable content of ampleness used throughout.
        """
        if self.coords(d) is None:
            raise NotInLattice("class is not in the lattice")
        if self.square(d) <= 0:
            return False
        _, sub_gram = self.orthogonal_sublattice(d)
        return not has_norm_vector(sub_gram, -2)

    def min_ample_u(self):
        """Least u >= 1 making u*L - sum_j (A_j + B_j) chamber-ample."""
        base = zero_class()
        for j in range(1, N_BLOCKS + 1):
            base = base + curve_a(j) + curve_b(j)
        for u in range(1, 65):
            if self.is_chamber_ample(u * L_class() - base):
                return u
        raise AssertionError("no ample multiple found below the search cap")

    def root_system_of_orthogonal(self, d):
        """All square -2 classes orthogonal to d, split into ADE components."""
        delta = self.coords(d)
        if delta is None:
            raise NotInLattice("class is not in the lattice")
        if self.square(d) <= 0:
            raise ValueError("orthogonal root system needs d^2 > 0")
        rows, sub_gram = self.orthogonal_sublattice(d)
        sols = enumerate_norm_vectors(sub_gram, -2)
        reps = []
        for k in range(0, len(sols), 2):
            y = vec_mat(sols[k], rows)
            reps.append(self.class_from_coords(y))
        roots = []
        for rep in reps:
            roots.append(rep)
            roots.append(-rep)
        components = _decompose_roots(self.L2, reps)
        return RootSystem(tuple(roots), components)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self):
        return {
            "L2": self.L2,
            "case": self.case,
            "basis": [list(r) for r in self.basis],
            "gram": [list(r) for r in self.gram],
            "disc": list(self.disc_factors),
        }


def build_ns(L2):
    """Construct the Neron-Severi model for an admissible L^2."""
    return NSModel(L2)
