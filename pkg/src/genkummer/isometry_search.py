"""Exhaustive search for lattice isometries carrying one 9A2 configuration
to another, and the polarized automorphism group of the degree-2 model for
L^2 = 20.

A candidate map is a block permutation sigma together with a swap bit per
block (send A_k to either member of target block sigma(k)); together with
"orthogonal generator goes to orthogonal generator" this pins down a linear
map on the whole rank-19 lattice.  Of the 9! * 2^9 = 185,794,560 candidates,
almost all die on the 3-divisibility block supports (the prune), and the
surviving permutations admit at most two swap masks compatible with the
fully-supported 3-divisible class, so only a handful of matrices are ever
materialized.  Survivors are then checked for integrality on the lattice
basis and for acting as +-identity on the discriminant group; preservation
of ample classes holds automatically for maps of this shape and is not
re-tested per candidate.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

from .exact_linalg import charpoly, identity_matrix, mat_mul, vec_mat
from .kummer_structures import construct
from .ns_lattice import (
    DIM,
    DivisorClass,
    L_class,
    N_BLOCKS,
    curve_a,
    curve_b,
    pairing_times_nine,
    zero_class,
)


class NotAConfiguration(ValueError):
    """The supplied curve classes do not form a 9A2 configuration in NS."""


class WrongPolarization(ValueError):
    """The operation is specific to a polarization this model does not have."""


# ---------------------------------------------------------------------------
# configurations


def standard_config(ns):
    """The configuration ((A_1, B_1), ..., (A_9, B_9))."""
    return tuple((curve_a(j), curve_b(j)) for j in range(1, N_BLOCKS + 1))


def replacement_config(ns, swap=None):
    """The alternate configuration with B_1 replaced by the Pell class.

    With swap=True the roles of A_1 and B_1 are exchanged; the default
    resolves the exchange automatically (needed exactly when L^2 = 0 mod 18
    with 3 not dividing y0 and the unswapped class is the reducible side).
    """
    if swap is None:
        from .kummer_structures import resolve_swap

        swap = resolve_swap(ns)
    b1p, _ = construct(ns, swap=swap)
    first = (curve_b(1), b1p) if swap else (curve_a(1), b1p)
    return (first,) + tuple(
        (curve_a(j), curve_b(j)) for j in range(2, N_BLOCKS + 1))


def validate_config(ns, config):
    """Raise NotAConfiguration unless config is a 9A2 configuration in NS."""
    if len(config) != N_BLOCKS or any(len(pair) != 2 for pair in config):
        raise NotAConfiguration("expected nine pairs of classes")
    flat = [c for pair in config for c in pair]
    for c in flat:
        if not ns.contains(c):
            raise NotAConfiguration("a configuration class is outside NS")
    for i, c in enumerate(flat):
        for j, d in enumerate(flat):
            want = -2 if i == j else (1 if i // 2 == j // 2 else 0)
            if pairing_times_nine(ns.L2, c.num, d.num) != 9 * want:
                raise NotAConfiguration(
                    f"classes {i} and {j} pair to the wrong value")


def orthogonal_generator(ns, config):
    """Primitive generator of the orthogonal complement of a configuration,
    normalized to positive L-coefficient."""
    from .exact_linalg import kernel_basis

    gram = [list(r) for r in ns.gram]
    cols = []
    for pair in config:
        for c in pair:
            delta = ns.coords(c)
            if delta is None:
                raise NotAConfiguration("a configuration class is outside NS")
            cols.append(vec_mat(delta, gram))
    mat = [[col[i] for col in cols] for i in range(DIM)]
    rows = kernel_basis(mat)
    if len(rows) != 1:
        raise NotAConfiguration("orthogonal complement must have rank 1")
    gen = ns.class_from_coords(rows[0])
    if gen.num[0] == 0:
        raise AssertionError("orthogonal generator cannot avoid L")
    return gen if gen.num[0] > 0 else -gen


# ---------------------------------------------------------------------------
# 3-divisibility words


def _gf3_nullspace(mat):
    """Basis of {x : mat * x = 0 over GF(3)} for an integer matrix."""
    m, n = len(mat), len(mat[0])
    a = [[x % 3 for x in row] for row in mat]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        if a[r][c] == 2:
            a[r] = [(2 * x) % 3 for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % 3 for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for prow, pc in enumerate(pivots):
            v[pc] = (-a[prow][fc]) % 3
        basis.append(tuple(v))
    return basis


def _divisibility_words(ns, config):
    """All words w in (Z/3)^9 with (1/3) sum_j w_j (C_j - D_j) in NS."""
    diffs = []
    for c, d in config:
        delta = ns.coords(c - d)
        if delta is None:
            raise NotAConfiguration("difference class left the lattice")
        diffs.append(delta)
    # left kernel of the 9 x 19 matrix of differences, over GF(3)
    mat = [[diffs[l][c] for l in range(N_BLOCKS)] for c in range(DIM)]
    basis = _gf3_nullspace(mat)
    if len(basis) != 3:
        raise NotAConfiguration("3-divisible words must form (Z/3)^3")
    words = set()
    for a1 in range(3):
        for a2 in range(3):
            for a3 in range(3):
                w = tuple(
                    (a1 * basis[0][j] + a2 * basis[1][j] + a3 * basis[2][j]) % 3
                    for j in range(N_BLOCKS))
                words.add(w)
    if len(words) != 27:
        raise NotAConfiguration("expected 27 distinct 3-divisible words")
    return sorted(words), basis


def _support(word):
    return frozenset(j + 1 for j, x in enumerate(word) if x)


@dataclass(frozen=True)
class BlockDivisibilitySet:
    """The twelve 6-element block supports of 3-divisible classes."""

    subsets: tuple

    def __post_init__(self):
        canonical = sorted((frozenset(s) for s in self.subsets),
                           key=lambda s: sorted(s))
        object.__setattr__(self, "subsets", tuple(canonical))


def block_sets(ns, config):
    """Six-block supports of the 3-divisible classes of a configuration."""
    validate_config(ns, config)
    words, _ = _divisibility_words(ns, config)
    supports = {_support(w) for w in words if len(_support(w)) == 6}
    sizes = sorted(len(_support(w)) for w in words)
    if sizes != [0] + [6] * 24 + [9] * 2:
        raise NotAConfiguration("support profile must be 1/24/2 over 0/6/9 blocks")
    if len(supports) != 12:
        raise NotAConfiguration("expected exactly 12 six-block supports")
    return BlockDivisibilitySet(tuple(supports))


# ---------------------------------------------------------------------------
# permutation prune


def prune(bl, bl_prime):
    """All permutations of the nine blocks mapping every support of bl to a
    support of bl_prime, in lexicographic order (images of blocks 1..9)."""
    full = frozenset(range(9))
    src3 = [full - frozenset(x - 1 for x in s) for s in bl.subsets]
    tgt3 = {full - frozenset(x - 1 for x in s) for s in bl_prime.subsets}
    by_last = {p: [] for p in range(9)}
    for t in src3:
        by_last[max(t)].append(tuple(t))
    img = [None] * 9
    used = [False] * 9
    out = []

    def rec(pos):
        if pos == 9:
            out.append(tuple(x + 1 for x in img))
            return
        for w in range(9):
            if used[w]:
                continue
            img[pos] = w
            if all(frozenset(img[x] for x in t) in tgt3 for t in by_last[pos]):
                used[w] = True
                rec(pos + 1)
                used[w] = False
        img[pos] = None

    rec(0)
    return out


# ---------------------------------------------------------------------------
# candidate matrices


@dataclass(frozen=True)
class IsometryCandidate:
    """One candidate map: block permutation, swap bits, and its matrix on
    the Q-basis (rows are images of the basis vectors)."""

    sigma: tuple        # images of blocks 1..9 (values 1..9)
    swaps: tuple        # True: A_k goes to the second member of the block
    matrix: tuple       # 19 x 19, integral for every accepted candidate
    status: str         # pruned | non_integral | disc_fail | accepted
    disc_sign: object = None
    order: object = None   # int, "infinite", or None when not classified

    def to_json_dict(self):
        return {
            "sigma": list(self.sigma),
            "swaps": "".join("1" if s else "0" for s in self.swaps),
            "status": self.status,
            "disc_sign": self.disc_sign,
            "order": self.order,
        }


def _m_coords(c):
    """Coordinates of a class over the Q-basis (numerators divided by 3)."""
    if all(x % 3 == 0 for x in c.num):
        return [x // 3 for x in c.num]
    return [Fraction(x, 3) for x in c.num]


def _candidate_matrix(l_target, target, sigma, swaps):
    """Rows: image of L, then images of A_1, B_1, ..., A_9, B_9."""
    rows = [_m_coords(l_target)]
    for k in range(N_BLOCKS):
        c, d = target[sigma[k] - 1]
        first, second = (d, c) if swaps[k] else (c, d)
        rows.append(_m_coords(first))
        rows.append(_m_coords(second))
    return rows


def _solve_in_basis(basis, y_rows):
    """Solve X * basis = Y for integer X, basis upper triangular; None if
    any entry fails to be an integer."""
    n = len(basis)
    out = []
    for y in y_rows:
        rem = list(y)
        x = [0] * n
        for j in range(n):
            q, r = divmod(rem[j], basis[j][j])
            if r:
                return None
            if isinstance(q, Fraction):
                if q.denominator != 1:
                    return None
                q = int(q)
            x[j] = q
            if q:
                row = basis[j]
                for k in range(j + 1, n):
                    rem[k] -= q * row[k]
        out.append(x)
    return out


def basis_matrix(ns, mtilde):
    """Matrix of the map on the lattice basis, or None when the map does not
    preserve the lattice.  Form-preserving maps have determinant +-1, so
    integrality of this matrix is the whole of the preservation condition."""
    y_rows = [vec_mat(row, mtilde) for row in ns.basis]
    return _solve_in_basis(ns.basis, y_rows)


def _disc_sign(ns, x_mat):
    """+1 or -1 when the map acts on the discriminant group by that sign on
    every generator; None otherwise."""
    signs = {1, -1}
    for d, urow in ns.disc_transform_rows:
        ux = [0] * DIM
        for i, ui in enumerate(urow):
            if ui % d:
                row = x_mat[i]
                for j in range(DIM):
                    ux[j] += ui * row[j]
        ok = set()
        if all((a - b) % d == 0 for a, b in zip(ux, urow)):
            ok.add(1)
        if all((a + b) % d == 0 for a, b in zip(ux, urow)):
            ok.add(-1)
        signs &= ok
        if not signs:
            return None
    return 1 if 1 in signs else -1


def _pairing_matrix(L2):
    q = [[0] * DIM for _ in range(DIM)]
    q[0][0] = L2
    for j in range(1, DIM, 2):
        q[j][j] = q[j + 1][j + 1] = -2
        q[j][j + 1] = q[j + 1][j] = 1
    return q


def _is_isometry(L2, mtilde):
    q = _pairing_matrix(L2)
    mt = [list(r) for r in mtilde]
    left = mat_mul(mat_mul(mt, q), [list(col) for col in zip(*mt)])
    return left == q


# ---------------------------------------------------------------------------
# the search itself


@dataclass(frozen=True)
class SearchResult:
    accepted: tuple
    prune_count: int
    status_counts: dict

    def to_json_dict(self):
        return {
            "prune_count": self.prune_count,
            "status_counts": dict(self.status_counts),
            "accepted": [c.to_json_dict() for c in self.accepted],
        }


def _search_worker(ns, source, target, sigmas):
    """Test the candidates over the given permutations; returns the accepted
    list plus how many candidates were integral and how many failed the
    discriminant condition.  Stateless, so chunks can run in parallel."""
    l_tgt = orthogonal_generator(ns, target)
    src_words, src_basis = _divisibility_words(ns, source)
    tgt_words, _ = _divisibility_words(ns, target)
    tgt_set = set(tgt_words)
    src_nine = [w for w in src_words if len(_support(w)) == 9]
    tgt_nine = [w for w in tgt_words if len(_support(w)) == 9]
    if len(src_nine) != 2 or len(tgt_nine) != 2:
        raise NotAConfiguration("expected exactly two fully supported words")

    c9 = src_nine[0]
    accepted = []
    integral = 0
    disc_fail = 0
    for sigma in sigmas:
        for w9 in tgt_nine:
            # the fully supported word pins the swap mask up to this choice
            eps = tuple((w9[sigma[j] - 1] * c9[j]) % 3 for j in range(N_BLOCKS))
            if any(e == 0 for e in eps):
                continue
            ok = True
            for word in src_basis:
                moved = [0] * N_BLOCKS
                for j in range(N_BLOCKS):
                    if word[j]:
                        moved[sigma[j] - 1] = (word[j] * eps[j]) % 3
                if tuple(moved) not in tgt_set:
                    ok = False
                    break
            if not ok:
                continue
            swaps = tuple(e == 2 for e in eps)
            mtilde = _candidate_matrix(l_tgt, target, sigma, swaps)
            x_mat = basis_matrix(ns, mtilde)
            if x_mat is None:
                continue
            integral += 1
            sign = _disc_sign(ns, x_mat)
            if sign is None:
                disc_fail += 1
                continue
            if not _is_isometry(ns.L2, mtilde):
                raise AssertionError("accepted candidate must preserve the form")
            accepted.append(IsometryCandidate(
                sigma=sigma,
                swaps=swaps,
                matrix=tuple(tuple(int(x) for x in row) for row in mtilde),
                status="accepted",
                disc_sign=sign,
            ))
    return accepted, integral, disc_fail


def _search_chunk(args):
    return _search_worker(*args)


def search(ns, source, target, jobs=1):
    """All isometries of NS sending the source configuration to the target
    one (blockwise, respecting incidence) and the source orthogonal
    generator to the target one, acting by +-identity on the discriminant
    group.  Empty result means no such isometry exists.

    jobs > 1 fans the pruned permutations out across processes; results are
    merged in canonical order, so the outcome does not depend on jobs.
    """
    validate_config(ns, source)
    validate_config(ns, target)
    bl = block_sets(ns, source)
    bl_prime = block_sets(ns, target)
    sigmas = prune(bl, bl_prime)

    if jobs > 1 and len(sigmas) >= 2:
        from multiprocessing import Pool

        chunks = [sigmas[i::jobs] for i in range(jobs)]
        with Pool(jobs) as pool:
            parts = pool.map(
                _search_chunk,
                [(ns, source, target, chunk) for chunk in chunks])
        accepted = [c for part in parts for c in part[0]]
        integral = sum(part[1] for part in parts)
        disc_fail = sum(part[2] for part in parts)
    else:
        accepted, integral, disc_fail = _search_worker(ns, source, target, sigmas)

    accepted.sort(key=lambda c: (c.sigma, c.swaps))
    total = factorial(9) * 2 ** 9
    per_sigma = 2 ** 9
    counts = {
        "pruned": total - len(sigmas) * per_sigma,
        "non_integral": len(sigmas) * per_sigma - integral,
        "disc_fail": disc_fail,
        "accepted": len(accepted),
    }
    return SearchResult(tuple(accepted), len(sigmas), counts)


# ---------------------------------------------------------------------------
# the degree-2 model for L^2 = 20 and its polarized automorphisms


@dataclass(frozen=True)
class D2Configuration:
    """The 36 degree-1 rational curves of the double-plane model: the
    standard configuration plus its mirror under the covering involution."""

    d2: DivisorClass
    a: tuple
    b: tuple
    e: tuple
    f: tuple

    @property
    def classes(self):
        return self.a + self.b + self.e + self.f


def d2_configuration(ns):
    """Build and verify the 36-curve configuration attached to the ample
    square-2 class for L^2 = 20."""
    if ns.L2 != 20:
        raise WrongPolarization("the degree-2 model needs L^2 = 20")
    total = zero_class()
    for j in range(1, N_BLOCKS + 1):
        total = total + curve_a(j) + curve_b(j)
    d2 = L_class() - total
    if ns.square(d2) != 2 or not ns.is_chamber_ample(d2):
        raise AssertionError("the degree-2 class must be chamber-ample of square 2")
    a = tuple(curve_a(j) for j in range(1, N_BLOCKS + 1))
    b = tuple(curve_b(j) for j in range(1, N_BLOCKS + 1))
    e = tuple(d2 - c for c in a)
    f = tuple(d2 - c for c in b)
    for c in a + b + e + f:
        if ns.square(c) != -2 or ns.pairing(d2, c) != 1 or not ns.contains(c):
            raise AssertionError("every curve must be a degree-1 root")
    validate_config(ns, tuple(zip(e, f)))
    return D2Configuration(d2, a, b, e, f)


@dataclass(frozen=True)
class AutElement:
    perm: tuple          # images of the 36 curves (indices 0..35)
    matrix: tuple        # 19 x 19 on the Q-basis
    disc_sign: int
    order: int


@dataclass(frozen=True)
class AutD2Group:
    """Automorphism group of the polarized degree-2 model, as permutations
    of the 36 curves with their induced lattice matrices."""

    elements: tuple
    sigma_index: int     # the central involution swapping the two mirrors
    orbit_a1: tuple
    orbit_b1: tuple
    center_indices: tuple
    structure: str

    @property
    def order(self):
        return len(self.elements)

    def to_json_dict(self):
        return {
            "order": self.order,
            "structure": self.structure,
            "center_size": len(self.center_indices),
            "sigma_order": self.elements[self.sigma_index].order,
            "orbit_sizes": [len(self.orbit_a1), len(self.orbit_b1)],
            "element_orders": sorted(e.order for e in self.elements),
            "disc_signs": sorted(e.disc_sign for e in self.elements),
        }


def _partner(i):
    return (i + 18) % 36


def _perm_order(perm):
    n = len(perm)
    seen = [False] * n
    order = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        order = order * length // gcd(order, length)
    return order


def compute_aut_d2(ns):
    """Polarized automorphism group of the degree-2 model for L^2 = 20.

    Any symmetry of the labelled intersection graph of the 36 curves fixing
    the degree-2 class sends mirror pairs to mirror pairs, so it is a block
    permutation combined with an optional global mirror swap; both halves
    are enumerated with the pruned configuration search (never a 36! scan),
    filtered by integrality and the +-identity discriminant action, and the
    group structure is identified from the multiplication table.
    """
    cfg = d2_configuration(ns)
    source = standard_config(ns)
    mirror_config = tuple(zip(cfg.e, cfg.f))

    elements = []
    for mirrored, target in ((False, source), (True, mirror_config)):
        for cand in search(ns, source, target).accepted:
            perm = [None] * 36
            for k in range(9):
                block = cand.sigma[k] - 1
                first, second = (block, 9 + block)
                if mirrored:
                    first, second = (18 + block, 27 + block)
                if cand.swaps[k]:
                    first, second = second, first
                perm[k] = first
                perm[9 + k] = second
            for v in range(18):
                perm[_partner(v)] = _partner(perm[v])
            elements.append(AutElement(
                perm=tuple(perm),
                matrix=cand.matrix,
                disc_sign=cand.disc_sign,
                order=_perm_order(perm),
            ))

    elements.sort(key=lambda el: el.perm)
    index = {el.perm: i for i, el in enumerate(elements)}

    def compose(p, q):
        return tuple(p[q[x]] for x in range(36))

    n = len(elements)
    table = [[None] * n for _ in range(n)]
    for i, gi in enumerate(elements):
        for j, gj in enumerate(elements):
            prod = compose(gi.perm, gj.perm)
            if prod not in index:
                raise AssertionError("group is not closed under composition")
            table[i][j] = index[prod]

    center = tuple(i for i in range(n)
                   if all(table[i][j] == table[j][i] for j in range(n)))
    mirror = tuple(list(range(18, 36)) + list(range(18)))
    if mirror not in index:
        raise AssertionError("the mirror involution must be an automorphism")
    sigma_index = index[mirror]

    def orbit(start):
        seen = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for el in elements:
                w = el.perm[v]
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return tuple(sorted(seen))

    structure = _structure_name(elements, table, center, sigma_index)
    return AutD2Group(
        elements=tuple(elements),
        sigma_index=sigma_index,
        orbit_a1=orbit(0),
        orbit_b1=orbit(9),
        center_indices=center,
        structure=structure,
    )


def _structure_name(elements, table, center, sigma_index):
    """Identify the group from its multiplication table.

    The expected shape is the direct product of the order-2 center with a
    nonabelian order-18 subgroup whose Sylow 3-subgroup is elementary
    abelian and whose own center is trivial; that pins the order-18 factor
    uniquely among the five groups of order 18.
    """
    n = len(elements)
    if n != 36:
        return f"unrecognized order {n}"
    if len(center) != 2 or sigma_index not in center:
        return "unrecognized center"
    plus = [i for i in range(n) if elements[i].disc_sign == 1]
    if len(plus) != 18 or sigma_index in plus:
        return "unrecognized splitting"
    plus_set = set(plus)
    if any(table[i][j] not in plus_set for i in plus for j in plus):
        return "unrecognized splitting"
    orders = sorted(elements[i].order for i in plus)
    if orders != [1] + [2] * 9 + [3] * 8:
        return f"unrecognized element orders {orders}"
    h_center = [i for i in plus
                if all(table[i][j] == table[j][i] for j in plus)]
    if len(h_center) != 1:
        return "unrecognized order-18 factor"
    return "Z2 x (Z3 : S3)"


# ---------------------------------------------------------------------------
# order classification


def _totient(n):
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


_CYCLOTOMIC_CACHE = {}


def _cyclotomic(d):
    """Coefficients of the d-th cyclotomic polynomial, descending powers."""
    if d in _CYCLOTOMIC_CACHE:
        return _CYCLOTOMIC_CACHE[d]
    poly = [1] + [0] * (d - 1) + [-1]
    for e in range(1, d):
        if d % e == 0:
            poly = _poly_div_exact(poly, _cyclotomic(e))
            if poly is None:
                raise AssertionError("cyclotomic division must be exact")
    _CYCLOTOMIC_CACHE[d] = poly
    return poly


def _poly_div_exact(num, den):
    """Quotient of exact polynomial division (descending coefficients), or
    None when den does not divide num over Z.  den must be monic."""
    if den[0] != 1:
        raise ValueError("divisor must be monic")
    num = list(num)
    if len(num) < len(den):
        return None
    q = []
    while len(num) >= len(den):
        f = num[0]
        q.append(f)
        if f:
            for i in range(1, len(den)):
                num[i] -= f * den[i]
        num.pop(0)
    return q if not any(num) else None


def classify_order(candidate):
    """Exact multiplicative order of an accepted candidate.

    Returns an int when the matrix has finite order (verified by exact
    powering), "infinite" otherwise.  Finite order forces the characteristic
    polynomial to be a product of cyclotomic polynomials; when it is, the
    only possible order is the lcm of their indices.
    """
    mat = [list(r) for r in candidate.matrix] \
        if isinstance(candidate, IsometryCandidate) else [list(r) for r in candidate]
    n = len(mat)
    poly = charpoly(mat)
    indices = []
    # phi(d) >= sqrt(d/2), so every cyclotomic factor of degree <= n has
    # index at most 2*n^2
    for d in range(1, 2 * n * n + 1):
        if _totient(d) > n:
            continue
        while len(poly) - 1 >= _totient(d):
            quotient = _poly_div_exact(poly, _cyclotomic(d))
            if quotient is None:
                break
            poly = quotient
            indices.append(d)
        if len(poly) == 1:
            break
    if poly != [1]:
        return "infinite"
    order = 1
    for d in indices:
        order = order * d // gcd(order, d)
    power = identity_matrix(n)
    base = mat
    e = order
    while e:
        if e & 1:
            power = mat_mul(power, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    if power == identity_matrix(n):
        return order
    return "infinite"
