"""Integral matrix models of S_n representations and exact lattice algebra.

The permutation lattice of interest is the sum-zero sublattice of Z^(r+1)
with basis eps_i = e_i - e_(r+1).  Representations are stored by their
matrices on the adjacent transpositions s_1, ..., s_(n-1); images of
arbitrary permutations are assembled by factoring into adjacent
transpositions (bubble sort), so only the verified generator matrices are
ever trusted.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .chartab import ClassFunction, inner_product, sn_class_function
from .errors import InternalCheckError, SizeLimitError
from .linalg import Matrix
from .symgroup import Partition, Permutation, class_representative, enumerate_partitions

SNF_DIM_CAP = 200


class OddRankWarning(UserWarning):
    """The torsion analysis downstream requires an even rank."""


class IntegerRep:
    """A representation of S_n by exact integer matrices on s_1..s_(n-1)."""

    def __init__(self, degree: int, group_degree: int, gen_images: dict[int, Matrix],
                 *, check: bool = True):
        self.degree = degree
        self.group_degree = group_degree
        self.gen_images = dict(gen_images)
        if sorted(self.gen_images) != list(range(1, group_degree)):
            raise ValueError("need one matrix per adjacent transposition s_1..s_(n-1)")
        for a, m in self.gen_images.items():
            if m.rows != degree or m.cols != degree:
                raise ValueError(f"matrix for s_{a} has wrong shape")
        self._cache: dict[Permutation, Matrix] = {}
        if check:
            self.check_coxeter()

    def check_coxeter(self) -> None:
        """s_a^2 = 1, braid relations, distant commutation; all exact."""
        n = self.group_degree
        ident = Matrix.identity(self.degree)
        s = self.gen_images
        for a in range(1, n):
            if not (s[a] * s[a]) == ident:
                raise InternalCheckError(f"s_{a}^2 != 1")
        for a in range(1, n - 1):
            m = s[a] * s[a + 1]
            if not (m * m * m) == ident:
                raise InternalCheckError(f"braid relation fails at s_{a}, s_{a+1}")
        for a in range(1, n):
            for b in range(a + 2, n):
                m = s[a] * s[b]
                if not (m * m) == ident:
                    raise InternalCheckError(f"s_{a} and s_{b} do not commute")

    def matrix(self, g: Permutation) -> Matrix:
        """Image of an arbitrary permutation, via adjacent factorization."""
        if g.n != self.group_degree:
            raise ValueError("permutation degree mismatch")
        cached = self._cache.get(g)
        if cached is not None:
            return cached
        out = Matrix.identity(self.degree)
        for a in adjacent_factorization(g):
            out = out * self.gen_images[a]
        self._cache[g] = out
        return out

    def character(self) -> ClassFunction:
        return rep_character(self)


def adjacent_factorization(g: Permutation) -> list[int]:
    """Indices a_1, ..., a_k with g = s_(a_1) * ... * s_(a_k) (function-style
    composition), found by bubble-sorting the one-line form."""
    word = list(g.images)
    swaps = []
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                swaps.append(i + 1)  # right-multiplied by s_(i+1)
                changed = True
    # g * s_(a_1) * ... * s_(a_k) = id  =>  g = s_(a_k) * ... * s_(a_1)
    return list(reversed(swaps))


def standard_rep(r: int) -> IntegerRep:
    """The rank-r sum-zero sublattice of Z^(r+1) as an S_(r+1)-module, in
    the basis eps_i = e_i - e_(r+1).

    Adjacent transpositions s_a with a < r swap eps_a and eps_(a+1); the
    last one sends eps_r to -eps_r and eps_j to eps_j - eps_r for j < r.
    """
    if r < 2:
        raise ValueError("rank must be at least 2")
    if r % 2 == 1:
        warnings.warn(
            f"rank {r} is odd; the torsion analysis requires an even rank",
            OddRankWarning,
            stacklevel=2,
        )
    n = r + 1
    gens = {}
    for a in range(1, r):
        rows = [[int(i == j) for j in range(r)] for i in range(r)]
        rows[a - 1][a - 1] = rows[a][a] = 0
        rows[a - 1][a] = rows[a][a - 1] = 1
        gens[a] = Matrix(rows)
    last = [[int(i == j) for j in range(r)] for i in range(r)]
    for j in range(r):
        last[r - 1][j] = -1
    gens[r] = Matrix(last)
    return IntegerRep(r, n, gens)


def long_cycle_matrix(rep: IntegerRep) -> Matrix:
    """Image of the long cycle (1 2 ... n)."""
    return rep.matrix(Permutation.long_cycle(rep.group_degree))


def companion_sigma_matrix(r: int) -> Matrix:
    """The predicted matrix of the long cycle on the eps-basis: first row
    all -1, subdiagonal 1, zero elsewhere."""
    rows = [[0] * r for _ in range(r)]
    for j in range(r):
        rows[0][j] = -1
    for i in range(1, r):
        rows[i][i - 1] = 1
    return Matrix(rows)


def verify_sigma_formula(r: int, rep: IntegerRep | None = None) -> bool:
    """Does the long cycle act by the companion-style matrix?"""
    if rep is None:
        rep = standard_rep(r)
    return long_cycle_matrix(rep) == companion_sigma_matrix(r)


def rep_character(rep: IntegerRep) -> ClassFunction:
    """Trace at one representative per cycle type, cross-checked on a
    second representative of the same class."""
    n = rep.group_degree
    h = Permutation.long_cycle(n)  # fixed conjugator for the second witness
    values = []
    for mu in enumerate_partitions(n):
        g = class_representative(mu)
        tr = rep.matrix(g).trace()
        tr2 = rep.matrix(g.conjugate_by(h)).trace()
        if tr != tr2:
            raise InternalCheckError(f"trace is not constant on the class {mu}")
        values.append(tr)
    return sn_class_function(n, values)


def _trace_zero_basis_index(r: int) -> list[tuple]:
    """Basis order for trace-zero r x r matrices: E_ij (i != j) in row-major
    order, then D_i = E_ii - E_(i+1)(i+1)."""
    idx = [("E", i, j) for i in range(r) for j in range(r) if i != j]
    idx += [("D", i) for i in range(r - 1)]
    return idx


def trace_zero_coords(x: Matrix) -> tuple:
    """Coordinates of a trace-zero matrix in the documented basis."""
    r = x.rows
    if x.trace() != 0:
        raise ValueError("matrix is not trace-zero")
    coords = [x[i, j] for i in range(r) for j in range(r) if i != j]
    acc = 0
    for i in range(r - 1):
        acc += x[i, i]
        coords.append(acc)
    return tuple(coords)


def trace_zero_matrix(r: int, coords) -> Matrix:
    """Inverse of trace_zero_coords."""
    out = [[0] * r for _ in range(r)]
    k = 0
    for i in range(r):
        for j in range(r):
            if i != j:
                out[i][j] = coords[k]
                k += 1
    prev = 0
    for i in range(r - 1):
        out[i][i] = coords[k + i] - prev
        prev = coords[k + i]
    out[r - 1][r - 1] = -prev
    return Matrix(out)


def end0_action(rep: IntegerRep) -> IntegerRep:
    """Conjugation action on trace-zero endomorphisms, of degree d^2 - 1,
    in the documented integral basis.  The character equals chi^2 - 1,
    which is verified exactly."""
    r = rep.degree
    n = rep.group_degree
    dim = r * r - 1
    basis = []
    for kind in _trace_zero_basis_index(r):
        m = [[0] * r for _ in range(r)]
        if kind[0] == "E":
            _, i, j = kind
            m[i][j] = 1
        else:
            _, i = kind
            m[i][i] = 1
            m[i + 1][i + 1] = -1
        basis.append(Matrix(m))
    gens = {}
    for a, g in rep.gen_images.items():
        ginv = g.inverse()
        cols = [trace_zero_coords(g * b * ginv) for b in basis]
        gens[a] = Matrix.from_cols(cols)
    out = IntegerRep(dim, n, gens)
    chi = rep_character(rep)
    expected = chi * chi - sn_class_function(n, [1] * len(chi.values))
    if rep_character(out).values != expected.values:
        raise InternalCheckError("trace-zero action character differs from chi^2 - 1")
    return out


def multiplicity(target: ClassFunction, ambient: ClassFunction) -> int:
    """<ambient, target>, required to be a non-negative integer."""
    m = inner_product(ambient, target)
    if not isinstance(m, int):
        raise ValueError(f"non-integral multiplicity {m}")
    if m < 0:
        raise ValueError(f"negative multiplicity {m}")
    return m


@dataclass(frozen=True)
class SnfResult:
    U: Matrix
    D: Matrix
    V: Matrix
    elementary_divisors: tuple[int, ...]


def smith_normal_form(a: Matrix) -> SnfResult:
    """U * A * V = D with U, V unimodular and D = diag(d_1 | d_2 | ...).

    Plain integer row/column reduction with smallest-nonzero-pivot
    selection; no modular arithmetic.
    """
    if a.rows > SNF_DIM_CAP or a.cols > SNF_DIM_CAP:
        raise SizeLimitError(f"Smith normal form capped at {SNF_DIM_CAP}")
    rows, cols = a.rows, a.cols
    d = [list(row) for row in a.entries]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, mult):
        d[dst] = [x + mult * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + mult * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, mult):
        for row in d:
            row[dst] += mult * row[src]
        for row in v:
            row[dst] += mult * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    def diagonalize(t0):
        t = t0
        while t < min(rows, cols):
            # locate the smallest nonzero entry in the remaining block
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = abs(d[i][j])
                    if x and (best is None or x < best[0]):
                        best = (x, i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != t:
                swap_rows(bi, t)
            if bj != t:
                swap_cols(bj, t)
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j]:
                        dirty = True
            if dirty:
                continue  # remainders appeared; redo with a smaller pivot
            if d[t][t] < 0:
                negate_row(t)
            t += 1

    diagonalize(0)

    # enforce the divisibility chain d_i | d_(i+1); zeros are already last
    k = min(rows, cols)
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            a_, b_ = d[i][i], d[i + 1][i + 1]
            if a_ and b_ % a_ != 0:
                # fold the offending entry into column i, then re-reduce
                add_col(i + 1, i, 1)
                diagonalize(i)
                changed = True

    divisors = tuple(d[i][i] for i in range(k))
    res = SnfResult(U=Matrix(u), D=Matrix(d), V=Matrix(v), elementary_divisors=divisors)
    if not (res.U * a * res.V) == res.D:
        raise InternalCheckError("Smith decomposition does not reproduce the input")
    if abs(res.U.det()) != 1 or abs(res.V.det()) != 1:
        raise InternalCheckError("transform matrices are not unimodular")
    return res


def sigma_coinvariants(r: int) -> tuple[int, ...]:
    """Elementary divisors of (long-cycle action - identity) on the rank-r
    lattice; the quotient classifies the characters fixed by the cycle."""
    rep = standard_rep(r)
    sig = long_cycle_matrix(rep)
    res = smith_normal_form(sig - Matrix.identity(r))
    det = (sig - Matrix.identity(r)).det()
    prod = 1
    for x in res.elementary_divisors:
        prod *= x
    if prod != abs(det):
        raise InternalCheckError("divisor product does not match the determinant")
    return res.elementary_divisors
