"""Character tables.

Two independent sources of tables live here:

* symmetric groups S_n, computed by the Murnaghan-Nakayama border-strip
  recursion (all values are rational integers);
* arbitrary small finite groups, computed by the Burnside class-algebra
  method: the transposed class-multiplication matrices commute, their
  common eigenvectors (normalized at the identity class) are the central
  characters, and the irreducible characters are read off from them.  All
  eigenvector arithmetic happens exactly in Q(zeta_N) with N the group
  exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt, lcm

from .cyclotomic import Cyclotomic, roots_in_cyclotomic
from .errors import InternalCheckError, SizeLimitError
from .linalg import Matrix, charpoly
from .symgroup import Partition, centralizer_order, enumerate_partitions

MN_CAP = 12
TABLE_CAP = 10
GROUP_ORDER_CAP = 400


def _conj(v):
    return v.conjugate() if isinstance(v, Cyclotomic) else v


def _simplify(v):
    if isinstance(v, Cyclotomic):
        return v.simplify()
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def _value_sort_key(v):
    if isinstance(v, Cyclotomic):
        if v.is_rational():
            return (0, v.rational_value())
        return (1, v.conductor, v.coeffs)
    return (0, Fraction(v))


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """An exact-valued function on the conjugacy classes of a finite group.

    `labels` are Partition objects for S_n, or class-representative
    elements in the generic case; values may be int, Fraction or
    Cyclotomic.
    """

    labels: tuple
    sizes: tuple
    group_order: int
    values: tuple

    def __post_init__(self):
        if not (len(self.labels) == len(self.sizes) == len(self.values)):
            raise ValueError("labels, sizes and values must have equal length")
        if sum(self.sizes) != self.group_order:
            raise ValueError("class sizes do not sum to the group order")

    def value_at(self, label):
        try:
            return self.values[self.labels.index(label)]
        except ValueError:
            raise ValueError(f"no class labelled {label}") from None

    def same_classes(self, other: "ClassFunction") -> bool:
        return (
            self.group_order == other.group_order
            and self.labels == other.labels
            and self.sizes == other.sizes
        )

    def inner(self, other: "ClassFunction"):
        """<f, g> = (1/|G|) sum over classes |C| f(C) conj(g(C)), exact."""
        if not self.same_classes(other):
            raise ValueError("class functions live on different class lists")
        total = 0
        for size, a, b in zip(self.sizes, self.values, other.values):
            total = total + size * (a * _conj(b))
        if isinstance(total, Cyclotomic):
            return _simplify(total / self.group_order)
        return _simplify(Fraction(total, self.group_order))

    def _pointwise(self, other, op):
        if not self.same_classes(other):
            raise ValueError("class functions live on different class lists")
        vals = tuple(_simplify(op(a, b)) for a, b in zip(self.values, other.values))
        return ClassFunction(self.labels, self.sizes, self.group_order, vals)

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            return self._pointwise(other, lambda a, b: a * b)
        return ClassFunction(
            self.labels, self.sizes, self.group_order,
            tuple(_simplify(v * other) for v in self.values),
        )

    def __add__(self, other):
        return self._pointwise(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._pointwise(other, lambda a, b: a - b)

    def to_json(self) -> list:
        return [v.to_json() if isinstance(v, Cyclotomic) else str(v) for v in self.values]


def sn_class_data(n: int) -> tuple[tuple, tuple]:
    """(labels, sizes) for the conjugacy classes of S_n in canonical order."""
    labels = tuple(enumerate_partitions(n))
    sizes = tuple(factorial(n) // centralizer_order(mu) for mu in labels)
    return labels, sizes


def sn_class_function(n: int, values) -> ClassFunction:
    labels, sizes = sn_class_data(n)
    return ClassFunction(labels, sizes, factorial(n), tuple(values))


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama

@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1 if not lam else 0
    t, rest = mu[0], mu[1:]
    size = len(lam)
    beta = [lam[i] + (size - 1 - i) for i in range(size)]
    beta_set = set(beta)
    total = 0
    for b in beta:
        if b >= t and (b - t) not in beta_set:
            height = sum(1 for c in beta if b - t < c < b)
            new_beta = sorted((beta_set - {b}) | {b - t}, reverse=True)
            parts = tuple(
                nb - (size - 1 - i) for i, nb in enumerate(new_beta) if nb - (size - 1 - i) > 0
            )
            total += (-1) ** height * _mn(parts, rest)
    return total


def mn_character_value(lam: Partition, mu: Partition) -> int:
    """chi^lam(mu) by the border-strip recursion."""
    if lam.n != mu.n:
        raise ValueError(f"partitions of different sizes: {lam} vs {mu}")
    if lam.n > MN_CAP:
        raise SizeLimitError(f"Murnaghan-Nakayama capped at n <= {MN_CAP}")
    return _mn(lam.parts, mu.parts)


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group_descriptor: str
    labels: tuple
    class_sizes: tuple
    rows: tuple
    row_labels: tuple
    exponent: int
    identity_index: int

    @property
    def group_order(self) -> int:
        return sum(self.class_sizes)

    def degrees(self) -> tuple:
        return tuple(row.values[self.identity_index] for row in self.rows)

    def row(self, label) -> ClassFunction:
        return self.rows[self.row_labels.index(label)]

    def verify(self) -> None:
        """Exact row/column orthogonality and the degree-square identity."""
        order = self.group_order
        k = len(self.rows)
        if k != len(self.labels):
            raise InternalCheckError("table is not square")
        for i in range(k):
            for j in range(i, k):
                got = self.rows[i].inner(self.rows[j])
                if got != (1 if i == j else 0):
                    raise InternalCheckError(
                        f"row orthogonality fails at ({i},{j}): {got}"
                    )
        for c in range(k):
            for d in range(c, k):
                total = 0
                for row in self.rows:
                    total = total + row.values[c] * _conj(row.values[d])
                want = Fraction(order, self.class_sizes[c]) if c == d else 0
                if _simplify(total) != _simplify(want):
                    raise InternalCheckError(
                        f"column orthogonality fails at ({c},{d}): {total}"
                    )
        if sum(d * d for d in self.degrees()) != order:
            raise InternalCheckError("degree squares do not sum to the group order")

    def to_json_dict(self) -> dict:
        return {
            "group": self.group_descriptor,
            "classes": [str(l) for l in self.labels],
            "class_sizes": [str(s) for s in self.class_sizes],
            "exponent": str(self.exponent),
            "rows": {str(rl): row.to_json() for rl, row in zip(self.row_labels, self.rows)},
        }


@lru_cache(maxsize=None)
def character_table(n: int) -> CharacterTable:
    """Full integer character table of S_n, rows and columns indexed by
    partitions in canonical order."""
    if not 1 <= n <= TABLE_CAP:
        raise SizeLimitError(f"character_table supports 1 <= n <= {TABLE_CAP}")
    labels, sizes = sn_class_data(n)
    rows = tuple(
        sn_class_function(n, [mn_character_value(lam, mu) for mu in labels])
        for lam in labels
    )
    return CharacterTable(
        group_descriptor=f"S{n}",
        labels=labels,
        class_sizes=sizes,
        rows=rows,
        row_labels=labels,
        exponent=lcm(*range(1, n + 1)),
        identity_index=labels.index(Partition((1,) * n)),
    )


def inner_product(f: ClassFunction, g: ClassFunction):
    return f.inner(g)


def decompose_class_function(f: ClassFunction) -> tuple[dict, bool]:
    """Multiplicities of f in the irreducible characters of S_n.

    Returns (multiplicities by partition, all_nonnegative).  Raises
    ValueError when some inner product is non-integral (f is then not a
    virtual character).
    """
    n = f.labels[0].n
    table = character_table(n)
    if f.labels != table.labels:
        raise ValueError("class function is not indexed by the canonical classes")
    mults = {}
    all_nonneg = True
    for lam, row in zip(table.row_labels, table.rows):
        m = f.inner(row)
        if not isinstance(m, int):
            raise ValueError(f"not a virtual character: <f, chi^{lam}> = {m}")
        mults[lam] = m
        if m < 0:
            all_nonneg = False
    return mults, all_nonneg


# ---------------------------------------------------------------------------
# Generic small finite groups

class FiniteGroup:
    """A finite group given by generators with effective multiplication.

    Elements must be hashable.  By default elements are multiplied with
    `*` and inverted with `.inverse()`; pass `mul`/`inv` callables to
    override.  The closure is enumerated breadth-first (identity first),
    which fixes a canonical element order.
    """

    def __init__(self, generators, *, mul=None, inv=None, identity=None,
                 name: str = "", order_cap: int = GROUP_ORDER_CAP):
        self.mul = mul if mul is not None else (lambda a, b: a * b)
        self.inv = inv if inv is not None else (lambda a: a.inverse())
        generators = list(generators)
        if identity is None:
            if not generators:
                raise ValueError("need generators or an explicit identity")
            identity = self.mul(generators[0], self.inv(generators[0]))
        self.identity = identity
        self.name = name

        elements = [identity]
        seen = {identity}
        frontier = [identity]
        while frontier:
            new_frontier = []
            for a in frontier:
                for g in generators:
                    b = self.mul(a, g)
                    if b not in seen:
                        seen.add(b)
                        elements.append(b)
                        new_frontier.append(b)
                        if len(elements) > order_cap:
                            raise SizeLimitError(
                                f"group order exceeds cap {order_cap}"
                            )
            frontier = new_frontier
        self.elements = elements
        self.index = {g: i for i, g in enumerate(elements)}
        self.generators = generators
        self._validate()
        self._classes = None

    def _validate(self):
        els = self.elements
        sample = els[:: max(1, len(els) // 6)][:6]
        for a in sample:
            if self.mul(a, self.identity) != a or self.mul(self.identity, a) != a:
                raise ValueError("identity element does not act as identity")
            ai = self.inv(a)
            if ai not in self.index or self.mul(a, ai) != self.identity:
                raise ValueError("inverses are inconsistent with the multiplication")
            for b in sample:
                if self.mul(a, b) not in self.index:
                    raise ValueError("multiplication does not close on the elements")
                for c in sample:
                    left = self.mul(self.mul(a, b), c)
                    right = self.mul(a, self.mul(b, c))
                    if left != right:
                        raise ValueError("multiplication is not associative")

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_order(self, x) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    def exponent(self) -> int:
        return lcm(*(self.element_order(x) for x in self.elements))

    def conjugacy_classes(self) -> list[list]:
        """Classes as lists of elements, ordered by first appearance; the
        identity class comes first."""
        if self._classes is not None:
            return self._classes
        unassigned = set(self.elements)
        classes = []
        for x in self.elements:
            if x not in unassigned:
                continue
            orbit = [x]
            seen = {x}
            frontier = [x]
            while frontier:
                new_frontier = []
                for y in frontier:
                    for g in self.generators:
                        z = self.mul(self.mul(g, y), self.inv(g))
                        if z not in seen:
                            seen.add(z)
                            orbit.append(z)
                            new_frontier.append(z)
                frontier = new_frontier
            unassigned -= seen
            classes.append(sorted(orbit, key=self.index.__getitem__))
        self._classes = classes
        return classes


def small_group_irreducible_characters(group: FiniteGroup) -> CharacterTable:
    """Character table of an arbitrary finite group of order <= 400.

    Burnside's class-algebra method: with a_{ijl} the number of ways a
    fixed element of class l factors as (class i) * (class j), the matrices
    B_i[j][l] = a_{ijl} commute and their common eigenvectors, normalized
    at the identity class, are the central characters omega.  Degrees come
    from sum_j omega_j conj(omega_j)/|C_j| = |G|/deg^2 and the character
    values from chi(g_j) = deg * omega_j / |C_j|.
    """
    if group.order > GROUP_ORDER_CAP:
        raise SizeLimitError(f"group order exceeds cap {GROUP_ORDER_CAP}")
    classes = group.conjugacy_classes()
    k = len(classes)
    reps = [cls[0] for cls in classes]
    sizes = [len(cls) for cls in classes]
    cls_of = {}
    for ci, cls in enumerate(classes):
        for x in cls:
            cls_of[x] = ci
    n_exp = group.exponent()

    # Class-multiplication structure constants.
    bmats = []
    for i in range(k):
        rows = [[0] * k for _ in range(k)]
        for l in range(k):
            z = reps[l]
            for x in classes[i]:
                j = cls_of[group.mul(group.inv(x), z)]
                rows[j][l] += 1
        bmats.append(Matrix(rows))

    one = Cyclotomic.from_rational(1, n_exp)
    zero = Cyclotomic.from_rational(0, n_exp)
    subspaces = [[tuple(one if i == j else zero for j in range(k)) for i in range(k)]]

    for i in range(1, k):
        if all(len(w) == 1 for w in subspaces):
            break
        bmat = bmats[i]
        eigenvalues = _integer_matrix_eigenvalues(bmat, n_exp)
        new_subspaces = []
        for basis in subspaces:
            if len(basis) == 1:
                new_subspaces.append(basis)
                continue
            images = [bmat.apply(w) for w in basis]
            split_total = 0
            for lam in eigenvalues:
                rows = []
                for coord in range(k):
                    rows.append([images[j][coord] - lam * basis[j][coord]
                                 for j in range(len(basis))])
                coeffs = _cyc_nullspace(rows, len(basis), n_exp)
                if not coeffs:
                    continue
                sub = []
                for c in coeffs:
                    vec = tuple(
                        sum((c[j] * basis[j][coord] for j in range(len(basis))), zero)
                        for coord in range(k)
                    )
                    sub.append(vec)
                new_subspaces.append(sub)
                split_total += len(sub)
            if split_total != len(basis):
                raise InternalCheckError("eigenspace splitting lost dimensions")
        subspaces = new_subspaces

    if not all(len(w) == 1 for w in subspaces) or len(subspaces) != k:
        raise InternalCheckError("class algebra did not split into lines")

    rows_out = []
    order = group.order
    for basis in subspaces:
        u = basis[0]
        if u[0].is_zero():
            raise InternalCheckError("central character vanishes at the identity")
        norm = u[0].inverse()
        omega = [ui * norm for ui in u]
        s = zero
        for wj, size in zip(omega, sizes):
            s = s + wj * wj.conjugate() / size
        if not s.is_rational():
            raise InternalCheckError("central character norm is not rational")
        ratio = Fraction(order) / s.rational_value()
        if ratio.denominator != 1 or isqrt(ratio.numerator) ** 2 != ratio.numerator:
            raise InternalCheckError("degree is not a positive integer")
        deg = isqrt(ratio.numerator)
        values = tuple(
            _simplify(omega_j * Fraction(deg, size)) for omega_j, size in zip(omega, sizes)
        )
        rows_out.append(values)

    rows_out.sort(key=lambda vals: (vals[0], tuple(_value_sort_key(v) for v in vals)))
    labels = tuple(reps)
    row_labels = tuple(f"X{i+1}" for i in range(k))
    table = CharacterTable(
        group_descriptor=group.name or f"group of order {order}",
        labels=labels,
        class_sizes=tuple(sizes),
        rows=tuple(
            ClassFunction(labels, tuple(sizes), order, vals) for vals in rows_out
        ),
        row_labels=row_labels,
        exponent=n_exp,
        identity_index=0,
    )
    table.verify()
    return table


def _integer_matrix_eigenvalues(mat: Matrix, conductor: int) -> list:
    """Distinct eigenvalues of an integer matrix whose spectrum lies in
    Q(zeta_conductor), sorted deterministically."""
    coeffs = charpoly(mat)
    roots = []
    for factor_coeffs in _rational_irreducible_factors(coeffs):
        if len(factor_coeffs) == 2:
            roots.append(
                Cyclotomic.from_rational(
                    Fraction(-factor_coeffs[0], factor_coeffs[1]), conductor
                )
            )
        else:
            roots.extend(roots_in_cyclotomic(factor_coeffs, conductor))
    roots.sort(key=lambda r: r.sort_key())
    return roots


def _rational_irreducible_factors(coeffs: list[int]) -> list[list]:
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x)
    out = []
    for fac, _mult in sympy.factor_list(poly)[1]:
        fc = [Fraction(str(c)) for c in reversed(sympy.Poly(fac, x).all_coeffs())]
        out.append(fc)
    return out


def _cyc_nullspace(rows, ncols: int, conductor: int) -> list[tuple]:
    """Right kernel basis of a matrix with Cyclotomic entries."""
    zero = Cyclotomic.from_rational(0, conductor)
    one = Cyclotomic.from_rational(1, conductor)
    echelon: dict[int, list] = {}
    for row in rows:
        row = list(row)
        while True:
            lead = next((j for j, v in enumerate(row) if not v.is_zero()), None)
            if lead is None or lead not in echelon:
                break
            piv = echelon[lead]
            c = row[lead]
            row = [v - c * p for v, p in zip(row, piv)]
        if lead is not None:
            inv = row[lead].inverse()
            echelon[lead] = [v * inv for v in row]
    pivots = sorted(echelon)
    out = []
    for free in range(ncols):
        if free in echelon:
            continue
        x = [zero] * ncols
        x[free] = one
        for p in reversed(pivots):
            prow = echelon[p]
            acc = zero
            for j in range(p + 1, ncols):
                if not prow[j].is_zero():
                    acc = acc + prow[j] * x[j]
            x[p] = -acc
        out.append(tuple(x))
    return out
