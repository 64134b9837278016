"""Lattice-by-symmetric-group semidirect products and their finite quotients.

A group element is a pair (v, g) with v in Z^k (reduced mod m for a finite
quotient) and g a permutation, multiplied by (v,g)(w,h) = (v + A(g)w, gh).
Two lattice shapes occur: the plain rank-r sum-zero lattice ("quasi") and
its doubled version ("projective", two commuting copies, k = 2r).

The dual side works with characters of (Z/m)^k stored as exponent vectors;
the permutation action on characters uses the transposed inverse action
matrix, so no root-of-unity arithmetic happens until character values are
actually needed (little-groups method).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import factorial, gcd

from .chartab import (
    ClassFunction,
    FiniteGroup,
    small_group_irreducible_characters,
)
from .cyclotomic import Cyclotomic
from .errors import InternalCheckError, SizeLimitError
from .intrep import IntegerRep, standard_rep
from .linalg import Matrix, block_diag
from .symgroup import (
    OrbitResult,
    Permutation,
    all_permutations,
    mulclose,
    orbit_with_stabilizer,
)

ENUMERATION_CAP = 10**7
DUAL_CAP = 10**6
LITTLE_GROUPS_CAP = 10**5
CLASS_BRUTE_CAP = 10**4
STABILIZER_CAP = 400

CASES = ("quasi", "projective")


def _require_even(r: int, what: str):
    if r % 2 == 1:
        raise ValueError(
            f"{what} requires an even rank: the long cycle must have odd order, "
            f"but r = {r} gives a cycle of even order {r + 1}"
        )


class SemidirectGroup:
    """Z^k (or (Z/m)^k) twisted by S_(r+1) through an integer action."""

    def __init__(self, rank: int, case: str, modulus: int, action_rep: IntegerRep):
        if case not in CASES:
            raise ValueError(f"case must be one of {CASES}")
        self.rank = rank
        self.case = case
        self.modulus = modulus
        self.action_rep = action_rep
        self.lattice_rank = action_rep.degree
        self.sym_degree = rank + 1
        self.identity = (
            (0,) * self.lattice_rank,
            Permutation.identity(self.sym_degree),
        )
        self._act_cache: dict[Permutation, tuple] = {}
        self._dual_cache: dict[Permutation, tuple] = {}

    # -- element arithmetic -------------------------------------------------

    def _reduce(self, v):
        m = self.modulus
        if m >= 1:
            return tuple(x % m for x in v)
        return tuple(v)

    def _action_rows(self, g: Permutation) -> tuple:
        rows = self._act_cache.get(g)
        if rows is None:
            rows = self.action_rep.matrix(g).entries
            self._act_cache[g] = rows
        return rows

    def mul(self, x, y):
        (v, g), (w, h) = x, y
        rows = self._action_rows(g)
        moved = tuple(sum(row[j] * w[j] for j in range(len(w))) for row in rows)
        return (self._reduce(tuple(a + b for a, b in zip(v, moved))), g * h)

    def inv(self, x):
        v, g = x
        ginv = g.inverse()
        rows = self._action_rows(ginv)
        moved = tuple(sum(row[j] * v[j] for j in range(len(v))) for row in rows)
        return (self._reduce(tuple(-a for a in moved)), ginv)

    @property
    def order(self) -> int:
        if self.modulus < 1:
            raise ValueError("the group is infinite (modulus 0)")
        return self.modulus**self.lattice_rank * factorial(self.sym_degree)

    def elements(self) -> list:
        if self.modulus < 1:
            raise ValueError("cannot enumerate the infinite group")
        if self.order > ENUMERATION_CAP:
            raise SizeLimitError(f"element enumeration capped at {ENUMERATION_CAP}")
        perms = list(all_permutations(self.sym_degree))
        return [
            (v, g)
            for v in itertools.product(range(self.modulus), repeat=self.lattice_rank)
            for g in perms
        ]

    def lattice_basis_elements(self) -> list:
        out = []
        for i in range(self.lattice_rank):
            v = [0] * self.lattice_rank
            v[i] = 1
            out.append((self._reduce(v), Permutation.identity(self.sym_degree)))
        return out

    def sym_generator_elements(self) -> list:
        zero = (0,) * self.lattice_rank
        return [
            (zero, Permutation.adjacent_transposition(self.sym_degree, a))
            for a in range(1, self.sym_degree)
        ]

    def generators(self) -> list:
        return self.lattice_basis_elements() + self.sym_generator_elements()

    def spot_check_group_laws(self, trials: int = 200, seed: int = 0) -> None:
        """Associativity, identity and inverse laws on random triples."""
        rng = random.Random(seed)
        m = self.modulus if self.modulus >= 1 else 5

        def rand_el():
            v = tuple(rng.randrange(-m, m + 1) for _ in range(self.lattice_rank))
            g = Permutation(rng.sample(range(self.sym_degree), self.sym_degree))
            return (self._reduce(v), g)

        for _ in range(trials):
            a, b, c = rand_el(), rand_el(), rand_el()
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise InternalCheckError("multiplication is not associative")
            if self.mul(a, self.identity) != a or self.mul(self.identity, a) != a:
                raise InternalCheckError("identity law fails")
            if self.mul(a, self.inv(a)) != self.identity:
                raise InternalCheckError("inverse law fails")

    # -- dual characters ----------------------------------------------------

    def _dual_rows(self, g: Permutation) -> tuple:
        """Transposed inverse action matrix, reduced mod m."""
        rows = self._dual_cache.get(g)
        if rows is None:
            mat = self.action_rep.matrix(g.inverse()).transpose()
            m = self.modulus
            rows = tuple(tuple(x % m for x in row) for row in mat.entries)
            self._dual_cache[g] = rows
        return rows

    def act_on_character(self, g: Permutation, chi: "DualCharacter") -> "DualCharacter":
        rows = self._dual_rows(g)
        a = chi.exponents
        m = self.modulus
        return DualCharacter(
            m, tuple(sum(row[j] * a[j] for j in range(len(a))) % m for row in rows)
        )


@dataclass(frozen=True)
class DualCharacter:
    """chi(v) = zeta_m^(<exponents, v>) on the lattice quotient (Z/m)^k."""

    modulus: int
    exponents: tuple

    def order(self) -> int:
        g = self.modulus
        for e in self.exponents:
            g = gcd(g, e)
        return self.modulus // g

    def is_trivial(self) -> bool:
        return all(e % self.modulus == 0 for e in self.exponents)


def build_group(r: int, case: str, m: int) -> SemidirectGroup:
    """Assemble the semidirect group; the lattice is the rank-r standard
    module (quasi) or two commuting copies of it (projective, rank 2r)."""
    _require_even(r, "build_group")
    if m < 0:
        raise ValueError("modulus must be >= 0")
    base = standard_rep(r)
    if case == "quasi":
        rep = base
    elif case == "projective":
        gens = {a: block_diag(mat, mat) for a, mat in base.gen_images.items()}
        rep = IntegerRep(2 * r, r + 1, gens)
    else:
        raise ValueError(f"case must be one of {CASES}")
    group = SemidirectGroup(r, case, m, rep)
    group.spot_check_group_laws(trials=25)
    return group


# ---------------------------------------------------------------------------
# Presentations

@dataclass(frozen=True)
class Presentation:
    """Generators t_1..t_k (lattice) and s_1..s_r (adjacent transpositions);
    words are tuples of signed 1-based generator indices."""

    generators: tuple
    relators: tuple
    lattice_rank: int
    sym_degree: int

    def gen_name(self, signed: int) -> str:
        return self.generators[abs(signed) - 1]

    def lattice_gen_names(self) -> tuple:
        return self.generators[: self.lattice_rank]

    def sym_gen_names(self) -> tuple:
        return self.generators[self.lattice_rank:]


def gamma_presentation(r: int, case: str) -> Presentation:
    """Finite presentation of the semidirect product: Coxeter relators for
    the symmetric part, commutators for the lattice, and one conjugation
    relator per (transposition, lattice generator) pair."""
    _require_even(r, "gamma_presentation")
    if case == "quasi":
        rep = standard_rep(r)
    elif case == "projective":
        base = standard_rep(r)
        rep = IntegerRep(
            2 * r, r + 1, {a: block_diag(mat, mat) for a, mat in base.gen_images.items()}
        )
    else:
        raise ValueError(f"case must be one of {CASES}")
    k = rep.degree
    n = r + 1
    gens = tuple(f"t{i}" for i in range(1, k + 1)) + tuple(f"s{a}" for a in range(1, r + 1))

    def t(i):
        return i

    def s(a):
        return k + a

    relators = []
    for a in range(1, r + 1):
        relators.append((s(a), s(a)))
    for a in range(1, r):
        relators.append((s(a), s(a + 1)) * 3)
    for a in range(1, r + 1):
        for b in range(a + 2, r + 1):
            relators.append((s(a), s(b)) * 2)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            relators.append((t(i), t(j), -t(i), -t(j)))
    for a in range(1, r + 1):
        mat = rep.gen_images[a]
        for i in range(1, k + 1):
            col = mat.col(i - 1)
            action_word = []
            for j, c in enumerate(col, start=1):
                action_word.extend([t(j) if c > 0 else -t(j)] * abs(c))
            inverse_word = tuple(-x for x in reversed(action_word))
            relators.append((s(a), t(i), -s(a)) + inverse_word)
    return Presentation(
        generators=gens,
        relators=tuple(relators),
        lattice_rank=k,
        sym_degree=n,
    )


def word_in_group(group: SemidirectGroup, pres: Presentation, word) -> tuple:
    """Evaluate a presentation word as a group element."""
    gens = group.lattice_basis_elements() + group.sym_generator_elements()
    acc = group.identity
    for letter in word:
        g = gens[abs(letter) - 1]
        if letter < 0:
            g = group.inv(g)
        acc = group.mul(acc, g)
    return acc


def presentation_holds_in_quotient(pres: Presentation, group: SemidirectGroup) -> bool:
    return all(word_in_group(group, pres, w) == group.identity for w in pres.relators)


def word_in_matrices(pres: Presentation, matrices: dict, word) -> Matrix:
    """Evaluate a word with one matrix per generator name (exact)."""
    dim = next(iter(matrices.values())).rows
    acc = Matrix.identity(dim)
    inv_cache = {}
    for letter in word:
        name = pres.gen_name(letter)
        mat = matrices[name]
        if letter < 0:
            if name not in inv_cache:
                inv_cache[name] = mat.inverse()
            mat = inv_cache[name]
        acc = acc * mat
    return acc


def presentation_holds_in_matrices(pres: Presentation, matrices: dict) -> bool:
    return all(word_in_matrices(pres, matrices, w).is_identity() for w in pres.relators)


# ---------------------------------------------------------------------------
# Orbits of dual characters

@dataclass(frozen=True)
class DualOrbit:
    representative: DualCharacter
    orbit_result: OrbitResult
    size: int
    sigma_fixed_count: int
    all_sigma_fixed: bool
    max_character_order: int

    @property
    def characters(self) -> tuple:
        return self.orbit_result.orbit


def dual_character_orbits(group: SemidirectGroup) -> list[DualOrbit]:
    """Partition of all m^k dual characters into orbits under the
    permutation action, walked from lexicographically minimal seeds."""
    m = group.modulus
    if m < 1:
        raise ValueError("dual characters need a finite modulus")
    k = group.lattice_rank
    if m**k > DUAL_CAP:
        raise SizeLimitError(f"dual group size exceeds cap {DUAL_CAP}")
    sym_gens = [
        Permutation.adjacent_transposition(group.sym_degree, a)
        for a in range(1, group.sym_degree)
    ]
    sigma = Permutation.long_cycle(group.sym_degree)
    orbits = []
    seen = set()
    total = 0
    for exps in itertools.product(range(m), repeat=k):
        chi = DualCharacter(m, exps)
        if chi in seen:
            continue
        res = orbit_with_stabilizer(
            sym_gens,
            group.act_on_character,
            chi,
            identity=Permutation.identity(group.sym_degree),
        )
        seen.update(res.orbit)
        fixed = sum(1 for c in res.orbit if group.act_on_character(sigma, c) == c)
        orbits.append(
            DualOrbit(
                representative=chi,
                orbit_result=res,
                size=res.size,
                sigma_fixed_count=fixed,
                all_sigma_fixed=fixed == res.size,
                max_character_order=max(c.order() for c in res.orbit),
            )
        )
        total += res.size
    if total != m**k:
        raise InternalCheckError("orbits do not partition the dual group")
    return orbits


@dataclass(frozen=True)
class TorsionReport:
    passed: bool
    rank: int
    case: str
    modulus: int
    order_bound: int
    sigma_fixed_orders: tuple
    small_orbit_failures: tuple
    order_failures: tuple


def verify_torsion_claim(r: int, case: str, m: int) -> TorsionReport:
    """Two exhaustively checkable facts about the dual characters:

    (a) every orbit of size <= r consists of characters fixed by the long
        cycle (small orbits force the cycle, of odd order, to act
        trivially);
    (b) every cycle-fixed character has order dividing gcd(m, r+1), hence
        dividing r+1.
    """
    _require_even(r, "verify_torsion_claim")
    if m < 1:
        raise ValueError("modulus must be >= 1")
    group = build_group(r, case, m)
    orbits = dual_character_orbits(group)
    sigma = Permutation.long_cycle(group.sym_degree)
    bound = gcd(m, r + 1)
    small_failures = []
    order_failures = []
    fixed_orders = []
    for orbit in orbits:
        if orbit.size <= r and not orbit.all_sigma_fixed:
            small_failures.append(orbit.representative)
        for chi in orbit.characters:
            if group.act_on_character(sigma, chi) == chi:
                fixed_orders.append(chi.order())
                if bound % chi.order() != 0:
                    order_failures.append(chi)
    return TorsionReport(
        passed=not small_failures and not order_failures,
        rank=r,
        case=case,
        modulus=m,
        order_bound=bound,
        sigma_fixed_orders=tuple(sorted(fixed_orders)),
        small_orbit_failures=tuple(small_failures),
        order_failures=tuple(order_failures),
    )


@dataclass(frozen=True)
class PermutationImageReport:
    orbit_size: int
    image_order: int
    sigma_image_is_identity: bool


def orbit_permutation_image(group: SemidirectGroup, orbit) -> PermutationImageReport:
    """Order of the image of the symmetric group in Sym(orbit), and whether
    the long cycle lands on the identity permutation of the orbit."""
    chars = sorted(orbit, key=lambda c: c.exponents)
    index = {c: i for i, c in enumerate(chars)}
    size = len(chars)

    def image_of(g: Permutation) -> Permutation:
        return Permutation([index[group.act_on_character(g, c)] for c in chars])

    gens = [
        image_of(Permutation.adjacent_transposition(group.sym_degree, a))
        for a in range(1, group.sym_degree)
    ]
    image = mulclose(gens, identity=Permutation.identity(size))
    sigma_img = image_of(Permutation.long_cycle(group.sym_degree))
    return PermutationImageReport(
        orbit_size=size,
        image_order=len(image),
        sigma_image_is_identity=sigma_img.is_identity(),
    )


# ---------------------------------------------------------------------------
# Conjugacy classes and the little-groups construction

def conjugacy_classes(group: SemidirectGroup) -> list[list]:
    """Brute-force conjugacy classes of the finite quotient, identity class
    first, each class ordered by first appearance."""
    if group.order > CLASS_BRUTE_CAP:
        raise SizeLimitError(
            f"brute-force classes capped at order {CLASS_BRUTE_CAP}"
        )
    elements = group.elements()
    index = {x: i for i, x in enumerate(elements)}
    gens = group.generators()
    gen_invs = [group.inv(g) for g in gens]
    classes = []
    assigned = set()
    for x in elements:
        if x in assigned:
            continue
        orbit = [x]
        seen = {x}
        frontier = [x]
        while frontier:
            new_frontier = []
            for y in frontier:
                for g, gi in zip(gens, gen_invs):
                    z = group.mul(group.mul(g, y), gi)
                    if z not in seen:
                        seen.add(z)
                        orbit.append(z)
                        new_frontier.append(z)
            frontier = new_frontier
        assigned |= seen
        classes.append(sorted(orbit, key=index.__getitem__))
    return classes


@dataclass(frozen=True, eq=False)
class IrrepDescriptor:
    orbit_representative: DualCharacter
    orbit_size: int
    stabilizer_order: int
    stabilizer_irrep_label: str
    stabilizer_irrep_degree: int
    degree: int
    character: ClassFunction | None

    def to_json_dict(self) -> dict:
        return {
            "orbit_rep": [str(e) for e in self.orbit_representative.exponents],
            "orbit_size": str(self.orbit_size),
            "stabilizer_order": str(self.stabilizer_order),
            "stab_irrep_label": self.stabilizer_irrep_label,
            "stab_irrep_degree": str(self.stabilizer_irrep_degree),
            "degree": str(self.degree),
        }


def little_groups_irreps(group: SemidirectGroup, *, with_characters: bool | None = None
                         ) -> list[IrrepDescriptor]:
    """All irreducible representations of the finite quotient by the
    orbit/stabilizer method: for each orbit of lattice characters, extend
    the representative trivially over its stabilizer, tensor with each
    stabilizer irreducible, and induce up.

    Characters (needed for orthogonality checks) are computed when the
    brute-force class enumeration is within its cap; descriptors and the
    completeness identity never need them.
    """
    m = group.modulus
    if m < 1:
        raise ValueError("little groups need a finite modulus")
    order = group.order
    if order > LITTLE_GROUPS_CAP:
        raise SizeLimitError(f"little-groups construction capped at {LITTLE_GROUPS_CAP}")
    if with_characters is None:
        with_characters = order <= CLASS_BRUTE_CAP

    orbits = dual_character_orbits(group)
    n = group.sym_degree
    perms = list(all_permutations(n))

    class_data = None
    if with_characters:
        classes = conjugacy_classes(group)
        reps_q = tuple(cls[0] for cls in classes)
        sizes_q = tuple(len(cls) for cls in classes)
        elements = group.elements()
        inv_elements = [group.inv(x) for x in elements]
        conj_lists = [
            [group.mul(group.mul(x, q), xi) for x, xi in zip(elements, inv_elements)]
            for q in reps_q
        ]
        zetas = [Cyclotomic.zeta(m, t) for t in range(m)]
        class_data = (reps_q, sizes_q, conj_lists, zetas)

    descriptors = []
    for orbit in orbits:
        chi = orbit.representative
        stab_perms = [g for g in perms if group.act_on_character(g, chi) == chi]
        if len(stab_perms) > STABILIZER_CAP:
            raise SizeLimitError(f"stabilizer order exceeds cap {STABILIZER_CAP}")
        stab = FiniteGroup(
            stab_perms,
            identity=Permutation.identity(n),
            name=f"stab{chi.exponents}",
        )
        table = small_group_irreducible_characters(stab)
        per_class_sums = None
        if with_characters:
            reps_q, sizes_q, conj_lists, zetas = class_data
            h_class_of = {}
            stab_classes = stab.conjugacy_classes()
            for ci, cls in enumerate(stab_classes):
                for h in cls:
                    h_class_of[h] = ci
            nhc = len(stab_classes)
            a = chi.exponents
            # For each quotient class, tally the conjugates landing in the
            # subgroup by (stabilizer class, lattice phase); the cyclotomic
            # sums below are then shared by every stabilizer irreducible.
            per_class_sums = []
            for conjs in conj_lists:
                counts = [[0] * m for _ in range(nhc)]
                for v, h in conjs:
                    hc = h_class_of.get(h)
                    if hc is not None:
                        phase = sum(ai * vi for ai, vi in zip(a, v)) % m
                        counts[hc][phase] += 1
                sums = []
                for hc in range(nhc):
                    acc = Cyclotomic.from_rational(0, m)
                    for p, c in enumerate(counts[hc]):
                        if c:
                            acc = acc + zetas[p] * c
                    sums.append(acc)
                per_class_sums.append(sums)
        # table columns are indexed by stab class representatives in the
        # same class order as stab.conjugacy_classes()
        for row_label, row in zip(table.row_labels, table.rows):
            eta_deg = row.values[0]
            degree = orbit.size * eta_deg
            character = None
            if with_characters:
                sub_order = (m**group.lattice_rank) * len(stab_perms)
                values = []
                for sums in per_class_sums:
                    acc = Cyclotomic.from_rational(0, m)
                    for hc, s in enumerate(sums):
                        if not s.is_zero():
                            acc = acc + s * row.values[hc]
                    values.append((acc / sub_order).simplify())
                character = ClassFunction(
                    labels=reps_q,
                    sizes=sizes_q,
                    group_order=order,
                    values=tuple(values),
                )
            descriptors.append(
                IrrepDescriptor(
                    orbit_representative=chi,
                    orbit_size=orbit.size,
                    stabilizer_order=len(stab_perms),
                    stabilizer_irrep_label=str(row_label),
                    stabilizer_irrep_degree=eta_deg,
                    degree=degree,
                    character=character,
                )
            )
    total = sum(d.degree**2 for d in descriptors)
    if total != order:
        raise InternalCheckError(
            f"completeness identity fails: sum deg^2 = {total} != |Q| = {order}"
        )
    return descriptors


@dataclass(frozen=True)
class RankCountResult:
    rank: int
    case: str
    group_order: int
    count: int
    descriptors: tuple
    degree_histogram: dict


def count_rank_r_irreps(r: int, case: str) -> RankCountResult:
    """Exact count of irreducible degree-r representations of the quotient
    at modulus r+1, i.e. of all irreducibles whose lattice restriction has
    exponent dividing r+1.  Finiteness of this set is what pins the
    distinguished representation to an isolated moduli point."""
    _require_even(r, "count_rank_r_irreps")
    group = build_group(r, case, r + 1)
    descriptors = little_groups_irreps(group)
    hist: dict[int, int] = {}
    for d in descriptors:
        hist[d.degree] = hist.get(d.degree, 0) + 1
    wanted = tuple(d for d in descriptors if d.degree == r)
    return RankCountResult(
        rank=r,
        case=case,
        group_order=group.order,
        count=len(wanted),
        descriptors=wanted,
        degree_histogram=dict(sorted(hist.items())),
    )
