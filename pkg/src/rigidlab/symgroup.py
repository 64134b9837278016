"""Partitions, permutations and generic orbit/stabilizer machinery.

Everything here is exact and deterministic: partitions are enumerated in a
fixed canonical order (descending lexicographic, largest first part first),
permutations are stored in one-line form, and orbits are walked
breadth-first from their seed so repeated runs give identical output.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

from .errors import SizeLimitError

PARTITION_CAP = 40
ORBIT_CAP = 10**6


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        for p in parts:
            if p <= 0:
                raise ValueError(f"parts must be positive: {parts}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def multiplicities(self) -> dict[int, int]:
        mult: dict[int, int] = {}
        for p in self.parts:
            mult[p] = mult.get(p, 0) + 1
        return mult


def _partitions_rec(n: int, maxpart: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, maxpart), 0, -1):
        for rest in _partitions_rec(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in canonical order: descending lexicographic,
    so (n) comes first and (1,...,1) last."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > PARTITION_CAP:
        raise SizeLimitError(f"partition enumeration capped at n <= {PARTITION_CAP}")
    return [Partition(parts) for parts in _partitions_rec(n, n)]


def centralizer_order(lam: Partition) -> int:
    """z_lambda = prod_i i^{m_i} m_i!, the centralizer order of the class;
    the class size is n!/z_lambda."""
    z = 1
    for part, mult in lam.multiplicities().items():
        z *= part**mult * factorial(mult)
    return z


class Permutation:
    """A permutation of {1,...,n}, stored 0-indexed in one-line form.

    Composition is function-style: (g * h)(x) = g(h(x)), so matrix models
    satisfy rho(g * h) = rho(g) rho(h) acting on column vectors.
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images)-1}: {images}")
        self.images = images

    @classmethod
    def from_one_line(cls, images_1based) -> "Permutation":
        return cls(tuple(i - 1 for i in images_1based))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def adjacent_transposition(cls, n: int, a: int) -> "Permutation":
        """s_a = (a, a+1), 1-based, for 1 <= a <= n-1."""
        if not 1 <= a <= n - 1:
            raise ValueError(f"adjacent transposition index out of range: {a}")
        images = list(range(n))
        images[a - 1], images[a] = images[a], images[a - 1]
        return cls(images)

    @classmethod
    def long_cycle(cls, n: int) -> "Permutation":
        """The n-cycle (1 2 ... n)."""
        return cls([(i + 1) % n for i in range(n)])

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        """Build from disjoint cycles given 1-based."""
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if x in seen:
                    raise ValueError("cycles are not disjoint")
                seen.add(x)
            for i, x in enumerate(cyc):
                images[x - 1] = cyc[(i + 1) % len(cyc)] - 1
        return cls(images)

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def one_line(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.images)

    def __call__(self, i: int) -> int:
        """Image of a 0-based point."""
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def conjugate_by(self, h: "Permutation") -> "Permutation":
        return h * self * h.inverse()

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        k, g = 1, self
        while not g.is_identity():
            g = g * self
            k += 1
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, 1-based, each starting at its least point."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return f"Permutation.identity({self.n})"
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial)
        return f"Perm[{body}]"


def cycle_type(g: Permutation) -> Partition:
    """Cycle lengths of g in decreasing order; a class function on S_n."""
    return Partition(tuple(sorted((len(c) for c in g.cycles()), reverse=True)))


def class_representative(mu: Partition) -> Permutation:
    """Canonical representative of the class with cycle type mu: consecutive
    blocks (1..mu1)(mu1+1..mu1+mu2)..."""
    cycles = []
    start = 1
    for part in mu.parts:
        cycles.append(tuple(range(start, start + part)))
        start += part
    return Permutation.from_cycles(mu.n, cycles)


def all_permutations(n: int):
    """All n! permutations in lexicographic one-line order."""
    for images in itertools.permutations(range(n)):
        yield Permutation(images)


@dataclass(frozen=True)
class OrbitResult:
    orbit: tuple
    stabilizer_generators: tuple
    size: int


def orbit_with_stabilizer(generators, action, seed, *, identity=None, cap=ORBIT_CAP) -> OrbitResult:
    """Breadth-first orbit of seed under the given group generators, with
    stabilizer generators obtained from Schreier's lemma.

    `action(g, point)` must be a left action; generators must support `*`
    (composition) and `.inverse()`.  Points must be hashable.
    """
    if identity is None:
        g0 = generators[0]
        identity = g0 * g0.inverse()
    transversal = {seed: identity}
    orbit = [seed]
    frontier = [seed]
    stab = []
    seen_stab = set()
    while frontier:
        new_frontier = []
        for p in frontier:
            u_p = transversal[p]
            for g in generators:
                q = action(g, p)
                if q not in transversal:
                    transversal[q] = g * u_p
                    orbit.append(q)
                    new_frontier.append(q)
                    if len(orbit) > cap:
                        raise SizeLimitError(f"orbit size exceeds cap {cap}")
                else:
                    # Schreier generator u_q^{-1} g u_p fixes the seed.
                    s = transversal[q].inverse() * (g * u_p)
                    if s not in seen_stab and s != identity:
                        seen_stab.add(s)
                        stab.append(s)
        frontier = new_frontier
    return OrbitResult(orbit=tuple(orbit), stabilizer_generators=tuple(stab), size=len(orbit))


def mulclose(generators, *, identity=None, cap=None) -> list:
    """Closure of a generator set under `*`, in deterministic BFS order."""
    els = []
    seen = set()
    if identity is not None and identity not in seen:
        seen.add(identity)
        els.append(identity)
    frontier = []
    for g in generators:
        if g not in seen:
            seen.add(g)
            els.append(g)
            frontier.append(g)
    while frontier:
        new_frontier = []
        for a in frontier:
            for g in generators:
                b = a * g
                if b not in seen:
                    seen.add(b)
                    els.append(b)
                    new_frontier.append(b)
                    if cap is not None and len(els) > cap:
                        raise SizeLimitError(f"group closure exceeds cap {cap}")
        frontier = new_frontier
    return els
