"""First cohomology of the lattice-by-symmetric-group extensions.

Two independent computations of H^1 are provided and cross-checked:

* the equivariant-Hom route: for a module pulled back from the symmetric
  quotient (the lattice acts trivially) and rational coefficients,
  H^1 of the extension equals Hom_{S_(r+1)}(lattice, module), a plain
  equivariance linear system;

* Fox calculus on the finite presentation: one block of linear
  constraints per relator on the cocycle values at the generators, with
  coboundaries quotiented out by dimension count dim M - dim M^Gamma.

Everything runs over exact rationals; dimensions over Q equal dimensions
over any characteristic-zero field, which is all the boundary-restriction
analysis needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .chartab import inner_product
from .errors import InternalCheckError
from .intrep import IntegerRep, end0_action, rep_character, standard_rep
from .linalg import (
    Matrix,
    block_diag,
    nullspace_of_rows,
    rank_of_rows,
    _int_echelon,
    _int_rows,
)
from .semidirect import Presentation, gamma_presentation, word_in_matrices

DEFAULT_BOUNDARY_LOOPS = ((1, 0), (0, 1), (-1, -1))
MODULE_KINDS = ("end0", "standard", "trivial")


class GModuleOverGamma:
    """A module over the extension, as exact matrices per generator.

    The constructor checks every relator of the presentation against the
    matrices, so an inconsistent module is rejected up front.
    """

    def __init__(self, presentation: Presentation, matrices: dict, *, name: str = ""):
        self.presentation = presentation
        self.matrices = dict(matrices)
        self.name = name
        if set(self.matrices) != set(presentation.generators):
            raise ValueError("need exactly one matrix per presentation generator")
        dims = {m.rows for m in self.matrices.values()}
        if len(dims) != 1 or any(m.rows != m.cols for m in self.matrices.values()):
            raise ValueError("matrices must be square and of equal size")
        self.dimension = dims.pop()
        for rel in presentation.relators:
            if not word_in_matrices(presentation, self.matrices, rel).is_identity():
                raise ValueError(f"matrices violate the relator {rel}")
        self.lattice_acts_trivially = all(
            self.matrices[t].is_identity() for t in presentation.lattice_gen_names()
        )

    def sym_rep(self) -> IntegerRep:
        """The matrices of the adjacent transpositions, as a representation
        of S_(r+1) (well-defined because the Coxeter relators were checked)."""
        n = self.presentation.sym_degree
        gens = {
            a: self.matrices[f"s{a}"] for a in range(1, n)
        }
        return IntegerRep(self.dimension, n, gens)


def gamma_module(r: int, case: str, kind: str) -> GModuleOverGamma:
    """The three configured coefficient modules, all pulled back from the
    symmetric quotient: trace-zero endomorphisms of the standard module,
    the standard module itself, and the trivial line."""
    if kind not in MODULE_KINDS:
        raise ValueError(f"kind must be one of {MODULE_KINDS}")
    pres = gamma_presentation(r, case)
    if kind == "end0":
        sym = end0_action(standard_rep(r))
    elif kind == "standard":
        sym = standard_rep(r)
    else:
        sym = IntegerRep(1, r + 1, {a: Matrix([[1]]) for a in range(1, r + 1)})
    mats = {}
    ident = Matrix.identity(sym.degree)
    for t in pres.lattice_gen_names():
        mats[t] = ident
    for a in range(1, r + 1):
        mats[f"s{a}"] = sym.gen_images[a]
    return GModuleOverGamma(pres, mats, name=f"{kind}(r={r}, {case})")


@dataclass(frozen=True, eq=False)
class CohomologyResult:
    dimension: int
    method: str
    cocycle_basis: tuple
    module_dimension: int
    lattice_gen_names: tuple

    def to_json_dict(self) -> dict:
        return {
            "dim": str(self.dimension),
            "method": self.method,
            "basis": [
                {g: [str(x) for x in vec] for g, vec in sorted(c.items())}
                for c in self.cocycle_basis
            ],
        }


def _primitive_int_vector(vec):
    """Scale a rational vector to a primitive integer one."""
    lcm = 1
    for x in vec:
        if isinstance(x, Fraction):
            lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def equivariant_hom_basis(lattice: IntegerRep, module: IntegerRep) -> list[Matrix]:
    """Basis of {F : module(g) F = F lattice(g) for all g}, the space of
    equivariant maps from the lattice module to the coefficient module.
    The dimension is cross-checked against the character inner product."""
    if lattice.group_degree != module.group_degree:
        raise ValueError("representations of different symmetric groups")
    k, d = lattice.degree, module.degree
    rows = []
    for a in range(1, lattice.group_degree):
        la = lattice.gen_images[a]
        ma = module.gen_images[a]
        for p in range(d):
            for q in range(k):
                row = [0] * (d * k)
                for j in range(d):
                    row[j * k + q] += ma[p, j]
                for i in range(k):
                    row[p * k + i] -= la[i, q]
                rows.append(row)
    basis_vecs = nullspace_of_rows(rows, d * k)
    out = []
    for vec in basis_vecs:
        prim = _primitive_int_vector(vec)
        out.append(Matrix([[prim[p * k + q] for q in range(k)] for p in range(d)]))
    expected = inner_product(rep_character(lattice), rep_character(module))
    if len(out) != expected:
        raise InternalCheckError(
            f"equivariance system dimension {len(out)} != character pairing {expected}"
        )
    return out


def lattice_rep(r: int, case: str) -> IntegerRep:
    """The lattice of the extension as a module over S_(r+1): the standard
    module, doubled in the projective case."""
    base = standard_rep(r)
    if case == "quasi":
        return base
    if case == "projective":
        return IntegerRep(
            2 * r,
            r + 1,
            {a: block_diag(m, m) for a, m in base.gen_images.items()},
        )
    raise ValueError("case must be 'quasi' or 'projective'")


def h1_dim_hs(r: int, case: str, module: GModuleOverGamma) -> CohomologyResult:
    """H^1 via the equivariant-Hom identity.

    Valid only when the lattice acts trivially on the module; each
    equivariant map F becomes the cocycle t_i -> F(e_i), zero on the
    symmetric generators.
    """
    if not module.lattice_acts_trivially:
        raise ValueError(
            "the equivariant-Hom identity needs a module pulled back from the "
            "symmetric quotient; use the Fox-calculus route instead"
        )
    pres = module.presentation
    expected_k = r if case == "quasi" else 2 * r
    if pres.lattice_rank != expected_k or pres.sym_degree != r + 1:
        raise ValueError("module presentation does not match (r, case)")
    lat = lattice_rep(r, case)
    basis_mats = equivariant_hom_basis(lat, module.sym_rep())
    t_names = pres.lattice_gen_names()
    s_names = pres.sym_gen_names()
    zero = (0,) * module.dimension
    basis = []
    for f in basis_mats:
        cocycle = {name: f.col(i) for i, name in enumerate(t_names)}
        cocycle.update({name: zero for name in s_names})
        basis.append(cocycle)
    return CohomologyResult(
        dimension=len(basis),
        method="hs_formula",
        cocycle_basis=tuple(basis),
        module_dimension=module.dimension,
        lattice_gen_names=t_names,
    )


def _fox_constraint_rows(pres: Presentation, module: GModuleOverGamma):
    """Linear constraints on cocycle values at the generators: for each
    relator w, the Fox expansion of phi(w) = 0."""
    d = module.dimension
    gens = pres.generators
    gen_index = {g: i for i, g in enumerate(gens)}
    inv_cache = {}
    rows = []
    for rel in pres.relators:
        blocks = {}
        cur = Matrix.identity(d)
        for letter in rel:
            name = pres.gen_name(letter)
            mat = module.matrices[name]
            if letter > 0:
                blocks[name] = blocks.get(name, Matrix.zeros(d, d)) + cur
                cur = cur * mat
            else:
                if name not in inv_cache:
                    inv_cache[name] = mat.inverse()
                cur = cur * inv_cache[name]
                blocks[name] = blocks.get(name, Matrix.zeros(d, d)) - cur
        for p in range(d):
            row = [0] * (len(gens) * d)
            nonzero = False
            for name, block in blocks.items():
                base = gen_index[name] * d
                for j in range(d):
                    x = block[p, j]
                    if x:
                        row[base + j] = x
                        nonzero = True
            if nonzero:
                rows.append(row)
    return rows


def fox_cocycle_h1(pres: Presentation, module: GModuleOverGamma) -> CohomologyResult:
    """H^1 from the presentation alone: cocycles are solutions of the
    relator-derived linear system, coboundaries have dimension
    dim M - dim M^Gamma, and the returned basis is a set of cocycle
    representatives independent modulo coboundaries."""
    if pres is not module.presentation and pres.relators != module.presentation.relators:
        raise ValueError("presentation does not match the module")
    d = module.dimension
    gens = pres.generators
    ngen = len(gens)

    z_rows = _fox_constraint_rows(pres, module)
    z_basis = nullspace_of_rows(z_rows, ngen * d)

    fixed_rows = []
    for name in gens:
        mat = module.matrices[name]
        for p in range(d):
            row = [mat[p, j] - (1 if p == j else 0) for j in range(d)]
            if any(row):
                fixed_rows.append(row)
    fixed_dim = d - rank_of_rows(fixed_rows) if fixed_rows else d
    b_dim = d - fixed_dim
    dim = len(z_basis) - b_dim
    if dim < 0:
        raise InternalCheckError("coboundaries exceed cocycles")

    # coboundary vectors phi_m(g) = (M(g) - 1) m, flattened like the unknowns
    b_rows = []
    for p in range(d):
        row = []
        for name in gens:
            mat = module.matrices[name]
            row.extend(mat[q, p] - (1 if q == p else 0) for q in range(d))
        b_rows.append(row)
    reps = _complete_modulo(b_rows, z_basis)
    if len(reps) != dim:
        raise InternalCheckError("cocycle representatives do not match the dimension")

    t_names = pres.lattice_gen_names()
    basis = []
    for vec in reps:
        prim = _primitive_int_vector(vec)
        cocycle = {
            name: tuple(prim[i * d: (i + 1) * d]) for i, name in enumerate(gens)
        }
        basis.append(cocycle)
    return CohomologyResult(
        dimension=dim,
        method="fox_calculus",
        cocycle_basis=tuple(basis),
        module_dimension=d,
        lattice_gen_names=t_names,
    )


def _complete_modulo(span_rows, candidates):
    """Pick out the candidates that are independent modulo the span."""
    int_rows, _ = _int_rows(span_rows)
    _, echelon = _int_echelon(int_rows)
    picked = []
    for cand in candidates:
        row = _int_rows([cand])[0][0]
        while True:
            lead = next((j for j, x in enumerate(row) if x != 0), None)
            if lead is None or lead not in echelon:
                break
            piv = echelon[lead]
            a, b = piv[lead], row[lead]
            g = gcd(a, b)
            row = [(a // g) * x - (b // g) * y for x, y in zip(row, piv)]
        if lead is not None:
            echelon[lead] = row
            picked.append(cand)
    return picked


@dataclass(frozen=True)
class RestrictionReport:
    loops: tuple
    evaluation_rank: int
    kernel_dimension: int


def _evaluation_rows(result: CohomologyResult, gamma) -> list:
    t_names = result.lattice_gen_names
    if len(gamma) != len(t_names):
        raise ValueError(
            f"loop vector has length {len(gamma)}, lattice rank is {len(t_names)}"
        )
    rows = []
    for cocycle in result.cocycle_basis:
        vec = [0] * result.module_dimension
        for c, name in zip(gamma, t_names):
            if c:
                phi = cocycle[name]
                for i, x in enumerate(phi):
                    vec[i] += c * x
        rows.append(vec)
    return rows


def restrict_to_loop(result: CohomologyResult, gamma) -> RestrictionReport:
    """Evaluate every basis class on the lattice element gamma.

    Because the lattice acts trivially on all configured modules, H^1 of
    the cyclic subgroup spanned by gamma is the module itself and the
    restriction map is plain evaluation f -> f(gamma); its kernel is what
    survives once the monodromy along gamma is pinned.
    """
    rows = _evaluation_rows(result, gamma)
    rank = rank_of_rows(rows) if rows else 0
    return RestrictionReport(
        loops=(tuple(gamma),),
        evaluation_rank=rank,
        kernel_dimension=result.dimension - rank,
    )


def boundary_tangent_dim(r: int = 2, loops=None, *, result: CohomologyResult | None = None) -> int:
    """Dimension of the simultaneous kernel of the restriction maps to the
    given boundary loops, for the rank-2 quasi-projective setting.

    The default loops are the lattice classes of the three coordinate-line
    boundary components: (1,0), (0,1) and (-1,-1).  A result of 0 means
    the moduli problem with pinned boundary conjugacy classes has zero
    tangent space at the distinguished point.
    """
    if loops is None:
        loops = DEFAULT_BOUNDARY_LOOPS
    if result is None:
        result = h1_dim_hs(r, "quasi", gamma_module(r, "quasi", "end0"))
    if result.dimension == 0:
        return 0
    columns = []
    for gamma in loops:
        rows = _evaluation_rows(result, gamma)
        columns.append(rows)
    if not columns:
        return result.dimension
    stacked = [sum((col[i] for col in columns), []) for i in range(result.dimension)]
    rank = rank_of_rows(stacked)
    return result.dimension - rank


# ---------------------------------------------------------------------------
# Cocycle evaluation on words (used by property checks)

def rho_of_word(module: GModuleOverGamma, word) -> Matrix:
    return word_in_matrices(module.presentation, module.matrices, word)


def evaluate_cocycle(module: GModuleOverGamma, cocycle: dict, word) -> tuple:
    """phi extended to a word by phi(uv) = phi(u) + u.phi(v)."""
    d = module.dimension
    acc = [0] * d
    cur = Matrix.identity(d)
    inv_cache = {}
    pres = module.presentation
    for letter in word:
        name = pres.gen_name(letter)
        mat = module.matrices[name]
        if letter > 0:
            moved = cur.apply(cocycle[name])
            acc = [a + b for a, b in zip(acc, moved)]
            cur = cur * mat
        else:
            if name not in inv_cache:
                inv_cache[name] = mat.inverse()
            cur = cur * inv_cache[name]
            moved = cur.apply(cocycle[name])
            acc = [a - b for a, b in zip(acc, moved)]
    return tuple(acc)


def cocycle_condition_holds(module: GModuleOverGamma, cocycle: dict, word_pairs) -> bool:
    """phi(gh) = phi(g) + g.phi(h) for every pair of words."""
    for u, v in word_pairs:
        lhs = evaluate_cocycle(module, cocycle, tuple(u) + tuple(v))
        phi_u = evaluate_cocycle(module, cocycle, u)
        phi_v = evaluate_cocycle(module, cocycle, v)
        moved = rho_of_word(module, u).apply(phi_v)
        rhs = tuple(a + b for a, b in zip(phi_u, moved))
        if lhs != rhs:
            return False
    return True
