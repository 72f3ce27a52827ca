"""Finite-dimensional split-local algebras and their finite modules.

The supported algebras are the monomial-relation family

    k<x_1, ..., x_c> / (x_i^{a_i},  x_j x_i - q_ij x_i x_j)   for i < j,

with all ``a_i >= 2`` and all ``q_ij`` nonzero.  They are local with
``A / rad A = k``, so projective modules are free and projective covers are
canonical.  The monomial basis ``x^e`` (``0 <= e_i < a_i``) is ordered
lexicographically on exponent vectors; every derived basis (syzygies,
quotients, homology) is echelonized, which makes all computations
deterministic.

A module is a dimension together with one action matrix per generator; the
defining relations are verified at construction time.  Bimodules are plain
modules over the enveloping algebra ``A (x) A^op``, whose first ``c``
generators act on the left and last ``c`` on the right.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod

import numpy as np

from .linalg import FieldSpec, FpMatrix, block, hstack, quotient_by_subspace


class BudgetExceeded(Exception):
    """A construction asked for a module above the configured size cap."""

    def __init__(self, dim: int, cap: int):
        super().__init__(f"module of dimension {dim} exceeds budget {cap}")
        self.dim = dim
        self.cap = cap


@dataclass(frozen=True)
class Budget:
    """Size caps for tensor-heavy constructions."""

    max_dim: int = 4096
    max_entries: int = 20_000_000

    def check(self, dim: int) -> None:
        if dim > self.max_dim or dim * dim > self.max_entries:
            raise BudgetExceeded(dim, self.max_dim)


COPRODUCTS = ("primitive", "shifted")


class Algebra:
    """A split-local monomial-relation algebra with ordered basis.

    ``commutators`` maps 0-based pairs ``(i, j)`` with ``i < j`` to the
    nonzero scalar ``q_ij``; missing pairs default to 1.  ``coproduct`` is
    ``None``, ``"primitive"`` (``x -> x(x)1 + 1(x)x``) or ``"shifted"``
    (``t -> t(x)1 + 1(x)t + t(x)t``); either choice requires ``a_i = p`` and
    ``q = 1``, which is exactly when it respects the defining relations.
    """

    def __init__(self, field: FieldSpec, exponents, commutators=None, coproduct=None):
        self.field = field
        self.p = field.p
        self.exponents = tuple(int(a) for a in exponents)
        if any(a < 2 for a in self.exponents):
            raise ValueError("all nilpotency exponents must be >= 2")
        self.ngens = len(self.exponents)
        q = {}
        for (i, j), v in (commutators or {}).items():
            if not (0 <= i < j < self.ngens):
                raise ValueError(f"bad commutator index ({i}, {j})")
            v = int(v) % self.p
            if v == 0:
                raise ValueError(f"commutator q_{i}{j} must be nonzero")
            q[(i, j)] = v
        self.q = q
        if coproduct is not None:
            if coproduct not in COPRODUCTS:
                raise ValueError(f"unknown coproduct {coproduct!r}")
            if any(a != self.p for a in self.exponents) or any(v != 1 for v in q.values()):
                raise ValueError("coproducts need exponents equal to char and trivial commutators")
        self.coproduct = coproduct
        self.basis = tuple(itertools.product(*[range(a) for a in self.exponents]))
        self.index = {mono: k for k, mono in enumerate(self.basis)}
        self.dim = prod(self.exponents)
        self.unit_index = self.index[(0,) * self.ngens]
        self.radical_indices = tuple(k for k, mono in enumerate(self.basis) if sum(mono) > 0)
        self._left = None
        self._right = None

    # ------------------------------------------------------------------
    def commutator(self, i: int, j: int) -> int:
        if i == j:
            return 1
        if i > j:
            raise ValueError("commutator indices must be increasing")
        return self.q.get((i, j), 1)

    def mono_mul(self, e, f):
        """Product of basis monomials: ``(coeff, mono)`` or ``None`` if zero.

        Moving the x_i powers of the right factor left across the higher
        generators of the left factor gives the scalar
        ``prod_{i<j} q_ij^{f_i * e_j}``.
        """
        g = tuple(a + b for a, b in zip(e, f))
        if any(gi >= ai for gi, ai in zip(g, self.exponents)):
            return None
        coeff = 1
        for i in range(self.ngens):
            if f[i] == 0:
                continue
            for j in range(i + 1, self.ngens):
                if e[j]:
                    coeff = (coeff * pow(self.commutator(i, j), f[i] * e[j], self.p)) % self.p
        return coeff, g

    def _mult_matrices(self, side: str) -> tuple[FpMatrix, ...]:
        mats = []
        for i in range(self.ngens):
            gen = tuple(1 if k == i else 0 for k in range(self.ngens))
            m = np.zeros((self.dim, self.dim), dtype=np.int64)
            for col, mono in enumerate(self.basis):
                res = self.mono_mul(gen, mono) if side == "left" else self.mono_mul(mono, gen)
                if res is not None:
                    coeff, out = res
                    m[self.index[out], col] = coeff
            mats.append(FpMatrix(self.p, m))
        return tuple(mats)

    @property
    def left_actions(self) -> tuple[FpMatrix, ...]:
        if self._left is None:
            self._left = self._mult_matrices("left")
        return self._left

    @property
    def right_actions(self) -> tuple[FpMatrix, ...]:
        if self._right is None:
            self._right = self._mult_matrices("right")
        return self._right

    def opposite(self) -> "Algebra":
        """Same generators with inverted commutators."""
        qop = {ij: self.field.inv(v) for ij, v in self.q.items()}
        return Algebra(self.field, self.exponents, qop)

    def coproduct_terms(self, i: int):
        """Terms ``(coeff, mono, mono)`` of the chosen coproduct on x_i."""
        if self.coproduct is None:
            raise ValueError("algebra carries no coproduct")
        gen = tuple(1 if k == i else 0 for k in range(self.ngens))
        one = (0,) * self.ngens
        terms = [(1, gen, one), (1, one, gen)]
        if self.coproduct == "shifted":
            terms.append((1, gen, gen))
        return terms

    def describe(self) -> str:
        qs = ",".join(f"q{i + 1}{j + 1}={v}" for (i, j), v in sorted(self.q.items()))
        cop = self.coproduct or "none"
        exps = ",".join(str(a) for a in self.exponents)
        return f"F{self.p}[{self.ngens} gens; exponents {exps}; {qs or 'q=1'}; coproduct {cop}]"


def qci_algebra(field: FieldSpec, exponents, commutators=None, coproduct=None) -> Algebra:
    """Front door used by configs and tests."""
    return Algebra(field, exponents, commutators, coproduct)


# ----------------------------------------------------------------------
# modules
# ----------------------------------------------------------------------
class Module:
    """A finite module: a dimension and one action matrix per generator."""

    def __init__(self, algebra: Algebra, action, check: bool = True):
        self.algebra = algebra
        self.action = tuple(action)
        if len(self.action) != algebra.ngens:
            raise ValueError("need one action matrix per generator")
        dims = {m.shape for m in self.action}
        if len(dims) > 1:
            raise ValueError("action matrices of mixed shapes")
        self.dim = self.action[0].rows if self.action else 0
        if self.action and self.action[0].rows != self.action[0].cols:
            raise ValueError("action matrices must be square")
        self._mono_acts: dict[tuple, FpMatrix] = {}
        if check:
            self.verify_relations()

    def verify_relations(self) -> None:
        A = self.algebra
        for i, x in enumerate(self.action):
            if not x.power(A.exponents[i]).is_zero():
                raise ValueError(f"generator {i} violates x^{A.exponents[i]} = 0")
        for i in range(A.ngens):
            for j in range(i + 1, A.ngens):
                lhs = self.action[j] @ self.action[i]
                rhs = (self.action[i] @ self.action[j]).scale(A.commutator(i, j))
                if lhs != rhs:
                    raise ValueError(f"generators {i},{j} violate the commutation relation")

    def act_mono(self, mono) -> FpMatrix:
        """Action matrix of the basis monomial ``x^mono``."""
        mono = tuple(mono)
        cached = self._mono_acts.get(mono)
        if cached is None:
            out = FpMatrix.identity(self.algebra.p, self.dim)
            for i, e in enumerate(mono):
                for _ in range(e):
                    out = out @ self.action[i]
            self._mono_acts[mono] = cached = out
        return cached

    def act_element(self, coeffs) -> FpMatrix:
        """Action matrix of ``sum_k coeffs[k] * basis[k]``."""
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for k, c in enumerate(coeffs):
            c = int(c) % self.algebra.p
            if c:
                out += c * self.act_mono(self.algebra.basis[k]).a
        return FpMatrix(self.algebra.p, out)

    def __repr__(self):
        return f"Module(dim={self.dim} over {self.algebra.describe()})"


def zero_module(A: Algebra) -> Module:
    return Module(A, [FpMatrix.zeros(A.p, 0, 0) for _ in range(A.ngens)], check=False)


def trivial_module(A: Algebra) -> Module:
    """The unit object: all generators act by zero on a line."""
    return Module(A, [FpMatrix.zeros(A.p, 1, 1) for _ in range(A.ngens)], check=False)


def regular_module(A: Algebra) -> Module:
    return Module(A, A.left_actions, check=False)


def free_module(A: Algebra, rank: int) -> Module:
    """Free module of the given rank, basis indexed slot-major.

    Basis vector ``slot * dim A + k`` is the monomial ``basis[k]`` sitting in
    copy ``slot``, so the actions are ``kron(I_rank, L_i)``.
    """
    eye = FpMatrix.identity(A.p, rank)
    return Module(A, [eye.kron(L) for L in A.left_actions], check=False)


class ModuleMorphism:
    """A linear map intertwining all generator actions."""

    def __init__(self, source: Module, target: Module, matrix: FpMatrix, check: bool = True):
        self.source = source
        self.target = target
        self.matrix = matrix
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(f"matrix shape {matrix.shape} does not match {(target.dim, source.dim)}")
        if check:
            for xs, xt in zip(source.action, target.action):
                if xt @ matrix != matrix @ xs:
                    raise ValueError("matrix does not intertwine the actions")

    def __matmul__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise ValueError("composition shape mismatch")
        return ModuleMorphism(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target, self.matrix + other.matrix, check=False)

    def __neg__(self) -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target, -self.matrix, check=False)

    def scale(self, c: int) -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target, self.matrix.scale(c), check=False)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def rank(self) -> int:
        return self.matrix.rank()

    @classmethod
    def zero(cls, source: Module, target: Module) -> "ModuleMorphism":
        return cls(source, target, FpMatrix.zeros(source.algebra.p, target.dim, source.dim), check=False)

    @classmethod
    def identity(cls, M: Module) -> "ModuleMorphism":
        return cls(M, M, FpMatrix.identity(M.algebra.p, M.dim), check=False)


def direct_sum_modules(mods: list[Module]) -> tuple[Module, list[int]]:
    """Block-diagonal sum; returns the module and the block offsets."""
    A = mods[0].algebra
    offsets = []
    pos = 0
    for m in mods:
        offsets.append(pos)
        pos += m.dim
    action = []
    for g in range(A.ngens):
        out = np.zeros((pos, pos), dtype=np.int64)
        for m, off in zip(mods, offsets):
            out[off : off + m.dim, off : off + m.dim] = m.action[g].a
        action.append(FpMatrix(A.p, out))
    return Module(A, action, check=False), offsets


# ----------------------------------------------------------------------
# subquotients, covers, resolutions
# ----------------------------------------------------------------------
def radical_subspace(M: Module) -> FpMatrix:
    """Echelonized basis of rad A * M = sum of the generator images."""
    if M.dim == 0 or not M.action:
        return FpMatrix.zeros(M.algebra.p, M.dim, 0)
    return hstack([x for x in M.action]).column_space()


def submodule(M: Module, cols: FpMatrix) -> tuple[Module, ModuleMorphism]:
    """The submodule spanned by the given columns (must be action-stable)."""
    basis = cols.column_space()
    acts = []
    for x in M.action:
        inside = basis.solve(x @ basis)
        if inside is None:
            raise ValueError("columns do not span an action-stable subspace")
        acts.append(inside)
    sub = Module(M.algebra, acts, check=False)
    incl = ModuleMorphism(sub, M, basis, check=True)
    return sub, incl


def quotient_module(M: Module, cols: FpMatrix) -> tuple[Module, ModuleMorphism, FpMatrix]:
    """Quotient by an action-stable subspace; returns (module, proj, section)."""
    qmap, section = quotient_by_subspace(M.algebra.p, cols)
    acts = [qmap @ x @ section for x in M.action]
    quo = Module(M.algebra, acts, check=True)
    proj = ModuleMorphism(M, quo, qmap, check=True)
    return quo, proj, section


def free_images_matrix(A: Algebra, target: Module, slot_images: FpMatrix) -> FpMatrix:
    """Matrix of the free-module map sending the unit of slot ``t`` to
    column ``t`` of ``slot_images``; basis vector ``slot*dimA + k`` goes to
    ``basis[k] . slot_images[:, t]``."""
    rank = slot_images.cols
    cols = np.zeros((target.dim, rank * A.dim), dtype=np.int64)
    for slot in range(rank):
        v = slot_images.take_columns([slot])
        for k, mono in enumerate(A.basis):
            cols[:, slot * A.dim + k] = (target.act_mono(mono) @ v).a[:, 0]
    return FpMatrix(A.p, cols)


def free_morphism(A: Algebra, rank: int, target: Module, slot_images: FpMatrix) -> ModuleMorphism:
    """The module map from ``free_module(A, rank)`` determined by the images
    of the slot units."""
    src = free_module(A, rank)
    return ModuleMorphism(src, target, free_images_matrix(A, target, slot_images), check=False)


@dataclass
class Cover:
    """A projective cover: free module, epimorphism and its kernel."""

    rank: int
    free: Module
    epi: ModuleMorphism
    kernel: Module
    kernel_incl: ModuleMorphism


def projective_cover(M: Module) -> Cover:
    """Split-local projective cover: free on a basis of M / rad M.

    The generators are the standard vectors at the non-pivot coordinates of
    the echelonized radical, so the cover is deterministic; its kernel lies
    in rad * P by construction.
    """
    A = M.algebra
    rad = radical_subspace(M)
    _, pivots = rad.transpose().rref()
    tops = [c for c in range(M.dim) if c not in set(pivots)]
    rank = len(tops)
    gens = np.zeros((M.dim, rank), dtype=np.int64)
    for k, c in enumerate(tops):
        gens[c, k] = 1
    epi = free_morphism(A, rank, M, FpMatrix(A.p, gens))
    assert epi.matrix.rank() == M.dim, "cover must be surjective"
    ker_cols = epi.matrix.kernel_basis()
    kernel, incl = submodule(epi.source, ker_cols)
    return Cover(rank, epi.source, epi, kernel, incl)


def is_projective(M: Module) -> bool:
    """Projective = free here; holds iff the cover has zero kernel."""
    if M.dim == 0:
        return True
    rad_rank = radical_subspace(M).cols
    return M.algebra.dim * (M.dim - rad_rank) == M.dim


@dataclass
class Syzygy:
    module: Module
    incl: ModuleMorphism  # into the previous projective
    epi: ModuleMorphism | None = None  # cover map from the next projective


class Resolution:
    """A minimal projective resolution ``... -> P_1 -> P_0 -> M -> 0``.

    ``diff(i)`` is ``P_i -> P_{i-1}`` for ``1 <= i <= length``; the
    augmentation ``P_0 -> M`` and the syzygies ``omega(i) = im diff(i)`` are
    kept with explicit inclusion and cover maps.
    """

    def __init__(self, module: Module, length: int):
        if length < 0:
            raise ValueError("length must be >= 0")
        self.module = module
        self.algebra = module.algebra
        self.length = length
        cover0 = projective_cover(module)
        self.projectives = [cover0.free]
        self.ranks = [cover0.rank]
        self.aug = cover0.epi
        self._diffs: list[ModuleMorphism] = []
        self.syzygies: list[Syzygy] = [Syzygy(cover0.kernel, cover0.kernel_incl)]
        for i in range(1, length + 1):
            omega = self.syzygies[i - 1]
            cov = projective_cover(omega.module)
            omega.epi = ModuleMorphism(cov.free, omega.module, cov.epi.matrix, check=False)
            d = ModuleMorphism(cov.free, self.projectives[i - 1],
                               omega.incl.matrix @ cov.epi.matrix, check=False)
            self.projectives.append(cov.free)
            self.ranks.append(cov.rank)
            self._diffs.append(d)
            self.syzygies.append(Syzygy(cov.kernel, cov.kernel_incl))

    def diff(self, i: int) -> ModuleMorphism:
        if not 1 <= i <= self.length:
            raise IndexError(f"differential {i} not computed (length {self.length})")
        return self._diffs[i - 1]

    def omega(self, i: int) -> Syzygy:
        """The i-th syzygy, 1-based; ``omega(i).incl`` lands in P_{i-1}."""
        if not 1 <= i <= self.length + 1:
            raise IndexError(f"syzygy {i} not computed")
        return self.syzygies[i - 1]

    def betti(self) -> list[int]:
        return list(self.ranks)


def minimal_resolution(M: Module, length: int) -> Resolution:
    return Resolution(M, length)


def composition_length(M: Module) -> int:
    """All composition factors are the simple unit, so length = dimension.

    Kept separate from ``dimension`` so callers state which additive
    function they are using.
    """
    return M.dim


def dimension(M: Module) -> int:
    return M.dim


def complexity_estimate(M: Module, length: int) -> int:
    """Least t with the Betti numbers below a degree t-1 polynomial.

    Successive finite differencing of ``b_1..b_length`` (the rank ``b_0``
    is a transient for projectives); this is an estimate, not a certified
    asymptotic.
    """
    if length < 4:
        raise ValueError("need length >= 4 for a stable estimate")
    seq = minimal_resolution(M, length).betti()[1:]
    t = 0
    while any(seq) and t <= length:
        seq = [b - a for a, b in zip(seq, seq[1:])]
        t += 1
    return t


def hom_space_basis(M: Module, N: Module) -> list[FpMatrix]:
    """Basis of the space of module morphisms M -> N.

    Solves the intertwining equations X_N h = h X_M; matrices are
    vectorized row-major.
    """
    p = M.algebra.p
    if M.dim == 0 or N.dim == 0:
        return []
    rows = []
    for xs, xt in zip(M.action, N.action):
        eye_m = np.eye(M.dim, dtype=np.int64)
        eye_n = np.eye(N.dim, dtype=np.int64)
        rows.append(np.kron(xt.a, eye_m) - np.kron(eye_n, xs.a.T))
    system = FpMatrix(p, np.vstack(rows))
    ker = system.kernel_basis()
    return [FpMatrix(p, ker.a[:, k].reshape(N.dim, M.dim)) for k in range(ker.cols)]


# ----------------------------------------------------------------------
# diagonal tensor structure (Hopf-style coproduct)
# ----------------------------------------------------------------------
def tensor_diagonal(M: Module, N: Module, check: bool = True) -> Module:
    """M (x) N with generators acting through the coproduct.

    The relations hold automatically because the coproduct is an algebra
    map; ``check`` re-verifies them anyway (callers may skip it on large
    products).
    """
    A = M.algebra
    if A is not N.algebra and A.describe() != N.algebra.describe():
        raise ValueError("tensor factors over different algebras")
    if A.coproduct is None:
        raise ValueError("diagonal tensor needs an algebra with coproduct")
    acts = []
    for i in range(A.ngens):
        out = np.zeros((M.dim * N.dim, M.dim * N.dim), dtype=np.int64)
        for coeff, u, v in A.coproduct_terms(i):
            out += coeff * np.kron(M.act_mono(u).a, N.act_mono(v).a)
        acts.append(FpMatrix(A.p, out))
    return Module(A, acts, check=check)


# ----------------------------------------------------------------------
# enveloping algebra and bimodules
# ----------------------------------------------------------------------
@dataclass
class Enveloping:
    """``A (x) A^op`` presented as another algebra of the same family.

    Generators ``0..c-1`` act on the left, ``c..2c-1`` on the right; the
    cross commutators are 1 and the right block carries the inverted ones.
    """

    base: Algebra
    algebra: Algebra

    @property
    def c(self) -> int:
        return self.base.ngens

    def left_part(self, M: Module) -> tuple[FpMatrix, ...]:
        return M.action[: self.c]

    def right_part(self, M: Module) -> tuple[FpMatrix, ...]:
        return M.action[self.c :]


def enveloping(A: Algebra) -> Enveloping:
    c = A.ngens
    q = {}
    for i in range(c):
        for j in range(i + 1, c):
            v = A.commutator(i, j)
            if v != 1:
                q[(i, j)] = v
                q[(c + i, c + j)] = A.field.inv(v)
    env_alg = Algebra(A.field, A.exponents + A.exponents, q)
    return Enveloping(A, env_alg)


def regular_bimodule(env: Enveloping) -> Module:
    """The algebra as a module over its enveloping algebra."""
    A = env.base
    return Module(env.algebra, A.left_actions + A.right_actions, check=True)


def restrict_left(env: Enveloping, M: Module) -> Module:
    """Underlying left module of a bimodule."""
    return Module(env.base, env.left_part(M), check=False)


def restrict_right(env: Enveloping, M: Module) -> Module:
    """Underlying right module, as a left module over the opposite algebra."""
    return Module(env.base.opposite(), env.right_part(M), check=False)


def one_sided_projective(env: Enveloping, M: Module) -> bool:
    return is_projective(restrict_left(env, M)) and is_projective(restrict_right(env, M))


# ----------------------------------------------------------------------
# tensor contexts: the two monoidal structures used by chain complexes
# ----------------------------------------------------------------------
@dataclass
class TensorPairData:
    """One tensor product M (x) N plus the transport data for morphisms."""

    module: Module
    qmap: FpMatrix | None = None  # None means the plain Kronecker model
    section: FpMatrix | None = None


class DiagonalTensor:
    """Tensor over the ground field with the diagonal (coproduct) action.

    Products up to ``verify_limit`` get their relations re-verified; larger
    ones are trusted (they hold because the coproduct is an algebra map,
    which the test suite checks separately at small scale).
    """

    mode = "diagonal"

    def __init__(self, algebra: Algebra, budget: Budget | None = None,
                 verify_limit: int = 729):
        if algebra.coproduct is None:
            raise ValueError("diagonal tensor needs a coproduct")
        self.algebra = algebra
        self.budget = budget or Budget()
        self.verify_limit = verify_limit

    def unit(self) -> Module:
        return trivial_module(self.algebra)

    def pair(self, M: Module, N: Module) -> TensorPairData:
        self.budget.check(M.dim * N.dim)
        return TensorPairData(tensor_diagonal(M, N, check=M.dim * N.dim <= self.verify_limit))

    def map_block(self, src: TensorPairData, dst: TensorPairData,
                  f: FpMatrix, g: FpMatrix) -> FpMatrix:
        return f.kron(g)


class OverBaseTensor:
    """Tensor over the base algebra: bimodule (x)_A (bimodule or module).

    The product is the quotient of the Kronecker product by the span of
    ``(b x_i) (x) b' - b (x) (x_i b')`` over all generators; the generator
    relations for longer elements follow by telescoping.
    """

    mode = "over_base"

    def __init__(self, env: Enveloping, budget: Budget | None = None,
                 verify_limit: int = 729):
        self.env = env
        self.budget = budget or Budget()
        self.verify_limit = verify_limit

    def unit(self) -> Module:
        return regular_bimodule(self.env)

    def _is_bimodule(self, M: Module) -> bool:
        return M.algebra.ngens == self.env.algebra.ngens

    def pair(self, M: Module, N: Module) -> TensorPairData:
        if not self._is_bimodule(M):
            raise ValueError("left tensor factor must be a bimodule")
        self.budget.check(M.dim * N.dim)
        p = self.env.base.p
        right_m = self.env.right_part(M)
        left_n = self.env.left_part(N) if self._is_bimodule(N) else N.action
        eye_m = FpMatrix.identity(p, M.dim)
        eye_n = FpMatrix.identity(p, N.dim)
        rels = [right_m[i].kron(eye_n) - eye_m.kron(left_n[i]) for i in range(self.env.c)]
        rel_cols = hstack(rels) if rels else FpMatrix.zeros(p, M.dim * N.dim, 0)
        qmap, section = quotient_by_subspace(p, rel_cols.column_space())
        check = qmap.rows <= self.verify_limit
        left_m = self.env.left_part(M)
        acts = [qmap @ (lm.kron(eye_n)) @ section for lm in left_m]
        if self._is_bimodule(N):
            right_n = self.env.right_part(N)
            acts = acts + [qmap @ (eye_m.kron(rn)) @ section for rn in right_n]
            module = Module(self.env.algebra, acts, check=check)
        else:
            module = Module(self.env.base, acts, check=check)
        return TensorPairData(module, qmap, section)

    def map_block(self, src: TensorPairData, dst: TensorPairData,
                  f: FpMatrix, g: FpMatrix) -> FpMatrix:
        return dst.qmap @ f.kron(g) @ src.section


def tensor_over_base(env: Enveloping, M: Module, N: Module) -> Module:
    """Convenience wrapper: B1 (x)_A B2 or B (x)_A (left module)."""
    return OverBaseTensor(env).pair(M, N).module
