"""Bounded chain complexes of modules, chain maps, cones and tensors.

Homological (lower) indexing: differentials go from degree ``i`` to
``i - 1`` and ``d_i . d_{i+1} = 0`` is asserted whenever a complex is
built.  The sign conventions, fixed once and recorded in certificates:

* suspension by ``m`` re-indexes objects upward and multiplies the
  differentials by ``(-1)^m``;
* a chain map of shift ``m`` from C to D is stored by components
  ``comps[j]: C_j -> D_{j+m}`` and represents a degree-zero map from the
  m-fold suspension of C, so its law is
  ``(-1)^m comps[j-1] d_j = d_{j+m} comps[j]``;
* the mapping cone of such a map has objects ``C_{i-1-m} (+) D_i`` (source
  part first) and differential blocks ``[-d_C, 0; -f, d_D]``;
* tensor products of complexes use the Koszul rule
  ``d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy`` with summands ordered by
  ascending left degree, and multi-factor products associate to the left.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import FpMatrix, block
from .algebra import (
    Module,
    ModuleMorphism,
    direct_sum_modules,
    is_projective,
    zero_module,
)


class ChainComplex:
    """A bounded complex; degrees with zero objects are simply absent."""

    def __init__(self, algebra, objects: dict[int, Module], diffs: dict[int, ModuleMorphism], check: bool = True):
        self.algebra = algebra
        self.objects = {i: m for i, m in objects.items() if m.dim > 0}
        self.diffs = {}
        for i, d in diffs.items():
            if i in self.objects and (i - 1) in self.objects:
                self.diffs[i] = d
            elif not d.is_zero():
                raise ValueError(f"nonzero differential {i} attached to a zero object")
        self._zero = zero_module(algebra)
        self._hcache: dict[int, HomologySpace] = {}
        if check:
            self.validate()

    def validate(self) -> None:
        for i, d in self.diffs.items():
            if d.source.dim != self.objects[i].dim or d.target.dim != self.objects[i - 1].dim:
                raise ValueError(f"differential {i} has inconsistent endpoints")
        for i in self.diffs:
            if (i + 1) in self.diffs:
                if not (self.diffs[i].matrix @ self.diffs[i + 1].matrix).is_zero():
                    raise ValueError(f"d_{i} d_{i + 1} != 0")

    # -- structure ------------------------------------------------------
    def degrees(self) -> list[int]:
        return sorted(self.objects)

    @property
    def lo(self) -> int:
        return min(self.objects) if self.objects else 0

    @property
    def hi(self) -> int:
        return max(self.objects) if self.objects else 0

    def module_at(self, i: int) -> Module:
        return self.objects.get(i, self._zero)

    def diff_at(self, i: int) -> ModuleMorphism:
        d = self.diffs.get(i)
        if d is None:
            d = ModuleMorphism.zero(self.module_at(i), self.module_at(i - 1))
        return d

    def dims(self) -> dict[int, int]:
        return {i: self.objects[i].dim for i in self.degrees()}

    def total_dim(self) -> int:
        return sum(m.dim for m in self.objects.values())

    def __repr__(self):
        return f"ChainComplex({self.dims()})"


def stalk(M: Module, degree: int = 0) -> ChainComplex:
    return ChainComplex(M.algebra, {degree: M}, {})


def shift_complex(C: ChainComplex, m: int) -> ChainComplex:
    """Suspension: objects re-indexed by +m, differentials times (-1)^m."""
    sign = -1 if m % 2 else 1
    objects = {i + m: mod for i, mod in C.objects.items()}
    diffs = {i + m: d.scale(sign) for i, d in C.diffs.items()}
    return ChainComplex(C.algebra, objects, diffs, check=False)


def euler_characteristic(C: ChainComplex) -> int:
    return sum((-1) ** i * m.dim for i, m in C.objects.items())


# ----------------------------------------------------------------------
# homology with induced module structure
# ----------------------------------------------------------------------
@dataclass
class HomologySpace:
    """Cycles, the quotient map onto homology, and the homology module.

    ``cycles`` are echelonized columns in the degree-i object; ``qmap`` and
    ``section`` relate cycle coordinates to homology coordinates.
    """

    degree: int
    cycles: FpMatrix
    qmap: FpMatrix
    section: FpMatrix
    module: Module

    def class_of(self, vectors: FpMatrix) -> FpMatrix:
        """Homology classes of cycle vectors given in ambient coordinates."""
        coords = self.cycles.solve(vectors)
        if coords is None:
            raise ValueError("vector is not a cycle")
        return self.qmap @ coords


def homology_space(C: ChainComplex, i: int) -> HomologySpace:
    cached = C._hcache.get(i)
    if cached is not None:
        return cached
    p = C.algebra.p
    obj = C.module_at(i)
    cycles = C.diff_at(i).matrix.kernel_basis() if obj.dim else FpMatrix.zeros(p, 0, 0)
    d_in = C.diff_at(i + 1)
    if obj.dim and d_in.matrix.cols:
        w = cycles.solve(d_in.matrix)
        assert w is not None, "boundaries must be cycles"
        boundary_coords = w.column_space()
    else:
        boundary_coords = FpMatrix.zeros(p, cycles.cols, 0)
    from .linalg import quotient_by_subspace

    qmap, section = quotient_by_subspace(p, boundary_coords)
    acts = []
    for x in obj.action:
        in_cycles = cycles.solve(x @ cycles)
        assert in_cycles is not None, "cycles must be action-stable"
        acts.append(qmap @ in_cycles @ section)
    if not acts:
        module = zero_module(C.algebra)
    else:
        module = Module(C.algebra, acts, check=True)
    hs = HomologySpace(i, cycles, qmap, section, module)
    C._hcache[i] = hs
    return hs


def homology(C: ChainComplex, i: int) -> Module:
    return homology_space(C, i).module


def homology_dims(C: ChainComplex) -> dict[int, int]:
    out = {}
    for i in range(C.lo, C.hi + 1):
        h = homology_space(C, i).module.dim
        if h:
            out[i] = h
    return out


def homology_rank_dims(C: ChainComplex) -> dict[int, int]:
    """Homology dimensions from differential ranks alone.

    ``dim H_i = dim C_i - rank d_i - rank d_{i+1}``; independent of the
    subquotient machinery in :func:`homology_space` and much cheaper on
    large complexes.
    """
    ranks = {i: d.matrix.rank() for i, d in C.diffs.items()}
    out = {}
    for i in range(C.lo, C.hi + 1):
        h = C.module_at(i).dim - ranks.get(i, 0) - ranks.get(i + 1, 0)
        assert h >= 0, "rank bookkeeping must stay non-negative"
        if h:
            out[i] = h
    return out


def total_homology(C: ChainComplex) -> int:
    return sum(homology_dims(C).values())


# ----------------------------------------------------------------------
# chain maps
# ----------------------------------------------------------------------
class ChainMap:
    """A chain map of shift ``m``: components ``comps[j]: C_j -> D_{j+m}``."""

    def __init__(self, source: ChainComplex, target: ChainComplex, shift: int,
                 comps: dict[int, ModuleMorphism], check: bool = True):
        self.source = source
        self.target = target
        self.shift = shift
        self.comps = {j: f for j, f in comps.items() if not f.is_zero()}
        if check:
            self.validate()

    def component(self, j: int) -> ModuleMorphism:
        f = self.comps.get(j)
        if f is None:
            f = ModuleMorphism.zero(self.source.module_at(j), self.target.module_at(j + self.shift))
        return f

    def validate(self) -> None:
        sign = -1 if self.shift % 2 else 1
        for j, f in self.comps.items():
            if f.source.dim != self.source.module_at(j).dim:
                raise ValueError(f"component {j} has wrong source")
            if f.target.dim != self.target.module_at(j + self.shift).dim:
                raise ValueError(f"component {j} has wrong target")
        degrees = set(self.comps)
        degrees.update(j + 1 for j in self.comps)
        degrees.update(self.source.diffs.keys())
        for j in degrees:
            lhs = (self.component(j - 1).matrix @ self.source.diff_at(j).matrix).scale(sign)
            rhs = self.target.diff_at(j + self.shift).matrix @ self.component(j).matrix
            if lhs != rhs:
                raise ValueError(f"chain-map law fails at degree {j}")

    def is_chain_map(self) -> bool:
        try:
            self.validate()
            return True
        except ValueError:
            return False

    def is_zero(self) -> bool:
        return not self.comps

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if (self.source, self.target, self.shift) != (other.source, other.target, other.shift):
            raise ValueError("can only add parallel chain maps")
        comps = {}
        for j in sorted(set(self.comps) | set(other.comps)):
            comps[j] = self.component(j) + other.component(j)
        return ChainMap(self.source, self.target, self.shift, comps, check=False)

    def scale(self, c: int) -> "ChainMap":
        return ChainMap(self.source, self.target, self.shift,
                        {j: f.scale(c) for j, f in self.comps.items()}, check=False)

    @classmethod
    def identity(cls, C: ChainComplex) -> "ChainMap":
        return cls(C, C, 0, {i: ModuleMorphism.identity(m) for i, m in C.objects.items()}, check=False)


def compose_shifted(f: ChainMap, g: ChainMap) -> ChainMap:
    """The graded product ``f . g = f o (suspension of g)``.

    For self maps this is the multiplication making the shifts add; the
    components of a suspended map are unchanged, so the composite at degree
    ``j`` is ``f.comps[j + g.shift] o g.comps[j]``.
    """
    if g.target is not f.source and g.target.dims() != f.source.dims():
        raise ValueError("composition endpoint mismatch")
    comps = {}
    for j, gj in g.comps.items():
        fj = f.comps.get(j + g.shift)
        if fj is not None:
            comps[j] = fj @ gj
    return ChainMap(g.source, f.target, f.shift + g.shift, comps, check=False)


def mapping_cone(f: ChainMap) -> ChainComplex:
    """Cone of ``f`` after absorbing its shift.

    With ``X`` the suspended source, the cone has ``X_{i-1} (+) T_i`` in
    degree ``i`` and differential ``[-d_X, 0; -f, d_T]``.
    """
    X = shift_complex(f.source, f.shift)
    T = f.target
    g = {i: f.comps[i - f.shift] for i in range(X.lo, X.hi + 1) if (i - f.shift) in f.comps}

    def g_mat(i: int) -> FpMatrix | None:
        m = g.get(i)
        return m.matrix if m is not None else None

    p = f.source.algebra.p
    objects = {}
    diffs = {}
    summands = {}
    for i in range(min(X.lo + 1, T.lo), max(X.hi + 1, T.hi) + 1):
        xs, ts = X.module_at(i - 1), T.module_at(i)
        if xs.dim + ts.dim == 0:
            continue
        mod, offs = direct_sum_modules([xs, ts])
        objects[i] = mod
        summands[i] = (xs.dim, ts.dim)
    for i in sorted(objects):
        if (i - 1) not in objects:
            continue
        xs, ts = summands[i]
        xt, tt = summands[i - 1]
        dx = X.diff_at(i - 1).matrix if xs and xt else None
        dt = T.diff_at(i).matrix if ts and tt else None
        gm = g_mat(i - 1) if xs and tt else None
        mat = block(p, [[dx.scale(-1) if dx is not None else None, None],
                        [gm.scale(-1) if gm is not None else None, dt]],
                    [xt, tt], [xs, ts])
        diffs[i] = ModuleMorphism(objects[i], objects[i - 1], mat, check=False)
    return ChainComplex(f.source.algebra, objects, diffs, check=True)


def is_null_homotopic(f: ChainMap) -> tuple[bool, dict[int, ModuleMorphism] | None]:
    """Solve ``comps[j] = d h_j + (-1)^shift h_{j-1} d`` for module maps h.

    The unknowns ``h_j: S_j -> T_{j+shift+1}`` are constrained to be module
    morphisms; returns the witness on success.
    """
    if f.is_zero():
        return True, {}
    S, T, s = f.source, f.target, f.shift
    p = S.algebra.p
    sign = -1 if s % 2 else 1
    blocks = []  # (degree j, target module, source module, offset, size)
    offset = 0
    for j in S.degrees():
        tmod = T.module_at(j + s + 1)
        smod = S.module_at(j)
        size = tmod.dim * smod.dim
        if size:
            blocks.append((j, tmod, smod, offset, size))
            offset += size
    nvars = offset
    index = {b[0]: b for b in blocks}
    rows = []
    rhs = []

    def add_equation(coef_blocks, rhs_mat, eq_rows, eq_cols):
        row = np.zeros((eq_rows * eq_cols, nvars), dtype=np.int64)
        for j, mat in coef_blocks:
            blk = index.get(j)
            if blk is None:
                continue
            _, tmod, smod, off, size = blk
            row[:, off : off + size] = mat
        rows.append(row)
        rhs.append(rhs_mat.reshape(-1, 1))

    # homotopy equations, one per degree with anything nonzero
    eqdegs = set(f.comps) | {b[0] for b in blocks} | {b[0] + 1 for b in blocks}
    for j in sorted(eqdegs):
        tmod = T.module_at(j + s)
        smod = S.module_at(j)
        if tmod.dim * smod.dim == 0:
            continue
        coef = []
        if j in index:
            d_t = T.diff_at(j + s + 1).matrix
            coef.append((j, np.kron(d_t.a, np.eye(smod.dim, dtype=np.int64))))
        if (j - 1) in index:
            d_s = S.diff_at(j).matrix
            prev_t = T.module_at(j + s).dim
            coef.append((j - 1, sign * np.kron(np.eye(prev_t, dtype=np.int64), d_s.a.T)))
        add_equation(coef, f.component(j).matrix.a, tmod.dim, smod.dim)

    # module-morphism constraints for each unknown block
    for j, tmod, smod, off, size in blocks:
        for xs, xt in zip(smod.action, tmod.action):
            lhs = np.kron(xt.a, np.eye(smod.dim, dtype=np.int64)) - np.kron(
                np.eye(tmod.dim, dtype=np.int64), xs.a.T)
            add_equation([(j, lhs)], np.zeros((tmod.dim, smod.dim), dtype=np.int64),
                         tmod.dim, smod.dim)

    system = FpMatrix(p, np.vstack(rows)) if rows else FpMatrix.zeros(p, 0, nvars)
    target = FpMatrix(p, np.vstack(rhs)) if rhs else FpMatrix.zeros(p, 0, 1)
    sol = system.solve(target)
    if sol is None:
        return False, None
    witness = {}
    for j, tmod, smod, off, size in blocks:
        h = FpMatrix(p, sol.a[off : off + size, 0].reshape(tmod.dim, smod.dim))
        witness[j] = ModuleMorphism(smod, tmod, h, check=True)
    # re-check the homotopy identity exactly
    for j in sorted(eqdegs):
        tmod = T.module_at(j + s)
        smod = S.module_at(j)
        if tmod.dim * smod.dim == 0:
            continue
        acc = FpMatrix.zeros(p, tmod.dim, smod.dim)
        if j in witness:
            acc = acc + T.diff_at(j + s + 1).matrix @ witness[j].matrix
        if (j - 1) in witness:
            acc = acc + (witness[j - 1].matrix @ S.diff_at(j).matrix).scale(sign)
        assert acc == f.component(j).matrix, "homotopy witness failed re-check"
    return True, witness


def induced_on_homology(f: ChainMap) -> dict[int, FpMatrix]:
    """Matrices of H_j(source) -> H_{j+shift}(target), nonzero degrees only."""
    out = {}
    for j in range(f.source.lo, f.source.hi + 1):
        hs = homology_space(f.source, j)
        if hs.module.dim == 0:
            continue
        ht = homology_space(f.target, j + f.shift)
        fmat = f.component(j).matrix
        reps = fmat @ (hs.cycles @ hs.section)
        if ht.module.dim == 0:
            out[j] = FpMatrix.zeros(fmat.p, 0, hs.module.dim)
            continue
        out[j] = ht.class_of(reps)
    return out


# ----------------------------------------------------------------------
# tensor products of complexes
# ----------------------------------------------------------------------
@dataclass
class SummandSlot:
    left_degree: int
    right_degree: int
    offset: int
    dim: int
    pair: object  # TensorPairData


@dataclass
class TensorPair:
    """A two-factor tensor complex with its summand layout."""

    ctx: object
    left: ChainComplex
    right: ChainComplex
    complex: ChainComplex
    layout: dict[int, list[SummandSlot]]

    def slot(self, n: int, s: int) -> SummandSlot | None:
        for sl in self.layout.get(n, []):
            if sl.left_degree == s:
                return sl
        return None


def tensor_pair(C1: ChainComplex, C2: ChainComplex, ctx) -> TensorPair:
    """Kunneth-style double complex totalization with Koszul signs."""
    p = C1.algebra.p
    layout: dict[int, list[SummandSlot]] = {}
    objects: dict[int, Module] = {}
    pieces: dict[int, list[Module]] = {}
    for n in range(C1.lo + C2.lo, C1.hi + C2.hi + 1):
        slots = []
        mods = []
        offset = 0
        for s in C1.degrees():
            t = n - s
            if t not in C2.objects:
                continue
            pd = ctx.pair(C1.objects[s], C2.objects[t])
            if pd.module.dim == 0:
                continue
            slots.append(SummandSlot(s, t, offset, pd.module.dim, pd))
            mods.append(pd.module)
            offset += pd.module.dim
        if slots:
            layout[n] = slots
            objects[n], _ = direct_sum_modules(mods)
            pieces[n] = mods
    diffs = {}
    for n in sorted(objects):
        if (n - 1) not in objects:
            continue
        src_slots = layout[n]
        dst_slots = layout[n - 1]
        row_dims = [sl.dim for sl in dst_slots]
        col_dims = [sl.dim for sl in src_slots]
        grid = [[None] * len(src_slots) for _ in dst_slots]
        dst_index = {(sl.left_degree, sl.right_degree): k for k, sl in enumerate(dst_slots)}
        for jsrc, sl in enumerate(src_slots):
            s, t = sl.left_degree, sl.right_degree
            d1 = C1.diffs.get(s)
            if d1 is not None and (s - 1, t) in dst_index:
                jdst = dst_index[(s - 1, t)]
                idmat = FpMatrix.identity(p, C2.objects[t].dim)
                grid[jdst][jsrc] = ctx.map_block(sl.pair, dst_slots[jdst].pair, d1.matrix, idmat)
            d2 = C2.diffs.get(t)
            if d2 is not None and (s, t - 1) in dst_index:
                jdst = dst_index[(s, t - 1)]
                idmat = FpMatrix.identity(p, C1.objects[s].dim)
                sign = -1 if s % 2 else 1
                grid[jdst][jsrc] = ctx.map_block(sl.pair, dst_slots[jdst].pair, idmat, d2.matrix).scale(sign)
        mat = block(p, grid, row_dims, col_dims)
        diffs[n] = ModuleMorphism(objects[n], objects[n - 1], mat, check=False)
    algebra = next(iter(objects.values())).algebra if objects else C1.algebra
    cx = ChainComplex(algebra, objects, diffs, check=True)
    return TensorPair(ctx, C1, C2, cx, layout)


def tensor_complex(C1: ChainComplex, C2: ChainComplex, ctx) -> ChainComplex:
    return tensor_pair(C1, C2, ctx).complex


def _lift_through_pair(tp: TensorPair, f: ChainMap, side: str,
                       drop_koszul_sign: bool = False, check: bool = True) -> ChainMap:
    """Extend a self chain map of one factor to the tensor complex.

    Acting on the right factor picks up the Koszul sign ``(-1)^{shift * s}``
    on the summand with left degree ``s``; acting on the left factor needs
    no sign.  ``drop_koszul_sign`` is a test hook that deliberately corrupts
    the convention.
    """
    m = f.shift
    p = tp.complex.algebra.p
    comps = {}
    for n, slots in tp.layout.items():
        target_slots = tp.layout.get(n + m)
        if not target_slots:
            continue
        dst_index = {(sl.left_degree, sl.right_degree): k for k, sl in enumerate(target_slots)}
        row_dims = [sl.dim for sl in target_slots]
        col_dims = [sl.dim for sl in slots]
        grid = [[None] * len(slots) for _ in target_slots]
        nonzero = False
        for jsrc, sl in enumerate(slots):
            s, t = sl.left_degree, sl.right_degree
            if side == "left":
                comp = f.comps.get(s)
                key = (s + m, t)
                if comp is None or key not in dst_index:
                    continue
                jdst = dst_index[key]
                idmat = FpMatrix.identity(p, tp.right.objects[t].dim)
                blockmat = tp.ctx.map_block(sl.pair, target_slots[jdst].pair, comp.matrix, idmat)
            else:
                comp = f.comps.get(t)
                key = (s, t + m)
                if comp is None or key not in dst_index:
                    continue
                jdst = dst_index[key]
                idmat = FpMatrix.identity(p, tp.left.objects[s].dim)
                blockmat = tp.ctx.map_block(sl.pair, target_slots[jdst].pair, idmat, comp.matrix)
                if not drop_koszul_sign and (m * s) % 2:
                    blockmat = blockmat.scale(-1)
            grid[jdst][jsrc] = blockmat
            nonzero = True
        if nonzero:
            mat = block(p, grid, row_dims, col_dims)
            comps[n] = ModuleMorphism(tp.complex.objects[n], tp.complex.objects[n + m], mat, check=False)
    return ChainMap(tp.complex, tp.complex, m, comps, check=check)


@dataclass
class TensorTower:
    """Left-associated tensor of several complexes, with map lifting."""

    ctx: object
    factors: list[ChainComplex]
    pairs: list[TensorPair]

    @property
    def complex(self) -> ChainComplex:
        if self.pairs:
            return self.pairs[-1].complex
        return self.factors[0]

    def lift_factor_map(self, i: int, f: ChainMap,
                        drop_koszul_sign: bool = False, check: bool = True) -> ChainMap:
        if not 0 <= i < len(self.factors):
            raise IndexError(f"no tensor factor {i}")
        if not self.pairs:
            return f
        if i == 0:
            g = _lift_through_pair(self.pairs[0], f, "left", drop_koszul_sign, check)
            rest = self.pairs[1:]
        else:
            g = _lift_through_pair(self.pairs[i - 1], f, "right", drop_koszul_sign, check)
            rest = self.pairs[i:]
        for tp in rest:
            g = _lift_through_pair(tp, g, "left", drop_koszul_sign, check)
        return g


def tensor_tower(factors: list[ChainComplex], ctx) -> TensorTower:
    if not factors:
        raise ValueError("need at least one factor")
    pairs = []
    acc = factors[0]
    for nxt in factors[1:]:
        tp = tensor_pair(acc, nxt, ctx)
        pairs.append(tp)
        acc = tp.complex
    return TensorTower(ctx, list(factors), pairs)


def projectivity_flags(C: ChainComplex) -> dict[int, bool]:
    return {i: is_projective(m) for i, m in sorted(C.objects.items())}


def complex_summary(C: ChainComplex) -> dict:
    """The record consumed by certificates."""
    return {
        "dims": C.dims(),
        "homology": homology_dims(C),
        "projective": projectivity_flags(C),
    }
