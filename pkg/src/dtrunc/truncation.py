"""d-categories, the d-homotopy category h_d, and right/middle mapping spaces.

For d >= 1 the m-simplices of h_dC are the classes
``[sk^{d-1}Δ^m, sk^dΔ^m, sk^{d+1}Δ^m; C]``; simplicial operators act by
precomposition.  Each class is represented by its least member, a map
``sk^dΔ^m -> C``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from .constructions import (
    Product,
    _ref_name,
    empty,
    point,
    poset_chain_ref,
    poset_nerve,
    product_map,
    skeleton,
    standard,
)
from .errors import ArgumentError, ValidationError
from .solver import (
    ExtensionProblem,
    HClassSet,
    equivalence_edges,
    homotopy_classes,
    is_homotopic_rel,
    require_quasicategory,
    search,
    simplex_operator,
)
from .sset import SMap, SSet, SimplexRef, build_from_levels, codegeneracy, coface, identity_map, yoneda_map


def _inclusion(sub: SSet, ambient: SSet) -> SMap:
    return SMap(sub, ambient, {x: ambient.ref(x) for x in sub.ids()})


# -- the d-category predicate ------------------------------------------------------
@dataclass
class DCategoryReport:
    ok: bool
    d: int
    bound: int
    violation: dict | None = None


def is_d_category(C: SSet, d: int, m: int, budget=None) -> DCategoryReport:
    """Check conditions (1) at dimension d and (2) for d < k <= m.

    C must be certified as a quasi-category up to ``max(2, m, d + 2)``.
    """
    if d < -1:
        raise ArgumentError("d-categories need d >= -1")
    require_quasicategory(C, max(2, m, d + 2), budget)
    if d >= 0:
        D = standard(d)
        bd, _ = skeleton(D, d - 1)
        incl = _inclusion(bd, D)
        groups: dict[tuple, list[SimplexRef]] = {}
        for s in C.all_simplices(d):
            groups.setdefault(C.faces(s) if d else (), []).append(s)
        for grp in groups.values():
            maps = [yoneda_map(C, s, D) for s in grp]
            for i, f in enumerate(maps):
                for j in range(i + 1, len(maps)):
                    ok, _ = is_homotopic_rel(f, maps[j], incl, budget, certify=False)
                    if ok:
                        return DCategoryReport(False, d, m, {"condition": 1, "simplices": [_ref_name(grp[i]), _ref_name(grp[j])]})
    for k in range(max(d + 1, 0), m + 1):
        if k == 0:
            vs = C.nondegenerate(0)
            if len(vs) > 1:
                return DCategoryReport(False, d, m, {"condition": 2, "dimension": 0, "simplices": list(vs[:2])})
            continue
        for grp in C.by_faces(k).values():
            if len(grp) > 1:
                return DCategoryReport(
                    False, d, m, {"condition": 2, "dimension": k, "simplices": [_ref_name(r) for r in grp[:2]]}
                )
    return DCategoryReport(True, d, m)


# -- h_d for d >= 1 -------------------------------------------------------------
@dataclass
class _Level:
    m: int
    delta: SSet
    A: SSet
    B: SSet
    classes: HClassSet


class TruncatedSSet:
    """``h_dC`` materialised through ``out_dim`` together with ``θ_d``."""

    def __init__(self, C: SSet, d: int, out_dim: int | None = None, budget=None):
        if d < 1:
            raise ArgumentError("TruncatedSSet needs d >= 1; use h_low for d <= 0")
        self.C, self.d = C, d
        self.out_dim = d + 1 if out_dim is None else out_dim
        self.bound = d + 2
        require_quasicategory(C, self.bound, budget)
        self.levels: dict[int, _Level] = {}
        for m in range(self.out_dim + 1):
            D = standard(m)
            A, _ = skeleton(D, d - 1)
            B, _ = skeleton(D, d)
            E, _ = skeleton(D, d + 1)
            inv = self._face_classes(B) if m > d else None
            hc = homotopy_classes(_inclusion(A, B), _inclusion(B, E), C, budget, certify=False, invariant=inv)
            self.levels[m] = _Level(m, D, A, B, hc)
        self._ops: dict = {}
        # names: a class hit by a nondegenerate simplex of C takes its name
        names: dict[tuple, str] = {}
        for m in range(self.out_dim + 1):
            for x in C.nondegenerate(m):
                k = self._class_key(m, yoneda_map(C, C.ref(x), self.levels[m].B))
                names.setdefault((m, k), x)
        for m, lv in self.levels.items():
            for i, g in enumerate(lv.classes.classes):
                names.setdefault((m, g.key()), f"h{m}.{i}")
        level_keys = {m: [(m, g.key()) for g in lv.classes.classes] for m, lv in self.levels.items()}
        self.sset, self.locate = build_from_levels(
            level_keys, self._face, self._degen, lambda k: names[k], name=f"h{d}({C.name})"
        )
        self.key_of = {r: k for k, r in self.locate.items()}
        top = min(C.dim, self.out_dim)
        self.theta_source = C if C.dim <= top else skeleton(C, top)[0]
        self.theta = SMap(self.theta_source, self.sset, {x: self.theta_ref(C.ref(x)) for x in self.theta_source.ids()})

    def _face_classes(self, B: SSet):
        # a homotopy rel sk^{d-1} restricts to one rel ∂ on every d-face
        lv = self.levels[self.d]
        tops = B.nondegenerate(self.d)

        def inv(g: SMap):
            return tuple(lv.classes.class_of[yoneda_map(self.C, g.assign[t], lv.B).key()] for t in tops)

        return inv

    # class bookkeeping
    def _class_key(self, m: int, g: SMap) -> tuple:
        k = self.levels[m].classes.class_of.get(g.key())
        if k is None:
            raise ValidationError(f"map on sk^{self.d}Δ^{m} does not extend; not a bracket element")
        return k

    def rep(self, ref: SimplexRef) -> SMap:
        """Least representative ``sk^dΔ^m -> C`` of a simplex of h_dC."""
        m, k = self.key_of[ref]
        return self.levels[m].classes.members[k][0]

    def members(self, ref: SimplexRef) -> list[SMap]:
        m, k = self.key_of[ref]
        return self.levels[m].classes.members[k]

    def classify(self, g: SMap) -> SimplexRef:
        """The simplex of h_dC represented by ``g: sk^dΔ^m -> C``."""
        m = max((int(v) for v in g.source.nondegenerate(0)), default=-1)
        return self.locate[(m, self._class_key(m, g))]

    def theta_ref(self, ref: SimplexRef) -> SimplexRef:
        m = ref.dim
        return self.locate[(m, self._class_key(m, yoneda_map(self.C, ref, self.levels[m].B)))]

    def _act(self, key, theta: tuple[int, ...]):
        m, k = key
        n = len(theta) - 1
        op = self._ops.get((m, theta))
        if op is None:
            op = self._ops[(m, theta)] = simplex_operator(self.levels[n].B, self.levels[m].B, theta)
        g = self.levels[m].classes.members[k][0].compose(op)
        return (n, self._class_key(n, g))

    def _face(self, key, i):
        return self._act(key, coface(key[0], i))

    def _degen(self, key, j):
        return self._act(key, codegeneracy(key[0], j))


@dataclass
class LowTruncation:
    """``h_dC`` for d in {-2, -1, 0}; ``classes`` maps each vertex of C to its class."""

    C: SSet
    d: int
    sset: SSet
    theta: SMap
    classes: dict[str, str] = field(default_factory=dict)

    def theta_ref(self, ref: SimplexRef) -> SimplexRef:
        if self.d == 0:
            return poset_chain_ref([self.classes[v] for v in self.C.vertices_of(ref)])
        return self.sset.constant(self.sset.nondegenerate(0)[0], ref.dim)

    def members(self, ref: SimplexRef) -> list[list[str]]:
        """For d = 0: the vertices of C in each class along the chain ``ref``."""
        out = []
        for c in self.sset.vertices_of(ref):
            out.append(sorted(v for v, k in self.classes.items() if k == c))
        return out


def h_low(C: SSet, d: int, budget=None) -> LowTruncation:
    if d == -2:
        P = point("*")
        return LowTruncation(C, d, P, SMap(C, P, {x: P.constant("*", C.dim_of(x)) for x in C.ids()}))
    if d == -1:
        if C.is_empty():
            E = empty()
            return LowTruncation(C, d, E, SMap(C, E, {}))
        P = point("*")
        return LowTruncation(C, d, P, SMap(C, P, {x: P.constant("*", C.dim_of(x)) for x in C.ids()}))
    if d != 0:
        raise ArgumentError("h_low handles d in {-2, -1, 0}")
    require_quasicategory(C, 2, budget)
    verts = list(C.nondegenerate(0))
    leq = {(v, v) for v in verts}
    for e in C.nondegenerate(1):
        a, b = C.vertices_of(C.ref(e))
        leq.add((a, b))
    changed = True
    while changed:
        changed = False
        for a, b in list(leq):
            for c, e in list(leq):
                if b == c and (a, e) not in leq:
                    leq.add((a, e))
                    changed = True
    classes = {}
    for v in verts:
        cls = [w for w in verts if (v, w) in leq and (w, v) in leq]
        classes[v] = min(cls)
    reps = sorted(set(classes.values()))
    below = {r: sum(1 for s in reps if (s, r) in leq) for r in reps}
    order = sorted(reps, key=lambda r: (below[r], r))
    P = poset_nerve(order, lambda a, b: (a, b) in leq, name=f"h0({C.name})")
    T = LowTruncation(C, 0, P, SMap(C, P, {}), classes)
    T.theta = SMap(C, P, {x: T.theta_ref(C.ref(x)) for x in C.ids()})
    return T


def truncate(C: SSet, d: int, out_dim: int | None = None, budget=None):
    """``h_dC`` with ``θ_d`` for any d >= -2."""
    if d >= 1:
        return TruncatedSSet(C, d, out_dim, budget)
    return h_low(C, d, budget)


def h_map(f: SMap, T, T2) -> SMap:
    """``h_d(f): h_dC -> h_dC'`` by postcomposition on representatives."""
    if T.d != T2.d:
        raise ArgumentError("truncation levels differ")
    if isinstance(T, TruncatedSSet):
        assign = {}
        for x in T.sset.ids():
            ref = T.sset.ref(x)
            assign[x] = T2.classify(f.compose(T.rep(ref)))
        return SMap(T.sset, T2.sset, assign)
    if T.d == 0:
        img = {}
        for v, c in T.classes.items():
            img.setdefault(c, T2.classes[f.assign[v].base])
        return SMap(
            T.sset, T2.sset, {x: poset_chain_ref([img[c] for c in T.sset.vertices_of(T.sset.ref(x))]) for x in T.sset.ids()}
        )
    if T2.sset.is_empty():
        return SMap(T.sset, T2.sset, {})
    return SMap(T.sset, T2.sset, {x: T2.sset.constant(T2.sset.nondegenerate(0)[0], T.sset.dim_of(x)) for x in T.sset.ids()})


# -- mapping spaces ------------------------------------------------------------------
class MappingSpace:
    """``hom^R_C(X, Y)`` or ``hom^M_C(X, Y)`` through dimension ``dim``.

    ``element(ref)`` returns the underlying datum of any simplex: an
    (n+1)-simplex of C for the right kind, a map ``Δ^n × Δ^1 -> C`` for the middle kind.
    """

    def __init__(self, kind: str, C: SSet, X: str, Y: str, dim: int, sset: SSet, locate: dict, data: dict):
        self.kind, self.C, self.X, self.Y, self.dim = kind, C, X, Y, dim
        self.sset, self.locate, self._data = sset, locate, data
        self.key_of = {r: k for k, r in locate.items()}

    def element(self, ref: SimplexRef):
        return self._data[self.key_of[ref]]


def hom_right(C: SSet, X: str, Y: str, dim: int = 3) -> MappingSpace:
    if X not in C or Y not in C or C.dim_of(X) or C.dim_of(Y):
        raise ArgumentError("endpoints must be vertices")
    levels = {}
    for n in range(dim + 1):
        const = C.constant(X, n)
        levels[n] = [
            z for z in C.all_simplices(n + 1) if C.apply(z, tuple(range(n + 1))) == const and C.apply(z, (n + 1,)).base == Y
        ]

    def face(z, i):
        return C.apply(z, coface(z.dim, i))

    def degen(z, j):
        return C.apply(z, codegeneracy(z.dim, j))

    K, locate = build_from_levels(levels, face, degen, _ref_name, name=f"homR({X},{Y})")
    return MappingSpace("right", C, X, Y, dim, K, locate, {z: z for n in levels for z in levels[n]})


_PRODS: dict[int, Product] = {}


def _cyl(n: int) -> Product:
    P = _PRODS.get(n)
    if P is None:
        P = _PRODS[n] = Product(standard(n), standard(1))
    return P


def _along(n: int, theta: tuple[int, ...]) -> SMap:
    P, Q = _cyl(len(theta) - 1), _cyl(n)
    return product_map(P, Q, simplex_operator(P.A, Q.A, theta), identity_map(Q.B))


def hom_middle(C: SSet, X: str, Y: str, dim: int = 3, budget=None) -> MappingSpace:
    if X not in C or Y not in C or C.dim_of(X) or C.dim_of(Y):
        raise ArgumentError("endpoints must be vertices")
    levels: dict[int, list] = {}
    data: dict[Hashable, SMap] = {}
    for n in range(dim + 1):
        P = _cyl(n)
        partial = {}
        for x in P.sset.ids():
            a, t = P.parts(x)
            if t.base_dim == 0:
                partial[x] = C.constant(X if t.base == "0" else Y, a.dim)
        maps = sorted(search(ExtensionProblem(P.sset, C, partial, budget=budget)), key=SMap.sort_key)
        levels[n] = []
        for m in maps:
            k = (n, m.key())
            levels[n].append(k)
            data[k] = m
    ops: dict = {}

    def act(k, theta):
        n = k[0]
        op = ops.get((n, theta))
        if op is None:
            op = ops[(n, theta)] = _along(n, theta)
        return (len(theta) - 1, data[k].compose(op).key())

    index = {k: f"F{k[0]}.{i}" for n in levels for i, k in enumerate(levels[n])}
    K, locate = build_from_levels(
        levels, lambda k, i: act(k, coface(k[0], i)), lambda k, j: act(k, codegeneracy(k[0], j)), index.__getitem__,
        name=f"homM({X},{Y})",
    )
    return MappingSpace("middle", C, X, Y, dim, K, locate, data)


def collapse_map(C: SSet, z: SimplexRef) -> SMap:
    """``Δ^n × Δ^1 -> Δ^{n+1} -> C`` with ``(i,0) -> i`` and ``(i,1) -> n+1``."""
    n = z.dim - 1
    P = _cyl(n)
    assign = {}
    for x in P.sset.ids():
        a, t = P.parts(x)
        va = P.A.vertices_of(a)
        vt = P.B.vertices_of(t)
        assign[x] = C.apply(z, tuple(int(p) if q == "0" else n + 1 for p, q in zip(va, vt)))
    return SMap(P.sset, C, assign)


def phi(R: MappingSpace, M: MappingSpace) -> SMap:
    """``Φ: hom^R -> hom^M`` by precomposition with the collapse ``Δ^n × Δ^1 -> Δ^{n+1}``."""
    if R.kind != "right" or M.kind != "middle" or R.C is not M.C:
        raise ArgumentError("phi needs a right and a middle mapping space of the same C")
    assign = {}
    for x in R.sset.ids():
        z = R.element(R.sset.ref(x))
        g = collapse_map(R.C, z)
        assign[x] = M.locate[(z.dim - 1, g.key())]
    return SMap(R.sset, M.sset, assign)


def phi_all(R: MappingSpace, M: MappingSpace) -> dict[SimplexRef, SimplexRef]:
    """Φ evaluated directly on every simplex (degenerate ones included)."""
    out = {}
    for z, r in R.locate.items():
        out[r] = M.locate[(z.dim - 1, collapse_map(R.C, z).key())]
    return out


__all__ = [
    "DCategoryReport",
    "LowTruncation",
    "MappingSpace",
    "TruncatedSSet",
    "collapse_map",
    "equivalence_edges",
    "h_low",
    "h_map",
    "hom_middle",
    "hom_right",
    "is_d_category",
    "phi",
    "phi_all",
    "truncate",
]
