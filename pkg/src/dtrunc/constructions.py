"""Standard simplicial sets and the colimit-type constructions built from them.

Everything here returns fresh immutable :class:`~dtrunc.sset.SSet` values.
Pushouts are only taken along inclusions, which is all the theory needs: the
nondegenerate simplices of ``B ⊔_A C`` are then those of ``C`` together with the
nondegenerate simplices of ``B`` outside ``A``.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .errors import ArgumentError, DomainError, ValidationError
from .sset import SMap, SSet, SimplexRef, chain_name, identity_map

# default headroom for colimit-type constructions above the input dimension
DEFAULT_CAP_HEADROOM = 2


def empty() -> SSet:
    return SSet({}, {}, name="∅")


def poset_nerve(elements: Sequence[str], leq: Callable[[str, str], bool], name: str = "") -> SSet:
    """Nerve of a finite poset; ``elements`` must be listed along a linear extension."""
    elements = list(elements)
    pos = {e: i for i, e in enumerate(elements)}
    chains: list[tuple[str, ...]] = [(e,) for e in elements]
    frontier = list(chains)
    while frontier:
        nxt = []
        for c in frontier:
            for e in elements[pos[c[-1]] + 1:]:
                if leq(c[-1], e) and c[-1] != e:
                    nxt.append(c + (e,))
        chains.extend(nxt)
        frontier = nxt
    simplices: dict[int, list[str]] = {}
    faces = {}
    for c in chains:
        nm = chain_name(c)
        simplices.setdefault(len(c) - 1, []).append(nm)
        if len(c) > 1:
            faces[nm] = tuple(
                SimplexRef.nondegenerate(chain_name(c[:i] + c[i + 1:]), len(c) - 2) for i in range(len(c))
            )
    return SSet(simplices, faces, name=name)


def poset_chain_ref(chain: Sequence[str]) -> SimplexRef:
    """Normal form of a weakly increasing chain in a poset nerve."""
    distinct = [chain[0]]
    surj = [0]
    for e in chain[1:]:
        if e != distinct[-1]:
            distinct.append(e)
        surj.append(len(distinct) - 1)
    return SimplexRef(chain_name(distinct), tuple(surj))


def standard(n: int) -> SSet:
    """The standard simplex Δ^n; simplices are named by their vertex sets."""
    if n < 0:
        raise ArgumentError(f"standard simplex needs n >= 0, got {n}")
    verts = [str(i) for i in range(n + 1)]
    return poset_nerve(verts, lambda a, b: int(a) <= int(b), name=f"Δ{n}")


def delta_ref(vertices: Sequence[int]) -> SimplexRef:
    """The simplex of Δ^n spanned by a weakly increasing vertex sequence."""
    return poset_chain_ref([str(v) for v in vertices])


def boundary(n: int) -> SSet:
    if n < 0:
        raise ArgumentError(f"boundary needs n >= 0, got {n}")
    D = standard(n)
    full = chain_name([str(i) for i in range(n + 1)])
    sub, _ = subcomplex(D, [x for x in D.ids() if x != full])
    sub.name = f"∂Δ{n}"
    return sub


def horn(n: int, i: int) -> SSet:
    if n < 1 or not 0 <= i <= n:
        raise ArgumentError(f"horn Λ^{n}_{i} is undefined")
    D = standard(n)
    verts = [str(v) for v in range(n + 1)]
    full = chain_name(verts)
    skip = chain_name(verts[:i] + verts[i + 1:])
    sub, _ = subcomplex(D, [x for x in D.ids() if x not in (full, skip)])
    sub.name = f"Λ{n},{i}"
    return sub


def subcomplex(K: SSet, ids: Iterable[str], name: str = "") -> tuple[SSet, SMap]:
    """The smallest subcomplex containing ``ids`` (closed under faces) and its inclusion."""
    keep: set[str] = set()
    stack = list(ids)
    while stack:
        x = stack.pop()
        if x in keep:
            continue
        if x not in K:
            raise ValidationError(f"unknown simplex {x!r}")
        keep.add(x)
        stack.extend(f.base for f in K.faces_of(x))
    simplices: dict[int, list[str]] = {}
    for x in keep:
        simplices.setdefault(K.dim_of(x), []).append(x)
    sub = SSet(simplices, {x: K.faces_of(x) for x in keep if K.dim_of(x) > 0}, name=name)
    return sub, SMap(sub, K, {x: K.ref(x) for x in keep})


def skeleton(K: SSet, d: int) -> tuple[SSet, SMap]:
    if d < -1:
        raise ArgumentError(f"skeleton needs d >= -1, got {d}")
    sub, incl = subcomplex(K, [x for x in K.ids() if K.dim_of(x) <= d])
    sub.name = f"sk{d}({K.name})" if K.name else ""
    return sub, incl


def image_subcomplex(f: SMap) -> tuple[SSet, SMap]:
    return subcomplex(f.target, {r.base for r in f.assign.values()})


def disjoint_union(A: SSet, B: SSet) -> tuple[SSet, SMap, SMap]:
    def tag(p, x):
        return f"{p}:{x}"

    simplices: dict[int, list[str]] = {}
    faces = {}
    for p, K in (("L", A), ("R", B)):
        for x in K.ids():
            simplices.setdefault(K.dim_of(x), []).append(tag(p, x))
            if K.dim_of(x):
                faces[tag(p, x)] = tuple(SimplexRef(tag(p, f.base), f.surj) for f in K.faces_of(x))
    U = SSet(simplices, faces, name=f"{A.name}⊔{B.name}")
    left = SMap(A, U, {x: SimplexRef.nondegenerate(tag("L", x), A.dim_of(x)) for x in A.ids()})
    right = SMap(B, U, {x: SimplexRef.nondegenerate(tag("R", x), B.dim_of(x)) for x in B.ids()})
    return U, left, right


# -- products ----------------------------------------------------------------
def _ref_name(r: SimplexRef) -> str:
    if not r.is_degenerate:
        return r.base
    return f"{r.base}@{'.'.join(map(str, r.surj))}"


def _lattice_paths(p: int, q: int, n: int):
    """Jointly injective pairs of monotone surjections [n] -> [p], [n] -> [q]."""

    def rec(a, b, sa, sb):
        if len(sa) == n + 1:
            if a == p and b == q:
                yield tuple(sa), tuple(sb)
            return
        for da, db in ((1, 0), (0, 1), (1, 1)):
            na, nb = a + da, b + db
            if na <= p and nb <= q:
                yield from rec(na, nb, sa + [na], sb + [nb])

    yield from rec(0, 0, [0], [0])


class Product:
    """The product ``A × B`` with projections and a normalising pairing."""

    def __init__(self, A: SSet, B: SSet, cap: int | None = None):
        if cap is not None and cap < 0:
            raise ArgumentError("product cap must be >= 0")
        self.A, self.B = A, B
        top = A.dim + B.dim if cap is None else min(cap, A.dim + B.dim)
        self.cap = top
        self._parts: dict[str, tuple[SimplexRef, SimplexRef]] = {}
        simplices: dict[int, list[str]] = {}
        for p in range(A.dim + 1):
            for q in range(B.dim + 1):
                for n in range(max(p, q), min(p + q, top) + 1):
                    paths = list(_lattice_paths(p, q, n))
                    for a in A.nondegenerate(p):
                        for b in B.nondegenerate(q):
                            for sa, sb in paths:
                                x, y = SimplexRef(a, sa), SimplexRef(b, sb)
                                nm = f"({_ref_name(x)},{_ref_name(y)})"
                                self._parts[nm] = (x, y)
                                simplices.setdefault(n, []).append(nm)
        faces = {}
        for nm, (x, y) in self._parts.items():
            n = x.dim
            if n:
                faces[nm] = tuple(self.pair(A.face(x, i), B.face(y, i)) for i in range(n + 1))
        self.sset = SSet(simplices, faces, name=f"{A.name}×{B.name}")
        self.pr1 = SMap(self.sset, A, {nm: xy[0] for nm, xy in self._parts.items()})
        self.pr2 = SMap(self.sset, B, {nm: xy[1] for nm, xy in self._parts.items()})

    def pair(self, x: SimplexRef, y: SimplexRef) -> SimplexRef:
        """Normal form of the simplex ``(x, y)`` of ``A × B``."""
        if x.dim != y.dim:
            raise ValidationError("paired simplices must have equal dimension")
        tau = [0]
        kept = [0]
        for t in range(1, x.dim + 1):
            if x.surj[t] == x.surj[t - 1] and y.surj[t] == y.surj[t - 1]:
                tau.append(tau[-1])
            else:
                tau.append(tau[-1] + 1)
                kept.append(t)
        xr = SimplexRef(x.base, tuple(x.surj[t] for t in kept))
        yr = SimplexRef(y.base, tuple(y.surj[t] for t in kept))
        nm = f"({_ref_name(xr)},{_ref_name(yr)})"
        if nm not in self._parts:
            raise ValidationError(f"simplex {nm} lies above the product cap {self.cap}")
        return SimplexRef(nm, tuple(tau))

    def parts(self, x: str) -> tuple[SimplexRef, SimplexRef]:
        return self._parts[x]


def product(A: SSet, B: SSet, cap: int | None = None) -> SSet:
    return Product(A, B, cap).sset


def product_map(P: Product, Q: Product, f: SMap, g: SMap) -> SMap:
    """``f × g : P.A × P.B -> Q.A × Q.B``."""
    assign = {}
    for x in P.sset.ids():
        a, b = P.parts(x)
        assign[x] = Q.pair(f(a), g(b))
    return SMap(P.sset, Q.sset, assign)


# -- pushouts ----------------------------------------------------------------
class Pushout:
    """``B ⊔_A C`` for an inclusion ``f: A -> B`` and any map ``g: A -> C``.

    Simplex ids of ``C`` are kept; ids of ``B`` outside ``A`` are kept unless they
    collide with an id of ``C``, in which case they are primed.
    """

    def __init__(self, f: SMap, g: SMap, name: str = ""):
        if not f.is_injective():
            raise ArgumentError("pushout needs the first leg to be an inclusion")
        if f.source is not g.source:
            raise ArgumentError("pushout legs must share a source")
        B, C = f.target, g.target
        inv = {r.base: a for a, r in f.assign.items()}
        rename = {}
        for x in B.ids():
            if x in inv:
                continue
            nm = x
            while nm in C or nm in rename.values():
                nm += "'"
            rename[x] = nm
        self.rename = rename

        def image_b(r: SimplexRef) -> SimplexRef:
            if r.base in inv:
                return C.apply(g.assign[inv[r.base]], r.surj)
            return SimplexRef(rename[r.base], r.surj)

        simplices: dict[int, list[str]] = {n: list(C.nondegenerate(n)) for n in C.dims}
        faces = {x: C.faces_of(x) for x in C.ids() if C.dim_of(x)}
        for x, nm in rename.items():
            n = B.dim_of(x)
            simplices.setdefault(n, []).append(nm)
            if n:
                faces[nm] = tuple(image_b(r) for r in B.faces_of(x))
        self.sset = SSet(simplices, faces, name=name)
        self.leg_b = SMap(B, self.sset, {x: image_b(B.ref(x)) for x in B.ids()})
        self.leg_c = SMap(C, self.sset, {x: C.ref(x) for x in C.ids()})
        self.f, self.g = f, g


def pushout(f: SMap, g: SMap, cap: int | None = None) -> tuple[SSet, SMap, SMap]:
    """Pushout along an inclusion; ``cap`` truncates the result (all inputs here are finite)."""
    P = Pushout(f, g)
    if cap is None or cap >= P.sset.dim:
        return P.sset, P.leg_b, P.leg_c
    sk, _ = skeleton(P.sset, cap)
    return sk, P.leg_b, P.leg_c


def point(name: str = "0") -> SSet:
    return SSet({0: [name]}, {}, name="Δ0")


def constant_map(K: SSet, target: SSet, v: str) -> SMap:
    return SMap(K, target, {x: target.constant(v, K.dim_of(x)) for x in K.ids()})


def quotient(K: SSet, sub_ids: Iterable[str], name: str = "") -> Pushout:
    """Collapse the subcomplex generated by ``sub_ids`` to a point named by its least vertex."""
    A, incl = subcomplex(K, sub_ids)
    if A.is_empty():
        raise DomainError("cannot collapse an empty subcomplex to a point")
    v = min(A.nondegenerate(0))
    pt = point(v)
    return Pushout(incl, constant_map(A, pt, v), name=name)


# -- relative cylinders --------------------------------------------------------
class RelCylinder:
    """``B ⋊_A D``: the pushout of ``A <- A × D -> B × D``."""

    def __init__(self, incl: SMap, D: SSet, cap: int | None = None):
        A, B = incl.source, incl.target
        self.incl, self.D = incl, D
        self.AD = Product(A, D, cap)
        self.BD = Product(B, D, cap)
        j = product_map(self.AD, self.BD, incl, identity_map(D))
        self.po = Pushout(j, self.AD.pr1, name=f"{B.name}⋊{D.name}")
        self.sset = self.po.sset
        self.from_product = self.po.leg_b
        self.from_base = self.po.leg_c

    def point(self, b: SimplexRef, e: SimplexRef) -> SimplexRef:
        """Image of the simplex ``(b, e)`` of ``B × D``."""
        return self.from_product(self.BD.pair(b, e))

    def end(self, v: str) -> SMap:
        """The inclusion ``B -> B ⋊_A D`` at the vertex ``v`` of ``D``."""
        B = self.incl.target
        return SMap(B, self.sset, {x: self.point(B.ref(x), self.D.constant(v, B.dim_of(x))) for x in B.ids()})


def rel_cylinder(incl: SMap, D: SSet, cap: int | None = None) -> SSet:
    return RelCylinder(incl, D, cap).sset


# -- cones -----------------------------------------------------------------------
CONE_POINT = "c"


def _cone_name(x: str) -> str:
    return f"c({x})"


class ConeJ:
    """``J(K) = K ⋆ Δ^0 / K`` with marked vertices ``source`` (image of K) and ``cone``."""

    def __init__(self, K: SSet, allow_empty: bool = False):
        if K.is_empty() and not allow_empty:
            raise DomainError("J(∅) is not defined: the marked pair ∂Δ^1 -> J(∅) does not exist")
        if CONE_POINT in K:
            raise ArgumentError(f"simplex id {CONE_POINT!r} is reserved for the cone point")
        self.K = K
        simplices: dict[int, list[str]] = {n: list(K.nondegenerate(n)) for n in K.dims}
        simplices.setdefault(0, []).append(CONE_POINT)
        faces = {x: K.faces_of(x) for x in K.ids() if K.dim_of(x)}
        for x in K.ids():
            n = K.dim_of(x)
            nm = _cone_name(x)
            simplices.setdefault(n + 1, []).append(nm)
            if n == 0:
                faces[nm] = (SimplexRef(CONE_POINT, (0,)), SimplexRef(x, (0,)))
            else:
                faces[nm] = tuple(self._cone_ref(r) for r in K.faces_of(x)) + (K.ref(x),)
        self.join = SSet(simplices, faces, name=f"{K.name}⋆Δ0")
        if K.is_empty():
            # the quotient by ∅ adjoins a separate base point
            self.sset = SSet({0: ["*", CONE_POINT]}, {}, name="J(∅)")
            self.base_point = "*"
            self.leg = SMap(self.join, self.sset, {CONE_POINT: SimplexRef(CONE_POINT, (0,))})
        else:
            q = quotient(self.join, K.ids(), name=f"J({K.name})")
            self.sset = q.sset
            self.base_point = min(K.nondegenerate(0))
            self.leg = q.leg_b
        self.cone_point = CONE_POINT

    @staticmethod
    def _cone_ref(r: SimplexRef) -> SimplexRef:
        return SimplexRef(_cone_name(r.base), r.surj + (r.surj[-1] + 1,))

    def cone_simplex(self, r: SimplexRef) -> SimplexRef:
        """Image in J(K) of the cone on the simplex ``r`` of K."""
        return self.leg(self._cone_ref(r))

    def marked(self) -> tuple[str, str]:
        return self.base_point, self.cone_point

    def relative(self, sub_ids: Iterable[str]) -> tuple[SSet, SMap]:
        """The image of J(A) ∪ ∂Δ^1 for the subcomplex A generated by ``sub_ids``."""
        ids = {self.base_point, self.cone_point}
        for x in sub_ids:
            ids.add(self.cone_simplex(self.K.ref(x)).base)
        return subcomplex(self.sset, ids)


def cone_J(K: SSet, cap: int | None = None) -> tuple[SSet, tuple[str, str]]:
    J = ConeJ(K)
    out = J.sset if cap is None or cap >= J.sset.dim else skeleton(J.sset, cap)[0]
    return out, J.marked()


class ConeSigma:
    """``Σ(K) = K ◇ Δ^0 / K``, realised as ``K × Δ^1`` with both ends collapsed separately."""

    def __init__(self, K: SSet, allow_empty: bool = False):
        if K.is_empty() and not allow_empty:
            raise DomainError("Σ(∅) is not defined: the marked pair ∂Δ^1 -> Σ(∅) does not exist")
        self.K = K
        self.I = standard(1)
        self.prod = Product(K, self.I)
        KI = self.prod
        if K.is_empty():
            self.sset = SSet({0: ["⊥", "⊤"]}, {}, name="Σ(∅)")
            self.leg = SMap(KI.sset, self.sset, {})
            self.bottom, self.top = "⊥", "⊤"
            return
        ends = {}
        for v in ("0", "1"):
            ends[v] = [KI.pair(K.ref(x), self.I.constant(v, K.dim_of(x))).base for x in K.ids()]
        q0 = quotient(KI.sset, ends["0"])
        q1 = quotient(q0.sset, [q0.leg_b(KI.sset.ref(x)).base for x in ends["1"]], name=f"Σ({K.name})")
        self.sset = q1.sset
        self.leg = q1.leg_b.compose(q0.leg_b)
        v0 = K.vertex(min(K.nondegenerate(0)))
        self.bottom = self.point(v0, self.I.vertex("0")).base
        self.top = self.point(v0, self.I.vertex("1")).base

    def point(self, x: SimplexRef, t: SimplexRef) -> SimplexRef:
        """Image in Σ(K) of the simplex ``(x, t)`` of ``K × Δ^1``."""
        return self.leg(self.prod.pair(x, t))

    def marked(self) -> tuple[str, str]:
        return self.bottom, self.top

    def relative(self, sub_ids: Iterable[str]) -> tuple[SSet, SMap]:
        """The image of Σ(A) ∪ ∂Δ^1 for the subcomplex A generated by ``sub_ids``."""
        A, incl = subcomplex(self.K, sub_ids)
        AI = Product(A, self.I)
        into = product_map(AI, self.prod, incl, identity_map(self.I))
        ids = {self.bottom, self.top}
        for x in AI.sset.ids():
            r = self.leg(into(AI.sset.ref(x)))
            if not r.is_degenerate:
                ids.add(r.base)
        return subcomplex(self.sset, ids)


def cone_Sigma(K: SSet, cap: int | None = None) -> tuple[SSet, tuple[str, str]]:
    S = ConeSigma(K)
    out = S.sset if cap is None or cap >= S.sset.dim else skeleton(S.sset, cap)[0]
    return out, S.marked()


def relabel(K: SSet, name: str) -> SSet:
    return SSet(K.dims, {x: K.faces_of(x) for x in K.ids() if K.dim_of(x)}, labels=K.labels, name=name)
