"""Backtracking search for simplicial maps, extensions and lifts.

The search assigns nondegenerate simplices of the source one at a time.  A
simplex is scheduled as soon as all of its faces are assigned, so every
assignment of positive dimension is a lookup in the target's face index
rather than a free choice.  Candidate values are tried in canonical order,
which makes every enumeration deterministic.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .constructions import Product, RelCylinder, delta_ref, horn, product_map, skeleton, standard
from .errors import ArgumentError, BudgetExceeded, NotCertified, ValidationError
from .sset import SMap, SSet, SimplexRef, build_from_levels, codegeneracy, coface, identity_map, ref_key

DEFAULT_BUDGET = 10**7

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class Budget:
    """A shared node counter; exhausting it raises :class:`BudgetExceeded`."""

    def __init__(self, limit: int = DEFAULT_BUDGET):
        if limit <= 0:
            raise ArgumentError("budget must be positive")
        self.limit = limit
        self.used = 0

    def tick(self, what: str = "search"):
        self.used += 1
        if self.used > self.limit:
            raise BudgetExceeded(self.limit, what)


def _coerce(budget) -> Budget:
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(int(budget))


@dataclass
class ExtensionProblem:
    """Extend ``partial`` (defined on a face-closed set of source simplices) to all of ``source``.

    If ``over`` is given as ``(p, q)`` with ``p: target -> D`` and ``q: source -> D``,
    only lifts with ``p ∘ f = q`` are accepted.
    """

    source: SSet
    target: SSet
    partial: Mapping[str, SimplexRef] = field(default_factory=dict)
    over: tuple[SMap, SMap] | None = None
    budget: object = None
    allowed: Mapping[str, frozenset] | None = None


def _schedule(K: SSet, fixed) -> list[str]:
    """Vertices in order, each followed by every simplex whose faces are then all placed."""
    placed = set(fixed)
    order: list[str] = []
    pending = [x for x in K.ids() if x not in placed and K.dim_of(x) > 0]
    waiting = {x: {f.base for f in K.faces_of(x)} for x in pending}
    coface = {}
    for x, fs in waiting.items():
        for b in fs:
            coface.setdefault(b, []).append(x)

    def release(b, ready):
        for y in coface.get(b, ()):
            w = waiting[y]
            w.discard(b)
            if not w and y not in placed:
                ready.append(y)

    initial = []
    for b in sorted(placed):
        release(b, initial)

    def drain(ready):
        ready.sort(key=lambda y: (K.dim_of(y), y))
        while ready:
            y = ready.pop(0)
            if y in placed:
                continue
            placed.add(y)
            order.append(y)
            new = []
            release(y, new)
            ready.extend(new)
            ready.sort(key=lambda z: (K.dim_of(z), z))

    drain(initial)
    for v in K.nondegenerate(0):
        if v in placed:
            continue
        placed.add(v)
        order.append(v)
        ready = []
        release(v, ready)
        drain(ready)
    missing = [x for x in K.ids() if x not in placed]
    if missing:
        raise ValidationError(f"cannot schedule simplices {missing[:3]}")
    return order


def search(problem: ExtensionProblem, first: bool = False) -> Iterator[SMap]:
    """Yield all extensions of ``problem`` in deterministic search order."""
    K, X = problem.source, problem.target
    budget = _coerce(problem.budget)
    assign: dict[str, SimplexRef] = dict(problem.partial)
    for x, r in assign.items():
        if x not in K or r.dim != K.dim_of(x) or r.base not in X:
            raise ValidationError(f"partial assignment of {x!r} is ill-typed")
        if K.dim_of(x):
            for i, f in enumerate(K.faces_of(x)):
                if f.base not in assign:
                    raise ValidationError(f"partial assignment is not closed under faces at {x!r}")
                if X.apply(assign[f.base], f.surj) != X.face(r, i):
                    raise ValidationError(f"partial assignment does not commute with d_{i} on {x!r}")
    if problem.over is not None:
        p, q = problem.over
        for x, r in assign.items():
            if p(r) != q(K.ref(x)):
                return
    order = _schedule(K, assign)
    verts = [X.vertex(v) for v in X.nondegenerate(0)]
    faces_of = {x: K.faces_of(x) for x in order}
    dims = {x: K.dim_of(x) for x in order}
    over = problem.over
    allowed = problem.allowed

    def candidates(x):
        n = dims[x]
        if n == 0:
            cands = verts
        else:
            key = tuple(X.apply(assign[f.base], f.surj) for f in faces_of[x])
            cands = X.by_faces(n).get(key, ())
        if over is not None:
            want = over[1](K.ref(x))
            cands = [c for c in cands if over[0](c) == want]
        if allowed is not None and x in allowed:
            cands = [c for c in cands if c in allowed[x]]
        return cands

    def rec(k):
        if k == len(order):
            yield SMap(K, X, assign)
            return
        x = order[k]
        for c in candidates(x):
            budget.tick("map search")
            assign[x] = c
            yield from rec(k + 1)
        assign.pop(x, None)

    for m in rec(0):
        yield SMap(K, X, dict(m.assign))
        if first:
            return


def enumerate_maps(K: SSet, X: SSet, budget=None) -> list[SMap]:
    """All simplicial maps ``K -> X`` in canonical order."""
    return sorted(search(ExtensionProblem(K, X, budget=budget)), key=SMap.sort_key)


def extend_map(problem: ExtensionProblem, mode: str = "all") -> list[SMap]:
    if mode not in ("first", "all"):
        raise ArgumentError(f"unknown mode {mode!r}")
    if mode == "first":
        return list(search(problem, first=True))
    return sorted(search(problem), key=SMap.sort_key)


def extends(incl: SMap, f: SMap, budget=None) -> SMap | None:
    """An extension of ``f: A -> X`` along the inclusion ``incl: A -> B``, or None."""
    partial = {incl.assign[a].base: r for a, r in f.assign.items()}
    for m in search(ExtensionProblem(incl.target, f.target, partial, budget=budget), first=True):
        return m
    return None


# -- horn certification -----------------------------------------------------------
_HORNS: dict = {}


def _horn_inclusion(n: int, i: int) -> tuple[SSet, SSet, SMap]:
    key = (n, i)
    if key not in _HORNS:
        D = standard(n)
        H = horn(n, i)
        _HORNS[key] = (H, D, SMap(H, D, {x: D.ref(x) for x in H.ids()}))
    return _HORNS[key]


@dataclass
class HornReport:
    ok: bool
    bound: int
    witness: dict | None = None


def _horn_check(X: SSet, m: int, inner_only: bool, budget, p: SMap | None = None, edge=None) -> HornReport:
    """Check lifting against Λ^n_i ⊆ Δ^n for 2 <= n <= m; ``p`` makes it relative, ``edge`` pins Δ^{01}."""
    if m < 2:
        raise ArgumentError("horn checks need m >= 2")
    budget = _coerce(budget)
    for n in range(2, m + 1):
        indices = range(1, n) if inner_only else range(n + 1)
        if edge is not None:
            indices = [0]
        for i in indices:
            H, D, incl = _horn_inclusion(n, i)
            partial = {}
            if edge is not None:
                partial = {"0": X.vertex(X.vertices_of(edge)[0]), "1": X.vertex(X.vertices_of(edge)[1]), "01": edge}
            for h in search(ExtensionProblem(H, X, partial, budget=budget)):
                if p is None:
                    problems = [ExtensionProblem(D, X, {incl.assign[a].base: r for a, r in h.assign.items()}, budget=budget)]
                else:
                    base = p.compose(h)
                    bottoms = search(
                        ExtensionProblem(D, p.target, {incl.assign[a].base: r for a, r in base.assign.items()}, budget=budget)
                    )
                    problems = [
                        ExtensionProblem(
                            D, X, {incl.assign[a].base: r for a, r in h.assign.items()}, over=(p, q), budget=budget
                        )
                        for q in bottoms
                    ]
                for prob in problems:
                    if next(search(prob, first=True), None) is None:
                        return HornReport(False, m, {"n": n, "i": i, "horn": _render(h)})
    return HornReport(True, m)


def _render(f: SMap) -> dict:
    return {x: _ref_str(r) for x, r in sorted(f.assign.items())}


def _ref_str(r: SimplexRef) -> str:
    if not r.is_degenerate:
        return r.base
    return "".join(f"s{j}" for j in r.degeneracies) + " " + r.base


def is_quasicategory_up_to(X: SSet, m: int, budget=None) -> bool:
    return quasicategory_report(X, m, budget).ok


def quasicategory_report(X: SSet, m: int, budget=None) -> HornReport:
    hit = X._cert.get(("qcat", m))
    if hit is None:
        hit = _horn_check(X, m, True, budget)
        X._cert[("qcat", m)] = hit
    return hit


def is_kan_up_to(X: SSet, m: int, budget=None) -> bool:
    hit = X._cert.get(("kan", m))
    if hit is None:
        hit = _horn_check(X, m, False, budget)
        X._cert[("kan", m)] = hit
    return hit.ok


def is_inner_fibration_up_to(p: SMap, m: int, budget=None) -> bool:
    return _horn_check(p.source, m, True, budget, p=p).ok


def is_cocartesian_edge(p: SMap, e: SimplexRef, m: int, budget=None) -> bool:
    """Lifting against every Λ^n_0 ⊆ Δ^n (2 <= n <= m) whose initial edge is ``e``."""
    if e.dim != 1:
        raise ArgumentError("a coCartesian test needs an edge")
    return _horn_check(p.source, m, False, budget, p=p, edge=e).ok


def require_quasicategory(X: SSet, m: int, budget=None) -> None:
    rep = quasicategory_report(X, m, budget)
    if not rep.ok:
        raise NotCertified(X.name, m, rep.witness)


def has_rlp(p: SMap, incl: SMap, top: SMap, bottom: SMap, budget=None) -> bool:
    """Whether the square ``top: U -> C``, ``bottom: V -> D`` over ``incl: U ⊆ V`` has a diagonal lift."""
    for a, r in top.assign.items():
        if p(r) != bottom(incl.assign[a]):
            raise ValidationError("lifting square does not commute")
    partial = {incl.assign[a].base: r for a, r in top.assign.items()}
    prob = ExtensionProblem(incl.target, p.source, partial, over=(p, bottom), budget=budget)
    return next(search(prob, first=True), None) is not None


# -- homotopies rel A -------------------------------------------------------------
_CYLINDERS: dict = {}


def cylinder_for(incl: SMap) -> RelCylinder:
    """Memoised ``B ⋊_A Δ^1`` for an inclusion."""
    key = id(incl)
    hit = _CYLINDERS.get(key)
    if hit is None or hit[0] is not incl:
        hit = (incl, RelCylinder(incl, standard(1)))
        _CYLINDERS[key] = hit
    return hit[1]


def equivalence_edges(X: SSet, budget=None) -> frozenset:
    """All edges of X (degenerate ones included) that are invertible in the homotopy category."""
    hit = X._cert.get("equivalences")
    if hit is None:
        hit = frozenset(e for e in X.all_simplices(1) if edge_is_equivalence(X, e, budget=budget))
        X._cert["equivalences"] = hit
    return hit


def homotopy_problem(f: SMap, g: SMap, incl: SMap, budget=None) -> ExtensionProblem | None:
    """The extension problem for ``f ∪ g`` on ``B ⋊_A ∂Δ^1``; None if ``f|A != g|A``.

    The track ``v × Δ^1`` of a vertex ``v`` outside A must be an equivalence, so a
    homotopy rel A is an equivalence in the fibre over ``f|A``.  When A contains
    every vertex the tracks are degenerate and the constraint is vacuous.
    """
    cyl = cylinder_for(incl)
    partial: dict[str, SimplexRef] = {}
    for v, h in (("0", f), ("1", g)):
        end = cyl.end(v)
        for x, r in end.assign.items():
            val = h.assign[x]
            prev = partial.get(r.base)
            if prev is not None and prev != val:
                return None
            partial[r.base] = val
    B = incl.target
    in_a = {r.base for r in incl.assign.values()}
    allowed = {}
    for v in B.nondegenerate(0):
        if v not in in_a:
            track = cyl.point(B.constant(v, 1), cyl.D.ref("01"))
            allowed[track.base] = equivalence_edges(f.target, budget)
    return ExtensionProblem(cyl.sset, f.target, partial, budget=budget, allowed=allowed or None)


def is_homotopic_rel(f: SMap, g: SMap, incl: SMap, budget=None, certify: bool = True) -> tuple[bool, SMap | None]:
    """Whether ``f`` and ``g`` are homotopic relative to ``incl: A ⊆ B``, with a witness."""
    if f.source is not incl.target or g.source is not incl.target:
        raise ArgumentError("maps must be defined on the ambient of the inclusion")
    for r in incl.assign.values():
        if f.assign[r.base] != g.assign[r.base]:
            raise ArgumentError("maps must agree on the subcomplex")
    if certify:
        require_quasicategory(f.target, max(2, cylinder_for(incl).sset.dim + 1), budget)
    prob = homotopy_problem(f, g, incl, budget)
    if prob is None:
        return False, None
    w = next(search(prob, first=True), None)
    return w is not None, w


@dataclass
class HClassSet:
    """The set [A, B, C; X] of extendable maps modulo homotopy rel A."""

    classes: list[SMap]
    members: dict[tuple, list[SMap]]
    class_of: dict[tuple, tuple]
    witnesses: dict[tuple, SMap]
    certified_bound: int

    def __len__(self):
        return len(self.classes)

    def rep(self, f: SMap) -> SMap | None:
        k = self.class_of.get(f.key())
        if k is None:
            return None
        return self.members[k][0]


def _union_find_classes(maps: list[SMap], incl: SMap, budget, certify, invariant=None) -> tuple[dict, dict]:
    parent = {m.key(): m.key() for m in maps}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    witnesses = {}
    groups: dict[tuple, list[SMap]] = {}
    for m in maps:
        key = tuple(m.assign[r.base] for r in incl.assign.values())
        if invariant is not None:
            key = (key, invariant(m))
        groups.setdefault(key, []).append(m)
    for grp in groups.values():
        for i, f in enumerate(grp):
            for g in grp[i + 1:]:
                if find(f.key()) == find(g.key()):
                    continue
                ok, w = is_homotopic_rel(f, g, incl, budget, certify=certify)
                if ok:
                    a, b = find(f.key()), find(g.key())
                    parent[max(a, b, key=_keysort)] = min(a, b, key=_keysort)
                    witnesses[(f.key(), g.key())] = w
    members: dict[tuple, list[SMap]] = {}
    for m in maps:
        members.setdefault(find(m.key()), []).append(m)
    return members, witnesses


def _keysort(k):
    return tuple(ref_key(r) for r in k)


def homotopy_classes(
    A_in_B: SMap, B_in_C: SMap, X: SSet, budget=None, certify: bool = True, invariant=None
) -> HClassSet:
    """Compute [A, B, C; X] with canonical (lexicographically least) representatives.

    ``invariant`` may map each map ``B -> X`` to a value that homotopic maps share;
    pairs with different values are never tested.
    """
    C = B_in_C.target
    budget = _coerce(budget)
    bound = max(2, cylinder_for(A_in_B).sset.dim + 1)
    if certify:
        require_quasicategory(X, bound, budget)
    seen = {}
    for h in search(ExtensionProblem(C, X, budget=budget)):
        f = h.compose(B_in_C)
        seen.setdefault(f.key(), f)
    maps = sorted(seen.values(), key=SMap.sort_key)
    members, witnesses = _union_find_classes(maps, A_in_B, budget, certify=False, invariant=invariant)
    ordered = {}
    class_of = {}
    for grp in members.values():
        grp.sort(key=SMap.sort_key)
        k = grp[0].key()
        ordered[k] = grp
        for m in grp:
            class_of[m.key()] = k
    classes = sorted((g[0] for g in ordered.values()), key=SMap.sort_key)
    return HClassSet(classes, ordered, class_of, witnesses, bound)


# -- components and equivalences -------------------------------------------------
def pi0(X: SSet) -> list[list[str]]:
    parent = {v: v for v in X.nondegenerate(0)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in X.nondegenerate(1):
        a, b = (find(v) for v in X.vertices_of(X.ref(e)))
        if a != b:
            parent[max(a, b)] = min(a, b)
    comps: dict[str, list[str]] = {}
    for v in X.nondegenerate(0):
        comps.setdefault(find(v), []).append(v)
    return sorted(comps.values())


def edge_is_equivalence(X: SSet, e: SimplexRef, m: int = 2, budget=None) -> bool:
    """Whether ``e`` is invertible in the homotopy category of X.

    ``[g] ∘ [e] = [id]`` holds exactly when some 2-simplex has boundary
    ``(g, id_x, e)``, so a left and a right inverse are found by face lookup.
    """
    require_quasicategory(X, max(2, m), budget)
    x, y = X.vertices_of(e)
    tris = X.all_simplices(2)
    left = any(X.face(t, 2) == e and X.face(t, 1) == X.constant(x, 1) for t in tris)
    right = any(X.face(t, 0) == e and X.face(t, 1) == X.constant(y, 1) for t in tris)
    return left and right


# -- isomorphisms and functor complexes ----------------------------------------------
def _profiles(K: SSet) -> dict[str, tuple]:
    """A relabelling-invariant fingerprint: dimension, face dimensions, number of cofaces."""
    cof: dict[str, int] = {}
    for x in K.ids():
        for f in K.faces_of(x):
            cof[f.base] = cof.get(f.base, 0) + 1
    return {x: (K.dim_of(x), tuple(f.base_dim for f in K.faces_of(x)), cof.get(x, 0)) for x in K.ids()}


def iso_check(A: SSet, B: SSet, cap: int | None = None, budget=None) -> SMap | None:
    """An isomorphism ``A -> B`` through dimension ``cap`` (all dimensions by default), or None."""
    if cap is not None:
        A = skeleton(A, cap)[0] if cap < A.dim else A
        B = skeleton(B, cap)[0] if cap < B.dim else B
    if A.counts() != B.counts():
        return None
    pa, pb = _profiles(A), _profiles(B)
    if sorted(pa.values()) != sorted(pb.values()):
        return None
    budget = _coerce(budget)
    order = _schedule(A, {})
    used: set[str] = set()
    assign: dict[str, SimplexRef] = {}

    def rec(k):
        if k == len(order):
            return True
        x = order[k]
        n = A.dim_of(x)
        if n == 0:
            cands = [B.vertex(v) for v in B.nondegenerate(0)]
        else:
            key = tuple(B.apply(assign[f.base], f.surj) for f in A.faces_of(x))
            cands = B.by_faces(n).get(key, ())
        for c in cands:
            if c.is_degenerate or c.base in used or pb[c.base] != pa[x]:
                continue
            budget.tick("isomorphism search")
            assign[x] = c
            used.add(c.base)
            if rec(k + 1):
                return True
            used.discard(c.base)
            del assign[x]
        return False

    if rec(0):
        return SMap(A, B, assign)
    return None


def simplex_operator(Dm: SSet, Dn: SSet, theta: Sequence[int]) -> SMap:
    """The map ``Δ^m -> Δ^n`` induced by the monotone ``theta: [m] -> [n]``."""
    return SMap(Dm, Dn, {x: delta_ref([theta[int(v)] for v in Dm.vertices_of(Dm.ref(x))]) for x in Dm.ids()})


def fun_complex(A: SSet, B: SSet, cap: int, budget=None) -> tuple[SSet, dict[str, SMap]]:
    """``Fun(A, B)`` through dimension ``cap``: n-simplices are maps ``A × Δ^n -> B``.

    Cost grows like the number of maps ``A × Δ^cap -> B``; keep inputs tiny.
    Returns the complex and a table from simplex ids to the underlying maps.
    """
    if cap < 0:
        raise ArgumentError("cap must be >= 0")
    budget = _coerce(budget)
    prods = {n: Product(A, standard(n)) for n in range(cap + 1)}
    ident = identity_map(A)
    levels: dict[int, list[tuple]] = {}
    by_key: dict[tuple, SMap] = {}
    names: dict[tuple, str] = {}
    for n in range(cap + 1):
        maps = sorted(search(ExtensionProblem(prods[n].sset, B, budget=budget)), key=SMap.sort_key)
        levels[n] = []
        for i, m in enumerate(maps):
            k = (n, m.key())
            levels[n].append(k)
            by_key[k] = m
            names[k] = f"m{n}.{i}"
    ops: dict[tuple, SMap] = {}

    def along(n: int, theta: tuple[int, ...]) -> SMap:
        # id × θ : A × Δ^m -> A × Δ^n
        hit = ops.get((n, theta))
        if hit is None:
            P, Q = prods[len(theta) - 1], prods[n]
            hit = ops[(n, theta)] = product_map(P, Q, ident, simplex_operator(P.B, Q.B, theta))
        return hit

    def face(k, i):
        n = k[0]
        return (n - 1, by_key[k].compose(along(n, coface(n, i))).key())

    def degen(k, j):
        n = k[0]
        return (n + 1, by_key[k].compose(along(n, codegeneracy(n, j))).key())

    K, locate = build_from_levels(levels, face, degen, lambda k: names[k], name=f"Fun({A.name},{B.name})")
    table = {names[k]: by_key[k] for k in by_key if not locate[k].is_degenerate}
    return K, table
