"""Finite categories, functors between them, and their nerves."""

from __future__ import annotations

from itertools import product as iproduct
from typing import Callable, Iterable, Mapping, Sequence

from .errors import ArgumentError, ValidationError
from .sset import SMap, SSet, SimplexRef

DEFAULT_NERVE_CAP = 4


class Category:
    """A finite category given by objects, named morphisms and a full composition table.

    ``compose[(g, f)]`` is ``g ∘ f`` and must be present for every composable pair.
    """

    def __init__(
        self,
        objects: Sequence[str],
        morphisms: Mapping[str, tuple[str, str]],
        identities: Mapping[str, str],
        compose: Mapping[tuple[str, str], str],
        name: str = "",
        check: bool = True,
    ):
        self.objects = tuple(objects)
        self.morphisms = dict(morphisms)
        self.identities = dict(identities)
        self.table = dict(compose)
        self.name = name
        self._hom: dict[tuple[str, str], list[str]] = {}
        for f, (s, t) in sorted(self.morphisms.items()):
            self._hom.setdefault((s, t), []).append(f)
        self._id_set = set(self.identities.values())
        if check:
            self.validate()

    @classmethod
    def from_function(
        cls,
        objects: Sequence[str],
        morphisms: Mapping[str, tuple[str, str]],
        identities: Mapping[str, str],
        compose: Callable[[str, str], str],
        name: str = "",
        check: bool = True,
    ) -> "Category":
        by_src: dict[str, list[str]] = {}
        for f, (s, _) in morphisms.items():
            by_src.setdefault(s, []).append(f)
        table = {}
        for f, (_, t) in morphisms.items():
            for g in by_src.get(t, ()):
                table[(g, f)] = compose(g, f)
        return cls(objects, morphisms, identities, table, name=name, check=check)

    # -- queries --------------------------------------------------------------
    def src(self, f: str) -> str:
        return self.morphisms[f][0]

    def dst(self, f: str) -> str:
        return self.morphisms[f][1]

    def hom(self, x: str, y: str) -> list[str]:
        return self._hom.get((x, y), [])

    def comp(self, g: str, f: str) -> str:
        try:
            return self.table[(g, f)]
        except KeyError:
            raise ValidationError(f"{g} ∘ {f} is not defined") from None

    def is_identity(self, f: str) -> bool:
        return f in self._id_set

    def inverses(self, f: str) -> list[str]:
        s, t = self.morphisms[f]
        return [g for g in self.hom(t, s) if self.is_identity(self.comp(g, f)) and self.is_identity(self.comp(f, g))]

    def is_iso(self, f: str) -> bool:
        return bool(self.inverses(f))

    def isomorphic(self, x: str, y: str) -> bool:
        return any(self.is_iso(f) for f in self.hom(x, y))

    def is_skeletal(self) -> bool:
        return not any(self.isomorphic(x, y) for x in self.objects for y in self.objects if x != y)

    def is_acyclic(self) -> bool:
        """No non-identity endomorphisms and no cycles, so the nerve is finite."""
        order = {}
        for x in self.objects:
            order[x] = {self.dst(f) for f in self.morphisms if self.src(f) == x and not self.is_identity(f)}
        state: dict[str, int] = {}

        def visit(x):
            state[x] = 1
            for y in order[x]:
                if state.get(y) == 1 or (state.get(y) is None and not visit(y)):
                    return False
            state[x] = 2
            return True

        return all(state.get(x) == 2 or visit(x) for x in self.objects)

    # -- laws -----------------------------------------------------------------
    def validate(self) -> None:
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise ValidationError("duplicate object")
        for f, (s, t) in self.morphisms.items():
            if s not in objs or t not in objs:
                raise ValidationError(f"morphism {f!r} has an unknown endpoint")
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.morphisms.get(i) != (x, x):
                raise ValidationError(f"object {x!r} lacks an identity")
        for f, (s, t) in self.morphisms.items():
            for g in self.morphisms:
                if self.src(g) != t:
                    continue
                gf = self.table.get((g, f))
                if gf is None:
                    raise ValidationError(f"composite {g} ∘ {f} missing")
                if self.morphisms.get(gf) != (s, self.dst(g)):
                    raise ValidationError(f"composite {g} ∘ {f} = {gf} has the wrong endpoints")
            if self.comp(f, self.identities[s]) != f or self.comp(self.identities[t], f) != f:
                raise ValidationError(f"identity law fails at {f!r}")
        for f in self.morphisms:
            for g in self.hom_from(self.dst(f)):
                for h in self.hom_from(self.dst(g)):
                    if self.comp(h, self.comp(g, f)) != self.comp(self.comp(h, g), f):
                        raise ValidationError(f"associativity fails on ({h}, {g}, {f})")

    def hom_from(self, x: str) -> list[str]:
        return [f for y in self.objects for f in self.hom(x, y)]

    # -- nerve ----------------------------------------------------------------
    def nerve(self, cap: int | None = None) -> SSet:
        return nerve_category(self, cap)

    def chain_ref(self, chain: Sequence[str], start: str | None = None) -> SimplexRef:
        """Normal form of a composable chain ``(f1, ..., fn)`` in the nerve."""
        if not chain:
            if start is None:
                raise ArgumentError("an empty chain needs its object")
            return SimplexRef(start, (0,))
        kept = [f for f in chain if not self.is_identity(f)]
        surj = [0]
        for f in chain:
            surj.append(surj[-1] + (0 if self.is_identity(f) else 1))
        if not kept:
            return SimplexRef(self.src(chain[0]), tuple(surj))
        return SimplexRef(_chain_id(kept), tuple(surj))


def _chain_id(chain: Sequence[str]) -> str:
    if len(chain) == 1:
        return chain[0]
    return "<" + ",".join(chain) + ">"


def nerve_category(C: Category, cap: int | None = None) -> SSet:
    """The nerve through dimension ``cap``; nondegenerate simplices are chains of non-identities.

    With ``cap=None`` the full nerve is built when it is finite, otherwise the
    default cap applies.  The result records the dimension through which it is
    exact in ``_cert["nerve_exact"]``.
    """
    if cap is not None and cap < 0:
        raise ArgumentError("nerve cap must be >= 0")
    clash = set(C.objects) & set(C.morphisms)
    if clash:
        raise ValidationError(f"object and morphism names overlap: {sorted(clash)[:3]}")
    finite = C.is_acyclic()
    top = cap if cap is not None else (len(C.objects) if finite else DEFAULT_NERVE_CAP)
    arrows = [f for f in sorted(C.morphisms) if not C.is_identity(f)]
    after: dict[str, list[str]] = {}
    for f in arrows:
        after.setdefault(C.src(f), []).append(f)
    simplices: dict[int, list[str]] = {0: list(C.objects)}
    faces: dict[str, tuple[SimplexRef, ...]] = {}
    chains: dict[str, tuple[str, ...]] = {}
    level = [(f,) for f in arrows]
    n = 1
    while level and n <= top:
        for ch in level:
            nm = _chain_id(ch)
            simplices.setdefault(n, []).append(nm)
            chains[nm] = ch
            fs = []
            for i in range(n + 1):
                if i == 0:
                    sub = ch[1:]
                elif i == n:
                    sub = ch[:-1]
                else:
                    sub = ch[: i - 1] + (C.comp(ch[i], ch[i - 1]),) + ch[i + 1:]
                start = C.dst(ch[0]) if i == 0 else C.src(ch[0])
                fs.append(C.chain_ref(sub, start))
            faces[nm] = tuple(fs)
        level = [ch + (g,) for ch in level for g in after.get(C.dst(ch[-1]), ())]
        n += 1
    N = SSet(simplices, faces, name=f"N({C.name})" if C.name else "")
    N._cert["nerve_exact"] = float("inf") if not level else top
    N.category = C
    N.chains = chains
    return N


class Functor:
    """A functor given by its object and morphism assignments."""

    def __init__(self, source: Category, target: Category, obj: Mapping[str, str], mor: Mapping[str, str], check=True):
        self.source, self.target = source, target
        self.obj, self.mor = dict(obj), dict(mor)
        if check:
            self.validate()

    def validate(self) -> None:
        S, T = self.source, self.target
        for f, (s, t) in S.morphisms.items():
            g = self.mor.get(f)
            if g is None or T.morphisms.get(g) != (self.obj[s], self.obj[t]):
                raise ValidationError(f"functor is ill-typed on {f!r}")
        for x in S.objects:
            if self.mor[S.identities[x]] != T.identities[self.obj[x]]:
                raise ValidationError(f"functor does not preserve the identity of {x!r}")
        for (g, f), gf in S.table.items():
            if T.comp(self.mor[g], self.mor[f]) != self.mor[gf]:
                raise ValidationError(f"functor does not preserve {g} ∘ {f}")

    def compose(self, first: "Functor") -> "Functor":
        return Functor(
            first.source,
            self.target,
            {x: self.obj[y] for x, y in first.obj.items()},
            {f: self.mor[g] for f, g in first.mor.items()},
            check=False,
        )

    def is_faithful(self) -> bool:
        S = self.source
        for x in S.objects:
            for y in S.objects:
                imgs = [self.mor[f] for f in S.hom(x, y)]
                if len(set(imgs)) != len(imgs):
                    return False
        return True

    def nerve_map(self, NS: SSet, NT: SSet) -> SMap:
        S, T = self.source, self.target
        assign = {}
        for x in NS.ids():
            n = NS.dim_of(x)
            if n == 0:
                assign[x] = NT.vertex(self.obj[x])
            else:
                ch = NS.chains[x]
                assign[x] = T.chain_ref([self.mor[f] for f in ch], self.obj[S.src(ch[0])])
        return SMap(NS, NT, assign)


def chain_of(N: SSet, ref: SimplexRef) -> list[str]:
    """The chain of morphisms (identities included) represented by a simplex of a nerve."""
    C: Category = N.category
    n = ref.dim
    if n == 0:
        return []
    base = ref.base
    bd = N.dim_of(base)
    ch = [] if bd == 0 else list(N.chains[base])
    objs = [base] if bd == 0 else [C.src(ch[0])] + [C.dst(f) for f in ch]
    out = []
    for t in range(1, n + 1):
        a, b = ref.surj[t - 1], ref.surj[t]
        out.append(C.identities[objs[a]] if a == b else ch[a])
    return out


# -- small generators -----------------------------------------------------------
def poset_category(elements: Sequence[str], leq: Callable[[str, str], bool], name: str = "") -> Category:
    morphisms = {}
    identities = {}
    for a in elements:
        for b in elements:
            if leq(a, b):
                nm = f"{a}≤{b}"
                morphisms[nm] = (a, b)
                if a == b:
                    identities[a] = nm
    return Category.from_function(
        elements, morphisms, identities, lambda g, f: f"{morphisms[f][0]}≤{morphisms[g][1]}", name=name
    )


def cyclic_group(order: int, name: str = "") -> Category:
    """The one-object category B(Z/order); morphism ``e`` is the identity, ``σ^k`` the rest."""
    if order < 1:
        raise ArgumentError("group order must be positive")
    names = ["e"] + (["σ"] if order == 2 else [f"σ{k}" for k in range(1, order)])
    mor = {m: ("*", "*") for m in names}
    return Category.from_function(
        ["*"], mor, {"*": "e"}, lambda g, f: names[(names.index(g) + names.index(f)) % order], name=name or f"BZ/{order}"
    )


def iso_groupoid(a: str = "a", b: str = "b") -> Category:
    """Two objects joined by a single isomorphism ``f`` with inverse ``g``."""
    mor = {f"1{a}": (a, a), f"1{b}": (b, b), "f": (a, b), "g": (b, a)}
    table = {}
    ident = {a: f"1{a}", b: f"1{b}"}
    for h, (s, t) in mor.items():
        for k, (s2, t2) in mor.items():
            if s2 == t:
                table[(k, h)] = ident[s] if t2 == s else ("f" if s == a else "g")
    return Category([a, b], mor, ident, table, name="Iso")


def discrete_category(objects: Iterable[str], name: str = "") -> Category:
    objects = list(objects)
    ident = {x: f"1{x}" for x in objects}
    mor = {ident[x]: (x, x) for x in objects}
    return Category(objects, mor, ident, {(m, m): m for m in mor}, name=name)


def product_category(C: Category, D: Category, name: str = "") -> Category:
    objects = [f"({x},{y})" for x, y in iproduct(C.objects, D.objects)]
    mor = {}
    for f, (s, t) in C.morphisms.items():
        for g, (s2, t2) in D.morphisms.items():
            mor[f"({f},{g})"] = (f"({s},{s2})", f"({t},{t2})")
    ident = {f"({x},{y})": f"({C.identities[x]},{D.identities[y]})" for x, y in iproduct(C.objects, D.objects)}
    split = {f"({f},{g})": (f, g) for f in C.morphisms for g in D.morphisms}

    def comp(h, k):
        (f2, g2), (f1, g1) = split[h], split[k]
        return f"({C.comp(f2, f1)},{D.comp(g2, g1)})"

    P = Category.from_function(objects, mor, ident, comp, name=name or f"{C.name}×{D.name}")
    P.split = split
    return P


def projection_functor(P: Category, C: Category, D: Category) -> Functor:
    """The first projection ``C × D -> C`` of a category built by :func:`product_category`."""
    obj = {f"({x},{y})": x for x, y in iproduct(C.objects, D.objects)}
    return Functor(P, C, obj, {m: fg[0] for m, fg in P.split.items()})
