"""Finite simplicial sets in Eilenberg-Zilber normal form.

A simplex is stored as a pair ``(base, surj)``: ``base`` names a nondegenerate
simplex of dimension ``k`` and ``surj`` is a monotone surjection ``[n] -> [k]``
written as a tuple of length ``n + 1``.  The degeneracy word of the simplex is
recovered from the positions where ``surj`` repeats a value, so every simplex
has exactly one representation.

All simplicial operators are realised through :meth:`SSet.apply`, which acts by
an arbitrary monotone map ``[m] -> [n]`` and walks down the face table whenever
the composite is no longer surjective.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import ValidationError


class SimplexRef(NamedTuple):
    """A simplex in normal form: a nondegenerate ``base`` pulled back along ``surj``."""

    base: str
    surj: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.surj) - 1

    @property
    def base_dim(self) -> int:
        return self.surj[-1]

    @property
    def degeneracies(self) -> tuple[int, ...]:
        """The strictly decreasing word ``j1 > ... > jk`` with ``self = s_j1 ... s_jk base``."""
        s = self.surj
        return tuple(j for j in range(len(s) - 2, -1, -1) if s[j] == s[j + 1])

    @property
    def is_degenerate(self) -> bool:
        return self.surj[-1] != len(self.surj) - 1

    @classmethod
    def nondegenerate(cls, base: str, dim: int) -> "SimplexRef":
        return cls(base, tuple(range(dim + 1)))

    @classmethod
    def from_degeneracies(cls, base: str, base_dim: int, degens: Sequence[int]) -> "SimplexRef":
        """Build from an Eilenberg-Zilber word (applied right to left)."""
        degens = list(degens)
        if any(a <= b for a, b in zip(degens, degens[1:])):
            raise ValidationError(f"degeneracy word {degens} is not strictly decreasing")
        surj = tuple(range(base_dim + 1))
        for j in reversed(degens):
            if j < 0 or j > len(surj) - 1:
                raise ValidationError(f"degeneracy s_{j} out of range on a {len(surj) - 1}-simplex")
            surj = compose_surj(surj, codegeneracy(len(surj) - 1, j))
        return cls(base, surj)


def ref_key(ref: SimplexRef):
    return (len(ref.surj), ref.base, ref.surj)


def coface(n: int, i: int) -> tuple[int, ...]:
    """The injection ``[n-1] -> [n]`` skipping ``i``."""
    return tuple(t if t < i else t + 1 for t in range(n))


def codegeneracy(n: int, j: int) -> tuple[int, ...]:
    """The surjection ``[n+1] -> [n]`` hitting ``j`` twice."""
    return tuple(t if t <= j else t - 1 for t in range(n + 2))


def compose_surj(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """``outer ∘ inner`` for maps written as tuples."""
    return tuple(outer[t] for t in inner)


def monotone_maps(m: int, n: int) -> Iterator[tuple[int, ...]]:
    """All monotone maps ``[m] -> [n]`` in lexicographic order."""

    def rec(prefix, lo):
        if len(prefix) == m + 1:
            yield tuple(prefix)
            return
        for v in range(lo, n + 1):
            prefix.append(v)
            yield from rec(prefix, v)
            prefix.pop()

    yield from rec([], 0)


def surjections(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Monotone surjections ``[n] -> [k]`` in lexicographic order."""
    for f in monotone_maps(n, k):
        if f[0] == 0 and f[-1] == k and all(b - a <= 1 for a, b in zip(f, f[1:])):
            yield f


def chain_name(names: Sequence[str]) -> str:
    if all(len(x) == 1 for x in names):
        return "".join(names)
    return ",".join(names)


class SSet:
    """A finite simplicial set presented by its nondegenerate simplices and face table.

    ``simplices`` maps each dimension to the ids of nondegenerate simplices; ``faces``
    maps each id of positive dimension to its ``n + 1`` faces as :class:`SimplexRef`.
    Instances are treated as immutable; derived data is memoised on first use.
    """

    def __init__(
        self,
        simplices: Mapping[int, Iterable[str]],
        faces: Mapping[str, Sequence[SimplexRef]],
        labels: Mapping[str, str] | None = None,
        name: str = "",
        check: bool = False,
    ):
        by_dim: dict[int, tuple[str, ...]] = {}
        dim_of: dict[str, int] = {}
        for n in sorted(simplices):
            ids = tuple(sorted(simplices[n]))
            if not ids:
                continue
            if n < 0:
                raise ValidationError(f"negative dimension {n}")
            by_dim[n] = ids
            for x in ids:
                if x in dim_of:
                    raise ValidationError(f"simplex id {x!r} appears twice")
                dim_of[x] = n
        self._by_dim = by_dim
        self._dim_of = dim_of
        self._faces = {x: tuple(faces[x]) for x in dim_of if dim_of[x] > 0}
        self.labels = dict(labels or {})
        self.name = name
        self._apply_memo: dict = {}
        self._all_memo: dict[int, tuple[SimplexRef, ...]] = {}
        self._index_memo: dict[int, dict] = {}
        self._cert: dict = {}
        if check:
            self.validate()

    # -- basic queries ------------------------------------------------------
    @property
    def dim(self) -> int:
        return max(self._by_dim, default=-1)

    @property
    def dims(self) -> dict[int, tuple[str, ...]]:
        return dict(self._by_dim)

    def nondegenerate(self, n: int) -> tuple[str, ...]:
        return self._by_dim.get(n, ())

    def ids(self) -> list[str]:
        return [x for n in sorted(self._by_dim) for x in self._by_dim[n]]

    def __contains__(self, x: str) -> bool:
        return x in self._dim_of

    def dim_of(self, x: str) -> int:
        return self._dim_of[x]

    def counts(self, upto: int | None = None) -> list[int]:
        top = self.dim if upto is None else upto
        return [len(self._by_dim.get(n, ())) for n in range(top + 1)]

    def is_empty(self) -> bool:
        return not self._dim_of

    def faces_of(self, x: str) -> tuple[SimplexRef, ...]:
        return self._faces.get(x, ())

    def ref(self, x: str) -> SimplexRef:
        return SimplexRef.nondegenerate(x, self._dim_of[x])

    def vertex(self, v: str) -> SimplexRef:
        return SimplexRef(v, (0,))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<SSet{label} counts={self.counts()}>"

    # -- simplicial operators ----------------------------------------------
    def apply(self, ref: SimplexRef, theta: Sequence[int]) -> SimplexRef:
        """Act on ``ref`` by the monotone map ``theta: [m] -> [dim ref]``."""
        key = (ref, tuple(theta))
        hit = self._apply_memo.get(key)
        if hit is not None:
            return hit
        rho = tuple(ref.surj[t] for t in theta)
        base = ref.base
        while True:
            k = self._dim_of[base]
            if len(set(rho)) == k + 1:
                out = SimplexRef(base, rho)
                break
            present = set(rho)
            j = next(v for v in range(k + 1) if v not in present)
            face = self._faces[base][j]
            rho = tuple(face.surj[v if v < j else v - 1] for v in rho)
            base = face.base
        self._apply_memo[key] = out
        return out

    def face(self, ref: SimplexRef, i: int) -> SimplexRef:
        n = ref.dim
        if not 0 <= i <= n or n == 0:
            raise ValidationError(f"face d_{i} undefined on a {n}-simplex")
        return self.apply(ref, coface(n, i))

    def degen(self, ref: SimplexRef, j: int) -> SimplexRef:
        n = ref.dim
        if not 0 <= j <= n:
            raise ValidationError(f"degeneracy s_{j} undefined on a {n}-simplex")
        return self.apply(ref, codegeneracy(n, j))

    def faces(self, ref: SimplexRef) -> tuple[SimplexRef, ...]:
        n = ref.dim
        if n == 0:
            return ()
        return tuple(self.apply(ref, coface(n, i)) for i in range(n + 1))

    def vertices_of(self, ref: SimplexRef) -> tuple[str, ...]:
        return tuple(self.apply(ref, (t,)).base for t in range(ref.dim + 1))

    def constant(self, v: str, n: int) -> SimplexRef:
        return SimplexRef(v, (0,) * (n + 1))

    def all_simplices(self, n: int) -> tuple[SimplexRef, ...]:
        """Every n-simplex (degenerate ones included) in canonical order."""
        hit = self._all_memo.get(n)
        if hit is None:
            out = []
            for k in range(min(n, self.dim) + 1):
                for s in surjections(n, k):
                    out.extend(SimplexRef(b, s) for b in self._by_dim.get(k, ()))
            hit = tuple(sorted(out, key=ref_key))
            self._all_memo[n] = hit
        return hit

    def by_faces(self, n: int) -> dict[tuple[SimplexRef, ...], list[SimplexRef]]:
        """Index of all n-simplices by their face tuple (n >= 1)."""
        hit = self._index_memo.get(n)
        if hit is None:
            hit = defaultdict(list)
            for r in self.all_simplices(n):
                hit[self.faces(r)].append(r)
            hit = dict(hit)
            self._index_memo[n] = hit
        return hit

    # -- laws ----------------------------------------------------------------
    def validate(self) -> None:
        """Check the face table is total, well-typed, and satisfies d_i d_j = d_{j-1} d_i."""
        for x, n in self._dim_of.items():
            if n == 0:
                continue
            fs = self._faces.get(x)
            if fs is None or len(fs) != n + 1:
                raise ValidationError(f"simplex {x!r} needs {n + 1} faces")
            for f in fs:
                if f.base not in self._dim_of:
                    raise ValidationError(f"face of {x!r} references unknown simplex {f.base!r}")
                if f.dim != n - 1 or self._dim_of[f.base] != f.surj[-1] or not _is_surj(f.surj):
                    raise ValidationError(f"malformed face {f} of {x!r}")
        for x, n in self._dim_of.items():
            if n < 2:
                continue
            r = self.ref(x)
            for j in range(n + 1):
                for i in range(j):
                    lhs = self.face(self.face(r, j), i)
                    rhs = self.face(self.face(r, i), j - 1)
                    if lhs != rhs:
                        raise ValidationError(
                            f"simplicial identity d_{i} d_{j} = d_{j - 1} d_{i} fails on {x!r}: {lhs} != {rhs}"
                        )


def _is_surj(s: Sequence[int]) -> bool:
    return s[0] == 0 and all(b - a in (0, 1) for a, b in zip(s, s[1:]))


class SMap:
    """A simplicial map given on nondegenerate simplices of the source."""

    def __init__(self, source: SSet, target: SSet, assign: Mapping[str, SimplexRef], check: bool = False):
        self.source = source
        self.target = target
        self.assign = dict(assign)
        if check:
            self.validate()

    def __call__(self, ref: SimplexRef) -> SimplexRef:
        return self.target.apply(self.assign[ref.base], ref.surj)

    def key(self) -> tuple:
        """Canonical hashable value: images of nondegenerate simplices in source order."""
        a = self.assign
        return tuple(a[x] for x in self.source.ids())

    def sort_key(self):
        return tuple(ref_key(r) for r in self.key())

    def __eq__(self, other):
        return isinstance(other, SMap) and self.assign == other.assign

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<SMap {self.source.name or '?'} -> {self.target.name or '?'}>"

    def validate(self) -> None:
        src, tgt = self.source, self.target
        for x in src.ids():
            if x not in self.assign:
                raise ValidationError(f"map undefined on {x!r}")
            img = self.assign[x]
            n = src.dim_of(x)
            if img.dim != n or img.base not in tgt:
                raise ValidationError(f"image of {x!r} has wrong dimension or base")
            if n == 0:
                continue
            for i, f in enumerate(src.faces_of(x)):
                if self(f) != tgt.face(img, i):
                    raise ValidationError(f"map does not commute with d_{i} on {x!r}")

    def compose(self, first: "SMap") -> "SMap":
        """``self ∘ first``."""
        return SMap(first.source, self.target, {x: self(r) for x, r in first.assign.items()})

    def restrict(self, incl: "SMap") -> "SMap":
        return self.compose(incl)

    def is_injective(self) -> bool:
        seen = set()
        for r in self.assign.values():
            if r.is_degenerate or r in seen:
                return False
            seen.add(r)
        return True

    def is_isomorphism(self) -> bool:
        if not self.is_injective():
            return False
        return len(self.assign) == sum(self.target.counts())


def identity_map(K: SSet) -> SMap:
    return SMap(K, K, {x: K.ref(x) for x in K.ids()})


def yoneda_map(C: SSet, ref: SimplexRef, delta: SSet) -> SMap:
    """The map ``Δ^n -> C`` classifying ``ref``; ``delta`` is Δ^n or a subcomplex with integer vertex names."""
    assign = {}
    for x in delta.ids():
        verts = tuple(int(v) for v in delta.vertices_of(delta.ref(x)))
        assign[x] = C.apply(ref, verts)
    return SMap(delta, C, assign)


def build_from_levels(
    levels: Mapping[int, Sequence[Hashable]],
    face: Callable[[Hashable, int], Hashable],
    degen: Callable[[Hashable, int], Hashable],
    name_of: Callable[[Hashable], str],
    name: str = "",
) -> tuple[SSet, dict]:
    """Assemble an :class:`SSet` from explicit simplex sets with face and degeneracy maps.

    ``levels[n]`` must list every n-simplex (degenerate ones included) as a
    hashable key; ``face(x, i)`` and ``degen(x, j)`` return keys of the
    neighbouring levels.  A key is degenerate iff ``x == s_j d_j x`` for some j.
    Returns the simplicial set and a ``locate`` table from keys to normal forms.
    """
    locate: dict = {}
    simplices: dict[int, list[str]] = {}
    faces: dict[str, tuple[SimplexRef, ...]] = {}
    used_names: dict[str, Hashable] = {}
    for n in sorted(levels):
        for x in levels[n]:
            if x in locate:
                continue
            nf = None
            if n > 0:
                for j in range(n):
                    y = face(x, j)
                    if degen(y, j) == x:
                        inner = locate[y]
                        nf = SimplexRef(inner.base, compose_surj(inner.surj, codegeneracy(n - 1, j)))
                        break
            if nf is None:
                nm = name_of(x)
                if nm in used_names and used_names[nm] != x:
                    raise ValidationError(f"name clash {nm!r} while assembling {name or 'simplicial set'}")
                used_names[nm] = x
                simplices.setdefault(n, []).append(nm)
                if n > 0:
                    faces[nm] = tuple(locate[face(x, i)] for i in range(n + 1))
                nf = SimplexRef.nondegenerate(nm, n)
            locate[x] = nf
    return SSet(simplices, faces, name=name), locate
