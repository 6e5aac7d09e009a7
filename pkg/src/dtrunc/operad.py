"""Strict colored operads, their operadic nerves over a truncated Fin_*, and d-operads.

Everything here works with 1-categories: the operadic nerve of a strict colored
operad is the nerve of an ordinary category, so coCartesian edges, the Segal
condition and tuple objects are checked on hom-sets (all mapping spaces are
discrete).  Fin_* is cut off at arity ``N``; every check is arity-local.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Mapping, Sequence

from .category import Category, Functor
from .errors import ArgumentError, DomainError, ValidationError

DEFAULT_ARITY_CAP = 3


# -- Fin_* -----------------------------------------------------------------------
def fin_obj(n: int) -> str:
    return f"<{n}>"


def fin_id(n: int, m: int, images: Sequence[int]) -> str:
    return f"{n}>{m}:" + "".join(map(str, images))


def fin_parse(f: str) -> tuple[int, int, tuple[int, ...]]:
    nm, imgs = f.split(":")
    n, m = nm.split(">")
    return int(n), int(m), tuple(int(c) for c in imgs)


class FinStar(Category):
    """Pointed finite sets ⟨0⟩..⟨N⟩; a map is the tuple of images of 1..n, with 0 for the base point."""

    def __init__(self, N: int = DEFAULT_ARITY_CAP):
        if N < 0 or N > 9:
            raise ArgumentError("arity cap must be between 0 and 9")
        self.N = N
        objects = [fin_obj(n) for n in range(N + 1)]
        mor = {}
        for n in range(N + 1):
            for m in range(N + 1):
                for imgs in product(range(m + 1), repeat=n):
                    mor[fin_id(n, m, imgs)] = (fin_obj(n), fin_obj(m))
        ident = {fin_obj(n): fin_id(n, n, range(1, n + 1)) for n in range(N + 1)}

        def comp(g, f):
            n, _, fi = fin_parse(f)
            _, k, gi = fin_parse(g)
            return fin_id(n, k, [0 if a == 0 else gi[a - 1] for a in fi])

        built = Category.from_function(objects, mor, ident, comp, name=f"Fin*≤{N}", check=False)
        self.__dict__.update(built.__dict__)

    def rho(self, n: int, i: int) -> str:
        """ρ^i: ⟨n⟩ -> ⟨1⟩ with i -> 1 and everything else to the base point."""
        return fin_id(n, 1, [1 if k == i else 0 for k in range(1, n + 1)])

    def active(self, n: int) -> str:
        return fin_id(n, 1, [1] * n)


def classify(f: str) -> str:
    """``inert``, ``active``, ``both`` or ``neither`` for a pointed map id."""
    n, m, imgs = fin_parse(f)
    inert = all(imgs.count(j) == 1 for j in range(1, m + 1))
    active = 0 not in imgs
    if inert and active:
        return "both"
    return "inert" if inert else ("active" if active else "neither")


def is_inert(f: str) -> bool:
    return classify(f) in ("inert", "both")


def is_active(f: str) -> bool:
    return classify(f) in ("active", "both")


# -- strict colored operads ----------------------------------------------------------
def _expand_perm(perm: Sequence[int], i: int, l: int) -> tuple[int, ...]:
    """Block permutation for ``(φ·π) ∘_i ψ = (φ ∘_{π[i]} ψ)·π̃`` with ψ of arity l."""
    p = perm[i]
    out = []
    for t, s in enumerate(perm):
        if t == i:
            out.extend(p + r for r in range(l))
        else:
            out.append(s if s < p else s + l - 1)
    return tuple(out)


def _inner_perm(k: int, i: int, tau: Sequence[int]) -> tuple[int, ...]:
    """Permutation for ``φ ∘_i (ψ·τ) = (φ ∘_i ψ)·τ̃`` with φ of arity k."""
    l = len(tau)
    return tuple(range(i)) + tuple(i + t for t in tau) + tuple(range(i + l, k + l - 1))


class ColoredOperad:
    """A strict colored operad with explicit partial-composition and symmetry tables.

    ``compose[(outer, i, inner)]`` is ``outer ∘_i inner`` (0-based slot); ``symmetry[(op, perm)]``
    is ``op·perm`` where slot t of ``op·perm`` is slot ``perm[t]`` of ``op``.
    Tables need only cover results of arity at most ``arity_cap``.
    """

    def __init__(
        self,
        colors: Sequence[str],
        ops: Mapping[str, tuple[Sequence[str], str]],
        compose: Mapping[tuple[str, int, str], str],
        symmetry: Mapping[tuple[str, tuple[int, ...]], str],
        name: str = "",
        arity_cap: int = DEFAULT_ARITY_CAP,
        check: bool = True,
    ):
        self.colors = tuple(colors)
        self.ops = {k: (tuple(v[0]), v[1]) for k, v in ops.items()}
        self.table = dict(compose)
        self.sym = {(k[0], tuple(k[1])): v for k, v in symmetry.items()}
        self.name = name
        self.N = arity_cap
        self.by_sig: dict[tuple, list[str]] = {}
        for o, sig in sorted(self.ops.items()):
            if len(sig[0]) <= self.N:
                self.by_sig.setdefault(sig, []).append(o)
        self.identities = {}
        for c in self.colors:
            for u in self.by_sig.get(((c,), c), []):
                if self._acts_as_identity(u, c):
                    self.identities[c] = u
                    break
        if check:
            self.validate()

    def arity(self, op: str) -> int:
        return len(self.ops[op][0])

    def comp(self, outer: str, i: int, inner: str) -> str:
        try:
            return self.table[(outer, i, inner)]
        except KeyError:
            raise ValidationError(f"composition {outer} ∘_{i} {inner} missing") from None

    def act(self, op: str, perm: Sequence[int]) -> str:
        perm = tuple(perm)
        if perm == tuple(range(len(perm))):
            return op
        try:
            return self.sym[(op, perm)]
        except KeyError:
            raise ValidationError(f"symmetric action {op}·{list(perm)} missing") from None

    def gamma(self, outer: str, inners: Sequence[str]) -> str:
        # insert small arities first so intermediate results stay under the cap
        out = outer
        done: list[int] = []
        for t in sorted(range(len(inners)), key=lambda t: (self.arity(inners[t]), -t)):
            pos = t + sum(self.arity(inners[s]) - 1 for s in done if s < t)
            out = self.comp(out, pos, inners[t])
            done.append(t)
        return out

    def _acts_as_identity(self, u: str, c: str) -> bool:
        for o, (ins, out) in self.ops.items():
            if len(ins) > self.N:
                continue
            if out == c and self.table.get((u, 0, o), o) != o:
                return False
            for i, ci in enumerate(ins):
                if ci == c and self.table.get((o, i, u), o) != o:
                    return False
        return True

    def _composable(self):
        for a, (ins_a, _) in sorted(self.ops.items()):
            if len(ins_a) > self.N:
                continue
            for i, ci in enumerate(ins_a):
                for b, (ins_b, out_b) in sorted(self.ops.items()):
                    if out_b == ci and len(ins_a) + len(ins_b) - 1 <= self.N:
                        yield a, i, b

    def validate(self) -> None:
        for c in self.colors:
            if c not in self.identities:
                raise ValidationError(f"color {c!r} has no identity operation")
        for o, (ins, out) in self.ops.items():
            if out not in self.colors or any(c not in self.colors for c in ins):
                raise ValidationError(f"operation {o!r} uses an unknown color")
        for a, i, b in self._composable():
            r = self.comp(a, i, b)
            ins_a, out_a = self.ops[a]
            ins_b, _ = self.ops[b]
            if self.ops.get(r) != (ins_a[:i] + ins_b + ins_a[i + 1:], out_a):
                raise ValidationError(f"{a} ∘_{i} {b} = {r} has the wrong signature")
        for o, (ins, out) in self.ops.items():
            k = len(ins)
            if k > self.N:
                continue
            for perm in permutations(range(k)):
                r = self.act(o, perm)
                if self.ops.get(r) != (tuple(ins[p] for p in perm), out):
                    raise ValidationError(f"{o}·{list(perm)} = {r} has the wrong signature")
                for perm2 in permutations(range(k)):
                    lhs = self.act(r, perm2)
                    rhs = self.act(o, tuple(perm[p] for p in perm2))
                    if lhs != rhs:
                        raise ValidationError(f"symmetric action is not associative at {o!r}")
        comps = list(self._composable())
        for a, i, b in comps:
            ab = self.comp(a, i, b)
            lb = self.arity(b)
            for j in range(lb):
                for c in self.by_sig_out(self.ops[b][0][j]):
                    if self.arity(ab) + self.arity(c) - 1 > self.N:
                        continue
                    if self.comp(ab, i + j, c) != self.comp(a, i, self.comp(b, j, c)):
                        raise ValidationError(f"sequential associativity fails on ({a}, {b}, {c})")
            for k in range(i + 1, self.arity(a)):
                for c in self.by_sig_out(self.ops[a][0][k]):
                    if self.arity(ab) + self.arity(c) - 1 > self.N or self.arity(a) + self.arity(c) - 1 > self.N:
                        continue
                    lhs = self.comp(ab, k + lb - 1, c)
                    rhs = self.comp(self.comp(a, k, c), i, b)
                    if lhs != rhs:
                        raise ValidationError(f"parallel associativity fails on ({a}, {b}, {c})")
            ka = self.arity(a)
            for perm in permutations(range(ka)):
                ap = self.act(a, perm)
                # slot i of a·perm carries color of slot perm[i] of a
                if self.ops[ap][0][i] != self.ops[b][1]:
                    continue
                lhs = self.comp(ap, i, b)
                rhs = self.act(self.comp(a, perm[i], b), _expand_perm(perm, i, lb))
                if lhs != rhs:
                    raise ValidationError(f"equivariance fails on ({a}·{list(perm)}) ∘_{i} {b}")
            for tau in permutations(range(lb)):
                lhs = self.comp(a, i, self.act(b, tau))
                rhs = self.act(ab, _inner_perm(ka, i, tau))
                if lhs != rhs:
                    raise ValidationError(f"equivariance fails on {a} ∘_{i} ({b}·{list(tau)})")

    def by_sig_out(self, color: str) -> list[str]:
        return sorted(o for o, (ins, out) in self.ops.items() if out == color and len(ins) <= self.N)


def comm(N: int = DEFAULT_ARITY_CAP) -> ColoredOperad:
    """The commutative operad: one operation ``m_k`` in each arity."""
    ops = {f"m{k}": (("X",) * k, "X") for k in range(N + 1)}
    table = {}
    for k in range(1, N + 1):
        for l in range(N + 1):
            if k + l - 1 <= N:
                for i in range(k):
                    table[(f"m{k}", i, f"m{l}")] = f"m{k + l - 1}"
    sym = {(f"m{k}", p): f"m{k}" for k in range(N + 1) for p in permutations(range(k))}
    return ColoredOperad(["X"], ops, table, sym, name="Comm", arity_cap=N)


def _word(w: Sequence[int]) -> str:
    return "a" + "".join(map(str, w))


def ass(N: int = DEFAULT_ARITY_CAP) -> ColoredOperad:
    """The associative operad: arity-k operations are the orders ``x_{w0} ... x_{w(k-1)}``."""
    ops = {}
    for k in range(N + 1):
        for w in permutations(range(k)):
            ops[_word(w)] = (("X",) * k, "X")
    table = {}
    for k in range(1, N + 1):
        for w in permutations(range(k)):
            for l in range(N + 2 - k):
                for v in permutations(range(l)):
                    for i in range(k):
                        out = []
                        for a in w:
                            if a == i:
                                out.extend(i + b for b in v)
                            else:
                                out.append(a if a < i else a + l - 1)
                        table[(_word(w), i, _word(v))] = _word(out)
    sym = {}
    for k in range(N + 1):
        for w in permutations(range(k)):
            for p in permutations(range(k)):
                inv = [0] * k
                for t, s in enumerate(p):
                    inv[s] = t
                sym[(_word(w), p)] = _word([inv[a] for a in w])
    return ColoredOperad(["X"], ops, table, sym, name="Ass", arity_cap=N)


def triv(N: int = DEFAULT_ARITY_CAP) -> ColoredOperad:
    """The trivial operad: only the identity operation."""
    return ColoredOperad(["X"], {"1": (("X",), "X")}, {("1", 0, "1"): "1"}, {("1", (0,)): "1"}, name="Triv", arity_cap=N)


def idem(N: int = DEFAULT_ARITY_CAP) -> ColoredOperad:
    """Unary operations ``1`` and an idempotent ``e``; used as a negative control."""
    ops = {"1": (("X",), "X"), "e": (("X",), "X")}
    table = {("1", 0, "1"): "1", ("1", 0, "e"): "e", ("e", 0, "1"): "e", ("e", 0, "e"): "e"}
    return ColoredOperad(["X"], ops, table, {("1", (0,)): "1", ("e", (0,)): "e"}, name="Idem", arity_cap=N)


# -- operadic nerves ----------------------------------------------------------------
def obj_name(colors: Sequence[str]) -> str:
    return "(" + ",".join(colors) + ")"


@dataclass
class OperadData:
    """A category ``total`` with a functor ``p`` to truncated Fin_* and validation certificates."""

    total: Category
    fin: FinStar
    p: Functor
    name: str = ""
    source: ColoredOperad | None = None
    certs: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return self.fin.N

    def over(self, x: str) -> int:
        return int(self.p.obj[x][1:-1])

    def fibre(self, n: int) -> list[str]:
        return [x for x in self.total.objects if self.over(x) == n]

    def hom_over(self, x: str, y: str, f: str) -> list[str]:
        return [a for a in self.total.hom(x, y) if self.p.mor[a] == f]


def operadic_nerve(O: ColoredOperad, N: int | None = None) -> OperadData:
    """The category O^⊗ over Fin_*≤N of a strict colored operad."""
    N = O.N if N is None else N
    if N > O.N:
        raise ArgumentError("arity cap exceeds the operad's tables")
    F = FinStar(N)
    objs = []
    for n in range(N + 1):
        for cs in product(O.colors, repeat=n):
            objs.append(cs)
    names = {cs: obj_name(cs) for cs in objs}
    mor: dict[str, tuple[str, str]] = {}
    data: dict[str, tuple] = {}
    for S in objs:
        n = len(S)
        for T in objs:
            m = len(T)
            for imgs in product(range(m + 1), repeat=n):
                fid = fin_id(n, m, imgs)
                choices = []
                for j in range(1, m + 1):
                    sig = (tuple(S[i] for i in range(n) if imgs[i] == j), T[j - 1])
                    choices.append(O.by_sig.get(sig, []))
                for ops in product(*choices):
                    mid = f"{names[S]}{fid}[{';'.join(ops)}]"
                    mor[mid] = (names[S], names[T])
                    data[mid] = (S, T, imgs, ops, fid)
    index = {(d[0], d[1], d[4], d[3]): k for k, d in data.items()}
    ident = {}
    for S in objs:
        n = len(S)
        ident[names[S]] = index[(S, S, fin_id(n, n, range(1, n + 1)), tuple(O.identities[c] for c in S))]

    def comp(g, f):
        S, T, fi, fops, _ = data[f]
        _, U, gi, gops, _ = data[g]
        n = len(S)
        hi = [0 if a == 0 else gi[a - 1] for a in fi]
        ops = []
        for k in range(1, len(U) + 1):
            js = [j for j in range(1, len(T) + 1) if gi[j - 1] == k]
            order = [i for j in js for i in range(n) if fi[i] == j]
            op = O.gamma(gops[k - 1], [fops[j - 1] for j in js])
            srt = sorted(order)
            perm = tuple(order.index(i) for i in srt)
            ops.append(O.act(op, perm))
        return index[(S, U, fin_id(n, len(U), hi), tuple(ops))]

    total = Category.from_function([names[s] for s in objs], mor, ident, comp, name=f"{O.name}⊗", check=False)
    p = Functor(
        total,
        F,
        {names[s]: fin_obj(len(s)) for s in objs},
        {k: d[4] for k, d in data.items()},
        check=False,
    )
    out = OperadData(total, F, p, name=O.name, source=O)
    out.certs["ops"] = {k: d[3] for k, d in data.items()}
    return out


def empty_operad(N: int = DEFAULT_ARITY_CAP) -> OperadData:
    F = FinStar(N)
    C = Category([], {}, {}, {}, name="∅")
    return OperadData(C, F, Functor(C, F, {}, {}), name="∅")


def fin_operad(N: int = DEFAULT_ARITY_CAP) -> OperadData:
    """Fin_* over itself via the identity (the terminal operad)."""
    F = FinStar(N)
    return OperadData(F, F, Functor(F, F, {x: x for x in F.objects}, {f: f for f in F.morphisms}, check=False), name="Fin*")


# -- coCartesian morphisms and validation ----------------------------------------------------
def is_cocartesian(O: OperadData, a: str) -> bool:
    """``a: X -> Y`` is p-coCartesian iff ``- ∘ a`` is a bijection over every ``u: pY -> pZ``."""
    C, p = O.total, O.p
    X, Y = C.src(a), C.dst(a)
    pa = p.mor[a]
    for Z in C.objects:
        by_u: dict[str, list[str]] = {}
        for b in C.hom(Y, Z):
            by_u.setdefault(p.mor[b], []).append(b)
        targets: dict[str, list[str]] = {}
        for c in C.hom(X, Z):
            targets.setdefault(p.mor[c], []).append(c)
        for u in O.fin.hom(p.obj[Y], p.obj[Z]):
            imgs = [C.comp(b, a) for b in by_u.get(u, [])]
            want = targets.get(O.fin.comp(u, pa), [])
            if len(set(imgs)) != len(imgs) or sorted(imgs) != sorted(want):
                return False
    return True


def inert_lifts(O: OperadData) -> dict[tuple[str, str], str]:
    """For each object X and inert f out of p(X), the least coCartesian lift (raises if missing)."""
    hit = O.certs.get("inert_lifts")
    if hit is not None:
        return hit
    C = O.total
    table = {}
    for X in C.objects:
        for f in O.fin.hom_from(O.p.obj[X]):
            if not is_inert(f):
                continue
            cands = sorted(a for a in C.hom_from(X) if O.p.mor[a] == f and is_cocartesian(O, a))
            if not cands:
                raise ValidationError(f"no coCartesian lift of inert {f} at {X}")
            table[(X, f)] = cands[0]
    O.certs["inert_lifts"] = table
    return table


def is_inert_morphism(O: OperadData, a: str) -> bool:
    return is_inert(O.p.mor[a]) and is_cocartesian(O, a)


def tuple_objects(O: OperadData, colors: Sequence[str]) -> list[str]:
    """Objects X over ⟨n⟩ whose chosen lifts over the ρ^i end at ``colors`` (least first)."""
    lifts = inert_lifts(O)
    n = len(colors)
    out = []
    for X in O.fibre(n):
        if all(O.total.dst(lifts[(X, O.fin.rho(n, i + 1))]) == c for i, c in enumerate(colors)):
            out.append(X)
    return sorted(out)


def validate_operad(O: OperadData) -> dict:
    """Run the strict checks: functoriality of p, inert lifts, Segal bijections, tuple objects."""
    C, F, p = O.total, O.fin, O.p
    p.validate()
    lifts = inert_lifts(O)
    segal_ok = True
    witness = None
    for Y in C.objects:
        n = O.over(Y)
        legs = [lifts[(Y, F.rho(n, i))] for i in range(1, n + 1)]
        for X in C.objects:
            for f in F.hom(p.obj[X], p.obj[Y]):
                homs = O.hom_over(X, Y, f)
                images = [tuple(C.comp(leg, a) for leg in legs) for a in homs]
                factors = [O.hom_over(X, C.dst(leg), F.comp(F.rho(n, i + 1), f)) for i, leg in enumerate(legs)]
                expected = set(product(*factors))
                if len(set(images)) != len(images) or set(images) != expected:
                    segal_ok = False
                    witness = witness or {"X": X, "Y": Y, "f": f}
    colors = O.fibre(1)
    tuples_ok = True
    for n in range(O.N + 1):
        for cs in product(colors, repeat=n):
            if not tuple_objects(O, cs):
                tuples_ok = False
                witness = witness or {"tuple": list(cs)}
    closed = True
    for (X, f), a in lifts.items():
        Y = C.dst(a)
        for (Y2, g), b in lifts.items():
            if Y2 == Y and not is_cocartesian(O, C.comp(b, a)):
                closed = False
    ok = segal_ok and tuples_ok and closed
    rep = {
        "operad": O.name,
        "ok": ok,
        "arity_cap": O.N,
        "mode": "strict",
        "inert_lifts": len(lifts),
        "segal": segal_ok,
        "tuple_objects": tuples_ok,
        "inert_composites": closed,
        "witness": witness,
    }
    O.certs["validation"] = rep
    return rep


# -- d-operads ----------------------------------------------------------------------
def is_d_operad(O: OperadData, d: int) -> bool:
    """Clause (1) holds for every d >= 1 since O^⊗ is the nerve of a category in strict mode."""
    if d >= 1:
        return True
    if d == 0:
        return O.total.is_skeletal() and O.p.is_faithful()
    if d == -1:
        if not O.total.objects:
            return True
        obj_bij = sorted(O.p.obj.values()) == sorted(O.fin.objects)
        mor_bij = sorted(O.p.mor.values()) == sorted(O.fin.morphisms)
        return obj_bij and mor_bij
    raise ArgumentError("d-operads need d >= -1")


@dataclass
class OperadTruncation:
    operad: OperadData
    theta: Functor
    d: int


def h_d_operad(O: OperadData, d: int) -> OperadTruncation:
    hit = O.certs.get(("h", d))
    if hit is None:
        hit = O.certs[("h", d)] = _h_d_operad(O, d)
    return hit


def _h_d_operad(O: OperadData, d: int) -> OperadTruncation:
    C, F = O.total, O.fin
    if d >= 1:
        ident = Functor(C, C, {x: x for x in C.objects}, {a: a for a in C.morphisms}, check=False)
        return OperadTruncation(O, ident, d)
    if d == -1:
        if not C.objects:
            return OperadTruncation(O, Functor(C, C, {}, {}, check=False), d)
        Fo = fin_operad(O.N)
        return OperadTruncation(Fo, Functor(C, Fo.total, dict(O.p.obj), dict(O.p.mor), check=False), d)
    if d != 0:
        raise ArgumentError("h_d of an operad needs d >= -1")
    # identify isomorphic objects; transport is unique only along isomorphisms over identities
    rep = {}
    for x in C.objects:
        cls = sorted(y for y in C.objects if y == x or C.isomorphic(x, y))
        for y in cls:
            if y != x and not any(C.is_iso(a) and F.is_identity(O.p.mor[a]) for a in C.hom(x, y)):
                raise DomainError(f"objects {x} and {y} are isomorphic only over a non-identity of Fin_*")
        rep[x] = cls[0]
    objs = sorted(set(rep.values()), key=C.objects.index)
    mor = {}
    for x in objs:
        for y in objs:
            for f in sorted({O.p.mor[a] for a in C.hom(x, y)}):
                mor[f"{x}{f}{y}"] = (x, y)
    split = {k: k[len(s):len(k) - len(t)] for k, (s, t) in mor.items()}
    ident = {x: f"{x}{F.identities[O.p.obj[x]]}{x}" for x in objs}

    def comp(g, f):
        s, t = mor[f][0], mor[g][1]
        return f"{s}{F.comp(split[g], split[f])}{t}"

    H = Category.from_function(objs, mor, ident, comp, name=f"h0({O.name})⊗", check=True)
    pH = Functor(H, F, {x: O.p.obj[x] for x in objs}, {k: split[k] for k in mor}, check=True)
    Hd = OperadData(H, F, pH, name=f"h0({O.name})")
    theta = Functor(
        C,
        H,
        {x: rep[x] for x in C.objects},
        {a: f"{rep[C.src(a)]}{O.p.mor[a]}{rep[C.dst(a)]}" for a in C.morphisms},
        check=True,
    )
    return OperadTruncation(Hd, theta, d)


# -- operad maps and isomorphisms over Fin_* ------------------------------------------------
def check_operad_map(O: OperadData, U: OperadData, obj: Mapping[str, str], mor: Mapping[str, str]) -> dict:
    """An assignment over Fin_* sends every inert morphism of O to an inert morphism of U."""
    over = all(U.p.obj[obj[x]] == O.p.obj[x] for x in O.total.objects) and all(
        U.p.mor[mor[a]] == O.p.mor[a] for a in O.total.morphisms
    )
    bad = [a for a in sorted(O.total.morphisms) if is_inert_morphism(O, a) and not is_inert_morphism(U, mor[a])]
    return {"ok": over and not bad, "over_fin": over, "inert_violations": bad[:5]}


def iso_over_fin(O: OperadData, U: OperadData) -> tuple[dict, dict] | None:
    """An isomorphism of categories over Fin_* (object map, morphism map), or None."""
    C, D = O.total, U.total
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms) or O.N != U.N:
        return None
    objs = list(C.objects)
    mors = sorted(C.morphisms)

    def profile(Q, x):
        return (Q.p.obj[x], tuple(sorted(Q.p.mor[a] for a in Q.total.hom_from(x))))

    prof_o = {x: profile(O, x) for x in objs}
    prof_u = {y: profile(U, y) for y in D.objects}
    om: dict[str, str] = {}
    mm: dict[str, str] = {}

    def assign_mor(k):
        if k == len(mors):
            return True
        a = mors[k]
        s, t = C.src(a), C.dst(a)
        used = set(mm.values())
        for b in D.hom(om[s], om[t]):
            if b in used or U.p.mor[b] != O.p.mor[a]:
                continue
            if C.is_identity(a) != D.is_identity(b):
                continue
            mm[a] = b
            ok = True
            for (g, f), gf in C.table.items():
                if g in mm and f in mm and gf in mm and D.comp(mm[g], mm[f]) != mm[gf]:
                    ok = False
                    break
            if ok and assign_mor(k + 1):
                return True
            del mm[a]
        return False

    def assign_obj(k):
        if k == len(objs):
            return assign_mor(0)
        x = objs[k]
        used = set(om.values())
        for y in D.objects:
            if y in used or prof_u[y] != prof_o[x]:
                continue
            om[x] = y
            if assign_obj(k + 1):
                return True
            del om[x]
        return False

    if assign_obj(0):
        return dict(om), dict(mm)
    return None


# -- multi-mapping spaces ----------------------------------------------------------
def multi_mapping_space(O: OperadData, inputs: Sequence[str], output: str, tuple_object: str | None = None) -> list[str]:
    """``Mul_O({X_i}; Y)``: morphisms from a tuple object over the active map (a discrete space)."""
    n = len(inputs)
    if n > O.N:
        raise ArgumentError("arity exceeds the cap")
    tuples = tuple_objects(O, inputs)
    if not tuples:
        raise ValidationError(f"no tuple object for {list(inputs)}")
    X = tuple_object or tuples[0]
    if X not in tuples:
        raise ArgumentError(f"{X} is not a tuple object for {list(inputs)}")
    return sorted(O.hom_over(X, output, O.fin.active(n)))


# -- algebras ---------------------------------------------------------------------------
def _functors_over(O: OperadData, U: OperadData, limit: int = 10000) -> list[tuple[dict, dict]]:
    C, D = O.total, U.total
    objs = list(C.objects)
    mors = sorted((a for a in C.morphisms if not C.is_identity(a)), key=lambda a: (C.objects.index(C.src(a)), a))
    found = []
    om: dict[str, str] = {}
    mm: dict[str, str] = {}
    rel = [(g, f, gf) for (g, f), gf in C.table.items()]

    def consistent():
        for g, f, gf in rel:
            if g in mm and f in mm and gf in mm and D.comp(mm[g], mm[f]) != mm[gf]:
                return False
        return True

    def rec_m(k):
        if len(found) >= limit:
            raise DomainError("too many functors to enumerate")
        if k == len(mors):
            found.append((dict(om), dict(mm)))
            return
        a = mors[k]
        for b in D.hom(om[C.src(a)], om[C.dst(a)]):
            if U.p.mor[b] != O.p.mor[a]:
                continue
            mm[a] = b
            if consistent():
                rec_m(k + 1)
            del mm[a]

    def rec_o(k):
        if k == len(objs):
            for x in objs:
                mm[C.identities[x]] = D.identities[om[x]]
            rec_m(0)
            for x in objs:
                del mm[C.identities[x]]
            return
        x = objs[k]
        for y in D.objects:
            if U.p.obj[y] == O.p.obj[x]:
                om[x] = y
                rec_o(k + 1)
                del om[x]

    rec_o(0)
    return found


def algebras(O: OperadData, U: OperadData) -> list[tuple[dict, dict]]:
    """Inert-preserving functors O^⊗ -> U^⊗ over Fin_*, in canonical order."""
    out = []
    inert = [a for a in sorted(O.total.morphisms) if is_inert_morphism(O, a)]
    for om, mm in _functors_over(O, U):
        if all(is_inert_morphism(U, mm[a]) for a in inert):
            out.append((om, mm))
    out.sort(key=lambda fm: (sorted(fm[0].items()), sorted(fm[1].items())))
    return out


def algebra_category(O: OperadData, U: OperadData) -> Category:
    """Algebras and natural transformations whose components lie over identities."""
    algs = algebras(O, U)
    C, D = O.total, U.total
    names = [f"A{i}" for i in range(len(algs))]
    mor = {}
    comps: dict[str, tuple[str, ...]] = {}
    for i, (om1, mm1) in enumerate(algs):
        for j, (om2, mm2) in enumerate(algs):
            choices = []
            for x in C.objects:
                choices.append(
                    [b for b in D.hom(om1[x], om2[x]) if O.fin.is_identity(U.p.mor[b])]
                )
            for eta in product(*choices):
                comp = dict(zip(C.objects, eta))
                if all(
                    D.comp(mm2[a], comp[C.src(a)]) == D.comp(comp[C.dst(a)], mm1[a]) for a in C.morphisms
                ):
                    k = f"{names[i]}>{names[j]}:" + ";".join(eta)
                    mor[k] = (names[i], names[j])
                    comps[k] = eta
    index = {(mor[k][0], mor[k][1], comps[k]): k for k in mor}
    ident = {}
    for i, (om, _) in enumerate(algs):
        ident[names[i]] = index[(names[i], names[i], tuple(D.identities[om[x]] for x in C.objects))]

    def comp(g, f):
        return index[(mor[f][0], mor[g][1], tuple(D.comp(b, a) for b, a in zip(comps[g], comps[f])))]

    cat = Category.from_function(names, mor, ident, comp, name=f"Alg_{O.name}({U.name})")
    cat.algebras = algs
    return cat


def alg_complex(O: OperadData, U: OperadData, cap: int = 3):
    """The nerve of the algebra category through ``cap``."""
    return algebra_category(O, U).nerve(cap)


def precompose_algebras(theta: Functor, Oh: OperadData, O: OperadData, U: OperadData) -> dict:
    """Check that ``- ∘ θ`` is a bijection ``Alg_{h O}(U) -> Alg_O(U)`` on algebras."""
    left = algebras(Oh, U)
    right = algebras(O, U)
    keys = set()
    for om, mm in left:
        pulled = ({x: om[theta.obj[x]] for x in O.total.objects}, {a: mm[theta.mor[a]] for a in O.total.morphisms})
        keys.add((tuple(sorted(pulled[0].items())), tuple(sorted(pulled[1].items()))))
    want = {(tuple(sorted(om.items())), tuple(sorted(mm.items()))) for om, mm in right}
    return {"ok": len(keys) == len(left) and keys == want, "left": len(left), "right": len(right)}


# -- reconstruction of a colored operad --------------------------------------------------
def to_colored(O: OperadData, name: str | None = None) -> ColoredOperad:
    """Read off a strict colored operad from Segal data: colors are the objects over ⟨1⟩."""
    C, F = O.total, O.fin
    lifts = inert_lifts(O)
    colors = sorted(O.fibre(1))
    N = O.N
    tup: dict[tuple, str] = {}
    for n in range(N + 1):
        for cs in product(colors, repeat=n):
            ts = tuple_objects(O, cs)
            if not ts:
                raise ValidationError(f"no tuple object for {list(cs)}")
            tup[cs] = ts[0]
    ops: dict[str, tuple[tuple[str, ...], str]] = {}
    for cs, X in tup.items():
        for d in colors:
            for a in O.hom_over(X, d, F.active(len(cs))):
                ops[a] = (cs, d)

    def segal_find(S: str, T: str, f: str, legs: list[str]) -> str:
        n = O.over(T)
        for a in O.hom_over(S, T, f):
            if all(C.comp(lifts[(T, F.rho(n, i + 1))], a) == legs[i] for i in range(n)):
                return a
        raise ValidationError(f"Segal factorisation missing for {S} -> {T} over {f}")

    table = {}
    for a, (ins_a, out_a) in ops.items():
        k = len(ins_a)
        for i in range(k):
            for b, (ins_b, out_b) in ops.items():
                l = len(ins_b)
                if out_b != ins_a[i] or k + l - 1 > N:
                    continue
                new = ins_a[:i] + ins_b + ins_a[i + 1:]
                S = tup[new]
                g = fin_id(k + l - 1, k, [t + 1 if t < i else (i + 1 if t < i + l else t - l + 2) for t in range(k + l - 1)])
                legs = []
                for s in range(k):
                    if s == i:
                        block = fin_id(k + l - 1, l, [t - i + 1 if i <= t < i + l else 0 for t in range(k + l - 1)])
                        legs.append(C.comp(b, lifts[(S, block)]))
                    else:
                        legs.append(lifts[(S, F.comp(F.rho(k, s + 1), g))])
                mu = segal_find(S, tup[ins_a], g, legs)
                table[(a, i, b)] = C.comp(a, mu)
    sym = {}
    for a, (ins, out) in ops.items():
        k = len(ins)
        for perm in permutations(range(k)):
            new = tuple(ins[p] for p in perm)
            S = tup[new]
            sigma = fin_id(k, k, [perm[t] + 1 for t in range(k)])
            legs = [lifts[(S, F.comp(F.rho(k, s + 1), sigma))] for s in range(k)]
            tau = segal_find(S, tup[ins], sigma, legs)
            sym[(a, perm)] = C.comp(a, tau)
    return ColoredOperad(colors, ops, table, sym, name=name or O.name, arity_cap=N)


def _discrete(names: Sequence[str], label: str):
    from .sset import SSet

    return SSet({0: list(names)} if names else {}, {}, name=label)


def mul_truncation_verify(O: OperadData, d: int, inputs: Sequence[str], output: str) -> dict:
    """``Mul_{h_d O}(θX; θY)`` against ``h_{d-1} Mul_O(X; Y)``, with θ surjective on components."""
    from .solver import iso_check
    from .truncation import truncate

    tr = h_d_operad(O, d)
    H, theta = tr.operad, tr.theta
    mul = multi_mapping_space(O, inputs, output)
    X = tuple_objects(O, inputs)[0]
    hX, hY = theta.obj[X], theta.obj[output]
    ok_tuple = hX in tuple_objects(H, [theta.obj[c] for c in inputs])
    lhs = sorted(H.hom_over(hX, hY, H.fin.active(len(inputs))))
    rhs = truncate(_discrete(mul, "Mul"), d - 1).sset
    left = _discrete(lhs, "Mul_h")
    iso = iso_check(left, rhs, 0) is not None
    image = {theta.mor[a] for a in mul}
    surjective = image == set(lhs)
    bijective = surjective and len(image) == len(mul)
    # h_{-2} of an empty space is a point, so surjectivity is only expected from d = 0 on
    ok = ok_tuple and iso and (d < 0 or surjective) and (d < 1 or bijective)
    return {
        "check": "mul_truncation",
        "ok": ok,
        "operad": O.name,
        "d": d,
        "inputs": list(inputs),
        "output": output,
        "mul": len(mul),
        "lhs": len(lhs),
        "rhs": rhs.counts()[0] if not rhs.is_empty() else 0,
        "theta_surjective": surjective,
        "theta_bijective": bijective,
    }
