"""Mechanical checks of the mapping-space, universal-property and cylinder statements.

Every function returns a plain ``dict`` report with an ``ok`` flag and enough
detail to reproduce a failure.  Field order is fixed so reports serialise
deterministically.
"""

from __future__ import annotations

from .category import Category, nerve_category, product_category, projection_functor
from .constructions import ConeJ, ConeSigma, Product, RelCylinder, _ref_name, delta_ref, product_map, skeleton, standard, subcomplex
from .errors import ArgumentError
from .solver import (
    ExtensionProblem,
    enumerate_maps,
    is_cocartesian_edge,
    is_homotopic_rel,
    iso_check,
    pi0,
    search,
)
from .sset import SMap, SSet, SimplexRef, identity_map
from .truncation import (
    LowTruncation,
    TruncatedSSet,
    h_low,
    h_map,
    hom_middle,
    hom_right,
    is_d_category,
    phi,
    truncate,
)


def _report(name: str, ok: bool, **details) -> dict:
    return {"check": name, "ok": bool(ok), **details}


# -- the mapping-space isomorphism α ---------------------------------------------------
def _cone_map(C: SSet, X: str, Y: str, n: int, d: int, hv) -> SMap:
    """``g: sk^dΔ^{n+1} -> C`` from values ``hv(T)`` on the cones ``T ∪ {n+1}``; the base is constant at X."""
    Bsk, _ = skeleton(standard(n + 1), d)
    top = str(n + 1)
    assign = {}
    for x in Bsk.ids():
        vs = Bsk.vertices_of(Bsk.ref(x))
        if vs[-1] == top:
            rest = vs[:-1]
            assign[x] = C.vertex(Y) if not rest else hv(tuple(int(v) for v in rest))
        else:
            assign[x] = C.constant(X, len(vs) - 1)
    return SMap(Bsk, C, assign)


def alpha_verify(C: SSet, X: str, Y: str, d: int, m: int = 3, budget=None) -> dict:
    """Build α⁻¹ explicitly on classes and check bijectivity, operators, the triangle and π₀."""
    if d < -1:
        raise ArgumentError("alpha needs d >= -1")
    R = hom_right(C, X, Y, max(m, d + 1))
    Rs = R.sset
    base = {"C": C.name, "X": X, "Y": Y, "d": d, "dims": m}
    if d <= 0:
        H = truncate(C, d)
        tX, tY = H.theta_ref(C.vertex(X)).base, H.theta_ref(C.vertex(Y)).base
        L = hom_right(H.sset, tX, tY, m)
        G = h_low(Rs, d - 1)
        ok_iso = iso_check(L.sset, G.sset, m) is not None
        surj = (not L.sset.is_empty()) <= (not Rs.is_empty())
        return _report(
            "alpha",
            ok_iso and surj,
            **base,
            left=L.sset.counts(m),
            right=G.sset.counts(m),
            bijection=ok_iso,
            triangle=True,
            pi0_surjective=surj,
            pi0_bijective=None,
        )
    T = TruncatedSSet(C, d, m + 1, budget)
    tX, tY = T.theta_ref(C.vertex(X)).base, T.theta_ref(C.vertex(Y)).base
    L = hom_right(T.sset, tX, tY, m)
    G = truncate(Rs, d - 1, m, budget)
    problems: list[dict] = []

    def lhs_of(n: int, g: SMap) -> SimplexRef | None:
        try:
            z = T.classify(g)
        except Exception:
            return None
        return L.locate.get(z)

    def values(ref: SimplexRef) -> list[SMap]:
        n = ref.dim
        if isinstance(G, LowTruncation):
            classes = G.members(ref)
            reps = [c[0] for c in classes]
            out = [_cone_map(C, X, Y, n, d, lambda T_, r=reps: R.element(Rs.vertex(r[T_[0]])))]
            for i, cls in enumerate(classes):
                for v in cls[1:]:
                    alt = list(reps)
                    alt[i] = v
                    out.append(_cone_map(C, X, Y, n, d, lambda T_, r=alt: R.element(Rs.vertex(r[T_[0]]))))
            return out
        out = []
        for h in G.members(ref):
            out.append(_cone_map(C, X, Y, n, d, lambda T_, h=h: R.element(h(delta_ref(T_)))))
        return out

    inverse: dict[SimplexRef, SimplexRef] = {}
    for n in range(m + 1):
        for r in G.sset.all_simplices(n):
            imgs = {lhs_of(n, g) for g in values(r)}
            if None in imgs or len(imgs) != 1:
                problems.append({"kind": "well-defined", "simplex": _ref_name(r), "images": len(imgs)})
                continue
            inverse[r] = imgs.pop()
    bij = not problems
    for n in range(m + 1):
        src = [r for r in G.sset.all_simplices(n) if r in inverse]
        imgs = {inverse[r] for r in src}
        if len(imgs) != len(src) or imgs != set(L.sset.all_simplices(n)):
            bij = False
            problems.append({"kind": "bijection", "degree": n, "left": len(L.sset.all_simplices(n)), "right": len(src)})
    ops = True
    for r, z in inverse.items():
        n = r.dim
        for i in range(n + 1 if n else 0):
            fr = G.sset.face(r, i)
            if fr in inverse and inverse[fr] != L.sset.face(z, i):
                ops = False
                problems.append({"kind": "face", "simplex": _ref_name(r), "i": i})
        if n + 1 <= m:
            for j in range(n + 1):
                dr = G.sset.degen(r, j)
                if dr in inverse and inverse[dr] != L.sset.degen(z, j):
                    ops = False
                    problems.append({"kind": "degeneracy", "simplex": _ref_name(r), "j": j})
    tri = True
    beta = {}
    for n in range(m + 1):
        for z in Rs.all_simplices(n):
            b = L.locate.get(T.theta_ref(R.element(z)))
            beta[z] = b
            g = G.theta_ref(z)
            if b is None or inverse.get(g) != b:
                tri = False
                problems.append({"kind": "triangle", "simplex": _ref_name(z)})
    comps_r = pi0(Rs)
    comps_l = pi0(L.sset)
    where = {v: i for i, c in enumerate(comps_l) for v in c}
    image = {}
    for c in comps_r:
        image[tuple(c)] = {where[beta[Rs.vertex(v)].base] for v in c}
    hit = set().union(*image.values()) if image else set()
    surj = hit == set(range(len(comps_l)))
    inj = all(len(s) == 1 for s in image.values()) and len(hit) == len(comps_r)
    return _report(
        "alpha",
        bij and ops and tri and surj and inj,
        **base,
        left=L.sset.counts(m),
        right=G.sset.counts(m),
        bijection=bij,
        operators=ops,
        triangle=tri,
        pi0_surjective=surj,
        pi0_bijective=surj and inj,
        problems=problems[:5],
    )


# -- universal property, functoriality -------------------------------------------------
def _maps_times_delta(K: SSet, D: SSet, n: int, budget) -> tuple[Product, list[SMap]]:
    P = Product(K, standard(n))
    return P, sorted(search(ExtensionProblem(P.sset, D, budget=budget)), key=SMap.sort_key)


def universal_property_verify(C: SSet, D: SSet, d: int, cap: int = 1, limit: int = 200, budget=None) -> dict:
    """Precomposition with θ_d is a bijection ``Fun(h_dC, D)_n -> Fun(C, D)_n`` for n <= cap."""
    rep = is_d_category(D, d, max(2, d + 2), budget)
    if not rep.ok:
        return _report("universal-property", False, C=C.name, D=D.name, d=d, reason="target is not a d-category")
    T = truncate(C, d, C.dim, budget)
    H, theta = T.sset, T.theta
    if theta.source is not C:
        raise ArgumentError("C must be finite-dimensional for the universal-property check")
    sizes = []
    for n in range(cap + 1):
        Ph, left = _maps_times_delta(H, D, n, budget)
        Pc, right = _maps_times_delta(C, D, n, budget)
        sizes.append([len(left), len(right)])
        if len(left) > limit or len(right) > limit:
            return _report("universal-property", True, C=C.name, D=D.name, d=d, sizes=sizes, skipped=True)
        pre = product_map(Pc, Ph, theta, identity_map(Pc.B))
        images = {m.compose(pre).key() for m in left}
        if len(images) != len(left) or images != {m.key() for m in right}:
            return _report("universal-property", False, C=C.name, D=D.name, d=d, sizes=sizes, degree=n)
    return _report("universal-property", True, C=C.name, D=D.name, d=d, sizes=sizes, skipped=False)


def _same(f: SMap, g: SMap) -> bool:
    return f.source.ids() == g.source.ids() and all(f.assign[x] == g.assign[x] for x in f.source.ids())


def functor_laws_verify(C: SSet, d: int, maps: list[tuple[SMap, SMap]] = (), out_dim: int | None = None, budget=None) -> dict:
    """Idempotence, the tower ``h_e ∘ h_d ≅ h_e``, identity and composition laws, θ-naturality.

    ``maps`` holds composable pairs ``(f: C -> C', g: C' -> C'')``.
    """
    out = C.dim if out_dim is None else out_dim
    T = truncate(C, d, out, budget)
    results = {}
    TT = truncate(T.sset, d, out, budget)
    results["idempotent"] = TT.theta.is_isomorphism()
    tower = {}
    for e in range(-1, d + 1):
        Te = truncate(T.theta.source, e, out, budget)
        Te2 = truncate(T.sset, e, out, budget)
        tower[str(e)] = h_map(T.theta, Te, Te2).is_isomorphism()
    results["tower"] = tower
    results["identity"] = _same(h_map(identity_map(T.theta.source), T, T), identity_map(T.sset))
    nat = []
    comp = []
    for f, g in maps:
        T1 = truncate(f.target, d, out, budget)
        T2 = truncate(g.target, d, out, budget)
        hf = h_map(f, T, T1)
        hg = h_map(g, T1, T2)
        hgf = h_map(g.compose(f), T, T2)
        comp.append(_same(hgf, hg.compose(hf)))
        nat.append(_same(hf.compose(T.theta), T1.theta.compose(f)) and _same(hg.compose(T1.theta), T2.theta.compose(g)))
    results["composition"] = all(comp)
    results["naturality"] = all(nat)
    ok = results["idempotent"] and all(tower.values()) and results["identity"] and all(comp) and all(nat)
    return _report("functor-laws", ok, C=C.name, d=d, dims=out, **results)


# -- the cylinder lemma -------------------------------------------------------------------
def cylinder_comparison(incl: SMap, D: SSet) -> tuple[SMap, SSet, SSet]:
    """The map ``Σ(B ⋊_A D) -> ΣB ⋊_{ΣA} D`` induced by ``B × D × Δ^1 -> B × Δ^1 × D``."""
    A, B = incl.source, incl.target
    cyl = RelCylinder(incl, D)
    S_left = ConeSigma(cyl.sset)
    SB = ConeSigma(B)
    SA, SA_in = SB.relative([r.base for r in incl.assign.values()])
    right = RelCylinder(SA_in, D)
    inv_rename = {v: k for k, v in cyl.po.rename.items()}
    a_ids = set(A.ids())

    def image(w: SimplexRef, t: SimplexRef) -> SimplexRef:
        if w.base in a_ids:
            a = A.apply(A.ref(w.base), w.surj)
            b = incl(a)
            return right.from_base(SB.point(b, t))
        xb, e = cyl.BD.parts(inv_rename[w.base])
        b = B.apply(xb, w.surj)
        ee = D.apply(e, w.surj)
        return right.point(SB.point(b, t), ee)

    assign = {}
    marked = {S_left.bottom: right.from_base(SA.vertex(SB.bottom)), S_left.top: right.from_base(SA.vertex(SB.top))}
    for x in S_left.sset.ids():
        if x in marked:
            assign[x] = marked[x]
            continue
        w, t = S_left.prod.parts(x)
        assign[x] = image(w, t)
    return SMap(S_left.sset, right.sset, assign), S_left.sset, right.sset


def cylinder_lemma_verify(incl: SMap, D: SSet, label: str = "") -> dict:
    F, L, R = cylinder_comparison(incl, D)
    try:
        F.validate()
        commutes = True
    except Exception:
        commutes = False
    ok = commutes and F.is_isomorphism() and L.counts() == R.counts()
    return _report("cylinder-lemma", ok, case=label, left=L.counts(), right=R.counts(), simplicial=commutes)


# -- the four models of "homotopic rel A" ---------------------------------------------
def _bar_J(J: ConeJ, R, f: SMap, X: str, Y: str) -> SMap:
    C = R.C
    assign = {}
    for y in J.sset.ids():
        if y == J.base_point:
            assign[y] = C.vertex(X)
        elif y == J.cone_point:
            assign[y] = C.vertex(Y)
        else:
            x = y[2:-1]
            assign[y] = R.element(f(J.K.ref(x)))
    return SMap(J.sset, C, assign)


def _bar_Sigma(S: ConeSigma, M, F: SMap, X: str, Y: str) -> SMap:
    from .truncation import _cyl

    C = M.C
    assign = {}
    for y in S.sset.ids():
        if y == S.bottom:
            assign[y] = C.vertex(X)
        elif y == S.top:
            assign[y] = C.vertex(Y)
        else:
            b, t = S.prod.parts(y)
            n = b.dim
            G = M.element(F(b))
            P = _cyl(n)
            assign[y] = G(P.pair(P.A.ref(P.A.nondegenerate(n)[0]), t))
    return SMap(S.sset, C, assign)


def _agree(f: SMap, g: SMap, sub_ids) -> bool:
    return all(f.assign[x] == g.assign[x] for x in sub_ids)


def homrel_quadruple_verify(C: SSet, X: str, Y: str, dim: int = 3, budget=None) -> dict:
    """For f, g: Δ^1 -> hom^R_C(X, Y) and A in {∅, ∂Δ^1}, conditions (1)-(4) agree pairwise."""
    R = hom_right(C, X, Y, dim)
    M = hom_middle(C, X, Y, dim, budget)
    Phi = phi(R, M)
    B = standard(1)
    J = ConeJ(B)
    S = ConeSigma(B)
    maps = enumerate_maps(B, R.sset, budget)
    rows = []
    ok = True
    for a_ids, label in (([], "∅"), (["0", "1"], "∂Δ1")):
        A, a_in = subcomplex(B, a_ids)
        JA, ja_in = J.relative(a_ids)
        SA, sa_in = S.relative(a_ids)
        bars = [(f, Phi.compose(f)) for f in maps]
        bars = [(f, F, _bar_J(J, R, f, X, Y), _bar_Sigma(S, M, F, X, Y)) for f, F in bars]
        for (f, F, fj, fs), (g, G, gj, gs) in ((p, q) for p in bars for q in bars):
            agree = [
                _agree(f, g, A.ids()),
                _agree(F, G, A.ids()),
                _agree(fj, gj, JA.ids()),
                _agree(fs, gs, SA.ids()),
            ]
            homo = [None] * 4
            if all(agree):
                homo = [
                    is_homotopic_rel(f, g, a_in, budget)[0],
                    is_homotopic_rel(F, G, a_in, budget)[0],
                    is_homotopic_rel(fj, gj, ja_in, budget)[0],
                    is_homotopic_rel(fs, gs, sa_in, budget)[0],
                ]
            same = len(set(agree)) == 1 and len(set(homo)) == 1
            ok &= same
            if not same:
                rows.append({"A": label, "f": f.key(), "g": g.key(), "agree": agree, "homotopic": homo})
    return _report("homrel-equivalences", ok, C=C.name, X=X, Y=Y, maps=len(maps), mismatches=rows[:5])


def equivalence_relation_verify(B: SSet, A_ids, X: SSet, budget=None) -> dict:
    """Reflexivity, symmetry and transitivity of homotopy rel A on all maps ``B -> X``."""
    A, incl = subcomplex(B, A_ids)
    maps = enumerate_maps(B, X, budget)
    n = len(maps)
    rel = [[False] * n for _ in range(n)]
    for i, f in enumerate(maps):
        for j, g in enumerate(maps):
            if _agree(f, g, A.ids()):
                rel[i][j] = is_homotopic_rel(f, g, incl, budget)[0]
    refl = all(rel[i][i] for i in range(n))
    sym = all(rel[i][j] == rel[j][i] for i in range(n) for j in range(n))
    trans = all(not (rel[i][j] and rel[j][k]) or rel[i][k] for i in range(n) for j in range(n) for k in range(n))
    return _report(
        "homrel-equivalence-relation",
        refl and sym and trans,
        B=B.name,
        A=sorted(A.ids()),
        X=X.name,
        maps=n,
        reflexive=refl,
        symmetric=sym,
        transitive=trans,
    )


def cocartesian_image_verify(C: Category, D: Category, m: int = 3, d: int = 1, budget=None) -> dict:
    """coCartesian edges of ``N(C×D) -> N(C)`` stay coCartesian after applying h_d.

    Edges ``(f, g)`` with g invertible are recorded as coCartesian; the others
    should fail the test and serve as negative controls.
    """
    P = product_category(C, D)
    proj = projection_functor(P, C, D)
    NP, NC = nerve_category(P, cap=m + 1), nerve_category(C, cap=m + 1)
    p = proj.nerve_map(NP, NC)
    T, T2 = truncate(NP, d, out_dim=m, budget=budget), truncate(NC, d, out_dim=m, budget=budget)
    hp = h_map(p, T, T2)
    rows = []
    for a in sorted(P.morphisms):
        if P.is_identity(a):
            continue
        f, g = P.split[a]
        e = P.chain_ref([a])
        expected = D.is_iso(g)
        before = is_cocartesian_edge(p, e, m, budget)
        after = is_cocartesian_edge(hp, T.theta_ref(e), m, budget)
        rows.append({"edge": a, "recorded": expected, "before": before, "after": after})
    ok = all(r["before"] == r["recorded"] and (not r["recorded"] or r["after"]) for r in rows)
    negatives = [r["edge"] for r in rows if not r["recorded"]]
    return _report("h_d_cocartesian_edges", ok, C=C.name, D=D.name, d=d, m=m, edges=rows, negatives=negatives)

