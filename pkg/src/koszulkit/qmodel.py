"""The big Koszul model Q = Sym(E/F) tensor Lambda(E) and its dualities.

Q carries the derivation differential sending the exterior generator
eta_i (i >= dim F) to its class z_{i-f} in E/F; the exterior algebra on
the first f generators embeds as the dg-subalgebra T, and Q is free over
T on the monomials in the remaining generators.  Restriction along that
inclusion, the pushforward to Sym(E/F)-modules (forget the exterior
action) and Hom-duality over Q are all computed on semifree presentations.
"""

from __future__ import annotations

from .algebra import make_algebra, monomial_bidegree, mul_monomials, _ext_sign, elt_d, elt_mul, elt_scale
from .bigraded import Window, bidegree_add
from .dgmodule import DgMap, SemifreeDgModule, cohomology
from .homdual import DualityReport, _compare


def extend_to_Q(N: SemifreeDgModule, e: int) -> SemifreeDgModule:
    """Base change Q tensor_T N along T -> Q: same generators, entries
    mapped by theta_i -> eta_i."""
    if N.algebra.kind != "T":
        raise ValueError("extend_to_Q expects a module over T")
    f, p = N.algebra.f, N.algebra.p
    Q = make_algebra("Q", e, f, p)
    nz = Q.n_sym
    diff = {}
    for k, row in N.diff.items():
        diff[k] = {
            l: {((0,) * nz, mon[1]): c for mon, c in entry.items()}
            for l, entry in row.items()
        }
    return SemifreeDgModule(Q, N.gens, diff)


def _split_residual(Q, mon, keep_mask: int):
    """Write a Q-monomial as +-(sub-part) * (residual), sub-part the
    exterior monomial on ``keep_mask`` bits, residual the rest.

    Returns (sub_mask, residual_monomial, sign).
    """
    sub = mon[1] & keep_mask
    rest = mon[1] & ~keep_mask
    sign = _ext_sign(sub, rest)
    return sub, (mon[0], rest), sign


def restrict_to_T(M: SemifreeDgModule, jhi: int):
    """M as a semifree T-module, on generators (Q-gen, residual monomial).

    Residual monomials involve the Sym part and the exterior generators
    of index >= f; only generators of internal degree <= jhi are kept
    (the discarded span is a dg-submodule, so this is the exact quotient
    below the cutoff).  Returns (module over T, labels).
    """
    Q = M.algebra
    if Q.kind != "Q":
        raise ValueError("restrict_to_T expects a module over Q")
    f, p = Q.f, Q.p
    T = make_algebra("T", Q.e, f, p)
    fmask = (1 << f) - 1
    # residual monomials: z-exponents and exterior part above f
    labels = []
    for k, g in enumerate(M.gens):
        from .algebra import monomials_by_internal

        for (mi, mj), mons in monomials_by_internal(Q, 0, jhi - g[1]).items():
            for mon in mons:
                if mon[1] & fmask:
                    continue
                labels.append((bidegree_add(g, (mi, mj)), k, mon))
    labels.sort()
    index = {(k, mon): n for n, (_, k, mon) in enumerate(labels)}
    gens = [bd for bd, _, _ in labels]
    diff: dict[int, dict[int, dict]] = {}
    for n, (_, k, mon) in enumerate(labels):
        acc: dict[int, dict] = {}

        def put(l, qmon, coeff):
            sub, res, sign = _split_residual(Q, qmon, fmask)
            m = index.get((l, res))
            if m is None:
                return
            tmon = ((), sub)
            entry = acc.setdefault(m, {})
            v = (entry.get(tmon, 0) + sign * coeff) % p
            if v:
                entry[tmon] = v
            else:
                entry.pop(tmon, None)

        for qmon, c in elt_d(Q, {mon: 1}).items():
            put(k, qmon, c)
        sgn = -1 if monomial_bidegree(Q, mon)[0] & 1 else 1
        for l, e in M.diff.get(k, {}).items():
            for qmon, c in elt_scale(Q, elt_mul(Q, {mon: 1}, e), sgn).items():
                put(l, qmon, c)
        acc = {m: {t: c for t, c in ent.items() if c} for m, ent in acc.items()}
        acc = {m: ent for m, ent in acc.items() if ent}
        if acc:
            diff[n] = acc
    return SemifreeDgModule(T, gens, diff), labels


def restriction_unit(N: SemifreeDgModule, e: int, jhi: int) -> DgMap:
    """The canonical map N -> restrict(Q tensor_T N); a quasi-isomorphism."""
    MQ = extend_to_Q(N, e)
    R, labels = restrict_to_T(MQ, jhi)
    index = {(k, mon): n for n, (_, k, mon) in enumerate(labels)}
    one_res = ((0,) * MQ.algebra.n_sym, 0)
    matrix = {}
    for k in range(N.rank):
        n = index.get((k, one_res))
        if n is not None:
            matrix[k] = {n: {((), 0): 1}}
    return DgMap(N, R, matrix)


def pushforward_p(M: SemifreeDgModule):
    """M as a semifree module over P = Sym(E/F): forget the exterior
    action, keeping the Sym action and the differential.

    Generators are (Q-generator, exterior monomial) pairs; the output is
    finite and exact everywhere.  Returns (module over P, labels).
    """
    Q = M.algebra
    if Q.kind != "Q":
        raise ValueError("pushforward_p expects a module over Q")
    e, f, p = Q.e, Q.f, Q.p
    P = make_algebra("P", e, f, p)
    allmask = (1 << Q.n_ext) - 1
    labels = []
    for k, g in enumerate(M.gens):
        for mask in range(allmask + 1):
            mon = ((0,) * Q.n_sym, mask)
            labels.append((bidegree_add(g, monomial_bidegree(Q, mon)), k, mask))
    labels.sort()
    index = {(k, mask): n for n, (_, k, mask) in enumerate(labels)}
    gens = [bd for bd, _, _ in labels]
    diff: dict[int, dict[int, dict]] = {}
    for n, (_, k, mask) in enumerate(labels):
        mon = ((0,) * Q.n_sym, mask)
        acc: dict[int, dict] = {}

        def put(l, qmon, coeff):
            m = index.get((l, qmon[1]))
            if m is None:
                return
            pmon = (qmon[0], 0)
            entry = acc.setdefault(m, {})
            v = (entry.get(pmon, 0) + coeff) % p
            if v:
                entry[pmon] = v
            else:
                entry.pop(pmon, None)

        for qmon, c in elt_d(Q, {mon: 1}).items():
            put(k, qmon, c)
        sgn = -1 if monomial_bidegree(Q, mon)[0] & 1 else 1
        for l, e_ in M.diff.get(k, {}).items():
            for qmon, c in elt_scale(Q, elt_mul(Q, {mon: 1}, e_), sgn).items():
                put(l, qmon, c)
        acc = {m: {t: c for t, c in ent.items() if c} for m, ent in acc.items()}
        acc = {m: ent for m, ent in acc.items() if ent}
        if acc:
            diff[n] = acc
    return SemifreeDgModule(P, gens, diff), labels


def dualize_Q(M: SemifreeDgModule) -> SemifreeDgModule:
    if M.algebra.kind != "Q":
        raise ValueError("dualize_Q expects a module over Q")
    return M.dualize()


def fbot_window(M: SemifreeDgModule) -> Window:
    e = M.algebra.e
    win = Window.hull(M.gens).enlarge(e + 1, 2 * (e + 1))
    return win.union(win.negate())


def check_fbot(M: SemifreeDgModule, window: Window | None = None) -> DualityReport:
    """Pushforward versus duality: table of p_*(D_Q(M)) against the
    Sym(E/F)-dual of p_*(M) twisted by [m]<2m>, m = dim E."""
    if M.algebra.kind != "Q":
        raise ValueError("check_fbot expects a module over Q")
    m = M.algebra.e
    if window is None:
        window = fbot_window(M)
    left_mod, _ = pushforward_p(dualize_Q(M))
    left = cohomology(left_mod, window)
    push, _ = pushforward_p(M)
    shifted_window = Window(
        window.i0 + m, window.i1 + m, window.j0 - 2 * m, window.j1 - 2 * m
    )
    right_raw = cohomology(push.dualize(), shifted_window)
    right = right_raw.shift(m, 2 * m)
    return _compare("fbot", window, left, right)
