"""The bigraded dg-algebras over a point, in a single monomial representation.

Every algebra in scope is Sym(V0) tensor Lambda(V1) for generator spaces V0
(even, "sym") and V1 (odd, "ext"), with all sym generators sharing one
bidegree and all ext generators sharing another:

    kind S : f sym generators in (2, -2), no ext part, zero differential
    kind R : f sym generators in (0, -2), no ext part, zero differential
    kind T : f ext generators in (-1, 2), zero differential
    kind Q : e-f sym generators in (0, 2), e ext generators in (-1, 2);
             the differential is the derivation sending the i-th ext
             generator (i >= f, 0-based) to the (i-f)-th sym generator
             and the first f ext generators to 0
    kind P : e-f sym generators in (0, 2), no ext part, zero differential
             (the target algebra of the bundle-projection pushforward)

A monomial is a pair (exps, mask): exponent tuple for the sym part and a
bitmask over ext generators, with sign given by inversion parity.  An
algebra element is a dict monomial -> coefficient in [1, p).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bigraded import Bidegree
from .linalg import check_modulus

Monomial = tuple[tuple[int, ...], int]
Element = dict  # Monomial -> int coefficient

KINDS = ("S", "R", "T", "Q", "P")


@dataclass(frozen=True)
class AlgebraSpec:
    kind: str
    e: int
    f: int
    p: int

    @property
    def n_sym(self) -> int:
        return {"S": self.f, "R": self.f, "T": 0, "Q": self.e - self.f, "P": self.e - self.f}[self.kind]

    @property
    def n_ext(self) -> int:
        return {"S": 0, "R": 0, "T": self.f, "Q": self.e, "P": 0}[self.kind]

    @property
    def sym_deg(self) -> Bidegree:
        return {"S": (2, -2), "R": (0, -2), "T": (0, 0), "Q": (0, 2), "P": (0, 2)}[self.kind]

    @property
    def ext_deg(self) -> Bidegree:
        return (-1, 2)

    def d_ext_target(self, i: int):
        """Index of the sym generator hit by d on ext generator i, or None."""
        if self.kind == "Q" and i >= self.f:
            return i - self.f
        return None

    @property
    def has_differential(self) -> bool:
        return self.kind == "Q" and self.e > self.f

    def one(self) -> Monomial:
        return ((0,) * self.n_sym, 0)

    def key(self):
        return (self.kind, self.e, self.f, self.p)


def make_algebra(kind: str, e: int, f: int, p: int) -> AlgebraSpec:
    if kind not in KINDS:
        raise ValueError(f"unknown algebra kind {kind!r}")
    if not (0 <= f <= e):
        raise ValueError(f"need 0 <= f <= e, got f={f}, e={e}")
    check_modulus(p)
    return AlgebraSpec(kind, e, f, p)


def monomial_bidegree(alg: AlgebraSpec, mon: Monomial) -> Bidegree:
    t = sum(mon[0])
    m = bin(mon[1]).count("1")
    si, sj = alg.sym_deg
    ei, ej = alg.ext_deg
    return (t * si + m * ei, t * sj + m * ej)


def _ext_sign(m1: int, m2: int) -> int:
    """Sign of the wedge reordering theta^{m1} * theta^{m2}; 0 on overlap."""
    if m1 & m2:
        return 0
    inv = 0
    m = m2
    while m:
        j = (m & -m).bit_length() - 1
        inv += bin(m1 >> (j + 1)).count("1")
        m &= m - 1
    return -1 if inv & 1 else 1


def elt(alg: AlgebraSpec, terms) -> Element:
    """Normalize a {monomial: coeff} mapping mod p, dropping zeros."""
    out = {}
    for mon, c in dict(terms).items():
        c = c % alg.p
        if c:
            out[(tuple(mon[0]), mon[1])] = c
    return out


def elt_one(alg: AlgebraSpec) -> Element:
    return {alg.one(): 1}


def elt_scale(alg: AlgebraSpec, x: Element, c: int) -> Element:
    c = c % alg.p
    if c == 0:
        return {}
    return {mon: (v * c) % alg.p for mon, v in x.items()}


def elt_add(alg: AlgebraSpec, x: Element, y: Element) -> Element:
    out = dict(x)
    for mon, c in y.items():
        v = (out.get(mon, 0) + c) % alg.p
        if v:
            out[mon] = v
        else:
            out.pop(mon, None)
    return out


def mul_monomials(alg: AlgebraSpec, m1: Monomial, m2: Monomial):
    """Product monomial and sign, or None when it vanishes."""
    sign = _ext_sign(m1[1], m2[1])
    if sign == 0:
        return None
    exps = tuple(a + b for a, b in zip(m1[0], m2[0]))
    return (exps, m1[1] | m2[1]), sign


def elt_mul(alg: AlgebraSpec, x: Element, y: Element) -> Element:
    out = {}
    p = alg.p
    for m1, c1 in x.items():
        for m2, c2 in y.items():
            prod = mul_monomials(alg, m1, m2)
            if prod is None:
                continue
            mon, sign = prod
            v = (out.get(mon, 0) + sign * c1 * c2) % p
            if v:
                out[mon] = v
            else:
                out.pop(mon, None)
    return out


def elt_d(alg: AlgebraSpec, x: Element) -> Element:
    """Apply the algebra differential (a bidegree (1, 0) derivation)."""
    if not alg.has_differential:
        return {}
    p = alg.p
    out = {}
    for (exps, mask), c in x.items():
        pos = 0
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            tgt = alg.d_ext_target(i)
            if tgt is not None:
                new_exps = list(exps)
                new_exps[tgt] += 1
                mon = (tuple(new_exps), mask & ~(1 << i))
                sign = -1 if pos & 1 else 1
                v = (out.get(mon, 0) + sign * c) % p
                if v:
                    out[mon] = v
                else:
                    out.pop(mon, None)
            pos += 1
            m &= m - 1
    return out


def elt_bidegree(alg: AlgebraSpec, x: Element):
    """Bidegree of a homogeneous element, None for 0; raises if mixed."""
    deg = None
    for mon in x:
        d = monomial_bidegree(alg, mon)
        if deg is None:
            deg = d
        elif d != deg:
            raise ValueError(f"element is not homogeneous: {deg} vs {d}")
    return deg


def elt_cohom_degree(alg: AlgebraSpec, x: Element) -> int:
    deg = elt_bidegree(alg, x)
    if deg is None:
        raise ValueError("zero element has no degree")
    return deg[0]


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple:
    if parts == 0:
        return ((),) if total == 0 else ()
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _monomials_by_internal(key, jlo: int, jhi: int):
    """All monomials with internal degree in [jlo, jhi], grouped by bidegree.

    Terminates because every generator in every kind has internal degree
    +-2, so each internal degree bounds the total monomial length.
    """
    alg = AlgebraSpec(*key)
    si, sj = alg.sym_deg
    ei, ej = alg.ext_deg
    table: dict[Bidegree, list[Monomial]] = {}
    for mask in range(1 << alg.n_ext):
        m = bin(mask).count("1")
        if alg.n_sym == 0:
            cands = [0]
        else:
            # want jlo <= t*sj + m*ej <= jhi with t >= 0 and |sj| = 2;
            # enumerate a safe superset and filter below
            lo, hi = jlo - m * ej, jhi - m * ej
            cands = range(0, max(abs(lo), abs(hi)) // 2 + 1)
        for t in cands:
            j = t * sj + m * ej
            if not (jlo <= j <= jhi):
                continue
            i = t * si + m * ei
            bucket = table.setdefault((i, j), [])
            for exps in _compositions(t, alg.n_sym):
                bucket.append((exps, mask))
    for bucket in table.values():
        bucket.sort()
    return table


def monomials_by_internal(alg: AlgebraSpec, jlo: int, jhi: int):
    return _monomials_by_internal(alg.key(), jlo, jhi)


def cohom_degree_range(alg: AlgebraSpec, jlo: int, jhi: int):
    """Bounds for the cohomological degree of monomials with j in [jlo, jhi]."""
    table = _monomials_by_internal(alg.key(), jlo, jhi)
    if not table:
        return (0, 0)
    degs = [i for (i, _) in table]
    return (min(degs), max(degs))
