"""Exact arithmetic in the coordinate ring of a scroll.

The ring is the polynomial ring modulo the 2x2 minors of the scroll
matrix.  Those minors form a Groebner basis for the pure lex order with
x_1 > x_2 > ... > x_n, and every monomial rewrites to a single standard
monomial: replacing a divisor equal to a main-diagonal product by the
matching antidiagonal product strictly decreases the lex order and
preserves the multigrading, so normal forms of polynomials are just
termwise rewrites followed by coefficient collection.

Elements carry an optional prime modulus; coefficients are exact Python
ints / Fractions otherwise.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .scrolls import Monomial, ScrollSpec, minor_generators, toric_matrix


def lex_compare(a: Monomial, b: Monomial) -> int:
    """Pure lex order with x_1 largest: 1 if a > b, -1 if a < b, 0 if equal.

    With this variable order, lex comparison of monomials is exactly
    tuple comparison of exponent vectors.
    """
    if len(a) != len(b):
        raise ValueError("monomials live in different variable counts")
    return (a > b) - (a < b)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


class ScrollRing:
    """Normal-form engine and element factory for one scroll."""

    def __init__(self, spec: ScrollSpec):
        self.spec = spec
        self.n = spec.n
        # reducers: (support mask, lead pair (a,b), replacement adds)
        self._reducers = []
        for g in minor_generators(spec):
            a, b = (i for i, e in enumerate(g.plus) if e)
            adds = tuple((i, e) for i, e in enumerate(g.minus) if e)
            mask = (1 << a) | (1 << b)
            self._reducers.append((mask, a, b, adds))
        self._gen_pairs = frozenset((r[1], r[2]) for r in self._reducers)
        self._nf_cache: dict[Monomial, Monomial] = {}
        self._acols = tuple(
            tuple(row[i] for row in toric_matrix(spec)) for i in range(self.n)
        )
        self._unit = (0,) * self.n

    # -- monomial level -------------------------------------------------

    def is_standard(self, mono: Monomial) -> bool:
        """True iff no leading term of a minor divides the monomial."""
        for a, b in self._gen_pairs:
            if mono[a] and mono[b]:
                return False
        return True

    def _find_reducer(self, mono: Monomial, mask: int):
        for gmask, a, b, adds in self._reducers:
            if gmask & mask == gmask:
                return a, b, adds
        return None

    def nf_monomial(self, mono: Monomial) -> Monomial:
        """The unique standard monomial equal to `mono` in the ring."""
        out = self._nf_cache.get(mono)
        if out is not None:
            return out
        cur = mono
        trail = []
        while True:
            mask = 0
            for i, e in enumerate(cur):
                if e:
                    mask |= 1 << i
            red = self._find_reducer(cur, mask)
            if red is None:
                break
            trail.append(cur)
            a, b, adds = red
            e = list(cur)
            e[a] -= 1
            e[b] -= 1
            for i, x in adds:
                e[i] += x
            cur = tuple(e)
            cached = self._nf_cache.get(cur)
            if cached is not None:
                cur = cached
                break
        for t in trail:
            self._nf_cache[t] = cur
        self._nf_cache[mono] = cur
        return cur

    def nf_monomial_randomized(self, mono: Monomial, rng) -> Monomial:
        """Normal form picking a random applicable rewrite each step.

        Used by tests to confirm the rewriting system is confluent; the
        cached deterministic engine is not consulted.
        """
        cur = mono
        while True:
            applicable = [r for r in self._reducers if cur[r[1]] and cur[r[2]]]
            if not applicable:
                return cur
            _, a, b, adds = applicable[rng.randrange(len(applicable))]
            e = list(cur)
            e[a] -= 1
            e[b] -= 1
            for i, x in adds:
                e[i] += x
            cur = tuple(e)

    def adegree(self, mono: Monomial) -> tuple[int, ...]:
        """Multidegree: the grading matrix applied to the exponent vector."""
        out = [0] * (self.spec.k + 1)
        for i, e in enumerate(mono):
            if e:
                col = self._acols[i]
                for j in range(len(out)):
                    out[j] += e * col[j]
        return tuple(out)

    # -- standard monomial enumeration ----------------------------------

    @lru_cache(maxsize=None)
    def _faces(self) -> tuple[tuple[int, ...], ...]:
        """All supports of standard monomials (0-based variable tuples).

        The forbidden squarefree quadrics are pairs, so the admissible
        supports are exactly the independent sets of the graph they span.
        """
        n = self.n
        adj = [0] * n
        for a, b in self._gen_pairs:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        faces = [()]
        frontier = [((), 0)]
        while frontier:
            nxt = []
            for verts, mask in frontier:
                start = verts[-1] + 1 if verts else 0
                for v in range(start, n):
                    if adj[v] & mask:
                        continue
                    f = verts + (v,)
                    faces.append(f)
                    nxt.append((f, mask | (1 << v)))
            frontier = nxt
        return tuple(faces)

    def standard_monomials(self, d: int) -> list[Monomial]:
        """All standard monomials of total degree d, lex-descending."""
        if d < 0:
            raise ValueError("degree must be non-negative")
        if d == 0:
            return [self._unit]
        out = []
        n = self.n
        for face in self._faces():
            s = len(face)
            if not 1 <= s <= d:
                continue
            for comp in _compositions(d, s):
                e = [0] * n
                for v, c in zip(face, comp):
                    e[v] = c
                out.append(tuple(e))
        out.sort(reverse=True)
        return out

    # -- element factory -------------------------------------------------

    def element(self, raw: dict, modulus: int | None = None) -> "Element":
        """Normal form of an arbitrary monomial->coefficient mapping."""
        terms: dict[Monomial, object] = {}
        for mono, c in raw.items():
            if not c:
                continue
            m = self.nf_monomial(tuple(mono))
            acc = terms.get(m, 0) + c
            if modulus is not None:
                acc %= modulus
            if acc:
                terms[m] = acc
            elif m in terms:
                del terms[m]
        if modulus is None:
            for m in list(terms):
                c = terms[m]
                if isinstance(c, Fraction) and c.denominator == 1:
                    terms[m] = int(c)
        return Element(self, terms, modulus)

    def zero(self, modulus: int | None = None) -> "Element":
        return Element(self, {}, modulus)

    def one(self, modulus: int | None = None) -> "Element":
        return Element(self, {self._unit: 1}, modulus)

    @lru_cache(maxsize=None)
    def var_elem(self, flat: int, sign: int = 1) -> "Element":
        """+-x_flat as a ring element (flat is 1-based)."""
        e = [0] * self.n
        e[flat - 1] = 1
        return Element(self, {tuple(e): sign}, None)

    def monomial_elem(self, pairs, sign: int = 1) -> "Element":
        """Signed monomial from (flat index, exponent) pairs."""
        e = [0] * self.n
        for flat, exp in pairs:
            e[flat - 1] += exp
        return self.element({tuple(e): sign})


def _compositions(total: int, parts: int):
    """All tuples of `parts` positive ints summing to `total`."""
    for cuts in combinations(range(1, total), parts - 1):
        prev = 0
        comp = []
        for c in cuts:
            comp.append(c - prev)
            prev = c
        comp.append(total - prev)
        yield tuple(comp)


class Element:
    """A ring element stored in normal form: standard monomials -> coeffs."""

    __slots__ = ("ring", "terms", "modulus")

    def __init__(self, ring: ScrollRing, terms: dict, modulus: int | None):
        self.ring = ring
        self.terms = terms
        self.modulus = modulus

    def _check(self, other: "Element") -> None:
        if self.ring.spec != other.ring.spec or self.modulus != other.modulus:
            raise ValueError("elements from different rings or coefficient domains")

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree (of the largest term); -1 for the zero element."""
        return max((mono_degree(m) for m in self.terms), default=-1)

    def adegree(self) -> tuple[int, ...]:
        """Multidegree, defined only for multihomogeneous elements."""
        degs = {self.ring.adegree(m) for m in self.terms}
        if len(degs) != 1:
            raise ValueError("element is not multihomogeneous")
        return degs.pop()

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        terms = dict(self.terms)
        q = self.modulus
        for m, c in other.terms.items():
            acc = terms.get(m, 0) + c
            if q is not None:
                acc %= q
            if acc:
                terms[m] = acc
            elif m in terms:
                del terms[m]
        return Element(self.ring, terms, q)

    def __neg__(self) -> "Element":
        q = self.modulus
        if q is None:
            return Element(self.ring, {m: -c for m, c in self.terms.items()}, q)
        return Element(self.ring, {m: (-c) % q for m, c in self.terms.items()}, q)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scalar_mul(self, c) -> "Element":
        q = self.modulus
        if q is not None:
            c %= q
        if not c:
            return Element(self.ring, {}, q)
        if q is None:
            return Element(self.ring, {m: x * c for m, x in self.terms.items()}, q)
        return Element(self.ring, {m: (x * c) % q for m, x in self.terms.items()}, q)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scalar_mul(other)
        self._check(other)
        raw: dict[Monomial, object] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                raw[m] = raw.get(m, 0) + ca * cb
        return self.ring.element(raw, self.modulus)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.ring.spec == other.ring.spec
            and self.modulus == other.modulus
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring.spec, self.modulus, tuple(sorted(self.terms.items()))))

    def eval_modp(self, values: list[int], p: int) -> int:
        """Evaluate at x_i = values[i-1] over F_p."""
        total = 0
        for m, c in self.terms.items():
            v = 1
            for i, e in enumerate(m):
                if e:
                    v = v * pow(values[i], e, p) % p
            if isinstance(c, Fraction):
                cv = c.numerator % p * pow(c.denominator % p, p - 2, p) % p
            else:
                cv = int(c) % p
            total = (total + cv * v) % p
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = _format_monomial(m)
            if self.modulus is None and c < 0:
                sign, mag = "-", -c
            else:
                sign, mag = "+", c
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__


def _format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


@lru_cache(maxsize=None)
def ring_for(spec: ScrollSpec) -> ScrollRing:
    return ScrollRing(spec)


# -- scroll-level convenience wrappers ----------------------------------

def is_standard(mono: Monomial, spec: ScrollSpec) -> bool:
    return ring_for(spec).is_standard(tuple(mono))


def normal_form(raw: dict, spec: ScrollSpec, modulus: int | None = None) -> Element:
    return ring_for(spec).element(raw, modulus)


def standard_monomials(spec: ScrollSpec, d: int) -> list[Monomial]:
    return ring_for(spec).standard_monomials(d)


def adegree(mono: Monomial, spec: ScrollSpec) -> tuple[int, ...]:
    return ring_for(spec).adegree(tuple(mono))


def multiply(a: Element, b: Element) -> Element:
    return a * b


def add(a: Element, b: Element) -> Element:
    return a + b


def negate(a: Element) -> Element:
    return -a


def scalar_mul(c, a: Element) -> Element:
    return a.scalar_mul(c)
