"""Differential constructors and the mapping-cone resolution for 2-scrolls.

Everything here is specific to k = 2.  Writing m, p for the block sizes
(m + p = n), the building blocks are:

  phi0        2 x (n-2), the scroll matrix with rows swapped and signed
  staircase   d x (d-1)(n-2), d-1 copies of phi0 overlapping by one row
  phi1        (n-2) x (n-2)(n-3), three column bands
  phi2        (n-2)(n-3) x (n-2)(n-3)^2, three row bands
  phi_i       block-diagonal recursion for i >= 3

The free resolutions of the ideals I1 = (x_1..x_m), I2 = (x_{m+1}..x_n)
and J = I1 n I2 are assembled from these, and the resolution of the
residue field is the mapping cone of the chain map alpha that lifts the
inclusion J -> I1 (+) I2, shifted by the augmentation.

Column offsets of the single-row u/v blocks inside phi2's central band
are not forced by the block shapes alone; this implementation pins the
u stack to the left edge and the v stack to the right edge of the band,
the unique placement for which phi1 @ phi2 vanishes (checked for every
block pair exercised by the test suite).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .scrolls import ScrollSpec
from .ring import Element, ScrollRing, ring_for
from .series import betti


class SparseMatrixR:
    """A matrix over the scroll ring stored as {(row, col): Element}.

    Indices are 0-based.  Zero elements are never stored; duplicate
    positions are rejected at construction.
    """

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: ScrollRing, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], Element] = {}
        if entries:
            for (r, c), e in (entries.items() if isinstance(entries, dict) else entries):
                self.set(r, c, e)

    def set(self, r: int, c: int, e: Element) -> None:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"entry ({r},{c}) outside {self.rows}x{self.cols}")
        if (r, c) in self.entries:
            raise ValueError(f"duplicate entry at ({r},{c})")
        if not e.is_zero():
            self.entries[(r, c)] = e

    def get(self, r: int, c: int) -> Element:
        return self.entries.get((r, c), self.ring.zero())

    def items_sorted(self):
        return sorted(self.entries.items())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMatrixR)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __matmul__(self, other: "SparseMatrixR") -> "SparseMatrixR":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: dict[int, list] = {}
        for (k, c), e in other.entries.items():
            by_row.setdefault(k, []).append((c, e))
        raw: dict[tuple[int, int], dict] = {}
        for (r, k), ea in self.entries.items():
            right = by_row.get(k)
            if not right:
                continue
            for c, eb in right:
                acc = raw.setdefault((r, c), {})
                for ma, ca in ea.terms.items():
                    for mb, cb in eb.terms.items():
                        mono = tuple(x + y for x, y in zip(ma, mb))
                        acc[mono] = acc.get(mono, 0) + ca * cb
        out = SparseMatrixR(self.ring, self.rows, other.cols)
        for pos, terms in raw.items():
            e = self.ring.element(terms)
            if not e.is_zero():
                out.entries[pos] = e
        return out

    def __neg__(self) -> "SparseMatrixR":
        out = SparseMatrixR(self.ring, self.rows, self.cols)
        out.entries = {pos: -e for pos, e in self.entries.items()}
        return out

    def eval_modp(self, values: list[int], p: int) -> np.ndarray:
        """Dense float64 image of the matrix at x_i = values[i-1] mod p."""
        out = np.zeros((self.rows, self.cols), dtype=np.float64)
        cache: dict = {}
        for (r, c), e in self.entries.items():
            key = id(e)
            v = cache.get(key)
            if v is None:
                v = e.eval_modp(values, p)
                cache[key] = v
            out[r, c] = v
        return out

    def to_json_obj(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, str(e)] for (r, c), e in self.items_sorted()],
        }

    def to_text_lines(self) -> list[str]:
        return [f"{r} {c} {e}" for (r, c), e in self.items_sorted()]

    def copy(self) -> "SparseMatrixR":
        out = SparseMatrixR(self.ring, self.rows, self.cols)
        out.entries = dict(self.entries)
        return out


def direct_sum(mats: list[SparseMatrixR]) -> SparseMatrixR:
    if not mats:
        raise ValueError("direct sum of nothing")
    ring = mats[0].ring
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = SparseMatrixR(ring, rows, cols)
    r0 = c0 = 0
    for m in mats:
        for (r, c), e in m.entries.items():
            out.entries[(r0 + r, c0 + c)] = e
        r0 += m.rows
        c0 += m.cols
    return out


def _require_two_blocks(spec: ScrollSpec) -> None:
    if spec.k != 2:
        raise ValueError(
            "resolution matrices are only defined for 2-block scrolls"
        )


def _phi0_columns(spec: ScrollSpec) -> list[tuple[int, int]]:
    """(top, bottom) flat variable indices per column of phi0 (1-based)."""
    m, n = spec.m, spec.n
    cols = [(j + 1, j) for j in range(1, m)]           # (x_{j+1}, -x_j)
    cols += [(j + 1, j) for j in range(m + 1, n)]      # (x_{j+1}, -x_j), 2nd block
    return cols


@lru_cache(maxsize=None)
def phi0(spec: ScrollSpec) -> SparseMatrixR:
    """2 x (n-2): second row of the scroll matrix over minus its first."""
    _require_two_blocks(spec)
    ring = ring_for(spec)
    out = SparseMatrixR(ring, 2, spec.n - 2)
    for c, (top, bot) in enumerate(_phi0_columns(spec)):
        out.entries[(0, c)] = ring.var_elem(top, 1)
        out.entries[(1, c)] = ring.var_elem(bot, -1)
    return out


def _staircase(spec: ScrollSpec, d: int) -> SparseMatrixR:
    """d x (d-1)(n-2): phi0 block b in rows b-1, b, columns (b-1)(n-2)..

    Allows d = 1 (a single zero-column row), which appears inside phi1
    when a block has size 2.
    """
    ring = ring_for(spec)
    w = spec.n - 2
    out = SparseMatrixR(ring, d, (d - 1) * w)
    base = phi0(spec)
    for b in range(d - 1):
        for (r, c), e in base.entries.items():
            out.entries[(b + r, b * w + c)] = e
    return out


def staircase(spec: ScrollSpec, d: int) -> SparseMatrixR:
    """Public staircase constructor; the overlap pattern needs d >= 2."""
    _require_two_blocks(spec)
    if d < 2:
        raise ValueError("staircase needs at least two rows")
    return _staircase(spec, d)


@lru_cache(maxsize=None)
def phi1(spec: ScrollSpec) -> SparseMatrixR:
    """(n-2) x (n-2)(n-3) in three column bands.

    Left: staircase of height m-1 in the top m-1 rows.  Middle (n-2 wide):
    x_{m+1} times an identity on the top rows, the tail x_{m+2}..x_n in
    row m-1, then -(x_1..x_{m-1}), -x_m down the remaining diagonal.
    Right: staircase of height p-1 in the bottom p-1 rows.
    """
    _require_two_blocks(spec)
    ring = ring_for(spec)
    m, p, n = spec.m, spec.p, spec.n
    w = n - 2
    out = SparseMatrixR(ring, w, w * (n - 3))
    left = _staircase(spec, m - 1)
    for (r, c), e in left.entries.items():
        out.entries[(r, c)] = e
    mid0 = (m - 2) * w
    for r in range(m - 1):
        out.entries[(r, mid0 + r)] = ring.var_elem(m + 1, 1)
    for l in range(1, p):
        out.entries[(m - 2, mid0 + m - 2 + l)] = ring.var_elem(m + 1 + l, 1)
    for c in range(1, m):
        out.entries[(m - 1, mid0 + c - 1)] = ring.var_elem(c, -1)
    for r in range(1, p):
        out.entries[(m - 2 + r, mid0 + m - 2 + r)] = ring.var_elem(m, -1)
    right = _staircase(spec, p - 1)
    for (r, c), e in right.entries.items():
        out.entries[(m - 1 + r, (m - 1) * w + c)] = e
    return out


def u_block(spec: ScrollSpec, i: int) -> SparseMatrixR:
    """(m-2)(n-2) x (n-2), zero except the scroll-matrix top row at row i(n-2)+m."""
    _require_two_blocks(spec)
    m, n = spec.m, spec.n
    if not 0 <= i <= m - 3:
        raise ValueError(f"u block index {i} out of range 0..{m - 3}")
    ring = ring_for(spec)
    out = SparseMatrixR(ring, (m - 2) * (n - 2), n - 2)
    row = i * (n - 2) + m - 1  # 0-based
    tops = [j for j in range(1, m)] + [j for j in range(m + 1, n)]
    for c, flat in enumerate(tops):
        out.entries[(row, c)] = ring.var_elem(flat, 1)
    return out


def v_block(spec: ScrollSpec, i: int) -> SparseMatrixR:
    """(p-2)(n-2) x (n-2), minus the scroll-matrix bottom row at row i(n-2)+m-1."""
    _require_two_blocks(spec)
    m, p, n = spec.m, spec.p, spec.n
    if not 0 <= i <= p - 3:
        raise ValueError(f"v block index {i} out of range 0..{p - 3}")
    ring = ring_for(spec)
    out = SparseMatrixR(ring, (p - 2) * (n - 2), n - 2)
    row = i * (n - 2) + m - 2  # 0-based
    bottoms = [j for j in range(2, m + 1)] + [j for j in range(m + 2, n + 1)]
    for c, flat in enumerate(bottoms):
        out.entries[(row, c)] = ring.var_elem(flat, -1)
    return out


@lru_cache(maxsize=None)
def phi2(spec: ScrollSpec) -> SparseMatrixR:
    """(n-2)(n-3) x (n-2)(n-3)^2 in three row bands.

    Top band: m-2 diagonal copies of phi1 over the left columns, with the
    u blocks stacked left-aligned in the central (n-2)(n-3) columns.
    Middle band: minus the height-(n-2) staircase on the central columns.
    Bottom band: the v blocks right-aligned in the central columns, then
    p-2 diagonal copies of phi1 over the right columns.
    """
    _require_two_blocks(spec)
    ring = ring_for(spec)
    m, p, n = spec.m, spec.p, spec.n
    w = n - 2
    rows = w * (n - 3)
    cols = w * (n - 3) ** 2
    out = SparseMatrixR(ring, rows, cols)
    f1 = phi1(spec)
    mid_c0 = (m - 2) * w * (n - 3)          # first central column
    # top band
    for b in range(m - 2):
        for (r, c), e in f1.entries.items():
            out.entries[(b * w + r, b * w * (n - 3) + c)] = e
        ub = u_block(spec, b)
        for (r, c), e in ub.entries.items():
            out.entries[(r, mid_c0 + b * w + c)] = e
    # middle band
    mid_r0 = (m - 2) * w
    st = _staircase(spec, n - 2)
    for (r, c), e in st.entries.items():
        out.entries[(mid_r0 + r, mid_c0 + c)] = -e
    # bottom band
    bot_r0 = (m - 1) * w
    right_c0 = (m - 1) * w * (n - 3)
    for b in range(p - 2):
        vb = v_block(spec, b)
        for (r, c), e in vb.entries.items():
            out.entries[(bot_r0 + r, mid_c0 + (m - 1 + b) * w + c)] = e
        for (r, c), e in f1.entries.items():
            out.entries[(bot_r0 + b * w + r, right_c0 + b * w * (n - 3) + c)] = e
    return out


@lru_cache(maxsize=None)
def phi(spec: ScrollSpec, i: int) -> SparseMatrixR:
    """phi_i; for i >= 3 the direct sum phi_{i-1}^(m-2) + phi_{i-2}^(n-3) + phi_{i-1}^(p-2)."""
    _require_two_blocks(spec)
    if i < 0:
        raise ValueError("phi index must be non-negative")
    if i == 0:
        return phi0(spec)
    if i == 1:
        return phi1(spec)
    if i == 2:
        return phi2(spec)
    m, p, n = spec.m, spec.p, spec.n
    parts = [phi(spec, i - 1)] * (m - 2) + [phi(spec, i - 2)] * (n - 3) \
        + [phi(spec, i - 1)] * (p - 2)
    return direct_sum(parts)


@lru_cache(maxsize=None)
def alpha(spec: ScrollSpec, i: int) -> SparseMatrixR:
    """Chain map lifting the inclusion of J into I1 (+) I2.

    alpha_0 is the n x (n-1) two-band matrix; for i >= 1 alpha_i is the
    diagonal x_{m+1} / -x_m square matrix split by the I1/I2 summands.
    """
    _require_two_blocks(spec)
    ring = ring_for(spec)
    m, p, n = spec.m, spec.p, spec.n
    if i < 0:
        raise ValueError("alpha index must be non-negative")
    if i == 0:
        out = SparseMatrixR(ring, n, n - 1)
        for r in range(m):
            out.entries[(r, r)] = ring.var_elem(m + 1, 1)
        for l in range(1, p):
            out.entries[(m - 1, m - 1 + l)] = ring.var_elem(m + 1 + l, 1)
        for c in range(1, m + 1):
            out.entries[(m, c - 1)] = ring.var_elem(c, -1)
        for r in range(2, p + 1):
            out.entries[(m + r - 1, m + r - 2)] = ring.var_elem(m, -1)
        return out
    top = (m - 1) * (n - 2) * (n - 3) ** (i - 1)
    bot = (p - 1) * (n - 2) * (n - 3) ** (i - 1)
    out = SparseMatrixR(ring, top + bot, top + bot)
    xm1 = ring.var_elem(m + 1, 1)
    xm = ring.var_elem(m, -1)
    for r in range(top):
        out.entries[(r, r)] = xm1
    for r in range(bot):
        out.entries[(top + r, top + r)] = xm
    return out


@dataclass
class Resolution:
    """A chain of differentials with their free-module ranks."""
    spec: ScrollSpec
    target: str  # "field", "maximal ideal", "J", "I1" or "I2"
    steps: list[SparseMatrixR]
    ranks: list[int]
    provenance: list[str] = field(default_factory=list)

    def __post_init__(self):
        for a, b in zip(self.steps, self.steps[1:]):
            if a.cols != b.rows:
                raise ValueError(
                    f"steps do not chain: {a.rows}x{a.cols} then {b.rows}x{b.cols}"
                )

    def to_json_obj(self) -> dict:
        return {
            "spec": {"blocks": list(self.spec.blocks)},
            "target": self.target,
            "ranks": [str(r) for r in self.ranks],
            "steps": [s.to_json_obj() for s in self.steps],
            "provenance": list(self.provenance),
        }


def _ideal_step(spec: ScrollSpec, target: str, i: int) -> tuple[SparseMatrixR, str]:
    ring = ring_for(spec)
    m, p, n = spec.m, spec.p, spec.n
    if target == "J":
        if i == 0:
            gens = [ring.monomial_elem([(j, 1), (m + 1, 1)]) for j in range(1, m + 1)]
            gens += [ring.monomial_elem([(m, 1), (m + 1 + l, 1)]) for l in range(1, p)]
            out = SparseMatrixR(ring, 1, n - 1)
            for c, e in enumerate(gens):
                out.entries[(0, c)] = e
            return out, "skew-diagonal generators"
        if i == 1:
            return staircase(spec, n - 1), f"staircase({n - 1})"
        return direct_sum([phi(spec, i - 1)] * (n - 2)), f"phi{i - 1}^+{n - 2}"
    if target == "I1":
        if i == 0:
            out = SparseMatrixR(ring, 1, m)
            for c in range(m):
                out.entries[(0, c)] = ring.var_elem(c + 1, 1)
            return out, "first-block variables"
        if i == 1:
            return staircase(spec, m), f"staircase({m})"
        return direct_sum([phi(spec, i - 1)] * (m - 1)), f"phi{i - 1}^+{m - 1}"
    if target == "I2":
        if i == 0:
            out = SparseMatrixR(ring, 1, p)
            for c in range(p):
                out.entries[(0, c)] = ring.var_elem(m + c + 1, 1)
            return out, "second-block variables"
        if i == 1:
            return staircase(spec, p), f"staircase({p})"
        return direct_sum([phi(spec, i - 1)] * (p - 1)), f"phi{i - 1}^+{p - 1}"
    raise ValueError(f"unknown resolution target {target!r}")


def resolution_of(spec: ScrollSpec, target: str, steps: int) -> Resolution:
    """Free resolution of J, I1 or I2, differentials 0..steps."""
    _require_two_blocks(spec)
    if steps < 1:
        raise ValueError("need at least one step beyond the generators")
    mats, prov = [], []
    for i in range(steps + 1):
        mat, label = _ideal_step(spec, target, i)
        mats.append(mat)
        prov.append(label)
    ranks = [mats[0].rows] + [s.cols for s in mats]
    return Resolution(spec, target, mats, ranks, prov)


def _cone_step(spec: ScrollSpec, i: int) -> tuple[SparseMatrixR, str]:
    """Differential i of the field resolution (i >= 1)."""
    ring = ring_for(spec)
    n = spec.n
    if i == 1:
        out = SparseMatrixR(ring, 1, n)
        for c in range(n):
            out.entries[(0, c)] = ring.var_elem(c + 1, 1)
        return out, "variables"
    g1, l1 = _ideal_step(spec, "I1", i - 1)
    g2, l2 = _ideal_step(spec, "I2", i - 1)
    g = direct_sum([g1, g2])
    a = alpha(spec, i - 2)
    if i == 2:
        out = SparseMatrixR(ring, g.rows, g.cols + a.cols)
        out.entries.update(g.entries)
        for (r, c), e in a.entries.items():
            out.entries[(r, g.cols + c)] = e
        return out, f"[{l1} + {l2} | alpha0]"
    j, lj = _ideal_step(spec, "J", i - 2)
    out = SparseMatrixR(ring, g.rows + j.rows, g.cols + j.cols)
    out.entries.update(g.entries)
    for (r, c), e in a.entries.items():
        out.entries[(r, g.cols + c)] = e
    for (r, c), e in j.entries.items():
        out.entries[(g.rows + r, g.cols + c)] = -e
    return out, f"[{l1} + {l2} | alpha{i - 2}; 0 | -{lj}]"


def field_resolution(spec: ScrollSpec, steps: int) -> Resolution:
    """Minimal free resolution of the residue field, differentials 1..steps.

    Step ranks are checked against the closed-form Betti numbers.
    """
    _require_two_blocks(spec)
    if steps < 1:
        raise ValueError("need at least one step")
    mats, prov = [], []
    for i in range(1, steps + 1):
        mat, label = _cone_step(spec, i)
        mats.append(mat)
        prov.append(label)
    ranks = [1] + [s.cols for s in mats]
    for i, r in enumerate(ranks):
        expect = betti(spec, i)
        if r != expect:
            raise AssertionError(
                f"free module rank {r} at step {i} differs from Betti number {expect}"
            )
    return Resolution(spec, "field", mats, ranks, prov)
