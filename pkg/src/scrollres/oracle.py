"""Independent recomputation of graded Betti numbers over a finite field.

This is the anti-circularity check for the whole package: no resolution
formulas are consulted.  The minimal free resolution of the residue
field is rebuilt degree by degree from scratch -- multiplication maps on
standard-monomial bases, kernels of the previous differential, minimal
generator extraction -- and the generator counts are the graded Betti
numbers beta_{i,j}.

Because every monomial has a single standard monomial as normal form,
multiplication by a variable is a 0/1 matrix in the graded bases.  At
homological step i only internal degrees i-1 .. i+2 are materialised:
new generators can only appear there when the earlier window entries
vanished, and each window entry is asserted rather than assumed.  The
identities used are

  beta_{i,j} = dim ker(d_{i-1})_j - rank (d_i)_j        for j = i+1, i+2
  beta_{i,i} = dim ker(d_{i-1})_i
  beta_{i,i-1} = dim ker(d_{i-1})_{i-1}

where d_i is assembled from a kernel basis in degree i, so its image in
degrees i+1 and i+2 is exactly the submodule generated by that kernel
(degree i+2 additionally uses that beta_{i,i+1} = 0; a nonzero value
there is reported as a linearity failure in its own right).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .linalg import is_prime, nullspace_modp, rank_modp
from .ring import ring_for
from .scrolls import ScrollSpec
from .series import betti

_MAX_N = 7
_MAX_IMAX = 5


@dataclass(frozen=True)
class GradedBasis:
    """Standard monomials of one total degree, lex-descending."""
    spec: ScrollSpec
    degree: int
    monomials: tuple

    def __len__(self) -> int:
        return len(self.monomials)


@dataclass
class BettiTable:
    modulus: int
    entries: dict = field(default_factory=dict)  # (i, j) -> int
    imax: int = 0

    def get(self, i: int, j: int) -> int | None:
        return self.entries.get((i, j))

    def diagonal(self) -> list[int]:
        return [self.entries.get((i, i), 0) for i in range(self.imax + 1)]

    def to_json_obj(self) -> dict:
        items = sorted(self.entries.items())
        return {
            "modulus": self.modulus,
            "entries": [
                {"i": i, "j": j, "value": str(v)} for (i, j), v in items
            ],
        }


@lru_cache(maxsize=None)
def graded_basis(spec: ScrollSpec, d: int) -> GradedBasis:
    ring = ring_for(spec)
    return GradedBasis(spec, d, tuple(ring.standard_monomials(d)))


@lru_cache(maxsize=None)
def _mult_table(spec: ScrollSpec, var: int, d: int) -> tuple[int, ...]:
    """Row index in basis d+1 of x_var * (each basis-d monomial)."""
    ring = ring_for(spec)
    src = graded_basis(spec, d).monomials
    dst = {m: i for i, m in enumerate(graded_basis(spec, d + 1).monomials)}
    out = []
    for mono in src:
        e = list(mono)
        e[var - 1] += 1
        out.append(dst[ring.nf_monomial(tuple(e))])
    return tuple(out)


def multiplication_map(spec: ScrollSpec, var: int, d: int, modulus: int) -> np.ndarray:
    """Matrix of multiplication by x_var from degree d to d+1 over F_q."""
    if not 1 <= var <= spec.n:
        raise ValueError(f"variable index {var} out of range")
    if d < 0:
        raise ValueError("degree must be non-negative")
    if not is_prime(modulus):
        raise ValueError("modulus must be prime")
    rows = len(graded_basis(spec, d + 1))
    cols = len(graded_basis(spec, d))
    out = np.zeros((rows, cols), dtype=np.int64)
    for col, row in enumerate(_mult_table(spec, var, d)):
        out[row, col] = 1
    return out


def _degree_matrix(spec: ScrollSpec, cstack: np.ndarray, a: int, p: int) -> np.ndarray:
    """Degree piece of a differential whose entries are linear forms.

    `cstack` has shape (G_out, n, G_in): coefficient of x_{v+1} in the
    (g, h) entry.  The returned matrix maps (h, mu in R_a) to
    (g, normal form of x*mu in R_{a+1}); float64, reduced mod p.
    """
    g_out, n, g_in = cstack.shape
    rb = len(graded_basis(spec, a + 1))
    ra = len(graded_basis(spec, a))
    out = np.zeros((g_out * rb, g_in * ra), dtype=np.float64)
    view = out.reshape(g_out, rb, g_in, ra)
    for v in range(n):
        table = _mult_table(spec, v + 1, a)
        cv = cstack[:, v, :]
        for mu, rho in enumerate(table):
            view[:, rho, :, mu] += cv
    return out  # entries are small sums; consumers reduce mod p on entry


def betti_oracle(spec: ScrollSpec, imax: int, modulus: int) -> BettiTable:
    """Graded Betti numbers of the residue field over F_modulus.

    Entries are stored for the window j in {i-1, i, i+1, i+2} at each
    homological step i <= imax, plus beta_{0,0} = 1.
    """
    if not is_prime(modulus):
        raise ValueError("modulus must be prime")
    if spec.n > _MAX_N or imax > _MAX_IMAX:
        raise ValueError(
            f"resource guard: oracle supports n <= {_MAX_N}, imax <= {_MAX_IMAX}"
        )
    if imax < 1:
        raise ValueError("imax must be at least 1")
    p = modulus
    n = spec.n
    table = BettiTable(p, {(0, 0): 1}, imax)

    def rdim(d: int) -> int:
        return len(graded_basis(spec, d)) if d >= 0 else 0

    # step 1: generators of the maximal ideal
    table.entries[(1, 0)] = 0  # the augmentation kernel starts in degree 1
    table.entries[(1, 1)] = n
    cstack = np.eye(n, dtype=np.float64).reshape(1, n, n)
    prev_nullity = {2: rdim(2), 3: rdim(3)}  # ker(d_0)_j = R_j for j >= 1
    for j in (2, 3):
        r = rank_modp(_degree_matrix(spec, cstack, j - 1, p), p, overwrite=True)
        table.entries[(1, j)] = prev_nullity[j] - r
        prev_nullity[j] = len(graded_basis(spec, j - 1)) * n - r  # ker(d_1)_j

    g_prev = n  # generators of the current last free module
    for i in range(2, imax + 1):
        # degree i-1: columns of d_{i-1} there are the kernel basis itself
        m_lo = _degree_matrix(spec, cstack, 0, p)
        table.entries[(i, i - 1)] = m_lo.shape[1] - rank_modp(m_lo, p, overwrite=True)
        # degree i: fresh minimal generators
        m_mid = _degree_matrix(spec, cstack, 1, p)
        kernel = nullspace_modp(m_mid, p)
        g_cur = kernel.shape[1]
        table.entries[(i, i)] = g_cur
        nullity_mid = {
            i + 1: prev_nullity[i + 1],
            i + 2: prev_nullity[i + 2] if i + 2 in prev_nullity else None,
        }
        if nullity_mid[i + 2] is None:
            m = _degree_matrix(spec, cstack, 3, p)
            nullity_mid[i + 2] = m.shape[1] - rank_modp(m, p, overwrite=True)
        if g_cur == 0:
            table.entries[(i, i + 1)] = nullity_mid[i + 1]
            table.entries[(i, i + 2)] = nullity_mid[i + 2]
            for ii in range(i + 1, imax + 1):
                for jj in range(ii - 1, ii + 3):
                    table.entries[(ii, jj)] = 0
            return table
        new_stack = np.ascontiguousarray(
            kernel.reshape(g_prev, n, g_cur).astype(np.float64)
        )
        # image ranks never exceed the matching kernel dims (the complex
        # property holds by construction), so they double as stop bounds
        m_up = _degree_matrix(spec, new_stack, 1, p)
        r_up = rank_modp(m_up, p, stop_at=nullity_mid[i + 1], overwrite=True)
        table.entries[(i, i + 1)] = nullity_mid[i + 1] - r_up
        m_up2 = _degree_matrix(spec, new_stack, 2, p)
        r_up2 = rank_modp(m_up2, p, stop_at=nullity_mid[i + 2], overwrite=True)
        table.entries[(i, i + 2)] = nullity_mid[i + 2] - r_up2
        # the next step reads ker(d_i)_{i+2}; ker(d_i)_{i+3} is done lazily
        prev_nullity = {i + 2: g_cur * rdim(2) - r_up2}
        cstack = new_stack
        g_prev = g_cur
    return table


def compare_with_formula(spec: ScrollSpec, imax: int, modulus: int) -> dict:
    """Oracle table vs the closed-form Betti numbers; any mismatch reported."""
    table = betti_oracle(spec, imax, modulus)
    mismatches = []
    for i in range(imax + 1):
        want = betti(spec, i)
        got = table.get(i, i)
        if got != want:
            mismatches.append({"i": i, "j": i, "oracle": got, "formula": want})
    for (i, j), v in sorted(table.entries.items()):
        if i != j and v != 0:
            mismatches.append({"i": i, "j": j, "oracle": v, "formula": 0})
    return {
        "spec": str(spec),
        "modulus": modulus,
        "imax": imax,
        "ok": not mismatches,
        "mismatches": mismatches,
        "diagonal": table.diagonal(),
        "expected": [betti(spec, i) for i in range(imax + 1)],
        "table": table,
    }
