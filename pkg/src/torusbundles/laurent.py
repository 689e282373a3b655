"""Complex tori as multiplicative quotients, and Laurent polynomial matrices.

A torus is the quotient C*/<q> of the punctured plane by the cyclic group
generated by the nome q = exp(2*pi*i*tau), with tau in the upper half
plane.  Vector bundles on the quotient are described elsewhere in this
package by matrix valued generators A(u); here we provide the coefficient
ring those generators live in.

Entries are Laurent polynomials in one variable u: exact integer
exponents, double precision complex coefficients.  After every arithmetic
operation coefficients smaller than ``PRUNE_REL`` times the largest one
(taken over the whole matrix, for matrix operations) are dropped, so
supports stay finite and exactly representable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

__all__ = [
    "PRUNE_REL",
    "CLOSE_TOL",
    "TorusBundleError",
    "NotInvertibleInRing",
    "DetVanishesOnCstar",
    "NotNilpotent",
    "Torus",
    "same_torus",
    "LaurentPoly",
    "LaurentMatrix",
    "poly_close",
    "matrices_close",
    "block_diagonal",
    "passes_sampled_invertibility",
    "torus_to_json",
    "torus_from_json",
    "matrix_to_json",
    "matrix_from_json",
]

#: relative pruning threshold for stored coefficients
PRUNE_REL = 1e-12

#: base tolerance for identity checks; always scaled by (1 + largest input coefficient)
CLOSE_TOL = 1e-9

_SCALARS = (int, float, complex, np.integer, np.floating, np.complexfloating)


class TorusBundleError(Exception):
    """Base class for the domain errors raised by this package."""


class NotInvertibleInRing(TorusBundleError):
    """A matrix inverse was requested but det is not a unit (a monomial)."""


class DetVanishesOnCstar(TorusBundleError):
    """A determinant has a zero in the working annulus, so the winding
    number that defines the degree is not available."""


class NotNilpotent(TorusBundleError):
    """A matrix expected to be nilpotent (after shifting an eigenvalue)
    failed the numerical nilpotency check."""


# ---------------------------------------------------------------------------
# the torus
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Torus:
    """The multiplicative torus C*/<q> with modulus tau, Im tau > 0.

    ``q = exp(2*pi*i*tau)`` and ``s = exp(pi*i*tau)`` is the fixed square
    root of q used whenever half integer powers of q appear; q is stored
    as s*s so the relation between the two is exact.
    """

    tau: complex
    s: complex = field(init=False, repr=False, compare=False)
    q: complex = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        tau = complex(self.tau)
        if not (math.isfinite(tau.real) and math.isfinite(tau.imag)):
            raise ValueError(f"tau must be finite, got {tau!r}")
        if tau.imag <= 0:
            raise ValueError(f"tau must have positive imaginary part, got {tau!r}")
        s = cmath.exp(1j * cmath.pi * tau)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "q", s * s)


def same_torus(t1: Torus, t2: Torus, tol: float = 1e-12) -> bool:
    return abs(t1.tau - t2.tau) <= tol * (1.0 + abs(t1.tau))


def _require_same_torus(t1: Torus, t2: Torus) -> None:
    if not same_torus(t1, t2):
        raise ValueError(f"torus mismatch: tau={t1.tau!r} vs tau={t2.tau!r}")


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """A Laurent polynomial sum_k c_k u^k with finite support.

    Stored as a dict from integer exponent to complex coefficient.
    Construction prunes coefficients below ``PRUNE_REL`` times the largest
    one (or below an explicit absolute ``threshold``) and rejects
    non-finite values.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Optional[Mapping[int, complex]] = None, threshold: Optional[float] = None):
        c: dict[int, complex] = {}
        if coeffs:
            for k, v in coeffs.items():
                if not isinstance(k, (int, np.integer)):
                    raise TypeError(f"exponent must be an integer, got {k!r}")
                v = complex(v)
                if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                    raise ValueError(f"non-finite coefficient {v!r} at exponent {k}")
                if v != 0:
                    c[int(k)] = c.get(int(k), 0j) + v
        if c:
            if threshold is None:
                threshold = PRUNE_REL * max(abs(v) for v in c.values())
            c = {k: v for k, v in c.items() if abs(v) > threshold}
        self._c = c

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1.0})

    @classmethod
    def constant(cls, c: complex) -> "LaurentPoly":
        return cls({0: complex(c)})

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "LaurentPoly":
        return cls({k: complex(c)})

    # -- inspection ---------------------------------------------------------

    def terms(self) -> list[tuple[int, complex]]:
        """Sorted (exponent, coefficient) pairs, ascending exponent."""
        return sorted(self._c.items())

    @property
    def support(self) -> list[int]:
        return sorted(self._c)

    @property
    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    def constant_value(self) -> complex:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self._c.get(0, 0j)

    def is_monomial(self) -> Optional[tuple[int, complex]]:
        """Return (k, c) when the polynomial is exactly c*u^k, else None.

        Monomials are the units of the Laurent ring, so this is the exact
        invertibility test for determinants.
        """
        if len(self._c) != 1:
            return None
        [(k, c)] = self._c.items()
        return k, c

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    def max_coeff(self) -> float:
        return max((abs(v) for v in self._c.values()), default=0.0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0j) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {k: -v for k, v in self._c.items()}
        return out

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return LaurentPoly({k: v * other for k, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return LaurentPoly.zero()
        la, va = self._dense()
        lb, vb = other._dense()
        conv = np.convolve(va, vb)
        return LaurentPoly({la + lb + i: c for i, c in enumerate(conv) if c != 0})

    __rmul__ = __mul__

    def __pow__(self, m: int):
        if not isinstance(m, (int, np.integer)):
            return NotImplemented
        if m < 0:
            mono = self.is_monomial()
            if mono is None:
                raise NotInvertibleInRing(f"negative power of a non-monomial: {self}")
            k, c = mono
            return LaurentPoly.monomial(k * int(m), c ** int(m))
        out = LaurentPoly.one()
        for _ in range(int(m)):
            out = out * self
        return out

    def substitute_scaled(self, c: complex) -> "LaurentPoly":
        """Substitute u -> c*u for nonzero c, mapping u^k to c^k u^k.

        No pruning happens here: rescaling cannot introduce roundoff
        junk, and with |c| far from 1 the spread of the c^k weights
        would otherwise push genuinely meaningful coefficients below a
        relative cutoff tied to the largest one.
        """
        c = complex(c)
        if c == 0:
            raise ValueError("substitution scale must be nonzero")
        return LaurentPoly({k: v * c ** k for k, v in self._c.items()}, threshold=0.0)

    def __call__(self, u0: complex) -> complex:
        return sum((v * complex(u0) ** k for k, v in self._c.items()), 0j)

    # -- misc ---------------------------------------------------------------

    def _dense(self) -> tuple[int, np.ndarray]:
        lo = min(self._c)
        hi = max(self._c)
        arr = np.zeros(hi - lo + 1, dtype=complex)
        for k, v in self._c.items():
            arr[k - lo] = v
        return lo, arr

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    __hash__ = None  # mutable-float content; compare with poly_close instead

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, v in self.terms():
            cs = _format_complex(v)
            if k == 0:
                parts.append(cs)
            elif k == 1:
                parts.append(f"{cs}*u")
            else:
                parts.append(f"{cs}*u^{k}")
        return " + ".join(parts)


def _as_poly(x) -> Optional[LaurentPoly]:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, _SCALARS):
        return LaurentPoly.constant(x)
    return None


def _format_complex(v: complex) -> str:
    if v.imag == 0:
        return f"{v.real:.10g}"
    return f"({v.real:.10g}{v.imag:+.10g}i)"


def poly_close(a: LaurentPoly, b: LaurentPoly, tol: float = CLOSE_TOL) -> bool:
    """Compare coefficientwise, to tol * (1 + largest input coefficient)."""
    scale = 1.0 + max(a.max_coeff(), b.max_coeff())
    return (a - b).max_coeff() <= tol * scale


# ---------------------------------------------------------------------------
# Laurent polynomial matrices
# ---------------------------------------------------------------------------


class LaurentMatrix:
    """A square matrix with LaurentPoly entries.

    Treated as immutable; all operations return new matrices.  Matrix
    level operations prune coefficients relative to the largest
    coefficient of the whole result, not entry by entry.
    """

    __slots__ = ("_rows", "_det")

    def __init__(self, rows: Sequence[Sequence], prune: bool = True):
        n = len(rows)
        if n == 0:
            raise ValueError("matrix must be nonempty")
        coerced = []
        for row in rows:
            if len(row) != n:
                raise ValueError(f"matrix must be square, got row of length {len(row)} in size {n}")
            coerced.append([self._coerce(e) for e in row])
        if prune:
            gmax = max((e.max_coeff() for row in coerced for e in row), default=0.0)
            thr = PRUNE_REL * gmax
            coerced = [[LaurentPoly(dict(e._c), threshold=thr) for e in row] for row in coerced]
        self._rows = tuple(tuple(row) for row in coerced)
        self._det: Optional[LaurentPoly] = None

    @staticmethod
    def _coerce(e) -> LaurentPoly:
        p = _as_poly(e)
        if p is None:
            raise TypeError(f"cannot use {type(e).__name__} as a matrix entry")
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls([[LaurentPoly.one() if i == j else LaurentPoly.zero() for j in range(n)] for i in range(n)], prune=False)

    @classmethod
    def zeros(cls, n: int) -> "LaurentMatrix":
        return cls([[LaurentPoly.zero()] * n for _ in range(n)], prune=False)

    @classmethod
    def from_constant(cls, arr) -> "LaurentMatrix":
        a = np.asarray(arr, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square array, got shape {a.shape}")
        return cls([[LaurentPoly.constant(a[i, j]) for j in range(a.shape[1])] for i in range(a.shape[0])])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "LaurentMatrix":
        n = len(entries)
        rows = [[cls._coerce(entries[i]) if i == j else LaurentPoly.zero() for j in range(n)] for i in range(n)]
        return cls(rows, prune=False)

    # -- inspection ---------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._rows)

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self._rows[i][j]

    def rows(self) -> list[list[LaurentPoly]]:
        return [list(row) for row in self._rows]

    def max_coeff(self) -> float:
        return max((e.max_coeff() for row in self._rows for e in row), default=0.0)

    def is_constant(self) -> bool:
        return all(e.is_constant() for row in self._rows for e in row)

    def constant_matrix(self) -> np.ndarray:
        if not self.is_constant():
            raise ValueError("matrix has non-constant entries")
        return np.array([[e.constant_value() for e in row] for row in self._rows], dtype=complex)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        self._check_size(other)
        return LaurentMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)])

    def __sub__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        self._check_size(other)
        return LaurentMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)])

    def __neg__(self):
        return LaurentMatrix([[-e for e in row] for row in self._rows], prune=False)

    def __matmul__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        self._check_size(other)
        n = self.n
        cols = list(zip(*other._rows))
        out = []
        for row in self._rows:
            out_row = []
            for col in cols:
                acc = LaurentPoly.zero()
                for a, b in zip(row, col):
                    if a._c and b._c:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return LaurentMatrix(out)

    def scaled(self, factor) -> "LaurentMatrix":
        """Multiply every entry by a scalar or a LaurentPoly."""
        f = self._coerce(factor)
        return LaurentMatrix([[e * f for e in row] for row in self._rows])

    def substitute_scaled(self, c: complex) -> "LaurentMatrix":
        return LaurentMatrix([[e.substitute_scaled(c) for e in row] for row in self._rows], prune=False)

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix([list(col) for col in zip(*self._rows)], prune=False)

    def eval_at(self, u0: complex) -> np.ndarray:
        return np.array([[e(u0) for e in row] for row in self._rows], dtype=complex)

    def kron(self, other: "LaurentMatrix") -> "LaurentMatrix":
        """Kronecker product, row major block layout."""
        n, m = self.n, other.n
        rows = []
        for i in range(n):
            for k in range(m):
                rows.append([self._rows[i][j] * other._rows[k][l] for j in range(n) for l in range(m)])
        return LaurentMatrix(rows)

    def _check_size(self, other: "LaurentMatrix") -> None:
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")

    # -- determinant and inverse -------------------------------------------

    def det(self) -> LaurentPoly:
        """Determinant as a LaurentPoly.

        Laplace expansion with subset caching up to size 8; beyond that
        the determinant is sampled on roots of unity and recovered by
        FFT interpolation, which is backward stable where fraction free
        elimination is not over float coefficients.
        """
        if self._det is None:
            if self.n <= 8:
                self._det = _det_laplace(self._rows)
            else:
                self._det = _det_eval_interp(self._rows)
        return self._det

    def adjugate(self) -> "LaurentMatrix":
        n = self.n
        if n == 1:
            return LaurentMatrix([[LaurentPoly.one()]], prune=False)
        adj = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [[self._rows[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
                cof = _det_laplace(tuple(tuple(r) for r in minor))
                adj[i][j] = cof if (i + j) % 2 == 0 else -cof
        return LaurentMatrix(adj)

    def inverse_monomial_det(self) -> "LaurentMatrix":
        """Inverse over the Laurent ring; requires det to be a monomial."""
        mono = self.det().is_monomial()
        if mono is None:
            raise NotInvertibleInRing(
                f"det = {self.det()} is not a monomial, so the matrix has no inverse with Laurent entries"
            )
        k, c = mono
        unit_inv = LaurentPoly.monomial(-k, 1.0 / c)
        if self.n <= 8:
            return self.adjugate().scaled(unit_inv)
        return _inverse_by_interpolation(self, k, c)

    # -- io and display -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return matrix_to_json(self)

    @classmethod
    def from_json_dict(cls, data: dict) -> "LaurentMatrix":
        return matrix_from_json(data)

    def __repr__(self):
        body = "; ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self._rows)
        return f"LaurentMatrix[{body}]"


# ---------------------------------------------------------------------------
# determinant backends
# ---------------------------------------------------------------------------


def _det_laplace(rows) -> LaurentPoly:
    """Expansion along rows with caching over column subsets, O(n 2^n)."""
    n = len(rows)
    prev = {0: LaurentPoly.one()}
    for i in range(n):
        cur: dict[int, LaurentPoly] = {}
        for mask, val in prev.items():
            if val.is_zero:
                continue
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                e = rows[i][j]
                if not e._c:
                    continue
                sign = -1 if bin(mask >> (j + 1)).count("1") % 2 else 1
                term = val * e
                if sign < 0:
                    term = -term
                nm = mask | bit
                cur[nm] = term if nm not in cur else cur[nm] + term
        prev = cur
        if not prev:
            return LaurentPoly.zero()
    return prev.get((1 << n) - 1, LaurentPoly.zero())


def _det_eval_interp(rows) -> LaurentPoly:
    """Determinant by evaluation on roots of unity and FFT interpolation.

    The support of det is bounded by the sums of per row extreme
    exponents, so sampling one full window W of roots of unity determines
    every coefficient.  A nonzero det of that support has at most W - 1
    zeros in C*, so when every sampled matrix is numerically rank
    deficient the determinant is identically zero.
    """
    lo = hi = 0
    for row in rows:
        exps = [e for p in row if p._c for e in (p.min_exp, p.max_exp)]
        if not exps:
            return LaurentPoly.zero()
        lo += min(exps)
        hi += max(exps)
    width = hi - lo + 1
    vals = np.empty(width, dtype=complex)
    singular_everywhere = True
    for t in range(width):
        u = cmath.exp(2j * cmath.pi * t / width)
        m = np.array([[p(u) for p in row] for row in rows], dtype=complex)
        if singular_everywhere:
            s = np.linalg.svd(m, compute_uv=False)
            if s[0] != 0.0 and s[-1] > 1e-10 * s[0]:
                singular_everywhere = False
        vals[t] = np.linalg.det(m)
    if singular_everywhere:
        return LaurentPoly.zero()
    coeffs = np.fft.fft(vals) / width
    entry: dict[int, complex] = {}
    for t in range(width):
        k = (t - lo) % width + lo
        c = coeffs[t]
        if c != 0:
            entry[k] = entry.get(k, 0j) + c
    return LaurentPoly(entry)


def _inverse_by_interpolation(mat: LaurentMatrix, det_k: int, det_c: complex) -> LaurentMatrix:
    """Inverse of a monomial det matrix, entries recovered from values on
    roots of unity.  Used above the Laplace size cutoff."""
    n = mat.n
    rowmin, rowmax = [], []
    for row in mat._rows:
        exps = [e for p in row if p._c for e in (p.min_exp, p.max_exp)]
        rowmin.append(min(exps))
        rowmax.append(max(exps))
    lo = sum(rowmin) - max(rowmin) - det_k
    hi = sum(rowmax) - min(rowmax) - det_k
    width = hi - lo + 1
    samples = np.array([cmath.exp(2j * cmath.pi * t / width) for t in range(width)])
    vals = np.stack([np.linalg.inv(mat.eval_at(u)) for u in samples])
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            coeffs = np.fft.fft(vals[:, i, j]) / width
            # fft bin t collects the exponents congruent to t mod width;
            # the support fits in one width window, so remap into [lo, hi]
            entry = {}
            for t in range(width):
                k = (t - lo) % width + lo
                c = coeffs[t]
                if c != 0:
                    entry[k] = entry.get(k, 0j) + c
            row.append(LaurentPoly(entry))
        rows.append(row)
    return LaurentMatrix(rows)


# ---------------------------------------------------------------------------
# comparisons, assembly, invertibility sampling
# ---------------------------------------------------------------------------


def matrices_close(a: LaurentMatrix, b: LaurentMatrix, tol: float = CLOSE_TOL) -> bool:
    """Entrywise coefficient comparison, to tol * (1 + largest input coefficient)."""
    if a.n != b.n:
        return False
    scale = 1.0 + max(a.max_coeff(), b.max_coeff())
    return (a - b).max_coeff() <= tol * scale


def block_diagonal(blocks: Sequence[LaurentMatrix]) -> LaurentMatrix:
    if not blocks:
        raise ValueError("need at least one block")
    total = sum(b.n for b in blocks)
    rows = [[LaurentPoly.zero()] * total for _ in range(total)]
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[off + i][off + j] = b.entry(i, j)
        off += b.n
    return LaurentMatrix(rows, prune=False)


def passes_sampled_invertibility(mat: LaurentMatrix, samples: int = 16) -> bool:
    """Necessary condition for invertibility of u -> mat(u) on C*.

    Evaluates det on equally spaced points of the unit circle and flags
    matrices whose determinant is zero, or degenerates by more than nine
    orders of magnitude between sample points.  Scale free, so tiny but
    honest determinants (for instance high powers of q) pass.
    """
    d = mat.det()
    if d.is_zero:
        return False
    vals = [abs(d(cmath.exp(2j * cmath.pi * t / samples))) for t in range(samples)]
    top = max(vals)
    if top == 0.0:
        return False
    return min(vals) > 1e-9 * top


# ---------------------------------------------------------------------------
# json
# ---------------------------------------------------------------------------


def torus_to_json(t: Torus) -> dict:
    return {"tau": [t.tau.real, t.tau.imag]}


def torus_from_json(data: dict) -> Torus:
    re, im = data["tau"]
    return Torus(complex(float(re), float(im)))


def matrix_to_json(mat: LaurentMatrix) -> dict:
    entries = []
    for row in mat._rows:
        for e in row:
            entries.append([{"k": k, "re": c.real, "im": c.imag} for k, c in e.terms()])
    return {"n": mat.n, "entries": entries}


def matrix_from_json(data: dict) -> LaurentMatrix:
    n = int(data["n"])
    entries = data["entries"]
    if len(entries) != n * n:
        raise ValueError(f"expected {n * n} entries for size {n}, got {len(entries)}")
    rows = []
    it = iter(entries)
    for _ in range(n):
        row = []
        for _ in range(n):
            terms = next(it)
            row.append(LaurentPoly({int(t["k"]): complex(float(t["re"]), float(t["im"])) for t in terms}))
        rows.append(row)
    return LaurentMatrix(rows, prune=False)
