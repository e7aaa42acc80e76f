"""Lie algebras given by structure constants, and their exact invariants.

A LieAlgebra is a structure-constant tensor over a fixed basis: only pairs
(i, j) with i < j are stored, antisymmetry is structural.  All invariants
(center, series, derivations, characteristic sequence) are computed over the
rationals with no rounding anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .exactlin import (
    DimensionError,
    Matrix,
    Subspace,
    nullspace_of_rows,
    rank as matrix_rank,
)

_ZERO = Fraction(0)


class NotNilpotentError(ValueError):
    """Raised when an invariant defined only for nilpotent algebras is requested."""


class JacobiViolationError(ValueError):
    """Raised by constructors that would emit a tensor violating the Jacobi identity."""

    def __init__(self, report: "JacobiReport"):
        self.report = report
        first = report.violations[0] if report.violations else None
        super().__init__(f"Jacobi identity fails, first violation at {first}")


def _default_labels(dim: int) -> tuple[str, ...]:
    return tuple(f"X{i + 1}" for i in range(dim))


class LieAlgebra:
    """Structure-constant presentation of a finite-dimensional Lie algebra.

    `tensor` maps a pair (i, j) with i < j to {k: C^k_ij}; only nonzero
    coefficients are kept.  Equality compares dimension and tensor (labels are
    presentation only).
    """

    __slots__ = ("dim", "basis_labels", "_tensor")

    def __init__(
        self,
        dim: int,
        tensor: Mapping[tuple[int, int], Mapping[int, object]],
        basis_labels: Sequence[str] | None = None,
    ):
        if dim < 0:
            raise DimensionError("dimension must be nonnegative")
        clean: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), fiber in tensor.items():
            if not (0 <= i < j < dim):
                raise DimensionError(f"bad bracket pair ({i}, {j}) for dimension {dim}")
            entries = {}
            for k, c in fiber.items():
                if not 0 <= k < dim:
                    raise DimensionError(f"bad target index {k} for dimension {dim}")
                val = c if type(c) is Fraction else Fraction(c)
                if val:
                    entries[k] = val
            if entries:
                clean[(i, j)] = entries
        labels = _default_labels(dim) if basis_labels is None else tuple(basis_labels)
        if len(labels) != dim:
            raise DimensionError("label count does not match dimension")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "basis_labels", labels)
        object.__setattr__(self, "_tensor", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return _ZERO
        if i < j:
            return self._tensor.get((i, j), {}).get(k, _ZERO)
        return -self._tensor.get((j, i), {}).get(k, _ZERO)

    def fiber(self, i: int, j: int) -> dict[int, Fraction]:
        """[X_i, X_j] as a sparse vector {k: coefficient}."""
        if i == j:
            return {}
        if i < j:
            return dict(self._tensor.get((i, j), {}))
        return {k: -c for k, c in self._tensor.get((j, i), {}).items()}

    def entries(self) -> Iterator[tuple[int, int, int, Fraction]]:
        """All stored coefficients (i, j, k, C^k_ij) with i < j, in lex order."""
        for (i, j) in sorted(self._tensor):
            fiber = self._tensor[(i, j)]
            for k in sorted(fiber):
                yield i, j, k, fiber[k]

    def bracket(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        """[x, y] in coordinates."""
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionError("vector length does not match algebra dimension")
        xs = [v if type(v) is Fraction else Fraction(v) for v in x]
        ys = [v if type(v) is Fraction else Fraction(v) for v in y]
        out = [_ZERO] * self.dim
        for (i, j), fiber in self._tensor.items():
            coeff = xs[i] * ys[j] - xs[j] * ys[i]
            if coeff:
                for k, c in fiber.items():
                    out[k] += coeff * c
        return tuple(out)

    def ad_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ad(x) = [x, .] in the algebra basis."""
        n = self.dim
        cols = []
        for r in range(n):
            unit = [_ZERO] * n
            unit[r] = Fraction(1)
            cols.append(self.bracket(x, unit))
        return Matrix([[cols[r][s] for r in range(n)] for s in range(n)], ncols=n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieAlgebra)
            and self.dim == other.dim
            and self._tensor == other._tensor
        )

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, brackets={len(self._tensor)})"


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaurerCartanForm:
    """Collection of two-forms dw_k = sum c * w_i ^ w_j (i < j), 0-based indices."""

    dim: int
    two_forms: Mapping[int, Sequence[tuple[int, int, object]]]

    def __post_init__(self):
        for k, terms in self.two_forms.items():
            if not 0 <= k < self.dim:
                raise DimensionError(f"two-form index {k} out of range")
            for (i, j, _) in terms:
                if not (0 <= i < j < self.dim):
                    raise DimensionError(f"bad wedge pair ({i}, {j}) in dw_{k}")


def from_maurer_cartan(
    form: MaurerCartanForm, basis_labels: Sequence[str] | None = None
) -> LieAlgebra:
    """Dualize two-forms to a bracket: c * w_i ^ w_j in dw_k means C^k_ij = c.

    Raises JacobiViolationError when the resulting tensor is not a Lie law.
    """
    tensor: dict[tuple[int, int], dict[int, Fraction]] = {}
    for k, terms in form.two_forms.items():
        for (i, j, c) in terms:
            fiber = tensor.setdefault((i, j), {})
            fiber[k] = fiber.get(k, _ZERO) + Fraction(c)
    algebra = LieAlgebra(form.dim, tensor, basis_labels)
    report = check_jacobi(algebra)
    if not report.ok:
        raise JacobiViolationError(report)
    return algebra


# ---------------------------------------------------------------------------
# Jacobi identity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    violations: tuple[tuple[int, int, int, int, Fraction], ...]
    """Violations as (i, j, l, s, residual) on basis triples i < j < l."""


def check_jacobi(L: LieAlgebra) -> JacobiReport:
    """Evaluate [[X_i,X_j],X_l] + [[X_j,X_l],X_i] + [[X_l,X_i],X_j] on all triples."""
    violations = []
    for (i, j, l) in combinations(range(L.dim), 3):
        residual: dict[int, Fraction] = {}
        for (a, b, c) in ((i, j, l), (j, l, i), (l, i, j)):
            for k, c1 in L.fiber(a, b).items():
                for s, c2 in L.fiber(k, c).items():
                    new = residual.get(s, _ZERO) + c1 * c2
                    if new:
                        residual[s] = new
                    else:
                        residual.pop(s, None)
        for s in sorted(residual):
            violations.append((i, j, l, s, residual[s]))
    return JacobiReport(ok=not violations, violations=tuple(violations))


# ---------------------------------------------------------------------------
# Subspace-valued invariants
# ---------------------------------------------------------------------------


def centralizer(L: LieAlgebra, S: Subspace) -> Subspace:
    """{x : [x, v] = 0 for all v in S}."""
    if S.ambient_dim != L.dim:
        raise DimensionError("subspace ambient does not match algebra dimension")
    n = L.dim
    rows: list[dict[int, Fraction]] = []
    for v in S.basis:
        per_s: dict[int, dict[int, Fraction]] = {}
        for i in range(n):
            unit = [_ZERO] * n
            unit[i] = Fraction(1)
            w = L.bracket(unit, v)
            for s, val in enumerate(w):
                if val:
                    per_s.setdefault(s, {})[i] = val
        rows.extend(per_s[s] for s in sorted(per_s))
    return nullspace_of_rows(rows, n)


def center(L: LieAlgebra) -> Subspace:
    return centralizer(L, Subspace.full(L.dim))


def bracket_subspaces(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """span{[a, b] : a in A, b in B}."""
    vectors = [L.bracket(a, b) for a in A.basis for b in B.basis]
    return Subspace(L.dim, vectors)


def subalgebra_generated(L: LieAlgebra, vectors: Iterable[Sequence]) -> Subspace:
    """Smallest subalgebra containing the given vectors (iterated bracket closure)."""
    current = Subspace(L.dim, vectors)
    while True:
        grown = current.sum(bracket_subspaces(L, current, current))
        if grown == current:
            return current
        current = grown


# ---------------------------------------------------------------------------
# Series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesReport:
    """Descending series with terms[0] = the whole algebra.

    `nilindex` is the index of the first zero term, or None when the series
    stabilizes at a nonzero subspace.
    """

    terms: tuple[Subspace, ...]
    dims: tuple[int, ...]
    nilindex: int | None


def _descending_series(L: LieAlgebra, step) -> SeriesReport:
    term = Subspace.full(L.dim)
    terms = [term]
    while not term.is_zero():
        nxt = step(term)
        if nxt == term:
            break
        terms.append(nxt)
        term = nxt
    dims = tuple(t.dim for t in terms)
    nilindex = len(terms) - 1 if terms[-1].is_zero() else None
    return SeriesReport(terms=tuple(terms), dims=dims, nilindex=nilindex)


def lower_central_series(L: LieAlgebra) -> SeriesReport:
    """C^(i+1) = [L, C^(i)], starting from the whole algebra."""
    full = Subspace.full(L.dim)
    return _descending_series(L, lambda term: bracket_subspaces(L, full, term))


def derived_series(L: LieAlgebra) -> SeriesReport:
    """D^(i+1) = [D^(i), D^(i)], starting from the whole algebra."""
    return _descending_series(L, lambda term: bracket_subspaces(L, term, term))


def series_term(report: SeriesReport, index: int, convention: str = "C1") -> Subspace:
    """Term C^index of a series report under the chosen indexing convention.

    "C1" reads terms[0] as C^1 (the whole algebra is the first term), "C0"
    reads terms[0] as C^0.  Indices past stabilization return the last term.
    """
    if convention == "C1":
        position = index - 1
    elif convention == "C0":
        position = index
    else:
        raise ValueError(f"unknown series convention {convention!r}")
    if position < 0:
        raise ValueError(f"index {index} has no term under convention {convention}")
    return report.terms[min(position, len(report.terms) - 1)]


def nilindex(L: LieAlgebra) -> int:
    report = lower_central_series(L)
    if report.nilindex is None:
        raise NotNilpotentError("lower central series stabilizes at a nonzero subspace")
    return report.nilindex


def is_nilpotent(L: LieAlgebra) -> bool:
    return lower_central_series(L).nilindex is not None


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L).nilindex is not None


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    full = Subspace.full(L.dim)
    return bracket_subspaces(L, full, full)


def betti1(L: LieAlgebra) -> int:
    """dim L - dim [L, L] (first Betti number / count of generators)."""
    return L.dim - derived_subalgebra(L).dim


def has_abelian_direct_factor(L: LieAlgebra) -> bool:
    """True iff the nilpotent algebra splits off a 1-dimensional abelian ideal.

    For nilpotent L this happens exactly when the center is not contained in
    the derived subalgebra.
    """
    if not is_nilpotent(L):
        raise NotNilpotentError("abelian-factor test is defined here for nilpotent algebras")
    return not center(L).is_subset(derived_subalgebra(L))


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------


def _adjacency(L: LieAlgebra) -> list[list[tuple[int, int, Fraction]]]:
    """adj[j] lists (r, s, c) with [X_r, X_j] = sum c X_s."""
    adj: list[list[tuple[int, int, Fraction]]] = [[] for _ in range(L.dim)]
    for (i, j), fiber in L._tensor.items():
        for k, c in fiber.items():
            adj[j].append((i, k, c))
            adj[i].append((j, k, -c))
    return adj


def _derivation_rows(L: LieAlgebra) -> Iterator[list[dict[int, Fraction]]]:
    """Equation rows of D[X_i,X_j] = [DX_i,X_j] + [X_i,DX_j], unknown D_rc at r*n+c.

    Yields, for each pair (i, j) in lex order, the n rows indexed by the
    output component s (zero rows included so callers control the layout).
    """
    n = L.dim
    adj = _adjacency(L)
    for i in range(n):
        for j in range(i + 1, n):
            per_s: list[dict[int, Fraction]] = [{} for _ in range(n)]
            fiber = L._tensor.get((i, j))
            if fiber:
                for k, c in fiber.items():
                    for s in range(n):
                        row = per_s[s]
                        col = s * n + k
                        row[col] = row.get(col, _ZERO) + c
            for (r, s, c) in adj[j]:
                row = per_s[s]
                col = r * n + i
                row[col] = row.get(col, _ZERO) - c
            # adj[i] holds [X_r, X_i] = c X_s, so C^s_ir = -c.
            for (r, s, c) in adj[i]:
                row = per_s[s]
                col = r * n + j
                row[col] = row.get(col, _ZERO) + c
            yield [{c: v for c, v in row.items() if v} for row in per_s]


def derivations(L: LieAlgebra) -> Subspace:
    """Derivation algebra as a subspace of n x n matrices flattened row-major."""
    n = L.dim
    rows: list[dict[int, Fraction]] = []
    for block in _derivation_rows(L):
        rows.extend(r for r in block if r)
    return nullspace_of_rows(rows, n * n)


def derivation_system_matrix(L: LieAlgebra) -> Matrix:
    """Dense coefficient matrix of the derivation equations.

    Shape n*n(n-1)/2 by n^2: for each basis pair (i < j, lex order) one row per
    output component s, zero rows kept.  derivations(L) is its kernel.
    """
    n = L.dim
    dense: list[tuple[Fraction, ...]] = []
    for block in _derivation_rows(L):
        for row in block:
            dense.append(tuple(row.get(c, _ZERO) for c in range(n * n)))
    return Matrix(dense, ncols=n * n)


def flatten_matrix(M: Matrix) -> tuple[Fraction, ...]:
    """Row-major flattening, matching the derivation unknown layout."""
    return tuple(v for row in M.entries for v in row)


def inner_derivations(L: LieAlgebra) -> Subspace:
    n = L.dim
    vectors = []
    for i in range(n):
        unit = [_ZERO] * n
        unit[i] = Fraction(1)
        vectors.append(flatten_matrix(L.ad_matrix(unit)))
    return Subspace(n * n, vectors)


def is_derivation(L: LieAlgebra, M: Matrix) -> bool:
    """Check D[X_i,X_j] = [DX_i,X_j] + [X_i,DX_j] on all basis pairs."""
    n = L.dim
    if M.shape != (n, n):
        raise DimensionError("matrix shape does not match algebra dimension")
    cols = [tuple(M[s, r] for s in range(n)) for r in range(n)]
    for i in range(n):
        unit_i = [_ZERO] * n
        unit_i[i] = Fraction(1)
        for j in range(i + 1, n):
            unit_j = [_ZERO] * n
            unit_j[j] = Fraction(1)
            fiber = L.fiber(i, j)
            bracket_ij = [_ZERO] * n
            for k, c in fiber.items():
                bracket_ij[k] = c
            lhs = M.matvec(bracket_ij)
            rhs_a = L.bracket(cols[i], unit_j)
            rhs_b = L.bracket(unit_i, cols[j])
            if any(a != b + c for a, b, c in zip(lhs, rhs_a, rhs_b)):
                return False
    return True


# ---------------------------------------------------------------------------
# Characteristic sequence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacteristicSequence:
    """Non-increasing Jordan block sizes of ad(X) for a maximizing X outside [L, L]."""

    blocks: tuple[int, ...]

    @property
    def is_linear(self) -> bool:
        """True for sequences of the shape (b, 1, 1, ..., 1)."""
        return all(b == 1 for b in self.blocks[1:])


def _primes(count: int) -> list[int]:
    found: list[int] = []
    candidate = 2
    while len(found) < count:
        if all(candidate % p for p in found):
            found.append(candidate)
        candidate += 1
    return found


def _jordan_blocks(L: LieAlgebra, x: Sequence[Fraction]) -> tuple[int, ...]:
    n = L.dim
    ad = L.ad_matrix(x)
    ranks = [n]
    power = Matrix.identity(n)
    while ranks[-1] > 0:
        power = power.mul(ad)
        ranks.append(matrix_rank(power))
        if len(ranks) > n + 1:
            raise NotNilpotentError("ad(x) is not nilpotent")
    at_least = [ranks[s - 1] - ranks[s] for s in range(1, len(ranks))]
    blocks: list[int] = []
    for size in range(len(at_least), 0, -1):
        exactly = at_least[size - 1] - (at_least[size] if size < len(at_least) else 0)
        blocks.extend([size] * exactly)
    return tuple(blocks)


def characteristic_sequence(L: LieAlgebra) -> CharacteristicSequence:
    """Lexicographically maximal Jordan type of ad(X) over X outside [L, L].

    The maximum is taken over a fixed candidate set: the coordinate complement
    vectors of the derived subalgebra and one generic (prime-weighted)
    combination of them.  For the graded families handled here the generic
    vector attains the supremum; the sweep guards the degenerate cases.
    """
    if not is_nilpotent(L):
        raise NotNilpotentError("characteristic sequence requires a nilpotent algebra")
    n = L.dim
    if n == 0:
        return CharacteristicSequence(())
    derived = derived_subalgebra(L)
    pivot_cols = set()
    for row in derived.basis:
        pivot_cols.add(next(c for c, v in enumerate(row) if v))
    complement = [c for c in range(n) if c not in pivot_cols]
    candidates: list[list[Fraction]] = []
    generic = [_ZERO] * n
    for weight, c in zip(_primes(len(complement)), complement):
        generic[c] = Fraction(weight)
    candidates.append(generic)
    for c in complement:
        single = [_ZERO] * n
        single[c] = Fraction(1)
        candidates.append(single)
    best = max(_jordan_blocks(L, x) for x in candidates)
    return CharacteristicSequence(best)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def to_json_dict(L: LieAlgebra, family: Mapping | None = None) -> dict:
    """JSON-ready dict; indices 1-based, coefficients as 'p' or 'p/q' strings."""
    brackets = []
    current: dict | None = None
    for (i, j, k, c) in L.entries():
        if current is None or current["i"] != i + 1 or current["j"] != j + 1:
            current = {"i": i + 1, "j": j + 1, "coeffs": {}}
            brackets.append(current)
        current["coeffs"][str(k + 1)] = str(c)
    out: dict = {"dim": L.dim, "basis": list(L.basis_labels), "brackets": brackets}
    if family is not None:
        out["family"] = dict(family)
    return out


def from_json_dict(data: Mapping) -> LieAlgebra:
    dim = data["dim"]
    labels = data.get("basis")
    tensor: dict[tuple[int, int], dict[int, Fraction]] = {}
    for entry in data.get("brackets", ()):
        i, j = entry["i"] - 1, entry["j"] - 1
        fiber = tensor.setdefault((i, j), {})
        for k, c in entry["coeffs"].items():
            fiber[int(k) - 1] = Fraction(c)
    return LieAlgebra(dim, tensor, labels)


def to_json(L: LieAlgebra, family: Mapping | None = None) -> str:
    return json.dumps(to_json_dict(L, family), indent=2)


def from_json(text: str) -> LieAlgebra:
    return from_json_dict(json.loads(text))
