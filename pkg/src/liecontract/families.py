"""Constructors for the nilpotent families the toolkit studies.

The central family is the chain-and-pairing algebra gm of dimension 2m+1:
a length-(2m-1) adjoint chain under X1 together with alternating pairings
[X_j, X_{2m+1-j}] = (-1)^j X_{2m+1}.  The gmq variants cut selected chain
links; filiform, Heisenberg-plus-abelian and abelian algebras round out the
comparison set.  Every constructor routes through the two-form dualization,
so Jacobi is verified on construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .algebra import LieAlgebra, MaurerCartanForm, from_maurer_cartan

FAMILY_NAMES = ("gm", "gmq", "filiform", "heisenberg", "abelian")


class InvalidFamilyError(ValueError):
    """Family parameters out of range."""


def validate_q_list(m: int, q_list: tuple[int, ...]) -> None:
    if len(q_list) < 1:
        raise InvalidFamilyError("q list must contain at least one entry")
    if list(q_list) != sorted(set(q_list)):
        raise InvalidFamilyError("q list must be strictly increasing")
    for q in q_list:
        if not 3 <= q <= m + 1:
            raise InvalidFamilyError("q must satisfy 3 ≤ q ≤ m+1")


def deleted_chain_targets(m: int, q_list: tuple[int, ...]) -> set[int]:
    """Chain images removed by the cut list: {q, 2m+2-q} for each q (1-based)."""
    deleted: set[int] = set()
    for q in q_list:
        deleted.add(q)
        deleted.add(2 * m + 2 - q)
    return deleted


def _chain_and_pairing_form(m: int, deleted: set[int]) -> MaurerCartanForm:
    # 1-based recipe: dw_{j+1} = w_1 ^ w_j for 2 <= j <= 2m-1 unless j+1 is cut;
    # dw_{2m+1} = sum_{j=2}^{m} (-1)^j w_j ^ w_{2m+1-j}.  Stored 0-based.
    dim = 2 * m + 1
    two_forms: dict[int, list[tuple[int, int, int]]] = {}
    for j in range(2, 2 * m):
        target = j + 1
        if target in deleted:
            continue
        two_forms.setdefault(target - 1, []).append((0, j - 1, 1))
    pairing = []
    for j in range(2, m + 1):
        pairing.append((j - 1, 2 * m - j, (-1) ** j))
    two_forms[2 * m] = pairing
    return MaurerCartanForm(dim=dim, two_forms=two_forms)


def make_g_m(m: int) -> LieAlgebra:
    """Uncut chain-and-pairing algebra of dimension 2m+1."""
    if m < 4:
        raise InvalidFamilyError("gm requires m >= 4")
    return from_maurer_cartan(_chain_and_pairing_form(m, set()))


def make_g_m_q(m: int, q_list: tuple[int, ...]) -> LieAlgebra:
    """Chain-and-pairing algebra with the chain links into {q, 2m+2-q} removed.

    All pairing terms (the X_{2m+1} component) are retained; only chain
    brackets [X1, X_{j-1}] = X_j with j in the deleted set disappear.
    """
    if m < 4:
        raise InvalidFamilyError("gmq requires m >= 4")
    q_list = tuple(q_list)
    validate_q_list(m, q_list)
    return from_maurer_cartan(_chain_and_pairing_form(m, deleted_chain_targets(m, q_list)))


def make_model_filiform(n: int) -> LieAlgebra:
    """Single chain [X1, X_j] = X_{j+1} for 2 <= j <= n-1, nothing else."""
    if n < 3:
        raise InvalidFamilyError("filiform model requires n >= 3")
    two_forms = {j: [(0, j - 1, 1)] for j in range(2, n)}
    return from_maurer_cartan(MaurerCartanForm(dim=n, two_forms=two_forms))


def make_heisenberg_plus_abelian(m: int) -> LieAlgebra:
    """Heisenberg algebra of dimension 2m-3 plus a 2-dimensional abelian factor.

    Written in the adapted basis of dimension 2m+1 where the pairings
    [X_j, X_{2m+1-j}] = (-1)^j X_{2m+1} survive and X1, X_{2m} are central.
    """
    if m < 2:
        raise InvalidFamilyError("heisenberg family requires m >= 2")
    return from_maurer_cartan(_chain_and_pairing_form(m, set(range(3, 2 * m + 1))))


def make_abelian(n: int) -> LieAlgebra:
    if n < 0:
        raise InvalidFamilyError("dimension must be nonnegative")
    return from_maurer_cartan(MaurerCartanForm(dim=n, two_forms={}))


@dataclass(frozen=True)
class FamilySpec:
    """Validated recipe for one family member; build() constructs it."""

    family: str
    m: int | None = None
    n: int | None = None
    q_list: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.family not in FAMILY_NAMES:
            raise InvalidFamilyError(f"unknown family {self.family!r}")
        if self.family in ("gm", "gmq", "heisenberg"):
            if self.m is None:
                raise InvalidFamilyError(f"family {self.family} needs m")
            if self.family in ("gm", "gmq") and self.m < 4:
                raise InvalidFamilyError("m must be at least 4")
            if self.family == "heisenberg" and self.m < 2:
                raise InvalidFamilyError("m must be at least 2")
        if self.family in ("filiform", "abelian") and self.n is None:
            raise InvalidFamilyError(f"family {self.family} needs n")
        if self.family == "gmq":
            validate_q_list(self.m, tuple(self.q_list))
        elif self.q_list:
            raise InvalidFamilyError(f"family {self.family} takes no q list")

    def build(self) -> LieAlgebra:
        if self.family == "gm":
            return make_g_m(self.m)
        if self.family == "gmq":
            return make_g_m_q(self.m, tuple(self.q_list))
        if self.family == "filiform":
            return make_model_filiform(self.n)
        if self.family == "heisenberg":
            return make_heisenberg_plus_abelian(self.m)
        return make_abelian(self.n)

    def label(self) -> str:
        if self.family == "gm":
            return f"g{self.m}"
        if self.family == "gmq":
            return f"g{self.m}({','.join(str(q) for q in self.q_list)})"
        if self.family == "filiform":
            return f"L{self.n}"
        if self.family == "heisenberg":
            return f"h{self.m - 1}+C2"
        return f"C{self.n}"

    def metadata(self) -> dict:
        out: dict = {"family": self.family}
        if self.m is not None:
            out["m"] = self.m
        if self.n is not None:
            out["n"] = self.n
        if self.q_list:
            out["q"] = list(self.q_list)
        return out


def all_q_lists(m: int, max_k: int) -> list[tuple[int, ...]]:
    """Every strictly increasing cut list with 1 <= k <= max_k entries."""
    values = range(3, m + 2)
    out: list[tuple[int, ...]] = []
    for k in range(1, max_k + 1):
        out.extend(combinations(values, k))
    return out
