"""Level-driven construction of modular ideal lattices.

Given a target level, picks a definite rational quaternion algebra whose
finite ramification matches the odd-exponent part of the level, a
maximal order, a normalizing element of the right reduced norm, and the
ideal and form scaling that realize the level.  Everything is verified
by an explicit certificate.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .lattices import (
    IdealLattice,
    ModularityCertificate,
    short_vectors,
    verify_arakelov_modular,
)
from .numth import factorint, is_prime, legendre
from .orders import (
    Order,
    TwoSidedIdeal,
    ideal_mul,
    ideal_pow,
    maximalize,
    normalizer_contains,
    order_from_basis,
    preset_order,
    prime_ideal_above,
)
from .quaternion import QElem, QuaternionAlgebra

SEARCH_BOUND_ENV = "AMLAT_SEARCH_BOUND"
DEFAULT_SEARCH_BOUND = 64

_STANDARD_BASIS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


class NoPlanFound(Exception):
    """No construction exists (or none was found) for the requested level."""


class RamificationCheckFailed(ArithmeticError):
    """Chosen algebra does not ramify exactly at the target prime (bug guard)."""


class BetaVerificationFailed(ArithmeticError):
    """The case element failed order/normalizer/norm verification (bug guard)."""


def _search_bound() -> int:
    return int(os.environ.get(SEARCH_BOUND_ENV, DEFAULT_SEARCH_BOUND))


@dataclass(frozen=True)
class LevelFactorization:
    """Split of the level into its square part and ramification support."""

    ell: int
    ell1: int
    ell2: int
    exponents: tuple[tuple[int, int], ...]
    odd_support: tuple[int, ...]


def split_level(ell: int) -> LevelFactorization:
    if ell < 1:
        raise ValueError("level must be a positive integer")
    fact = factorint(ell) if ell > 1 else {}
    odd = tuple(p for p, r in fact.items() if r % 2 == 1)
    ell2 = 1
    ell1 = 1
    for p, r in fact.items():
        if p in odd:
            ell2 *= p**r
        else:
            ell1 *= p ** (r // 2)
    return LevelFactorization(ell, ell1, ell2, tuple(fact.items()), odd)


def residue_case(ell: int) -> int:
    """Which of the four construction cases a prime level falls into."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    if ell == 2:
        return 1
    if ell % 4 == 3:
        return 2
    if ell % 8 == 5:
        return 3
    return 4


def algebra_for_prime(ell: int) -> tuple[QuaternionAlgebra, int, int | None]:
    """The definite algebra ramified exactly at the prime ell.

    Returns (algebra, case, q) where q is the auxiliary prime used when
    ell = 1 mod 8 (smallest q = 3 mod 4 with (ell/q) = -1), else None.
    """
    case = residue_case(ell)
    q: int | None = None
    if case == 1:
        algebra = QuaternionAlgebra(-1, -1)
    elif case == 2:
        algebra = QuaternionAlgebra(-1, -ell)
    elif case == 3:
        algebra = QuaternionAlgebra(-2, -ell)
    else:
        q = 3
        while not (is_prime(q) and q % 4 == 3 and legendre(ell, q) == -1):
            q += 1
        algebra = QuaternionAlgebra(-q, -ell)
    if algebra.ramified_primes != (ell,):
        raise RamificationCheckFailed(
            f"{algebra!r} ramifies at {algebra.ramified_primes}, wanted ({ell},)"
        )
    return algebra, case, q


def order_for_prime(ell: int) -> tuple[QuaternionAlgebra, int, int | None, Order]:
    """Algebra plus a maximal order: catalog basis when one exists,
    otherwise the maximalization of the standard basis order."""
    algebra, case, q = algebra_for_prime(ell)
    if case == 1:
        order = preset_order("case1", algebra)
    elif case == 2:
        order = preset_order("case2", algebra)
    elif case == 3:
        order = preset_order("case3", algebra)
    else:
        order = maximalize(order_from_basis(algebra, _STANDARD_BASIS))
    return algebra, case, q, order


def beta_for(algebra: QuaternionAlgebra, order: Order, case: int) -> QElem:
    """The normalizing element of reduced norm ell for a prime-level case."""
    if case == 1:
        beta, target = algebra.i - algebra.j, 2
    else:
        beta, target = algebra.j, abs(algebra.b)
    if not order.lattice.contains(beta):
        raise BetaVerificationFailed(f"{beta!r} not in the order")
    if not normalizer_contains(order, beta):
        raise BetaVerificationFailed(f"{beta!r} not in the normalizer")
    if beta.nrd() != target:
        raise BetaVerificationFailed(f"nrd({beta!r}) != {target}")
    return beta


def search_beta(order: Order, m: int) -> QElem | None:
    """Find x in the order with nrd(x) = m normalizing it, by exhaustive
    enumeration of the shell q_1(x) = 2m; None when the shell is empty.

    The shell target m is capped by AMLAT_SEARCH_BOUND (default 64)."""
    bound = _search_bound()
    if m > bound:
        raise NoPlanFound(
            f"norm target {m} exceeds the search bound {bound}; "
            f"raise {SEARCH_BOUND_ENV} to search further"
        )
    unit = IdealLattice(TwoSidedIdeal.unit(order), Fraction(1))
    basis = order.lattice.elements()
    for coords, val in short_vectors(unit.gram, 2 * m):
        if val != 2 * m:
            continue
        x = order.algebra.scalar(0)
        for c, w in zip(coords, basis):
            if c:
                x = x + c * w
        if normalizer_contains(order, x):
            return x
    return None


def _grid_algebra(support: tuple[int, ...], ell2: int) -> QuaternionAlgebra:
    """First algebra (lexicographic grid order) ramified exactly at support."""
    values = [-1, -2]
    values += [-q for q in range(3, 4 * ell2 + 1) if is_prime(q)]
    for a in values:
        for b in values:
            alg = QuaternionAlgebra(a, b)
            if alg.ramified_primes == support:
                return alg
    raise NoPlanFound(
        f"no algebra in the search grid has ramified set {set(support)}"
    )


@dataclass(frozen=True)
class ConstructionPlan:
    """Everything needed to realize a level: algebra, order, witnesses."""

    ell: int
    ell1: int
    ell2: int
    case: int | None
    q: int | None
    algebra: QuaternionAlgebra
    order: Order
    beta2: QElem
    ideal_exponents: tuple[tuple[int, int], ...]


def plan_level(ell: int) -> ConstructionPlan:
    """Resolve the full construction plan for a level, or raise NoPlanFound."""
    if ell < 2:
        raise NoPlanFound("level must be at least 2")
    split = split_level(ell)
    if not split.odd_support:
        raise NoPlanFound(
            "square level: the finite ramification of a definite algebra "
            "is never empty"
        )
    if len(split.odd_support) % 2 == 0:
        raise NoPlanFound(
            "the primes with odd exponent must be odd in number to form "
            "the finite ramification of a definite algebra"
        )
    exps = dict(split.exponents)
    if len(split.odd_support) == 1:
        p = split.odd_support[0]
        algebra, case, q, order = order_for_prime(p)
        beta2 = beta_for(algebra, order, case) ** exps[p]
    else:
        algebra = _grid_algebra(split.odd_support, split.ell2)
        case = q = None
        order = maximalize(order_from_basis(algebra, _STANDARD_BASIS))
        beta2 = search_beta(order, split.ell2)
        if beta2 is None:
            raise NoPlanFound(
                f"no element of reduced norm {split.ell2} normalizes the "
                f"maximal order of {algebra!r}"
            )
    ideal_exps = tuple((p, (exps[p] - 1) // 2) for p in split.odd_support)
    return ConstructionPlan(
        ell=ell,
        ell1=split.ell1,
        ell2=split.ell2,
        case=case,
        q=q,
        algebra=algebra,
        order=order,
        beta2=beta2,
        ideal_exponents=ideal_exps,
    )


def construct(ell: int) -> tuple[IdealLattice, ModularityCertificate]:
    """Build the level-ell lattice (J·t, q_alpha) with t = 1, alpha = ell1,
    J the product of ramified primes to the (r_p - 1)/2, and certify it."""
    plan = plan_level(ell)
    ideal = TwoSidedIdeal.unit(plan.order)
    for p, e in plan.ideal_exponents:
        if e:
            ideal = ideal_mul(ideal, ideal_pow(prime_ideal_above(plan.order, p), e))
    lattice = IdealLattice(ideal, Fraction(plan.ell1))
    beta = plan.ell1 * plan.beta2
    cert = verify_arakelov_modular(lattice, beta, ell)
    if not cert.valid:  # pragma: no cover - bug guard
        raise ArithmeticError(
            f"construction for level {ell} produced an invalid certificate: "
            f"{cert.checks()}"
        )
    return lattice, cert


def exists_arakelov_modular(
    algebra: QuaternionAlgebra, order: Order, ell: int
) -> tuple[bool, str]:
    """Decide whether a level-ell lattice exists over the given maximal order.

    Checks the exponent conditions against the algebra's ramification and
    then searches for a normalizing element of the right reduced norm.
    """
    if ell < 1:
        raise ValueError("level must be positive")
    if not algebra.is_totally_definite:
        raise ValueError("algebra must be totally definite")
    ram = algebra.ramified_primes
    fact = factorint(ell) if ell > 1 else {}
    for p in ram:
        if fact.get(p, 0) % 2 == 0:
            return False, (
                f"ramified prime {p} must divide the level to an odd power"
            )
    ell2 = 1
    for p in ram:
        ell2 *= p ** fact[p]
    rest = ell // ell2
    r = isqrt(rest)
    if r * r != rest:
        bad = next(p for p, e in fact.items() if p not in ram and e % 2)
        return False, (
            f"unramified prime {bad} must divide the level to an even power"
        )
    try:
        beta2 = search_beta(order, ell2)
    except NoPlanFound as exc:
        return False, str(exc)
    if beta2 is None:
        return False, f"no normalizing element of reduced norm {ell2}"
    return True, f"constructible with alpha = {r} and beta2 = {beta2!r}"
