"""Ideal lattices: Gram matrices, duals, modularity certificates, minima.

An ideal lattice is a pair (I, q_alpha) where I is a generalized
two-sided ideal of a maximal order and q_alpha(x, y) = trd(alpha·x·ȳ)
for a positive rational alpha.  Everything here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt

from .linalg import Mat, det, inverse, mat, mat_mul
from .orders import (
    TwoSidedIdeal,
    ZLat4,
    codifferent,
    ideal_inverse,
    normalizer_contains,
)
from .quaternion import QElem


class NonPositiveAlpha(ValueError):
    """The scaling of the bilinear form must be a positive rational."""


class DiscriminantFormulaMismatch(ArithmeticError):
    """det(Gram) disagrees with alpha^4 n(I)^4 n(D)^2 (internal bug guard)."""


class DualMismatch(ArithmeticError):
    """Gram-inverse dual and ideal-formula dual disagree (internal bug guard)."""


def gram_of_rows(ideal_or_order_lattice: ZLat4, rows, alpha) -> Mat:
    """Gram matrix trd(alpha · w_k · conj(w_l)) for explicit basis rows."""
    alpha = Fraction(alpha)
    alg = ideal_or_order_lattice.algebra
    elems = [alg.element(*row) for row in rows]
    return tuple(
        tuple(alpha * (u * v.conj()).trd() for v in elems) for u in elems
    )


@dataclass(frozen=True)
class IdealLattice:
    """The lattice (I, q_alpha); the Gram matrix is cached on first use."""

    ideal: TwoSidedIdeal
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha <= 0:
            raise NonPositiveAlpha(f"alpha = {self.alpha}")
        if not self.ideal.order.algebra.is_totally_definite:
            raise ValueError("the form is positive definite only over "
                             "totally definite algebras (a < 0 and b < 0)")

    @property
    def order(self):
        return self.ideal.order

    @cached_property
    def gram(self) -> Mat:
        return gram_of_rows(
            self.ideal.lattice, self.ideal.lattice.basis, self.alpha
        )

    @cached_property
    def discriminant(self) -> Fraction:
        """det(Gram), cross-checked against alpha^4 n(I)^4 n(D)^2."""
        d = det(self.gram)
        n_i = self.ideal.reduced_norm
        n_d = Fraction(self.order.reduced_disc)
        formula = self.alpha**4 * n_i**4 * n_d**2
        if d != formula:
            raise DiscriminantFormulaMismatch(f"det {d} vs formula {formula}")
        return d

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.gram for x in row)

    def is_even(self) -> bool:
        """Integral with even diagonal; by parity this makes q(x) even for all x."""
        return self.is_integral() and all(
            self.gram[k][k] % 2 == 0 for k in range(4)
        )

    def dual_lattice(self) -> ZLat4:
        """Dual lattice, computed two independent ways and compared.

        (a) classical dual basis rows Gram^-1 · B;
        (b) the ideal alpha^-1 · D^-1 · conj(I)^-1 where D is the different.
        """
        classical = ZLat4.from_rows(
            self.ideal.lattice.algebra,
            mat_mul(inverse(self.gram), self.ideal.lattice.basis),
        )
        lam = self.order
        cod = codifferent(lam)  # D^-1 as a lattice
        jbar = TwoSidedIdeal.from_lattice(lam, self.ideal.j_part.conjugated())
        jbar_inv = ideal_inverse(jbar).lattice
        formula_lat = cod.product(jbar_inv).scaled(1 / self.alpha)
        tbar = self.ideal.t.conj()
        if tbar != lam.algebra.one:
            formula_lat = formula_lat.right_mul(tbar.inverse())
        if classical != formula_lat:
            raise DualMismatch(
                f"gram dual {classical.basis} vs ideal dual {formula_lat.basis}"
            )
        return classical

    def minimum_and_kissing(self) -> tuple[Fraction, int]:
        return minimum_and_kissing(self.gram)


@dataclass(frozen=True)
class ModularityCertificate:
    """Witness data for level-ell modularity of an ideal lattice.

    The lattice (I, q_alpha) with I = J·t is modular of level ell when
    beta lies in the order and its normalizer, nrd(beta) = ell, and
    right multiplication by beta' = conj(t)·beta·conj(t)^-1 carries the
    dual lattice onto I while scaling the form by ell.
    """

    ell: int
    beta: QElem
    beta_prime: QElem
    t: QElem
    alpha: Fraction
    beta_in_order: bool
    beta_in_normalizer: bool
    nrd_beta_eq_ell: bool
    dual_identity: bool
    similitude_identity: bool

    def checks(self) -> dict[str, bool]:
        return {
            "beta_in_order": self.beta_in_order,
            "beta_in_normalizer": self.beta_in_normalizer,
            "nrd_beta_eq_ell": self.nrd_beta_eq_ell,
            "dual_identity": self.dual_identity,
            "similitude_identity": self.similitude_identity,
        }

    @property
    def valid(self) -> bool:
        return all(self.checks().values())


def verify_arakelov_modular(
    lattice: IdealLattice, beta: QElem, ell: int
) -> ModularityCertificate:
    """Run every modularity check; failures are recorded, never raised."""
    lam = lattice.order
    alg = lam.algebra
    t = lattice.ideal.t
    tbar = t.conj()
    beta_prime = tbar * beta * tbar.inverse()

    in_order = lam.lattice.contains(beta)
    in_normalizer = (not beta.is_zero()) and normalizer_contains(lam, beta)
    nrd_ok = beta.nrd() == ell

    dual_ok = False
    simil_ok = False
    if not beta_prime.is_zero():
        dual = lattice.dual_lattice()
        dual_elems = [alg.element(*row) for row in dual.basis]
        image_rows = [(d * beta_prime).coords() for d in dual_elems]
        try:
            image = ZLat4.from_rows(alg, image_rows)
            dual_ok = image == lattice.ideal.lattice
        except ValueError:
            dual_ok = False
        gram_dual = gram_of_rows(dual, dual.basis, lattice.alpha)
        gram_image = gram_of_rows(dual, image_rows, lattice.alpha)
        simil_ok = gram_image == tuple(
            tuple(ell * x for x in row) for row in gram_dual
        )

    return ModularityCertificate(
        ell=ell,
        beta=beta,
        beta_prime=beta_prime,
        t=t,
        alpha=lattice.alpha,
        beta_in_order=in_order,
        beta_in_normalizer=in_normalizer,
        nrd_beta_eq_ell=nrd_ok,
        dual_identity=dual_ok,
        similitude_identity=simil_ok,
    )


# --- exact shortest-vector enumeration ----------------------------------------


def _floor_sqrt(x: Fraction) -> int:
    """floor(sqrt(x)) for a nonnegative rational."""
    return isqrt(x.numerator * x.denominator) // x.denominator


def _floor_center_plus_root(c: Fraction, r2: Fraction) -> int:
    """floor(-c + sqrt(r2)) computed exactly (r2 >= 0)."""
    mc = -c
    g = mc.numerator // mc.denominator + _floor_sqrt(r2)

    def fits(m: int) -> bool:
        s = m + c
        return s <= 0 or s * s <= r2

    while fits(g + 1):
        g += 1
    while not fits(g):
        g -= 1
    return g


def _ldl(gram: Mat) -> tuple[list[Fraction], list[list[Fraction]]]:
    """G = L D L^T with unit lower-triangular L; raises if not positive definite."""
    n = len(gram)
    d = [Fraction(0)] * n
    low = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = gram[i][i] - sum(d[k] * low[i][k] * low[i][k] for k in range(i))
        if d[i] <= 0:
            raise ValueError("gram matrix is not positive definite")
        low[i][i] = Fraction(1)
        for j in range(i + 1, n):
            low[j][i] = (
                gram[j][i] - sum(d[k] * low[j][k] * low[i][k] for k in range(i))
            ) / d[i]
    return d, low


def short_vectors(gram, bound):
    """Yield (coords, value) for all nonzero x with x·G·x^T <= bound.

    Pure rational Fincke-Pohst style bound propagation; both signs of
    each vector are produced.  Enumeration order is deterministic.
    """
    gram = mat(gram)
    bound = Fraction(bound)
    n = len(gram)
    d, low = _ldl(gram)
    if bound < 0:
        return

    coords = [0] * n

    def level(i: int, budget: Fraction, acc: Fraction):
        center = sum(low[j][i] * coords[j] for j in range(i + 1, n))
        r2 = budget / d[i]
        hi = _floor_center_plus_root(center, r2)
        lo = -_floor_center_plus_root(-center, r2)
        for x in range(lo, hi + 1):
            coords[i] = x
            s = x + center
            val = d[i] * s * s
            if i == 0:
                if any(coords):
                    yield tuple(coords), acc + val
            else:
                yield from level(i - 1, budget - val, acc + val)
        coords[i] = 0

    yield from level(n - 1, bound, Fraction(0))


def minimum_and_kissing(gram) -> tuple[Fraction, int]:
    """Exact minimum of the quadratic form over nonzero integer vectors,
    together with the number of vectors attaining it (counting both signs)."""
    gram = mat(gram)
    best = min(gram[k][k] for k in range(len(gram)))
    count = 0
    for _, val in short_vectors(gram, best):
        if val < best:
            best = val
            count = 1
        elif val == best:
            count += 1
    return best, count
