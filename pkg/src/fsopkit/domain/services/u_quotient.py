"""
Quotientenring R = Q[u_1..u_k]/(u)^r für fsopkit
Symbolisches Modell (sympy) für die Taylor-Identität der u_n und für π_k in der exp-Basis
"""
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Mapping, Tuple

import structlog
from sympy import QQ, Poly, Rational, symbols

from fsopkit.domain.exceptions import InvalidInputError
from fsopkit.domain.models.charspace import ExpProfile
from fsopkit.domain.models.symfunc import Partition, SymFunc
from fsopkit.domain.services.character_space import (
    E_monomial,
    exp_profile,
    g_coeff,
    part_rk,
    reduce_mod_e,
)
from fsopkit.domain.services.symmetric_functions import partitions_up_to

logger = structlog.get_logger(__name__)

Monomial = Tuple[int, ...]


class UQuotientRing:
    """
    R = Q[u_1, …, u_k] / (u_1, …, u_k)^r zum Profil A
    Symmetrische Funktionen werden über p_λ mod (e_{k+1}, …) und p_i = u_i + Σ_{d|i} d a_d abgebildet.
    """

    def __init__(self, profile: ExpProfile, r: int, k: int):
        if r < 1 or k < 1:
            raise InvalidInputError(f"(r, k) = ({r}, {k}) verlangt r, k ≥ 1")
        self.profile = profile
        self.r = r
        self.k = k
        self.gens = symbols(f"u1:{k + 1}")
        self._power_images: Dict[int, Poly] = {}
        self._u_images: Dict[int, Poly] = {}

    # -------------------------------------------------
    # Grundoperationen
    # -------------------------------------------------

    def _poly(self, terms: Mapping[Monomial, Rational]) -> Poly:
        return Poly.from_dict(dict(terms) or {(0,) * self.k: 0}, *self.gens, domain=QQ)

    def zero(self) -> Poly:
        return self._poly({})

    def one(self) -> Poly:
        return self._poly({(0,) * self.k: Rational(1)})

    def truncate(self, poly: Poly) -> Poly:
        """Monome vom Totalgrad ≥ r entfallen"""
        return self._poly({m: c for m, c in poly.terms() if sum(m) < self.r and c != 0})

    def multiply(self, left: Poly, right: Poly) -> Poly:
        return self.truncate(left * right)

    def _p_image(self, index: int) -> Poly:
        """Bild von p_index (index ≤ k): u_index + Σ_{d|index} d a_d"""
        if index not in self._power_images:
            monomial = tuple(1 if i == index - 1 else 0 for i in range(self.k))
            terms = {monomial: Rational(1)}
            constant = self.profile.fixed_points(index)
            if constant:
                terms[(0,) * self.k] = Rational(constant)
            self._power_images[index] = self._poly(terms)
        return self._power_images[index]

    def from_power_polynomial(self, polynomial: Mapping[Partition, Fraction]) -> Poly:
        """Bild eines Polynoms in p_1..p_k"""
        total = self.zero()
        for shape, coeff in polynomial.items():
            term = self.one()
            for part in shape:
                if part > self.k:
                    raise InvalidInputError(f"p_{part} ist keine Variable von R (k = {self.k})")
                term = self.multiply(term, self._p_image(part))
            total = total + term * Rational(coeff.numerator, coeff.denominator)
        return self.truncate(total)

    def image(self, f: SymFunc) -> Poly:
        """Bild eines symmetrischen Polynoms (endliche p-Entwicklung)"""
        total = self.zero()
        for shape, coeff in f.items():
            reduced = reduce_mod_e(self.k, shape, shape.size)
            total = total + self.from_power_polynomial(
                {key: value * coeff for key, value in reduced.items()}
            )
        return self.truncate(total)

    def u_image(self, index: int) -> Poly:
        """Bild von u_index = p_index - Σ_{d|index} d a_d"""
        if index not in self._u_images:
            p_image = self.from_power_polynomial(reduce_mod_e(self.k, (index,), index))
            self._u_images[index] = self.truncate(p_image - self.profile.fixed_points(index))
        return self._u_images[index]

    def u_monomial_image(self, shape: Iterable[int]) -> Poly:
        result = self.one()
        for part in Partition(shape):
            result = self.multiply(result, self.u_image(part))
        return result

    def coordinates(self, poly: Poly) -> Dict[Partition, Fraction]:
        """Koordinaten in der Basis {u_ν : ν ∈ Part(r,k)}"""
        result: Dict[Partition, Fraction] = {}
        for monomial, coeff in self.truncate(poly).terms():
            if coeff == 0:
                continue
            shape = Partition.from_multiplicities(
                {i + 1: e for i, e in enumerate(monomial) if e}
            )
            result[shape] = Fraction(int(coeff.p), int(coeff.q))
        return dict(sorted(result.items(), key=lambda kv: kv[0].sort_key()))


# =====================================================
# Operationen
# =====================================================

def quotient_image(f: SymFunc, a: ExpProfile, r: int, k: int) -> Dict[Partition, Fraction]:
    """Bild von f in R in u-Monom-Koordinaten"""
    ring = UQuotientRing(a, r, k)
    return ring.coordinates(ring.image(f))


def u_power_expansion(a: ExpProfile, r: int, k: int, n: int) -> Dict[Partition, Fraction]:
    """Koordinaten von u_n in R"""
    ring = UQuotientRing(a, r, k)
    return ring.coordinates(ring.u_image(n))


def genfunction_check(a: ExpProfile, r: int, k: int, max_n: int) -> bool:
    """
    Endliche Taylor-Entwicklung in R, koeffizientenweise für n = 1..max_n:
    u_n / n = Σ_{λ ∈ Part(r,k), |λ| > 0} E_λ (rank λ - 1)!/λ! · g_{rank(λ)·A}(n - |λ|)
    """
    if a.size > k:
        raise InvalidInputError(f"|A| = {a.size} > k = {k}")
    ring = UQuotientRing(a, r, k)
    e_images = {
        shape: ring.image(E_monomial(a, shape, shape.size))
        for shape in part_rk(r, k)
        if shape
    }
    for n in range(1, max_n + 1):
        lhs = ring.u_image(n) * Rational(1, n)
        rhs = ring.zero()
        for shape, image in e_images.items():
            weight = g_coeff(a.scaled(shape.rank), n - shape.size)
            if weight:
                rhs = rhs + image * Rational(weight * factorial(shape.rank - 1), shape.factorial)
        if not ring.truncate(lhs - rhs).is_zero:
            logger.debug("genfunction_mismatch", n=n, r=r, k=k, profile=str(a))
            return False
    return True


def pi_k_exp_basis(nu: Iterable[int], a: ExpProfile, r: int, k: int, n: int) -> SymFunc:
    """
    π_k(p_ν exp(Σ a_i y_i)) = Σ_λ b̄_{λν} p_λ/z_λ · exp(Σ a_i y_i)
    mit b̄_{λν} = Koeffizient von u_ν im Bild von u_λ
    """
    nu = Partition(nu)
    if nu.rank >= r or any(part > k for part in nu):
        raise InvalidInputError(f"{nu} liegt nicht in Part({r},{k})")
    if a.size > k:
        raise InvalidInputError(f"|A| = {a.size} > k = {k}")
    ring = UQuotientRing(a, r, k)
    coeffs: Dict[Partition, Fraction] = {}
    for shape in partitions_up_to(n):
        value = ring.coordinates(ring.u_monomial_image(shape)).get(nu)
        if value:
            coeffs[shape] = value * nu.z / shape.z
    return SymFunc(n, coeffs) * exp_profile(a, n)
