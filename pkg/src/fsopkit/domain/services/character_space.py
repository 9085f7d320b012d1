"""
Charakterräume für fsopkit
Lösungsräume der Typ-Gleichungen, V_{A,r} und F_{≤k}, ε_k und π_k, die Daten u/E/c/g/H,
die duale Basis L_ν, Klassenfunktionen und Multiplizitäts-Reihen
"""
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import comb, factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import structlog
from sympy import Poly, cyclotomic_poly, symbols, totient

from fsopkit.domain.exceptions import InvalidInputError
from fsopkit.domain.models.charspace import ClassFnSpec, ExpProfile
from fsopkit.domain.models.linalg import RatMatrix
from fsopkit.domain.models.poset import IntPolynomial
from fsopkit.domain.models.symfunc import Partition, SymFunc
from fsopkit.domain.services.exactla import rank, solve_in_span
from fsopkit.domain.services.symmetric_functions import (
    apply_binom_D,
    basis_element,
    character_table,
    exp_truncated,
    hall_pair,
    partitions_of,
    partitions_up_to,
    schur_expansion,
    y_element,
)

logger = structlog.get_logger(__name__)

PolyInP = Dict[Partition, Fraction]


# =====================================================
# Die Daten c_m, E_m, u_n, g_B, H_ν
# =====================================================

def c_coeffs(a: ExpProfile, max_m: int) -> Tuple[int, ...]:
    """c_0..c_max_m: Koeffizienten von ∏ (1 - t^i)^{a_i}"""
    series = [1] + [0] * max_m
    for i, multiplicity in enumerate(a.multiplicities, start=1):
        for _ in range(multiplicity):
            for m in range(max_m, i - 1, -1):
                series[m] -= series[m - i]
    return tuple(series)


def g_coeff(b: ExpProfile, n: int) -> int:
    """g_B(n): Koeffizient von t^n in ∏ (1 - t^i)^{-b_i}; 0 für n < 0"""
    if n < 0:
        return 0
    series = [1] + [0] * n
    for i, multiplicity in enumerate(b.multiplicities, start=1):
        for _ in range(multiplicity):
            for m in range(i, n + 1):
                series[m] += series[m - i]
    return series[n]


def H_value(nu: Partition, a: ExpProfile, n: int) -> Fraction:
    """H_ν(n) = n · g_{rank(ν)·A}(n - |ν|) · (rank(ν) - 1)! / ν!"""
    nu = Partition(nu)
    if not nu:
        raise InvalidInputError("H_ν ist nur für ν ≠ ∅ definiert")
    return Fraction(
        n * g_coeff(a.scaled(nu.rank), n - nu.size) * factorial(nu.rank - 1), nu.factorial
    )


def E_elem(a: ExpProfile, m: int, n: int) -> SymFunc:
    """E_m = -(-1)^m e_m + c_m, E_0 = 0"""
    if m > n:
        raise InvalidInputError(f"E_{m} verlangt m ≤ N = {n}")
    if m == 0:
        return SymFunc.zero(n)
    e_m = basis_element("e", (m,), n)
    return e_m.scale(-((-1) ** m)) + SymFunc.constant(c_coeffs(a, m)[m], n)


def E_monomial(a: ExpProfile, shape: Iterable[int], n: int) -> SymFunc:
    """E_λ = ∏ E_{λ_i}"""
    result = SymFunc.one(n)
    for part in Partition(shape):
        result = result * E_elem(a, part, n)
    return result


def u_element(a: ExpProfile, index: int, n: int) -> SymFunc:
    """u_n = p_n - Σ_{d|n} d·a_d"""
    return SymFunc.power_sum((index,), n) - SymFunc.constant(a.fixed_points(index), n)


def u_monomial(a: ExpProfile, shape: Iterable[int], n: int) -> SymFunc:
    result = SymFunc.one(n)
    for part in Partition(shape):
        result = result * u_element(a, part, n)
    return result


def exp_profile(a: ExpProfile, n: int) -> SymFunc:
    """exp(Σ a_i y_i), abgeschnitten bei N"""
    exponent = SymFunc.zero(n)
    for i, multiplicity in enumerate(a.multiplicities, start=1):
        if multiplicity and i <= n:
            exponent = exponent + y_element(i, n).scale(multiplicity)
    return exp_truncated(exponent)


def u_expansion_coeff(f: SymFunc, shape: Iterable[int], a: ExpProfile) -> Fraction:
    """⟨u_λ/z_λ, f⟩; für f = Σ c_ν p_ν exp(Σ a_i y_i) ist das c_λ"""
    shape = Partition(shape)
    if shape.size > f.truncation_degree:
        raise InvalidInputError(f"|{shape}| überschreitet N = {f.truncation_degree}")
    return hall_pair(u_monomial(a, shape, f.truncation_degree).scale(Fraction(1, shape.z)), f)


def e_identity_check(a: ExpProfile, m: int, n: int) -> bool:
    """E_m = -Σ_{j=1}^m (-1)^j c_{m-j} Σ_{λ⊢j} sgn(λ) u_λ/z_λ"""
    c = c_coeffs(a, m)
    rhs = SymFunc.zero(n)
    for j in range(1, m + 1):
        inner = SymFunc.zero(n)
        for shape in partitions_of(j):
            inner = inner + u_monomial(a, shape, n).scale(Fraction(shape.sign, shape.z))
        rhs = rhs - inner.scale((-1) ** j * c[m - j])
    return rhs == E_elem(a, m, n)


# =====================================================
# ε_k, Reduktion modulo (e_{k+1}, …) und π_k
# =====================================================

def eps_k(f: SymFunc, k: int) -> SymFunc:
    """p_i ↦ 0 für i > k"""
    return SymFunc(
        f.truncation_degree, {key: v for key, v in f.items() if all(part <= k for part in key)}
    )


def _poly_product(left: PolyInP, right: PolyInP) -> PolyInP:
    result: PolyInP = {}
    for a, x in left.items():
        for b, y in right.items():
            key = a.union(b)
            result[key] = result.get(key, 0) + x * y
    return {key: v for key, v in result.items() if v}


@lru_cache(maxsize=None)
def _reduce_power_sum(k: int, n: int) -> Tuple[Tuple[Partition, Fraction], ...]:
    """p_n in k Variablen: p_n = Σ_{i=1}^k (-1)^{i-1} e_i p_{n-i} für n > k"""
    if n <= k:
        return ((Partition((n,)), Fraction(1)),)
    total: PolyInP = {}
    for i in range(1, k + 1):
        e_i = {key: v * (-1) ** (i - 1) for key, v in basis_element("e", (i,), i).items()}
        lower = dict(_reduce_power_sum(k, n - i)) if n - i > 0 else {Partition(): Fraction(1)}
        for key, v in _poly_product(e_i, lower).items():
            total[key] = total.get(key, 0) + v
    return tuple((key, v) for key, v in sorted(total.items(), key=lambda kv: kv[0].sort_key()) if v)


def reduce_mod_e(k: int, shape: Iterable[int], n: int) -> PolyInP:
    """p_λ modulo (e_{k+1}, e_{k+2}, …) als Polynom in p_1..p_k"""
    shape = Partition(shape)
    if k < 1:
        raise InvalidInputError(f"k={k} muss ≥ 1 sein")
    if shape.size > n:
        raise InvalidInputError(f"|{shape}| überschreitet N = {n}")
    result: PolyInP = {Partition(): Fraction(1)}
    for part in shape:
        result = _poly_product(result, dict(_reduce_power_sum(k, part)))
    return result


def pi_k(f: SymFunc, k: int) -> SymFunc:
    """
    Das eindeutige Element von F_{≤k} mit ε_k(π_k f) = ε_k(f)

    ⟨p_λ, π_k f⟩ = Σ_μ r_{λμ} ⟨p_μ, f⟩, wobei p_λ ≡ Σ r_{λμ} p_μ modulo (e_{k+1}, …).
    """
    n = f.truncation_degree
    coeffs: Dict[Partition, Fraction] = {}
    for shape in partitions_up_to(n):
        total = sum(
            (r * mu.z * f.coefficient(mu) for mu, r in reduce_mod_e(k, shape, n).items()),
            Fraction(0),
        )
        if total:
            coeffs[shape] = total / shape.z
    return SymFunc(n, coeffs)


# =====================================================
# Zugehörigkeit
# =====================================================

def in_F_leq_k(f: SymFunc, k: int) -> bool:
    """Alle Schur-Koeffizienten zu Diagrammen mit mehr als k Zeilen verschwinden"""
    expansion = schur_expansion(f, f.truncation_degree)
    return all(value == 0 for shape, value in expansion.items() if len(shape) > k)


def in_V_Ar(f: SymFunc, a: ExpProfile, r: int) -> bool:
    """u-Koeffizienten mit rank(λ) ≥ r verschwinden"""
    return all(
        u_expansion_coeff(f, shape, a) == 0
        for shape in partitions_up_to(f.truncation_degree)
        if shape.rank >= r
    )


def _tuples_in_window(j: Sequence[int], slack: int) -> Iterable[Tuple[Partition, ...]]:
    choices = [
        [shape for size in range(part, part + slack + 1) for shape in partitions_of(size)]
        for part in j
    ]
    return product(*choices)


def find_type_equation_violation(
    f: SymFunc, j: Sequence[int], slack: int = 1
) -> Optional[Tuple[Partition, ...]]:
    """Erstes (λ_1, …, λ_r) mit (D über λ_1)…(D über λ_r) f ≠ 0 im Fenster"""
    j = tuple(Partition(j))
    if not j:
        raise InvalidInputError("J darf nicht leer sein")
    if slack < 0:
        raise InvalidInputError(f"slack={slack} ist negativ")
    for shapes in _tuples_in_window(j, slack):
        if sum(shape.size for shape in shapes) > f.truncation_degree:
            continue
        current = f
        for shape in shapes:
            current = apply_binom_D(shape, current)
        if not current.is_zero():
            logger.debug("type_equation_violated", shapes=[str(s) for s in shapes])
            return shapes
    return None


def type_equations_check(f: SymFunc, j: Sequence[int], slack: int = 1) -> bool:
    """(D über λ_1)…(D über λ_r) f = 0 für j_t ≤ |λ_t| ≤ j_t + slack, bis zum Abschneidegrad"""
    return find_type_equation_violation(f, j, slack) is None


def _profiles_below(size: int) -> List[ExpProfile]:
    return [ExpProfile.from_partition(shape) for s in range(size) for shape in partitions_of(s)]


def solution_space_check(f: SymFunc, j: Sequence[int]) -> bool:
    """
    f ∈ ⊕_A V_{A,t(A,J)} (abgeschnitten), t(A,J) = #{i : j_i > |A|}
    Exakte Lösung im Spann der p_ν exp(Σ a_i y_i) mit rank(ν) < t(A,J).
    """
    j = tuple(Partition(j))
    if not j:
        raise InvalidInputError("J darf nicht leer sein")
    n = f.truncation_degree
    index = {shape: i for i, shape in enumerate(partitions_up_to(n))}
    columns = []
    for profile in _profiles_below(j[0]):
        t = sum(1 for part in j if part > profile.size)
        base = exp_profile(profile, n)
        for nu in partitions_up_to(n):
            if nu.rank < t:
                element = SymFunc.power_sum(nu, n) * base
                columns.append({index[key]: v for key, v in element.items()})
    target = {index[key]: v for key, v in f.items()}
    return solve_in_span(columns, target, len(index)) is not None


# =====================================================
# Basen von V_{A,r} ∩ F_{≤k}
# =====================================================

def part_rk(r: int, k: int) -> Tuple[Partition, ...]:
    """Partitionen mit Teilen ≤ k und weniger als r Teilen"""
    found = [
        Partition(parts)
        for length in range(max(r, 0))
        for parts in combinations_with_replacement(range(1, k + 1), length)
    ]
    return tuple(sorted(found, key=Partition.sort_key))


def character_space_dimension(d: int, s: int) -> int:
    """p(d) + C(d+s-1, s-1) · Σ_{i<d} p(i)"""
    if d < 0 or s < 1:
        raise InvalidInputError(f"(d, s) = ({d}, {s}) verlangt d ≥ 0 und s ≥ 1")
    return len(partitions_of(d)) + comb(d + s - 1, s - 1) * sum(
        len(partitions_of(i)) for i in range(d)
    )


def intersection_basis(a: ExpProfile, r: int, k: int, n: int) -> List[SymFunc]:
    """π_k(p_ν exp(Σ a_i y_i)) für ν ∈ Part(r,k)"""
    base = exp_profile(a, n)
    return [pi_k(SymFunc.power_sum(nu, n) * base, k) for nu in part_rk(r, k) if nu.size <= n]


def check_direct_sum(blocks: Sequence[Tuple[ExpProfile, int]], k: int, n: int) -> bool:
    """Die Räume V_{A_i,r_i} ∩ F_{≤k} bilden eine direkte Summe (abgeschnitten bei N)"""
    index = {shape: i for i, shape in enumerate(partitions_up_to(n))}
    columns = []
    for profile, r in blocks:
        if profile.size > k:
            raise InvalidInputError(f"|A| = {profile.size} > k = {k}")
        for element in intersection_basis(profile, r, k, n):
            columns.append({index[key]: v for key, v in element.items()})
    if not columns:
        return True
    return rank(RatMatrix.from_columns(len(index), columns)) == len(columns)


def _compositions_into(nu: Partition, pieces: int) -> Iterable[Tuple[Partition, ...]]:
    """Geordnete Zerlegungen von ν in `pieces` nichtleere Teil-Multimengen"""
    if pieces == 0:
        if not nu:
            yield ()
        return
    counts = nu.multiplicities
    parts = list(counts)
    for choice in product(*[range(counts[p] + 1) for p in parts]):
        head = Partition.from_multiplicities(dict(zip(parts, choice)))
        if not head:
            continue
        rest = Partition.from_multiplicities({p: counts[p] - c for p, c in zip(parts, choice)})
        for tail in _compositions_into(rest, pieces - 1):
            yield (head,) + tail


def _L_coefficient(nu: Partition, shape: Partition, a: ExpProfile) -> Fraction:
    """Σ über geordnete (ν_1, …, ν_l) mit Σ ν_i = ν von ∏ H_{ν_i}(n_i)"""
    total = Fraction(0)
    for pieces in _compositions_into(nu, len(shape)):
        term = Fraction(1)
        for piece, part in zip(pieces, shape):
            term *= H_value(piece, a, part)
            if not term:
                break
        total += term
    return total


def L_nu(nu: Iterable[int], a: ExpProfile, r: int, k: int, n: int) -> SymFunc:
    """
    Das zu {E_ν} duale Basiselement von V_{A,r} ∩ F_{≤k}

    L_ν = exp(Σ a_i y_i) · Σ_λ p_λ/z_λ · Σ_{ν = Σ ν_i} ∏ H_{ν_i}(λ_i)
    """
    nu = Partition(nu)
    if nu.rank >= r or any(part > k for part in nu):
        raise InvalidInputError(f"{nu} liegt nicht in Part({r},{k})")
    if a.size > k:
        raise InvalidInputError(f"|A| = {a.size} > k = {k}")
    coeffs: Dict[Partition, Fraction] = {}
    for shape in partitions_up_to(n):
        if shape.rank > nu.rank:
            continue
        value = _L_coefficient(nu, shape, a)
        if value:
            coeffs[shape] = value / shape.z
    result = SymFunc(n, coeffs) * exp_profile(a, n)
    logger.debug("l_nu_built", nu=str(nu), profile=str(a), terms=len(result.coeffs))
    return result


def h_series_of_L(nu: Iterable[int], a: ExpProfile, r: int, k: int, n: int) -> Tuple[Fraction, ...]:
    """⟨h_m, L_ν⟩ für m = 0..N"""
    element = L_nu(nu, a, r, k, n)
    return tuple(
        sum((element.coefficient(shape) for shape in partitions_of(m)), Fraction(0))
        for m in range(n + 1)
    )


def h_series_closed_form(nu: Iterable[int], a: ExpProfile, n: int) -> Tuple[Fraction, ...]:
    """t^{|ν|} rank(ν)! / (ν! · P^{rank(ν)+1}) mit P = ∏ (1 - t^i)^{a_i}, Koeffizienten bis N"""
    nu = Partition(nu)
    scale_factor = Fraction(factorial(nu.rank), nu.factorial)
    b = a.scaled(nu.rank + 1)
    return tuple(scale_factor * g_coeff(b, m - nu.size) for m in range(n + 1))


# =====================================================
# Klassenfunktionen
# =====================================================

def class_fn_eval(spec: ClassFnSpec, mu: Iterable[int]) -> Fraction:
    """∏_n (X_n über m_n) (Σ_{d|n} d a_d)^{X_n - m_n} mit 0^0 = 1"""
    cycles = Partition(mu).multiplicities
    wanted = spec.nu.multiplicities
    value = 1
    for length in set(cycles) | set(wanted):
        x, m = cycles.get(length, 0), wanted.get(length, 0)
        if m > x:
            return Fraction(0)
        value *= comb(x, m) * spec.profile.fixed_points(length) ** (x - m)
    return Fraction(value)


def translation_check(spec: ClassFnSpec, max_n: int) -> bool:
    """⟨p_μ, (p_ν/z_ν) exp(Σ a_i y_i)⟩ = class_fn_eval für alle |μ| ≤ max_n"""
    element = (
        SymFunc.power_sum(spec.nu, max_n).scale(Fraction(1, spec.nu.z))
        * exp_profile(spec.profile, max_n)
    )
    for mu in partitions_up_to(max_n):
        if mu.z * element.coefficient(mu) != class_fn_eval(spec, mu):
            logger.debug("translation_mismatch", mu=str(mu))
            return False
    return True


# =====================================================
# Wachsende erste Zeile und rationale Reihen
# =====================================================

def multiplicity_series(f: SymFunc, shape: Iterable[int], max_n: int) -> Tuple[Fraction, ...]:
    """⟨s_{(n,λ)}, f⟩ für n = λ_1..max_n"""
    shape = Partition(shape)
    if shape.size + max_n > f.truncation_degree:
        raise InvalidInputError(
            f"|λ| + max_n = {shape.size + max_n} überschreitet N = {f.truncation_degree}"
        )
    first = shape[0] if shape else 0
    values = []
    for n in range(first, max_n + 1):
        grown = Partition(((n,) if n else ()) + tuple(shape))
        table = character_table(grown.size)[grown]
        values.append(sum((chi * f.coefficient(mu) for mu, chi in table.items()), Fraction(0)))
    return tuple(values)


@lru_cache(maxsize=None)
def _cyclotomic_factor(order: int) -> IntPolynomial:
    """Φ_order(t), normiert auf konstanten Term +1"""
    t = symbols("t")
    coefficients = [int(c) for c in reversed(Poly(cyclotomic_poly(order, t), t).all_coeffs())]
    if coefficients[0] < 0:
        coefficients = [-c for c in coefficients]
    return IntPolynomial(tuple(coefficients))


def _denominator_candidates(denom_degree: int, root_orders: int) -> List[IntPolynomial]:
    orders = list(range(1, root_orders + 1))
    degrees = [int(totient(d)) for d in orders]
    candidates = []
    for exponents in product(*[range(denom_degree // deg + 1) for deg in degrees]):
        if sum(e * deg for e, deg in zip(exponents, degrees)) > denom_degree:
            continue
        candidate = IntPolynomial.one()
        for order, e in zip(orders, exponents):
            candidate = candidate * _cyclotomic_factor(order) ** e
        candidates.append(candidate)
    return sorted(candidates, key=lambda q: (q.degree, q.coefficients))


def rational_fit(
    seq: Sequence, denom_degree: int, denom_root_orders: int
) -> Optional[Tuple[List[Fraction], IntPolynomial]]:
    """
    Sucht Q = ∏ Φ_d^{e_d} (d ≤ denom_root_orders, deg Q ≤ denom_degree) mit
    (Q · S)_m = 0 auf der hinteren Hälfte der Folge

    Returns:
        (Zählerkoeffizienten, Q) oder None, falls die Folge zu kurz ist oder nichts passt
    """
    values = [Fraction(x) for x in seq]
    if len(values) < 2 * denom_degree + 4:
        return None
    cut = len(values) // 2
    for candidate in _denominator_candidates(denom_degree, denom_root_orders):
        product_series = [
            sum(
                (candidate.coefficient(i) * values[m - i] for i in range(min(m, candidate.degree) + 1)),
                Fraction(0),
            )
            for m in range(len(values))
        ]
        if all(value == 0 for value in product_series[cut:]):
            numerator = product_series[:cut]
            while numerator and numerator[-1] == 0:
                numerator.pop()
            logger.debug("rational_fit_found", denominator=str(candidate))
            return numerator, candidate
    return None
