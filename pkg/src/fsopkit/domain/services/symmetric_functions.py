"""
Symmetrische Funktionen für fsopkit
Basiswechsel, Hall-Paarung, y_n, Exponentiale und die Operatoren ∂_n, D_n, (D über λ)
"""
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Tuple, Union

import structlog
from sympy.functions.combinatorial.numbers import mobius
from sympy.ntheory import divisors
from sympy.utilities.iterables import partitions

from fsopkit.domain.exceptions import InvalidInputError, TruncationMismatchError
from fsopkit.domain.models.symfunc import Partition, Scalar, SymFunc

logger = structlog.get_logger(__name__)

BASIS_KINDS = ("p", "e", "h", "s", "y")


# =====================================================
# Partitionen & Charaktertafeln
# =====================================================

@lru_cache(maxsize=None)
def partitions_of(n: int) -> Tuple[Partition, ...]:
    """Alle Partitionen von n, lexikographisch absteigend ((n) zuerst)"""
    if n < 0:
        return ()
    if n == 0:
        return (Partition(),)
    found = [Partition.from_multiplicities(dict(p)) for p in partitions(n)]
    return tuple(sorted(found, reverse=True))


def partitions_up_to(n: int) -> Tuple[Partition, ...]:
    return tuple(p for size in range(n + 1) for p in partitions_of(size))


@lru_cache(maxsize=None)
def murnaghan_nakayama(shape: Partition, cycle_type: Partition) -> int:
    """
    χ^shape(cycle_type) über Beta-Mengen
    Entfernen eines Randhakens der Länge r entspricht β ↦ β - r.
    """
    shape, cycle_type = Partition(shape), Partition(cycle_type)
    if shape.size != cycle_type.size:
        raise InvalidInputError(f"{shape} und {cycle_type} haben verschiedene Grösse")
    if not cycle_type:
        return 1
    r = cycle_type[0]
    rest = Partition(cycle_type[1:])
    length = len(shape)
    beta = [part + length - 1 - i for i, part in enumerate(shape)]
    beta_set = set(beta)
    total = 0
    for i, b in enumerate(beta):
        target = b - r
        if target < 0 or target in beta_set:
            continue
        crossed = sum(1 for other in beta if target < other < b)
        new_beta = sorted([x for j, x in enumerate(beta) if j != i] + [target], reverse=True)
        new_shape = Partition(
            x - (length - 1 - j) for j, x in enumerate(new_beta) if x - (length - 1 - j) > 0
        )
        total += (-1) ** crossed * murnaghan_nakayama(new_shape, rest)
    return total


@lru_cache(maxsize=None)
def character_table(n: int) -> Dict[Partition, Dict[Partition, int]]:
    """table[λ][μ] = χ^λ(μ)"""
    return {
        shape: {mu: murnaghan_nakayama(shape, mu) for mu in partitions_of(n)}
        for shape in partitions_of(n)
    }


# =====================================================
# Basiselemente
# =====================================================

def _as_partition(index: Union[Partition, int, Iterable[int]]) -> Partition:
    if isinstance(index, int):
        return Partition((index,)) if index > 0 else Partition()
    return Partition(index)


@lru_cache(maxsize=None)
def _newton_series(n_max: int, signed: bool) -> Tuple[Dict[Partition, Fraction], ...]:
    """
    Newton-Identitäten: n h_n = Σ p_k h_{n-k}, n e_n = Σ (-1)^{k-1} p_k e_{n-k}
    Einträge sind die p-Koeffizienten von h_n bzw. e_n.
    """
    series: List[Dict[Partition, Fraction]] = [{Partition(): Fraction(1)}]
    for n in range(1, n_max + 1):
        current: Dict[Partition, Fraction] = {}
        for k in range(1, n + 1):
            sign = (-1) ** (k - 1) if signed else 1
            for key, value in series[n - k].items():
                new_key = key.union((k,))
                current[new_key] = current.get(new_key, 0) + sign * value
        series.append({key: value / n for key, value in current.items() if value})
    return tuple(series)


def _product_of_series(parts: Partition, series, n: int) -> SymFunc:
    result = SymFunc.one(n)
    for part in parts:
        result = result * SymFunc(n, series[part])
    return result


def basis_element(kind: str, index: Union[Partition, int, Iterable[int]], n: int) -> SymFunc:
    """
    Element der Basis p, e, h, s (Index Partition) oder y_n (Index natürliche Zahl)
    in der p-Basis, abgeschnitten bei N = n
    """
    if kind not in BASIS_KINDS:
        raise InvalidInputError(f"Unbekannte Basis '{kind}'")
    if kind == "y":
        if not isinstance(index, int) or index < 1:
            raise InvalidInputError(f"y_n verlangt n ≥ 1, erhalten {index!r}")
        return y_element(index, n)

    partition = _as_partition(index)
    if partition.size > n:
        raise InvalidInputError(f"|{partition}| = {partition.size} überschreitet N = {n}")
    if kind == "p":
        return SymFunc.power_sum(partition, n)
    if kind == "h":
        return _product_of_series(partition, _newton_series(n, False), n)
    if kind == "e":
        return _product_of_series(partition, _newton_series(n, True), n)
    table = character_table(partition.size)[partition]
    return SymFunc(n, {mu: Fraction(chi, mu.z) for mu, chi in table.items()})


def y_element(index: int, n: int) -> SymFunc:
    """y_n = Σ_{k≥1} p_{nk}/k"""
    return SymFunc(n, {Partition((index * k,)): Fraction(1, k) for k in range(1, n // index + 1)})


def power_sum_from_y(index: int, n: int) -> SymFunc:
    """p_n = Σ_{d≥1} μ(d)/d · y_{nd}"""
    result = SymFunc.zero(n)
    for d in range(1, n // index + 1):
        mu = int(mobius(d))
        if mu:
            result = result + y_element(index * d, n).scale(Fraction(mu, d))
    return result


# =====================================================
# Arithmetik
# =====================================================

def add(f: SymFunc, g: SymFunc) -> SymFunc:
    return f + g


def subtract(f: SymFunc, g: SymFunc) -> SymFunc:
    return f - g


def scale(f: SymFunc, factor: Scalar) -> SymFunc:
    return f.scale(factor)


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    return f * g


def truncate(f: SymFunc, degree: int) -> SymFunc:
    """Explizites Abschneiden auf M ≤ N"""
    if degree > f.truncation_degree:
        raise InvalidInputError(
            f"Abschneidegrad {degree} liegt über dem vorhandenen {f.truncation_degree}"
        )
    if degree < 0:
        raise InvalidInputError(f"Negativer Abschneidegrad {degree}")
    return SymFunc(degree, {k: v for k, v in f.coeffs.items() if k.size <= degree})


def exp_truncated(f: SymFunc) -> SymFunc:
    """exp(f) = Σ_{k≤N} f^k/k! für f ohne konstanten Term"""
    if f.constant_term():
        raise InvalidInputError("exp verlangt verschwindenden konstanten Term")
    result = SymFunc.one(f.truncation_degree)
    power = SymFunc.one(f.truncation_degree)
    for k in range(1, f.truncation_degree + 1):
        power = power * f
        if power.is_zero():
            break
        result = result + power.scale(Fraction(1, factorial(k)))
    return result


def hall_pair(f: SymFunc, g: SymFunc) -> Fraction:
    """⟨f, g⟩ = Σ_λ z_λ f[λ] g[λ]"""
    if f.truncation_degree != g.truncation_degree:
        common = min(f.truncation_degree, g.truncation_degree)
        wider = f if f.truncation_degree > common else g
        if any(k.size > common for k, _ in wider.items()):
            raise TruncationMismatchError(f.truncation_degree, g.truncation_degree)
    total = Fraction(0)
    for key, value in f.items():
        other = g.coeffs.get(key)
        if other:
            total += key.z * value * other
    return total


# =====================================================
# Differentialoperatoren
# =====================================================

def apply_partial(index: int, f: SymFunc) -> SymFunc:
    """∂/∂p_n; Abschneidegrad sinkt um n"""
    if index < 1:
        raise InvalidInputError(f"∂_n verlangt n ≥ 1, erhalten {index}")
    if index > f.truncation_degree:
        raise InvalidInputError(f"∂_{index} auf Abschneidegrad {f.truncation_degree}")
    result: Dict[Partition, Fraction] = {}
    for key, value in f.items():
        m = key.count(index)
        if not m:
            continue
        parts = list(key)
        parts.remove(index)
        new_key = Partition(parts)
        result[new_key] = result.get(new_key, 0) + m * value
    return SymFunc(f.truncation_degree - index, result)


def apply_D(index: int, f: SymFunc) -> SymFunc:
    """D_n = Σ_{d|n} μ(d)/d ∂_{n/d}; Abschneidegrad sinkt um n"""
    if index < 1:
        raise InvalidInputError(f"D_n verlangt n ≥ 1, erhalten {index}")
    target = f.truncation_degree - index
    if target < 0:
        raise InvalidInputError(f"D_{index} auf Abschneidegrad {f.truncation_degree}")
    result = SymFunc.zero(target)
    for d in divisors(index):
        mu = int(mobius(d))
        if mu:
            partial = truncate(apply_partial(index // d, f), target)
            result = result + partial.scale(Fraction(mu, d))
    return result


def apply_binom_D(shape: Union[Partition, Iterable[int]], f: SymFunc) -> SymFunc:
    """(D über λ) = ∏_i (D_i über m_i), aufsteigend in i"""
    shape = Partition(shape)
    result = f
    for part, m in shape.multiplicities.items():
        current = result
        for j in range(m):
            applied = apply_D(part, current)
            current = applied - truncate(current, applied.truncation_degree).scale(j)
        result = current.scale(Fraction(1, factorial(m)))
    return result


def schur_expansion(f: SymFunc, max_deg: int) -> Dict[Partition, Fraction]:
    """⟨s_λ, f⟩ für alle |λ| ≤ max_deg"""
    if max_deg > f.truncation_degree:
        raise InvalidInputError(f"max_deg {max_deg} > N = {f.truncation_degree}")
    result: Dict[Partition, Fraction] = {}
    for size in range(max_deg + 1):
        table = character_table(size)
        for shape in partitions_of(size):
            result[shape] = sum(
                (chi * f.coefficient(mu) for mu, chi in table[shape].items()), Fraction(0)
            )
    return result
