# services/fermat_service.py
"""Перечисление классов Ходжа гиперповерхности Ферма X^n_m по Сиоде.

Ĝ = {(a_0, …, a_{n+1}) ∈ (ℤ/m)^{n+2} : Σ a_i = 0}, U: элементы без нулевых
координат, B = {α ∈ U : |tα| = n/2 + 1 для всех t ∈ (ℤ/m)^×}, dim Hdg = |B|.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Dict, List, Sequence, Tuple

from algebra.errors import InputError
from algebra.polyforms import GradedPolynomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShiodaCharacter:
    """Характер (a_0, …, a_{n+1}) по модулю m"""
    m: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.m < 2:
            raise InputError(f"Степень m должна быть не меньше 2, получено {self.m}")
        normalized = tuple(a % self.m for a in self.entries)
        object.__setattr__(self, "entries", normalized)
        if sum(normalized) % self.m:
            raise InputError(f"Сумма координат {self.entries} не делится на {self.m}")

    def scale(self, t: int) -> "ShiodaCharacter":
        return ShiodaCharacter(self.m, tuple(t * a for a in self.entries))

    def to_list(self) -> List[int]:
        return list(self.entries)


def weight(alpha: ShiodaCharacter) -> Fraction:
    """|α| = Σ⟨a_i⟩/m"""
    return Fraction(sum(alpha.entries), alpha.m)


def units(m: int) -> List[int]:
    """(ℤ/m)^× в порядке возрастания"""
    return [t for t in range(1, m) if gcd(t, m) == 1]


def is_in_u(alpha: ShiodaCharacter) -> bool:
    return all(alpha.entries)


def _check(m: int, n: int) -> None:
    if m < 2:
        raise InputError(f"Степень m должна быть не меньше 2, получено {m}")
    if n < 2 or n % 2:
        raise InputError(f"Размерность n должна быть чётной и не меньше 2, получено {n}")


def _scaled_weight(entries: Sequence[int], t: int, m: int) -> Fraction:
    return Fraction(sum((t * a) % m for a in entries), m)


def _in_b(entries: Tuple[int, ...], m: int, target: int, checked_units: Sequence[int]) -> bool:
    return all(_scaled_weight(entries, t, m) == target for t in checked_units)


def b_set(m: int, n: int, symmetric_shortcut: bool = False) -> List[ShiodaCharacter]:
    """Элементы B в лексикографическом порядке.

    symmetric_shortcut: проверяются только t с 2t < m, так как для α ∈ U
    |tα| + |(m−t)α| = n + 2.
    """
    _check(m, n)
    target = n // 2 + 1
    checked = units(m)
    if symmetric_shortcut:
        checked = [t for t in checked if 2 * t < m] or [1]
    result = []
    # последняя координата определяется условием Σ a_i ≡ 0
    for head in product(range(1, m), repeat=n + 1):
        last = (-sum(head)) % m
        if last == 0:
            continue
        entries = head + (last,)
        # ранний выход по t = 1
        if sum(entries) != target * m:
            continue
        if _in_b(entries, m, target, checked):
            result.append(ShiodaCharacter(m, entries))
    logger.debug("✅ |B(%d, %d)| = %d", m, n, len(result))
    return result


def hdg_dim_fermat(m: int, n: int) -> int:
    """dim_ℚ Hdg(X^n_m) = |B|"""
    return len(b_set(m, n, symmetric_shortcut=True))


def fermat_polynomial(m: int, nvars: int) -> GradedPolynomial:
    """x_0^m + … + x_{nvars−1}^m"""
    total = GradedPolynomial.zero(nvars)
    for i in range(nvars):
        total = total + GradedPolynomial.variable(nvars, i) ** m
    return total


class FermatService:
    """Отчёты по множествам B"""

    def report(self, m: int, n: int, count_only: bool = False) -> Dict[str, object]:
        classes = b_set(m, n, symmetric_shortcut=True)
        logger.info("✅ Ферма m=%d, n=%d: %d классов Ходжа", m, n, len(classes))
        if count_only:
            return {"count": len(classes)}
        return {"count": len(classes), "classes": [alpha.to_list() for alpha in classes]}
