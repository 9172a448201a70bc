# algebra/exactfield.py
"""Точная арифметика в ℚ и круговых полях ℚ(ζ_m).

Элемент ℚ(ζ_m) хранится координатами в степенном базисе 1, ζ, …, ζ^{φ(m)−1}
по модулю кругового многочлена Φ_m. Разные порядки согласуются подъёмом
в ℚ(ζ_L), L = НОК порядков, по правилу ζ_m = ζ_L^{L/m}.
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, List, Sequence, Tuple, Union

from sympy import Matrix, Poly, Rational, Symbol, cyclotomic_poly, divisors, totient

from settings import get_settings
from .errors import InputError, ResourceBoundError

Scalar = Union[int, Fraction, "CycloNumber"]

_X = Symbol("x")


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _check_order(order: int) -> None:
    if order < 1:
        raise InputError(f"Порядок корня из единицы должен быть положительным: {order}")
    bound = get_settings().max_cyclo_order
    if order > bound:
        raise ResourceBoundError(
            f"Порядок кругового поля {order} превышает предел {bound}"
        )


@lru_cache(maxsize=None)
def euler_phi(order: int) -> int:
    """φ(m): степень ℚ(ζ_m) над ℚ"""
    return int(totient(order))


@lru_cache(maxsize=None)
def cyclotomic_coeffs(order: int) -> Tuple[int, ...]:
    """Коэффициенты Φ_m от младшего к старшему (многочлен унитарный)"""
    coeffs = Poly(cyclotomic_poly(order, _X), _X).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


@lru_cache(maxsize=None)
def _power_table(order: int) -> Tuple[Tuple[int, ...], ...]:
    """Координаты ζ^k, k = 0..m−1, в степенном базисе"""
    phi = euler_phi(order)
    poly = cyclotomic_coeffs(order)
    table = []
    current = [0] * phi
    current[0] = 1
    for _ in range(order):
        table.append(tuple(current))
        # умножение на ζ со сдвигом и редукцией по Φ_m
        top = current[-1]
        shifted = [0] + current[:-1]
        if top:
            shifted = [s - top * p for s, p in zip(shifted, poly[:-1])]
        current = shifted
    return tuple(table)


def _to_sympy(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def _from_sympy(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _mul_coords(order: int, a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    table = _power_table(order)
    out = [Fraction(0)] * len(a)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            c = ai * bj
            for k, r in enumerate(table[(i + j) % order]):
                if r:
                    out[k] += c * r
    return tuple(out)


class CycloNumber:
    """Элемент ℚ(ζ_m) в степенном базисе (неизменяемый)"""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Iterable[Union[int, Fraction]]):
        _check_order(order)
        values = tuple(Fraction(c) for c in coeffs)
        if len(values) != euler_phi(order):
            raise InputError(
                f"Для ℚ(ζ_{order}) нужно {euler_phi(order)} координат, получено {len(values)}"
            )
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", values)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CycloNumber неизменяем")

    # ========== Конструкторы ==========

    @classmethod
    def rational(cls, value: Union[int, Fraction], order: int = 1) -> "CycloNumber":
        coeffs = [Fraction(0)] * euler_phi(order)
        coeffs[0] = Fraction(value)
        return cls(order, coeffs)

    @classmethod
    def root(cls, order: int, power: int = 1) -> "CycloNumber":
        """ζ_m^k"""
        _check_order(order)
        return cls(order, _power_table(order)[power % order])

    @classmethod
    def coerce(cls, value: Scalar) -> "CycloNumber":
        if isinstance(value, CycloNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.rational(value)
        raise TypeError(f"Нельзя привести {type(value).__name__} к CycloNumber")

    # ========== Свойства ==========

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise InputError(f"Число {self.to_literal()} не рационально")
        return self.coeffs[0]

    def lift(self, order: int) -> "CycloNumber":
        """Подъём в ℚ(ζ_L), L кратно текущему порядку"""
        if order == self.order:
            return self
        if order % self.order:
            raise InputError(f"Порядок {order} не кратен {self.order}")
        _check_order(order)
        step = order // self.order
        table = _power_table(order)
        out = [Fraction(0)] * euler_phi(order)
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            for idx, r in enumerate(table[(k * step) % order]):
                if r:
                    out[idx] += c * r
        return CycloNumber(order, out)

    def _align(self, other: Scalar) -> Tuple["CycloNumber", "CycloNumber"]:
        other = CycloNumber.coerce(other)
        if other.order == self.order:
            return self, other
        common = _lcm(self.order, other.order)
        _check_order(common)
        return self.lift(common), other.lift(common)

    # ========== Арифметика ==========

    def __add__(self, other: Scalar) -> "CycloNumber":
        a, b = self._align(other)
        return CycloNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "CycloNumber":
        return CycloNumber(self.order, [-x for x in self.coeffs])

    def __sub__(self, other: Scalar) -> "CycloNumber":
        a, b = self._align(other)
        return CycloNumber(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other: Scalar) -> "CycloNumber":
        return CycloNumber.coerce(other) - self

    def __mul__(self, other: Scalar) -> "CycloNumber":
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.order, [x * other for x in self.coeffs])
        a, b = self._align(other)
        if a.order <= 2:
            return CycloNumber(a.order, [a.coeffs[0] * b.coeffs[0]])
        return CycloNumber(a.order, _mul_coords(a.order, a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("Деление на ноль в круговом поле")
        if self.order <= 2:
            return CycloNumber(self.order, [1 / self.coeffs[0]])
        # обращение по модулю Φ_m (расширенный алгоритм Евклида в sympy)
        value = Poly([_to_sympy(c) for c in reversed(self.coeffs)], _X, domain="QQ")
        modulus = Poly(cyclotomic_poly(self.order, _X), _X, domain="QQ")
        coeffs = [_from_sympy(c) for c in reversed(value.invert(modulus).all_coeffs())]
        coeffs += [Fraction(0)] * (len(self.coeffs) - len(coeffs))
        return CycloNumber(self.order, coeffs)

    def __truediv__(self, other: Scalar) -> "CycloNumber":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("Деление на ноль в круговом поле")
            return CycloNumber(self.order, [x / other for x in self.coeffs])
        return self * CycloNumber.coerce(other).inverse()

    def __rtruediv__(self, other: Scalar) -> "CycloNumber":
        return CycloNumber.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "CycloNumber":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycloNumber.rational(1, self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ========== Сравнение ==========

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    def minimal(self) -> "CycloNumber":
        """То же число в ℚ(ζ_d) с наименьшим d, делящим порядок"""
        if self.is_rational():
            return CycloNumber.rational(self.coeffs[0])
        table = _power_table(self.order)
        target = Matrix([_to_sympy(c) for c in self.coeffs])
        for d in divisors(self.order):
            if d == self.order:
                break
            step = self.order // d
            # столбец k: координаты ζ_d^k = ζ_m^{k·m/d}
            columns = [table[(k * step) % self.order] for k in range(euler_phi(d))]
            embedding = Matrix(len(self.coeffs), len(columns), lambda r, k: columns[k][r])
            try:
                solution, _ = embedding.gauss_jordan_solve(target)
            except ValueError:
                continue
            return CycloNumber(d, [_from_sympy(v) for v in solution])
        return self

    def __hash__(self) -> int:
        # равные числа разных порядков совпадают после спуска к наименьшему полю
        if self._hash is None:
            if self.is_rational():
                value = hash(self.coeffs[0])
            else:
                low = self.minimal()
                value = hash((low.order, low.coeffs))
            object.__setattr__(self, "_hash", value)
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # ========== Печать ==========

    def to_literal(self) -> str:
        """Каноническая запись: 1/2, -1-zeta3, 3*zeta4"""
        parts: List[str] = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                body = _fraction_text(abs(c))
            else:
                atom = f"zeta{self.order}" if k == 1 else f"zeta{self.order}^{k}"
                body = atom if abs(c) == 1 else f"{_fraction_text(abs(c))}*{atom}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        text = "".join(f"{s}{b}" for s, b in parts)
        return text[1:] if text.startswith("+") else text

    def __repr__(self) -> str:
        return f"CycloNumber({self.to_literal()})"

    __str__ = to_literal


def _fraction_text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


ZERO = CycloNumber.rational(0)
ONE = CycloNumber.rational(1)


def cyclo_arith(a: Scalar, b: Scalar, op: str) -> CycloNumber:
    """Арифметика в ℚ(ζ_НОК): op ∈ {add, sub, mul, div}"""
    a = CycloNumber.coerce(a)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InputError(f"Неизвестная операция: {op}")


def to_rational_coords(a: Scalar, order: int = None) -> Tuple[Fraction, ...]:
    """Координаты в степенном базисе ℚ(ζ_m) (при необходимости после подъёма)"""
    a = CycloNumber.coerce(a)
    if order is not None:
        a = a.lift(order)
    return a.coeffs


def common_order(values: Iterable[Scalar]) -> int:
    order = 1
    for value in values:
        if isinstance(value, CycloNumber):
            order = _lcm(order, value.order)
    _check_order(order)
    return order
