# algebra/polyforms.py
"""Однородные многочлены и дифференциальные формы над ℚ(ζ).

Все веса стандартные: deg(x_i) = deg(dx_i) = 1. Мультииндексы форм хранятся
по возрастанию, знаки нормализуются к этому порядку.
"""
import re
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import InputError, PolynomialSyntaxError
from .exactfield import CycloNumber, Scalar

Monomial = Tuple[int, ...]
Subset = Tuple[int, ...]


def monomials_of_degree(nvars: int, degree: int) -> List[Monomial]:
    """Все мономы степени d в порядке убывания (градуированный лексикографический)"""
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    result = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            result.append((first,) + rest)
    return result


def monomial_text(exps: Monomial) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def _term_order(exps: Monomial) -> Tuple[int, Monomial]:
    return (sum(exps), exps)


class GradedPolynomial:
    """Многочлен от x0..x{nvars-1}: словарь моном → ненулевой коэффициент"""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.nvars = nvars
        self.terms: Dict[Monomial, CycloNumber] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != nvars:
                raise InputError(f"Моном {exps} не соответствует числу переменных {nvars}")
            coeff = CycloNumber.coerce(coeff)
            if not coeff.is_zero():
                self.terms[tuple(exps)] = coeff

    # ========== Конструкторы ==========

    @classmethod
    def zero(cls, nvars: int) -> "GradedPolynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "GradedPolynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "GradedPolynomial":
        if not 0 <= index < nvars:
            raise InputError(f"Переменная x{index} вне диапазона x0..x{nvars - 1}")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Scalar = 1) -> "GradedPolynomial":
        return cls(len(exps), {tuple(exps): coeff})

    # ========== Свойства ==========

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Optional[int]:
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_degree(self) -> int:
        """Степень однородного ненулевого многочлена"""
        degrees = {sum(e) for e in self.terms}
        if len(degrees) != 1:
            if not degrees:
                raise InputError("Нулевой многочлен не имеет степени")
            raise InputError(f"Многочлен неоднороден: степени {sorted(degrees)}")
        return degrees.pop()

    def coefficient(self, exps: Monomial) -> CycloNumber:
        return self.terms.get(tuple(exps), CycloNumber.rational(0))

    def support(self) -> Tuple[int, ...]:
        """Индексы переменных, реально входящих в многочлен"""
        used = set()
        for exps in self.terms:
            used.update(i for i, e in enumerate(exps) if e)
        return tuple(sorted(used))

    def sorted_terms(self) -> List[Tuple[Monomial, CycloNumber]]:
        return sorted(self.terms.items(), key=lambda item: _term_order(item[0]), reverse=True)

    # ========== Арифметика ==========

    def _check(self, other: "GradedPolynomial") -> None:
        if other.nvars != self.nvars:
            raise InputError(f"Разное число переменных: {self.nvars} и {other.nvars}")

    def __add__(self, other: Union["GradedPolynomial", Scalar]) -> "GradedPolynomial":
        if not isinstance(other, GradedPolynomial):
            other = GradedPolynomial.constant(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms[exps] + c if exps in terms else c
        return GradedPolynomial(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "GradedPolynomial":
        return GradedPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Union["GradedPolynomial", Scalar]) -> "GradedPolynomial":
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "GradedPolynomial":
        return (-self) + other

    def scale(self, value: Scalar) -> "GradedPolynomial":
        value = CycloNumber.coerce(value)
        if value.is_zero():
            return GradedPolynomial.zero(self.nvars)
        return GradedPolynomial(self.nvars, {e: c * value for e, c in self.terms.items()})

    def __mul__(self, other: Union["GradedPolynomial", Scalar]) -> "GradedPolynomial":
        if not isinstance(other, GradedPolynomial):
            return self.scale(other)
        self._check(other)
        terms: Dict[Monomial, CycloNumber] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                terms[exps] = terms[exps] + c if exps in terms else c
        return GradedPolynomial(self.nvars, terms)

    def __rmul__(self, other: Scalar) -> "GradedPolynomial":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "GradedPolynomial":
        if exponent < 0:
            raise InputError("Отрицательная степень многочлена")
        result = GradedPolynomial.constant(self.nvars, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def partial(self, index: int) -> "GradedPolynomial":
        """Частная производная ∂/∂x_i"""
        if not 0 <= index < self.nvars:
            raise InputError(f"Индекс переменной {index} вне диапазона 0..{self.nvars - 1}")
        terms: Dict[Monomial, CycloNumber] = {}
        for exps, c in self.terms.items():
            power = exps[index]
            if power == 0:
                continue
            lowered = list(exps)
            lowered[index] -= 1
            terms[tuple(lowered)] = c * power
        return GradedPolynomial(self.nvars, terms)

    def substitute(self, nvars: int, placement: Sequence[int]) -> "GradedPolynomial":
        """Переименование x_i → x_{placement[i]} в кольце от nvars переменных"""
        if len(placement) != self.nvars or len(set(placement)) != len(placement):
            raise InputError(f"Некорректное размещение переменных: {tuple(placement)}")
        if any(not 0 <= p < nvars for p in placement):
            raise InputError(f"Размещение {tuple(placement)} выходит за x0..x{nvars - 1}")
        terms = {}
        for exps, c in self.terms.items():
            target = [0] * nvars
            for i, e in enumerate(exps):
                target[placement[i]] = e
            terms[tuple(target)] = c
        return GradedPolynomial(nvars, terms)

    # ========== Сравнение и печать ==========

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, CycloNumber)):
            other = GradedPolynomial.constant(self.nvars, other)
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def to_text(self) -> str:
        """Каноническая запись: члены по убыванию, литералы zeta{m}"""
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            mono = monomial_text(exps)
            literal = c.to_literal()
            compound = len([x for x in c.coeffs if x]) > 1
            if mono == "1":
                body = f"({literal})" if compound else literal
            elif compound:
                body = f"({literal})*{mono}"
            elif literal == "1":
                body = mono
            elif literal == "-1":
                body = f"-{mono}"
            else:
                body = f"{literal}*{mono}"
            if pieces and not body.startswith("-"):
                body = "+" + body
            pieces.append(body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"GradedPolynomial({self.to_text()})"

    __str__ = to_text


# ========== Разбор многочленов ==========

_TOKEN = re.compile(r"\s*(?:(zeta)(\d+)|x(\d+)|(\d+)|(i)|([-+*^/()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if not match:
            raise PolynomialSyntaxError(f"Неожиданный символ {text[pos]!r}", pos)
        start = match.start() + len(match.group(0)) - len(match.group(0).lstrip())
        if match.group(1):
            tokens.append(("zeta", match.group(2), start))
        elif match.group(3) is not None:
            tokens.append(("var", match.group(3), start))
        elif match.group(4) is not None:
            tokens.append(("int", match.group(4), start))
        elif match.group(5):
            tokens.append(("i", "i", start))
        else:
            tokens.append((match.group(6), match.group(6), start))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Рекурсивный спуск по грамматике expr/term/factor/atom"""

    def __init__(self, text: str, nvars: int):
        self.tokens = _tokenize(text)
        self.index = 0
        self.nvars = nvars

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.index]

    def take(self, kind: str) -> Tuple[str, str, int]:
        token = self.peek()
        if token[0] != kind:
            expected = "конец строки" if kind == "end" else repr(kind)
            raise PolynomialSyntaxError(f"Ожидалось {expected}, найдено {token[1]!r}", token[2])
        self.index += 1
        return token

    def expr(self) -> GradedPolynomial:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take(self.peek()[0])[0] == "-" else 1
        result = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])[0]
            value = self.term()
            result = result + value if op == "+" else result - value
        return result

    def term(self) -> GradedPolynomial:
        result = self.factor()
        while self.peek()[0] == "*":
            self.take("*")
            result = result * self.factor()
        return result

    def factor(self) -> GradedPolynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take("^")
            return base ** int(self.take("int")[1])
        return base

    def atom(self) -> GradedPolynomial:
        kind, value, pos = self.peek()
        if kind == "var":
            self.index += 1
            index = int(value)
            if index >= self.nvars:
                raise PolynomialSyntaxError(
                    f"Неизвестная переменная x{index} (доступны x0..x{self.nvars - 1})", pos
                )
            return GradedPolynomial.variable(self.nvars, index)
        if kind == "int":
            self.index += 1
            number = Fraction(int(value))
            if self.peek()[0] == "/":
                self.take("/")
                token = self.take("int")
                if int(token[1]) == 0:
                    raise PolynomialSyntaxError("Нулевой знаменатель", token[2])
                number /= int(token[1])
            return GradedPolynomial.constant(self.nvars, number)
        if kind == "zeta":
            self.index += 1
            if int(value) == 0:
                raise PolynomialSyntaxError("zeta0 не определено", pos)
            return GradedPolynomial.constant(self.nvars, CycloNumber.root(int(value)))
        if kind == "i":
            self.index += 1
            return GradedPolynomial.constant(self.nvars, CycloNumber.root(4))
        if kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        raise PolynomialSyntaxError(f"Неожиданный токен {value!r}", pos)


def poly_parse(text: str, nvars: int) -> GradedPolynomial:
    """Разбор строки вида "x0^3+zeta3*x1^3" в многочлен от nvars переменных"""
    parser = _Parser(text, nvars)
    result = parser.expr()
    parser.take("end")
    return result


def partial(p: GradedPolynomial, index: int) -> GradedPolynomial:
    return p.partial(index)


# ========== Дифференциальные формы ==========

def _merge_sign(left: Subset, right: Subset) -> int:
    """Знак перестановки, сортирующей конкатенацию (0, если индексы пересекаются)"""
    if set(left) & set(right):
        return 0
    inversions = sum(1 for s in left for t in right if s > t)
    return -1 if inversions % 2 else 1


class DiffForm:
    """Элемент Ω^•: словарь возрастающий мультииндекс S → коэффициент при dx_S"""

    __slots__ = ("nvars", "components")

    def __init__(self, nvars: int, components: Optional[Mapping[Subset, GradedPolynomial]] = None):
        self.nvars = nvars
        self.components: Dict[Subset, GradedPolynomial] = {}
        for subset, poly in (components or {}).items():
            subset = tuple(subset)
            if list(subset) != sorted(set(subset)) or any(not 0 <= s < nvars for s in subset):
                raise InputError(f"Некорректный мультииндекс {subset}")
            if poly.nvars != nvars:
                raise InputError(f"Коэффициент формы над {poly.nvars} переменными, нужно {nvars}")
            if not poly.is_zero():
                self.components[subset] = poly

    # ========== Конструкторы ==========

    @classmethod
    def zero(cls, nvars: int) -> "DiffForm":
        return cls(nvars)

    @classmethod
    def function(cls, poly: GradedPolynomial) -> "DiffForm":
        return cls(poly.nvars, {(): poly})

    @classmethod
    def basis(cls, nvars: int, subset: Sequence[int], coeff: Union[GradedPolynomial, Scalar] = 1) -> "DiffForm":
        """coeff·dx_S для произвольного порядка S (со знаком сортировки)"""
        subset = tuple(subset)
        if len(set(subset)) != len(subset):
            return cls.zero(nvars)
        inversions = sum(1 for a, b in combinations(subset, 2) if a > b)
        if not isinstance(coeff, GradedPolynomial):
            coeff = GradedPolynomial.constant(nvars, coeff)
        if inversions % 2:
            coeff = -coeff
        return cls(nvars, {tuple(sorted(subset)): coeff})

    @classmethod
    def dx(cls, nvars: int, index: int) -> "DiffForm":
        return cls.basis(nvars, (index,))

    @classmethod
    def volume(cls, nvars: int, coeff: Union[GradedPolynomial, Scalar] = 1) -> "DiffForm":
        """coeff·dx0∧…∧dx_{nvars−1}"""
        return cls.basis(nvars, tuple(range(nvars)), coeff)

    # ========== Свойства ==========

    def is_zero(self) -> bool:
        return not self.components

    def form_degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({len(s) for s in self.components}))

    def form_degree(self) -> int:
        degrees = self.form_degrees()
        if len(degrees) != 1:
            raise InputError(f"Форма смешанной степени: {degrees}")
        return degrees[0]

    def internal_degree(self) -> int:
        """|dx_S| + deg коэффициента; ошибка для неоднородной формы"""
        degrees = set()
        for subset, poly in self.components.items():
            degrees.add(len(subset) + poly.homogeneous_degree())
        if len(degrees) != 1:
            if not degrees:
                raise InputError("Нулевая форма не имеет внутренней степени")
            raise InputError(f"Форма неоднородна: внутренние степени {sorted(degrees)}")
        return degrees.pop()

    def component(self, subset: Sequence[int]) -> GradedPolynomial:
        return self.components.get(tuple(subset), GradedPolynomial.zero(self.nvars))

    def top_coefficient(self) -> GradedPolynomial:
        return self.component(range(self.nvars))

    # ========== Арифметика ==========

    def _check(self, other: "DiffForm") -> None:
        if other.nvars != self.nvars:
            raise InputError(f"Разное число переменных: {self.nvars} и {other.nvars}")

    def __add__(self, other: "DiffForm") -> "DiffForm":
        self._check(other)
        comps = dict(self.components)
        for subset, poly in other.components.items():
            comps[subset] = comps[subset] + poly if subset in comps else poly
        return DiffForm(self.nvars, comps)

    def __neg__(self) -> "DiffForm":
        return DiffForm(self.nvars, {s: -p for s, p in self.components.items()})

    def __sub__(self, other: "DiffForm") -> "DiffForm":
        return self + (-other)

    def scale(self, value: Union[GradedPolynomial, Scalar]) -> "DiffForm":
        """Умножение на функцию или число"""
        return DiffForm(self.nvars, {s: p * value for s, p in self.components.items()})

    def __mul__(self, value: Union[GradedPolynomial, Scalar]) -> "DiffForm":
        return self.scale(value)

    __rmul__ = __mul__

    def wedge(self, other: "DiffForm") -> "DiffForm":
        self._check(other)
        comps: Dict[Subset, GradedPolynomial] = {}
        for s1, p1 in self.components.items():
            for s2, p2 in other.components.items():
                sign = _merge_sign(s1, s2)
                if not sign:
                    continue
                subset = tuple(sorted(s1 + s2))
                poly = p1 * p2 if sign > 0 else -(p1 * p2)
                comps[subset] = comps[subset] + poly if subset in comps else poly
        return DiffForm(self.nvars, comps)

    def __xor__(self, other: "DiffForm") -> "DiffForm":
        return self.wedge(other)

    def d(self) -> "DiffForm":
        """Дифференциал де Рама"""
        comps: Dict[Subset, GradedPolynomial] = {}
        for subset, poly in self.components.items():
            for i in range(self.nvars):
                if i in subset:
                    continue
                derivative = poly.partial(i)
                if derivative.is_zero():
                    continue
                before = sum(1 for s in subset if s < i)
                if before % 2:
                    derivative = -derivative
                target = tuple(sorted(subset + (i,)))
                comps[target] = comps[target] + derivative if target in comps else derivative
        return DiffForm(self.nvars, comps)

    def euler_contract(self) -> "DiffForm":
        """Свёртка с полем Эйлера Σ x_i ∂/∂x_i"""
        comps: Dict[Subset, GradedPolynomial] = {}
        for subset, poly in self.components.items():
            for pos, index in enumerate(subset):
                coeff = poly * GradedPolynomial.variable(self.nvars, index)
                if pos % 2:
                    coeff = -coeff
                target = subset[:pos] + subset[pos + 1:]
                comps[target] = comps[target] + coeff if target in comps else coeff
        return DiffForm(self.nvars, comps)

    def parity_twist(self) -> "DiffForm":
        """(−1)^{степень формы} покомпонентно"""
        return DiffForm(
            self.nvars,
            {s: (-p if len(s) % 2 else p) for s, p in self.components.items()},
        )

    # ========== Сравнение и печать ==========

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffForm):
            return NotImplemented
        return self.nvars == other.nvars and self.components == other.components

    __hash__ = None

    def sorted_components(self) -> List[Tuple[Subset, GradedPolynomial]]:
        return sorted(self.components.items(), key=lambda item: (len(item[0]), item[0]))

    def to_text(self) -> str:
        if not self.components:
            return "0"
        parts = []
        for subset, poly in self.sorted_components():
            basis = "".join(f"dx{i}" for i in subset)
            parts.append(f"({poly.to_text()})" + (f"*{basis}" if basis else ""))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DiffForm({self.to_text()})"

    __str__ = to_text


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    return a.wedge(b)


def de_rham_d(a: DiffForm) -> DiffForm:
    return a.d()


def euler_contract(a: DiffForm) -> DiffForm:
    return a.euler_contract()


def exact_quotient(f: GradedPolynomial, g: GradedPolynomial) -> GradedPolynomial:
    """f / g при условии делимости (деление с остатком в лексикографическом порядке)"""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("Деление многочлена на ноль")
    lead_exps = max(g.terms)
    lead_coeff = g.terms[lead_exps]
    remainder = f
    quotient = GradedPolynomial.zero(f.nvars)
    while not remainder.is_zero():
        exps = max(remainder.terms)
        if any(a < b for a, b in zip(exps, lead_exps)):
            raise InputError(f"{g.to_text()} не делит {f.to_text()}")
        step = GradedPolynomial(
            f.nvars,
            {tuple(a - b for a, b in zip(exps, lead_exps)): remainder.terms[exps] / lead_coeff},
        )
        quotient = quotient + step
        remainder = remainder - step * g
    return quotient
