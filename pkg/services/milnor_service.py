# services/milnor_service.py
"""Гиперповерхность (f, n, e) и градуированная алгебра Милнора Q/(∂f).

Вместо базисов Грёбнера используется линейная алгебра по степеням:
[J]_d натянуто на {моном·∂f/∂x_i}, строки приводятся к ступенчатому виду
над ℚ(ζ). Столбцы упорядочены по убыванию (градуированный лексикографический
порядок), ведущим столбцом строки служит старший моном, поэтому стандартные
мономы суть не-опорные столбцы.
"""
import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from algebra.errors import InputError, ResourceBoundError
from algebra.exactfield import CycloNumber
from algebra.polyforms import GradedPolynomial, Monomial, monomials_of_degree, poly_parse
from settings import get_settings

logger = logging.getLogger(__name__)

Row = Dict[int, CycloNumber]


@dataclass
class _DegreeData:
    """Ступенчатый вид [J]_d и стандартный базис [Q/J]_d"""
    columns: List[Monomial]
    column_index: Dict[Monomial, int]
    pivots: Dict[int, Row]
    basis: List[Monomial]
    basis_index: Dict[Monomial, int]


class JacobianReducer:
    """Ленивый кэш приведённых строк якобиева идеала по степеням"""

    def __init__(self, partials: Sequence[GradedPolynomial], e: int, max_degree: Optional[int] = None):
        self.nvars = len(partials)
        self.partials = list(partials)
        self.e = e
        self.max_degree = max_degree
        self._cache: Dict[int, _DegreeData] = {}
        self._lock = threading.Lock()

    def degree_data(self, degree: int) -> _DegreeData:
        data = self._cache.get(degree)
        if data is not None:
            return data
        if self.max_degree is not None and degree > self.max_degree:
            raise ResourceBoundError(
                f"Степень {degree} превышает предел max_degree={self.max_degree}"
            )
        with self._lock:
            # заполнение идемпотентно: каждая степень считается один раз
            if degree not in self._cache:
                self._cache[degree] = self._compute(degree)
            return self._cache[degree]

    def _compute(self, degree: int) -> _DegreeData:
        columns = monomials_of_degree(self.nvars, degree)
        column_index = {m: i for i, m in enumerate(columns)}
        pivots: Dict[int, Row] = {}
        for multiplier in monomials_of_degree(self.nvars, degree - (self.e - 1)):
            for p in self.partials:
                row: Row = {}
                for exps, c in p.terms.items():
                    target = tuple(a + b for a, b in zip(exps, multiplier))
                    row[column_index[target]] = c
                self._insert(pivots, row)
        basis = [m for i, m in enumerate(columns) if i not in pivots]
        logger.debug("✅ Степень %d: %d мономов, ранг J_d = %d", degree, len(columns), len(pivots))
        return _DegreeData(
            columns=columns,
            column_index=column_index,
            pivots=pivots,
            basis=basis,
            basis_index={m: i for i, m in enumerate(basis)},
        )

    @staticmethod
    def _eliminate(pivots: Dict[int, Row], row: Row) -> Row:
        for col in [c for c in row if c in pivots]:
            factor = row.get(col)
            if factor is None or factor.is_zero():
                continue
            for c, v in pivots[col].items():
                value = row[c] - factor * v if c in row else -(factor * v)
                if value.is_zero():
                    row.pop(c, None)
                else:
                    row[c] = value
        return row

    def _insert(self, pivots: Dict[int, Row], row: Row) -> None:
        row = self._eliminate(pivots, row)
        if not row:
            return
        lead = min(row)
        inverse = row[lead].inverse()
        row = {c: v * inverse for c, v in row.items()}
        # поддержание приведённого ступенчатого вида
        for other in pivots.values():
            factor = other.get(lead)
            if factor is None:
                continue
            for c, v in row.items():
                value = other[c] - factor * v if c in other else -(factor * v)
                if value.is_zero():
                    other.pop(c, None)
                else:
                    other[c] = value
        pivots[lead] = row

    def dimension(self, degree: int) -> int:
        if degree < 0:
            return 0
        return len(self.degree_data(degree).basis)

    def reduce(self, poly: GradedPolynomial, degree: int) -> Tuple[CycloNumber, ...]:
        data = self.degree_data(degree)
        row: Row = {data.column_index[exps]: c for exps, c in poly.terms.items()}
        row = self._eliminate(data.pivots, row)
        zero = CycloNumber.rational(0)
        return tuple(row.get(data.column_index[m], zero) for m in data.basis)


def expected_hilbert(e: int, nvars: int) -> List[int]:
    """Коэффициенты ((1 − s^{e−1})/(1 − s))^{n+2}"""
    if e < 2:
        return []
    block = [1] * (e - 1)
    series = [1]
    for _ in range(nvars):
        product = [0] * (len(series) + len(block) - 1)
        for i, a in enumerate(series):
            for j, b in enumerate(block):
                product[i + j] += a * b
        series = product
    return series


@dataclass
class HypersurfaceData:
    """Проверенные данные (f, n, e) с изолированной особенностью"""
    f: GradedPolynomial
    n: int
    nvars: int
    e: int
    partials: List[GradedPolynomial]
    reducer: JacobianReducer = field(repr=False, compare=False)

    @property
    def socle_degree(self) -> int:
        return (self.e - 2) * self.nvars


def hypersurface_init(f: GradedPolynomial, n: int, max_degree: Optional[int] = None) -> HypersurfaceData:
    """Проверка f: ненулевой, однородный, n чётно, особенность изолирована"""
    if n < 0 or n % 2:
        raise InputError(f"n должно быть чётным неотрицательным, получено {n}")
    if f.nvars != n + 2:
        raise InputError(f"Многочлен задан над {f.nvars} переменными, нужно n+2 = {n + 2}")
    if f.is_zero():
        raise InputError("Многочлен f равен нулю")
    if not f.is_homogeneous():
        raise InputError(f"Многочлен f неоднороден: {f.to_text()}")
    e = f.homogeneous_degree()
    if e < 1:
        raise InputError("Степень f должна быть не меньше 1")
    nvars = n + 2
    socle = (e - 2) * nvars
    if max_degree is None:
        max_degree = get_settings().max_degree
    if max_degree is not None and max_degree < socle + 1:
        raise ResourceBoundError(
            f"Для проверки изолированности нужна степень {socle + 1}, предел {max_degree}"
        )
    partials = [f.partial(i) for i in range(nvars)]
    reducer = JacobianReducer(partials, e, max_degree)

    # сравнение с рядом полной пересечения до степени цоколь + 1
    expected = expected_hilbert(e, nvars)
    for degree in range(0, max(socle + 1, 0) + 1):
        actual = reducer.dimension(degree)
        wanted = expected[degree] if degree < len(expected) else 0
        if actual != wanted:
            logger.warning("⚠️ Функция Гильберта расходится в степени %d: %d ≠ %d", degree, actual, wanted)
            raise InputError(
                f"Особенность не изолирована: dim[Q/J]_{degree} = {actual}, "
                f"ожидалось {wanted} (граница цоколя {socle})"
            )
    logger.info("✅ Гиперповерхность %s, n=%d, e=%d: особенность изолирована", f.to_text(), n, e)
    return HypersurfaceData(f=f, n=n, nvars=nvars, e=e, partials=partials, reducer=reducer)


class MilnorAlgebra:
    """Q/(∂f/∂x_0, …, ∂f/∂x_{n+1}) с базисами и редукцией по степеням; [Ω_f]_k = [Q/J]_{k−(n+2)}"""

    def __init__(self, hypersurface: HypersurfaceData):
        self.hypersurface = hypersurface
        self._reducer = hypersurface.reducer

    @classmethod
    def from_text(cls, text: str, n: int, max_degree: Optional[int] = None) -> "MilnorAlgebra":
        return cls(hypersurface_init(poly_parse(text, n + 2), n, max_degree))

    # ========== Данные гиперповерхности ==========

    @property
    def f(self) -> GradedPolynomial:
        return self.hypersurface.f

    @property
    def n(self) -> int:
        return self.hypersurface.n

    @property
    def nvars(self) -> int:
        return self.hypersurface.nvars

    @property
    def e(self) -> int:
        return self.hypersurface.e

    @property
    def socle_degree(self) -> int:
        return self.hypersurface.socle_degree

    # ========== Базисы и редукция ==========

    def milnor_basis(self, degree: int) -> List[Monomial]:
        if degree < 0 or degree > self.socle_degree:
            return []
        return list(self._reducer.degree_data(degree).basis)

    def dimension(self, degree: int) -> int:
        if degree < 0 or degree > self.socle_degree:
            return 0
        return self._reducer.dimension(degree)

    def milnor_reduce(self, p: GradedPolynomial, degree: Optional[int] = None) -> Tuple[CycloNumber, ...]:
        """Координаты p mod J в базисе milnor_basis(d)"""
        if p.nvars != self.nvars:
            raise InputError(f"Многочлен над {p.nvars} переменными, алгебра над {self.nvars}")
        if p.is_zero():
            if degree is None:
                return ()
            return tuple(CycloNumber.rational(0) for _ in self.milnor_basis(degree))
        actual = p.homogeneous_degree()
        if degree is not None and degree != actual:
            raise InputError(f"Ожидалась степень {degree}, у многочлена {actual}")
        if actual > self.socle_degree:
            return ()
        return self._reducer.reduce(p, actual)

    def hilbert_function(self) -> List[int]:
        return [self.dimension(d) for d in range(0, self.socle_degree + 1)]

    def total_dimension(self) -> int:
        return sum(self.hilbert_function())

    def omega_f_dimension(self, internal_degree: int) -> int:
        """dim[Ω_f]_k = dim[Q/J]_{k−(n+2)}"""
        return self.dimension(internal_degree - self.nvars)

    def __repr__(self) -> str:
        return f"MilnorAlgebra(f={self.f.to_text()}, n={self.n})"


def milnor_basis(M: MilnorAlgebra, degree: int) -> List[Monomial]:
    return M.milnor_basis(degree)


def milnor_reduce(M: MilnorAlgebra, p: GradedPolynomial) -> Tuple[CycloNumber, ...]:
    return M.milnor_reduce(p)


def hilbert_function(M: MilnorAlgebra) -> List[int]:
    return M.hilbert_function()


class MilnorService:
    """Реестр алгебр Милнора процесса (синглтон)"""

    _instance = None
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(MilnorService, cls).__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            self._algebras: Dict[Tuple[str, int, Optional[int]], MilnorAlgebra] = {}
            self._lock = threading.Lock()
            self._initialized = True

    def get_algebra(
            self,
            f: Union[str, GradedPolynomial],
            n: int,
            max_degree: Optional[int] = None
    ) -> MilnorAlgebra:
        """Алгебра Милнора для (f, n); повторные запросы переиспользуют кэш"""
        poly = poly_parse(f, n + 2) if isinstance(f, str) else f
        key = (poly.to_text(), n, max_degree)
        with self._lock:
            algebra = self._algebras.get(key)
            if algebra is None:
                logger.info("🚀 Построение алгебры Милнора для %s (n=%d)", key[0], n)
                algebra = MilnorAlgebra(hypersurface_init(poly, n, max_degree))
                self._algebras[key] = algebra
            return algebra

    def describe(self, M: MilnorAlgebra) -> Dict[str, object]:
        """Сводка для вывода: {e, socle_degree, hilbert, total, isolated}"""
        hilbert = M.hilbert_function()
        return {
            "e": M.e,
            "socle_degree": M.socle_degree,
            "hilbert": hilbert,
            "total": sum(hilbert),
            "isolated": True,
        }

    def clear(self) -> None:
        with self._lock:
            self._algebras.clear()
