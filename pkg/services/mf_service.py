# services/mf_service.py
"""Матричные факторизации (A, B) с AB = BA = f·id, тензорные произведения
и характер Черна ch(A, B) = (2/(n+2)!)·tr((dA dB)^{(n+2)/2}) в алгебре Милнора.

Элементы dA∧dB являются 2-формами и центральны в чётной подалгебре, поэтому степени
матрицы считаются обычным умножением матриц.
"""
import json
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError
from sympy import Matrix, Rational

from algebra.errors import FactorizationError, InputError
from algebra.exactfield import CycloNumber, common_order, to_rational_coords
from algebra.polyforms import DiffForm, GradedPolynomial, exact_quotient, monomial_text, poly_parse
from schemas import MatrixFactorizationInput
from services.milnor_service import MilnorAlgebra

logger = logging.getLogger(__name__)

PolyMatrix = List[List[GradedPolynomial]]
FormMatrix = List[List[DiffForm]]


# ========== Матрицы многочленов ==========

def identity(size: int, nvars: int, value=1) -> PolyMatrix:
    return [
        [GradedPolynomial.constant(nvars, value) if i == j else GradedPolynomial.zero(nvars)
         for j in range(size)]
        for i in range(size)
    ]


def mat_mul(X: PolyMatrix, Y: PolyMatrix, nvars: int) -> PolyMatrix:
    rows, inner = len(X), len(Y)
    cols = len(Y[0]) if Y else 0
    result = []
    for i in range(rows):
        row = []
        for j in range(cols):
            total = GradedPolynomial.zero(nvars)
            for k in range(inner):
                if X[i][k].is_zero() or Y[k][j].is_zero():
                    continue
                total = total + X[i][k] * Y[k][j]
            row.append(total)
        result.append(row)
    return result


def kron(X: PolyMatrix, Y: PolyMatrix, nvars: int) -> PolyMatrix:
    """Тензорное произведение матриц X⊠Y, индекс (i, k) → i·s + k"""
    r, s = len(X), len(Y)
    size = r * s
    result = [[GradedPolynomial.zero(nvars) for _ in range(size)] for _ in range(size)]
    for i in range(r):
        for j in range(r):
            if X[i][j].is_zero():
                continue
            for k in range(s):
                for l in range(s):
                    if not Y[k][l].is_zero():
                        result[i * s + k][j * s + l] = X[i][j] * Y[k][l]
    return result


def blocks(tl: PolyMatrix, tr: PolyMatrix, bl: PolyMatrix, br: PolyMatrix) -> PolyMatrix:
    top = [a + b for a, b in zip(tl, tr)]
    bottom = [a + b for a, b in zip(bl, br)]
    return top + bottom


def negate(X: PolyMatrix) -> PolyMatrix:
    return [[-entry for entry in row] for row in X]


# ========== Факторизации ==========

class MatrixFactorization:
    """Проверенная пара (A, B) над f; weights: сертификат однородности"""

    def __init__(self, f: GradedPolynomial, A: PolyMatrix, B: PolyMatrix,
                 weights: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None):
        self.f = f
        self.A = A
        self.B = B
        self.weights = weights

    @property
    def rank(self) -> int:
        return len(self.A)

    @property
    def nvars(self) -> int:
        return self.f.nvars

    def support(self) -> Tuple[int, ...]:
        used = set(self.f.support())
        for matrix in (self.A, self.B):
            for row in matrix:
                for entry in row:
                    used.update(entry.support())
        return tuple(sorted(used))

    def shift(self) -> "MatrixFactorization":
        """Сдвиг [1]: (B, A)"""
        return mf_validate(self.B, self.A, self.f)

    def embed(self, nvars: int, placement: Sequence[int]) -> "MatrixFactorization":
        """Переименование переменных x_i → x_{placement[i]}"""
        move = lambda p: p.substitute(nvars, placement)
        return mf_validate(
            [[move(x) for x in row] for row in self.A],
            [[move(x) for x in row] for row in self.B],
            move(self.f),
        )

    def to_payload(self) -> Dict[str, object]:
        return {
            "f": self.f.to_text(),
            "nvars": self.nvars,
            "A": [[x.to_text() for x in row] for row in self.A],
            "B": [[x.to_text() for x in row] for row in self.B],
        }

    def __repr__(self) -> str:
        return f"MatrixFactorization(rank={self.rank}, f={self.f.to_text()})"


def _homogeneity_certificate(A: PolyMatrix, B: PolyMatrix, e: int):
    """Веса a_i, b_j с deg A_ij = a_i + b_j и deg B_ji = e − a_i − b_j (или None)"""
    size = len(A)
    edges: Dict[Tuple[str, int], List[Tuple[Tuple[str, int], int]]] = {}
    for i in range(size):
        for j in range(size):
            for entry, total in ((A[i][j], None), (B[j][i], e)):
                if entry.is_zero():
                    continue
                if not entry.is_homogeneous():
                    return None
                degree = entry.homogeneous_degree()
                weight = degree if total is None else total - degree
                edges.setdefault(("a", i), []).append((("b", j), weight))
                edges.setdefault(("b", j), []).append((("a", i), weight))
    values: Dict[Tuple[str, int], int] = {}
    for start in [("a", i) for i in range(size)] + [("b", j) for j in range(size)]:
        if start in values:
            continue
        values[start] = 0
        stack = [start]
        while stack:
            node = stack.pop()
            for other, weight in edges.get(node, []):
                wanted = weight - values[node]
                if other not in values:
                    values[other] = wanted
                    stack.append(other)
                elif values[other] != wanted:
                    return None
    return (
        tuple(values[("a", i)] for i in range(size)),
        tuple(values[("b", j)] for j in range(size)),
    )


def mf_validate(A: PolyMatrix, B: PolyMatrix, f: GradedPolynomial) -> MatrixFactorization:
    """Проверка AB = BA = f·id; первая ошибочная позиция попадает в сообщение"""
    size = len(A)
    for name, matrix in (("A", A), ("B", B)):
        if len(matrix) != size or any(len(row) != size for row in matrix):
            raise FactorizationError(f"Матрица {name} не квадратная размера {size}")
        for row in matrix:
            for entry in row:
                if entry.nvars != f.nvars:
                    raise FactorizationError(
                        f"Элемент {name} над {entry.nvars} переменными, f над {f.nvars}"
                    )
    target = identity(size, f.nvars)
    for name, product in (("AB", mat_mul(A, B, f.nvars)), ("BA", mat_mul(B, A, f.nvars))):
        for i in range(size):
            for j in range(size):
                wanted = f if i == j else target[i][j]
                if product[i][j] != wanted:
                    raise FactorizationError(
                        f"{name} ≠ f·id (получено {product[i][j].to_text()})", (name, i, j)
                    )
    weights = None
    if not f.is_zero() and f.is_homogeneous():
        weights = _homogeneity_certificate(A, B, f.homogeneous_degree())
    return MatrixFactorization(f, A, B, weights)


def tensor_blocks(F: MatrixFactorization, G: MatrixFactorization) -> Tuple[PolyMatrix, PolyMatrix]:
    """A⊗ = [[A⊠I, I⊠A′], [−I⊠B′, B⊠I]], B⊗ = [[B⊠I, −I⊠A′], [I⊠B′, A⊠I]]"""
    nvars = F.nvars
    Ir, Is = identity(F.rank, nvars), identity(G.rank, nvars)
    A_I, B_I = kron(F.A, Is, nvars), kron(F.B, Is, nvars)
    I_A, I_B = kron(Ir, G.A, nvars), kron(Ir, G.B, nvars)
    A = blocks(A_I, I_A, negate(I_B), B_I)
    B = blocks(B_I, negate(I_A), I_B, A_I)
    return A, B


def mf_tensor(F: MatrixFactorization, G: MatrixFactorization) -> MatrixFactorization:
    """F ⊗ G ∈ mf(f + g) для факторизаций с непересекающимися переменными"""
    if F.nvars != G.nvars:
        raise InputError(
            f"Факторизации над разным числом переменных ({F.nvars} и {G.nvars}); переименуйте через embed"
        )
    overlap = set(F.support()) & set(G.support())
    if overlap:
        raise InputError(f"Переменные пересекаются: {sorted(overlap)}")
    A, B = tensor_blocks(F, G)
    return mf_validate(A, B, F.f + G.f)


def direct_sum(F: MatrixFactorization, G: MatrixFactorization) -> MatrixFactorization:
    """Блочно-диагональная сумма F ⊕ G"""
    if F.f != G.f:
        raise InputError("Прямая сумма факторизаций разных многочленов")
    nvars = F.nvars
    zero = lambda r, c: [[GradedPolynomial.zero(nvars) for _ in range(c)] for _ in range(r)]
    A = blocks(F.A, zero(F.rank, G.rank), zero(G.rank, F.rank), G.A)
    B = blocks(F.B, zero(F.rank, G.rank), zero(G.rank, F.rank), G.B)
    return mf_validate(A, B, F.f)


# ========== Характер Черна ==========

@dataclass
class ChernClass:
    algebra: MilnorAlgebra
    raw: GradedPolynomial
    reduced: Tuple[CycloNumber, ...]
    degree: int

    def reduced_map(self) -> Dict[str, str]:
        """Ненулевые координаты: моном → круговой литерал"""
        basis = self.algebra.milnor_basis(self.degree)
        return {
            monomial_text(m): c.to_literal()
            for m, c in zip(basis, self.reduced) if not c.is_zero()
        }


def _d_matrix(X: PolyMatrix) -> FormMatrix:
    return [[DiffForm.function(entry).d() for entry in row] for row in X]


def _form_mul(X: FormMatrix, Y: FormMatrix, nvars: int) -> FormMatrix:
    size = len(X)
    result = []
    for i in range(size):
        row = []
        for j in range(size):
            total = DiffForm.zero(nvars)
            for k in range(size):
                if X[i][k].is_zero() or Y[k][j].is_zero():
                    continue
                total = total + X[i][k].wedge(Y[k][j])
            row.append(total)
        result.append(row)
    return result


def chern_form(F: MatrixFactorization) -> GradedPolynomial:
    """(2/(n+2)!)·коэффициент при dx0⋯dx_{n+1} в tr((dA∧dB)^{(n+2)/2})"""
    nvars = F.nvars
    if nvars % 2:
        raise InputError(f"Число переменных n+2 = {nvars} должно быть чётным")
    if F.rank == 0:
        return GradedPolynomial.zero(nvars)
    product = _form_mul(_d_matrix(F.A), _d_matrix(F.B), nvars)
    power = product
    for _ in range(nvars // 2 - 1):
        power = _form_mul(power, product, nvars)
    trace = DiffForm.zero(nvars)
    for i in range(F.rank):
        trace = trace + power[i][i]
    return trace.top_coefficient().scale(Fraction(2, factorial(nvars)))


def chern_degree(M: MilnorAlgebra) -> int:
    """Степень (n+2)(e−2)/2, т.е. класс лежит в [Ω_f]_{((n+2)/2)e}"""
    return M.nvars * (M.e - 2) // 2


def chern(F: MatrixFactorization, M: MilnorAlgebra) -> ChernClass:
    if F.nvars != M.nvars or F.f != M.f:
        raise InputError(f"Факторизация над {F.f.to_text()}, алгебра над {M.f.to_text()}")
    raw = chern_form(F)
    degree = chern_degree(M)
    reduced = M.milnor_reduce(raw, degree)
    return ChernClass(algebra=M, raw=raw, reduced=reduced, degree=degree)


def placement_sign(placement: Sequence[int]) -> int:
    """Знак перестановки, сортирующей dx_{placement} по возрастанию"""
    inversions = sum(1 for a, b in combinations(placement, 2) if a > b)
    return -1 if inversions % 2 else 1


def chern_product(c: ChernClass, c_other: ChernClass, M: MilnorAlgebra,
                  placement: Optional[Tuple[Sequence[int], Sequence[int]]] = None) -> ChernClass:
    """ch(F)·ch(F′) в кольце от объединения переменных"""
    k, k_other = c.raw.nvars, c_other.raw.nvars
    if placement is None:
        placement = (tuple(range(k)), tuple(range(k, k + k_other)))
    first, second = tuple(placement[0]), tuple(placement[1])
    if len(first) != k or len(second) != k_other or set(first) & set(second):
        raise InputError(f"Пересечение или несоответствие переменных: {first}, {second}")
    if k + k_other != M.nvars:
        raise InputError(f"Алгебра над {M.nvars} переменными, классы над {k} + {k_other}")
    f_total = c.algebra.f.substitute(M.nvars, first) + c_other.algebra.f.substitute(M.nvars, second)
    if f_total != M.f:
        raise InputError(f"f + g = {f_total.to_text()} не совпадает с {M.f.to_text()}")
    raw = c.raw.substitute(M.nvars, first) * c_other.raw.substitute(M.nvars, second)
    raw = raw.scale(placement_sign(first + second))
    degree = chern_degree(M)
    return ChernClass(algebra=M, raw=raw, reduced=M.milnor_reduce(raw, degree), degree=degree)


def q_rank(classes: Sequence[ChernClass]) -> int:
    """Ранг над ℚ после разложения круговых координат в рациональные"""
    if not classes:
        return 0
    algebra = classes[0].algebra
    for c in classes[1:]:
        if c.algebra is not algebra and (c.algebra.f != algebra.f or c.algebra.n != algebra.n):
            raise InputError("Классы над разными гиперповерхностями")
    order = common_order(x for c in classes for x in c.reduced)
    rows = []
    for c in classes:
        row = []
        for coord in c.reduced:
            row.extend(Rational(v.numerator, v.denominator) for v in to_rational_coords(coord, order))
        rows.append(row)
    if not rows[0]:
        return 0
    return Matrix(rows).rank()


# ========== Построители ==========

def _linear(nvars: int, coeffs: Dict[int, object]) -> GradedPolynomial:
    total = GradedPolynomial.zero(nvars)
    for index, value in coeffs.items():
        total = total + GradedPolynomial.variable(nvars, index).scale(value)
    return total


def knorrer_pair(nvars: int = 2, x: int = 0, y: int = 1) -> MatrixFactorization:
    """(x + iy, x − iy) над x² + y²"""
    i = CycloNumber.root(4)
    a = _linear(nvars, {x: 1, y: i})
    b = _linear(nvars, {x: 1, y: -i})
    X, Y = GradedPolynomial.variable(nvars, x), GradedPolynomial.variable(nvars, y)
    return mf_validate([[a]], [[b]], X ** 2 + Y ** 2)


def _cubic_factors(nvars: int, x: int, y: int) -> List[GradedPolynomial]:
    return [_linear(nvars, {x: 1, y: CycloNumber.root(3, k)}) for k in range(3)]


def cubic_e1(nvars: int = 2, x: int = 0, y: int = 1) -> MatrixFactorization:
    """E₁ = (x + y, (x + ζ₃y)(x + ζ₃²y)) над x³ + y³"""
    l0, l1, l2 = _cubic_factors(nvars, x, y)
    X, Y = GradedPolynomial.variable(nvars, x), GradedPolynomial.variable(nvars, y)
    return mf_validate([[l0]], [[l1 * l2]], X ** 3 + Y ** 3)


def cubic_e2(nvars: int = 2, x: int = 0, y: int = 1) -> MatrixFactorization:
    """E₂ = (x + ζ₃y, (x + y)(x + ζ₃²y)) над x³ + y³"""
    l0, l1, l2 = _cubic_factors(nvars, x, y)
    X, Y = GradedPolynomial.variable(nvars, x), GradedPolynomial.variable(nvars, y)
    return mf_validate([[l1]], [[l0 * l2]], X ** 3 + Y ** 3)


def linear_factor_pair(ell: GradedPolynomial, f: GradedPolynomial) -> MatrixFactorization:
    """(ℓ, f/ℓ) для линейного множителя ℓ"""
    if ell.is_zero() or ell.homogeneous_degree() != 1:
        raise InputError(f"Ожидалась линейная форма, получено {ell.to_text()}")
    return mf_validate([[ell]], [[exact_quotient(f, ell)]], f)


def knorrer_power(copies: int) -> MatrixFactorization:
    """K(x0,x1) ⊗ K(x2,x3) ⊗ … над Σ x_i², 2·copies переменных"""
    nvars = 2 * copies
    result = knorrer_pair(nvars, 0, 1)
    for c in range(1, copies):
        result = mf_tensor(result, knorrer_pair(nvars, 2 * c, 2 * c + 1))
    return result


@dataclass
class NamedFactorization:
    label: str
    factorization: MatrixFactorization
    sign: int
    expected: str


# Классы (коэффициенты при ω) записаны как произведения классов сомножителей
# относительно объёма dx_{первый}∧dx_{второй}; sign переводит к dx0dx1dx2dx3.
CUBIC_SURFACE_SIX = (
    ("E1(x0,x1)*E1(x2,x3)", cubic_e1, (0, 1), cubic_e1, (2, 3), "9*(x1-x0)*(x3-x2)"),
    ("E2(x0,x1)*E1(x2,x3)", cubic_e2, (0, 1), cubic_e1, (2, 3), "9*zeta3*(zeta3*x1-x0)*(x3-x2)"),
    ("E1(x0,x1)*E2(x2,x3)", cubic_e1, (0, 1), cubic_e2, (2, 3), "9*zeta3*(x1-x0)*(zeta3*x3-x2)"),
    ("E2(x0,x1)*E2(x2,x3)", cubic_e2, (0, 1), cubic_e2, (2, 3),
     "9*zeta3^2*(zeta3*x1-x0)*(zeta3*x3-x2)"),
    ("E1(x0,x2)*E1(x1,x3)", cubic_e1, (0, 2), cubic_e1, (1, 3), "9*(x2-x0)*(x3-x1)"),
    ("E1(x0,x2)*E2(x1,x3)", cubic_e1, (0, 2), cubic_e2, (1, 3), "9*zeta3*(x2-x0)*(zeta3*x3-x1)"),
)


def cubic_surface_six() -> List[NamedFactorization]:
    """Шесть факторизаций x0³+x1³+x2³+x3³, чьи классы Черна образуют базис"""
    result = []
    for label, left, p1, right, p2, expected in CUBIC_SURFACE_SIX:
        F = left(4, *p1)
        G = right(4, *p2)
        result.append(NamedFactorization(
            label=label,
            factorization=mf_tensor(F, G),
            sign=placement_sign(p1 + p2),
            expected=expected,
        ))
    return result


# ========== JSON ==========

_VAR = re.compile(r"x(\d+)")


def infer_nvars(texts: Sequence[str]) -> int:
    indices = [int(m) for text in texts for m in _VAR.findall(text)]
    return max(indices) + 1 if indices else 1


def mf_from_payload(payload: MatrixFactorizationInput, nvars: Optional[int] = None) -> MatrixFactorization:
    texts = [payload.f] + [x for row in payload.A + payload.B for x in row]
    nvars = nvars or payload.nvars or infer_nvars(texts)
    parse = lambda text: poly_parse(text, nvars)
    return mf_validate(
        [[parse(x) for x in row] for row in payload.A],
        [[parse(x) for x in row] for row in payload.B],
        parse(payload.f),
    )


def load_mf(path: Union[str, Path], nvars: Optional[int] = None) -> MatrixFactorization:
    """Чтение факторизации из JSON {"f", "A", "B"}"""
    try:
        payload = MatrixFactorizationInput.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"Не удалось прочитать {path}: {e}")
    except ValidationError as e:
        raise InputError(f"Некорректный JSON факторизации в {path}: {e}")
    return mf_from_payload(payload, nvars)


def dump_mf(F: MatrixFactorization, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(F.to_payload(), sort_keys=True, indent=2) + "\n", encoding="utf-8")


def shift(F: MatrixFactorization) -> MatrixFactorization:
    return F.shift()


# ========== Сервис ==========

class MatrixFactorizationService:
    """Операции над факторизациями для CLI и HTTP"""

    def __init__(self, tensor: Callable[[MatrixFactorization, MatrixFactorization], MatrixFactorization] = mf_tensor):
        self.tensor = tensor

    def chern_report(self, F: MatrixFactorization, M: MilnorAlgebra) -> Dict[str, object]:
        c = chern(F, M)
        logger.info("✅ ch вычислен: %s", c.raw.to_text())
        return {"raw": c.raw.to_text(), "reduced": c.reduced_map()}

    def tensor_files(self, F: MatrixFactorization, G: MatrixFactorization) -> MatrixFactorization:
        """Тензор с переименованием переменных G в свежие индексы"""
        total = F.nvars + G.nvars
        left = F.embed(total, tuple(range(F.nvars)))
        right = G.embed(total, tuple(range(F.nvars, total)))
        return self.tensor(left, right)

    def qrank_report(self, factorizations: Sequence[MatrixFactorization], M: MilnorAlgebra) -> Dict[str, object]:
        classes = [chern(F, M) for F in factorizations]
        return {"rank": q_rank(classes), "count": len(classes)}
