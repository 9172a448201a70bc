# services/hodge_service.py
"""Размерности HP₀, HN и nc-фильтрации Ходжа; циклы ψ, отображение φ,
граница девиссажа и проверка цикла для искривлённого дифференциала.

Все размерности считаются комбинаторно по данным Гильберта алгебры Милнора:
gr^p F_nc ≅ [Ω_f]_{(n/2+1−p)e}, а точная последовательность
0 → HN_{2m+2} → HN_{2m} → [Ω_f]_{(n/2+1−m)e} → 0 даёт HN по убывающей индукции.

Соглашение для dt: dt хранится правым множителем, dt∧dt = 0,
dt антикоммутирует с dx_i.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Set, Tuple, Union

from algebra.errors import InputError
from algebra.exactfield import CycloNumber, Scalar
from algebra.polyforms import DiffForm, GradedPolynomial
from services.milnor_service import MilnorAlgebra

logger = logging.getLogger(__name__)

TermKey = Tuple[int, int, bool]


# ========== Размерности ==========

@dataclass
class FiltrationProfile:
    hp0_dim: int
    graded: Dict[int, int] = field(default_factory=dict)
    hn: Dict[int, int] = field(default_factory=dict)
    classical: Dict[Tuple[int, int], int] = field(default_factory=dict)


def pole_orders(M: MilnorAlgebra) -> List[int]:
    """Все j ≥ 1 с непустым куском [Ω^{n+2}]_{je} по модулю df (je − (n+2) ∈ [0, цоколь])"""
    result = []
    j = 1
    while j * M.e - M.nvars <= M.socle_degree:
        if j * M.e - M.nvars >= 0:
            result.append(j)
        j += 1
    return result


def hp0_dim(M: MilnorAlgebra) -> int:
    """dim HP₀ = Σ_j dim[Q/J]_{je−(n+2)}"""
    return sum(M.dimension(j * M.e - M.nvars) for j in pole_orders(M))


def nc_filtration(M: MilnorAlgebra) -> Dict[int, int]:
    """p ↦ dim gr^p F_nc = dim[Q/J]_{(n/2+1−p)e−(n+2)} (только ненулевые)"""
    graded = {}
    half = M.n // 2
    for j in pole_orders(M):
        dim = M.dimension(j * M.e - M.nvars)
        if dim:
            graded[half + 1 - j] = dim
    return graded


def classical_hodge_numbers(M: MilnorAlgebra) -> Dict[Tuple[int, int], int]:
    """h^{a, n−a}_prim = gr^{a−n/2} (сдвиг Тейта на n/2)"""
    graded = nc_filtration(M)
    return {(a, M.n - a): graded.get(a - M.n // 2, 0) for a in range(M.n, -1, -1)}


def _filtration_range(M: MilnorAlgebra) -> Tuple[int, int]:
    orders = pole_orders(M)
    half = M.n // 2
    if not orders:
        return 0, 0
    return half + 1 - orders[-1] - 1, half + 1 - orders[0] + 1


def hn_dim(M: MilnorAlgebra, m: int) -> int:
    """dim HN_{2m} = Σ_{m′ ≥ m} gr^{m′}"""
    return sum(dim for p, dim in nc_filtration(M).items() if p >= m)


def hn_dims(M: MilnorAlgebra) -> Dict[int, int]:
    """m ↦ dim HN_{2m} на отрезке от стабилизации до нуля"""
    low, high = _filtration_range(M)
    graded = nc_filtration(M)
    result = {}
    running = 0
    # убывающая индукция от границы, где HN обращается в ноль
    for m in range(high, low - 1, -1):
        running += graded.get(m, 0)
        result[m] = running
    return dict(sorted(result.items()))


def polar_filtration_dims(M: MilnorAlgebra) -> Dict[int, int]:
    """s ↦ число базисных классов с порядком полюса ≤ n/2+1−s"""
    low, high = _filtration_range(M)
    half = M.n // 2
    counts = {}
    for s in range(low, high + 1):
        counts[s] = sum(
            M.dimension(j * M.e - M.nvars) for j in pole_orders(M) if j <= half + 1 - s
        )
    return counts


# ========== Смешанные элементы Ω^•_Q[t, t⁻¹][u] ==========

class MixedElement:
    """Конечная сумма ω·t^a·u^b (·dt): словарь (a, b, dt) → форма"""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[TermKey, DiffForm]] = None):
        self.nvars = nvars
        self.terms: Dict[TermKey, DiffForm] = {}
        for (a, b, dt), form in (terms or {}).items():
            if b < 0:
                raise InputError(f"Отрицательная степень u: {b}")
            if form.nvars != nvars:
                raise InputError(f"Форма над {form.nvars} переменными, нужно {nvars}")
            if not form.is_zero():
                self.terms[(a, b, bool(dt))] = form

    @classmethod
    def zero(cls, nvars: int) -> "MixedElement":
        return cls(nvars)

    @classmethod
    def single(cls, form: DiffForm, t: int = 0, u: int = 0, dt: bool = False) -> "MixedElement":
        return cls(form.nvars, {(t, u, dt): form})

    def is_zero(self) -> bool:
        return not self.terms

    def _merge(self, terms: Dict[TermKey, DiffForm], key: TermKey, form: DiffForm) -> None:
        terms[key] = terms[key] + form if key in terms else form

    def __add__(self, other: "MixedElement") -> "MixedElement":
        terms = dict(self.terms)
        for key, form in other.terms.items():
            self._merge(terms, key, form)
        return MixedElement(self.nvars, terms)

    def __neg__(self) -> "MixedElement":
        return MixedElement(self.nvars, {k: -f for k, f in self.terms.items()})

    def __sub__(self, other: "MixedElement") -> "MixedElement":
        return self + (-other)

    def scale(self, value: Union[GradedPolynomial, Scalar]) -> "MixedElement":
        return MixedElement(self.nvars, {k: f.scale(value) for k, f in self.terms.items()})

    def multiply_u(self, power: int = 1) -> "MixedElement":
        return MixedElement(self.nvars, {(a, b + power, dt): f for (a, b, dt), f in self.terms.items()})

    def multiply_t(self, power: int = 1) -> "MixedElement":
        return MixedElement(self.nvars, {(a + power, b, dt): f for (a, b, dt), f in self.terms.items()})

    def d(self) -> "MixedElement":
        """Полный дифференциал по x и t: d(ω t^a) = dω t^a + (−1)^{|ω|} a t^{a−1} ω dt"""
        terms: Dict[TermKey, DiffForm] = {}
        for (a, b, dt), form in self.terms.items():
            self._merge(terms, (a, b, dt), form.d())
            if not dt and a != 0:
                self._merge(terms, (a - 1, b, True), form.parity_twist().scale(a))
        return MixedElement(self.nvars, terms)

    def wedge_left(self, eta: DiffForm) -> "MixedElement":
        """η∧x для формы η от x (dt остаётся справа)"""
        return MixedElement(self.nvars, {k: eta.wedge(f) for k, f in self.terms.items()})

    def wedge_left_dt(self, g: GradedPolynomial) -> "MixedElement":
        """(g·dt)∧x"""
        terms: Dict[TermKey, DiffForm] = {}
        for (a, b, dt), form in self.terms.items():
            if dt:
                continue
            self._merge(terms, (a, b, True), form.parity_twist().scale(g))
        return MixedElement(self.nvars, terms)

    def gamma_degrees(self, e: int) -> Set[int]:
        """Γ-степени членов: deg(ω) − e·(a + [dt])"""
        degrees = set()
        for (a, b, dt), form in self.terms.items():
            for subset, poly in form.components.items():
                degrees.add(len(subset) + poly.homogeneous_degree() - e * (a + int(dt)))
        return degrees

    def homological_degrees(self) -> Set[int]:
        """Гомологические степени: |ω| − 2a − 2b − [dt]"""
        degrees = set()
        for (a, b, dt), form in self.terms.items():
            for subset in form.components:
                degrees.add(len(subset) - 2 * a - 2 * b - int(dt))
        return degrees

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedElement):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def term_count(self) -> int:
        return sum(
            len(poly.terms) for form in self.terms.values() for poly in form.components.values()
        )

    def sorted_terms(self) -> List[Tuple[TermKey, DiffForm]]:
        return sorted(self.terms.items(), key=lambda item: (-item[0][0], item[0][1], item[0][2]))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, dt), form in self.sorted_terms():
            suffix = f"t^{a}" + ("*dt" if dt else "") + f"*u^{b}"
            parts.append(f"[{form.to_text()}]*{suffix}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MixedElement({self.to_text()})"

    __str__ = to_text


# ========== ψ, φ и граница ==========

def _top_form(M: MilnorAlgebra, q: GradedPolynomial, j: int) -> DiffForm:
    """q·vol после проверки согласованности j и deg q (нулевой q проверяется так же)"""
    if j < 1:
        raise InputError(f"Порядок полюса должен быть положительным: {j}")
    if q.nvars != M.nvars:
        raise InputError(f"q над {q.nvars} переменными, алгебра над {M.nvars}")
    wanted = j * M.e - M.nvars
    if wanted < 0:
        raise InputError(f"Для j={j} степень je−(n+2) = {wanted} отрицательна")
    if q.is_zero():
        return DiffForm.zero(M.nvars)
    actual = q.homogeneous_degree()
    if actual != wanted:
        raise InputError(f"deg q = {actual}, а для j={j} нужна степень je−(n+2) = {wanted}")
    return DiffForm.volume(M.nvars, q)


def _u_power(M: MilnorAlgebra, j: int, m: int) -> int:
    power = M.nvars // 2 - m - j
    if power < 0:
        raise InputError(f"Отрицательная степень u: (n+2)/2 − m − j = {power}")
    return power


def psi(M: MilnorAlgebra, q: GradedPolynomial, j: int, m: int) -> MixedElement:
    """ψ_{m,j}(q·vol) = ((−1)^j/j!)·d(ε_Q(ω) t^j)·u^{(n+2)/2−m−j}"""
    omega = _top_form(M, q, j)
    power = _u_power(M, j, m)
    if omega.is_zero():
        return MixedElement.zero(M.nvars)
    inner = MixedElement.single(omega.euler_contract(), t=j).d()
    coeff = Fraction((-1) ** j, factorial(j))
    return inner.scale(coeff).multiply_u(power)


def psi_equiv(M: MilnorAlgebra, q: GradedPolynomial, j: int, m: int) -> MixedElement:
    """((−1)^j e/(j−1)!)·(ω t^j − (ε_Q(ω)/e) t^{j−1} dt)·u^{…}"""
    omega = _top_form(M, q, j)
    power = _u_power(M, j, m)
    if omega.is_zero():
        return MixedElement.zero(M.nvars)
    coeff = Fraction((-1) ** j * M.e, factorial(j - 1))
    body = MixedElement.single(omega, t=j) - MixedElement.single(
        omega.euler_contract().scale(Fraction(1, M.e)), t=j - 1, dt=True
    )
    return body.scale(coeff).multiply_u(power)


@dataclass
class PhiClass:
    """ε_Q(ω)/f^j: числитель и порядок полюса"""
    numerator: DiffForm
    pole_order: int
    source: Optional[GradedPolynomial] = None


def phi(M: MilnorAlgebra, q: GradedPolynomial, j: int) -> PhiClass:
    omega = _top_form(M, q, j)
    return PhiClass(numerator=omega.euler_contract(), pole_order=j, source=q)


def phi_basis(M: MilnorAlgebra) -> List[PhiClass]:
    """φ на стандартных мономах каждого куска [Ω_f]_{je}"""
    classes = []
    for j in pole_orders(M):
        for exps in M.milnor_basis(j * M.e - M.nvars):
            classes.append(phi(M, GradedPolynomial.monomial(exps), j))
    return classes


def devissage_precondition(M: MilnorAlgebra, alpha: DiffForm, s: int) -> bool:
    """f·dα = s·df∧α"""
    df = DiffForm.function(M.f).d()
    return alpha.d().scale(M.f) == df.wedge(alpha).scale(s)


def boundary_devissage(M: MilnorAlgebra, alpha: DiffForm, s: int, p: int) -> MixedElement:
    """∂(α/f^s · u^{(p−1)/2}) = ((−1)^s/s!)·d(α t^s)·u^{(p+1)/2−s}"""
    if s < 1:
        raise InputError(f"s должно быть положительным: {s}")
    if p % 2 == 0:
        raise InputError(f"Степень формы p должна быть нечётной: {p}")
    if alpha.is_zero():
        return MixedElement.zero(M.nvars)
    if alpha.form_degree() != p:
        raise InputError(f"Форма α имеет степень {alpha.form_degree()}, ожидалось {p}")
    alpha.internal_degree()
    power = (p + 1) // 2 - s
    if power < 0:
        raise InputError(f"Отрицательная степень u: (p+1)/2 − s = {power}")
    if not devissage_precondition(M, alpha, s):
        raise InputError("Не выполнено условие f·dα = s·df∧α")
    inner = MixedElement.single(alpha, t=s).d()
    return inner.scale(Fraction((-1) ** s, factorial(s))).multiply_u(power)


def curved_differential(x: MixedElement, M: MilnorAlgebra) -> MixedElement:
    """(u·d + λ_{t·df} + λ_{f·dt}) x"""
    df = DiffForm.function(M.f).d()
    return x.d().multiply_u(1) + x.wedge_left(df).multiply_t(1) + x.wedge_left_dt(M.f)


def cycle_check(x: MixedElement, M: MilnorAlgebra) -> bool:
    return curved_differential(x, M).is_zero()


# ========== Сервис ==========

class HodgeService:
    """Сводки по фильтрациям для CLI и HTTP"""

    def profile(self, M: MilnorAlgebra) -> FiltrationProfile:
        profile = FiltrationProfile(
            hp0_dim=hp0_dim(M),
            graded=nc_filtration(M),
            hn=hn_dims(M),
            classical=classical_hodge_numbers(M),
        )
        logger.info("✅ Профиль Ходжа: HP₀ = %d, gr = %s", profile.hp0_dim, profile.graded)
        return profile

    def describe(self, M: MilnorAlgebra) -> Dict[str, object]:
        profile = self.profile(M)
        return {
            "hp0_dim": profile.hp0_dim,
            "nc_filtration": {str(p): d for p, d in sorted(profile.graded.items())},
            "classical": {f"h{p},{q}": d for (p, q), d in profile.classical.items()},
            "hn": {str(m): d for m, d in profile.hn.items()},
        }

    def psi_report(self, M: MilnorAlgebra, q: GradedPolynomial, j: int, m: int,
                   check: bool = False) -> Dict[str, object]:
        element = psi(M, q, j, m)
        report: Dict[str, object] = {
            "element": element.to_text(),
            "terms": element.term_count(),
            "homological_degree": sorted(element.homological_degrees()),
            "gamma_degree": sorted(element.gamma_degrees(M.e)),
        }
        if check:
            report["cycle"] = cycle_check(element, M)
        return report
