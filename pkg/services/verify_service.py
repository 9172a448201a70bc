# services/verify_service.py
"""Набор контрольных вычислений: кубическая поверхность, квадрики, K3,
множества Сиоды, сетка инвариантов Милнора, свойства ψ и мультипликативность ch.

Отказ проверки входит в отчёт и не поднимается наружу: исключение внутри
проверки записывается как провал с текстом ошибки.
"""
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from algebra.exactfield import CycloNumber
from algebra.polyforms import DiffForm, GradedPolynomial, monomials_of_degree, poly_parse
from schemas import VerifyScope
from services.fermat_service import b_set, fermat_polynomial, hdg_dim_fermat
from services.hodge_service import (
    boundary_devissage, classical_hodge_numbers, cycle_check, hn_dims, hp0_dim,
    nc_filtration, pole_orders, polar_filtration_dims, psi, psi_equiv,
)
from services.mf_service import (
    MatrixFactorization, chern, chern_form, chern_product, cubic_e1, cubic_e2,
    cubic_surface_six, direct_sum, knorrer_pair, knorrer_power, linear_factor_pair,
    mf_tensor, q_rank,
)
from services.milnor_service import MilnorAlgebra, MilnorService
from settings import Settings, get_settings

logger = logging.getLogger(__name__)

Tensor = Callable[[MatrixFactorization, MatrixFactorization], MatrixFactorization]
Check = Callable[[], Tuple[str, str]]

GRID_DEGREES = (2, 3, 4, 5)
GRID_DIMENSIONS = (0, 2)


@dataclass
class CheckResult:
    identifier: str
    expected: str
    actual: str
    passed: bool


@dataclass
class RunReport:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, object]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [
                {"identifier": c.identifier, "expected": c.expected, "actual": c.actual, "passed": c.passed}
                for c in self.checks
            ],
        }


def _fmt(value) -> str:
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in sorted(value.items())) + "}"
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    if isinstance(value, GradedPolynomial):
        return value.to_text()
    if isinstance(value, CycloNumber):
        return value.to_literal()
    return str(value)


def _compare(expected: GradedPolynomial, actual: GradedPolynomial) -> Tuple[str, str]:
    """Сравнение по значению: печать зависит от порядка кругового поля коэффициентов"""
    if expected == actual:
        return expected.to_text(), expected.to_text()
    return expected.to_text(), actual.to_text()


def random_homogeneous(rng: random.Random, nvars: int, degree: int, terms: int = 3) -> GradedPolynomial:
    """Случайный однородный многочлен с малыми целыми коэффициентами (ненулевой)"""
    monomials = monomials_of_degree(nvars, degree)
    while True:
        poly = GradedPolynomial.zero(nvars)
        for exps in rng.sample(monomials, min(terms, len(monomials))):
            poly = poly + GradedPolynomial.monomial(exps, rng.randint(-3, 3))
        if not poly.is_zero():
            return poly


class VerificationSuite:
    """Сбор и выполнение проверок выбранной области"""

    def __init__(self, settings: Optional[Settings] = None, tensor: Tensor = mf_tensor):
        self.settings = settings or get_settings()
        self.tensor = tensor
        self.registry = MilnorService()

    def algebra(self, f: GradedPolynomial, n: int) -> MilnorAlgebra:
        return self.registry.get_algebra(f, n, self.settings.max_degree)

    def fermat(self, e: int, n: int) -> MilnorAlgebra:
        return self.algebra(fermat_polynomial(e, n + 2), n)

    # ========== Милнор ==========

    def milnor_checks(self) -> List[Tuple[str, Check]]:
        checks = [
            ("milnor.cubic_surface.hilbert",
             lambda: ("(1, 4, 6, 4, 1)", _fmt(self.fermat(3, 2).hilbert_function()))),
            ("milnor.quartic_k3.hilbert",
             lambda: ("(1, 4, 10, 16, 19, 16, 10, 4, 1)", _fmt(self.fermat(4, 2).hilbert_function()))),
        ]
        for e in GRID_DEGREES:
            for n in GRID_DIMENSIONS:
                checks.append((f"milnor.grid.e{e}.n{n}.total", self._grid_total(e, n)))
                checks.append((f"milnor.grid.e{e}.n{n}.palindromic", self._grid_palindrome(e, n)))
        return checks

    def _grid_total(self, e: int, n: int) -> Check:
        return lambda: (str((e - 1) ** (n + 2)), str(self.fermat(e, n).total_dimension()))

    def _grid_palindrome(self, e: int, n: int) -> Check:
        def check():
            hilbert = self.fermat(e, n).hilbert_function()
            return _fmt(list(reversed(hilbert))), _fmt(hilbert)
        return check

    # ========== Ходж ==========

    def hodge_checks(self) -> List[Tuple[str, Check]]:
        checks = [
            ("hodge.cubic_surface.hp0", lambda: ("6", str(hp0_dim(self.fermat(3, 2))))),
            ("hodge.cubic_surface.nc_filtration", lambda: ("{0: 6}", _fmt(nc_filtration(self.fermat(3, 2))))),
            ("hodge.cubic_surface.classical",
             lambda: ("{(0, 2): 0, (1, 1): 6, (2, 0): 0}", _fmt(classical_hodge_numbers(self.fermat(3, 2))))),
            ("hodge.quartic_k3.classical",
             lambda: ("{(0, 2): 1, (1, 1): 19, (2, 0): 1}", _fmt(classical_hodge_numbers(self.fermat(4, 2))))),
            ("hodge.quartic_k3.hp0", lambda: ("21", str(hp0_dim(self.fermat(4, 2))))),
            ("hodge.quartic_k3.hn",
             lambda: ("{-2: 21, -1: 21, 0: 20, 1: 1, 2: 0}", _fmt(hn_dims(self.fermat(4, 2))))),
        ]
        for n in (0, 2, 4):
            checks.append((f"hodge.quadric.n{n}.hp0", self._quadric_hp0(n)))
        for e in GRID_DEGREES:
            for n in GRID_DIMENSIONS:
                checks.append((f"hodge.grid.e{e}.n{n}.graded_sum", self._graded_sum(e, n)))
                checks.append((f"hodge.grid.e{e}.n{n}.exactness", self._exactness(e, n)))
                checks.append((f"hodge.grid.e{e}.n{n}.polar", self._polar(e, n)))
        return checks

    def _quadric_hp0(self, n: int) -> Check:
        return lambda: ("1", str(hp0_dim(self.fermat(2, n))))

    def _graded_sum(self, e: int, n: int) -> Check:
        def check():
            M = self.fermat(e, n)
            return str(hp0_dim(M)), str(sum(nc_filtration(M).values()))
        return check

    def _exactness(self, e: int, n: int) -> Check:
        def check():
            M = self.fermat(e, n)
            dims = hn_dims(M)
            expected, actual = {}, {}
            for m in dims:
                expected[m] = M.omega_f_dimension((n // 2 + 1 - m) * e)
                actual[m] = dims[m] - dims.get(m + 1, 0)
            return _fmt(expected), _fmt(actual)
        return check

    def _polar(self, e: int, n: int) -> Check:
        def check():
            M = self.fermat(e, n)
            return _fmt(hn_dims(M)), _fmt(polar_filtration_dims(M))
        return check

    # ========== Черн ==========

    def chern_checks(self) -> List[Tuple[str, Check]]:
        checks: List[Tuple[str, Check]] = []
        six = cubic_surface_six()
        for item in six:
            checks.append((f"chern.cubic_surface.{item.label}", self._six_class(item)))
        checks.append(("chern.cubic_surface.q_rank", lambda: ("6", str(self._six_rank(six)))))
        for n in (0, 2, 4):
            checks.append((f"chern.quadric.n{n}", self._knorrer(n)))
        builders = (("E1", cubic_e1), ("E2", cubic_e2), ("K", knorrer_pair))
        for left_name, left in builders:
            for right_name, right in builders:
                checks.append((f"chern.multiplicativity.{left_name}*{right_name}",
                               self._multiplicativity(left, right)))
        checks.append(("chern.multiplicativity.interleaved", self._interleaved))
        checks.append(("chern.relation.linear_factors", self._linear_factor_relation))
        checks.append(("chern.shift", self._shift))
        checks.append(("chern.direct_sum", self._direct_sum))
        return checks

    def _six_class(self, item) -> Check:
        def check():
            expected = poly_parse(item.expected, 4).scale(item.sign)
            actual = chern(item.factorization, self.fermat(3, 2)).raw
            return _compare(expected, actual)
        return check

    def _six_rank(self, six) -> int:
        M = self.fermat(3, 2)
        return q_rank([chern(item.factorization, M) for item in six])

    def _knorrer(self, n: int) -> Check:
        def check():
            copies = (n + 2) // 2
            expected = GradedPolynomial.constant(n + 2, (CycloNumber.root(4) * -2) ** copies)
            return _compare(expected, chern(knorrer_power(copies), self.fermat(2, n)).raw)
        return check

    def _multiplicativity(self, left, right) -> Check:
        def check():
            F, G = left(4, 0, 1), right(4, 2, 3)
            small_F, small_G = left(2, 0, 1), right(2, 0, 1)
            product = chern_form(self.tensor(F, G))
            factors = chern_form(small_F).substitute(4, (0, 1)) * chern_form(small_G).substitute(4, (2, 3))
            if not (F.f + G.f).is_homogeneous():
                return _compare(factors, product)
            M = self.algebra(F.f + G.f, 2)
            c = chern_product(chern(small_F, self.algebra(small_F.f, 0)),
                              chern(small_G, self.algebra(small_G.f, 0)), M)
            return _fmt(c.reduced), _fmt(M.milnor_reduce(product, c.degree))
        return check

    def _interleaved(self) -> Tuple[str, str]:
        F, G = cubic_e1(4, 0, 2), cubic_e1(4, 1, 3)
        small = cubic_e1(2, 0, 1)
        M = self.fermat(3, 2)
        c_small = chern(small, self.fermat(3, 0))
        expected = chern_product(c_small, c_small, M, placement=((0, 2), (1, 3)))
        return _compare(expected.raw, chern(self.tensor(F, G), M).raw)

    def _linear_factor_relation(self) -> Tuple[str, str]:
        M = self.algebra(poly_parse("x0^3-x0*x1^2", 2), 0)
        total = None
        for text in ("x0", "x0-x1", "x0+x1"):
            c = chern(linear_factor_pair(poly_parse(text, 2), M.f), M)
            total = c.reduced if total is None else tuple(a + b for a, b in zip(total, c.reduced))
        return _fmt(tuple(CycloNumber.rational(0) for _ in total)), _fmt(total)

    def _shift(self) -> Tuple[str, str]:
        F = mf_tensor(cubic_e1(4, 0, 1), cubic_e1(4, 2, 3))
        return _compare(-chern_form(F), chern_form(F.shift()))

    def _direct_sum(self) -> Tuple[str, str]:
        F = cubic_e1(2, 0, 1)
        G = linear_factor_pair(poly_parse("x0+zeta3*x1", 2), F.f)
        return _compare(chern_form(F) + chern_form(G), chern_form(direct_sum(F, G)))

    # ========== Ферма ==========

    def fermat_checks(self) -> List[Tuple[str, Check]]:
        return [
            ("fermat.b_set.m2.n2", lambda: ("((1, 1, 1, 1))", _fmt([a.entries for a in b_set(2, 2)]))),
            ("fermat.b_set.m3.n2", lambda: (
                "((1, 1, 2, 2), (1, 2, 1, 2), (1, 2, 2, 1), (2, 1, 1, 2), (2, 1, 2, 1), (2, 2, 1, 1))",
                _fmt([a.entries for a in b_set(3, 2)]))),
            ("fermat.b_set.m6.n2.contains_2235",
             lambda: ("True", str((2, 2, 3, 5) in [a.entries for a in b_set(6, 2)]))),
            ("fermat.hdg_dim.m3.n2", lambda: (str(hp0_dim(self.fermat(3, 2))), str(hdg_dim_fermat(3, 2)))),
            ("fermat.shortcut.m6.n2", lambda: (
                _fmt([a.entries for a in b_set(6, 2)]),
                _fmt([a.entries for a in b_set(6, 2, symmetric_shortcut=True)]))),
            ("fermat.shortcut.m5.n2", lambda: (
                _fmt([a.entries for a in b_set(5, 2)]),
                _fmt([a.entries for a in b_set(5, 2, symmetric_shortcut=True)]))),
        ]

    # ========== ψ ==========

    def psi_checks(self) -> List[Tuple[str, Check]]:
        checks: List[Tuple[str, Check]] = []
        for e in (3, 4):
            M = self.fermat(e, 2)
            half = M.nvars // 2
            for j in pole_orders(M):
                for m in (half - j - 1, half - j):
                    checks.append((f"psi.e{e}.j{j}.m{m}", self._psi_samples(e, j, m)))
        return checks

    def _psi_samples(self, e: int, j: int, m: int) -> Check:
        def check():
            M = self.fermat(e, 2)
            # свой генератор на каждую проверку: результат не зависит от порядка выполнения
            rng = random.Random(f"{self.settings.random_seed}:{e}:{j}:{m}")
            failures = []
            for index in range(self.settings.psi_samples):
                q = random_homogeneous(rng, M.nvars, j * e - M.nvars)
                x = psi(M, q, j, m)
                omega = DiffForm.volume(M.nvars, q)
                if not cycle_check(x, M):
                    failures.append(f"cycle[{index}]")
                if x != psi_equiv(M, q, j, m):
                    failures.append(f"equiv[{index}]")
                if x.gamma_degrees(e) != {0}:
                    failures.append(f"gamma[{index}]")
                if x.homological_degrees() != {2 * m}:
                    failures.append(f"degree[{index}]")
                if omega.euler_contract().d() != omega.scale(j * e):
                    failures.append(f"euler[{index}]")
                if m == 0 and M.nvars // 2 - j >= 0:
                    boundary = boundary_devissage(M, omega.euler_contract(), j, M.n + 1)
                    if boundary != x:
                        failures.append(f"boundary[{index}]")
            return "[]", "[" + ", ".join(failures) + "]"
        return check

    # ========== Запуск ==========

    def collect(self, scope: VerifyScope) -> List[Tuple[str, Check]]:
        sections = {
            VerifyScope.MILNOR: self.milnor_checks,
            VerifyScope.HODGE: self.hodge_checks,
            VerifyScope.CHERN: self.chern_checks,
            VerifyScope.FERMAT: self.fermat_checks,
            VerifyScope.PSI: self.psi_checks,
        }
        if scope == VerifyScope.ALL:
            return [item for build in sections.values() for item in build()]
        return sections[scope]()

    def run_one(self, identifier: str, check: Check) -> CheckResult:
        try:
            expected, actual = check()
        except Exception as e:
            logger.error("❌ Проверка %s завершилась ошибкой: %s", identifier, e)
            return CheckResult(identifier, "без ошибок", f"{type(e).__name__}: {e}", False)
        result = CheckResult(identifier, expected, actual, expected == actual)
        if not result.passed:
            logger.warning("⚠️ Проверка %s не прошла: %s ≠ %s", identifier, actual, expected)
        return result

    def run(self, scope: VerifyScope) -> RunReport:
        logger.info("🚀 Запуск проверок: %s", scope.value)
        checks = self.collect(scope)
        workers = self.settings.verify_workers
        if workers > 1:
            # map сохраняет порядок независимо от порядка завершения
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda item: self.run_one(*item), checks))
        else:
            results = [self.run_one(*item) for item in checks]
        report = RunReport(suite=scope.value, checks=results)
        if report.passed:
            logger.info("✅ Все проверки пройдены (%d)", len(results))
        else:
            logger.error("❌ Провалено проверок: %d из %d", len(report.failures()), len(results))
        return report


def run_verify(scope: VerifyScope = VerifyScope.ALL, tensor: Tensor = mf_tensor,
               settings: Optional[Settings] = None) -> RunReport:
    return VerificationSuite(settings, tensor).run(VerifyScope(scope))
