# nchodge.py
"""Командная строка nchodge.

Коды выхода: 0 успех, 1 провал проверки, 2 ошибка входных данных,
3 превышен предел ресурсов.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from algebra.errors import InputError, ResourceBoundError
from algebra.polyforms import poly_parse
from schemas import (
    ChernResponse, FermatResponse, HodgeResponse, MilnorResponse, OutputFormat, PsiResponse,
    QRankResponse, VerifyScope,
)
from services.emit_service import emit
from services.fermat_service import FermatService
from services.hodge_service import HodgeService
from services.mf_service import MatrixFactorizationService, dump_mf, load_mf
from services.milnor_service import MilnorAlgebra, MilnorService
from services.verify_service import run_verify
from settings import Settings, configure_logging, get_settings

logger = logging.getLogger("nchodge")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_BOUND = 3


def _add_hypersurface(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--f", dest="f", required=True, help="однородный многочлен от x0..x{n+1}")
    parser.add_argument("--n", dest="n", type=int, required=True, help="чётная размерность")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nchodge",
        description="Точные nc-инварианты Ходжа изолированных однородных гиперповерхностных особенностей",
    )
    parser.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat])
    parser.add_argument("--max-degree", dest="max_degree", type=int)
    commands = parser.add_subparsers(dest="command", required=True)

    _add_hypersurface(commands.add_parser("milnor", help="функция Гильберта алгебры Милнора"))
    _add_hypersurface(commands.add_parser("hodge", help="HP₀, nc-фильтрация, числа Ходжа, HN"))

    psi = commands.add_parser("psi", help="цикл ψ_{m,j}(q·vol)")
    _add_hypersurface(psi)
    psi.add_argument("--q", dest="q", required=True)
    psi.add_argument("--j", dest="j", type=int, required=True)
    psi.add_argument("--m", dest="m", type=int, default=0)
    psi.add_argument("--check", action="store_true", help="проверить, что элемент является циклом")

    chern = commands.add_parser("chern", help="характер Черна факторизации")
    _add_hypersurface(chern)
    chern.add_argument("--mf", dest="mf", type=Path, required=True)

    tensor = commands.add_parser("tensor", help="тензорное произведение факторизаций")
    tensor.add_argument("--mf1", dest="mf1", type=Path, required=True)
    tensor.add_argument("--mf2", dest="mf2", type=Path, required=True)
    tensor.add_argument("--out", dest="out", type=Path, required=True)

    qrank = commands.add_parser("qrank", help="ранг над ℚ классов Черна")
    _add_hypersurface(qrank)
    qrank.add_argument("--mf", dest="mf", type=Path, nargs="+", required=True)

    fermat = commands.add_parser("fermat", help="множество B Сиоды")
    fermat.add_argument("--m", dest="m", type=int, required=True)
    fermat.add_argument("--n", dest="n", type=int, required=True)
    fermat.add_argument("--count-only", dest="count_only", action="store_true")

    verify = commands.add_parser("verify", help="контрольный набор вычислений")
    verify.add_argument("--scope", dest="scope", default=VerifyScope.ALL.value,
                        choices=[s.value for s in VerifyScope])
    return parser


def _algebra(args: argparse.Namespace, settings: Settings) -> MilnorAlgebra:
    return MilnorService().get_algebra(args.f, args.n, settings.max_degree)


def run(args: argparse.Namespace, settings: Settings) -> int:
    """Выполнение подкоманды; результат печатается в stdout"""
    output_format = settings.output_format
    if args.command == "milnor":
        result = MilnorResponse(**MilnorService().describe(_algebra(args, settings)))
    elif args.command == "hodge":
        result = HodgeResponse(**HodgeService().describe(_algebra(args, settings)))
    elif args.command == "psi":
        M = _algebra(args, settings)
        report = HodgeService().psi_report(M, poly_parse(args.q, M.nvars), args.j, args.m, check=args.check)
        result = PsiResponse(**report)
    elif args.command == "chern":
        M = _algebra(args, settings)
        result = ChernResponse(**MatrixFactorizationService().chern_report(load_mf(args.mf, M.nvars), M))
    elif args.command == "tensor":
        product = MatrixFactorizationService().tensor_files(load_mf(args.mf1), load_mf(args.mf2))
        dump_mf(product, args.out)
        logger.info("✅ Тензорное произведение ранга %d записано в %s", product.rank, args.out)
        return EXIT_OK
    elif args.command == "qrank":
        M = _algebra(args, settings)
        factorizations = [load_mf(path, M.nvars) for path in args.mf]
        result = QRankResponse(**MatrixFactorizationService().qrank_report(factorizations, M))
    elif args.command == "fermat":
        report = FermatService().report(args.m, args.n, count_only=args.count_only)
        result = FermatResponse(**report).model_dump(include=set(report))
    else:
        report = run_verify(VerifyScope(args.scope), settings=settings)
        sys.stdout.write(emit(report, output_format))
        return EXIT_OK if report.passed else EXIT_VERIFY_FAILED
    sys.stdout.write(emit(result, output_format))
    return EXIT_OK


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {}
    if args.output_format is not None:
        overrides["output_format"] = args.output_format
    if args.max_degree is not None:
        overrides["max_degree"] = args.max_degree
    settings = get_settings().model_copy(update=overrides)
    configure_logging(settings)
    try:
        return run(args, settings)
    except ResourceBoundError as e:
        logger.error("❌ Превышен предел: %s", e)
        return EXIT_RESOURCE_BOUND
    except InputError as e:
        logger.error("❌ Некорректные входные данные: %s", e)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
