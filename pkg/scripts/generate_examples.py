# scripts/generate_examples.py
import argparse
import logging
import os
import sys
from pathlib import Path

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from services.mf_service import cubic_e1, cubic_e2, cubic_surface_six, dump_mf, knorrer_pair, knorrer_power
from settings import configure_logging

logger = logging.getLogger(__name__)


def generate_examples(out_dir: Path) -> list:
    """Запись встроенных факторизаций в JSON-файлы"""
    out_dir.mkdir(parents=True, exist_ok=True)
    named = {
        "e1.json": cubic_e1(),
        "e2.json": cubic_e2(),
        "knorrer.json": knorrer_pair(),
        "knorrer_power2.json": knorrer_power(2),
    }
    for index, item in enumerate(cubic_surface_six(), start=1):
        named[f"cubic_surface_{index}.json"] = item.factorization
    written = []
    for name, factorization in named.items():
        path = out_dir / name
        dump_mf(factorization, path)
        written.append(path)
        logger.info("✅ %s: ранг %d, f = %s", name, factorization.rank, factorization.f.to_text())
    return written


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Генерация JSON встроенных факторизаций")
    parser.add_argument("out_dir", nargs="?", type=Path, default=Path("examples_mf"))
    args = parser.parse_args()
    configure_logging()
    generate_examples(args.out_dir)
