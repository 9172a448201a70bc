# algebra/errors.py
from typing import Optional, Tuple


class NcHodgeError(ValueError):
    """Базовая ошибка вычислительного ядра"""


class InputError(NcHodgeError):
    """Некорректные входные данные (код выхода 2)"""


class ResourceBoundError(NcHodgeError):
    """Превышен настроенный предел (код выхода 3)"""


class PolynomialSyntaxError(InputError):
    """Синтаксическая ошибка в записи многочлена"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (позиция {position})")
        self.position = position


class FactorizationError(InputError):
    """Пара (A, B) не является матричной факторизацией"""

    def __init__(self, message: str, entry: Optional[Tuple[str, int, int]] = None):
        if entry is not None:
            product, row, col = entry
            message = f"{message}: {product}[{row}][{col}]"
        super().__init__(message)
        self.entry = entry
