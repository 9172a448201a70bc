# services/emit_service.py
"""Каноническая сериализация результатов: JSON с сортировкой ключей или таблица"""
import json
from typing import Any, Dict, List, Union

from pydantic import BaseModel

from schemas import OutputFormat
from services.verify_service import RunReport


def _plain(result: Union[BaseModel, RunReport, Dict[str, Any]]) -> Dict[str, Any]:
    if isinstance(result, RunReport):
        return result.to_dict()
    if isinstance(result, BaseModel):
        return result.model_dump(exclude_none=True)
    return result


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict):
        return " ".join(f"{k}={_cell(v)}" for k, v in sorted(value.items(), key=lambda kv: str(kv[0])))
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    return str(value)


def _table(data: Dict[str, Any]) -> str:
    lines: List[str] = []
    if "checks" in data and "suite" in data:
        for check in data["checks"]:
            status = "PASS" if check["passed"] else "FAIL"
            lines.append(f"{status} {check['identifier']}: {check['actual']}")
            if not check["passed"]:
                lines.append(f"     expected: {check['expected']}")
        lines.append(f"suite: {data['suite']}")
        lines.append(f"passed: {_cell(data['passed'])}")
        return "\n".join(lines) + "\n"
    for key in sorted(data):
        value = data[key]
        if key == "classes" and isinstance(value, list):
            lines.append(f"{key}:")
            lines.extend(f"  {_cell(item)}" for item in value)
            continue
        lines.append(f"{key}: {_cell(value)}")
    return "\n".join(lines) + "\n"


def emit(result: Union[BaseModel, RunReport, Dict[str, Any]],
         output_format: Union[OutputFormat, str] = OutputFormat.JSON) -> str:
    """Текст результата; одинаковые входные данные дают побайтно одинаковый вывод"""
    data = _plain(result)
    if OutputFormat(output_format) == OutputFormat.TABLE:
        return _table(data)
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"
