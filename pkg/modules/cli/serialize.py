from fractions import Fraction
from typing import Any

import orjson
from pydantic import BaseModel

from modules import config
from modules.surd import SurdScalar

OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_NON_STR_KEYS


def _default(obj: Any):
    if isinstance(obj, (Fraction, SurdScalar)):
        return str(obj)
    if isinstance(obj, BaseModel):
        return obj.model_dump()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def envelope(command: str, data: Any, passed: bool) -> dict:
    return {
        "meta": config.versions.to_dict(),
        "command": command,
        "passed": passed,
        "data": data,
    }


def dumps(command: str, data: Any, passed: bool = True) -> bytes:
    return orjson.dumps(envelope(command, data, passed), default=_default, option=OPTIONS)


def loads(raw: bytes) -> dict:
    return orjson.loads(raw)
