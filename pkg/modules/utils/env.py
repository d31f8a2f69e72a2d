import os
from argparse import Namespace
from typing import Any, Callable

from modules import config

_TRUE = ("true", "1", "t", "yes")


def get_env_val(key: str, val_type: Callable) -> Any:
    raw = os.getenv(key.upper())
    if raw is None or raw.strip() == "":
        return None
    if val_type is bool:
        return raw.strip().lower() in _TRUE
    return val_type(raw.strip())


def get_env_or_arg(args: Namespace, arg_name: str, default: Any, arg_type: Callable) -> Any:
    """An explicit flag wins, then the upper-cased environment variable, then default."""
    arg_val = getattr(args, arg_name, None)
    if arg_val is not None:
        return arg_val
    env_val = get_env_val(arg_name, arg_type)
    return default if env_val is None else env_val


def get_and_update_env(args: Namespace, arg_name: str, default: Any, arg_type: Callable) -> Any:
    val = get_env_or_arg(args, arg_name, default, arg_type)
    config.runtime_env_vars[arg_name] = val
    return val
