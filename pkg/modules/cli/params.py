import re
from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from modules.chevalley import ReductiveAlgebra
from modules.rootsys import parse_algebra
from modules.utils.constants import (
    DEFAULT_MAX_RANK,
    DEFAULT_NORMALIZATION,
    DEFAULT_PEEL_ORDER,
    DEFAULT_SEARCH_CAP,
)

_ABELIAN = re.compile(r"^(?:U1|u\(1\)|U\(1\))(?:\^(\d+))?$")


def parse_algebra_spec(text: str) -> ReductiveAlgebra:
    """'E8', 'A1xA1', 'A2xU1^2': simple factors then u(1)'s, separated by 'x' or '+'."""
    types, abelian = [], 0
    for part in re.split(r"[x+]", text.replace(" ", "")):
        if not part:
            raise ValueError(f"empty factor in algebra {text!r}")
        m = _ABELIAN.match(part)
        if m:
            abelian += int(m.group(1) or 1)
        else:
            types.append(parse_algebra(part))
    return ReductiveAlgebra.of(*types, abelian_dim=abelian)


def parse_rational_list(text: str) -> list[Fraction]:
    return [Fraction(x.strip()) for x in text.split(",") if x.strip()]


def parse_vector_list(text: str) -> list[list[Fraction]]:
    """'1,0,-1;0,1/2,0' -> two rational vectors."""
    return [parse_rational_list(v) for v in text.split(";") if v.strip()]


def parse_colours(text: str) -> list[list[int]]:
    """Node indices per simple ideal, ideals separated by ';' ('-' for none)."""
    out = []
    for part in text.split(";"):
        part = part.strip()
        out.append([] if part in ("", "-") else [int(x) for x in part.split(",") if x.strip()])
    return out


class AlgebraParams(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    algebra: str
    max_rank: int = DEFAULT_MAX_RANK
    normalization: Literal["standard", "killing"] = DEFAULT_NORMALIZATION

    @field_validator("algebra")
    @classmethod
    def check_algebra(cls, v: str) -> str:
        parse_algebra_spec(v)
        return v

    @model_validator(mode="after")
    def check_rank(self):
        g = parse_algebra_spec(self.algebra)
        too_big = [rs.algebra.name for rs in g.simple_ideals if rs.rank > self.max_rank]
        if too_big:
            raise ValueError(f"{', '.join(too_big)} exceeds the rank cap {self.max_rank} (see --max-rank)")
        return self

    @property
    def reductive(self) -> ReductiveAlgebra:
        return parse_algebra_spec(self.algebra)


class CatalogParams(BaseModel):
    algebra: Optional[str] = None
    max_rank: int = DEFAULT_MAX_RANK


class KTParams(AlgebraParams):
    colour: list[list[int]] = []
    k_u1: list[list[Fraction]] = []
    extra_u1: int = 0
    seed_lambda: Optional[list[Fraction]] = None
    exam: Optional[int] = None

    @field_validator("extra_u1")
    @classmethod
    def check_extra(cls, v: int) -> int:
        if v < 0:
            raise ValueError("--extra-u1 must be non-negative")
        return v

    @model_validator(mode="after")
    def check_exam(self):
        if self.exam is not None:
            if self.reductive.name() != "E8":
                raise ValueError("--exam applies to E8 only")
            if self.exam not in (0, 1, 2, 3):
                raise ValueError("--exam takes a in 0..3")
        elif not self.colour:
            raise ValueError("--colour is required (or --exam for E8)")
        return self


class HKTParams(AlgebraParams):
    stop_level: Optional[int] = None
    k_u1: int = 0
    extra_u1: Optional[int] = None
    peel_order: Literal["a1-first", "a1-last"] = DEFAULT_PEEL_ORDER

    @field_validator("k_u1", "stop_level", "extra_u1")
    @classmethod
    def check_non_negative(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 0:
            raise ValueError("counts must be non-negative")
        return v


class QKTParams(HKTParams):
    search_cap: int = DEFAULT_SEARCH_CAP


class TableParams(BaseModel):
    algebra: Optional[str] = None
    max_rank: int = DEFAULT_MAX_RANK
    search_cap: int = DEFAULT_SEARCH_CAP
