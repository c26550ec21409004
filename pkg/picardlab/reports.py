"""Check rows, run configuration and their JSON/CSV emission."""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Literal

import numpy as np
from django.conf import settings
from pydantic import BaseModel, ConfigDict, Field, field_serializer

COMMANDS = (
    'kloosterman', 'identity', 'rho', 'zeta', 'lerch-fe', 'specfun-check',
    'moments-check', 'geodesics', 'spectral-sum', 'explicit-formula',
)

Command = Literal[
    'kloosterman', 'identity', 'rho', 'zeta', 'lerch-fe', 'specfun-check',
    'moments-check', 'geodesics', 'spectral-sum', 'explicit-formula',
]


def json_safe(value: Any) -> Any:
    """Complex numbers become {"re": ..., "im": ...}; numpy scalars and arrays become plain Python."""
    if isinstance(value, (complex, np.complexfloating)):
        return {'re': float(value.real), 'im': float(value.imag)}
    if isinstance(value, np.ndarray):
        return [json_safe(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {str(k): json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: Command
    qmax_norm: int = Field(gt=0)
    nmax_norm: int = Field(gt=0)
    truncation_norm: int = Field(gt=0)
    tolerance: float = Field(gt=0)
    format: Literal['json', 'csv'] = 'json'
    eigenvalue_path: str | None = None
    H: int = Field(gt=0)
    conj_height: int = Field(gt=0)
    seed: int = Field(default=0, ge=0)
    threads: int = Field(default=1, gt=0)
    params: dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_settings(cls, command: str, **overrides: Any) -> RunConfig:
        defaults = settings.PICARDLAB
        values = {
            'command': command,
            'qmax_norm': defaults['QMAX_NORM'],
            'nmax_norm': defaults['NMAX_NORM'],
            'truncation_norm': defaults['TRUNCATION_NORM'],
            'tolerance': defaults['TOLERANCE'],
            'H': defaults['HEIGHT'],
            'conj_height': defaults['CONJ_HEIGHT'],
            'seed': defaults['SEED'],
            'threads': defaults['THREADS'],
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class CheckResult(BaseModel):
    name: str
    anchor: str
    value: Any = None
    residual: float = 0.0
    tolerance: float = 0.0
    passed: bool = True
    detail: dict[str, Any] = Field(default_factory=dict)

    @field_serializer('value', 'detail')
    def _serialize(self, value: Any) -> Any:
        return json_safe(value)

    @classmethod
    def compare(cls, name: str, anchor: str, value: Any, residual: float, tolerance: float,
                **detail: Any) -> CheckResult:
        residual = float(residual)
        return cls(name=name, anchor=anchor, value=value, residual=residual, tolerance=tolerance,
                   passed=bool(residual <= tolerance), detail=detail)

    @classmethod
    def report_only(cls, name: str, anchor: str, value: Any, **detail: Any) -> CheckResult:
        return cls(name=name, anchor=anchor, value=value, detail=detail)


class Report(BaseModel):
    command: str
    config: dict[str, Any]
    rows: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_json(self) -> str:
        payload = {
            'command': self.command,
            'config': json_safe(self.config),
            'passed': self.passed,
            'rows': [row.model_dump() for row in self.rows],
        }
        return json.dumps(payload, sort_keys=True, indent=2)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        detail_keys = sorted({key for row in self.rows for key in row.detail})
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(['name', 'anchor', 'value_re', 'value_im', 'residual', 'tolerance', 'passed']
                        + detail_keys)
        for row in self.rows:
            value = row.value
            if isinstance(value, (complex, np.complexfloating)):
                re_part, im_part = float(value.real), float(value.imag)
            elif isinstance(value, (int, float, np.number)) and not isinstance(value, bool):
                re_part, im_part = float(value), 0.0
            else:
                re_part, im_part = json.dumps(json_safe(value), sort_keys=True), ''
            extra = [json.dumps(json_safe(row.detail.get(key)), sort_keys=True) if key in row.detail else ''
                     for key in detail_keys]
            writer.writerow([row.name, row.anchor, re_part, im_part, row.residual, row.tolerance,
                             row.passed] + extra)
        return buffer.getvalue()

    def render(self, fmt: str) -> str:
        return self.to_csv() if fmt == 'csv' else self.to_json()
