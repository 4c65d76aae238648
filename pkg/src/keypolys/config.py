"""JSON chain configurations.

::

    {"base": {"field": "Fp", "p": 3, "tower": ["z", "y"]},
     "outer_var": "x",
     "steps": [{"phi": "x", "gamma": "3/2"}, {"phi": "x^2+y^3", "gamma": "10/3"}],
     "limit": {"builtin": "tower5-y"}}

``limit`` chooses the valuation of the coefficient field: ``"tower5-y"`` is
the limit valuation on ``F_p(z)(y)`` built by :mod:`keypolys.tower5`;
``null`` (or no ``limit`` key) is the t-adic valuation in the last tower
variable.  The first step must have ``phi`` equal to the outer variable and
gives the Gauss valuation.  An optional ``continued`` list of
``[first, last]`` step ranges marks continued sub-families for validation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .algebra.fields import PrimeField, RationalField
from .algebra.poly import Poly
from .algebra.tower import Tower
from .errors import ConfigError, ParseError
from .valuations import KeyChain, TAdicValuation, TrivialValuation
from .values import parse_value

_TOP_KEYS = {"base", "outer_var", "steps", "limit", "continued"}
_BASE_KEYS = {"field", "p", "tower"}
_STEP_KEYS = {"phi", "gamma"}
_LIMIT_KEYS = {"builtin"}


@dataclass
class ChainConfig:
    tower: Tower
    coeff_val: object
    steps: List[Tuple[Poly, Fraction]]
    continued: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def ring(self):
        return self.tower.outer

    def build(self) -> KeyChain:
        """The chain; raises ``GammaNotGreater`` naming the offending step."""
        return KeyChain(self.coeff_val, self.ring, self.steps, start=0)

    def poly(self, text: str) -> Poly:
        return self.tower.poly(text)


def _strict(obj, allowed, where):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be an object")
    extra = set(obj) - allowed
    if extra:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(sorted(extra))}")


def _rational(s, where):
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ConfigError(f"{where} must be a rational string like \"3/2\"")
    try:
        v = parse_value(str(s))
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    if not isinstance(v, Fraction):
        raise ConfigError(f"{where} must be finite")
    return v


def _tower(base, outer):
    _strict(base, _BASE_KEYS, "base")
    kind = base.get("field")
    names = base.get("tower", [])
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names) or not names:
        raise ConfigError("base.tower must be a nonempty list of variable names")
    if len(names) > 2:
        raise ConfigError("at most two tower variables are supported")
    if kind == "Fp":
        p = base.get("p")
        if not isinstance(p, int):
            raise ConfigError("base.p must be an integer")
        try:
            ground = PrimeField(p)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    elif kind in ("Q", "QQ", "Rationals"):
        if "p" in base:
            raise ConfigError("base.p is only meaningful for Fp")
        ground = RationalField()
    else:
        raise ConfigError(f"base.field must be \"Fp\" or \"Q\", got {kind!r}")
    try:
        return Tower(ground, names, outer)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _coeff_val(tower, limit):
    if limit is None:
        return TAdicValuation(tower.top)
    _strict(limit, _LIMIT_KEYS, "limit")
    name = limit.get("builtin")
    if name is None:
        return TAdicValuation(tower.top)
    if name == "trivial":
        return TrivialValuation(tower.top)
    if name == "tower5-y":
        from . import tower5

        if not isinstance(tower.ground, PrimeField) or tower.names != ["z", "y"]:
            raise ConfigError("tower5-y needs field Fp with tower [\"z\", \"y\"]")
        return tower5.nu_y(tower.ground.p)
    raise ConfigError(f"unknown builtin limit {name!r}")


def load_config(data) -> ChainConfig:
    """Build a :class:`ChainConfig` from parsed JSON."""
    _strict(data, _TOP_KEYS, "chain config")
    if "base" not in data or "steps" not in data:
        raise ConfigError("chain config needs \"base\" and \"steps\"")
    outer = data.get("outer_var", "x")
    if not isinstance(outer, str):
        raise ConfigError("outer_var must be a string")
    tower = _tower(data["base"], outer)
    steps_in = data["steps"]
    if not isinstance(steps_in, list) or not steps_in:
        raise ConfigError("steps must be a nonempty list")
    steps = []
    for k, st in enumerate(steps_in):
        _strict(st, _STEP_KEYS, f"step {k}")
        if "phi" not in st or "gamma" not in st:
            raise ConfigError(f"step {k} needs phi and gamma")
        if not isinstance(st["phi"], str):
            raise ConfigError(f"step {k}: phi must be a string")
        try:
            phi = tower.poly(st["phi"])
        except ParseError as exc:
            raise ConfigError(f"step {k}: {exc}") from exc
        steps.append((phi, _rational(st["gamma"], f"step {k} gamma")))
    if steps[0][0] != tower.outer.gen():
        raise ConfigError(f"step 0 must have phi = {outer} (the Gauss step)")
    continued = []
    for rng in data.get("continued", []):
        if not (isinstance(rng, list) and len(rng) == 2 and all(isinstance(v, int) for v in rng)):
            raise ConfigError("continued entries must be [first, last] index pairs")
        continued.append((rng[0], rng[1]))
    return ChainConfig(tower, _coeff_val(tower, data.get("limit")), steps, continued)


def read_config(path) -> ChainConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from exc
    return load_config(data)


def chain_to_json(tower: Tower, steps, limit=None, continued=()) -> dict:
    """Inverse of :func:`load_config` for a tower and ``(phi, gamma)`` steps."""
    from .values import format_value

    ground = tower.ground
    base = {"field": "Fp", "p": ground.p} if isinstance(ground, PrimeField) else {"field": "Q"}
    base["tower"] = list(tower.names)
    out = {
        "base": base,
        "outer_var": tower.outer_var,
        "steps": [{"phi": str(phi), "gamma": format_value(g)} for phi, g in steps],
        "limit": {"builtin": limit} if limit else None,
    }
    if continued:
        out["continued"] = [list(c) for c in continued]
    return out
