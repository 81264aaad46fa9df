"""Sweep configuration files: strict TOML parsing and round-trippable emission.

The file carries the boundary-unit values exactly as the user wrote them
(mass in amu); conversion to internal units happens only in `to_params`.
Unknown keys anywhere are rejected, and every physical value passes through
the same validation as the library constructors before any computation.

`dumps` emits a TOML document that re-parses to an identical RunConfig, which
is the round-trip contract for the metadata echoed next to sweep output.
"""

from __future__ import annotations

from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .errors import ValidationError
from .params import DetectorConfig, PacketParams, make_params
from .sweep import AXES, QUANTITIES, GridSpec, SweepSpec


@dataclass(frozen=True)
class RunConfig:
    # [packet]
    sigma0: float
    u: float
    C: float
    mass_amu: float
    # [detector]
    X: float
    cutoff: str = "three-sigma"
    fixed_cutoff: float | None = None
    quad_rel_tol: float = 1e-9
    quad_abs_tol: float = 1e-30
    max_cutoff_iters: int = 5000
    # [sweep]
    axis: str = "mass_amu"
    values: tuple = ()
    outputs: tuple = ()
    t_eval: float | None = None
    grid_lo: float | None = None
    grid_hi: float | None = None
    grid_count: int | None = None
    # [mc]
    mc_count: int | None = None
    mc_seed: int | None = None
    # [output]
    output_path: str | None = None

    def to_params(self) -> PacketParams:
        return make_params(self.sigma0, self.u, self.C, self.mass_amu)

    def to_detector(self) -> DetectorConfig:
        return DetectorConfig(
            X=self.X,
            cutoff=self.cutoff,
            fixed_cutoff=self.fixed_cutoff,
            quad_rel_tol=self.quad_rel_tol,
            quad_abs_tol=self.quad_abs_tol,
            max_cutoff_iters=self.max_cutoff_iters,
        )

    def to_sweep_spec(self) -> SweepSpec:
        grid = None
        if self.grid_lo is not None or self.grid_hi is not None or self.grid_count is not None:
            if self.grid_lo is None or self.grid_hi is None or self.grid_count is None:
                raise ValidationError("sweep.grid needs all of lo, hi, count")
            grid = GridSpec(self.grid_lo, self.grid_hi, self.grid_count)
        return SweepSpec(
            base=self.to_params(),
            det=self.to_detector(),
            axis=self.axis,
            values=self.values,
            outputs=self.outputs,
            grid=grid,
            t_eval=self.t_eval,
        )


def _require_number(section, key, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"[{section}] {key} must be a number, got {value!r}")
    return float(value)


def _require_int(section, key, value):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"[{section}] {key} must be an integer, got {value!r}")
    return value


def _take(table: dict, section: str, known: dict):
    """Pop known keys from a section table; reject leftovers."""
    out = {}
    for key, convert in known.items():
        if key in table:
            out[key] = convert(section, key, table.pop(key))
    if table:
        raise ValidationError(f"unknown key(s) in [{section}]: {sorted(table)}")
    return out


def loads(text: str) -> RunConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"config is not valid TOML: {exc}") from exc

    packet = doc.pop("packet", None)
    if packet is None:
        raise ValidationError("config needs a [packet] section")
    pk = _take(
        dict(packet),
        "packet",
        {k: _require_number for k in ("sigma0", "u", "C", "mass_amu")},
    )
    for k in ("sigma0", "u", "C", "mass_amu"):
        if k not in pk:
            raise ValidationError(f"[packet] missing required key {k!r}")

    det_table = dict(doc.pop("detector", {}))
    dk = _take(
        det_table,
        "detector",
        {
            "X": _require_number,
            "cutoff": lambda s, k, v: _require_str(s, k, v),
            "fixed_cutoff": _require_number,
            "quad_rel_tol": _require_number,
            "quad_abs_tol": _require_number,
            "max_cutoff_iters": _require_int,
        },
    )
    if "X" not in dk:
        raise ValidationError("[detector] missing required key 'X'")

    sweep_table = dict(doc.pop("sweep", {}))
    grid_table = dict(sweep_table.pop("grid", {}))
    sk = _take(
        sweep_table,
        "sweep",
        {
            "axis": lambda s, k, v: _require_str(s, k, v),
            "values": _require_number_list,
            "outputs": _require_str_list,
            "t_eval": _require_number,
        },
    )
    gk = _take(grid_table, "sweep.grid", {"lo": _require_number, "hi": _require_number, "count": _require_int})

    mc_table = dict(doc.pop("mc", {}))
    mk = _take(mc_table, "mc", {"count": _require_int, "seed": _require_int})

    out_table = dict(doc.pop("output", {}))
    ok = _take(out_table, "output", {"path": lambda s, k, v: _require_str(s, k, v)})

    if doc:
        raise ValidationError(f"unknown section(s): {sorted(doc)}")

    if sk.get("axis", "mass_amu") not in AXES:
        raise ValidationError(f"[sweep] axis must be one of {AXES}, got {sk['axis']!r}")
    for q in sk.get("outputs", ()):
        if q not in QUANTITIES:
            raise ValidationError(f"[sweep] unknown output {q!r}; known: {QUANTITIES}")

    return RunConfig(
        sigma0=pk["sigma0"],
        u=pk["u"],
        C=pk["C"],
        mass_amu=pk["mass_amu"],
        X=dk["X"],
        cutoff=dk.get("cutoff", "three-sigma"),
        fixed_cutoff=dk.get("fixed_cutoff"),
        quad_rel_tol=dk.get("quad_rel_tol", 1e-9),
        quad_abs_tol=dk.get("quad_abs_tol", 1e-30),
        max_cutoff_iters=dk.get("max_cutoff_iters", 5000),
        axis=sk.get("axis", "mass_amu"),
        values=tuple(sk.get("values", ())),
        outputs=tuple(sk.get("outputs", ())),
        t_eval=sk.get("t_eval"),
        grid_lo=gk.get("lo"),
        grid_hi=gk.get("hi"),
        grid_count=gk.get("count"),
        mc_count=mk.get("count"),
        mc_seed=mk.get("seed"),
        output_path=ok.get("path"),
    )


def load(path) -> RunConfig:
    try:
        with open(path, "rb") as fh:
            text = fh.read().decode("utf-8")
    except FileNotFoundError:
        raise ValidationError(f"config file not found: {path}") from None
    return loads(text)


def _require_str(section, key, value):
    if not isinstance(value, str):
        raise ValidationError(f"[{section}] {key} must be a string, got {value!r}")
    return value


def _require_number_list(section, key, value):
    if not isinstance(value, list) or not value:
        raise ValidationError(f"[{section}] {key} must be a non-empty array of numbers")
    return tuple(_require_number(section, key, v) for v in value)


def _require_str_list(section, key, value):
    if not isinstance(value, list) or not value:
        raise ValidationError(f"[{section}] {key} must be a non-empty array of strings")
    return tuple(_require_str(section, key, v) for v in value)


def _toml_scalar(v):
    if isinstance(v, bool):
        raise TypeError("no boolean config values")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        r = repr(v)  # repr round-trips doubles and is valid TOML
        return r if ("." in r or "e" in r or "E" in r or r in ("inf", "nan")) else r + ".0"
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialize {v!r}")


def dumps(cfg: RunConfig) -> str:
    lines = ["[packet]"]
    for k in ("sigma0", "u", "C", "mass_amu"):
        lines.append(f"{k} = {_toml_scalar(getattr(cfg, k))}")
    lines += ["", "[detector]", f"X = {_toml_scalar(cfg.X)}", f"cutoff = {_toml_scalar(cfg.cutoff)}"]
    if cfg.fixed_cutoff is not None:
        lines.append(f"fixed_cutoff = {_toml_scalar(cfg.fixed_cutoff)}")
    lines.append(f"quad_rel_tol = {_toml_scalar(cfg.quad_rel_tol)}")
    lines.append(f"quad_abs_tol = {_toml_scalar(cfg.quad_abs_tol)}")
    lines.append(f"max_cutoff_iters = {_toml_scalar(cfg.max_cutoff_iters)}")
    if cfg.values or cfg.outputs:
        lines += ["", "[sweep]", f"axis = {_toml_scalar(cfg.axis)}"]
        lines.append("values = [" + ", ".join(_toml_scalar(float(v)) for v in cfg.values) + "]")
        lines.append("outputs = [" + ", ".join(_toml_scalar(q) for q in cfg.outputs) + "]")
        if cfg.t_eval is not None:
            lines.append(f"t_eval = {_toml_scalar(cfg.t_eval)}")
        if cfg.grid_lo is not None:
            lines += [
                "",
                "[sweep.grid]",
                f"lo = {_toml_scalar(cfg.grid_lo)}",
                f"hi = {_toml_scalar(cfg.grid_hi)}",
                f"count = {_toml_scalar(cfg.grid_count)}",
            ]
    if cfg.mc_count is not None or cfg.mc_seed is not None:
        lines += ["", "[mc]"]
        if cfg.mc_count is not None:
            lines.append(f"count = {_toml_scalar(cfg.mc_count)}")
        if cfg.mc_seed is not None:
            lines.append(f"seed = {_toml_scalar(cfg.mc_seed)}")
    if cfg.output_path is not None:
        lines += ["", "[output]", f"path = {_toml_scalar(cfg.output_path)}"]
    return "\n".join(lines) + "\n"
