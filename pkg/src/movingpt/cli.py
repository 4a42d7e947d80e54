"""Command-line front end.

    movingpt spectrum | observables | density | potential | validate
    movingpt figure <1-6>

Settings come from built-in defaults, then an optional ``--config`` file of
``key = value`` lines, then command-line flags (flags win). Exit codes:
0 success, 1 validation failure, 2 configuration error.
"""
import argparse
import configparser
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, dynamics, observables, validation
from .dynamics import Fixed, InverseSqrtCosine, Sinusoidal
from .errors import ConfigError, MovingPTError
from .quadrature import QuadratureSpec
from .stationary import PTParams, Sector, energy

DEFAULTS = {
    "A": 5.0,
    "B": 3.4,
    "profile": "sinusoidal",
    "A1": 1.0,
    "B1": 0.5,
    "omega": 1.0,
    "L0": math.pi,
    "levels": "0,1,2",
    "sectors": "minus,plus",
    "t_min": 0.0,
    "t_max": 4.0 * math.pi,
    "t_steps": 200,
    "x_steps": 201,
    "times": "10,20,30",
    "base_order": 64,
    "rel_tol": 1e-11,
    "max_doublings": 6,
    "out": None,
    "format": "csv",
}

CASTS = {
    "A": float, "B": float, "A1": float, "B1": float, "omega": float, "L0": float,
    "t_min": float, "t_max": float, "t_steps": int, "x_steps": int,
    "base_order": int, "rel_tol": float, "max_doublings": int,
    "profile": str, "levels": str, "sectors": str, "times": str, "out": str, "format": str,
}

# default (A, B) for each figure
FIGURE_PARAMS = {1: (5.0, 0.2), 2: (5.0, 0.2), 3: (5.0, 3.4), 4: (5.0, 3.4), 5: (5.0, 3.4), 6: (5.0, 3.4)}
PANEL_LETTERS = {"sinusoidal": "A", "invsqrt": "B"}


@dataclass
class RunConfig:
    params: PTParams
    profile: dynamics.BoundaryProfile
    levels: list
    sectors: list
    t_min: float
    t_max: float
    t_steps: int
    x_steps: int
    quadrature: QuadratureSpec
    output_path: str = None
    format: str = "csv"
    times: list = field(default_factory=lambda: [10.0, 20.0, 30.0])
    explicit: frozenset = frozenset()

    def t_grid(self):
        return np.linspace(self.t_min, self.t_max, self.t_steps)

    def describe(self):
        """Flat parameter listing for file headers."""
        out = {"A": self.params.A, "B": self.params.B}
        out.update(self.profile.describe())
        out.update({
            "levels": ",".join(map(str, self.levels)),
            "sectors": ",".join(s.value for s in self.sectors),
            "t_min": self.t_min, "t_max": self.t_max, "t_steps": self.t_steps,
            "x_steps": self.x_steps,
            "base_order": self.quadrature.base_order,
            "rel_tol": self.quadrature.rel_tol,
            "max_doublings": self.quadrature.max_doublings,
        })
        return out


def make_profile(name, A1=1.0, B1=0.5, omega=1.0, L0=math.pi):
    name = name.strip().lower()
    if name == "sinusoidal":
        return Sinusoidal()
    if name == "invsqrt":
        return InverseSqrtCosine(A1, B1, omega)
    if name == "fixed":
        return Fixed(L0)
    raise ConfigError(f"unknown profile {name!r} (sinusoidal, invsqrt, fixed)")


def _int_list(text):
    return [int(v) for v in str(text).split(",") if v.strip()]


def _float_list(text):
    return [float(v) for v in str(text).split(",") if v.strip()]


def read_config_file(path):
    """Flat ``key = value`` file; ``#`` starts a comment line."""
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        text = Path(path).read_text()
        parser.read_string("[run]\n" + text)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    values = {}
    for key, raw in parser["run"].items():
        key = key.replace("-", "_")
        if key not in CASTS:
            raise ConfigError(f"unknown config key {key!r}")
        try:
            values[key] = CASTS[key](raw.strip())
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {raw!r}") from exc
    return values


def build_config(values, explicit=frozenset()):
    """Validate merged settings into a :class:`RunConfig` (raises ConfigError)."""
    try:
        params = PTParams(values["A"], values["B"])
        profile = make_profile(values["profile"], values["A1"], values["B1"], values["omega"], values["L0"])
        levels = _int_list(values["levels"])
        sectors = [Sector.parse(s) for s in str(values["sectors"]).split(",") if s.strip()]
        quad = QuadratureSpec(values["base_order"], values["rel_tol"], values["max_doublings"])
        times = _float_list(values["times"])
    except (MovingPTError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    if not levels or min(levels) < 0:
        raise ConfigError("levels must be a non-empty list of non-negative integers")
    if not sectors:
        raise ConfigError("at least one sector is required")
    if not values["t_min"] < values["t_max"]:
        raise ConfigError("need t_min < t_max")
    if values["t_steps"] < 2:
        raise ConfigError("t_steps must be >= 2")
    if values["x_steps"] < 2:
        raise ConfigError("x_steps must be >= 2")
    if values["format"] not in ("csv", "json"):
        raise ConfigError("format must be csv or json")
    return RunConfig(
        params=params, profile=profile, levels=levels, sectors=sectors,
        t_min=values["t_min"], t_max=values["t_max"], t_steps=values["t_steps"],
        x_steps=values["x_steps"], quadrature=quad, output_path=values["out"],
        format=values["format"], times=times, explicit=frozenset(explicit),
    )


# -- output -----------------------------------------------------------------


def fmt(value):
    """Shortest round-trip decimal for floats; deterministic across runs."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


@dataclass
class Table:
    title: str
    columns: list
    rows: list
    meta: dict

    def to_csv(self):
        lines = [f"# movingpt {__version__}: {self.title}"]
        lines += [f"# {k} = {fmt(v)}" for k, v in self.meta.items()]
        lines.append(",".join(self.columns))
        lines += [",".join(fmt(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self):
        def conv(v):
            if isinstance(v, (np.floating, float)):
                return float(v)
            if isinstance(v, (np.integer, int)):
                return int(v)
            return v

        doc = {
            "title": self.title,
            "parameters": {k: conv(v) for k, v in self.meta.items()},
            "columns": self.columns,
            "rows": [[conv(v) for v in row] for row in self.rows],
        }
        return json.dumps(doc, indent=1) + "\n"

    def render(self, format):
        return self.to_json() if format == "json" else self.to_csv()


def emit(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


# -- commands ---------------------------------------------------------------


def cmd_spectrum(config):
    rows = []
    for n in config.levels:
        e = energy(n, config.params)
        rows.append([n, e, e])
    return Table("spectrum", ["n", "E_minus", "E_plus"], rows, config.describe())


def cmd_observables(config):
    records = observables.sweep(
        config.levels, config.sectors, config.t_grid(), config.profile, config.params, config.quadrature)
    cols = ["t", "n", "sector", "L", "delta_x", "delta_p", "product", "avg_energy_re", "avg_energy_im"]
    rows = []
    for rec in records:
        r = rec.as_row()
        rows.append([r["t"], r["n"], r["sector"], float(config.profile.length(rec.t)), r["delta_x"],
                     r["delta_p"], r["product"], r["avg_energy_re"], r["avg_energy_im"]])
    return Table("observables", cols, rows, config.describe())


def _x_grid(L, steps, clip=0.0):
    return np.linspace(clip * L, (1.0 - clip) * L, steps)


def cmd_density(config):
    rows = []
    for t in config.t_grid():
        L = float(config.profile.length(t))
        xs = _x_grid(L, config.x_steps)
        for n in config.levels:
            for s in config.sectors:
                rho = dynamics.density(n, s, xs, t, config.profile, config.params)
                rows.extend([t, x, n, s.value, r] for x, r in zip(xs, rho))
    return Table("density", ["t", "x", "n", "sector", "density"], rows, config.describe())


WALL_CLIP = 0.01


def _potential_rows(config, times):
    rows = []
    for t in times:
        L = float(config.profile.length(t))
        xs = _x_grid(L, config.x_steps, WALL_CLIP)
        vm = dynamics.potential_xt(xs, t, config.profile, config.params, Sector.MINUS)
        vp = dynamics.potential_xt(xs, t, config.profile, config.params, Sector.PLUS)
        rows.extend([t, x, a, b] for x, a, b in zip(xs, vm, vp))
    return rows


def cmd_potential(config):
    meta = dict(config.describe(), x_clip=f"[{WALL_CLIP}*L, {1 - WALL_CLIP}*L]")
    return Table("potential", ["t", "x", "V_minus", "V_plus"], _potential_rows(config, config.t_grid()), meta)


def _series_table(config, title, quantities):
    """Wide time series: one column per (quantity, n, sector)."""
    t = config.t_grid()
    cols, data = ["t"], [t]
    for label, fn in quantities:
        for n in config.levels:
            for s in config.sectors:
                cols.append(f"{label}_{n}_{s.value}")
                data.append(np.asarray(fn(n, s, t), dtype=float))
    rows = [list(r) for r in zip(*data)]
    return Table(title, cols, rows, config.describe())


def _figure_configs(config, figure_id):
    """Per-panel configs: the figure's default parameters unless overridden explicitly."""
    A, B = FIGURE_PARAMS[figure_id]
    values = {"A": A, "B": B}
    if "A" in config.explicit:
        values["A"] = config.params.A
    if "B" in config.explicit:
        values["B"] = config.params.B
    try:
        params = PTParams(values["A"], values["B"])
    except MovingPTError as exc:
        raise ConfigError(str(exc)) from exc
    if "profile" in config.explicit:
        profiles = [config.profile]
    else:
        A1 = config.profile.A1 if isinstance(config.profile, InverseSqrtCosine) else 1.0
        B1 = config.profile.B1 if isinstance(config.profile, InverseSqrtCosine) else 0.5
        om = config.profile.omega if isinstance(config.profile, InverseSqrtCosine) else 1.0
        profiles = [Sinusoidal(), InverseSqrtCosine(A1, B1, om)]
    panels = []
    for prof in profiles:
        c = RunConfig(**{**config.__dict__, "params": params, "profile": prof})
        panels.append((PANEL_LETTERS.get(prof.name, prof.name), c))
    return panels


def cmd_figure(config, figure_id):
    """Tables keyed by file stem, one per panel."""
    if figure_id not in FIGURE_PARAMS:
        raise ConfigError("figure id must be in 1..6")
    out = {}
    for letter, c in _figure_configs(config, figure_id):
        p, prof, spec = c.params, c.profile, c.quadrature
        stem = f"fig{figure_id}{letter}_{prof.name}"
        if figure_id == 1:
            meta = dict(c.describe(), times=",".join(map(fmt, c.times)),
                        x_clip=f"[{WALL_CLIP}*L, {1 - WALL_CLIP}*L]")
            out[stem] = Table(f"figure 1 panel {letter}: V-(x,t) and V+(x,t)",
                              ["t", "x", "V_minus", "V_plus"], _potential_rows(c, c.times), meta)
        elif figure_id == 2:
            for n in c.levels:
                rows = []
                for t in c.times:
                    L = float(prof.length(t))
                    xs = _x_grid(L, c.x_steps)
                    rm = dynamics.density(n, Sector.MINUS, xs, t, prof, p)
                    rp = dynamics.density(n, Sector.PLUS, xs, t, prof, p)
                    rows.extend([t, x, a, b] for x, a, b in zip(xs, rm, rp))
                meta = dict(c.describe(), n=n, times=",".join(map(fmt, c.times)))
                out[f"fig2{letter}_n{n}_{prof.name}"] = Table(
                    f"figure 2 panel {letter}, n = {n}: densities", ["t", "x", "rho_minus", "rho_plus"], rows, meta)
        elif figure_id == 3:
            out[stem] = _series_table(c, f"figure 3 panel {letter}: average energy", [
                ("re_E", lambda n, s, t: np.real(observables.avg_energy(n, s, t, prof, p, spec))),
                ("im_E", lambda n, s, t: np.imag(observables.avg_energy(n, s, t, prof, p, spec))),
            ])
        elif figure_id in (4, 5):
            out[stem] = _series_table(c, f"figure {figure_id} panel {letter}: RMS in position and momentum", [
                ("dx", lambda n, s, t: observables.delta_x(n, s, t, prof, p, spec)),
                ("dp", lambda n, s, t: observables.delta_p(n, s, t, prof, p, spec)),
            ])
        else:
            out[stem] = _series_table(c, f"figure 6 panel {letter}: uncertainty product", [
                ("product", lambda n, s, t: observables.uncertainty_product(n, s, t, prof, p, spec)),
            ])
    return out


def cmd_validate(config):
    checks = validation.run_suite(config)
    summary = validation.summarize(checks)
    report = {"checks": checks, "summary": summary, "parameters": config.describe()}
    return report, (0 if summary["all_pass"] else 1)


# -- argument handling --------------------------------------------------------


def _common_flags():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run settings")
    g.add_argument("--config", help="key = value settings file")
    g.add_argument("--out", help="output file (figure: output directory)")
    g.add_argument("--format", choices=["csv", "json"])
    g.add_argument("--A", dest="A", type=float)
    g.add_argument("--B", dest="B", type=float)
    g.add_argument("--profile", choices=["sinusoidal", "invsqrt", "fixed"])
    g.add_argument("--A1", dest="A1", type=float)
    g.add_argument("--B1", dest="B1", type=float)
    g.add_argument("--omega", type=float)
    g.add_argument("--L0", dest="L0", type=float)
    g.add_argument("--levels", help="comma-separated quantum numbers")
    g.add_argument("--sectors", help="comma-separated: minus,plus")
    g.add_argument("--t-min", dest="t_min", type=float)
    g.add_argument("--t-max", dest="t_max", type=float)
    g.add_argument("--t-steps", dest="t_steps", type=int)
    g.add_argument("--x-steps", dest="x_steps", type=int)
    g.add_argument("--times", help="snapshot times for figures 1 and 2")
    g.add_argument("--base-order", dest="base_order", type=int)
    g.add_argument("--rel-tol", dest="rel_tol", type=float)
    g.add_argument("--max-doublings", dest="max_doublings", type=int)
    return p


def make_parser():
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="movingpt", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="energies of both sectors")
    sub.add_parser("observables", parents=[common], help="dx, dp, product, average energy vs t")
    sub.add_parser("density", parents=[common], help="|psi|^2 on the (t, x) grid")
    sub.add_parser("potential", parents=[common], help="V-(x,t), V+(x,t) on the (t, x) grid")
    fig = sub.add_parser("figure", parents=[common], help="data series behind one of the six standard plots")
    fig.add_argument("figure_id", type=int, choices=range(1, 7), metavar="{1-6}")
    sub.add_parser("validate", parents=[common], help="run the invariant suite, JSON report")
    return parser


def resolve(args):
    """defaults < config file < flags."""
    values = dict(DEFAULTS)
    explicit = set()
    if args.config:
        file_values = read_config_file(args.config)
        values.update(file_values)
        explicit.update(file_values)
    for key in DEFAULTS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
            explicit.add(key)
    return build_config(values, explicit)


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve(args)
        if args.command == "figure":
            tables = cmd_figure(config, args.figure_id)
            outdir = Path(config.output_path or ".")
            ext = "json" if config.format == "json" else "csv"
            for stem, table in tables.items():
                emit(table.render(config.format), outdir / f"{stem}.{ext}")
            return 0
        if args.command == "validate":
            report, code = cmd_validate(config)
            emit(json.dumps(report, indent=1) + "\n", config.output_path)
            return code
        command = {
            "spectrum": cmd_spectrum,
            "observables": cmd_observables,
            "density": cmd_density,
            "potential": cmd_potential,
        }[args.command]
        emit(command(config).render(config.format), config.output_path)
        return 0
    except ConfigError as exc:
        print(f"movingpt: configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
