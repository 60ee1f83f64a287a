"""Command-line entry point: run a model, write plot-ready CSV.

Exit status: 0 on success (infeasible design points are rows, not
errors), 1 for a malformed config or bad value, 2 for an unknown
variable or usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import sys
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np

from cryolink import mzm, photonic, scaling, subthz, thermal
from cryolink.config import ConfigError, Settings, UnknownKeyError
from cryolink.solution import LinkSolution
from cryolink.units import watts_to_dbm

logger = logging.getLogger("cryolink")

PRESETS = {
    "photonic": ("fig4", "fig6", "fig7"),
    "subthz": ("fig10",),
    "nonlinearity": ("fig9",),
    "fom": ("fig11",),
    "project": ("fig12",),
    "passive-heat": (),
    "sweep": (),
}


class Table:
    def __init__(self, columns: Sequence[str], rows: Iterable[Sequence] = ()):
        self.columns = tuple(columns)
        self.rows = [tuple(r) for r in rows]


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".9g")
    return str(v)


def write_csv(table: Table, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])


def _grid(start: float, stop: float, points: int, scale: str = "linear") -> list[float]:
    if points < 2:
        raise ConfigError("a sweep needs at least 2 points")
    if not start < stop:
        raise ConfigError(f"sweep start ({start}) must be below stop ({stop})")
    if scale == "log":
        if start <= 0:
            raise ConfigError("log sweeps need a positive start")
        return [float(x) for x in np.geomspace(start, stop, points)]
    if scale != "linear":
        raise ConfigError(f"unknown sweep scale {scale!r}")
    return [float(x) for x in np.linspace(start, stop, points)]


def _peak_grid(s: Settings, prefix: str = "") -> list[float]:
    return _grid(
        s.float(f"grid.{prefix}peak_start_dbm"),
        s.float(f"grid.{prefix}peak_stop_dbm"),
        s.int(f"grid.{prefix}peak_points"),
    )


# commands -----------------------------------------------------------------


def cmd_passive_heat(s: Settings, args) -> Table:
    materials = thermal.load_materials(args.materials)
    try:
        cables = [
            thermal.coax(
                materials,
                s.float("passive.coax_outer_diameter_m"),
                s.float("passive.coax_outer_wall_m"),
                s.float("passive.coax_center_diameter_m"),
                s.float("passive.coax_length_m"),
            ),
            thermal.optical_fiber(
                materials, s.float("passive.fiber_cladding_diameter_m"), s.float("passive.fiber_length_m")
            ),
            thermal.dielectric_waveguide(
                materials,
                s.float("passive.waveguide_width_m"),
                s.float("passive.waveguide_height_m"),
                s.float("passive.waveguide_length_m"),
            ),
        ]
    except KeyError as exc:
        raise ConfigError(f"materials file lacks {exc}") from None
    chain = s.stages()
    try:
        last = chain.index(s.get("passive.lowest_stage"))
    except KeyError:
        raise ConfigError(f"passive.lowest_stage: no stage named {s.get('passive.lowest_stage')!r}") from None
    temps = [st.temperature for st in chain.stages[: last + 1]]
    spans = list(zip(temps[1:], temps))  # (cold, hot) between neighbouring stages
    coax_span = (s.float("passive.coax_t_cold_k"), s.float("passive.coax_t_hot_k"))
    rows = []
    for cable in cables:
        cable_spans = [coax_span] if cable.name == "coax" else spans
        for t_cold, t_hot in cable_spans:
            try:
                load = thermal.passive_heat_load(cable, t_cold, t_hot)
            except ValueError as exc:
                logger.warning("%s %g-%g K: %s", cable.name, t_cold, t_hot, exc)
                load = math.nan
            rows.append((cable.name, t_cold, t_hot, load))
    return Table(("cable", "t_cold_k", "t_hot_k", "heat_load_w"), rows)


def cmd_photonic(s: Settings, args) -> Table:
    t_q = s.t_qubit()
    if args.preset == "fig4":
        d30, d4 = s.photonic_design("30mK"), s.photonic_design("4K")
        rows = []
        for p in _peak_grid(s):
            a, b = photonic.solve_min_popt(p, d30, t_q), photonic.solve_min_popt(p, d4, t_q)
            rows.append((p, a.p_opt, a.z_load, b.z_load, a.feasible))
        return Table(("p_qubit_peak_dbm", "p_opt_w", "z_load_30mk_ohm", "z_load_4k_ohm", "feasible"), rows)
    if args.preset == "fig6":
        sweep = photonic.noise_breakdown_sweep(_peak_grid(s), s.photonic_design(), t_q)
        if sweep.crossover_dbm is not None:
            logger.info("shot/RIN crossover at peak %.2f dBm", sweep.crossover_dbm)
        logger.info(
            "feasibility edge at peak %.2f dBm", photonic.feasibility_edge_dbm(s.photonic_design(), t_q)
        )
        rows = [
            (r.p_qubit_peak_dbm, r.p_opt, r.noise.shot, r.noise.rin, r.noise.eom_thermal,
             r.noise.total, r.limiting_source.value, r.feasible)
            for r in sweep.rows
        ]
        return Table(
            ("p_qubit_peak_dbm", "p_opt_w", "shot_a2_hz", "rin_a2_hz", "eom_thermal_a2_hz",
             "total_a2_hz", "limiting_source", "feasible"),
            rows,
        )
    if args.preset == "fig7":
        grid = _grid(
            s.float("grid.attenuation_start_db"),
            s.float("grid.attenuation_stop_db"),
            s.int("grid.attenuation_points"),
        )
        design = s.photonic_design()
        rows = []
        for p in s.floats("grid.zl_peaks_dbm"):
            for a, z in photonic.zl_vs_attenuation(p, grid, design, t_q):
                rows.append((p, a, z))
        return Table(("p_qubit_peak_dbm", "attenuation_db", "z_load_ohm"), rows)
    design = s.photonic_design()
    return _solution_table(photonic.solve_min_popt(p, design, t_q) for p in _peak_grid(s))


def _solution_table(solutions: Iterable[LinkSolution]) -> Table:
    return Table(LinkSolution.CSV_COLUMNS, (sol.csv_row() for sol in solutions))


def cmd_subthz(s: Settings, args) -> Table:
    t_q = s.t_qubit()
    if args.preset == "fig10":
        rows = subthz.subthz_heat_sweep(
            _peak_grid(s, "heat_"),
            s.subthz_design(),
            s.photonic_design("4K"),
            s.photonic_design("4K", wdm=True),
            t_q,
        )
        return Table(subthz.HeatRow.CSV_COLUMNS, (r.csv_row() for r in rows))
    design = s.subthz_design()
    return _solution_table(subthz.solve_min_psubthz(p, design, t_q) for p in _peak_grid(s))


def cmd_nonlinearity(s: Settings, args) -> Table:
    grid = _grid(
        s.float("nonlinearity.eps_start"),
        s.float("nonlinearity.eps_stop"),
        s.int("nonlinearity.eps_points"),
        "log",
    )
    target = s.float("nonlinearity.target_dr_db")
    eps = mzm.solve_epsilon_for_dr(target)
    logger.info(
        "largest eps for %.1f dB dynamic range: %.4f (power penalty %.1fx); "
        "eps = 0.15 gives %.1f dB",
        target, eps, mzm.popt_scale_for_eps(eps), mzm.dynamic_range_db(0.15),
    )
    rows = mzm.distortion_table(
        grid,
        s.float("nonlinearity.responsivity_a_per_w"),
        s.float("nonlinearity.p_opt_w"),
        s.float("nonlinearity.z_load_ohm"),
    )
    return Table(("epsilon", "p_fund_dbm", "p_im3_dbm", "p_im5_dbm"), rows)


def _resolved_fom_scenarios(s: Settings, p: float) -> list[scaling.ScalingScenario]:
    t_q = s.t_qubit()
    sub = subthz.solve_min_psubthz(p, s.subthz_design(), t_q)
    single = photonic.solve_min_popt(p, s.photonic_design("4K"), t_q)
    wdm = photonic.solve_min_popt(p, s.photonic_design("4K", wdm=True), t_q)

    def heat(sol):
        return sol.p_active if sol.feasible else math.nan

    cooling = s.float("scaling.p_cooling_w")
    fiber, wg = s.float("scaling.fiber_pitch_m"), s.float("scaling.waveguide_pitch_m")
    return [
        scaling.ScalingScenario("subthz", "fixed", cooling, heat(sub), wg, 1, t_q),
        scaling.ScalingScenario("photonic_4k", "fixed", cooling, heat(single), fiber, 1, t_q),
        scaling.ScalingScenario(
            "photonic_wdm", "fixed", cooling, heat(wdm), fiber, s.int("photonic.wdm_channels"), t_q
        ),
    ]


def cmd_fom(s: Settings, args) -> Table:
    rows = []
    for p in _peak_grid(s, "heat_"):
        rows.append((p, *(scaling.fom(sc) for sc in _resolved_fom_scenarios(s, p))))
    return Table(("p_qubit_peak_dbm", "fom_subthz_per_m", "fom_photonic_4k_per_m", "fom_photonic_wdm_per_m"), rows)


def cmd_project(s: Settings, args) -> Table:
    scenarios = scaling.load_scenarios(args.scenarios)
    rows = scaling.projection_table(scenarios)
    return Table(scaling.ProjectionRow.CSV_COLUMNS, (r.csv_row() for r in rows))


SWEEP_TARGETS = ("photonic", "subthz")


def cmd_sweep(s: Settings, args) -> Table:
    var = args.var
    if var != "qubit.p_peak_dbm":
        s.get(var)  # raises UnknownKeyError for names the model lacks
    grid = _grid(args.start, args.stop, args.points, args.scale)
    rows = []
    for x in grid:
        s.set(var, repr(x))
        p = s.float("qubit.p_peak_dbm")
        if args.target == "subthz":
            sol = subthz.solve_min_psubthz(p, s.subthz_design(), s.t_qubit())
        else:
            sol = photonic.solve_min_popt(p, s.photonic_design(), s.t_qubit())
        rows.append((x, *sol.csv_row()))
    return Table((var, *LinkSolution.CSV_COLUMNS), rows)


COMMANDS = {
    "passive-heat": cmd_passive_heat,
    "photonic": cmd_photonic,
    "subthz": cmd_subthz,
    "nonlinearity": cmd_nonlinearity,
    "fom": cmd_fom,
    "project": cmd_project,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cryolink", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log model diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--preset", choices=PRESETS[name] or None, help="figure preset")
        p.add_argument("--config", type=Path, help="INI file overriding the defaults")
        p.add_argument("--out", type=Path, help="CSV output path (default: stdout)")
        p.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                       help="override one setting, e.g. photonic.responsivity_a_per_w=0.8")
        p.add_argument("--materials", type=Path, help="thermal conductivity fit file")
        p.add_argument("--plot-script", type=Path, help="also write a gnuplot script for the CSV")
        if name == "project":
            p.add_argument("--scenarios", type=Path, help="scenario INI file")
        if name == "sweep":
            p.add_argument("--var", required=True, help="setting to sweep, as section.key")
            p.add_argument("--start", type=float, required=True)
            p.add_argument("--stop", type=float, required=True)
            p.add_argument("--points", type=int, required=True)
            p.add_argument("--scale", choices=("linear", "log"), default="linear")
            p.add_argument("--target", choices=SWEEP_TARGETS, default="photonic")
    return parser


def plot_script(table: Table, csv_path: Path, title: str) -> str:
    x = table.columns[0]
    lines = [
        f"# {title}",
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set xlabel '{x}'",
        "set logscale y",
        "plot \\",
    ]
    numeric = [
        i for i, c in enumerate(table.columns[1:], start=2)
        if table.rows and isinstance(table.rows[0][i - 1], (int, float)) and not isinstance(table.rows[0][i - 1], bool)
    ]
    lines += [f"  '{csv_path.name}' using 1:{i} with linespoints" + (", \\" if k < len(numeric) - 1 else "")
              for k, i in enumerate(numeric)]
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        settings = Settings.load(args.config, args.overrides)
        table = COMMANDS[args.command](settings, args)
    except UnknownKeyError as exc:
        print(f"cryolink: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, ValueError) as exc:
        print(f"cryolink: {exc}", file=sys.stderr)
        return 1

    buf = io.StringIO()
    write_csv(table, buf)
    if args.out is None:
        sys.stdout.write(buf.getvalue())
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    if args.plot_script is not None:
        csv_path = args.out or Path("data.csv")
        title = f"{args.command} {args.preset or ''}".strip()
        args.plot_script.write_text(plot_script(table, csv_path, title), encoding="utf-8")
    return 0
