"""Command-line interface: experiments in, CSV out.

Subcommands: ``bound`` (Gaussian bound parameters, optionally with
Monte-Carlo columns), ``simulate`` (ergodic-capacity or bound-CDF
experiments), ``select`` (one seeded selection), ``adaptive`` (adaptive
partial-CSI experiments) and ``sweep`` (capacity vs acquired CSI).

Every run writes UTF-8 CSV with LF line endings to stdout or ``--out``:
comment lines ``# key=value`` echo the fully resolved configuration,
floats carry 9 significant digits, and all sampling derives from
``--seed``, so identical invocations produce byte-identical files.
Parameters resolve in order recipe < config file < explicit flags.

Exit codes: 0 success, 2 argument or validation errors, 1 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .bounds import QuadratureError, approx_ergodic_capacity, bf_bound_params, mrc_bound_params
from .channel import derive_stream, sample_channel
from .montecarlo import (
    ExperimentConfig,
    run_adaptive,
    run_cdf,
    run_ergodic,
    sample_bf_bound,
    sample_mrc_bound,
    snr_db_to_rho,
    sweep_csi,
)
from .recipes import figure_recipe
from .selection import DEFAULT_SUBSET_GUARD, SELECTORS

__all__ = ["main", "entry", "build_parser"]


def _floats(text: str) -> list[float]:
    return [float(x) for x in str(text).split(",") if x.strip() != ""]


def _ints(text: str) -> list[int]:
    return [int(x) for x in str(text).split(",") if x.strip() != ""]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".9g")
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    return str(v)


def _aslist(v) -> list:
    return list(v) if isinstance(v, (list, tuple)) else [v]


_DEFAULTS: dict[str, dict] = {
    "bound": dict(kind="bf", nr=128, nt=8, l=4, l_mrc=None, snr_db=[8.0], trials=0, seed=1),
    "simulate": dict(mode="ergodic", nr=64, nt=8, l=3, snr_db=[0.0, 5.0, 10.0], trials=1000,
                     seed=1, algo="greedy", jobs=1),
    "select": dict(algo="bab", nr=16, nt=4, l=4, snr_db=[5.0], seed=1,
                   guard=DEFAULT_SUBSET_GUARD),
    "adaptive": dict(nr=64, nt=8, l=5, snr_db=[0.0, 10.0, 20.0], trials=200, seed=1,
                     algo="bab", batch_size=None, target="level09", jobs=1),
    "sweep": dict(nr=128, nt=8, l=4, snr_db=[0.0], csi_grid=None, eta=0.0, trials=200,
                  seed=1, algo="greedy", jobs=1),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="antsel", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"antsel {__version__}")
    sub = p.add_subparsers(dest="cmd")

    def common(sp, trials=True, algo=None, jobs=False):
        sp.add_argument("--nr", type=int, help="receive antennas (rows)")
        sp.add_argument("--nt", type=int, help="transmit antennas (columns)")
        sp.add_argument("--l", type=int, help="antennas to select (RF chains)")
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--snr-db", type=_floats, dest="snr_db",
                       help="normalized SNR grid in dB, comma separated")
        g.add_argument("--snr-total", type=_floats, dest="snr_total",
                       help="total SNR grid in dB; divided by nt before use")
        sp.add_argument("--seed", type=int, help="master seed for all sampling")
        if trials:
            sp.add_argument("--trials", type=int, help="Monte-Carlo trials")
        if algo is not None:
            sp.add_argument("--algo", choices=algo, help="selection algorithm")
        if jobs:
            sp.add_argument("--jobs", type=int, help="worker processes for trials")
        sp.add_argument("--recipe", help="figure recipe preset (fig1..fig12)")
        sp.add_argument("--config", help="JSON config file; flags override its keys")
        sp.add_argument("--out", help="output CSV path (default: stdout)")

    sp = sub.add_parser("bound", help="Gaussian bound parameters, optional MC columns")
    sp.add_argument("kind", choices=["bf", "mrc", "both"])
    common(sp)

    sp = sub.add_parser("simulate", help="ergodic-capacity or bound-CDF experiment")
    sp.add_argument("mode", choices=["ergodic", "cdf"])
    common(sp, algo=sorted(SELECTORS), jobs=True)

    sp = sub.add_parser("select", help="one subset selection on a seeded channel")
    common(sp, trials=False, algo=sorted(SELECTORS))
    sp.add_argument("--guard", type=int, help="exhaustive-search subset guard")

    sp = sub.add_parser("adaptive", help="adaptive partial-CSI selection experiment")
    common(sp, algo=["es", "bab", "greedy"], jobs=True)
    sp.add_argument("--batch-size", type=int, dest="batch_size",
                    help="CSI rows acquired per step (default: l for es/bab, 4 for greedy)")
    sp.add_argument("--target", help="level09, level:<frac> or value:<bits>")

    sp = sub.add_parser("sweep", help="capacity and efficiency vs acquired CSI rows")
    common(sp, algo=sorted(SELECTORS), jobs=True)
    sp.add_argument("--csi-grid", type=_ints, dest="csi_grid",
                    help="CSI row counts, comma separated")
    sp.add_argument("--eta", type=float, help="training cost per acquisition round")

    return p


def _resolve_params(args: argparse.Namespace) -> dict:
    """Merge defaults, recipe, config file and explicit flags (last wins)."""
    params = dict(_DEFAULTS[args.cmd])
    recipe_name = getattr(args, "recipe", None)
    if recipe_name:
        recipe = figure_recipe(recipe_name)
        if recipe.subcommand != args.cmd:
            raise ValueError(
                f"recipe {recipe_name!r} belongs to the {recipe.subcommand!r} subcommand"
            )
        params.update(recipe.params)
        params["recipe"] = recipe_name
    config_path = getattr(args, "config", None)
    if config_path:
        with open(config_path, encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ValueError(f"config file {config_path} must hold a JSON object")
        unknown = set(loaded) - set(params) - {"mode", "kind"}
        if unknown:
            raise ValueError(f"unknown config keys in {config_path}: {sorted(unknown)}")
        params.update(loaded)
        params["config"] = config_path
    for key, value in vars(args).items():
        if key in ("cmd", "recipe", "config", "out", "snr_total") or value is None:
            continue
        params[key] = value

    snr_total = getattr(args, "snr_total", None)
    if snr_total is not None:
        # normalized SNR is the total SNR divided by the transmit count
        offsets = [10.0 * math.log10(nt) for nt in _aslist(params["nt"])]
        if len(set(offsets)) > 1:
            raise ValueError("--snr-total needs a single nt value")
        params["snr_db"] = [s - offsets[0] for s in snr_total]
    if isinstance(params.get("csi_grid"), str):
        params["csi_grid"] = _ints(params["csi_grid"])
    return params


def _blocks(params: dict):
    """Expand list-valued nr/nt/l into per-block scalar combinations."""
    for nr in _aslist(params["nr"]):
        for nt in _aslist(params["nt"]):
            for l in _aslist(params["l"]):
                yield int(nr), int(nt), int(l)


def _filtered_grid(params: dict, nr: int, l: int) -> tuple[int, ...]:
    grid = params.get("csi_grid")
    if not grid:
        grid = sorted({max(l, 4 * k) for k in range(1, nr // 4 + 1)} | {nr})
    grid = tuple(u for u in grid if l <= u <= nr)
    if not grid:
        raise ValueError(f"csi grid has no entries within [l={l}, nr={nr}]")
    return grid


# --- subcommand runners ---------------------------------------------------------


def _run_bound(params: dict):
    header = ["kind", "nr", "nt", "l", "snr_db", "u", "mu", "var", "mc_mean", "mc_var", "trials"]
    kinds = ["bf", "mrc"] if params["kind"] == "both" else [params["kind"]]
    trials = int(params["trials"])
    rows = []
    for nr, nt, l in _blocks(params):
        for kind in kinds:
            l_kind = l if kind == "bf" or not params.get("l_mrc") else int(params["l_mrc"])
            if l_kind > nr:
                raise ValueError(f"need l <= nr, got l={l_kind}, nr={nr}")
            for snr in params["snr_db"]:
                rho = snr_db_to_rho(snr)
                b = (bf_bound_params if kind == "bf" else mrc_bound_params)(nr, nt, l_kind, rho)
                mc_mean = mc_var = None
                if trials > 0:
                    sampler = sample_bf_bound if kind == "bf" else sample_mrc_bound
                    draws = np.array(
                        [sampler(derive_stream(params["seed"], t), nr, nt, l_kind, rho)
                         for t in range(trials)]
                    )
                    mc_mean = float(draws.mean())
                    mc_var = float(draws.var(ddof=1)) if trials > 1 else 0.0
                rows.append([kind, nr, nt, l_kind, snr, b.threshold_u, b.mean, b.variance,
                             mc_mean, mc_var, trials])
    return header, rows


def _experiment_config(params: dict, nr: int, nt: int, l: int, csi=None) -> ExperimentConfig:
    return ExperimentConfig(
        master_seed=int(params["seed"]),
        trials=int(params["trials"]),
        nr=nr,
        nt=nt,
        l=l,
        snr_db_grid=tuple(float(s) for s in params["snr_db"]),
        eta=float(params.get("eta") or 0.0),
        selector=params.get("algo", "greedy"),
        csi_grid=csi,
    )


def _run_simulate(params: dict):
    jobs = int(params.get("jobs") or 1)
    if params["mode"] == "ergodic":
        header = ["nr", "nt", "l", "selector", "trials", "snr_db", "cap_mean", "cap_var",
                  "cap_se", "bound_kind", "bound_mc_mean", "bound_mc_se", "asym_mean",
                  "asym_var", "approx_capacity"]
        rows = []
        for nr, nt, l in _blocks(params):
            res = run_ergodic(_experiment_config(params, nr, nt, l), jobs=jobs)
            for pt in res.points:
                rows.append([nr, nt, l, params["algo"], params["trials"], pt.snr_db,
                             pt.capacity.mean, pt.capacity.variance, pt.capacity.std_error,
                             pt.bound_kind, pt.bound_mc.mean, pt.bound_mc.std_error,
                             pt.asym_mean, pt.asym_var, pt.approx_capacity])
        return header, rows

    header = ["nr", "nt", "l", "snr_db", "bound_kind", "sample", "ecdf", "gauss_cdf",
              "mu", "var", "ks"]
    rows = []
    for nr, nt, l in _blocks(params):
        res = run_cdf(_experiment_config(params, nr, nt, l), jobs=jobs)
        gcdf = res.gaussian_cdf
        for k in range(res.stats.n):
            rows.append([nr, nt, l, res.snr_db, res.bound_kind,
                         float(res.stats.ecdf_values[k]), float(res.stats.ecdf_fractions[k]),
                         float(gcdf[k]), res.gaussian.mean, res.gaussian.variance, res.ks])
    return header, rows


def _run_select(params: dict):
    header = ["nr", "nt", "l", "snr_db", "seed", "algo", "indices", "capacity",
              "visited_nodes", "csi_rows_used"]
    rows = []
    for nr, nt, l in _blocks(params):
        rng = derive_stream(int(params["seed"]), 0)
        h = sample_channel(rng, nr, nt)
        snr = float(params["snr_db"][0])
        algo = params["algo"]
        kwargs = {"guard": int(params["guard"])} if algo == "es" else {}
        res = SELECTORS[algo](h, l, snr_db_to_rho(snr), **kwargs)
        rows.append([nr, nt, l, snr, params["seed"], algo,
                     " ".join(str(i) for i in res.indices), res.capacity_bits,
                     res.visited_nodes, res.csi_rows_used])
    return header, rows


def _run_adaptive(params: dict):
    header = ["nr", "nt", "l", "inner", "batch_size", "target_spec", "trials", "snr_db",
              "target", "reached_rate", "csi_mean", "csi_se", "cac_mean", "cac_se",
              "visited_mean", "visited_se", "full_cap_mean", "full_visited_mean"]
    inner = {"es": "exhaustive", "bab": "bab", "greedy": "greedy"}[params["algo"]]
    rows = []
    for nr, nt, l in _blocks(params):
        batch = params.get("batch_size")
        if batch is None:
            batch = l if inner in ("exhaustive", "bab") else 4
        cfg = _experiment_config(dict(params, algo="greedy"), nr, nt, l)
        res = run_adaptive(cfg, int(batch), inner, str(params["target"]),
                           jobs=int(params.get("jobs") or 1))
        for pt in res.points:
            rows.append([nr, nt, l, inner, batch, params["target"], params["trials"],
                         pt.snr_db, pt.target, pt.reached_rate, pt.csi_rows.mean,
                         pt.csi_rows.std_error, pt.capacity.mean, pt.capacity.std_error,
                         pt.visited.mean, pt.visited.std_error, pt.full_capacity.mean,
                         pt.full_visited.mean])
    return header, rows


def _run_sweep(params: dict):
    header = ["nr", "nt", "l", "selector", "eta", "trials", "snr_db", "csi_rows",
              "cap_mean", "cap_se", "eff_mean", "eff_se", "r1", "r2", "full_mean",
              "asym_mean", "approx_capacity"]
    rows = []
    for nr, nt, l in _blocks(params):
        grid = _filtered_grid(params, nr, l)
        res = sweep_csi(_experiment_config(params, nr, nt, l, csi=grid),
                        jobs=int(params.get("jobs") or 1))
        for snr in res.config.snr_db_grid:
            rho = snr_db_to_rho(snr)
            if l <= nt:
                asym = bf_bound_params(nr, nt, l, rho).mean
                approx = approx_ergodic_capacity(nr, nt, l, rho)
            else:
                asym = mrc_bound_params(nr, nt, l, rho).mean
                approx = None
            for pt in res.points:
                if pt.snr_db != snr:
                    continue
                rows.append([nr, nt, l, params["algo"], res.config.eta, params["trials"],
                             pt.snr_db, pt.csi_rows, pt.capacity.mean,
                             pt.capacity.std_error, pt.efficient.mean,
                             pt.efficient.std_error, pt.r1, pt.r2, pt.full_mean,
                             asym, approx])
    return header, rows


_RUNNERS = {
    "bound": _run_bound,
    "simulate": _run_simulate,
    "select": _run_select,
    "adaptive": _run_adaptive,
    "sweep": _run_sweep,
}


def _render_csv(cmd: str, params: dict, header: list[str], rows: list[list]) -> str:
    lines = [f"# antsel={__version__}", f"# subcommand={cmd}"]
    for key in sorted(params):
        if key == "jobs":  # execution detail, not part of the experiment
            continue
        lines.append(f"# {key}={_fmt(params[key])}")
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.cmd is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        params = _resolve_params(args)
        header, rows = _RUNNERS[args.cmd](params)
        text = _render_csv(args.cmd, params, header, rows)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"antsel: error: {msg}", file=sys.stderr)
        return 2
    except (QuadratureError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"antsel: numeric failure: {exc}", file=sys.stderr)
        return 1
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        return 0
    try:
        sys.stdout.write(text)
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream consumer closed the pipe (e.g. head); exit quietly
        import os

        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
