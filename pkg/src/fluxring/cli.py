"""Command-line front end writing deterministic CSV/JSON data files.

Exit codes: 0 success, 2 invalid arguments, 3 numerical failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Any, Optional

import numpy as np

from . import __version__
from .core import ConvergenceError
from .dynamics import (
    ExperimentConfig,
    chain_transport_experiment,
    quench_experiment,
    teleport_experiment,
)
from .hamiltonians import (
    DISPERSIONS,
    MAX_CHAIN_SITES,
    SystemSpec,
    build_chain,
    build_driven,
    build_ising_two_qubit,
    build_single_fluxon,
    build_two_fluxon,
    build_two_fluxon_physical,
    nominal_single_fluxon_coefficients,
    nominal_two_fluxon_coefficients,
    pauli_decompose,
)
from .spectra import BAND_BELL_LABELS, QUOTED_BAND_BELL_LABELS, band_sweep, bloch_sweep

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

COMMANDS = ("spectrum", "bloch", "teleport", "quench", "chain", "decompose")
SPECTRUM_SYSTEMS = ("single", "two-fluxon", "two-fluxon-kinetic", "chain")
DECOMPOSE_SYSTEMS = ("single", "two-fluxon", "two-fluxon-kinetic", "driven", "ising", "chain")

DEFAULTS: dict[str, dict[str, Any]] = {
    "spectrum": {"system": "single", "delta": None, "m_min": -7, "m_max": 8,
                 "dispersion": "quadratic", "orientations": None, "n": 3},
    "bloch": {"delta": 5.0, "m_min": -7, "m_max": 8, "dispersion": "quadratic"},
    "teleport": {"delta": 1.0, "m": 0, "t_max": 12.0, "dt": 0.01, "threshold": 0.99},
    "quench": {"delta": 1.0, "g": 0.5, "t_max": 20.0, "dt": 0.01},
    "chain": {"n": 4, "link_ms": None, "delta": 1.0, "excited_site": 0,
              "t_max": 20.0, "dt": 0.01, "dispersion": "quadratic"},
    "decompose": {"system": "two-fluxon", "m": 0, "delta": 1.0, "g": 0.0, "g1": 0.0,
                  "g2": 0.0, "orientations": None, "n": 3, "link_ms": None,
                  "dispersion": "quadratic"},
}
# figure parameter sets when --delta is omitted
SPECTRUM_DELTA = {"single": 5.0, "two-fluxon": 3.0, "two-fluxon-kinetic": 3.0, "chain": 1.0}

META_COMMON = {
    "tool": f"fluxring {__version__}",
    "units": {"energy": "a = hbar^2/(2 m_e r^2)", "time": "hbar/a", "entropy": "bits"},
    "sigma_z": "sigma_z|0> = +|0>, sigma_z|1> = -|1>",
    "bell": "phi+- = (|00> +- |11>)/sqrt2, psi+- = (|01> +- |10>)/sqrt2",
    "basis_order": "leftmost factor most significant",
}


class UsageError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fluxring", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file with parameters; flags take precedence")
        p.add_argument("--out", help="output path (default: <command>.<format>)")
        p.add_argument("--format", choices=("csv", "json"))

    p = sub.add_parser("spectrum", help="band energies versus m")
    common(p)
    p.add_argument("--system", choices=SPECTRUM_SYSTEMS)
    p.add_argument("--delta", type=float)
    p.add_argument("--m-min", type=int)
    p.add_argument("--m-max", type=int)
    p.add_argument("--dispersion", choices=sorted(DISPERSIONS))
    p.add_argument("--orientations", type=_int_list)
    p.add_argument("--n", type=int, help="fluxon count for --system chain")

    p = sub.add_parser("bloch", help="single-fluxon eigenstates as Bloch vectors")
    common(p)
    p.add_argument("--delta", type=float)
    p.add_argument("--m-min", type=int)
    p.add_argument("--m-max", type=int)
    p.add_argument("--dispersion", choices=sorted(DISPERSIONS))

    p = sub.add_parser("teleport", help="excitation transfer between two fluxons")
    common(p)
    p.add_argument("--delta", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--t-max", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--threshold", type=float, help="peak probability counted as complete transfer")

    p = sub.add_parser("quench", help="fluxon entanglement after a ring-drive quench")
    common(p)
    p.add_argument("--delta", type=float)
    p.add_argument("--g", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--dt", type=float)

    p = sub.add_parser("chain", help="excitation transport along a fluxon chain")
    common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--link-ms", type=_int_list)
    p.add_argument("--delta", type=float)
    p.add_argument("--excited-site", type=int)
    p.add_argument("--t-max", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--dispersion", choices=sorted(DISPERSIONS))

    p = sub.add_parser("decompose", help="Pauli decomposition of a model Hamiltonian")
    common(p)
    p.add_argument("--system", choices=DECOMPOSE_SYSTEMS)
    p.add_argument("--m", type=int)
    p.add_argument("--delta", type=float)
    p.add_argument("--g", type=float)
    p.add_argument("--g1", type=float)
    p.add_argument("--g2", type=float)
    p.add_argument("--orientations", type=_int_list)
    p.add_argument("--n", type=int)
    p.add_argument("--link-ms", type=_int_list)
    p.add_argument("--dispersion", choices=sorted(DISPERSIONS))
    return parser


def resolve(args: argparse.Namespace) -> dict[str, Any]:
    """Merge defaults, the optional config file and explicit flags."""
    cmd = args.command
    params = dict(DEFAULTS[cmd])
    params["format"] = "json" if cmd == "bloch" else "csv"
    params["out"] = None
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
        cfg = {k.replace("-", "_"): v for k, v in cfg.items() if k != "command"}
        unknown = set(cfg) - set(params)
        if unknown:
            raise UsageError(f"unknown config keys for {cmd}: {sorted(unknown)}")
        params.update(cfg)
    for key in params:
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    validate(cmd, params)
    return params


def validate(cmd: str, p: dict[str, Any]) -> None:
    def need(cond, msg):
        if not cond:
            raise UsageError(msg)

    need(p["format"] in ("csv", "json"), "format must be csv or json")
    if cmd == "spectrum" and p["delta"] is None:
        need(p["system"] in SPECTRUM_SYSTEMS, f"system must be one of {SPECTRUM_SYSTEMS}")
        p["delta"] = SPECTRUM_DELTA[p["system"]]
    need(float(p["delta"]) >= 0, "delta must be non-negative")
    p["delta"] = float(p["delta"])
    if "m_min" in p:
        need(int(p["m_min"]) <= int(p["m_max"]), "m-min must not exceed m-max")
    if "dispersion" in p:
        need(p["dispersion"] in DISPERSIONS, f"dispersion must be one of {sorted(DISPERSIONS)}")
    for key in ("t_max", "dt"):
        if key in p:
            need(float(p[key]) > 0, f"{key.replace('_', '-')} must be positive")
    if "system" in p:
        allowed = SPECTRUM_SYSTEMS if cmd == "spectrum" else DECOMPOSE_SYSTEMS
        need(p["system"] in allowed, f"system must be one of {allowed}")
    if p.get("orientations") is not None:
        need(len(p["orientations"]) == 2 and all(s in (1, -1) for s in p["orientations"]),
             "orientations must be two signs, e.g. 1,-1")
    if cmd == "teleport":
        need(0 < float(p["threshold"]) <= 1, "threshold must lie in (0, 1]")
    uses_chain = cmd == "chain" or p.get("system") == "chain"
    if uses_chain:
        n = int(p["n"])
        need(2 <= n <= MAX_CHAIN_SITES, f"n must lie in [2, {MAX_CHAIN_SITES}]")
    # a chain spectrum gives every link the swept m, so it takes no link-ms
    if uses_chain and cmd != "spectrum":
        if p.get("link_ms") is None:
            p["link_ms"] = [p.get("m", 0)] * (int(p["n"]) - 1)
        need(len(p["link_ms"]) == int(p["n"]) - 1, "link-ms needs n-1 entries")
    if cmd == "chain":
        need(0 <= int(p["excited_site"]) < int(p["n"]), "excited-site out of range")


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return "%.12g" % v
    return str(v)


def _json_value(v):
    if isinstance(v, (float, np.floating)):
        return float("%.12g" % v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, dict):
        return {str(k): _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_json_value(x) for x in v]
    return v


def render_csv(meta: dict, columns: list[str], rows: list[list]) -> str:
    lines = [f"# {k}: {json.dumps(_json_value(v), sort_keys=True)}" for k, v in meta.items()]
    lines.append(",".join(columns))
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def render_json(meta: dict, columns: list[str], rows: list[list], records: bool = False) -> str:
    if records:
        body = {"meta": meta, "records": [dict(zip(columns, r)) for r in rows]}
    else:
        body = {"meta": meta, "columns": {c: [r[i] for r in rows] for i, c in enumerate(columns)}}
    return json.dumps(_json_value(body), indent=1, sort_keys=False) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".fluxring-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _params_echo(p: dict) -> dict:
    return {k: v for k, v in p.items() if k not in ("out", "format", "config")}


def cmd_spectrum(p):
    kind = p["system"]
    if kind == "single":
        system = SystemSpec(m=0, delta=p["delta"], n_fluxons=1, dispersion=p["dispersion"])
    elif kind == "chain":
        system = SystemSpec(m=0, delta=p["delta"], n_fluxons=int(p["n"]), dispersion=p["dispersion"])
    else:
        orient = tuple(p["orientations"]) if p["orientations"] else (1, -1)
        variant = "kinetic" if kind == "two-fluxon-kinetic" else "effective"
        system = SystemSpec(m=0, delta=p["delta"], n_fluxons=2, orientations=orient,
                            dispersion=p["dispersion"], variant=variant)
    table = band_sweep(system, int(p["m_min"]), int(p["m_max"]))
    labels = list(table.band_labels)
    columns = ["m"] + labels
    if table.closed is not None:
        columns += [f"{l}_closed" for l in labels]
    rows = []
    for i, m in enumerate(table.m_values):
        row = [int(m)] + list(table.numeric[i])
        if table.closed is not None:
            row += list(table.closed[i])
        rows.append(row)
    meta = {}
    if kind == "two-fluxon":
        meta["band_bell_labels"] = {"diagonalised": BAND_BELL_LABELS, "quoted": QUOTED_BAND_BELL_LABELS}
    summary = {"ground_energy": float(table.energies[:, 0].min())}
    return columns, rows, meta, summary, False


def cmd_bloch(p):
    recs = bloch_sweep(p["delta"], int(p["m_min"]), int(p["m_max"]), p["dispersion"])
    columns = ["m", "band", "x", "y", "z", "energy"]
    rows = [[r[c] for c in columns] for r in recs]
    return columns, rows, {}, {"states": len(rows)}, True


def cmd_teleport(p):
    res = teleport_experiment(p["delta"], int(p["m"]), float(p["t_max"]), float(p["dt"]),
                              ExperimentConfig(transfer_threshold=float(p["threshold"])))
    return _series_table(res), {"complete_transfer": res.metadata["complete_transfer"]}, res


def cmd_quench(p):
    res = quench_experiment(p["delta"], float(p["g"]), float(p["t_max"]), float(p["dt"]))
    ef = res.series["E_f"]
    extra = {"E_f_initial": float(ef[0]), "E_f_max": float(ef.max())}
    return _series_table(res), extra, res


def cmd_chain(p):
    res = chain_transport_experiment(int(p["n"]), p["link_ms"], p["delta"], int(p["excited_site"]),
                                     float(p["t_max"]), float(p["dt"]), p["dispersion"])
    return _series_table(res), {}, res


def _series_table(res):
    names = list(res.series.channels)
    columns = ["t"] + names
    cols = [res.series.times] + [res.series.channels[n] for n in names]
    rows = [list(r) for r in zip(*cols)]
    return columns, rows


def cmd_decompose(p):
    kind, m, delta, disp = p["system"], int(p["m"]), p["delta"], p["dispersion"]
    nominal = None
    if kind == "single":
        h, n = build_single_fluxon(m, delta, disp), 1
        nominal = nominal_single_fluxon_coefficients(m, delta)
    elif kind == "two-fluxon":
        h, n = build_two_fluxon(m, delta, disp), 2
        nominal = nominal_two_fluxon_coefficients(m, delta)
    elif kind == "two-fluxon-kinetic":
        s1, s2 = p["orientations"] or (1, -1)
        h, n = build_two_fluxon_physical(m, delta, s1, s2, disp), 2
    elif kind == "driven":
        h, n = build_driven(delta, float(p["g"]), disp), 2
    elif kind == "ising":
        h, n = build_ising_two_qubit(delta, float(p["g1"]), float(p["g2"])), 2
    else:
        n = int(p["n"])
        h = build_chain(n, p["link_ms"], delta, disp)
    dec = pauli_decompose(h, n)
    columns = ["term", "site_i", "site_j", "coefficient"]
    rows = [["I", "", "", dec.h0]]
    for i, f in enumerate(dec.fields):
        rows += [[k, i, "", v] for k, v in zip("XYZ", f)]
    rows += [["ZZ", i, j, J] for (i, j), J in sorted(dec.zz_couplings.items())]
    meta = {"nominal_coefficients": nominal} if nominal else {}
    summary = {"h0": dec.h0, "zz": {f"{i}-{j}": J for (i, j), J in sorted(dec.zz_couplings.items())}}
    return columns, rows, meta, summary, False


def run(params: dict[str, Any], command: str) -> dict:
    """Execute ``command`` and write its artifact; returns the stdout summary."""
    summary: dict[str, Any] = {}
    meta = dict(META_COMMON)
    meta["command"] = command
    meta["parameters"] = _params_echo(params)
    records = False
    if command in ("teleport", "quench", "chain"):
        handler = {"teleport": cmd_teleport, "quench": cmd_quench, "chain": cmd_chain}[command]
        (columns, rows), extra, res = handler(params)
        summary.update({"primary": res.primary, "peak_value": res.peak_value,
                        "peak_time": res.peak_time, **extra})
        meta.update({k: v for k, v in res.metadata.items() if k not in meta["parameters"]})
    else:
        handler = {"spectrum": cmd_spectrum, "bloch": cmd_bloch, "decompose": cmd_decompose}[command]
        columns, rows, extra_meta, extra, records = handler(params)
        meta.update(extra_meta)
        summary.update(extra)
    fmt = params["format"]
    out = params["out"] or f"{command}.{fmt}"
    text = render_json(meta, columns, rows, records) if fmt == "json" else render_csv(meta, columns, rows)
    write_atomic(out, text)
    return {"command": command, "parameters": _json_value(meta["parameters"]), "output": out,
            **_json_value(summary)}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params = resolve(args)
        summary = run(params, args.command)
    except UsageError as exc:
        print(f"fluxring: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"fluxring: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"fluxring: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"fluxring: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
