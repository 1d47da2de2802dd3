"""Command-line entry points.

    ldpc-lattice design   --config design.conf --out-dir run/
    ldpc-lattice encode   --bundle run/ --messages u.txt
    ldpc-lattice decode   --bundle run/ --received r.txt --vnr 2.0
    ldpc-lattice simulate --bundle run/ --config sim.conf --threads 4
    ldpc-lattice rates    --config rates.conf
    ldpc-lattice report   --csv run/sweep.csv --reference fig.csv

Every command writes a run manifest next to its outputs. The manifest is a
config file holding every resolved setting, so passing it back with `--config`
replays the run.
"""
import argparse
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .design.family import design_nested_family, peg_family, write_design_report
from .decoders.multistage import MultistageDecoder
from .encoders.utils import build_encoders
from .errors import (
    ConfigError,
    DesignInfeasibleError,
    FormatError,
    InfeasibleMappingError,
    RankDeficiencyError,
)
from .lattice import (
    LatticeSpec,
    is_lattice_point,
    sequential_encode,
    sigma_for_vnr,
    validate_spec,
    vnr,
)
from .parsers.bundle import load_bundle, save_bundle
from .parsers.config import Config, dumps_config
from .sim.rates import design_rates, simulated_wer
from .sim.report import (
    intervals_path,
    read_csv,
    read_reference_curve,
    save_csv,
    save_intervals,
    write_dat,
)
from .sim.simulator import SimConfig, Simulator
from .utils.consts import (
    DESIGN_REPORT,
    LONG_RUN_MAX_TRIALS,
    PRESETS,
    RUN_MANIFEST,
    VERSION,
)
from .utils.log import child_logger, set_verbose

log = child_logger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DESIGN = 3
EXIT_IO = 4


@dataclass
class RunManifest:
    """What a command ran with and what it wrote."""

    command: str
    config: Dict[str, str]
    inputs: List[str] = field(default_factory=list)
    outputs: List[str] = field(default_factory=list)
    version: str = VERSION
    wall_time: float = 0.0

    def dumps(self) -> str:
        values = dict(self.config)
        values["run.command"] = self.command
        values["run.version"] = self.version
        values["run.inputs"] = ", ".join(self.inputs)
        values["run.outputs"] = ", ".join(self.outputs)
        values["run.wall_time"] = f"{self.wall_time:.3f}"
        return dumps_config(values)

    def write(self, directory: str) -> str:
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, RUN_MANIFEST)
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.dumps())
        return path


def _config(args) -> Config:
    overrides: Dict[str, str] = {}
    for item in args.set or []:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"--set expects KEY=VALUE, got `{item}`")
        overrides[key.strip()] = value.strip()
    if args.seed is not None:
        overrides["seed"] = str(args.seed)
    if getattr(args, "mode", None):
        overrides["sim.mode"] = args.mode
    if args.threads is not None:
        overrides["sim.threads"] = str(args.threads)

    config = Config.load(args.config, overrides=overrides, preset=args.preset)
    # manifest bookkeeping is not configuration
    config.values = {
        k: v for k, v in config.values.items() if not k.startswith("run.")
    }
    return config


def _required(config: Config, key: str, get):
    config.require(key)
    return get(key)


def _out_dir(args) -> str:
    out = args.out_dir or "."
    os.makedirs(out, exist_ok=True)
    return out


def _check_counts(config: Config) -> List[int]:
    """m_0..m_{L-1} from `m`, or from `rates` and `n`."""
    n = _required(config, "n", config.get_int)
    m = config.get_list("m", int)
    if m is None:
        rates = config.get_list("rates", float)
        if rates is None:
            raise ConfigError(f"missing key `m` or `rates` in {config.path}")
        m = [int(round(n * (1 - r))) for r in rates]
    levels = config.get_int("levels")
    if levels is not None and len(m) != levels:
        raise ConfigError(f"`m` lists {len(m)} levels, `levels` is {levels}")
    return m


def cmd_design(args) -> int:
    """Design a nested family, lift it and write the bundle."""
    config = _config(args)
    out = _out_dir(args)
    began = time.perf_counter()

    n = _required(config, "n", config.get_int)
    m = _check_counts(config)
    gap = config.get_int("gap")
    max_depth = config.get_int("design.max_depth")

    try:
        family = design_nested_family(
            n,
            m,
            config.get_int("dv"),
            config.get_int("seed"),
            gap=gap,
            method=config.require("design.method"),
            retries=config.get_int("design.retries"),
            max_depth=max_depth,
        )
    except ValueError as e:
        raise ConfigError(str(e))

    report = validate_spec(family.spec)
    log.info("validation:\n%s", report)
    if not report.valid:
        raise RankDeficiencyError("designed spec failed validation: %s" % report)

    manifest_path = save_bundle(family.spec, out)
    report_path = os.path.join(out, DESIGN_REPORT)
    write_design_report(family.records, report_path)

    RunManifest(
        "design",
        config.resolved(),
        inputs=[args.config] if args.config else [],
        outputs=[manifest_path, report_path],
        wall_time=time.perf_counter() - began,
    ).write(out)
    return EXIT_OK


def _encoders(spec: LatticeSpec, config: Config):
    gap = spec.meta.get("gap")
    gap_hint = int(gap) if gap not in (None, "None") else None
    return build_encoders(
        [spec.binary(level) for level in range(spec.L)],
        config.require("encoder"),
        gap_hint=gap_hint,
    )


def read_messages(path: str, spec: LatticeSpec) -> List[np.ndarray]:
    """L lines of '0'/'1' characters, line l of length k_l."""
    with open(path, "r", encoding="utf-8") as f:
        lines = [
            (number, line.split("#", 1)[0].replace(" ", "").strip())
            for number, line in enumerate(f, start=1)
        ]
    lines = [(number, line) for number, line in lines if line]
    if len(lines) != spec.L:
        raise FormatError(f"{path}: expected {spec.L} message lines, got {len(lines)}")

    messages = []
    for level, (number, line) in enumerate(lines):
        if set(line) - {"0", "1"}:
            raise FormatError(f"{path}:{number}: message bits must be 0 or 1")
        if len(line) != spec.k[level]:
            raise FormatError(
                f"{path}:{number}: message {level} has {len(line)} bits, "
                f"expected {spec.k[level]}"
            )
        messages.append(np.frombuffer(line.encode(), dtype=np.uint8) - ord("0"))
    return messages


def read_received(path: str, n: int) -> np.ndarray:
    """n real numbers separated by whitespace, over any number of lines."""
    values: List[float] = []
    with open(path, "r", encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            for token in line.split("#", 1)[0].split():
                try:
                    values.append(float(token))
                except ValueError:
                    raise FormatError(f"{path}:{number}: `{token}` is not a number")
    if len(values) != n:
        raise FormatError(f"{path}: expected {n} values, got {len(values)}")
    return np.asarray(values)


def _bits(v) -> str:
    return "".join(str(int(b)) for b in v)


def cmd_encode(args) -> int:
    """Encode one message per level into a lattice codeword."""
    config = _config(args)
    out = _out_dir(args)
    began = time.perf_counter()

    spec = load_bundle(args.bundle)
    messages = read_messages(args.messages, spec)
    word = sequential_encode(spec, _encoders(spec, config), messages)

    result = {"codeword": " ".join(map(str, word.composed.tolist()))}
    for level in range(spec.L):
        result[f"c.{level}"] = _bits(word.levels[level])
        result[f"s.{level}"] = _bits(word.syndromes[level])

    path = args.output or os.path.join(out, "codeword.txt")
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_config(result))

    RunManifest(
        "encode",
        config.resolved(["encoder"]),
        inputs=[args.bundle, args.messages],
        outputs=[path],
        wall_time=time.perf_counter() - began,
    ).write(out)
    return EXIT_OK


def _sigma(args, spec: LatticeSpec) -> float:
    if args.sigma is not None:
        return args.sigma
    if args.vnr is not None:
        return sigma_for_vnr(spec.L, spec.R, args.vnr)
    raise ConfigError("decode needs --sigma or --vnr")


def cmd_decode(args) -> int:
    """Multistage decoding of one received word in [0, 2^L)^n."""
    config = _config(args)
    out = _out_dir(args)
    began = time.perf_counter()

    spec = load_bundle(args.bundle)
    r = read_received(args.received, spec.n)
    sigma = _sigma(args, spec)

    encoders = _encoders(spec, config)
    decoder = MultistageDecoder(
        spec,
        encoders,
        config.get_int("bp.max_iter"),
        config.get_float("bp.llr_max"),
        lengthened=config.get_setting("sim.decoder") == "lengthened",
    )
    reencode = config.get_setting("sim.decoder") == "reencode"
    estimate, converged = decoder.decode(np.mod(r, spec.q), sigma, reencode=reencode)

    composed = estimate.composed
    result = {
        "codeword": " ".join(map(str, composed.tolist())),
        "member": str(is_lattice_point(spec, composed)).lower(),
        "sigma": f"{sigma:.6f}",
        "vnr_db": f"{vnr(spec, sigma)[1]:.4f}",
    }
    for level, message in enumerate(decoder.messages(estimate)):
        result[f"c.{level}"] = _bits(estimate.levels[level])
        result[f"converged.{level}"] = str(converged[level]).lower()
        result[f"u.{level}"] = _bits(message)

    path = args.output or os.path.join(out, "decision.txt")
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_config(result))

    RunManifest(
        "decode",
        config.resolved(["encoder", "bp.max_iter", "bp.llr_max", "sim.decoder"]),
        inputs=[args.bundle, args.received],
        outputs=[path],
        wall_time=time.perf_counter() - began,
    ).write(out)
    return EXIT_OK


def sim_config(config: Config, spec: LatticeSpec, long_run: bool = False) -> SimConfig:
    """SimConfig from the `sim.*` and `bp.*` settings."""
    gap = spec.meta.get("gap")
    max_trials = config.get_int("sim.max_trials")
    if long_run:
        max_trials = LONG_RUN_MAX_TRIALS
    return SimConfig(
        spec=spec,
        points=config.get_list("sim.points", float, []),
        unit=config.require("sim.unit"),
        max_trials=max_trials,
        min_errors=config.get_int("sim.min_errors"),
        min_errors_deep=config.get_int("sim.min_errors_deep"),
        seed=config.get_int("seed"),
        mode=config.require("sim.mode"),
        uncoded=config.require("sim.uncoded"),
        decoder=config.require("sim.decoder"),
        encoder=config.require("encoder"),
        gap_hint=int(gap) if gap not in (None, "None") else None,
        batch_size=config.get_int("sim.batch_size"),
        max_iter=config.get_int("bp.max_iter"),
        llr_max=config.get_float("bp.llr_max"),
        threads=config.get_int("sim.threads", 1),
        progress=sys.stderr.isatty(),
    )


def cmd_simulate(args) -> int:
    """WER sweep of a bundle, written as CSV."""
    config = _config(args)
    out = _out_dir(args)
    began = time.perf_counter()

    spec = load_bundle(args.bundle)
    try:
        cfg = sim_config(config, spec, args.long_run)
    except ValueError as e:
        raise ConfigError(str(e))

    points = Simulator(cfg).sweep()
    path = os.path.join(out, "sweep.csv")
    save_csv(points, path, spec.L)
    bounds_path = intervals_path(path)
    save_intervals(points, bounds_path, spec.L)

    keys = [k for k in config.resolved() if k.startswith(("sim.", "bp."))]
    keys += ["seed", "encoder"]
    resolved = config.resolved(keys)
    if args.long_run:
        resolved["sim.max_trials"] = str(LONG_RUN_MAX_TRIALS)
    RunManifest(
        "simulate",
        resolved,
        inputs=[args.bundle],
        outputs=[path, bounds_path],
        wall_time=time.perf_counter() - began,
    ).write(out)
    return EXIT_OK


def cmd_rates(args) -> int:
    """Choose the two level rates for a target error probability."""
    config = _config(args)
    out = _out_dir(args)
    began = time.perf_counter()

    n = _required(config, "n", config.get_int)
    seed = config.get_int("seed")
    gap = config.get_int("gap")
    target = _required(config, "rates.target_pe", config.get_float)
    sigma_range = config.get_list("rates.sigma_range", float)

    try:
        design = design_rates(
            peg_family(n, config.get_int("dv"), seed, gap),
            target,
            n,
            rule=config.require("rates.rule"),
            r0_range=tuple(config.get_list("rates.r0_range", float)),
            r1_range=tuple(config.get_list("rates.r1_range", float)),
            sigma_range=tuple(sigma_range) if sigma_range else None,
            grid=config.get_int("rates.grid"),
            wer=simulated_wer(
                config.get_int("rates.trials"), config.get_int("rates.min_errors"), seed
            ),
        )
    except ValueError as e:
        raise ConfigError(str(e))

    result = {
        "n": str(n),
        "levels": "2",
        "rates": f"{design.rates[0]:.4f}, {design.rates[1]:.4f}",
        "m": ", ".join(map(str, design.m(n))),
        "sim.unit": "sigma",
        "sim.points": f"{design.sigma:.6f}",
        "rates.vnr_db": f"{design.vnr_db:.4f}",
        "rates.predicted_pe": f"{design.predicted_pe:.6e}",
    }
    path = os.path.join(out, "rates.conf")
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_config(result))

    RunManifest(
        "rates",
        config.resolved(),
        inputs=[args.config] if args.config else [],
        outputs=[path],
        wall_time=time.perf_counter() - began,
    ).write(out)
    return EXIT_OK


def cmd_report(args) -> int:
    """gnuplot-ready data from a sweep CSV and an optional reference curve."""
    config = _config(args)
    out = _out_dir(args)
    began = time.perf_counter()

    rows = read_csv(args.csv)
    reference_path = args.reference or config.get_setting("report.reference")
    reference = read_reference_curve(reference_path) if reference_path else None
    bounds_path = intervals_path(args.csv)
    intervals = read_csv(bounds_path) if os.path.exists(bounds_path) else None

    name = os.path.splitext(os.path.basename(args.csv))[0] + ".dat"
    path = os.path.join(out, name)
    write_dat(rows, path, reference, intervals)

    for row in sorted(rows, key=lambda r: r["vnr_db"]):
        log.info(
            "vnr=%.3f dB wer_coded=%.3e wer_total=%.3e",
            row["vnr_db"],
            row["wer_coded"],
            row["wer_total"],
        )

    RunManifest(
        "report",
        config.resolved(["report.reference"]),
        inputs=[args.csv]
        + ([reference_path] if reference_path else [])
        + ([bounds_path] if intervals is not None else []),
        outputs=[path],
        wall_time=time.perf_counter() - began,
    ).write(out)
    return EXIT_OK


COMMAND_DICT = {
    "design": cmd_design,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "simulate": cmd_simulate,
    "rates": cmd_rates,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value settings file or run manifest")
    common.add_argument("--preset", choices=sorted(PRESETS), help="named design point")
    common.add_argument("--seed", type=int, help="master seed")
    common.add_argument("--out-dir", help="directory for outputs and the manifest")
    common.add_argument("--threads", type=int, help="simulation worker processes")
    common.add_argument(
        "--set", action="append", metavar="KEY=VALUE", help="override one setting"
    )
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    parser = argparse.ArgumentParser(
        prog="ldpc-lattice", description="LDPC lattices by generalized Construction D'"
    )
    parser.add_argument("--version", action="version", version=VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("design", parents=[common], help="design a nested family")

    p = sub.add_parser("encode", parents=[common], help="encode messages")
    p.add_argument("--bundle", required=True)
    p.add_argument("--messages", required=True)
    p.add_argument("--output")

    p = sub.add_parser("decode", parents=[common], help="decode a received word")
    p.add_argument("--bundle", required=True)
    p.add_argument("--received", required=True)
    p.add_argument("--sigma", type=float)
    p.add_argument("--vnr", type=float, help="operating point in dB")
    p.add_argument("--output")

    p = sub.add_parser("simulate", parents=[common], help="WER sweep")
    p.add_argument("--bundle", required=True)
    p.add_argument("--mode", choices=["full", "genie"])
    p.add_argument("--long-run", action="store_true", help="deep-WER trial budget")

    sub.add_parser("rates", parents=[common], help="rate design")

    p = sub.add_parser("report", parents=[common], help="gnuplot data of a sweep")
    p.add_argument("--csv", required=True)
    p.add_argument("--reference", help="two-column vnr_db,wer curve")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    set_verbose(args.verbose)

    try:
        return COMMAND_DICT[args.command](args)
    except ConfigError as e:
        log.error("%s", e)
        return EXIT_CONFIG
    except (RankDeficiencyError, InfeasibleMappingError, DesignInfeasibleError) as e:
        log.error("design failed: %s", e)
        return EXIT_DESIGN
    except (FormatError, OSError) as e:
        log.error("%s", e)
        return EXIT_IO
