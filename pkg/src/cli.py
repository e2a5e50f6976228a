"""
Command-line front end.

    python . eval     --ineq popoviciu --fn power:2 --triple 0 0 3
    python . sweep    --ineq hpop --fn power:0.5 --h power:0.5 --samples 10000 --seed 42
    python . search   --ineq popoviciu --fn power:3 --region -1 1
    python . classify --fn gamma --interval 1.1 2 --psi log
    python . means    --mean log3 --points 1 2 4

Exit codes: 0 when the inequality holds (or no violation was found), 2 for a
violation, 1 for usage, registry and domain errors.
"""

import argparse
import dataclasses
import logging
import sys
import time
from typing import Callable, Dict, List, Optional, Tuple

from .config import MEANS, RunConfig, resolve
from .convexity import Shape, h_convexity_defect, mn_convexity_check
from .errors import DomainError, PopcheckError
from .functions import FunctionSpec
from .inequalities import INEQUALITY_IDS, EvaluatorParams, JensenMode, evaluate, h_jensen_pair_defect
from .interval import Interval
from .means import PointSet, identric_mean, log_mean2, log_mean3, power_mean, qa_mean
from .registry import parse_function, parse_generator, parse_h
from .report import (Record, certificate_record, convexity_record, defect_record, make_record,
                     residual_record, sweep_record, to_csv, to_json, write_report)
from .search import SearchConfig, SearchRegion, find_counterexample, sweep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def _function(text: Optional[str], interval: Optional[Tuple[float, ...]]) -> Optional[FunctionSpec]:
    if text is None:
        return None
    spec = parse_function(text)
    return spec.restricted(*interval) if interval is not None else spec


def build_params(config: RunConfig) -> EvaluatorParams:
    """Resolves the registry names of a config into evaluator parameters."""
    return EvaluatorParams(
        f=_function(config.fn, config.interval),
        g=_function(config.g, config.interval),
        phi=parse_generator(config.phi),
        psi=parse_generator(config.psi),
        h=parse_h(config.h) if config.h is not None else None,
        C=config.modulus,
        alpha=config.alpha,
        shape=config.shape,
        jensen_mode=JensenMode(config.jensen_mode),
        tolerance=config.tol,
    )


def _inputs(config: RunConfig) -> Dict:
    return {k: v for k, v in dataclasses.asdict(config).items() if v is not None}


def _point(config: RunConfig) -> Tuple[float, ...]:
    if config.ineq == "h-jensen":
        if config.points is None:
            raise DomainError("h-jensen needs --points")
        return config.points
    if config.triple is None:
        raise DomainError(f"{config.ineq} needs --triple x y z")
    return config.triple


def _region(config: RunConfig, resolution: int) -> SearchRegion:
    if config.region is None:
        raise DomainError("search needs --region lo hi [lo hi lo hi]")
    if len(config.region) == 2:
        return SearchRegion.cube(config.region[0], config.region[1], resolution, config.seed)
    return SearchRegion.from_bounds(config.region, resolution, config.seed)


def _sweep_window(config: RunConfig) -> Optional[Interval]:
    if config.region is None:
        return None
    lows, highs = set(config.region[::2]), set(config.region[1::2])
    if len(lows) != 1 or len(highs) != 1:
        raise DomainError("sweep samples a cube; give --region lo hi")
    return Interval.closed(lows.pop(), highs.pop())


def cmd_eval(config: RunConfig) -> Tuple[Record, int]:
    report = evaluate(config.ineq, build_params(config), _point(config))
    code = EXIT_OK if report.holds else EXIT_VIOLATION
    return residual_record("eval", report, _inputs(config)), code


def cmd_sweep(config: RunConfig) -> Tuple[Record, int]:
    dims = len(config.points) if config.ineq == "h-jensen" and config.points else 3
    summary = sweep(config.ineq, build_params(config), config.samples, config.seed, _sweep_window(config), dims)
    code = EXIT_OK if summary.holds else EXIT_VIOLATION
    return sweep_record(summary, _inputs(config)), code


def cmd_search(config: RunConfig) -> Tuple[Record, int]:
    region = _region(config, config.grid or 15)
    search_config = SearchConfig(k=config.k, max_iter=config.max_iter, random_restarts=config.restarts)
    certificate = find_counterexample(config.ineq, build_params(config), region, search_config)
    code = EXIT_VIOLATION if certificate.violation else EXIT_OK
    return certificate_record(certificate, _inputs(config)), code


def cmd_classify(config: RunConfig) -> Tuple[Record, int]:
    params = build_params(config)
    if params.f is None:
        raise DomainError("classify needs --fn")
    if params.h is not None:
        grid = config.grid or 41
        if params.g is None:
            defect, label = h_convexity_defect(params.f, params.h, grid), "h-convex"
        else:
            defect, label = h_jensen_pair_defect(params.f, params.g, params.h, grid), "h-Jensen pair"
        return defect_record(defect, _inputs(config), label), EXIT_OK if defect.holds else EXIT_VIOLATION
    report = mn_convexity_check(params.f, params.phi, params.psi, config.grid or 201)
    code = EXIT_VIOLATION if report.verdict is Shape.NEITHER else EXIT_OK
    return convexity_record(report, _inputs(config)), code


def _mean_value(config: RunConfig) -> float:
    if config.points is None:
        raise DomainError("means needs --points")
    values = config.points
    if config.mean == "qa":
        return qa_mean(parse_generator(config.phi), PointSet.of(values, config.weights))
    if config.mean == "power":
        return power_mean(config.order, PointSet.of(values, config.weights))
    arity = {"log2": 2, "identric": 2, "log3": 3}[config.mean]
    if len(values) != arity:
        raise DomainError(f"the {config.mean} mean takes {arity} points, got {len(values)}")
    if config.mean == "log2":
        return log_mean2(*values)
    if config.mean == "identric":
        return identric_mean(*values)
    return log_mean3(*values)


def cmd_means(config: RunConfig) -> Tuple[Record, int]:
    value = _mean_value(config)
    return make_record("means", _inputs(config), witness={"mean": config.mean, "value": value}), EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], Tuple[Record, int]]] = {
    "eval": cmd_eval,
    "sweep": cmd_sweep,
    "search": cmd_search,
    "classify": cmd_classify,
    "means": cmd_means,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value file with defaults")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logs")
    common.add_argument("--ineq", help=f"inequality id: {', '.join(INEQUALITY_IDS)}")
    common.add_argument("--fn", help="function, e.g. power:2, gamma, hyp2f1:0.5:0.5:0.75")
    common.add_argument("--g", help="majorant g of an h-Jensen pair (f, g)")
    common.add_argument("--phi", help="domain-side generator: identity, log, exp, power:p, A, G, H")
    common.add_argument("--psi", help="range-side generator, same syntax as --phi")
    common.add_argument("--h", help="weight function: identity, power:s, reciprocal, one")
    common.add_argument("--triple", nargs=3, type=float, metavar=("X", "Y", "Z"))
    common.add_argument("--points", nargs="+", type=float)
    common.add_argument("--weights", nargs="+", type=float)
    common.add_argument("--region", nargs="+", type=float, metavar="LO_HI",
                        help="lo hi (a cube) or lo hi lo hi lo hi")
    common.add_argument("--interval", nargs=2, type=float, metavar=("LO", "HI"),
                        help="restrict --fn (and --g) to [LO, HI]")
    common.add_argument("--grid", type=int, help="grid nodes per axis")
    common.add_argument("--samples", type=int)
    common.add_argument("--seed", type=int, help="sampling seed (falls back to $POPCHECK_SEED)")
    common.add_argument("--tol", type=float, help="verdict tolerance before scaling")
    common.add_argument("--modulus", type=float, help="strong convexity modulus C")
    common.add_argument("--alpha", type=float, help="dimension for vol-pop")
    common.add_argument("--shape", choices=("convex", "concave"))
    common.add_argument("--jensen-mode", dest="jensen_mode", choices=[m.value for m in JensenMode])
    common.add_argument("--k", type=int, help="grid nodes refined by search")
    common.add_argument("--max-iter", dest="max_iter", type=int)
    common.add_argument("--restarts", type=int, help="random refinement restarts for search")
    common.add_argument("--mean", choices=MEANS)
    common.add_argument("--order", type=float, help="power mean order")
    common.add_argument("--out", help="write the report to this path")
    common.add_argument("--format", choices=("json", "csv"))

    parser = argparse.ArgumentParser(prog="popcheck", description="Numerical checks of Popoviciu-type inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("eval", parents=[common], help="evaluate one inequality at one point")
    sub.add_parser("sweep", parents=[common], help="evaluate at seeded random points")
    sub.add_parser("search", parents=[common], help="grid scan plus refinement for a counterexample")
    sub.add_parser("classify", parents=[common], help="(M_phi, M_psi)- or h-convexity on a grid")
    sub.add_parser("means", parents=[common], help="evaluate a mean directly")
    return parser


_NOT_CONFIG = ("config", "verbose")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    configure_logging(args.verbose)
    overrides = {k: v for k, v in vars(args).items() if k not in _NOT_CONFIG}
    for key in ("triple", "points", "weights", "region", "interval"):
        if overrides.get(key) is not None:
            overrides[key] = tuple(overrides[key])
    try:
        config = resolve(overrides, args.config)
        started = time.perf_counter()
        record, code = COMMANDS[config.command](config)
        record["timing_ms"] = (time.perf_counter() - started) * 1000.0
        print(to_csv(record) if config.format == "csv" else to_json(record), end="" if config.format == "csv" else "\n")
        if config.out is not None:
            write_report(record, config.out, config.format)
            logger.info("report written to %s", config.out)
    except (PopcheckError, ArithmeticError) as exc:
        print(f"popcheck: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"popcheck: error: {exc.filename}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())
