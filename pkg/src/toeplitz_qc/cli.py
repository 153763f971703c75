"""Command-line front end.

Every command reads symbols from ``--spec`` (inline syntax or JSON) and/or
``--spec-file``, writes one JSON result document (or CSV plot data with
``--format csv``) and maps library errors onto exit codes:
1 validation, 2 resolution, 3 numerical contract.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import acceptance
from .circle import CircleGrid, FourierSeries, coefficients, grid_for_degree, poisson
from .errors import ToeplitzQCError, ValidationError
from .example_h import example_h, sup_at_zero, sup_at_zero_ladder, uniform_convergence_off_zero
from .factorization import BOUNDED_SUP, TREND_RATE_FLOOR, classify, classify_ladder, factorize
from .index import DEFAULT_DELTA, default_radius, winding_number
from .oscillation import bmo_profile, essential_range, integer_valued_vmo_check, vmo_verdict
from .symbols import Char, Trig, dumps_spec, has_builtin_h, parse_spec, realize, with_terms
from .toeplitz import (CompactPerturbation, kernel_count_index_estimate, operator_component_test,
                       section_norm_convergence, semicommutator)
from .transforms import conjugation, double_hilbert_check, hilbert

OUT_DIR_ENV = "TOEPLITZ_QC_OUT_DIR"
DEFAULT_DEGREE = 16
DEFAULT_SIZE = 128
DEFAULT_LADDER = (64, 128, 256, 512)
COEFF_FLOOR = 1e-13


@dataclass
class RunConfig:
    grid_size: int
    degree: int
    radius: float
    delta: float
    eps: float
    format: str
    bound: float = BOUNDED_SUP
    trend_rate_floor: float = TREND_RATE_FLOOR
    out: str = None

    def validate(self):
        for name in ("delta", "eps"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"--{name} must be positive, got {getattr(self, name)}",
                                      module="cli", contract="RunConfig")
        if self.degree < 0:
            raise ValidationError("--degree must be >= 0", module="cli", contract="RunConfig")
        CircleGrid(self.grid_size)
        if self.grid_size < 4 * self.degree:
            raise ValidationError(f"grid size {self.grid_size} is below 4 * degree = {4 * self.degree}",
                                  module="cli", contract="RunConfig")
        if not 0 < self.radius < 1:
            raise ValidationError(f"--radius must lie in (0, 1), got {self.radius}",
                                  module="cli", contract="RunConfig")
        return self


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message, module="cli", contract="arguments")


def _json_default(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, default=_json_default) + "\n"


def _table(s, floor=COEFF_FLOOR):
    """Coefficient table ``[[n, re, im], ...]`` without entries below ``floor * peak``."""
    peak = max(float(np.max(np.abs(s.coeffs))), 1.0) if s.coeffs.size else 1.0
    return [[n, float(c.real), float(c.imag)] for n, c in zip(s.indices, s.coeffs)
            if abs(c) > floor * peak]


def _table_csv(s):
    lines = ["n,re,im"]
    lines += [f"{n},{re!r},{im!r}" for n, re, im in _table(s, 0.0)]
    return "\n".join(lines) + "\n"


def _load_specs(args):
    specs = [parse_spec(t) for t in args.spec or []]
    for path in args.spec_file or []:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ValidationError(f"cannot read spec file {path}: {exc.strerror}", module="cli") from None
        specs.append(parse_spec(text))
    return specs


def _need(specs, count, command):
    if len(specs) != count:
        raise ValidationError(f"{command} needs exactly {count} symbol(s), got {len(specs)}",
                              module="cli", contract="arguments")
    return specs


def _exact_series(spec):
    if isinstance(spec, Trig):
        return spec.series()
    if isinstance(spec, Char):
        return FourierSeries.char(spec.n)
    return None


def _grid_size(args, specs):
    if args.grid is not None:
        return args.grid
    bands = [s.bandwidth() for s in specs]
    band = max([b for b in bands if b is not None] + [args.degree or DEFAULT_DEGREE, 1])
    if any(b is None for b in bands):
        band = max(band, 255)
    return grid_for_degree(band, oversample=4).size


def _config(args, specs):
    size = _grid_size(args, specs)
    degree = min(DEFAULT_DEGREE, size // 4) if args.degree is None else args.degree
    radius = default_radius(CircleGrid(size)) if args.radius is None else args.radius
    return RunConfig(size, degree, radius, args.delta, args.eps, args.format,
                     out=args.out).validate()


def _ladder(args, default=None):
    if args.ladder is None:
        if default is None:
            return None
        return list(default)
    try:
        ladder = [int(float(x)) for x in args.ladder.split(",") if x.strip()]
    except ValueError:
        raise ValidationError(f"bad --ladder {args.ladder!r}", module="cli", contract="arguments") from None
    if not ladder or any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ValidationError("--ladder must be an increasing comma-separated list",
                              module="cli", contract="arguments")
    return ladder


def _sample(spec, cfg):
    return realize(spec, CircleGrid(cfg.grid_size))


def _series(spec, cfg):
    exact = _exact_series(spec)
    if exact is not None:
        return exact
    return coefficients(_sample(spec, cfg), cfg.degree)


def _rung(spec, M):
    """Realize ``spec`` with its built-in H truncated at ``M`` terms."""
    spec = with_terms(spec, M)
    grid = grid_for_degree(spec.bandwidth(1), oversample=2)
    return realize(spec, grid, exp_factor=1)


def _rung_pair(s1, s2, M):
    s1, s2 = with_terms(s1, M), with_terms(s2, M)
    grid = grid_for_degree(max(s1.bandwidth(1), s2.bandwidth(1)), oversample=2)
    return realize(s1, grid, exp_factor=1), realize(s2, grid, exp_factor=1)


# commands: each returns (result dict, csv text or None)

def cmd_coeffs(args, specs, cfg):
    (spec,) = _need(specs, 1, "coeffs")
    s = _series(spec, cfg)
    return {"coefficients": _table(s), "degree": s.degree}, _table_csv(s)


def cmd_hilbert(args, specs, cfg):
    (spec,) = _need(specs, 1, "hilbert")
    s = _series(spec, cfg)
    h = hilbert(s)
    report = double_hilbert_check(s)
    return {"hilbert": _table(h), "conjugation": _table(conjugation(s)),
            "identity_residuals": report.identity_residuals}, _table_csv(h)


def cmd_poisson(args, specs, cfg):
    (spec,) = _need(specs, 1, "poisson")
    grid = CircleGrid(cfg.grid_size)
    s = _series(spec, cfg)
    u = poisson(s, cfg.radius, grid)
    csv = "theta,re,im\n" + "".join(f"{t!r},{v.real!r},{v.imag!r}\n"
                                    for t, v in zip(grid.points, u.values))
    return {"radius": cfg.radius, "sup_norm": u.sup_norm(),
            "min_modulus": float(np.min(np.abs(u.values))),
            "values": u.values}, csv


def cmd_oscillation(args, specs, cfg):
    (spec,) = _need(specs, 1, "oscillation")
    f = _sample(spec, cfg)
    profile = bmo_profile(f, args.depth)
    return {"profile": profile.to_dict(), "bmo_estimate": profile.bmo_estimate(),
            "vmo_consistent": vmo_verdict(profile)}, profile.to_csv()


def cmd_essrange(args, specs, cfg):
    (spec,) = _need(specs, 1, "essrange")
    f = _sample(spec, cfg)
    est = essential_range(f, bins=args.bins)
    check = integer_valued_vmo_check(f, K=args.depth)
    csv = "left,right,measure\n" + "".join(
        f"{a!r},{b!r},{m!r}\n" for a, b, m in zip(est.edges[:-1], est.edges[1:], est.occupancy))
    return {"clusters": est.clusters(), "gaps": est.gaps, "connected": est.connected,
            "total_measure": est.total_measure,
            "integer_check": {"verdict": check.verdict, "integers": check.integers,
                              "lower_bound": check.lower_bound}}, csv


def cmd_factor(args, specs, cfg):
    (spec,) = _need(specs, 1, "factor")
    f = _sample(spec, cfg)
    fac = factorize(f, degree=cfg.degree, delta=cfg.delta, r=cfg.radius)
    return {"winding": fac.winding, "residual": fac.residual,
            "unimodularity": fac.unimodularity,
            "log_modulus": _table(fac.log_modulus), "phase": _table(fac.phase)}, None


def _winding(spec, cfg):
    f = _sample(spec, cfg)
    return winding_number(f, r=cfg.radius, delta=cfg.delta)


def cmd_winding(args, specs, cfg):
    (spec,) = _need(specs, 1, "winding")
    wr = _winding(spec, cfg)
    return {"winding": wr.winding, "min_curve_modulus": wr.min_curve_modulus,
            "radius_used": wr.radius_used,
            "stability": [[r, n] for r, n in sorted(wr.stability.items())]}, None


def cmd_index(args, specs, cfg):
    (spec,) = _need(specs, 1, "index")
    wr = _winding(spec, cfg)
    return {"winding": wr.winding, "operator_index": -wr.winding,
            "min_curve_modulus": wr.min_curve_modulus}, None


def cmd_classify(args, specs, cfg):
    if len(specs) not in (1, 2):
        raise ValidationError("classify needs a symbol and an optional real reference phase",
                              module="cli", contract="arguments")
    spec, ref = specs[0], (specs[1] if len(specs) == 2 else None)
    if ref is not None and not ref.is_real():
        raise ValidationError("the reference phase must be real-valued", module="cli",
                              contract="arguments")
    ladder = _ladder(args)
    if ladder is not None:
        if not has_builtin_h(spec):
            raise ValidationError("--ladder needs a symbol containing h:M", module="cli",
                                  contract="arguments")
        fs = {M: _rung(spec, M) for M in ladder}
        g_refs = None if ref is None else (lambda grid: realize(ref, grid, exp_factor=1))
        fp = classify_ladder(fs, g_refs=g_refs, k_ref=args.ref_winding, delta=cfg.delta)
    else:
        f = _sample(spec, cfg)
        g_ref = None if ref is None else realize(ref, f.grid)
        fp = classify(f, g_ref=g_ref, k_ref=args.ref_winding, delta=cfg.delta)
    return {"fingerprint": fp.to_dict()}, fp.phase_osc_profile.to_csv()


def cmd_example_h(args, specs, cfg):
    M = args.terms
    ladder = _ladder(args)
    report = args.report
    out = {"terms": M}
    if report in ("sup", "all"):
        out["sup_at_zero"] = sup_at_zero(M)
        out["lnln_model"] = float(np.log(np.log(M)))
        if ladder is not None:
            out["sup_at_zero_ladder"] = {str(k): v for k, v in sup_at_zero_ladder(ladder).items()}
    if report in ("identities", "all"):
        ex = example_h(M)
        out["identities"] = ex.to_dict()
    csv = None
    if report in ("decay", "all"):
        a, b = args.interval
        table = uniform_convergence_off_zero(ladder or (64, 128, 256, 512), (a, b))
        out["decay"] = table.to_dict()
        out["decay"]["strictly_decreasing"] = table.strictly_decreasing
        csv = "M,sup\n" + "".join(f"{m},{s!r}\n" for m, s in table.rows)
    return out, csv


def cmd_toeplitz_norms(args, specs, cfg):
    (spec,) = _need(specs, 1, "toeplitz-norms")
    s = _series(spec, cfg)
    report = section_norm_convergence(s, _ladder(args, DEFAULT_LADDER))
    return report.to_dict(), report.to_csv()


def cmd_toeplitz_index(args, specs, cfg):
    (spec,) = _need(specs, 1, "toeplitz-index")
    s = _series(spec, cfg)
    kc = kernel_count_index_estimate(s, args.size, eps=cfg.eps, delta=cfg.delta)
    out = kc.to_dict()
    out["size"] = args.size
    out["matches"] = kc.count == kc.predicted
    return out, None


def cmd_semicommutator(args, specs, cfg):
    phi, psi = _need(specs, 2, "semicommutator")
    sc = semicommutator(_series(phi, cfg), _series(psi, cfg), args.size)
    csv = "M,tail_norm\n" + "".join(f"{m},{v!r}\n" for m, v in sorted(sc.tail_norms.items()))
    return sc.to_dict(), csv


def cmd_operator_classify(args, specs, cfg):
    s1, s2 = _need(specs, 2, "operator-classify")
    rng = np.random.default_rng(args.seed)
    K1 = CompactPerturbation.random(args.rank, 64, rng) if args.rank else None
    K2 = CompactPerturbation.random(args.rank, 64, rng) if args.rank else None
    ladder = _ladder(args)
    if ladder is not None:
        if not (has_builtin_h(s1) or has_builtin_h(s2)):
            raise ValidationError("--ladder needs a symbol containing h:M", module="cli",
                                  contract="arguments")
        pairs = {M: _rung_pair(s1, s2, M) for M in ladder}
        f1 = {M: p[0] for M, p in pairs.items()}
        f2 = {M: p[1] for M, p in pairs.items()}
    else:
        f1, f2 = _sample(s1, cfg), _sample(s2, cfg)
    verdict = operator_component_test(f1, f2, K1, K2, delta=cfg.delta)
    return verdict.to_dict(), None


def cmd_verify_all(args, specs, cfg):
    numbers = None
    if args.criteria:
        numbers = [int(x) for x in args.criteria.split(",")]
        bad = [n for n in numbers if n not in acceptance.CRITERIA]
        if bad:
            raise ValidationError(f"unknown criteria {bad}", module="cli", contract="arguments")
    results = acceptance.run_all(numbers, echo=lambda line: print(line, file=sys.stderr))
    out = {"passed": all(r.passed for r in results), "criteria": [r.to_dict() for r in results]}
    return out, None


COMMANDS = {
    "coeffs": (cmd_coeffs, "Fourier coefficients of a symbol"),
    "hilbert": (cmd_hilbert, "Hilbert transform and conjugation"),
    "poisson": (cmd_poisson, "Poisson extension at radius r"),
    "oscillation": (cmd_oscillation, "dyadic mean-oscillation profile"),
    "essrange": (cmd_essrange, "essential range estimate"),
    "factor": (cmd_factor, "factorization chi_n exp(w - i hilbert(w)) exp(ig)"),
    "winding": (cmd_winding, "winding number across smoothing radii"),
    "index": (cmd_index, "winding number and Fredholm index"),
    "classify": (cmd_classify, "path-component fingerprint"),
    "example-h": (cmd_example_h, "the unbounded VMO example"),
    "toeplitz-norms": (cmd_toeplitz_norms, "finite-section norms"),
    "toeplitz-index": (cmd_toeplitz_index, "kernel count of a finite section"),
    "semicommutator": (cmd_semicommutator, "T_phi T_psi - T_(phi psi)"),
    "operator-classify": (cmd_operator_classify, "component test for T_f + K"),
    "verify-all": (cmd_verify_all, "run the acceptance criteria"),
}


def _interval(text):
    try:
        a, b = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}") from None
    return a, b


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--spec", action="append", help="symbol, inline syntax or JSON (repeatable)")
    common.add_argument("--spec-file", action="append", help="file holding a JSON symbol (repeatable)")
    common.add_argument("--grid", type=int, help="grid size, a power of two")
    common.add_argument("--degree", type=int, help=f"truncation degree (default {DEFAULT_DEGREE})")
    common.add_argument("--radius", type=float, help="Poisson radius (default 1 - 2 pi / grid)")
    common.add_argument("--delta", type=float, default=DEFAULT_DELTA, help="invertibility threshold")
    common.add_argument("--eps", type=float, default=1e-6, help="kernel singular-value threshold")
    common.add_argument("--ladder", help="comma-separated increasing sizes or truncation orders")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help=f"output file (default: stdout, or ${OUT_DIR_ENV}/<command>.<format>)")

    parser = _Parser(prog="toeplitz-qc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name in ("oscillation", "essrange"):
            p.add_argument("--depth", type=int, help="deepest dyadic level")
        if name == "essrange":
            p.add_argument("--bins", type=int, default=64)
        if name == "classify":
            p.add_argument("--ref-winding", type=int, help="winding of the reference symbol")
        if name == "example-h":
            p.add_argument("--terms", type=int, default=1000)
            p.add_argument("--report", choices=("sup", "identities", "decay", "all"), default="all")
            p.add_argument("--interval", type=_interval, default=(np.pi / 2, 3 * np.pi / 2))
        if name in ("toeplitz-index", "semicommutator"):
            p.add_argument("--size", type=int, default=DEFAULT_SIZE, help="section size N")
        if name == "operator-classify":
            p.add_argument("--rank", type=int, default=0, help="rank of random perturbations")
            p.add_argument("--seed", type=int, default=0)
        if name == "verify-all":
            p.add_argument("--criteria", help="comma-separated subset, e.g. 1,3")
    return parser


def _write(text, args):
    path = args.out
    if path is None and os.environ.get(OUT_DIR_ENV):
        path = os.path.join(os.environ[OUT_DIR_ENV], f"{args.command}.{args.format}")
    if path is None:
        sys.stdout.write(text)
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text)


def run(argv):
    args = build_parser().parse_args(argv)
    specs = _load_specs(args)
    cfg = _config(args, specs)
    handler = COMMANDS[args.command][0]
    result, csv = handler(args, specs, cfg)
    if args.format == "csv":
        if csv is None:
            raise ValidationError(f"{args.command} has no CSV output", module="cli",
                                  contract="arguments")
        _write(csv, args)
    else:
        doc = {"command": args.command, "config": asdict(cfg),
               "specs": [json.loads(dumps_spec(s)) for s in specs], "result": result}
        _write(dumps(doc), args)
    if args.command == "verify-all" and not result["passed"]:
        return 3
    return 0


def main(argv=None):
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except ToeplitzQCError as exc:
        print(f"error: {exc.describe()}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
